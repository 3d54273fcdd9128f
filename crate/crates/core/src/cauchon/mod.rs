//! Cauchon's deleting derivations for the partition algebras `A_λ`: the
//! quantum torus on the `t_ij`, restoration of the original generators
//! inside it, and the single forward step that inverts `x_{m,λ_m}`.

mod localize;
mod restore;
mod torus;

use serde::{Deserialize, Serialize};

use crate::diagrams::CauchonDiagram;
use crate::error::Result;

pub use localize::{single_step_deletion, DeletionReport, DeletionStep, LocalElement, Localization};
pub use restore::{
    restore, step_indices, verify_restored_relations, verify_restored_relations_at, RelationReport, Restoration,
};
pub use torus::{torus_mul, Exponents, QTorus, SpecializedTorusElement, TorusElement};

/// Name of the torus-invariant prime `J_C` and the generators of its image `K_C`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HPrimeLabel {
    pub label: String,
    pub k_generators: Vec<[usize; 2]>,
}

pub fn diagram_to_hprime_label(d: &CauchonDiagram) -> Result<HPrimeLabel> {
    let gens = d.kc_generators()?;
    Ok(HPrimeLabel { label: d.label(), k_generators: gens.iter().map(|v| [v.row, v.col]).collect() })
}
