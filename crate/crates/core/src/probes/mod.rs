//! Geometric verdicts on concrete members: nodes, singular loci, squares, secant
//! dimensions and map degrees.

mod map;
mod node;
mod secant;
mod sing;
mod square;

pub use map::{map_rank_and_degree, MapReport, MapVerdict};
pub use node::{node_check, node_check_in_chart, NodeReport};
pub use secant::{veronese_secant_dim, SecantReport};
pub use sing::{
    plane_sing_finite, singularity_report, space_sing_probe, Finiteness, PlaneSingReport,
    SingularityReport, SliceVerdict,
};
pub use square::square_detect;

use thiserror::Error;

use crate::algebra::AlgebraError;

/// Cap on fresh randomizations before a probe gives up.
pub const MAX_RETRIES: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProbeError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("precondition violated: {0}")]
    Precondition(String),
}
