use serde::{Deserialize, Serialize};

use super::ProbeError;
use crate::algebra::{HomogeneousPoly, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeReport {
    NotOnHypersurface,
    Smooth,
    /// Rank of the affine `n x n` Hessian; `n` means an ordinary double point.
    Singular { hessian_rank: usize },
}

impl NodeReport {
    pub fn is_node(&self, n: usize) -> bool {
        matches!(self, NodeReport::Singular { hessian_rank } if *hessian_rank == n)
    }
}

/// Classifies `p` on `F = 0`, using the first chart where `p` is nonzero.
pub fn node_check(f: &HomogeneousPoly, p: &[Scalar]) -> Result<NodeReport, ProbeError> {
    let chart = p
        .iter()
        .position(|c| !c.is_zero())
        .ok_or_else(|| ProbeError::Precondition("the zero vector is not a point".into()))?;
    node_check_in_chart(f, p, chart)
}

/// As [`node_check`] in the chart `x_chart = 1`.
pub fn node_check_in_chart(
    f: &HomogeneousPoly,
    p: &[Scalar],
    chart: usize,
) -> Result<NodeReport, ProbeError> {
    let field = f.field();
    if f.degree() < 2 || !field.supports_degree(f.degree()) {
        return Err(ProbeError::Precondition(format!(
            "need 2 <= d < char, got d={} over {field}",
            f.degree()
        )));
    }
    if p.len() != f.nvars() || chart >= p.len() || p[chart].is_zero() {
        return Err(ProbeError::Precondition(format!(
            "point is not in chart x_{chart} != 0"
        )));
    }
    let scale = p[chart].inv().expect("nonzero");
    let q: Vec<Scalar> = p.iter().map(|c| c * &scale).collect();
    if !f.eval(&q).is_zero() {
        return Ok(NodeReport::NotOnHypersurface);
    }
    if f.gradient().iter().any(|g| !g.eval(&q).is_zero()) {
        return Ok(NodeReport::Smooth);
    }
    // The affine Hessian is the projective one with the chart row and column removed.
    let h = f.hessian_at(&q);
    let keep: Vec<usize> = (0..f.nvars()).filter(|&i| i != chart).collect();
    let rows = keep
        .iter()
        .map(|&i| keep.iter().map(|&j| h.get(i, j).clone()).collect())
        .collect();
    let affine = crate::algebra::ExactMatrix::from_rows(field, rows)?;
    Ok(NodeReport::Singular {
        hessian_rank: affine.rank(),
    })
}
