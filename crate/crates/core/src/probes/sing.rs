use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{node_check, NodeReport, ProbeError, MAX_RETRIES};
use crate::algebra::{form_gcd, ExactMatrix, HomogeneousPoly, MonomialBasis, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneSingReport {
    pub finite: bool,
    /// The gcd of the partials when it is not constant.
    pub fixed_part: Option<HomogeneousPoly>,
}

/// Finiteness of the singular locus of a plane curve, from the gcd of its partials.
pub fn plane_sing_finite(f: &HomogeneousPoly, seed: u64) -> Result<PlaneSingReport, ProbeError> {
    if f.n() != 2 || f.is_zero() {
        return Err(ProbeError::Precondition(
            "need a nonzero ternary form".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = form_gcd(&f.gradient(), &mut rng)?;
    let finite = g.degree() == 0 && !g.is_zero();
    Ok(PlaneSingReport {
        finite,
        fixed_part: (!finite).then_some(g),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SliceVerdict {
    /// Some random plane met the singular locus.
    PositiveDimensional { slice: usize },
    /// No plane among `slices` met it.
    Finite { slices: usize },
    Inconclusive,
}

/// Looks for a curve of singular points of a surface in `P^3` on random planes.
///
/// On a random plane the four partials restrict to ternary forms of degree `e`. They have
/// no common zero exactly when the degree `3e - 2` part of their ideal is everything, which
/// is a rank test on a Macaulay matrix. Isolated singular points miss a random plane.
pub fn space_sing_probe(
    f: &HomogeneousPoly,
    slices: usize,
    seed: u64,
) -> Result<SliceVerdict, ProbeError> {
    let field = f.field();
    if f.n() != 3 || f.degree() < 2 || !field.supports_degree(f.degree()) {
        return Err(ProbeError::Precondition(
            "need a quaternary form of degree 2 <= d < char".into(),
        ));
    }
    let grad = f.gradient();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0;
    let mut failures = 0;
    while done < slices.max(1) {
        let rows = (0..4)
            .map(|_| (0..3).map(|_| field.random(&mut rng, 50)).collect())
            .collect();
        let plane = ExactMatrix::from_rows(field, rows)?;
        if plane.rank() < 3 {
            failures += 1;
            if failures >= MAX_RETRIES {
                return Ok(SliceVerdict::Inconclusive);
            }
            continue;
        }
        let restricted = grad
            .iter()
            .map(|g| g.restrict(&plane))
            .collect::<Result<Vec<_>, _>>()?;
        if has_common_zero(&restricted)? {
            return Ok(SliceVerdict::PositiveDimensional { slice: done });
        }
        done += 1;
    }
    Ok(SliceVerdict::Finite { slices: done })
}

/// Do forms of one degree `e` in three variables have a common projective zero?
fn has_common_zero(forms: &[HomogeneousPoly]) -> Result<bool, ProbeError> {
    let nonzero: Vec<&HomogeneousPoly> = forms.iter().filter(|g| !g.is_zero()).collect();
    let Some(first) = nonzero.first() else {
        return Ok(true);
    };
    let (field, e) = (first.field(), first.degree());
    if e == 0 {
        return Ok(false);
    }
    let t = 3 * e - 2;
    let multipliers = MonomialBasis::new(3, t - e);
    let mut rows = Vec::new();
    for g in &nonzero {
        for m in multipliers.iter() {
            let mono = HomogeneousPoly::from_terms(field, 2, t - e, &[(1, m.0.clone())])?;
            rows.push(g.mul(&mono).coeffs().to_vec());
        }
    }
    let mac = ExactMatrix::from_rows(field, rows)?;
    Ok(mac.rank() < mac.cols())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Finiteness {
    Finite,
    Infinite,
    NotProbed,
}

/// Local and global singularity data of a member at its imposed points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularityReport {
    pub points: Vec<NodeReport>,
    pub finiteness: Finiteness,
    /// The fixed part for plane curves, when the singular locus is not finite.
    pub plane_witness: Option<HomogeneousPoly>,
    pub slice_witness: Option<SliceVerdict>,
}

impl SingularityReport {
    pub fn all_nodes(&self, n: usize) -> bool {
        self.points.iter().all(|r| r.is_node(n))
    }
}

pub fn singularity_report(
    f: &HomogeneousPoly,
    points: &[Vec<Scalar>],
    slices: usize,
    seed: u64,
) -> Result<SingularityReport, ProbeError> {
    let reports = points
        .iter()
        .map(|p| node_check(f, p))
        .collect::<Result<Vec<_>, _>>()?;
    let (finiteness, plane_witness, slice_witness) = match f.n() {
        2 => {
            let r = plane_sing_finite(f, seed)?;
            let fin = if r.finite {
                Finiteness::Finite
            } else {
                Finiteness::Infinite
            };
            (fin, r.fixed_part, None)
        }
        3 => {
            let v = space_sing_probe(f, slices, seed)?;
            let fin = match v {
                SliceVerdict::Finite { .. } => Finiteness::Finite,
                SliceVerdict::PositiveDimensional { .. } => Finiteness::Infinite,
                SliceVerdict::Inconclusive => Finiteness::NotProbed,
            };
            (fin, None, Some(v))
        }
        _ => (Finiteness::NotProbed, None, None),
    };
    Ok(SingularityReport {
        points: reports,
        finiteness,
        plane_witness,
        slice_witness,
    })
}
