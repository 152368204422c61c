use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{ProbeError, MAX_RETRIES};
use crate::algebra::{
    random_invertible, resultant, uni_gcd, ExactMatrix, HomogeneousPoly, Scalar, UniPoly,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapVerdict {
    Birational,
    ComposedWithPencil,
    FiniteDegree(i64),
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapReport {
    pub n: usize,
    pub generic_jacobian_rank: usize,
    pub fiber_count: Option<i64>,
    pub verdict: MapVerdict,
}

/// Rank and degree of the rational map `P^n --> P^n` given by `n+1` forms of one degree.
///
/// Fibers are counted for `n = 2`: for a target `phi(q)` the curves `f0 - a f2` and
/// `f1 - b f2` meet in the base points and in the fiber. After a random change of
/// coordinates, `Res_x` in the chart `z = 1` has one root per intersection point; the
/// roots at `base_points` are divided out and the distinct remaining roots are counted.
pub fn map_rank_and_degree(
    forms: &[HomogeneousPoly],
    base_points: &[Vec<Scalar>],
    seed: u64,
) -> Result<MapReport, ProbeError> {
    let Some(first) = forms.first() else {
        return Err(ProbeError::Precondition("empty system".into()));
    };
    let (field, n, d) = (first.field(), first.n(), first.degree());
    if forms.len() != n + 1
        || forms
            .iter()
            .any(|f| f.n() != n || f.degree() != d || f.field() != field)
        || !field.supports_degree(d * d)
    {
        return Err(ProbeError::Precondition(
            "need n+1 forms of one degree d in n+1 variables with char > d^2".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random_point = |rng: &mut ChaCha8Rng| -> Vec<Scalar> {
        (0..=n).map(|_| field.random_nonzero(rng, 1000)).collect()
    };

    let q = random_point(&mut rng);
    let rows = forms
        .iter()
        .map(|f| f.gradient().iter().map(|g| g.eval(&q)).collect())
        .collect();
    let jacobian_rank = ExactMatrix::from_rows(field, rows)?.rank();
    let mut report = MapReport {
        n,
        generic_jacobian_rank: jacobian_rank,
        fiber_count: None,
        verdict: MapVerdict::Inconclusive,
    };
    if jacobian_rank <= n {
        report.verdict = MapVerdict::ComposedWithPencil;
        return Ok(report);
    }
    if n != 2 {
        return Ok(report);
    }
    for _ in 0..MAX_RETRIES {
        if let Some(count) = plane_fiber(forms, base_points, &mut rng)? {
            report.fiber_count = Some(count);
            report.verdict = if count == 1 {
                MapVerdict::Birational
            } else {
                MapVerdict::FiniteDegree(count)
            };
            return Ok(report);
        }
    }
    Ok(report)
}

/// One attempt at counting the fiber through a random point; `None` on degenerate draws.
fn plane_fiber(
    forms: &[HomogeneousPoly],
    base_points: &[Vec<Scalar>],
    rng: &mut ChaCha8Rng,
) -> Result<Option<i64>, ProbeError> {
    let field = forms[0].field();
    let d = forms[0].degree() as usize;
    let (m, m_inv) = random_invertible(field, 3, rng);
    let moved = forms
        .iter()
        .map(|f| f.substitute(&m))
        .collect::<Result<Vec<_>, _>>()?;
    // base points in the new coordinates, in the chart z = 1
    let mut base_y = Vec::new();
    for b in base_points {
        let y = m_inv.mul_vec(b)?;
        let Some(zi) = y[2].inv() else {
            return Ok(None);
        };
        base_y.push(&y[1] * &zi);
    }

    let q = vec![
        field.random(rng, 1000),
        field.random(rng, 1000),
        field.one(),
    ];
    let vals: Vec<Scalar> = moved.iter().map(|f| f.eval(&q)).collect();
    let Some(w) = vals[2].inv() else {
        return Ok(None);
    };
    let (a, b) = (&vals[0] * &w, &vals[1] * &w);
    let ca = moved[0].sub(&moved[2].scale(&a));
    let cb = moved[1].sub(&moved[2].scale(&b));

    // Res_x has degree at most d^2 in y
    let mut samples = Vec::with_capacity(d * d + 1);
    for i in 0..=(d * d) as i64 {
        let y0 = field.from_i64(i + 1);
        let pt = vec![field.zero(), y0.clone(), field.one()];
        let (ua, ub) = (ca.to_uni(0, &pt), cb.to_uni(0, &pt));
        if ua.degree() != Some(d) || ub.degree() != Some(d) {
            return Ok(None);
        }
        samples.push((y0, resultant(&ua, &ub)?));
    }
    let mut r = UniPoly::interpolate(field, &samples);
    if r.is_zero() || !r.eval(&q[1]).is_zero() {
        return Ok(None);
    }
    for y in &base_y {
        if y == &q[1] {
            return Ok(None);
        }
        let lin = UniPoly::linear(y);
        loop {
            let (quot, rem) = r.div_rem(&lin);
            if !rem.is_zero() {
                break;
            }
            r = quot;
        }
    }
    let g = uni_gcd(&r, &r.derivative());
    let (squarefree, _) = r.div_rem(&g);
    Ok(squarefree.degree().map(|k| k as i64))
}
