use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ProbeError;
use crate::algebra::{binomial_usize, ExactMatrix, Field, HomogeneousPoly};
use crate::interpolation::trial_seed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SecantReport {
    pub d: u32,
    pub n: u32,
    pub k: u32,
    /// Dimension of the ambient `P^N`.
    pub big_n: i64,
    pub measured_dim: i64,
    pub expected_dim: i64,
    pub defect: i64,
}

/// Dimension of the `k`-secant variety of the degree-`d` Veronese of `P^n`.
///
/// The tangent space at `[L^d]` is spanned by `L^{d-1} x_i`; the secant dimension is the
/// rank of those vectors over `k+1` random linear forms, minus one.
pub fn veronese_secant_dim(
    d: u32,
    n: u32,
    k: u32,
    field: Field,
    trials: u32,
    seed: u64,
) -> Result<SecantReport, ProbeError> {
    if d == 0 || n == 0 || !field.supports_degree(d) {
        return Err(ProbeError::Precondition(format!(
            "need d, n >= 1 and char > d; got d={d}, n={n} over {field}"
        )));
    }
    let nn = n as usize;
    let cols = binomial_usize(nn + d as usize, nn);
    let vars: Vec<HomogeneousPoly> = (0..=nn)
        .map(|i| HomogeneousPoly::variable(field, nn, i))
        .collect();
    let rank = (0..trials.max(1))
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, t));
            let mut rows = Vec::with_capacity((k as usize + 1) * (nn + 1));
            for _ in 0..=k {
                let coeffs: Vec<_> = (0..=nn).map(|_| field.random(&mut rng, 100)).collect();
                let power = HomogeneousPoly::linear(field, &coeffs).pow(d - 1);
                for x in &vars {
                    rows.push(power.mul(x).coeffs().to_vec());
                }
            }
            Ok::<_, ProbeError>(ExactMatrix::from_rows(field, rows)?.rank())
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .max()
        .unwrap_or(0);
    let big_n = cols as i64 - 1;
    let expected_dim = big_n.min(i64::from((k + 1) * (n + 1)) - 1);
    let measured_dim = rank as i64 - 1;
    Ok(SecantReport {
        d,
        n,
        k,
        big_n,
        measured_dim,
        expected_dim,
        defect: expected_dim - measured_dim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_PRIMES;

    fn fp() -> Field {
        Field::Prime(DEFAULT_PRIMES[2])
    }

    #[test]
    fn tangent_space() {
        for d in 1..6 {
            for n in 1..4 {
                let r = veronese_secant_dim(d, n, 0, fp(), 1, 3).unwrap();
                assert_eq!(r.measured_dim, i64::from(n));
            }
        }
    }

    #[test]
    fn defective_cases() {
        let r = veronese_secant_dim(4, 2, 4, fp(), 2, 1).unwrap();
        assert_eq!((r.measured_dim, r.expected_dim, r.defect), (13, 14, 1));
        let r = veronese_secant_dim(3, 4, 6, fp(), 2, 1).unwrap();
        assert_eq!((r.measured_dim, r.expected_dim, r.defect), (33, 34, 1));
        let r = veronese_secant_dim(3, 2, 2, fp(), 2, 1).unwrap();
        assert_eq!(r.defect, 0);
    }
}
