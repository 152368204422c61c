//! Double-point condition matrices and measured dimensions of `G` and `H` systems.
//!
//! A double point at `p` is imposed by the `n+1` rows `dm/dx_i (p)` over the monomial
//! basis. Degree-0 systems get an evaluation row instead, since all their partials vanish.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{
    AlgebraError, ExactMatrix, Field, HomogeneousPoly, MonomialBasis, Scalar,
};
use crate::numerology::{ah_status, expected_dim, SpecializedSpec, SystemSpec};

/// Coordinate bound for rational-mode sampling.
pub const RATIONAL_COORD_BOUND: i64 = 10_000;

const MAX_RESAMPLES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InterpolationError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("cannot place {0} distinct points")]
    Collision(usize),
    #[error("configuration does not match {0}")]
    Mismatch(String),
    #[error("the system {0} is empty")]
    Empty(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// Points for a specialized system; `hyperplane_points` lie on `x_n = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfig {
    pub n: usize,
    pub field: Field,
    pub seed: u64,
    pub general_points: Vec<Vec<Scalar>>,
    pub hyperplane_points: Vec<Vec<Scalar>>,
}

impl PointConfig {
    pub fn points(&self) -> impl Iterator<Item = &Vec<Scalar>> {
        self.general_points.iter().chain(&self.hyperplane_points)
    }

    pub fn len(&self) -> usize {
        self.general_points.len() + self.hyperplane_points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Hyperplane points with the last coordinate dropped, as points of `P^{n-1}`.
    pub fn traces(&self) -> Vec<Vec<Scalar>> {
        self.hyperplane_points
            .iter()
            .map(|p| p[..self.n].to_vec())
            .collect()
    }
}

fn check_field(field: Field, d: u32) -> Result<(), InterpolationError> {
    if field.supports_degree(d) {
        Ok(())
    } else {
        Err(AlgebraError::CharacteristicTooSmall {
            characteristic: field.characteristic(),
            degree: d,
        }
        .into())
    }
}

/// Samples `l-h` general points and `h` points on `x_n = 0`, all in the chart `x_0 = 1`.
pub fn sample_config(
    spec: SpecializedSpec,
    field: Field,
    seed: u64,
) -> Result<PointConfig, InterpolationError> {
    check_field(field, spec.base.d)?;
    let n = spec.base.n as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut taken: Vec<Vec<Scalar>> = Vec::with_capacity(spec.base.l as usize);
    let mut draw = |rng: &mut ChaCha8Rng, on_h: bool| -> Result<Vec<Scalar>, InterpolationError> {
        for _ in 0..MAX_RESAMPLES {
            let mut p = Vec::with_capacity(n + 1);
            p.push(field.one());
            for i in 1..=n {
                p.push(if on_h && i == n {
                    field.zero()
                } else {
                    field.random(rng, RATIONAL_COORD_BOUND)
                });
            }
            if !taken.contains(&p) {
                taken.push(p.clone());
                return Ok(p);
            }
        }
        Err(InterpolationError::Collision(taken.len() + 1))
    };
    let general_points = (0..spec.general())
        .map(|_| draw(&mut rng, false))
        .collect::<Result<Vec<_>, _>>()?;
    let hyperplane_points = (0..spec.h)
        .map(|_| draw(&mut rng, true))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PointConfig {
        n,
        field,
        seed,
        general_points,
        hyperplane_points,
    })
}

/// Where a row of a conditions matrix comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowSource {
    Derivative { point: usize, var: usize },
    Value { point: usize },
}

#[derive(Clone, Debug)]
pub struct ConditionsMatrix {
    pub matrix: ExactMatrix,
    pub provenance: Vec<RowSource>,
}

impl ConditionsMatrix {
    /// Double-point rows at `doubles`, then evaluation rows at `simples`, for degree-`d`
    /// forms on `P^n`. Point indices in the provenance run over `doubles` then `simples`.
    pub fn build(
        field: Field,
        n: usize,
        d: u32,
        doubles: &[Vec<Scalar>],
        simples: &[Vec<Scalar>],
    ) -> Result<Self, InterpolationError> {
        let basis = MonomialBasis::new(n + 1, d);
        let mut matrix = ExactMatrix::zeros(field, 0, basis.len());
        let mut provenance = Vec::new();
        for (k, p) in doubles.iter().enumerate() {
            check_point(field, n, p)?;
            let pw = powers(p, d);
            if d == 0 {
                matrix.push_row(value_row(&basis, &pw))?;
                provenance.push(RowSource::Value { point: k });
                continue;
            }
            for var in 0..=n {
                matrix.push_row(derivative_row(field, &basis, &pw, var))?;
                provenance.push(RowSource::Derivative { point: k, var });
            }
        }
        for (k, p) in simples.iter().enumerate() {
            check_point(field, n, p)?;
            matrix.push_row(value_row(&basis, &powers(p, d)))?;
            provenance.push(RowSource::Value {
                point: doubles.len() + k,
            });
        }
        Ok(Self { matrix, provenance })
    }
}

fn check_point(field: Field, n: usize, p: &[Scalar]) -> Result<(), InterpolationError> {
    if p.len() != n + 1 {
        return Err(AlgebraError::Shape(format!("point of length {} in P^{n}", p.len())).into());
    }
    if let Some(bad) = p.iter().find(|c| c.field() != field) {
        return Err(AlgebraError::FieldMismatch(field, bad.field()).into());
    }
    Ok(())
}

fn powers(p: &[Scalar], d: u32) -> Vec<Vec<Scalar>> {
    p.iter()
        .map(|x| {
            let mut row = vec![x.field().one()];
            for k in 1..=d as usize {
                let next = &row[k - 1] * x;
                row.push(next);
            }
            row
        })
        .collect()
}

fn value_row(basis: &MonomialBasis, pw: &[Vec<Scalar>]) -> Vec<Scalar> {
    basis
        .iter()
        .map(|m| {
            m.0.iter()
                .enumerate()
                .fold(pw[0][0].clone(), |acc, (j, &e)| &acc * &pw[j][e as usize])
        })
        .collect()
}

fn derivative_row(
    field: Field,
    basis: &MonomialBasis,
    pw: &[Vec<Scalar>],
    var: usize,
) -> Vec<Scalar> {
    basis
        .iter()
        .map(|m| {
            let a = m.0[var];
            if a == 0 {
                return field.zero();
            }
            m.0.iter()
                .enumerate()
                .fold(field.from_i64(i64::from(a)), |acc, (j, &e)| {
                    let e = if j == var { e - 1 } else { e };
                    &acc * &pw[j][e as usize]
                })
        })
        .collect()
}

/// Double-point matrix of `spec` at `config`.
pub fn conditions_matrix(
    spec: SpecializedSpec,
    config: &PointConfig,
) -> Result<ConditionsMatrix, InterpolationError> {
    if config.n != spec.base.n as usize
        || config.general_points.len() != spec.general() as usize
        || config.hyperplane_points.len() != spec.h as usize
    {
        return Err(InterpolationError::Mismatch(spec.to_string()));
    }
    let points: Vec<Vec<Scalar>> = config.points().cloned().collect();
    ConditionsMatrix::build(config.field, config.n, spec.base.d, &points, &[])
}

/// Measured dimension against the formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimReport {
    pub spec: SpecializedSpec,
    pub expected: i64,
    /// What the theory predicts: AH (with exceptions) for `h = 0`, `max(expected, -1)` otherwise.
    pub predicted: i64,
    /// Projective dimension; `-1` means empty.
    pub actual: i64,
    pub field: Field,
    pub trials: u32,
    pub seed: u64,
    pub agreement: bool,
}

/// Seed of trial `t`; trials are independent configurations.
pub fn trial_seed(seed: u64, t: u32) -> u64 {
    ChaCha8Rng::seed_from_u64(seed ^ (u64::from(t) << 32)).gen()
}

pub fn system_dim(
    spec: SystemSpec,
    field: Field,
    trials: u32,
    seed: u64,
) -> Result<DimReport, InterpolationError> {
    specialized_dim(SpecializedSpec { base: spec, h: 0 }, field, trials, seed)
}

/// Vector-space dimension of the system at one configuration.
pub fn kernel_dim(spec: SpecializedSpec, config: &PointConfig) -> Result<usize, InterpolationError> {
    let cm = conditions_matrix(spec, config)?;
    Ok(cm.matrix.cols() - cm.matrix.rank())
}

pub fn specialized_dim(
    spec: SpecializedSpec,
    field: Field,
    trials: u32,
    seed: u64,
) -> Result<DimReport, InterpolationError> {
    let trials = trials.max(1);
    let min_kernel = (0..trials)
        .into_par_iter()
        .map(|t| {
            let config = sample_config(spec, field, trial_seed(seed, t))?;
            kernel_dim(spec, &config)
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .min()
        .expect("at least one trial");
    let expected = expected_dim(spec.base);
    let predicted = if spec.h == 0 {
        ah_status(spec.base).dim
    } else {
        expected.max(-1)
    };
    let actual = min_kernel as i64 - 1;
    Ok(DimReport {
        spec,
        expected,
        predicted,
        actual,
        field,
        trials,
        seed,
        agreement: actual == predicted,
    })
}

/// Bad luck can only raise a measured dimension, so across fields the smallest one wins.
pub fn best_report(reports: Vec<DimReport>) -> Option<DimReport> {
    reports.into_iter().min_by_key(|r| r.actual)
}

/// Vector-space counts in the restriction sequence to `x_n = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub h_d_minus_1: i64,
    pub h_n_minus_1: i64,
    pub total: i64,
    pub exact: bool,
}

pub fn castelnuovo_check(
    spec: SpecializedSpec,
    field: Field,
    seed: u64,
) -> Result<ResidualReport, InterpolationError> {
    let SystemSpec { d, n, .. } = spec.base;
    if spec.h == 0 || d == 0 {
        return Err(InterpolationError::Precondition(format!(
            "need h >= 1 and d >= 1 for {spec}"
        )));
    }
    let config = sample_config(spec, field, seed)?;
    let n = n as usize;
    let kdim = |m: &ExactMatrix| (m.cols() - m.rank()) as i64;

    let total = kdim(&conditions_matrix(spec, &config)?.matrix);
    let residual = ConditionsMatrix::build(
        field,
        n,
        d - 1,
        &config.general_points,
        &config.hyperplane_points,
    )?;
    let trace = ConditionsMatrix::build(field, n - 1, d, &config.traces(), &[])?;
    let h_d_minus_1 = kdim(&residual.matrix);
    let h_n_minus_1 = kdim(&trace.matrix);
    Ok(ResidualReport {
        h_d_minus_1,
        h_n_minus_1,
        total,
        exact: total == h_d_minus_1 + h_n_minus_1,
    })
}

/// A random member: a random combination of a kernel basis.
pub fn random_member(
    spec: SpecializedSpec,
    config: &PointConfig,
    seed: u64,
) -> Result<HomogeneousPoly, InterpolationError> {
    let field = config.field;
    let kernel = conditions_matrix(spec, config)?.matrix.kernel();
    if kernel.is_empty() {
        return Err(InterpolationError::Empty(spec.to_string()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coeffs = vec![field.zero(); kernel[0].len()];
    for v in &kernel {
        let c = field.random_nonzero(&mut rng, 100);
        for (acc, x) in coeffs.iter_mut().zip(v) {
            *acc = &*acc + &(&c * x);
        }
    }
    if coeffs.iter().all(Scalar::is_zero) {
        coeffs = kernel[0].clone();
    }
    Ok(HomogeneousPoly::from_coeffs(
        field,
        spec.base.n as usize,
        spec.base.d,
        coeffs,
    )?)
}

/// True when every partial of `f` vanishes at every point of `config`.
pub fn satisfies_conditions(f: &HomogeneousPoly, config: &PointConfig) -> bool {
    let grad = f.gradient();
    config.points().all(|p| {
        f.eval(p).is_zero() && grad.iter().all(|g| g.eval(p).is_zero())
    })
}

/// True when every member of the system vanishes at `extra_point`.
pub fn base_probe(
    spec: SpecializedSpec,
    config: &PointConfig,
    extra_point: &[Scalar],
) -> Result<bool, InterpolationError> {
    let kernel = conditions_matrix(spec, config)?.matrix.kernel();
    if kernel.is_empty() {
        return Err(InterpolationError::Empty(spec.to_string()));
    }
    for v in kernel {
        let f = HomogeneousPoly::from_coeffs(config.field, config.n, spec.base.d, v)?;
        if !f.eval(extra_point).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
