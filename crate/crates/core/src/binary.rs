//! Binary forms: catalecticants, apolar generators and the uniqueness certificate.
//!
//! A form is stored as `f = sum C(d,i) c_i x^{d-i} y^i`. With this normalization the
//! catalecticant of order `a` is the Hankel matrix `(c_{i+j})`, and a kernel vector
//! `g` read as `G = sum g_j X^{a-j} Y^j` vanishes at `(a:b)` for every summand
//! `(ax + by)^d` of a decomposition.

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{
    binomial_usize, uni_gcd, AlgebraError, ExactMatrix, Field, HomogeneousPoly, Scalar, UniPoly,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BinaryError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    field: Field,
    c: Vec<Scalar>,
}

impl BinaryForm {
    /// From normalized coefficients `c_0..c_d`.
    pub fn new(field: Field, c: Vec<Scalar>) -> Result<Self, BinaryError> {
        if c.is_empty() {
            return Err(BinaryError::Precondition("no coefficients".into()));
        }
        if let Some(bad) = c.iter().find(|s| s.field() != field) {
            return Err(AlgebraError::FieldMismatch(field, bad.field()).into());
        }
        Ok(Self { field, c })
    }

    pub fn from_i64(field: Field, c: &[i64]) -> Result<Self, BinaryError> {
        Self::new(field, c.iter().map(|&v| field.from_i64(v)).collect())
    }

    /// From an ordinary binary form; divides out the binomial weights.
    pub fn from_poly(f: &HomogeneousPoly) -> Result<Self, BinaryError> {
        let d = f.degree();
        if f.n() != 1 || !f.field().supports_degree(d) {
            return Err(BinaryError::Precondition(
                "need a binary form with char > d".into(),
            ));
        }
        let field = f.field();
        let c = f
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let w = field.from_i64(binomial_usize(d as usize, i) as i64);
                a * &w.inv().expect("char > d")
            })
            .collect();
        Self::new(field, c)
    }

    /// `sum lambda_i (a_i x + b_i y)^d`.
    pub fn power_sum(field: Field, d: u32, terms: &[(Scalar, Scalar, Scalar)]) -> Self {
        let mut c = vec![field.zero(); d as usize + 1];
        for (lambda, a, b) in terms {
            for (i, ci) in c.iter_mut().enumerate() {
                let t = &(lambda * &a.pow(d - i as u32)) * &b.pow(i as u32);
                *ci = &*ci + &t;
            }
        }
        Self { field, c }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn degree(&self) -> u32 {
        (self.c.len() - 1) as u32
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Scalar::is_zero)
    }

    pub fn to_poly(&self) -> HomogeneousPoly {
        let d = self.degree();
        let coeffs = self
            .c
            .iter()
            .enumerate()
            .map(|(i, ci)| ci * &self.field.from_i64(binomial_usize(d as usize, i) as i64))
            .collect();
        HomogeneousPoly::from_coeffs(self.field, 1, d, coeffs).expect("d + 1 coefficients")
    }
}

/// The `(d-a+1) x (a+1)` Hankel matrix `(c_{i+j})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Catalecticant {
    pub a: u32,
    pub matrix: ExactMatrix,
}

impl Catalecticant {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

pub fn catalecticant(f: &BinaryForm, a: u32) -> Result<Catalecticant, BinaryError> {
    let d = f.degree();
    if a > d {
        return Err(BinaryError::Precondition(format!("order {a} exceeds degree {d}")));
    }
    let rows = (0..=(d - a) as usize)
        .map(|i| (0..=a as usize).map(|j| f.c[i + j].clone()).collect())
        .collect();
    Ok(Catalecticant {
        a,
        matrix: ExactMatrix::from_rows(f.field, rows)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionCertificate {
    pub s: u32,
    pub kernel_dim: usize,
    /// Binary form of degree `s` whose roots are the summands' points.
    #[serde(skip)]
    pub apolar_generator: HomogeneousPoly,
    pub squarefree: bool,
    pub unique: bool,
    /// The generator's differential action kills `f`.
    pub apolar: bool,
}

/// Certificate at order `k = (d+1)/2` for odd `d`.
pub fn sylvester_certificate(f: &BinaryForm) -> Result<DecompositionCertificate, BinaryError> {
    let d = f.degree();
    if d % 2 == 0 {
        return Err(BinaryError::Precondition(format!("degree {d} is even")));
    }
    certify(f, d.div_ceil(2))
}

/// Certificate at the smallest order with a nontrivial catalecticant kernel, which
/// recovers the rank `s` of a power sum with `s <= (d+1)/2`.
pub fn minimal_certificate(f: &BinaryForm) -> Result<DecompositionCertificate, BinaryError> {
    let d = f.degree();
    for a in 1..=d {
        let cat = catalecticant(f, a)?;
        if cat.rank() <= a as usize {
            return certify(f, a);
        }
    }
    certify(f, d)
}

fn certify(f: &BinaryForm, s: u32) -> Result<DecompositionCertificate, BinaryError> {
    if f.is_zero() {
        return Err(BinaryError::Precondition("zero form".into()));
    }
    if !f.field.supports_degree(f.degree()) {
        return Err(AlgebraError::CharacteristicTooSmall {
            characteristic: f.field.characteristic(),
            degree: f.degree(),
        }
        .into());
    }
    let kernel = catalecticant(f, s)?.matrix.kernel();
    let Some(g) = kernel.first() else {
        return Err(BinaryError::Precondition(format!(
            "catalecticant of order {s} is injective"
        )));
    };
    let generator = HomogeneousPoly::from_coeffs(f.field, 1, s, g.clone())?;
    let squarefree = binary_squarefree(&generator);
    let apolar = apolarity_check(f, &generator)?;
    Ok(DecompositionCertificate {
        s,
        kernel_dim: kernel.len(),
        apolar_generator: generator,
        squarefree,
        unique: kernel.len() == 1 && squarefree,
        apolar,
    })
}

/// Distinct roots on `P^1`, counting `(1:0)`.
fn binary_squarefree(g: &HomogeneousPoly) -> bool {
    let s = g.degree() as usize;
    // coefficient i belongs to X^{s-i} Y^i; in the chart Y = 1 that is X^{s-i}
    let mut coeffs = g.coeffs().to_vec();
    coeffs.reverse();
    let u = UniPoly::new(g.field(), coeffs).expect("one field");
    let Some(deg) = u.degree() else {
        return false;
    };
    let at_infinity = s - deg;
    at_infinity <= 1 && uni_gcd(&u, &u.derivative()).degree() == Some(0)
}

/// Does `g(d/dx, d/dy)` annihilate `f`?
pub fn apolarity_check(f: &BinaryForm, g: &HomogeneousPoly) -> Result<bool, BinaryError> {
    let e = g.degree();
    if g.n() != 1 || e > f.degree() || g.field() != f.field {
        return Err(BinaryError::Precondition(
            "need a binary operator of degree <= deg f over the same field".into(),
        ));
    }
    let fp = f.to_poly();
    let mut acc = HomogeneousPoly::zero(f.field, 1, f.degree() - e);
    for (j, gj) in g.coeffs().iter().enumerate() {
        if gj.is_zero() {
            continue;
        }
        let mut t = fp.clone();
        for _ in 0..(e as usize - j) {
            t = t.partial(0);
        }
        for _ in 0..j {
            t = t.partial(1);
        }
        acc = acc.add(&t.scale(gj));
    }
    Ok(acc.is_zero())
}

/// Largest catalecticant rank, a lower bound for the Waring rank.
pub fn rank_lower_bound(f: &BinaryForm) -> Result<usize, BinaryError> {
    (0..=f.degree())
        .map(|a| catalecticant(f, a).map(|c| c.rank()))
        .try_fold(0, |m, r| r.map(|r| m.max(r)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q() -> Field {
        Field::Rational
    }

    fn x5y5() -> BinaryForm {
        BinaryForm::from_i64(q(), &[1, 0, 0, 0, 0, 1]).unwrap()
    }

    #[test]
    fn catalecticant_shapes() {
        let c = catalecticant(&x5y5(), 2).unwrap();
        assert_eq!((c.matrix.rows(), c.matrix.cols(), c.rank()), (4, 3, 2));
        let ones = BinaryForm::from_i64(q(), &[1; 8]).unwrap();
        for a in 0..=7 {
            assert_eq!(catalecticant(&ones, a).unwrap().rank(), 1);
        }
        assert!(catalecticant(&ones, 8).is_err());
    }

    #[test]
    fn normalization_round_trip() {
        let f = x5y5();
        let p = f.to_poly();
        assert_eq!(BinaryForm::from_poly(&p).unwrap(), f);
        // (x + y)^4 has all c_i = 1
        let l = HomogeneousPoly::from_terms(q(), 1, 1, &[(1, vec![1, 0]), (1, vec![0, 1])]).unwrap();
        let f = BinaryForm::from_poly(&l.pow(4)).unwrap();
        assert_eq!(f, BinaryForm::from_i64(q(), &[1; 5]).unwrap());
    }

    #[test]
    fn sylvester_examples() {
        let c = sylvester_certificate(&x5y5()).unwrap();
        assert_eq!(c.kernel_dim, 2);
        assert!(!c.unique && c.apolar);
        let c = minimal_certificate(&x5y5()).unwrap();
        assert_eq!((c.s, c.kernel_dim, c.unique), (2, 1, true));

        // x y^2 = 3 c_2 x y^2 with c_2 = 1/3
        let f = BinaryForm::new(q(), vec![q().zero(), q().zero(), q().from_ratio(1, 3), q().zero()])
            .unwrap();
        let c = sylvester_certificate(&f).unwrap();
        assert!(!c.squarefree && !c.unique && c.apolar);
        assert!(sylvester_certificate(&BinaryForm::from_i64(q(), &[0; 6]).unwrap()).is_err());
        assert!(sylvester_certificate(&BinaryForm::from_i64(q(), &[1; 5]).unwrap()).is_err());
    }

    #[test]
    fn random_quintics_are_unique() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10 {
            let c = (0..6).map(|_| q().random(&mut rng, 50)).collect();
            let f = BinaryForm::new(q(), c).unwrap();
            let cert = sylvester_certificate(&f).unwrap();
            assert!(cert.unique && cert.apolar);
            assert_eq!(cert.s, 3);
            assert_eq!(rank_lower_bound(&f).unwrap(), 3);
        }
    }

    #[test]
    fn apolarity_examples() {
        let f = BinaryForm::from_i64(q(), &[1, 0, 0, 0]).unwrap();
        let y = HomogeneousPoly::variable(q(), 1, 1);
        let x = HomogeneousPoly::variable(q(), 1, 0);
        assert!(apolarity_check(&f, &y).unwrap());
        assert!(!apolarity_check(&f, &x).unwrap());
        assert_eq!(rank_lower_bound(&f).unwrap(), 1);
    }

    #[test]
    fn two_term_sum() {
        let f = BinaryForm::power_sum(
            q(),
            6,
            &[
                (q().one(), q().from_i64(1), q().from_i64(2)),
                (q().from_i64(3), q().from_i64(-1), q().from_i64(5)),
            ],
        );
        assert_eq!(rank_lower_bound(&f).unwrap(), 2);
        let c = minimal_certificate(&f).unwrap();
        assert_eq!(c.s, 2);
        // (2x - y)(5x + y) vanishes at (1:2) and (-1:5)
        let g = &c.apolar_generator;
        for (a, b) in [(1, 2), (-1, 5)] {
            assert!(g.eval(&[q().from_i64(a), q().from_i64(b)]).is_zero());
        }
    }
}
