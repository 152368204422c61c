//! Dense homogeneous forms in `n + 1` variables.

use std::fmt;

use super::monomial::{monomial_count, monomial_index, MonomialBasis};
use super::{AlgebraError, ExactMatrix, Field, Scalar, UniPoly};

/// A degree-`d` form in `x0..xn`, coefficients indexed by the graded-lex basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousPoly {
    field: Field,
    n: usize,
    degree: u32,
    coeffs: Vec<Scalar>,
}

impl HomogeneousPoly {
    pub fn zero(field: Field, n: usize, degree: u32) -> Self {
        Self {
            field,
            n,
            degree,
            coeffs: vec![field.zero(); monomial_count(n + 1, degree)],
        }
    }

    /// Wraps a coefficient vector in basis order.
    pub fn from_coeffs(
        field: Field,
        n: usize,
        degree: u32,
        coeffs: Vec<Scalar>,
    ) -> Result<Self, AlgebraError> {
        let expected = monomial_count(n + 1, degree);
        if coeffs.len() != expected {
            return Err(AlgebraError::Shape(format!(
                "{} coefficients for a space of dimension {expected}",
                coeffs.len()
            )));
        }
        if let Some(bad) = coeffs.iter().find(|c| c.field() != field) {
            return Err(AlgebraError::FieldMismatch(field, bad.field()));
        }
        Ok(Self {
            field,
            n,
            degree,
            coeffs,
        })
    }

    /// Builds a form from `(coefficient, exponents)` terms; every exponent vector must
    /// have length `n + 1` and total degree `degree`.
    pub fn from_terms(
        field: Field,
        n: usize,
        degree: u32,
        terms: &[(i64, Vec<u32>)],
    ) -> Result<Self, AlgebraError> {
        let mut p = Self::zero(field, n, degree);
        for (c, e) in terms {
            if e.len() != n + 1 || e.iter().sum::<u32>() != degree {
                return Err(AlgebraError::Shape(format!("bad monomial {e:?}")));
            }
            let i = monomial_index(e);
            p.coeffs[i] = &p.coeffs[i] + &field.from_i64(*c);
        }
        Ok(p)
    }

    /// The coordinate form `x_i`.
    pub fn variable(field: Field, n: usize, i: usize) -> Self {
        let mut e = vec![0; n + 1];
        e[i] = 1;
        let mut p = Self::zero(field, n, 1);
        p.coeffs[monomial_index(&e)] = field.one();
        p
    }

    /// The linear form `sum c_i x_i`.
    pub fn linear(field: Field, coeffs: &[Scalar]) -> Self {
        let n = coeffs.len() - 1;
        let mut p = Self::zero(field, n, 1);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n + 1];
            e[i] = 1;
            p.coeffs[monomial_index(&e)] = c.clone();
        }
        p
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Projective dimension of the ambient space (`nvars - 1`).
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        self.n + 1
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, exps: &[u32]) -> &Scalar {
        &self.coeffs[monomial_index(exps)]
    }

    pub fn basis(&self) -> MonomialBasis {
        MonomialBasis::new(self.n + 1, self.degree)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    /// Nonzero terms in basis order.
    pub fn terms(&self) -> Vec<(Scalar, Vec<u32>)> {
        self.basis()
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (c.clone(), m.0.clone()))
            .collect()
    }

    /// First nonzero term in graded-lex order.
    pub fn leading_term(&self) -> Option<(Scalar, Vec<u32>)> {
        let i = self.coeffs.iter().position(|c| !c.is_zero())?;
        Some((self.coeffs[i].clone(), self.basis().get(i).0.clone()))
    }

    fn same_space(&self, other: &Self) {
        assert_eq!(self.field, other.field, "forms over different fields");
        assert_eq!(self.n, other.n, "forms in different numbers of variables");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_space(other);
        assert_eq!(self.degree, other.degree, "adding forms of different degrees");
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Self { coeffs, ..self.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-self.field.one()))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a * c).collect();
        Self { coeffs, ..self.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_space(other);
        let mut out = Self::zero(self.field, self.n, self.degree + other.degree);
        let lhs = self.terms();
        let rhs = other.terms();
        let mut e = vec![0u32; self.n + 1];
        for (a, ea) in &lhs {
            for (b, eb) in &rhs {
                for k in 0..e.len() {
                    e[k] = ea[k] + eb[k];
                }
                let i = monomial_index(&e);
                out.coeffs[i] = &out.coeffs[i] + &(a * b);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::zero(self.field, self.n, 0);
        acc.coeffs[0] = self.field.one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `dF/dx_i`; the derivative of a constant is the zero constant.
    pub fn partial(&self, i: usize) -> Self {
        if self.degree == 0 {
            return Self::zero(self.field, self.n, 0);
        }
        let mut out = Self::zero(self.field, self.n, self.degree - 1);
        for (c, mut e) in self.terms() {
            if e[i] == 0 {
                continue;
            }
            let k = e[i];
            e[i] -= 1;
            let j = monomial_index(&e);
            out.coeffs[j] = &out.coeffs[j] + &(&c * &self.field.from_i64(i64::from(k)));
        }
        out
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..=self.n).map(|i| self.partial(i)).collect()
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.n + 1, "point has wrong length");
        let powers = powers_table(point, self.degree);
        let mut acc = self.field.zero();
        for (m, c) in self.basis().iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            let mut t = c.clone();
            for (k, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &powers[k][e as usize];
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Substitutes all variables but `var` by the coordinates of `point`, giving a
    /// univariate polynomial in `x_var`.
    pub fn to_uni(&self, var: usize, point: &[Scalar]) -> UniPoly {
        let powers = powers_table(point, self.degree);
        let mut out = vec![self.field.zero(); self.degree as usize + 1];
        for (m, c) in self.basis().iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            let mut t = c.clone();
            for (k, &e) in m.0.iter().enumerate() {
                if k != var && e > 0 {
                    t = &t * &powers[k][e as usize];
                }
            }
            let slot = m.0[var] as usize;
            out[slot] = &out[slot] + &t;
        }
        UniPoly::trimmed(self.field, out)
    }

    /// Linear substitution `x = M y` for an `(n+1) x (m+1)` matrix `M`, producing a form
    /// in `m + 1` variables. No rank condition is imposed; see [`Self::restrict`].
    pub fn substitute(&self, map: &ExactMatrix) -> Result<Self, AlgebraError> {
        if map.rows() != self.n + 1 || map.cols() == 0 {
            return Err(AlgebraError::Shape(format!(
                "substitution matrix is {}x{}, need {} rows",
                map.rows(),
                map.cols(),
                self.n + 1
            )));
        }
        if map.field() != self.field {
            return Err(AlgebraError::FieldMismatch(self.field, map.field()));
        }
        let m = map.cols() - 1;
        let images: Vec<Self> = (0..=self.n)
            .map(|i| Self::linear(self.field, map.row(i)))
            .collect();
        // image_powers[i][k] = (x_i image)^k
        let mut image_powers: Vec<Vec<Self>> = Vec::with_capacity(images.len());
        for img in &images {
            let mut row = vec![Self::zero(self.field, m, 0).add_const_one()];
            for k in 1..=self.degree {
                let next = row[k as usize - 1].mul(img);
                row.push(next);
            }
            image_powers.push(row);
        }
        let mut out = Self::zero(self.field, m, self.degree);
        for (c, e) in self.terms() {
            let mut t = Self::zero(self.field, m, 0).add_const_one().scale(&c);
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t.mul(&image_powers[i][k as usize]);
                }
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// Restriction to a linear subspace parametrized by the columns of `map`.
    /// The parametrization must have full column rank.
    pub fn restrict(&self, map: &ExactMatrix) -> Result<Self, AlgebraError> {
        if map.rank() < map.cols() {
            return Err(AlgebraError::RankDeficient);
        }
        self.substitute(map)
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        self.same_space(divisor);
        if divisor.is_zero() || divisor.degree > self.degree {
            return None;
        }
        let qdeg = self.degree - divisor.degree;
        let (dlc, dlm) = divisor.leading_term()?;
        let dinv = dlc.inv()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.field, self.n, qdeg);
        let steps = monomial_count(self.n + 1, qdeg);
        for _ in 0..=steps {
            let Some((rc, rm)) = rem.leading_term() else {
                return Some(quot);
            };
            if rm.iter().zip(&dlm).any(|(a, b)| a < b) {
                return None;
            }
            let qm: Vec<u32> = rm.iter().zip(&dlm).map(|(a, b)| a - b).collect();
            let qc = &rc * &dinv;
            let mut t = Self::zero(self.field, self.n, qdeg);
            t.coeffs[monomial_index(&qm)] = qc;
            quot = quot.add(&t);
            rem = rem.sub(&t.mul(divisor));
        }
        rem.is_zero().then_some(quot)
    }

    /// Matrix of second partials evaluated at `point`.
    pub fn hessian_at(&self, point: &[Scalar]) -> ExactMatrix {
        let nv = self.n + 1;
        let mut h = ExactMatrix::zeros(self.field, nv, nv);
        let grad = self.gradient();
        for (i, gi) in grad.iter().enumerate() {
            for j in i..nv {
                let v = gi.partial(j).eval(point);
                h.set(i, j, v.clone()).expect("same field");
                h.set(j, i, v).expect("same field");
            }
        }
        h
    }

    /// Scales so that the leading coefficient is one.
    pub fn normalized(&self) -> Self {
        match self.leading_term() {
            Some((c, _)) => self.scale(&c.inv().expect("nonzero")),
            None => self.clone(),
        }
    }

    fn add_const_one(mut self) -> Self {
        self.coeffs[0] = &self.coeffs[0] + &self.field.one();
        self
    }
}

fn powers_table(point: &[Scalar], d: u32) -> Vec<Vec<Scalar>> {
    point
        .iter()
        .map(|x| {
            let mut row = Vec::with_capacity(d as usize + 1);
            row.push(x.field().one());
            for k in 1..=d as usize {
                let next = &row[k - 1] * x;
                row.push(next);
            }
            row
        })
        .collect()
}

impl fmt::Display for HomogeneousPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (c, e)) in terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (i, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => write!(f, "*x{i}")?,
                    _ => write!(f, "*x{i}^{p}")?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_PRIMES;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fp() -> Field {
        Field::Prime(DEFAULT_PRIMES[0])
    }

    fn random_form(field: Field, n: usize, d: u32, rng: &mut ChaCha8Rng) -> HomogeneousPoly {
        let count = monomial_count(n + 1, d);
        HomogeneousPoly::from_coeffs(field, n, d, (0..count).map(|_| field.random(rng, 5)).collect())
            .unwrap()
    }

    #[test]
    fn restrict_square_to_line() {
        let f = fp();
        let x0sq = HomogeneousPoly::from_terms(f, 2, 2, &[(1, vec![2, 0, 0])]).unwrap();
        let map = ExactMatrix::from_i64(f, &[vec![1, 0], vec![0, 1], vec![0, 0]]).unwrap();
        let r = x0sq.restrict(&map).unwrap();
        assert_eq!(r, HomogeneousPoly::from_terms(f, 1, 2, &[(1, vec![2, 0])]).unwrap());
        let zero = HomogeneousPoly::zero(f, 2, 3);
        assert!(zero.restrict(&map).unwrap().is_zero());
        let bad = ExactMatrix::from_i64(f, &[vec![1, 2], vec![0, 0], vec![0, 0]]).unwrap();
        assert_eq!(x0sq.restrict(&bad), Err(AlgebraError::RankDeficient));
    }

    #[test]
    fn line_through_double_point_gives_double_root() {
        // F = x0 * x1^2 - x2^3 is singular at p = (1:0:0); the line p + t q meets it
        // with multiplicity two at t = 0.
        let f = Field::Rational;
        let form = HomogeneousPoly::from_terms(f, 2, 3, &[(1, vec![1, 2, 0]), (-1, vec![0, 0, 3])])
            .unwrap();
        let map = ExactMatrix::from_i64(f, &[vec![1, 2], vec![0, 3], vec![0, -1]]).unwrap();
        let binary = form.restrict(&map).unwrap();
        // dehomogenize s = 1: the parameter t of p is 0
        let uni = binary.to_uni(1, &[f.one(), f.one()]);
        assert!(uni.root_multiplicity(&f.zero()) >= 2);
    }

    #[test]
    fn euler_relation_holds() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for field in [Field::Rational, fp()] {
            for (n, d) in [(1, 3), (2, 4), (3, 2)] {
                let form = random_form(field, n, d, &mut rng);
                let mut lhs = HomogeneousPoly::zero(field, n, d);
                for i in 0..=n {
                    lhs = lhs.add(&HomogeneousPoly::variable(field, n, i).mul(&form.partial(i)));
                }
                assert_eq!(lhs, form.scale(&field.from_i64(i64::from(d))));
            }
        }
    }

    #[test]
    fn restriction_is_linear() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let field = fp();
        for _ in 0..10 {
            let f = random_form(field, 3, 3, &mut rng);
            let g = random_form(field, 3, 3, &mut rng);
            let a = field.random(&mut rng, 0);
            let b = field.random(&mut rng, 0);
            let map = ExactMatrix::from_rows(
                field,
                (0..4).map(|_| (0..3).map(|_| field.random(&mut rng, 0)).collect()).collect(),
            )
            .unwrap();
            let lhs = f.scale(&a).add(&g.scale(&b)).restrict(&map).unwrap();
            let rhs = f
                .restrict(&map)
                .unwrap()
                .scale(&a)
                .add(&g.restrict(&map).unwrap().scale(&b));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn product_and_exact_division() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for field in [Field::Rational, fp()] {
            let a = random_form(field, 2, 2, &mut rng);
            let b = random_form(field, 2, 3, &mut rng);
            let ab = a.mul(&b);
            assert_eq!(ab.exact_div(&a), Some(b.clone()));
            let c = random_form(field, 2, 2, &mut rng);
            assert_eq!(ab.add(&c.mul(&HomogeneousPoly::variable(field, 2, 0).pow(3))).exact_div(&a), None);
        }
    }

    #[test]
    fn evaluation_agrees_with_to_uni() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let field = fp();
        let form = random_form(field, 2, 4, &mut rng);
        let pt: Vec<_> = (0..3).map(|_| field.random(&mut rng, 0)).collect();
        let uni = form.to_uni(0, &pt);
        assert_eq!(uni.eval(&pt[0]), form.eval(&pt));
    }
}
