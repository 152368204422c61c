//! Dense univariate polynomials over an exact field.

use std::fmt;

use super::{AlgebraError, ExactMatrix, Field, Scalar};

/// Coefficients from the constant term upwards; trailing zeros are trimmed, so the
/// zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(field: Field, coeffs: Vec<Scalar>) -> Result<Self, AlgebraError> {
        if let Some(bad) = coeffs.iter().find(|c| c.field() != field) {
            return Err(AlgebraError::FieldMismatch(field, bad.field()));
        }
        Ok(Self::trimmed(field, coeffs))
    }

    pub fn from_i64(field: Field, coeffs: &[i64]) -> Self {
        Self::trimmed(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub(crate) fn trimmed(field: Field, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Self { field, coeffs }
    }

    pub fn zero(field: Field) -> Self {
        Self {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: Scalar) -> Self {
        Self::trimmed(c.field(), vec![c])
    }

    /// `x - root`.
    pub fn linear(root: &Scalar) -> Self {
        let f = root.field();
        Self::trimmed(f, vec![-root, f.one()])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        self.check(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect();
        Self::trimmed(self.field, coeffs)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.scale(&-self.field.one()))
    }

    pub fn scale(&self, c: &Scalar) -> UniPoly {
        Self::trimmed(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        self.check(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::trimmed(self.field, out)
    }

    pub fn derivative(&self) -> UniPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &self.field.from_i64(i as i64))
            .collect();
        Self::trimmed(self.field, coeffs)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        self.check(divisor);
        let dlead = divisor.leading().expect("division by the zero polynomial");
        let dinv = dlead.inv().expect("nonzero leading coefficient");
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(self.field), self.clone());
        }
        let mut quot = vec![self.field.zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &dinv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = &rem[i + j] - &(&c * d);
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::trimmed(self.field, quot), Self::trimmed(self.field, rem))
    }

    /// Leading coefficient scaled to one; zero stays zero.
    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().expect("nonzero")),
        }
    }

    /// Squarefree over the algebraic closure (characteristic must exceed the degree).
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => uni_gcd(self, &self.derivative()).degree() == Some(0),
        }
    }

    /// Multiplicity of `root` as a root.
    pub fn root_multiplicity(&self, root: &Scalar) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let lin = UniPoly::linear(root);
        let mut p = self.clone();
        let mut m = 0;
        loop {
            let (q, r) = p.div_rem(&lin);
            if !r.is_zero() {
                return m;
            }
            p = q;
            m += 1;
        }
    }

    /// Lagrange interpolation through distinct abscissae.
    pub fn interpolate(field: Field, points: &[(Scalar, Scalar)]) -> UniPoly {
        let mut acc = UniPoly::zero(field);
        for (i, (xi, yi)) in points.iter().enumerate() {
            let mut basis = UniPoly::constant(field.one());
            let mut denom = field.one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i != j {
                    basis = basis.mul(&UniPoly::linear(xj));
                    denom = &denom * &(xi - xj);
                }
            }
            acc = acc.add(&basis.scale(&(yi / &denom)));
        }
        acc
    }

    fn check(&self, other: &UniPoly) {
        assert_eq!(self.field, other.field, "univariate operands in different fields");
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*x")?,
                _ => write!(f, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn uni_gcd(f: &UniPoly, g: &UniPoly) -> UniPoly {
    let mut a = f.clone();
    let mut b = g.clone();
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b);
        a = b;
        b = r;
    }
    a.monic()
}

/// Determinant of the Sylvester matrix of `f` and `g`, rows of `f` coefficients first.
/// Zero when either input is zero and the other is not constant.
pub fn resultant(f: &UniPoly, g: &UniPoly) -> Result<Scalar, AlgebraError> {
    if f.field() != g.field() {
        return Err(AlgebraError::FieldMismatch(f.field(), g.field()));
    }
    let field = f.field();
    let (m, n) = match (f.degree(), g.degree()) {
        (None, None) => return Err(AlgebraError::BothZero),
        (None, Some(0)) | (Some(0), None) => return Ok(field.one()),
        (None, _) | (_, None) => return Ok(field.zero()),
        (Some(m), Some(n)) => (m, n),
    };
    let size = m + n;
    if size == 0 {
        return Ok(field.one());
    }
    let mut s = ExactMatrix::zeros(field, size, size);
    for r in 0..n {
        for (k, c) in f.coeffs().iter().rev().enumerate() {
            s.set(r, r + k, c.clone())?;
        }
    }
    for r in 0..m {
        for (k, c) in g.coeffs().iter().rev().enumerate() {
            s.set(n + r, r + k, c.clone())?;
        }
    }
    s.determinant()
}
