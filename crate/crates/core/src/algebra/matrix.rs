//! Dense matrices over one exact field with rank, kernel and determinant.
//!
//! Prime-field matrices are eliminated on raw residues; rational matrices use
//! fraction-free (Bareiss) elimination on integer rows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::scalar::inv_mod;
use super::{AlgebraError, Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

/// Rank together with a basis of the right kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankKernel {
    pub rank: usize,
    pub kernel: Vec<Vec<Scalar>>,
}

impl ExactMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = field.one();
        }
        m
    }

    /// Builds a matrix from rows, rejecting ragged rows and foreign-field entries.
    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Self, AlgebraError> {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(AlgebraError::Shape(format!(
                    "row of length {} in a {cols}-column matrix",
                    row.len()
                )));
            }
            for s in row {
                if s.field() != field {
                    return Err(AlgebraError::FieldMismatch(field, s.field()));
                }
                entries.push(s);
            }
        }
        Ok(Self {
            field,
            rows: nrows,
            cols,
            entries,
        })
    }

    pub fn from_i64(field: Field, rows: &[Vec<i64>]) -> Result<Self, AlgebraError> {
        Self::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) -> Result<(), AlgebraError> {
        if value.field() != self.field {
            return Err(AlgebraError::FieldMismatch(self.field, value.field()));
        }
        self.entries[r * self.cols + c] = value;
        Ok(())
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn push_row(&mut self, row: Vec<Scalar>) -> Result<(), AlgebraError> {
        if self.rows == 0 && self.cols == 0 {
            self.cols = row.len();
        }
        if row.len() != self.cols {
            return Err(AlgebraError::Shape(format!(
                "row of length {} in a {}-column matrix",
                row.len(),
                self.cols
            )));
        }
        if let Some(bad) = row.iter().find(|s| s.field() != self.field) {
            return Err(AlgebraError::FieldMismatch(self.field, bad.field()));
        }
        self.entries.extend(row);
        self.rows += 1;
        Ok(())
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        Self {
            field: self.field,
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, AlgebraError> {
        if v.len() != self.cols {
            return Err(AlgebraError::Shape(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .try_fold(self.field.zero(), |acc, (a, b)| acc.try_add(&a.try_mul(b)?))
            })
            .collect()
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix, AlgebraError> {
        if self.cols != other.rows {
            return Err(AlgebraError::Shape("inner dimensions differ".into()));
        }
        if self.field != other.field {
            return Err(AlgebraError::FieldMismatch(self.field, other.field));
        }
        let mut out = ExactMatrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = self.field.zero();
                for k in 0..self.cols {
                    acc = &acc + &(self.get(i, k) * other.get(k, j));
                }
                out.entries[i * other.cols + j] = acc;
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        match self.field {
            Field::Prime(p) => {
                let mut data = self.residues();
                echelon_mod(&mut data, self.rows, self.cols, p, false).len()
            }
            Field::Rational => {
                let mut data = self.integer_rows();
                bareiss(&mut data, self.cols).0.len()
            }
        }
    }

    /// Exact rank and a kernel basis; every basis vector `v` satisfies `self * v = 0`.
    pub fn rank_and_kernel(&self) -> RankKernel {
        match self.field {
            Field::Prime(p) => {
                let mut data = self.residues();
                let pivots = echelon_mod(&mut data, self.rows, self.cols, p, true);
                let kernel = free_columns(&pivots, self.cols)
                    .map(|f| {
                        let mut v = vec![0u64; self.cols];
                        v[f] = 1;
                        for (i, &pc) in pivots.iter().enumerate() {
                            let x = data[i * self.cols + f];
                            v[pc] = (p - x) % p;
                        }
                        v.into_iter()
                            .map(|value| Scalar::Mod { value, modulus: p })
                            .collect()
                    })
                    .collect();
                RankKernel {
                    rank: pivots.len(),
                    kernel,
                }
            }
            Field::Rational => {
                let mut data = self.integer_rows();
                let (pivots, _) = bareiss(&mut data, self.cols);
                let kernel = free_columns(&pivots, self.cols)
                    .map(|f| back_substitute(&data, &pivots, f, self.cols))
                    .collect();
                RankKernel {
                    rank: pivots.len(),
                    kernel,
                }
            }
        }
    }

    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        self.rank_and_kernel().kernel
    }

    pub fn determinant(&self) -> Result<Scalar, AlgebraError> {
        if self.rows != self.cols {
            return Err(AlgebraError::Shape("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.field.one());
        }
        match self.field {
            Field::Prime(p) => {
                let mut data = self.residues();
                let mut det = 1u64;
                for c in 0..n {
                    let Some(pr) = (c..n).find(|&r| data[r * n + c] != 0) else {
                        return Ok(self.field.zero());
                    };
                    if pr != c {
                        swap_rows(&mut data, n, pr, c);
                        det = (p - det) % p;
                    }
                    let pivot = data[c * n + c];
                    det = det * pivot % p;
                    let inv = inv_mod(pivot, p).expect("nonzero pivot");
                    for r in c + 1..n {
                        let f = data[r * n + c] * inv % p;
                        if f != 0 {
                            for j in c..n {
                                let s = f * data[c * n + j] % p;
                                data[r * n + j] = (data[r * n + j] + p - s) % p;
                            }
                        }
                    }
                }
                Ok(Scalar::Mod {
                    value: det,
                    modulus: p,
                })
            }
            Field::Rational => {
                let mut rows = Vec::with_capacity(n);
                let mut scale = BigInt::one();
                for r in 0..n {
                    let (ints, den) = clear_denominators(self.row(r));
                    scale *= den;
                    rows.push(ints);
                }
                let (pivots, swaps) = bareiss(&mut rows, n);
                if pivots.len() < n {
                    return Ok(self.field.zero());
                }
                let mut det = rows[n - 1][n - 1].clone();
                if swaps % 2 == 1 {
                    det = -det;
                }
                Ok(Scalar::Rational(BigRational::new(det, scale)))
            }
        }
    }

    fn residues(&self) -> Vec<u64> {
        self.entries
            .iter()
            .map(|s| s.residue().expect("prime-field entry"))
            .collect()
    }

    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| clear_denominators(self.row(r)).0)
            .collect()
    }
}

fn free_columns(pivots: &[usize], cols: usize) -> impl Iterator<Item = usize> + '_ {
    (0..cols).filter(move |c| !pivots.contains(c))
}

fn swap_rows<T>(data: &mut [T], cols: usize, a: usize, b: usize) {
    if a == b {
        return;
    }
    let (lo, hi) = (a.min(b), a.max(b));
    let (head, tail) = data.split_at_mut(hi * cols);
    head[lo * cols..(lo + 1) * cols].swap_with_slice(&mut tail[..cols]);
}

/// Row-echelon (or reduced row-echelon when `reduce`) form mod `p`, in place.
/// Returns pivot columns; in reduced form pivot rows are normalized to 1.
fn echelon_mod(data: &mut [u64], rows: usize, cols: usize, p: u64, reduce: bool) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| data[i * cols + c] != 0) else {
            continue;
        };
        swap_rows(data, cols, pr, r);
        let inv = inv_mod(data[r * cols + c], p).expect("nonzero pivot");
        if reduce {
            for j in c..cols {
                data[r * cols + j] = data[r * cols + j] * inv % p;
            }
        }
        let (pivot_row, others) = if reduce { (0..rows, true) } else { (r + 1..rows, false) };
        let prow: Vec<u64> = data[r * cols + c..(r + 1) * cols].to_vec();
        for i in pivot_row {
            if others && i == r {
                continue;
            }
            let lead = data[i * cols + c];
            if lead == 0 {
                continue;
            }
            let f = if reduce { lead } else { lead * inv % p };
            let row = &mut data[i * cols + c..(i + 1) * cols];
            for (x, &y) in row.iter_mut().zip(&prow) {
                if y != 0 {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Scales a rational row to a primitive-denominator integer row; returns the row and the
/// positive common denominator that was cleared.
fn clear_denominators(row: &[Scalar]) -> (Vec<BigInt>, BigInt) {
    let den = row.iter().fold(BigInt::one(), |acc, s| {
        let r = s.as_rational().expect("rational entry");
        acc.lcm(r.denom())
    });
    let ints = row
        .iter()
        .map(|s| {
            let r = s.as_rational().expect("rational entry");
            r.numer() * (&den / r.denom())
        })
        .collect();
    (ints, den)
}

/// Fraction-free Gaussian elimination to row-echelon form. Every division is exact.
/// Returns pivot columns and the number of row swaps.
fn bareiss(m: &mut [Vec<BigInt>], cols: usize) -> (Vec<usize>, usize) {
    let rows = m.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut swaps = 0;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        if pr != r {
            m.swap(pr, r);
            swaps += 1;
        }
        let (top, bottom) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = &pivot_row[c];
        for row in bottom.iter_mut() {
            let lead = row[c].clone();
            for j in c + 1..cols {
                let v = pivot * &row[j] - &lead * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = pivot.clone();
        pivots.push(c);
        r += 1;
    }
    (pivots, swaps)
}

fn back_substitute(echelon: &[Vec<BigInt>], pivots: &[usize], free: usize, cols: usize) -> Vec<Scalar> {
    let mut x: Vec<BigRational> = vec![BigRational::zero(); cols];
    x[free] = BigRational::one();
    for (i, &pc) in pivots.iter().enumerate().rev() {
        let row = &echelon[i];
        let mut acc = BigRational::zero();
        for j in pc + 1..cols {
            if !row[j].is_zero() && !x[j].is_zero() {
                acc += BigRational::from_integer(row[j].clone()) * &x[j];
            }
        }
        x[pc] = -acc / BigRational::from_integer(row[pc].clone());
    }
    // present kernel vectors with integer entries and positive free coordinate
    let den = x.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let g = x.iter().fold(BigInt::zero(), |acc, r| {
        acc.gcd(&(r.numer() * (&den / r.denom())))
    });
    let g = if g.is_zero() { BigInt::one() } else { g.abs() };
    x.into_iter()
        .map(|r| {
            let v = r.numer() * (&den / r.denom()) / &g;
            Scalar::Rational(BigRational::from_integer(v))
        })
        .collect()
}
