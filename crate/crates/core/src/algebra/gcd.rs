//! Greatest common divisors of binary and ternary forms.
//!
//! After a random change of coordinates the gcd `G` has a nonzero `x0^e` coefficient.
//! Specializing the remaining variables along random lines gives univariate gcds equal
//! to `G` restricted (up to scale), which are interpolated back and then certified by
//! exact division.

use rand::Rng;

use super::{uni_gcd, AlgebraError, ExactMatrix, Field, HomogeneousPoly, Scalar, UniPoly};

const ATTEMPTS: usize = 8;

/// Normalized gcd of a family of forms in two or three variables. The zero family has gcd zero.
pub fn form_gcd<R: Rng + ?Sized>(
    forms: &[HomogeneousPoly],
    rng: &mut R,
) -> Result<HomogeneousPoly, AlgebraError> {
    let nonzero: Vec<&HomogeneousPoly> = forms.iter().filter(|f| !f.is_zero()).collect();
    let Some(first) = nonzero.first() else {
        let f = forms.first().ok_or(AlgebraError::Shape("empty family".into()))?;
        return Ok(f.clone());
    };
    let field = first.field();
    let n = first.n();
    if !(1..=2).contains(&n) {
        return Err(AlgebraError::Unsupported(n + 1));
    }
    if nonzero.len() == 1 {
        return Ok(first.normalized());
    }
    let min_degree = nonzero.iter().map(|f| f.degree()).min().unwrap_or(0);
    if min_degree == 0 {
        return Ok(constant_one(field, n));
    }
    for _ in 0..ATTEMPTS {
        let (m, m_inv) = random_invertible(field, n + 1, rng);
        let moved: Vec<HomogeneousPoly> = nonzero
            .iter()
            .map(|f| f.substitute(&m))
            .collect::<Result<_, _>>()?;
        let lead = |f: &HomogeneousPoly| {
            let mut e = vec![0; n + 1];
            e[0] = f.degree();
            f.coeff(&e).clone()
        };
        if moved.iter().any(|f| lead(f).is_zero()) {
            continue;
        }
        let Some(candidate) = interpolate_gcd(&moved, min_degree, rng) else {
            continue;
        };
        let g = candidate.substitute(&m_inv)?.normalized();
        if nonzero.iter().all(|f| f.exact_div(&g).is_some()) {
            return Ok(g);
        }
    }
    Err(AlgebraError::Unlucky(ATTEMPTS))
}

fn constant_one(field: Field, n: usize) -> HomogeneousPoly {
    HomogeneousPoly::from_coeffs(field, n, 0, vec![field.one()]).expect("constant")
}

fn interpolate_gcd<R: Rng + ?Sized>(
    forms: &[HomogeneousPoly],
    min_degree: u32,
    rng: &mut R,
) -> Option<HomogeneousPoly> {
    let field = forms[0].field();
    let n = forms[0].n();
    let specialize = |a: &Scalar| -> UniPoly {
        let mut point = vec![field.zero(); n + 1];
        if n == 2 {
            point[1] = a.clone();
        }
        point[n] = field.one();
        forms
            .iter()
            .map(|f| f.to_uni(0, &point))
            .fold(UniPoly::zero(field), |acc, u| uni_gcd(&acc, &u))
    };
    if n == 1 {
        let g = specialize(&field.zero());
        let e = g.degree()? as u32;
        let terms: Vec<Scalar> = (0..=e).rev().map(|j| g.coeff(j as usize)).collect();
        return HomogeneousPoly::from_coeffs(field, 1, e, terms).ok();
    }
    // ternary: collect specializations y = a, z = 1 of minimal x-degree
    let samples_wanted = min_degree as usize + 2;
    let mut samples: Vec<(Scalar, UniPoly)> = Vec::new();
    let mut tries = 0;
    while samples.len() < samples_wanted + 2 && tries < 4 * samples_wanted + 8 {
        tries += 1;
        let a = field.random(rng, 1_000);
        if samples.iter().any(|(b, _)| *b == a) {
            continue;
        }
        let g = specialize(&a);
        samples.push((a, g));
    }
    let e = samples.iter().filter_map(|(_, g)| g.degree()).min()? as u32;
    let good: Vec<&(Scalar, UniPoly)> = samples
        .iter()
        .filter(|(_, g)| g.degree() == Some(e as usize))
        .collect();
    if good.len() < e as usize + 1 {
        return None;
    }
    let mut coeffs = vec![field.zero(); super::monomial_count(3, e)];
    for j in 0..=e {
        let pts: Vec<(Scalar, Scalar)> = good
            .iter()
            .take(e as usize + 1)
            .map(|(a, u)| (a.clone(), u.coeff(j as usize)))
            .collect();
        let cj = UniPoly::interpolate(field, &pts);
        for (k, c) in cj.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = k as u32;
            if j + k > e {
                return None;
            }
            coeffs[super::monomial_index(&[j, k, e - j - k])] = c.clone();
        }
    }
    let g = HomogeneousPoly::from_coeffs(field, 2, e, coeffs).ok()?;
    Some(g)
}

/// A random invertible matrix and its inverse.
pub(crate) fn random_invertible<R: Rng + ?Sized>(
    field: Field,
    size: usize,
    rng: &mut R,
) -> (ExactMatrix, ExactMatrix) {
    loop {
        let rows: Vec<Vec<Scalar>> = (0..size)
            .map(|_| (0..size).map(|_| field.random(rng, 9)).collect())
            .collect();
        let m = ExactMatrix::from_rows(field, rows).expect("same field");
        if let Some(inv) = inverse(&m) {
            return (m, inv);
        }
    }
}

/// Inverse via the kernel of `[M | -I]`-style column solves; `None` when singular.
pub(crate) fn inverse(m: &ExactMatrix) -> Option<ExactMatrix> {
    let n = m.rows();
    let field = m.field();
    if m.rank() < n {
        return None;
    }
    let mut inv = ExactMatrix::zeros(field, n, n);
    for col in 0..n {
        // solve M x = e_col through the kernel of [M | e_col]
        let rows: Vec<Vec<Scalar>> = (0..n)
            .map(|r| {
                let mut row = m.row(r).to_vec();
                row.push(if r == col { -field.one() } else { field.zero() });
                row
            })
            .collect();
        let aug = ExactMatrix::from_rows(field, rows).ok()?;
        let k = aug.kernel();
        let v = k.first()?;
        let scale = v[n].inv()?;
        for r in 0..n {
            inv.set(r, col, &v[r] * &scale).ok()?;
        }
    }
    Some(inv)
}
