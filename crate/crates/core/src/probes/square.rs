use crate::algebra::{monomial_index, HomogeneousPoly, Scalar};

/// `Some((c, g))` with `F = c g^2` and `g` monic, when `F` is a constant times a square.
///
/// Works term by term from the graded-lex leading monomial: if `g = m + t` with `t < m`
/// then the leading term of `F/c - (m + t_1 + ...)^2` is `2 m` times the next term of `g`.
pub fn square_detect(f: &HomogeneousPoly) -> Option<(Scalar, HomogeneousPoly)> {
    let d = f.degree();
    if d % 2 == 1 || f.is_zero() || f.field().characteristic() == 2 {
        return None;
    }
    let field = f.field();
    let (c, lead) = f.leading_term()?;
    if lead.iter().any(|e| e % 2 == 1) {
        return None;
    }
    let target = f.scale(&c.inv()?);
    let top: Vec<u32> = lead.iter().map(|e| e / 2).collect();
    let mut g = HomogeneousPoly::zero(field, f.n(), d / 2);
    let mut coeffs = g.coeffs().to_vec();
    coeffs[monomial_index(&top)] = field.one();
    let two_inv = field.from_i64(2).inv()?;
    for _ in 0..coeffs.len() {
        g = HomogeneousPoly::from_coeffs(field, f.n(), d / 2, coeffs.clone()).ok()?;
        let rem = target.sub(&g.mul(&g));
        let Some((rc, re)) = rem.leading_term() else {
            return Some((c, g));
        };
        let next: Option<Vec<u32>> = re
            .iter()
            .zip(&top)
            .map(|(a, b)| a.checked_sub(*b))
            .collect();
        let next = next?;
        let i = monomial_index(&next);
        if !coeffs[i].is_zero() {
            return None;
        }
        coeffs[i] = &rc * &two_inv;
    }
    None
}
