//! Monomial bases of homogeneous forms in graded-lex order.
//!
//! All monomials of a basis share one total degree, so graded-lex is plain
//! lexicographic order with `x0^d` first and `xn^d` last.

use super::binomial_usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }
}

/// Number of degree-`d` monomials in `nvars` variables.
pub fn monomial_count(nvars: usize, d: u32) -> usize {
    if nvars == 0 {
        return usize::from(d == 0);
    }
    binomial_usize(nvars - 1 + d as usize, nvars - 1)
}

/// Position of `exps` in the graded-lex enumeration of its degree.
pub fn monomial_index(exps: &[u32]) -> usize {
    let nvars = exps.len();
    let mut remaining: u32 = exps.iter().sum();
    let mut index = 0usize;
    for (i, &e) in exps.iter().enumerate().take(nvars.saturating_sub(1)) {
        let tail_vars = nvars - i - 1;
        // every monomial with a larger exponent in position i comes first
        for v in (e + 1)..=remaining {
            index += monomial_count(tail_vars, remaining - v);
        }
        remaining -= e;
    }
    index
}

/// The ordered list of degree-`d` monomials in `nvars` variables.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    nvars: usize,
    degree: u32,
    monomials: Vec<Monomial>,
}

impl MonomialBasis {
    pub fn new(nvars: usize, degree: u32) -> Self {
        let mut monomials = Vec::with_capacity(monomial_count(nvars, degree));
        let mut current = vec![0u32; nvars];
        if nvars > 0 {
            fill(&mut current, 0, degree, &mut monomials);
        }
        Self {
            nvars,
            degree,
            monomials,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Monomial> {
        self.monomials.iter()
    }

    pub fn get(&self, i: usize) -> &Monomial {
        &self.monomials[i]
    }
}

fn fill(current: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<Monomial>) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(Monomial(current.clone()));
        return;
    }
    for e in (0..=remaining).rev() {
        current[pos] = e;
        fill(current, pos + 1, remaining - e, out);
    }
    current[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_order_and_index_agree() {
        for nvars in 1..5 {
            for d in 0..7 {
                let basis = MonomialBasis::new(nvars, d);
                assert_eq!(basis.len(), monomial_count(nvars, d));
                for (i, m) in basis.iter().enumerate() {
                    assert_eq!(monomial_index(&m.0), i);
                    assert_eq!(m.degree(), d);
                }
                for w in basis.monomials.windows(2) {
                    assert!(w[0] > w[1], "lex-descending");
                }
            }
        }
    }

    #[test]
    fn ternary_quadrics() {
        let basis = MonomialBasis::new(3, 2);
        let expected = [[2, 0, 0], [1, 1, 0], [1, 0, 1], [0, 2, 0], [0, 1, 1], [0, 0, 2]];
        for (m, e) in basis.iter().zip(expected) {
            assert_eq!(m.0, e.to_vec());
        }
    }
}
