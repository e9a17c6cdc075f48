//! Simple linear recurrences in Binet form, G_n = f₁α₁ⁿ + … + f_dα_dⁿ, over ℚ(x).

use crate::error::{Error, Result};
use crate::exactalg::{parse_expr, RatFunc};
use crate::places::{height, joint_divisors, Height};

/// Binet data of a simple recurrence: constant coefficients and pairwise distinct roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Recurrence {
    coeffs: Vec<RatFunc>,
    roots: Vec<RatFunc>,
}

/// Checks the standing conventions: order at least two, no zero coefficient or root,
/// pairwise distinct roots.
pub fn validate(coeffs: Vec<RatFunc>, roots: Vec<RatFunc>) -> Result<Recurrence> {
    if coeffs.len() != roots.len() {
        return Err(Error::LengthMismatch { coefficients: coeffs.len(), roots: roots.len() });
    }
    if coeffs.len() < 2 {
        return Err(Error::OrderTooSmall(coeffs.len()));
    }
    if let Some(i) = coeffs.iter().position(RatFunc::is_zero) {
        return Err(Error::DegenerateDatum(format!("coefficient {i} is zero")));
    }
    if let Some(i) = roots.iter().position(RatFunc::is_zero) {
        return Err(Error::DegenerateDatum(format!("root {i} is zero")));
    }
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            if roots[i] == roots[j] {
                return Err(Error::RootsNotDistinct(i, j));
            }
        }
    }
    Ok(Recurrence { coeffs, roots })
}

impl Recurrence {
    pub fn new(coeffs: Vec<RatFunc>, roots: Vec<RatFunc>) -> Result<Self> {
        validate(coeffs, roots)
    }

    /// Parses coefficient and root expressions, then validates.
    pub fn parse<S: AsRef<str>>(coeffs: &[S], roots: &[S]) -> Result<Self> {
        let parse_all = |v: &[S]| v.iter().map(|t| parse_expr(t.as_ref())).collect::<Result<Vec<_>>>();
        validate(parse_all(coeffs)?, parse_all(roots)?)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn roots(&self) -> &[RatFunc] {
        &self.roots
    }

    /// G_n.
    pub fn term(&self, n: u64) -> RatFunc {
        let e = i64::try_from(n).expect("index fits in i64");
        self.coeffs.iter().zip(&self.roots).fold(RatFunc::zero(), |acc, (f, a)| {
            acc.add(&f.mul(&a.pow(e).expect("roots are nonzero")))
        })
    }

    /// G_0, …, G_n, with each root power obtained from the previous one by a single
    /// multiplication.
    pub fn terms_up_to(&self, n: u64) -> Vec<RatFunc> {
        let mut scaled: Vec<RatFunc> = self.coeffs.clone();
        let mut out = Vec::with_capacity(n as usize + 1);
        for k in 0..=n {
            if k > 0 {
                for (s, a) in scaled.iter_mut().zip(&self.roots) {
                    *s = s.mul(a);
                }
            }
            out.push(scaled.iter().fold(RatFunc::zero(), |acc, s| acc.add(s)));
        }
        out
    }

    /// G_{n₁} + … + G_{n_t} for strictly decreasing indices.
    pub fn sum_terms(&self, indices: &[u64]) -> Result<RatFunc> {
        check_decreasing(indices)?;
        Ok(indices.iter().fold(RatFunc::zero(), |acc, &n| acc.add(&self.term(n))))
    }
}

pub(crate) fn check_decreasing(indices: &[u64]) -> Result<()> {
    if indices.is_empty() {
        return Err(Error::EmptyIndices);
    }
    if indices.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::IndicesNotDecreasing);
    }
    Ok(())
}

pub fn term(r: &Recurrence, n: u64) -> RatFunc {
    r.term(n)
}

pub fn sum_terms(r: &Recurrence, indices: &[u64]) -> Result<RatFunc> {
    r.sum_terms(indices)
}

fn ordered_pairs(d: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..d).flat_map(move |i| (0..d).filter(move |&j| j != i).map(move |j| (i, j)))
}

/// No quotient α_i/α_j (i ≠ j) is constant.
pub fn is_nondegenerate(r: &Recurrence) -> bool {
    ordered_pairs(r.order()).all(|(i, j)| {
        let q = r.roots[i].div(&r.roots[j]).expect("roots are nonzero");
        height(&q) >= Height::Finite(1)
    })
}

/// No root is constant.
pub fn roots_nonconstant(r: &Recurrence) -> bool {
    r.roots.iter().all(|a| height(a) >= Height::Finite(1))
}

/// α^r β^s ∈ ℂ forces r = s = 0, decided by ℚ-rank of the two divisor vectors
/// (including infinity) over a common refined basis.
pub fn mult_independent(alpha: &RatFunc, beta: &RatFunc) -> bool {
    if alpha.is_zero() || beta.is_zero() {
        return false;
    }
    let (divs, basis) = joint_divisors(&[alpha, beta]).expect("nonzero inputs");
    let v = divs[0].vector(&basis);
    let w = divs[1].vector(&basis);
    (0..v.len()).any(|i| (i + 1..v.len()).any(|j| v[i] * w[j] != v[j] * w[i]))
}

/// Every pair of distinct roots is multiplicatively independent.
pub fn pairwise_mult_independent(r: &Recurrence) -> bool {
    let d = r.order();
    (0..d).all(|i| (i + 1..d).all(|j| mult_independent(&r.roots[i], &r.roots[j])))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(coeffs: &[&str], roots: &[&str]) -> Recurrence {
        Recurrence::parse(coeffs, roots).unwrap()
    }

    fn f(t: &str) -> RatFunc {
        parse_expr(t).unwrap()
    }

    #[test]
    fn validation_errors() {
        assert!(Recurrence::parse(&["x", "-(x+1)"], &["x+1", "x"]).is_ok());
        assert!(matches!(
            Recurrence::parse(&["1", "0"], &["x", "x+1"]),
            Err(Error::DegenerateDatum(_))
        ));
        assert_eq!(Recurrence::parse(&["1", "2"], &["x", "x"]), Err(Error::RootsNotDistinct(0, 1)));
        assert_eq!(Recurrence::parse(&["1"], &["x"]), Err(Error::OrderTooSmall(1)));
        assert_eq!(
            Recurrence::parse(&["1", "2"], &["x"]),
            Err(Error::LengthMismatch { coefficients: 2, roots: 1 })
        );
    }

    #[test]
    fn nondegeneracy_examples() {
        assert!(is_nondegenerate(&rec(&["1", "1"], &["x", "x+1"])));
        assert!(!is_nondegenerate(&rec(&["1", "1"], &["x", "2*x"])));
        assert!(is_nondegenerate(&rec(&["1", "1"], &["x^2", "x^2+x"])));
    }

    #[test]
    fn nonconstant_root_examples() {
        assert!(roots_nonconstant(&rec(&["1", "1"], &["x", "x+1"])));
        assert!(!roots_nonconstant(&rec(&["1", "1"], &["2", "x"])));
        assert!(roots_nonconstant(&rec(&["1", "1"], &["(x+1)/x", "x^2"])));
    }

    #[test]
    fn independence_examples() {
        assert!(mult_independent(&f("x"), &f("x+1")));
        assert!(!mult_independent(&f("x^2"), &f("x^3")));
        assert!(mult_independent(&f("x/(x+1)"), &f("x*(x+1)")));
        assert!(!mult_independent(&f("3"), &f("x")));
        assert!(!mult_independent(&f("x/(x+1)"), &f("(x+1)^2/x^2")));
        assert!(pairwise_mult_independent(&rec(&["1", "1", "1"], &["x", "x+1", "x-1"])));
        assert!(!pairwise_mult_independent(&rec(&["1", "1", "1"], &["x", "x+1", "x^2"])));
    }

    #[test]
    fn term_examples() {
        let e1 = rec(&["x", "-(x+1)"], &["x+1", "x"]);
        assert_eq!(e1.term(2), f("x^2+x"));
        assert!(e1.term(1).is_zero());
        assert_eq!(e1.term(0), f("-1"));
        let e2 = rec(&["1", "-1"], &["x", "x+1"]);
        assert_eq!(e2.sum_terms(&[2, 1]).unwrap(), f("-2*x-2"));
        assert_eq!(e2.sum_terms(&[2, 2]), Err(Error::IndicesNotDecreasing));
        assert_eq!(e2.sum_terms(&[]), Err(Error::EmptyIndices));
    }

    #[test]
    fn incremental_terms_match_direct_powers() {
        let r = rec(&["x/(x+1)", "3", "-1/2"], &["(x+1)/x", "x^2", "x-1"]);
        let incremental = r.terms_up_to(7);
        for (n, g) in incremental.iter().enumerate() {
            assert_eq!(g, &r.term(n as u64), "n = {n}");
        }
    }
}
