//! Places, valuations, divisors, heights and S-unit membership on ℚ(x).
//!
//! A finite place is stored as a monic squarefree polynomial over ℚ. A place of
//! degree k bundles the k conjugate points of ℂ at which it vanishes, so every
//! count and every height weights it by its degree. Valuations are only ever read
//! off against a basis refined from the squarefree decomposition of the function
//! in question, which makes the multiplicity the same at every point of a bundle.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactalg::modular::Screen;
use crate::exactalg::{extend_gcd_free_basis, gcd_free_basis, parse_expr, squarefree_decomposition, squarefree_part, Poly, RatFunc};

/// Literal naming the infinite place in textual place lists.
pub const INFINITY_TOKEN: &str = "inf";

/// A finite set of places of ℂ(x) defined over ℚ.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PlaceSet {
    finite: Vec<Poly>,
    has_infinity: bool,
    /// Product of `finite`, kept alongside since membership tests divide into it.
    product: Poly,
}

impl Default for PlaceSet {
    fn default() -> Self {
        PlaceSet { finite: Vec::new(), has_infinity: false, product: Poly::one() }
    }
}

fn product_of(finite: &[Poly]) -> Poly {
    finite.iter().fold(Poly::one(), |acc, b| &acc * b)
}

impl PlaceSet {
    pub fn empty() -> Self {
        PlaceSet::default()
    }

    /// Canonicalizes arbitrary nonzero polynomials into a place set: radicals are
    /// taken, overlaps split, constants dropped.
    pub fn new(polys: &[Poly], has_infinity: bool) -> Result<Self> {
        let finite = gcd_free_basis(polys)?;
        Ok(PlaceSet { product: product_of(&finite), finite, has_infinity })
    }

    /// Builds from an already canonical family without re-refining it.
    pub(crate) fn from_basis(finite: Vec<Poly>, has_infinity: bool) -> Self {
        debug_assert!(finite.windows(2).all(|w| w[0] < w[1]));
        PlaceSet { product: product_of(&finite), finite, has_infinity }
    }

    /// Parses the textual form: expression-grammar polynomials plus the token `inf`.
    pub fn parse<S: AsRef<str>>(tokens: &[S]) -> Result<Self> {
        let mut polys = Vec::new();
        let mut has_infinity = false;
        for t in tokens {
            let t = t.as_ref().trim();
            if t == INFINITY_TOKEN {
                has_infinity = true;
                continue;
            }
            let f = parse_expr(t)?;
            if f.is_zero() {
                return Err(Error::DegenerateDatum(format!("place '{t}' is the zero polynomial")));
            }
            polys.push(f.num().clone());
            polys.push(f.den().clone());
        }
        PlaceSet::new(&polys, has_infinity)
    }

    pub fn finite(&self) -> &[Poly] {
        &self.finite
    }

    pub fn has_infinity(&self) -> bool {
        self.has_infinity
    }

    pub fn is_empty(&self) -> bool {
        self.finite.is_empty() && !self.has_infinity
    }

    /// Product of the finite places, the radical every S-supported polynomial divides.
    pub fn product(&self) -> &Poly {
        &self.product
    }

    /// Textual form, finite places in canonical order followed by `inf`.
    pub fn render(&self) -> Vec<String> {
        let mut out: Vec<String> = self.finite.iter().map(Poly::render).collect();
        if self.has_infinity {
            out.push(INFINITY_TOKEN.to_string());
        }
        out
    }

    /// True when the squarefree polynomial `b` vanishes only at places of this set.
    pub fn covers(&self, b: &Poly) -> bool {
        self.finite.iter().any(|s| b.divides(s)) || b.divides(&self.product)
    }
}

impl fmt::Debug for PlaceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PlaceSet{{{}}}", self.render().join(", "))
    }
}

/// Number of places of ℂ(x) in the set: each finite element counts with its degree.
pub fn place_count(s: &PlaceSet) -> u64 {
    s.finite.iter().map(|b| b.deg0() as u64).sum::<u64>() + u64::from(s.has_infinity)
}

/// The valuations of a nonzero function, grouped by place bundles.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Divisor {
    entries: BTreeMap<Poly, i64>,
    at_infinity: i64,
}

impl Divisor {
    pub fn entries(&self) -> &BTreeMap<Poly, i64> {
        &self.entries
    }

    pub fn at_infinity(&self) -> i64 {
        self.at_infinity
    }

    pub fn valuation_at(&self, place: &Poly) -> i64 {
        self.entries.get(place).copied().unwrap_or(0)
    }

    /// Σ deg(b)·ν_b + ν_∞, which vanishes for the divisor of any nonzero function.
    pub fn weighted_total(&self) -> i64 {
        self.entries.iter().map(|(b, &v)| b.deg0() as i64 * v).sum::<i64>() + self.at_infinity
    }

    /// −Σ_ν min(0, ν) over the places of ℂ(x).
    pub fn pole_degree(&self) -> u64 {
        let finite: i64 = self.entries.iter().map(|(b, &v)| b.deg0() as i64 * (-v).max(0)).sum();
        (finite + (-self.at_infinity).max(0)) as u64
    }

    /// Σ_ν max(0, ν) over the places of ℂ(x).
    pub fn zero_degree(&self) -> u64 {
        let finite: i64 = self.entries.iter().map(|(b, &v)| b.deg0() as i64 * v.max(0)).sum();
        (finite + self.at_infinity.max(0)) as u64
    }

    /// Valuation vector over `basis` followed by the value at infinity, unweighted.
    pub fn vector(&self, basis: &[Poly]) -> Vec<i64> {
        basis.iter().map(|b| self.valuation_at(b)).chain([self.at_infinity]).collect()
    }
}

impl fmt::Debug for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|(b, v)| format!("{b}: {v}")).collect();
        write!(f, "Divisor{{{}; inf: {}}}", parts.join(", "), self.at_infinity)
    }
}

/// Height of a function: a nonnegative integer, or infinite for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Height {
    Finite(u64),
    Infinite,
}

impl Height {
    pub fn finite(self) -> Option<u64> {
        match self {
            Height::Finite(h) => Some(h),
            Height::Infinite => None,
        }
    }
}

impl fmt::Display for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Height::Finite(h) => write!(f, "{h}"),
            Height::Infinite => f.write_str("inf"),
        }
    }
}

/// ν_∞(f) = deg(den) − deg(num).
pub fn valuation_at_infinity(f: &RatFunc) -> Result<i64> {
    if f.is_zero() {
        return Err(Error::ZeroValuation);
    }
    Ok(f.den().deg0() as i64 - f.num().deg0() as i64)
}

/// Largest e with b^e | p, for nonzero p and nonconstant b.
fn multiplicity(p: &Poly, b: &Poly) -> i64 {
    let mut e = 0;
    let mut rest = p.clone();
    while let Some(q) = rest.exact_div(b) {
        rest = q;
        e += 1;
    }
    e
}

/// Divisor of `f` read off over `basis`, which must refine the squarefree
/// decomposition of both numerator and denominator of `f`.
fn divisor_over(f: &RatFunc, basis: &[Poly]) -> Divisor {
    let screens = [Screen::new(f.num().primitive_part()), Screen::new(f.den().primitive_part())];
    let mult = |k: usize, p: &Poly, b: &Poly| {
        if screens[k].may_be_divisible_by(b.primitive_part()) {
            multiplicity(p, b)
        } else {
            0
        }
    };
    let mut entries = BTreeMap::new();
    for b in basis {
        let v = mult(0, f.num(), b) - mult(1, f.den(), b);
        if v != 0 {
            entries.insert(b.clone(), v);
        }
    }
    let at_infinity = f.den().deg0() as i64 - f.num().deg0() as i64;
    Divisor { entries, at_infinity }
}

/// Squarefree-decomposition factors of numerator and denominator.
fn support_factors(f: &RatFunc) -> Result<Vec<Poly>> {
    let mut out: Vec<Poly> = squarefree_decomposition(f.num())?.into_iter().map(|(p, _)| p).collect();
    out.extend(squarefree_decomposition(f.den())?.into_iter().map(|(p, _)| p));
    Ok(out)
}

/// Common refined basis for several nonzero functions and extra context polynomials.
pub(crate) fn common_basis(fs: &[&RatFunc], context: &[Poly]) -> Result<Vec<Poly>> {
    let mut polys = Vec::new();
    for f in fs {
        if f.is_zero() {
            return Err(Error::ZeroValuation);
        }
        polys.extend(support_factors(f)?);
    }
    polys.extend(context.iter().cloned());
    gcd_free_basis(&polys)
}

/// Divisor of a nonzero function over a basis refined from its squarefree
/// decomposition and the `context` polynomials. The returned place set is that basis,
/// flagged at infinity when ν_∞(f) ≠ 0.
pub fn divisor(f: &RatFunc, context: &[Poly]) -> Result<(Divisor, PlaceSet)> {
    let basis = common_basis(&[f], context)?;
    let d = divisor_over(f, &basis);
    let places = PlaceSet::from_basis(basis, d.at_infinity != 0);
    Ok((d, places))
}

/// Divisors of several functions over one shared basis (returned alongside).
pub fn joint_divisors(fs: &[&RatFunc]) -> Result<(Vec<Divisor>, Vec<Poly>)> {
    let basis = common_basis(fs, &[])?;
    Ok((fs.iter().map(|f| divisor_over(f, &basis)).collect(), basis))
}

/// H(f) = max(deg num, deg den) in lowest terms; H(0) is infinite.
pub fn height(f: &RatFunc) -> Height {
    if f.is_zero() {
        return Height::Infinite;
    }
    Height::Finite(f.num().deg0().max(f.den().deg0()) as u64)
}

/// H(f) computed as −Σ_ν min(0, ν(f)) from the divisor.
pub fn height_by_divisor(f: &RatFunc) -> Result<Height> {
    if f.is_zero() {
        return Ok(Height::Infinite);
    }
    Ok(Height::Finite(divisor(f, &[])?.0.pole_degree()))
}

/// S-unit membership by divisibility: the radical of num·den must divide the product
/// of the finite places of `s`, and a zero or pole at infinity needs `inf ∈ s`.
pub fn is_s_unit(f: &RatFunc, s: &PlaceSet) -> bool {
    if f.is_zero() {
        return false;
    }
    if f.num().deg0() != f.den().deg0() && !s.has_infinity {
        return false;
    }
    // num and den are coprime, so rad(num·den) = rad(num)·rad(den)
    let rad = &squarefree_part(f.num()).expect("nonzero") * &squarefree_part(f.den()).expect("nonzero");
    if rad.is_one() {
        return true;
    }
    let product = s.product();
    match (rad.degree(), product.degree()) {
        (Some(r), Some(p)) if r <= p => {
            Screen::new(product.primitive_part()).may_be_divisible_by(rad.primitive_part()) && rad.divides(product)
        }
        _ => false,
    }
}

/// S-unit membership via the divisor: every bundle carrying a nonzero valuation must lie
/// in `s`, and a nonzero valuation at infinity needs `inf ∈ s`.
pub fn is_s_unit_by_divisor(f: &RatFunc, s: &PlaceSet) -> bool {
    if f.is_zero() {
        return false;
    }
    let basis = extend_gcd_free_basis(s.finite.clone(), &support_factors(f).expect("nonzero function"))
        .expect("nonzero factors");
    let d = divisor_over(f, &basis);
    (d.at_infinity == 0 || s.has_infinity) && d.entries.keys().all(|b| s.covers(b))
}

/// Smallest place set containing `s` under which every generator is an S-unit.
pub fn enlarge(s: &PlaceSet, gens: &[RatFunc]) -> Result<PlaceSet> {
    let mut polys: Vec<Poly> = s.finite.clone();
    let mut has_infinity = s.has_infinity;
    for g in gens {
        if g.is_zero() {
            return Err(Error::DegenerateDatum("zero generator in place-set enlargement".into()));
        }
        if g.num().deg0() != g.den().deg0() {
            has_infinity = true;
        }
        for p in [g.num(), g.den()] {
            if !p.is_constant() {
                polys.push(squarefree_part(p)?);
            }
        }
    }
    PlaceSet::new(&polys, has_infinity)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(text: &str) -> RatFunc {
        parse_expr(text).unwrap()
    }

    fn p(text: &str) -> Poly {
        let r = f(text);
        assert!(r.is_poly());
        r.num().clone()
    }

    fn s(tokens: &[&str]) -> PlaceSet {
        PlaceSet::parse(tokens).unwrap()
    }

    #[test]
    fn covers_products_of_places() {
        let places = s(&["x", "x+1"]);
        assert!(places.covers(&p("x^2+x")));
        assert!(places.covers(&p("x+1")));
        assert!(!places.covers(&p("x^2-1")));
    }

    #[test]
    fn valuation_at_infinity_examples() {
        assert_eq!(valuation_at_infinity(&f("x")), Ok(-1));
        assert_eq!(valuation_at_infinity(&f("1/x^2")), Ok(2));
        assert_eq!(valuation_at_infinity(&f("3")), Ok(0));
        assert_eq!(valuation_at_infinity(&RatFunc::zero()), Err(Error::ZeroValuation));
    }

    #[test]
    fn divisor_examples() {
        let (d, places) = divisor(&f("x^2/(x+1)"), &[]).unwrap();
        assert_eq!(d.valuation_at(&p("x")), 2);
        assert_eq!(d.valuation_at(&p("x+1")), -1);
        assert_eq!(d.at_infinity(), -1);
        assert_eq!(places.finite(), &[p("x"), p("x+1")]);
        assert_eq!(d.weighted_total(), 0);

        let (d, _) = divisor(&f("5"), &[]).unwrap();
        assert!(d.entries().is_empty());
        assert_eq!(d.at_infinity(), 0);

        let (d, _) = divisor(&f("(x^2+1)/x"), &[]).unwrap();
        assert_eq!(d.valuation_at(&p("x^2+1")), 1);
        assert_eq!(d.valuation_at(&p("x")), -1);
        assert_eq!(d.at_infinity(), -1);
        assert_eq!(d.weighted_total(), 0);

        assert_eq!(divisor(&RatFunc::zero(), &[]), Err(Error::ZeroValuation));
    }

    #[test]
    fn divisor_refines_against_context() {
        // context x²+x splits into x and x+1 against the support x
        let (d, places) = divisor(&f("x^3"), &[p("x^2+x")]).unwrap();
        assert_eq!(places.finite(), &[p("x"), p("x+1")]);
        assert_eq!(d.valuation_at(&p("x")), 3);
        assert_eq!(d.valuation_at(&p("x+1")), 0);
    }

    #[test]
    fn height_examples() {
        assert_eq!(height(&f("x")), Height::Finite(1));
        assert_eq!(height(&f("(x^2+1)/x")), Height::Finite(2));
        assert_eq!(height(&f("-7/3")), Height::Finite(0));
        assert_eq!(height(&RatFunc::zero()), Height::Infinite);
        assert_eq!(height_by_divisor(&f("x")), Ok(Height::Finite(1)));
        assert_eq!(height_by_divisor(&f("(x^2+1)/x")), Ok(Height::Finite(2)));
    }

    #[test]
    fn s_unit_examples() {
        let sx = s(&["x", "x+1", "inf"]);
        for (text, expected) in [("x^2/(x+1)^3", true), ("2*x+1", false), ("-1", true)] {
            assert_eq!(is_s_unit(&f(text), &sx), expected, "{text}");
            assert_eq!(is_s_unit_by_divisor(&f(text), &sx), expected, "{text}");
        }
        assert!(is_s_unit(&f("-1"), &PlaceSet::empty()));
        assert!(!is_s_unit(&RatFunc::zero(), &sx));
        assert!(!is_s_unit_by_divisor(&RatFunc::zero(), &sx));
        // pole at infinity without inf in S
        assert!(!is_s_unit(&f("x"), &s(&["x"])));
        assert!(is_s_unit(&f("x/(x+1)"), &s(&["x", "x+1"])));
    }

    #[test]
    fn enlarge_examples() {
        let e = enlarge(&PlaceSet::empty(), &[f("x"), f("-(x+1)")]).unwrap();
        assert_eq!(e, s(&["x", "x+1", "inf"]));
        let e = enlarge(&s(&["x", "inf"]), &[f("x^2")]).unwrap();
        assert_eq!(e, s(&["x", "inf"]));
        let e = enlarge(&PlaceSet::empty(), &[f("3")]).unwrap();
        assert!(e.is_empty());
        assert!(enlarge(&PlaceSet::empty(), &[RatFunc::zero()]).is_err());
    }

    #[test]
    fn place_count_examples() {
        assert_eq!(place_count(&s(&["x", "x+1", "inf"])), 3);
        assert_eq!(place_count(&s(&["x^2+1", "inf"])), 3);
        assert_eq!(place_count(&PlaceSet::empty()), 0);
    }

    #[test]
    fn user_places_are_canonicalized() {
        let set = s(&["2*x^2+2*x", "x^3"]);
        assert_eq!(set.finite(), &[p("x"), p("x+1")]);
        assert!(!set.has_infinity());
        assert_eq!(set.render(), vec!["x", "x + 1"]);
    }
}
