//! Effective bounds on the indices of S-unit terms (n) and S-unit pair sums (n > m).
//!
//! Every constant is kept as an exact rational and only the final bound is floored.
//! Constants are numbered C1…C13 in the order the single-term chain (C1–C3) and the
//! pair-sum chain (C4–C13) produce them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Hypothesis, Result};
use crate::exactalg::RatFunc;
use crate::places::{enlarge, height, joint_divisors, place_count, PlaceSet};
use crate::recurrence::{is_nondegenerate, mult_independent, pairwise_mult_independent, roots_nonconstant, Recurrence};

/// Parameters that enter the bound formulas but are not read off the input.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BoundParams {
    /// Genus of the function field; every concrete input lives in ℂ(x), genus 0.
    pub genus: u64,
}

/// Which index problem a report bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundKind {
    /// G_n is an S-unit.
    Single,
    /// G_n + G_m is an S-unit, n > m.
    Pair,
}

impl BoundKind {
    pub fn name(self) -> &'static str {
        match self {
            BoundKind::Single => "single",
            BoundKind::Pair => "pair",
        }
    }
}

/// Lattice gap for the ordered root pair (α_i, α_j).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootPairGap {
    pub i: usize,
    pub j: usize,
    pub gap: BigRational,
}

/// Per-shift data of the reduced single-term problem with coefficients f_r·(1 + α_r^b).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftEntry {
    pub shift: u64,
    /// max over k ≠ l of H(f′_k / f′_l).
    pub coeff_ratio_height: u64,
    pub bound: BigRational,
}

/// The place set S′ under which every 1 + α_r^b (1 ≤ b ≤ ⌊C9⌋) is a unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedPlaces {
    pub places: PlaceSet,
    pub place_count: u64,
    pub shifts: Vec<ShiftEntry>,
}

/// Height statistics of the Binet data that the constants are built from.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HeightSummary {
    /// max over k ≠ l of H(f_k / f_l).
    pub coeff_ratio_max: u64,
    /// min over k ≠ l of H(α_k / α_l).
    pub root_ratio_min: u64,
    /// max_r H(f_r); pair problems only.
    pub coeff_max: Option<u64>,
    /// max_r H(α_r); pair problems only.
    pub root_max: Option<u64>,
    /// min_r H(α_r); pair problems only.
    pub root_min: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub genus: u64,
    /// The user's place set enlarged so every coefficient and root is a unit.
    pub enlarged_s: PlaceSet,
    pub s_count: u64,
    pub heights: HeightSummary,
    /// `(k, C_k)` in increasing k.
    pub constants: Vec<(u8, BigRational)>,
    pub gaps: Vec<RootPairGap>,
    pub shifted: Option<ShiftedPlaces>,
    pub final_bound: u64,
}

impl BoundReport {
    pub fn constant(&self, k: u8) -> Option<&BigRational> {
        self.constants.iter().find(|(i, _)| *i == k).map(|(_, c)| c)
    }

    /// Indices of the constants whose maximum is the bound.
    pub fn governing(&self) -> &'static [u8] {
        match self.kind {
            BoundKind::Single => &[3],
            BoundKind::Pair => &[4, 5, 8, 11, 13],
        }
    }

    /// Floor of the largest governing constant, recomputed from the recorded values.
    pub fn recompute_final_bound(&self) -> Option<u64> {
        let max = self
            .governing()
            .iter()
            .map(|&k| self.constant(k).cloned())
            .collect::<Option<Vec<_>>>()?
            .into_iter()
            .max()?;
        floor_u64(&max)
    }
}

fn floor_u64(c: &BigRational) -> Option<u64> {
    c.floor().to_integer().to_u64()
}

fn q_of(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Brownawell–Masser: C(k, 2)·(|S| + max(0, 2g − 2)).
pub fn bm_bound(k: u64, s_count: u64, genus: u64) -> u64 {
    let pairs = k * k.saturating_sub(1) / 2;
    pairs * (s_count + (2 * genus).saturating_sub(2))
}

/// Largest c > 0 with H(γⁿ/δᵐ) ≥ c·max(n, m) for all n, m ≥ 0.
///
/// With v, w the divisor vectors of γ, δ over a common basis plus infinity, and place
/// weights ω (degree of the bundle, 1 at infinity), the height of γˢ/δᵗ is
/// φ(s, t) = ½·Σ ω_i·|s·v_i − t·w_i|, because the weighted coordinates of a divisor sum
/// to zero. φ is a convex, positively homogeneous seminorm, so its minimum on the unit
/// sphere of the max-norm restricted to the quadrant sits on the two edges
/// {s = 1, 0 ≤ t ≤ 1} and {t = 1, 0 ≤ s ≤ 1}, at an endpoint or at a kink.
pub fn lattice_gap(gamma: &RatFunc, delta: &RatFunc) -> Result<BigRational> {
    if gamma.is_constant() || delta.is_constant() {
        return Err(Error::ConstantLatticeInput);
    }
    if !mult_independent(gamma, delta) {
        return Err(Error::MultiplicativelyDependent);
    }
    let (divs, basis) = joint_divisors(&[gamma, delta])?;
    let v = divs[0].vector(&basis);
    let w = divs[1].vector(&basis);
    let weights: Vec<i64> = basis.iter().map(|b| b.degree().unwrap_or(0) as i64).chain([1]).collect();
    let ratio = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
    let phi = |s: &BigRational, t: &BigRational| -> BigRational {
        let total = weights
            .iter()
            .zip(v.iter().zip(&w))
            .fold(BigRational::zero(), |acc, (&om, (&vi, &wi))| {
                let term = s * BigRational::from_integer(vi.into()) - t * BigRational::from_integer(wi.into());
                acc + BigRational::from_integer(om.into()) * num_traits::Signed::abs(&term)
            });
        total / q_of(2)
    };
    let one = q_of(1);
    let zero = q_of(0);
    let in_unit = |c: &BigRational| c >= &zero && c <= &one;
    let mut best: Option<BigRational> = None;
    let mut consider = |val: BigRational| {
        if best.as_ref().is_none_or(|b| val < *b) {
            best = Some(val);
        }
    };
    // edge s = 1
    consider(phi(&one, &zero));
    consider(phi(&one, &one));
    for (&vi, &wi) in v.iter().zip(&w) {
        if wi != 0 {
            let t = ratio(vi, wi);
            if in_unit(&t) {
                consider(phi(&one, &t));
            }
        }
    }
    // edge t = 1
    consider(phi(&zero, &one));
    for (&vi, &wi) in v.iter().zip(&w) {
        if vi != 0 {
            let s = ratio(wi, vi);
            if in_unit(&s) {
                consider(phi(&s, &one));
            }
        }
    }
    let c = best.expect("candidate set is nonempty");
    if c <= zero {
        return Err(Error::Internal(format!("lattice gap {c} is not positive for independent inputs")));
    }
    Ok(c)
}

fn finite_height(f: &RatFunc) -> u64 {
    height(f).finite().expect("nonzero function has finite height")
}

fn max_ratio_height(fs: &[RatFunc]) -> u64 {
    let mut best = 0;
    for (k, a) in fs.iter().enumerate() {
        for (l, b) in fs.iter().enumerate() {
            if k != l {
                best = best.max(finite_height(&a.div(b).expect("nonzero")));
            }
        }
    }
    best
}

fn min_root_ratio_height(r: &Recurrence) -> u64 {
    let roots = r.roots();
    let mut best = u64::MAX;
    for (k, a) in roots.iter().enumerate() {
        for (l, b) in roots.iter().enumerate() {
            if k != l {
                best = best.min(finite_height(&a.div(b).expect("nonzero")));
            }
        }
    }
    best
}

fn enlarged_for(r: &Recurrence, s_user: &PlaceSet) -> Result<PlaceSet> {
    let gens: Vec<RatFunc> = r.coeffs().iter().chain(r.roots()).cloned().collect();
    enlarge(s_user, &gens)
}

/// Bound on n with G_n an S-unit (constants C1–C3).
pub fn theorem1_bound(r: &Recurrence, s_user: &PlaceSet, params: BoundParams) -> Result<BoundReport> {
    if !is_nondegenerate(r) {
        return Err(Error::SingleHypothesis(Hypothesis::Nondegeneracy));
    }
    let enlarged_s = enlarged_for(r, s_user)?;
    let s_count = place_count(&enlarged_s);
    let d = r.order() as u64;
    let coeff_ratio_max = max_ratio_height(r.coeffs());
    let root_ratio_min = min_root_ratio_height(r);

    let c1 = q_of(bm_bound(d, s_count, params.genus));
    let c2 = &c1 + q_of(coeff_ratio_max);
    let c3 = &c2 / q_of(root_ratio_min);
    let final_bound = floor_u64(&c3).expect("bound fits in u64");
    Ok(BoundReport {
        kind: BoundKind::Single,
        genus: params.genus,
        enlarged_s,
        s_count,
        heights: HeightSummary { coeff_ratio_max, root_ratio_min, ..Default::default() },
        constants: vec![(1, c1), (2, c2), (3, c3)],
        gaps: Vec::new(),
        shifted: None,
        final_bound,
    })
}

/// Bound on max(n, m) with G_n + G_m an S-unit, n > m (constants C4–C13).
pub fn theorem2_bound(r: &Recurrence, s_user: &PlaceSet, params: BoundParams) -> Result<BoundReport> {
    if !is_nondegenerate(r) {
        return Err(Error::PairHypothesis(Hypothesis::Nondegeneracy));
    }
    if !roots_nonconstant(r) {
        return Err(Error::PairHypothesis(Hypothesis::RootsNonconstant));
    }
    if !pairwise_mult_independent(r) {
        return Err(Error::PairHypothesis(Hypothesis::MultIndependence));
    }
    let enlarged_s = enlarged_for(r, s_user)?;
    let s_count = place_count(&enlarged_s);
    let d = r.order() as u64;
    let g = params.genus;

    let coeff_ratio_max = max_ratio_height(r.coeffs());
    let root_ratio_min = min_root_ratio_height(r);
    let coeff_max = r.coeffs().iter().map(finite_height).max().unwrap_or(0);
    let root_heights: Vec<u64> = r.roots().iter().map(finite_height).collect();
    let root_max = *root_heights.iter().max().expect("order ≥ 2");
    let root_min = *root_heights.iter().min().expect("order ≥ 2");

    let h_min = q_of(root_ratio_min);
    let a_min = q_of(root_min);
    let bm2d = q_of(bm_bound(2 * d, s_count, g));

    let c4 = (&bm2d + q_of(coeff_ratio_max)) / &h_min;
    let c5 = c4.clone();
    let c6 = bm2d.clone();
    let c7 = &c6 + q_of(2 * coeff_max) + &c4 * q_of(root_max);
    let c8 = &c7 / &a_min;
    let c9 = &c6 / &a_min;

    let shift_max = floor_u64(&c9).expect("bound fits in u64");
    let shifted = shifted_places(r, &enlarged_s, shift_max, g, &h_min)?;
    let c10 = shifted.shifts.iter().map(|e| e.bound.clone()).max().unwrap_or_else(BigRational::zero);
    let c11 = &c10 + &c9;
    let c12 = &c6 + q_of(2 * coeff_max);

    let gaps = root_gaps(r)?;
    let min_gap = gaps.iter().map(|e| e.gap.clone()).min().expect("order ≥ 2");
    let c13 = &c12 / &min_gap;

    let governing = [&c4, &c5, &c8, &c11, &c13];
    let max = governing.iter().copied().max_by(|a, b| a.cmp(b)).expect("nonempty");
    let final_bound = floor_u64(max).expect("bound fits in u64");

    Ok(BoundReport {
        kind: BoundKind::Pair,
        genus: g,
        enlarged_s,
        s_count,
        heights: HeightSummary {
            coeff_ratio_max,
            root_ratio_min,
            coeff_max: Some(coeff_max),
            root_max: Some(root_max),
            root_min: Some(root_min),
        },
        constants: vec![
            (4, c4),
            (5, c5),
            (6, c6),
            (7, c7),
            (8, c8),
            (9, c9),
            (10, c10),
            (11, c11),
            (12, c12),
            (13, c13),
        ],
        gaps,
        shifted: Some(shifted),
        final_bound,
    })
}

fn root_gaps(r: &Recurrence) -> Result<Vec<RootPairGap>> {
    let d = r.order();
    let pairs: Vec<(usize, usize)> =
        (0..d).flat_map(|i| (0..d).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    pairs
        .into_par_iter()
        .map(|(i, j)| Ok(RootPairGap { i, j, gap: lattice_gap(&r.roots()[i], &r.roots()[j])? }))
        .collect()
}

/// Enlarges once so every 1 + α_r^b (1 ≤ b ≤ `shift_max`) is a unit, then bounds the
/// reduced single-term problem for each shift b.
fn shifted_places(
    r: &Recurrence,
    enlarged_s: &PlaceSet,
    shift_max: u64,
    genus: u64,
    h_min: &BigRational,
) -> Result<ShiftedPlaces> {
    // shifted[b-1][r] = 1 + α_r^b
    let mut shifted: Vec<Vec<RatFunc>> = Vec::with_capacity(shift_max as usize);
    let mut powers: Vec<RatFunc> = r.roots().to_vec();
    for b in 1..=shift_max {
        if b > 1 {
            for (p, a) in powers.iter_mut().zip(r.roots()) {
                *p = p.mul(a);
            }
        }
        let row: Vec<RatFunc> = powers.iter().map(|p| p.add(&RatFunc::one())).collect();
        assert!(row.iter().all(|v| !v.is_zero()), "1 + α^b vanishes only for constant α");
        shifted.push(row);
    }
    let gens: Vec<RatFunc> = shifted.iter().flatten().cloned().collect();
    let places = enlarge(enlarged_s, &gens)?;
    let count = place_count(&places);
    let base = q_of(bm_bound(r.order() as u64, count, genus));
    let shifts = shifted
        .par_iter()
        .enumerate()
        .map(|(idx, row)| {
            let new_coeffs: Vec<RatFunc> = r.coeffs().iter().zip(row).map(|(f, u)| f.mul(u)).collect();
            let coeff_ratio_height = max_ratio_height(&new_coeffs);
            let bound = (&base + q_of(coeff_ratio_height)) / h_min;
            ShiftEntry { shift: idx as u64 + 1, coeff_ratio_height, bound }
        })
        .collect();
    Ok(ShiftedPlaces { places, place_count: count, shifts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_expr;

    fn f(t: &str) -> RatFunc {
        parse_expr(t).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn bm_bound_examples() {
        assert_eq!(bm_bound(2, 3, 0), 3);
        assert_eq!(bm_bound(4, 3, 0), 18);
        assert_eq!(bm_bound(2, 5, 2), 7);
        assert_eq!(bm_bound(1, 9, 0), 0);
    }

    #[test]
    fn lattice_gap_examples() {
        assert_eq!(lattice_gap(&f("x"), &f("x+1")).unwrap(), q(1, 1));
        assert_eq!(lattice_gap(&f("x^2/(x+1)"), &f("(x+1)^3/x")).unwrap(), q(2, 1));
        assert_eq!(lattice_gap(&f("x"), &f("x^2")), Err(Error::MultiplicativelyDependent));
        assert_eq!(lattice_gap(&f("3"), &f("x")), Err(Error::ConstantLatticeInput));
    }

    #[test]
    fn theorem1_examples() {
        let e1 = Recurrence::parse(&["x", "-(x+1)"], &["x+1", "x"]).unwrap();
        let rep = theorem1_bound(&e1, &PlaceSet::empty(), BoundParams::default()).unwrap();
        assert_eq!(rep.s_count, 3);
        assert_eq!(rep.constant(1), Some(&q(3, 1)));
        assert_eq!(rep.constant(2), Some(&q(4, 1)));
        assert_eq!(rep.constant(3), Some(&q(4, 1)));
        assert_eq!(rep.final_bound, 4);
        assert_eq!(rep.recompute_final_bound(), Some(4));

        let ones = Recurrence::parse(&["1", "1"], &["x", "x+1"]).unwrap();
        let rep = theorem1_bound(&ones, &PlaceSet::empty(), BoundParams::default()).unwrap();
        assert_eq!(rep.constant(1), rep.constant(2));
        assert_eq!(rep.final_bound, 3);

        let degenerate = Recurrence::parse(&["1", "1"], &["x", "2*x"]).unwrap();
        assert_eq!(
            theorem1_bound(&degenerate, &PlaceSet::empty(), BoundParams::default()),
            Err(Error::SingleHypothesis(Hypothesis::Nondegeneracy))
        );
    }

    #[test]
    fn theorem2_hypothesis_gating() {
        let dependent = Recurrence::parse(&["1", "1"], &["x^2", "x^3"]).unwrap();
        assert_eq!(
            theorem2_bound(&dependent, &PlaceSet::empty(), BoundParams::default()),
            Err(Error::PairHypothesis(Hypothesis::MultIndependence))
        );
        let constant_root = Recurrence::parse(&["1", "1"], &["2", "x"]).unwrap();
        assert_eq!(
            theorem2_bound(&constant_root, &PlaceSet::empty(), BoundParams::default()),
            Err(Error::PairHypothesis(Hypothesis::RootsNonconstant))
        );
    }
}
