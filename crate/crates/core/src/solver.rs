//! Exhaustive enumeration below the computed bounds, with every enumerated value
//! decided by two independent S-unit membership tests.

use rayon::prelude::*;

use crate::bounds::{theorem1_bound, theorem2_bound, BoundParams, BoundReport};
use crate::error::{Error, Result};
use crate::exactalg::RatFunc;
use crate::places::{divisor, enlarge, is_s_unit, is_s_unit_by_divisor, Divisor, PlaceSet};
use crate::recurrence::{check_decreasing, Recurrence};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SolveMode {
    Single,
    Pair,
    Verify,
}

impl SolveMode {
    pub fn name(self) -> &'static str {
        match self {
            SolveMode::Single => "single",
            SolveMode::Pair => "pair",
            SolveMode::Verify => "verify",
        }
    }
}

/// One index tuple whose value is an S-unit, with its certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    /// `[n]` for single terms, `[n, m]` with n > m for pair sums.
    pub indices: Vec<u64>,
    pub value: RatFunc,
    /// Divisor of `value` over the enlarged place set.
    pub divisor: Divisor,
    /// Whether `value` is also an S-unit for the user's (unenlarged) place set.
    pub in_user_s: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowScan {
    pub lo: u64,
    pub hi: u64,
    pub found: Vec<Vec<u64>>,
}

impl WindowScan {
    pub fn count_found(&self) -> usize {
        self.found.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionReport {
    pub mode: SolveMode,
    pub user_s: PlaceSet,
    pub bound: BoundReport,
    /// Complete solution set for the enlarged place set, sorted.
    pub solutions: Vec<Solution>,
    /// The subset of `solutions` that are S-units for the user's place set.
    pub user_solutions: Vec<Vec<u64>>,
    /// Number of values tested.
    pub enumerated: u64,
    pub scan: Option<WindowScan>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOutcome {
    pub indices: Vec<u64>,
    pub value: RatFunc,
    /// Place set the verdict refers to: the user's set enlarged by all coefficients and roots.
    pub places: PlaceSet,
    pub is_s_unit: bool,
    /// Divisor over `places`; absent when the value is zero.
    pub divisor: Option<Divisor>,
}

/// Runtime knobs for enumeration.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveOptions {
    pub params: BoundParams,
    /// Caps worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl SolveOptions {
    /// Runs `job` on a pool honouring the thread cap.
    pub fn install<T: Send>(&self, job: impl FnOnce() -> T + Send) -> T {
        match self.threads {
            Some(n) => rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .expect("thread pool")
                .install(job),
            None => job(),
        }
    }
}

/// Membership decided by both the divisibility test and the divisor test. A
/// disagreement is an internal error, never a verdict.
pub fn certified_membership(value: &RatFunc, places: &PlaceSet) -> Result<bool> {
    let by_gcd = is_s_unit(value, places);
    let by_divisor = is_s_unit_by_divisor(value, places);
    if by_gcd != by_divisor {
        return Err(Error::Internal(format!(
            "membership tests disagree on {value}: divisibility {by_gcd}, divisor {by_divisor}"
        )));
    }
    Ok(by_gcd)
}

fn enlarged_places(r: &Recurrence, s: &PlaceSet) -> Result<PlaceSet> {
    let gens: Vec<RatFunc> = r.coeffs().iter().chain(r.roots()).cloned().collect();
    enlarge(s, &gens)
}

fn certify(indices: Vec<u64>, value: RatFunc, enlarged: &PlaceSet, user_s: &PlaceSet) -> Result<Solution> {
    let (div, _) = divisor(&value, enlarged.finite())?;
    let in_user_s = certified_membership(&value, user_s)?;
    Ok(Solution { indices, value, divisor: div, in_user_s })
}

/// Index tuples `[n]` (single) or `[n, m]`, m < n (pair), with lo ≤ n ≤ hi, whose value
/// is a certified S-unit for `places`. `terms` must hold G_0, …, G_hi.
fn scan_range(
    terms: &[RatFunc],
    places: &PlaceSet,
    mode: SolveMode,
    lo: u64,
    hi: u64,
) -> Result<(Vec<(Vec<u64>, RatFunc)>, u64)> {
    let per_n: Vec<Result<(Vec<(Vec<u64>, RatFunc)>, u64)>> = (lo..=hi)
        .into_par_iter()
        .map(|n| {
            let gn = &terms[n as usize];
            let mut hits = Vec::new();
            let mut tested = 0;
            match mode {
                SolveMode::Single => {
                    tested += 1;
                    if certified_membership(gn, places)? {
                        hits.push((vec![n], gn.clone()));
                    }
                }
                _ => {
                    for m in 0..n {
                        let value = gn.add(&terms[m as usize]);
                        tested += 1;
                        if certified_membership(&value, places)? {
                            hits.push((vec![n, m], value));
                        }
                    }
                }
            }
            Ok((hits, tested))
        })
        .collect();
    let mut hits = Vec::new();
    let mut tested = 0;
    for chunk in per_n {
        let (h, t) = chunk?;
        hits.extend(h);
        tested += t;
    }
    Ok((hits, tested))
}

fn solve_with(
    r: &Recurrence,
    user_s: &PlaceSet,
    bound: BoundReport,
    mode: SolveMode,
    options: &SolveOptions,
) -> Result<SolutionReport> {
    let final_bound = bound.final_bound;
    let enlarged = bound.enlarged_s.clone();
    let (hits, enumerated) = options.install(|| {
        let terms = r.terms_up_to(final_bound);
        scan_range(&terms, &enlarged, mode, 0, final_bound)
    })?;
    let solutions = hits
        .into_iter()
        .map(|(idx, value)| certify(idx, value, &enlarged, user_s))
        .collect::<Result<Vec<_>>>()?;
    let user_solutions = solutions.iter().filter(|s| s.in_user_s).map(|s| s.indices.clone()).collect();
    Ok(SolutionReport {
        mode,
        user_s: user_s.clone(),
        bound,
        solutions,
        user_solutions,
        enumerated,
        scan: None,
    })
}

/// All n with G_n an S-unit for the enlarged place set.
pub fn solve_single(r: &Recurrence, user_s: &PlaceSet, options: &SolveOptions) -> Result<SolutionReport> {
    let bound = theorem1_bound(r, user_s, options.params)?;
    solve_with(r, user_s, bound, SolveMode::Single, options)
}

/// All n > m with G_n + G_m an S-unit for the enlarged place set.
pub fn solve_pair(r: &Recurrence, user_s: &PlaceSet, options: &SolveOptions) -> Result<SolutionReport> {
    let bound = theorem2_bound(r, user_s, options.params)?;
    solve_with(r, user_s, bound, SolveMode::Pair, options)
}

/// Membership of G_{n₁} + … + G_{n_t} (n₁ > … > n_t) against the user's place set
/// enlarged by all coefficients and roots.
pub fn verify_sum(r: &Recurrence, s: &PlaceSet, indices: &[u64]) -> Result<VerifyOutcome> {
    check_decreasing(indices)?;
    let places = enlarged_places(r, s)?;
    let value = r.sum_terms(indices)?;
    let is_s_unit = certified_membership(&value, &places)?;
    let divisor = if value.is_zero() { None } else { Some(divisor(&value, places.finite())?.0) };
    Ok(VerifyOutcome { indices: indices.to_vec(), value, places, is_s_unit, divisor })
}

/// Enumerates n ∈ [lo, hi] (and every m < n in pair mode) against the enlarged place
/// set and reports whatever solutions turn up.
pub fn window_scan(
    r: &Recurrence,
    s: &PlaceSet,
    mode: SolveMode,
    lo: u64,
    hi: u64,
    options: &SolveOptions,
) -> Result<WindowScan> {
    if lo > hi {
        return Err(Error::EmptyWindow { lo, hi });
    }
    if mode == SolveMode::Verify {
        return Err(Error::DegenerateDatum("window scans need mode single or pair".into()));
    }
    let places = enlarged_places(r, s)?;
    let (hits, _) = options.install(|| {
        let terms = r.terms_up_to(hi);
        scan_range(&terms, &places, mode, lo, hi)
    })?;
    Ok(WindowScan { lo, hi, found: hits.into_iter().map(|(i, _)| i).collect() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_expr;

    fn e1() -> Recurrence {
        Recurrence::parse(&["x", "-(x+1)"], &["x+1", "x"]).unwrap()
    }

    fn e2() -> Recurrence {
        Recurrence::parse(&["1", "-1"], &["x", "x+1"]).unwrap()
    }

    #[test]
    fn single_e1() {
        let rep = solve_single(&e1(), &PlaceSet::empty(), &SolveOptions::default()).unwrap();
        let idx: Vec<_> = rep.solutions.iter().map(|s| s.indices.clone()).collect();
        assert_eq!(idx, vec![vec![0], vec![2]]);
        assert_eq!(rep.solutions[0].value, parse_expr("-1").unwrap());
        assert_eq!(rep.solutions[1].value, parse_expr("x^2+x").unwrap());
        assert_eq!(rep.bound.final_bound, 4);
        assert_eq!(rep.enumerated, 5);
        // G_0 = -1 is a unit everywhere; x^2+x needs places the empty user set lacks
        assert_eq!(rep.user_solutions, vec![vec![0]]);
    }

    #[test]
    fn single_all_ones() {
        let r = Recurrence::parse(&["1", "1"], &["x", "x+1"]).unwrap();
        let rep = solve_single(&r, &PlaceSet::empty(), &SolveOptions::default()).unwrap();
        let idx: Vec<_> = rep.solutions.iter().map(|s| s.indices.clone()).collect();
        assert_eq!(idx, vec![vec![0]]);
        assert_eq!(rep.bound.final_bound, 3);
    }

    #[test]
    fn degenerate_is_rejected() {
        let r = Recurrence::parse(&["1", "1"], &["x", "2*x"]).unwrap();
        assert!(solve_single(&r, &PlaceSet::empty(), &SolveOptions::default()).is_err());
        let r = Recurrence::parse(&["1", "1"], &["x", "3"]).unwrap();
        assert!(solve_pair(&r, &PlaceSet::empty(), &SolveOptions::default()).is_err());
    }

    #[test]
    fn verify_examples() {
        let out = verify_sum(&e2(), &PlaceSet::empty(), &[2, 1]).unwrap();
        assert!(out.is_s_unit);
        assert_eq!(out.value, parse_expr("-2*(x+1)").unwrap());
        let out = verify_sum(&e2(), &PlaceSet::empty(), &[3, 2]).unwrap();
        assert!(!out.is_s_unit);
        assert_eq!(verify_sum(&e2(), &PlaceSet::empty(), &[2, 2]), Err(Error::IndicesNotDecreasing));
        // zero value: not a unit, no divisor
        let out = verify_sum(&e1(), &PlaceSet::empty(), &[1]).unwrap();
        assert!(!out.is_s_unit && out.divisor.is_none());
    }

    #[test]
    fn window_examples() {
        let opts = SolveOptions::default();
        let scan = window_scan(&e1(), &PlaceSet::empty(), SolveMode::Single, 5, 10, &opts).unwrap();
        assert_eq!(scan.count_found(), 0);
        let scan = window_scan(&e2(), &PlaceSet::empty(), SolveMode::Pair, 7, 12, &opts).unwrap();
        assert_eq!(scan.count_found(), 0);
        let scan = window_scan(&e2(), &PlaceSet::empty(), SolveMode::Pair, 0, 6, &opts).unwrap();
        assert_eq!(scan.found, vec![vec![1, 0], vec![2, 1]]);
        assert_eq!(
            window_scan(&e1(), &PlaceSet::empty(), SolveMode::Single, 3, 2, &opts),
            Err(Error::EmptyWindow { lo: 3, hi: 2 })
        );
    }
}
