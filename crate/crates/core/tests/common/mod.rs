#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::Rng;

use recsunit::exactalg::{parse_expr, Poly, RatFunc};
use recsunit::places::{height, Height};
use recsunit::recurrence::Recurrence;

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn f(text: &str) -> RatFunc {
    parse_expr(text).unwrap()
}

pub fn rec(coeffs: &[&str], roots: &[&str]) -> Recurrence {
    Recurrence::parse(coeffs, roots).unwrap()
}

pub fn e1() -> Recurrence {
    rec(&["x", "-(x+1)"], &["x+1", "x"])
}

pub fn e2() -> Recurrence {
    rec(&["1", "-1"], &["x", "x+1"])
}

pub fn rand_poly(rng: &mut StdRng, max_deg: usize) -> Poly {
    let deg = rng.gen_range(0..=max_deg);
    let coeffs = (0..=deg).map(|_| q(rng.gen_range(-6..=6), rng.gen_range(1..=3))).collect();
    Poly::from_coeffs(coeffs)
}

pub fn rand_nonzero_poly(rng: &mut StdRng, max_deg: usize) -> Poly {
    loop {
        let p = rand_poly(rng, max_deg);
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn rand_ratfunc(rng: &mut StdRng) -> RatFunc {
    RatFunc::new(rand_nonzero_poly(rng, 4), rand_nonzero_poly(rng, 3)).unwrap()
}

fn h(f: &RatFunc) -> u64 {
    match height(f) {
        Height::Finite(n) => n,
        Height::Infinite => panic!("height of zero"),
    }
}

/// Checks the six elementary height properties on one instance; `a` is a nonzero
/// polynomial used for composition.
pub fn check_height_properties(f: &RatFunc, g: &RatFunc, n: i64, a: &Poly) -> Result<(), String> {
    let (hf, hg) = (h(f), h(g));
    if hf != h(&f.recip().unwrap()) {
        return Err(format!("H(f) != H(1/f) for {f}"));
    }
    let sum = f.add(g);
    if !sum.is_zero() {
        let hs = h(&sum);
        if hs + hg < hf || hs > hf + hg || hs + hf < hg {
            return Err(format!("sum bounds fail for {f}, {g}"));
        }
    }
    let hp = h(&f.mul(g));
    if hp + hg < hf || hp > hf + hg || hp + hf < hg {
        return Err(format!("product bounds fail for {f}, {g}"));
    }
    if h(&f.pow(n).unwrap()) != n.unsigned_abs() * hf {
        return Err(format!("H(f^{n}) != {} H(f) for {f}", n.unsigned_abs()));
    }
    if (hf == 0) != f.is_constant() {
        return Err(format!("H(f) = 0 does not match constancy for {f}"));
    }
    if h(&f.compose_into(a)) != a.degree().unwrap() as u64 * hf {
        return Err(format!("H(A(f)) != deg A H(f) for A = {a}, f = {f}"));
    }
    Ok(())
}

/// Euclid over ℚ with long division, independent of the modular gcd.
pub fn naive_gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b).unwrap();
        a = b;
        b = r;
    }
    a.monic()
}

/// Strips every factor shared with `support`; returns whether only a constant remains.
fn supported_by(p: &Poly, support: &Poly) -> bool {
    let mut rest = p.clone();
    loop {
        if rest.is_constant() {
            return true;
        }
        let g = naive_gcd(&rest, support);
        if g.is_constant() {
            return false;
        }
        rest = rest.div_rem(&g).unwrap().0;
    }
}

/// Place data for the oracle: the product of every polynomial that may vanish, and
/// whether infinity is allowed.
pub struct NaivePlaces {
    pub support: Poly,
    pub infinity: bool,
}

impl NaivePlaces {
    /// The user's places together with all numerators and denominators of the Binet data.
    pub fn for_recurrence(r: &Recurrence, user: &[&str], user_inf: bool) -> Self {
        let mut support = Poly::one();
        let mut infinity = user_inf;
        for t in user {
            let u = f(t);
            support = &(&support * u.num()) * u.den();
        }
        for g in r.coeffs().iter().chain(r.roots()) {
            support = &(&support * g.num()) * g.den();
            infinity |= g.num().degree() != g.den().degree();
        }
        NaivePlaces { support, infinity }
    }

    pub fn is_unit(&self, v: &RatFunc) -> bool {
        if v.is_zero() {
            return false;
        }
        // clear the denominator: v = N/D, both must be supported
        let (n, d) = (v.num(), v.den());
        if n.degree() != d.degree() && !self.infinity {
            return false;
        }
        supported_by(n, &self.support) && supported_by(d, &self.support)
    }
}

/// G_n by repeated multiplication of each root.
pub fn naive_term(r: &Recurrence, n: u64) -> RatFunc {
    let mut total = RatFunc::zero();
    for (c, a) in r.coeffs().iter().zip(r.roots()) {
        let mut t = c.clone();
        for _ in 0..n {
            t = t.mul(a);
        }
        total = total.add(&t);
    }
    total
}

pub fn oracle_single(r: &Recurrence, places: &NaivePlaces, n_max: u64) -> Vec<Vec<u64>> {
    (0..=n_max).filter(|&n| places.is_unit(&naive_term(r, n))).map(|n| vec![n]).collect()
}

pub fn oracle_pair(r: &Recurrence, places: &NaivePlaces, n_max: u64) -> Vec<Vec<u64>> {
    let terms: Vec<RatFunc> = (0..=n_max).map(|n| naive_term(r, n)).collect();
    let mut out = Vec::new();
    for n in 0..=n_max {
        for m in 0..n {
            if places.is_unit(&terms[n as usize].add(&terms[m as usize])) {
                out.push(vec![n, m]);
            }
        }
    }
    out
}
