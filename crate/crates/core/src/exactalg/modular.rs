//! Arithmetic in 𝔽_p[x] for word-sized primes and the multi-modular gcd over ℤ[x].
//!
//! The gcd is computed prime by prime, combined by Chinese remaindering, and
//! accepted only once an exact trial division over ℤ confirms it, so the answer
//! never depends on a prime being lucky.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::{int_content, int_exact_div};

/// Primes are drawn downward from here; products of two residues fit in a u64.
const PRIME_CEILING: u64 = 1 << 31;

const MERSENNE_31: u64 = (1 << 31) - 1;

/// Reduction modulo 2³¹ − 1 of any `x < 2⁶³`.
#[inline]
fn reduce_m31(x: u64) -> u64 {
    let r = (x & MERSENNE_31) + (x >> 31);
    let r = (r & MERSENNE_31) + (r >> 31);
    if r >= MERSENNE_31 {
        r - MERSENNE_31
    } else {
        r
    }
}

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    if p == MERSENNE_31 {
        reduce_m31(a * b)
    } else {
        a * b % p
    }
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller–Rabin; the witness set {2, 7, 61} is exact below 2³².
fn is_prime_u32(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 61] {
        if n % small == 0 {
            return n == small;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 7, 61] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes below 2³¹ in descending order.
pub(crate) fn primes() -> impl Iterator<Item = u64> {
    (3..PRIME_CEILING).rev().step_by(2).filter(|&n| is_prime_u32(n))
}

pub(crate) fn reduce(n: &BigInt, p: u64) -> u64 {
    let r = (n.magnitude() % p).to_u64().expect("residue fits in u64");
    if n.is_negative() && r != 0 {
        p - r
    } else {
        r
    }
}

/// Dense polynomial over 𝔽_p, ascending order, trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct ModPoly {
    pub(crate) p: u64,
    pub(crate) c: Vec<u64>,
}

impl ModPoly {
    pub(crate) fn from_ints(coeffs: &[BigInt], p: u64) -> Self {
        let mut m = ModPoly { p, c: coeffs.iter().map(|c| reduce(c, p)).collect() };
        m.trim();
        m
    }

    fn trim(&mut self) {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
    }

    pub(crate) fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub(crate) fn make_monic(&mut self) {
        if let Some(&lc) = self.c.last() {
            if lc != 1 {
                let inv = inv_mod(lc, self.p);
                for x in self.c.iter_mut() {
                    *x = mul_mod(*x, inv, self.p);
                }
            }
        }
    }

    /// Replaces `self` by its remainder modulo `d` (which must be nonzero).
    fn rem_assign(&mut self, d: &ModPoly) {
        let p = self.p;
        let dd = d.c.len() - 1;
        let inv = inv_mod(d.c[dd], p);
        let neg_low: Vec<u64> = d.c[..dd].iter().map(|&x| if x == 0 { 0 } else { p - x }).collect();
        while self.c.len() > dd {
            let top = self.c.len() - 1;
            let q = mul_mod(self.c[top], inv, p);
            if q != 0 {
                let window = &mut self.c[top - dd..top];
                if p == MERSENNE_31 {
                    for (s, &nd) in window.iter_mut().zip(&neg_low) {
                        *s = reduce_m31(*s + q * nd);
                    }
                } else {
                    for (s, &nd) in window.iter_mut().zip(&neg_low) {
                        *s = (*s + q * nd) % p;
                    }
                }
            }
            self.c.pop();
            self.trim();
        }
    }

    /// Monic gcd; zero only when both inputs are zero.
    pub(crate) fn gcd(mut a: ModPoly, mut b: ModPoly) -> ModPoly {
        while !b.c.is_empty() {
            a.rem_assign(&b);
            std::mem::swap(&mut a, &mut b);
        }
        a.make_monic();
        a
    }
}

/// Prime used for quick modular screening of divisibility and coprimality.
pub(crate) const SCREEN_PRIME: u64 = MERSENNE_31;

/// Reduction of a primitive integer polynomial modulo `SCREEN_PRIME`, kept to screen
/// many divisibility or coprimality questions against the same polynomial.
#[derive(Clone, Debug)]
pub(crate) struct Screen {
    image: ModPoly,
    full_degree: bool,
}

impl Screen {
    pub(crate) fn new(a: &[BigInt]) -> Self {
        let image = ModPoly::from_ints(a, SCREEN_PRIME);
        Screen { full_degree: image.c.len() == a.len(), image }
    }

    fn divisor_image(d: &[BigInt]) -> Option<ModPoly> {
        let img = ModPoly::from_ints(d, SCREEN_PRIME);
        (img.c.len() == d.len()).then_some(img)
    }

    /// False only when `d` certainly does not divide the screened polynomial.
    pub(crate) fn may_be_divisible_by(&self, d: &[BigInt]) -> bool {
        match Screen::divisor_image(d) {
            Some(dimg) if !dimg.c.is_empty() => {
                let mut r = self.image.clone();
                r.rem_assign(&dimg);
                r.c.is_empty()
            }
            _ => true,
        }
    }

    /// True only when `b` is certainly coprime to the screened polynomial.
    pub(crate) fn surely_coprime_to(&self, b: &[BigInt]) -> bool {
        if !self.full_degree {
            return false;
        }
        match Screen::divisor_image(b) {
            Some(bimg) if !bimg.c.is_empty() => ModPoly::gcd(self.image.clone(), bimg).degree() == Some(0),
            _ => false,
        }
    }
}

fn symmetric(r: &BigInt, modulus: &BigInt) -> BigInt {
    let half: BigInt = modulus >> 1;
    if r > &half {
        r - modulus
    } else {
        r.clone()
    }
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let content = int_content(&v);
    if content.is_zero() {
        return v;
    }
    let neg = v.last().is_some_and(Signed::is_negative);
    for c in v.iter_mut() {
        *c = &*c / &content;
        if neg {
            *c = -&*c;
        }
    }
    v
}

fn int_divides(d: &[BigInt], a: &[BigInt]) -> bool {
    int_exact_div(a, d).is_some()
}

/// Greatest common divisor of two nonzero primitive integer polynomials, returned
/// primitive with positive leading coefficient.
pub(crate) fn int_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    debug_assert!(!a.is_empty() && !b.is_empty());
    if a.len() == 1 || b.len() == 1 {
        return vec![BigInt::one()];
    }
    let lc_a = a.last().unwrap();
    let lc_b = b.last().unwrap();
    let gamma = lc_a.gcd(lc_b);
    let max_deg = (a.len() - 1).min(b.len() - 1);

    let mut best_deg = usize::MAX;
    let mut acc: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut last_candidate: Option<Vec<BigInt>> = None;

    for p in primes() {
        if reduce(lc_a, p) == 0 || reduce(lc_b, p) == 0 {
            continue;
        }
        let g = ModPoly::gcd(ModPoly::from_ints(a, p), ModPoly::from_ints(b, p));
        let deg = g.degree().expect("nonzero inputs have nonzero gcd");
        if deg == 0 {
            return vec![BigInt::one()];
        }
        if deg > best_deg || deg > max_deg {
            continue;
        }
        let scale = reduce(&gamma, p);
        let image: Vec<u64> = g.c.iter().map(|&c| mul_mod(c, scale, p)).collect();
        if deg < best_deg {
            best_deg = deg;
            acc = image.iter().map(|&c| BigInt::from(c)).collect();
            modulus = BigInt::from(p);
            last_candidate = None;
            continue;
        }
        let bp = BigInt::from(p);
        let m_inv = BigInt::from(inv_mod(reduce(&modulus, p), p));
        for (slot, &r) in acc.iter_mut().zip(&image) {
            let diff = (BigInt::from(r) - &*slot).mod_floor(&bp);
            let t = (diff * &m_inv).mod_floor(&bp);
            *slot += &modulus * t;
        }
        modulus *= &bp;
        let lifted: Vec<BigInt> = acc.iter().map(|c| symmetric(c, &modulus)).collect();
        let candidate = primitive(lifted);
        if last_candidate.as_ref() == Some(&candidate)
            && int_divides(&candidate, a)
            && int_divides(&candidate, b)
        {
            return candidate;
        }
        last_candidate = Some(candidate);
    }
    unreachable!("prime supply exhausted before gcd stabilized")
}
