use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense univariate polynomial over ℚ in the indeterminate `x`.
///
/// Stored as `content · prim`, where `prim` is a primitive integer polynomial with
/// positive leading coefficient (ascending degree order, no trailing zeros) and
/// `content` a nonzero rational. The zero polynomial has empty `prim` and zero
/// content. The decomposition is unique, so derived equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    content: BigRational,
    prim: Vec<BigInt>,
}

#[cfg(test)]
pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// gcd of two integers, with a word-sized fast path.
pub(crate) fn int_gcd_scalar(a: &BigInt, b: &BigInt) -> BigInt {
    if a.is_zero() {
        return b.abs();
    }
    if b.is_zero() {
        return a.abs();
    }
    let small = a.magnitude().to_u64().map(|s| (s, b)).or_else(|| b.magnitude().to_u64().map(|s| (s, a)));
    match small {
        Some((s, other)) => {
            let r = (other.magnitude() % s).to_u64().expect("remainder below a word");
            BigInt::from(s.gcd(&r))
        }
        None => a.gcd(b),
    }
}

/// Nonnegative gcd of all entries, stopping as soon as it reaches 1.
pub(crate) fn int_content(v: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in v {
        if c.is_zero() {
            continue;
        }
        g = int_gcd_scalar(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

impl Poly {
    pub fn zero() -> Self {
        Poly { content: BigRational::zero(), prim: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { content: BigRational::one(), prim: vec![BigInt::one()] }
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Poly { content: BigRational::one(), prim: vec![BigInt::zero(), BigInt::one()] }
    }

    pub fn constant(c: BigRational) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { content: c, prim: vec![BigInt::one()] }
        }
    }

    /// `scale · v` for an integer vector in ascending degree order.
    pub(crate) fn from_int_vec(mut v: Vec<BigInt>, scale: BigRational) -> Self {
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        if v.is_empty() || scale.is_zero() {
            return Poly::zero();
        }
        let mut g = int_content(&v);
        if v.last().expect("nonempty").is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for c in v.iter_mut() {
                *c = &*c / &g;
            }
        }
        Poly { content: scale * BigRational::from_integer(g), prim: v }
    }

    /// Builds a polynomial from ascending-degree coefficients, trimming trailing zeros.
    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        let l = coeffs.iter().fold(BigInt::one(), |acc, c| {
            if c.is_integer() {
                acc
            } else {
                acc.lcm(c.denom())
            }
        });
        let ints = coeffs.iter().map(|c| c.numer() * (&l / c.denom())).collect();
        Poly::from_int_vec(ints, BigRational::new(BigInt::one(), l))
    }

    /// Integer coefficients in ascending degree order.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::from_int_vec(coeffs.iter().map(|&c| BigInt::from(c)).collect(), BigRational::one())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Poly::from_int_vec(coeffs.to_vec(), BigRational::one())
    }

    /// `c·x^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut prim = vec![BigInt::zero(); k + 1];
        prim[k] = BigInt::one();
        Poly { content: c, prim }
    }

    /// Rational coefficients in ascending degree order.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.prim.iter().map(|c| &self.content * c).collect()
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.prim.get(k).map_or_else(BigRational::zero, |c| &self.content * c)
    }

    /// The rational factor of the content/primitive-part decomposition.
    pub fn content(&self) -> &BigRational {
        &self.content
    }

    /// Primitive integer part with positive leading coefficient; empty for zero.
    pub fn primitive_part(&self) -> &[BigInt] {
        &self.prim
    }

    pub fn is_zero(&self) -> bool {
        self.prim.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.prim.len() == 1 && self.content.is_one()
    }

    /// True for the zero polynomial and for nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.prim.len() <= 1
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.prim.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0, for weights and heights where zero
    /// cannot occur or contributes nothing.
    pub(crate) fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> BigRational {
        self.prim.last().map_or_else(BigRational::zero, |c| &self.content * c)
    }

    pub fn is_monic(&self) -> bool {
        self.prim.last().is_some_and(|c| (&self.content * c).is_one())
    }

    /// Scales to leading coefficient 1; the zero polynomial is returned unchanged.
    pub fn monic(&self) -> Poly {
        match self.prim.last() {
            None => Poly::zero(),
            Some(lc) => Poly { content: BigRational::new(BigInt::one(), lc.clone()), prim: self.prim.clone() },
        }
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() || self.is_zero() {
            return Poly::zero();
        }
        Poly { content: &self.content * c, prim: self.prim.clone() }
    }

    pub fn derivative(&self) -> Poly {
        let v = self.prim.iter().enumerate().skip(1).map(|(k, c)| c * BigInt::from(k)).collect();
        Poly::from_int_vec(v, self.content.clone())
    }

    pub fn eval(&self, at: &BigRational) -> BigRational {
        let Some(n) = self.degree() else {
            return BigRational::zero();
        };
        // Σ a_k p^k q^(n-k) / q^n for at = p/q
        let (p, q) = (at.numer(), at.denom());
        let mut acc = BigInt::zero();
        let mut q_pow = BigInt::one();
        for c in self.prim.iter().rev() {
            acc = acc * p + c * &q_pow;
            q_pow *= q;
        }
        let q_n = num_traits::pow(q.clone(), n);
        &self.content * BigRational::new(acc, q_n)
    }

    pub fn pow(&self, mut k: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division: `self = q·divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let Some(nd) = self.degree() else {
            return Ok((Poly::zero(), Poly::zero()));
        };
        if nd < dd {
            return Ok((Poly::zero(), self.clone()));
        }
        if let Some(q) = self.exact_div(divisor) {
            return Ok((q, Poly::zero()));
        }
        // Long division over ℚ on the primitive parts: prim_a = q·prim_d + r.
        let d = &divisor.prim;
        let inv_lc = BigRational::new(BigInt::one(), d[dd].clone());
        let mut rem: Vec<BigRational> = self.prim.iter().cloned().map(BigRational::from_integer).collect();
        let mut quot = vec![BigRational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            if rem[k + dd].is_zero() {
                continue;
            }
            let q = &rem[k + dd] * &inv_lc;
            for (j, dj) in d.iter().enumerate() {
                if !dj.is_zero() {
                    rem[k + j] -= &q * BigRational::from_integer(dj.clone());
                }
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        let ratio = &self.content / &divisor.content;
        Ok((Poly::from_coeffs(quot).scale(&ratio), Poly::from_coeffs(rem).scale(&self.content)))
    }

    /// Quotient when `divisor` divides `self` exactly, `None` otherwise.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let ratio = &self.content / &divisor.content;
        if divisor.is_constant() {
            return Some(Poly { content: ratio, prim: self.prim.clone() });
        }
        // Over ℚ, divisibility of primitive parts is divisibility over ℤ (Gauss), and the
        // quotient of two primitive polynomials is primitive.
        let q = int_exact_div(&self.prim, &divisor.prim)?;
        Some(Poly { content: ratio, prim: q })
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.exact_div(self).is_some()
    }

    /// Primitive integer polynomial with positive leading coefficient that is a rational
    /// multiple of `self`. Empty for the zero polynomial.
    pub fn primitive_integer_coeffs(&self) -> Vec<BigInt> {
        self.prim.clone()
    }

    /// Renders in the expression grammar, terms in descending degree.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            if k == 0 {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        out
    }
}

/// Quotient of integer polynomials when `d` divides `a` in ℤ[x].
pub(crate) fn int_exact_div(a: &[BigInt], d: &[BigInt]) -> Option<Vec<BigInt>> {
    if a.is_empty() {
        return Some(Vec::new());
    }
    if d.len() > a.len() {
        return None;
    }
    let dd = d.len() - 1;
    let lc = &d[dd];
    let unit_lc = lc.is_one();
    let mut rem = a.to_vec();
    let mut quot = vec![BigInt::zero(); a.len() - dd];
    for k in (0..quot.len()).rev() {
        let top = &rem[k + dd];
        if top.is_zero() {
            continue;
        }
        let q = if unit_lc {
            top.clone()
        } else {
            let (q, r) = top.div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            q
        };
        for (j, dj) in d.iter().enumerate() {
            if !dj.is_zero() {
                rem[k + j] -= &q * dj;
            }
        }
        quot[k] = q;
    }
    rem[..dd].iter().all(Zero::is_zero).then_some(quot)
}

impl Default for Poly {
    fn default() -> Self {
        Poly::zero()
    }
}

impl Ord for Poly {
    /// Canonical order: by degree (zero first), then lexicographically on the
    /// ascending-degree coefficient sequence.
    fn cmp(&self, other: &Self) -> Ordering {
        self.prim
            .len()
            .cmp(&other.prim.len())
            .then_with(|| if self == other { Ordering::Equal } else { self.coeffs().cmp(&other.coeffs()) })
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self.render())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        // content_a·a + content_b·b = (wa·a + wb·b) / (qa·qb)
        let (wa, wb, scale) = if self.content == rhs.content {
            (BigInt::one(), BigInt::one(), self.content.clone())
        } else {
            let (pa, qa) = (self.content.numer(), self.content.denom());
            let (pb, qb) = (rhs.content.numer(), rhs.content.denom());
            (pa * qb, pb * qa, BigRational::new(BigInt::one(), qa * qb))
        };
        let len = self.prim.len().max(rhs.prim.len());
        let mut v = Vec::with_capacity(len);
        for k in 0..len {
            let mut c = BigInt::zero();
            if let Some(a) = self.prim.get(k) {
                c += if wa.is_one() { a.clone() } else { a * &wa };
            }
            if let Some(b) = rhs.prim.get(k) {
                c += if wb.is_one() { b.clone() } else { b * &wb };
            }
            v.push(c);
        }
        Poly::from_int_vec(v, scale)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { content: -&self.content, prim: self.prim.clone() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut prim = vec![BigInt::zero(); self.prim.len() + rhs.prim.len() - 1];
        for (i, a) in self.prim.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.prim.iter().enumerate() {
                if !b.is_zero() {
                    prim[i + j] += a * b;
                }
            }
        }
        // Gauss: the product of primitive polynomials is primitive.
        Poly { content: &self.content * &rhs.content, prim }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
