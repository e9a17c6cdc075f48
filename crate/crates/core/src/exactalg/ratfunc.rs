use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::gcd::poly_gcd;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Element of ℚ(x) in lowest terms with a monic denominator.
///
/// The zero function is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

/// Field operation selector for [`rf_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFunc::from_poly(Poly::one())
    }

    pub fn x() -> Self {
        RatFunc::from_poly(Poly::x())
    }

    pub fn constant(c: BigRational) -> Self {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn from_poly(num: Poly) -> Self {
        RatFunc { num, den: Poly::one() }
    }

    /// Reduces `num/den` to lowest terms with monic denominator.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        let g = poly_gcd(&num, &den)?;
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides numerator"),
                den.exact_div(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.lc();
        if lc.is_one() {
            Ok(RatFunc { num, den })
        } else {
            let inv = lc.recip();
            Ok(RatFunc { num: num.scale(&inv), den: den.scale(&inv) })
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True exactly for elements of ℚ (including zero).
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone())
                .expect("denominator nonzero");
        }
        RatFunc::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
            .expect("denominator nonzero")
    }

    pub fn sub(&self, rhs: &RatFunc) -> RatFunc {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }

    pub fn mul(&self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        // cross-cancel so both partial products are already reduced
        let g1 = poly_gcd(&self.num, &rhs.den).expect("nonzero");
        let g2 = poly_gcd(&rhs.num, &self.den).expect("nonzero");
        let div = |a: &Poly, g: &Poly| if g.is_one() { a.clone() } else { a.exact_div(g).expect("gcd divides") };
        let num = &div(&self.num, &g1) * &div(&rhs.num, &g2);
        let den = &div(&self.den, &g2) * &div(&rhs.den, &g1);
        let lc = den.lc();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn recip(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let lc = self.num.lc();
        let inv = lc.recip();
        Ok(RatFunc { num: self.den.scale(&inv), den: self.num.scale(&inv) })
    }

    pub fn div(&self, rhs: &RatFunc) -> Result<RatFunc> {
        Ok(self.mul(&rhs.recip()?))
    }

    pub fn scale(&self, c: &BigRational) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, k: i64) -> Result<RatFunc> {
        let base = if k < 0 { self.recip()? } else { self.clone() };
        let e = u32::try_from(k.unsigned_abs()).map_err(|_| Error::BadExponent { position: 0 })?;
        if e == 0 {
            return Ok(RatFunc::one());
        }
        // lowest terms are preserved by powers
        Ok(RatFunc { num: base.num.pow(e), den: base.den.pow(e) })
    }

    /// `A(self)` for a polynomial `A`, by Horner's rule.
    pub fn compose_into(&self, outer: &Poly) -> RatFunc {
        outer.coeffs().iter().rev().fold(RatFunc::zero(), |acc, c| {
            acc.mul(self).add(&RatFunc::constant(c.clone()))
        })
    }

    /// Renders in the expression grammar; a nontrivial denominator is written as
    /// `(num)/(den)`.
    pub fn render(&self) -> String {
        if self.den.is_one() {
            self.num.render()
        } else {
            format!("({})/({})", self.num.render(), self.den.render())
        }
    }
}

/// Exact field arithmetic on normalized rational functions.
pub fn rf_arith(a: &RatFunc, b: &RatFunc, op: ArithOp) -> Result<RatFunc> {
    Ok(match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
        ArithOp::Div => a.div(b)?,
    })
}

pub fn rf_pow(a: &RatFunc, k: i64) -> Result<RatFunc> {
    a.pow(k)
}

pub fn rf_normalize(num: &Poly, den: &Poly) -> Result<RatFunc> {
    RatFunc::new(num.clone(), den.clone())
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({})", self.render())
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc::from_poly(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::poly::rat;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn normalize_examples() {
        let f = rf_normalize(&p(&[-2, 0, 2]), &p(&[-2, 2])).unwrap();
        assert_eq!(f, RatFunc::from_poly(p(&[1, 1])));
        let z = rf_normalize(&Poly::zero(), &p(&[0, 1])).unwrap();
        assert_eq!((z.num().clone(), z.den().clone()), (Poly::zero(), Poly::one()));
        let h = rf_normalize(&p(&[0, 1]), &p(&[2])).unwrap();
        assert_eq!(h.num(), &Poly::from_coeffs(vec![rat(0), BigRational::new(1.into(), 2.into())]));
        assert!(h.den().is_one());
        assert_eq!(rf_normalize(&p(&[1]), &Poly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn arithmetic_examples() {
        let x = RatFunc::x();
        let inv_x = x.recip().unwrap();
        let sum = rf_arith(&x, &inv_x, ArithOp::Add).unwrap();
        assert_eq!(sum, RatFunc::new(p(&[1, 0, 1]), p(&[0, 1])).unwrap());
        let cube = rf_pow(&RatFunc::from_poly(p(&[1, 1])), 3).unwrap();
        assert_eq!(cube, RatFunc::from_poly(p(&[1, 3, 3, 1])));
        let q = rf_arith(&RatFunc::from_poly(p(&[-1, 0, 1])), &RatFunc::from_poly(p(&[-1, 1])), ArithOp::Div)
            .unwrap();
        assert_eq!(q, RatFunc::from_poly(p(&[1, 1])));
        assert_eq!(rf_arith(&x, &RatFunc::zero(), ArithOp::Div), Err(Error::DivisionByZero));
        assert_eq!(RatFunc::zero().pow(-1), Err(Error::DivisionByZero));
    }

    #[test]
    fn negative_power_is_normalized() {
        let f = RatFunc::new(p(&[0, 2]), p(&[1, 1])).unwrap();
        let g = f.pow(-2).unwrap();
        assert!(g.den().is_monic());
        assert_eq!(g.mul(&f.pow(2).unwrap()), RatFunc::one());
    }

    #[test]
    fn render_with_denominator() {
        let f = RatFunc::new(p(&[1, 0, 1]), p(&[0, 1])).unwrap();
        assert_eq!(f.render(), "(x^2 + 1)/(x)");
    }
}
