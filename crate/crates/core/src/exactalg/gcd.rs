use super::modular::{int_gcd, Screen};
use super::poly::Poly;
use crate::error::{Error, Result};

/// Monic greatest common divisor over ℚ.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Result<Poly> {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => Err(Error::GcdUndefined),
        (true, false) => Ok(b.monic()),
        (false, true) => Ok(a.monic()),
        _ if a.is_constant() || b.is_constant() => Ok(Poly::one()),
        _ => {
            let g = int_gcd(a.primitive_part(), b.primitive_part());
            Ok(Poly::from_bigints(&g).monic())
        }
    }
}

fn exact(a: &Poly, d: &Poly) -> Poly {
    a.exact_div(d).expect("gcd divides its arguments")
}

/// Monic radical: the product of the distinct irreducible factors, as `a / gcd(a, a')`.
pub fn squarefree_part(a: &Poly) -> Result<Poly> {
    if a.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if a.is_constant() {
        return Ok(Poly::one());
    }
    let g = poly_gcd(a, &a.derivative())?;
    Ok(exact(a, &g).monic())
}

/// Yun's squarefree decomposition: monic pairwise-coprime squarefree `(factor, multiplicity)`
/// pairs with `a = lc(a) · ∏ factor^multiplicity`. Constants yield the empty list.
pub fn squarefree_decomposition(a: &Poly) -> Result<Vec<(Poly, u32)>> {
    if a.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    if a.is_constant() {
        return Ok(out);
    }
    let a = a.monic();
    let da = a.derivative();
    let g = poly_gcd(&a, &da)?;
    if g.is_constant() {
        out.push((a, 1));
        return Ok(out);
    }
    let mut b = exact(&a, &g);
    let c = exact(&da, &g);
    let mut d = &c - &b.derivative();
    let mut k = 1;
    while !b.is_constant() {
        let f = poly_gcd(&b, &d)?;
        b = exact(&b, &f);
        let c = exact(&d, &f);
        d = &c - &b.derivative();
        if !f.is_constant() {
            out.push((f, k));
        }
        k += 1;
    }
    Ok(out)
}

/// Refines nonzero polynomials into pairwise-coprime monic squarefree nonconstant
/// polynomials such that the radical of every input is a product of output elements.
/// Constant inputs are ignored. Output is in canonical order.
pub fn gcd_free_basis(inputs: &[Poly]) -> Result<Vec<Poly>> {
    let radicals = inputs.iter().map(squarefree_part).collect::<Result<Vec<_>>>()?;
    extend_gcd_free_basis(Vec::new(), &radicals)
}

/// Like [`gcd_free_basis`], starting from a family that is already a gcd-free basis and
/// adding inputs that are already squarefree.
pub(crate) fn extend_gcd_free_basis(mut basis: Vec<Poly>, squarefree: &[Poly]) -> Result<Vec<Poly>> {
    for p in squarefree {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !p.is_constant() {
            insert_coprime(&mut basis, p.monic())?;
        }
    }
    basis.sort();
    Ok(basis)
}

/// Adds a squarefree monic polynomial to a pairwise-coprime squarefree family,
/// splitting elements until the family is pairwise coprime again.
fn insert_coprime(basis: &mut Vec<Poly>, new: Poly) -> Result<()> {
    let mut pending = vec![new];
    while let Some(mut q) = pending.pop() {
        let mut screen = Screen::new(q.primitive_part());
        let mut i = 0;
        while i < basis.len() && !q.is_constant() {
            if screen.surely_coprime_to(basis[i].primitive_part()) {
                i += 1;
                continue;
            }
            let g = poly_gcd(&basis[i], &q)?;
            if g.is_constant() {
                i += 1;
                continue;
            }
            // basis[i] = g · rest and q = g · q_rest; both cofactors are coprime to g
            // because every piece is squarefree.
            let rest = exact(&basis[i], &g);
            q = exact(&q, &g);
            screen = Screen::new(q.primitive_part());
            if rest.is_constant() {
                // basis[i] == g; q's remaining part is coprime to it.
                i += 1;
                continue;
            }
            basis[i] = g;
            pending.push(rest.monic());
            i += 1;
        }
        if !q.is_constant() {
            basis.push(q.monic());
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(poly_gcd(&p(&[-1, 0, 1]), &p(&[1, 2, 1])).unwrap(), p(&[1, 1]));
        assert_eq!(poly_gcd(&p(&[0, 1]), &p(&[1])).unwrap(), p(&[1]));
        // x³+2x²+x and x²+x
        assert_eq!(poly_gcd(&p(&[0, 1, 2, 1]), &p(&[0, 1, 1])).unwrap(), p(&[0, 1, 1]));
        assert_eq!(poly_gcd(&Poly::zero(), &Poly::zero()), Err(Error::GcdUndefined));
        assert_eq!(poly_gcd(&Poly::zero(), &p(&[2, 4])).unwrap(), p(&[1, 2]).monic());
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_part(&p(&[0, 1, 2, 1])).unwrap(), p(&[0, 1, 1]));
        assert_eq!(squarefree_part(&p(&[1, 1])).unwrap(), p(&[1, 1]));
        assert_eq!(squarefree_part(&p(&[7])).unwrap(), p(&[1]));
        assert_eq!(squarefree_part(&Poly::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn yun_decomposition() {
        // 3·x·(x+1)²·(x-2)³
        let a = p(&[3])
            * p(&[0, 1])
            * p(&[1, 1]).pow(2)
            * p(&[-2, 1]).pow(3);
        let dec = squarefree_decomposition(&a).unwrap();
        assert_eq!(dec, vec![(p(&[0, 1]), 1), (p(&[1, 1]), 2), (p(&[-2, 1]), 3)]);
        assert!(squarefree_decomposition(&p(&[5])).unwrap().is_empty());
    }

    #[test]
    fn basis_examples() {
        assert_eq!(gcd_free_basis(&[p(&[0, 1, 1]), p(&[0, 1])]).unwrap(), vec![p(&[0, 1]), p(&[1, 1])]);
        assert_eq!(gcd_free_basis(&[p(&[1, 1])]).unwrap(), vec![p(&[1, 1])]);
        assert_eq!(gcd_free_basis(&[p(&[0, 0, 1]), p(&[0, 0, 0, 1])]).unwrap(), vec![p(&[0, 1])]);
        assert_eq!(gcd_free_basis(&[p(&[3])]).unwrap(), Vec::<Poly>::new());
    }

    #[test]
    fn basis_splits_overlapping_chain() {
        // x(x+1), (x+1)(x+2), x(x+2)
        let basis = gcd_free_basis(&[
            p(&[0, 1]) * p(&[1, 1]),
            p(&[1, 1]) * p(&[2, 1]),
            p(&[0, 1]) * p(&[2, 1]),
        ])
        .unwrap();
        assert_eq!(basis, vec![p(&[0, 1]), p(&[1, 1]), p(&[2, 1])]);
    }
}
