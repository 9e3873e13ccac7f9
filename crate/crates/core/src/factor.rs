//! Certified factorization in `F_q[T]`: squarefree decomposition,
//! distinct-degree splitting, and seeded equal-degree splitting.
//!
//! Splitting randomness comes from a ChaCha generator with a fixed seed, so
//! results are identical across runs and machines. In characteristic 2 the
//! trace-map splitting variant is used.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::field::{El, Field};
use crate::poly::Poly;
use crate::Error;

const SPLIT_SEED: u64 = 0x5157_4c61_b001_cafe;

/// Irreducible factors with multiplicities; the product recovers the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub factors: Vec<(Poly, usize)>,
}

/// Multiset of (degree, multiplicity) pairs of the irreducible factors.
/// Every factorization function depends on the input only through this.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FactorizationType {
    pub parts: Vec<(usize, usize)>,
}

impl Factorization {
    pub fn product(&self, f: &Field) -> Poly {
        let mut acc = Poly::one();
        for (irr, mult) in &self.factors {
            for _ in 0..*mult {
                acc = acc.mul(irr, f);
            }
        }
        acc
    }

    pub fn factorization_type(&self) -> FactorizationType {
        let mut parts: Vec<(usize, usize)> =
            self.factors.iter().map(|(p, m)| (p.deg(), *m)).collect();
        parts.sort_unstable();
        FactorizationType { parts }
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, m)| *m == 1)
    }
}

impl FactorizationType {
    pub fn degree(&self) -> usize {
        self.parts.iter().map(|(d, m)| d * m).sum()
    }
}

fn mod_exp_u128(base: &Poly, mut n: u128, m: &Poly, f: &Field) -> Result<Poly, Error> {
    let mut b = base.rem(m, f)?;
    let mut acc = Poly::one().rem(m, f)?;
    while n > 0 {
        if n & 1 == 1 {
            acc = acc.mul(&b, f).rem(m, f)?;
        }
        b = b.mul(&b, f).rem(m, f)?;
        n >>= 1;
    }
    Ok(acc)
}

/// p-th root of a polynomial all of whose terms have exponent divisible by p.
fn pth_root(g: &Poly, f: &Field) -> Poly {
    let p = f.p() as usize;
    let e = f.degree() as u32;
    // coefficient root: a^(p^(e-1)) since a^(p^e) = a
    let mut root_exp: u64 = 1;
    for _ in 0..e - 1 {
        root_exp *= f.p();
    }
    let mut out = Vec::new();
    let mut i = 0;
    while i < g.coeffs().len() {
        out.push(f.pow(g.coeff(i), root_exp));
        i += p;
    }
    Poly::from_coeffs(out)
}

/// Squarefree decomposition of monic `g`: pairs (squarefree monic, multiplicity)
/// whose product with multiplicities recovers `g`. Parts are pairwise coprime.
fn squarefree_decomposition(g: &Poly, f: &Field) -> Result<Vec<(Poly, usize)>, Error> {
    let mut out: Vec<(Poly, usize)> = Vec::new();
    squarefree_inner(g, 1, f, &mut out)?;
    Ok(out)
}

fn squarefree_inner(
    g: &Poly,
    outer_mult: usize,
    f: &Field,
    out: &mut Vec<(Poly, usize)>,
) -> Result<(), Error> {
    if g.is_one() {
        return Ok(());
    }
    let deriv = g.derivative(f);
    if deriv.is_zero() {
        // g = h^p with h obtained by taking p-th roots of coefficients
        let h = pth_root(g, f);
        return squarefree_inner(&h, outer_mult * f.p() as usize, f, out);
    }
    let mut gcd_part = g.gcd(&deriv, f)?;
    let mut w = g.divrem(&gcd_part, f)?.0;
    let mut i = 1usize;
    while !w.is_one() {
        let y = w.gcd(&gcd_part, f)?;
        let z = w.divrem(&y, f)?.0;
        if !z.is_one() {
            out.push((z, i * outer_mult));
        }
        gcd_part = gcd_part.divrem(&y, f)?.0;
        w = y;
        i += 1;
    }
    if !gcd_part.is_one() {
        // remaining multiplicities all divisible by p
        let h = pth_root(&gcd_part, f);
        squarefree_inner(&h, outer_mult * f.p() as usize, f, out)?;
    }
    Ok(())
}

/// Distinct-degree phase: split squarefree monic `g` into (product, degree)
/// pieces where each piece is a product of irreducibles of that degree.
fn distinct_degree(g: &Poly, f: &Field) -> Result<Vec<(Poly, usize)>, Error> {
    let mut out = Vec::new();
    let mut rest = g.clone();
    let mut h = Poly::x().rem(&rest, f)?; // T^(q^d) mod rest, starting at d = 0
    let mut d = 0usize;
    while let Some(dr) = rest.degree() {
        if dr == 0 {
            break;
        }
        d += 1;
        if 2 * d > dr {
            out.push((rest.clone(), dr));
            break;
        }
        h = mod_exp_u128(&h, f.q() as u128, &rest, f)?;
        let diff = h.sub(&Poly::x(), f);
        let factor = diff.gcd(&rest, f)?;
        if let Some(dd) = factor.degree() {
            if dd > 0 {
                out.push((factor.clone(), d));
                rest = rest.divrem(&factor, f)?.0;
                h = h.rem(&rest, f)?;
            }
        }
    }
    Ok(out)
}

fn random_poly(deg_below: usize, f: &Field, rng: &mut ChaCha8Rng) -> Poly {
    let q = f.q();
    let coeffs = (0..deg_below)
        .map(|_| El((rng.next_u64() % q) as u32))
        .collect();
    Poly::from_coeffs(coeffs)
}

/// Equal-degree splitting of monic squarefree `g`, all of whose irreducible
/// factors have degree `d`.
fn equal_degree(g: &Poly, d: usize, f: &Field, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) -> Result<(), Error> {
    let dg = g.deg();
    if dg == d {
        out.push(g.clone());
        return Ok(());
    }
    let qd: u128 = (f.q() as u128).pow(d as u32);
    loop {
        let r = random_poly(dg, f, rng);
        if r.degree().is_none() {
            continue;
        }
        let candidate = if f.p() == 2 {
            // trace map over F_2: sum of r^(2^i) for i < d * e
            let steps = d * f.degree();
            let mut term = r.rem(g, f)?;
            let mut acc = term.clone();
            for _ in 1..steps {
                term = term.mul(&term, f).rem(g, f)?;
                acc = acc.add(&term, f);
            }
            acc
        } else {
            let h = mod_exp_u128(&r, (qd - 1) / 2, g, f)?;
            h.sub(&Poly::one(), f)
        };
        let split = candidate.gcd(g, f)?;
        if let Some(ds) = split.degree() {
            if ds > 0 && ds < dg {
                let other = g.divrem(&split, f)?.0;
                equal_degree(&split, d, f, rng, out)?;
                equal_degree(&other, d, f, rng, out)?;
                return Ok(());
            }
        }
    }
}

/// Full factorization of a monic polynomial of degree >= 1.
pub fn factor(g: &Poly, f: &Field) -> Result<Factorization, Error> {
    if !g.is_monic() {
        return Err(Error::NotMonic);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
    let mut factors: Vec<(Poly, usize)> = Vec::new();
    for (sqfree, mult) in squarefree_decomposition(g, f)? {
        for (piece, d) in distinct_degree(&sqfree, f)? {
            let mut irreducibles = Vec::new();
            equal_degree(&piece, d, f, &mut rng, &mut irreducibles)?;
            for irr in irreducibles {
                factors.push((irr, mult));
            }
        }
    }
    factors.sort_by(|a, b| (a.0.deg(), a.0.coeffs()).cmp(&(b.0.deg(), b.0.coeffs())));
    debug_assert!({
        let prod = Factorization { factors: factors.clone() }.product(f);
        prod == *g
    });
    Ok(Factorization { factors })
}

/// Irreducibility by factorization.
pub fn is_irreducible(g: &Poly, f: &Field) -> Result<bool, Error> {
    if g.degree().unwrap_or(0) == 0 {
        return Ok(false);
    }
    let fact = factor(g, f)?;
    Ok(fact.factors.len() == 1 && fact.factors[0].1 == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn poly(cs: &[u32]) -> Poly {
        Poly::from_coeffs(cs.iter().map(|&c| El(c)).collect())
    }

    #[test]
    fn splits_t2_plus_t_over_f2() {
        let f = Field::new(2, 1).unwrap();
        let fact = factor(&poly(&[0, 1, 1]), &f).unwrap();
        assert_eq!(
            fact.factors,
            vec![(poly(&[0, 1]), 1), (poly(&[1, 1]), 1)]
        );
    }

    #[test]
    fn char2_square_t2_plus_1() {
        let f = Field::new(2, 1).unwrap();
        let fact = factor(&poly(&[1, 0, 1]), &f).unwrap();
        assert_eq!(fact.factors, vec![(poly(&[1, 1]), 2)]);
    }

    #[test]
    fn t3_t_1_is_irreducible_over_f2() {
        let f = Field::new(2, 1).unwrap();
        let g = poly(&[1, 1, 0, 1]);
        // exhaustive check: no root in F_2
        for x in f.elements() {
            assert_ne!(g.evaluate(x, &f), El::ZERO);
        }
        let fact = factor(&g, &f).unwrap();
        assert_eq!(fact.factors, vec![(g, 1)]);
    }

    #[test]
    fn non_monic_rejected() {
        let f = Field::new(3, 1).unwrap();
        assert_eq!(factor(&poly(&[1, 2]), &f).unwrap_err(), Error::NotMonic);
    }

    #[test]
    fn deterministic_across_calls() {
        let f = Field::new(5, 1).unwrap();
        let g = poly(&[2, 3, 0, 1, 1, 0, 0, 0, 1]);
        let a = factor(&g, &f).unwrap();
        let b = factor(&g, &f).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn type_sums_to_degree() {
        let f = Field::new(3, 1).unwrap();
        let g = poly(&[1, 2, 0, 2, 1, 0, 1]);
        let fact = factor(&g, &f).unwrap();
        assert_eq!(fact.factorization_type().degree(), 6);
        assert_eq!(fact.product(&f), g);
    }
}
