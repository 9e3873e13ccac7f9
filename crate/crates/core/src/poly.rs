//! Dense polynomials over `F_q`, ascending coefficients.
//!
//! The zero polynomial is the empty coefficient vector. The variable is
//! abstract and read as `T` or `u` depending on context.

use alloc::vec;
use alloc::vec::Vec;

use crate::field::{El, Field};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly {
    coeffs: Vec<El>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Poly {
        Poly { coeffs: vec![El::ONE] }
    }

    pub fn constant(c: El) -> Poly {
        if c == El::ZERO {
            Poly::zero()
        } else {
            Poly { coeffs: vec![c] }
        }
    }

    /// `T` itself.
    pub fn x() -> Poly {
        Poly { coeffs: vec![El::ZERO, El::ONE] }
    }

    /// Monomial `c T^d`.
    pub fn monomial(c: El, d: usize) -> Poly {
        if c == El::ZERO {
            return Poly::zero();
        }
        let mut coeffs = vec![El::ZERO; d + 1];
        coeffs[d] = c;
        Poly { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<El>) -> Poly {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&El::ZERO) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [El::ONE]
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree of a known-nonzero polynomial.
    pub fn deg(&self) -> usize {
        self.degree().expect("zero polynomial has no degree")
    }

    pub fn coeffs(&self) -> &[El] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> El {
        self.coeffs.get(i).copied().unwrap_or(El::ZERO)
    }

    pub fn leading(&self) -> Option<El> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(El::ONE)
    }

    pub fn add(&self, other: &Poly, f: &Field) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(f.add(self.coeff(i), other.coeff(i)));
        }
        Poly::from_coeffs(out)
    }

    pub fn neg(&self, f: &Field) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly, f: &Field) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(f.sub(self.coeff(i), other.coeff(i)));
        }
        Poly::from_coeffs(out)
    }

    pub fn mul(&self, other: &Poly, f: &Field) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![El::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == El::ZERO {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn scale(&self, c: El, f: &Field) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Quotient and remainder; `other` must be nonzero.
    pub fn divrem(&self, other: &Poly, f: &Field) -> Result<(Poly, Poly), Error> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let db = other.deg();
        let lead_inv = f.inv(other.leading().unwrap())?;
        let mut rem = self.clone();
        let mut quot = vec![El::ZERO; self.coeffs.len().saturating_sub(db)];
        while let Some(dr) = rem.degree() {
            if dr < db {
                break;
            }
            let factor = f.mul(rem.leading().unwrap(), lead_inv);
            let shift = dr - db;
            quot[shift] = factor;
            for i in 0..=db {
                let sub = f.mul(factor, other.coeff(i));
                rem.coeffs[shift + i] = f.sub(rem.coeffs[shift + i], sub);
            }
            rem.trim();
        }
        Ok((Poly::from_coeffs(quot), rem))
    }

    pub fn rem(&self, other: &Poly, f: &Field) -> Result<Poly, Error> {
        Ok(self.divrem(other, f)?.1)
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Poly, f: &Field) -> Result<Poly, Error> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b, f)?;
            a = b;
            b = r;
        }
        if a.is_zero() {
            return Ok(a);
        }
        let li = f.inv(a.leading().unwrap())?;
        Ok(a.scale(li, f))
    }

    pub fn evaluate(&self, x: El, f: &Field) -> El {
        let mut acc = El::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }

    pub fn derivative(&self, f: &Field) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, &c) in self.coeffs.iter().enumerate().skip(1) {
            // i * c with i reduced into the prime subfield
            let scalar = f.from_int(i as u64);
            out.push(f.mul(scalar, c));
        }
        Poly::from_coeffs(out)
    }

    /// self(other).
    pub fn compose(&self, other: &Poly, f: &Field) -> Poly {
        let mut acc = Poly::zero();
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(other, f).add(&Poly::constant(c), f);
        }
        acc
    }

    /// self^n mod m.
    pub fn pow_mod(&self, mut n: u64, m: &Poly, f: &Field) -> Result<Poly, Error> {
        let mut base = self.rem(m, f)?;
        let mut acc = Poly::one().rem(m, f)?;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base, f).rem(m, f)?;
            }
            base = base.mul(&base, f).rem(m, f)?;
            n >>= 1;
        }
        Ok(acc)
    }

    /// Coefficient reversal `T^d f(1/T)` for nonzero `f` of degree `d`.
    pub fn reversal(&self) -> Poly {
        let mut coeffs: Vec<El> = self.coeffs.iter().rev().copied().collect();
        let mut p = Poly { coeffs: core::mem::take(&mut coeffs) };
        p.trim();
        p
    }
}
