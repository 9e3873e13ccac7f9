//! The finite field `F_q`, `q = p^e`, with deterministic construction.
//!
//! Elements are stored as indices `0..q` encoding the coefficient vector in
//! the power basis of the modulus, little-endian base `p`. The modulus is
//! always the lexicographically least monic irreducible of degree `e` over
//! `F_p` (coefficients compared low-to-high), so identical `(p, e)` yield
//! identical fields on every machine.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Budget, Error};

/// Index of a field element in the power-basis encoding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct El(pub u32);

impl El {
    pub const ZERO: El = El(0);
    pub const ONE: El = El(1);
}

/// Construction data for `F_q`: the characteristic, the extension degree,
/// and the defining modulus over `F_p` (ascending coefficients, monic).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    pub p: u64,
    pub e: usize,
    pub modulus: Vec<u64>,
}

/// A fully built field: spec plus operation tables for small `q`.
#[derive(Debug)]
pub struct Field {
    spec: FieldSpec,
    q: u64,
    // q*q lookup tables, present when q is small enough to afford them.
    mul_table: Option<Vec<u32>>,
    add_table: Option<Vec<u32>>,
    inv_table: Option<Vec<u32>>,
}

const TABLE_LIMIT: u64 = 2048;

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Arithmetic on polynomials over the prime field F_p, ascending dense
/// coefficients. Used only for modulus search and element reduction.
mod fp {
    use alloc::vec;
    use alloc::vec::Vec;

    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(&mut out);
        out
    }

    /// Remainder of a by monic b.
    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut r: Vec<u64> = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        while r.len() > db {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - db;
            for i in 0..db {
                let sub = (lead * b[i]) % p;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
            r.pop();
            trim(&mut r);
        }
        r
    }
}

/// True iff `m` (monic, ascending, degree >= 1 over F_p) is irreducible,
/// by trial division against every lower-degree monic polynomial.
fn fp_irreducible(m: &[u64], p: u64) -> bool {
    let deg = m.len() - 1;
    if deg == 1 {
        return true;
    }
    // Divisors of degree d, 1 <= d <= deg/2, suffice.
    for d in 1..=deg / 2 {
        // Odometer over the d low coefficients of a monic degree-d candidate.
        let mut coeffs = vec![0u64; d + 1];
        coeffs[d] = 1;
        loop {
            if fp::rem(m, &coeffs, p).is_empty() {
                return false;
            }
            let mut k = 0;
            loop {
                if k == d {
                    break;
                }
                coeffs[k] += 1;
                if coeffs[k] < p {
                    break;
                }
                coeffs[k] = 0;
                k += 1;
            }
            if k == d {
                break;
            }
        }
    }
    true
}

/// Lexicographically least monic irreducible of degree `e` over F_p,
/// coefficient vectors compared low-to-high.
fn least_irreducible(p: u64, e: usize) -> Vec<u64> {
    if e == 1 {
        // x itself: constant 0 is least and x is irreducible.
        return vec![0, 1];
    }
    let mut coeffs = vec![0u64; e + 1];
    coeffs[e] = 1;
    loop {
        if fp_irreducible(&coeffs, p) {
            return coeffs;
        }
        let mut k = 0;
        loop {
            coeffs[k] += 1;
            if coeffs[k] < p {
                break;
            }
            coeffs[k] = 0;
            k += 1;
            debug_assert!(k < e, "an irreducible of every degree exists");
        }
    }
}

impl Field {
    /// Deterministic construction of `F_{p^e}`.
    pub fn new(p: u64, e: usize) -> Result<Field, Error> {
        Field::with_budget(p, e, Budget::default())
    }

    pub fn with_budget(p: u64, e: usize, budget: Budget) -> Result<Field, Error> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e < 1 {
            return Err(Error::InvalidParameter("extension degree must be >= 1"));
        }
        let mut q: u64 = 1;
        for _ in 0..e {
            q = q.checked_mul(p).ok_or(Error::BudgetExceeded {
                work: u64::MAX,
                budget: budget.0,
            })?;
        }
        budget.check(q)?;
        let modulus = least_irreducible(p, e);
        let mut field = Field {
            spec: FieldSpec { p, e, modulus },
            q,
            mul_table: None,
            add_table: None,
            inv_table: None,
        };
        if q <= TABLE_LIMIT {
            field.build_tables();
        }
        Ok(field)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn p(&self) -> u64 {
        self.spec.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn degree(&self) -> usize {
        self.spec.e
    }

    /// All field elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = El> {
        (0..self.q as u32).map(El)
    }

    /// Power-basis coordinates of an element, length `e`, entries in `[0, p)`.
    pub fn coeffs(&self, a: El) -> Vec<u64> {
        let mut x = a.0 as u64;
        let mut out = Vec::with_capacity(self.spec.e);
        for _ in 0..self.spec.e {
            out.push(x % self.spec.p);
            x /= self.spec.p;
        }
        out
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<El, Error> {
        if coeffs.len() > self.spec.e {
            return Err(Error::InvalidParameter("coefficient vector too long"));
        }
        let mut idx: u64 = 0;
        for &c in coeffs.iter().rev() {
            if c >= self.spec.p {
                return Err(Error::InvalidParameter("coefficient out of range"));
            }
            idx = idx * self.spec.p + c;
        }
        Ok(El(idx as u32))
    }

    fn add_raw(&self, a: u32, b: u32) -> u32 {
        let p = self.spec.p;
        let (mut x, mut y) = (a as u64, b as u64);
        let mut out: u64 = 0;
        let mut scale: u64 = 1;
        for _ in 0..self.spec.e {
            out += ((x % p + y % p) % p) * scale;
            x /= p;
            y /= p;
            scale *= p;
        }
        out as u32
    }

    fn neg_raw(&self, a: u32) -> u32 {
        let p = self.spec.p;
        let mut x = a as u64;
        let mut out: u64 = 0;
        let mut scale: u64 = 1;
        for _ in 0..self.spec.e {
            out += ((p - x % p) % p) * scale;
            x /= p;
            scale *= p;
        }
        out as u32
    }

    fn mul_raw(&self, a: u32, b: u32) -> u32 {
        let p = self.spec.p;
        let e = self.spec.e;
        if e == 1 {
            return ((a as u64 * b as u64) % p) as u32;
        }
        let av = self.coeffs(El(a));
        let bv = self.coeffs(El(b));
        let prod = fp::mul(&av, &bv, p);
        let red = fp::rem(&prod, &self.spec.modulus, p);
        let mut idx: u64 = 0;
        for i in (0..red.len()).rev() {
            idx = idx * p + red[i];
        }
        // rebuild index accounting for positions beyond red.len(): they are 0,
        // and the fold above already walks only the populated prefix.
        idx as u32
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        let mut add = vec![0u32; q * q];
        let mut mul = vec![0u32; q * q];
        for a in 0..q as u32 {
            for b in a..q as u32 {
                let s = self.add_raw(a, b);
                let m = self.mul_raw(a, b);
                add[a as usize * q + b as usize] = s;
                add[b as usize * q + a as usize] = s;
                mul[a as usize * q + b as usize] = m;
                mul[b as usize * q + a as usize] = m;
            }
        }
        let mut inv = vec![0u32; q];
        for a in 1..q as u32 {
            if inv[a as usize] != 0 {
                continue;
            }
            for b in 1..q as u32 {
                if mul[a as usize * q + b as usize] == 1 {
                    inv[a as usize] = b;
                    inv[b as usize] = a;
                    break;
                }
            }
        }
        self.add_table = Some(add);
        self.mul_table = Some(mul);
        self.inv_table = Some(inv);
    }

    #[inline]
    pub fn add(&self, a: El, b: El) -> El {
        match &self.add_table {
            Some(t) => El(t[a.0 as usize * self.q as usize + b.0 as usize]),
            None => El(self.add_raw(a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: El) -> El {
        El(self.neg_raw(a.0))
    }

    #[inline]
    pub fn sub(&self, a: El, b: El) -> El {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: El, b: El) -> El {
        match &self.mul_table {
            Some(t) => El(t[a.0 as usize * self.q as usize + b.0 as usize]),
            None => El(self.mul_raw(a.0, b.0)),
        }
    }

    pub fn inv(&self, a: El) -> Result<El, Error> {
        if a == El::ZERO {
            return Err(Error::DivisionByZero);
        }
        if let Some(t) = &self.inv_table {
            return Ok(El(t[a.0 as usize]));
        }
        // a^(q-2)
        Ok(self.pow(a, self.q - 2))
    }

    pub fn pow(&self, a: El, mut n: u64) -> El {
        let mut base = a;
        let mut acc = El::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// The Frobenius x -> x^p.
    pub fn frobenius(&self, a: El) -> El {
        self.pow(a, self.spec.p)
    }

    /// x -> x^q relative Frobenius for subfield work.
    pub fn pow_q(&self, a: El, q_sub: u64) -> El {
        self.pow(a, q_sub)
    }

    /// Scalar embedding of `0..p` as the prime subfield.
    pub fn from_int(&self, n: u64) -> El {
        El((n % self.spec.p) as u32)
    }
}
