//! Exhaustive streams of monic polynomials and short-interval members.
//!
//! Orderings are fixed: free coefficients run through an odometer with the
//! constant term moving fastest, so every stream is reproducible and the
//! intervals over all `c` partition the full degree slice.

use alloc::vec;
use alloc::vec::Vec;

use crate::field::{El, Field};
use crate::poly::Poly;
use crate::{Budget, Error};

/// The interval `I_c = { T^n + c_1 T^{n-1} + ... + c_m T^{n-m} + lower }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortIntervalSpec {
    pub n: usize,
    pub c: Vec<El>,
}

impl ShortIntervalSpec {
    pub fn new(n: usize, c: Vec<El>) -> Result<Self, Error> {
        if c.len() > n {
            return Err(Error::InvalidParameter("m must not exceed n"));
        }
        Ok(ShortIntervalSpec { n, c })
    }

    pub fn m(&self) -> usize {
        self.c.len()
    }

    /// Number of interval members, q^(n-m).
    pub fn size(&self, field: &Field) -> u64 {
        field.q().pow((self.n - self.m()) as u32)
    }
}

/// Stream over all q^n monic polynomials of degree n, or a contiguous chunk
/// of it, so callers may scan disjoint ranges in parallel.
pub struct MonicStream<'a> {
    field: &'a Field,
    n: usize,
    pinned: Vec<El>,   // high coefficients T^(n-1)..T^(n-m), fixed
    free: usize,       // number of free low coefficients
    next_index: u64,
    end_index: u64,
}

impl<'a> Iterator for MonicStream<'a> {
    type Item = Poly;

    fn next(&mut self) -> Option<Poly> {
        if self.next_index >= self.end_index {
            return None;
        }
        let q = self.field.q();
        let mut idx = self.next_index;
        self.next_index += 1;
        let mut coeffs = vec![El::ZERO; self.n + 1];
        coeffs[self.n] = El::ONE;
        for (k, &c) in self.pinned.iter().enumerate() {
            coeffs[self.n - 1 - k] = c;
        }
        for pos in 0..self.free {
            coeffs[pos] = El((idx % q) as u32);
            idx /= q;
        }
        Some(Poly::from_coeffs(coeffs))
    }
}

impl<'a> MonicStream<'a> {
    pub fn len(&self) -> u64 {
        self.end_index - self.next_index
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// All monic polynomials of degree n, in odometer order on the low
/// coefficients.
pub fn enumerate_monic<'a>(
    field: &'a Field,
    n: usize,
    budget: Budget,
) -> Result<MonicStream<'a>, Error> {
    enumerate_monic_range(field, n, 0, count_monic(field, n)?, budget)
}

/// Number of monic polynomials of degree n, checked against u64.
pub fn count_monic(field: &Field, n: usize) -> Result<u64, Error> {
    field
        .q()
        .checked_pow(n as u32)
        .ok_or(Error::BudgetExceeded { work: u64::MAX, budget: 0 })
}

/// Chunk [start, end) of the monic degree-n stream.
pub fn enumerate_monic_range<'a>(
    field: &'a Field,
    n: usize,
    start: u64,
    end: u64,
    budget: Budget,
) -> Result<MonicStream<'a>, Error> {
    let total = count_monic(field, n)?;
    budget.check(total)?;
    if start > end || end > total {
        return Err(Error::InvalidParameter("chunk out of range"));
    }
    Ok(MonicStream {
        field,
        n,
        pinned: vec![],
        free: n,
        next_index: start,
        end_index: end,
    })
}

/// All members of the short interval, odometer order on the free part.
pub fn enumerate_interval<'a>(
    field: &'a Field,
    spec: &ShortIntervalSpec,
    budget: Budget,
) -> Result<MonicStream<'a>, Error> {
    let size = spec.size(field);
    enumerate_interval_range(field, spec, 0, size, budget)
}

/// Chunk [start, end) of an interval stream, for parallel scans.
pub fn enumerate_interval_range<'a>(
    field: &'a Field,
    spec: &ShortIntervalSpec,
    start: u64,
    end: u64,
    budget: Budget,
) -> Result<MonicStream<'a>, Error> {
    let size = spec.size(field);
    budget.check(size)?;
    if start > end || end > size {
        return Err(Error::InvalidParameter("chunk out of range"));
    }
    Ok(MonicStream {
        field,
        n: spec.n,
        pinned: spec.c.clone(),
        free: spec.n - spec.m(),
        next_index: start,
        end_index: end,
    })
}

/// All c-vectors in F_q^m, odometer order (first coordinate fastest).
pub fn enumerate_c_vectors(field: &Field, m: usize) -> impl Iterator<Item = Vec<El>> + '_ {
    let q = field.q();
    let total = q.pow(m as u32);
    (0..total).map(move |mut idx| {
        let mut c = Vec::with_capacity(m);
        for _ in 0..m {
            c.push(El((idx % q) as u32));
            idx /= q;
        }
        c
    })
}

/// Top-m-coefficient bucket index of a monic degree-n polynomial, matching
/// the `enumerate_c_vectors` ordering.
pub fn c_bucket(field: &Field, f: &Poly, n: usize, m: usize) -> u64 {
    let q = field.q();
    let mut idx = 0u64;
    for k in (0..m).rev() {
        idx = idx * q + f.coeff(n - 1 - k).0 as u64;
    }
    idx
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monic_counts() {
        let f2 = Field::new(2, 1).unwrap();
        let f3 = Field::new(3, 1).unwrap();
        assert_eq!(enumerate_monic(&f2, 1, Budget::default()).unwrap().count(), 2);
        assert_eq!(enumerate_monic(&f2, 2, Budget::default()).unwrap().count(), 4);
        assert_eq!(enumerate_monic(&f3, 2, Budget::default()).unwrap().count(), 9);
    }

    #[test]
    fn degree_one_stream_over_f2() {
        let f = Field::new(2, 1).unwrap();
        let polys: Vec<Poly> = enumerate_monic(&f, 1, Budget::default()).unwrap().collect();
        assert_eq!(polys[0], Poly::x());
        assert_eq!(polys[1], Poly::from_coeffs(vec![El::ONE, El::ONE]));
    }

    #[test]
    fn pinned_interval_is_singleton() {
        // m = n pins every coefficient: (F_2, n=2, c=(0,1)) -> {T^2 + 1}
        let f = Field::new(2, 1).unwrap();
        let spec = ShortIntervalSpec::new(2, vec![El::ZERO, El::ONE]).unwrap();
        let polys: Vec<Poly> = enumerate_interval(&f, &spec, Budget::default()).unwrap().collect();
        assert_eq!(polys, vec![Poly::from_coeffs(vec![El::ONE, El::ZERO, El::ONE])]);
    }

    #[test]
    fn free_constant_interval_over_f3() {
        let f = Field::new(3, 1).unwrap();
        let spec = ShortIntervalSpec::new(2, vec![El::ONE]).unwrap();
        let polys: Vec<Poly> = enumerate_interval(&f, &spec, Budget::default()).unwrap().collect();
        assert_eq!(polys.len(), 3);
        for (i, p) in polys.iter().enumerate() {
            assert_eq!(p.coeff(2), El::ONE);
            assert_eq!(p.coeff(1), El::ONE);
            assert_eq!(p.coeff(0), El(i as u32));
        }
    }

    #[test]
    fn m_zero_is_full_slice() {
        let f = Field::new(2, 1).unwrap();
        let spec = ShortIntervalSpec::new(3, vec![]).unwrap();
        assert_eq!(enumerate_interval(&f, &spec, Budget::default()).unwrap().count(), 8);
    }

    #[test]
    fn intervals_partition_degree_slice() {
        let f = Field::new(3, 1).unwrap();
        let n = 3;
        for m in 0..=n {
            let mut seen = std::collections::BTreeSet::new();
            let mut total = 0u64;
            for c in enumerate_c_vectors(&f, m) {
                let spec = ShortIntervalSpec::new(n, c).unwrap();
                for p in enumerate_interval(&f, &spec, Budget::default()).unwrap() {
                    total += 1;
                    assert!(seen.insert(p));
                }
            }
            assert_eq!(total, 27);
            assert_eq!(seen.len(), 27);
        }
    }

    #[test]
    fn range_partition_matches_full_stream() {
        let f = Field::new(2, 1).unwrap();
        let full: Vec<Poly> = enumerate_monic(&f, 4, Budget::default()).unwrap().collect();
        let mut chunks = Vec::new();
        for (a, b) in [(0u64, 5u64), (5, 11), (11, 16)] {
            chunks.extend(enumerate_monic_range(&f, 4, a, b, Budget::default()).unwrap());
        }
        assert_eq!(full, chunks);
    }

    #[test]
    fn budget_exceeded() {
        let f = Field::new(5, 1).unwrap();
        assert!(matches!(
            enumerate_monic(&f, 10, Budget(1000)).map(|_| ()),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn c_bucket_matches_enumeration_order() {
        let f = Field::new(3, 1).unwrap();
        for (i, c) in enumerate_c_vectors(&f, 2).enumerate() {
            let spec = ShortIntervalSpec::new(4, c).unwrap();
            for p in enumerate_interval(&f, &spec, Budget::default()).unwrap() {
                assert_eq!(c_bucket(&f, &p, 4, 2), i as u64);
            }
        }
    }
}
