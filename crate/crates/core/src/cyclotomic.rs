//! Exact arithmetic with sums of roots of unity.
//!
//! A sum sum_j n_j zeta_E^{k_j} is stored as a multiset of exponents mod E.
//! Equality with a rational integer is decided by reducing the exponent
//! polynomial modulo the E-th cyclotomic polynomial, which is exact.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

/// Coefficients of the E-th cyclotomic polynomial, ascending.
pub fn cyclotomic(e: u64) -> Vec<BigInt> {
    // Phi_E = (x^E - 1) / prod_{d | E, d < E} Phi_d
    let mut num = vec![BigInt::zero(); e as usize + 1];
    num[0] = BigInt::from(-1);
    num[e as usize] = BigInt::from(1);
    for d in 1..e {
        if e % d == 0 {
            num = exact_div(&num, &cyclotomic(d));
        }
    }
    num
}

// exact division of integer polynomials, divisor monic up to sign of its
// leading coefficient
fn exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    let lead = den[dd].clone();
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let c = &rem[i] / &lead;
        quot[i - dd] = c.clone();
        for j in 0..=dd {
            let t = &den[j] * &c;
            rem[i - dd + j] -= t;
        }
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    while quot.len() > 1 && quot.last().unwrap().is_zero() {
        quot.pop();
    }
    quot
}

/// A formal integer combination of E-th roots of unity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSum {
    pub e: u64,
    /// coefficient of zeta_E^k at index k
    pub coeffs: Vec<BigInt>,
}

impl RootSum {
    pub fn zero(e: u64) -> RootSum {
        RootSum { e, coeffs: vec![BigInt::zero(); e as usize] }
    }

    pub fn add_root(&mut self, exponent: u64, multiplicity: i64) {
        self.coeffs[(exponent % self.e) as usize] += BigInt::from(multiplicity);
    }

    /// True iff the sum equals the given integer, decided exactly.
    pub fn equals_integer(&self, value: &BigInt) -> bool {
        let mut poly = self.coeffs.clone();
        poly[0] -= value;
        let phi = cyclotomic(self.e);
        let rem = poly_rem(&poly, &phi);
        rem.iter().all(|c| c.is_zero())
    }

    pub fn is_zero_sum(&self) -> bool {
        self.equals_integer(&BigInt::zero())
    }

    /// Floating-point value, for reports.
    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = c.to_f64().unwrap_or(0.0);
            let theta = 2.0 * core::f64::consts::PI * k as f64 / self.e as f64;
            re += c * libm::cos(theta);
            im += c * libm::sin(theta);
        }
        (re, im)
    }
}

fn poly_rem(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    // den is monic for cyclotomic polynomials
    debug_assert!(den[dd] == BigInt::from(1));
    for i in (dd..rem.len()).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let c = rem[i].clone();
        for j in 0..=dd {
            let t = &den[j] * &c;
            rem[i - dd + j] -= t;
        }
    }
    rem.truncate(dd);
    rem
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic(2), ints(&[1, 1]));
        assert_eq!(cyclotomic(3), ints(&[1, 1, 1]));
        assert_eq!(cyclotomic(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn full_orbit_sums_to_zero() {
        for e in 2..=12u64 {
            let mut s = RootSum::zero(e);
            for k in 0..e {
                s.add_root(k, 1);
            }
            assert!(s.is_zero_sum());
        }
    }

    #[test]
    fn partial_orbit_is_not_zero() {
        let mut s = RootSum::zero(5);
        s.add_root(1, 1);
        s.add_root(2, 1);
        assert!(!s.is_zero_sum());
        assert!(!s.equals_integer(&BigInt::from(1)));
    }

    #[test]
    fn rational_subgroup_sum() {
        // sum over the order-3 subgroup of zeta_6 powers is 0; adding the
        // identity 4 extra times gives 4 - 1 = 3... checked exactly
        let mut s = RootSum::zero(6);
        s.add_root(0, 1);
        s.add_root(2, 1);
        s.add_root(4, 1);
        assert!(s.is_zero_sum());
        s.add_root(0, 3);
        assert!(s.equals_integer(&BigInt::from(3)));
    }

    #[test]
    fn complex_value_matches() {
        let mut s = RootSum::zero(4);
        s.add_root(1, 2); // 2i
        let (re, im) = s.to_complex();
        assert!(re.abs() < 1e-12 && (im - 2.0).abs() < 1e-12);
    }
}
