//! Short-interval sums, the main-term and error-bound evaluators, and
//! worst-case scans over all intervals of a degree slice.
//!
//! Bound verdicts are exact: the bound carries a half-integer q-exponent,
//! and `worst_error <= coeff * q^(E/2)` is decided by squaring both sides
//! in integer arithmetic. Floating point appears only in diagnostics.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::arith::{binomial_u64, ArithFnSpec};
use crate::enumerate::{
    c_bucket, enumerate_c_vectors, enumerate_interval, enumerate_monic, ShortIntervalSpec,
};
use crate::factor::{factor, FactorizationType};
use crate::field::{El, Field};
use crate::symrep::{betti_bound, BettiKind, CharCache, RepSpec};
use crate::{Budget, Error};

/// Which intervals a scan visits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanMode {
    AllC,
    Sample { count: u64, seed: u64 },
}

/// Error bound as an exact pair: `coeff * q^(q_exponent_halves / 2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErrorBound {
    pub coeff: BigUint,
    pub q_exponent_halves: u64,
}

impl ErrorBound {
    pub fn approx(&self, q: u64) -> f64 {
        let coeff = self.coeff.to_f64().unwrap_or(f64::INFINITY);
        coeff * libm::pow(q as f64, self.q_exponent_halves as f64 / 2.0)
    }

    /// Exact verdict for `|error| <= bound`, by squaring.
    pub fn admits(&self, error: &BigRational, q: u64) -> bool {
        // error^2 <= coeff^2 * q^E  (E in halves)
        let num = error.numer().abs().to_biguint().unwrap();
        let den = error.denom().abs().to_biguint().unwrap();
        let lhs = num.clone() * num;
        let rhs = self.coeff.clone() * self.coeff.clone()
            * BigUint::from(q).pow(self.q_exponent_halves as u32)
            * den.clone()
            * den;
        lhs <= rhs
    }
}

/// Result of a worst-case scan for one (function, n, m) instance.
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub q: u64,
    pub p: u64,
    pub n: usize,
    pub m: usize,
    pub fn_spec: ArithFnSpec,
    pub mode: ScanMode,
    pub main_term: BigRational,
    pub worst_error: BigRational,
    pub worst_c: Vec<El>,
    pub bound: ErrorBound,
    pub ratio: f64,
    pub pass: bool,
    /// Per-interval sums in c order, kept when requested.
    pub per_c: Option<Vec<(Vec<El>, i64)>>,
}

/// Exact sum of the function over the interval.
pub fn interval_sum(
    fn_spec: &ArithFnSpec,
    field: &Field,
    spec: &ShortIntervalSpec,
    budget: Budget,
) -> Result<i64, Error> {
    let mut cache = CharCache::new();
    let mut type_values: BTreeMap<FactorizationType, i64> = BTreeMap::new();
    let mut acc: i64 = 0;
    for f in enumerate_interval(field, spec, budget)? {
        let ftype = factor(&f, field)?.factorization_type();
        let v = match type_values.get(&ftype) {
            Some(&v) => v,
            None => {
                let v = fn_spec.eval_type(&ftype, &mut cache)?;
                type_values.insert(ftype, v);
                v
            }
        };
        acc += v;
    }
    Ok(acc)
}

/// The main term subtracted for this function on an interval of
/// size q^(n-m).
pub fn main_term(
    fn_spec: &ArithFnSpec,
    field: &Field,
    n: usize,
    m: usize,
) -> Result<BigRational, Error> {
    if m > n {
        return Err(Error::InvalidParameter("main term requires n >= m"));
    }
    let size = BigInt::from(field.q()).pow((n - m) as u32);
    let value = match fn_spec {
        ArithFnSpec::DivisorK(k) => {
            if *k < 1 {
                return Err(Error::InvalidParameter("divisor function requires k >= 1"));
            }
            BigInt::from(binomial_u64((n + k - 1) as u64, (*k - 1) as u64)) * size
        }
        ArithFnSpec::DivisorRestricted(nu) => {
            if nu.iter().sum::<usize>() != n {
                return Err(Error::DegreeMismatch { expected: n, got: nu.iter().sum() });
            }
            size
        }
        ArithFnSpec::Mobius => BigInt::zero(),
        // q^(n-m), not the printed q^n: the interval has q^(n-m) members and
        // the m = 0 slice satisfies sum Lambda = q^n exactly.
        ArithFnSpec::VonMangoldt => size,
        ArithFnSpec::Fpi(rep) => {
            if rep.n() != n {
                return Err(Error::DegreeMismatch { expected: n, got: rep.n() });
            }
            let dim = CharCache::new().invariant_dimension(rep)?;
            BigInt::from(dim) * size
        }
    };
    Ok(BigRational::from_integer(value))
}

/// The explicit error bound for this function on I_c.
pub fn error_bound(
    fn_spec: &ArithFnSpec,
    field: &Field,
    n: usize,
    m: usize,
) -> Result<ErrorBound, Error> {
    if m > n {
        return Err(Error::InvalidParameter("error bound requires n >= m"));
    }
    let p = field.p() as usize;
    let halves = (n - m) + n / p - m / p + 1;
    let coeff = match fn_spec {
        ArithFnSpec::DivisorK(k) => {
            BigUint::from(binomial_u64((n + k - 1) as u64, (*k - 1) as u64))
                * betti_bound(BettiKind::Induced { k: *k }, n, m)?
        }
        ArithFnSpec::DivisorRestricted(nu) => {
            betti_bound(BettiKind::Induced { k: nu.len().max(1) }, n, m)?
        }
        ArithFnSpec::Mobius => betti_bound(BettiKind::Regular, n, m)?,
        ArithFnSpec::VonMangoldt => {
            // even and odd exterior-power sums each get the regular bound
            BigUint::from(2u32) * betti_bound(BettiKind::Regular, n, m)?
        }
        ArithFnSpec::Fpi(rep) => match rep {
            RepSpec::YoungInduced(blocks) => {
                let k = blocks.iter().filter(|&&b| b > 0).count().max(1);
                betti_bound(BettiKind::Induced { k }, n, m)?
            }
            _ => betti_bound(BettiKind::Regular, n, m)?,
        },
    };
    Ok(ErrorBound { coeff, q_exponent_halves: halves as u64 })
}

/// Max over scanned c of |interval_sum - main_term|, with an exact verdict
/// against the explicit bound.
pub fn scan_worst_case(
    fn_spec: &ArithFnSpec,
    field: &Field,
    n: usize,
    m: usize,
    mode: ScanMode,
    keep_per_c: bool,
    budget: Budget,
) -> Result<BoundReport, Error> {
    if m > n {
        return Err(Error::InvalidParameter("scan requires n >= m"));
    }
    let main = main_term(fn_spec, field, n, m)?;
    let sums: Vec<(Vec<El>, i64)> = match mode {
        ScanMode::AllC => {
            // one pass over the whole degree slice, bucketed by leading
            // coefficients; total work q^n
            let q = field.q();
            budget.check(q.checked_pow(n as u32).ok_or(Error::BudgetExceeded {
                work: u64::MAX,
                budget: budget.0,
            })?)?;
            let buckets = q.pow(m as u32) as usize;
            let mut sums = alloc::vec![0i64; buckets];
            let mut cache = CharCache::new();
            let mut type_values: BTreeMap<FactorizationType, i64> = BTreeMap::new();
            for f in enumerate_monic(field, n, budget)? {
                let ftype = factor(&f, field)?.factorization_type();
                let v = match type_values.get(&ftype) {
                    Some(&v) => v,
                    None => {
                        let v = fn_spec.eval_type(&ftype, &mut cache)?;
                        type_values.insert(ftype, v);
                        v
                    }
                };
                sums[c_bucket(field, &f, n, m) as usize] += v;
            }
            enumerate_c_vectors(field, m).zip(sums).collect()
        }
        ScanMode::Sample { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let q = field.q();
            let mut out = Vec::with_capacity(count as usize);
            for _ in 0..count {
                let c: Vec<El> = (0..m).map(|_| El((rng.next_u64() % q) as u32)).collect();
                let spec = ShortIntervalSpec::new(n, c.clone())?;
                let sum = interval_sum(fn_spec, field, &spec, budget)?;
                out.push((c, sum));
            }
            out
        }
    };
    let mut worst_error = BigRational::zero();
    let mut worst_c = Vec::new();
    for (c, sum) in &sums {
        let err = (BigRational::from_integer(BigInt::from(*sum)) - &main).abs();
        if err > worst_error {
            worst_error = err;
            worst_c = c.clone();
        }
    }
    let bound = error_bound(fn_spec, field, n, m)?;
    let pass = bound.admits(&worst_error, field.q());
    let ratio = worst_error.to_f64().unwrap_or(f64::INFINITY) / bound.approx(field.q());
    Ok(BoundReport {
        q: field.q(),
        p: field.p(),
        n,
        m,
        fn_spec: fn_spec.clone(),
        mode,
        main_term: main,
        worst_error,
        worst_c,
        bound,
        ratio,
        pass,
        per_c: keep_per_c.then_some(sums),
    })
}

/// One row of the square-root-scaling diagnostic table.
#[derive(Clone, Debug)]
pub struct ScalingRow {
    pub m: usize,
    pub worst_error: BigRational,
    pub sqrt_reference: f64,
}

/// Observed worst errors next to the square-root reference scale
/// q^((n-m)/2); diagnostic only, no verdict.
pub fn scaling_fit(
    fn_spec: &ArithFnSpec,
    field: &Field,
    n: usize,
    m_values: &[usize],
    budget: Budget,
) -> Result<Vec<ScalingRow>, Error> {
    let mut rows = Vec::with_capacity(m_values.len());
    for &m in m_values {
        let report = scan_worst_case(fn_spec, field, n, m, ScanMode::AllC, false, budget)?;
        rows.push(ScalingRow {
            m,
            worst_error: report.worst_error,
            sqrt_reference: libm::pow(field.q() as f64, (n - m) as f64 / 2.0),
        });
    }
    Ok(rows)
}
