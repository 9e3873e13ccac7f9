//! Parallel scan drivers.
//!
//! The degree-`n` slice of monic polynomials is factored once across a
//! worker pool; every requested arithmetic function and every interval
//! width `m` is then evaluated from the cached factorization types. The
//! reports produced here are field-for-field identical to the
//! single-threaded scans in the core crate.

use std::collections::BTreeMap;

use ffsi_core::enumerate::{c_bucket, enumerate_c_vectors, enumerate_monic_range};
use ffsi_core::factor::{factor, FactorizationType};
use ffsi_core::field::{El, Field};
use ffsi_core::interval::{error_bound, main_term, BoundReport, ScanMode};
use ffsi_core::symrep::CharCache;
use ffsi_core::{ArithFnSpec, Budget, Error};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

/// Factorization type of every monic degree-n polynomial, as indices into
/// a type dictionary, together with each polynomial's top-(n-1)-coefficient
/// bucket. One parallel pass; everything downstream is table lookups.
pub struct SlicePass {
    pub types: Vec<FactorizationType>,
    pub type_of: Vec<u16>,
    pub bucket_of: Vec<u32>,
}

pub fn factor_slice(field: &Field, n: usize, budget: Budget) -> Result<SlicePass, Error> {
    let q = field.q();
    let total = q
        .checked_pow(n as u32)
        .ok_or(Error::BudgetExceeded { work: u64::MAX, budget: budget.0 })?;
    budget.check(total)?;
    let threads = rayon::current_num_threads().max(1) as u64;
    let chunk = (total / (threads * 4)).max(1024).min(total.max(1));
    let ranges: Vec<(u64, u64)> = (0..total)
        .step_by(chunk as usize)
        .map(|s| (s, (s + chunk).min(total)))
        .collect();
    let m_full = n.saturating_sub(1);
    let partials: Vec<Result<(Vec<FactorizationType>, Vec<u16>, Vec<u32>), Error>> = ranges
        .par_iter()
        .map(|&(start, end)| {
            let mut local_types: Vec<FactorizationType> = Vec::new();
            let mut index: BTreeMap<FactorizationType, u16> = BTreeMap::new();
            let mut type_of = Vec::with_capacity((end - start) as usize);
            let mut bucket_of = Vec::with_capacity((end - start) as usize);
            for f in enumerate_monic_range(field, n, start, end, budget)? {
                let ftype = factor(&f, field)?.factorization_type();
                let id = match index.get(&ftype) {
                    Some(&id) => id,
                    None => {
                        let id = local_types.len() as u16;
                        local_types.push(ftype.clone());
                        index.insert(ftype, id);
                        id
                    }
                };
                type_of.push(id);
                bucket_of.push(c_bucket(field, &f, n, m_full) as u32);
            }
            Ok((local_types, type_of, bucket_of))
        })
        .collect();
    let mut types: Vec<FactorizationType> = Vec::new();
    let mut index: BTreeMap<FactorizationType, u16> = BTreeMap::new();
    let mut type_of = Vec::with_capacity(total as usize);
    let mut bucket_of = Vec::with_capacity(total as usize);
    for partial in partials {
        let (local_types, local_ids, local_buckets) = partial?;
        let remap: Vec<u16> = local_types
            .into_iter()
            .map(|t| match index.get(&t) {
                Some(&id) => id,
                None => {
                    let id = types.len() as u16;
                    types.push(t.clone());
                    index.insert(t, id);
                    id
                }
            })
            .collect();
        type_of.extend(local_ids.into_iter().map(|id| remap[id as usize]));
        bucket_of.extend(local_buckets);
    }
    Ok(SlicePass { types, type_of, bucket_of })
}

/// Values of each function on each factorization type in the pass.
fn type_table(pass: &SlicePass, specs: &[ArithFnSpec]) -> Result<Vec<Vec<i64>>, Error> {
    let mut cache = CharCache::new();
    specs
        .iter()
        .map(|spec| pass.types.iter().map(|t| spec.eval_type(t, &mut cache)).collect())
        .collect()
}

/// Sum of each function over the whole degree-n slice (the m = 0 interval).
pub fn slice_sums(
    field: &Field,
    n: usize,
    specs: &[ArithFnSpec],
    budget: Budget,
) -> Result<Vec<i64>, Error> {
    let pass = factor_slice(field, n, budget)?;
    let values = type_table(&pass, specs)?;
    let mut counts = vec![0i64; pass.types.len()];
    for &id in &pass.type_of {
        counts[id as usize] += 1;
    }
    Ok(values
        .iter()
        .map(|v| v.iter().zip(&counts).map(|(x, c)| x * c).sum())
        .collect())
}

/// Full-width worst-case reports for every function and every m in
/// `1..n`, from a single factorization pass over the slice.
pub fn bounds_reports(
    field: &Field,
    n: usize,
    specs: &[ArithFnSpec],
    budget: Budget,
) -> Result<Vec<BoundReport>, Error> {
    let pass = factor_slice(field, n, budget)?;
    let values = type_table(&pass, specs)?;
    let q = field.q();
    let jobs: Vec<(usize, usize)> = (0..specs.len())
        .flat_map(|j| (1..n).map(move |m| (j, m)))
        .collect();
    let mut reports: Vec<BoundReport> = jobs
        .par_iter()
        .map(|&(j, m)| {
            let spec = &specs[j];
            let main = main_term(spec, field, n, m)?;
            let buckets = q.pow(m as u32);
            let mut sums = vec![0i64; buckets as usize];
            let value = &values[j];
            for (i, &id) in pass.type_of.iter().enumerate() {
                let bucket = pass.bucket_of[i] as u64 % buckets;
                sums[bucket as usize] += value[id as usize];
            }
            let mut worst_error = BigRational::zero();
            let mut worst_c: Vec<El> = Vec::new();
            for (c, sum) in enumerate_c_vectors(field, m).zip(&sums) {
                let err = (BigRational::from_integer(BigInt::from(*sum)) - &main).abs();
                if err > worst_error {
                    worst_error = err;
                    worst_c = c;
                }
            }
            let bound = error_bound(spec, field, n, m)?;
            let pass_flag = bound.admits(&worst_error, q);
            let ratio = worst_error.to_f64().unwrap_or(f64::INFINITY) / bound.approx(q);
            Ok(BoundReport {
                q,
                p: field.p(),
                n,
                m,
                fn_spec: spec.clone(),
                mode: ScanMode::AllC,
                main_term: main,
                worst_error,
                worst_c,
                bound,
                ratio,
                pass: pass_flag,
                per_c: None,
            })
        })
        .collect::<Result<_, Error>>()?;
    reports.sort_by_key(|r| (specs.iter().position(|s| s == &r.fn_spec), r.m));
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ffsi_core::interval::scan_worst_case;

    #[test]
    fn parallel_scan_matches_core_scan() {
        let field = Field::new(3, 1).unwrap();
        let specs = vec![
            ArithFnSpec::DivisorK(2),
            ArithFnSpec::Mobius,
            ArithFnSpec::VonMangoldt,
        ];
        let reports = bounds_reports(&field, 4, &specs, Budget::default()).unwrap();
        for spec in &specs {
            for m in 1..4 {
                let reference = scan_worst_case(
                    spec,
                    &field,
                    4,
                    m,
                    ScanMode::AllC,
                    false,
                    Budget::default(),
                )
                .unwrap();
                let ours = reports
                    .iter()
                    .find(|r| &r.fn_spec == spec && r.m == m)
                    .expect("report present");
                assert_eq!(ours.worst_error, reference.worst_error);
                assert_eq!(ours.worst_c, reference.worst_c);
                assert_eq!(ours.main_term, reference.main_term);
                assert_eq!(ours.pass, reference.pass);
            }
        }
    }

    #[test]
    fn slice_sums_match_direct_enumeration() {
        let field = Field::new(2, 1).unwrap();
        let specs = vec![ArithFnSpec::DivisorK(1), ArithFnSpec::VonMangoldt];
        let sums = slice_sums(&field, 5, &specs, Budget::default()).unwrap();
        assert_eq!(sums[0], 32); // d_1 counts each monic once
        assert_eq!(sums[1], 32); // prime polynomial theorem: sum Lambda = q^n
    }
}
