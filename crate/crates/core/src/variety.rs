//! Brute-force point counts for the root-tuple varieties behind the short
//! intervals: the affine variety with pinned elementary symmetric values,
//! its quotients by Young subgroups, and the degenerate cone controlling
//! the singular locus, together with dimension fits over field extensions.

use alloc::vec;
use alloc::vec::Vec;

use crate::enumerate::{enumerate_interval, enumerate_monic, ShortIntervalSpec};
use crate::field::{El, Field};
use crate::interval::ErrorBound;
use crate::poly::Poly;
use crate::symrep::{betti_bound, factorial, BettiKind};
use crate::{Budget, Error};
use num_bigint::BigUint;

/// The tuple variety for one interval: n coordinates, the top m elementary
/// symmetric values pinned by c.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietySpec {
    pub n: usize,
    pub m: usize,
    /// c over the base field
    pub c: Vec<El>,
}

impl VarietySpec {
    pub fn new(n: usize, c: Vec<El>) -> Result<VarietySpec, Error> {
        if c.len() > n {
            return Err(Error::InvalidParameter("m must not exceed n"));
        }
        Ok(VarietySpec { n, m: c.len(), c })
    }
}

/// Map of base-field elements into the degree-r extension, via the least
/// root of the base modulus.
pub fn embedding(base: &Field, ext: &Field) -> Result<Vec<El>, Error> {
    if base.p() != ext.p() || ext.degree() % base.degree() != 0 {
        return Err(Error::FieldMismatch);
    }
    let modulus: Vec<El> = base
        .spec()
        .modulus
        .iter()
        .map(|&c| ext.from_int(c))
        .collect();
    let beta = ext
        .elements()
        .find(|&b| {
            let mut acc = El::ZERO;
            for &c in modulus.iter().rev() {
                acc = ext.add(ext.mul(acc, b), c);
            }
            acc == El::ZERO
        })
        .ok_or(Error::FieldMismatch)?;
    let mut map = Vec::with_capacity(base.q() as usize);
    for a in base.elements() {
        let coeffs = base.coeffs(a);
        let mut acc = El::ZERO;
        for &c in coeffs.iter().rev() {
            acc = ext.add(ext.mul(acc, beta), ext.from_int(c));
        }
        map.push(acc);
    }
    Ok(map)
}

/// Extension field of relative degree r over the base.
pub fn extension(base: &Field, r: usize, budget: Budget) -> Result<Field, Error> {
    Field::with_budget(base.p(), base.degree() * r, budget)
}

// targets t_j = (-1)^j c_j in the extension
fn targets(base: &Field, ext: &Field, spec: &VarietySpec) -> Result<Vec<El>, Error> {
    let map = embedding(base, ext)?;
    Ok(spec
        .c
        .iter()
        .enumerate()
        .map(|(j, &cj)| {
            let t = map[cj.0 as usize];
            if j % 2 == 0 {
                ext.neg(t)
            } else {
                t
            }
        })
        .collect())
}

/// Points of the tuple variety over the degree-r extension; the last
/// coordinate is solved from the linear (degree-1) equation.
pub fn count_points_x(
    base: &Field,
    spec: &VarietySpec,
    r: usize,
    budget: Budget,
) -> Result<u64, Error> {
    let (n, m) = (spec.n, spec.m);
    let ext = extension(base, r, budget)?;
    let q = ext.q();
    if m == 0 {
        let work = q.checked_pow(n as u32).ok_or(Error::BudgetExceeded {
            work: u64::MAX,
            budget: budget.0,
        })?;
        budget.check(work)?;
        return Ok(work);
    }
    budget.check(q.pow((n - 1) as u32))?;
    let t = targets(base, &ext, spec)?;

    // depth-first over a_1..a_{n-1} carrying elementary symmetric prefix
    fn rec(ext: &Field, t: &[El], e: &mut Vec<El>, depth: usize, free: usize) -> u64 {
        let m = t.len();
        if depth == free {
            // solve a_last from e_1 + a = t_1, then check the rest
            let a = ext.sub(t[0], e[1]);
            for j in (2..=m).rev() {
                if ext.add(e[j], ext.mul(a, e[j - 1])) != t[j - 1] {
                    return 0;
                }
            }
            return 1;
        }
        let mut count = 0;
        for a in ext.elements() {
            let saved = e.clone();
            for j in (1..=m).rev() {
                e[j] = ext.add(e[j], ext.mul(a, e[j - 1]));
            }
            count += rec(ext, t, e, depth + 1, free);
            *e = saved;
        }
        count
    }
    let mut e = vec![El::ZERO; m + 1];
    e[0] = El::ONE;
    Ok(rec(&ext, &t, &mut e, 0, n - 1))
}

// ordered root tuples of g over ext: n!/prod(mult!) if g splits, else 0
fn ordered_root_tuples(g: &Poly, ext: &Field) -> u64 {
    let n = g.deg();
    let mut coeffs: Vec<El> = g.coeffs().to_vec();
    let mut mults: Vec<usize> = Vec::new();
    for a in ext.elements() {
        let mut mult = 0;
        while coeffs.len() > 1 {
            // synthetic division by (x - a)
            let deg = coeffs.len() - 1;
            let mut quot = vec![El::ZERO; deg];
            let mut carry = coeffs[deg];
            for i in (0..deg).rev() {
                quot[i] = carry;
                carry = ext.add(coeffs[i], ext.mul(carry, a));
            }
            if carry != El::ZERO {
                break;
            }
            coeffs = quot;
            mult += 1;
        }
        if mult > 0 {
            mults.push(mult);
        }
        if coeffs.len() == 1 {
            break;
        }
    }
    if mults.iter().sum::<usize>() != n {
        return 0;
    }
    let mut count = factorial(n);
    for m in mults {
        count /= factorial(m);
    }
    count
}

/// Interval-side ground truth for `count_points_x` at r = 1: sum over the
/// interval of the number of ordered root tuples.
pub fn count_points_x_oracle(
    base: &Field,
    spec: &VarietySpec,
    budget: Budget,
) -> Result<u64, Error> {
    let ispec = ShortIntervalSpec::new(spec.n, spec.c.clone())?;
    let mut total = 0u64;
    for f in enumerate_interval(base, &ispec, budget)? {
        total += ordered_root_tuples(&f, base);
    }
    Ok(total)
}

/// Which quotient of the tuple variety to count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuotientTarget {
    Full,
    Blocks(Vec<usize>),
}

/// Base-field points of the quotient, by direct moduli enumeration: monic
/// polynomials in the interval, or tuples of monic polynomials whose
/// product lands in the interval.
pub fn count_points_quotient(
    base: &Field,
    spec: &VarietySpec,
    target: &QuotientTarget,
    budget: Budget,
) -> Result<u64, Error> {
    let ispec = ShortIntervalSpec::new(spec.n, spec.c.clone())?;
    match target {
        QuotientTarget::Full => {
            let mut count = 0u64;
            for _ in enumerate_interval(base, &ispec, budget)? {
                count += 1;
            }
            Ok(count)
        }
        QuotientTarget::Blocks(blocks) => {
            let total: usize = blocks.iter().sum();
            if total != spec.n {
                return Err(Error::DegreeMismatch { expected: spec.n, got: total });
            }
            budget.check(base.q().pow(spec.n as u32))?;
            fn rec(
                base: &Field,
                blocks: &[usize],
                acc: &Poly,
                ispec: &ShortIntervalSpec,
                budget: Budget,
            ) -> Result<u64, Error> {
                match blocks.split_first() {
                    None => {
                        let inside = acc.deg() == ispec.n
                            && (0..ispec.m())
                                .all(|k| acc.coeff(ispec.n - 1 - k) == ispec.c[k]);
                        Ok(inside as u64)
                    }
                    Some((&b, rest)) => {
                        let mut count = 0;
                        for g in enumerate_monic(base, b, budget)? {
                            count += rec(base, rest, &acc.mul(&g, base), ispec, budget)?;
                        }
                        Ok(count)
                    }
                }
            }
            rec(base, blocks, &Poly::one(), &ispec, budget)
        }
    }
}

/// Points of the degenerate cone over the extension: tuples whose
/// elementary symmetric values e_i vanish for every i that is at most m or
/// not divisible by p. Counted by enumerating the admissible coefficient
/// patterns and their ordered root tuples.
pub fn count_r_cone(
    base: &Field,
    n: usize,
    m: usize,
    r: usize,
    budget: Budget,
) -> Result<u64, Error> {
    if m < 1 || m > n {
        return Err(Error::InvalidParameter("cone count requires 1 <= m <= n"));
    }
    let ext = extension(base, r, budget)?;
    let p = base.p() as usize;
    let free: Vec<usize> = (m + 1..=n).filter(|i| i % p == 0).collect();
    let q = ext.q();
    budget.check(q.pow(free.len() as u32).saturating_mul(q))?;
    let mut total = 0u64;
    let patterns = q.pow(free.len() as u32);
    for mut idx in 0..patterns {
        let mut coeffs = vec![El::ZERO; n + 1];
        coeffs[n] = El::ONE;
        for &i in &free {
            coeffs[n - i] = El((idx % q) as u32);
            idx /= q;
        }
        total += ordered_root_tuples(&Poly::from_coeffs(coeffs), &ext);
    }
    Ok(total)
}

/// Least-squares slope of log_q(count) against r. `Ok(None)` means every
/// count was zero (empty variety).
pub fn dimension_fit(q: u64, counts: &[(usize, u64)]) -> Result<Option<f64>, Error> {
    let pts: Vec<(f64, f64)> = counts
        .iter()
        .filter(|&&(_, c)| c > 0)
        .map(|&(r, c)| (r as f64, libm::log(c as f64) / libm::log(q as f64)))
        .collect();
    if pts.is_empty() {
        return Ok(None);
    }
    if pts.len() < 2 {
        return Err(Error::InvalidParameter(
            "dimension fit needs at least two nonzero counts",
        ));
    }
    let n = pts.len() as f64;
    let mean_x = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let num: f64 = pts.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let den: f64 = pts.iter().map(|p| (p.0 - mean_x) * (p.0 - mean_x)).sum();
    Ok(Some(num / den))
}

/// The generous Weil-type bound on |count - q^{r(n-m)}| for the tuple
/// variety, as an exact half-exponent pair in the base q.
pub fn weil_bound(base: &Field, n: usize, m: usize, r: usize) -> Result<ErrorBound, Error> {
    let p = base.p() as usize;
    let halves = r * (n - m + n / p - m / p + 1);
    Ok(ErrorBound {
        coeff: betti_bound(BettiKind::Regular, n, m)?,
        q_exponent_halves: halves as u64,
    })
}

/// Full experiment for one spec and target: counts over r = 1..r_max with
/// references and a dimension fit.
#[derive(Clone, Debug)]
pub struct CountReport {
    pub q: u64,
    pub p: u64,
    pub n: usize,
    pub m: usize,
    pub c: Vec<El>,
    pub counts: Vec<(usize, u64)>,
    pub reference: Vec<BigUint>,
    pub slope: Option<f64>,
}

/// What to count in a report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CountTarget {
    X,
    Quotient(QuotientTarget),
    RCone,
}

pub fn count_report(
    base: &Field,
    spec: &VarietySpec,
    target: &CountTarget,
    r_max: usize,
    budget: Budget,
) -> Result<CountReport, Error> {
    if r_max < 1 {
        return Err(Error::InvalidParameter("need at least one extension degree"));
    }
    let mut counts = Vec::new();
    let mut reference = Vec::new();
    for r in 1..=r_max {
        let count = match target {
            CountTarget::X => count_points_x(base, spec, r, budget)?,
            CountTarget::Quotient(t) => {
                if r > 1 {
                    return Err(Error::InvalidParameter(
                        "quotient counts are base-field only",
                    ));
                }
                count_points_quotient(base, spec, t, budget)?
            }
            CountTarget::RCone => count_r_cone(base, spec.n, spec.m, r, budget)?,
        };
        counts.push((r, count));
        reference.push(BigUint::from(base.q()).pow((r * (spec.n - spec.m)) as u32));
    }
    let slope = match dimension_fit(base.q(), &counts) {
        Ok(s) => s,
        Err(_) => None,
    };
    Ok(CountReport {
        q: base.q(),
        p: base.p(),
        n: spec.n,
        m: spec.m,
        c: spec.c.clone(),
        counts,
        reference,
        slope,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::Signed;

    #[test]
    fn affine_line() {
        let f3 = Field::new(3, 1).unwrap();
        let spec = VarietySpec::new(1, vec![]).unwrap();
        assert_eq!(count_points_x(&f3, &spec, 1, Budget::default()).unwrap(), 3);
    }

    #[test]
    fn line_in_the_plane() {
        let f3 = Field::new(3, 1).unwrap();
        for c1 in 0..3u32 {
            let spec = VarietySpec::new(2, vec![El(c1)]).unwrap();
            assert_eq!(count_points_x(&f3, &spec, 1, Budget::default()).unwrap(), 3);
            assert_eq!(count_points_x(&f3, &spec, 2, Budget::default()).unwrap(), 9);
        }
    }

    #[test]
    fn pinned_quadratic_counts_root_pairs() {
        // n = m = 2, c = (0, c2): points are ordered root pairs of T^2 + c2
        let f3 = Field::new(3, 1).unwrap();
        for c2 in 0..3u32 {
            let spec = VarietySpec::new(2, vec![El::ZERO, El(c2)]).unwrap();
            let g = Poly::from_coeffs(vec![El(c2), El::ZERO, El::ONE]);
            assert_eq!(
                count_points_x(&f3, &spec, 1, Budget::default()).unwrap(),
                ordered_root_tuples(&g, &f3)
            );
        }
    }

    #[test]
    fn interval_oracle_agrees() {
        for p in [2u64, 3] {
            let base = Field::new(p, 1).unwrap();
            for n in 1..=4usize {
                for m in 0..=n.min(2) {
                    for c in crate::enumerate::enumerate_c_vectors(&base, m) {
                        let spec = VarietySpec::new(n, c).unwrap();
                        assert_eq!(
                            count_points_x(&base, &spec, 1, Budget::default()).unwrap(),
                            count_points_x_oracle(&base, &spec, Budget::default()).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn quotient_full_is_interval_size() {
        let f3 = Field::new(3, 1).unwrap();
        for n in 1..=4usize {
            for m in 0..=n.min(2) {
                for c in crate::enumerate::enumerate_c_vectors(&f3, m) {
                    let spec = VarietySpec::new(n, c).unwrap();
                    assert_eq!(
                        count_points_quotient(&f3, &spec, &QuotientTarget::Full, Budget::default())
                            .unwrap(),
                        3u64.pow((n - m) as u32)
                    );
                }
            }
        }
    }

    #[test]
    fn quotient_blocks_example() {
        // n=2, m=1, q=2, c=(1): T^2+T has 2 ordered linear factorizations,
        // T^2+T+1 has none
        let f2 = Field::new(2, 1).unwrap();
        let spec = VarietySpec::new(2, vec![El::ONE]).unwrap();
        assert_eq!(
            count_points_quotient(
                &f2,
                &spec,
                &QuotientTarget::Blocks(vec![1, 1]),
                Budget::default()
            )
            .unwrap(),
            2
        );
    }

    #[test]
    fn quotient_blocks_match_restricted_divisors() {
        let f2 = Field::new(2, 1).unwrap();
        for n in 2..=4usize {
            for blocks in crate::symrep::compositions(n, 2) {
                for c in crate::enumerate::enumerate_c_vectors(&f2, 1) {
                    let spec = VarietySpec::new(n, c.clone()).unwrap();
                    let direct = count_points_quotient(
                        &f2,
                        &spec,
                        &QuotientTarget::Blocks(blocks.clone()),
                        Budget::default(),
                    )
                    .unwrap();
                    let ispec = ShortIntervalSpec::new(n, c).unwrap();
                    let via_divisors: i64 = enumerate_interval(&f2, &ispec, Budget::default())
                        .unwrap()
                        .map(|f| crate::arith::divisor_restricted(&f, &f2, &blocks).unwrap())
                        .sum();
                    assert_eq!(direct as i64, via_divisors);
                }
            }
        }
    }

    #[test]
    fn cone_examples() {
        let f2 = Field::new(2, 1).unwrap();
        let f3 = Field::new(3, 1).unwrap();
        assert_eq!(count_r_cone(&f2, 2, 2, 1, Budget::default()).unwrap(), 1);
        assert_eq!(count_r_cone(&f2, 3, 2, 1, Budget::default()).unwrap(), 1);
        // characteristic-p degeneracy: constant tuples survive at n = p, m = 1
        assert_eq!(count_r_cone(&f2, 2, 1, 1, Budget::default()).unwrap(), 2);
        assert_eq!(count_r_cone(&f3, 3, 1, 1, Budget::default()).unwrap(), 3);
    }

    #[test]
    fn dimension_fit_examples() {
        let exact = dimension_fit(3, &[(1, 3), (2, 9), (3, 27)]).unwrap().unwrap();
        assert!((exact - 1.0).abs() < 1e-12);
        assert_eq!(dimension_fit(3, &[(1, 1), (2, 1), (3, 1)]).unwrap(), Some(0.0));
        assert_eq!(dimension_fit(3, &[(1, 0), (2, 0)]).unwrap(), None);
        let slope = dimension_fit(2, &[(1, 4), (2, 17), (3, 63)]).unwrap().unwrap();
        assert!((slope - 2.0).abs() < 0.2);
    }

    #[test]
    fn fitted_dimension_matches_n_minus_m() {
        let f2 = Field::new(2, 1).unwrap();
        let spec = VarietySpec::new(3, vec![El::ONE]).unwrap();
        let report =
            count_report(&f2, &spec, &CountTarget::X, 3, Budget::default()).unwrap();
        let slope = report.slope.unwrap();
        assert!((slope - 2.0).abs() < 0.2, "slope {slope}");
    }

    #[test]
    fn weil_deviation_within_bound() {
        for p in [2u64, 3] {
            let base = Field::new(p, 1).unwrap();
            for n in 2..=4usize {
                for m in 1..n {
                    for c in crate::enumerate::enumerate_c_vectors(&base, m) {
                        let spec = VarietySpec::new(n, c).unwrap();
                        for r in 1..=2usize {
                            let count =
                                count_points_x(&base, &spec, r, Budget::default()).unwrap();
                            let reference =
                                BigInt::from(base.q()).pow((r * (n - m)) as u32);
                            let dev = BigRational::from_integer(
                                (BigInt::from(count) - reference).abs(),
                            );
                            let bound = weil_bound(&base, n, m, r).unwrap();
                            assert!(bound.admits(&dev, base.q()));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn sign_convention_single_nonzero_coordinate() {
        // (a, 0, ..., 0) lies in the variety iff c_1 = -a and higher c vanish
        let f3 = Field::new(3, 1).unwrap();
        for a in 0..3u32 {
            let spec = VarietySpec::new(3, vec![f3.neg(El(a)), El::ZERO]).unwrap();
            let t = targets(&f3, &f3, &spec).unwrap();
            // e_1 = a must equal t_1, e_2 = 0 must equal t_2
            assert_eq!(t[0], El(a));
            assert_eq!(t[1], El::ZERO);
        }
    }

    #[test]
    fn jacobian_rank_away_from_repetitions() {
        // the m x n matrix d(e_i)/d(a_j) = e_{i-1}(a minus a_j) has full
        // rank at points with all-distinct coordinates
        let f5 = Field::new(5, 1).unwrap();
        let pts = [vec![El(0), El(1), El(2)], vec![El(1), El(3), El(4)]];
        let m = 2;
        for a in pts {
            let n = a.len();
            let mut rows = Vec::new();
            for i in 1..=m {
                let mut row = Vec::new();
                for j in 0..n {
                    let others: Vec<El> = (0..n).filter(|&k| k != j).map(|k| a[k]).collect();
                    row.push(elementary_symmetric(&others, i - 1, &f5));
                }
                rows.push(row);
            }
            assert_eq!(rank(&mut rows, &f5), m);
        }
    }

    fn elementary_symmetric(vals: &[El], k: usize, f: &Field) -> El {
        let mut e = vec![El::ZERO; k + 1];
        e[0] = El::ONE;
        for &a in vals {
            for j in (1..=k).rev() {
                e[j] = f.add(e[j], f.mul(a, e[j - 1]));
            }
        }
        e[k]
    }

    fn rank(rows: &mut Vec<Vec<El>>, f: &Field) -> usize {
        let mut rank = 0;
        let cols = rows[0].len();
        for col in 0..cols {
            if let Some(pivot) = (rank..rows.len()).find(|&i| rows[i][col] != El::ZERO) {
                rows.swap(rank, pivot);
                let inv = f.inv(rows[rank][col]).unwrap();
                for i in 0..rows.len() {
                    if i != rank && rows[i][col] != El::ZERO {
                        let factor = f.mul(rows[i][col], inv);
                        for j in 0..cols {
                            let t = f.mul(factor, rows[rank][j]);
                            rows[i][j] = f.sub(rows[i][j], t);
                        }
                    }
                }
                rank += 1;
            }
        }
        rank
    }
}
