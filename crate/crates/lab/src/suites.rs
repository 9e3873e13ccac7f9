//! Named verification suites with per-check PASS/FAIL results.
//!
//! Every check is exact where the mathematics is exact (integer and
//! cyclotomic identities) and uses fixed tolerances only for genuinely
//! floating-point quantities (functional-equation residuals, fitted
//! slopes). Output is deterministic: fixed check order, fixed float
//! formatting, no timestamps.

use std::fmt::Write as _;

use anyhow::{anyhow, Result};
use ffsi_core::arith::binomial_u64;
use ffsi_core::cyclotomic::RootSum;
use ffsi_core::enumerate::{enumerate_c_vectors, enumerate_monic};
use ffsi_core::field::Field;
use ffsi_core::lfunc::{
    build_unit_group, character_sum_identity, check_functional_equation,
    default_sample_points, enumerate_characters, epsilon_factor, l_polynomial, moment,
    psi_exponent, MomentVerdict, DEFAULT_SOFT_LIMIT,
};
use ffsi_core::arith::{divisor_k, divisor_restricted, mangoldt, mobius};
use ffsi_core::oracle::{SymOracle, TupleSpace};
use ffsi_core::symrep::{
    compositions, factorization_function, partitions, virtual_factorization_function,
    RepSpec, VirtualRep,
};
use ffsi_core::variety::{
    count_points_quotient, count_points_x, count_points_x_oracle, count_r_cone,
    dimension_fit, QuotientTarget, VarietySpec,
};
use ffsi_core::{ArithFnSpec, Budget, El, ShortIntervalSpec};
use num_bigint::BigInt;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::drivers::{bounds_reports, slice_sums};
use crate::report::format_float;

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: String, pass: bool, detail: String) -> Check {
        Check { name, pass, detail }
    }
}

pub const SUITE_NAMES: &[&str] =
    &["identities", "facfun-oracle", "bounds", "variety", "lfunc", "all"];

pub fn run_suite(name: &str, budget: Budget) -> Result<Vec<Check>> {
    match name {
        "identities" => suite_identities(budget),
        "facfun-oracle" => suite_facfun_oracle(budget),
        "bounds" => suite_bounds(budget),
        "variety" => suite_variety(budget),
        "lfunc" => suite_lfunc(budget),
        "all" => {
            let mut out = suite_identities(budget)?;
            out.extend(suite_facfun_oracle(budget)?);
            out.extend(suite_bounds(budget)?);
            out.extend(suite_variety(budget)?);
            out.extend(suite_lfunc(budget)?);
            Ok(out)
        }
        _ => Err(anyhow!("unknown suite '{name}'; expected one of {SUITE_NAMES:?}")),
    }
}

/// Fixed-format result table; byte-identical across replays.
pub fn render(checks: &[Check]) -> String {
    let mut out = String::new();
    for c in checks {
        let status = if c.pass { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{status} {} — {}", c.name, c.detail);
    }
    let failed = checks.iter().filter(|c| !c.pass).count();
    let _ = writeln!(out, "{} checks, {} failed", checks.len(), failed);
    out
}

fn prime_field(p: u64) -> Result<Field> {
    Field::new(p, 1).map_err(|e| anyhow!("{e}"))
}

fn field_q(q: u64) -> Result<Field> {
    let (p, e) = match q {
        4 => (2, 2),
        8 => (2, 3),
        9 => (3, 2),
        _ => (q, 1),
    };
    Field::new(p, e).map_err(|e| anyhow!("{e}"))
}

/// Full-slice sums of Lambda, mu, and d_1..d_4 against their closed forms.
pub fn suite_identities(budget: Budget) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let specs = vec![
        ArithFnSpec::VonMangoldt,
        ArithFnSpec::Mobius,
        ArithFnSpec::DivisorK(1),
        ArithFnSpec::DivisorK(2),
        ArithFnSpec::DivisorK(3),
        ArithFnSpec::DivisorK(4),
    ];
    for q in [2u64, 3, 5] {
        let field = prime_field(q)?;
        for n in 1..=8usize {
            let sums = slice_sums(&field, n, &specs, budget).map_err(|e| anyhow!("{e}"))?;
            let qn = (q as i64).pow(n as u32);
            let mut ok = sums[0] == qn;
            if n >= 2 {
                ok &= sums[1] == 0;
            }
            for k in 1..=4usize {
                let expected =
                    binomial_u64((n + k - 1) as u64, (k - 1) as u64) as i64 * qn;
                ok &= sums[1 + k] == expected;
            }
            let detail = format!(
                "lambda={} mobius={} d1..d4={},{},{},{}",
                sums[0], sums[1], sums[2], sums[3], sums[4], sums[5]
            );
            checks.push(Check::new(format!("identities/q{q}/n{n}"), ok, detail));
        }
    }

    // per-polynomial identities tying the classical functions to traces:
    // mu against the sign character, Lambda against the alternating sum of
    // exterior powers, restricted divisors against induced representations,
    // and d_k as the sum of its restricted pieces
    for q in [2u64, 3] {
        let field = prime_field(q)?;
        for n in 1..=6usize {
            let sign = if n % 2 == 0 { 1 } else { -1 };
            let lambda_rep = VirtualRep::mangoldt_combination(n);
            let positive: Vec<Vec<usize>> = (1..=n)
                .flat_map(|k| compositions(n, k))
                .filter(|nu| nu.iter().all(|&part| part > 0))
                .collect();
            let mut bad = 0usize;
            let mut total = 0usize;
            for f in enumerate_monic(&field, n, budget).map_err(|e| anyhow!("{e}"))? {
                total += 1;
                let mut ok = mobius(&f, &field).map_err(|e| anyhow!("{e}"))?
                    == sign * factorization_function(&RepSpec::Sign(n), &f, &field)
                        .map_err(|e| anyhow!("{e}"))?;
                ok &= mangoldt(&f, &field).map_err(|e| anyhow!("{e}"))?
                    == virtual_factorization_function(&lambda_rep, &f, &field)
                        .map_err(|e| anyhow!("{e}"))?;
                for nu in &positive {
                    ok &= divisor_restricted(&f, &field, nu).map_err(|e| anyhow!("{e}"))?
                        == factorization_function(
                            &RepSpec::YoungInduced(nu.clone()),
                            &f,
                            &field,
                        )
                        .map_err(|e| anyhow!("{e}"))?;
                }
                for k in 1..=3usize {
                    let total_dk: i64 = compositions(n, k)
                        .iter()
                        .map(|nu| divisor_restricted(&f, &field, nu))
                        .sum::<Result<i64, _>>()
                        .map_err(|e| anyhow!("{e}"))?;
                    ok &= divisor_k(&f, &field, k).map_err(|e| anyhow!("{e}"))? == total_dk;
                }
                if !ok {
                    bad += 1;
                }
            }
            checks.push(Check::new(
                format!("identities/representation-route/q{q}/n{n}"),
                bad == 0,
                format!("polys={total} mismatches={bad}"),
            ));
        }
    }
    Ok(checks)
}

fn oracle_reps(n: usize) -> Vec<RepSpec> {
    let mut reps = vec![RepSpec::Sign(n)];
    for i in 0..n {
        reps.push(RepSpec::ExtStd(n, i));
    }
    for k in 1..=n {
        for nu in compositions(n, k) {
            if nu.iter().all(|&part| part > 0) {
                reps.push(RepSpec::YoungInduced(nu));
            }
        }
    }
    for lambda in partitions(n) {
        reps.push(RepSpec::Irreducible(lambda));
    }
    reps
}

/// Character-formula values against explicit root-tuple traces.
pub fn suite_facfun_oracle(budget: Budget) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for q in [2u64, 3] {
        let field = prime_field(q)?;
        for n in 1..=5usize {
            let sym = SymOracle::new(n).map_err(|e| anyhow!("{e}"))?;
            let reps = oracle_reps(n);
            let polys: Vec<_> = enumerate_monic(&field, n, budget)
                .map_err(|e| anyhow!("{e}"))?
                .collect();
            let mismatches: usize = polys
                .par_iter()
                .map(|f| {
                    let space = TupleSpace::new(f, &field, &sym, budget)?;
                    let mut bad = 0usize;
                    for rep in &reps {
                        let direct = factorization_function(rep, f, &field)?;
                        let brute = space.trace(rep, &sym)?;
                        if direct != brute {
                            bad += 1;
                        }
                    }
                    Ok(bad)
                })
                .sum::<Result<usize, ffsi_core::Error>>()
                .map_err(|e| anyhow!("{e}"))?;
            let detail = format!(
                "polys={} reps={} mismatches={mismatches}",
                polys.len(),
                reps.len()
            );
            checks.push(Check::new(
                format!("facfun-oracle/q{q}/n{n}"),
                mismatches == 0,
                detail,
            ));
        }
    }
    Ok(checks)
}

fn bound_specs(n: usize) -> Vec<ArithFnSpec> {
    let mut specs = vec![
        ArithFnSpec::DivisorK(1),
        ArithFnSpec::DivisorK(2),
        ArithFnSpec::DivisorK(3),
    ];
    for k in 1..=3usize {
        for nu in compositions(n, k) {
            if nu.iter().all(|&part| part > 0) {
                specs.push(ArithFnSpec::DivisorRestricted(nu));
            }
        }
    }
    specs.push(ArithFnSpec::Mobius);
    specs.push(ArithFnSpec::VonMangoldt);
    specs
}

/// Worst-case short-interval errors against the explicit bounds, scanning
/// every interval of every width.
pub fn suite_bounds(budget: Budget) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for q in [2u64, 3, 4, 5] {
        let field = field_q(q)?;
        for n in 2..=8usize {
            let specs = bound_specs(n);
            let reports =
                bounds_reports(&field, n, &specs, budget).map_err(|e| anyhow!("{e}"))?;
            let failed = reports.iter().filter(|r| !r.pass).count();
            let worst_ratio = reports.iter().map(|r| r.ratio).fold(0.0f64, f64::max);
            let detail = format!(
                "scans={} failed={failed} worst_ratio={}",
                reports.len(),
                format_float(worst_ratio)
            );
            checks.push(Check::new(format!("bounds/q{q}/n{n}"), failed == 0, detail));
        }
    }
    Ok(checks)
}

/// Point counts: quotient identification, variety-vs-interval agreement,
/// fitted dimensions, and the singular-cone estimates.
pub fn suite_variety(budget: Budget) -> Result<Vec<Check>> {
    let mut checks = Vec::new();

    for q in [2u64, 3] {
        let field = prime_field(q)?;
        let mut bad = 0usize;
        let mut total = 0usize;
        for n in 1..=5usize {
            for m in 0..=n {
                for c in enumerate_c_vectors(&field, m) {
                    let spec = VarietySpec { n, m, c };
                    let count =
                        count_points_quotient(&field, &spec, &QuotientTarget::Full, budget)
                            .map_err(|e| anyhow!("{e}"))?;
                    total += 1;
                    if count != q.pow((n - m) as u32) {
                        bad += 1;
                    }
                }
            }
        }
        checks.push(Check::new(
            format!("variety/quotient-full/q{q}"),
            bad == 0,
            format!("cases={total} mismatches={bad}"),
        ));
    }

    for q in [2u64, 3] {
        let field = prime_field(q)?;
        for n in 1..=6usize {
            let mut bad = 0usize;
            let mut total = 0usize;
            for m in 0..=n {
                for c in enumerate_c_vectors(&field, m) {
                    let spec = VarietySpec { n, m, c };
                    let direct =
                        count_points_x(&field, &spec, 1, budget).map_err(|e| anyhow!("{e}"))?;
                    let oracle = count_points_x_oracle(&field, &spec, budget)
                        .map_err(|e| anyhow!("{e}"))?;
                    total += 1;
                    if direct != oracle {
                        bad += 1;
                    }
                }
            }
            checks.push(Check::new(
                format!("variety/x-vs-interval/q{q}/n{n}"),
                bad == 0,
                format!("cases={total} mismatches={bad}"),
            ));
        }
    }

    let specimens: [(u64, usize, usize, Vec<u32>); 3] =
        [(2, 3, 1, vec![1]), (3, 4, 2, vec![1, 0]), (2, 5, 2, vec![1, 1])];
    for (q, n, m, c) in specimens {
        let field = prime_field(q)?;
        let spec = VarietySpec { n, m, c: c.iter().map(|&x| El(x)).collect() };
        let mut counts = Vec::new();
        for r in 1..=3usize {
            counts.push((r, count_points_x(&field, &spec, r, budget).map_err(|e| anyhow!("{e}"))?));
        }
        let slope = dimension_fit(q, &counts)
            .map_err(|e| anyhow!("{e}"))?
            .ok_or_else(|| anyhow!("empty variety in dimension fit"))?;
        let ok = (slope - (n - m) as f64).abs() <= 0.2;
        checks.push(Check::new(
            format!("variety/dimension-fit/q{q}/n{n}/m{m}"),
            ok,
            format!(
                "counts={:?} slope={} expected={}",
                counts.iter().map(|&(_, c)| c).collect::<Vec<_>>(),
                format_float(slope),
                n - m
            ),
        ));
    }

    // the fit uses r = 3..5: at q = 2 the point counts carry a slowly
    // growing constant (several root orderings per coefficient pattern)
    // that inflates a least-squares slope taken from r = 1
    for (p, n, m, r_max) in
        [(2u64, 4usize, 1usize, 5usize), (3, 4, 1, 5), (2, 6, 2, 5), (5, 5, 1, 4)]
    {
        let field = prime_field(p)?;
        let mut counts = Vec::new();
        for r in 1..=r_max {
            counts.push((r, count_r_cone(&field, n, m, r, budget).map_err(|e| anyhow!("{e}"))?));
        }
        let expected = (n as u64 / p - m as u64 / p) as f64;
        let slope =
            dimension_fit(p, &counts[r_max - 3..]).map_err(|e| anyhow!("{e}"))?;
        let (ok, shown) = match slope {
            None => (true, "empty".to_string()),
            Some(s) => (s <= expected + 0.2, format_float(s)),
        };
        checks.push(Check::new(
            format!("variety/rcone-slope/p{p}/n{n}/m{m}"),
            ok,
            format!(
                "counts={:?} slope={shown} dim_bound={expected}",
                counts.iter().map(|&(_, c)| c).collect::<Vec<_>>()
            ),
        ));
    }

    for p in [2u64, 3, 5] {
        let field = prime_field(p)?;
        let count =
            count_r_cone(&field, p as usize, 1, 1, budget).map_err(|e| anyhow!("{e}"))?;
        checks.push(Check::new(
            format!("variety/rcone-degeneracy/p{p}"),
            count >= p,
            format!("n={p} m=1 r=1 count={count} (needs >= {p})"),
        ));
    }

    Ok(checks)
}

/// Character families, L-polynomials, functional equations, exact
/// character averages, and moments.
pub fn suite_lfunc(budget: Budget) -> Result<Vec<Check>> {
    let mut checks = Vec::new();

    for q in [2u64, 3, 5] {
        let field = prime_field(q)?;
        for m in 1..=3usize {
            let group = build_unit_group(&field, m, budget).map_err(|e| anyhow!("{e}"))?;
            let family = enumerate_characters(&group, true, true);
            let expected = q.pow(m as u32) - q.pow((m - 1) as u32);
            checks.push(Check::new(
                format!("lfunc/family-size/q{q}/m{m}"),
                family.len() as u64 == expected,
                format!("found={} expected={expected}", family.len()),
            ));

            // coefficient sums at degrees m and m+1 must vanish exactly
            let mut bad = 0usize;
            for chi in &family {
                for d in m..=m + 1 {
                    let mut sum = RootSum::zero(group.exponent);
                    for f in enumerate_monic(&field, d, budget).map_err(|e| anyhow!("{e}"))? {
                        let exp = psi_exponent(&group, chi, &f).map_err(|e| anyhow!("{e}"))?;
                        sum.add_root(exp, 1);
                    }
                    if !sum.is_zero_sum() {
                        bad += 1;
                    }
                }
            }
            checks.push(Check::new(
                format!("lfunc/coefficient-vanishing/q{q}/m{m}"),
                bad == 0,
                format!("characters={} nonzero_high_coeffs={bad}", family.len()),
            ));
        }
    }

    let f3 = prime_field(3)?;
    for m in 1..=3usize {
        let group = build_unit_group(&f3, m, budget).map_err(|e| anyhow!("{e}"))?;
        let family = enumerate_characters(&group, true, true);
        let samples = default_sample_points(3);
        let mut worst_residual = 0.0f64;
        let mut worst_eps = 0.0f64;
        for chi in &family {
            let eps = epsilon_factor(&group, chi, budget).map_err(|e| anyhow!("{e}"))?;
            worst_eps = worst_eps.max((eps.norm() - 1.0).abs());
            let residual = check_functional_equation(&group, chi, &samples, budget)
                .map_err(|e| anyhow!("{e}"))?;
            worst_residual = worst_residual.max(residual);
        }
        checks.push(Check::new(
            format!("lfunc/epsilon-modulus/q3/m{m}"),
            worst_eps < 1e-9,
            format!("worst | |eps| - 1 | = {}", format_float(worst_eps)),
        ));
        checks.push(Check::new(
            format!("lfunc/functional-equation/q3/m{m}"),
            worst_residual < 1e-9,
            format!("worst residual = {}", format_float(worst_residual)),
        ));

        // chi-side series (1 - q^{-s}) * L(s,psi) against direct summation
        let mut worst_chi = 0.0f64;
        for chi in &family {
            let l = l_polynomial(&group, chi, budget).map_err(|e| anyhow!("{e}"))?;
            for &s in &samples {
                let mut direct = Complex64::new(0.0, 0.0);
                let lnq = (3.0f64).ln();
                for d in 0..=m {
                    let mut coeff = Complex64::new(0.0, 0.0);
                    for f in enumerate_monic(&f3, d, budget).map_err(|e| anyhow!("{e}"))? {
                        if f.coeff(0) == El(0) {
                            continue; // not coprime to u
                        }
                        let res = group.residue_of_poly_in_u(&f);
                        let pos = group.position(&res).map_err(|e| anyhow!("{e}"))?;
                        coeff += chi.value(&group, pos);
                    }
                    direct += coeff * (-s * lnq * d as f64).exp();
                }
                worst_chi = worst_chi.max((direct - l.evaluate_chi(s)).norm());
            }
        }
        checks.push(Check::new(
            format!("lfunc/chi-psi/q3/m{m}"),
            worst_chi < 1e-9,
            format!("worst residual = {}", format_float(worst_chi)),
        ));
    }

    // exact three-case character average, q=3, m=2, all monic f of deg <= 5
    {
        let group = build_unit_group(&f3, 2, budget).map_err(|e| anyhow!("{e}"))?;
        let mut bad = 0usize;
        let mut total = 0usize;
        for d in 0..=5usize {
            for f in enumerate_monic(&f3, d, budget).map_err(|e| anyhow!("{e}"))? {
                total += 1;
                if !character_sum_identity(&group, &f, budget).map_err(|e| anyhow!("{e}"))? {
                    bad += 1;
                }
            }
        }
        checks.push(Check::new(
            "lfunc/character-average/q3/m2".to_string(),
            bad == 0,
            format!("cases={total} mismatches={bad}"),
        ));
    }

    // m = 1: every L(.,psi) is identically 1, so moments are exact
    for q in [3u64, 5] {
        let field = prime_field(q)?;
        let group = build_unit_group(&field, 1, budget).map_err(|e| anyhow!("{e}"))?;
        for r in 1..=3usize {
            let alphas = vec![Complex64::new(0.0, 0.0); r];
            let report = moment(&group, &alphas, 0, DEFAULT_SOFT_LIMIT, budget)
                .map_err(|e| anyhow!("{e}"))?;
            checks.push(Check::new(
                format!("lfunc/moments-m1/q{q}/r{r}"),
                report.deviation < 1e-12,
                format!("deviation={}", format_float(report.deviation)),
            ));
        }
    }

    // m = 2 moments under the unspecified-constant policy
    for q in [3u64, 5] {
        let field = prime_field(q)?;
        let group = build_unit_group(&field, 2, budget).map_err(|e| anyhow!("{e}"))?;
        for r in 1..=2usize {
            for s in 0..=1u32 {
                let alphas = vec![Complex64::new(0.0, 0.0); r];
                let report = moment(&group, &alphas, s, DEFAULT_SOFT_LIMIT, budget)
                    .map_err(|e| anyhow!("{e}"))?;
                let verdict = match report.verdict {
                    MomentVerdict::Pass => "PASS",
                    MomentVerdict::SoftPass => "SOFT-PASS",
                    MomentVerdict::Fail => "FAIL",
                };
                checks.push(Check::new(
                    format!("lfunc/moments-m2/q{q}/r{r}/s{s}"),
                    report.verdict != MomentVerdict::Fail,
                    format!(
                        "deviation={} bound={} ratio={} verdict={verdict}",
                        format_float(report.deviation),
                        format_float(report.bound),
                        format_float(report.ratio)
                    ),
                ));
            }
        }
    }

    Ok(checks)
}

/// Exact interval identities used by the acceptance gate: Lambda and mu
/// slice sums via the interval route rather than the slice driver, to keep
/// the two routes independent.
pub fn interval_route_sum(
    fn_spec: &ArithFnSpec,
    field: &Field,
    n: usize,
    budget: Budget,
) -> Result<BigInt> {
    let spec = ShortIntervalSpec::new(n, vec![]).map_err(|e| anyhow!("{e}"))?;
    let sum =
        ffsi_core::interval::interval_sum(fn_spec, field, &spec, budget).map_err(|e| anyhow!("{e}"))?;
    Ok(BigInt::from(sum))
}
