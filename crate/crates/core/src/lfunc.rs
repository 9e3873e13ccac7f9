//! Dirichlet characters mod u^{m+1}, their L-polynomials, epsilon factors,
//! functional-equation checks, and family moments.
//!
//! Character values are stored as exponents modulo the unit-group exponent,
//! so orthogonality and the averaged character sums are exact integer
//! identities; complex numbers appear only when L-values are evaluated.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;

use crate::cyclotomic::RootSum;
use crate::enumerate::enumerate_monic;
use crate::field::{El, Field};
use crate::poly::Poly;
use crate::{Budget, Error};

fn mul_res(field: &Field, m: usize, a: &[El], b: &[El]) -> Vec<El> {
    let mut out = vec![El::ZERO; m + 1];
    for i in 0..=m {
        if a[i] == El::ZERO {
            continue;
        }
        for j in 0..=(m - i) {
            out[i + j] = field.add(out[i + j], field.mul(a[i], b[j]));
        }
    }
    out
}

fn encode(field: &Field, res: &[El]) -> u64 {
    let q = field.q();
    res.iter().rev().fold(0u64, |acc, &c| acc * q + c.0 as u64)
}

/// The unit group of F_q[u]/u^{m+1}, with a deterministic decomposition
/// into cyclic factors of decreasing orders and a full discrete-log table.
pub struct UnitGroup<'a> {
    field: &'a Field,
    pub m: usize,
    units: Vec<Vec<El>>,
    index: BTreeMap<u64, usize>,
    gens: Vec<usize>,
    gen_orders: Vec<u64>,
    pub exponent: u64,
    dlog: Vec<Vec<u64>>,
}

pub fn build_unit_group<'a>(
    field: &'a Field,
    m: usize,
    budget: Budget,
) -> Result<UnitGroup<'a>, Error> {
    let q = field.q();
    let order = (q - 1)
        * q.checked_pow(m as u32)
            .ok_or(Error::BudgetExceeded { work: u64::MAX, budget: budget.0 })?;
    budget.check(order)?;

    // all unit residues, odometer order on the coefficients
    let mut units = Vec::with_capacity(order as usize);
    let mut index = BTreeMap::new();
    let total = q.pow((m + 1) as u32);
    for mut i in 0..total {
        let mut res = Vec::with_capacity(m + 1);
        for _ in 0..=m {
            res.push(El((i % q) as u32));
            i /= q;
        }
        if res[0] != El::ZERO {
            index.insert(encode(field, &res), units.len());
            units.push(res);
        }
    }

    let identity = {
        let mut one = vec![El::ZERO; m + 1];
        one[0] = El::ONE;
        index[&encode(field, &one)]
    };

    let mut group = UnitGroup {
        field,
        m,
        units,
        index,
        gens: Vec::new(),
        gen_orders: Vec::new(),
        exponent: 1,
        dlog: Vec::new(),
    };

    // greedy basis: repeatedly split off a maximal-order cyclic factor of
    // the quotient by what is generated so far
    let mut generated: BTreeMap<usize, Vec<u64>> = BTreeMap::new();
    generated.insert(identity, vec![]);
    while (generated.len() as u64) < order {
        let mut best: Option<(u64, usize, Vec<u64>)> = None;
        for pos in 0..group.units.len() {
            if generated.contains_key(&pos) {
                continue;
            }
            let mut cur = pos;
            let mut k = 1u64;
            while !generated.contains_key(&cur) {
                cur = group.mul_pos(cur, pos);
                k += 1;
            }
            let hvec = generated[&cur].clone();
            if best.as_ref().map(|(bk, _, _)| k > *bk).unwrap_or(true) {
                best = Some((k, pos, hvec));
            }
        }
        let (k, pos, hvec) = best.unwrap();
        // adjust so the new generator has order exactly k in the group:
        // g^k = prod gens_i^{t_i} with k | t_i, replace g by
        // g * prod gens_i^{-t_i/k}
        let mut adjusted = pos;
        for (i, &t) in hvec.iter().enumerate() {
            assert!(t % k == 0, "abelian basis adjustment failed");
            let o = group.gen_orders[i];
            let exp = (o - (t / k) % o) % o;
            adjusted = group.mul_pos(adjusted, group.pow_pos(group.gens[i], exp));
        }
        debug_assert_eq!(group.pow_pos(adjusted, k), identity);
        if let Some(&prev) = group.gen_orders.last() {
            assert!(prev % k == 0, "orders must form a divisibility chain");
        }
        group.gens.push(adjusted);
        group.gen_orders.push(k);

        // rebuild the generated set with exponent vectors
        generated.clear();
        let g = group.gens.len();
        let mut exps = vec![0u64; g];
        loop {
            let mut acc = identity;
            for (i, &x) in exps.iter().enumerate() {
                acc = group.mul_pos(acc, group.pow_pos(group.gens[i], x));
            }
            let fresh = generated.insert(acc, exps.clone()).is_none();
            assert!(fresh, "cyclic factors are not independent");
            let mut carry = 0;
            while carry < g {
                exps[carry] += 1;
                if exps[carry] < group.gen_orders[carry] {
                    break;
                }
                exps[carry] = 0;
                carry += 1;
            }
            if carry == g {
                break;
            }
        }
    }
    group.exponent = group.gen_orders.first().copied().unwrap_or(1);
    group.dlog = vec![vec![]; group.units.len()];
    for (pos, v) in generated {
        group.dlog[pos] = v;
    }
    Ok(group)
}

impl<'a> UnitGroup<'a> {
    pub fn order(&self) -> u64 {
        self.units.len() as u64
    }

    pub fn cyclic_orders(&self) -> &[u64] {
        &self.gen_orders
    }

    fn mul_pos(&self, a: usize, b: usize) -> usize {
        let prod = mul_res(self.field, self.m, &self.units[a], &self.units[b]);
        self.index[&encode(self.field, &prod)]
    }

    fn pow_pos(&self, mut a: usize, mut n: u64) -> usize {
        let mut one = vec![El::ZERO; self.m + 1];
        one[0] = El::ONE;
        let mut acc = self.index[&encode(self.field, &one)];
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul_pos(acc, a);
            }
            a = self.mul_pos(a, a);
            n >>= 1;
        }
        acc
    }

    /// Position of a residue, given by its coefficients (length m+1).
    pub fn position(&self, res: &[El]) -> Result<usize, Error> {
        if res.len() != self.m + 1 || res[0] == El::ZERO {
            return Err(Error::InvalidParameter("not a unit residue"));
        }
        Ok(self.index[&encode(self.field, res)])
    }

    /// Residue of a polynomial in u (truncation mod u^{m+1}).
    pub fn residue_of_poly_in_u(&self, f: &Poly) -> Vec<El> {
        let mut res = vec![El::ZERO; self.m + 1];
        for (i, slot) in res.iter_mut().enumerate() {
            *slot = f.coeff(i);
        }
        res
    }

    /// Residue of the u-reversal of a monic polynomial in T.
    pub fn reversal_residue(&self, f: &Poly) -> Result<Vec<El>, Error> {
        if !f.is_monic() {
            return Err(Error::NotMonic);
        }
        let n = f.deg();
        let mut res = vec![El::ZERO; self.m + 1];
        for (i, slot) in res.iter_mut().enumerate().take(n + 1) {
            *slot = f.coeff(n - i);
        }
        Ok(res)
    }
}

/// A Dirichlet character mod u^{m+1}, stored as a table of exponents
/// modulo the group exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirichletCharacter {
    /// exponents on the cyclic generators
    pub gen_exponents: Vec<u64>,
    /// per unit position, the exponent of zeta_E
    table: Vec<u64>,
    pub even: bool,
    pub primitive: bool,
}

impl DirichletCharacter {
    fn build(group: &UnitGroup, gen_exponents: Vec<u64>) -> DirichletCharacter {
        let e = group.exponent;
        let table: Vec<u64> = group
            .dlog
            .iter()
            .map(|v| {
                v.iter()
                    .zip(&gen_exponents)
                    .zip(&group.gen_orders)
                    .map(|((&d, &x), &o)| d % o * (x % o) % o * (e / o) % e)
                    .sum::<u64>()
                    % e
            })
            .collect();
        let q = group.field.q();
        let even = (1..q).all(|a| {
            let mut res = vec![El::ZERO; group.m + 1];
            res[0] = El(a as u32);
            table[group.position(&res).unwrap()] == 0
        });
        let primitive = group.m >= 1
            && (1..q).any(|b| {
                let mut res = vec![El::ZERO; group.m + 1];
                res[0] = El::ONE;
                res[group.m] = El(b as u32);
                table[group.position(&res).unwrap()] != 0
            });
        DirichletCharacter { gen_exponents, table, even, primitive }
    }

    /// Exponent of zeta_E at a unit position.
    pub fn exponent_at(&self, pos: usize) -> u64 {
        self.table[pos]
    }

    pub fn conjugate(&self, group: &UnitGroup) -> DirichletCharacter {
        let exps = self
            .gen_exponents
            .iter()
            .zip(group.cyclic_orders())
            .map(|(&x, &o)| (o - x % o) % o)
            .collect();
        DirichletCharacter::build(group, exps)
    }

    pub fn value(&self, group: &UnitGroup, pos: usize) -> Complex64 {
        let theta =
            2.0 * core::f64::consts::PI * self.table[pos] as f64 / group.exponent as f64;
        Complex64::new(libm::cos(theta), libm::sin(theta))
    }
}

/// All characters, optionally restricted to even and/or primitive ones, in
/// a fixed odometer order on generator exponents.
pub fn enumerate_characters(
    group: &UnitGroup,
    even: bool,
    primitive: bool,
) -> Vec<DirichletCharacter> {
    let g = group.cyclic_orders().len();
    let mut out = Vec::new();
    let mut exps = vec![0u64; g];
    loop {
        let chi = DirichletCharacter::build(group, exps.clone());
        if (!even || chi.even) && (!primitive || chi.primitive) {
            out.push(chi);
        }
        let mut carry = 0;
        while carry < g {
            exps[carry] += 1;
            if exps[carry] < group.cyclic_orders()[carry] {
                break;
            }
            exps[carry] = 0;
            carry += 1;
        }
        if carry == g {
            break;
        }
    }
    out
}

/// Exponent of psi(f) = chi(f(u^{-1}) u^{deg f}) for monic f in T.
pub fn psi_exponent(
    group: &UnitGroup,
    chi: &DirichletCharacter,
    f: &Poly,
) -> Result<u64, Error> {
    let res = group.reversal_residue(f)?;
    Ok(chi.exponent_at(group.position(&res)?))
}

pub fn psi_value(
    group: &UnitGroup,
    chi: &DirichletCharacter,
    f: &Poly,
) -> Result<Complex64, Error> {
    let res = group.reversal_residue(f)?;
    Ok(chi.value(group, group.position(&res)?))
}

/// L(s, psi) as a polynomial of degree m-1 in q^{-s}, with exact
/// root-of-unity coefficient sums a_d = sum over monic degree-d
/// polynomials in T of psi(f).
#[derive(Clone, Debug)]
pub struct LPolynomial {
    pub q: u64,
    pub m: usize,
    pub coeffs: Vec<RootSum>,
}

impl LPolynomial {
    /// L(s, psi).
    pub fn evaluate(&self, s: Complex64) -> Complex64 {
        let lnq = libm::log(self.q as f64);
        let mut acc = Complex64::new(0.0, 0.0);
        for (d, a) in self.coeffs.iter().enumerate() {
            let (re, im) = a.to_complex();
            acc += Complex64::new(re, im) * (-s * lnq * d as f64).exp();
        }
        acc
    }

    /// L(s, chi) = L(s, psi) * (1 - q^{-s}).
    pub fn evaluate_chi(&self, s: Complex64) -> Complex64 {
        let lnq = libm::log(self.q as f64);
        self.evaluate(s) * (Complex64::new(1.0, 0.0) - (-s * lnq).exp())
    }
}

/// Coefficients a_d for d = 0..m-1, with the a_m = 0 vanishing self-check
/// (the psi-sum over every monic degree-m polynomial cancels exactly).
pub fn l_polynomial(
    group: &UnitGroup,
    chi: &DirichletCharacter,
    budget: Budget,
) -> Result<LPolynomial, Error> {
    if !(chi.even && chi.primitive) {
        return Err(Error::InvalidParameter(
            "L-polynomials are computed for primitive even characters",
        ));
    }
    let q = group.field.q();
    let m = group.m;
    let e = group.exponent;
    let coeff = |d: usize| -> Result<RootSum, Error> {
        let mut sum = RootSum::zero(e);
        for f in enumerate_monic(group.field, d, budget)? {
            sum.add_root(psi_exponent(group, chi, &f)?, 1);
        }
        Ok(sum)
    };
    let mut coeffs = Vec::with_capacity(m);
    for d in 0..m {
        coeffs.push(coeff(d)?);
    }
    if !coeff(m)?.is_zero_sum() {
        return Err(Error::InvalidParameter(
            "a_m does not vanish: character table is inconsistent",
        ));
    }
    Ok(LPolynomial { q, m, coeffs })
}

/// Root number: q^{-(m-1)/2} times the psi-sum over monic degree m-1
/// polynomials in T.
pub fn epsilon_factor(
    group: &UnitGroup,
    chi: &DirichletCharacter,
    budget: Budget,
) -> Result<Complex64, Error> {
    let q = group.field.q();
    let m = group.m;
    let mut acc = Complex64::new(0.0, 0.0);
    for f in enumerate_monic(group.field, m - 1, budget)? {
        acc += psi_value(group, chi, &f)?;
    }
    Ok(acc * libm::pow(q as f64, -((m - 1) as f64) / 2.0))
}

/// Default sample points for the functional equation: critical line and
/// the reflection interval.
pub fn default_sample_points(q: u64) -> Vec<Complex64> {
    let lnq = libm::log(q as f64);
    vec![
        Complex64::new(0.5, 0.0),
        Complex64::new(0.5, core::f64::consts::PI / (4.0 * lnq)),
        Complex64::new(0.25, 0.0),
        Complex64::new(0.75, 0.0),
    ]
}

/// Max residual of L(s,psi) = eps * q^{(m-1)(1/2-s)} L(1-s, conj psi)
/// over the sample points.
pub fn check_functional_equation(
    group: &UnitGroup,
    chi: &DirichletCharacter,
    samples: &[Complex64],
    budget: Budget,
) -> Result<f64, Error> {
    let q = group.field.q();
    let m = group.m;
    let lnq = libm::log(q as f64);
    let l = l_polynomial(group, chi, budget)?;
    let chi_bar = chi.conjugate(group);
    let l_bar = l_polynomial(group, &chi_bar, budget)?;
    let eps = epsilon_factor(group, chi, budget)?;
    let mut worst = 0.0f64;
    for &s in samples {
        let lhs = l.evaluate(s);
        let twist = ((Complex64::new(0.5, 0.0) - s) * lnq * (m - 1) as f64).exp();
        let rhs = eps * twist * l_bar.evaluate(Complex64::new(1.0, 0.0) - s);
        let residual = (lhs - rhs).norm();
        if residual > worst {
            worst = residual;
        }
    }
    Ok(worst)
}

/// Exact check of the averaged character sum over primitive even
/// characters against the three-case formula.
pub fn character_sum_identity(
    group: &UnitGroup,
    f: &Poly,
    budget: Budget,
) -> Result<bool, Error> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let q = BigInt::from(group.field.q());
    let m = group.m;
    let n = f.deg();
    let chars = enumerate_characters(group, true, true);
    budget.check(chars.len() as u64)?;
    let mut sum = RootSum::zero(group.exponent);
    for chi in &chars {
        sum.add_root(psi_exponent(group, chi, f)?, 1);
    }
    let top: Vec<El> = (1..=m)
        .map(|k| if k <= n { f.coeff(n - k) } else { El::ZERO })
        .collect();
    let expected = if top.iter().all(|&c| c == El::ZERO) {
        q.pow(m as u32) - q.pow((m - 1) as u32)
    } else if top[..m - 1].iter().all(|&c| c == El::ZERO) {
        -q.pow((m - 1) as u32)
    } else {
        BigInt::from(0)
    };
    Ok(sum.equals_integer(&expected))
}

/// Verdict under the soft-constant policy: the displayed bounds carry an
/// unspecified absolute constant, so ratios in (1, soft_limit] are
/// reported as SoftPass rather than Fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MomentVerdict {
    Pass,
    SoftPass,
    Fail,
}

#[derive(Clone, Debug)]
pub struct MomentReport {
    pub q: u64,
    pub m: usize,
    pub r: usize,
    pub alphas: Vec<Complex64>,
    pub s: u32,
    pub value: Complex64,
    pub main_term: Complex64,
    pub bound: f64,
    pub deviation: f64,
    pub ratio: f64,
    pub verdict: MomentVerdict,
}

pub const DEFAULT_SOFT_LIMIT: f64 = 10.0;

/// Family average of eps^s times the product of L(1/2 + alpha_i, psi),
/// compared against the displayed main term and error bound.
pub fn moment(
    group: &UnitGroup,
    alphas: &[Complex64],
    s: u32,
    soft_limit: f64,
    budget: Budget,
) -> Result<MomentReport, Error> {
    if alphas.iter().any(|a| a.re < 0.0) {
        return Err(Error::InvalidParameter("alphas need nonnegative real part"));
    }
    let q = group.field.q();
    let m = group.m;
    let r = alphas.len();
    let lnq = libm::log(q as f64);
    let chars = enumerate_characters(group, true, true);
    budget.check(chars.len() as u64 * q.pow(m.saturating_sub(1) as u32))?;
    let mut acc = Complex64::new(0.0, 0.0);
    for chi in &chars {
        let l = l_polynomial(group, chi, budget)?;
        let mut term = if s > 0 {
            epsilon_factor(group, chi, budget)?.powu(s)
        } else {
            Complex64::new(1.0, 0.0)
        };
        for &alpha in alphas {
            term *= l.evaluate(Complex64::new(0.5, 0.0) + alpha);
        }
        acc += term;
    }
    let value = acc / chars.len() as f64;
    // truncated form of prod 1/(1 - q^{-(1/2+alpha_i)}): only degrees up to
    // m-1 appear in the L-polynomials, and the m = 1 case is then exact
    let main_term = if s > 0 {
        Complex64::new(0.0, 0.0)
    } else {
        let mut prod = Complex64::new(1.0, 0.0);
        for &alpha in alphas {
            let mut geo = Complex64::new(0.0, 0.0);
            for d in 0..m {
                geo += (-(Complex64::new(0.5, 0.0) + alpha) * lnq * d as f64).exp();
            }
            prod *= geo;
        }
        prod
    };
    let p = group.field.p() as usize;
    let rs = r + s as usize;
    let exponent_halves =
        -(m as f64) + ((rs * (m - 1)) / p) as f64 - (m / p) as f64 + 1.0;
    let bound = libm::pow(m as f64, r as f64)
        * libm::pow((rs + 2) as f64, (rs * (m - 1) + m) as f64)
        * libm::pow(q as f64, exponent_halves / 2.0);
    let deviation = (value - main_term).norm();
    let ratio = deviation / bound;
    let verdict = if ratio <= 1.0 {
        MomentVerdict::Pass
    } else if ratio <= soft_limit {
        MomentVerdict::SoftPass
    } else {
        MomentVerdict::Fail
    };
    Ok(MomentReport {
        q,
        m,
        r,
        alphas: alphas.to_vec(),
        s,
        value,
        main_term,
        bound,
        deviation,
        ratio,
        verdict,
    })
}
