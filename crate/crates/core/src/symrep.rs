//! Characters of `S_n` and the factorization functions `F_pi`.
//!
//! `F_pi(f)` is computed entirely at the level of factorization types: a
//! class average of character values against counts of root-tuple bases
//! fixed by Frobenius composed with a permutation of each cycle type. The
//! splitting field is never materialized here; the brute-force route that
//! does materialize it lives in [`crate::oracle`].

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::factor::{factor, Factorization, FactorizationType};
use crate::field::Field;
use crate::poly::Poly;
use crate::Error;

/// A partition of `n`, stored in descending order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycleType {
    parts: Vec<usize>,
}

impl CycleType {
    pub fn new(mut parts: Vec<usize>) -> CycleType {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }
}

/// Cycle type of the Frobenius conjugacy class attached to a squarefree
/// monic polynomial: the degrees of its irreducible factors.
pub fn cycle_type_of_frobenius(f: &Poly, field: &Field) -> Result<CycleType, Error> {
    let fact = factor(f, field)?;
    cycle_type_of_factorization(&fact)
}

pub fn cycle_type_of_factorization(fact: &Factorization) -> Result<CycleType, Error> {
    if !fact.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    Ok(CycleType::new(
        fact.factors.iter().map(|(p, _)| p.deg()).collect(),
    ))
}

/// Label for an `S_n`-representation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RepSpec {
    Sign(usize),
    /// i-th exterior power of the standard representation of S_n.
    ExtStd(usize, usize),
    /// Ind from S_{n_1} x ... x S_{n_k} of the trivial representation.
    /// Zero block sizes are allowed and contribute nothing.
    YoungInduced(Vec<usize>),
    /// Irreducible representation labelled by a partition of n.
    Irreducible(Vec<usize>),
}

impl RepSpec {
    /// Trivial representation of S_n as the one-block induced rep.
    pub fn trivial(n: usize) -> RepSpec {
        RepSpec::YoungInduced(vec![n])
    }

    pub fn n(&self) -> usize {
        match self {
            RepSpec::Sign(n) => *n,
            RepSpec::ExtStd(n, _) => *n,
            RepSpec::YoungInduced(blocks) => blocks.iter().sum(),
            RepSpec::Irreducible(lambda) => lambda.iter().sum(),
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        match self {
            RepSpec::Sign(n) => {
                if *n == 0 {
                    return Err(Error::InvalidParameter("Sign requires n >= 1"));
                }
            }
            RepSpec::ExtStd(n, i) => {
                if *n == 0 || *i + 1 > *n {
                    return Err(Error::InvalidParameter("ExtStd requires 0 <= i <= n-1"));
                }
            }
            RepSpec::YoungInduced(blocks) => {
                if blocks.iter().sum::<usize>() == 0 {
                    return Err(Error::InvalidParameter("YoungInduced requires n >= 1"));
                }
            }
            RepSpec::Irreducible(lambda) => {
                if lambda.is_empty() || lambda.windows(2).any(|w| w[0] < w[1]) || lambda.contains(&0) {
                    return Err(Error::InvalidParameter(
                        "Irreducible requires a partition in descending order",
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Integer linear combination of representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirtualRep {
    pub terms: Vec<(i64, RepSpec)>,
}

impl VirtualRep {
    pub fn n(&self) -> Option<usize> {
        self.terms.first().map(|(_, r)| r.n())
    }

    /// The alternating sum of exterior powers of std whose F-value is the
    /// von Mangoldt function.
    pub fn mangoldt_combination(n: usize) -> VirtualRep {
        VirtualRep {
            terms: (0..n)
                .map(|i| (if i % 2 == 0 { 1 } else { -1 }, RepSpec::ExtStd(n, i)))
                .collect(),
        }
    }
}

/// All partitions of `n` in descending lexicographic order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(remaining: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        for part in (1..=max.min(remaining)).rev() {
            current.push(part);
            rec(remaining - part, part, current, out);
            current.pop();
        }
    }
    rec(n, n, &mut current, &mut out);
    out
}

/// Compositions of `n` into exactly `k` nonnegative ordered parts.
pub fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(remaining: usize, slots: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 1 {
            current.push(remaining);
            out.push(current.clone());
            current.pop();
            return;
        }
        for part in 0..=remaining {
            current.push(part);
            rec(remaining - part, slots - 1, current, out);
            current.pop();
        }
    }
    if k == 0 {
        if n == 0 {
            out.push(vec![]);
        }
        return out;
    }
    rec(n, k, &mut current, &mut out);
    out
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Size of the conjugacy class with the given cycle type: n! / z_tau.
pub fn class_size(tau: &CycleType) -> u64 {
    let n = tau.n();
    let mut z: u64 = 1;
    let mut mult: BTreeMap<usize, u64> = BTreeMap::new();
    for &l in tau.parts() {
        *mult.entry(l).or_insert(0) += 1;
    }
    for (l, m) in mult {
        z *= (l as u64).pow(m as u32) * factorial(m as usize);
    }
    factorial(n) / z
}

/// chi_{wedge^j perm}(tau) for j = 0..=n: coefficients of
/// prod over parts l of (1 - (-t)^l).
fn ext_perm_characters(tau: &CycleType) -> Vec<i64> {
    let n = tau.n();
    let mut coeffs = vec![0i64; n + 1];
    coeffs[0] = 1;
    for &l in tau.parts() {
        // multiply by 1 - (-t)^l = 1 + (-1)^(l+1) t^l
        let sign: i64 = if l % 2 == 0 { -1 } else { 1 };
        for j in (l..=n).rev() {
            coeffs[j] += sign * coeffs[j - l];
        }
    }
    coeffs
}

fn ext_std_character(n: usize, i: usize, tau: &CycleType) -> i64 {
    let perm = ext_perm_characters(tau);
    // wedge^i perm = wedge^i std + wedge^(i-1) std, so unroll the recursion
    let mut acc: i64 = 0;
    for j in 0..=i.min(n) {
        let sign = if (i - j) % 2 == 0 { 1 } else { -1 };
        acc += sign * perm[j];
    }
    acc
}

/// Number of ordered set partitions of {1..n} into blocks of the given
/// sizes, each stable under a permutation of type tau. A stable block is a
/// union of cycles, so this counts assignments of cycles to blocks.
fn young_induced_character(blocks: &[usize], tau: &CycleType) -> i64 {
    let mut caps: Vec<usize> = blocks.iter().copied().filter(|&b| b > 0).collect();
    fn rec(cycles: &[usize], caps: &mut [usize]) -> i64 {
        match cycles.split_first() {
            None => 1,
            Some((&l, rest)) => {
                let mut acc = 0;
                for b in 0..caps.len() {
                    if caps[b] >= l {
                        caps[b] -= l;
                        acc += rec(rest, caps);
                        caps[b] += l;
                    }
                }
                acc
            }
        }
    }
    rec(tau.parts(), &mut caps)
}

/// Murnaghan-Nakayama recursion on beta sets, memoized on (lambda, tau).
pub struct CharCache {
    memo: BTreeMap<(Vec<usize>, Vec<usize>), i64>,
}

impl CharCache {
    pub fn new() -> CharCache {
        CharCache { memo: BTreeMap::new() }
    }

    fn mn(&mut self, lambda: &[usize], tau: &[usize]) -> i64 {
        if lambda.is_empty() {
            return 1;
        }
        let key = (lambda.to_vec(), tau.to_vec());
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let t = tau[0];
        let rest = &tau[1..];
        // beta set: lambda_i + (r - 1 - i), strictly decreasing
        let r = lambda.len();
        let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &l)| l + (r - 1 - i)).collect();
        let mut total = 0i64;
        for (idx, &b) in beta.iter().enumerate() {
            if b < t || beta.contains(&(b - t)) {
                continue;
            }
            let target = b - t;
            // height = number of beta entries strictly between target and b
            let height = beta.iter().filter(|&&x| x > target && x < b).count();
            let sign = if height % 2 == 0 { 1 } else { -1 };
            let mut new_beta = beta.clone();
            new_beta[idx] = target;
            new_beta.sort_unstable_by(|a, c| c.cmp(a));
            let mut new_lambda: Vec<usize> = new_beta
                .iter()
                .enumerate()
                .map(|(i, &x)| x - (r - 1 - i))
                .collect();
            new_lambda.retain(|&l| l > 0);
            total += sign * self.mn(&new_lambda, rest);
        }
        self.memo.insert(key, total);
        total
    }

    /// Exact integer character value chi_pi(tau).
    pub fn character_value(&mut self, rep: &RepSpec, tau: &CycleType) -> Result<i64, Error> {
        rep.validate()?;
        if rep.n() != tau.n() {
            return Err(Error::DegreeMismatch { expected: rep.n(), got: tau.n() });
        }
        Ok(match rep {
            RepSpec::Sign(n) => {
                if (n - tau.parts().len()) % 2 == 0 {
                    1
                } else {
                    -1
                }
            }
            RepSpec::ExtStd(n, i) => ext_std_character(*n, *i, tau),
            RepSpec::YoungInduced(blocks) => young_induced_character(blocks, tau),
            RepSpec::Irreducible(lambda) => self.mn(lambda, tau.parts()),
        })
    }

    /// dim(pi^{S_n}), the multiplicity of the trivial representation.
    pub fn invariant_dimension(&mut self, rep: &RepSpec) -> Result<i64, Error> {
        let n = rep.n();
        let mut acc: i64 = 0;
        for parts in partitions(n) {
            let tau = CycleType::new(parts);
            acc += class_size(&tau) as i64 * self.character_value(rep, &tau)?;
        }
        let nf = factorial(n) as i64;
        if acc % nf != 0 {
            return Err(Error::NonIntegralAverage);
        }
        Ok(acc / nf)
    }
}

impl Default for CharCache {
    fn default() -> Self {
        CharCache::new()
    }
}

pub fn character_value(rep: &RepSpec, tau: &CycleType) -> Result<i64, Error> {
    CharCache::new().character_value(rep, tau)
}

/// Number of basis tuples of `V_f` fixed by `Frob_q` composed with a
/// permutation of type `tau`, computed from the factorization type alone.
///
/// Each cycle of length `l` is assigned to an irreducible factor of degree
/// `d | l`; the cycle then carries `l/d` full orbits of that factor's roots
/// and there are `d` choices of starting root. Capacities enforce that the
/// union over cycles reproduces the root multiset with multiplicity.
pub fn fixed_tuple_count(tau: &CycleType, ftype: &FactorizationType) -> Result<u64, Error> {
    if tau.n() != ftype.degree() {
        return Err(Error::DegreeMismatch { expected: ftype.degree(), got: tau.n() });
    }
    // one slot per distinct irreducible factor, capacity = total root mass d*e
    let degrees: Vec<usize> = ftype.parts.iter().map(|&(d, _)| d).collect();
    let mut caps: Vec<usize> = ftype.parts.iter().map(|&(d, e)| d * e).collect();
    fn rec(cycles: &[usize], degrees: &[usize], caps: &mut [usize]) -> u64 {
        match cycles.split_first() {
            None => 1,
            Some((&l, rest)) => {
                let mut acc = 0u64;
                for s in 0..degrees.len() {
                    let d = degrees[s];
                    if l % d == 0 && caps[s] >= l {
                        caps[s] -= l;
                        acc += d as u64 * rec(rest, degrees, caps);
                        caps[s] += l;
                    }
                }
                acc
            }
        }
    }
    Ok(rec(tau.parts(), &degrees, &mut caps))
}

/// `F_pi(f)` as the exact class average
/// `(1/n!) sum_tau |class tau| chi_pi(tau) N(tau, f)`.
pub fn factorization_function(rep: &RepSpec, f: &Poly, field: &Field) -> Result<i64, Error> {
    let fact = factor(f, field)?;
    factorization_function_of_type(rep, &fact.factorization_type(), &mut CharCache::new())
}

pub fn factorization_function_of_type(
    rep: &RepSpec,
    ftype: &FactorizationType,
    cache: &mut CharCache,
) -> Result<i64, Error> {
    rep.validate()?;
    let n = rep.n();
    if ftype.degree() != n {
        return Err(Error::DegreeMismatch { expected: n, got: ftype.degree() });
    }
    let mut acc: i128 = 0;
    for parts in partitions(n) {
        let tau = CycleType::new(parts);
        let chi = cache.character_value(rep, &tau)? as i128;
        if chi == 0 {
            continue;
        }
        let size = class_size(&tau) as i128;
        let fixed = fixed_tuple_count(&tau, ftype)? as i128;
        acc += size * chi * fixed;
    }
    let nf = factorial(n) as i128;
    if acc % nf != 0 {
        return Err(Error::NonIntegralAverage);
    }
    i64::try_from(acc / nf).map_err(|_| Error::NonIntegralAverage)
}

pub fn virtual_factorization_function(
    rep: &VirtualRep,
    f: &Poly,
    field: &Field,
) -> Result<i64, Error> {
    let fact = factor(f, field)?;
    let ftype = fact.factorization_type();
    let mut cache = CharCache::new();
    let mut acc = 0i64;
    for (coeff, term) in &rep.terms {
        acc += coeff * factorization_function_of_type(term, &ftype, &mut cache)?;
    }
    Ok(acc)
}

/// Cohomology-dimension bound used in the error terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BettiKind {
    /// Subrepresentation of an induction from k blocks: 3 (k+2)^(n+m).
    Induced { k: usize },
    /// Subrepresentation of the regular representation: 3 (n+2)^(n+m).
    Regular,
}

pub fn betti_bound(kind: BettiKind, n: usize, m: usize) -> Result<BigUint, Error> {
    if m > n {
        return Err(Error::InvalidParameter("betti bound requires n >= m"));
    }
    let base: u64 = match kind {
        BettiKind::Induced { k } => {
            if k < 1 {
                return Err(Error::InvalidParameter("induced bound requires k >= 1"));
            }
            k as u64 + 2
        }
        BettiKind::Regular => n as u64 + 2,
    };
    Ok(BigUint::from(3u32) * BigUint::from(base).pow((n + m) as u32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::El;

    fn poly(cs: &[u32]) -> Poly {
        Poly::from_coeffs(cs.iter().map(|&c| El(c)).collect())
    }

    #[test]
    fn frobenius_cycle_types() {
        let f2 = Field::new(2, 1).unwrap();
        // T(T+1) -> [1,1]
        let tt1 = poly(&[0, 1, 1]);
        assert_eq!(cycle_type_of_frobenius(&tt1, &f2).unwrap().parts(), &[1, 1]);
        // T^3+T+1 irreducible -> [3]
        assert_eq!(
            cycle_type_of_frobenius(&poly(&[1, 1, 0, 1]), &f2).unwrap().parts(),
            &[3]
        );
        // T(T^2+T+1) -> [2,1]
        let prod = poly(&[0, 1]).mul(&poly(&[1, 1, 1]), &f2);
        assert_eq!(cycle_type_of_frobenius(&prod, &f2).unwrap().parts(), &[2, 1]);
        // T^2 not squarefree
        assert_eq!(
            cycle_type_of_frobenius(&poly(&[0, 0, 1]), &f2).unwrap_err(),
            Error::NotSquarefree
        );
    }

    #[test]
    fn sign_character() {
        let tau = CycleType::new(vec![2, 1]);
        assert_eq!(character_value(&RepSpec::Sign(3), &tau).unwrap(), -1);
    }

    #[test]
    fn regular_representation_dimension() {
        let tau = CycleType::new(vec![1, 1, 1]);
        assert_eq!(
            character_value(&RepSpec::YoungInduced(vec![1, 1, 1]), &tau).unwrap(),
            6
        );
    }

    #[test]
    fn ext_std_on_three_cycle() {
        let tau = CycleType::new(vec![3]);
        assert_eq!(character_value(&RepSpec::ExtStd(3, 1), &tau).unwrap(), -1);
    }

    #[test]
    fn s3_character_table() {
        // rows: trivial, sign, std(= [2,1]); columns: [1^3], [2,1], [3]
        let classes = [vec![1, 1, 1], vec![2, 1], vec![3]];
        let expect_std = [2i64, 0, -1];
        let mut cache = CharCache::new();
        for (col, parts) in classes.iter().enumerate() {
            let tau = CycleType::new(parts.clone());
            assert_eq!(
                cache.character_value(&RepSpec::Irreducible(vec![3]), &tau).unwrap(),
                1
            );
            assert_eq!(
                cache
                    .character_value(&RepSpec::Irreducible(vec![1, 1, 1]), &tau)
                    .unwrap(),
                character_value(&RepSpec::Sign(3), &tau).unwrap()
            );
            assert_eq!(
                cache.character_value(&RepSpec::Irreducible(vec![2, 1]), &tau).unwrap(),
                expect_std[col]
            );
        }
    }

    #[test]
    fn s5_hook_character_spot_checks() {
        // chi_{[3,1,1]} has dimension 6 and value -1 on transpositions... use
        // well-known values: dim = 6, chi([5]) = 1.
        let mut cache = CharCache::new();
        let id = CycleType::new(vec![1; 5]);
        assert_eq!(
            cache.character_value(&RepSpec::Irreducible(vec![3, 1, 1]), &id).unwrap(),
            6
        );
        let five = CycleType::new(vec![5]);
        assert_eq!(
            cache.character_value(&RepSpec::Irreducible(vec![3, 1, 1]), &five).unwrap(),
            1
        );
    }

    #[test]
    fn irreducible_dimensions_square_sum() {
        // sum of squared dimensions = n!
        for n in 1..=6 {
            let id = CycleType::new(vec![1; n]);
            let mut cache = CharCache::new();
            let total: i64 = partitions(n)
                .into_iter()
                .map(|l| {
                    let d = cache.character_value(&RepSpec::Irreducible(l), &id).unwrap();
                    d * d
                })
                .sum();
            assert_eq!(total, factorial(n) as i64);
        }
    }

    #[test]
    fn column_orthogonality_sign_trivial() {
        for n in 2..=7 {
            let mut acc: i64 = 0;
            for parts in partitions(n) {
                let tau = CycleType::new(parts);
                acc += class_size(&tau) as i64
                    * character_value(&RepSpec::Sign(n), &tau).unwrap()
                    * character_value(&RepSpec::trivial(n), &tau).unwrap();
            }
            assert_eq!(acc, 0);
        }
    }

    #[test]
    fn class_sizes_sum_to_group_order() {
        for n in 1..=8 {
            let total: u64 = partitions(n)
                .into_iter()
                .map(|p| class_size(&CycleType::new(p)))
                .sum();
            assert_eq!(total, factorial(n));
        }
    }

    #[test]
    fn fixed_tuple_count_examples() {
        // f = T^2 over F_2: type [(1,2)]
        let t_sq = FactorizationType { parts: vec![(1, 2)] };
        assert_eq!(fixed_tuple_count(&CycleType::new(vec![1, 1]), &t_sq).unwrap(), 1);
        assert_eq!(fixed_tuple_count(&CycleType::new(vec![2]), &t_sq).unwrap(), 1);
        // f = T^2+T+1 over F_2: type [(2,1)]
        let irr2 = FactorizationType { parts: vec![(2, 1)] };
        assert_eq!(fixed_tuple_count(&CycleType::new(vec![2]), &irr2).unwrap(), 2);
        assert_eq!(fixed_tuple_count(&CycleType::new(vec![1, 1]), &irr2).unwrap(), 0);
    }

    #[test]
    fn sign_function_recovers_mobius_factor() {
        let f2 = Field::new(2, 1).unwrap();
        // squarefree f with cycle type [2,1]: T(T^2+T+1)
        let f = poly(&[0, 1]).mul(&poly(&[1, 1, 1]), &f2);
        let val = factorization_function(&RepSpec::Sign(3), &f, &f2).unwrap();
        assert_eq!(val, -1);
        // (-1)^3 * (-1) = 1 = mu(f)
    }

    #[test]
    fn induced_function_counts_factorizations() {
        let f2 = Field::new(2, 1).unwrap();
        // f = T(T^2+1) = T(T+1)^2; the ordered factorizations into degrees
        // (1,2) are T*(T+1)^2 and (T+1)*(T^2+T)
        let f = poly(&[0, 1]).mul(&poly(&[1, 0, 1]), &f2);
        let val =
            factorization_function(&RepSpec::YoungInduced(vec![1, 2]), &f, &f2).unwrap();
        assert_eq!(val, 2);
    }

    #[test]
    fn trivial_on_t_squared() {
        let f2 = Field::new(2, 1).unwrap();
        let val = factorization_function(&RepSpec::trivial(2), &poly(&[0, 0, 1]), &f2).unwrap();
        assert_eq!(val, 1);
    }

    #[test]
    fn squarefree_specialization() {
        // f squarefree => F_pi(f) = chi_pi(cycle type)
        let f3 = Field::new(3, 1).unwrap();
        let mut cache = CharCache::new();
        for fpoly in crate::enumerate::enumerate_monic(&f3, 4, crate::Budget::default()).unwrap() {
            let fact = factor(&fpoly, &f3).unwrap();
            if !fact.is_squarefree() {
                continue;
            }
            let tau = cycle_type_of_factorization(&fact).unwrap();
            for rep in [
                RepSpec::Sign(4),
                RepSpec::ExtStd(4, 2),
                RepSpec::YoungInduced(vec![2, 2]),
                RepSpec::Irreducible(vec![3, 1]),
            ] {
                assert_eq!(
                    factorization_function_of_type(&rep, &fact.factorization_type(), &mut cache)
                        .unwrap(),
                    cache.character_value(&rep, &tau).unwrap()
                );
            }
        }
    }

    #[test]
    fn betti_bound_values() {
        assert_eq!(
            betti_bound(BettiKind::Induced { k: 2 }, 2, 1).unwrap(),
            BigUint::from(192u32)
        );
        assert_eq!(
            betti_bound(BettiKind::Regular, 2, 1).unwrap(),
            BigUint::from(192u32)
        );
        assert_eq!(
            betti_bound(BettiKind::Induced { k: 1 }, 1, 0).unwrap(),
            BigUint::from(9u32)
        );
    }

    #[test]
    fn partitions_descending_lex() {
        let p4 = partitions(4);
        assert_eq!(
            p4,
            vec![
                vec![4],
                vec![3, 1],
                vec![2, 2],
                vec![2, 1, 1],
                vec![1, 1, 1, 1]
            ]
        );
    }
}
