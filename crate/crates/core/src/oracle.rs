//! Brute-force ground truth for the factorization functions.
//!
//! Everything here recomputes from first principles: tuples of roots are
//! materialized in an explicit splitting field, the symmetric group acts by
//! literal index permutation, and character values come from permutation
//! matrices and a Gram-Schmidt pass over induced characters rather than any
//! closed formula shared with the fast path.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::factor::factor;
use crate::field::{El, Field};
use crate::poly::Poly;
use crate::symrep::{factorial, RepSpec};
use crate::{Budget, Error};

const MAX_N: usize = 6;

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(factorial(n) as usize);
    let mut current: Vec<usize> = (0..n).collect();
    heap_permute(&mut current, n, &mut out);
    out
}

fn heap_permute(current: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(current.clone());
        return;
    }
    for i in 0..k {
        heap_permute(current, k - 1, out);
        if k % 2 == 0 {
            current.swap(i, k - 1);
        } else {
            current.swap(0, k - 1);
        }
    }
}

fn cycle_type_of_perm(sigma: &[usize]) -> Vec<usize> {
    let n = sigma.len();
    let mut seen = vec![false; n];
    let mut parts = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = sigma[i];
            len += 1;
        }
        parts.push(len);
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

// sign via inversion count, deliberately not via the cycle-type formula
fn sign_of_perm(sigma: &[usize]) -> i64 {
    let mut inv = 0usize;
    for i in 0..sigma.len() {
        for j in i + 1..sigma.len() {
            if sigma[i] > sigma[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

// trace of sigma on the i-th exterior power of the permutation module:
// sum over sigma-stable i-subsets of the sign of the induced permutation
fn wedge_perm_trace(sigma: &[usize], i: usize) -> i64 {
    let n = sigma.len();
    let mut total = 0i64;
    for mask in 0u32..(1u32 << n) {
        if mask.count_ones() as usize != i {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&j| mask >> j & 1 == 1).collect();
        let image: u32 = members.iter().map(|&j| 1u32 << sigma[j]).sum();
        if image != mask {
            continue;
        }
        // induced permutation on the sorted members
        let induced: Vec<usize> = members
            .iter()
            .map(|&j| members.iter().position(|&k| k == sigma[j]).unwrap())
            .collect();
        total += sign_of_perm(&induced);
    }
    total
}

fn ext_std_trace(sigma: &[usize], i: usize) -> i64 {
    // wedge^i(perm) = wedge^i(std) + wedge^{i-1}(std)
    let mut acc = 0i64;
    let mut sign = 1i64;
    for j in (0..=i).rev() {
        acc += sign * wedge_perm_trace(sigma, j);
        sign = -sign;
    }
    acc
}

// number of ordered set partitions into sigma-stable blocks of given sizes
fn young_trace(sigma: &[usize], blocks: &[usize]) -> i64 {
    fn rec(sigma: &[usize], blocks: &[usize], pos: usize, remaining: u32) -> i64 {
        if pos == blocks.len() {
            return if remaining == 0 { 1 } else { 0 };
        }
        let n = sigma.len();
        let mut count = 0i64;
        for mask in 0u32..(1u32 << n) {
            if mask & !remaining != 0 || mask.count_ones() as usize != blocks[pos] {
                continue;
            }
            let image: u32 = (0..n)
                .filter(|&j| mask >> j & 1 == 1)
                .map(|j| 1u32 << sigma[j])
                .sum();
            if image == mask {
                count += rec(sigma, blocks, pos + 1, remaining & !mask);
            }
        }
        count
    }
    rec(sigma, blocks, 0, (1u32 << sigma.len()) - 1)
}

/// Character tables and class data for S_n, built from explicit
/// permutations; irreducible characters come from Gram-Schmidt on the
/// induced (Young) characters in descending lexicographic order.
pub struct SymOracle {
    n: usize,
    perms: Vec<Vec<usize>>,
    class_of_perm: Vec<usize>,
    class_types: Vec<Vec<usize>>,
    class_sizes: Vec<i64>,
    class_reps: Vec<usize>,
    irreducibles: BTreeMap<Vec<usize>, Vec<i64>>,
}

impl SymOracle {
    pub fn new(n: usize) -> Result<SymOracle, Error> {
        if n == 0 || n > MAX_N {
            return Err(Error::InvalidParameter("oracle supports 1 <= n <= 6"));
        }
        let perms = all_permutations(n);
        let mut class_types: Vec<Vec<usize>> = Vec::new();
        let mut class_sizes: Vec<i64> = Vec::new();
        let mut class_reps: Vec<usize> = Vec::new();
        let mut class_of_perm = Vec::with_capacity(perms.len());
        for (idx, sigma) in perms.iter().enumerate() {
            let t = cycle_type_of_perm(sigma);
            match class_types.iter().position(|c| *c == t) {
                Some(ci) => {
                    class_sizes[ci] += 1;
                    class_of_perm.push(ci);
                }
                None => {
                    class_types.push(t);
                    class_sizes.push(1);
                    class_reps.push(idx);
                    class_of_perm.push(class_types.len() - 1);
                }
            }
        }
        let mut oracle = SymOracle {
            n,
            perms,
            class_of_perm,
            class_types,
            class_sizes,
            class_reps,
            irreducibles: BTreeMap::new(),
        };
        oracle.build_irreducibles();
        Ok(oracle)
    }

    // induced characters are unitriangular against the irreducibles in
    // lexicographic order, so orthogonalizing top-down recovers the
    // irreducible table
    fn build_irreducibles(&mut self) {
        let mut partitions = crate::symrep::partitions(self.n);
        partitions.sort();
        partitions.reverse(); // descending lex, [n] first
        let fact = factorial(self.n) as i128;
        let mut done: Vec<(Vec<usize>, Vec<i64>)> = Vec::new();
        for lambda in partitions {
            let mut chi: Vec<i64> = self
                .class_reps
                .iter()
                .map(|&ri| young_trace(&self.perms[ri], &lambda))
                .collect();
            for (_, prev) in &done {
                let mut ip: i128 = 0;
                for ci in 0..chi.len() {
                    ip += self.class_sizes[ci] as i128 * chi[ci] as i128 * prev[ci] as i128;
                }
                debug_assert!(ip % fact == 0);
                let coeff = (ip / fact) as i64;
                for ci in 0..chi.len() {
                    chi[ci] -= coeff * prev[ci];
                }
            }
            let mut norm: i128 = 0;
            for ci in 0..chi.len() {
                norm += self.class_sizes[ci] as i128 * (chi[ci] as i128).pow(2);
            }
            debug_assert_eq!(norm, fact);
            done.push((lambda, chi));
        }
        self.irreducibles = done.into_iter().collect();
    }

    fn char_on_perm(&self, rep: &RepSpec, idx: usize) -> i64 {
        let sigma = &self.perms[idx];
        match rep {
            RepSpec::Sign(_) => sign_of_perm(sigma),
            RepSpec::ExtStd(_, i) => ext_std_trace(sigma, *i),
            RepSpec::YoungInduced(blocks) => young_trace(sigma, blocks),
            RepSpec::Irreducible(lambda) => {
                let ci = self.class_of_perm[idx];
                self.irreducibles[lambda][ci]
            }
        }
    }

    pub fn irreducible_on_class(&self, lambda: &[usize], class_type: &[usize]) -> i64 {
        let ci = self.class_types.iter().position(|c| c == class_type).unwrap();
        self.irreducibles[lambda][ci]
    }
}

/// The root-tuple space of one polynomial, materialized in its splitting
/// field, with per-class counts of tuples fixed by Frobenius composed with
/// a permutation.
pub struct TupleSpace {
    n: usize,
    fixed_by_class: Vec<i64>,
}

impl TupleSpace {
    pub fn new(f: &Poly, field: &Field, sym: &SymOracle, budget: Budget) -> Result<TupleSpace, Error> {
        if !f.is_monic() {
            return Err(Error::NotMonic);
        }
        if field.degree() != 1 {
            return Err(Error::InvalidParameter("oracle requires a prime base field"));
        }
        let n = f.deg();
        if n != sym.n {
            return Err(Error::DegreeMismatch { expected: sym.n, got: n });
        }
        let mut l = 1usize;
        for (g, _) in &factor(f, field)?.factors {
            l = lcm(l, g.deg());
        }
        let ext = Field::with_budget(field.p(), l, budget)?;
        let q = field.q();

        // root multiset by repeated synthetic division in the extension
        let mut coeffs: Vec<El> =
            f.coeffs().iter().map(|c| ext.from_int(c.0 as u64)).collect();
        let mut roots: Vec<El> = Vec::with_capacity(n);
        for a in ext.elements() {
            loop {
                match synthetic_divide(&coeffs, a, &ext) {
                    Some(quot) => {
                        roots.push(a);
                        coeffs = quot;
                    }
                    None => break,
                }
            }
        }
        debug_assert_eq!(roots.len(), n);
        roots.sort_unstable_by_key(|a| a.0);

        let tuples = distinct_permutations(&roots);
        budget.check(tuples.len() as u64 * sym.perms.len() as u64)?;
        let mut fixed_by_class = vec![0i64; sym.class_types.len()];
        for (pi, sigma) in sym.perms.iter().enumerate() {
            let mut fixed = 0i64;
            for t in &tuples {
                // fixed by Frob composed with sigma: t_{sigma(j)} = t_j^q
                if (0..n).all(|j| t[sigma[j]] == ext.pow(t[j], q)) {
                    fixed += 1;
                }
            }
            fixed_by_class[sym.class_of_perm[pi]] += fixed;
        }
        Ok(TupleSpace { n, fixed_by_class })
    }

    /// tr(Frob, (V_f tensor pi)^{S_n}) by the averaging projector.
    pub fn trace(&self, rep: &RepSpec, sym: &SymOracle) -> Result<i64, Error> {
        if rep.n() != self.n {
            return Err(Error::DegreeMismatch { expected: self.n, got: rep.n() });
        }
        rep.validate()?;
        let mut total: i128 = 0;
        for ci in 0..sym.class_types.len() {
            let chi = sym.char_on_perm(rep, sym.class_reps[ci]);
            total += self.fixed_by_class[ci] as i128 * chi as i128;
        }
        let fact = factorial(self.n) as i128;
        if total % fact != 0 {
            return Err(Error::NonIntegralAverage);
        }
        Ok((total / fact) as i64)
    }
}

// divide by (x - a); Some(quotient) iff the remainder vanishes
fn synthetic_divide(coeffs: &[El], a: El, ext: &Field) -> Option<Vec<El>> {
    let deg = coeffs.len() - 1;
    if deg == 0 {
        return None;
    }
    let mut quot = vec![El::ZERO; deg];
    let mut carry = coeffs[deg];
    for i in (0..deg).rev() {
        quot[i] = carry;
        carry = ext.add(coeffs[i], ext.mul(carry, a));
    }
    if carry == El::ZERO {
        Some(quot)
    } else {
        None
    }
}

fn distinct_permutations(roots: &[El]) -> Vec<Vec<El>> {
    let mut values: Vec<(El, usize)> = Vec::new();
    for &r in roots {
        match values.iter_mut().find(|(v, _)| *v == r) {
            Some((_, c)) => *c += 1,
            None => values.push((r, 1)),
        }
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(roots.len());
    fn rec(
        values: &mut Vec<(El, usize)>,
        current: &mut Vec<El>,
        n: usize,
        out: &mut Vec<Vec<El>>,
    ) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for i in 0..values.len() {
            if values[i].1 == 0 {
                continue;
            }
            values[i].1 -= 1;
            current.push(values[i].0);
            rec(values, current, n, out);
            current.pop();
            values[i].1 += 1;
        }
    }
    rec(&mut values, &mut current, roots.len(), &mut out);
    out
}

/// Ground truth for `factorization_function`, via explicit tuples.
pub fn brute_force_fpi(
    rep: &RepSpec,
    f: &Poly,
    field: &Field,
    budget: Budget,
) -> Result<i64, Error> {
    let sym = SymOracle::new(f.deg())?;
    TupleSpace::new(f, field, &sym, budget)?.trace(rep, &sym)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symrep::{
        class_size, factorization_function, partitions, character_value, CycleType,
    };

    fn poly(cs: &[u32]) -> Poly {
        Poly::from_coeffs(cs.iter().map(|&c| El(c)).collect())
    }

    #[test]
    fn sign_on_square_vanishes() {
        let f2 = Field::new(2, 1).unwrap();
        assert_eq!(
            brute_force_fpi(&RepSpec::Sign(2), &poly(&[0, 0, 1]), &f2, Budget::default())
                .unwrap(),
            0
        );
    }

    #[test]
    fn trivial_cases() {
        let f2 = Field::new(2, 1).unwrap();
        assert_eq!(
            brute_force_fpi(&RepSpec::trivial(1), &poly(&[0, 1]), &f2, Budget::default())
                .unwrap(),
            1
        );
        // two ordered factorizations of T^2+T into linear factors
        assert_eq!(
            brute_force_fpi(
                &RepSpec::YoungInduced(vec![1, 1]),
                &poly(&[0, 1, 1]),
                &f2,
                Budget::default()
            )
            .unwrap(),
            2
        );
    }

    #[test]
    fn gram_schmidt_matches_recursion() {
        // the two irreducible-character routes agree on every class
        for n in 1..=5usize {
            let sym = SymOracle::new(n).unwrap();
            for lambda in partitions(n) {
                for tau in partitions(n) {
                    let fast = character_value(
                        &RepSpec::Irreducible(lambda.clone()),
                        &CycleType::new(tau.clone()),
                    )
                    .unwrap();
                    assert_eq!(sym.irreducible_on_class(&lambda, &tau), fast);
                }
            }
        }
    }

    #[test]
    fn class_sizes_match() {
        for n in 1..=5usize {
            let sym = SymOracle::new(n).unwrap();
            for (ci, t) in sym.class_types.iter().enumerate() {
                assert_eq!(
                    sym.class_sizes[ci] as u64,
                    class_size(&CycleType::new(t.clone()))
                );
            }
        }
    }

    #[test]
    fn oracle_agrees_on_quartics_over_f2() {
        let f2 = Field::new(2, 1).unwrap();
        let sym = SymOracle::new(4).unwrap();
        let mut reps: Vec<RepSpec> = vec![RepSpec::Sign(4)];
        for i in 0..4 {
            reps.push(RepSpec::ExtStd(4, i));
        }
        for lambda in partitions(4) {
            reps.push(RepSpec::Irreducible(lambda.clone()));
            reps.push(RepSpec::YoungInduced(lambda));
        }
        for f in crate::enumerate::enumerate_monic(&f2, 4, Budget::default()).unwrap() {
            let space = TupleSpace::new(&f, &f2, &sym, Budget::default()).unwrap();
            for rep in &reps {
                assert_eq!(
                    space.trace(rep, &sym).unwrap(),
                    factorization_function(rep, &f, &f2).unwrap(),
                    "rep {:?} on {:?}",
                    rep,
                    f
                );
            }
        }
    }
}
