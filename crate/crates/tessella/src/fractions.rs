//! Exhaustive solvers for the prime unit-fraction equations and the vertex
//! corner-angle equation `Σ 2π/k_i = 2π` (equivalently `Σ 1/k_i = 1`).
//!
//! The two lemma statements being verified here:
//!
//! - distinct primes `p_1..p_m`, positive `a_i`, `Σ a_i/p_i = 1` forces
//!   `m = 1, a_1 = p_1`;
//! - with a disjoint doubled list `q_1..q_k` and `Σ a_i/p_i + Σ b_j/(2 q_j) = 1`,
//!   the only solutions are the single odd one, a single doubled `b = 2q`, or
//!   two doubled with `b_1 = q_1, b_2 = q_2`.
//!
//! Verification is by bounded enumeration (each summand is at most 1, so
//! `a_i <= p_i` and `b_j <= 2 q_j`); the modular proofs themselves are not
//! mechanized.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FractionError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("prime lists are not disjoint (both contain {0})")]
    NotDisjoint(u32),
    #[error("duplicate prime {0} in list")]
    Duplicate(u32),
    #[error("the odd list must hold odd primes, got 2 (a/2 coincides with the doubled form)")]
    EvenPrimeInOddList,
}

/// Simple sieve of Eratosthenes.
pub fn primes_up_to(limit: u32) -> Vec<u32> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut p = 2usize;
    while p * p <= n {
        if sieve[p] {
            let mut q = p * p;
            while q <= n {
                sieve[q] = false;
                q += p;
            }
        }
        p += 1;
    }
    (2..=limit).filter(|&k| sieve[k as usize]).collect()
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The first `count` primes strictly greater than `floor`.
pub fn primes_above(floor: u32, count: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(count);
    let mut n = floor + 1;
    while out.len() < count {
        if is_prime(n) {
            out.push(n);
        }
        n += 1;
    }
    out
}

/// Input to the reciprocal solver: disjoint lists of distinct primes, the
/// first entering as `a/p`, the second as `b/(2q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReciprocalInstance {
    pub odd_primes: Vec<u32>,
    pub doubled_primes: Vec<u32>,
}

impl ReciprocalInstance {
    pub fn new(odd_primes: Vec<u32>, doubled_primes: Vec<u32>) -> Result<Self, FractionError> {
        if odd_primes.contains(&2) {
            return Err(FractionError::EvenPrimeInOddList);
        }
        let mut seen = BTreeSet::new();
        for &p in odd_primes.iter().chain(doubled_primes.iter()) {
            if !is_prime(p) {
                return Err(FractionError::NotPrime(p));
            }
            if !seen.insert(p) {
                // same prime twice within one list is a duplicate; across
                // lists it is a disjointness failure
                if odd_primes.contains(&p) && doubled_primes.contains(&p) {
                    return Err(FractionError::NotDisjoint(p));
                }
                return Err(FractionError::Duplicate(p));
            }
        }
        Ok(ReciprocalInstance {
            odd_primes,
            doubled_primes,
        })
    }
}

/// A solution of `Σ a_i/p_i + Σ b_j/(2 q_j) = 1` with positive coefficients;
/// primes absent from the maps are unused.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ReciprocalSolution {
    pub a: BTreeMap<u32, u64>,
    pub b: BTreeMap<u32, u64>,
}

impl ReciprocalSolution {
    /// Does this solution match one of the lemma shapes?
    pub fn lemma_shape(&self) -> Option<LemmaShape> {
        match (self.a.len(), self.b.len()) {
            (1, 0) => {
                let (&p, &a) = self.a.iter().next().unwrap();
                (u64::from(p) == a).then_some(LemmaShape::SingleOdd)
            }
            (0, 1) => {
                let (&q, &b) = self.b.iter().next().unwrap();
                (2 * u64::from(q) == b).then_some(LemmaShape::SingleDoubled)
            }
            (0, 2) => self
                .b
                .iter()
                .all(|(&q, &b)| u64::from(q) == b)
                .then_some(LemmaShape::TwoDoubled),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LemmaShape {
    SingleOdd,
    SingleDoubled,
    TwoDoubled,
}

/// Complete set of solutions, in a canonical sorted order.
///
/// Denominators are cleared up front: with `D = Π p_i · 2 Π q_j` the equation
/// becomes an integer knapsack, and each coefficient is bounded by its own
/// denominator because every summand is at most 1.
pub fn solve_reciprocal(inst: &ReciprocalInstance) -> Vec<ReciprocalSolution> {
    // weights as u128 to stay safe for several large primes
    let mut denoms: Vec<(u32, u128, bool)> = Vec::new();
    for &p in &inst.odd_primes {
        denoms.push((p, u128::from(p), false));
    }
    for &q in &inst.doubled_primes {
        denoms.push((q, 2 * u128::from(q), true));
    }
    let target: u128 = denoms.iter().map(|&(_, d, _)| d).fold(1, lcm_u128);
    let mut out = Vec::new();
    let mut coeffs = vec![0u64; denoms.len()];
    fn rec(
        denoms: &[(u32, u128, bool)],
        target: u128,
        idx: usize,
        remaining: u128,
        coeffs: &mut Vec<u64>,
        out: &mut Vec<ReciprocalSolution>,
    ) {
        if idx == denoms.len() {
            if remaining == 0 {
                let mut a = BTreeMap::new();
                let mut b = BTreeMap::new();
                for (i, &(p, _, doubled)) in denoms.iter().enumerate() {
                    if coeffs[i] > 0 {
                        if doubled {
                            b.insert(p, coeffs[i]);
                        } else {
                            a.insert(p, coeffs[i]);
                        }
                    }
                }
                out.push(ReciprocalSolution { a, b });
            }
            return;
        }
        let (_, d, _) = denoms[idx];
        let unit = target / d; // contribution of one coefficient step
        let max_c = (remaining / unit).min(d); // c/d <= 1 and c*unit <= remaining
        for c in 0..=max_c {
            coeffs[idx] = c as u64;
            rec(denoms, target, idx + 1, remaining - c * unit, coeffs, out);
        }
        coeffs[idx] = 0;
    }
    rec(&denoms, target, 0, target, &mut coeffs, &mut out);
    // drop the trivial all-zero assignment (it cannot sum to 1, but guard anyway)
    out.retain(|s| !(s.a.is_empty() && s.b.is_empty()));
    out.sort();
    out
}

fn gcd_u128(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd_u128(b, a % b)
    }
}

fn lcm_u128(a: u128, b: u128) -> u128 {
    a / gcd_u128(a, b) * b
}

/// A multiset of corner sizes with `Σ 1/k_i = 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct CornerConfiguration {
    /// size -> multiplicity
    pub counts: BTreeMap<u32, u64>,
    pub is_monotype: bool,
}

/// All multisets over `allowed_sizes` with `Σ 1/k_i = 1`, in sorted order.
/// The multiplicity of size `k` is bounded by `k`.
pub fn vertex_corner_solutions(allowed_sizes: &BTreeSet<u32>) -> Vec<CornerConfiguration> {
    let sizes: Vec<u32> = allowed_sizes.iter().copied().collect();
    assert!(sizes.iter().all(|&k| k >= 3), "corner sizes must be >= 3");
    let target: u128 = sizes.iter().map(|&k| u128::from(k)).fold(1, lcm_u128);
    let mut out = Vec::new();
    let mut counts = vec![0u64; sizes.len()];
    fn rec(
        sizes: &[u32],
        target: u128,
        idx: usize,
        remaining: u128,
        counts: &mut Vec<u64>,
        out: &mut Vec<CornerConfiguration>,
    ) {
        if remaining == 0 {
            if counts.iter().any(|&c| c > 0) {
                let mut m = BTreeMap::new();
                for (i, &c) in counts.iter().enumerate() {
                    if c > 0 {
                        m.insert(sizes[i], c);
                    }
                }
                let is_monotype = m.len() == 1;
                out.push(CornerConfiguration {
                    counts: m,
                    is_monotype,
                });
            }
            // remaining slots must stay zero, so no need to recurse further
            return;
        }
        if idx == sizes.len() {
            return;
        }
        let unit = target / u128::from(sizes[idx]);
        let max_c = (remaining / unit).min(u128::from(sizes[idx]));
        for c in 0..=max_c {
            counts[idx] = c as u64;
            rec(sizes, target, idx + 1, remaining - c * unit, counts, out);
        }
        counts[idx] = 0;
    }
    rec(&sizes, target, 0, target, &mut counts, &mut out);
    out.sort();
    out
}

/// Outcome of sweeping all instances drawn from `primes <= max_prime` with at
/// most `max_list_size` primes in total, checking every solution against the
/// lemma trichotomy.
#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub max_prime: u32,
    pub max_list_size: usize,
    pub instances_checked: u64,
    pub solutions_seen: u64,
    /// Instances together with the offending solution, if any.
    pub counterexamples: Vec<(Vec<u32>, Vec<u32>, ReciprocalSolution)>,
}

impl LemmaReport {
    pub fn verified(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Exhaustively checks the two lemma statements over all instances with
/// primes `<= max_prime` and `m + k <= max_list_size`.
pub fn verify_lemmas(max_prime: u32, max_list_size: usize) -> LemmaReport {
    let primes = primes_up_to(max_prime);
    let mut report = LemmaReport {
        max_prime,
        max_list_size,
        instances_checked: 0,
        solutions_seen: 0,
        counterexamples: Vec::new(),
    };
    // all subsets of size 1..=max_list_size, then all odd/doubled splits
    let mut subset: Vec<u32> = Vec::new();
    fn subsets(
        primes: &[u32],
        start: usize,
        max: usize,
        subset: &mut Vec<u32>,
        report: &mut LemmaReport,
    ) {
        if !subset.is_empty() {
            for mask in 0..(1u32 << subset.len()) {
                let mut odd = Vec::new();
                let mut doubled = Vec::new();
                for (i, &p) in subset.iter().enumerate() {
                    if mask & (1 << i) == 0 {
                        odd.push(p);
                    } else {
                        doubled.push(p);
                    }
                }
                if odd.contains(&2) {
                    // 2 is not an admissible odd-face size; it may only occur doubled
                    continue;
                }
                let inst = ReciprocalInstance::new(odd.clone(), doubled.clone()).unwrap();
                report.instances_checked += 1;
                for sol in solve_reciprocal(&inst) {
                    report.solutions_seen += 1;
                    if sol.lemma_shape().is_none() {
                        report.counterexamples.push((odd.clone(), doubled.clone(), sol));
                    }
                }
            }
        }
        if subset.len() == max {
            return;
        }
        for i in start..primes.len() {
            subset.push(primes[i]);
            subsets(primes, i + 1, max, subset, report);
            subset.pop();
        }
    }
    subsets(&primes, 0, max_list_size, &mut subset, &mut report);
    report
}
