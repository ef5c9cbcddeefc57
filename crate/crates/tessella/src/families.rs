//! Generators for the tuple families with prescribed layer behaviour.
//!
//! `kbar(i)` is the 16-entry block that, juxtaposed onto `kn(n-1)`, pushes the
//! local blocking obstruction one layer further out; `kn(n)` is the 17-entry
//! base block followed by `kbar(1) .. kbar(n-1)`. `kn_prime(n)` replaces the
//! odd sizes by primes and the even sizes by doubled primes so that the dual
//! tile's corner equation falls under the unit-fraction lemmas. `ka(k,l,m)` is
//! the 14-entry weakly aperiodic family.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::cyclic::{CyclicType, GeometryClass};
use crate::fractions::primes_above;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("even size assignment: index {0} is missing")]
    MissingIndex(u32),
    #[error("even size assignment: size {0} at index {1} is odd")]
    OddSize(u32, u32),
    #[error("even size assignment: size {0} at index {1} is below 8")]
    TooSmall(u32, u32),
    #[error("even size assignment: size {0} assigned to two indices")]
    RepeatedSize(u32),
    #[error("kbar index must be >= 1")]
    BadKbarIndex,
    #[error("kn index must be >= 1")]
    BadKnIndex,
    #[error("ka parameters must be pairwise distinct, got ({0},{1},{2})")]
    KaNotDistinct(u32, u32, u32),
    #[error("ka parameters must be at least 5, got {0}")]
    KaTooSmall(u32),
    #[error(transparent)]
    Type(#[from] crate::cyclic::TypeError),
}

/// Map `l -> k_l` assigning an even size (>= 8, pairwise distinct) to each
/// index a family formula needs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvenSizeAssignment {
    map: BTreeMap<u32, u32>,
}

impl EvenSizeAssignment {
    pub fn new(map: BTreeMap<u32, u32>) -> Result<Self, FamilyError> {
        let mut seen = BTreeMap::new();
        for (&l, &k) in &map {
            if k % 2 != 0 {
                return Err(FamilyError::OddSize(k, l));
            }
            if k < 8 {
                return Err(FamilyError::TooSmall(k, l));
            }
            if let Some(_prev) = seen.insert(k, l) {
                return Err(FamilyError::RepeatedSize(k));
            }
        }
        Ok(EvenSizeAssignment { map })
    }

    /// The default `k_l = 2l + 6`: even, distinct, and at least 8 for `l >= 1`.
    pub fn default_for_indices(indices: &[u32]) -> Self {
        let map = indices.iter().map(|&l| (l, 2 * l + 6)).collect();
        EvenSizeAssignment { map }
    }

    pub fn get(&self, l: u32) -> Result<u32, FamilyError> {
        self.map.get(&l).copied().ok_or(FamilyError::MissingIndex(l))
    }

    pub fn indices(&self) -> impl Iterator<Item = u32> + '_ {
        self.map.keys().copied()
    }
}

/// A symbolic tuple entry before an assignment is applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Entry {
    Odd(u32),
    Even(u32), // index l into the assignment
}

fn kbar_template(i: u32) -> Vec<Entry> {
    use Entry::*;
    let o = |s| Odd(s);
    let e = |l| Even(l);
    vec![
        e(3 * i),
        o(2 * i + 5),
        o(2 * i + 7),
        e(3 * i + 3),
        o(2 * i + 7),
        o(2 * i + 5),
        o(2 * i + 3),
        e(3 * i),
        o(2 * i + 5),
        e(3 * i + 4),
        o(2 * i + 5),
        o(2 * i + 7),
        e(3 * i + 5),
        e(3 * i + 3),
        o(2 * i + 7),
        e(3 * i + 5),
    ]
}

fn kn_template(n: u32) -> Vec<Entry> {
    use Entry::*;
    let mut t = vec![
        Even(1),
        Odd(5),
        Even(2),
        Odd(5),
        Odd(7),
        Even(3),
        Odd(7),
        Odd(5),
        Even(1),
        Odd(5),
        Even(4),
        Odd(5),
        Odd(7),
        Even(5),
        Even(3),
        Odd(7),
        Even(5),
    ];
    for i in 1..n {
        t.extend(kbar_template(i));
    }
    t
}

fn even_indices(template: &[Entry]) -> Vec<u32> {
    let mut v: Vec<u32> = template
        .iter()
        .filter_map(|e| match e {
            Entry::Even(l) => Some(*l),
            Entry::Odd(_) => None,
        })
        .collect();
    v.sort_unstable();
    v.dedup();
    v
}

fn instantiate(template: &[Entry], a: &EvenSizeAssignment) -> Result<CyclicType, FamilyError> {
    let mut entries = Vec::with_capacity(template.len());
    for e in template {
        entries.push(match e {
            Entry::Odd(s) => *s,
            Entry::Even(l) => a.get(*l)?,
        });
    }
    Ok(CyclicType::new(entries)?)
}

/// Which family a generated tuple came from, with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyKind {
    KBar { i: u32 },
    Kn { n: u32 },
    KnPrime { n: u32 },
    Ka { k: u32, l: u32, m: u32 },
}

#[derive(Debug, Clone)]
pub struct FamilyInstance {
    pub kind: FamilyKind,
    pub tuple: CyclicType,
    pub evens: Option<EvenSizeAssignment>,
    pub warnings: Vec<String>,
}

/// Indices needed by `kbar(i)`.
pub fn kbar_indices(i: u32) -> Vec<u32> {
    vec![3 * i, 3 * i + 3, 3 * i + 4, 3 * i + 5]
}

/// Indices needed by `kn(n)`.
pub fn kn_indices(n: u32) -> Vec<u32> {
    even_indices(&kn_template(n))
}

/// The 16-entry block of Eq.-(1) shape for level `i`.
pub fn kbar(i: u32, a: &EvenSizeAssignment) -> Result<CyclicType, FamilyError> {
    if i < 1 {
        return Err(FamilyError::BadKbarIndex);
    }
    instantiate(&kbar_template(i), a)
}

/// `kn(n)` with an explicit assignment. `kn(1)` is the bare 17-entry base
/// block; for `n > 1` the `kbar` blocks are juxtaposed in order.
pub fn kn_with(n: u32, a: &EvenSizeAssignment) -> Result<FamilyInstance, FamilyError> {
    if n < 1 {
        return Err(FamilyError::BadKnIndex);
    }
    let tuple = instantiate(&kn_template(n), a)?;
    debug_assert_eq!(tuple.classify(), GeometryClass::Hyperbolic);
    Ok(FamilyInstance {
        kind: FamilyKind::Kn { n },
        tuple,
        evens: Some(a.clone()),
        warnings: Vec::new(),
    })
}

/// `kn(n)` with the default assignment `k_l = 2l + 6`.
pub fn kn(n: u32) -> Result<FamilyInstance, FamilyError> {
    if n < 1 {
        return Err(FamilyError::BadKnIndex);
    }
    let a = EvenSizeAssignment::default_for_indices(&kn_indices(n));
    kn_with(n, &a)
}

/// The prime-modified variant: odd sizes `{5, 7, ..., 2n+5}` are replaced via
/// the order-preserving bijection onto consecutive primes greater than 3, and
/// each even size `k_l` becomes `2 q_l` for distinct primes `q_l` larger than
/// every odd replacement, assigned in index order.
///
/// The tuple has n+1 distinct odd sizes, so n+1 odd primes are used.
pub fn kn_prime(n: u32) -> Result<FamilyInstance, FamilyError> {
    if n < 1 {
        return Err(FamilyError::BadKnIndex);
    }
    let template = kn_template(n);
    let odd_count = n as usize + 1; // odd sizes 5, 7, ..., 2n+5
    let odd_primes = primes_above(3, odd_count);
    let max_odd = *odd_primes.last().unwrap();
    let indices = even_indices(&template);
    let doubled = primes_above(max_odd, indices.len());
    let mut map = BTreeMap::new();
    for (l, q) in indices.iter().zip(doubled.iter()) {
        map.insert(*l, 2 * q);
    }
    let a = EvenSizeAssignment::new(map)?;
    let mut entries = Vec::with_capacity(template.len());
    for e in &template {
        entries.push(match e {
            Entry::Odd(s) => {
                let rank = ((s - 5) / 2) as usize; // 5,7,9,... -> 0,1,2,...
                odd_primes[rank]
            }
            Entry::Even(l) => a.get(*l)?,
        });
    }
    let tuple = CyclicType::new(entries)?;
    debug_assert_eq!(tuple.classify(), GeometryClass::Hyperbolic);
    Ok(FamilyInstance {
        kind: FamilyKind::KnPrime { n },
        tuple,
        evens: Some(a),
        warnings: Vec::new(),
    })
}

/// The weakly aperiodic 14-entry family `[3,5,k,5,l,5,m,5,l,5,k,5,l,5]`.
/// Parameters must be pairwise distinct; values of 5 are accepted with a
/// warning, anything smaller is rejected.
pub fn ka(k: u32, l: u32, m: u32) -> Result<FamilyInstance, FamilyError> {
    if k == l || l == m || k == m {
        return Err(FamilyError::KaNotDistinct(k, l, m));
    }
    let mut warnings = Vec::new();
    for v in [k, l, m] {
        if v < 5 {
            return Err(FamilyError::KaTooSmall(v));
        }
        if v == 5 {
            warnings.push(format!(
                "ka parameter {v} is below 6; the obstruction argument assumes k,l,m >= 6"
            ));
        }
    }
    let tuple = CyclicType::new(vec![3, 5, k, 5, l, 5, m, 5, l, 5, k, 5, l, 5])?;
    debug_assert_eq!(tuple.classify(), GeometryClass::Hyperbolic);
    Ok(FamilyInstance {
        kind: FamilyKind::Ka { k, l, m },
        tuple,
        warnings,
    evens: None,
    })
}

/// Recognizes a tuple of the `ka` shape and recovers `(k, l, m)`.
pub fn match_ka(t: &CyclicType) -> Option<(u32, u32, u32)> {
    if t.degree() != 14 {
        return None;
    }
    let entries = t.entries();
    let rev: Vec<u32> = entries.iter().rev().copied().collect();
    for list in [entries.to_vec(), rev] {
        for r in 0..14 {
            let w: Vec<u32> = (0..14).map(|j| list[(r + j) % 14]).collect();
            // pattern [3,5,k,5,l,5,m,5,l,5,k,5,l,5]
            if w[0] != 3 {
                continue;
            }
            if [1, 3, 5, 7, 9, 11, 13].iter().any(|&i| w[i] != 5) {
                continue;
            }
            let (k, l, m) = (w[2], w[4], w[6]);
            if k == l || l == m || k == m || k < 5 || l < 5 || m < 5 {
                continue;
            }
            if w[8] == l && w[10] == k && w[12] == l {
                return Some((k, l, m));
            }
        }
    }
    None
}

/// Odd entries of a tuple, sorted and deduplicated.
pub fn odd_sizes(t: &CyclicType) -> Vec<u32> {
    let mut v: Vec<u32> = t.entries().iter().copied().filter(|k| k % 2 == 1).collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Does the tuple contain three cyclically consecutive even entries?
pub fn has_three_consecutive_evens(t: &CyclicType) -> bool {
    let d = t.degree();
    let e = t.entries();
    (0..d).any(|i| (0..3).all(|j| e[(i + j) % d] % 2 == 0))
}
