//! Exact cyclic vertex types.
//!
//! A vertex type is a cyclic sequence of face sizes, identified up to rotation
//! and mirror image. Everything in this module is exact integer/rational
//! arithmetic; the Euclidean boundary `ϑ = 2` is decided exactly, never with
//! floating point.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// Upper bound on admissible face sizes. The theory only needs finite sizes;
/// the cap keeps downstream arithmetic comfortably bounded.
pub const MAX_FACE_SIZE: u32 = 1 << 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TypeError {
    #[error("a cyclic type needs at least 3 entries, got {0}")]
    TooShort(usize),
    #[error("face size {0} is out of range (must be 3..={MAX_FACE_SIZE})")]
    BadFaceSize(u32),
    #[error("malformed tuple syntax: {0}")]
    Syntax(String),
}

/// Orientation of a subword match: against the tuple as stored, or against its
/// reversal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Orientation {
    Forward,
    Reversed,
}

/// One occurrence of a corner word inside a cyclic type.
///
/// For `Forward`, `word[j] == entries[(offset + j) % d]`; for `Reversed` the
/// same with the reversed entry list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubwordMatch {
    pub orientation: Orientation,
    pub offset: usize,
}

/// A cyclic tuple of face sizes. Entry order is preserved as constructed
/// (family generators rely on it); equality and hashing go through the
/// canonical form, so rotations and mirror images compare equal.
#[derive(Debug, Clone)]
pub struct CyclicType {
    entries: Vec<u32>,
}

/// Geometry of the unique regular realization, decided exactly from the angle
/// sum: `ϑ < 2` spherical, `ϑ = 2` Euclidean, `ϑ > 2` hyperbolic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeometryClass {
    Spherical,
    Euclidean,
    Hyperbolic,
}

impl fmt::Display for GeometryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometryClass::Spherical => write!(f, "spherical"),
            GeometryClass::Euclidean => write!(f, "euclidean"),
            GeometryClass::Hyperbolic => write!(f, "hyperbolic"),
        }
    }
}

impl CyclicType {
    pub fn new(entries: Vec<u32>) -> Result<Self, TypeError> {
        if entries.len() < 3 {
            return Err(TypeError::TooShort(entries.len()));
        }
        for &k in &entries {
            if !(3..=MAX_FACE_SIZE).contains(&k) {
                return Err(TypeError::BadFaceSize(k));
            }
        }
        Ok(CyclicType { entries })
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn degree(&self) -> usize {
        self.entries.len()
    }

    /// Lexicographically least list among all rotations of the entries and of
    /// the reversed entries. Idempotent; plain enumeration since degrees stay
    /// small.
    pub fn canonical_form(&self) -> CyclicType {
        CyclicType {
            entries: canonical_entries(&self.entries),
        }
    }

    /// Exact angle sum `ϑ = Σ (k_i - 2) / k_i`.
    pub fn angle_sum(&self) -> BigRational {
        let mut sum = BigRational::zero();
        for &k in &self.entries {
            sum += BigRational::new(BigInt::from(k - 2), BigInt::from(k));
        }
        sum
    }

    pub fn classify(&self) -> GeometryClass {
        let two = BigRational::from_integer(BigInt::from(2));
        let theta = self.angle_sum();
        if theta < two {
            GeometryClass::Spherical
        } else if theta == two {
            GeometryClass::Euclidean
        } else {
            GeometryClass::Hyperbolic
        }
    }

    /// Concatenation of entry lists.
    pub fn juxtapose(&self, other: &CyclicType) -> CyclicType {
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        CyclicType { entries }
    }

    /// Every `(orientation, offset)` at which `word` occurs as a contiguous
    /// subword of a rotation of the tuple or of its reversal. Words longer
    /// than the degree never match.
    pub fn subword_matches(&self, word: &[u32]) -> Vec<SubwordMatch> {
        let d = self.entries.len();
        let mut out = Vec::new();
        if word.is_empty() || word.len() > d {
            return out;
        }
        let reversed: Vec<u32> = self.entries.iter().rev().copied().collect();
        for (orientation, list) in [
            (Orientation::Forward, &self.entries),
            (Orientation::Reversed, &reversed),
        ] {
            for offset in 0..d {
                if word
                    .iter()
                    .enumerate()
                    .all(|(j, &w)| list[(offset + j) % d] == w)
                {
                    out.push(SubwordMatch {
                        orientation,
                        offset,
                    });
                }
            }
        }
        out
    }

    pub fn is_extendable_subword(&self, word: &[u32]) -> bool {
        !self.subword_matches(word).is_empty()
    }

    /// The full cyclic word selected by a match, starting at the matched
    /// offset. Its first `word_len` entries reproduce the matched word; the
    /// remainder is the completion.
    pub fn word_at(&self, m: SubwordMatch) -> Vec<u32> {
        let d = self.entries.len();
        let list: Vec<u32> = match m.orientation {
            Orientation::Forward => self.entries.clone(),
            Orientation::Reversed => self.entries.iter().rev().copied().collect(),
        };
        (0..d).map(|j| list[(m.offset + j) % d]).collect()
    }

    /// True iff `word` read cyclically equals this tuple up to rotation and
    /// reflection.
    pub fn matches_cyclically(&self, word: &[u32]) -> bool {
        word.len() == self.entries.len() && canonical_entries(word) == canonical_entries(&self.entries)
    }

    /// Multiset of distinct entries with multiplicities.
    pub fn entry_counts(&self) -> std::collections::BTreeMap<u32, usize> {
        let mut m = std::collections::BTreeMap::new();
        for &k in &self.entries {
            *m.entry(k).or_insert(0) += 1;
        }
        m
    }
}

pub fn canonical_entries(entries: &[u32]) -> Vec<u32> {
    let d = entries.len();
    let reversed: Vec<u32> = entries.iter().rev().copied().collect();
    let mut best: Option<Vec<u32>> = None;
    for list in [entries, reversed.as_slice()] {
        for r in 0..d {
            let cand: Vec<u32> = (0..d).map(|j| list[(r + j) % d]).collect();
            if best.as_ref().map_or(true, |b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

impl PartialEq for CyclicType {
    fn eq(&self, other: &Self) -> bool {
        self.entries.len() == other.entries.len()
            && canonical_entries(&self.entries) == canonical_entries(&other.entries)
    }
}

impl Eq for CyclicType {}

impl std::hash::Hash for CyclicType {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        canonical_entries(&self.entries).hash(state);
    }
}

impl fmt::Display for CyclicType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, k) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for CyclicType {
    type Err = TypeError;

    /// Parses the text syntax `"[3,5,7]"`. Whitespace around entries is
    /// tolerated; anything that is not a decimal integer `>= 3` is rejected.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| TypeError::Syntax(format!("expected [..], got {s:?}")))?;
        let mut entries = Vec::new();
        for part in inner.split(',') {
            let p = part.trim();
            let k: u32 = p
                .parse()
                .map_err(|_| TypeError::Syntax(format!("bad entry {p:?}")))?;
            entries.push(k);
        }
        CyclicType::new(entries)
    }
}

/// Renders an exact rational as `p/q` (or just `p` when integral).
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(entries: &[u32]) -> CyclicType {
        CyclicType::new(entries.to_vec()).unwrap()
    }

    #[test]
    fn canonical_form_examples() {
        assert_eq!(t(&[4, 4, 4, 4]).canonical_form().entries(), &[4, 4, 4, 4]);
        assert_eq!(t(&[5, 3, 5, 4]).canonical_form().entries(), &[3, 5, 4, 5]);
        assert_eq!(t(&[3, 4, 5]).canonical_form().entries(), &[3, 4, 5]);
        assert_eq!(t(&[3, 5, 4]).canonical_form().entries(), &[3, 4, 5]);
    }

    #[test]
    fn equality_is_up_to_rotation_and_mirror() {
        assert_eq!(t(&[3, 4, 5]), t(&[3, 5, 4]));
        assert_eq!(t(&[4, 5, 4, 5]), t(&[5, 4, 5, 4]));
        assert_ne!(t(&[3, 4, 5]), t(&[3, 4, 6]));
    }

    #[test]
    fn angle_sums() {
        let two = BigRational::from_integer(2.into());
        assert_eq!(t(&[6, 6, 6]).angle_sum(), two);
        assert_eq!(t(&[6, 6, 6]).classify(), GeometryClass::Euclidean);
        assert_eq!(
            t(&[3, 3, 3]).angle_sum(),
            BigRational::from_integer(1.into())
        );
        assert_eq!(t(&[3, 3, 3]).classify(), GeometryClass::Spherical);
        assert_eq!(
            t(&[4, 5, 4, 5]).angle_sum(),
            BigRational::new(11.into(), 5.into())
        );
        assert_eq!(t(&[4, 5, 4, 5]).classify(), GeometryClass::Hyperbolic);
        assert_eq!(t(&[4, 8, 8]).classify(), GeometryClass::Euclidean);
        assert_eq!(t(&[3, 7, 42]).classify(), GeometryClass::Euclidean);
        assert_eq!(t(&[7, 7, 7]).classify(), GeometryClass::Hyperbolic);
        assert_eq!(
            t(&[7, 7, 7]).angle_sum(),
            BigRational::new(15.into(), 7.into())
        );
    }

    #[test]
    fn subword_matching() {
        let ty = t(&[3, 5, 7]);
        assert!(ty.is_extendable_subword(&[5, 7]));
        assert!(!ty.is_extendable_subword(&[7, 7]));
        // a word equal to the full tuple matches, longer words never do
        assert!(ty.is_extendable_subword(&[3, 5, 7]));
        assert!(!ty.is_extendable_subword(&[3, 5, 7, 3]));

        // reversal of the word flips orientation but not matchability
        let ty2 = t(&[3, 5, 7, 9]);
        assert!(ty2.is_extendable_subword(&[5, 7, 9]));
        assert!(ty2.is_extendable_subword(&[9, 7, 5]));
    }

    #[test]
    fn subword_match_positions() {
        let ty = t(&[4, 5, 4, 5]);
        let matches = ty.subword_matches(&[4, 5]);
        // two forward offsets and two reversed offsets
        assert_eq!(matches.len(), 4);
        for m in matches {
            let w = ty.word_at(m);
            assert_eq!(&w[..2], &[4, 5]);
        }
    }

    #[test]
    fn juxtaposition() {
        let a = t(&[3, 5, 7]);
        let b = t(&[7, 9, 11]);
        let c = a.juxtapose(&b);
        assert_eq!(c.entries(), &[3, 5, 7, 7, 9, 11]);
        assert_eq!(c.degree(), a.degree() + b.degree());
    }

    #[test]
    fn parser_round_trip_and_rejects() {
        let ty: CyclicType = "[3,5,7]".parse().unwrap();
        assert_eq!(ty.entries(), &[3, 5, 7]);
        let ty: CyclicType = "[4, 5, 4, 5]".parse().unwrap();
        assert_eq!(ty.to_string(), "[4,5,4,5]");
        assert!("[3,5]".parse::<CyclicType>().is_err());
        assert!("[3,5,x]".parse::<CyclicType>().is_err());
        assert!("[3,5,2]".parse::<CyclicType>().is_err());
        assert!("3,5,7".parse::<CyclicType>().is_err());
    }

    // Tiny deterministic generator for invariant sweeps.
    struct Lcg(u64);
    impl Lcg {
        fn next(&mut self) -> u64 {
            self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            self.0 >> 33
        }
        fn in_range(&mut self, lo: u32, hi: u32) -> u32 {
            lo + (self.next() % u64::from(hi - lo + 1)) as u32
        }
    }

    #[test]
    fn canonical_form_invariants() {
        let mut rng = Lcg(0xfeed);
        for _ in 0..200 {
            let d = rng.in_range(3, 9) as usize;
            let entries: Vec<u32> = (0..d).map(|_| rng.in_range(3, 20)).collect();
            let ty = CyclicType::new(entries.clone()).unwrap();
            let canon = ty.canonical_form();
            // idempotent
            assert_eq!(canon.canonical_form().entries(), canon.entries());
            // invariant under every rotation, in both orientations
            for r in 0..d {
                let rot: Vec<u32> = (0..d).map(|j| entries[(r + j) % d]).collect();
                let rev: Vec<u32> = rot.iter().rev().copied().collect();
                assert_eq!(t(&rot).canonical_form().entries(), canon.entries());
                assert_eq!(t(&rev).canonical_form().entries(), canon.entries());
                assert_eq!(t(&rot).angle_sum(), ty.angle_sum());
            }
        }
    }

    #[test]
    fn angle_sum_bounds() {
        let mut rng = Lcg(0xbead);
        for _ in 0..200 {
            let d = rng.in_range(3, 10) as usize;
            let entries: Vec<u32> = (0..d).map(|_| rng.in_range(3, 50)).collect();
            let ty = CyclicType::new(entries).unwrap();
            let theta = ty.angle_sum();
            assert!(theta >= BigRational::from_integer(1.into()));
            assert!(theta < BigRational::from_integer((d as i64).into()));
            assert!(theta >= BigRational::new((d as i64).into(), 3.into()));
        }
    }

    #[test]
    fn subword_invariant_under_canonicalization() {
        let mut rng = Lcg(0xcafe);
        for _ in 0..100 {
            let d = rng.in_range(3, 8) as usize;
            let entries: Vec<u32> = (0..d).map(|_| rng.in_range(3, 8)).collect();
            let ty = CyclicType::new(entries.clone()).unwrap();
            let canon = ty.canonical_form();
            let wl = rng.in_range(1, d as u32 - 1) as usize;
            let start = rng.in_range(0, d as u32 - 1) as usize;
            let w: Vec<u32> = (0..wl).map(|j| entries[(start + j) % d]).collect();
            assert!(ty.is_extendable_subword(&w));
            assert!(canon.is_extendable_subword(&w));
            let wr: Vec<u32> = w.iter().rev().copied().collect();
            assert_eq!(
                ty.is_extendable_subword(&w),
                ty.is_extendable_subword(&wr)
            );
        }
    }
}
