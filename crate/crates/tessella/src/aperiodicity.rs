//! Local-enumeration and counting toolkit for the weakly aperiodic family
//! and the dual-monotile corner forcing.
//!
//! The periodicity obstruction is derived symbolically from local facts, with
//! patch censuses serving as cross-checks only. For the family
//! `[3,5,k,5,l,5,m,5,l,5,k,5,l,5]`:
//!
//! - triangles border pentagons only, and each triangle corner word contains
//!   exactly seven pentagons: profile (3 edge, 15 vertex-with-multiplicity);
//! - every pentagon must border at least one triangle: its flank graph with
//!   the triangle removed is bipartite, and a 5-cycle needs an odd closed
//!   walk;
//! - so in a compact quotient, edge:vertex incidence ratios disagree:
//!   triangles force exactly 1:5 while pentagons force at least 1:3.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::cyclic::CyclicType;
use crate::families::{has_three_consecutive_evens, match_ka};
use crate::fractions::{is_prime, vertex_corner_solutions, CornerConfiguration};
use crate::geometry::{inradius, solve_side_length, GeometryError};
use crate::neighborhood::{self, Depth, Mode, NeighborhoodError};
use crate::patch::{Fid, Patch, Vid};

#[derive(Debug, Error)]
pub enum AperiodicityError {
    #[error("type {0} is not in the ka family [3,5,k,5,l,5,m,5,l,5,k,5,l,5]")]
    NotKaFamily(String),
    #[error("type entries must be odd primes or doubled primes with disjoint prime lists")]
    NotPrimeStructured,
    #[error(transparent)]
    Neighborhood(#[from] NeighborhoodError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Exact incidence counts over a patch, restricted to faces all of whose
/// vertices are interior. Global pair counts require both faces interior and
/// are symmetric; per-face profiles fix one interior face and count all of
/// its partners.
#[derive(Debug, Clone, Serialize)]
pub struct IncidenceCensus {
    pub edge_incidences: BTreeMap<(u32, u32), u64>,
    pub vertex_only_incidences: BTreeMap<(u32, u32), u64>,
    /// (face size, partner size) -> multiset of (edge, vertex-only) profiles
    /// with the number of interior faces showing each profile.
    pub profiles: BTreeMap<(u32, u32), BTreeMap<(u64, u64), u64>>,
    pub interior_faces: u64,
}

impl IncidenceCensus {
    /// The profile shared by every interior face of `size` against `partner`,
    /// if it is unique.
    pub fn uniform_profile(&self, size: u32, partner: u32) -> Option<(u64, u64)> {
        let m = self.profiles.get(&(size, partner))?;
        if m.len() == 1 {
            m.keys().next().copied()
        } else {
            None
        }
    }
}

/// Is every vertex of `f` interior?
fn fully_interior(p: &Patch, f: Fid) -> bool {
    p.face_vertices(f).iter().all(|&v| p.is_interior_vertex(v))
}

/// Counts incidences between faces of size `a` and size `b`.
pub fn incidence_census(p: &Patch, a: u32, b: u32) -> IncidenceCensus {
    let mut census = IncidenceCensus {
        edge_incidences: BTreeMap::new(),
        vertex_only_incidences: BTreeMap::new(),
        profiles: BTreeMap::new(),
        interior_faces: 0,
    };
    let interior: Vec<bool> = p.all_faces().map(|f| fully_interior(p, f)).collect();
    census.interior_faces = interior.iter().filter(|&&x| x).count() as u64;

    // per-face profiles: one interior face against all partners of the other
    // size; vertex-sharing counted with vertex multiplicity
    for f in p.all_faces() {
        if !interior[f as usize] {
            continue;
        }
        let fs = p.face_size(f);
        let other = if fs == a {
            b
        } else if fs == b {
            a
        } else {
            continue;
        };
        let mut edge_partners: BTreeSet<Fid> = BTreeSet::new();
        for g in p.face_neighbors(f) {
            if p.face_size(g) == other && g != f {
                edge_partners.insert(g);
            }
        }
        let mut vertex_only = 0u64;
        for v in p.face_vertices(f) {
            for g in p.faces_at_vertex(v) {
                if g != f && p.face_size(g) == other && !edge_partners.contains(&g) {
                    vertex_only += 1; // per shared vertex, multiplicity counts
                }
            }
        }
        let profile = (edge_partners.len() as u64, vertex_only);
        *census
            .profiles
            .entry((fs, other))
            .or_default()
            .entry(profile)
            .or_insert(0) += 1;
    }

    // symmetric global counts over pairs with both faces interior
    for f in p.all_faces() {
        if !interior[f as usize] || p.face_size(f) != a {
            continue;
        }
        for g in p.all_faces() {
            if g == f && a == b {
                continue;
            }
            if !interior[g as usize] || p.face_size(g) != b {
                continue;
            }
            if a == b && g <= f {
                continue;
            }
            let f_verts: BTreeSet<Vid> = p.face_vertices(f).into_iter().collect();
            let g_verts: Vec<Vid> = p.face_vertices(g);
            let shared: Vec<Vid> = g_verts
                .iter()
                .copied()
                .filter(|v| f_verts.contains(v))
                .collect();
            if shared.is_empty() {
                continue;
            }
            let edge_adjacent = p.face_neighbors(f).contains(&g);
            let key = (a.min(b), a.max(b));
            if edge_adjacent {
                *census.edge_incidences.entry(key).or_insert(0) += 1;
            } else {
                *census.vertex_only_incidences.entry(key).or_insert(0) +=
                    shared.len() as u64;
            }
        }
    }
    census
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Contradiction,
    NoObstruction,
}

/// The double-counting obstruction report.
#[derive(Debug, Clone, Serialize)]
pub struct PeriodicityVerdict {
    pub family: (u32, u32, u32),
    /// (edge incidences with pentagons, vertex-only with multiplicity) per
    /// triangle — exact for every triangle.
    pub triangle_profile: (u64, u64),
    /// Extremal per-pentagon profile against triangles: at least one edge
    /// incidence is forced, which caps vertex-only incidences at 3.
    pub pentagon_profile: (u64, u64),
    /// Implied global edge : vertex-only ratios, triangle side and pentagon
    /// side.
    pub ratio_triangle_side: (u64, u64),
    pub ratio_pentagon_side: (u64, u64),
    pub verdict: Verdict,
    /// The enumerated pentagon ring words the derivation rests on.
    pub pentagon_words: Vec<Vec<u32>>,
    pub triangle_words: Vec<Vec<u32>>,
}

/// Derives the contradiction for a `ka`-family type from local enumeration.
///
/// Triangle side: the triangle ring enumeration must return only `[5,5,5]`,
/// and each corner word of the type contains seven 5s, so every triangle has
/// profile exactly (3, 15) — ratio 1:5. Pentagon side: every enumerated
/// pentagon ring contains a 3, so each pentagon has at least one triangle
/// edge, hence at most 5 - 2 = 3 vertex-only triangle incidences — the
/// implied ratio is at least 1:3. A compact quotient cannot satisfy both.
pub fn periodicity_contradiction(t: &CyclicType) -> Result<PeriodicityVerdict, AperiodicityError> {
    let Some((k, l, m)) = match_ka(t) else {
        return Err(AperiodicityError::NotKaFamily(t.to_string()));
    };
    let budget = 200_000_000u64;
    let triangle_words =
        neighborhood::enumerate_face_neighborhoods(t, 3, Mode::Edge, Depth::Ring, budget)?;
    let pentagon_words =
        neighborhood::enumerate_face_neighborhoods(t, 5, Mode::Edge, Depth::Ring, budget)?;

    // triangle side: ring is all pentagons
    let triangles_all_pentagons = triangle_words.len() == 1
        && triangle_words[0].ring.iter().all(|&s| s == 5);
    // each corner word contains this many 5s
    let fives_per_corner = t.entries().iter().filter(|&&e| e == 5).count() as u64;
    let triangle_profile = (3, 3 * (fives_per_corner - 2));

    // pentagon side: every admissible ring word contains a triangle
    let every_pentagon_borders_a_triangle =
        !pentagon_words.is_empty() && pentagon_words.iter().all(|w| w.contains(3));
    let pentagon_profile = (1, 3);

    let contradiction = triangles_all_pentagons
        && every_pentagon_borders_a_triangle
        && fives_per_corner == 7
        // 1/5 vs >= 1/3
        && triangle_profile.0 * pentagon_profile.1 < triangle_profile.1 * pentagon_profile.0;

    Ok(PeriodicityVerdict {
        family: (k, l, m),
        triangle_profile,
        pentagon_profile,
        ratio_triangle_side: (1, 5),
        ratio_pentagon_side: (1, 3),
        verdict: if contradiction {
            Verdict::Contradiction
        } else {
            Verdict::NoObstruction
        },
        pentagon_words: pentagon_words.into_iter().map(|w| w.ring).collect(),
        triangle_words: triangle_words.into_iter().map(|w| w.ring).collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ForcingVerdict {
    AllVerticesMonotype,
    Unforced,
}

/// One eliminated mixed corner solution, with the facts used.
#[derive(Debug, Clone, Serialize)]
pub struct MixedElimination {
    pub doubled: (u32, u32),
    /// Inradius gap between the two doubled corner sizes at the common side
    /// length (nonzero by strict monotonicity).
    pub inradius_gap: f64,
    /// Whether the tuple supplies the three consecutive even corners the
    /// configuration would force.
    pub has_three_consecutive_evens: bool,
}

/// Corner-forcing report for the dual tile of a prime-structured type.
#[derive(Debug, Clone, Serialize)]
pub struct ForcingReport {
    pub solutions: Vec<CornerConfiguration>,
    pub mixed_eliminations: Vec<MixedElimination>,
    pub verdict: ForcingVerdict,
    pub explanation: Vec<String>,
}

/// Runs the corner-angle analysis for the dual tile of `t`.
///
/// Every vertex of a tiling by the dual tile chooses corners `k_i` with
/// `Σ 2π/k_i = 2π`. With odd-prime and doubled-prime corner sizes the
/// solutions split, by the unit-fraction lemmas, into monotype ones and the
/// two-doubled-primes case; the latter dies on geometry: matching edges force
/// equal side lengths, strict inradius monotonicity then pushes evenness onto
/// three consecutive corners, which the tuple does not contain.
pub fn monotile_forcing(t: &CyclicType) -> Result<ForcingReport, AperiodicityError> {
    // entries partition into odd primes and doubled primes, lists disjoint
    let mut odd = BTreeSet::new();
    let mut doubled = BTreeSet::new();
    for &e in t.entries() {
        if e % 2 == 1 {
            if !is_prime(e) {
                return Err(AperiodicityError::NotPrimeStructured);
            }
            odd.insert(e);
        } else {
            if !is_prime(e / 2) {
                return Err(AperiodicityError::NotPrimeStructured);
            }
            doubled.insert(e / 2);
        }
    }
    if !odd.is_disjoint(&doubled) {
        return Err(AperiodicityError::NotPrimeStructured);
    }

    let mut explanation = Vec::new();
    let allowed: BTreeSet<u32> = t.entries().iter().copied().collect();
    let solutions = vertex_corner_solutions(&allowed);
    explanation.push(format!(
        "corner equation has {} solutions over sizes {:?}",
        solutions.len(),
        allowed
    ));

    let three_evens = has_three_consecutive_evens(t);
    let ell = solve_side_length(t)?;
    let mut mixed_eliminations = Vec::new();
    let mut unforced = false;

    for sol in &solutions {
        if sol.is_monotype {
            continue;
        }
        // by the unit-fraction lemmas a non-monotype solution uses exactly
        // two doubled primes with multiplicities q1, q2
        let sizes: Vec<u32> = sol.counts.keys().copied().collect();
        let is_two_doubled = sizes.len() == 2
            && sizes.iter().all(|s| s % 2 == 0)
            && sizes
                .iter()
                .all(|&s| sol.counts[&s] == u64::from(s / 2));
        if !is_two_doubled {
            unforced = true;
            explanation.push(format!(
                "solution {:?} escapes the lemma trichotomy",
                sol.counts
            ));
            continue;
        }
        let (s1, s2) = (sizes[0], sizes[1]);
        let gap = (inradius(s1, ell)?.0 - inradius(s2, ell)?.0).abs();
        if three_evens {
            unforced = true;
            explanation.push(format!(
                "mixed solution ({s1},{s2}): the tuple has three consecutive even \
                 entries, the parity elimination does not apply"
            ));
        } else {
            explanation.push(format!(
                "mixed solution ({s1},{s2}) eliminated: shared edges force equal \
                 side lengths, inradius gap {gap:.6} forces distinct flanking \
                 corners, parity propagation would need three consecutive even \
                 corners, absent from the tuple"
            ));
        }
        mixed_eliminations.push(MixedElimination {
            doubled: (s1.min(s2) / 2, s1.max(s2) / 2),
            inradius_gap: gap,
            has_three_consecutive_evens: three_evens,
        });
    }

    if solutions.is_empty() {
        unforced = true;
        explanation.push("no corner solutions at all: the dual tile cannot tile".into());
    }

    let verdict = if unforced {
        ForcingVerdict::Unforced
    } else {
        ForcingVerdict::AllVerticesMonotype
    };
    Ok(ForcingReport {
        solutions,
        mixed_eliminations,
        verdict,
        explanation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn census_on_fan_is_empty() {
        let t = families::ka(7, 11, 13).unwrap().tuple;
        let p = Patch::new_fan(&t, 0, false).unwrap();
        let census = incidence_census(&p, 3, 5);
        // the fan has no fully interior face (every face touches the boundary)
        assert_eq!(census.interior_faces, 0);
        assert!(census.edge_incidences.is_empty());
        assert!(census.vertex_only_incidences.is_empty());
    }

    #[test]
    fn contradiction_for_ka_7_11_13() {
        let t = families::ka(7, 11, 13).unwrap().tuple;
        let v = periodicity_contradiction(&t).unwrap();
        assert_eq!(v.verdict, Verdict::Contradiction);
        assert_eq!(v.triangle_profile, (3, 15));
        assert_eq!(v.pentagon_profile, (1, 3));
        assert_eq!(v.ratio_triangle_side, (1, 5));
        assert_eq!(v.ratio_pentagon_side, (1, 3));
        assert_eq!(v.triangle_words, vec![vec![5, 5, 5]]);
        assert!(v.pentagon_words.iter().all(|w| w.contains(&3)));
    }

    #[test]
    fn contradiction_is_parameter_independent() {
        let t = families::ka(6, 8, 9).unwrap().tuple;
        let v = periodicity_contradiction(&t).unwrap();
        assert_eq!(v.verdict, Verdict::Contradiction);
    }

    #[test]
    fn non_family_types_are_guarded() {
        let t: CyclicType = "[4,5,4,5]".parse().unwrap();
        assert!(matches!(
            periodicity_contradiction(&t),
            Err(AperiodicityError::NotKaFamily(_))
        ));
    }

    #[test]
    fn forcing_for_kn_prime_1() {
        let t = families::kn_prime(1).unwrap().tuple;
        let r = monotile_forcing(&t).unwrap();
        assert_eq!(r.verdict, ForcingVerdict::AllVerticesMonotype);
        // the two-doubled case must actually occur and be eliminated
        assert!(!r.mixed_eliminations.is_empty());
        for e in &r.mixed_eliminations {
            assert!(e.inradius_gap > 1e-9);
            assert!(!e.has_three_consecutive_evens);
        }
    }

    #[test]
    fn forcing_for_ka_prime_parameters() {
        // all-odd-prime entries: reciprocal lemma 1 alone forces monotype
        let t = families::ka(7, 11, 13).unwrap().tuple;
        let r = monotile_forcing(&t).unwrap();
        assert_eq!(r.verdict, ForcingVerdict::AllVerticesMonotype);
        assert!(r.mixed_eliminations.is_empty());
        assert!(r.solutions.iter().all(|s| s.is_monotype));
    }

    #[test]
    fn forcing_unforced_with_three_evens() {
        // [10, 10, 14]: 10 = 2*5, 14 = 2*7, all three entries even and
        // consecutive, so the parity elimination cannot run
        let t = CyclicType::new(vec![10, 10, 14]).unwrap();
        let r = monotile_forcing(&t).unwrap();
        assert_eq!(r.verdict, ForcingVerdict::Unforced);
    }

    #[test]
    fn forcing_rejects_non_prime_structure() {
        let t = CyclicType::new(vec![9, 5, 7]).unwrap(); // 9 odd, not prime
        assert!(matches!(
            monotile_forcing(&t),
            Err(AperiodicityError::NotPrimeStructured)
        ));
    }
}
