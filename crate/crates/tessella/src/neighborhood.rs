//! Bounded-depth enumeration of face neighbourhoods.
//!
//! The object: a central `size`-gon, optionally with a pinned run of
//! consecutive edge-neighbours, plus complete fans around all of its corners.
//! The ring word is the cyclic list of edge-neighbour sizes. Depth 1 accepts
//! a word as soon as the corner fans exist; depth 2 additionally demands that
//! every vertex of every edge-neighbour admits a complete fan (the word's
//! first ring must itself be completable). Depth 2 is where the odd-face
//! blocking of the constructed families becomes visible: corner fans alone
//! never see it.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::cyclic::{canonical_entries, CyclicType};
use crate::patch::{complete_vertices, FanCompletion, Fid, Patch, PatchError, Vid};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NeighborhoodError {
    #[error("size {0} does not occur in the type")]
    SizeAbsent(u32),
    #[error("pinned context longer than the face has edges")]
    PinTooLong,
    #[error("pinned context could not be placed: {0}")]
    PinRejected(String),
    #[error("search budget exhausted before the enumeration was complete")]
    BudgetExhausted,
    #[error(transparent)]
    Patch(#[from] PatchError),
}

/// How much consistency a word must survive to be reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Depth {
    /// Complete fans at the central face's corners.
    CornersOnly,
    /// Corner fans, plus complete fans at every vertex of every
    /// edge-neighbour of the central face.
    Ring,
    /// Like `Ring`, extended outwards: after the edge-neighbours, complete
    /// the vertices of every face edge-adjacent to them too, and so on,
    /// `1 + n` rings in total.
    RingPlus(u32),
}

/// Whether to report ring words only or also a witness of the corner fans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Edge,
    Full,
}

/// One admissible neighbourhood of the central face.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct NeighborhoodWord {
    pub central: u32,
    /// Edge-neighbour sizes in cyclic order, canonicalized up to
    /// rotation/reflection.
    pub ring: Vec<u32>,
    /// For `Mode::Full`: the corner fan words of one witness realization, in
    /// the ring's original orientation.
    pub corner_fans: Option<Vec<Vec<u32>>>,
}

impl NeighborhoodWord {
    pub fn contains(&self, size: u32) -> bool {
        self.ring.contains(&size)
    }
}

/// Exhaustive neighbourhood enumeration for an unconstrained central face.
pub fn enumerate_face_neighborhoods(
    t: &CyclicType,
    size: u32,
    mode: Mode,
    depth: Depth,
    budget: u64,
) -> Result<Vec<NeighborhoodWord>, NeighborhoodError> {
    neighborhood_extensions(t, size, &[], mode, depth, budget)
}

/// Exhaustive enumeration of the neighbourhoods of a `central`-gon whose
/// first `pinned.len()` edge-neighbours (in consecutive cyclic order) are
/// already fixed. Every reported word extends the pinned run.
pub fn neighborhood_extensions(
    t: &CyclicType,
    central: u32,
    pinned: &[u32],
    mode: Mode,
    depth: Depth,
    budget: u64,
) -> Result<Vec<NeighborhoodWord>, NeighborhoodError> {
    if !t.entries().contains(&central) {
        return Err(NeighborhoodError::SizeAbsent(central));
    }
    if pinned.len() > central as usize {
        return Err(NeighborhoodError::PinTooLong);
    }
    let mut p = Patch::face_seed(t, central)?;
    let seed_face: Fid = 0;

    // pin the context faces along consecutive edges of the central face,
    // each absorbing exactly its one edge
    for (j, &s) in pinned.iter().enumerate() {
        if !t.entries().contains(&s) {
            return Err(NeighborhoodError::SizeAbsent(s));
        }
        let run = [seed_edge_outer(&p, j)];
        p.place_face(s, &run, 2)
            .map_err(|e| NeighborhoodError::PinRejected(e.to_string()))?;
    }

    let corners: Vec<Vid> = (0..central).collect();
    let mut nodes = budget;
    let mut found: BTreeMap<Vec<u32>, NeighborhoodWord> = BTreeMap::new();
    enumerate_corner_branches(
        &mut p,
        &corners,
        seed_face,
        mode,
        depth,
        &mut nodes,
        &mut found,
    )?;
    Ok(found.into_values().collect())
}

/// Outer half-edge lying over the `j`-th edge of the seed face (the edge from
/// seed vertex `j` to `j+1`): seed hedge pairs were built in edge order.
fn seed_edge_outer(p: &Patch, j: usize) -> u32 {
    let h = (2 * j + 1) as u32;
    debug_assert_eq!(p.face_of(h), crate::patch::OUTER);
    h
}

fn enumerate_corner_branches(
    p: &mut Patch,
    corners: &[Vid],
    seed_face: Fid,
    mode: Mode,
    depth: Depth,
    nodes: &mut u64,
    found: &mut BTreeMap<Vec<u32>, NeighborhoodWord>,
) -> Result<(), NeighborhoodError> {
    // most-constrained open corner
    let mut best: Option<(usize, Vec<FanCompletion>)> = None;
    for &v in corners {
        if p.is_interior_vertex(v) {
            continue;
        }
        let options = p.fan_completions(v);
        let n = options.len();
        if n == 0 {
            return Ok(()); // this branch is blocked
        }
        if best.as_ref().map_or(true, |(bn, _)| n < *bn) {
            best = Some((n, options));
            if n == 1 {
                break;
            }
        }
    }
    let Some((_, options)) = best else {
        // all corners interior: read the ring word
        let ring: Vec<u32> = ring_word(p, seed_face);
        let key = canonical_entries(&ring);
        if found.contains_key(&key) {
            return Ok(());
        }
        let realizable = match depth {
            Depth::CornersOnly => true,
            Depth::Ring => ring_completable(p, seed_face, 0, nodes)?,
            Depth::RingPlus(extra) => ring_completable(p, seed_face, extra, nodes)?,
        };
        if realizable {
            let corner_fans = matches!(mode, Mode::Full).then(|| {
                (0..p.face_size(seed_face))
                    .map(|v| p.corner_word(v as Vid))
                    .collect()
            });
            found.insert(
                key.clone(),
                NeighborhoodWord {
                    central: p.face_size(seed_face),
                    ring: key,
                    corner_fans,
                },
            );
        }
        return Ok(());
    };
    for c in &options {
        if *nodes == 0 {
            return Err(NeighborhoodError::BudgetExhausted);
        }
        *nodes -= 1;
        let undo = p
            .apply_completion(c)
            .expect("freshly enumerated completion must apply");
        let res = enumerate_corner_branches(p, corners, seed_face, mode, depth, nodes, found);
        p.undo_completion(undo);
        res?;
    }
    Ok(())
}

/// Sizes of the faces across each edge of `f`, in cycle order. Every corner
/// of `f` must already be interior.
fn ring_word(p: &Patch, f: Fid) -> Vec<u32> {
    p.face_neighbors(f)
        .into_iter()
        .map(|g| p.face_size(g))
        .collect()
}

/// One admissible in-situ extension: the ring word plus a patch realizing it.
#[derive(Debug, Clone)]
pub struct InSituExtension {
    pub word: NeighborhoodWord,
    pub witness: Patch,
}

/// Enumerates the full edge-neighbourhoods of face `c` achievable inside the
/// given patch: all distinct ring words over every way of completing `c`'s
/// corners, each surviving a ring-completability check at the given depth.
/// The surrounding patch supplies the real forced context (pinned corner
/// fans, earlier chain faces), which a bare seed cannot.
pub fn face_extensions_in_patch(
    p: &Patch,
    c: Fid,
    depth: Depth,
    budget: u64,
) -> Result<Vec<InSituExtension>, NeighborhoodError> {
    let mut scratch = p.clone();
    let corners: Vec<Vid> = scratch.face_vertices(c);
    let mut nodes = budget;
    let mut found: BTreeMap<Vec<u32>, InSituExtension> = BTreeMap::new();
    in_situ_branches(&mut scratch, &corners, c, depth, &mut nodes, &mut found)?;
    Ok(found.into_values().collect())
}

fn in_situ_branches(
    p: &mut Patch,
    corners: &[Vid],
    seed_face: Fid,
    depth: Depth,
    nodes: &mut u64,
    found: &mut BTreeMap<Vec<u32>, InSituExtension>,
) -> Result<(), NeighborhoodError> {
    let mut best: Option<(usize, Vec<FanCompletion>)> = None;
    for &v in corners {
        if p.is_interior_vertex(v) {
            continue;
        }
        let options = p.fan_completions(v);
        let n = options.len();
        if n == 0 {
            return Ok(());
        }
        if best.as_ref().map_or(true, |(bn, _)| n < *bn) {
            best = Some((n, options));
            if n == 1 {
                break;
            }
        }
    }
    let Some((_, options)) = best else {
        let ring = ring_word(p, seed_face);
        let key = canonical_entries(&ring);
        if found.contains_key(&key) {
            return Ok(());
        }
        let realizable = match depth {
            Depth::CornersOnly => true,
            Depth::Ring => ring_completable(p, seed_face, 0, nodes)?,
            Depth::RingPlus(extra) => ring_completable(p, seed_face, extra, nodes)?,
        };
        if realizable {
            found.insert(
                key.clone(),
                InSituExtension {
                    word: NeighborhoodWord {
                        central: p.face_size(seed_face),
                        ring: key,
                        corner_fans: None,
                    },
                    witness: p.clone(),
                },
            );
        }
        return Ok(());
    };
    for c in &options {
        if *nodes == 0 {
            return Err(NeighborhoodError::BudgetExhausted);
        }
        *nodes -= 1;
        let undo = p
            .apply_completion(c)
            .expect("freshly enumerated completion must apply");
        let res = in_situ_branches(p, corners, seed_face, depth, nodes, found);
        p.undo_completion(undo);
        res?;
    }
    Ok(())
}

/// Existence check: can the vertices of the seed's edge-neighbours (and, for
/// `extra > 0`, successive further rings of edge-adjacent faces) all be made
/// interior? Runs on a scratch copy; the input patch is untouched.
fn ring_completable(
    p: &Patch,
    seed_face: Fid,
    extra: u32,
    nodes: &mut u64,
) -> Result<bool, NeighborhoodError> {
    let mut scratch = p.clone();
    let mut frontier: Vec<Fid> = vec![seed_face];
    let mut known: std::collections::HashSet<Fid> = frontier.iter().copied().collect();
    for _round in 0..=extra {
        let mut next_frontier: Vec<Fid> = Vec::new();
        for &f in &frontier {
            for g in scratch.face_neighbors(f) {
                if known.insert(g) {
                    next_frontier.push(g);
                }
            }
        }
        let mut targets: Vec<Vid> = next_frontier
            .iter()
            .flat_map(|&f| scratch.face_vertices(f))
            .collect();
        targets.sort_unstable();
        targets.dedup();
        let before = *nodes;
        if !complete_vertices(&mut scratch, &targets, nodes) {
            if *nodes == 0 && before > 0 {
                return Err(NeighborhoodError::BudgetExhausted);
            }
            return Ok(false);
        }
        frontier = next_frontier;
    }
    Ok(true)
}
