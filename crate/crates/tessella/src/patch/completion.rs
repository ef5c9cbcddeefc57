//! Fan completion: enumerating and applying the ways a boundary vertex's
//! corner word extends to the full cyclic type.
//!
//! The primitive is a whole-face placement absorbing a nonempty run of
//! consecutive boundary edges. During a completion at `v`, every inserted
//! face's run ends at the current incoming boundary edge of `v`; runs may
//! extend backwards along the boundary (gluing onto previously completed
//! neighbours), and the final face additionally wraps through `v`, absorbing
//! its outgoing edge and optionally more edges beyond it. A vertex swallowed
//! in the middle of a run becomes interior and must close to the type
//! exactly; run endpoints must keep extendable words.

use super::{Fid, Hedge, Hid, Patch, PatchError, VertexRec, Vid, OUTER};
use crate::cyclic::Orientation;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PlaceError {
    #[error("run length {0} out of range for a {1}-gon")]
    BadRunLength(usize, u32),
    #[error("vertex {0} would close with a word not matching the type")]
    IntermediateClosure(Vid),
    #[error("endpoint {0} word would become non-extendable")]
    EndpointWord(Vid),
    #[error("run is not a proper arc of the boundary")]
    NotAnArc,
}

/// Gluing choice for one inserted face: how many extra boundary edges its run
/// absorbs beyond the mandatory ones, backwards and (for the last face only)
/// forwards past the vertex's outgoing edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RunSpec {
    pub back: u32,
    pub fwd: u32,
}

/// One way to complete the fan at a boundary vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanCompletion {
    pub vertex: Vid,
    pub orientation: Orientation,
    pub offset: usize,
    /// Sizes inserted into the gap, in clockwise rotational order.
    pub inserted: Vec<u32>,
    /// One gluing spec per inserted face (fwd is nonzero only on the last).
    pub runs: Vec<RunSpec>,
    pub(crate) generation: u64,
}

/// Undo record for a single face placement. Placements must be undone in
/// strict LIFO order.
#[derive(Debug)]
pub(crate) struct PlaceUndo {
    run: Vec<Hid>,
    hedge_start: usize,
    vert_start: usize,
    next_overrides: Vec<(Hid, Hid)>,
    out_overrides: Vec<(Vid, Hid)>,
    outer_len_before: usize,
    /// Vertices that became interior by this placement.
    closed: Vec<Vid>,
    /// Run endpoints (still boundary afterwards).
    endpoints: (Vid, Vid),
}

/// Undo record for a whole applied completion.
#[derive(Debug)]
pub struct CompletionUndo {
    places: Vec<PlaceUndo>,
    generation_before: u64,
}

impl CompletionUndo {
    /// Vertices made interior by the completion.
    pub fn closed_vertices(&self) -> Vec<Vid> {
        let mut out: Vec<Vid> = self
            .places
            .iter()
            .flat_map(|p| p.closed.iter().copied())
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Every vertex whose record or neighbourhood the completion altered:
    /// closed vertices, run endpoints, and the fresh chain vertices.
    pub fn touched_vertices(&self) -> Vec<Vid> {
        let mut out: Vec<Vid> = Vec::new();
        for p in &self.places {
            out.extend(p.closed.iter().copied());
            out.push(p.endpoints.0);
            out.push(p.endpoints.1);
            out.extend(p.out_overrides.iter().map(|&(v, _)| v));
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

impl Patch {
    /// Places a `size`-gon over the consecutive outer half-edge run `run`
    /// (each `run[i+1] == next(run[i])`), creating `size - run.len()` fresh
    /// edges. Checks everything before mutating.
    pub(crate) fn place_face(
        &mut self,
        size: u32,
        run: &[Hid],
        layer: u32,
    ) -> Result<PlaceUndo, PlaceError> {
        let s = run.len();
        if s == 0 || s > (size as usize - 1) || s > self.outer_len - 1 {
            return Err(PlaceError::BadRunLength(s, size));
        }
        debug_assert!(run.iter().all(|&h| self.face_of(h) == OUTER));
        debug_assert!((0..s - 1).all(|i| self.next(run[i]) == run[i + 1]));

        let a_vertex = self.origin_of(run[0]);
        let b_vertex = self.target_of(run[s - 1]);
        if a_vertex == b_vertex {
            return Err(PlaceError::NotAnArc);
        }

        // intermediate vertices close exactly to the type
        for &h in &run[1..] {
            let x = self.origin_of(h);
            let mut word = self.corner_word(x);
            word.push(size);
            if !self.ctype.matches_cyclically(&word) {
                return Err(PlaceError::IntermediateClosure(x));
            }
        }
        // endpoints stay boundary and must keep extendable words
        {
            let mut word_a = self.corner_word(a_vertex);
            word_a.insert(0, size);
            if !self.ctype.is_extendable_subword(&word_a) {
                return Err(PlaceError::EndpointWord(a_vertex));
            }
            let mut word_b = self.corner_word(b_vertex);
            word_b.push(size);
            if !self.ctype.is_extendable_subword(&word_b) {
                return Err(PlaceError::EndpointWord(b_vertex));
            }
        }

        // --- mutate ---
        let before_run = self
            .incoming_outer(a_vertex)
            .expect("boundary endpoint has an incoming outer hedge");
        let after_run = self.next(run[s - 1]);

        let face_id = self.faces.len() as Fid;
        self.faces.push(super::FaceRec {
            size,
            layer,
            anchor: run[0],
        });

        let mut undo = PlaceUndo {
            run: run.to_vec(),
            hedge_start: self.hedges.len(),
            vert_start: self.verts.len(),
            next_overrides: Vec::new(),
            out_overrides: Vec::new(),
            outer_len_before: self.outer_len,
            closed: run[1..].iter().map(|&h| self.origin_of(h)).collect(),
            endpoints: (a_vertex, b_vertex),
        };

        for &h in run {
            self.hedges[h as usize].face = face_id;
        }

        // fresh chain from B back to A on the outside: size - s new edges
        let fresh = (size as usize) - s;
        let mut new_vs: Vec<Vid> = Vec::with_capacity(fresh.saturating_sub(1));
        for _ in 0..fresh - 1 {
            let v = self.verts.len() as Vid;
            self.verts.push(VertexRec { out: 0, layer });
            new_vs.push(v);
        }
        let base = self.hedges.len() as Hid;
        for j in 0..fresh {
            let origin_interior = if j == 0 { b_vertex } else { new_vs[j - 1] };
            let origin_outer = if j == fresh - 1 {
                a_vertex
            } else {
                new_vs[j]
            };
            self.hedges.push(Hedge {
                next: 0,
                origin: origin_interior,
                face: face_id,
            });
            self.hedges.push(Hedge {
                next: 0,
                origin: origin_outer,
                face: OUTER,
            });
        }
        let n = |j: usize| -> Hid { base + 2 * j as Hid };
        let t = |j: usize| -> Hid { base + 2 * j as Hid + 1 };

        // face cycle
        let old = self.hedges[run[s - 1] as usize].next;
        self.hedges[run[s - 1] as usize].next = n(0);
        undo.next_overrides.push((run[s - 1], old));
        for j in 0..fresh - 1 {
            self.hedges[n(j) as usize].next = n(j + 1);
        }
        self.hedges[n(fresh - 1) as usize].next = run[0];
        // outer cycle: before_run -> t(last) -> ... -> t(0) -> after_run
        for j in (1..fresh).rev() {
            self.hedges[t(j) as usize].next = t(j - 1);
        }
        self.hedges[t(0) as usize].next = after_run;
        let old = self.hedges[before_run as usize].next;
        self.hedges[before_run as usize].next = t(fresh - 1);
        undo.next_overrides.push((before_run, old));

        // vertex outs
        for &h in &run[1..] {
            let x = self.origin_of(h);
            undo.out_overrides.push((x, self.verts[x as usize].out));
            self.verts[x as usize].out = h;
        }
        undo
            .out_overrides
            .push((a_vertex, self.verts[a_vertex as usize].out));
        self.verts[a_vertex as usize].out = t(fresh - 1);
        for (j, &v) in new_vs.iter().enumerate() {
            self.verts[v as usize].out = t(j);
        }

        self.outer_len = self.outer_len - s + fresh;
        Ok(undo)
    }

    pub(crate) fn undo_place(&mut self, undo: PlaceUndo) {
        debug_assert_eq!(
            self.hedges.len(),
            undo.hedge_start + 2 * (self.faces.last().unwrap().size as usize - undo.run.len())
        );
        for &(v, out) in undo.out_overrides.iter().rev() {
            self.verts[v as usize].out = out;
        }
        for &(h, nx) in undo.next_overrides.iter().rev() {
            self.hedges[h as usize].next = nx;
        }
        for &h in &undo.run {
            self.hedges[h as usize].face = OUTER;
        }
        self.hedges.truncate(undo.hedge_start);
        self.verts.truncate(undo.vert_start);
        self.faces.pop();
        self.outer_len = undo.outer_len_before;
    }

    /// Walks `steps` outer half-edges backwards from `h` (against the orbit),
    /// returning the run ending at `h`, oldest first. `None` if the walk
    /// would wrap onto `h` itself.
    pub(crate) fn outer_run_ending_at(&self, h: Hid, steps: usize) -> Option<Vec<Hid>> {
        let mut run = vec![h];
        let mut cur = h;
        for _ in 0..steps {
            let prev = self.incoming_outer(self.origin_of(cur))?;
            if prev == h {
                return None; // wrapped the whole boundary
            }
            run.push(prev);
            cur = prev;
        }
        run.reverse();
        Some(run)
    }

    /// Extends `steps` outer half-edges forward from `h` (with the orbit),
    /// returning `[h, ...]`.
    pub(crate) fn outer_run_starting_at(&self, h: Hid, steps: usize) -> Option<Vec<Hid>> {
        let mut run = vec![h];
        let mut cur = h;
        for _ in 0..steps {
            let nxt = self.next(cur);
            if nxt == h {
                return None;
            }
            run.push(nxt);
            cur = nxt;
        }
        Some(run)
    }

    /// Complete, duplicate-free list of fan completions of boundary vertex
    /// `v`, ordered by (orientation, match offset, gluing depths). The patch
    /// is restored to its original state before returning.
    pub fn fan_completions(&mut self, v: Vid) -> Vec<FanCompletion> {
        let Some(_) = self.outgoing_outer(v) else {
            return Vec::new();
        };
        let word = self.corner_word(v);
        let d = self.ctype.degree();
        let j = word.len();
        if j >= d {
            return Vec::new(); // no room for at least one inserted face
        }
        let matches = self.ctype.subword_matches(&word);
        let layer = self.completed_layers + 1;
        let mut out: Vec<FanCompletion> = Vec::new();
        let mut seen: std::collections::HashSet<(Vec<u32>, Vec<RunSpec>)> =
            std::collections::HashSet::new();

        for m in matches {
            let full = self.ctype.word_at(m);
            let missing: Vec<u32> = full[j..].to_vec();
            let mut places: Vec<PlaceUndo> = Vec::new();
            let mut runspecs: Vec<RunSpec> = Vec::new();
            self.complete_rec(
                v,
                &missing,
                0,
                layer,
                m.orientation,
                m.offset,
                &mut places,
                &mut runspecs,
                &mut seen,
                &mut out,
            );
            debug_assert!(places.is_empty());
        }
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn complete_rec(
        &mut self,
        v: Vid,
        missing: &[u32],
        i: usize,
        layer: u32,
        orientation: Orientation,
        offset: usize,
        places: &mut Vec<PlaceUndo>,
        runspecs: &mut Vec<RunSpec>,
        seen: &mut std::collections::HashSet<(Vec<u32>, Vec<RunSpec>)>,
        out: &mut Vec<FanCompletion>,
    ) {
        let size = missing[i];
        let last = i == missing.len() - 1;
        let e_in = self
            .incoming_outer(v)
            .expect("completion target must stay boundary mid-way");
        if !last {
            let max_back = (size as usize - 2).min(self.outer_len.saturating_sub(2));
            for back in 0..=max_back {
                let Some(run) = self.outer_run_ending_at(e_in, back) else {
                    break;
                };
                match self.place_face(size, &run, layer) {
                    Ok(undo) => {
                        places.push(undo);
                        runspecs.push(RunSpec {
                            back: back as u32,
                            fwd: 0,
                        });
                        self.complete_rec(
                            v, missing, i + 1, layer, orientation, offset, places, runspecs,
                            seen, out,
                        );
                        runspecs.pop();
                        let undo = places.pop().unwrap();
                        self.undo_place(undo);
                    }
                    Err(PlaceError::IntermediateClosure(_)) => break,
                    Err(_) => continue,
                }
            }
        } else {
            let e_out = self
                .outgoing_outer(v)
                .expect("completion target must stay boundary mid-way");
            debug_assert_eq!(self.next(e_in), e_out);
            let cap = (size as usize - 3).min(self.outer_len.saturating_sub(3));
            'back: for back in 0..=cap {
                let Some(prefix) = self.outer_run_ending_at(e_in, back) else {
                    break;
                };
                for fwd in 0..=cap.saturating_sub(back) {
                    let Some(suffix) = self.outer_run_starting_at(e_out, fwd) else {
                        break;
                    };
                    let mut run = prefix.clone();
                    run.extend_from_slice(&suffix);
                    match self.place_face(size, &run, layer) {
                        Ok(undo) => {
                            runspecs.push(RunSpec {
                                back: back as u32,
                                fwd: fwd as u32,
                            });
                            let key = (missing.to_vec(), runspecs.clone());
                            if seen.insert(key) {
                                // assemble the full inserted list from scratch
                                out.push(FanCompletion {
                                    vertex: v,
                                    orientation,
                                    offset,
                                    inserted: missing.to_vec(),
                                    runs: runspecs.clone(),
                                    generation: self.generation,
                                });
                            }
                            runspecs.pop();
                            self.undo_place(undo);
                        }
                        Err(PlaceError::IntermediateClosure(x)) => {
                            if fwd == 0 {
                                // the failing vertex is in the mandatory core
                                // or prefix; growing either direction keeps it
                                if x != v || back == 0 {
                                    // v itself failing means the match's full
                                    // word is wrong for this vertex: hopeless
                                    if x == v {
                                        return;
                                    }
                                    break 'back;
                                }
                                break;
                            }
                            break;
                        }
                        Err(_) => continue,
                    }
                }
            }
        }
    }

    /// Applies a completion previously enumerated on this exact patch state.
    pub fn apply_completion(&mut self, c: &FanCompletion) -> Result<CompletionUndo, PatchError> {
        if c.generation != self.generation {
            return Err(PatchError::StaleCompletion);
        }
        let mut undo = CompletionUndo {
            places: Vec::with_capacity(c.inserted.len()),
            generation_before: self.generation,
        };
        let layer = self.completed_layers + 1;
        for (idx, (&size, spec)) in c.inserted.iter().zip(&c.runs).enumerate() {
            let last = idx == c.inserted.len() - 1;
            let result = (|| {
                let e_in = self
                    .incoming_outer(c.vertex)
                    .ok_or_else(|| PatchError::Internal("vertex closed early".into()))?;
                let run = if last {
                    let e_out = self
                        .outgoing_outer(c.vertex)
                        .ok_or_else(|| PatchError::Internal("vertex closed early".into()))?;
                    let mut run = self
                        .outer_run_ending_at(e_in, spec.back as usize)
                        .ok_or_else(|| PatchError::Internal("run walked off".into()))?;
                    let suffix = self
                        .outer_run_starting_at(e_out, spec.fwd as usize)
                        .ok_or_else(|| PatchError::Internal("run walked off".into()))?;
                    run.extend_from_slice(&suffix);
                    run
                } else {
                    self.outer_run_ending_at(e_in, spec.back as usize)
                        .ok_or_else(|| PatchError::Internal("run walked off".into()))?
                };
                self.place_face(size, &run, layer)
                    .map_err(|e| PatchError::Internal(format!("replay failed: {e}")))
            })();
            match result {
                Ok(p) => undo.places.push(p),
                Err(e) => {
                    // roll back what was placed
                    while let Some(p) = undo.places.pop() {
                        self.undo_place(p);
                    }
                    return Err(e);
                }
            }
        }
        if !self.is_interior_vertex(c.vertex) {
            while let Some(p) = undo.places.pop() {
                self.undo_place(p);
            }
            return Err(PatchError::Internal(
                "completion did not close its vertex".into(),
            ));
        }
        self.generation += 1;
        Ok(undo)
    }

    pub fn undo_completion(&mut self, undo: CompletionUndo) {
        let CompletionUndo {
            mut places,
            generation_before,
        } = undo;
        while let Some(p) = places.pop() {
            self.undo_place(p);
        }
        self.generation = generation_before;
    }

    /// Clone-and-apply convenience for callers that want value semantics.
    pub fn with_completion(&self, c: &FanCompletion) -> Result<Patch, PatchError> {
        let mut p = self.clone();
        p.apply_completion(c)?;
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::CyclicType;

    fn ty(entries: &[u32]) -> CyclicType {
        CyclicType::new(entries.to_vec()).unwrap()
    }

    fn snapshot(p: &Patch) -> (usize, usize, usize, usize, u64) {
        (
            p.hedges.len(),
            p.verts.len(),
            p.faces.len(),
            p.outer_len,
            p.generation,
        )
    }

    #[test]
    fn enumeration_restores_state() {
        let mut p = Patch::new_fan(&ty(&[4, 5, 4, 5]), 0, false).unwrap();
        let before = snapshot(&p);
        for v in p.boundary_vertices_cw() {
            let _ = p.fan_completions(v);
            assert_eq!(snapshot(&p), before);
        }
        assert!(p.validate().is_empty());
    }

    #[test]
    fn completions_close_their_vertex() {
        let mut p = Patch::new_fan(&ty(&[4, 5, 4, 5]), 0, false).unwrap();
        let v = p.boundary_vertices_cw()[0];
        let options = p.fan_completions(v);
        assert!(!options.is_empty());
        for c in &options {
            let q = p.with_completion(c).unwrap();
            assert!(q.is_interior_vertex(v));
            assert!(q.validate().is_empty(), "{:?}", q.validate());
            assert_eq!(q.euler_characteristic(), 1);
            let w = q.corner_word(v);
            assert!(q.ctype().matches_cyclically(&w));
        }
    }

    #[test]
    fn full_words_are_rotations_of_the_type() {
        let mut p = Patch::new_fan(&ty(&[4, 5, 4, 5]), 0, false).unwrap();
        for v in p.boundary_vertices_cw() {
            let word = p.corner_word(v);
            for c in p.fan_completions(v) {
                let mut full = word.clone();
                full.extend_from_slice(&c.inserted);
                assert!(p.ctype().matches_cyclically(&full));
            }
        }
    }

    #[test]
    fn apply_then_undo_is_identity() {
        let mut p = Patch::new_fan(&ty(&[4, 5, 4, 5]), 0, false).unwrap();
        let before = snapshot(&p);
        let v = p.boundary_vertices_cw()[3];
        let options = p.fan_completions(v);
        for c in options {
            let undo = p.apply_completion(&c).unwrap();
            assert!(p.is_interior_vertex(v));
            p.undo_completion(undo);
            assert_eq!(snapshot(&p), before);
            assert!(p.validate().is_empty());
        }
    }

    #[test]
    fn stale_completion_is_refused() {
        let mut p = Patch::new_fan(&ty(&[4, 5, 4, 5]), 0, false).unwrap();
        let b = p.boundary_vertices_cw();
        let c0 = p.fan_completions(b[0])[0].clone();
        let c1 = p.fan_completions(b[5])[0].clone();
        p.apply_completion(&c0).unwrap();
        assert!(matches!(
            p.apply_completion(&c1),
            Err(PatchError::StaleCompletion)
        ));
    }

    #[test]
    fn interior_vertex_has_no_completions() {
        let mut p = Patch::new_fan(&ty(&[4, 5, 4, 5]), 0, false).unwrap();
        assert!(p.fan_completions(0).is_empty());
    }

    #[test]
    fn gluing_depths_appear_when_closing_a_ring() {
        // closing layer 1 of [7,7,7]: if every vertex inserted its faces
        // without sharing, the snapshot would demand 3*1 + 12*2 = 27 new
        // heptagons; gluing onto previously completed neighbours must yield
        // strictly fewer
        let mut p = Patch::new_fan(&ty(&[7, 7, 7]), 0, false).unwrap();
        let mut budget = u64::MAX;
        assert!(super::super::layer::close_layer_backtracking(
            &mut p,
            &mut budget
        ));
        let layer2 = p.all_faces().filter(|&f| p.face_layer(f) == 2).count();
        assert!(layer2 < 27, "layer 2 has {layer2} faces, sharing expected");
        assert!(layer2 > 3);
        assert!(p.validate().is_empty());
    }
}
