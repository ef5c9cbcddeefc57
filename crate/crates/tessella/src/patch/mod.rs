//! Combinatorial half-edge maps of simply connected tiled patches.
//!
//! Conventions, fixed once and used everywhere:
//!
//! - interior face cycles run counterclockwise (the face lies on the left of
//!   each of its half-edges); the single outer orbit runs clockwise around
//!   the patch, so the unbounded region is on its left;
//! - half-edges are created in twin pairs, `twin(h) = h ^ 1`;
//! - rotating clockwise around a vertex is `rot_cw(h) = next(twin(h))`;
//! - the corner word of a boundary vertex is read clockwise, starting at the
//!   face bordering its outgoing boundary edge and ending at the face
//!   bordering its incoming one; the gap sits after the last letter.
//!
//! Faces are placed whole; a placement may absorb a run of consecutive
//! boundary edges (gluing), which is how faces get shared with previously
//! completed neighbours. Partially built faces never exist.

mod canon;
#[cfg(test)]
mod oracle_tests;
mod completion;
mod layer;

pub use canon::canonical_code;
pub use completion::{CompletionUndo, FanCompletion, PlaceError, RunSpec};
pub use layer::{
    close_layer, close_layer_backtracking, complete_vertices, complete_vertices_with,
    AgendaOutcome, DeadEnd, FirstChoice, LayerChooser, UndoPolicy,
};

use crate::cyclic::{CyclicType, GeometryClass};
use thiserror::Error;

pub type Hid = u32;
pub type Vid = u32;
pub type Fid = u32;

/// Face id marker for the unbounded region.
pub const OUTER: Fid = u32::MAX;

#[derive(Debug, Clone)]
pub(crate) struct Hedge {
    pub next: Hid,
    pub origin: Vid,
    pub face: Fid,
}

#[derive(Debug, Clone)]
pub(crate) struct VertexRec {
    /// For boundary vertices, the outgoing outer half-edge; otherwise any
    /// outgoing half-edge.
    pub out: Hid,
    pub layer: u32,
}

#[derive(Debug, Clone)]
pub(crate) struct FaceRec {
    pub size: u32,
    pub layer: u32,
    pub anchor: Hid,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PatchError {
    #[error("type {0} is not hyperbolic")]
    NotHyperbolic(String),
    #[error("vertex {0} is not a boundary vertex")]
    NotBoundary(Vid),
    #[error("completion is stale: patch has changed since it was enumerated")]
    StaleCompletion,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// A violation found by [`Patch::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation(pub String);

#[derive(Debug, Clone)]
pub struct Patch {
    pub(crate) ctype: CyclicType,
    pub(crate) hedges: Vec<Hedge>,
    pub(crate) verts: Vec<VertexRec>,
    pub(crate) faces: Vec<FaceRec>,
    pub(crate) origin: Option<Vid>,
    pub(crate) completed_layers: u32,
    pub(crate) outer_len: usize,
    /// Bumped by every mutation; stamps completions so stale ones are refused.
    pub(crate) generation: u64,
}

impl Patch {
    /// A patch with no faces at all. Accepted as a degenerate by the I/O and
    /// rendering paths; growth operations require a fan.
    pub fn empty(ctype: CyclicType) -> Patch {
        Patch {
            ctype,
            hedges: Vec::new(),
            verts: Vec::new(),
            faces: Vec::new(),
            origin: None,
            completed_layers: 0,
            outer_len: 0,
            generation: 0,
        }
    }

    /// The fan: all `d` faces of the type arranged around one interior
    /// vertex, forming the first layer. `rotation` and `mirror` choose which
    /// rotation/orientation of the tuple is laid out; the exhaustive search
    /// fixes both to zero (any other fan is isomorphic by relabeling).
    pub fn new_fan(t: &CyclicType, rotation: usize, mirror: bool) -> Result<Patch, PatchError> {
        if t.classify() != GeometryClass::Hyperbolic {
            return Err(PatchError::NotHyperbolic(t.to_string()));
        }
        let d = t.degree();
        let mut sizes: Vec<u32> = (0..d).map(|j| t.entries()[(rotation + j) % d]).collect();
        if mirror {
            sizes.reverse();
        }

        let mut p = Patch::empty(t.clone());
        p.verts.push(VertexRec { out: 0, layer: 0 }); // origin, fixed below
        let origin: Vid = 0;
        p.origin = Some(origin);

        // spoke-end vertices a_0..a_{d-1}
        for _ in 0..d {
            p.verts.push(VertexRec { out: 0, layer: 1 });
        }
        let a = |i: usize| -> Vid { 1 + (i % d) as Vid };

        // spoke hedge pairs: pair i = (o -> a_i, a_i -> o)
        for i in 0..d {
            p.hedges.push(Hedge {
                next: 0,
                origin,
                face: i as Fid,
            });
            p.hedges.push(Hedge {
                next: 0,
                origin: a(i),
                face: ((i + d - 1) % d) as Fid,
            });
        }
        let spoke_out = |i: usize| -> Hid { (2 * (i % d)) as Hid };
        let spoke_in = |i: usize| -> Hid { (2 * (i % d) + 1) as Hid };

        // rim paths, one per face; remember each face's outer sub-chain ends
        let mut first_outer: Vec<Hid> = vec![0; d];
        let mut last_outer: Vec<Hid> = vec![0; d];
        for (i, &k) in sizes.iter().enumerate() {
            let m = (k - 2) as usize; // rim edge count
            let mut path_verts: Vec<Vid> = Vec::with_capacity(m + 1);
            path_verts.push(a(i));
            for _ in 0..(m - 1) {
                p.verts.push(VertexRec { out: 0, layer: 1 });
                path_verts.push((p.verts.len() - 1) as Vid);
            }
            path_verts.push(a(i + 1));

            let mut fwd_ids: Vec<Hid> = Vec::with_capacity(m);
            for e in 0..m {
                let fwd = p.hedges.len() as Hid;
                p.hedges.push(Hedge {
                    next: 0,
                    origin: path_verts[e],
                    face: i as Fid,
                });
                p.hedges.push(Hedge {
                    next: 0,
                    origin: path_verts[e + 1],
                    face: OUTER,
                });
                fwd_ids.push(fwd);
            }
            // face cycle: spoke_out(i) -> rim fwd path -> spoke_in(i+1)
            p.hedges[spoke_out(i) as usize].next = fwd_ids[0];
            for e in 0..m - 1 {
                p.hedges[fwd_ids[e] as usize].next = fwd_ids[e + 1];
            }
            p.hedges[fwd_ids[m - 1] as usize].next = spoke_in(i + 1);
            p.hedges[spoke_in(i + 1) as usize].next = spoke_out(i);
            // outer chain within this face: reversed rim
            for e in (1..m).rev() {
                let back = fwd_ids[e] ^ 1;
                p.hedges[back as usize].next = fwd_ids[e - 1] ^ 1;
            }
            // vertex outs along the rim interior vertices: the outer hedge
            // out of r_e runs backwards along the rim, r_e -> r_{e-1}
            for e in 1..m {
                let v = path_verts[e];
                p.verts[v as usize].out = fwd_ids[e - 1] ^ 1;
            }
            first_outer[i] = fwd_ids[m - 1] ^ 1; // starts at a_{i+1}
            last_outer[i] = fwd_ids[0] ^ 1; // ends at a_i
            p.faces.push(FaceRec {
                size: k,
                layer: 1,
                anchor: spoke_out(i),
            });
        }

        // stitch outer chains across faces: the outer walk is clockwise, so
        // after finishing face i's reversed rim (ending at a_i) it continues
        // with face i-1's reversed rim (starting at a_i).
        for i in 0..d {
            let prev_face = (i + d - 1) % d;
            p.hedges[last_outer[i] as usize].next = first_outer[prev_face];
        }
        // spoke-end outs: outgoing outer at a_{i+1} is first_outer[i]
        for i in 0..d {
            p.verts[a(i + 1) as usize].out = first_outer[i];
        }
        p.verts[origin as usize].out = spoke_out(0);

        p.outer_len = p.hedges.iter().filter(|h| h.face == OUTER).count();
        p.completed_layers = 1;
        p.generation = 1;
        debug_assert!(p.validate().is_empty(), "fresh fan must validate");
        Ok(p)
    }

    /// A patch consisting of a single `size`-gon, the seed for face-centred
    /// neighbourhood probes. All of its vertices are boundary with word
    /// `[size]`.
    pub fn face_seed(t: &CyclicType, size: u32) -> Result<Patch, PatchError> {
        if t.classify() != GeometryClass::Hyperbolic {
            return Err(PatchError::NotHyperbolic(t.to_string()));
        }
        if !t.entries().contains(&size) {
            return Err(PatchError::Internal(format!(
                "size {size} does not occur in {t}"
            )));
        }
        let c = size as usize;
        let mut p = Patch::empty(t.clone());
        for _ in 0..c {
            p.verts.push(VertexRec { out: 0, layer: 1 });
        }
        for i in 0..c {
            let nxt = ((i + 1) % c) as Vid;
            p.hedges.push(Hedge {
                next: 0,
                origin: i as Vid,
                face: 0,
            });
            p.hedges.push(Hedge {
                next: 0,
                origin: nxt,
                face: OUTER,
            });
        }
        let fwd = |i: usize| -> Hid { (2 * (i % c)) as Hid };
        let back = |i: usize| -> Hid { (2 * (i % c) + 1) as Hid };
        for i in 0..c {
            p.hedges[fwd(i) as usize].next = fwd(i + 1);
            p.hedges[back(i + 1) as usize].next = back(i);
        }
        for i in 0..c {
            // outgoing outer hedge at v_i is back(i-1): v_i -> v_{i-1}
            p.verts[i].out = back(i + c - 1);
        }
        p.faces.push(FaceRec {
            size,
            layer: 1,
            anchor: fwd(0),
        });
        p.outer_len = c;
        p.completed_layers = 1;
        p.generation = 1;
        debug_assert!(p.validate().is_empty());
        Ok(p)
    }

    /// Rebuilds a patch from face vertex cycles (counterclockwise). Used by
    /// the document decoder; the caller is expected to run `validate`.
    pub fn from_face_cycles(
        ctype: CyclicType,
        vertex_count: usize,
        origin: Option<Vid>,
        completed_layers: u32,
        cycles: &[(u32, u32, Vec<Vid>)],
    ) -> Result<Patch, String> {
        let mut p = Patch::empty(ctype);
        p.origin = origin;
        p.completed_layers = completed_layers;
        for _ in 0..vertex_count {
            p.verts.push(VertexRec {
                out: 0,
                layer: u32::MAX,
            });
        }
        // allocate hedge pairs, reusing the twin slot when the reverse of a
        // directed edge was already seen
        let mut by_dir: std::collections::HashMap<(Vid, Vid), Hid> =
            std::collections::HashMap::new();
        let mut face_hedges: Vec<Vec<Hid>> = Vec::with_capacity(cycles.len());
        for (fi, (size, layer, cycle)) in cycles.iter().enumerate() {
            let f = fi as Fid;
            let n = cycle.len();
            let mut ids = Vec::with_capacity(n);
            for e in 0..n {
                let u = cycle[e];
                let v = cycle[(e + 1) % n];
                if u as usize >= vertex_count || v as usize >= vertex_count {
                    return Err(format!("face {fi} refers to a missing vertex"));
                }
                if by_dir.contains_key(&(u, v)) {
                    return Err(format!(
                        "directed edge {u}->{v} used twice (face {fi} is not manifold)"
                    ));
                }
                let h = if let Some(&rev) = by_dir.get(&(v, u)) {
                    Self::twin(rev)
                } else {
                    let h = p.hedges.len() as Hid;
                    p.hedges.push(Hedge {
                        next: 0,
                        origin: u,
                        face: OUTER,
                    });
                    p.hedges.push(Hedge {
                        next: 0,
                        origin: v,
                        face: OUTER,
                    });
                    h
                };
                p.hedges[h as usize].origin = u;
                p.hedges[h as usize].face = f;
                by_dir.insert((u, v), h);
                ids.push(h);
            }
            for e in 0..n {
                let h = ids[e];
                p.hedges[h as usize].next = ids[(e + 1) % n];
            }
            p.faces.push(FaceRec {
                size: *size,
                layer: *layer,
                anchor: ids[0],
            });
            face_hedges.push(ids);
        }
        // outer hedges (twin slots never claimed by a face) already carry the
        // right origin; chain them by origin and detect pinched boundaries
        let mut outer_out: std::collections::HashMap<Vid, Hid> = std::collections::HashMap::new();
        for h in 0..p.hedges.len() as Hid {
            if p.hedges[h as usize].face == OUTER {
                let origin = p.origin_of(h);
                if outer_out.insert(origin, h).is_some() {
                    return Err(format!(
                        "boundary is not simple: vertex {origin} has two outgoing boundary edges"
                    ));
                }
            }
        }
        for h in 0..p.hedges.len() as Hid {
            if p.hedges[h as usize].face == OUTER {
                let tgt = p.origin_of(Self::twin(h));
                let nxt = outer_out
                    .get(&tgt)
                    .ok_or_else(|| format!("boundary chain breaks at vertex {tgt}"))?;
                p.hedges[h as usize].next = *nxt;
            }
        }
        // vertex outs: any incident hedge first, boundary hedge where present
        let mut have_out = vec![false; vertex_count];
        for h in 0..p.hedges.len() as Hid {
            let v = p.origin_of(h) as usize;
            if !have_out[v] {
                p.verts[v].out = h;
                have_out[v] = true;
            }
        }
        if have_out.iter().any(|&b| !b) {
            return Err("isolated vertex in document".into());
        }
        for (&v, &h) in &outer_out {
            p.verts[v as usize].out = h;
        }
        // derive vertex layers as the minimum incident face layer
        for (fi, ids) in face_hedges.iter().enumerate() {
            let layer = p.faces[fi].layer;
            for &h in ids {
                let v = p.origin_of(h) as usize;
                if layer < p.verts[v].layer {
                    p.verts[v].layer = layer;
                }
            }
        }
        p.outer_len = p.hedges.iter().filter(|h| h.face == OUTER).count();
        p.generation = 1;
        Ok(p)
    }

    pub fn ctype(&self) -> &CyclicType {
        &self.ctype
    }

    pub fn completed_layers(&self) -> u32 {
        self.completed_layers
    }

    pub fn origin_vertex(&self) -> Option<Vid> {
        self.origin
    }

    pub fn vertex_count(&self) -> usize {
        self.verts.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn edge_count(&self) -> usize {
        self.hedges.len() / 2
    }

    pub fn boundary_len(&self) -> usize {
        self.outer_len
    }

    pub fn face_size(&self, f: Fid) -> u32 {
        self.faces[f as usize].size
    }

    pub fn face_layer(&self, f: Fid) -> u32 {
        self.faces[f as usize].layer
    }

    pub fn vertex_layer(&self, v: Vid) -> u32 {
        self.verts[v as usize].layer
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.verts.len() as i64 - self.edge_count() as i64 + self.faces.len() as i64
    }

    /// Read-only half-edge accessors for the geometry/rendering layers.
    pub fn hedge_count(&self) -> usize {
        self.hedges.len()
    }

    pub fn hedge_origin(&self, h: Hid) -> Vid {
        self.origin_of(h)
    }

    pub fn hedge_face(&self, h: Hid) -> Fid {
        self.face_of(h)
    }

    pub fn hedge_next(&self, h: Hid) -> Hid {
        self.next(h)
    }

    pub fn face_anchor(&self, f: Fid) -> Hid {
        self.faces[f as usize].anchor
    }

    /// Layer bookkeeping hooks for searches that advance/retreat the layer
    /// counter around an agenda they manage themselves.
    pub(crate) fn bump_layer(&mut self) {
        self.completed_layers += 1;
    }

    pub(crate) fn unbump_layer(&mut self) {
        self.completed_layers -= 1;
    }

    /// Advances the layer counter after a caller-managed closure (used with
    /// [`complete_vertices_with`] when the agenda was the boundary snapshot).
    pub fn force_layer_advance(&mut self) {
        self.completed_layers += 1;
    }

    /// Reserves capacity for closing the fans of every open vertex in the
    /// agenda, so the large builds never hit a reallocation spike. The
    /// estimate assumes each open vertex inserts its full missing fan with
    /// minimal gluing, plus a little headroom.
    pub fn reserve_for_closure(&mut self, agenda: &[Vid]) {
        let d = self.ctype.degree();
        let total: usize = self.ctype.entries().iter().map(|&k| k as usize).sum();
        let mut faces_add = 0usize;
        let mut hedge_pairs_add = 0usize;
        for &v in agenda {
            if self.is_interior_vertex(v) {
                continue;
            }
            let j = self.vertex_degree(v).saturating_sub(1).max(1);
            let inserts = d.saturating_sub(j);
            faces_add += inserts;
            // each inserted face of size m contributes at most m - 1 fresh
            // edge pairs; the inserted sizes sum to at most the tuple total
            hedge_pairs_add += total.saturating_sub(j) - inserts.min(total);
        }
        let headroom = |x: usize| x + x / 8 + 64;
        self.faces.reserve(headroom(faces_add));
        self.hedges.reserve(headroom(2 * hedge_pairs_add));
        self.verts.reserve(headroom(hedge_pairs_add));
    }

    #[inline]
    pub(crate) fn twin(h: Hid) -> Hid {
        h ^ 1
    }

    #[inline]
    pub(crate) fn next(&self, h: Hid) -> Hid {
        self.hedges[h as usize].next
    }

    #[inline]
    pub(crate) fn origin_of(&self, h: Hid) -> Vid {
        self.hedges[h as usize].origin
    }

    #[inline]
    pub(crate) fn target_of(&self, h: Hid) -> Vid {
        self.origin_of(Self::twin(h))
    }

    #[inline]
    pub(crate) fn face_of(&self, h: Hid) -> Fid {
        self.hedges[h as usize].face
    }

    /// Next outgoing half-edge clockwise around the origin of `h`.
    #[inline]
    pub(crate) fn rot_cw(&self, h: Hid) -> Hid {
        self.next(Self::twin(h))
    }

    pub fn is_interior_vertex(&self, v: Vid) -> bool {
        self.face_of(self.verts[v as usize].out) != OUTER
    }

    /// The outgoing outer half-edge of a boundary vertex.
    pub(crate) fn outgoing_outer(&self, v: Vid) -> Option<Hid> {
        let out = self.verts[v as usize].out;
        (self.face_of(out) == OUTER).then_some(out)
    }

    /// The outer half-edge arriving at `v`, found by rotating clockwise
    /// through the interior faces.
    pub(crate) fn incoming_outer(&self, v: Vid) -> Option<Hid> {
        let start = self.outgoing_outer(v)?;
        let mut h = self.rot_cw(start);
        let mut last_interior = None;
        let mut guard = 0usize;
        while h != start {
            debug_assert!(self.face_of(h) != OUTER);
            last_interior = Some(h);
            h = self.rot_cw(h);
            guard += 1;
            if guard > self.hedges.len() {
                panic!("vertex rotation did not close");
            }
        }
        last_interior.map(Self::twin)
    }

    /// Corner word of a vertex, clockwise. For boundary vertices it starts at
    /// the face along the outgoing boundary edge and ends at the face along
    /// the incoming one; for interior vertices it is the full cyclic fan
    /// starting anywhere.
    pub fn corner_word(&self, v: Vid) -> Vec<u32> {
        let rec = &self.verts[v as usize];
        let start = rec.out;
        let mut word = Vec::new();
        if self.face_of(start) == OUTER {
            let mut h = self.rot_cw(start);
            while h != start {
                word.push(self.faces[self.face_of(h) as usize].size);
                h = self.rot_cw(h);
            }
        } else {
            let mut h = start;
            loop {
                word.push(self.faces[self.face_of(h) as usize].size);
                h = self.rot_cw(h);
                if h == start {
                    break;
                }
            }
        }
        word
    }

    pub fn vertex_degree(&self, v: Vid) -> usize {
        let start = self.verts[v as usize].out;
        let mut n = 0;
        let mut h = start;
        loop {
            n += 1;
            h = self.rot_cw(h);
            if h == start {
                break;
            }
        }
        n
    }

    /// Boundary vertices in clockwise orbit order, starting from the least id
    /// on the boundary.
    pub fn boundary_vertices_cw(&self) -> Vec<Vid> {
        if self.outer_len == 0 {
            return Vec::new();
        }
        let first = match self
            .verts
            .iter()
            .enumerate()
            .filter(|(_, r)| self.face_of(r.out) == OUTER)
            .map(|(i, _)| i as Vid)
            .min()
        {
            Some(v) => v,
            None => return Vec::new(),
        };
        let start = self.verts[first as usize].out;
        let mut out = Vec::with_capacity(self.outer_len);
        let mut h = start;
        loop {
            out.push(self.origin_of(h));
            h = self.next(h);
            if h == start {
                break;
            }
        }
        out
    }

    /// Vertex ids of a face in counterclockwise order, starting at its anchor.
    pub fn face_vertices(&self, f: Fid) -> Vec<Vid> {
        let anchor = self.faces[f as usize].anchor;
        let mut out = Vec::with_capacity(self.faces[f as usize].size as usize);
        let mut h = anchor;
        loop {
            out.push(self.origin_of(h));
            h = self.next(h);
            if h == anchor {
                break;
            }
        }
        out
    }

    /// Face ids sharing an edge with `f`, in cycle order; boundary edges are
    /// skipped.
    pub fn face_neighbors(&self, f: Fid) -> Vec<Fid> {
        let anchor = self.faces[f as usize].anchor;
        let mut out = Vec::new();
        let mut h = anchor;
        loop {
            let g = self.face_of(Self::twin(h));
            if g != OUTER {
                out.push(g);
            }
            h = self.next(h);
            if h == anchor {
                break;
            }
        }
        out
    }

    /// All face ids incident to `v`, clockwise.
    pub fn faces_at_vertex(&self, v: Vid) -> Vec<Fid> {
        let start = self.verts[v as usize].out;
        let mut out = Vec::new();
        let mut h = start;
        loop {
            let f = self.face_of(h);
            if f != OUTER {
                out.push(f);
            }
            h = self.rot_cw(h);
            if h == start {
                break;
            }
        }
        out
    }

    pub fn all_faces(&self) -> std::ops::Range<Fid> {
        0..self.faces.len() as Fid
    }

    pub fn all_vertices(&self) -> std::ops::Range<Vid> {
        0..self.verts.len() as Vid
    }

    /// Structured validity check: returns every violation found (empty means
    /// the patch is a well-formed disk with type-consistent vertices).
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.faces.is_empty() && self.hedges.is_empty() {
            return out; // degenerate empty patch
        }
        let n = self.hedges.len();
        if n % 2 != 0 {
            out.push(Violation("odd number of half-edges".into()));
            return out;
        }
        for h in 0..n {
            let nx = self.hedges[h].next as usize;
            if nx >= n {
                out.push(Violation(format!("hedge {h} has dangling next")));
                return out;
            }
        }
        // twin consistency: both halves of a pair see each other's origin as
        // their target through the shared edge
        for h in (0..n).step_by(2) {
            let a = self.hedges[h].origin;
            let b = self.hedges[h + 1].origin;
            if a == b {
                out.push(Violation(format!("edge {h} is a loop at vertex {a}")));
            }
        }
        // next-orbits partition the hedges; face orbits match sizes; one OUTER orbit
        let mut seen = vec![false; n];
        let mut outer_orbits = 0usize;
        for h0 in 0..n {
            if seen[h0] {
                continue;
            }
            let f = self.hedges[h0].face;
            let mut h = h0;
            let mut len = 0usize;
            loop {
                if seen[h] {
                    out.push(Violation(format!(
                        "next-orbits are not disjoint at hedge {h}"
                    )));
                    return out;
                }
                seen[h] = true;
                if self.hedges[h].face != f {
                    out.push(Violation(format!(
                        "orbit of hedge {h0} mixes faces {f} and {}",
                        self.hedges[h].face
                    )));
                }
                // target of h must be the origin of next(h)
                let nx = self.hedges[h].next;
                if self.origin_of(nx) != self.target_of(h as Hid) {
                    out.push(Violation(format!(
                        "hedge {h} next does not continue at its target"
                    )));
                }
                len += 1;
                h = nx as usize;
                if h == h0 {
                    break;
                }
                if len > n {
                    out.push(Violation(format!("orbit of hedge {h0} does not close")));
                    return out;
                }
            }
            if f == OUTER {
                outer_orbits += 1;
                if len != self.outer_len {
                    out.push(Violation(format!(
                        "outer orbit length {len} != recorded {}",
                        self.outer_len
                    )));
                }
            } else {
                let size = self.faces[f as usize].size as usize;
                if len != size {
                    out.push(Violation(format!(
                        "face {f} has orbit length {len}, size says {size}"
                    )));
                }
            }
        }
        if outer_orbits != 1 {
            out.push(Violation(format!(
                "expected a single outer orbit, found {outer_orbits}"
            )));
        }
        if self.euler_characteristic() != 1 {
            out.push(Violation(format!(
                "Euler characteristic {} != 1",
                self.euler_characteristic()
            )));
        }
        // boundary is simple
        let mut boundary_seen = std::collections::HashSet::new();
        for (h, rec) in self.hedges.iter().enumerate() {
            if rec.face == OUTER && !boundary_seen.insert(rec.origin) {
                out.push(Violation(format!(
                    "boundary visits vertex {} twice (hedge {h})",
                    rec.origin
                )));
            }
        }
        // faces are simple disks
        for f in 0..self.faces.len() {
            let vs = self.face_vertices(f as Fid);
            let set: std::collections::HashSet<_> = vs.iter().collect();
            if set.len() != vs.len() {
                out.push(Violation(format!("face {f} repeats a vertex")));
            }
        }
        // vertex words: interior exact, boundary extendable
        for v in 0..self.verts.len() as Vid {
            let word = self.corner_word(v);
            if self.is_interior_vertex(v) {
                if !self.ctype.matches_cyclically(&word) {
                    out.push(Violation(format!(
                        "interior vertex {v} has word {word:?} not matching the type"
                    )));
                }
            } else if !self.ctype.is_extendable_subword(&word) {
                out.push(Violation(format!(
                    "boundary vertex {v} has non-extendable word {word:?}"
                )));
            }
            let out_h = self.verts[v as usize].out;
            if self.origin_of(out_h) != v {
                out.push(Violation(format!("vertex {v} out hedge has wrong origin")));
            }
        }
        out
    }
}
