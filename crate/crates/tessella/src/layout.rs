//! Poincaré-disk realization of patches.
//!
//! Frames are orientation-preserving disk isometries represented as 2x2
//! complex matrices `[[a, b], [conj(b), conj(a)]]` acting by
//! `z -> (a z + b) / (conj(b) z + conj(a))`, renormalized after every
//! composition. Each half-edge gets a frame placing its origin at the frame's
//! center with the edge pointing along +x; walking a face cycle is a
//! translation by the side length followed by the exterior-angle turn.

use std::collections::BTreeMap;
use std::collections::VecDeque;
use std::f64::consts::PI;

use thiserror::Error;

use crate::cyclic::GeometryClass;
use crate::geometry::{interior_angle, solve_side_length, GeometryError};
use crate::patch::{Fid, Hid, Patch, Vid, OUTER};

#[derive(Debug, Error, PartialEq)]
pub enum LayoutError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("numerical drift {0} exceeds tolerance (worst at vertex {1})")]
    Drift(f64, Vid),
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct C {
    re: f64,
    im: f64,
}

impl C {
    const ZERO: C = C { re: 0.0, im: 0.0 };
    const ONE: C = C { re: 1.0, im: 0.0 };
    fn new(re: f64, im: f64) -> C {
        C { re, im }
    }
    fn conj(self) -> C {
        C::new(self.re, -self.im)
    }
    fn add(self, o: C) -> C {
        C::new(self.re + o.re, self.im + o.im)
    }
    fn mul(self, o: C) -> C {
        C::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
    fn div(self, o: C) -> C {
        let d = o.re * o.re + o.im * o.im;
        C::new(
            (self.re * o.re + self.im * o.im) / d,
            (self.im * o.re - self.re * o.im) / d,
        )
    }
    fn scale(self, s: f64) -> C {
        C::new(self.re * s, self.im * s)
    }
    fn norm_sq(self) -> f64 {
        self.re * self.re + self.im * self.im
    }
}

/// Disk isometry `z -> (a z + b)/(conj(b) z + conj(a))`.
#[derive(Debug, Clone, Copy)]
pub struct Iso {
    a: C,
    b: C,
}

impl Iso {
    pub fn identity() -> Iso {
        Iso {
            a: C::ONE,
            b: C::ZERO,
        }
    }

    /// Translation moving the origin distance `d` along the +x axis.
    pub fn translate(d: f64) -> Iso {
        Iso {
            a: C::new((d / 2.0).cosh(), 0.0),
            b: C::new((d / 2.0).sinh(), 0.0),
        }
    }

    /// Rotation by `theta` about the origin.
    pub fn rotate(theta: f64) -> Iso {
        Iso {
            a: C::new((theta / 2.0).cos(), (theta / 2.0).sin()),
            b: C::ZERO,
        }
    }

    pub fn compose(self, o: Iso) -> Iso {
        // matrix product self · o, renormalized to unit determinant
        let a = self.a.mul(o.a).add(self.b.mul(o.b.conj()));
        let b = self.a.mul(o.b).add(self.b.mul(o.a.conj()));
        let det = a.norm_sq() - b.norm_sq();
        let s = 1.0 / det.sqrt();
        Iso {
            a: a.scale(s),
            b: b.scale(s),
        }
    }

    pub fn apply(&self, z: [f64; 2]) -> [f64; 2] {
        let z = C::new(z[0], z[1]);
        let num = self.a.mul(z).add(self.b);
        let den = self.b.conj().mul(z).add(self.a.conj());
        let w = num.div(den);
        [w.re, w.im]
    }
}

/// Hyperbolic distance between two points of the unit disk (curvature -1).
pub fn disk_distance(p: [f64; 2], q: [f64; 2]) -> f64 {
    let zp = C::new(p[0], p[1]);
    let zq = C::new(q[0], q[1]);
    let num = zp.add(zq.scale(-1.0));
    let den = C::ONE.add(zq.conj().mul(zp).scale(-1.0));
    let r = (num.norm_sq() / den.norm_sq()).sqrt();
    2.0 * r.atanh()
}

/// Vertex coordinates plus the face vertex cycles, with the worst numerical
/// errors observed while propagating frames.
#[derive(Debug, Clone)]
pub struct DiskLayout {
    pub points: BTreeMap<Vid, [f64; 2]>,
    pub faces: Vec<(Fid, Vec<Vid>)>,
    pub side_length: f64,
    pub max_edge_error: f64,
    pub max_vertex_spread: f64,
}

/// Lays out a patch with the first half-edge's origin at the disk center and
/// the edge along +x, propagating frames across a breadth-first spanning tree
/// of the half-edges. Repeated visits to a vertex measure the drift.
pub fn layout_patch(p: &Patch) -> Result<DiskLayout, LayoutError> {
    layout_patch_seeded(p, Iso::identity())
}

/// Same, but with an arbitrary seed isometry applied to the whole layout.
pub fn layout_patch_seeded(p: &Patch, seed: Iso) -> Result<DiskLayout, LayoutError> {
    if p.face_count() == 0 {
        return Ok(DiskLayout {
            points: BTreeMap::new(),
            faces: Vec::new(),
            side_length: 0.0,
            max_edge_error: 0.0,
            max_vertex_spread: 0.0,
        });
    }
    debug_assert_eq!(p.ctype().classify(), GeometryClass::Hyperbolic);
    let ell = solve_side_length(p.ctype())?;
    let mut alpha: BTreeMap<u32, f64> = BTreeMap::new();
    for &k in p.ctype().entries() {
        alpha
            .entry(k)
            .or_insert(interior_angle(k, ell)?);
    }

    let nh = p.hedge_count();
    let mut frames: Vec<Option<Iso>> = vec![None; nh];
    let mut points: BTreeMap<Vid, [f64; 2]> = BTreeMap::new();
    let mut max_spread = 0.0f64;

    // root: the anchor half-edge of face 0
    let root = p.face_anchor(0);
    frames[root as usize] = Some(seed);
    let mut queue: VecDeque<Hid> = VecDeque::new();
    queue.push_back(root);

    let mut record = |v: Vid, pt: [f64; 2], max_spread: &mut f64| {
        if let Some(prev) = points.get(&v) {
            let d = ((prev[0] - pt[0]).powi(2) + (prev[1] - pt[1]).powi(2)).sqrt();
            if d > *max_spread {
                *max_spread = d;
            }
        } else {
            points.insert(v, pt);
        }
    };

    while let Some(h) = queue.pop_front() {
        let frame = frames[h as usize].expect("queued hedge has a frame");
        record(p.hedge_origin(h), frame.apply([0.0, 0.0]), &mut max_spread);

        // within the face: next(h) starts at the far endpoint, turned by the
        // exterior angle of this face
        let f = p.hedge_face(h);
        if f != OUTER {
            let a = alpha[&p.face_size(f)];
            let step = frame
                .compose(Iso::translate(ell.0))
                .compose(Iso::rotate(PI - a));
            let nxt = p.hedge_next(h);
            if frames[nxt as usize].is_none() {
                frames[nxt as usize] = Some(step);
                queue.push_back(nxt);
            }
        }
        // across the edge: twin starts at the far endpoint, facing back
        let twin = h ^ 1;
        if frames[twin as usize].is_none() {
            let step = frame
                .compose(Iso::translate(ell.0))
                .compose(Iso::rotate(PI));
            frames[twin as usize] = Some(step);
            queue.push_back(twin);
        }
    }

    // edge-length errors across all edges
    let mut max_edge_error = 0.0f64;
    for h in (0..nh as u32).step_by(2) {
        let u = p.hedge_origin(h);
        let v = p.hedge_origin(h ^ 1);
        if let (Some(&pu), Some(&pv)) = (points.get(&u), points.get(&v)) {
            let err = (disk_distance(pu, pv) - ell.0).abs();
            if err > max_edge_error {
                max_edge_error = err;
            }
        }
    }

    let faces = p
        .all_faces()
        .map(|f| (f, p.face_vertices(f)))
        .collect::<Vec<_>>();
    let layout = DiskLayout {
        points,
        faces,
        side_length: ell.0,
        max_edge_error,
        max_vertex_spread: max_spread,
    };
    if layout.max_edge_error > 1e-8 {
        // report the worst offender rather than silently returning garbage
        return Err(LayoutError::Drift(layout.max_edge_error, 0));
    }
    Ok(layout)
}
