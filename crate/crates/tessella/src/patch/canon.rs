//! Canonical codes for patches.
//!
//! A patch is a rooted combinatorial map; choosing each boundary half-edge
//! (in both senses of traversal being fixed by the map itself) as the root of
//! a deterministic breadth-first relabeling yields one code per choice, and
//! the minimum is a canonical form. Two patches get the same code exactly
//! when they are isomorphic as face-labelled maps (face sizes and layers are
//! part of the code). Used by the brute-force/engine equivalence oracle and
//! for deduplicating enumerated patches.

use super::{Hid, Patch, OUTER};

/// Minimal BFS encoding over all boundary-rooted traversals.
pub fn canonical_code(p: &Patch) -> Vec<u32> {
    let mut best: Option<Vec<u32>> = None;
    let roots: Vec<Hid> = (0..p.hedges.len() as Hid)
        .filter(|&h| p.face_of(h) == OUTER)
        .collect();
    for root in roots {
        let code = encode_from(p, root);
        if best.as_ref().map_or(true, |b| code < *b) {
            best = Some(code);
        }
    }
    best.unwrap_or_default()
}

/// Deterministic traversal: faces are numbered in order of discovery along a
/// queue seeded with the face behind the root boundary edge; each face's
/// record lists its size, layer, and for each of its edges (starting at the
/// discovery edge, following the face cycle) the discovered id of the
/// neighbouring face (or a boundary marker).
fn encode_from(p: &Patch, root: Hid) -> Vec<u32> {
    const BOUNDARY: u32 = u32::MAX;
    let nf = p.faces.len();
    let mut order: Vec<u32> = vec![u32::MAX; nf];
    let mut queue: std::collections::VecDeque<Hid> = std::collections::VecDeque::new();
    let mut code: Vec<u32> = Vec::with_capacity(nf * 8);
    let mut discovered = 0u32;

    // the face on the inner side of the root boundary edge
    let seed = Patch::twin(root);
    debug_assert!(p.face_of(seed) != OUTER);
    order[p.face_of(seed) as usize] = discovered;
    discovered += 1;
    queue.push_back(seed);

    while let Some(entry) = queue.pop_front() {
        let f = p.face_of(entry);
        let rec = &p.faces[f as usize];
        code.push(rec.size);
        code.push(rec.layer);
        let mut h = entry;
        loop {
            let g = p.face_of(Patch::twin(h));
            if g == OUTER {
                code.push(BOUNDARY);
            } else {
                if order[g as usize] == u32::MAX {
                    order[g as usize] = discovered;
                    discovered += 1;
                    queue.push_back(Patch::twin(h));
                }
                code.push(order[g as usize]);
            }
            h = p.next(h);
            if h == entry {
                break;
            }
        }
    }
    code.push(discovered);
    code
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::CyclicType;

    fn ty(entries: &[u32]) -> CyclicType {
        CyclicType::new(entries.to_vec()).unwrap()
    }

    #[test]
    fn isomorphic_fans_share_a_code() {
        let t = ty(&[4, 5, 4, 5]);
        let a = Patch::new_fan(&t, 0, false).unwrap();
        let b = Patch::new_fan(&t, 1, false).unwrap(); // rotated layout, same map up to relabeling
        let c = Patch::new_fan(&t, 0, true).unwrap();
        assert_eq!(canonical_code(&a), canonical_code(&b));
        assert_eq!(canonical_code(&a), canonical_code(&c));

        let other = Patch::new_fan(&ty(&[4, 5, 5, 4]), 0, false).unwrap();
        assert_ne!(canonical_code(&a), canonical_code(&other));
    }

    #[test]
    fn code_distinguishes_growth() {
        let t = ty(&[4, 5, 4, 5]);
        let mut p = Patch::new_fan(&t, 0, false).unwrap();
        let base = canonical_code(&p);
        let v = p.boundary_vertices_cw()[0];
        let c = p.fan_completions(v)[0].clone();
        p.apply_completion(&c).unwrap();
        assert_ne!(base, canonical_code(&p));
    }
}
