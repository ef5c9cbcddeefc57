//! Engine/brute-force equivalence oracle.
//!
//! The brute force grows a layer by placing ONE face at a time at the least
//! open snapshot vertex, trying every size in the type and every legal run
//! (validity comes only from `place_face`'s own word checks, never from the
//! fan-matching machinery). The set of completed layers it can reach must
//! equal the set reachable through fan completions.

use super::canon::canonical_code;
use super::{Patch, Vid};
use std::collections::BTreeSet;

/// All distinct canonical codes of patches obtained from `base` by making
/// every vertex of the current boundary snapshot interior, placing one face
/// at a time. `cap` bounds the result count as a runaway guard.
pub(crate) fn brute_force_layer_codes(base: &Patch, cap: usize) -> BTreeSet<Vec<u32>> {
    let mut p = base.clone();
    let snapshot = p.boundary_vertices_cw();
    let mut sizes: Vec<u32> = p.ctype().entries().to_vec();
    sizes.sort_unstable();
    sizes.dedup();
    let mut out = BTreeSet::new();
    brute_rec(&mut p, &snapshot, &sizes, cap, &mut out);
    out
}

fn brute_rec(
    p: &mut Patch,
    snapshot: &[Vid],
    sizes: &[u32],
    cap: usize,
    out: &mut BTreeSet<Vec<u32>>,
) {
    if out.len() >= cap {
        return;
    }
    let Some(&v) = snapshot.iter().find(|&&v| !p.is_interior_vertex(v)) else {
        out.insert(canonical_code(p));
        return;
    };
    let layer = p.completed_layers() + 1;
    let e_in = p.incoming_outer(v).expect("open vertex is boundary");
    let e_out = p.outgoing_outer(v).expect("open vertex is boundary");
    for &s in sizes {
        // runs ending at the incoming edge, not closing v
        for back in 0..=(s as usize).saturating_sub(2) {
            let Some(run) = p.outer_run_ending_at(e_in, back) else {
                break;
            };
            if let Ok(undo) = p.place_face(s, &run, layer) {
                brute_rec(p, snapshot, sizes, cap, out);
                p.undo_place(undo);
            }
        }
        // runs through v (closing it), with both extensions
        let lim = (s as usize).saturating_sub(3);
        for back in 0..=lim {
            let Some(prefix) = p.outer_run_ending_at(e_in, back) else {
                break;
            };
            for fwd in 0..=lim.saturating_sub(back) {
                let Some(suffix) = p.outer_run_starting_at(e_out, fwd) else {
                    break;
                };
                let mut run = prefix.clone();
                run.extend_from_slice(&suffix);
                if let Ok(undo) = p.place_face(s, &run, layer) {
                    brute_rec(p, snapshot, sizes, cap, out);
                    p.undo_place(undo);
                }
            }
        }
    }
}

/// All distinct canonical codes reachable through fan completions.
pub(crate) fn engine_layer_codes(base: &Patch, cap: usize) -> BTreeSet<Vec<u32>> {
    let mut p = base.clone();
    let snapshot = p.boundary_vertices_cw();
    let mut out = BTreeSet::new();
    engine_rec(&mut p, &snapshot, cap, &mut out);
    out
}

fn engine_rec(p: &mut Patch, snapshot: &[Vid], cap: usize, out: &mut BTreeSet<Vec<u32>>) {
    if out.len() >= cap {
        return;
    }
    let Some(&v) = snapshot.iter().find(|&&v| !p.is_interior_vertex(v)) else {
        out.insert(canonical_code(p));
        return;
    };
    for c in p.fan_completions(v) {
        let undo = p.apply_completion(&c).expect("fresh completion applies");
        engine_rec(p, snapshot, cap, out);
        p.undo_completion(undo);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::CyclicType;

    #[test]
    fn oracle_equivalence_4545_layer2() {
        let t = CyclicType::new(vec![4, 5, 4, 5]).unwrap();
        let fan = Patch::new_fan(&t, 0, false).unwrap();
        let brute = brute_force_layer_codes(&fan, 1_000_000);
        let engine = engine_layer_codes(&fan, 1_000_000);
        assert!(!engine.is_empty());
        assert_eq!(brute, engine);
    }

    #[test]
    fn oracle_equivalence_777_layer2() {
        let t = CyclicType::new(vec![7, 7, 7]).unwrap();
        let fan = Patch::new_fan(&t, 0, false).unwrap();
        let brute = brute_force_layer_codes(&fan, 1_000_000);
        let engine = engine_layer_codes(&fan, 1_000_000);
        assert!(!engine.is_empty());
        assert_eq!(brute, engine);
    }
}

#[cfg(test)]
mod size_checks {
    use super::*;
    use crate::cyclic::CyclicType;

    #[test]
    fn oracle_sets_are_nontrivial() {
        let t = CyclicType::new(vec![4, 5, 4, 5]).unwrap();
        let fan = Patch::new_fan(&t, 0, false).unwrap();
        let brute = brute_force_layer_codes(&fan, 1_000_000);
        println!("distinct 2-layer patches of [4,5,4,5]: {}", brute.len());
        assert!(!brute.is_empty());
    }
}
