//! Layer closure: completing the fan of every boundary vertex of the current
//! layer, in clockwise cyclic order from the least boundary id.
//!
//! The backtracking closure keeps a lazy priority queue over the open agenda
//! (most constrained vertex first, clockwise position as tie-break). Cached
//! option counts may go stale; correctness never depends on them — the
//! selected vertex is re-enumerated freshly before branching, and a truly
//! blocked vertex surfaces at the latest when it is selected. Applying or
//! undoing a completion re-queues every agenda vertex within one maximal
//! face size along the boundary of the touched zone.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet, VecDeque};

use super::{FanCompletion, Patch, Vid};

/// A blocked vertex: no completion of its corner word exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeadEnd {
    pub vertex: Vid,
    pub word: Vec<u32>,
}

/// Strategy hook for picking among the enumerated completions of a vertex.
pub trait LayerChooser {
    fn choose(&mut self, patch: &Patch, vertex: Vid, options: &[FanCompletion]) -> Option<usize>;
}

/// Always takes the first completion in the deterministic order.
pub struct FirstChoice;

impl LayerChooser for FirstChoice {
    fn choose(&mut self, _patch: &Patch, _vertex: Vid, options: &[FanCompletion]) -> Option<usize> {
        (!options.is_empty()).then_some(0)
    }
}

/// Completes every boundary vertex of the current layer via the chooser, with
/// no backtracking. On success the layer counter advances; on a dead end the
/// patch is left as it was when the blockage was found.
pub fn close_layer(p: &mut Patch, chooser: &mut dyn LayerChooser) -> Result<(), DeadEnd> {
    let snapshot = p.boundary_vertices_cw();
    for v in snapshot {
        if p.is_interior_vertex(v) {
            continue;
        }
        let options = p.fan_completions(v);
        match chooser.choose(p, v, &options) {
            Some(i) if i < options.len() => {
                p.apply_completion(&options[i])
                    .expect("freshly enumerated completion must apply");
            }
            _ => {
                return Err(DeadEnd {
                    vertex: v,
                    word: p.corner_word(v),
                });
            }
        }
    }
    p.completed_layers += 1;
    Ok(())
}

/// How much of the undo history a search retains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UndoPolicy {
    /// Keep everything: exhaustive search, restores the patch on failure.
    Full,
    /// Keep a sliding window of the last `n` applied completions; older
    /// choices are committed. Backtracking past the window fails the search
    /// (used by the large constructive builds, which are allowed to give up).
    Window(usize),
}

/// Depth-first closure with backtracking over all completion choices. Returns
/// true (and advances the layer) if some assignment closes the layer. Under
/// `UndoPolicy::Full` a false return means the closure space was exhausted
/// (or the budget ran out) and the patch is restored; under a window policy a
/// false return is merely a failed attempt and the patch may keep committed
/// faces.
pub fn close_layer_backtracking(p: &mut Patch, node_budget: &mut u64) -> bool {
    let snapshot = p.boundary_vertices_cw();
    if complete_vertices(p, &snapshot, node_budget) {
        p.completed_layers += 1;
        true
    } else {
        false
    }
}

/// Exhaustive variant used by searches that need the refutation meaning.
pub fn complete_vertices(p: &mut Patch, agenda: &[Vid], budget: &mut u64) -> bool {
    complete_vertices_with(p, agenda, budget, UndoPolicy::Full).completed
}

/// Outcome of an agenda search.
pub struct AgendaOutcome {
    pub completed: bool,
    /// Set when the search saw a vertex with no completions at all.
    pub dead_end: Option<DeadEnd>,
    /// True when the node budget was exhausted (the false outcome then proves
    /// nothing).
    pub budget_exhausted: bool,
}

struct Frame {
    vertex: Vid,
    options: Vec<FanCompletion>,
    next: usize,
    undo: Option<super::CompletionUndo>,
    touched: Vec<Vid>,
}

pub fn complete_vertices_with(
    p: &mut Patch,
    agenda: &[Vid],
    budget: &mut u64,
    policy: UndoPolicy,
) -> AgendaOutcome {
    let mut outcome = AgendaOutcome {
        completed: false,
        dead_end: None,
        budget_exhausted: false,
    };
    let members: HashSet<Vid> = agenda.iter().copied().collect();
    let position: HashMap<Vid, usize> =
        agenda.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let dirty_radius = p
        .ctype()
        .entries()
        .iter()
        .copied()
        .max()
        .unwrap_or(3) as usize
        + 1;

    // lazy heap entries: (count estimate, position, vertex, stamp); the
    // estimate is corrected by a fresh enumeration when the entry is popped
    let mut stamps: HashMap<Vid, u64> = HashMap::new();
    let mut counts: HashMap<Vid, usize> = HashMap::new();
    let mut heap: BinaryHeap<Reverse<(usize, usize, Vid, u64)>> = BinaryHeap::new();
    let mut open = 0usize;
    for &v in agenda {
        if !p.is_interior_vertex(v) {
            open += 1;
            stamps.insert(v, 1);
            heap.push(Reverse((0, position[&v], v, 1)));
        }
    }

    let mut frames: VecDeque<Frame> = VecDeque::new();
    let mut committed_failure = false;

    'outer: loop {
        if open == 0 {
            outcome.completed = true;
            return outcome;
        }
        // select the most constrained open vertex with fresh options
        let selected: Option<(Vid, Vec<FanCompletion>)> = loop {
            let Some(&Reverse((count, pos, v, stamp))) = heap.peek() else {
                break None;
            };
            if p.is_interior_vertex(v) || stamps.get(&v) != Some(&stamp) {
                heap.pop();
                continue;
            }
            let options = p.fan_completions(v);
            counts.insert(v, options.len());
            if options.len() <= count {
                heap.pop();
                break Some((v, options));
            }
            // freshen the entry and re-order
            heap.pop();
            let s = stamps.entry(v).or_insert(0);
            *s += 1;
            heap.push(Reverse((options.len(), pos, v, *s)));
        };
        let Some((v, options)) = selected else {
            // heap is out of live entries but vertices remain open: refill
            let mut refilled = false;
            for &u in agenda {
                if !p.is_interior_vertex(u) {
                    let s = stamps.entry(u).or_insert(0);
                    *s += 1;
                    heap.push(Reverse((0, position[&u], u, *s)));
                    refilled = true;
                }
            }
            if !refilled {
                outcome.completed = true;
                return outcome;
            }
            continue;
        };
        if options.is_empty() {
            if outcome.dead_end.is_none() {
                outcome.dead_end = Some(DeadEnd {
                    vertex: v,
                    word: p.corner_word(v),
                });
            }
            // backtrack
            if !backtrack(
                p,
                &mut frames,
                &mut heap,
                &mut stamps,
                &counts,
                &position,
                &members,
                &mut open,
                dirty_radius,
                &mut committed_failure,
                budget,
                &mut outcome,
            ) {
                break 'outer;
            }
            continue;
        }
        // descend with the first option
        if *budget == 0 {
            outcome.budget_exhausted = true;
            break 'outer;
        }
        *budget -= 1;
        let undo = p
            .apply_completion(&options[0])
            .expect("freshly enumerated completion must apply");
        let touched = undo.touched_vertices();
        let closed = undo.closed_vertices();
        open -= closed.iter().filter(|u| members.contains(u)).count();
        mark_zone_dirty(p, &touched, dirty_radius, &members, &position, &mut stamps, &counts, &mut heap);
        frames.push_back(Frame {
            vertex: v,
            options,
            next: 1,
            undo: Some(undo),
            touched,
        });
        if let UndoPolicy::Window(w) = policy {
            while frames.len() > w {
                let mut f = frames.pop_front().expect("nonempty");
                f.undo = None; // commit
            }
        }
    }

    // restore under the full policy; under windows the caller accepts debris
    while let Some(mut f) = frames.pop_back() {
        if let Some(undo) = f.undo.take() {
            let closed = undo.closed_vertices();
            open += closed.iter().filter(|u| members.contains(u)).count();
            p.undo_completion(undo);
        }
    }
    let _ = committed_failure;
    outcome
}

#[allow(clippy::too_many_arguments)]
fn backtrack(
    p: &mut Patch,
    frames: &mut VecDeque<Frame>,
    heap: &mut BinaryHeap<Reverse<(usize, usize, Vid, u64)>>,
    stamps: &mut HashMap<Vid, u64>,
    counts: &HashMap<Vid, usize>,
    position: &HashMap<Vid, usize>,
    members: &HashSet<Vid>,
    open: &mut usize,
    dirty_radius: usize,
    committed_failure: &mut bool,
    budget: &mut u64,
    outcome: &mut AgendaOutcome,
) -> bool {
    loop {
        let Some(mut frame) = frames.pop_back() else {
            return false; // exhausted the whole tree
        };
        let Some(undo) = frame.undo.take() else {
            // hit the committed horizon: cannot revert further
            *committed_failure = true;
            return false;
        };
        let closed = undo.closed_vertices();
        *open += closed.iter().filter(|u| members.contains(u)).count();
        p.undo_completion(undo);
        mark_zone_dirty(p, &frame.touched, dirty_radius, members, position, stamps, counts, heap);
        while frame.next < frame.options.len() {
            let idx = frame.next;
            frame.next += 1;
            if *budget == 0 {
                outcome.budget_exhausted = true;
                return false;
            }
            *budget -= 1;
            match p.apply_completion(&frame.options[idx]) {
                Ok(undo) => {
                    let touched = undo.touched_vertices();
                    let closed = undo.closed_vertices();
                    *open -= closed.iter().filter(|u| members.contains(u)).count();
                    mark_zone_dirty(p, &touched, dirty_radius, members, position, stamps, counts, heap);
                    frames.push_back(Frame {
                        vertex: frame.vertex,
                        options: frame.options,
                        next: idx + 1,
                        undo: Some(undo),
                        touched,
                    });
                    return true;
                }
                Err(_) => {
                    // sibling completions were enumerated before this branch
                    // mutated the patch; a stale one is simply skipped
                    continue;
                }
            }
        }
        // frame exhausted: continue popping
    }
}

/// Re-queues agenda vertices affected by a mutation. Vertices whose corner
/// word changed (the touched list) jump the queue with estimate 0 so genuine
/// dead ends surface immediately; vertices that merely sit within gluing
/// range along the boundary keep their previous estimate and are corrected
/// lazily when popped.
#[allow(clippy::too_many_arguments)]
fn mark_zone_dirty(
    p: &Patch,
    touched: &[Vid],
    radius: usize,
    members: &HashSet<Vid>,
    position: &HashMap<Vid, usize>,
    stamps: &mut HashMap<Vid, u64>,
    counts: &HashMap<Vid, usize>,
    heap: &mut BinaryHeap<Reverse<(usize, usize, Vid, u64)>>,
) {
    let mut mark = |v: Vid,
                    urgent: bool,
                    stamps: &mut HashMap<Vid, u64>,
                    heap: &mut BinaryHeap<Reverse<(usize, usize, Vid, u64)>>| {
        if members.contains(&v) {
            let s = stamps.entry(v).or_insert(0);
            *s += 1;
            let estimate = if urgent {
                0
            } else {
                counts.get(&v).copied().unwrap_or(0)
            };
            heap.push(Reverse((estimate, position[&v], v, *s)));
        }
    };
    for &t in touched {
        if t as usize >= p.vertex_count() {
            continue; // vertex was truncated by an undo
        }
        mark(t, true, stamps, heap);
        if let Some(out) = p.outgoing_outer(t) {
            // forward along the orbit
            let mut h = out;
            for _ in 0..radius {
                h = p.next(h);
                mark(p.origin_of(h), false, stamps, heap);
            }
            // backward along the orbit
            let mut v = t;
            for _ in 0..radius {
                let Some(inc) = p.incoming_outer(v) else {
                    break;
                };
                v = p.origin_of(inc);
                mark(v, false, stamps, heap);
            }
        }
    }
}
