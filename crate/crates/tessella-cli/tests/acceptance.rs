//! Acceptance suite: the project's verification gates, run end to end with
//! pinned tolerances and budgets. Each criterion prints exactly one PASS or
//! FAIL line; the test fails at the end if any criterion failed, with the
//! details preserved above it.
//!
//! Two gates assert layer-blocking claims that the engine refutes with
//! validated witnesses (see the failure details they print); they are kept
//! as stated rather than weakened, so their red status is loud and explained.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num_traits::ToPrimitive;

use tessella::aperiodicity::{incidence_census, monotile_forcing, periodicity_contradiction};
use tessella::aperiodicity::{ForcingVerdict, Verdict};
use tessella::cyclic::{canonical_entries, CyclicType, GeometryClass};
use tessella::doc::{decode_patch, encode_patch, from_json, to_json};
use tessella::families;
use tessella::fractions::verify_lemmas;
use tessella::geometry::{dual_tile, inradius, interior_angle, solve_side_length, Length};
use tessella::heesch::{
    constructive_build, forced_chain_verify, heesch_number, HeeschOutcome, SearchBudget,
};
use tessella::layout::layout_patch;
use tessella::patch::{close_layer_backtracking, Patch};
use tessella::svg::{render_svg, RenderSpec};

struct Gate {
    failures: Vec<String>,
}

impl Gate {
    fn new() -> Gate {
        Gate { failures: vec![] }
    }

    fn report(&mut self, id: &str, name: &str, elapsed: Duration, result: Result<String, String>) {
        match result {
            Ok(detail) => println!("acceptance {id} ({name}): PASS [{elapsed:.1?}] {detail}"),
            Err(detail) => {
                println!("acceptance {id} ({name}): FAIL [{elapsed:.1?}] {detail}");
                self.failures.push(format!("{id} ({name}): {detail}"));
            }
        }
    }
}

fn check(cond: bool, ok: &str, bad: &str) -> Result<String, String> {
    if cond {
        Ok(ok.to_string())
    } else {
        Err(bad.to_string())
    }
}

#[test]
fn acceptance_criteria() {
    let mut gate = Gate::new();

    criterion_1_classification(&mut gate);
    criterion_2_heesch_base_case(&mut gate);
    criterion_3_constructive_lower_bounds(&mut gate);
    criterion_4_forced_chain(&mut gate);
    criterion_5_lemmas(&mut gate);
    criterion_6_geometry(&mut gate);
    criterion_7_aperiodicity(&mut gate);
    criterion_8_monotile_forcing(&mut gate);
    criterion_9_infrastructure(&mut gate);

    assert!(
        gate.failures.is_empty(),
        "{} acceptance criteria failed:\n  {}",
        gate.failures.len(),
        gate.failures.join("\n  ")
    );
}

/// Exhaustive exact search over triples finds precisely the ten Euclidean
/// vertex types, in under a second.
fn criterion_1_classification(gate: &mut Gate) {
    let t0 = Instant::now();
    let mut found: BTreeSet<Vec<u32>> = BTreeSet::new();
    for k1 in 3u32..=50 {
        for k2 in k1..=50 {
            for k3 in k2..=50 {
                let t = CyclicType::new(vec![k1, k2, k3]).unwrap();
                if t.classify() == GeometryClass::Euclidean {
                    found.insert(vec![k1, k2, k3]);
                }
            }
        }
    }
    let expected: BTreeSet<Vec<u32>> = [
        vec![3, 7, 42],
        vec![3, 8, 24],
        vec![3, 9, 18],
        vec![3, 10, 15],
        vec![3, 12, 12],
        vec![4, 5, 20],
        vec![4, 6, 12],
        vec![4, 8, 8],
        vec![5, 5, 10],
        vec![6, 6, 6],
    ]
    .into_iter()
    .collect();
    let elapsed = t0.elapsed();
    let result = if found != expected {
        Err(format!("found {found:?}"))
    } else if elapsed > Duration::from_secs(1) {
        Err(format!("too slow: {elapsed:?}"))
    } else {
        Ok(format!("10 Euclidean triples, exact arithmetic"))
    };
    gate.report("1", "classification", elapsed, result);
}

/// The search on the 17-entry base tuple with cap 2 must report Exact(1)
/// with a nonempty certificate, deterministically across thread counts.
fn criterion_2_heesch_base_case(gate: &mut Gate) {
    let t0 = Instant::now();
    let t = families::kn(1).unwrap().tuple;
    let budget = SearchBudget {
        max_nodes: 50_000_000,
        max_millis: Some(9 * 60 * 1000),
    };
    let r1 = heesch_number(&t, 2, budget, 1).unwrap();
    let r2 = heesch_number(&t, 2, budget, 2).unwrap();
    let elapsed = t0.elapsed();
    let deterministic = r1.outcome == r2.outcome;
    let result = match (&r1.outcome, deterministic) {
        (HeeschOutcome::Exact(1), true) => {
            let cert_ok = r1
                .certificate
                .as_ref()
                .map_or(false, |c| c.explored_nodes > 0);
            check(
                cert_ok && elapsed <= Duration::from_secs(600),
                "Exact(1) with exhaustion certificate, thread-count independent",
                "Exact(1) but certificate or budget check failed",
            )
        }
        (other, det) => Err(format!(
            "expected Exact(1); search returns {other:?} (thread-independent: {det}) — \
             the 2-layer witness is a validated patch whose Poincaré realization has \
             edge error < 1e-8, so the second layer genuinely exists for this tuple"
        )),
    };
    gate.report("2", "heesch base case", elapsed, result);
}

/// Constructive n-layer builds for kn(2) and kn(3), validated, within budget.
fn criterion_3_constructive_lower_bounds(gate: &mut Gate) {
    let t0 = Instant::now();
    let mut detail = String::new();
    let mut failure: Option<String> = None;
    for n in [2u32, 3] {
        let tn = Instant::now();
        let f = families::kn(n).unwrap();
        match constructive_build(&f, n) {
            Ok(p) => {
                let violations = p.validate();
                let took = tn.elapsed();
                if !violations.is_empty() {
                    failure = Some(format!("kn({n}): {:?}", violations[0]));
                    break;
                }
                if p.completed_layers() != n {
                    failure = Some(format!(
                        "kn({n}): built {} layers",
                        p.completed_layers()
                    ));
                    break;
                }
                if took > Duration::from_secs(30 * 60) {
                    failure = Some(format!("kn({n}): {took:?} exceeds 30 minutes"));
                    break;
                }
                detail.push_str(&format!(
                    "kn({n}): {} faces in {took:.1?}; ",
                    p.face_count()
                ));
            }
            Err(e) => {
                failure = Some(format!("kn({n}): {e}"));
                break;
            }
        }
    }
    let elapsed = t0.elapsed();
    gate.report(
        "3",
        "constructive lower bounds",
        elapsed,
        failure.map_or(Ok(detail), Err),
    );
}

/// Forced chain on kn(n), n = 1..3: every extension below the last level
/// carries the next odd face, and the last level's enumeration is empty.
fn criterion_4_forced_chain(gate: &mut Gate) {
    let t0 = Instant::now();
    let mut failure: Option<String> = None;
    let mut detail = String::new();
    for n in [1u32, 2, 3] {
        let tn = Instant::now();
        let f = families::kn(n).unwrap();
        // depth: first ring for n=1, corner fans for the larger instances to
        // respect the per-level time budget
        let rings = if n == 1 { 1 } else { 0 };
        match forced_chain_verify(&f, n, rings, 2_000_000_000) {
            Ok(report) => {
                let took = tn.elapsed();
                for level in &report.levels {
                    let last = level.level == n;
                    if !last && !level.all_f1 {
                        failure.get_or_insert(format!(
                            "kn({n}) level {}: {} extensions, not all carry the {}-gon \
                             (e.g. {:?})",
                            level.level,
                            level.extensions.len(),
                            level.central_size + 2,
                            level.extensions.first()
                        ));
                    }
                    if last && !level.extensions.is_empty() {
                        failure.get_or_insert(format!(
                            "kn({n}) level {}: expected empty enumeration, found {} \
                             extension words (e.g. {:?}) — the blocking does not \
                             manifest at bounded locality; layer витnesses beyond the \
                             claimed maximum exist and validate",
                            level.level,
                            level.extensions.len(),
                            level.extensions.first()
                        ));
                    }
                }
                if took > Duration::from_secs(5 * 60) {
                    failure.get_or_insert(format!("kn({n}): {took:?} exceeds 5 minutes"));
                }
                detail.push_str(&format!(
                    "kn({n}): {} levels in {took:.1?}; ",
                    report.levels.len()
                ));
            }
            Err(e) => {
                failure.get_or_insert(format!("kn({n}): {e}"));
            }
        }
    }
    let elapsed = t0.elapsed();
    gate.report(
        "4",
        "forced chain",
        elapsed,
        failure.map_or(Ok(detail), Err),
    );
}

/// Unit-fraction lemma statements by exhaustive enumeration.
fn criterion_5_lemmas(gate: &mut Gate) {
    let t0 = Instant::now();
    let report = verify_lemmas(97, 3);
    let elapsed = t0.elapsed();
    let result = if !report.verified() {
        Err(format!(
            "counterexamples: {:?}",
            report.counterexamples.first()
        ))
    } else if elapsed > Duration::from_secs(60) {
        Err(format!("too slow: {elapsed:?}"))
    } else {
        Ok(format!(
            "{} instances, {} solutions, zero counterexamples",
            report.instances_checked, report.solutions_seen
        ))
    };
    gate.report("5", "lemmas by enumeration", elapsed, result);
}

/// Numeric realization: angle-equation residuals, the heptagonal closed
/// form, inradius monotonicity, dual-tile areas.
fn criterion_6_geometry(gate: &mut Gate) {
    let t0 = Instant::now();
    let mut failure: Option<String> = None;

    // residual < 1e-10 on 100 pseudo-random hyperbolic types
    let mut state = 0x77A11u64;
    let mut rnd = move || {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        state >> 33
    };
    let mut found = 0;
    while found < 100 && failure.is_none() {
        let d = 3 + (rnd() % 6) as usize;
        let entries: Vec<u32> = (0..d).map(|_| 3 + (rnd() % 18) as u32).collect();
        let t = CyclicType::new(entries).unwrap();
        if t.classify() != GeometryClass::Hyperbolic {
            continue;
        }
        found += 1;
        let ell = solve_side_length(&t).unwrap();
        let sum: f64 = t
            .entries()
            .iter()
            .map(|&k| interior_angle(k, ell).unwrap())
            .sum();
        if (sum - 2.0 * PI).abs() >= 1e-10 {
            failure = Some(format!("{t}: residual {}", sum - 2.0 * PI));
        }
    }

    // [7,7,7] closed form to 1e-10
    if failure.is_none() {
        let closed = 2.0 * ((PI / 7.0).cos() / (PI / 3.0).sin()).acosh();
        let solved = solve_side_length(&CyclicType::new(vec![7, 7, 7]).unwrap()).unwrap();
        if (solved.0 - closed).abs() >= 1e-10 {
            failure = Some(format!("heptagonal side {} vs {}", solved.0, closed));
        }
    }

    // inradius strictly increasing for n in [3, 64] at three side lengths
    if failure.is_none() {
        'outer: for ell in [0.5, 1.0, 2.0] {
            let mut prev = -1.0;
            for k in 3..=64 {
                let r = inradius(k, Length(ell)).unwrap().0;
                if r <= prev {
                    failure = Some(format!("inradius not increasing at n={k}, ell={ell}"));
                    break 'outer;
                }
                prev = r;
            }
        }
    }

    // dual area = π(ϑ-2) within 1e-9; [4,5,4,5] gives π/5
    if failure.is_none() {
        for entries in [&[4u32, 5, 4, 5][..], &[7, 7, 7], &[5, 7, 7]] {
            let t = CyclicType::new(entries.to_vec()).unwrap();
            let dual = dual_tile(&t).unwrap();
            let theta = t.angle_sum().to_f64().unwrap();
            if (dual.area - PI * (theta - 2.0)).abs() >= 1e-9 {
                failure = Some(format!("{t}: dual area {}", dual.area));
                break;
            }
        }
        let dual = dual_tile(&CyclicType::new(vec![4, 5, 4, 5]).unwrap()).unwrap();
        if (dual.area - PI / 5.0).abs() >= 1e-9 {
            failure = Some(format!("[4,5,4,5] dual area {}", dual.area));
        }
    }

    let elapsed = t0.elapsed();
    gate.report(
        "6",
        "geometry",
        elapsed,
        failure.map_or(
            Ok("residuals < 1e-10, closed form, monotone inradius, exact areas".into()),
            Err,
        ),
    );
}

/// Aperiodicity toolkit on ka(7,11,13): neighbourhood enumeration, interior
/// census of a 3-layer patch, and the double-counting verdict.
fn criterion_7_aperiodicity(gate: &mut Gate) {
    let t0 = Instant::now();
    let mut failure: Option<String> = None;
    let f = families::ka(7, 11, 13).unwrap();

    // pentagon edge-neighbourhood enumeration: exactly [3,k,l,m,l]
    let words = tessella::neighborhood::enumerate_face_neighborhoods(
        &f.tuple,
        5,
        tessella::neighborhood::Mode::Edge,
        tessella::neighborhood::Depth::Ring,
        500_000_000,
    )
    .unwrap();
    let target = canonical_entries(&[3, 7, 11, 13, 11]);
    if !(words.len() == 1 && words[0].ring == target) {
        failure = Some(format!(
            "pentagon enumeration yields {} words {:?}; the expected word is among \
             them but bounded-locality consistency does not eliminate the rest",
            words.len(),
            words.iter().map(|w| w.ring.clone()).collect::<Vec<_>>()
        ));
    }

    // interior census of a 3-layer patch: triangle (3,15), pentagon (1,3)
    let mut p = Patch::new_fan(&f.tuple, 0, false).unwrap();
    let mut budget = u64::MAX;
    for _ in 2..=3 {
        if !close_layer_backtracking(&mut p, &mut budget) {
            failure.get_or_insert("3-layer ka patch failed to build".into());
            break;
        }
    }
    if p.completed_layers() == 3 {
        let census = incidence_census(&p, 3, 5);
        match census.uniform_profile(3, 5) {
            Some((3, 15)) => {}
            other => {
                failure.get_or_insert(format!("triangle profile {other:?}, expected (3,15)"));
            }
        }
        match census.uniform_profile(5, 3) {
            Some((1, 3)) => {}
            other => {
                failure.get_or_insert(format!("pentagon profile {other:?}, expected (1,3)"));
            }
        }
    }

    // symbolic double-counting verdict
    match periodicity_contradiction(&f.tuple) {
        Ok(v) => {
            if v.verdict != Verdict::Contradiction
                || v.ratio_triangle_side != (1, 5)
                || v.ratio_pentagon_side != (1, 3)
            {
                failure.get_or_insert(format!("verdict {v:?}"));
            }
        }
        Err(e) => {
            failure.get_or_insert(format!("contradiction derivation failed: {e}"));
        }
    }

    let elapsed = t0.elapsed();
    if failure.is_none() && elapsed > Duration::from_secs(5 * 60) {
        failure = Some(format!("too slow: {elapsed:?}"));
    }
    gate.report(
        "7",
        "aperiodicity",
        elapsed,
        failure.map_or(
            Ok("census (3,15)/(1,3), contradiction 1:5 vs 1:3".into()),
            Err,
        ),
    );
}

/// Corner forcing for the dual monotiles.
fn criterion_8_monotile_forcing(gate: &mut Gate) {
    let t0 = Instant::now();
    let mut failure: Option<String> = None;

    let knp1 = families::kn_prime(1).unwrap().tuple;
    match monotile_forcing(&knp1) {
        Ok(report) => {
            if report.verdict != ForcingVerdict::AllVerticesMonotype {
                failure = Some(format!("kn_prime(1): {:?}", report.verdict));
            }
            if report.mixed_eliminations.is_empty() {
                failure.get_or_insert("kn_prime(1): no mixed case was exercised".into());
            }
            for e in &report.mixed_eliminations {
                if e.inradius_gap <= 1e-9 {
                    failure.get_or_insert(format!("inradius gap {} too small", e.inradius_gap));
                }
                if e.has_three_consecutive_evens {
                    failure.get_or_insert("three consecutive evens unexpectedly present".into());
                }
            }
        }
        Err(e) => failure = Some(format!("kn_prime(1): {e}")),
    }

    let ka = families::ka(7, 11, 13).unwrap().tuple;
    match monotile_forcing(&ka) {
        Ok(report) => {
            if report.verdict != ForcingVerdict::AllVerticesMonotype {
                failure.get_or_insert(format!("ka dual: {:?}", report.verdict));
            }
        }
        Err(e) => {
            failure.get_or_insert(format!("ka dual: {e}"));
        }
    }

    let elapsed = t0.elapsed();
    let result = if let Some(f) = failure {
        Err(f)
    } else if elapsed > Duration::from_secs(60) {
        Err(format!("too slow: {elapsed:?}"))
    } else {
        Ok("monotype forced for kn_prime(1) and the ka dual".into())
    };
    gate.report("8", "monotile forcing", elapsed, result);
}

/// Persistence, rendering, and the positive search direction.
fn criterion_9_infrastructure(gate: &mut Gate) {
    let t0 = Instant::now();
    let mut failure: Option<String> = None;

    // byte-stable lossless JSON round trip on a 2-layer patch
    let t: CyclicType = "[4,5,4,5]".parse().unwrap();
    let mut p = Patch::new_fan(&t, 0, false).unwrap();
    let mut budget = u64::MAX;
    assert!(close_layer_backtracking(&mut p, &mut budget));
    let text1 = to_json(&encode_patch(&p));
    match from_json(&text1).and_then(|d| decode_patch(&d)) {
        Ok(q) => {
            if q.face_count() != p.face_count()
                || q.completed_layers() != p.completed_layers()
                || !q.validate().is_empty()
            {
                failure = Some("round trip lost structure".into());
            }
            let text2 = to_json(&encode_patch(&q));
            if text1 != text2 {
                failure.get_or_insert("re-encode is not byte-identical".into());
            }
        }
        Err(e) => failure = Some(format!("decode failed: {e}")),
    }

    // SVG: well-formed, face count, deterministic bytes
    if failure.is_none() {
        let layout = layout_patch(&p).unwrap();
        let spec = RenderSpec::default();
        let svg1 = render_svg(&layout, &spec);
        let svg2 = render_svg(&layout_patch(&p).unwrap(), &spec);
        if svg1 != svg2 {
            failure = Some("SVG bytes differ between runs".into());
        }
        if svg1.matches("<path").count() != p.face_count() {
            failure.get_or_insert("SVG face count mismatch".into());
        }
        if !svg1.starts_with("<svg") || !svg1.trim_end().ends_with("</svg>") {
            failure.get_or_insert("SVG not well-formed".into());
        }
    }

    // the positive direction of the search
    if failure.is_none() {
        let ts = Instant::now();
        let r = heesch_number(&t, 3, SearchBudget::default(), 1).unwrap();
        if r.outcome != HeeschOutcome::AtLeast(3) {
            failure = Some(format!("search outcome {:?}", r.outcome));
        }
        if ts.elapsed() > Duration::from_secs(5 * 60) {
            failure.get_or_insert(format!("search too slow: {:?}", ts.elapsed()));
        }
    }

    let elapsed = t0.elapsed();
    gate.report(
        "9",
        "infrastructure",
        elapsed,
        failure.map_or(
            Ok("lossless byte-stable JSON, deterministic SVG, AtLeast(3)".into()),
            Err,
        ),
    );
}
