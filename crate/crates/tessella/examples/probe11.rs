use tessella::cyclic::{CyclicType, GeometryClass};
use tessella::heesch::{heesch_number, HeeschOutcome, SearchBudget};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    match args.get(1).map(|s| s.as_str()).unwrap_or("scan") {
        "scan" => {
            // hunt small hyperbolic types with small exact Heesch numbers
            let mut candidates: Vec<Vec<u32>> = Vec::new();
            for a in 3..=9u32 {
                for b in a..=9 {
                    for c in b..=12 {
                        candidates.push(vec![a, b, c]);
                    }
                }
            }
            for a in 3..=6u32 {
                for b in 3..=6 {
                    for c in 3..=6 {
                        for d in 3..=6 {
                            candidates.push(vec![a, b, c, d]);
                        }
                    }
                }
            }
            for entries in candidates {
                let Ok(t) = CyclicType::new(entries) else {
                    continue;
                };
                if t.classify() != GeometryClass::Hyperbolic {
                    continue;
                }
                let budget = SearchBudget {
                    max_nodes: 300_000,
                    max_millis: Some(10_000),
                };
                let Ok(r) = heesch_number(&t, 3, budget, 1) else {
                    continue;
                };
                if let HeeschOutcome::Exact(e) = r.outcome {
                    let nodes = r.certificate.as_ref().map(|c| c.explored_nodes).unwrap_or(0);
                    println!("{t} -> Exact({e}), nodes {nodes}");
                }
            }
        }
        "one" => {
            let t: CyclicType = args[2].parse().unwrap();
            let cap: u32 = args.get(3).map(|s| s.parse().unwrap()).unwrap_or(3);
            let t0 = std::time::Instant::now();
            let r = heesch_number(&t, cap, SearchBudget::default(), 1).unwrap();
            println!("{t} cap {cap} -> {:?} in {:?}", r.outcome, t0.elapsed());
            if let Some(c) = r.certificate {
                println!("nodes {}, dead words {:?}", c.explored_nodes, c.dead_end_words.iter().take(6).collect::<Vec<_>>());
            }
        }
        _ => {}
    }
}
