use tessella::heesch::{heesch_number, SearchBudget};
use tessella::patch::{close_layer_backtracking, Patch};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let which = args.get(1).map(|s| s.as_str()).unwrap_or("kn2exist");
    match which {
        "kn2exist" => {
            // pure existence: can kn(2) close layers 2 and 3?
            let t = tessella::families::kn(2).unwrap().tuple;
            let mut p = Patch::new_fan(&t, 0, false).unwrap();
            for layer in 2..=3u32 {
                let t0 = std::time::Instant::now();
                let mut budget = 200_000_000u64;
                let ok = close_layer_backtracking(&mut p, &mut budget);
                println!(
                    "kn(2) layer {layer}: {} in {:?} (faces {}, boundary {})",
                    if ok { "CLOSED" } else { "FAILED" },
                    t0.elapsed(),
                    p.face_count(),
                    p.boundary_len()
                );
                if !ok {
                    break;
                }
            }
            println!("validate: {} violations", p.validate().len());
        }
        "kn1exist3" => {
            let t = tessella::families::kn(1).unwrap().tuple;
            let mut p = Patch::new_fan(&t, 0, false).unwrap();
            for layer in 2..=3u32 {
                let t0 = std::time::Instant::now();
                let mut budget = 500_000_000u64;
                let ok = close_layer_backtracking(&mut p, &mut budget);
                println!(
                    "kn(1) layer {layer}: {} in {:?} (faces {}, boundary {}, budget left {budget})",
                    if ok { "CLOSED" } else { "FAILED" },
                    t0.elapsed(),
                    p.face_count(),
                    p.boundary_len()
                );
                if !ok {
                    break;
                }
            }
        }
        "kn2heesch" => {
            let cap: u32 = args.get(2).map(|s| s.parse().unwrap()).unwrap_or(3);
            let t = tessella::families::kn(2).unwrap().tuple;
            let t0 = std::time::Instant::now();
            let r = heesch_number(
                &t,
                cap,
                SearchBudget {
                    max_nodes: 3_000_000_000,
                    max_millis: Some(10_000_000),
                },
                1,
            )
            .unwrap();
            println!("kn(2) cap {cap} -> {:?} in {:?}", r.outcome, t0.elapsed());
            if let Some(c) = &r.certificate {
                println!(
                    "nodes {}, blocked layer {}, dead words {}",
                    c.explored_nodes,
                    c.blocked_layer,
                    c.dead_end_words.len()
                );
            }
        }
        _ => {}
    }
}
