use tessella::heesch::{heesch_number, SearchBudget};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let which = args.get(1).map(|s| s.as_str()).unwrap_or("kn1");
    match which {
        "kn1" => {
            let t = tessella::families::kn(1).unwrap().tuple;
            let t0 = std::time::Instant::now();
            let r = heesch_number(&t, 2, SearchBudget { max_nodes: 2_000_000_000, max_millis: Some(1_800_000) }, 1).unwrap();
            println!("kn(1) cap 2 -> {:?} in {:?}", r.outcome, t0.elapsed());
            if let Some(c) = &r.certificate {
                println!("nodes: {}, blocked layer: {}, dead words: {}", c.explored_nodes, c.blocked_layer, c.dead_end_words.len());
                for w in c.dead_end_words.iter().take(12) { println!("  dead: {:?}", w); }
            }
        }
        "4545" => {
            let t: tessella::CyclicType = "[4,5,4,5]".parse().unwrap();
            let t0 = std::time::Instant::now();
            let r = heesch_number(&t, 3, SearchBudget::default(), 1).unwrap();
            println!("[4,5,4,5] cap 3 -> {:?} in {:?}", r.outcome, t0.elapsed());
        }
        _ => {}
    }
}
