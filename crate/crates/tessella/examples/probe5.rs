use tessella::heesch::{heesch_number, SearchBudget};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let cap: u32 = args.get(1).map(|s| s.parse().unwrap()).unwrap_or(3);
    let nodes: u64 = args.get(2).map(|s| s.parse().unwrap()).unwrap_or(500_000_000);
    let t = tessella::families::kn(1).unwrap().tuple;
    let t0 = std::time::Instant::now();
    let r = heesch_number(&t, cap, SearchBudget { max_nodes: nodes, max_millis: Some(3_000_000) }, 1).unwrap();
    println!("kn(1) cap {cap} -> {:?} in {:?}", r.outcome, t0.elapsed());
    if let Some(c) = &r.certificate {
        println!("nodes: {}, blocked layer: {}, dead words: {}", c.explored_nodes, c.blocked_layer, c.dead_end_words.len());
        for w in c.dead_end_words.iter().take(10) { println!("  dead: {:?}", w); }
    }
}
