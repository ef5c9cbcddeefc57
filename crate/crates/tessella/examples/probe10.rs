use tessella::heesch::forced_chain_verify;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let n: u32 = args.get(1).map(|s| s.parse().unwrap()).unwrap_or(1);
    let rings: u32 = args.get(2).map(|s| s.parse().unwrap()).unwrap_or(0);
    let fam = args.get(3).map(|s| s.as_str()).unwrap_or("kn");
    let inst = if fam == "knp" {
        tessella::families::kn_prime(n).unwrap()
    } else {
        tessella::families::kn(n).unwrap()
    };
    let t0 = std::time::Instant::now();
    match forced_chain_verify(&inst, n, rings, 3_000_000_000) {
        Ok(report) => {
            println!("{fam}({n}) rings={rings}: blocked={} verified={} in {:?}", report.blocked, report.verified(), t0.elapsed());
            for l in &report.levels {
                println!(
                    "  level {} ({}-gon, seed {:?}, {} contexts): {} words, all_f1={}",
                    l.level, l.central_size, l.seed, l.contexts, l.extensions.len(), l.all_f1
                );
                for w in l.extensions.iter().take(6) {
                    println!("    {:?}", w);
                }
            }
        }
        Err(e) => println!("error after {:?}: {e}", t0.elapsed()),
    }
}
