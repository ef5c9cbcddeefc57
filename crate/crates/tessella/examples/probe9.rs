use tessella::neighborhood::{neighborhood_extensions, Depth, Mode};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let fam = args.get(1).map(|s| s.as_str()).unwrap_or("kn1");
    let level: u32 = args.get(2).map(|s| s.parse().unwrap()).unwrap_or(1);
    let rings: i32 = args.get(3).map(|s| s.parse().unwrap()).unwrap_or(0);
    let budget: u64 = args
        .get(4)
        .map(|s| s.parse().unwrap())
        .unwrap_or(2_000_000_000);

    let inst = match fam {
        "kn1" => tessella::families::kn(1).unwrap(),
        "kn2" => tessella::families::kn(2).unwrap(),
        "kn3" => tessella::families::kn(3).unwrap(),
        "knp1" => tessella::families::kn_prime(1).unwrap(),
        _ => panic!("unknown family"),
    };
    let t = &inst.tuple;
    let evens = inst.evens.as_ref().unwrap();
    let odds = tessella::families::odd_sizes(t);
    let central = odds[level as usize];
    let seed: Vec<u32> = if level == 0 {
        vec![evens.get(1).unwrap(), evens.get(2).unwrap()]
    } else {
        let prev = odds[level as usize - 1];
        let e = evens.get(3 * level).unwrap();
        vec![e, prev, e]
    };
    let depth = match rings {
        -1 => Depth::CornersOnly,
        0 => Depth::Ring,
        n => Depth::RingPlus(n as u32),
    };
    let t0 = std::time::Instant::now();
    match neighborhood_extensions(t, central, &seed, Mode::Edge, depth, budget) {
        Ok(words) => {
            println!(
                "{fam} level {level} ({central}-gon, seed {seed:?}) depth {depth:?}: {} words in {:?}",
                words.len(),
                t0.elapsed()
            );
            let next_odd = central + 2;
            for w in &words {
                println!(
                    "  {:?}  contains {}-gon: {}",
                    w.ring,
                    next_odd,
                    w.contains(next_odd)
                );
            }
        }
        Err(e) => println!("{fam} level {level}: error after {:?}: {e}", t0.elapsed()),
    }
}
