use tessella::neighborhood::{enumerate_face_neighborhoods, neighborhood_extensions, Depth, Mode};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let which = args.get(1).map(|s| s.as_str()).unwrap_or("");
    let extra: u32 = args.get(2).map(|s| s.parse().unwrap()).unwrap_or(1);
    match which {
        "ka-deep" => {
            let t = tessella::families::ka(7, 11, 13).unwrap().tuple;
            let t0 = std::time::Instant::now();
            match enumerate_face_neighborhoods(&t, 5, Mode::Edge, Depth::RingPlus(extra), 4_000_000_000) {
                Ok(words) => {
                    println!("ka pentagon RingPlus({extra}) words ({:?}):", t0.elapsed());
                    for w in &words { println!("  {:?}", w.ring); }
                }
                Err(e) => println!("error after {:?}: {e}", t0.elapsed()),
            }
        }
        "kn1-block" => {
            let t = tessella::families::kn(1).unwrap().tuple;
            let t0 = std::time::Instant::now();
            match neighborhood_extensions(&t, 7, &[12, 5, 12], Mode::Edge, Depth::Ring, 4_000_000_000) {
                Ok(words) => {
                    println!("kn1 7-gon [12,5,12] Ring words ({:?}): {}", t0.elapsed(), words.len());
                    for w in &words { println!("  {:?}", w.ring); }
                }
                Err(e) => println!("error after {:?}: {e}", t0.elapsed()),
            }
        }
        "kn1-f15" => {
            let t = tessella::families::kn(1).unwrap().tuple;
            let t0 = std::time::Instant::now();
            match neighborhood_extensions(&t, 5, &[8, 10], Mode::Edge, Depth::Ring, 4_000_000_000) {
                Ok(words) => {
                    println!("kn1 5-gon [8,10] Ring words ({:?}): {}", t0.elapsed(), words.len());
                    for w in &words { println!("  {:?}", w.ring); }
                }
                Err(e) => println!("error after {:?}: {e}", t0.elapsed()),
            }
        }
        _ => eprintln!("unknown"),
    }
}
