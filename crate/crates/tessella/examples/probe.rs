use tessella::neighborhood::{enumerate_face_neighborhoods, neighborhood_extensions, Depth, Mode};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let which = args.get(1).map(|s| s.as_str()).unwrap_or("ka");
    match which {
        "ka" => {
            let t = tessella::families::ka(7, 11, 13).unwrap().tuple;
            let t0 = std::time::Instant::now();
            let words = enumerate_face_neighborhoods(&t, 5, Mode::Edge, Depth::Ring, 100_000_000).unwrap();
            println!("ka pentagon depth-2 words ({:?}):", t0.elapsed());
            for w in &words { println!("  {:?}", w.ring); }
        }
        "ka1" => {
            let t = tessella::families::ka(7, 11, 13).unwrap().tuple;
            let words = enumerate_face_neighborhoods(&t, 5, Mode::Edge, Depth::CornersOnly, 100_000_000).unwrap();
            println!("ka pentagon depth-1 words:");
            for w in &words { println!("  {:?}", w.ring); }
        }
        "kn1block" => {
            let t = tessella::families::kn(1).unwrap().tuple;
            let t0 = std::time::Instant::now();
            // level-1 seed: 7-gon flanked by [k_3, 5, k_3] = [12, 5, 12]
            let words = neighborhood_extensions(&t, 7, &[12, 5, 12], Mode::Edge, Depth::Ring, 1_000_000_000).unwrap();
            println!("kn(1) 7-gon [12,5,12] depth-2 words ({:?}): {}", t0.elapsed(), words.len());
            for w in &words { println!("  {:?}", w.ring); }
        }
        "kn1block1" => {
            let t = tessella::families::kn(1).unwrap().tuple;
            let words = neighborhood_extensions(&t, 7, &[12, 5, 12], Mode::Edge, Depth::CornersOnly, 100_000_000).unwrap();
            println!("kn(1) 7-gon [12,5,12] depth-1 words: {}", words.len());
            for w in &words { println!("  {:?}", w.ring); }
        }
        "kn1f15" => {
            let t = tessella::families::kn(1).unwrap().tuple;
            let t0 = std::time::Instant::now();
            let words = neighborhood_extensions(&t, 5, &[8, 10], Mode::Edge, Depth::Ring, 1_000_000_000).unwrap();
            println!("kn(1) 5-gon [8,10] depth-2 words ({:?}): {}", t0.elapsed(), words.len());
            for w in &words { println!("  {:?}", w.ring); }
        }
        _ => eprintln!("unknown probe"),
    }
}
