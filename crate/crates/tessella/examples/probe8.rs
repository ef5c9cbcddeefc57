use tessella::heesch::constructive_build;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let n: u32 = args.get(1).map(|s| s.parse().unwrap()).unwrap_or(3);
    let f = tessella::families::kn(n).unwrap();
    let t0 = std::time::Instant::now();
    match constructive_build(&f, n) {
        Ok(p) => {
            println!(
                "kn({n}) built {} layers in {:?}: faces {}, vertices {}, hedges {}, boundary {}",
                p.completed_layers(),
                t0.elapsed(),
                p.face_count(),
                p.vertex_count(),
                p.hedge_count(),
                p.boundary_len()
            );
            let t1 = std::time::Instant::now();
            let violations = p.validate();
            println!("validate: {} violations in {:?}", violations.len(), t1.elapsed());
        }
        Err(e) => println!("build failed after {:?}: {e}", t0.elapsed()),
    }
}
