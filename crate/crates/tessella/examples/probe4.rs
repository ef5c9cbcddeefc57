use tessella::heesch::{heesch_number, SearchBudget};

fn main() {
    let t = tessella::families::kn(1).unwrap().tuple;
    let r = heesch_number(&t, 2, SearchBudget::default(), 1).unwrap();
    let p = &r.witness;
    println!("outcome {:?}, layers {}", r.outcome, p.completed_layers());
    let violations = p.validate();
    println!("violations: {}", violations.len());
    for v in violations.iter().take(10) { println!("  {:?}", v); }
    // ring words of every layer-1 odd face
    for f in p.all_faces() {
        if p.face_layer(f) == 1 {
            let size = p.face_size(f);
            if size % 2 == 1 {
                let ring: Vec<u32> = p.face_neighbors(f).iter().map(|&g| p.face_size(g)).collect();
                println!("fan {}-gon face {}: ring {:?}", size, f, ring);
            }
        }
    }
    // words of all vertices of fan faces (all should be interior, exact type)
    let canonical = t.canonical_form();
    let mut bad = 0;
    for v in p.all_vertices() {
        if p.vertex_layer(v) <= 1 {
            if !p.is_interior_vertex(v) { bad += 1; println!("layer-1 vertex {v} still boundary"); }
            else {
                let w = p.corner_word(v);
                if !canonical.matches_cyclically(&w) { bad += 1; println!("vertex {v} word mismatch: {:?}", w); }
            }
        }
    }
    println!("bad layer-1 vertices: {bad}");
}
