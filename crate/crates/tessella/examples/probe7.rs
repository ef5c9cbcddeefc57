use tessella::heesch::{heesch_number, SearchBudget};
use tessella::layout::layout_patch;

fn main() {
    let t = tessella::families::kn(1).unwrap().tuple;
    let r = heesch_number(&t, 2, SearchBudget::default(), 1).unwrap();
    let p = &r.witness;
    println!(
        "witness: layers {}, faces {}, violations {}",
        p.completed_layers(),
        p.face_count(),
        p.validate().len()
    );
    match layout_patch(p) {
        Ok(layout) => {
            println!(
                "geometric layout: {} points, max edge error {:.3e}, max vertex spread {:.3e}",
                layout.points.len(),
                layout.max_edge_error,
                layout.max_vertex_spread
            );
        }
        Err(e) => println!("layout failed: {e}"),
    }
}
