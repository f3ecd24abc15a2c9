//! Realize a directed graph as a simplex-method field and print its
//! coefficients and the eigenvalue table. A graph with a two-cycle is
//! rejected.

use heteroclinic::network::{build_simplex_field, validate_graph, DirectedGraph, Margins};
use heteroclinic::rational::format_rat;

fn main() {
    let g = DirectedGraph::new(4, [(1, 2), (2, 3), (3, 1), (2, 4), (4, 1)]).unwrap();
    println!("{:?}", validate_graph(&g));
    let field = build_simplex_field(&g, &Margins::default()).unwrap();
    print!("{}", field.to_csv());

    let s = field.spectrum();
    for j in 1..=s.n() {
        let row: Vec<String> = (1..=s.n()).map(|k| format!("{:>5}", format_rat(s.eigenvalue(j, k)))).collect();
        println!("xi_{j}: {}", row.join(" "));
    }

    let bad = DirectedGraph::new(3, [(1, 2), (2, 1), (2, 3)]).unwrap();
    println!("with 1 <-> 2: {:?}", validate_graph(&bad));
}
