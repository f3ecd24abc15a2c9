//! Local maps at the equilibria of a 3-cycle, their composition into a return
//! map on `H_1^{out,2}` and its powers.

use heteroclinic::maps::{iterate, path_map};
use heteroclinic::network::{build_simplex_field, DirectedGraph, Margins};
use heteroclinic::rational::{format_rat, rat};

fn main() {
    let g = DirectedGraph::new(4, [(1, 2), (2, 3), (3, 1), (3, 4), (4, 1)]).unwrap();
    let margins = Margins::new(rat(1, 1), rat(2, 1), rat(1, 2));
    let s = build_simplex_field(&g, &margins).unwrap().spectrum();

    let ret = path_map(&s, &[1, 2, 3, 1, 2]).unwrap();
    println!("return map 1 -> 2 -> 3 -> 1:\n{}", ret.to_text());
    for n in [2, 5] {
        let p = iterate(&ret, n).unwrap();
        let rows: Vec<Vec<String>> =
            p.relevant_exponents().to_rows().iter().map(|r| r.iter().map(format_rat).collect()).collect();
        println!("relevant exponents after {n} turns: {rows:?}");
    }

    let x = [0.9, 1e-3, 1e-4]; // x1, x3, x4 on the section x2 = h
    println!("image of {x:?}: {:?}", ret.evaluate_f64(&x).unwrap());
}
