//! Exact feasibility of open cones inside the negative orthant.

use heteroclinic::cone::{negative_cone, ConeVerdict};
use heteroclinic::rational::{format_rat, int, rat, Rat};

fn show(label: &str, dim: usize, forms: &[Vec<Rat>]) {
    match negative_cone(dim, forms) {
        ConeVerdict::Feasible(w) => {
            let w: Vec<String> = w.iter().map(format_rat).collect();
            println!("{label}: feasible at ({})", w.join(", "));
        }
        other => println!("{label}: {other:?}"),
    }
}

fn main() {
    show("l1 > 2 l2", 2, &[vec![int(1), int(-2)]]);
    // l2 > l1/2 > l2/4 forces l2 > 0
    show("l2 > l1/2, l1 > l2/2", 2, &[vec![rat(-1, 2), int(1)], vec![int(1), rat(-1, 2)]]);
    show("l1 > l2, l2 > l1", 2, &[vec![int(1), int(-1)], vec![int(-1), int(1)]]);
    let forms = vec![vec![int(1), rat(-7, 2), int(0)], vec![int(-1), int(3), rat(1, 10)]];
    show("thin window in 3d", 3, &forms);
}
