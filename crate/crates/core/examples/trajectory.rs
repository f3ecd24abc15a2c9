//! One trajectory near a 3-cycle: the itinerary through the balls around
//! the equilibria and the state at the end.

use heteroclinic::network::{build_simplex_field, DirectedGraph, Margins};
use heteroclinic::simulation::{integrate, record_itinerary, IntegratorConfig};

fn main() {
    let g = DirectedGraph::new(3, [(1, 2), (2, 3), (3, 1)]).unwrap();
    let field = build_simplex_field(&g, &Margins::default()).unwrap();
    let x0 = [0.9, 0.05, 1e-3];
    let cfg = IntegratorConfig { t_max: 200.0, ..Default::default() };

    let it = record_itinerary(&field, &x0, 0.1, &cfg, None).unwrap();
    println!("visits {:?}, follows the graph {}", it.nodes(), it.follows(&g));
    for v in it.visits.iter().take(6) {
        println!("  xi_{} from t = {:.2} to {:?}", v.node, v.entry_time, v.exit_time);
    }
    let traj = integrate(&field, &x0, &cfg).unwrap();
    println!("{} steps, last state {:?}", traj.times.len(), traj.last());
}
