//! ODE check of the House 3 -> 4 region: trajectories coming from xi_3 can
//! only turn toward xi_4 when the transverse contraction at xi_1 is weak.

use heteroclinic::netspec::{NetworkSpec, Preset};
use heteroclinic::network::SimplexField;
use heteroclinic::rational::rat;
use heteroclinic::simulation::{record_itinerary, IntegratorConfig};

fn house_with_a14(num: i64, den: i64) -> SimplexField {
    NetworkSpec::preset(Preset::House).field().unwrap().with_override(1, 4, rat(num, den)).unwrap()
}

/// Itineraries from the incoming side of `xi_1`, arriving from `xi_3`
/// (x5 negligible), over a range of x2 and x4.
fn destinations(field: &SimplexField) -> Vec<Vec<usize>> {
    let cfg = IntegratorConfig { t_max: 1e5, max_step: 20.0, max_events: 4, ..Default::default() };
    let mut out = Vec::new();
    for l2 in [-4.0, -8.0, -16.0, -32.0] {
        for l4 in [-1.0, -2.0, -4.0, -8.0, -16.0, -32.0, -64.0] {
            let x0 = [1.0, f64::exp(l2), 0.05, f64::exp(l4), f64::exp(-400.0)];
            let it = record_itinerary(field, &x0, 0.1, &cfg, Some(1)).unwrap();
            // large x4 starts outside the ball and re-enters it
            let mut nodes = it.nodes();
            nodes.dedup();
            out.push(nodes);
        }
    }
    out
}

#[test]
fn house_three_to_four_needs_weak_transverse_contraction() {
    let weak = house_with_a14(-1, 2);
    let s = weak.spectrum();
    // c14/e24 < c13/e23
    assert!(-s.eigenvalue(1, 4) / s.eigenvalue(2, 4) < -s.eigenvalue(1, 3) / s.eigenvalue(2, 3));
    let weak_paths = destinations(&weak);
    assert!(weak_paths.iter().any(|p| p.starts_with(&[1, 2, 4])), "{weak_paths:?}");
    assert!(weak_paths.iter().any(|p| p.starts_with(&[1, 2, 3])), "{weak_paths:?}");

    let strong = house_with_a14(-3, 1);
    let s = strong.spectrum();
    assert!(-s.eigenvalue(1, 4) / s.eigenvalue(2, 4) > -s.eigenvalue(1, 3) / s.eigenvalue(2, 3));
    let strong_paths = destinations(&strong);
    assert!(strong_paths.iter().all(|p| p.starts_with(&[1, 2, 3])), "{strong_paths:?}");
}
