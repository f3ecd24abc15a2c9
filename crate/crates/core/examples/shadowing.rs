//! Grid search for a point of an outgoing section following a given walk
//! through the House network, with the exact verdict next to it.

use heteroclinic::netspec::{NetworkSpec, Preset};
use heteroclinic::switching::{path_status_exact, verify_shadowing, GridSpec};

fn main() {
    let s = NetworkSpec::preset(Preset::House).field().unwrap().spectrum();
    let grid = GridSpec { per_axis: 32, ..GridSpec::default() };
    for walk in [vec![3, 1, 2, 4], vec![5, 1, 2, 3], vec![3, 1, 2, 3, 1, 2, 4]] {
        let (status, _) = path_status_exact(&s, &walk).unwrap();
        println!("{walk:?}: exact {status:?}, grid {:?}", verify_shadowing(&s, &walk, &grid).unwrap());
    }
}
