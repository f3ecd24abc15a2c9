//! The four paths through the shared connection of the Kirk-Silber preset:
//! the exact verdict, then grid evidence for each.

use heteroclinic::netspec::{NetworkSpec, Preset};
use heteroclinic::switching::{classify_paths, verify_shadowing, CommonConnectionConfig, GridSpec, PathLabel};

fn main() {
    let spec = NetworkSpec::preset(Preset::KirkSilber);
    let s = spec.field().unwrap().spectrum();
    let cfg = CommonConnectionConfig::from_spectrum(&s, (1, 2), (3, 4), (3, 4)).unwrap();
    println!("q1 = {}, q2 = {}", cfg.q1(), cfg.q2());

    let verdict = classify_paths(&cfg).unwrap();
    let grid = GridSpec::default();
    for label in PathLabel::ALL {
        let walk = label.walk(&cfg, &[1, 2]);
        let grid_hit = verify_shadowing(&s, &walk, &grid).unwrap().is_witness();
        println!("{label:12} {walk:?} {:?} grid witness {grid_hit}", verdict.get(label));
    }
}
