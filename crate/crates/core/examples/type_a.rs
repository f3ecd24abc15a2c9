//! A general linear global map satisfying Assumption 1: thin and thick
//! cusps decide the missing path. Grid sampling in the plane agrees.

use heteroclinic::rational::{int, rat};
use heteroclinic::switching::{classify_paths, stable_plane_paths, CommonConnectionConfig, GlobalMap, PathLabel};

fn main() {
    let kappa = [[rat(3, 2), rat(1, 3)], [rat(2, 5), rat(5, 4)]];
    for (q1, q2) in [(int(2), int(3)), (rat(1, 2), rat(1, 3)), (rat(1, 2), int(3)), (int(2), rat(1, 3))] {
        let cfg = CommonConnectionConfig {
            one: 1,
            two: 2,
            alpha: 3,
            a: 4,
            beta: 3,
            b: 4,
            c_1alpha: int(1),
            c_1a: q1.clone(),
            e_2beta: int(1),
            e_2b: q2.clone(),
            psi: GlobalMap::GeneralLinear { kappa: kappa.clone(), assumption1: true },
        };
        let missing = classify_paths(&cfg).unwrap().missing();
        let sample = stable_plane_paths(&cfg, 1e-2, 400, 12.0);
        let sampled: Vec<PathLabel> = PathLabel::ALL.into_iter().filter(|&p| !sample.realized(p)).collect();
        println!("q1 {q1:>3} q2 {q2:>3}: missing {missing:?}, not sampled {sampled:?}");
    }
}
