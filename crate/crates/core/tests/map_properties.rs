//! Algebraic invariants of monomial maps, cone witnesses and turn counts.

use heteroclinic::bowtie::{compute_parameters, max_turns, membership_log, BowtieTable, Cycle, TurnCount};
use heteroclinic::cone::{negative_cone, ConeVerdict};
use heteroclinic::maps::{compose, iterate, local_map, path_map};
use heteroclinic::network::{DirectedGraph, SimplexField, Spectrum};
use heteroclinic::rational::{int, rat, Rat, RatMatrix};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rat> {
    (1i64..=9, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

/// A 4-node network: the cycle 1 -> 2 -> 3 -> 1 plus 3 -> 4 -> 1.
fn spectrum() -> impl Strategy<Value = Spectrum> {
    prop::collection::vec(small_rat(), 12).prop_map(|m| {
        let edges = [(1, 2), (2, 3), (3, 1), (3, 4), (4, 1)];
        let mut a = RatMatrix::zeros(4, 4);
        let mut k = 0;
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    let positive = edges.contains(&(i + 1, j + 1));
                    a[(i, j)] = if positive { m[k].clone() } else { -m[k].clone() };
                    k += 1;
                }
            }
        }
        let f = SimplexField::from_matrix(a).unwrap();
        assert!(DirectedGraph::new(4, edges).is_ok());
        f.spectrum()
    })
}

fn neg_logs(n: usize) -> impl Strategy<Value = Vec<Rat>> {
    prop::collection::vec((1i64..=50, 1i64..=7).prop_map(|(p, q)| rat(-p, q)), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_is_associative(s in spectrum()) {
        let f = local_map(&s.equilibrium(1), 3, 2).unwrap();
        let g = local_map(&s.equilibrium(2), 1, 3).unwrap();
        let h = local_map(&s.equilibrium(3), 2, 1).unwrap();
        let left = f.then(&g).unwrap().then(&h).unwrap();
        let right = f.then(&g.then(&h).unwrap()).unwrap();
        prop_assert_eq!(&left.exponents, &right.exponents);
        prop_assert_eq!(left.exponents, compose(&[f, g, h]).unwrap().exponents);
    }

    #[test]
    fn iterates_add(s in spectrum(), p in 1u32..6, q in 1u32..6) {
        let ret = path_map(&s, &[1, 2, 3, 1, 2]).unwrap();
        let lhs = iterate(&ret, p + q).unwrap();
        let rhs = iterate(&ret, p).unwrap().then(&iterate(&ret, q).unwrap()).unwrap();
        prop_assert_eq!(lhs.exponents, rhs.exponents);
    }

    #[test]
    fn log_action_is_linear(s in spectrum(), l1 in neg_logs(3), l2 in neg_logs(3), c in small_rat()) {
        let m = path_map(&s, &[1, 2, 3, 4, 1, 2]).unwrap();
        let mix: Vec<Rat> = l1.iter().zip(&l2).map(|(a, b)| a + &c * b).collect();
        let (y1, y2) = (m.apply_log(&l1).unwrap(), m.apply_log(&l2).unwrap());
        let want: Vec<Rat> = y1.iter().zip(&y2).map(|(a, b)| a + &c * b).collect();
        prop_assert_eq!(m.apply_log(&mix).unwrap(), want);
    }

    #[test]
    fn float_evaluation_matches_log_action(s in spectrum(), l in prop::collection::vec(-6.0f64..-0.5, 3)) {
        let m = path_map(&s, &[1, 2, 3, 1, 2]).unwrap();
        let x: Vec<f64> = l.iter().map(|v| v.exp()).collect();
        let direct = m.evaluate_f64(&x).unwrap();
        let via_logs = m.apply_log_f64(&l).unwrap();
        for (a, b) in direct.iter().zip(&via_logs) {
            // outside the normal f64 range only the log form is meaningful
            if !(f64::MIN_POSITIVE.ln()..f64::MAX.ln()).contains(b) {
                continue;
            }
            prop_assert!((a.ln() - b).abs() <= 1e-9 * b.abs().max(1.0), "{} vs {}", a.ln(), b);
        }
    }

    #[test]
    fn cone_witnesses_satisfy_every_form(forms in prop::collection::vec(prop::collection::vec(-4i64..=4, 3), 1..5)) {
        let forms: Vec<Vec<Rat>> = forms.into_iter().map(|f| f.into_iter().map(int).collect()).collect();
        if let ConeVerdict::Feasible(w) = negative_cone(3, &forms) {
            prop_assert!(w.iter().all(|v| v.is_negative()));
            for f in &forms {
                let dot = f.iter().zip(&w).fold(Rat::zero(), |acc, (a, b)| acc + a * b);
                prop_assert!(dot.is_positive());
            }
        }
    }

    #[test]
    fn turn_sets_are_nested(l in neg_logs(3)) {
        let p = compute_parameters(&BowtieTable::preset()).unwrap();
        let l = [l[0].clone(), l[1].clone(), l[2].clone()];
        for cycle in [Cycle::R, Cycle::L] {
            let k = match max_turns(&p, cycle, &l) {
                Ok(TurnCount::Finite(k)) => k,
                _ => continue,
            };
            for n in 1..=k {
                prop_assert!(membership_log(&p, cycle, n, &l).unwrap());
            }
            prop_assert!(!membership_log(&p, cycle, k + 1, &l).unwrap());
        }
    }
}
