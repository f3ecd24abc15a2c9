//! The ten acceptance criteria, one test each. Every test prints a single
//! `criterion N: PASS|FAIL ...` line before asserting.

use std::time::Instant;

use heteroclinic::bowtie::{
    classify_transition, compute_parameters, compute_parameters_unchecked, max_turns, max_turns_iterated,
    membership_log, transition_witness, turn_exponent, witness_for_l_turns, BowtieError, BowtieMaps, BowtieTable,
    Cycle, LogPoint, Transition, TurnCount,
};
use heteroclinic::maps::iterate;
use heteroclinic::netspec::KIRK_SILBER_EDGES;
use heteroclinic::network::{DirectedGraph, SimplexField};
use heteroclinic::rational::{from_f64, int, rat, to_f64, Rat, RatMatrix};
use heteroclinic::simulation::{bowtie_ensemble, EnsembleConfig};
use heteroclinic::switching::{
    classify_paths, house_regions, stable_plane_paths, verify_shadowing, CommonConnectionConfig, GlobalMap,
    GridSpec, PathLabel, ShadowOutcome, HOUSE_EDGES,
};
use nalgebra::DMatrix;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn verdict(n: u32, pass: bool, detail: &str, started: Instant) {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("criterion {n}: {tag} {detail} ({:.2?})", started.elapsed());
}

/// Positive rational `p/q` with `p` in 1..=12, `q` in 1..=4.
fn magnitude(rng: &mut ChaCha8Rng) -> Rat {
    rat(rng.gen_range(1..=12), rng.gen_range(1..=4))
}

fn random_table(rng: &mut ChaCha8Rng) -> BowtieTable {
    BowtieTable::from_entries(&std::array::from_fn(|_| magnitude(rng)))
}

fn mat(rows: Vec<Vec<Rat>>) -> RatMatrix {
    RatMatrix::from_rows(rows)
}

fn geometric(r: &Rat, n: u32) -> Rat {
    let mut sum = Rat::zero();
    let mut p = Rat::one();
    for _ in 0..n {
        sum += &p;
        p *= r;
    }
    sum
}

fn pow(r: &Rat, n: u32) -> Rat {
    (0..n).fold(Rat::one(), |acc, _| acc * r)
}

/// Simplex field on `graph` with every magnitude drawn independently.
fn random_field(rng: &mut ChaCha8Rng, n: usize, edges: &[(usize, usize)]) -> SimplexField {
    let mut a = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                a[(i, j)] = -magnitude(rng);
            }
        }
    }
    for &(i, j) in edges {
        a[(i - 1, j - 1)] = magnitude(rng);
    }
    SimplexField::from_matrix(a).unwrap()
}

#[test]
fn criterion_01_return_and_transition_maps_match_closed_forms() {
    let t0 = Instant::now();
    let table = BowtieTable::preset();
    let t = &table;
    let maps = BowtieMaps::new(&table.to_spectrum()).unwrap();
    // parameters written out from the eigenvalues
    let rho = &t.c42 * &t.c54 * &t.c25 / (&t.e24 * &t.e45 * &t.e52);
    let rho_t = &t.c32 * &t.c13 * &t.c21 / (&t.e23 * &t.e31 * &t.e12);
    let nu = -(&t.e23 / &t.e24) + &t.c25 * &t.c43 / (&t.e24 * &t.e45) + &t.c53 * &t.c42 * &t.c25 / (&t.e45 * &t.e24 * &t.e52);
    let nu_t = -(&t.e24 / &t.e23) + &t.c21 * &t.c34 / (&t.e23 * &t.e31) + &t.c14 * &t.c32 * &t.c21 / (&t.e31 * &t.e23 * &t.e12);
    let mu = &t.c21 / &t.e24 + &t.c25 * &t.c41 / (&t.e24 * &t.e45) + &t.c51 * &t.c42 * &t.c25 / (&t.e45 * &t.e24 * &t.e52);
    let mu_t = &t.c25 / &t.e23 + &t.c21 * &t.c35 / (&t.e23 * &t.e31) + &t.c15 * &t.c32 * &t.c21 / (&t.e31 * &t.e23 * &t.e12);
    let alpha = &t.c41 / &t.e45 + &t.c42 * &t.c51 / (&t.e45 * &t.e52);
    let beta = &t.c43 / &t.e45 + &t.c42 * &t.c53 / (&t.e45 * &t.e52);
    let (z, o) = (Rat::zero, Rat::one);
    let h_r = mat(vec![vec![rho_t.clone(), z(), z()], vec![nu_t.clone(), o(), z()], vec![mu_t.clone(), z(), o()]]);
    let h_l = mat(vec![vec![o(), z(), mu.clone()], vec![z(), o(), nu.clone()], vec![z(), z(), rho.clone()]]);
    let g_rl = mat(vec![
        vec![z(), mu.clone(), alpha.clone()],
        vec![o(), nu.clone(), beta.clone()],
        vec![z(), rho.clone(), &t.e24 / &t.c25 * &rho],
    ]);
    let mut pass = maps.h_r.relevant_exponents() == h_r
        && maps.h_l.relevant_exponents() == h_l
        && maps.g_rl.relevant_exponents() == g_rl;
    // the same on random tables
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..20 {
        let table = random_table(&mut rng);
        let p = compute_parameters_unchecked(&table).unwrap();
        let maps = BowtieMaps::new(&table.to_spectrum()).unwrap();
        let g = maps.g_rl.relevant_exponents();
        pass &= g[(0, 1)] == p.mu && g[(0, 2)] == p.alpha && g[(1, 1)] == p.nu && g[(1, 2)] == p.beta;
        pass &= g[(2, 1)] == p.rho && g[(2, 2)] == &table.e24 / &table.c25 * &p.rho;
        pass &= maps.h_r.relevant_exponents()[(0, 0)] == p.rho_t && maps.h_l.relevant_exponents()[(2, 2)] == p.rho;
    }
    let fast = t0.elapsed().as_secs_f64() < 1.0;
    verdict(1, pass && fast, "h_R, h_L, g_RL exponents exact", t0);
    assert!(pass && fast);
}

#[test]
fn criterion_02_iterates_match_geometric_sums() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut checked = 0;
    let mut pass = true;
    for _ in 0..20 {
        let table = random_table(&mut rng);
        let p = compute_parameters_unchecked(&table).unwrap();
        let maps = BowtieMaps::new(&table.to_spectrum()).unwrap();
        let (z, o) = (Rat::zero, Rat::one);
        for n in 1..=20 {
            let sr = geometric(&p.rho_t, n);
            let sl = geometric(&p.rho, n);
            let want_r = mat(vec![
                vec![pow(&p.rho_t, n), z(), z()],
                vec![&p.nu_t * &sr, o(), z()],
                vec![&p.mu_t * &sr, z(), o()],
            ]);
            let want_l =
                mat(vec![vec![o(), z(), &p.mu * &sl], vec![z(), o(), &p.nu * &sl], vec![z(), z(), pow(&p.rho, n)]]);
            pass &= iterate(&maps.h_r, n).unwrap().relevant_exponents() == want_r;
            pass &= iterate(&maps.h_l, n).unwrap().relevant_exponents() == want_l;
            checked += 2;
        }
    }
    let fast = t0.elapsed().as_secs_f64() < 5.0;
    verdict(2, pass && fast, &format!("{checked} iterates compared"), t0);
    assert!(pass && fast);
}

#[test]
fn criterion_03_parameter_identities() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut failures = 0;
    for _ in 0..100 {
        let t = random_table(&mut rng);
        let p = compute_parameters_unchecked(&t).unwrap();
        let r_side = &t.e24 / &t.e23 * (&p.rho_t - Rat::one()) - &p.nu_t == -(&t.c21 / &t.e23) * &p.delta_t;
        let l_side = &t.e23 / &t.e24 * (&p.rho - Rat::one()) - &p.nu == -(&t.c25 / &t.e24) * &p.delta;
        let beta = p.beta == &p.delta + &t.e23 / &t.c25 * &p.rho;
        if !(r_side && l_side && beta) {
            failures += 1;
        }
    }
    let pass = failures == 0 && t0.elapsed().as_secs_f64() < 1.0;
    verdict(3, pass, &format!("{failures} of 100 tables violate an identity"), t0);
    assert!(pass);
}

#[test]
fn criterion_04_type_z_misses_exactly_one_path() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let grid = GridSpec { per_axis: 64, ..GridSpec::default() };
    let mut problems = Vec::new();
    let mut configs = 0;
    while configs < 50 {
        let field = random_field(&mut rng, 5, &KIRK_SILBER_EDGES);
        let s = field.spectrum();
        let cfg = CommonConnectionConfig::from_spectrum(&s, (1, 2), (3, 4), (3, 4)).unwrap();
        if cfg.q1() == cfg.q2() {
            continue; // equal ratios are the degenerate case
        }
        configs += 1;
        // with t = l_a / l_alpha: a -> beta needs q2 < t < q1, alpha -> b needs q1 < t < q2
        let expected = if cfg.q1() < cfg.q2() { PathLabel::A12Beta } else { PathLabel::Alpha12b };
        let v = classify_paths(&cfg).unwrap();
        if v.missing() != vec![expected] {
            problems.push(format!("classify {:?} expected {expected}", v.missing()));
        }
        for label in PathLabel::ALL {
            let walk = label.walk(&cfg, &[1, 2]);
            let outcome = verify_shadowing(&s, &walk, &grid).unwrap();
            let ok = match outcome {
                ShadowOutcome::Witness { .. } => label != expected,
                ShadowOutcome::EmptyOnGrid(_) => label == expected,
            };
            if !ok {
                problems.push(format!("grid disagrees on {label} (q1 {}, q2 {})", cfg.q1(), cfg.q2()));
            }
        }
    }
    let pass = problems.is_empty() && t0.elapsed().as_secs_f64() < 120.0;
    verdict(4, pass, &format!("50 configs, 64^3 grid, problems {problems:?}"), t0);
    assert!(pass);
}

#[test]
fn criterion_05_type_a_thin_thick_table() {
    let t0 = Instant::now();
    let kappa = [[rat(3, 2), rat(1, 3)], [rat(2, 5), rat(5, 4)]];
    // (q1, q2): C_a1 is thin iff q1 < 1, E_2b is thin iff q2 < 1
    let cases = [
        ((int(2), int(3)), PathLabel::Alpha12Beta), // thick, thick
        ((rat(1, 2), rat(1, 3)), PathLabel::A12b),  // thin, thin
        ((rat(1, 2), int(3)), PathLabel::A12Beta),  // thin, thick
        ((int(2), rat(1, 3)), PathLabel::Alpha12b), // thick, thin
    ];
    let mut problems = Vec::new();
    for ((q1, q2), expected) in cases {
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
        let v = classify_paths(&cfg).unwrap();
        if v.missing() != vec![expected] {
            problems.push(format!("classify q1={q1} q2={q2}: {:?}", v.missing()));
        }
        let sample = stable_plane_paths(&cfg, 1e-2, 400, 12.0);
        for label in PathLabel::ALL {
            if sample.realized(label) == (label == expected) {
                problems.push(format!("grid q1={q1} q2={q2} disagrees on {label}"));
            }
        }
    }
    let pass = problems.is_empty() && t0.elapsed().as_secs_f64() < 120.0;
    verdict(5, pass, &format!("4 thin/thick combinations, problems {problems:?}"), t0);
    assert!(pass);
}

#[test]
fn criterion_06_house_has_four_witness_regions() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut failures = Vec::new();
    let mut predicted_empty = 0;
    for draw in 0..50 {
        let field = random_field(&mut rng, 5, &HOUSE_EDGES);
        let s = field.spectrum();
        // x4 contracts at xi_1; 3 -> 4 needs c14/e24 < c13/e23
        let c14 = -s.eigenvalue(1, 4).clone();
        let c13 = -s.eigenvalue(1, 3).clone();
        if c14 / s.eigenvalue(2, 4) >= c13 / s.eigenvalue(2, 3) {
            predicted_empty += 1;
        }
        if let Err(e) = house_regions(&s) {
            failures.push(format!("draw {draw}: {e}"));
        }
    }
    let pass = failures.is_empty() && t0.elapsed().as_secs_f64() < 60.0;
    verdict(
        6,
        pass,
        &format!(
            "{} of 50 draws lack a region ({predicted_empty} violate c14/e24 < c13/e23); first: {:?}",
            failures.len(),
            failures.first()
        ),
        t0,
    );
    assert!(pass);
}

#[test]
fn criterion_07_turn_counts_closed_form_vs_iteration() {
    let t0 = Instant::now();
    let table = BowtieTable::preset();
    let p = compute_parameters(&table).unwrap();
    assert!(p.delta < Rat::zero() && p.delta_t < Rat::zero());
    let maps = BowtieMaps::new(&table.to_spectrum()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut mismatches = 0;
    let mut histogram = [0usize; 8];
    for i in 0..1000 {
        let cycle = if i % 2 == 0 { Cycle::R } else { Cycle::L };
        // magnitudes spread over several decades so ratios cover many turn counts
        let l: LogPoint = std::array::from_fn(|_| from_f64(-(rng.gen_range(0.0..14.0f64)).exp()));
        let closed = match max_turns(&p, cycle, &l) {
            Ok(TurnCount::Finite(k)) => Some(k),
            Ok(TurnCount::Unbounded) => None,
            Err(BowtieError::NotInE1(_)) => Some(0),
            Err(e) => panic!("{e}"),
        };
        let iterated = max_turns_iterated(&p, &maps, cycle, &l, 200);
        if closed != iterated {
            mismatches += 1;
        }
        if let Some(k) = closed {
            histogram[(k as usize).min(7)] += 1;
        }
    }
    let increasing = [Cycle::R, Cycle::L]
        .iter()
        .all(|&c| (0..50).all(|n| turn_exponent(&p, c, n) < turn_exponent(&p, c, n + 1)));
    let pass = mismatches == 0 && increasing && t0.elapsed().as_secs_f64() < 30.0;
    verdict(7, pass, &format!("{mismatches} mismatches in 1000 points, turn histogram {histogram:?}, s_n increasing {increasing}"), t0);
    assert!(pass);
}

#[test]
fn criterion_08_transition_witnesses_verify() {
    let t0 = Instant::now();
    let table = BowtieTable::preset();
    let p = compute_parameters(&table).unwrap();
    let maps = BowtieMaps::new(&table.to_spectrum()).unwrap();
    let mut checks = Vec::new();
    for kind in [Transition::Rlr, Transition::RllPlus] {
        let w = transition_witness(&p, kind).unwrap();
        let outside_r = !membership_log(&p, Cycle::R, 1, &w).unwrap();
        let image_turns = membership_log(&p, Cycle::L, 1, &maps.apply_g_rl(&w)).unwrap();
        let agrees = classify_transition(&p, &w).unwrap() == kind;
        checks.push(outside_r && agrees && image_turns == (kind == Transition::RllPlus));
    }
    for n in [1, 3, 10] {
        let w = witness_for_l_turns(&p, &maps, n).unwrap();
        let outside_r = !membership_log(&p, Cycle::R, 1, &w).unwrap();
        let image = maps.apply_g_rl(&w);
        checks.push(outside_r && membership_log(&p, Cycle::L, n + 1, &image).unwrap());
    }
    let passed = checks.iter().filter(|c| **c).count();
    let pass = passed == checks.len() && t0.elapsed().as_secs_f64() < 10.0;
    verdict(8, pass, &format!("{passed}/{} witnesses verified", checks.len()), t0);
    assert!(pass);
}

#[test]
fn criterion_09_ode_words_match_map_predictions() {
    let t0 = Instant::now();
    let table = BowtieTable::preset();
    let p = compute_parameters(&table).unwrap();
    let field = table.to_field().unwrap();
    let maps = BowtieMaps::new(&field.spectrum()).unwrap();
    let cfg = EnsembleConfig { runs: 100, seed: 42, letters: 5, ..Default::default() };
    let summary = bowtie_ensemble(&field, &p, &maps, &cfg);
    let errors = summary.runs.iter().filter(|r| r.error.is_some()).count();
    let pass = summary.agreement_fraction >= 0.9 && t0.elapsed().as_secs_f64() < 300.0;
    verdict(
        9,
        pass,
        &format!("agreement {:.2} on 5-letter prefixes, {errors} integrator failures", summary.agreement_fraction),
        t0,
    );
    assert!(pass);
}

#[test]
fn criterion_10_spectra_match_numerical_jacobians() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut worst: f64 = 0.0;
    let mut radial_ok = true;
    for _ in 0..100 {
        let n = rng.gen_range(3..=6);
        // a random directed cycle 1 -> 2 -> ... -> n -> 1 plus random off-diagonal entries
        let edges: Vec<(usize, usize)> = (1..=n).map(|i| (i, i % n + 1)).collect();
        let _ = DirectedGraph::new(n, edges.clone()).unwrap();
        let field = random_field(&mut rng, n, &edges);
        let s = field.spectrum();
        for j in 1..=n {
            let mut x = vec![0.0; n];
            x[j - 1] = 1.0;
            let h = 1e-5;
            let jac = DMatrix::from_fn(n, n, |r, c| {
                let (mut xp, mut xm) = (x.clone(), x.clone());
                xp[c] += h;
                xm[c] -= h;
                (field.rhs(&xp)[r] - field.rhs(&xm)[r]) / (2.0 * h)
            });
            let mut numeric: Vec<f64> = jac.complex_eigenvalues().iter().map(|z| z.re).collect();
            let mut analytic: Vec<f64> = (1..=n).map(|k| to_f64(s.eigenvalue(j, k))).collect();
            numeric.sort_by(f64::total_cmp);
            analytic.sort_by(f64::total_cmp);
            for (a, b) in numeric.iter().zip(&analytic) {
                worst = worst.max((a - b).abs());
            }
            radial_ok &= *s.eigenvalue(j, j) == int(-2);
        }
    }
    let pass = worst <= 1e-9 && radial_ok && t0.elapsed().as_secs_f64() < 10.0;
    verdict(10, pass, &format!("max deviation {worst:.2e}, radial -2 everywhere {radial_ok}"), t0);
    assert!(pass);
}
