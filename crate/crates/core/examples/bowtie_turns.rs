//! Bowtie parameters, turn exponents and the points that switch from the
//! right cycle to any number of left turns.

use heteroclinic::bowtie::{
    compute_parameters, max_turns, transition_witness, turn_exponent, witness_for_l_turns, BowtieMaps, BowtieTable,
    Cycle, Transition,
};
use heteroclinic::rational::{format_rat, int};

fn main() {
    let table = BowtieTable::preset();
    let p = compute_parameters(&table).unwrap();
    for (name, v) in p.entries() {
        println!("{name:8} {}", format_rat(&v));
    }
    let s: Vec<String> = (0..6).map(|n| format_rat(&turn_exponent(&p, Cycle::L, n))).collect();
    println!("L turn exponents: {}", s.join(", "));

    let l = [int(-20), int(-50), int(-3000)];
    println!("turns of {:?} around R: {:?}", l.each_ref().map(format_rat), max_turns(&p, Cycle::R, &l));

    let maps = BowtieMaps::new(&table.to_spectrum()).unwrap();
    for kind in [Transition::Rlr, Transition::RllPlus] {
        println!("{kind:?} witness {:?}", transition_witness(&p, kind).unwrap().each_ref().map(format_rat));
    }
    for n in [1, 3, 10] {
        let w = witness_for_l_turns(&p, &maps, n).unwrap();
        println!("{n} L turns from l3 = {}", format_rat(&w[0]));
    }
}
