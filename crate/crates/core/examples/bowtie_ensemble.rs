//! Integrates the bowtie preset from sampled points near the right cycle
//! and compares the observed L/R words with the map prediction.

use heteroclinic::bowtie::{compute_parameters, BowtieMaps, BowtieTable};
use heteroclinic::simulation::{bowtie_ensemble, EnsembleConfig};

fn main() {
    let runs: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(100);
    let table = BowtieTable::preset();
    let params = compute_parameters(&table).expect("preset satisfies e23 > e24");
    let field = table.to_field().expect("preset signs");
    let maps = BowtieMaps::new(&field.spectrum()).expect("bowtie maps");
    let cfg = EnsembleConfig { runs, seed: 42, ..Default::default() };
    let summary = bowtie_ensemble(&field, &params, &maps, &cfg);
    for r in &summary.runs {
        let prefix = r.agreement.as_ref().map_or(0, |a| a.prefix);
        let [l3, l4, l5] = r.logs;
        print!("{:3} l = ({l3:7.1}, {l4:7.1}, {l5:7.1})  predicted {:8} observed {:12} prefix {prefix}", r.index, r.predicted, r.observed);
        match &r.error {
            Some(e) => println!("  ({e})"),
            None => println!(),
        }
    }
    println!("agreement {:.2}", summary.agreement_fraction);
}
