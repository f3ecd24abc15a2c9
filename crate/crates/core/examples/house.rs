//! Witness regions of the House network: from xi_3 or xi_5, through
//! 1 -> 2, on to xi_3 or xi_4.

use heteroclinic::netspec::{NetworkSpec, Preset};
use heteroclinic::rational::format_rat;
use heteroclinic::switching::house_regions;

fn main() {
    let s = NetworkSpec::preset(Preset::House).field().unwrap().spectrum();
    for r in house_regions(&s).unwrap() {
        let logs: Vec<String> = r.entry_logs.iter().map(format_rat).collect();
        println!("{} -> {}: walk {:?}, entry logs on H_2^in,1 ({})", r.source, r.destination, r.walk, logs.join(", "));
    }
}
