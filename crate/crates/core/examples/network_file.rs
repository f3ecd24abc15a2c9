//! Parse a network file and run the bowtie analysis on it.

use heteroclinic::netspec::NetworkSpec;
use heteroclinic::report;

const FILE: &str = r#"
preset = "bowtie"

[simulation]
runs = 10
seed = 7
"#;

fn main() {
    let spec = match NetworkSpec::parse(FILE) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(1);
        }
    };
    let r = report::analyze_bowtie(&spec, 5).unwrap();
    print!("{}", r.text);
    println!("files: {:?}", r.files.iter().map(|(name, _)| name).collect::<Vec<_>>());
}
