//! The text code-file format: parsing with line-numbered errors, warnings
//! for dependent rows, and round trips through the emitter.

use qecc_forge::io::{emit, parse_code_file};
use qecc_forge::registry::Registry;

fn main() {
    let registry = Registry::load().expect("registry loads");
    for entry in registry.entries() {
        let again = parse_code_file(&emit(&entry.code)).expect("emitted files parse");
        println!("{:<12} {:<9} round trip {}", entry.name, entry.code.kind().name(), again.code == entry.code);
    }

    let text = "field p=2 m=2 modulus=1,1,1\nlength 3\nkind linear\nrows:\n1 2 3\n2 3 1\n";
    let parsed = parse_code_file(text).expect("valid");
    println!("warnings: {:?}", parsed.warnings);
    print!("{}", emit(&parsed.code));

    let bad = "field p=2 m=2 modulus=1,1,1\nlength 3\nkind linear\nrows:\n1 2 4\n";
    println!("{}", parse_code_file(bad).unwrap_err());
}
