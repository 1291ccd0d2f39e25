//! The five-qubit code: parameters, purity, and a syndrome table showing
//! that every single-qubit error has its own syndrome.

use std::collections::BTreeMap;

use qecc_forge::distance::DistanceBudget;
use qecc_forge::io::CodeFile;
use qecc_forge::pauli::PauliLabel;
use qecc_forge::registry::Registry;
use qecc_forge::stabilizer::StabilizerCode;

fn main() {
    let registry = Registry::builtin().expect("built-in registry loads");
    let CodeFile::Additive(c) = registry.get("fivequbit").expect("entry").code.clone() else {
        unreachable!("the five-qubit entry is additive")
    };
    let code = StabilizerCode::from_classical(c).expect("self-orthogonal");
    let budget = DistanceBudget::default();
    let params = code.params(&budget).expect("small enough to sweep");
    println!("{params}");
    println!("{}", params.key_values());

    let d = code.distances(&budget).expect("sweep");
    if let Some(w) = &d.witness {
        println!("logical operator of weight {}: {}", w.weight(), PauliLabel::from_vector(w));
    }

    let mut table: BTreeMap<Vec<u32>, Vec<String>> = BTreeMap::new();
    for e in PauliLabel::all_up_to_weight(2, 5, 1) {
        let s = code.syndrome(&e.vector()).expect("length matches");
        table.entry(s).or_default().push(e.to_string());
    }
    for (s, errors) in &table {
        println!("{s:?} <- {}", errors.join(" "));
    }
    println!("{} errors, {} distinct syndromes", 16, table.len());
}
