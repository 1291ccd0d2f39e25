//! Dense Knill-Laflamme check: the code projector of the five-qubit code
//! satisfies the conditions for every error pair of product weight below 3,
//! and a normalizer element of weight 3 violates them.

use qecc_forge::distance::DistanceBudget;
use qecc_forge::io::CodeFile;
use qecc_forge::pauli::{KlVerdict, PauliLabel, PauliOracle};
use qecc_forge::registry::Registry;
use qecc_forge::stabilizer::StabilizerCode;

fn main() {
    let registry = Registry::builtin().expect("built-in registry loads");
    let CodeFile::Additive(c) = registry.get("fivequbit").expect("entry").code.clone() else {
        unreachable!("additive entry")
    };
    let code = StabilizerCode::from_classical(c).expect("self-orthogonal");
    let oracle = PauliOracle::new(code.field().clone(), code.len()).expect("32 x 32");
    let proj = oracle.stabilizer_projector(&code).expect("valid projector");
    println!("projector trace {:.6}", proj.trace().re);

    let errors = PauliLabel::all_up_to_weight(2, 5, 1);
    match oracle.kl_check(&proj, &errors).expect("oracle runs") {
        KlVerdict::Pass { alphas } => println!("{} single-qubit pairs pass", alphas.len()),
        KlVerdict::Fail { left, right } => println!("unexpected failure {left} {right}"),
    }

    let d = code.distances(&DistanceBudget::default()).expect("sweep");
    let witness = PauliLabel::from_vector(d.witness.as_ref().expect("exact distance has a witness"));
    println!("witness {witness} detected: {}", oracle.detects(&proj, &witness).expect("oracle runs"));

    let x = PauliLabel { gamma: 0, a: vec![1, 0], b: vec![0, 0] };
    let z = PauliLabel { gamma: 0, a: vec![0, 0], b: vec![1, 0] };
    let o2 = PauliOracle::new(code.field().clone(), 2).expect("4 x 4");
    println!("XI and ZI anticommute consistently: {}", o2.check_commutation(&x, &z).expect("oracle runs"));
}
