//! Exact distances by Gray-code sweeps and lower bounds by exhausting small
//! column subsets, on codes too large to enumerate.

use std::time::Instant;

use qecc_forge::distance::DistanceBudget;
use qecc_forge::io::CodeFile;
use qecc_forge::registry::Registry;

fn main() {
    let registry = Registry::builtin().expect("built-in registry loads");
    let CodeFile::Linear(c1) = registry.get("c1-93").expect("entry").code.clone() else { unreachable!("linear entry") };
    println!("[{}, {}]_4 cyclic code: 4^{} words, far beyond a sweep", c1.len(), c1.dimension(), c1.dimension());
    for w in 2..=5 {
        let start = Instant::now();
        let mw = c1.min_distance(&DistanceBudget::subset_only(w)).expect("within the entry limit");
        println!("supports up to {w} exhausted: d {} ({:.1?})", mw.distance, start.elapsed());
    }

    let CodeFile::Linear(h) = registry.get("hamming7").expect("entry").code.clone() else {
        unreachable!("linear entry")
    };
    let sweep = h.min_distance(&DistanceBudget::default()).expect("sweep");
    let subset = h.min_distance(&DistanceBudget::subset_only(3)).expect("subsets");
    println!("Hamming code: sweep {} witness {:?}, subsets {}", sweep.distance, sweep.witness, subset.distance);
}
