//! Density-matrix utilities: the depolarizing channel, partial traces, and
//! the reduced state's independence from measurements on the discarded part.

use num_complex::Complex64;
use qecc_forge::pauli::{approx_eq, CMatrix, DensityMatrix, Keep};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mixed = DensityMatrix::maximally_mixed(4);
    let after = mixed.depolarize(0.3).expect("valid probability");
    println!("I/4 is fixed by depolarizing: {}", approx_eq(after.matrix(), mixed.matrix(), 0.0));

    let h = std::f64::consts::FRAC_1_SQRT_2;
    let bell =
        DensityMatrix::pure(&[Complex64::from(h), Complex64::from(0.0), Complex64::from(0.0), Complex64::from(h)]);
    let reduced = bell.partial_trace(2, 2, Keep::First).expect("2 x 2 factorization");
    println!("reduced Bell state:\n{}", reduced.matrix());

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let hadamard = CMatrix::from_row_slice(2, 2, &[h.into(), h.into(), h.into(), (-h).into()]);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let rho = DensityMatrix::random(4, &mut rng);
        let before = rho.partial_trace(2, 2, Keep::First).expect("factorization");
        let measured = rho.measure_second(2, &hadamard).expect("basis is 2 x 2");
        let after = measured.partial_trace(2, 2, Keep::First).expect("factorization");
        worst = worst.max((before.matrix() - after.matrix()).norm());
    }
    println!("largest change of the reduced state after measuring the other qubit: {worst:.2e}");
}
