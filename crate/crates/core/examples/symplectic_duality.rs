//! Symplectic duals of random additive codes over GF(4), and the map that
//! carries Hermitian duals of F_4-linear codes to symplectic duals.

use num_bigint::BigUint;
use qecc_forge::additive::AdditiveCode;
use qecc_forge::field::FieldSpec;
use qecc_forge::linear::{HermitianIsometry, LinearCode};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let f = FieldSpec::of_order(4).expect("GF(4)");
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let n = 4;
    for count in 1..=4 {
        let c = AdditiveCode::random(f.clone(), n, count, &mut rng);
        let d = c.symplectic_dual();
        let total = BigUint::from(4u32).pow(2 * n as u32);
        println!(
            "kappa={} dual kappa={} |C||C*|=q^2n: {} (C*)*=C: {}",
            c.kappa(),
            d.kappa(),
            c.size() * d.size() == total,
            d.symplectic_dual() == c
        );
    }

    let so = AdditiveCode::random_self_orthogonal(f.clone(), 5, 4, &mut rng);
    println!("random self-orthogonal code: kappa={} self-orthogonal={}", so.kappa(), so.is_self_orthogonal());

    let big = FieldSpec::of_order(16).expect("GF(16)");
    let iso = HermitianIsometry::new(big.clone()).expect("GF(16) is a quadratic extension");
    println!("isometry GF(16) -> GF(4) x GF(4) with beta = {}", iso.beta);
    let lin = LinearCode::random(big, 4, 2, &mut rng);
    let via_hermitian = lin.hermitian_dual().expect("quadratic").to_symplectic().expect("quadratic");
    let via_symplectic = lin.to_symplectic().expect("quadratic").symplectic_dual();
    println!("Hermitian dual maps to symplectic dual: {}", via_hermitian == via_symplectic);
}
