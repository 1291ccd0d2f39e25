//! Cyclic codes from generator polynomials, and classical Construction X
//! extending the binary Hamming code by a parity bit.

use qecc_forge::distance::DistanceBudget;
use qecc_forge::field::FieldSpec;
use qecc_forge::linear::{construction_x_classical, LinearCode};
use qecc_forge::poly::Polynomial;

fn main() {
    let f2 = FieldSpec::of_order(2).expect("GF(2)");
    let budget = DistanceBudget::default();
    let g = Polynomial::new(vec![1, 1, 0, 1]);
    println!("g = {g}, divides x^7 - 1: {}", g.divides(&Polynomial::x_pow_minus_one(&f2, 7), &f2));
    let hamming = LinearCode::cyclic(f2.clone(), &g, 7).expect("g | x^7 - 1");
    let d = hamming.min_distance(&budget).expect("sweep").distance;
    println!("cyclic Hamming code [{}, {}, {d}]_2", hamming.len(), hamming.dimension());

    // the even-weight subcode is generated by g(x)(x+1)
    let even = LinearCode::cyclic(f2.clone(), &g.mul(&Polynomial::linear(&f2, 1), &f2), 7).expect("divides");
    let aux = LinearCode::full(f2.clone(), 1);
    let ext = construction_x_classical(&hamming, &even, &aux).expect("nested codes");
    let d = ext.min_distance(&budget).expect("sweep").distance;
    println!("Construction X with [1,1,1]: [{}, {}, {d}]_2", ext.len(), ext.dimension());

    // every nonzero element of GF(4) is a root of x^3 - 1
    let f4 = FieldSpec::of_order(4).expect("GF(4)");
    let x3 = Polynomial::x_pow_minus_one(&f4, 3);
    let roots: Vec<u32> = (1..4).filter(|&r| x3.eval(r, &f4) == 0).collect();
    println!("roots of x^3 - 1 over GF(4): {roots:?}");
    let linear: Vec<Polynomial> = roots.iter().map(|&r| Polynomial::linear(&f4, r)).collect();
    println!("product of linear factors: {}", Polynomial::product(&linear, &f4));
}
