//! Quantum Construction X over GF(4): a [4,2]_4 code whose Hermitian hull
//! has dimension 1 gains one coordinate and becomes Hermitian
//! self-orthogonal, and a sweep over random inputs checks the distance bound.

use qecc_forge::construction_x::{greedy_nested_subcode, quantum_construction_x};
use qecc_forge::distance::DistanceBudget;
use qecc_forge::field::FieldSpec;
use qecc_forge::linear::LinearCode;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let f = FieldSpec::of_order(4).expect("GF(4)");
    let budget = DistanceBudget::default();
    let c = LinearCode::new(f.clone(), 4, vec![vec![1, 0, 1, 1], vec![0, 1, 2, 3]]).expect("valid rows");
    let r = quantum_construction_x(&c, &budget).expect("construction succeeds");
    println!("e = {}, output rows:", r.e);
    for row in r.code.generator_matrix() {
        println!("  {row:?}");
    }
    println!("params {} with bound d >= {:?}", r.params.as_ref().expect("K > 1"), r.bound.value);

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut runs, mut tight) = (0, 0);
    for _ in 0..50 {
        let c = LinearCode::random(f.clone(), 6, 2, &mut rng);
        let r = quantum_construction_x(&c, &budget).expect("construction succeeds");
        if let (Some(p), Some(b)) = (&r.params, r.bound.value) {
            assert!(p.distance.value >= b);
            runs += 1;
            tight += usize::from(p.distance.value == b);
        }
    }
    println!("{runs} random [6,2]_4 inputs respect the bound, {tight} meet it exactly");

    let f2 = FieldSpec::of_order(2).expect("GF(2)");
    let hamming = LinearCode::new(
        f2,
        7,
        vec![
            vec![1, 0, 0, 0, 1, 1, 0],
            vec![0, 1, 0, 0, 0, 1, 1],
            vec![0, 0, 1, 0, 1, 1, 1],
            vec![0, 0, 0, 1, 1, 0, 1],
        ],
    )
    .expect("valid rows");
    if let Some(sub) = greedy_nested_subcode(&hamming, 4, 2, &budget).expect("small") {
        println!("greedy subcode of the Hamming code with d >= 4: dimension {}", sub.dimension());
    }
}
