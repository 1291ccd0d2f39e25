//! Puncture codes: shortening stabilizer codes through words of their
//! puncture code, compared with the parameter rule, and the field-valued
//! generalization.

use qecc_forge::additive::AdditiveCode;
use qecc_forge::distance::DistanceBudget;
use qecc_forge::field::FieldSpec;
use qecc_forge::puncture::{shorten_params, shorten_via_codeword, PunctureCode};
use qecc_forge::stabilizer::StabilizerCode;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let f = FieldSpec::of_order(2).expect("GF(2)");
    let budget = DistanceBudget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut shown = 0;
    while shown < 3 {
        let c = AdditiveCode::random_self_orthogonal(f.clone(), 6, 3, &mut rng);
        let base = StabilizerCode::from_classical(c.clone()).expect("self-orthogonal");
        let Ok(params) = base.params(&budget) else { continue };
        if params.distance.value < 2 {
            continue;
        }
        let pc = PunctureCode::of(&c, false).expect("builds");
        let Some(word) = (2..6).rev().find_map(|r| pc.word_of_weight(r, 1 << 12)) else {
            continue;
        };
        shown += 1;
        let r = word.iter().filter(|&&x| x != 0).count();
        let short = StabilizerCode::from_classical(shorten_via_codeword(&c, &word).expect("puncture-code word"))
            .expect("self-orthogonal");
        let actual = short.params(&budget).map_or_else(|e| e.to_string(), |p| p.to_string());
        let rule = shorten_params(&params, 6 - r, true).expect("s < n");
        println!("{params}: P(C) has dimension {}, word {word:?}", pc.dimension());
        println!("  shortened to {actual}, rule gives {rule}");
    }

    let f4 = FieldSpec::of_order(4).expect("GF(4)");
    let c = AdditiveCode::random_self_orthogonal(f4, 4, 3, &mut rng);
    let plain = PunctureCode::of(&c, false).expect("builds");
    let general = PunctureCode::of(&c, true).expect("builds");
    println!(
        "GF(4) code with kappa {}: P(C) has F_2-dimension {}, the generalized code {} over GF(4) symbols",
        c.kappa(),
        plain.dimension(),
        general.dimension()
    );
}
