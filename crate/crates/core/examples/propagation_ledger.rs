//! A parameter ledger: three shortenings of a pure length-96 code with a
//! claimed distance, then a tensor product and a field expansion, written
//! as text and parsed back with every record replayed.

use qecc_forge::propagation::{Ledger, Rule};

fn main() {
    let ledger = Ledger::new();
    let root = ledger.root("[[96,50,10*]]_2 pure".parse().expect("valid"), "extended cyclic code, claimed distance");
    let mut last = root;
    for _ in 0..3 {
        last = ledger.apply(Rule::ShortenStabilizer, &[last]).expect("pure with d > 1");
    }
    let five = ledger.root("((5,2,3))_2 pure".parse().expect("valid"), "five-qubit code");
    let t = ledger.apply(Rule::Tensor, &[five, five]).expect("same alphabet");
    let four = ledger.root("[[5,1,3]]_4 pure".parse().expect("valid"), "five-qudit code over GF(4)");
    ledger.apply(Rule::ExpandField { m: 2 }, &[four]).expect("4 = 2^2");
    ledger.apply(Rule::Subcode { dimension: 2u32.into() }, &[t]).expect("K' <= K");

    let text = ledger.to_text();
    print!("{text}");
    let again = Ledger::parse(&text).expect("replays");
    println!("parsed {} records; final shortened code {}", again.len(), again.get(last).expect("record").params);

    let tampered = text.replace("[[93,53,>=7]]_2", "[[93,53,8]]_2");
    println!("tampered ledger: {}", Ledger::parse(&tampered).unwrap_err());
}
