//! Arithmetic in GF(16) through log/antilog tables, the trace to F_2, and
//! the conjugation `x ↦ x^4` of GF(16) over GF(4).

use qecc_forge::field::FieldSpec;

fn main() {
    let f = FieldSpec::of_order(16).expect("GF(16) is registered");
    println!("{}", f.header());
    let a = f.alpha();
    println!("alpha = {a}, generator = {}", f.generator());

    println!("{:>3} {:>5} {:>6} {:>5}", "t", "a^t", "coeffs", "trace");
    for t in 0..15 {
        let x = f.exp(t);
        let coeffs: String = f.coefficients(x).iter().map(u32::to_string).collect();
        println!("{t:>3} {x:>5} {coeffs:>6} {:>5}", f.trace(x));
    }

    let x = f.exp(7);
    let y = f.exp(11);
    let prod = f.mul(x, y);
    println!("a^7 * a^11 = {prod} = a^{}", f.log(prod).expect("nonzero"));
    let inv = f.inv(x).expect("nonzero");
    println!("(a^7)^-1 = {inv}, check {}", f.mul(x, inv));

    // elements fixed by conjugation form the subfield GF(4)
    let fixed: Vec<u32> = (0..16).filter(|&x| f.conj(x) == Ok(x)).collect();
    println!("fixed by x -> x^4: {fixed:?}");

    let e = f.element(x).expect("in range");
    let g = f.element(y).expect("in range");
    let s = e.add(&g).expect("same field");
    println!("a^7 + a^11 = {} (trace {})", s.index(), s.trace());
    let other = FieldSpec::of_order(9).expect("GF(9) is registered").element(1).expect("in range");
    println!("mixing fields: {:?}", e.add(&other).unwrap_err());
}
