//! Univariate polynomials over a [`FieldSpec`], coefficients low to high.

use std::fmt;

use crate::field::FieldSpec;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<u32>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial { coeffs: vec![1] }
    }

    /// `x - root`
    pub fn linear(f: &FieldSpec, root: u32) -> Self {
        Polynomial::new(vec![f.neg(root), 1])
    }

    /// `x^n - 1`
    pub fn x_pow_minus_one(f: &FieldSpec, n: usize) -> Self {
        let mut c = vec![0; n + 1];
        c[0] = f.neg(1);
        c[n] = 1;
        Polynomial::new(c)
    }

    pub fn coefficients(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &Self, f: &FieldSpec) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| f.add(*self.coeffs.get(i).unwrap_or(&0), *other.coeffs.get(i).unwrap_or(&0))).collect();
        Polynomial::new(c)
    }

    pub fn mul(&self, other: &Self, f: &FieldSpec) -> Self {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut c = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        Polynomial::new(c)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self, f: &FieldSpec) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = f.inv(divisor.coeffs[dd]).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0; self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let c = f.mul(rem[top], lead_inv);
            let shift = top - dd;
            quot[shift] = c;
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                rem[i + shift] = f.sub(rem[i + shift], f.mul(c, d));
            }
            while rem.last() == Some(&0) {
                rem.pop();
            }
        }
        (Polynomial::new(quot), Polynomial::new(rem))
    }

    pub fn divides(&self, other: &Self, f: &FieldSpec) -> bool {
        !self.is_zero() && other.div_rem(self, f).1.is_zero()
    }

    pub fn eval(&self, x: u32, f: &FieldSpec) -> u32 {
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn product<'a>(factors: impl IntoIterator<Item = &'a Polynomial>, f: &FieldSpec) -> Self {
        factors.into_iter().fold(Polynomial::one(), |acc, g| acc.mul(g, f))
    }

    /// `poly: c0,c1,...`
    pub fn to_line(&self) -> String {
        let c: Vec<String> = self.coeffs.iter().map(u32::to_string).collect();
        format!("poly: {}", c.join(","))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coef = if c == 1 && i > 0 { String::new() } else { format!("[{c}]") };
            terms.push(match i {
                0 if c == 1 => "1".to_string(),
                0 => format!("[{c}]"),
                1 => format!("{coef}x"),
                _ => format!("{coef}x^{i}"),
            });
        }
        write!(f, "{}", terms.join(" + "))
    }
}
