//! Arithmetic in small finite fields GF(p^m).
//!
//! An element is an integer index in `[0, q)` encoding the coefficient vector
//! `(c0, ..., c_{m-1})` of `c0 + c1·α + ... + c_{m-1}·α^{m-1}` as `Σ c_i p^i`,
//! where `α` is a root of the field's modulus polynomial. Index 0 is zero,
//! index 1 is one and, for `m > 1`, index `p` is `α`.
//!
//! Multiplication goes through log/antilog tables built from a primitive
//! element; the tables are immutable once the [`FieldSpec`] exists.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

/// Largest field order accepted unless a different ceiling is requested.
pub const DEFAULT_ORDER_CEILING: u32 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{m} exceeds the ceiling {ceiling}")]
    TooLarge { p: u32, m: u32, ceiling: u32 },
    #[error("modulus must have degree {expected}, got {got} coefficients")]
    ModulusDegree { expected: u32, got: usize },
    #[error("modulus is not monic")]
    ModulusNotMonic,
    #[error("modulus coefficient {0} is not reduced mod p")]
    ModulusCoefficient(u32),
    #[error("modulus is reducible over F_{0}")]
    Reducible(u32),
    #[error("element index {index} out of range for GF({q})")]
    IndexOutOfRange { index: u32, q: u32 },
    #[error("operands belong to different fields")]
    Mismatch,
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("GF({0}) is not a quadratic extension")]
    NotQuadraticExtension(u32),
    #[error("malformed field header: {0}")]
    Header(String),
}

/// Description of GF(p^m) together with its precomputed tables.
pub struct FieldSpec {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: u32,
    // exp has length 2(q-1) so products of logs never need a reduction
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u32>>,
    trace: Vec<u32>,
    conj: Option<Vec<u32>>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) modulus={:?}", self.p, self.m, self.modulus)
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

/// Pinned modulus polynomials (Conway polynomials), coefficients low to high.
const MODULUS_REGISTRY: &[(u32, u32, &[u32])] = &[
    (2, 1, &[1, 1]),
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (3, 1, &[1, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (5, 1, &[3, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (7, 1, &[4, 1]),
    (7, 2, &[3, 6, 1]),
];

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits a prime power into `(p, m)`.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while !q.is_multiple_of(p) {
        p += 1;
    }
    let (mut rest, mut m) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

fn checked_order(p: u32, m: u32, ceiling: u32) -> Result<u32, FieldError> {
    let mut q: u64 = 1;
    for _ in 0..m {
        q *= p as u64;
        if q > ceiling as u64 {
            return Err(FieldError::TooLarge { p, m, ceiling });
        }
    }
    Ok(q as u32)
}

// Polynomials over F_p as coefficient vectors, low to high.

fn fp_trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    fp_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = fp_inv(b[db], p);
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let coef = (r[r.len() - 1] as u64 * lead_inv as u64 % p as u64) as u32;
        for (i, &bc) in b.iter().enumerate() {
            let sub = (coef as u64 * bc as u64 % p as u64) as u32;
            r[i + shift] = (r[i + shift] + p - sub) % p;
        }
        fp_trim(&mut r);
    }
    r
}

fn fp_inv(a: u32, p: u32) -> u32 {
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

/// Irreducibility by trial division with every monic polynomial of degree
/// at most `deg/2`.
fn fp_irreducible(modulus: &[u32], p: u32) -> bool {
    let deg = modulus.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut cand = Vec::with_capacity(d + 1);
            let mut rest = idx;
            for _ in 0..d {
                cand.push((rest % p as u64) as u32);
                rest /= p as u64;
            }
            cand.push(1);
            if fp_rem(modulus, &cand, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl FieldSpec {
    /// The field of order `q` with the pinned modulus for its `(p, m)`.
    pub fn of_order(q: u32) -> Result<Arc<Self>, FieldError> {
        let (p, m) = prime_power(q).ok_or(FieldError::NotPrime(q))?;
        Self::standard(p, m)
    }

    /// GF(p^m) with the registry modulus, or the first irreducible monic
    /// polynomial with a primitive root when `(p, m)` is not registered.
    pub fn standard(p: u32, m: u32) -> Result<Arc<Self>, FieldError> {
        if let Some((_, _, modulus)) = MODULUS_REGISTRY.iter().find(|(rp, rm, _)| *rp == p && *rm == m) {
            return Self::new(p, m, modulus.to_vec());
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if m == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q = checked_order(p, m, DEFAULT_ORDER_CEILING)?;
        for idx in 0..q {
            let mut modulus = Vec::with_capacity(m as usize + 1);
            let mut rest = idx;
            for _ in 0..m {
                modulus.push(rest % p);
                rest /= p;
            }
            modulus.push(1);
            if modulus[0] == 0 && m > 1 {
                continue;
            }
            if let Ok(f) = Self::new(p, m, modulus) {
                if f.is_primitive(f.alpha()) {
                    return Ok(f);
                }
            }
        }
        Err(FieldError::Reducible(p))
    }

    pub fn new(p: u32, m: u32, modulus: Vec<u32>) -> Result<Arc<Self>, FieldError> {
        Self::with_ceiling(p, m, modulus, DEFAULT_ORDER_CEILING)
    }

    pub fn with_ceiling(p: u32, m: u32, modulus: Vec<u32>, ceiling: u32) -> Result<Arc<Self>, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if m == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q = checked_order(p, m, ceiling)?;
        if modulus.len() != m as usize + 1 {
            return Err(FieldError::ModulusDegree { expected: m, got: modulus.len() });
        }
        if let Some(&c) = modulus.iter().find(|&&c| c >= p) {
            return Err(FieldError::ModulusCoefficient(c));
        }
        if modulus[m as usize] != 1 {
            return Err(FieldError::ModulusNotMonic);
        }
        if !fp_irreducible(&modulus, p) {
            return Err(FieldError::Reducible(p));
        }

        let mut field = FieldSpec {
            p,
            m,
            q,
            modulus,
            generator: 0,
            exp: Vec::new(),
            log: Vec::new(),
            neg: Vec::new(),
            add: None,
            trace: Vec::new(),
            conj: None,
        };
        field.neg = (0..q).map(|x| field.digit_neg(x)).collect();
        if p != 2 && q <= 256 {
            let mut table = vec![0u32; (q * q) as usize];
            for x in 0..q {
                for y in 0..q {
                    table[(x * q + y) as usize] = field.digit_add(x, y);
                }
            }
            field.add = Some(table);
        }
        field.build_log_tables();
        field.trace = (0..q).map(|x| field.compute_trace(x)).collect();
        if m.is_multiple_of(2) {
            let e = p.pow(m / 2);
            field.conj = Some((0..q).map(|x| field.pow(x, e as u64)).collect());
        }
        Ok(Arc::new(field))
    }

    fn build_log_tables(&mut self) {
        let q = self.q;
        if q == 2 {
            self.generator = 1;
            self.exp = vec![1, 1];
            self.log = vec![0, 0];
            return;
        }
        // alpha (index p) first, then every other candidate in index order
        let candidates = std::iter::once(if self.m > 1 { self.p } else { 2 % q }).chain(2..q);
        for g in candidates {
            if g == 0 || g == 1 {
                continue;
            }
            let mut exp = Vec::with_capacity(2 * (q as usize - 1));
            let mut x = 1u32;
            let mut ok = true;
            for i in 0..(q - 1) {
                if i > 0 && x == 1 {
                    ok = false;
                    break;
                }
                exp.push(x);
                x = self.slow_mul(x, g);
            }
            if !ok || x != 1 {
                continue;
            }
            let mut log = vec![0u32; q as usize];
            for (i, &v) in exp.iter().enumerate() {
                log[v as usize] = i as u32;
            }
            let head = exp.clone();
            exp.extend(head);
            self.generator = g;
            self.exp = exp;
            self.log = log;
            return;
        }
        unreachable!("irreducible modulus always yields a cyclic multiplicative group");
    }

    fn digits(&self, mut x: u32) -> Vec<u32> {
        let mut d = Vec::with_capacity(self.m as usize);
        for _ in 0..self.m {
            d.push(x % self.p);
            x /= self.p;
        }
        d
    }

    fn join_digits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn digit_add(&self, x: u32, y: u32) -> u32 {
        let (dx, dy) = (self.digits(x), self.digits(y));
        let s: Vec<u32> = dx.iter().zip(&dy).map(|(a, b)| (a + b) % self.p).collect();
        self.join_digits(&s)
    }

    fn digit_neg(&self, x: u32) -> u32 {
        let d: Vec<u32> = self.digits(x).iter().map(|&a| (self.p - a) % self.p).collect();
        self.join_digits(&d)
    }

    fn slow_mul(&self, x: u32, y: u32) -> u32 {
        let (dx, dy) = (self.digits(x), self.digits(y));
        let m = self.m as usize;
        let p = self.p as u64;
        let mut prod = vec![0u64; 2 * m];
        for i in 0..m {
            for j in 0..m {
                prod[i + j] = (prod[i + j] + dx[i] as u64 * dy[j] as u64) % p;
            }
        }
        for deg in (m..2 * m).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            for k in 0..m {
                let sub = c * self.modulus[k] as u64 % p;
                prod[deg - m + k] = (prod[deg - m + k] + p - sub) % p;
            }
        }
        let d: Vec<u32> = prod[..m].iter().map(|&c| c as u32).collect();
        self.join_digits(&d)
    }

    fn compute_trace(&self, x: u32) -> u32 {
        let mut acc = 0;
        let mut y = x;
        for _ in 0..self.m {
            acc = self.add(acc, y);
            y = self.pow(y, self.p as u64);
        }
        debug_assert!(acc < self.p, "trace must land in the prime field");
        acc
    }

    fn is_primitive(&self, g: u32) -> bool {
        g != 0 && (self.q == 2 || self.order_of(g) == self.q - 1)
    }

    fn order_of(&self, g: u32) -> u32 {
        let l = self.log[g as usize];
        let n = self.q - 1;
        n / gcd(l, n)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The root `α` of the modulus (index `p`); for prime fields this is the
    /// primitive element used for the tables.
    pub fn alpha(&self) -> u32 {
        if self.m > 1 {
            self.p
        } else {
            self.generator
        }
    }

    /// A primitive element of the multiplicative group.
    pub fn generator(&self) -> u32 {
        self.generator
    }

    #[inline]
    pub fn add(&self, x: u32, y: u32) -> u32 {
        if self.p == 2 {
            x ^ y
        } else if let Some(t) = &self.add {
            t[(x * self.q + y) as usize]
        } else {
            self.digit_add(x, y)
        }
    }

    #[inline]
    pub fn neg(&self, x: u32) -> u32 {
        self.neg[x as usize]
    }

    #[inline]
    pub fn sub(&self, x: u32, y: u32) -> u32 {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: u32, y: u32) -> u32 {
        if x == 0 || y == 0 {
            return 0;
        }
        self.exp[(self.log[x as usize] + self.log[y as usize]) as usize]
    }

    pub fn inv(&self, x: u32) -> Result<u32, FieldError> {
        if x == 0 {
            return Err(FieldError::ZeroInverse);
        }
        let l = self.log[x as usize];
        Ok(self.exp[((self.q - 1 - l) % (self.q - 1)) as usize])
    }

    pub fn div(&self, x: u32, y: u32) -> Result<u32, FieldError> {
        Ok(self.mul(x, self.inv(y)?))
    }

    pub fn pow(&self, x: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if x == 0 {
            return 0;
        }
        let l = self.log[x as usize] as u64 * (e % (self.q as u64 - 1)) % (self.q as u64 - 1);
        self.exp[l as usize]
    }

    /// `α^t` for any integer exponent of the primitive element.
    pub fn exp(&self, t: u64) -> u32 {
        self.exp[(t % (self.q as u64 - 1)) as usize]
    }

    /// Discrete log to the base [`FieldSpec::generator`].
    pub fn log(&self, x: u32) -> Option<u32> {
        (x != 0).then(|| self.log[x as usize])
    }

    /// Absolute trace to the prime field, returned as an integer in `[0, p)`.
    #[inline]
    pub fn trace(&self, x: u32) -> u32 {
        self.trace[x as usize]
    }

    pub fn is_quadratic_extension(&self) -> bool {
        self.conj.is_some()
    }

    /// Square root of the order when the field is GF(q²).
    pub fn base_order(&self) -> Option<u32> {
        self.conj.as_ref().map(|_| self.p.pow(self.m / 2))
    }

    /// The Frobenius `x ↦ x^q` of GF(q²) over GF(q).
    pub fn conj(&self, x: u32) -> Result<u32, FieldError> {
        self.conj.as_ref().map(|t| t[x as usize]).ok_or(FieldError::NotQuadraticExtension(self.q))
    }

    /// Coefficient digits of an element over F_p, low degree first.
    pub fn coefficients(&self, x: u32) -> Vec<u32> {
        self.digits(x)
    }

    pub fn from_coefficients(&self, c: &[u32]) -> u32 {
        self.join_digits(c)
    }

    pub fn element(self: &Arc<Self>, index: u32) -> Result<FieldElement, FieldError> {
        if index >= self.q {
            return Err(FieldError::IndexOutOfRange { index, q: self.q });
        }
        Ok(FieldElement { field: Arc::clone(self), index })
    }

    /// `field p=<p> m=<m> modulus=<c0,...,cm>`
    pub fn header(&self) -> String {
        let coeffs: Vec<String> = self.modulus.iter().map(|c| c.to_string()).collect();
        format!("field p={} m={} modulus={}", self.p, self.m, coeffs.join(","))
    }

    pub fn parse_header(line: &str) -> Result<Arc<Self>, FieldError> {
        let bad = || FieldError::Header(line.to_string());
        let mut words = line.split_whitespace();
        if words.next() != Some("field") {
            return Err(bad());
        }
        let (mut p, mut m, mut modulus) = (None, None, None);
        for word in words {
            let (key, value) = word.split_once('=').ok_or_else(bad)?;
            match key {
                "p" => p = Some(value.parse::<u32>().map_err(|_| bad())?),
                "m" => m = Some(value.parse::<u32>().map_err(|_| bad())?),
                "modulus" => {
                    let coeffs: Result<Vec<u32>, _> = value.split(',').map(str::parse).collect();
                    modulus = Some(coeffs.map_err(|_| bad())?);
                }
                _ => return Err(bad()),
            }
        }
        let (p, m) = (p.ok_or_else(bad)?, m.ok_or_else(bad)?);
        match modulus {
            Some(modulus) => Self::new(p, m, modulus),
            None => Self::standard(p, m),
        }
    }
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Parses `q`, `p^m` or a full header line into a field.
impl FromStr for FieldSpecRef {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.starts_with("field") {
            return FieldSpec::parse_header(s).map(FieldSpecRef);
        }
        if let Some((p, m)) = s.split_once('^') {
            let p = p.parse().map_err(|_| FieldError::Header(s.to_string()))?;
            let m = m.parse().map_err(|_| FieldError::Header(s.to_string()))?;
            return FieldSpec::standard(p, m).map(FieldSpecRef);
        }
        let q: u32 = s.parse().map_err(|_| FieldError::Header(s.to_string()))?;
        FieldSpec::of_order(q).map(FieldSpecRef)
    }
}

/// Shared handle used where a field is parsed from user input.
#[derive(Debug, Clone)]
pub struct FieldSpecRef(pub Arc<FieldSpec>);

/// An element bound to its field; operations check that both operands share
/// the same field.
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<FieldSpec>,
    index: u32,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@GF({})", self.index, self.field.q)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.index == other.index && *self.field == *other.field
    }
}

impl Eq for FieldElement {}

impl FieldElement {
    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    fn same_field(&self, other: &Self) -> Result<(), FieldError> {
        if Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field {
            Ok(())
        } else {
            Err(FieldError::Mismatch)
        }
    }

    fn with(&self, index: u32) -> FieldElement {
        FieldElement { field: Arc::clone(&self.field), index }
    }

    pub fn add(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        Ok(self.with(self.field.add(self.index, other.index)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        Ok(self.with(self.field.sub(self.index, other.index)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        Ok(self.with(self.field.mul(self.index, other.index)))
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        Ok(self.with(self.field.inv(self.index)?))
    }

    /// Trace to the prime field; the result is an element of F_p encoded as
    /// its integer representative.
    pub fn trace(&self) -> u32 {
        self.field.trace(self.index)
    }

    pub fn conj_q(&self) -> Result<Self, FieldError> {
        Ok(self.with(self.field.conj(self.index)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> Arc<FieldSpec> {
        FieldSpec::standard(2, 2).unwrap()
    }

    #[test]
    fn registry_moduli_are_irreducible() {
        for (p, m, _) in MODULUS_REGISTRY {
            let f = FieldSpec::standard(*p, *m).unwrap();
            assert_eq!(f.order(), p.pow(*m));
        }
    }

    #[test]
    fn f4_examples() {
        let f = f4();
        let (alpha, alpha1) = (2, 3);
        assert_eq!(f.alpha(), alpha);
        assert_eq!(f.add(alpha, alpha), 0);
        assert_eq!(f.add(1, alpha), alpha1);
        assert_eq!(f.mul(alpha, alpha), alpha1);
        assert_eq!(f.mul(alpha, alpha1), 1);
        assert_eq!(f.inv(alpha).unwrap(), alpha1);
        assert_eq!(f.inv(1).unwrap(), 1);
        assert_eq!(f.trace(0), 0);
        assert_eq!(f.trace(alpha), 1);
        assert_eq!(f.trace(1), 0);
        assert_eq!(f.conj(0).unwrap(), 0);
        assert_eq!(f.conj(1).unwrap(), 1);
        assert_eq!(f.conj(alpha).unwrap(), alpha1);
    }

    #[test]
    fn f3_examples() {
        let f = FieldSpec::standard(3, 1).unwrap();
        assert_eq!(f.add(2, 2), 1);
        assert_eq!(f.inv(2).unwrap(), 2);
        assert_eq!(f.inv(0), Err(FieldError::ZeroInverse));
        assert!(f.conj(1).is_err());
    }

    #[test]
    fn f9_conjugation_is_cube() {
        let f = FieldSpec::standard(3, 2).unwrap();
        for x in 0..9 {
            let c = f.conj(x).unwrap();
            assert_eq!(c, f.pow(x, 3));
            assert_eq!(f.conj(c).unwrap(), x);
        }
    }

    #[test]
    fn field_axioms_exhaustive_small_fields() {
        for q in [2u32, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 64] {
            let f = FieldSpec::of_order(q).unwrap();
            for x in 0..q {
                assert_eq!(f.mul(x, 1), x);
                assert_eq!(f.add(x, 0), x);
                assert_eq!(f.add(x, f.neg(x)), 0);
                if x != 0 {
                    assert_eq!(f.mul(x, f.inv(x).unwrap()), 1);
                }
                for y in 0..q {
                    assert_eq!(f.add(x, y), f.add(y, x));
                    assert_eq!(f.mul(x, y), f.mul(y, x));
                    assert_eq!(f.mul(x, y), f.slow_mul(x, y));
                    assert_eq!(f.trace(f.add(x, y)), (f.trace(x) + f.trace(y)) % f.characteristic());
                    if q <= 16 {
                        for z in 0..q {
                            assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
                            assert_eq!(f.add(f.add(x, y), z), f.add(x, f.add(y, z)));
                            assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn trace_is_onto_with_equal_fibres() {
        for q in [4u32, 8, 9, 16, 25, 27] {
            let f = FieldSpec::of_order(q).unwrap();
            let p = f.characteristic();
            let mut counts = vec![0u32; p as usize];
            for x in 0..q {
                counts[f.trace(x) as usize] += 1;
            }
            assert!(counts.iter().all(|&c| c == q / p), "q={q} counts={counts:?}");
        }
    }

    #[test]
    fn conjugation_is_an_involutive_automorphism() {
        for q in [4u32, 9, 16, 25, 49, 64] {
            let f = FieldSpec::of_order(q).unwrap();
            for x in 0..q {
                let cx = f.conj(x).unwrap();
                assert_eq!(f.conj(cx).unwrap(), x);
                for y in 0..q {
                    let cy = f.conj(y).unwrap();
                    assert_eq!(f.conj(f.mul(x, y)).unwrap(), f.mul(cx, cy));
                    assert_eq!(f.conj(f.add(x, y)).unwrap(), f.add(cx, cy));
                    // x·conj(y) and y·conj(x) are conjugates of each other
                    assert_eq!(f.conj(f.mul(x, cy)).unwrap(), f.mul(y, cx));
                }
            }
        }
    }

    #[test]
    fn construction_rejects_bad_moduli() {
        assert_eq!(FieldSpec::new(4, 1, vec![0, 1]).unwrap_err(), FieldError::NotPrime(4));
        assert_eq!(FieldSpec::new(2, 2, vec![1, 0, 1]).unwrap_err(), FieldError::Reducible(2));
        assert_eq!(FieldSpec::new(2, 2, vec![1, 1, 0]).unwrap_err(), FieldError::ModulusNotMonic);
        assert!(matches!(FieldSpec::new(2, 2, vec![1, 1]), Err(FieldError::ModulusDegree { .. })));
        assert!(matches!(FieldSpec::standard(2, 17), Err(FieldError::TooLarge { .. })));
        assert!(matches!(FieldSpec::with_ceiling(2, 5, vec![1, 0, 1, 0, 0, 1], 16), Err(FieldError::TooLarge { .. })));
    }

    #[test]
    fn element_wrapper_checks_field() {
        let f4 = f4();
        let f2 = FieldSpec::standard(2, 1).unwrap();
        let a = f4.element(2).unwrap();
        let one = f2.element(1).unwrap();
        assert_eq!(a.add(&one), Err(FieldError::Mismatch));
        assert_eq!(a.mul(&a).unwrap().index(), 3);
        assert_eq!(a.conj_q().unwrap().index(), 3);
        assert!(f4.element(4).is_err());
    }

    #[test]
    fn header_round_trip() {
        let f = FieldSpec::standard(3, 2).unwrap();
        let h = f.header();
        assert_eq!(h, "field p=3 m=2 modulus=2,2,1");
        assert_eq!(*FieldSpec::parse_header(&h).unwrap(), *f);
        assert!(FieldSpec::parse_header("field p=3").is_err());
        let parsed: FieldSpecRef = "2^4".parse().unwrap();
        assert_eq!(parsed.0.modulus(), &[1, 1, 0, 0, 1]);
    }

    #[test]
    fn unregistered_fields_fall_back_to_search() {
        let f = FieldSpec::standard(11, 2).unwrap();
        assert_eq!(f.order(), 121);
        assert_eq!(f.mul(f.inv(5).unwrap(), 5), 1);
    }
}
