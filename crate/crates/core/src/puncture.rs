//! Puncture codes of additive codes and shortening through their words.
//!
//! For codewords `u = (a|b)` and `v = (a'|b')` let `w(u,v)_i = a_i b'_i − a'_i b_i`.
//! The puncture code `P(C)` is the set of `c ∈ F_p^n` with
//! `Σ c_i tr(w_i) = 0` for all pairs; its generalization `P̃(C)` allows
//! `c ∈ F_q^n` with `Σ tr(c_i w_i) = 0`. Because `w` is F_p-bilinear and
//! alternating, pairs of basis vectors suffice.
//!
//! A word `c` of weight `r` turns `C` into a self-orthogonal code of length
//! `r`: puncture the positions where `c_i = 0` and scale `a_i` by `c_i`.

use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::additive::{AdditiveCode, SymplecticVector};
use crate::distance::BlockCode;
use crate::error::CodeError;
use crate::field::FieldSpec;
use crate::linalg::{self, Matrix, PrimeField};
use crate::propagation::RuleError;
use crate::stabilizer::{Purity, QuantumParams};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PunctureError {
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error("the zero word does not define a shortening")]
    ZeroWord,
    #[error("word is not in the puncture code")]
    NotInPunctureCode,
    #[error("shortened code is not self-orthogonal (generators {0} and {1})")]
    NotSelfOrthogonal(usize, usize),
}

/// `P(C)` over F_p, or `P̃(C)` over F_q (which is F_p-linear but in general
/// not F_q-linear).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PunctureCode {
    alphabet: Arc<FieldSpec>,
    generalized: bool,
    n: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

/// Counts of words by weight; `complete == false` means the counts come from
/// random samples and only show which weights occur.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDistribution {
    pub counts: Vec<u64>,
    pub complete: bool,
}

impl WeightDistribution {
    /// Weights with at least one word, excluding 0.
    pub fn support(&self) -> Vec<usize> {
        self.counts.iter().enumerate().skip(1).filter(|(_, &c)| c > 0).map(|(w, _)| w).collect()
    }

    pub fn summary(&self) -> String {
        let parts: Vec<String> =
            self.counts.iter().enumerate().filter(|(_, &c)| c > 0).map(|(w, c)| format!("{w}:{c}")).collect();
        format!("weights={} complete={}", parts.join(","), self.complete)
    }
}

fn products(code: &AdditiveCode) -> Vec<Vec<u32>> {
    let f = code.field();
    let gens = code.generators();
    let mut out = Vec::new();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            out.push(coordinate_products(f, &gens[i], &gens[j]));
        }
    }
    out
}

/// `(a_i b'_i − a'_i b_i)_i`
pub fn coordinate_products(f: &FieldSpec, u: &SymplecticVector, v: &SymplecticVector) -> Vec<u32> {
    (0..u.len()).map(|i| f.sub(f.mul(u.a[i], v.b[i]), f.mul(v.a[i], u.b[i]))).collect()
}

impl PunctureCode {
    /// Builds the code from an explicit list of product vectors `w`.
    pub fn from_products(
        field: &Arc<FieldSpec>,
        n: usize,
        ws: &[Vec<u32>],
        generalized: bool,
    ) -> Result<Self, CodeError> {
        let p = field.characteristic();
        let fp = PrimeField::new(p);
        let (alphabet, m) =
            if generalized { (field.clone(), field.degree() as usize) } else { (FieldSpec::standard(p, 1)?, 1) };
        let powers: Vec<u32> = (0..m).map(|t| field.pow(field.alpha(), t as u64)).collect();
        let checks: Matrix = ws
            .iter()
            .map(|w| w.iter().flat_map(|&x| powers.iter().map(move |&al| field.trace(field.mul(al, x)))).collect())
            .collect();
        let mut basis = linalg::nullspace(&fp, &checks, n * m);
        let pivots = linalg::rref(&fp, &mut basis);
        Ok(PunctureCode { alphabet, generalized, n, basis, pivots })
    }

    pub fn of(code: &AdditiveCode, generalized: bool) -> Result<Self, CodeError> {
        Self::from_products(code.field(), code.len(), &products(code), generalized)
    }

    /// The definition taken literally: products of all pairs of codewords.
    /// Only for codes with at most `limit` words.
    pub fn from_all_pairs(code: &AdditiveCode, generalized: bool, limit: u64) -> Option<Result<Self, CodeError>> {
        let words = code.codewords(limit)?;
        let f = code.field();
        let mut ws = Vec::with_capacity(words.len() * words.len());
        for u in &words {
            for v in &words {
                ws.push(coordinate_products(f, u, v));
            }
        }
        Some(Self::from_products(f, code.len(), &ws, generalized))
    }

    pub fn alphabet(&self) -> &Arc<FieldSpec> {
        &self.alphabet
    }

    pub fn is_generalized(&self) -> bool {
        self.generalized
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// F_p-dimension.
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    fn m(&self) -> usize {
        self.alphabet.degree() as usize
    }

    fn collapse(&self, digits: &[u32]) -> Vec<u32> {
        digits.chunks(self.m()).map(|c| self.alphabet.from_coefficients(c)).collect()
    }

    /// F_p basis as words over the alphabet.
    pub fn basis_words(&self) -> Vec<Vec<u32>> {
        self.basis.iter().map(|r| self.collapse(r)).collect()
    }

    pub fn contains(&self, word: &[u32]) -> Result<bool, CodeError> {
        if word.len() != self.n {
            return Err(CodeError::LengthMismatch { expected: self.n, found: word.len() });
        }
        let q = self.alphabet.order();
        if let Some(&value) = word.iter().find(|&&x| x >= q) {
            return Err(CodeError::SymbolOutOfRange { value, q });
        }
        let digits: Vec<u32> = word.iter().flat_map(|&x| self.alphabet.coefficients(x)).collect();
        Ok(linalg::in_span(&PrimeField::new(self.alphabet.characteristic()), &self.basis, &self.pivots, &digits))
    }

    fn block_code(&self) -> BlockCode {
        BlockCode::new(self.alphabet.characteristic(), self.m(), self.n, self.basis.clone())
    }

    pub fn words(&self, limit: u64) -> Option<Vec<Vec<u32>>> {
        let fp = PrimeField::new(self.alphabet.characteristic());
        crate::additive::span(&fp, &self.basis, self.n * self.m(), limit)
            .map(|ws| ws.iter().map(|w| self.collapse(w)).collect())
    }

    /// Full enumeration up to `limit` words, otherwise `samples` random words.
    pub fn weight_distribution<R: Rng + ?Sized>(&self, limit: u64, samples: usize, rng: &mut R) -> WeightDistribution {
        if let Some(counts) = self.block_code().weight_distribution(limit) {
            return WeightDistribution { counts, complete: true };
        }
        let fp = PrimeField::new(self.alphabet.characteristic());
        let mut counts = vec![0u64; self.n + 1];
        for _ in 0..samples {
            let mut v = vec![0; self.n * self.m()];
            for row in &self.basis {
                linalg::axpy(&fp, &mut v, rng.random_range(0..fp.p()), row);
            }
            counts[self.collapse(&v).iter().filter(|&&x| x != 0).count()] += 1;
        }
        WeightDistribution { counts, complete: false }
    }

    /// Some word of Hamming weight exactly `r`, searching at most `limit`
    /// words.
    pub fn word_of_weight(&self, r: usize, limit: u64) -> Option<Vec<u32>> {
        self.words(limit)?.into_iter().find(|w| w.iter().filter(|&&x| x != 0).count() == r)
    }
}

/// Scales `a_i` by `c_i` on the support of `c` and deletes the other
/// positions. The result is verified to be self-orthogonal.
pub fn shorten_via_codeword(code: &AdditiveCode, c: &[u32]) -> Result<AdditiveCode, PunctureError> {
    let generalized = PunctureCode::of(code, true)?;
    if !generalized.contains(c)? {
        return Err(PunctureError::NotInPunctureCode);
    }
    let zeros: Vec<usize> = (0..c.len()).filter(|&i| c[i] == 0).collect();
    if zeros.len() == c.len() {
        return Err(PunctureError::ZeroWord);
    }
    let scalars: Vec<u32> = c.iter().copied().filter(|&x| x != 0).collect();
    let out = code.puncture_at(&zeros)?.scale_coordinates(&scalars)?;
    if let Err((i, j)) = out.self_orthogonality() {
        return Err(PunctureError::NotSelfOrthogonal(i, j));
    }
    Ok(out)
}

/// Parameters after shortening through a puncture-code word of weight
/// `n − s`: `((n−s, K', d))` with `K' ≥ K/q^s`.
pub fn shorten_params(r: &QuantumParams, s: usize, certified: bool) -> Result<QuantumParams, RuleError> {
    if s >= r.n {
        return Err(RuleError::TooManyPositions { s, n: r.n });
    }
    if !certified {
        return Err(RuleError::NoPunctureWord(r.n - s));
    }
    if s == 0 {
        return Ok(r.clone());
    }
    let qs = num_bigint::BigUint::from(r.q).pow(s as u32);
    let k = (&r.dimension + &qs - 1u32) / &qs;
    let purity = if r.purity.allows_shortening() { Purity::PureBound } else { Purity::Unknown };
    Ok(QuantumParams {
        n: r.n - s,
        dimension: k,
        dimension_bound: true,
        distance: r.distance.derived(r.distance.value),
        purity,
        ..r.clone()
    })
}
