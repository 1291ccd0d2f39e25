//! F_p-linear codes over the symplectic alphabet F_q × F_q.
//!
//! A vector `(a|b)` of length `n` is stored as `2nm` prime-field digits in
//! position-major order: position `i` occupies digits `i·2m .. (i+1)·2m`,
//! first the `m` digits of `a_i`, then the `m` digits of `b_i`. Codes keep an
//! F_p basis in reduced row echelon form, so two codes are equal exactly when
//! their stored bases are equal.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use rand::Rng;

use crate::distance::{BlockCode, DistanceBudget, MinWeight};
use crate::error::CodeError;
use crate::field::FieldSpec;
use crate::linalg::{self, Matrix, PrimeField, Scalars};

/// A vector `(a|b)` in `F_q^n × F_q^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymplecticVector {
    pub a: Vec<u32>,
    pub b: Vec<u32>,
}

impl SymplecticVector {
    pub fn new(a: Vec<u32>, b: Vec<u32>) -> Result<Self, CodeError> {
        if a.len() != b.len() {
            return Err(CodeError::LengthMismatch { expected: a.len(), found: b.len() });
        }
        Ok(SymplecticVector { a, b })
    }

    pub fn zero(n: usize) -> Self {
        SymplecticVector { a: vec![0; n], b: vec![0; n] }
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// Number of positions with `(a_i, b_i) != (0, 0)`.
    pub fn weight(&self) -> usize {
        self.a.iter().zip(&self.b).filter(|(&x, &y)| x != 0 || y != 0).count()
    }

    pub fn is_zero(&self) -> bool {
        self.weight() == 0
    }

    pub fn add(&self, other: &Self, f: &FieldSpec) -> Self {
        SymplecticVector {
            a: self.a.iter().zip(&other.a).map(|(&x, &y)| f.add(x, y)).collect(),
            b: self.b.iter().zip(&other.b).map(|(&x, &y)| f.add(x, y)).collect(),
        }
    }

    fn check(&self, f: &FieldSpec, n: usize) -> Result<(), CodeError> {
        if self.a.len() != n || self.b.len() != n {
            return Err(CodeError::LengthMismatch { expected: n, found: self.a.len().max(self.b.len()) });
        }
        let q = f.order();
        match self.a.iter().chain(&self.b).find(|&&x| x >= q) {
            Some(&value) => Err(CodeError::SymbolOutOfRange { value, q }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for SymplecticVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self.a.iter().zip(&self.b).map(|(x, y)| format!("{x},{y}")).collect();
        f.write_str(&pairs.join(" "))
    }
}

/// `tr(Σ a'_i b_i − a_i b'_i)`
pub fn symplectic_form(f: &FieldSpec, u: &SymplecticVector, v: &SymplecticVector) -> Result<u32, CodeError> {
    u.check(f, v.len())?;
    v.check(f, u.len())?;
    let mut acc = 0;
    for i in 0..u.len() {
        acc = f.add(acc, f.sub(f.mul(v.a[i], u.b[i]), f.mul(u.a[i], v.b[i])));
    }
    Ok(f.trace(acc))
}

pub fn symplectic_weight(u: &SymplecticVector) -> usize {
    u.weight()
}

pub(crate) fn expand(f: &FieldSpec, v: &SymplecticVector) -> Vec<u32> {
    let m = f.degree() as usize;
    let mut out = Vec::with_capacity(2 * m * v.len());
    for (&x, &y) in v.a.iter().zip(&v.b) {
        out.extend(f.coefficients(x));
        out.extend(f.coefficients(y));
    }
    out
}

pub(crate) fn collapse(f: &FieldSpec, digits: &[u32]) -> SymplecticVector {
    let m = f.degree() as usize;
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for block in digits.chunks(2 * m) {
        a.push(f.from_coefficients(&block[..m]));
        b.push(f.from_coefficients(&block[m..]));
    }
    SymplecticVector { a, b }
}

#[derive(Clone)]
pub struct AdditiveCode {
    field: Arc<FieldSpec>,
    n: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl PartialEq for AdditiveCode {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.n == other.n && self.basis == other.basis
    }
}

impl Eq for AdditiveCode {}

impl fmt::Debug for AdditiveCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AdditiveCode")
            .field("q", &self.field.order())
            .field("n", &self.n)
            .field("kappa", &self.kappa())
            .finish()
    }
}

impl AdditiveCode {
    pub fn new(field: Arc<FieldSpec>, n: usize, generators: &[SymplecticVector]) -> Result<Self, CodeError> {
        let mut rows = Vec::with_capacity(generators.len());
        for g in generators {
            g.check(&field, n)?;
            rows.push(expand(&field, g));
        }
        Ok(Self::from_expanded(field, n, rows))
    }

    /// Builds a code from rows already in the expanded digit layout.
    pub(crate) fn from_expanded(field: Arc<FieldSpec>, n: usize, mut rows: Matrix) -> Self {
        let fp = PrimeField::new(field.characteristic());
        let width = 2 * n * field.degree() as usize;
        rows.retain(|r| r.iter().any(|&x| x != 0));
        debug_assert!(rows.iter().all(|r| r.len() == width));
        let pivots = linalg::rref(&fp, &mut rows);
        AdditiveCode { field, n, basis: rows, pivots }
    }

    pub fn zero(field: Arc<FieldSpec>, n: usize) -> Self {
        AdditiveCode { field, n, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: Arc<FieldSpec>, n: usize) -> Self {
        let width = 2 * n * field.degree() as usize;
        let rows = (0..width)
            .map(|i| {
                let mut r = vec![0; width];
                r[i] = 1;
                r
            })
            .collect();
        Self::from_expanded(field, n, rows)
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// F_p-dimension.
    pub fn kappa(&self) -> usize {
        self.basis.len()
    }

    /// `|C| = p^kappa`
    pub fn size(&self) -> BigUint {
        BigUint::from(self.field.characteristic()).pow(self.kappa() as u32)
    }

    fn fp(&self) -> PrimeField {
        PrimeField::new(self.field.characteristic())
    }

    fn width(&self) -> usize {
        2 * self.n * self.field.degree() as usize
    }

    /// Generators in canonical (reduced echelon) order.
    pub fn generators(&self) -> Vec<SymplecticVector> {
        self.basis.iter().map(|r| collapse(&self.field, r)).collect()
    }

    pub(crate) fn expanded(&self) -> &Matrix {
        &self.basis
    }

    pub fn contains(&self, v: &SymplecticVector) -> Result<bool, CodeError> {
        v.check(&self.field, self.n)?;
        Ok(linalg::in_span(&self.fp(), &self.basis, &self.pivots, &expand(&self.field, v)))
    }

    pub(crate) fn contains_expanded(&self, digits: &[u32]) -> bool {
        linalg::in_span(&self.fp(), &self.basis, &self.pivots, digits)
    }

    fn same_space(&self, other: &Self) -> Result<(), CodeError> {
        if self.field != other.field {
            return Err(CodeError::FieldMismatch);
        }
        if self.n != other.n {
            return Err(CodeError::LengthMismatch { expected: self.n, found: other.n });
        }
        Ok(())
    }

    pub fn is_subcode_of(&self, other: &Self) -> Result<bool, CodeError> {
        self.same_space(other)?;
        Ok(self.basis.iter().all(|r| other.contains_expanded(r)))
    }

    /// Rows of the F_p functionals `v ↦ u * v` for each basis row `u`.
    fn gram_functionals(&self) -> Matrix {
        let f = &*self.field;
        let fp = self.fp();
        let m = f.degree() as usize;
        let powers: Vec<u32> = (0..m).map(|t| f.pow(f.alpha(), t as u64)).collect();
        self.basis
            .iter()
            .map(|row| {
                let u = collapse(f, row);
                let mut out = Vec::with_capacity(self.width());
                for i in 0..self.n {
                    out.extend(powers.iter().map(|&al| f.trace(f.mul(al, u.b[i]))));
                    out.extend(powers.iter().map(|&al| fp.neg(f.trace(f.mul(al, u.a[i])))));
                }
                out
            })
            .collect()
    }

    /// `C* = {v : v * u = 0 for all u in C}`
    pub fn symplectic_dual(&self) -> Self {
        let rows = linalg::nullspace(&self.fp(), &self.gram_functionals(), self.width());
        Self::from_expanded(self.field.clone(), self.n, rows)
    }

    pub fn sum(&self, other: &Self) -> Result<Self, CodeError> {
        self.same_space(other)?;
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Ok(Self::from_expanded(self.field.clone(), self.n, rows))
    }

    pub fn intersection(&self, other: &Self) -> Result<Self, CodeError> {
        self.same_space(other)?;
        Ok(self.symplectic_dual().sum(&other.symplectic_dual())?.symplectic_dual())
    }

    fn check_positions(&self, positions: &[usize]) -> Result<Vec<bool>, CodeError> {
        let mut mask = vec![false; self.n];
        for &pos in positions {
            if pos >= self.n {
                return Err(CodeError::PositionOutOfRange { pos, n: self.n });
            }
            mask[pos] = true;
        }
        Ok(mask)
    }

    /// Keeps the codewords vanishing on `positions`, then deletes them.
    pub fn shorten_at(&self, positions: &[usize]) -> Result<Self, CodeError> {
        let mask = self.check_positions(positions)?;
        let block = 2 * self.field.degree() as usize;
        let cols: Vec<usize> = (0..self.width()).collect();
        let (front, back): (Vec<usize>, Vec<usize>) = cols.into_iter().partition(|&c| mask[c / block]);
        let mut rows: Matrix = self.basis.iter().map(|r| front.iter().chain(&back).map(|&c| r[c]).collect()).collect();
        let pivots = linalg::rref(&self.fp(), &mut rows);
        let kept = rows
            .into_iter()
            .zip(pivots)
            .filter(|&(_, p)| p >= front.len())
            .map(|(r, _)| r[front.len()..].to_vec())
            .collect();
        Ok(Self::from_expanded(self.field.clone(), self.n - count(&mask), kept))
    }

    /// Deletes `positions` from every codeword.
    pub fn puncture_at(&self, positions: &[usize]) -> Result<Self, CodeError> {
        let mask = self.check_positions(positions)?;
        let block = 2 * self.field.degree() as usize;
        let rows = self
            .basis
            .iter()
            .map(|r| r.iter().enumerate().filter(|(c, _)| !mask[c / block]).map(|(_, &x)| x).collect())
            .collect();
        Ok(Self::from_expanded(self.field.clone(), self.n - count(&mask), rows))
    }

    /// Multiplies the `a` half of position `i` by `scalars[i]` (nonzero).
    pub fn scale_coordinates(&self, scalars: &[u32]) -> Result<Self, CodeError> {
        if scalars.len() != self.n {
            return Err(CodeError::LengthMismatch { expected: self.n, found: scalars.len() });
        }
        if let Some(pos) = scalars.iter().position(|&c| c == 0) {
            return Err(CodeError::ZeroScalar(pos));
        }
        if let Some(&value) = scalars.iter().find(|&&c| c >= self.field.order()) {
            return Err(CodeError::SymbolOutOfRange { value, q: self.field.order() });
        }
        let gens: Vec<SymplecticVector> = self
            .generators()
            .into_iter()
            .map(|mut g| {
                for (x, &c) in g.a.iter_mut().zip(scalars) {
                    *x = self.field.mul(*x, c);
                }
                g
            })
            .collect();
        Self::new(self.field.clone(), self.n, &gens)
    }

    /// `Ok(())` when `C ⊆ C*`, otherwise the first pair of generator indices
    /// whose symplectic form is nonzero.
    pub fn self_orthogonality(&self) -> Result<(), (usize, usize)> {
        let gens = self.generators();
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                if symplectic_form(&self.field, &gens[i], &gens[j]).expect("same length") != 0 {
                    return Err((i, j));
                }
            }
        }
        Ok(())
    }

    pub fn is_self_orthogonal(&self) -> bool {
        self.self_orthogonality().is_ok()
    }

    pub(crate) fn block_code(&self) -> BlockCode {
        BlockCode::new(self.field.characteristic(), 2 * self.field.degree() as usize, self.n, self.basis.clone())
    }

    /// Minimum symplectic weight of a nonzero codeword.
    pub fn min_distance(&self, budget: &DistanceBudget) -> Result<MinWeight, CodeError> {
        Ok(self.block_code().min_weight(budget)?)
    }

    /// All codewords, for codes with at most `limit` elements.
    pub fn codewords(&self, limit: u64) -> Option<Vec<SymplecticVector>> {
        span(&self.fp(), &self.basis, self.width(), limit)
            .map(|ws| ws.iter().map(|w| collapse(&self.field, w)).collect())
    }

    /// Uniformly random element of the code.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> SymplecticVector {
        let fp = self.fp();
        let mut v = vec![0; self.width()];
        for row in &self.basis {
            linalg::axpy(&fp, &mut v, rng.random_range(0..fp.p()), row);
        }
        collapse(&self.field, &v)
    }

    /// Random code spanned by `count` uniformly random vectors.
    pub fn random<R: Rng + ?Sized>(field: Arc<FieldSpec>, n: usize, count: usize, rng: &mut R) -> Self {
        let q = field.order();
        let gens: Vec<SymplecticVector> = (0..count)
            .map(|_| SymplecticVector {
                a: (0..n).map(|_| rng.random_range(0..q)).collect(),
                b: (0..n).map(|_| rng.random_range(0..q)).collect(),
            })
            .collect();
        Self::new(field, n, &gens).expect("generated in range")
    }

    /// Random self-orthogonal code built by `steps` attempts to add a random
    /// element of the current dual.
    pub fn random_self_orthogonal<R: Rng + ?Sized>(field: Arc<FieldSpec>, n: usize, steps: usize, rng: &mut R) -> Self {
        let mut code = Self::zero(field, n);
        for _ in 0..steps {
            let v = code.symplectic_dual().random_element(rng);
            if !code.contains(&v).expect("length matches") {
                let mut gens = code.generators();
                gens.push(v);
                code = Self::new(code.field.clone(), n, &gens).expect("length matches");
            }
        }
        code
    }
}

fn count(mask: &[bool]) -> usize {
    mask.iter().filter(|&&b| b).count()
}

/// Every vector in the span of `rows`, or `None` when there are more than
/// `limit` of them.
pub(crate) fn span<F: Scalars>(f: &F, rows: &Matrix, width: usize, limit: u64) -> Option<Vec<Vec<u32>>> {
    let s = f.size() as u64;
    let mut total: u64 = 1;
    for _ in rows {
        total = total.checked_mul(s)?;
    }
    if total > limit {
        return None;
    }
    let mut out = vec![vec![0u32; width]];
    for row in rows {
        let mut next = Vec::with_capacity(out.len() * s as usize);
        for c in 0..s as u32 {
            for w in &out {
                let mut v = w.clone();
                linalg::axpy(f, &mut v, c, row);
                next.push(v);
            }
        }
        out = next;
    }
    Some(out)
}
