//! F_q-linear codes, their Euclidean and Hermitian duals, cyclic codes, and
//! classical Construction X.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::additive::{self, AdditiveCode, SymplecticVector};
use crate::distance::{BlockCode, DistanceBudget, MinWeight, SplitMinWeight};
use crate::error::CodeError;
use crate::field::{FieldError, FieldSpec};
use crate::linalg::{self, Matrix};
use crate::poly::Polynomial;

#[derive(Clone)]
pub struct LinearCode {
    field: Arc<FieldSpec>,
    n: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.n == other.n && self.basis == other.basis
    }
}

impl Eq for LinearCode {}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearCode[{},{}]_{}", self.n, self.dimension(), self.field.order())
    }
}

/// `Σ x_i y_i`
pub fn euclidean_product(f: &FieldSpec, x: &[u32], y: &[u32]) -> u32 {
    x.iter().zip(y).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
}

/// `Σ x_i y_i^q` over `GF(q²)`.
pub fn hermitian_product(f: &FieldSpec, x: &[u32], y: &[u32]) -> Result<u32, FieldError> {
    let mut acc = 0;
    for (&a, &b) in x.iter().zip(y) {
        acc = f.add(acc, f.mul(a, f.conj(b)?));
    }
    Ok(acc)
}

pub fn hamming_weight(x: &[u32]) -> usize {
    x.iter().filter(|&&c| c != 0).count()
}

impl LinearCode {
    /// Row-reduces `rows`; dependent rows are dropped silently (compare
    /// `dimension()` with the row count to detect them).
    pub fn new(field: Arc<FieldSpec>, n: usize, rows: Matrix) -> Result<Self, CodeError> {
        let q = field.order();
        for r in &rows {
            if r.len() != n {
                return Err(CodeError::LengthMismatch { expected: n, found: r.len() });
            }
            if let Some(&value) = r.iter().find(|&&x| x >= q) {
                return Err(CodeError::SymbolOutOfRange { value, q });
            }
        }
        Ok(Self::reduced(field, n, rows))
    }

    fn reduced(field: Arc<FieldSpec>, n: usize, mut rows: Matrix) -> Self {
        let pivots = linalg::rref(&*field, &mut rows);
        LinearCode { field, n, basis: rows, pivots }
    }

    pub fn zero(field: Arc<FieldSpec>, n: usize) -> Self {
        LinearCode { field, n, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: Arc<FieldSpec>, n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut r = vec![0; n];
                r[i] = 1;
                r
            })
            .collect();
        Self::reduced(field, n, rows)
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

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Generator matrix in reduced row echelon form.
    pub fn generator_matrix(&self) -> &Matrix {
        &self.basis
    }

    fn check_word(&self, v: &[u32]) -> Result<(), CodeError> {
        if v.len() != self.n {
            return Err(CodeError::LengthMismatch { expected: self.n, found: v.len() });
        }
        let q = self.field.order();
        match v.iter().find(|&&x| x >= q) {
            Some(&value) => Err(CodeError::SymbolOutOfRange { value, q }),
            None => Ok(()),
        }
    }

    pub fn contains(&self, v: &[u32]) -> Result<bool, CodeError> {
        self.check_word(v)?;
        Ok(linalg::in_span(&*self.field, &self.basis, &self.pivots, v))
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
        Ok(self.basis.iter().all(|r| linalg::in_span(&*other.field, &other.basis, &other.pivots, r)))
    }

    pub fn euclidean_dual(&self) -> Self {
        Self::reduced(self.field.clone(), self.n, linalg::nullspace(&*self.field, &self.basis, self.n))
    }

    pub fn hermitian_dual(&self) -> Result<Self, CodeError> {
        let mut conj = self.basis.clone();
        for r in conj.iter_mut() {
            for x in r.iter_mut() {
                *x = self.field.conj(*x)?;
            }
        }
        if conj.is_empty() && !self.field.is_quadratic_extension() {
            return Err(FieldError::NotQuadraticExtension(self.field.order()).into());
        }
        Ok(Self::reduced(self.field.clone(), self.n, linalg::nullspace(&*self.field, &conj, self.n)))
    }

    pub fn is_hermitian_self_orthogonal(&self) -> Result<bool, CodeError> {
        for x in &self.basis {
            for y in &self.basis {
                if hermitian_product(&self.field, x, y)? != 0 {
                    return Ok(false);
                }
            }
        }
        if self.basis.is_empty() && !self.field.is_quadratic_extension() {
            return Err(FieldError::NotQuadraticExtension(self.field.order()).into());
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Self) -> Result<Self, CodeError> {
        self.same_space(other)?;
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Ok(Self::reduced(self.field.clone(), self.n, rows))
    }

    pub fn intersection(&self, other: &Self) -> Result<Self, CodeError> {
        self.same_space(other)?;
        Ok(self.euclidean_dual().sum(&other.euclidean_dual())?.euclidean_dual())
    }

    fn mask(&self, positions: &[usize]) -> Result<Vec<bool>, CodeError> {
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
        let mask = self.mask(positions)?;
        let (front, back): (Vec<usize>, Vec<usize>) = (0..self.n).partition(|&c| mask[c]);
        let mut rows: Matrix = self.basis.iter().map(|r| front.iter().chain(&back).map(|&c| r[c]).collect()).collect();
        let pivots = linalg::rref(&*self.field, &mut rows);
        let kept = rows
            .into_iter()
            .zip(pivots)
            .filter(|&(_, p)| p >= front.len())
            .map(|(r, _)| r[front.len()..].to_vec())
            .collect();
        Ok(Self::reduced(self.field.clone(), back.len(), kept))
    }

    pub fn puncture_at(&self, positions: &[usize]) -> Result<Self, CodeError> {
        let mask = self.mask(positions)?;
        let rows =
            self.basis.iter().map(|r| r.iter().zip(&mask).filter(|(_, &m)| !m).map(|(&x, _)| x).collect()).collect();
        let kept = mask.iter().filter(|&&m| !m).count();
        Ok(Self::reduced(self.field.clone(), kept, rows))
    }

    /// F_p expansion: each generator `g` contributes the rows `α^t g`, and
    /// each symbol is a block of `m` digits.
    pub(crate) fn expanded_rows(&self, rows: &Matrix) -> Matrix {
        let f = &*self.field;
        let m = f.degree() as usize;
        let mut out = Vec::with_capacity(rows.len() * m);
        for g in rows {
            for t in 0..m {
                let s = f.pow(f.alpha(), t as u64);
                out.push(g.iter().flat_map(|&x| f.coefficients(f.mul(s, x))).collect());
            }
        }
        out
    }

    pub(crate) fn block_code(&self) -> BlockCode {
        BlockCode::new(
            self.field.characteristic(),
            self.field.degree() as usize,
            self.n,
            self.expanded_rows(&self.basis),
        )
    }

    pub(crate) fn collapse(&self, digits: &[u32]) -> Vec<u32> {
        digits.chunks(self.field.degree() as usize).map(|c| self.field.from_coefficients(c)).collect()
    }

    /// Minimum Hamming weight of a nonzero codeword.
    pub fn min_distance(&self, budget: &DistanceBudget) -> Result<MinWeight, CodeError> {
        let mut res = self.block_code().min_weight(budget)?;
        res.witness = res.witness.map(|w| self.collapse(&w));
        Ok(res)
    }

    /// Minimum weight over the code and over words outside `sub`.
    pub fn min_distance_split(&self, sub: &LinearCode, budget: &DistanceBudget) -> Result<SplitMinWeight, CodeError> {
        if !sub.is_subcode_of(self)? {
            return Err(CodeError::NotSubcode);
        }
        let mut res = self.block_code().min_weight_split(&self.expanded_rows(&sub.basis), budget)?;
        res.all.witness = res.all.witness.map(|w| self.collapse(&w));
        if let Some(o) = res.outside.as_mut() {
            o.witness = o.witness.take().map(|w| self.collapse(&w));
        }
        Ok(res)
    }

    pub fn codewords(&self, limit: u64) -> Option<Matrix> {
        additive::span(&*self.field, &self.basis, self.n, limit)
    }

    pub fn random<R: Rng + ?Sized>(field: Arc<FieldSpec>, n: usize, k: usize, rng: &mut R) -> Self {
        let q = field.order();
        let rows = (0..k).map(|_| (0..n).map(|_| rng.random_range(0..q)).collect()).collect();
        Self::reduced(field, n, rows)
    }

    /// Code spanned by the cyclic shifts of `g`, which must divide `x^n − 1`.
    pub fn cyclic(field: Arc<FieldSpec>, g: &Polynomial, n: usize) -> Result<Self, CodeError> {
        if let Some(&value) = g.coefficients().iter().find(|&&c| c >= field.order()) {
            return Err(CodeError::SymbolOutOfRange { value, q: field.order() });
        }
        if !g.divides(&Polynomial::x_pow_minus_one(&field, n), &field) {
            return Err(CodeError::NotCyclic(n));
        }
        let deg = g.degree().expect("nonzero divisor");
        let rows = (0..n - deg)
            .map(|s| {
                let mut r = vec![0; n];
                r[s..s + deg + 1].copy_from_slice(g.coefficients());
                r
            })
            .collect();
        Ok(Self::reduced(field, n, rows))
    }

    /// Appends `extra` zero coordinates to every codeword.
    pub fn pad(&self, extra: usize) -> Self {
        let rows =
            self.basis.iter().map(|r| r.iter().copied().chain(std::iter::repeat_n(0, extra)).collect()).collect();
        Self::reduced(self.field.clone(), self.n + extra, rows)
    }

    /// The stabilizer code of a Hermitian self-orthogonal code over `GF(q²)`
    /// as an additive code over `F_q × F_q`, via the isometry that carries
    /// the trace-alternating form to the symplectic form.
    pub fn to_symplectic(&self) -> Result<AdditiveCode, CodeError> {
        let iso = HermitianIsometry::new(self.field.clone())?;
        let mut gens = Vec::new();
        for g in &self.basis {
            for t in 0..self.field.degree() as u64 {
                let s = self.field.pow(self.field.alpha(), t);
                let row: Vec<u32> = g.iter().map(|&x| self.field.mul(s, x)).collect();
                gens.push(iso.to_pairs(&row));
            }
        }
        AdditiveCode::new(iso.base.clone(), self.n, &gens)
    }
}

/// The F_q-linear bijection `ψ(a|b) = β·a + β^q·b` from `F_q × F_q` onto
/// `GF(q²)`, with `tr_{q/p}(a'b − ab')` equal to the trace-alternating form
/// `tr_{q/p}((x y^q − x^q y)/(β^{2q} − β²))` of the images.
pub struct HermitianIsometry {
    pub big: Arc<FieldSpec>,
    pub base: Arc<FieldSpec>,
    /// Image of each base-field element in the big field.
    pub embed: Vec<u32>,
    pub beta: u32,
    decompose: Vec<(u32, u32)>,
}

impl HermitianIsometry {
    pub fn new(big: Arc<FieldSpec>) -> Result<Self, CodeError> {
        let q = big.base_order().ok_or(FieldError::NotQuadraticExtension(big.order()))?;
        let p = big.characteristic();
        let base = FieldSpec::standard(p, big.degree() / 2)?;
        // a root of the base modulus inside the big field
        let modulus = Polynomial::new(base.modulus().to_vec());
        let gamma = (1..big.order())
            .find(|&g| modulus.eval(g, &big) == 0)
            .expect("the base field embeds in its quadratic extension");
        let mb = base.degree() as usize;
        let embed: Vec<u32> = (0..q)
            .map(|x| {
                base.coefficients(x)
                    .iter()
                    .take(mb)
                    .enumerate()
                    .fold(0, |acc, (j, &c)| big.add(acc, big.mul(c % p, big.pow(gamma, j as u64))))
            })
            .collect();
        let beta = (2..big.order())
            .find(|&b| {
                let bq1 = big.pow(b, (q - 1) as u64);
                big.pow(bq1, 2) != 1 && big.pow(bq1, (q - 1) as u64) != 1
            })
            .expect("a suitable normal element exists");
        let beta_q = big.pow(beta, q as u64);
        let mut decompose = vec![(0, 0); big.order() as usize];
        for a in 0..q {
            for b in 0..q {
                let x = big.add(big.mul(beta, embed[a as usize]), big.mul(beta_q, embed[b as usize]));
                decompose[x as usize] = (a, b);
            }
        }
        Ok(HermitianIsometry { big, base, embed, beta, decompose })
    }

    pub fn to_pairs(&self, x: &[u32]) -> SymplecticVector {
        let (a, b) = x.iter().map(|&v| self.decompose[v as usize]).unzip();
        SymplecticVector { a, b }
    }

    pub fn from_pairs(&self, v: &SymplecticVector) -> Vec<u32> {
        let beta_q = self.big.conj(self.beta).expect("quadratic extension");
        v.a.iter()
            .zip(&v.b)
            .map(|(&a, &b)| {
                self.big
                    .add(self.big.mul(self.beta, self.embed[a as usize]), self.big.mul(beta_q, self.embed[b as usize]))
            })
            .collect()
    }
}

/// Classical Construction X: codewords of `c2` padded with zeros plus coset
/// representatives of `c1/c2` followed by the matching `aux` codeword.
pub fn construction_x_classical(c1: &LinearCode, c2: &LinearCode, aux: &LinearCode) -> Result<LinearCode, CodeError> {
    if !c2.is_subcode_of(c1)? {
        return Err(CodeError::NotSubcode);
    }
    if aux.field != c1.field {
        return Err(CodeError::FieldMismatch);
    }
    let e = c1.dimension() - c2.dimension();
    if aux.dimension() != e {
        return Err(CodeError::Dimension(format!(
            "auxiliary code has dimension {}, quotient has dimension {e}",
            aux.dimension()
        )));
    }
    let reps = linalg::complement(&*c1.field, &c2.basis, &c1.basis);
    let mut rows: Matrix = c2.pad(aux.n).basis;
    for (r, x) in reps.iter().zip(&aux.basis) {
        rows.push(r.iter().chain(x).copied().collect());
    }
    Ok(LinearCode::reduced(c1.field.clone(), c1.n + aux.n, rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn duals_of_full_and_zero() {
        let f = FieldSpec::of_order(4).unwrap();
        let full = LinearCode::full(f.clone(), 4);
        assert_eq!(full.euclidean_dual(), LinearCode::zero(f.clone(), 4));
        assert_eq!(full.hermitian_dual().unwrap(), LinearCode::zero(f, 4));
        let f3 = FieldSpec::of_order(3).unwrap();
        assert!(LinearCode::full(f3, 2).hermitian_dual().is_err());
    }

    #[test]
    fn double_duals() {
        let f = FieldSpec::of_order(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let c = LinearCode::random(f.clone(), 6, 3, &mut rng);
            assert_eq!(c.euclidean_dual().euclidean_dual(), c);
            let h = c.hermitian_dual().unwrap();
            assert_eq!(h.dimension(), 6 - c.dimension());
            assert_eq!(h.hermitian_dual().unwrap(), c);
        }
    }

    #[test]
    fn cyclic_examples() {
        let f = FieldSpec::of_order(4).unwrap();
        let c = LinearCode::cyclic(f.clone(), &Polynomial::one(), 5).unwrap();
        assert_eq!(c, LinearCode::full(f.clone(), 5));
        let c = LinearCode::cyclic(f.clone(), &Polynomial::linear(&f, 1), 3).unwrap();
        assert_eq!(c.dimension(), 2);
        assert!(matches!(LinearCode::cyclic(f.clone(), &Polynomial::linear(&f, 2), 5), Err(CodeError::NotCyclic(5))));
    }

    #[test]
    fn construction_x_small() {
        let f = FieldSpec::of_order(2).unwrap();
        let c1 = LinearCode::new(f.clone(), 3, vec![vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        let c2 = LinearCode::new(f.clone(), 3, vec![vec![1, 1, 0]]).unwrap();
        let aux = LinearCode::full(f.clone(), 1);
        let x = construction_x_classical(&c1, &c2, &aux).unwrap();
        assert_eq!((x.len(), x.dimension()), (4, 2));
        let d = x.min_distance(&DistanceBudget::default()).unwrap().distance.value;
        let d1 = c1.min_distance(&DistanceBudget::default()).unwrap().distance.value;
        let d2 = c2.min_distance(&DistanceBudget::default()).unwrap().distance.value;
        assert!(d >= d2.min(d1 + 1));
        let same = construction_x_classical(&c1, &c1, &LinearCode::zero(f, 0)).unwrap();
        assert_eq!(same, c1);
    }

    #[test]
    fn isometry_preserves_forms() {
        for q2 in [4, 9, 16] {
            let big = FieldSpec::of_order(q2).unwrap();
            let iso = HermitianIsometry::new(big.clone()).unwrap();
            let base = iso.base.clone();
            let q = base.order();
            for u in 0..q * q {
                for v in 0..q * q {
                    let x = SymplecticVector { a: vec![u % q], b: vec![u / q] };
                    let y = SymplecticVector { a: vec![v % q], b: vec![v / q] };
                    let (xi, yi) = (iso.from_pairs(&x)[0], iso.from_pairs(&y)[0]);
                    assert_eq!(iso.to_pairs(&[xi]), x);
                    // x y^q − x^q y = (β^{2q} − β²)(a'b − ab')
                    let lhs = big.sub(big.mul(xi, big.conj(yi).unwrap()), big.mul(big.conj(xi).unwrap(), yi));
                    let inner = base.sub(base.mul(y.a[0], x.b[0]), base.mul(x.a[0], y.b[0]));
                    let b2 = big.mul(iso.beta, iso.beta);
                    let scale = big.sub(big.conj(b2).unwrap(), b2);
                    assert_eq!(lhs, big.mul(scale, iso.embed[inner as usize]), "q²={q2}");
                }
            }
        }
    }

    #[test]
    fn hermitian_dual_matches_symplectic_dual() {
        let f = FieldSpec::of_order(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let c = LinearCode::random(f.clone(), 5, 2, &mut rng);
            let lhs = c.hermitian_dual().unwrap().to_symplectic().unwrap();
            let rhs = c.to_symplectic().unwrap().symplectic_dual();
            assert_eq!(lhs, rhs);
        }
    }
}
