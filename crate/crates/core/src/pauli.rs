//! Dense operator oracle for qudit Pauli groups.
//!
//! Basis states of `n` qudits are labelled by `x ∈ F_q^n` and indexed as
//! `Σ x_i q^{n-1-i}`, so qudit 1 is the most significant digit. On one qudit
//! `X^a|x⟩ = |x+a⟩` and `Z^b|y⟩ = ω_p^{tr(b y)}|y⟩` with `ω_p = e^{2πi/p}`.
//!
//! Everything here works with full `q^n × q^n` complex matrices and exists to
//! cross-check the symplectic algebra, so the size is capped at
//! [`ORACLE_CEILING`].

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::additive::SymplecticVector;
use crate::field::FieldSpec;
use crate::stabilizer::StabilizerCode;

pub const ORACLE_CEILING: usize = 1 << 12;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

pub type CMatrix = DMatrix<Complex64>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("operator dimension {0} exceeds the oracle ceiling {ORACLE_CEILING}")]
    Ceiling(u64),
    #[error("label has length {found}, expected {expected}")]
    Length { expected: usize, found: usize },
    #[error("label symbol {value} out of range for q = {q}")]
    Symbol { value: u32, q: u32 },
    #[error("projector check failed: {0}")]
    Projector(String),
    #[error("probability {0} outside [0, 1]")]
    Probability(f64),
    #[error("matrix of dimension {dim} does not factor as {d1} x {d2}")]
    Factorization { dim: usize, d1: usize, d2: usize },
    #[error("not a density matrix: {0}")]
    NotDensity(String),
    #[error("cannot parse Pauli label '{0}': expected (gamma;a1,...,an|b1,...,bn)")]
    Parse(String),
}

/// `ω_p^γ X^{a_1}Z^{b_1} ⊗ … ⊗ X^{a_n}Z^{b_n}`
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliLabel {
    pub gamma: u32,
    pub a: Vec<u32>,
    pub b: Vec<u32>,
}

impl PauliLabel {
    pub fn identity(n: usize) -> Self {
        PauliLabel { gamma: 0, a: vec![0; n], b: vec![0; n] }
    }

    pub fn from_vector(v: &SymplecticVector) -> Self {
        PauliLabel { gamma: 0, a: v.a.clone(), b: v.b.clone() }
    }

    /// `φ(L)`, forgetting the phase.
    pub fn vector(&self) -> SymplecticVector {
        SymplecticVector { a: self.a.clone(), b: self.b.clone() }
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// Number of non-identity tensor factors.
    pub fn weight(&self) -> usize {
        self.vector().weight()
    }

    /// All phase-free labels of weight at most `w`, by weight then support.
    pub fn all_up_to_weight(q: u32, n: usize, w: usize) -> Vec<PauliLabel> {
        let mut out = vec![PauliLabel::identity(n)];
        for s in 1..=w.min(n) {
            let mut comb: Vec<usize> = (0..s).collect();
            loop {
                let mut vals = vec![1u32; s];
                loop {
                    let mut l = PauliLabel::identity(n);
                    for (&pos, &v) in comb.iter().zip(&vals) {
                        l.a[pos] = v % q;
                        l.b[pos] = v / q;
                    }
                    out.push(l);
                    let mut i = 0;
                    while i < s {
                        vals[i] += 1;
                        if vals[i] < q * q {
                            break;
                        }
                        vals[i] = 1;
                        i += 1;
                    }
                    if i == s {
                        break;
                    }
                }
                let Some(i) = (0..s).rev().find(|&i| comb[i] < n - s + i) else {
                    break;
                };
                comb[i] += 1;
                for j in i + 1..s {
                    comb[j] = comb[j - 1] + 1;
                }
            }
        }
        out
    }
}

impl fmt::Display for PauliLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        write!(f, "({};{}|{})", self.gamma, join(&self.a), join(&self.b))
    }
}

impl FromStr for PauliLabel {
    type Err = OracleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || OracleError::Parse(s.to_string());
        let inner = s.trim().strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(err)?;
        let (gamma, rest) = inner.split_once(';').ok_or_else(err)?;
        let (a, b) = rest.split_once('|').ok_or_else(err)?;
        let nums = |t: &str| -> Result<Vec<u32>, OracleError> {
            if t.trim().is_empty() {
                return Ok(Vec::new());
            }
            t.split(',').map(|x| x.trim().parse().map_err(|_| err())).collect()
        };
        let (a, b) = (nums(a)?, nums(b)?);
        if a.len() != b.len() {
            return Err(err());
        }
        Ok(PauliLabel { gamma: gamma.trim().parse().map_err(|_| err())?, a, b })
    }
}

/// A matrix with exactly one nonzero entry per column: column `j` maps to
/// `phase[j]·|perm[j]⟩`.
#[derive(Debug, Clone)]
struct Monomial {
    perm: Vec<usize>,
    phase: Vec<Complex64>,
}

impl Monomial {
    fn to_dense(&self) -> CMatrix {
        let d = self.perm.len();
        let mut m = CMatrix::zeros(d, d);
        for (j, (&i, &c)) in self.perm.iter().zip(&self.phase).enumerate() {
            m[(i, j)] = c;
        }
        m
    }

    /// `self · m`
    fn apply(&self, m: &CMatrix) -> CMatrix {
        let mut out = CMatrix::zeros(m.nrows(), m.ncols());
        for (j, (&i, &c)) in self.perm.iter().zip(&self.phase).enumerate() {
            let row = m.row(j) * c;
            out.row_mut(i).copy_from(&row);
        }
        out
    }
}

fn root_of_unity(k: u32, order: u32) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * (k % order) as f64 / order as f64)
}

/// Largest entry modulus.
fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// Entrywise `|a − b| ≤ tol · scale`.
pub fn approx_eq_scaled(a: &CMatrix, b: &CMatrix, tol: f64, scale: f64) -> bool {
    a.shape() == b.shape() && a.iter().zip(b.iter()).all(|(x, y)| (x - y).norm() <= tol * scale)
}

/// Entrywise comparison after normalizing by the largest entry of either
/// operand.
pub fn approx_eq(a: &CMatrix, b: &CMatrix, tol: f64) -> bool {
    let scale = max_abs(a).max(max_abs(b));
    scale == 0.0 || approx_eq_scaled(a, b, tol, scale)
}

/// Pauli operators on `n` qudits of dimension `q`.
#[derive(Debug, Clone)]
pub struct PauliOracle {
    field: Arc<FieldSpec>,
    n: usize,
    dim: usize,
    pub tolerance: f64,
}

impl PauliOracle {
    pub fn new(field: Arc<FieldSpec>, n: usize) -> Result<Self, OracleError> {
        let dim = (field.order() as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
        if dim > ORACLE_CEILING as u64 {
            return Err(OracleError::Ceiling(dim));
        }
        Ok(PauliOracle { field, n, dim: dim as usize, tolerance: DEFAULT_TOLERANCE })
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    fn check(&self, l: &PauliLabel) -> Result<(), OracleError> {
        if l.a.len() != self.n || l.b.len() != self.n {
            return Err(OracleError::Length { expected: self.n, found: l.a.len() });
        }
        let q = self.field.order();
        match l.a.iter().chain(&l.b).find(|&&x| x >= q) {
            Some(&value) => Err(OracleError::Symbol { value, q }),
            None => Ok(()),
        }
    }

    fn digits(&self, mut x: usize) -> Vec<u32> {
        let q = self.field.order() as usize;
        let mut d = vec![0u32; self.n];
        for i in (0..self.n).rev() {
            d[i] = (x % q) as u32;
            x /= q;
        }
        d
    }

    fn index(&self, d: &[u32]) -> usize {
        let q = self.field.order() as usize;
        d.iter().fold(0, |acc, &x| acc * q + x as usize)
    }

    /// `X^a Z^b` tensor product times the scalar `e^{2πi·k/order}`.
    fn monomial(&self, l: &PauliLabel, k: u32, order: u32) -> Monomial {
        let f = &*self.field;
        let p = f.characteristic();
        let global = root_of_unity(k, order);
        let mut perm = Vec::with_capacity(self.dim);
        let mut phase = Vec::with_capacity(self.dim);
        for x in 0..self.dim {
            let d = self.digits(x);
            let e = d.iter().zip(&l.b).fold(0, |acc, (&xi, &bi)| (acc + f.trace(f.mul(bi, xi))) % p);
            let shifted: Vec<u32> = d.iter().zip(&l.a).map(|(&xi, &ai)| f.add(xi, ai)).collect();
            perm.push(self.index(&shifted));
            phase.push(global * root_of_unity(e, p));
        }
        Monomial { perm, phase }
    }

    fn label_monomial(&self, l: &PauliLabel) -> Monomial {
        let p = self.field.characteristic();
        self.monomial(l, l.gamma, p)
    }

    /// Hermitian order-`p` lift used for stabilizer generators: for `p = 2`
    /// the phase `i^{Σ tr(a_i b_i)}`, for odd `p` no phase.
    fn generator_monomial(&self, v: &SymplecticVector) -> Monomial {
        let f = &*self.field;
        let l = PauliLabel::from_vector(v);
        if f.characteristic() == 2 {
            let t: u32 = v.a.iter().zip(&v.b).map(|(&a, &b)| f.trace(f.mul(a, b))).sum();
            self.monomial(&l, t, 4)
        } else {
            self.monomial(&l, 0, 1)
        }
    }

    pub fn x_matrix(&self, a: u32) -> Result<CMatrix, OracleError> {
        let one = PauliOracle::new(self.field.clone(), 1)?;
        let l = PauliLabel { gamma: 0, a: vec![a], b: vec![0] };
        one.check(&l)?;
        Ok(one.label_monomial(&l).to_dense())
    }

    pub fn z_matrix(&self, b: u32) -> Result<CMatrix, OracleError> {
        let one = PauliOracle::new(self.field.clone(), 1)?;
        let l = PauliLabel { gamma: 0, a: vec![0], b: vec![b] };
        one.check(&l)?;
        Ok(one.label_monomial(&l).to_dense())
    }

    pub fn pauli_matrix(&self, l: &PauliLabel) -> Result<CMatrix, OracleError> {
        self.check(l)?;
        Ok(self.label_monomial(l).to_dense())
    }

    /// `M_1 M_2 = ω_p^{φ(L_1) * φ(L_2)} M_2 M_1` within tolerance.
    pub fn check_commutation(&self, l1: &PauliLabel, l2: &PauliLabel) -> Result<bool, OracleError> {
        let m1 = self.pauli_matrix(l1)?;
        let m2 = self.pauli_matrix(l2)?;
        let f = &*self.field;
        let form = crate::additive::symplectic_form(f, &l1.vector(), &l2.vector()).expect("checked lengths");
        let lhs = &m1 * &m2;
        let rhs = (&m2 * &m1) * root_of_unity(form, f.characteristic());
        Ok(approx_eq(&lhs, &rhs, self.tolerance))
    }

    /// `Π_i (1/p) Σ_j s_i^j` over the generators of `code`, checked to be an
    /// orthogonal projector of rank `K`.
    pub fn stabilizer_projector(&self, code: &StabilizerCode) -> Result<CMatrix, OracleError> {
        if code.len() != self.n || code.field() != &self.field {
            return Err(OracleError::Length { expected: self.n, found: code.len() });
        }
        let p = self.field.characteristic();
        let mut proj = CMatrix::identity(self.dim, self.dim);
        for g in code.code().generators() {
            let s = self.generator_monomial(&g);
            let mut acc = proj.clone();
            let mut power = proj;
            for _ in 1..p {
                power = s.apply(&power);
                acc += &power;
            }
            proj = acc / Complex64::from(p as f64);
        }
        let tol = self.tolerance;
        if !approx_eq_scaled(&(&proj * &proj), &proj, tol, 1.0) {
            return Err(OracleError::Projector("P^2 != P".into()));
        }
        if !approx_eq_scaled(&proj.adjoint(), &proj, tol, 1.0) {
            return Err(OracleError::Projector("P is not Hermitian".into()));
        }
        let expected = code.dimension();
        let trace = proj.trace();
        let rank = trace.re.round();
        if (trace - Complex64::from(rank)).norm() > 1e-6 || num_bigint::BigUint::from(rank as u64) != expected {
            return Err(OracleError::Projector(format!("trace {trace} but K = {expected}")));
        }
        Ok(proj)
    }

    /// Checks `P E_k† E_l P = α_{kl} P` for every ordered pair of `errors`.
    pub fn kl_check(&self, proj: &CMatrix, errors: &[PauliLabel]) -> Result<KlVerdict, OracleError> {
        let pairs: Vec<(usize, usize)> =
            (0..errors.len()).flat_map(|k| (0..errors.len()).map(move |l| (k, l))).collect();
        self.kl_check_pairs(proj, errors, &pairs)
    }

    /// As [`kl_check`](Self::kl_check) but over an explicit list of index pairs.
    pub fn kl_check_pairs(
        &self,
        proj: &CMatrix,
        errors: &[PauliLabel],
        pairs: &[(usize, usize)],
    ) -> Result<KlVerdict, OracleError> {
        if proj.nrows() != self.dim || !approx_eq_scaled(&(proj * proj), proj, self.tolerance, 1.0) {
            return Err(OracleError::Projector("input is not a projector of the right size".into()));
        }
        for e in errors {
            self.check(e)?;
        }
        let applied: Vec<CMatrix> = errors.par_iter().map(|e| self.label_monomial(e).apply(proj)).collect();
        let tr = proj.trace();
        let scale = max_abs(proj);
        // pairs after the earliest known failure are skipped; the earliest
        // failing pair is always evaluated, so the witness is deterministic
        let earliest = AtomicUsize::new(usize::MAX);
        let results: Vec<Option<Complex64>> = pairs
            .par_iter()
            .enumerate()
            .map(|(i, &(k, l))| {
                if i > earliest.load(Ordering::Relaxed) {
                    return None;
                }
                let m = applied[k].adjoint() * &applied[l];
                let alpha = m.trace() / tr;
                if approx_eq_scaled(&m, &(proj * alpha), self.tolerance, scale) {
                    Some(alpha)
                } else {
                    earliest.fetch_min(i, Ordering::Relaxed);
                    None
                }
            })
            .collect();
        let first = earliest.into_inner();
        if let Some(&(k, l)) = pairs.get(first) {
            return Ok(KlVerdict::Fail { left: errors[k].clone(), right: errors[l].clone() });
        }
        let alphas = pairs.iter().zip(results).map(|(&kl, a)| (kl, a.expect("no failure"))).collect();
        Ok(KlVerdict::Pass { alphas })
    }

    /// The labels whose matrices are a dense witness of `E ∈ C* \ C`: the
    /// pair `(I, E)` fails the conditions exactly then.
    pub fn detects(&self, proj: &CMatrix, e: &PauliLabel) -> Result<bool, OracleError> {
        let errs = [PauliLabel::identity(self.n), e.clone()];
        Ok(self.kl_check_pairs(proj, &errs, &[(0, 1)])?.passed())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum KlVerdict {
    /// `α_{kl}` for every checked index pair.
    Pass {
        alphas: Vec<((usize, usize), Complex64)>,
    },
    Fail {
        left: PauliLabel,
        right: PauliLabel,
    },
}

impl KlVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, KlVerdict::Pass { .. })
    }
}

/// `Tr((X^a Z^b)† X^{a'} Z^{b'}) = q·δ` over all `q² × q²` single-qudit pairs.
pub fn check_basis_orthogonality(field: Arc<FieldSpec>, tol: f64) -> Result<bool, OracleError> {
    let oracle = PauliOracle::new(field.clone(), 1)?;
    let q = field.order();
    let mats: Vec<CMatrix> = (0..q * q)
        .map(|v| oracle.pauli_matrix(&PauliLabel { gamma: 0, a: vec![v % q], b: vec![v / q] }))
        .collect::<Result<_, _>>()?;
    for (i, x) in mats.iter().enumerate() {
        for (j, y) in mats.iter().enumerate() {
            let t = (x.adjoint() * y).trace();
            let expected = if i == j { q as f64 } else { 0.0 };
            if (t - Complex64::from(expected)).norm() > tol * q as f64 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A Hermitian, positive semidefinite, unit-trace matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: CMatrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Keep {
    First,
    Second,
}

impl DensityMatrix {
    pub fn new(matrix: CMatrix, tol: f64) -> Result<Self, OracleError> {
        if !matrix.is_square() {
            return Err(OracleError::NotDensity("not square".into()));
        }
        if !approx_eq_scaled(&matrix.adjoint(), &matrix, tol, 1.0) {
            return Err(OracleError::NotDensity("not Hermitian".into()));
        }
        if (matrix.trace() - Complex64::from(1.0)).norm() > tol {
            return Err(OracleError::NotDensity(format!("trace {}", matrix.trace())));
        }
        let eig = matrix.clone().symmetric_eigen();
        if let Some(min) = eig.eigenvalues.iter().copied().reduce(f64::min) {
            if min < -tol {
                return Err(OracleError::NotDensity(format!("negative eigenvalue {min}")));
            }
        }
        Ok(DensityMatrix { matrix })
    }

    /// `|ψ⟩⟨ψ|` for a normalized copy of `psi`.
    pub fn pure(psi: &[Complex64]) -> Self {
        let v = nalgebra::DVector::from_column_slice(psi);
        let v = &v / Complex64::from(v.norm());
        DensityMatrix { matrix: &v * v.adjoint() }
    }

    pub fn maximally_mixed(d: usize) -> Self {
        DensityMatrix { matrix: CMatrix::identity(d, d) / Complex64::from(d as f64) }
    }

    /// `A A† / Tr(A A†)` for a matrix `A` with uniformly random entries.
    pub fn random<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Self {
        let a = CMatrix::from_fn(d, d, |_, _| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
        let m = &a * a.adjoint();
        let t = m.trace();
        DensityMatrix { matrix: m / t }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// `(1 − prob)·ρ + prob·I/d`
    pub fn depolarize(&self, prob: f64) -> Result<Self, OracleError> {
        if !(0.0..=1.0).contains(&prob) {
            return Err(OracleError::Probability(prob));
        }
        let d = self.dim();
        let mixed = CMatrix::identity(d, d) / Complex64::from(d as f64);
        Ok(DensityMatrix { matrix: &self.matrix * Complex64::from(1.0 - prob) + mixed * Complex64::from(prob) })
    }

    pub fn partial_trace(&self, d1: usize, d2: usize, keep: Keep) -> Result<Self, OracleError> {
        let dim = self.dim();
        if d1 * d2 != dim {
            return Err(OracleError::Factorization { dim, d1, d2 });
        }
        let m = &self.matrix;
        let out = match keep {
            Keep::First => CMatrix::from_fn(d1, d1, |i, j| (0..d2).map(|k| m[(i * d2 + k, j * d2 + k)]).sum()),
            Keep::Second => CMatrix::from_fn(d2, d2, |i, j| (0..d1).map(|k| m[(k * d2 + i, k * d2 + j)]).sum()),
        };
        Ok(DensityMatrix { matrix: out })
    }

    /// Projective measurement of the second factor in the orthonormal basis
    /// given by the columns of `basis`, with the outcome discarded.
    pub fn measure_second(&self, d1: usize, basis: &CMatrix) -> Result<Self, OracleError> {
        let d2 = basis.nrows();
        let dim = self.dim();
        if d1 * d2 != dim {
            return Err(OracleError::Factorization { dim, d1, d2 });
        }
        let mut out = CMatrix::zeros(dim, dim);
        let id = CMatrix::identity(d1, d1);
        for k in 0..d2 {
            let v = basis.column(k);
            let proj = v * v.adjoint();
            let full = id.kronecker(&proj);
            out += &full * &self.matrix * &full;
        }
        Ok(DensityMatrix { matrix: out })
    }
}
