//! Quantum Construction X for F_{q²}-linear codes, and the length-96
//! extension of a cyclic `[93,73]_4` code.
//!
//! Given `C = [n,k]_{q²}` with Hermitian dual `C*`, let `e = k − dim(C ∩ C*)`.
//! A basis `v_1..v_e` of a complement of `C ∩ C*` in `C` is normalized so
//! that `⟨v_i, v_j⟩ = −δ_ij`; appending the unit vectors of an `[e,e,1]`
//! code then cancels every Gram entry, and padding `C ∩ C*` with zeros keeps
//! it orthogonal. The result `C'` is a Hermitian self-orthogonal
//! `[n+e, k]` code and gives an `[[n+e, n−2k+e, d]]_q` stabilizer code with
//! `d ≥ min{d(C*), d(C+C*)+1}`.

use std::sync::Arc;

use num_bigint::BigUint;
use rayon::prelude::*;
use thiserror::Error;

use crate::distance::{Distance, DistanceBudget};
use crate::error::CodeError;
use crate::field::FieldSpec;
use crate::linalg::{self, Matrix};
use crate::linear::{hermitian_product, LinearCode};
use crate::poly::Polynomial;
use crate::stabilizer::{ParamDistance, Purity, QuantumParams};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CxError {
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error("field of order {0} is not a quadratic extension")]
    NotQuadratic(u32),
    #[error("no normalized complement basis found: {0}")]
    Normalization(String),
}

fn field_of(code: &LinearCode) -> Result<(&Arc<FieldSpec>, u32), CxError> {
    let f = code.field();
    let q = f.base_order().ok_or(CxError::NotQuadratic(f.order()))?;
    Ok((f, q))
}

fn herm(f: &FieldSpec, x: &[u32], y: &[u32]) -> u32 {
    hermitian_product(f, x, y).expect("quadratic extension checked")
}

/// Complement basis of `cap = C ∩ C*` in `C` with Hermitian Gram matrix
/// `−I`.
pub fn basis_orthogonalization(cap: &LinearCode, code: &LinearCode) -> Result<Matrix, CxError> {
    let (f, q) = field_of(code)?;
    let f = &**f;
    let mut rest = linalg::complement(f, cap.generator_matrix(), code.generator_matrix());
    let minus_one = f.neg(1);
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        // a vector with nonzero norm, combining two if every norm vanishes
        let idx = match rest.iter().position(|x| herm(f, x, x) != 0) {
            Some(i) => i,
            None => {
                let (i, j) = (0..rest.len())
                    .flat_map(|i| (i + 1..rest.len()).map(move |j| (i, j)))
                    .find(|&(i, j)| herm(f, &rest[i], &rest[j]) != 0)
                    .ok_or_else(|| CxError::Normalization("Hermitian form degenerate on the complement".into()))?;
                let lambda = (1..f.order())
                    .find(|&l| {
                        let mut w = rest[i].clone();
                        linalg::axpy(f, &mut w, l, &rest[j]);
                        herm(f, &w, &w) != 0
                    })
                    .ok_or_else(|| CxError::Normalization("no combination with nonzero norm".into()))?;
                let wj = rest[j].clone();
                linalg::axpy(f, &mut rest[i], lambda, &wj);
                i
            }
        };
        let x = rest.swap_remove(idx);
        let g = herm(f, &x, &x);
        let g_inv = f.inv(g).expect("nonzero norm");
        for w in rest.iter_mut() {
            let c = f.neg(f.mul(herm(f, w, &x), g_inv));
            linalg::axpy(f, w, c, &x);
        }
        // μ^{q+1} g = −1, solvable because the norm map is onto F_q
        let target = f.mul(minus_one, g_inv);
        let mu = (1..f.order())
            .find(|&mu| f.pow(mu, (q + 1) as u64) == target)
            .ok_or_else(|| CxError::Normalization("norm equation has no solution".into()))?;
        let mut v = x;
        linalg::scale(f, &mut v, mu);
        out.push(v);
    }
    Ok(out)
}

/// The two distances of the bound `d ≥ min{d(C*), d(C+C*)+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CxBound {
    /// `None` when `C*` is the zero code.
    pub dual: Option<Distance>,
    pub sum: Option<Distance>,
    pub value: Option<usize>,
}

pub fn distance_bound(code: &LinearCode, budget: &DistanceBudget) -> Result<CxBound, CxError> {
    let dual = code.hermitian_dual()?;
    let sum = code.sum(&dual)?;
    let d = |c: &LinearCode| -> Result<Option<Distance>, CxError> {
        if c.dimension() == 0 {
            return Ok(None);
        }
        Ok(Some(c.min_distance(budget)?.distance))
    };
    let (dd, ds) = (d(&dual)?, d(&sum)?);
    let value = match (dd, ds) {
        (Some(a), Some(b)) => Some(a.value.min(b.value + 1)),
        (Some(a), None) => Some(a.value),
        (None, Some(b)) => Some(b.value + 1),
        (None, None) => None,
    };
    Ok(CxBound { dual: dd, sum: ds, value })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CxResult {
    /// Hermitian self-orthogonal `[n+e, k]` code.
    pub code: LinearCode,
    pub e: usize,
    /// `None` when the stabilizer code is one-dimensional.
    pub params: Option<QuantumParams>,
    pub bound: CxBound,
}

pub fn quantum_construction_x(code: &LinearCode, budget: &DistanceBudget) -> Result<CxResult, CxError> {
    let (f, q) = field_of(code)?;
    let dual = code.hermitian_dual()?;
    let cap = code.intersection(&dual)?;
    let e = code.dimension() - cap.dimension();
    let comp = basis_orthogonalization(&cap, code)?;
    debug_assert_eq!(comp.len(), e);
    let mut rows: Matrix = cap.pad(e).generator_matrix().clone();
    for (i, v) in comp.into_iter().enumerate() {
        let mut r = v;
        r.extend((0..e).map(|j| u32::from(i == j)));
        rows.push(r);
    }
    let out = LinearCode::new(f.clone(), code.len() + e, rows)?;
    if !out.is_hermitian_self_orthogonal()? {
        return Err(CxError::Normalization("output is not Hermitian self-orthogonal".into()));
    }
    let bound = distance_bound(code, budget)?;
    let n = out.len();
    let k = code.dimension();
    let params = if n > 2 * k {
        let kq = (n - 2 * k) as u32;
        let normalizer = out.hermitian_dual()?;
        let distance = match normalizer.min_distance_split(&out, budget) {
            Ok(split) => {
                let outside = split.outside.expect("K > 1 leaves words outside the stabilizer");
                let purity = if outside.distance.is_exact() && split.all.distance.is_exact() {
                    if outside.distance.value == split.all.distance.value {
                        Purity::Pure
                    } else {
                        Purity::Impure
                    }
                } else {
                    Purity::Unknown
                };
                (ParamDistance::from(outside.distance), purity)
            }
            Err(CodeError::Distance(_)) => (ParamDistance::at_least(bound.value.unwrap_or(1)), Purity::Unknown),
            Err(e) => return Err(e.into()),
        };
        Some(QuantumParams::new(n, q, BigUint::from(q).pow(kq), distance.0, distance.1))
    } else {
        None
    };
    Ok(CxResult { code: out, e, params, bound })
}

/// Heuristic search for a subcode of `code` with minimum distance at least
/// `target`: repeatedly take a minimum-weight word and intersect with the
/// excluding hyperplane (a coordinate or the all-ones check) that gives the
/// largest distance, up to
/// `max_codimension` steps. Returns `None` when the target is not reached.
pub fn greedy_nested_subcode(
    code: &LinearCode,
    target: usize,
    max_codimension: usize,
    budget: &DistanceBudget,
) -> Result<Option<LinearCode>, CxError> {
    let f = code.field().clone();
    let n = code.len();
    let mut cur = code.clone();
    for _ in 0..=max_codimension {
        if cur.dimension() == 0 {
            return Ok(None);
        }
        let mw = cur.min_distance(budget)?;
        if mw.distance.value >= target {
            return Ok(Some(cur));
        }
        let Some(word) = mw.witness else {
            return Ok(None);
        };
        let mut best: Option<(usize, LinearCode)> = None;
        let mut checks: Matrix =
            (0..n).filter(|&i| word[i] != 0).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect();
        checks.push(vec![1; n]);
        for h in checks {
            if crate::linear::euclidean_product(&f, &h, &word) == 0 {
                continue;
            }
            let hyper = LinearCode::new(f.clone(), n, vec![h])?.euclidean_dual();
            let sub = cur.intersection(&hyper)?;
            if sub.dimension() == 0 {
                continue;
            }
            let d = sub.min_distance(budget)?.distance.value;
            if best.as_ref().is_none_or(|(bd, _)| d > *bd) {
                best = Some((d, sub));
            }
        }
        match best {
            Some((_, sub)) => cur = sub,
            None => return Ok(None),
        }
    }
    Ok(None)
}

/// The four quintic factors of `g₀` over F_4 (`α` has index 2, `α² = α+1`
/// has index 3), low degree first.
pub fn g0_factors() -> [Polynomial; 4] {
    let (a, a2) = (2, 3);
    [
        Polynomial::new(vec![a, 0, 1, 0, 0, 1]),
        Polynomial::new(vec![1, 1, 1, 1, 0, 1]),
        Polynomial::new(vec![a2, a, 1, 0, a, 1]),
        Polynomial::new(vec![a2, 0, 1, a2, a, 1]),
    ]
}

pub fn g0(f: &FieldSpec) -> Polynomial {
    Polynomial::product(g0_factors().iter(), f)
}

/// One extension chain: appended coordinate `j` is `c(β_j)` for the cyclic
/// part `c`, which is one Construction X step with the subcode
/// `⟨g₀·(x−β_j)⟩` and a trivial `[1,1,1]` auxiliary code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionCandidate {
    /// Roots `β_j` as field indices, in step order.
    pub roots: Vec<u32>,
    pub code: LinearCode,
    pub dual_contained: bool,
    pub shorten_recovers_c1: bool,
    /// Only computed for length-96 chains passing the structural checks.
    pub distance_certificate: Option<Distance>,
}

impl ExtensionCandidate {
    pub fn is_full(&self) -> bool {
        self.roots.len() == 3
    }

    pub fn passes(&self) -> bool {
        self.is_full() && self.dual_contained && self.shorten_recovers_c1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionReport {
    pub g0_degree: usize,
    pub g0_divides: bool,
    pub c1_dim: usize,
    pub c1_dual_contained: bool,
    /// Every chain over a subset of `{1, α, α²}` in every step order.
    pub candidates: Vec<ExtensionCandidate>,
    /// Quantum Construction X on the Hermitian dual of
    /// `⟨g₀(x−1)(x−α)(x−α²)⟩`: `(e, length)`.
    pub qcx: (usize, usize),
}

impl ExtensionReport {
    /// `[96,73]_4` candidates passing both structural checks.
    pub fn passing(&self) -> Vec<&ExtensionCandidate> {
        self.candidates.iter().filter(|c| c.passes()).collect()
    }

    pub fn certified_distance(&self) -> Option<usize> {
        self.passing().iter().filter_map(|c| c.distance_certificate.map(|d| d.value)).min()
    }

    pub fn success(&self, w_max: usize) -> bool {
        self.g0_degree == 20
            && self.g0_divides
            && self.c1_dim == 73
            && !self.passing().is_empty()
            && self.certified_distance().is_some_and(|d| d > w_max)
    }

    /// `c1_dim=73 g0_divides=true candidates=<N> dual_contained=true ...`
    pub fn summary_line(&self, w_max: usize) -> String {
        let full: Vec<_> = self.candidates.iter().filter(|c| c.is_full()).collect();
        let cert = match self.certified_distance() {
            Some(d) => format!("d_certificate>={d}"),
            None => format!("d_certificate=none(w_max={w_max})"),
        };
        format!(
            "c1_dim={} g0_divides={} candidates={} dual_contained={} shorten_recovers_c1={} {}",
            self.c1_dim,
            self.g0_divides,
            self.passing().len(),
            full.iter().any(|c| c.dual_contained),
            full.iter().any(|c| c.dual_contained && c.shorten_recovers_c1),
            cert
        )
    }
}

/// Builds `C₁ = ⟨g₀⟩ = [93,73]_4` and extends it along every chain of
/// distinct roots `β_j ∈ {1, α, α²}` in every order. Each chain is checked
/// for `N ⊇ N*` and for recovering `C₁` as the Hermitian dual of `N*`
/// shortened at the appended coordinates. Passing `[96,73]_4` candidates get
/// a distance certificate from exhausting supports of size `≤ w_max`.
pub fn extended_cyclic_96(w_max: usize) -> Result<ExtensionReport, CxError> {
    let f = FieldSpec::of_order(4).map_err(CodeError::from)?;
    let n = 93;
    let g = g0(&f);
    let g0_degree = g.degree().unwrap_or(0);
    let g0_divides = g.divides(&Polynomial::x_pow_minus_one(&f, n), &f);
    let c1 = LinearCode::cyclic(f.clone(), &g, n)?;
    let c1_dual = c1.hermitian_dual()?;
    let c1_dual_contained = c1_dual.is_subcode_of(&c1)?;

    let roots = [1u32, 2, 3];
    let mut chains: Vec<Vec<u32>> = vec![vec![]];
    for len in 1..=roots.len() {
        let prev: Vec<Vec<u32>> = chains.iter().filter(|c| c.len() == len - 1).cloned().collect();
        for c in prev {
            for &r in roots.iter().filter(|r| !c.contains(r)) {
                let mut next = c.clone();
                next.push(r);
                chains.push(next);
            }
        }
    }
    let extend = |seq: &[u32]| -> Matrix {
        c1.generator_matrix()
            .iter()
            .map(|r| {
                let p = Polynomial::new(r.clone());
                let mut row = r.clone();
                row.extend(seq.iter().map(|&beta| p.eval(beta, &f)));
                row
            })
            .collect()
    };
    let mut candidates: Vec<ExtensionCandidate> = chains
        .par_iter()
        .map(|seq| -> Result<ExtensionCandidate, CxError> {
            let len = n + seq.len();
            let code = LinearCode::new(f.clone(), len, extend(seq))?;
            let dual = code.hermitian_dual()?;
            let dual_contained = dual.is_subcode_of(&code)?;
            let appended: Vec<usize> = (n..len).collect();
            let shorten_recovers_c1 = dual.shorten_at(&appended)?.hermitian_dual()? == c1;
            Ok(ExtensionCandidate {
                roots: seq.clone(),
                code,
                dual_contained,
                shorten_recovers_c1,
                distance_certificate: None,
            })
        })
        .collect::<Result<_, _>>()?;
    candidates.sort_by(|a, b| (a.roots.len(), &a.roots).cmp(&(b.roots.len(), &b.roots)));

    // chains differing only in step order give codes equal up to a
    // permutation of the appended coordinates, so one certificate serves all
    let budget = DistanceBudget::subset_only(w_max);
    let mut certified: Option<Distance> = None;
    for cand in candidates.iter_mut().filter(|c| c.passes()) {
        let d = match certified {
            Some(d) => d,
            None => *certified.insert(cand.code.min_distance(&budget)?.distance),
        };
        cand.distance_certificate = Some(d);
    }

    let all_roots =
        Polynomial::product(roots.iter().map(|&b| Polynomial::linear(&f, b)).collect::<Vec<_>>().iter(), &f);
    let d_code = LinearCode::cyclic(f.clone(), &g.mul(&all_roots, &f), n)?;
    let qcx = {
        let c = d_code.hermitian_dual()?;
        let cap = c.intersection(&c.hermitian_dual()?)?;
        let e = c.dimension() - cap.dimension();
        (e, n + e)
    };
    Ok(ExtensionReport { g0_degree, g0_divides, c1_dim: c1.dimension(), c1_dual_contained, candidates, qcx })
}
