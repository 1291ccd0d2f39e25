//! Minimum-weight search for F_p-linear block codes.
//!
//! Every code in this crate is handed to the engine in the same shape: an
//! F_p generator matrix whose columns are grouped into blocks of fixed width.
//! A symbol of an F_q-linear code is one block of `m` digits, a symplectic
//! pair `(a_i|b_i)` of an additive code is one block of `2m` digits, and the
//! weight of a word is its number of nonzero blocks.
//!
//! Two strategies are available:
//!
//! * a full sweep over all `p^k` codewords in modular Gray-code order, where
//!   each step adds one generator to the running word and updates the block
//!   weight incrementally;
//! * a certification pass over the parity-check side that finds every
//!   nonzero codeword with at most `w_max` nonzero blocks by matching
//!   syndromes of half-supports. If none exists the result is the
//!   certificate `d ≥ w_max + 1`.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::linalg::{self, Matrix, PrimeField, Scalars};

pub const DEFAULT_SWEEP_LIMIT: u64 = 1 << 24;
const DEFAULT_ENTRY_LIMIT: u64 = 1 << 26;
const TASK_TARGET: u64 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Certificate {
    Exact,
    LowerBound,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Certificate::Exact => "exact",
            Certificate::LowerBound => "lower-bound",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Distance {
    pub value: usize,
    pub certificate: Certificate,
}

impl Distance {
    pub fn exact(value: usize) -> Self {
        Distance { value, certificate: Certificate::Exact }
    }

    pub fn at_least(value: usize) -> Self {
        Distance { value, certificate: Certificate::LowerBound }
    }

    pub fn is_exact(&self) -> bool {
        self.certificate == Certificate::Exact
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.certificate {
            Certificate::Exact => write!(f, "{}", self.value),
            Certificate::LowerBound => write!(f, ">={}", self.value),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DistanceError {
    #[error("minimum distance of the zero code is undefined")]
    ZeroCode,
    #[error("enumeration of p^{dimension} codewords (p={p}) exceeds the budget and no subset weight was given")]
    BudgetExceeded { p: u32, dimension: usize },
    #[error("subset certification exceeded its work limit of {0} entries")]
    SubsetLimit(u64),
}

/// Limits for a distance computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistanceBudget {
    /// Largest code size enumerated exhaustively.
    pub sweep_limit: u64,
    /// Weight up to which dependent column subsets are exhausted when the
    /// code is too large to sweep.
    pub max_weight: Option<usize>,
    /// Cap on stored half-support entries plus bucket comparisons.
    pub entry_limit: u64,
}

impl Default for DistanceBudget {
    fn default() -> Self {
        DistanceBudget { sweep_limit: DEFAULT_SWEEP_LIMIT, max_weight: None, entry_limit: DEFAULT_ENTRY_LIMIT }
    }
}

impl DistanceBudget {
    pub fn with_max_weight(mut self, w: usize) -> Self {
        self.max_weight = Some(w);
        self
    }

    pub fn with_sweep_limit(mut self, limit: u64) -> Self {
        self.sweep_limit = limit;
        self
    }

    pub fn subset_only(w: usize) -> Self {
        DistanceBudget { sweep_limit: 0, max_weight: Some(w), entry_limit: DEFAULT_ENTRY_LIMIT }
    }
}

/// A minimum weight with a witness word (expanded digits) when exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinWeight {
    pub distance: Distance,
    pub witness: Option<Vec<u32>>,
}

/// The result of searching a code together with one of its subcodes:
/// minimum over all nonzero words, and over words outside the subcode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMinWeight {
    pub all: MinWeight,
    /// `None` when the subcode is the whole code.
    pub outside: Option<MinWeight>,
}

/// An F_p-linear code with columns grouped into blocks.
#[derive(Debug, Clone)]
pub struct BlockCode {
    pub(crate) fp: PrimeField,
    pub(crate) block: usize,
    pub(crate) blocks: usize,
    pub(crate) gens: Matrix,
}

fn checked_count(p: u32, k: usize) -> Option<u64> {
    let mut c: u64 = 1;
    for _ in 0..k {
        c = c.checked_mul(p as u64)?;
    }
    Some(c)
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Found {
    weight: usize,
    word: Vec<u32>,
}

fn better(a: Option<Found>, b: Option<Found>) -> Option<Found> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => {
            if (y.weight, &y.word) < (x.weight, &x.word) {
                Some(y)
            } else {
                Some(x)
            }
        }
    }
}

impl BlockCode {
    /// `gens` need not be reduced; they are brought to RREF here.
    pub fn new(p: u32, block: usize, blocks: usize, mut gens: Matrix) -> Self {
        let fp = PrimeField::new(p);
        linalg::rref(&fp, &mut gens);
        BlockCode { fp, block, blocks, gens }
    }

    pub fn dimension(&self) -> usize {
        self.gens.len()
    }

    pub fn weight(&self, word: &[u32]) -> usize {
        word.chunks(self.block).filter(|c| c.iter().any(|&x| x != 0)).count()
    }

    pub fn min_weight(&self, budget: &DistanceBudget) -> Result<MinWeight, DistanceError> {
        Ok(self.search(&Vec::new(), budget)?.all)
    }

    /// Minimum weight over the whole code and over words outside the span
    /// of `subcode` (which must be contained in this code).
    pub fn min_weight_split(&self, subcode: &Matrix, budget: &DistanceBudget) -> Result<SplitMinWeight, DistanceError> {
        self.search(subcode, budget)
    }

    /// Number of codewords of each weight `0..=blocks`, or `None` when the
    /// code has more than `limit` words.
    pub fn weight_distribution(&self, limit: u64) -> Option<Vec<u64>> {
        let p = self.fp.p();
        let k = self.gens.len();
        let total = checked_count(p, k).filter(|&c| c <= limit)?;
        let width = self.blocks * self.block;
        let mut counts = vec![0u64; self.blocks + 1];
        counts[0] = 1;
        let mut cur = vec![0u32; width];
        for step in 1..total {
            let (mut st, mut j) = (step, 0);
            while st % p as u64 == 0 {
                st /= p as u64;
                j += 1;
            }
            linalg::axpy(&self.fp, &mut cur, 1, &self.gens[j]);
            counts[self.weight(&cur)] += 1;
        }
        Some(counts)
    }

    fn search(&self, subcode: &[Vec<u32>], budget: &DistanceBudget) -> Result<SplitMinWeight, DistanceError> {
        let k = self.gens.len();
        if k == 0 {
            return Err(DistanceError::ZeroCode);
        }
        match checked_count(self.fp.p(), k) {
            Some(c) if c <= budget.sweep_limit => Ok(self.sweep_split(subcode)),
            _ => match budget.max_weight {
                Some(w) => self.certify(subcode, w, budget.entry_limit),
                None => Err(DistanceError::BudgetExceeded { p: self.fp.p(), dimension: k }),
            },
        }
    }

    fn sweep_split(&self, subcode: &[Vec<u32>]) -> SplitMinWeight {
        let mut sub = subcode.to_vec();
        linalg::rref(&self.fp, &mut sub);
        let outside_gens = linalg::complement(&self.fp, &sub, &self.gens);
        let r = outside_gens.len();
        let mut order = outside_gens;
        order.extend(sub);
        let (all, outside) = sweep(&self.fp, &order, self.block, r);
        let to_min = |f: Found| MinWeight { distance: Distance::exact(f.weight), witness: Some(f.word) };
        SplitMinWeight {
            all: to_min(all.expect("nonzero code has a nonzero word")),
            outside: if r == 0 { None } else { outside.map(to_min) },
        }
    }

    fn certify(&self, subcode: &[Vec<u32>], w_max: usize, limit: u64) -> Result<SplitMinWeight, DistanceError> {
        let width = self.blocks * self.block;
        let checks = linalg::nullspace(&self.fp, &self.gens, width);
        let mut sub = subcode.to_vec();
        let sub_piv = linalg::rref(&self.fp, &mut sub);
        let has_outside = sub.len() < self.gens.len();
        let classify = |w: &[u32]| !linalg::in_span(&self.fp, &sub, &sub_piv, w);
        let res = subset_search(&self.fp, &checks, self.blocks, self.block, w_max, has_outside, classify, limit)?;
        let reach = 2 * res.exhausted_half;
        let pack = |f: Option<Found>| match f {
            Some(f) if f.weight <= reach => MinWeight { distance: Distance::exact(f.weight), witness: Some(f.word) },
            _ => MinWeight { distance: Distance::at_least(reach + 1), witness: None },
        };
        Ok(SplitMinWeight { all: pack(res.all), outside: has_outside.then(|| pack(res.outside)) })
    }
}

/// Sweeps every codeword spanned by `gens`; words with a nonzero coefficient
/// on one of the first `outside` generators count as outside.
fn sweep(fp: &PrimeField, gens: &Matrix, block: usize, outside: usize) -> (Option<Found>, Option<Found>) {
    let p = fp.p();
    let k = gens.len();
    let width = gens[0].len();
    let sparse: Vec<Vec<(usize, u32)>> =
        gens.iter().map(|g| g.iter().enumerate().filter(|(_, &v)| v != 0).map(|(i, &v)| (i, v)).collect()).collect();

    // the top `s` exponent digits are fixed per task
    let mut s = 0;
    while s < k && checked_count(p, s).unwrap_or(u64::MAX) < TASK_TARGET {
        s += 1;
    }
    let low = k - s;
    let tasks = checked_count(p, s).expect("task count fits");
    let steps = checked_count(p, low).expect("sweep size checked by caller");

    let run = |task: u64| -> (Option<Found>, Option<Found>) {
        let mut exps = vec![0u32; k];
        let mut t = task;
        for e in exps[low..].iter_mut() {
            *e = (t % p as u64) as u32;
            t /= p as u64;
        }
        let mut cur = vec![0u32; width];
        for (j, &e) in exps.iter().enumerate().skip(low) {
            for _ in 0..e {
                for &(c, v) in &sparse[j] {
                    cur[c] = fp.add(cur[c], v);
                }
            }
        }
        let nblocks = width / block;
        let mut nz = vec![0u32; nblocks];
        let mut weight = 0usize;
        for (c, &v) in cur.iter().enumerate() {
            if v != 0 {
                if nz[c / block] == 0 {
                    weight += 1;
                }
                nz[c / block] += 1;
            }
        }
        let mut out_count = exps[..outside].iter().filter(|&&e| e != 0).count();
        let mut best_all: Option<Found> = None;
        let mut best_out: Option<Found> = None;
        let mut nonzero = exps.iter().any(|&e| e != 0);

        let record = |weight: usize,
                      cur: &[u32],
                      out_count: usize,
                      best_all: &mut Option<Found>,
                      best_out: &mut Option<Found>| {
            if best_all.as_ref().is_none_or(|b| weight < b.weight) {
                *best_all = Some(Found { weight, word: cur.to_vec() });
            }
            if out_count > 0 && best_out.as_ref().is_none_or(|b| weight < b.weight) {
                *best_out = Some(Found { weight, word: cur.to_vec() });
            }
        };
        if nonzero {
            record(weight, &cur, out_count, &mut best_all, &mut best_out);
        }
        for step in 1..steps {
            let j = if p == 2 {
                step.trailing_zeros() as usize
            } else {
                let (mut st, mut j) = (step, 0);
                while st % p as u64 == 0 {
                    st /= p as u64;
                    j += 1;
                }
                j
            };
            let before = exps[j];
            exps[j] = if before + 1 == p { 0 } else { before + 1 };
            if j < outside {
                if before == 0 {
                    out_count += 1;
                } else if exps[j] == 0 {
                    out_count -= 1;
                }
            }
            for &(c, v) in &sparse[j] {
                let old = cur[c];
                let new = fp.add(old, v);
                cur[c] = new;
                let b = c / block;
                if old == 0 {
                    if nz[b] == 0 {
                        weight += 1;
                    }
                    nz[b] += 1;
                } else if new == 0 {
                    nz[b] -= 1;
                    if nz[b] == 0 {
                        weight -= 1;
                    }
                }
            }
            nonzero = nonzero || exps[j] != 0;
            if weight > 0 || nonzero {
                if weight == 0 {
                    // a nonzero exponent vector always gives a nonzero word
                    unreachable!("generators are independent");
                }
                record(weight, &cur, out_count, &mut best_all, &mut best_out);
            }
        }
        (best_all, best_out)
    };

    (0..tasks).into_par_iter().map(run).reduce(|| (None, None), |a, b| (better(a.0, b.0), better(a.1, b.1)))
}

struct SubsetResult {
    all: Option<Found>,
    outside: Option<Found>,
    exhausted_half: usize,
}

/// Finds all codewords of weight at most `2·⌈w_max/2⌉` of the code
/// `{x : checks·x = 0}` by colliding syndromes of sparse half-words.
#[allow(clippy::too_many_arguments)]
fn subset_search(
    fp: &PrimeField,
    checks: &Matrix,
    blocks: usize,
    block: usize,
    w_max: usize,
    want_outside: bool,
    classify: impl Fn(&[u32]) -> bool,
    limit: u64,
) -> Result<SubsetResult, DistanceError> {
    let p = fp.p();
    let half = w_max.div_ceil(2);
    let values = checked_count(p, block).ok_or(DistanceError::SubsetLimit(limit))? as usize;
    let r = checks.len();

    // syndrome contribution of every nonzero block value at every position
    let digits_of = |mut v: usize| -> Vec<u32> {
        (0..block)
            .map(|_| {
                let d = (v % p as usize) as u32;
                v /= p as usize;
                d
            })
            .collect()
    };
    let value_digits: Vec<Vec<u32>> = (0..values).map(digits_of).collect();
    let mut contrib = vec![vec![Vec::<u32>::new(); values]; blocks];
    for (pos, per_pos) in contrib.iter_mut().enumerate() {
        for (v, digits) in value_digits.iter().enumerate().skip(1) {
            per_pos[v] = (0..r)
                .map(|row| {
                    digits
                        .iter()
                        .enumerate()
                        .fold(0, |acc, (t, &d)| fp.add(acc, fp.mul(d, checks[row][pos * block + t])))
                })
                .collect();
        }
    }

    struct Entry {
        positions: Vec<usize>,
        values: Vec<usize>,
    }
    let mut entries: Vec<Entry> = vec![Entry { positions: vec![], values: vec![] }];
    let mut buckets: HashMap<Vec<u32>, Vec<usize>> = HashMap::new();
    buckets.insert(vec![0; r], vec![0]);
    let mut work: u64 = 1;
    let mut best_all: Option<Found> = None;
    let mut best_out: Option<Found> = None;
    let width = blocks * block;

    let expand = |e: &Entry, word: &mut [u32], sign: bool| {
        for (&pos, &v) in e.positions.iter().zip(&e.values) {
            for (t, &d) in value_digits[v].iter().enumerate() {
                let c = pos * block + t;
                word[c] = if sign { fp.add(word[c], d) } else { fp.sub(word[c], d) };
            }
        }
    };

    let mut exhausted = 0;
    for size in 1..=half.min(blocks) {
        let mut comb: Vec<usize> = (0..size).collect();
        loop {
            let mut vals = vec![1usize; size];
            loop {
                let mut syn = vec![0u32; r];
                for (&pos, &v) in comb.iter().zip(&vals) {
                    for (s, &c) in syn.iter_mut().zip(&contrib[pos][v]) {
                        *s = fp.add(*s, c);
                    }
                }
                let id = entries.len();
                let entry = Entry { positions: comb.clone(), values: vals.clone() };
                let bucket = buckets.entry(syn).or_default();
                for &other in bucket.iter() {
                    work += 1;
                    let mut word = vec![0u32; width];
                    expand(&entry, &mut word, true);
                    expand(&entries[other], &mut word, false);
                    let w = word.chunks(block).filter(|c| c.iter().any(|&x| x != 0)).count();
                    if w == 0 {
                        continue;
                    }
                    let cand = Some(Found { weight: w, word });
                    if best_all.as_ref().is_none_or(|b| w <= b.weight) {
                        best_all = better(best_all.take(), cand.clone());
                    }
                    if want_outside && best_out.as_ref().is_none_or(|b| w <= b.weight) {
                        let word = &cand.as_ref().unwrap().word;
                        if classify(word) {
                            best_out = better(best_out.take(), cand);
                        }
                    }
                }
                bucket.push(id);
                entries.push(entry);
                work += 1;
                if work > limit {
                    return Err(DistanceError::SubsetLimit(limit));
                }
                // next value tuple
                let mut i = 0;
                while i < size {
                    vals[i] += 1;
                    if vals[i] < values {
                        break;
                    }
                    vals[i] = 1;
                    i += 1;
                }
                if i == size {
                    break;
                }
            }
            // next combination
            let mut i = size;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if comb[i] < blocks - size + i {
                    comb[i] += 1;
                    for j in i + 1..size {
                        comb[j] = comb[j - 1] + 1;
                    }
                    break;
                }
                if i == 0 {
                    i = usize::MAX;
                    break;
                }
            }
            if i == usize::MAX {
                break;
            }
        }
        exhausted = size;
        let done_all = best_all.as_ref().is_some_and(|b| b.weight <= 2 * size);
        let done_out = !want_outside || best_out.as_ref().is_some_and(|b| b.weight <= 2 * size);
        if done_all && done_out {
            break;
        }
    }
    if half > blocks {
        // every word of the code has been seen
        exhausted = half;
    }
    Ok(SubsetResult { all: best_all, outside: best_out, exhausted_half: exhausted })
}
