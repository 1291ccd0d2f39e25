//! Row reduction over a finite field.
//!
//! Matrices are plain `Vec<Vec<u32>>` of element indices. Everything here is
//! generic over [`Scalars`], implemented both by [`FieldSpec`] and by the
//! bare prime field [`PrimeField`] used for F_p-linear (additive) codes.

use crate::field::FieldSpec;

pub trait Scalars {
    fn size(&self) -> u32;
    fn add(&self, x: u32, y: u32) -> u32;
    fn sub(&self, x: u32, y: u32) -> u32;
    fn mul(&self, x: u32, y: u32) -> u32;
    fn neg(&self, x: u32) -> u32;
    /// Caller guarantees `x != 0`.
    fn inv(&self, x: u32) -> u32;
}

impl Scalars for FieldSpec {
    fn size(&self) -> u32 {
        self.order()
    }
    fn add(&self, x: u32, y: u32) -> u32 {
        FieldSpec::add(self, x, y)
    }
    fn sub(&self, x: u32, y: u32) -> u32 {
        FieldSpec::sub(self, x, y)
    }
    fn mul(&self, x: u32, y: u32) -> u32 {
        FieldSpec::mul(self, x, y)
    }
    fn neg(&self, x: u32) -> u32 {
        FieldSpec::neg(self, x)
    }
    fn inv(&self, x: u32) -> u32 {
        FieldSpec::inv(self, x).expect("inverse of zero")
    }
}

/// Integers mod a prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Self {
        debug_assert!(crate::field::is_prime(p));
        PrimeField { p }
    }

    pub fn p(&self) -> u32 {
        self.p
    }
}

impl Scalars for PrimeField {
    fn size(&self) -> u32 {
        self.p
    }
    #[inline]
    fn add(&self, x: u32, y: u32) -> u32 {
        let s = x + y;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, x: u32, y: u32) -> u32 {
        if x >= y {
            x - y
        } else {
            x + self.p - y
        }
    }
    #[inline]
    fn mul(&self, x: u32, y: u32) -> u32 {
        ((x as u64 * y as u64) % self.p as u64) as u32
    }
    #[inline]
    fn neg(&self, x: u32) -> u32 {
        if x == 0 {
            0
        } else {
            self.p - x
        }
    }
    fn inv(&self, x: u32) -> u32 {
        debug_assert!(x != 0);
        let (mut base, mut e, mut acc) = (x as u64, self.p as u64 - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p as u64;
            }
            base = base * base % self.p as u64;
            e >>= 1;
        }
        acc as u32
    }
}

pub type Matrix = Vec<Vec<u32>>;

/// `row += c · other`
#[inline]
pub fn axpy<F: Scalars>(f: &F, row: &mut [u32], c: u32, other: &[u32]) {
    if c == 0 {
        return;
    }
    for (r, &o) in row.iter_mut().zip(other) {
        if o != 0 {
            *r = f.add(*r, f.mul(c, o));
        }
    }
}

pub fn scale<F: Scalars>(f: &F, row: &mut [u32], c: u32) {
    for r in row.iter_mut() {
        *r = f.mul(*r, c);
    }
}

/// Reduced row echelon form in place; zero rows are dropped and the pivot
/// column of each remaining row is returned (strictly increasing).
pub fn rref<F: Scalars>(f: &F, rows: &mut Matrix) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(sel) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, sel);
        let lead = f.inv(rows[r][col]);
        scale(f, &mut rows[r], lead);
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[col] != 0 {
                let c = f.neg(row[col]);
                axpy(f, row, c, &pivot_row);
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank<F: Scalars>(f: &F, rows: &Matrix) -> usize {
    let mut copy = rows.clone();
    rref(f, &mut copy).len()
}

/// Reduces `v` against a matrix already in RREF with the given pivots.
pub fn reduce<F: Scalars>(f: &F, basis: &Matrix, pivots: &[usize], v: &mut [u32]) {
    for (row, &col) in basis.iter().zip(pivots) {
        if v[col] != 0 {
            let c = f.neg(v[col]);
            axpy(f, v, c, row);
        }
    }
}

pub fn in_span<F: Scalars>(f: &F, basis: &Matrix, pivots: &[usize], v: &[u32]) -> bool {
    let mut w = v.to_vec();
    reduce(f, basis, pivots, &mut w);
    w.iter().all(|&x| x == 0)
}

/// Basis of `{x : Σ_j row_j x_j = 0 for every row}` (the Euclidean dual of
/// the row space), returned in RREF.
pub fn nullspace<F: Scalars>(f: &F, rows: &Matrix, ncols: usize) -> Matrix {
    let mut m = rows.clone();
    let pivots = rref(f, &mut m);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0u32; ncols];
        v[free] = 1;
        for (row, &pc) in m.iter().zip(&pivots) {
            v[pc] = f.neg(row[free]);
        }
        basis.push(v);
    }
    rref(f, &mut basis);
    basis
}

/// Extends the RREF basis `sub` by rows of `sup` not already in its span;
/// returns the added rows (a complement of `sub` inside `sub + sup`).
pub fn complement<F: Scalars>(f: &F, sub: &Matrix, sup: &Matrix) -> Matrix {
    let mut acc = sub.clone();
    let mut pivots = rref(f, &mut acc);
    let mut added = Vec::new();
    for v in sup {
        if !in_span(f, &acc, &pivots, v) {
            added.push(v.clone());
            acc.push(v.clone());
            pivots = rref(f, &mut acc);
        }
    }
    added
}

/// Solves `coeffs · basis = v` for a basis in RREF; `None` when `v` is not
/// in the row space.
pub fn coordinates<F: Scalars>(f: &F, basis: &Matrix, pivots: &[usize], v: &[u32]) -> Option<Vec<u32>> {
    let coeffs: Vec<u32> = pivots.iter().map(|&c| v[c]).collect();
    let mut w = v.to_vec();
    for (row, &c) in basis.iter().zip(&coeffs) {
        let nc = f.neg(c);
        axpy(f, &mut w, nc, row);
    }
    w.iter().all(|&x| x == 0).then_some(coeffs)
}
