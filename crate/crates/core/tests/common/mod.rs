//! Reference implementations used as independent oracles by the
//! integration tests. They work from the definitions, element by element,
//! and share only field arithmetic with the library.

#![allow(dead_code)]

use std::collections::HashSet;

use num_complex::Complex64;
use qecc_forge::additive::SymplecticVector;
use qecc_forge::field::FieldSpec;
use qecc_forge::pauli::CMatrix;

/// `Σ_{i<m} x^{p^i}`, returned as an integer in `0..p`.
pub fn trace(f: &FieldSpec, x: u32) -> u32 {
    let p = f.characteristic() as u64;
    let mut acc = 0;
    let mut e = 1u64;
    for _ in 0..f.degree() {
        acc = f.add(acc, f.pow(x, e));
        e *= p;
    }
    assert!(acc < f.characteristic(), "trace lies in the prime field");
    acc
}

/// `tr(Σ a'_i b_i − a_i b'_i)` for `u = (a|b)`, `v = (a'|b')`.
pub fn symplectic(f: &FieldSpec, u: &SymplecticVector, v: &SymplecticVector) -> u32 {
    let mut s = 0;
    for i in 0..u.a.len() {
        s = f.add(s, f.sub(f.mul(v.a[i], u.b[i]), f.mul(u.a[i], v.b[i])));
    }
    trace(f, s)
}

pub fn orthogonal_to_all(f: &FieldSpec, v: &SymplecticVector, gens: &[SymplecticVector]) -> bool {
    gens.iter().all(|g| symplectic(f, v, g) == 0)
}

pub fn weight(v: &SymplecticVector) -> usize {
    (0..v.a.len()).filter(|&i| v.a[i] != 0 || v.b[i] != 0).count()
}

fn scale_int(f: &FieldSpec, c: u32, x: u32) -> u32 {
    (0..c).fold(0, |acc, _| f.add(acc, x))
}

/// All F_p-combinations of `gens`.
pub fn fp_span(f: &FieldSpec, n: usize, gens: &[SymplecticVector]) -> HashSet<SymplecticVector> {
    let p = f.characteristic();
    let mut set: HashSet<SymplecticVector> = HashSet::from([SymplecticVector { a: vec![0; n], b: vec![0; n] }]);
    for g in gens {
        let mut next = HashSet::with_capacity(set.len() * p as usize);
        for w in &set {
            for c in 0..p {
                next.insert(SymplecticVector {
                    a: (0..n).map(|i| f.add(w.a[i], scale_int(f, c, g.a[i]))).collect(),
                    b: (0..n).map(|i| f.add(w.b[i], scale_int(f, c, g.b[i]))).collect(),
                });
            }
        }
        set = next;
    }
    set
}

/// All F_q-combinations of `rows`.
pub fn fq_span(f: &FieldSpec, n: usize, rows: &[Vec<u32>]) -> HashSet<Vec<u32>> {
    let mut set: HashSet<Vec<u32>> = HashSet::from([vec![0; n]]);
    for r in rows {
        let mut next = HashSet::with_capacity(set.len() * f.order() as usize);
        for w in &set {
            for c in 0..f.order() {
                next.insert((0..n).map(|i| f.add(w[i], f.mul(c, r[i]))).collect());
            }
        }
        set = next;
    }
    set
}

/// Every vector of `F_q^{2n}`, in a fixed order.
pub fn all_vectors(q: u32, n: usize) -> impl Iterator<Item = SymplecticVector> {
    let total = (q as u64).pow(2 * n as u32);
    (0..total).map(move |mut idx| {
        let mut digits = Vec::with_capacity(2 * n);
        for _ in 0..2 * n {
            digits.push((idx % q as u64) as u32);
            idx /= q as u64;
        }
        SymplecticVector { a: digits[..n].to_vec(), b: digits[n..].to_vec() }
    })
}

/// Vectors of exactly weight `w`, in a fixed order.
pub fn vectors_of_weight(q: u32, n: usize, w: usize) -> Vec<SymplecticVector> {
    let mut out = Vec::new();
    let mut support: Vec<usize> = (0..w).collect();
    if w > n {
        return out;
    }
    loop {
        let pairs = q * q - 1;
        let total = (pairs as u64).pow(w as u32);
        for mut idx in 0..total {
            let mut v = SymplecticVector { a: vec![0; n], b: vec![0; n] };
            for &pos in &support {
                let val = (idx % pairs as u64) as u32 + 1;
                idx /= pairs as u64;
                v.a[pos] = val % q;
                v.b[pos] = val / q;
            }
            out.push(v);
        }
        let Some(i) = (0..w).rev().find(|&i| support[i] < n - w + i) else {
            break;
        };
        support[i] += 1;
        for j in i + 1..w {
            support[j] = support[j - 1] + 1;
        }
    }
    out
}

/// Smallest weight `w ≤ max_w` of a nonzero vector satisfying `pred`, with
/// the first such vector found.
pub fn min_weight_where(
    q: u32,
    n: usize,
    max_w: usize,
    mut pred: impl FnMut(&SymplecticVector) -> bool,
) -> Option<(usize, SymplecticVector)> {
    for w in 1..=max_w.min(n) {
        if let Some(v) = vectors_of_weight(q, n, w).into_iter().find(|v| pred(v)) {
            return Some((w, v));
        }
    }
    None
}

/// `Σ x_i y_i^q` over `GF(q²)`.
pub fn hermitian(f: &FieldSpec, x: &[u32], y: &[u32]) -> u32 {
    let q = f.base_order().expect("quadratic extension") as u64;
    x.iter().zip(y).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, f.pow(b, q))))
}

pub fn hamming(x: &[u32]) -> usize {
    x.iter().filter(|&&v| v != 0).count()
}

pub fn omega(k: u32, p: u32) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / p as f64)
}

/// `X(a)Z(b)` on `(C^q)^{⊗n}` built from `X(a)|x⟩ = |x+a⟩` and
/// `Z(b)|x⟩ = ω^{tr(b·x)}|x⟩`, with basis index `Σ x_i q^{n-1-i}`.
pub fn xz_matrix(f: &FieldSpec, a: &[u32], b: &[u32]) -> CMatrix {
    let q = f.order() as usize;
    let n = a.len();
    let dim = q.pow(n as u32);
    let p = f.characteristic();
    let mut m = CMatrix::zeros(dim, dim);
    for col in 0..dim {
        let mut x = Vec::with_capacity(n);
        let mut rest = col;
        for _ in 0..n {
            x.push((rest % q) as u32);
            rest /= q;
        }
        x.reverse();
        let phase = (0..n).fold(0, |acc, i| f.add(acc, f.mul(b[i], x[i])));
        let shifted: usize = (0..n).fold(0, |acc, i| acc * q + f.add(x[i], a[i]) as usize);
        m[(shifted, col)] = omega(trace(f, phase), p);
    }
    m
}

/// Rank over `GF(q)` by plain Gaussian elimination.
pub fn rank_fq(f: &FieldSpec, rows: &[Vec<u32>]) -> usize {
    let mut m: Vec<Vec<u32>> = rows.to_vec();
    let width = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = f.inv(m[rank][col]).expect("nonzero pivot");
        let prow: Vec<u32> = m[rank].iter().map(|&x| f.mul(inv, x)).collect();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let c = row[col];
                for (x, &y) in row.iter_mut().zip(&prow) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        m[rank] = prow;
        rank += 1;
    }
    rank
}

/// Vectors of `GF(q)^n` with exactly `w` nonzero entries.
pub fn linear_vectors_of_weight(q: u32, n: usize, w: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if w > n {
        return out;
    }
    let mut support: Vec<usize> = (0..w).collect();
    loop {
        let total = ((q - 1) as u64).pow(w as u32);
        for mut idx in 0..total {
            let mut v = vec![0; n];
            for &pos in &support {
                v[pos] = (idx % (q - 1) as u64) as u32 + 1;
                idx /= (q - 1) as u64;
            }
            out.push(v);
        }
        let Some(i) = (0..w).rev().find(|&i| support[i] < n - w + i) else {
            break;
        };
        support[i] += 1;
        for j in i + 1..w {
            support[j] = support[j - 1] + 1;
        }
    }
    out
}

/// Every vector of `GF(q)^n` Hermitian-orthogonal to all of `rows`.
pub fn hermitian_dual_words(f: &FieldSpec, n: usize, rows: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let q = f.order() as u64;
    (0..q.pow(n as u32))
        .map(|mut idx| {
            (0..n)
                .map(|_| {
                    let d = (idx % q) as u32;
                    idx /= q;
                    d
                })
                .collect::<Vec<u32>>()
        })
        .filter(|v| rows.iter().all(|r| hermitian(f, v, r) == 0))
        .collect()
}

/// Smallest nonzero weight in `words`.
pub fn min_nonzero_weight(words: &[Vec<u32>]) -> Option<usize> {
    words.iter().map(|w| hamming(w)).filter(|&w| w > 0).min()
}
