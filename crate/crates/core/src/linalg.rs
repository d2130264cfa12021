//! Dense complex matrix helpers on row-major `n × n` slices.

use faer::linalg::matmul::matmul;
use faer::prelude::*;
use faer::{Accum, MatMut, MatRef, Par};
use num_complex::Complex64 as C64;

fn view(a: &[C64], n: usize) -> MatRef<'_, c64> {
    MatRef::from_row_major_slice(a, n, n)
}

fn view_mut(a: &mut [C64], n: usize) -> MatMut<'_, c64> {
    MatMut::from_row_major_slice_mut(a, n, n)
}

/// `out = alpha · a · b` (or `out += alpha · a · b` when `accumulate`).
pub fn gemm(out: &mut [C64], a: &[C64], b: &[C64], n: usize, alpha: C64, accumulate: bool) {
    let acc = if accumulate { Accum::Add } else { Accum::Replace };
    matmul(view_mut(out, n), acc, view(a, n), view(b, n), alpha, Par::Seq);
}

pub fn mul(a: &[C64], b: &[C64], n: usize) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); n * n];
    gemm(&mut out, a, b, n, C64::new(1.0, 0.0), false);
    out
}

/// Matrix-vector product `a · v`.
pub fn mat_vec(a: &[C64], v: &[C64], n: usize) -> Vec<C64> {
    a.chunks(n).map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

pub fn identity(n: usize) -> Vec<C64> {
    let mut m = vec![C64::new(0.0, 0.0); n * n];
    for i in 0..n {
        m[i * n + i] = C64::new(1.0, 0.0);
    }
    m
}

pub fn frobenius(a: &[C64]) -> f64 {
    a.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

/// Maximum absolute column sum.
pub fn norm_one(a: &[C64], n: usize) -> f64 {
    (0..n).map(|j| (0..n).map(|i| a[i * n + j].norm()).sum::<f64>()).fold(0.0, f64::max)
}

/// Solves `a · x = b` for square `b` by partial-pivoting LU.
pub fn solve(a: &[C64], b: &[C64], n: usize) -> Vec<C64> {
    let lu = view(a, n).partial_piv_lu();
    let x = lu.solve(view(b, n));
    let mut out = vec![C64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..n {
            out[i * n + j] = x[(i, j)];
        }
    }
    out
}

pub fn inverse(a: &[C64], n: usize) -> Vec<C64> {
    solve(a, &identity(n), n)
}

/// Eigenvalues of a hermitian matrix, ascending.
pub fn hermitian_eigenvalues(a: &[C64], n: usize) -> Vec<f64> {
    let mut ev = view(a, n).self_adjoint_eigenvalues(faer::Side::Lower).unwrap_or_default();
    ev.sort_by(|x, y| x.partial_cmp(y).unwrap());
    ev
}
