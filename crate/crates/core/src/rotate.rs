//! Exact shear of pair kernels into difference/sum coordinates.
//!
//! On each axis the sample `K[x_i][y_j]` is stored at `R[a][j]` with
//! `a = i - j mod M`. Row `a` is the line `u = x - y = a·h`; along it the
//! sum coordinate `w = x + y = (a + 2j)·h` advances in steps of `2h` and
//! sweeps a window of length `2L`. The map is a permutation of samples, so
//! the roundtrip is exact. Quadrature in the rotated frame uses cells
//! `du = h^d` and `dw = (2h)^d`, hence
//! `‖R‖_{L²(du dw)} = 2^{d/2} ‖K‖_{L²(dx dy)}`.

use crate::field::{PairKernel, Symmetry};
use crate::grid::GridSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// Ratio of rotated-frame to original `L²` norms.
pub fn volume_factor(d: usize) -> f64 {
    2f64.powf(d as f64 / 2.0)
}

/// Flat original index `(x, y)` for the rotated slot `(a, j)`.
#[inline]
pub fn source_index(grid: &GridSpec, a: usize, j: usize) -> usize {
    let n = grid.sites();
    let ia = grid.unflatten(a);
    let ij = grid.unflatten(j);
    let m = grid.points();
    let mut x = 0;
    for ax in 0..grid.dim() {
        x = x * m + (ia[ax] + ij[ax]) % m;
    }
    x * n + j
}

/// Permutation table: rotated slot → original flat index.
pub fn permutation(grid: &GridSpec) -> Vec<usize> {
    let n = grid.sites();
    let mut perm = Vec::with_capacity(n * n);
    for a in 0..n {
        for j in 0..n {
            perm.push(source_index(grid, a, j));
        }
    }
    perm
}

/// Coordinates `(u, w)` of rotated slot `(a, j)`, with `w` unwrapped.
pub fn rotated_coordinates(grid: &GridSpec, a: usize, j: usize) -> ([f64; 3], [f64; 3]) {
    let h = grid.spacing();
    let ia = grid.unflatten(a);
    let ij = grid.unflatten(j);
    let mut u = [0.0; 3];
    let mut w = [0.0; 3];
    for ax in 0..grid.dim() {
        u[ax] = ia[ax] as f64 * h;
        w[ax] = (ia[ax] + 2 * ij[ax]) as f64 * h;
    }
    (u, w)
}

pub fn rotate_pair_coords(k: &PairKernel, direction: Direction) -> PairKernel {
    let perm = permutation(&k.grid);
    let mut out = vec![num_complex::Complex64::new(0.0, 0.0); k.values.len()];
    match direction {
        Direction::Forward => {
            for (slot, &src) in perm.iter().enumerate() {
                out[slot] = k.values[src];
            }
        }
        Direction::Inverse => {
            for (slot, &src) in perm.iter().enumerate() {
                out[src] = k.values[slot];
            }
        }
    }
    PairKernel::raw(k.grid, out, Symmetry::None)
}
