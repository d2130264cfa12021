use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniform periodic grid on the torus `[0, L)^d` with `M` points per axis.
///
/// Flat indices are row-major over the `d` axes. Wavenumbers are stored in
/// FFT order: index `j` carries `2π m / L` with `m = j` for `j < M/2` and
/// `m = j - M` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    dim: usize,
    points: usize,
    length: f64,
}

impl GridSpec {
    pub fn new(dim: usize, points: usize, length: f64) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(Error::BadDimension(dim));
        }
        if !points.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(points));
        }
        if points < 8 {
            return Err(Error::TooFewPoints(points));
        }
        if !(length > 0.0) || !length.is_finite() {
            return Err(Error::NonPositiveLength(length));
        }
        Ok(GridSpec { dim, points, length })
    }

    /// A grid without the size restriction, used for tiny oracle problems.
    #[cfg(test)]
    pub(crate) fn unchecked(dim: usize, points: usize, length: f64) -> Self {
        GridSpec { dim, points, length }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn spacing(&self) -> f64 {
        self.length / self.points as f64
    }

    /// Volume of one cell, `h^d`.
    pub fn cell(&self) -> f64 {
        self.spacing().powi(self.dim as i32)
    }

    /// Number of sites, `M^d`.
    pub fn sites(&self) -> usize {
        self.points.pow(self.dim as u32)
    }

    pub fn nyquist(&self) -> f64 {
        PI * self.points as f64 / self.length
    }

    /// Largest modulus of a lattice frequency vector, `sqrt(d)·πM/L`.
    pub fn max_frequency(&self) -> f64 {
        (self.dim as f64).sqrt() * self.nyquist()
    }

    /// Integer mode number of FFT index `j`.
    pub fn mode(&self, j: usize) -> i64 {
        let m = self.points as i64;
        let j = j as i64;
        if j < m / 2 {
            j
        } else {
            j - m
        }
    }

    /// Wavenumbers of one axis in FFT order.
    pub fn wavenumbers(&self) -> Vec<f64> {
        let dk = 2.0 * PI / self.length;
        (0..self.points).map(|j| dk * self.mode(j) as f64).collect()
    }

    /// Wavenumbers of one axis in increasing order.
    pub fn centered_wavenumbers(&self) -> Vec<f64> {
        let mut k = self.wavenumbers();
        k.sort_by(|a, b| a.partial_cmp(b).unwrap());
        k
    }

    /// Per-axis indices of a flat site index.
    pub fn unflatten(&self, flat: usize) -> [usize; 3] {
        let mut idx = [0usize; 3];
        let mut rest = flat;
        for a in (0..self.dim).rev() {
            idx[a] = rest % self.points;
            rest /= self.points;
        }
        idx
    }

    pub fn flatten(&self, idx: &[usize]) -> usize {
        idx[..self.dim].iter().fold(0, |acc, &i| acc * self.points + (i % self.points))
    }

    /// Coordinates `j·h` of a site.
    pub fn position(&self, flat: usize) -> [f64; 3] {
        let idx = self.unflatten(flat);
        let h = self.spacing();
        let mut x = [0.0; 3];
        for a in 0..self.dim {
            x[a] = idx[a] as f64 * h;
        }
        x
    }

    /// Minimal-image displacement of a site from the origin, in `[-L/2, L/2)`.
    pub fn displacement(&self, flat: usize) -> [f64; 3] {
        let idx = self.unflatten(flat);
        let h = self.spacing();
        let mut x = [0.0; 3];
        for a in 0..self.dim {
            x[a] = self.mode(idx[a]) as f64 * h;
        }
        x
    }

    /// Flat index of the site `a - b` (periodic).
    pub fn difference(&self, a: usize, b: usize) -> usize {
        let ia = self.unflatten(a);
        let ib = self.unflatten(b);
        let mut out = 0;
        for ax in 0..self.dim {
            out = out * self.points + (ia[ax] + self.points - ib[ax]) % self.points;
        }
        out
    }

    /// Wave vector of a flat FFT-ordered index.
    pub fn wavevector(&self, flat: usize) -> [f64; 3] {
        let idx = self.unflatten(flat);
        let dk = 2.0 * PI / self.length;
        let mut k = [0.0; 3];
        for a in 0..self.dim {
            k[a] = dk * self.mode(idx[a]) as f64;
        }
        k
    }

    /// `|ξ|²` for every FFT-ordered flat index.
    pub fn wavenumber_squared(&self) -> Vec<f64> {
        (0..self.sites()).map(|f| self.wavevector(f).iter().map(|k| k * k).sum()).collect()
    }

    /// Flat index of the mode `-m` for FFT-ordered flat index `m`.
    pub fn negated(&self, flat: usize) -> usize {
        let idx = self.unflatten(flat);
        let mut out = 0;
        for a in 0..self.dim {
            out = out * self.points + (self.points - idx[a]) % self.points;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_dimensional_lattice() {
        let g = GridSpec::new(1, 8, 2.0 * PI).unwrap();
        assert!((g.spacing() - PI / 4.0).abs() < 1e-15);
        let k = g.centered_wavenumbers();
        let expect = [-4.0, -3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0];
        for (a, b) in k.iter().zip(expect.iter()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        let e = GridSpec::new(1, 7, 2.0 * PI).unwrap_err();
        assert!(e.to_string().contains("points must be power of two"));
        assert!(GridSpec::new(1, 4, 1.0).is_err());
        assert!(GridSpec::new(1, 8, 0.0).is_err());
        assert!(GridSpec::new(4, 8, 1.0).is_err());
        assert!(GridSpec::new(0, 8, 1.0).is_err());
    }

    #[test]
    fn two_dimensional_sizes() {
        let g = GridSpec::new(2, 16, 1.0).unwrap();
        assert_eq!(g.sites(), 256);
        assert!((g.nyquist() - 2.0 * PI * 8.0).abs() < 1e-12);
    }

    #[test]
    fn flatten_roundtrip_and_difference() {
        let g = GridSpec::new(3, 8, 1.0).unwrap();
        for f in [0, 1, 77, 300, 511] {
            assert_eq!(g.flatten(&g.unflatten(f)), f);
            assert_eq!(g.difference(f, f), 0);
            assert_eq!(g.difference(f, 0), f);
            assert_eq!(g.negated(g.negated(f)), f);
        }
        assert_eq!(g.difference(0, 1), g.flatten(&[0, 0, 7]));
    }
}
