use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::GridSpec;

/// Symmetry class carried by a pair kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Symmetry {
    Symmetric,
    Hermitian,
    None,
}

impl Symmetry {
    pub fn name(self) -> &'static str {
        match self {
            Symmetry::Symmetric => "symmetric",
            Symmetry::Hermitian => "hermitian",
            Symmetry::None => "unstructured",
        }
    }
}

const SYMMETRY_TOL: f64 = 1e-12;

/// Complex function sampled on the torus.
#[derive(Debug, Clone, PartialEq)]
pub struct OneBodyField {
    pub grid: GridSpec,
    pub values: Vec<C64>,
}

impl OneBodyField {
    pub fn new(grid: GridSpec, values: Vec<C64>) -> Result<Self> {
        if values.len() != grid.sites() {
            return Err(Error::GridMismatch);
        }
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::NonFinite("one-body field"));
        }
        Ok(OneBodyField { grid, values })
    }

    pub fn zeros(grid: GridSpec) -> Self {
        OneBodyField { grid, values: vec![C64::new(0.0, 0.0); grid.sites()] }
    }

    /// Samples `f` at the lattice positions `j·h`.
    pub fn from_fn(grid: GridSpec, f: impl Fn(&[f64]) -> C64) -> Self {
        let d = grid.dim();
        let values = (0..grid.sites()).map(|i| f(&grid.position(i)[..d])).collect();
        OneBodyField { grid, values }
    }

    pub fn from_real(grid: GridSpec, values: &[f64]) -> Result<Self> {
        Self::new(grid, values.iter().map(|&v| C64::new(v, 0.0)).collect())
    }

    pub fn norm_l2(&self) -> f64 {
        (self.grid.cell() * self.values.iter().map(|v| v.norm_sqr()).sum::<f64>()).sqrt()
    }

    pub fn norm_lp(&self, p: f64) -> f64 {
        if p.is_infinite() {
            return self.norm_sup();
        }
        (self.grid.cell() * self.values.iter().map(|v| v.norm().powf(p)).sum::<f64>()).powf(1.0 / p)
    }

    pub fn norm_sup(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.norm()))
    }

    pub fn conj(&self) -> Self {
        OneBodyField { grid: self.grid, values: self.values.iter().map(|v| v.conj()).collect() }
    }

    pub fn scale(&self, c: C64) -> Self {
        OneBodyField { grid: self.grid, values: self.values.iter().map(|v| v * c).collect() }
    }

    /// Discrete inner product `h^d Σ conj(a) b`.
    pub fn inner(&self, other: &Self) -> Result<C64> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        let s: C64 = self.values.iter().zip(&other.values).map(|(a, b)| a.conj() * b).sum();
        Ok(s * self.grid.cell())
    }

    pub fn max_imag(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.im.abs()))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.re == 0.0 && v.im == 0.0)
    }
}

/// Complex kernel on torus × torus, stored row-major as `values[x * n + y]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PairKernel {
    pub grid: GridSpec,
    pub values: Vec<C64>,
    pub symmetry: Symmetry,
}

impl PairKernel {
    pub fn new(grid: GridSpec, values: Vec<C64>, symmetry: Symmetry) -> Result<Self> {
        let n = grid.sites();
        if values.len() != n * n {
            return Err(Error::GridMismatch);
        }
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::NonFinite("pair kernel"));
        }
        let k = PairKernel { grid, values, symmetry: Symmetry::None };
        k.with_symmetry(symmetry)
    }

    /// Kernel without validation of the symmetry tag.
    pub fn raw(grid: GridSpec, values: Vec<C64>, symmetry: Symmetry) -> Self {
        PairKernel { grid, values, symmetry }
    }

    pub fn zeros(grid: GridSpec, symmetry: Symmetry) -> Self {
        let n = grid.sites();
        PairKernel { grid, values: vec![C64::new(0.0, 0.0); n * n], symmetry }
    }

    /// The discrete delta `I / h^d`.
    pub fn delta(grid: GridSpec) -> Self {
        let n = grid.sites();
        let mut k = Self::zeros(grid, Symmetry::Hermitian);
        let inv = 1.0 / grid.cell();
        for i in 0..n {
            k.values[i * n + i] = C64::new(inv, 0.0);
        }
        k
    }

    /// `f(x) g(y)`.
    pub fn outer(f: &OneBodyField, g: &OneBodyField) -> Result<Self> {
        if f.grid != g.grid {
            return Err(Error::GridMismatch);
        }
        let n = f.grid.sites();
        let mut values = Vec::with_capacity(n * n);
        for a in &f.values {
            for b in &g.values {
                values.push(a * b);
            }
        }
        Ok(PairKernel { grid: f.grid, values, symmetry: Symmetry::None })
    }

    pub fn from_fn(grid: GridSpec, f: impl Fn(&[f64], &[f64]) -> C64) -> Self {
        let d = grid.dim();
        let n = grid.sites();
        let pos: Vec<[f64; 3]> = (0..n).map(|i| grid.position(i)).collect();
        let mut values = Vec::with_capacity(n * n);
        for x in &pos {
            for y in &pos {
                values.push(f(&x[..d], &y[..d]));
            }
        }
        PairKernel { grid, values, symmetry: Symmetry::None }
    }

    pub fn n(&self) -> usize {
        self.grid.sites()
    }

    pub fn at(&self, x: usize, y: usize) -> C64 {
        self.values[x * self.n() + y]
    }

    /// Checks the requested tag and attaches it.
    pub fn with_symmetry(mut self, symmetry: Symmetry) -> Result<Self> {
        let defect = self.symmetry_defect(symmetry);
        if defect > SYMMETRY_TOL {
            return Err(Error::NotSymmetric(symmetry.name(), defect));
        }
        self.symmetry = symmetry;
        Ok(self)
    }

    /// Relative deviation from the given symmetry class.
    pub fn symmetry_defect(&self, symmetry: Symmetry) -> f64 {
        let n = self.n();
        let scale = self.values.iter().fold(0.0f64, |m, v| m.max(v.norm()));
        if scale == 0.0 {
            return 0.0;
        }
        let mut worst = 0.0f64;
        match symmetry {
            Symmetry::None => return 0.0,
            Symmetry::Symmetric => {
                for i in 0..n {
                    for j in i + 1..n {
                        worst = worst.max((self.values[i * n + j] - self.values[j * n + i]).norm());
                    }
                }
            }
            Symmetry::Hermitian => {
                for i in 0..n {
                    for j in i..n {
                        let d = self.values[i * n + j] - self.values[j * n + i].conj();
                        worst = worst.max(d.norm());
                    }
                }
            }
        }
        worst / scale
    }

    /// Projects onto the symmetry class, removing round-off asymmetry.
    pub fn symmetrize(&mut self, symmetry: Symmetry) {
        let n = self.n();
        match symmetry {
            Symmetry::None => {}
            Symmetry::Symmetric => {
                for i in 0..n {
                    for j in i + 1..n {
                        let m = 0.5 * (self.values[i * n + j] + self.values[j * n + i]);
                        self.values[i * n + j] = m;
                        self.values[j * n + i] = m;
                    }
                }
            }
            Symmetry::Hermitian => {
                for i in 0..n {
                    self.values[i * n + i].im = 0.0;
                    for j in i + 1..n {
                        let m = 0.5 * (self.values[i * n + j] + self.values[j * n + i].conj());
                        self.values[i * n + j] = m;
                        self.values[j * n + i] = m.conj();
                    }
                }
            }
        }
        self.symmetry = symmetry;
    }

    pub fn conj(&self) -> Self {
        PairKernel { grid: self.grid, values: self.values.iter().map(|v| v.conj()).collect(), symmetry: self.symmetry }
    }

    pub fn transpose(&self) -> Self {
        let n = self.n();
        let mut values = vec![C64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                values[j * n + i] = self.values[i * n + j];
            }
        }
        PairKernel { grid: self.grid, values, symmetry: self.symmetry }
    }

    /// `conj(K(y, x))`.
    pub fn adjoint(&self) -> Self {
        let mut t = self.transpose();
        for v in t.values.iter_mut() {
            *v = v.conj();
        }
        t
    }

    pub fn scale(&self, c: C64) -> Self {
        let symmetry = if c.im != 0.0 && self.symmetry == Symmetry::Hermitian { Symmetry::None } else { self.symmetry };
        PairKernel { grid: self.grid, values: self.values.iter().map(|v| v * c).collect(), symmetry }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        let symmetry = if self.symmetry == other.symmetry { self.symmetry } else { Symmetry::None };
        Ok(PairKernel {
            grid: self.grid,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
            symmetry,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    /// Plain Frobenius norm of the sample matrix.
    pub fn frobenius(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `L²(dx dy)` norm, `h^d` times the Frobenius norm.
    pub fn norm_l2(&self) -> f64 {
        self.grid.cell() * self.frobenius()
    }

    pub fn norm_sup(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.norm()))
    }

    /// `K(x, x)` as a one-body field.
    pub fn diagonal(&self) -> OneBodyField {
        let n = self.n();
        OneBodyField { grid: self.grid, values: (0..n).map(|i| self.values[i * n + i]).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.re == 0.0 && v.im == 0.0)
    }
}
