//! Repulsive pair potential with compact Fourier support and its
//! `N`-dependent dilations.
//!
//! The base profile is `v = w²` where `ŵ(ξ) = exp(-1/(1 - 4|ξ|²))` on
//! `|ξ| < 1/2`. Hence `v ≥ 0` and `v̂ = (2π)^{-d} ŵ⋆ŵ` vanishes outside the
//! unit ball. Fourier transforms use `f̂(ξ) = ∫ f(x) e^{-iξ·x} dx`.
//!
//! Torus samples are the periodization `Σ_n v(x + nL)`, obtained exactly
//! from `v̂` on the frequency lattice.

use std::collections::HashMap;
use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fft::Fourier;
use crate::field::OneBodyField;
use crate::grid::GridSpec;

/// Headroom below `ε` for the normalization `max(‖v‖₁, ‖v‖_∞)`.
const EPS_HEADROOM: f64 = 1e-6;

fn w_hat(r: f64) -> f64 {
    let t = 2.0 * r;
    if t >= 1.0 {
        0.0
    } else {
        (-1.0 / (1.0 - t * t)).exp()
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    (x, w)
}

struct Quadrature {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl Quadrature {
    fn new(n: usize) -> Self {
        let (nodes, weights) = gauss_legendre(n);
        Quadrature { nodes, weights }
    }

    fn integrate(&self, a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
        if b <= a {
            return 0.0;
        }
        let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
        self.nodes.iter().zip(&self.weights).map(|(x, w)| w * f(c + h * x)).sum::<f64>() * h
    }

    /// Composite rule over `panels` equal pieces.
    fn composite(&self, a: f64, b: f64, panels: usize, f: impl Fn(f64) -> f64) -> f64 {
        let step = (b - a) / panels as f64;
        (0..panels).map(|i| self.integrate(a + i as f64 * step, a + (i + 1) as f64 * step, &f)).sum()
    }
}

/// Unnormalized radial profile `v̂(ρ) = (2π)^{-d} (ŵ⋆ŵ)(ρ)`.
pub struct BaseTransform {
    dim: usize,
    quad: Quadrature,
}

impl BaseTransform {
    pub fn new(dim: usize) -> Self {
        BaseTransform { dim, quad: Quadrature::new(48) }
    }

    pub fn eval(&self, rho: f64) -> f64 {
        if rho >= 1.0 {
            return 0.0;
        }
        match self.dim {
            1 => {
                let (a, b) = ((rho - 0.5).max(-0.5), (rho + 0.5).min(0.5));
                self.quad.composite(a, b, 16, |s| w_hat(s.abs()) * w_hat((rho - s).abs())) / (2.0 * PI)
            }
            2 => {
                let n_theta = 128;
                let inner = |r: f64| {
                    let mut s = 0.0;
                    for j in 0..n_theta {
                        let th = 2.0 * PI * j as f64 / n_theta as f64;
                        let (zx, zy) = (r * th.cos(), r * th.sin());
                        s += w_hat(((rho - zx).powi(2) + zy * zy).sqrt());
                    }
                    s * 2.0 * PI / n_theta as f64
                };
                self.quad.composite(0.0, 0.5, 16, |r| r * w_hat(r) * inner(r)) / (4.0 * PI * PI)
            }
            _ => {
                let big_f = |t: f64| self.quad.composite(0.0, t.min(0.5), 4, |s| s * w_hat(s));
                if rho < 1e-9 {
                    let s = self.quad.composite(0.0, 0.5, 16, |r| r * r * w_hat(r).powi(2));
                    return 4.0 * PI * s / (8.0 * PI * PI * PI);
                }
                let g = |r: f64| r * w_hat(r) * (big_f(rho + r) - big_f((rho - r).abs()));
                let s = if rho < 0.5 {
                    self.quad.composite(0.0, rho, 8, g) + self.quad.composite(rho, 0.5, 16, g)
                } else {
                    self.quad.composite(0.0, 0.5, 16, g)
                };
                2.0 * PI / rho * s / (8.0 * PI * PI * PI)
            }
        }
    }
}

/// Base potential and its dilation `V_N(x) = N^{dβ} v(N^β x)`.
#[derive(Debug, Clone)]
pub struct PotentialSpec {
    pub epsilon: f64,
    pub n_particles: f64,
    pub beta: f64,
    /// Samples of `v` on the torus.
    pub base: OneBodyField,
    /// `v̂` on the frequency lattice, FFT order.
    pub base_hat: Vec<C64>,
    /// Samples of `V_N`.
    pub scaled: OneBodyField,
    /// `V̂_N` on the frequency lattice, FFT order.
    pub scaled_hat: Vec<C64>,
    /// Factor applied to the unnormalized profile.
    pub amplitude: f64,
    /// Largest relative rise of `v` along sampled rays (0 if monotone).
    pub monotonicity_defect: f64,
    pub monotone: bool,
    /// Largest negative round-off clamped away in `V_N`.
    pub clamp_magnitude: f64,
}

/// Evaluates `f(|k|)` on the lattice, once per distinct radius.
fn lattice_hat(grid: &GridSpec, f: impl Fn(f64) -> f64) -> Vec<C64> {
    let dk = 2.0 * PI / grid.length();
    let mut cache: HashMap<i64, f64> = HashMap::new();
    (0..grid.sites())
        .map(|i| {
            let idx = grid.unflatten(i);
            let m2: i64 = (0..grid.dim()).map(|a| grid.mode(idx[a]).pow(2)).sum();
            let v = *cache.entry(m2).or_insert_with(|| f(dk * (m2 as f64).sqrt()));
            C64::new(v, 0.0)
        })
        .collect()
}

/// Torus samples from lattice Fourier coefficients (periodization).
fn samples_from_hat(grid: &GridSpec, hat: &[C64]) -> Vec<f64> {
    let mut v = hat.to_vec();
    let axes: Vec<usize> = (0..grid.dim()).collect();
    Fourier::new(grid.points()).inverse(&mut v, grid.dim(), &axes);
    let inv = 1.0 / grid.cell();
    v.iter().map(|c| c.re * inv).collect()
}

fn clamp(values: &mut [f64]) -> f64 {
    let mut worst = 0.0f64;
    for v in values.iter_mut() {
        if *v < 0.0 {
            worst = worst.max(-*v);
            *v = 0.0;
        }
    }
    worst
}

/// Largest rise of `v` moving outward from the origin along the coordinate
/// axes and the main diagonal, relative to `max v`.
fn monotonicity_defect(grid: &GridSpec, v: &[f64]) -> f64 {
    let m = grid.points();
    let d = grid.dim();
    let vmax = v.iter().cloned().fold(0.0, f64::max);
    if vmax == 0.0 {
        return 0.0;
    }
    let mut dirs: Vec<[usize; 3]> = (0..d)
        .map(|a| {
            let mut e = [0; 3];
            e[a] = 1;
            e
        })
        .collect();
    if d > 1 {
        dirs.push([1, 1, if d == 3 { 1 } else { 0 }]);
    }
    let mut worst = 0.0f64;
    for dir in dirs {
        let mut prev = v[0];
        for s in 1..=m / 2 {
            let idx: Vec<usize> = (0..d).map(|a| dir[a] * s).collect();
            let cur = v[grid.flatten(&idx)];
            worst = worst.max(cur - prev);
            prev = cur;
        }
    }
    worst / vmax
}

impl PotentialSpec {
    /// Base potential with `max(‖v‖₁, ‖v‖_∞) = ε(1 - 10⁻⁶)`.
    pub fn build_base(grid: &GridSpec, epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0) {
            return Err(Error::NonPositiveEpsilon(epsilon));
        }
        if grid.nyquist() <= 1.0 {
            return Err(Error::NyquistTooSmall(grid.nyquist()));
        }
        let profile = BaseTransform::new(grid.dim());
        let raw_hat = lattice_hat(grid, |r| profile.eval(r));
        let mut raw = samples_from_hat(grid, &raw_hat);
        clamp(&mut raw);
        let l1 = raw.iter().sum::<f64>() * grid.cell();
        let sup = raw.iter().cloned().fold(0.0, f64::max);
        let amplitude = epsilon * (1.0 - EPS_HEADROOM) / l1.max(sup);
        let values: Vec<f64> = raw.iter().map(|v| v * amplitude).collect();
        let base_hat: Vec<C64> = raw_hat.iter().map(|v| v * amplitude).collect();
        let defect = monotonicity_defect(grid, &values);
        if defect > 0.0 {
            log::warn!("base potential is not radially monotone (relative rise {defect:.3e})");
        }
        let base = OneBodyField::from_real(*grid, &values)?;
        Ok(PotentialSpec {
            epsilon,
            n_particles: 1.0,
            beta: 1.0,
            scaled: base.clone(),
            scaled_hat: base_hat.clone(),
            base,
            base_hat,
            amplitude,
            monotonicity_defect: defect,
            monotone: defect == 0.0,
            clamp_magnitude: 0.0,
        })
    }

    /// The zero interaction (`ε = 0`).
    pub fn zero(grid: &GridSpec, n_particles: f64, beta: f64) -> Self {
        let z = OneBodyField::zeros(*grid);
        let zh = vec![C64::new(0.0, 0.0); grid.sites()];
        PotentialSpec {
            epsilon: 0.0,
            n_particles,
            beta,
            base: z.clone(),
            base_hat: zh.clone(),
            scaled: z,
            scaled_hat: zh,
            amplitude: 0.0,
            monotonicity_defect: 0.0,
            monotone: true,
            clamp_magnitude: 0.0,
        }
    }

    /// Dilation in Fourier space: `V̂_N(ξ) = v̂(ξ / N^β)`.
    pub fn scale(&self, n_particles: f64, beta: f64) -> Result<Self> {
        if !(n_particles >= 1.0) {
            return Err(Error::NonPositiveN(n_particles));
        }
        if !(beta > 0.0 && beta <= 1.0) {
            return Err(Error::InvalidArgument(format!("beta must lie in (0, 1] (got {beta})")));
        }
        let grid = self.base.grid;
        let s = n_particles.powf(beta);
        if s > grid.nyquist() {
            return Err(Error::ScaleBeyondNyquist { scale: s, nyquist: grid.nyquist() });
        }
        let mut out = self.clone();
        out.n_particles = n_particles;
        out.beta = beta;
        if self.amplitude == 0.0 {
            return Ok(out);
        }
        if n_particles == 1.0 {
            return Ok(out);
        }
        let profile = BaseTransform::new(grid.dim());
        let amp = self.amplitude;
        let hat = lattice_hat(&grid, |r| amp * profile.eval(r / s));
        let mut values = samples_from_hat(&grid, &hat);
        let clamped = clamp(&mut values);
        let sup = values.iter().cloned().fold(0.0, f64::max);
        if clamped > 0.0 {
            log::debug!("clamped negative round-off {clamped:.3e} in V_N (sup {sup:.3e})");
        }
        out.scaled = OneBodyField::from_real(grid, &values)?;
        out.scaled_hat = hat;
        out.clamp_magnitude = clamped;
        Ok(out)
    }

    pub fn grid(&self) -> GridSpec {
        self.base.grid
    }

    pub fn is_zero(&self) -> bool {
        self.amplitude == 0.0
    }

    /// Largest `|v̂|` over lattice points with `|ξ| > 1`.
    pub fn hat_leakage(&self) -> f64 {
        let g = self.grid();
        (0..g.sites())
            .filter(|&i| g.wavevector(i).iter().map(|k| k * k).sum::<f64>() > 1.0 + 1e-12)
            .map(|i| self.base_hat[i].norm())
            .fold(0.0, f64::max)
    }
}

/// `(V * ρ)(x) = h^d Σ_y V(x - y) ρ(y)` by FFT; real part returned.
pub fn convolve_density(v: &OneBodyField, rho: &OneBodyField) -> Result<OneBodyField> {
    if v.grid != rho.grid {
        return Err(Error::GridMismatch);
    }
    let g = v.grid;
    let f = Fourier::new(g.points());
    let axes: Vec<usize> = (0..g.dim()).collect();
    let mut a = v.values.clone();
    let mut b = rho.values.clone();
    f.forward(&mut a, g.dim(), &axes);
    f.forward(&mut b, g.dim(), &axes);
    for (x, y) in a.iter_mut().zip(&b) {
        *x *= y;
    }
    f.inverse(&mut a, g.dim(), &axes);
    let scale = a.iter().fold(0.0f64, |m, c| m.max(c.norm())).max(f64::MIN_POSITIVE);
    let im = a.iter().fold(0.0f64, |m, c| m.max(c.im.abs()));
    if im > 1e-12 * scale {
        log::debug!("convolution imaginary residue {im:.3e}");
    }
    let cell = g.cell();
    Ok(OneBodyField { grid: g, values: a.iter().map(|c| C64::new(c.re * cell, 0.0)).collect() })
}
