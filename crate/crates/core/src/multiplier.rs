use std::sync::Arc;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fft::Fourier;
use crate::field::{OneBodyField, PairKernel, Symmetry};
use crate::grid::GridSpec;

/// Which coordinate block a multiplier acts on.
///
/// `X` and `Y` take the frequency of that variable; `XMinusY` and `XPlusY`
/// take `ξ - η` and `ξ + η` (so `⟨∇_{x+y}⟩` has symbol `⟨ξ + η⟩`); `Both`
/// takes the concatenated vector `(ξ, η)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axes {
    X,
    Y,
    XMinusY,
    XPlusY,
    Both,
}

impl Axes {
    fn name(self) -> &'static str {
        match self {
            Axes::X => "x",
            Axes::Y => "y",
            Axes::XMinusY => "x-y",
            Axes::XPlusY => "x+y",
            Axes::Both => "both",
        }
    }
}

pub type Symbol = Arc<dyn Fn(&[f64]) -> C64 + Send + Sync>;

#[derive(Clone)]
pub struct FourierMultiplier {
    pub symbol: Symbol,
    pub axes: Axes,
}

impl std::fmt::Debug for FourierMultiplier {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FourierMultiplier").field("axes", &self.axes).finish()
    }
}

fn norm_sq(v: &[f64]) -> f64 {
    v.iter().map(|a| a * a).sum()
}

impl FourierMultiplier {
    pub fn new(axes: Axes, symbol: impl Fn(&[f64]) -> C64 + Send + Sync + 'static) -> Self {
        FourierMultiplier { symbol: Arc::new(symbol), axes }
    }

    pub fn identity(axes: Axes) -> Self {
        Self::new(axes, |_| C64::new(1.0, 0.0))
    }

    /// `⟨∇⟩^s`, symbol `(1 + |ζ|²)^{s/2}` in the frequency of `axes`.
    pub fn bracket(axes: Axes, s: f64) -> Self {
        Self::new(axes, move |z| C64::new((1.0 + norm_sq(z)).powf(0.5 * s), 0.0))
    }

    /// `⟨∇_x⟩^{1/2}⟨∇_y⟩^{1/2}`.
    pub fn half_xy() -> Self {
        Self::new(Axes::Both, |z| {
            let d = z.len() / 2;
            C64::new(((1.0 + norm_sq(&z[..d])) * (1.0 + norm_sq(&z[d..]))).powf(0.25), 0.0)
        })
    }

    /// Symbol as a function of `(ξ, η)`.
    pub fn lifted(&self, d: usize) -> Symbol {
        let s = self.symbol.clone();
        match self.axes {
            Axes::Both => s,
            Axes::X => Arc::new(move |z: &[f64]| s(&z[..d])),
            Axes::Y => Arc::new(move |z: &[f64]| s(&z[d..])),
            Axes::XMinusY | Axes::XPlusY => {
                let sign = if self.axes == Axes::XPlusY { 1.0 } else { -1.0 };
                Arc::new(move |z: &[f64]| {
                    let mut w = [0.0; 3];
                    for a in 0..d {
                        w[a] = z[a] + sign * z[d + a];
                    }
                    s(&w[..d])
                })
            }
        }
    }

    /// Pointwise product of symbols. Different blocks combine into `Both`.
    pub fn product(&self, other: &Self, d: usize) -> Self {
        if self.axes == other.axes {
            let (a, b) = (self.symbol.clone(), other.symbol.clone());
            return FourierMultiplier { symbol: Arc::new(move |z| a(z) * b(z)), axes: self.axes };
        }
        let (a, b) = (self.lifted(d), other.lifted(d));
        FourierMultiplier { symbol: Arc::new(move |z| a(z) * b(z)), axes: Axes::Both }
    }

    /// Symbol values on the one-variable lattice (FFT order).
    fn table_one(&self, grid: &GridSpec) -> Vec<C64> {
        let d = grid.dim();
        (0..grid.sites()).map(|f| (self.symbol)(&grid.wavevector(f)[..d])).collect()
    }

    /// Symbol values on the two-variable lattice (FFT order, `ξ` major).
    fn table_two(&self, grid: &GridSpec) -> Vec<C64> {
        let d = grid.dim();
        let n = grid.sites();
        let lifted = self.lifted(d);
        let k: Vec<[f64; 3]> = (0..n).map(|f| grid.wavevector(f)).collect();
        let mut out = Vec::with_capacity(n * n);
        let mut z = [0.0; 6];
        for xi in &k {
            z[..d].copy_from_slice(&xi[..d]);
            for eta in &k {
                z[d..2 * d].copy_from_slice(&eta[..d]);
                out.push(lifted(&z[..2 * d]));
            }
        }
        out
    }

    /// Largest symbol modulus over the lattice.
    pub fn sup_on_lattice(&self, grid: &GridSpec) -> f64 {
        MultiplierPlan::new(self, grid).table.iter().fold(0.0, |m, v| m.max(v.norm()))
    }

    pub fn apply_field(&self, f: &OneBodyField) -> Result<OneBodyField> {
        if self.axes != Axes::X {
            return Err(Error::AxesNotApplicable(self.axes.name(), "one-body field"));
        }
        let grid = f.grid;
        let fourier = Fourier::new(grid.points());
        let mut v = f.values.clone();
        let axes: Vec<usize> = (0..grid.dim()).collect();
        fourier.forward(&mut v, grid.dim(), &axes);
        for (a, s) in v.iter_mut().zip(self.table_one(&grid)) {
            *a *= s;
        }
        fourier.inverse(&mut v, grid.dim(), &axes);
        Ok(OneBodyField { grid, values: v })
    }

    pub fn apply_pair(&self, k: &PairKernel) -> PairKernel {
        let plan = MultiplierPlan::new(self, &k.grid);
        let mut v = k.values.clone();
        plan.apply(&Fourier::new(k.grid.points()), &mut v);
        PairKernel::raw(k.grid, v, Symmetry::None)
    }
}

/// A multiplier tabulated on a grid, reusable across many kernels.
#[derive(Clone)]
pub struct MultiplierPlan {
    grid: GridSpec,
    axes: Axes,
    table: Vec<C64>,
}

impl MultiplierPlan {
    pub fn new(m: &FourierMultiplier, grid: &GridSpec) -> Self {
        let table = match m.axes {
            Axes::X | Axes::Y => m.table_one(grid),
            _ => m.table_two(grid),
        };
        MultiplierPlan { grid: *grid, axes: m.axes, table }
    }

    /// Applies the multiplier to a pair kernel stored row-major.
    pub fn apply(&self, fourier: &Fourier, values: &mut [C64]) {
        let d = self.grid.dim();
        let n = self.grid.sites();
        let x_axes: Vec<usize> = (0..d).collect();
        let y_axes: Vec<usize> = (d..2 * d).collect();
        let all: Vec<usize> = (0..2 * d).collect();
        match self.axes {
            Axes::X => {
                fourier.forward(values, 2 * d, &x_axes);
                for (i, row) in values.chunks_mut(n).enumerate() {
                    let s = self.table[i];
                    row.iter_mut().for_each(|v| *v *= s);
                }
                fourier.inverse(values, 2 * d, &x_axes);
            }
            Axes::Y => {
                fourier.forward(values, 2 * d, &y_axes);
                for row in values.chunks_mut(n) {
                    row.iter_mut().zip(&self.table).for_each(|(v, s)| *v *= s);
                }
                fourier.inverse(values, 2 * d, &y_axes);
            }
            _ => {
                fourier.forward(values, 2 * d, &all);
                values.iter_mut().zip(&self.table).for_each(|(v, s)| *v *= s);
                fourier.inverse(values, 2 * d, &all);
            }
        }
    }
}

/// Generic entry point over fields and kernels.
pub trait Multipliable: Sized {
    fn apply_multiplier(&self, m: &FourierMultiplier) -> Result<Self>;
}

impl Multipliable for OneBodyField {
    fn apply_multiplier(&self, m: &FourierMultiplier) -> Result<Self> {
        m.apply_field(self)
    }
}

impl Multipliable for PairKernel {
    fn apply_multiplier(&self, m: &FourierMultiplier) -> Result<Self> {
        Ok(m.apply_pair(self))
    }
}

pub fn apply_multiplier<T: Multipliable>(input: &T, m: &FourierMultiplier) -> Result<T> {
    input.apply_multiplier(m)
}
