use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::field::{OneBodyField, PairKernel};
use crate::grid::GridSpec;
use crate::multiplier::{Axes, FourierMultiplier};

fn smooth_step(t: f64) -> f64 {
    if t > 0.0 {
        (-1.0 / t).exp()
    } else {
        0.0
    }
}

/// Radial bump: 1 on `r ≤ 1`, 0 on `r ≥ 2`, `C^∞` in between.
pub fn bump(r: f64) -> f64 {
    if r <= 1.0 {
        1.0
    } else if r >= 2.0 {
        0.0
    } else {
        let a = smooth_step(2.0 - r);
        a / (a + smooth_step(r - 1.0))
    }
}

/// Frequency variable a projector acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FreqVar {
    Xi,
    Eta,
    XiMinusEta,
    XiPlusEta,
}

impl FreqVar {
    pub fn axes(self) -> Axes {
        match self {
            FreqVar::Xi => Axes::X,
            FreqVar::Eta => Axes::Y,
            FreqVar::XiMinusEta => Axes::XMinusY,
            FreqVar::XiPlusEta => Axes::XPlusY,
        }
    }

    /// Largest modulus this variable attains on the lattice.
    pub fn lattice_limit(self, grid: &GridSpec) -> f64 {
        match self {
            FreqVar::Xi | FreqVar::Eta => grid.max_frequency(),
            _ => 2.0 * grid.max_frequency(),
        }
    }
}

/// Frequency band of a Littlewood–Paley projector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Band {
    /// `P_{|ζ|<M}`: symbol `bump(|ζ|/M)`.
    Below(f64),
    /// `P_{|ζ|≥M} = 1 - P_{|ζ|<M}`.
    AtLeast(f64),
    /// `P_{|ζ|<2^k}`.
    DyadicBall(i32),
    /// `P_{|ζ|∼2^k}`; `k = 0` is the unit ball.
    DyadicAnnulus(i32),
}

impl Band {
    pub fn cutoff(self) -> f64 {
        match self {
            Band::Below(m) | Band::AtLeast(m) => m,
            Band::DyadicBall(k) | Band::DyadicAnnulus(k) => 2f64.powi(k),
        }
    }

    pub fn value(self, r: f64) -> f64 {
        match self {
            Band::Below(m) => bump(r / m),
            Band::AtLeast(m) => 1.0 - bump(r / m),
            Band::DyadicBall(k) => bump(r / 2f64.powi(k)),
            Band::DyadicAnnulus(k) if k <= 0 => bump(r),
            Band::DyadicAnnulus(k) => bump(r / 2f64.powi(k)) - bump(r / 2f64.powi(k - 1)),
        }
    }

    pub fn multiplier(self, var: FreqVar) -> FourierMultiplier {
        FourierMultiplier::new(var.axes(), move |z| {
            let r = z.iter().map(|a| a * a).sum::<f64>().sqrt();
            C64::new(self.value(r), 0.0)
        })
    }

    /// Whether the cutoff lies beyond every lattice frequency of `var`, so
    /// that the projector acts as identity (`Below`) or zero (`AtLeast`).
    pub fn saturates(self, var: FreqVar, grid: &GridSpec) -> bool {
        let limit = var.lattice_limit(grid);
        match self {
            // The annulus vanishes only once its inner edge clears the lattice.
            Band::DyadicAnnulus(k) if k >= 1 => 2f64.powi(k - 1) >= limit,
            _ => self.cutoff() > limit,
        }
    }
}

fn check(band: Band, var: FreqVar, grid: &GridSpec) -> Result<()> {
    if band.saturates(var, grid) {
        return Err(Error::CutoffAboveNyquist { cutoff: band.cutoff(), limit: var.lattice_limit(grid) });
    }
    Ok(())
}

pub trait Projectable: Sized + Clone {
    fn grid(&self) -> GridSpec;
    fn project_unchecked(&self, band: Band, var: FreqVar) -> Result<Self>;
    fn zeroed(&self) -> Self;
}

impl Projectable for OneBodyField {
    fn grid(&self) -> GridSpec {
        self.grid
    }
    fn project_unchecked(&self, band: Band, var: FreqVar) -> Result<Self> {
        band.multiplier(var).apply_field(self)
    }
    fn zeroed(&self) -> Self {
        OneBodyField::zeros(self.grid)
    }
}

impl Projectable for PairKernel {
    fn grid(&self) -> GridSpec {
        self.grid
    }
    fn project_unchecked(&self, band: Band, var: FreqVar) -> Result<Self> {
        Ok(band.multiplier(var).apply_pair(self))
    }
    fn zeroed(&self) -> Self {
        PairKernel::zeros(self.grid, self.symmetry)
    }
}

/// Applies the projector; errors if the cutoff is above the lattice.
pub fn lp_project<T: Projectable>(input: &T, band: Band, var: FreqVar) -> Result<T> {
    check(band, var, &input.grid())?;
    input.project_unchecked(band, var)
}

/// Like [`lp_project`], but a cutoff above the lattice yields the exact
/// limit: identity for balls, zero for complements and annuli.
pub fn lp_project_saturating<T: Projectable>(input: &T, band: Band, var: FreqVar) -> Result<T> {
    if band.saturates(var, &input.grid()) {
        return Ok(match band {
            Band::Below(_) | Band::DyadicBall(_) => input.clone(),
            Band::AtLeast(_) | Band::DyadicAnnulus(_) => input.zeroed(),
        });
    }
    input.project_unchecked(band, var)
}

/// Calibrated Bernstein constant for `‖f‖_q ≤ C 2^{kd(1/p-1/q)} ‖f‖_p` on
/// annulus-localized data, frozen as a regression bound.
pub const BERNSTEIN_CONSTANT: f64 = 0.6;

/// Bernstein ratio `‖f‖_q / (2^{kd(1/p-1/q)} ‖f‖_p)`.
pub fn bernstein_ratio(f: &OneBodyField, k: i32, p: f64, q: f64) -> f64 {
    let d = f.grid.dim() as f64;
    let inv = |e: f64| if e.is_infinite() { 0.0 } else { 1.0 / e };
    let scale = 2f64.powf(k as f64 * d * (inv(p) - inv(q)));
    f.norm_lp(q) / (scale * f.norm_lp(p))
}
