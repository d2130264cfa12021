use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::evolution::{HfbState, Trajectory};
use crate::fft::Fourier;
use crate::grid::GridSpec;
use crate::littlewood_paley::{Band, FreqVar};
use crate::multiplier::{Axes, FourierMultiplier, MultiplierPlan};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    /// One-body field, `M^d` values per frame.
    Field,
    /// Pair kernel, `M^{2d}` values per frame.
    Pair,
}

/// Uniformly sampled time series of fields or kernels.
#[derive(Debug, Clone)]
pub struct Series {
    pub grid: GridSpec,
    pub kind: SeriesKind,
    pub dt: f64,
    pub frames: Vec<Vec<C64>>,
}

/// Quantity extracted from each state of a trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Selector {
    Phi,
    LambdaP,
    LambdaC,
    Lambda,
    GammaP,
    GammaC,
    Gamma,
    /// `sh(2k) = 2N Λ_p`.
    Sh2k,
    /// `conj(sh)∘sh = N Γ_p`.
    P2,
}

impl Selector {
    pub fn from_name(name: &str) -> Result<Self> {
        Ok(match name {
            "phi" => Selector::Phi,
            "lambda_p" => Selector::LambdaP,
            "lambda_c" => Selector::LambdaC,
            "lambda" => Selector::Lambda,
            "gamma_p" => Selector::GammaP,
            "gamma_c" => Selector::GammaC,
            "gamma" => Selector::Gamma,
            "sh2k" => Selector::Sh2k,
            "p2" => Selector::P2,
            other => return Err(Error::InvalidArgument(format!("unknown selector {other:?}"))),
        })
    }

    pub fn kind(self) -> SeriesKind {
        if self == Selector::Phi {
            SeriesKind::Field
        } else {
            SeriesKind::Pair
        }
    }

    fn extract(self, s: &HfbState, n_particles: f64) -> Vec<C64> {
        let scaled = |v: &[C64], c: f64| v.iter().map(|z| z * c).collect();
        match self {
            Selector::Phi => s.phi.values.clone(),
            Selector::LambdaP => s.lambda_p.values.clone(),
            Selector::LambdaC => s.lambda_c().values,
            Selector::Lambda => s.lambda().values,
            Selector::GammaP => s.gamma_p.values.clone(),
            Selector::GammaC => s.gamma_c().values,
            Selector::Gamma => s.gamma().values,
            Selector::Sh2k => scaled(&s.lambda_p.values, 2.0 * n_particles),
            Selector::P2 => scaled(&s.gamma_p.values, n_particles),
        }
    }
}

fn check_uniform(times: &[f64]) -> Result<f64> {
    if times.len() < 2 {
        return Ok(0.0);
    }
    let dt = times[1] - times[0];
    if !(dt > 0.0) {
        return Err(Error::NonUniform);
    }
    for w in times.windows(2) {
        if ((w[1] - w[0]) - dt).abs() > 1e-9 * dt {
            return Err(Error::NonUniform);
        }
    }
    Ok(dt)
}

impl Series {
    pub fn new(grid: GridSpec, kind: SeriesKind, dt: f64, frames: Vec<Vec<C64>>) -> Result<Self> {
        let len = match kind {
            SeriesKind::Field => grid.sites(),
            SeriesKind::Pair => grid.sites() * grid.sites(),
        };
        if frames.is_empty() {
            return Err(Error::TooFewSamples { need: 1, got: 0 });
        }
        if frames.iter().any(|f| f.len() != len) {
            return Err(Error::GridMismatch);
        }
        if frames.len() > 1 && !(dt > 0.0) {
            return Err(Error::NonUniform);
        }
        if frames.iter().flatten().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("series"));
        }
        Ok(Series { grid, kind, dt, frames })
    }

    pub fn from_states(states: &[HfbState], n_particles: f64, selector: Selector) -> Result<Self> {
        let first = states.first().ok_or(Error::TooFewSamples { need: 1, got: 0 })?;
        let times: Vec<f64> = states.iter().map(|s| s.t).collect();
        let dt = check_uniform(&times)?;
        let frames = states.iter().map(|s| selector.extract(s, n_particles)).collect();
        Series::new(first.grid(), selector.kind(), dt, frames)
    }

    pub fn from_trajectory(traj: &Trajectory, selector: Selector) -> Result<Self> {
        Self::from_states(&traj.states, traj.meta.n_particles, selector)
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    /// Window length `(n - 1)Δ`.
    pub fn duration(&self) -> f64 {
        (self.len().saturating_sub(1)) as f64 * self.dt
    }

    pub fn scale(&self, c: C64) -> Series {
        self.map(|f| f.iter_mut().for_each(|z| *z *= c))
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        if self.grid != other.grid || self.kind != other.kind || self.len() != other.len() {
            return Err(Error::GridMismatch);
        }
        let frames =
            self.frames.iter().zip(&other.frames).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect()).collect();
        Ok(Series { frames, ..self.clone() })
    }

    fn map(&self, f: impl Fn(&mut Vec<C64>)) -> Series {
        let mut out = self.clone();
        out.frames.iter_mut().for_each(f);
        out
    }

    /// Applies a spatial Fourier multiplier to every frame.
    pub fn apply(&self, m: &FourierMultiplier) -> Result<Series> {
        let fourier = Fourier::new(self.grid.points());
        let d = self.grid.dim();
        match self.kind {
            SeriesKind::Field => {
                if m.axes != Axes::X {
                    return Err(Error::AxesNotApplicable("non-x", "one-body field"));
                }
                let axes: Vec<usize> = (0..d).collect();
                let table: Vec<C64> =
                    (0..self.grid.sites()).map(|f| (m.symbol)(&self.grid.wavevector(f)[..d])).collect();
                Ok(self.map(|fr| {
                    fourier.forward(fr, d, &axes);
                    fr.iter_mut().zip(&table).for_each(|(z, s)| *z *= s);
                    fourier.inverse(fr, d, &axes);
                }))
            }
            SeriesKind::Pair => {
                let plan = MultiplierPlan::new(m, &self.grid);
                Ok(self.map(|fr| plan.apply(&fourier, fr)))
            }
        }
    }

    /// Applies a sequence of multipliers.
    pub fn apply_all(&self, ms: &[FourierMultiplier]) -> Result<Series> {
        let mut out = self.clone();
        for m in ms {
            out = out.apply(m)?;
        }
        Ok(out)
    }

    /// Littlewood–Paley projection; cutoffs beyond the lattice give the
    /// exact identity (balls) or zero (complements, annuli).
    pub fn project(&self, band: Band, var: FreqVar) -> Result<Series> {
        if band.saturates(var, &self.grid) {
            return Ok(match band {
                Band::Below(_) | Band::DyadicBall(_) => self.clone(),
                Band::AtLeast(_) | Band::DyadicAnnulus(_) => {
                    self.map(|f| f.iter_mut().for_each(|z| *z = C64::new(0.0, 0.0)))
                }
            });
        }
        self.apply(&band.multiplier(var))
    }

    pub fn max_abs(&self) -> f64 {
        self.frames.iter().flatten().fold(0.0, |m, z| m.max(z.norm()))
    }
}
