//! Linear pair equation with a collapsing potential
//!
//! `(1/i)∂_t Λ - (Δ_x + Δ_y)Λ = W(x - y)Λ + G + W(x - y)H`, `W = V_N / N`,
//!
//! solved by Strang splitting: exact kinetic half steps around an exact
//! potential phase, with the forcing added by Simpson quadrature of the
//! Duhamel integral. The inequality records compare the two sides of the
//! linear estimates on the computed solution.

use std::f64::consts::FRAC_PI_2;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fft::Fourier;
use crate::field::{PairKernel, Symmetry};
use crate::grid::GridSpec;
use crate::littlewood_paley::{lp_project, Band, FreqVar};
use crate::multiplier::{apply_multiplier, Axes, FourierMultiplier};
use crate::norms::{
    collapsing, diff_outer_norm, dual_restricted, low_collapsing, mixed_norm, strichartz_full, strichartz_xy,
    time_frac_deriv, NormConfig, Ordering, Series, SeriesKind,
};
use crate::potential::PotentialSpec;
use crate::C64;

/// Scalar time profile `amp · cos(ωt + phase)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Envelope {
    Trig { amp: C64, omega: f64, phase: f64 },
}

impl Envelope {
    pub fn constant(amp: C64) -> Self {
        Envelope::Trig { amp, omega: 0.0, phase: 0.0 }
    }

    pub fn at(&self, t: f64) -> C64 {
        match *self {
            Envelope::Trig { amp, omega, phase } => amp * (omega * t + phase).cos(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match *self {
            Envelope::Trig { amp, .. } => amp == C64::new(0.0, 0.0),
        }
    }

    pub fn derivative(&self) -> Self {
        match *self {
            Envelope::Trig { amp, omega, phase } => {
                Envelope::Trig { amp: amp * omega, omega, phase: phase + FRAC_PI_2 }
            }
        }
    }
}

/// `Σ_j e_j(t) A_j(x, y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Forcing {
    pub grid: GridSpec,
    pub terms: Vec<(Envelope, PairKernel)>,
}

impl Forcing {
    pub fn zero(grid: GridSpec) -> Self {
        Forcing { grid, terms: Vec::new() }
    }

    pub fn new(grid: GridSpec, terms: Vec<(Envelope, PairKernel)>) -> Result<Self> {
        if terms.iter().any(|(_, k)| k.grid != grid) {
            return Err(Error::GridMismatch);
        }
        Ok(Forcing { grid, terms })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|(e, k)| e.is_zero() || k.is_zero())
    }

    pub fn at(&self, t: f64) -> Vec<C64> {
        let n = self.grid.sites();
        let mut out = vec![C64::new(0.0, 0.0); n * n];
        for (e, k) in &self.terms {
            let c = e.at(t);
            for (o, v) in out.iter_mut().zip(&k.values) {
                *o += c * v;
            }
        }
        out
    }

    /// Samples at `t = k·dt`, `k < frames`.
    pub fn sample(&self, frames: usize, dt: f64) -> Result<Series> {
        let frames = (0..frames).map(|k| self.at(k as f64 * dt)).collect();
        Series::new(self.grid, SeriesKind::Pair, dt, frames)
    }

    pub fn scale(&self, c: C64) -> Self {
        Forcing { grid: self.grid, terms: self.terms.iter().map(|(e, k)| (*e, k.scale(c))).collect() }
    }

    pub fn concat(&self, other: &Forcing) -> Result<Self> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        Ok(Forcing { grid: self.grid, terms: self.terms.iter().chain(&other.terms).cloned().collect() })
    }

    /// Same kernels with the time derivative of every envelope.
    pub fn derivative(&self) -> Self {
        Forcing { grid: self.grid, terms: self.terms.iter().map(|(e, k)| (e.derivative(), k.clone())).collect() }
    }
}

#[derive(Debug, Clone)]
pub struct LinearProblem {
    pub grid: GridSpec,
    pub pot: PotentialSpec,
    /// `W(x - y) = V_N(x - y) / N` on the pair lattice.
    pub weight: Vec<f64>,
    pub lambda0: PairKernel,
    pub g: Forcing,
    pub h: Forcing,
    pub horizon: f64,
    pub dt: f64,
    pub sample_every: usize,
}

impl LinearProblem {
    pub fn new(
        pot: &PotentialSpec,
        lambda0: PairKernel,
        g: Forcing,
        h: Forcing,
        horizon: f64,
        dt: f64,
        sample_every: usize,
    ) -> Result<Self> {
        let grid = pot.grid();
        if lambda0.grid != grid || g.grid != grid || h.grid != grid {
            return Err(Error::GridMismatch);
        }
        if !(dt > 0.0) || !(horizon >= 0.0) || sample_every == 0 {
            return Err(Error::InvalidArgument(format!(
                "need dt > 0, horizon ≥ 0, sample_every ≥ 1 (got {dt}, {horizon}, {sample_every})"
            )));
        }
        let steps = (horizon / dt).round();
        if (steps * dt - horizon).abs() > 1e-9 * horizon.max(1.0) || !(steps as usize).is_multiple_of(sample_every) {
            return Err(Error::InvalidArgument(format!(
                "dt = {dt} and sample_every = {sample_every} must divide the horizon {horizon}"
            )));
        }
        let n = grid.sites();
        let mut weight = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                weight.push(pot.scaled.values[grid.difference(x, y)].re / pot.n_particles);
            }
        }
        Ok(LinearProblem { grid, pot: pot.clone(), weight, lambda0, g, h, horizon, dt, sample_every })
    }

    pub fn steps(&self) -> usize {
        (self.horizon / self.dt).round() as usize
    }

    pub fn weight_sup(&self) -> f64 {
        self.weight.iter().fold(0.0, |m, w| m.max(w.abs()))
    }

    pub fn with_forcing(&self, lambda0: PairKernel, g: Forcing, h: Forcing) -> Result<Self> {
        LinearProblem::new(&self.pot, lambda0, g, h, self.horizon, self.dt, self.sample_every)
    }

    /// `W ⊙ values`.
    pub fn weighted(&self, values: &[C64]) -> Vec<C64> {
        values.iter().zip(&self.weight).map(|(v, w)| v * w).collect()
    }

    /// Total source `W(Λ + H) + G` at time `t` for the given `Λ` values.
    pub fn source(&self, lambda: &[C64], t: f64) -> Vec<C64> {
        let h = self.h.at(t);
        let g = self.g.at(t);
        lambda.iter().zip(&h).zip(&g).zip(&self.weight).map(|(((l, h), g), w)| (l + h) * w + g).collect()
    }

    fn sample_dt(&self) -> f64 {
        self.dt * self.sample_every as f64
    }

    fn frames(&self) -> usize {
        self.steps() / self.sample_every + 1
    }
}

/// Seeded band-limited data for the validator.
#[derive(Debug, Clone, PartialEq)]
pub struct ManufacturedData {
    pub lambda0: PairKernel,
    pub g: Forcing,
    pub h: Forcing,
}

fn random_symmetric(grid: GridSpec, band: f64, rng: &mut ChaCha8Rng) -> Result<PairKernel> {
    let n = grid.sites();
    let values = (0..n * n).map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    let mut k = PairKernel::raw(grid, values, Symmetry::None);
    k.symmetrize(Symmetry::Symmetric);
    let k = lp_project(&k, Band::Below(band), FreqVar::Xi)?;
    let mut k = lp_project(&k, Band::Below(band), FreqVar::Eta)?;
    k.symmetrize(Symmetry::Symmetric);
    let l2 = k.norm_l2();
    Ok(if l2 > 0.0 { k.scale(C64::new(1.0 / l2, 0.0)) } else { k })
}

fn random_envelope(rng: &mut ChaCha8Rng, amplitude: f64) -> Envelope {
    Envelope::Trig {
        amp: C64::from_polar(amplitude, rng.gen_range(0.0..std::f64::consts::TAU)),
        omega: rng.gen_range(0.5..3.0),
        phase: rng.gen_range(0.0..std::f64::consts::TAU),
    }
}

/// Unit-`L²` symmetric kernels limited to `|ξ|, |η| < 2·band`, scaled by
/// `amplitude`: `Λ₀`, two `G` terms and one `H` term.
pub fn manufacture_data(seed: u64, grid: GridSpec, band: f64, amplitude: f64) -> Result<ManufacturedData> {
    if !(band > 0.0) || band > grid.max_frequency() {
        return Err(Error::CutoffAboveNyquist { cutoff: band, limit: grid.max_frequency() });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = C64::new(amplitude, 0.0);
    let lambda0 = random_symmetric(grid, band, &mut rng)?.scale(a);
    let mut g = Vec::new();
    for _ in 0..2 {
        let k = random_symmetric(grid, band, &mut rng)?;
        g.push((random_envelope(&mut rng, amplitude), k));
    }
    let k = random_symmetric(grid, band, &mut rng)?;
    let h = vec![(random_envelope(&mut rng, amplitude), k)];
    Ok(ManufacturedData { lambda0, g: Forcing::new(grid, g)?, h: Forcing::new(grid, h)? })
}

fn laplacian(k: &PairKernel, fourier: &Fourier, k2: &[f64]) -> PairKernel {
    let g = k.grid;
    let n = g.sites();
    let mut v = k.values.clone();
    let axes: Vec<usize> = (0..2 * g.dim()).collect();
    fourier.forward(&mut v, 2 * g.dim(), &axes);
    for x in 0..n {
        for y in 0..n {
            v[x * n + y] *= -(k2[x] + k2[y]);
        }
    }
    fourier.inverse(&mut v, 2 * g.dim(), &axes);
    PairKernel::raw(g, v, Symmetry::None)
}

/// Problem whose exact solution is `Λ*(t) = Σ e_j(t) A_j`: `Λ₀ = Λ*(0)`,
/// `G = SΛ* - WΛ*`, `H = 0`.
pub fn manufactured_problem(
    pot: &PotentialSpec,
    exact: &Forcing,
    horizon: f64,
    dt: f64,
    sample_every: usize,
) -> Result<LinearProblem> {
    let grid = pot.grid();
    let zero = Forcing::zero(grid);
    let n = grid.sites();
    let lambda0 = PairKernel::raw(grid, exact.at(0.0), Symmetry::None);
    let shell = LinearProblem::new(pot, lambda0, zero.clone(), zero.clone(), horizon, dt, sample_every)?;
    let fourier = Fourier::new(grid.points());
    let k2 = grid.wavenumber_squared();
    let mut terms = Vec::new();
    for (e, a) in &exact.terms {
        terms.push((e.derivative(), a.scale(C64::new(0.0, -1.0))));
        let lap = laplacian(a, &fourier, &k2);
        let wa = shell.weighted(&a.values);
        let values = (0..n * n).map(|i| -lap.values[i] - wa[i]).collect();
        terms.push((*e, PairKernel::raw(grid, values, Symmetry::None)));
    }
    shell.with_forcing(shell.lambda0.clone(), Forcing::new(grid, terms)?, zero)
}

/// Evolves the linear problem; frames every `sample_every` steps from
/// `t = 0` to the horizon.
pub fn solve_linear(prob: &LinearProblem) -> Result<Series> {
    let g = prob.grid;
    let dt = prob.dt;
    if dt * prob.weight_sup() > 1.0 {
        return Err(Error::StabilityBound(dt * prob.weight_sup()));
    }
    let n = g.sites();
    let fourier = Fourier::new(g.points());
    let axes: Vec<usize> = (0..2 * g.dim()).collect();
    let k2 = g.wavenumber_squared();
    let half: Vec<C64> = k2.iter().map(|k| C64::from_polar(1.0, -k * dt / 2.0)).collect();
    let kinetic = |m: &mut Vec<C64>| {
        fourier.forward(m, 2 * g.dim(), &axes);
        for x in 0..n {
            for y in 0..n {
                m[x * n + y] *= half[x] * half[y];
            }
        }
        fourier.inverse(m, 2 * g.dim(), &axes);
    };
    let full: Vec<C64> = prob.weight.iter().map(|w| C64::from_polar(1.0, w * dt)).collect();
    let mid: Vec<C64> = prob.weight.iter().map(|w| C64::from_polar(1.0, w * dt / 2.0)).collect();
    let forced = !(prob.g.is_zero() && prob.h.is_zero());
    let forcing = |t: f64| {
        let mut f = prob.g.at(t);
        for ((f, h), w) in f.iter_mut().zip(prob.h.at(t)).zip(&prob.weight) {
            *f += h * w;
        }
        f
    };

    let mut lambda = prob.lambda0.values.clone();
    let mut frames = vec![lambda.clone()];
    let c = C64::new(0.0, dt / 6.0);
    for step in 0..prob.steps() {
        let t = step as f64 * dt;
        kinetic(&mut lambda);
        if forced {
            let (f0, f1, f2) = (forcing(t), forcing(t + dt / 2.0), forcing(t + dt));
            for i in 0..n * n {
                lambda[i] = full[i] * lambda[i] + c * (full[i] * f0[i] + 4.0 * mid[i] * f1[i] + f2[i]);
            }
        } else {
            for (l, e) in lambda.iter_mut().zip(&full) {
                *l *= e;
            }
        }
        kinetic(&mut lambda);
        if lambda.iter().any(|z| !z.is_finite()) {
            return Err(Error::NonFinite("linear solution"));
        }
        if (step + 1) % prob.sample_every == 0 {
            frames.push(lambda.clone());
        }
    }
    Series::new(g, SeriesKind::Pair, prob.sample_dt(), frames)
}

/// One side-by-side evaluation of an inequality.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityRecord {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs / rhs`, or 0 when degenerate.
    pub ratio: f64,
    pub degenerate: bool,
    pub n_particles: f64,
    pub lhs_terms: Vec<(String, f64)>,
    pub rhs_terms: Vec<(String, f64)>,
}

pub const DEGENERATE_RHS: f64 = 1e-14;

impl InequalityRecord {
    fn new(name: &str, n: f64, lhs_terms: Vec<(String, f64)>, rhs_terms: Vec<(String, f64)>) -> Self {
        let lhs: f64 = lhs_terms.iter().map(|t| t.1).sum();
        let rhs: f64 = rhs_terms.iter().map(|t| t.1).sum();
        let degenerate = rhs <= DEGENERATE_RHS;
        InequalityRecord {
            name: name.to_string(),
            lhs,
            rhs,
            ratio: if degenerate { 0.0 } else { lhs / rhs },
            degenerate,
            n_particles: n,
            lhs_terms,
            rhs_terms,
        }
    }
}

pub const INEQUALITY_NAMES: [&str; 11] = [
    "main",
    "full_collapsing",
    "low_collapsing",
    "strichartz",
    "sxy_sum_variable",
    "sxy_diff_variable",
    "dt_l6",
    "collapsing",
    "collapsing_xy",
    "collapsing_sum",
    "collapsing_dt",
];

fn half(axes: Axes) -> FourierMultiplier {
    FourierMultiplier::bracket(axes, 0.5)
}

/// `⟨∇_{x-y}⟩^{1/2} + ⟨∇_{x+y}⟩^{1/2}`.
fn half_diff_plus_sum() -> FourierMultiplier {
    FourierMultiplier::new(Axes::Both, |z| {
        let d = z.len() / 2;
        let (mut m, mut p) = (1.0, 1.0);
        for a in 0..d {
            m += (z[a] - z[d + a]).powi(2);
            p += (z[a] + z[d + a]).powi(2);
        }
        C64::new(m.powf(0.25) + p.powf(0.25), 0.0)
    })
}

fn l2_diff_l2(s: &Series, q: f64) -> Result<f64> {
    mixed_norm(s, 2.0, q, 2.0, Ordering::DiffThenSum)
}

const SIX: f64 = 6.0;
const SIX_FIFTHS: f64 = 1.2;

struct Ctx<'a> {
    prob: &'a LinearProblem,
    cfg: &'a NormConfig,
    pairs: Vec<crate::norms::AdmissiblePair>,
    duals: Vec<crate::norms::AdmissiblePair>,
}

impl Ctx<'_> {
    fn dt14(&self, s: &Series) -> Result<Series> {
        time_frac_deriv(s, 0.25, self.cfg.taper())
    }

    fn initial(&self, k: &PairKernel, m: &FourierMultiplier) -> Result<f64> {
        Ok(apply_multiplier(k, m)?.norm_l2())
    }

    fn low(&self, s: &Series) -> Result<f64> {
        low_collapsing(s, self.prob.pot.n_particles, self.cfg.low_factor)
    }

    fn dual(&self, s: &Series) -> Result<f64> {
        dual_restricted(s, &self.duals)
    }
}

fn term(name: &str, v: f64) -> (String, f64) {
    (name.to_string(), v)
}

fn source_series(prob: &LinearProblem, sol: &Series) -> Result<Series> {
    let frames = sol.frames.iter().enumerate().map(|(k, l)| prob.source(l, k as f64 * sol.dt)).collect();
    Series::new(sol.grid, SeriesKind::Pair, sol.dt, frames)
}

/// Evaluates the named inequalities on `sol`, the solution of `prob`.
/// Unknown names error; degenerate right-hand sides are flagged.
pub fn evaluate_inequalities(
    sol: &Series,
    prob: &LinearProblem,
    which: &[&str],
    cfg: &NormConfig,
) -> Result<Vec<InequalityRecord>> {
    if sol.grid != prob.grid || sol.len() != prob.frames() || (sol.dt - prob.sample_dt()).abs() > 1e-12 * sol.dt {
        return Err(Error::InconsistentScenario("solution and problem lattices differ".into()));
    }
    let d = prob.grid.dim();
    let ctx = Ctx { prob, cfg, pairs: cfg.pairs(d)?, duals: cfg.duals(d)? };
    let n = prob.pot.n_particles;
    let eps = prob.pot.epsilon;
    let frames = sol.len();
    let hxy = FourierMultiplier::half_xy();
    let g = prob.g.sample(frames, sol.dt)?;
    let h = prob.h.sample(frames, sol.dt)?;
    let total = source_series(prob, sol)?;
    let l0 = &prob.lambda0;

    let mut out = Vec::new();
    for &name in which {
        let rec = match name {
            "main" => {
                let lhs = vec![
                    term("S_xy", strichartz_xy(&sol.apply(&hxy)?, &ctx.pairs)?),
                    term("low_collapsing_sum", ctx.low(&sol.apply(&half(Axes::XPlusY))?)?),
                    term("low_collapsing_dt", ctx.low(&ctx.dt14(sol)?)?),
                ];
                let rhs = vec![
                    term("G_dual", ctx.dual(&g.apply(&hxy)?)?),
                    term("H_l2_l6_l2", eps * l2_diff_l2(&h.apply(&hxy)?, SIX)?),
                    term("H_collapsing_sum", eps * collapsing(&h.apply(&half(Axes::XPlusY))?)?),
                    term("H_collapsing_dt", eps * collapsing(&ctx.dt14(&h)?)?),
                    term("H_collapsing_x", eps * collapsing(&h.apply(&half(Axes::X))?)?),
                    term("H_collapsing_y", eps * collapsing(&h.apply(&half(Axes::Y))?)?),
                    term("initial", ctx.initial(l0, &hxy)?),
                ];
                InequalityRecord::new(name, n, lhs, rhs)
            }
            "full_collapsing" | "low_collapsing" => {
                let zero = Forcing::zero(prob.grid);
                let owned;
                let (u, p) = if prob.h.is_zero() {
                    (sol, prob)
                } else {
                    owned = prob.with_forcing(l0.clone(), prob.g.clone(), zero)?;
                    (&solve_linear(&owned)?, &owned)
                };
                let u = u.clone();
                let (a, b) = (u.apply(&half(Axes::XPlusY))?, ctx.dt14(&u)?);
                let lhs = if name == "full_collapsing" {
                    vec![term("collapsing_sum", collapsing(&a)?), term("collapsing_dt", collapsing(&b)?)]
                } else {
                    vec![term("low_collapsing_sum", ctx.low(&a)?), term("low_collapsing_dt", ctx.low(&b)?)]
                };
                let rhs = vec![
                    term("G_dual", ctx.dual(&p.g.sample(frames, sol.dt)?.apply(&hxy)?)?),
                    term("initial", ctx.initial(l0, &hxy)?),
                ];
                InequalityRecord::new(name, n, lhs, rhs)
            }
            "strichartz" => {
                let potential = total.add(&g.scale(C64::new(-1.0, 0.0)))?;
                let lhs = vec![term("S", strichartz_full(sol, &ctx.pairs)?)];
                let rhs = vec![
                    term("potential_l2_l65_l2", l2_diff_l2(&potential, SIX_FIFTHS)?),
                    term("G_dual", ctx.dual(&g)?),
                    term("initial", l0.norm_l2()),
                ];
                InequalityRecord::new(name, n, lhs, rhs)
            }
            "sxy_sum_variable" | "sxy_diff_variable" => {
                let zero_prob = prob.with_forcing(
                    PairKernel::zeros(prob.grid, Symmetry::Symmetric),
                    prob.g.clone(),
                    prob.h.clone(),
                )?;
                let u = solve_linear(&zero_prob)?;
                let f = source_series(&zero_prob, &u)?;
                let (fs, ft) = (f.apply(&half(Axes::XPlusY))?, ctx.dt14(&f)?);
                if name == "sxy_sum_variable" {
                    let lhs = vec![term("S_xy", strichartz_xy(&u, &ctx.pairs)?)];
                    let rhs = vec![
                        term("f_sum_l1_l2_l2", diff_outer_norm(&fs, 1.0)?),
                        term("f_dt_l1_l2_l2", diff_outer_norm(&ft, 1.0)?),
                    ];
                    InequalityRecord::new(name, n, lhs, rhs)
                } else {
                    let lhs = vec![term("S_xy_diff", strichartz_xy(&u.apply(&half(Axes::XMinusY))?, &ctx.pairs)?)];
                    let rhs = vec![
                        term("f_sum_l2_l65_l2", l2_diff_l2(&fs, SIX_FIFTHS)?),
                        term("f_dt_l2_l65_l2", l2_diff_l2(&ft, SIX_FIFTHS)?),
                    ];
                    InequalityRecord::new(name, n, lhs, rhs)
                }
            }
            "dt_l6" => {
                let q = half_diff_plus_sum();
                let qf = total.apply(&q)?;
                let options =
                    [l2_diff_l2(&ctx.dt14(&total)?, SIX_FIFTHS)?, l2_diff_l2(&qf, SIX_FIFTHS)?, ctx.dual(&qf)?];
                let lhs = vec![term("dt_l2_l6_l2", l2_diff_l2(&ctx.dt14(sol)?, SIX)?)];
                let rhs = vec![
                    term("f_min", options.iter().cloned().fold(f64::INFINITY, f64::min)),
                    term("initial", ctx.initial(l0, &q)?),
                ];
                InequalityRecord::new(name, n, lhs, rhs)
            }
            "collapsing" => {
                let (hx, hy) = (half(Axes::X), half(Axes::Y));
                let bx = ctx.dual(&total.apply(&hx)?)? + ctx.initial(l0, &hx)?;
                let by = ctx.dual(&total.apply(&hy)?)? + ctx.initial(l0, &hy)?;
                let lhs = vec![term("collapsing", collapsing(sol)?)];
                InequalityRecord::new(name, n, lhs, vec![term("min_xy", bx.min(by))])
            }
            "collapsing_xy" | "collapsing_sum" | "collapsing_dt" => {
                let lhs = match name {
                    "collapsing_xy" => vec![
                        term("collapsing_x", collapsing(&sol.apply(&half(Axes::X))?)?),
                        term("collapsing_y", collapsing(&sol.apply(&half(Axes::Y))?)?),
                    ],
                    "collapsing_sum" => vec![term("collapsing_sum", collapsing(&sol.apply(&half(Axes::XPlusY))?)?)],
                    _ => vec![term("collapsing_dt", collapsing(&ctx.dt14(sol)?)?)],
                };
                let rhs = vec![term("f_dual", ctx.dual(&total.apply(&hxy)?)?), term("initial", ctx.initial(l0, &hxy)?)];
                InequalityRecord::new(name, n, lhs, rhs)
            }
            other => return Err(Error::InvalidArgument(format!("unknown inequality {other:?}"))),
        };
        if !(rec.lhs.is_finite() && rec.rhs.is_finite()) {
            return Err(Error::NonFinite("inequality side"));
        }
        out.push(rec);
    }
    Ok(out)
}

/// `max/min` of the ratios of one named inequality across runs, skipping
/// degenerate records.
pub fn ratio_spread(records: &[InequalityRecord], name: &str) -> Option<f64> {
    let r: Vec<f64> = records.iter().filter(|r| r.name == name && !r.degenerate).map(|r| r.ratio).collect();
    if r.len() < 2 {
        return None;
    }
    let max = r.iter().cloned().fold(f64::MIN, f64::max);
    let min = r.iter().cloned().fold(f64::MAX, f64::min);
    Some(max / min)
}
