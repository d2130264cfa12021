use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evolution::{HfbSolver, Trajectory};
use crate::littlewood_paley::{Band, FreqVar};
use crate::multiplier::{Axes, FourierMultiplier};

use super::mixed::{
    admissible_pairs, collapsing, dual_exponents, dual_restricted, low_collapsing, mixed_norm, strichartz_field,
    strichartz_full, strichartz_xy, AdmissiblePair, Ordering,
};
use super::series::{Selector, Series, SeriesKind};
use super::time::{time_frac_deriv, Taper};

/// Names understood by [`evaluate_norm`].
pub const NORM_NAMES: [&str; 11] = [
    "S_xy",
    "S_full",
    "S_dual_r",
    "collapsing",
    "low_collapsing",
    "N1_lambda_p",
    "N2_lambda_c",
    "phi_S",
    "sh2k_S_xy",
    "p2_S_xy",
    "apriori_gamma",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct NormConfig {
    pub admissible_count: usize,
    pub dual_count: usize,
    /// Lower end of the dual range; `None` means 1.1 times the admissible
    /// endpoint (4.4 in one dimension, 2.2 otherwise).
    pub dual_p0: Option<f64>,
    pub dual_p1: f64,
    /// `10` in `P_{|ξ|≥10N}`, `P_{|ξ-η|≥10N}`.
    pub high_factor: f64,
    /// `1/10` in `P_{|ξ+η|≥N/10}`.
    pub sum_factor: f64,
    /// `20` in the low collapsing projections.
    pub low_factor: f64,
    /// Derivative order in the a-priori norm of `Γ`.
    pub alpha: f64,
    pub hann_taper: bool,
}

impl Default for NormConfig {
    fn default() -> Self {
        NormConfig {
            admissible_count: 6,
            dual_count: 6,
            dual_p0: None,
            dual_p1: 64.0,
            high_factor: 10.0,
            sum_factor: 0.1,
            low_factor: 20.0,
            alpha: 1.0,
            hann_taper: true,
        }
    }
}

impl NormConfig {
    pub fn pairs(&self, d: usize) -> Result<Vec<AdmissiblePair>> {
        admissible_pairs(d, self.admissible_count)
    }

    pub fn duals(&self, d: usize) -> Result<Vec<AdmissiblePair>> {
        let p0 = self.dual_p0.unwrap_or(if d == 1 { 4.4 } else { 2.2 });
        dual_exponents(d, self.dual_count, p0, self.dual_p1)
    }

    pub fn taper(&self) -> Taper {
        if self.hann_taper {
            Taper::Hann
        } else {
            Taper::None
        }
    }
}

fn half(axes: Axes) -> FourierMultiplier {
    FourierMultiplier::bracket(axes, 0.5)
}

/// `L²(dt) L⁶(d(x-y)) L²(d(x+y))`.
fn l2_l6_l2(s: &Series) -> Result<f64> {
    mixed_norm(s, 2.0, 6.0, 2.0, Ordering::DiffThenSum)
}

/// The six terms of the `Λ_p` norm.
fn n1_terms(lp: &Series, n: f64, cfg: &NormConfig) -> Result<[f64; 6]> {
    let d = lp.grid.dim();
    let pairs = cfg.pairs(d)?;
    let taper = cfg.taper();
    let t1 = strichartz_xy(&lp.apply(&FourierMultiplier::half_xy())?, &pairs)?;
    let t2 = low_collapsing(&lp.apply(&half(Axes::XPlusY))?, n, cfg.low_factor)?;
    let t3 = low_collapsing(&time_frac_deriv(lp, 0.25, taper)?, n, cfg.low_factor)?;
    let high = cfg.high_factor * n;
    let far = lp
        .project(Band::AtLeast(high), FreqVar::Xi)?
        .project(Band::AtLeast(high), FreqVar::Eta)?
        .project(Band::AtLeast(cfg.sum_factor * n), FreqVar::XiPlusEta)?;
    let t4 = l2_l6_l2(&far.apply(&FourierMultiplier::half_xy())?)?;
    let diag = lp
        .project(Band::AtLeast(high), FreqVar::XiMinusEta)?
        .project(Band::Below(cfg.sum_factor * n), FreqVar::XiPlusEta)?;
    let t5 = l2_l6_l2(&diag.apply(&half(Axes::XPlusY))?.apply(&half(Axes::XMinusY))?)?;
    let t6 = l2_l6_l2(&time_frac_deriv(&diag.apply(&half(Axes::XMinusY))?, 0.25, taper)?)?;
    Ok([t1, t2, t3, t4, t5, t6])
}

/// The six terms of the `Λ_c` norm.
fn n2_terms(lc: &Series, cfg: &NormConfig) -> Result<[f64; 6]> {
    let pairs = cfg.pairs(lc.grid.dim())?;
    Ok([
        strichartz_xy(&lc.apply(&FourierMultiplier::half_xy())?, &pairs)?,
        collapsing(&lc.apply(&half(Axes::XPlusY))?)?,
        collapsing(&time_frac_deriv(lc, 0.25, cfg.taper())?)?,
        collapsing(&lc.apply(&half(Axes::X))?)?,
        collapsing(&lc.apply(&half(Axes::Y))?)?,
        l2_l6_l2(&lc.apply(&FourierMultiplier::half_xy())?)?,
    ])
}

/// Forcing of the `Λ_p` equation along the trajectory.
fn forcing_series(traj: &Trajectory, solver: &HfbSolver) -> Result<Series> {
    let frames = traj.states.iter().map(|s| solver.lambda_p_forcing(s).values).collect();
    Series::new(traj.grid, SeriesKind::Pair, traj.sample_interval(), frames)
}

/// Evaluates one named norm on a trajectory. `solver` is only needed for
/// `S_dual_r`, which measures the forcing of the `Λ_p` equation.
pub fn evaluate_norm(name: &str, traj: &Trajectory, solver: Option<&HfbSolver>, cfg: &NormConfig) -> Result<f64> {
    let d = traj.grid.dim();
    let n = traj.meta.n_particles;
    let series = |sel| Series::from_trajectory(traj, sel);
    let hxy = FourierMultiplier::half_xy();
    let pairs = cfg.pairs(d)?;
    let value = match name {
        "S_xy" => strichartz_xy(&series(Selector::Lambda)?.apply(&hxy)?, &pairs)?,
        "S_full" => strichartz_full(&series(Selector::Lambda)?.apply(&hxy)?, &pairs)?,
        "S_dual_r" => {
            let solver = solver.ok_or_else(|| Error::InvalidArgument("S_dual_r needs the solver".into()))?;
            dual_restricted(&forcing_series(traj, solver)?.apply(&hxy)?, &cfg.duals(d)?)?
        }
        "collapsing" => collapsing(&series(Selector::Lambda)?.apply(&half(Axes::XPlusY))?)?,
        "low_collapsing" => low_collapsing(&series(Selector::LambdaP)?.apply(&half(Axes::XPlusY))?, n, cfg.low_factor)?,
        "N1_lambda_p" => n1_terms(&series(Selector::LambdaP)?, n, cfg)?.iter().sum(),
        "N2_lambda_c" => n2_terms(&series(Selector::LambdaC)?, cfg)?.iter().sum(),
        "phi_S" => strichartz_field(&series(Selector::Phi)?.apply(&half(Axes::X))?, &pairs)?,
        "sh2k_S_xy" => strichartz_xy(&series(Selector::Sh2k)?, &pairs)?,
        "p2_S_xy" => strichartz_xy(&series(Selector::P2)?, &pairs)?,
        "apriori_gamma" => {
            let g = series(Selector::Gamma)?.apply(&FourierMultiplier::bracket(Axes::XPlusY, cfg.alpha))?;
            mixed_norm(&g, 8.0, f64::INFINITY, 4.0 / 3.0, Ordering::DiffThenSum)?
        }
        other => return Err(Error::InvalidArgument(format!("unknown norm {other:?}"))),
    };
    if !value.is_finite() || value < 0.0 {
        return Err(Error::NonFinite("norm value"));
    }
    Ok(value)
}

/// Named norm values of one scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormReport {
    pub scenario_id: String,
    pub n_particles: f64,
    pub epsilon: f64,
    pub beta: f64,
    pub t_final: f64,
    pub dt: f64,
    pub dim: usize,
    pub points: usize,
    pub length: f64,
    pub entries: BTreeMap<String, f64>,
}

pub fn norm_report(
    traj: &Trajectory,
    solver: Option<&HfbSolver>,
    names: &[&str],
    cfg: &NormConfig,
    scenario_id: &str,
) -> Result<NormReport> {
    let mut entries = BTreeMap::new();
    for name in names {
        entries.insert(name.to_string(), evaluate_norm(name, traj, solver, cfg)?);
    }
    Ok(NormReport {
        scenario_id: scenario_id.to_string(),
        n_particles: traj.meta.n_particles,
        epsilon: traj.meta.epsilon,
        beta: traj.meta.beta,
        t_final: traj.meta.t_final,
        dt: traj.meta.dt,
        dim: traj.grid.dim(),
        points: traj.grid.points(),
        length: traj.grid.length(),
        entries,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthEntry {
    /// `max / min` across `N`.
    pub ratio: f64,
    /// Strictly increasing in `N`.
    pub monotone_growth: bool,
    /// `(N, value)` sorted by `N`.
    pub values: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthSummary {
    pub entries: BTreeMap<String, GrowthEntry>,
}

/// Max/min ratios of each norm across a sweep in `N`.
pub fn uniform_in_n_report(runs: &[NormReport]) -> Result<GrowthSummary> {
    let mut ns: Vec<f64> = runs.iter().map(|r| r.n_particles).collect();
    ns.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ns.dedup();
    if ns.len() < 2 {
        return Err(Error::NeedTwoN(ns.len()));
    }
    let first = &runs[0];
    for r in runs {
        let same = r.epsilon == first.epsilon
            && r.beta == first.beta
            && r.t_final == first.t_final
            && r.dt == first.dt
            && (r.dim, r.points, r.length) == (first.dim, first.points, first.length)
            && r.entries.keys().eq(first.entries.keys());
        if !same {
            return Err(Error::InconsistentScenario(format!(
                "{} differs from {} in more than N",
                r.scenario_id, first.scenario_id
            )));
        }
    }
    let mut sorted: Vec<&NormReport> = runs.iter().collect();
    sorted.sort_by(|a, b| a.n_particles.partial_cmp(&b.n_particles).unwrap());
    let mut entries = BTreeMap::new();
    for name in first.entries.keys() {
        let values: Vec<(f64, f64)> = sorted.iter().map(|r| (r.n_particles, r.entries[name])).collect();
        let max = values.iter().map(|v| v.1).fold(f64::NEG_INFINITY, f64::max);
        let min = values.iter().map(|v| v.1).fold(f64::INFINITY, f64::min);
        let ratio = if max == 0.0 { 1.0 } else { max / min };
        let monotone_growth = values.windows(2).all(|w| w[1].1 > w[0].1);
        entries.insert(name.clone(), GrowthEntry { ratio, monotone_growth, values });
    }
    Ok(GrowthSummary { entries })
}
