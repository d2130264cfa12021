use std::time::Instant;

use hfb_core::evolution::{gaussian, rank_one_kernel, HfbSolver, InitOptions, Trajectory};
use hfb_core::linear::{
    evaluate_inequalities, manufacture_data, ratio_spread, solve_linear, InequalityRecord, LinearProblem,
};
use hfb_core::norms::{norm_report, uniform_in_n_report, GrowthSummary, NormReport};
use log::info;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::ScenarioConfig;
use crate::error::HarnessError;

/// Norms and conservation diagnostics of one `(scenario, N)` run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioResult {
    pub report: NormReport,
    pub drift_trace: f64,
    pub drift_energy: f64,
    /// Wall time of the evolution and norm evaluation, seconds. Not part
    /// of any emitted artifact.
    #[serde(skip)]
    pub seconds: f64,
}

/// Evolves the scenario at one `N`.
pub fn simulate(cfg: &ScenarioConfig, n: f64) -> Result<(HfbSolver, Trajectory), HarnessError> {
    let grid = cfg.grid()?;
    let pot = cfg.potential(&grid, n)?;
    let solver = HfbSolver::new(&pot)?;
    let e = gaussian(grid, cfg.k0_sigma);
    let k0 = rank_one_kernel(&e, cfg.k0_amplitude);
    let phi = gaussian(grid, cfg.phi_sigma);
    let opts = InitOptions { shadows: cfg.shadows, ..InitOptions::default() };
    let state = solver.init_state(&phi, &k0, opts)?;
    let traj = solver.evolve(&state, cfg.t_final, cfg.dt, cfg.sample_every)?;
    Ok((solver, traj))
}

pub fn run_scenario(cfg: &ScenarioConfig, n: f64) -> Result<ScenarioResult, HarnessError> {
    let start = Instant::now();
    let (solver, traj) = simulate(cfg, n)?;
    let names: Vec<&str> = cfg.norms.iter().map(String::as_str).collect();
    let report = norm_report(&traj, Some(&solver), &names, &cfg.norm, &cfg.id)?;
    let seconds = start.elapsed().as_secs_f64();
    info!("{} N={n}: {:.1}s", cfg.id, seconds);
    Ok(ScenarioResult { report, drift_trace: traj.max_drift_trace(), drift_energy: traj.max_drift_energy(), seconds })
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool, HarnessError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| HarnessError::Io(format!("thread pool: {e}")))
}

/// Runs every `N` of the scenario on `jobs` workers; results keep the order
/// of `n_list`.
pub fn run_all(cfg: &ScenarioConfig, jobs: usize) -> Result<Vec<ScenarioResult>, HarnessError> {
    cfg.validate()?;
    pool(jobs)?.install(|| cfg.n_list.par_iter().map(|&n| run_scenario(cfg, n)).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub scenario_id: String,
    pub n_list: Vec<f64>,
    pub growth: GrowthSummary,
    pub drift_trace: Vec<f64>,
    pub drift_energy: Vec<f64>,
}

pub fn sweep_n(cfg: &ScenarioConfig, jobs: usize) -> Result<(Vec<ScenarioResult>, SweepSummary), HarnessError> {
    if cfg.n_list.len() < 2 {
        return Err(HarnessError::Validation(format!("n_list: need ≥ 2 values (got {})", cfg.n_list.len())));
    }
    let results = run_all(cfg, jobs)?;
    let reports: Vec<NormReport> = results.iter().map(|r| r.report.clone()).collect();
    let summary = SweepSummary {
        scenario_id: cfg.id.clone(),
        n_list: cfg.n_list.clone(),
        growth: uniform_in_n_report(&reports)?,
        drift_trace: results.iter().map(|r| r.drift_trace).collect(),
        drift_energy: results.iter().map(|r| r.drift_energy).collect(),
    };
    Ok((results, summary))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearSummary {
    pub scenario_id: String,
    pub seed: u64,
    pub n_list: Vec<f64>,
    /// `max/min` of each inequality's ratio across `N`.
    pub spreads: Vec<(String, Option<f64>)>,
    pub records: Vec<InequalityRecord>,
}

/// Solves the linear model on the same seeded data for every `N` and
/// evaluates the configured inequalities.
pub fn validate_linear(cfg: &ScenarioConfig, jobs: usize) -> Result<LinearSummary, HarnessError> {
    cfg.validate()?;
    let grid = cfg.grid()?;
    let l = &cfg.linear;
    let data = manufacture_data(cfg.seed, grid, l.band, l.amplitude)?;
    let names: Vec<&str> = l.inequalities.iter().map(String::as_str).collect();
    let per_n: Vec<Vec<InequalityRecord>> = pool(jobs)?.install(|| {
        l.n_list
            .par_iter()
            .map(|&n| {
                let pot = cfg.potential(&grid, n)?;
                let prob = LinearProblem::new(
                    &pot,
                    data.lambda0.clone(),
                    data.g.clone(),
                    data.h.clone(),
                    l.horizon,
                    l.dt,
                    l.sample_every,
                )?;
                let sol = solve_linear(&prob)?;
                Ok(evaluate_inequalities(&sol, &prob, &names, &cfg.norm)?)
            })
            .collect::<Result<_, HarnessError>>()
    })?;
    let records: Vec<InequalityRecord> = per_n.into_iter().flatten().collect();
    let spreads = names.iter().map(|n| (n.to_string(), ratio_spread(&records, n))).collect();
    Ok(LinearSummary { scenario_id: cfg.id.clone(), seed: cfg.seed, n_list: l.n_list.clone(), spreads, records })
}
