use hfb_core::norms::{NormConfig, NORM_NAMES};
use hfb_core::potential::PotentialSpec;
use hfb_core::GridSpec;
use serde::{Deserialize, Serialize};

use crate::error::HarnessError;

fn default_norms() -> Vec<String> {
    NORM_NAMES.iter().map(|s| s.to_string()).collect()
}

/// One experiment: grid, potential family, initial data, time lattice and
/// the norms to record. Defaults are the standard one-dimensional scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub id: String,
    pub dim: usize,
    pub points: usize,
    pub length: f64,
    pub n_list: Vec<f64>,
    pub beta: f64,
    pub epsilon: f64,
    /// Width of the Gaussian condensate profile.
    pub phi_sigma: f64,
    /// Rank-one `k₀ = a·e⊗e` with `e` a unit Gaussian of this width.
    pub k0_amplitude: f64,
    pub k0_sigma: f64,
    pub t_final: f64,
    pub dt: f64,
    pub sample_every: usize,
    pub shadows: bool,
    pub norms: Vec<String>,
    pub seed: u64,
    pub csv: String,
    pub json: String,
    pub norm: NormConfig,
    pub linear: LinearConfig,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            id: "standard".into(),
            dim: 1,
            points: 128,
            length: 16.0,
            n_list: vec![8.0],
            beta: 1.0,
            epsilon: 0.05,
            phi_sigma: 1.0,
            k0_amplitude: 0.1,
            k0_sigma: 1.0,
            t_final: 1.0,
            dt: 1e-3,
            sample_every: 10,
            shadows: false,
            norms: default_norms(),
            seed: 0,
            csv: "results.csv".into(),
            json: "results.json".into(),
            norm: NormConfig::default(),
            linear: LinearConfig::default(),
        }
    }
}

/// Settings of `validate-linear`; the grid and potential family come from
/// the enclosing scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LinearConfig {
    pub n_list: Vec<f64>,
    /// Frequency cutoff of the manufactured data.
    pub band: f64,
    pub amplitude: f64,
    pub horizon: f64,
    pub dt: f64,
    pub sample_every: usize,
    pub inequalities: Vec<String>,
}

impl Default for LinearConfig {
    fn default() -> Self {
        LinearConfig {
            n_list: vec![2.0, 4.0, 8.0, 16.0],
            band: 4.0,
            amplitude: 1.0,
            horizon: 1.0,
            dt: 0.01,
            sample_every: 2,
            inequalities: hfb_core::linear::INEQUALITY_NAMES.iter().map(|s| s.to_string()).collect(),
        }
    }
}

fn invalid(path: &str, msg: impl std::fmt::Display) -> HarnessError {
    HarnessError::Validation(format!("{path}: {msg}"))
}

impl ScenarioConfig {
    pub fn from_toml(text: &str) -> Result<Self, HarnessError> {
        toml::from_str(text).map_err(|e| HarnessError::Validation(format!("config: {}", e.message())))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn grid(&self) -> Result<GridSpec, HarnessError> {
        GridSpec::new(self.dim, self.points, self.length).map_err(|e| invalid("dim/points/length", e))
    }

    /// Checks every field that can be checked without running, naming the
    /// offending field.
    pub fn validate(&self) -> Result<(), HarnessError> {
        let grid = self.grid()?;
        if self.n_list.is_empty() {
            return Err(invalid("n_list", "must not be empty"));
        }
        if !(self.beta > 0.0 && self.beta <= 1.0) {
            return Err(invalid("beta", format!("must lie in (0, 1] (got {})", self.beta)));
        }
        if !(self.epsilon >= 0.0) || !self.epsilon.is_finite() {
            return Err(invalid("epsilon", format!("must be finite and ≥ 0 (got {})", self.epsilon)));
        }
        for (i, &n) in self.n_list.iter().enumerate() {
            self.potential(&grid, n).map_err(|e| match e {
                HarnessError::Validation(m) => invalid(&format!("n_list[{i}]"), format!("N = {n}: {m}")),
                other => other,
            })?;
        }
        for (name, v) in [("phi_sigma", self.phi_sigma), ("k0_sigma", self.k0_sigma)] {
            if !(v > 0.0) {
                return Err(invalid(name, format!("must be positive (got {v})")));
            }
        }
        if !(self.k0_amplitude >= 0.0) {
            return Err(invalid("k0_amplitude", format!("must be ≥ 0 (got {})", self.k0_amplitude)));
        }
        check_lattice("", "t_final", self.t_final, self.dt, self.sample_every)?;
        for (i, name) in self.norms.iter().enumerate() {
            if !NORM_NAMES.contains(&name.as_str()) {
                return Err(invalid(&format!("norms[{i}]"), format!("unknown norm {name:?}")));
            }
        }
        if self.csv.is_empty() || self.json.is_empty() {
            return Err(invalid("csv/json", "output names must not be empty"));
        }
        let l = &self.linear;
        check_lattice("linear.", "horizon", l.horizon, l.dt, l.sample_every)?;
        if !(l.band > 0.0) || l.band > grid.max_frequency() {
            return Err(invalid(
                "linear.band",
                format!("must lie in (0, {}] for this grid (got {})", grid.max_frequency(), l.band),
            ));
        }
        for (i, name) in l.inequalities.iter().enumerate() {
            if !hfb_core::linear::INEQUALITY_NAMES.contains(&name.as_str()) {
                return Err(invalid(&format!("linear.inequalities[{i}]"), format!("unknown inequality {name:?}")));
            }
        }
        for (i, &n) in l.n_list.iter().enumerate() {
            self.potential(&grid, n).map_err(|e| match e {
                HarnessError::Validation(m) => invalid(&format!("linear.n_list[{i}]"), format!("N = {n}: {m}")),
                other => other,
            })?;
        }
        Ok(())
    }

    /// `V_N` for this scenario; `ε = 0` gives the zero potential.
    pub fn potential(&self, grid: &GridSpec, n: f64) -> Result<PotentialSpec, HarnessError> {
        let describe = |e: hfb_core::Error| {
            HarnessError::Validation(format!("{e} (grid points={}, length={})", grid.points(), grid.length()))
        };
        if !(n >= 1.0) || !n.is_finite() {
            return Err(HarnessError::Validation(format!("N must be finite and ≥ 1 (got {n})")));
        }
        if self.epsilon == 0.0 {
            let scale = n.powf(self.beta);
            if scale > grid.nyquist() {
                return Err(describe(hfb_core::Error::ScaleBeyondNyquist { scale, nyquist: grid.nyquist() }));
            }
            return Ok(PotentialSpec::zero(grid, n, self.beta));
        }
        PotentialSpec::build_base(grid, self.epsilon).and_then(|b| b.scale(n, self.beta)).map_err(describe)
    }
}

fn check_lattice(prefix: &str, t_name: &str, t: f64, dt: f64, every: usize) -> Result<(), HarnessError> {
    if !(dt > 0.0) {
        return Err(invalid(&format!("{prefix}dt"), format!("must be positive (got {dt})")));
    }
    if !(t >= 0.0) || !t.is_finite() {
        return Err(invalid(&format!("{prefix}{t_name}"), format!("must be finite and ≥ 0 (got {t})")));
    }
    if every == 0 {
        return Err(invalid(&format!("{prefix}sample_every"), "must be ≥ 1"));
    }
    let steps = (t / dt).round();
    if (steps * dt - t).abs() > 1e-9 * t.max(1.0) {
        return Err(invalid(&format!("{prefix}dt"), format!("{dt} does not divide {t}")));
    }
    if !(steps as usize).is_multiple_of(every) {
        return Err(invalid(&format!("{prefix}sample_every"), format!("{every} does not divide {steps} steps")));
    }
    Ok(())
}
