//! Time integration of the condensate and pair-excitation densities.
//!
//! With `W(x, y) = V_N(x - y)`, `U = V_N * ρ`, `Γ = Γ_p + conj(φ)⊗φ`,
//! `Λ = Λ_p + φ⊗φ` and products taken as kernel compositions:
//!
//! ```text
//! i∂t φ   = -Δφ + Uφ + h^d Σ_y W conj(Γ_p)(x, y) φ(y) + h^d Σ_y W Λ_p(x, y) conj(φ(y))
//! i∂t Λ_p = -(Δx + Δy)Λ_p + (Ux + Uy)Λ_p + (W/N)(Λ_p + Λ_c) + S + Sᵀ
//!           S = (W conj(Γ))∘Λ_p + (W Λ)∘Γ_p
//! i∂t Γ_p = (Δx - Δy)Γ_p - (Ux - Uy)Γ_p - (B - B*)
//!           B = (W Γ)∘Γ_p + (W conj(Λ))∘Λ_p
//! ```
//!
//! Optional shadow copies of `Λ_c`, `Γ_c` follow their own equations, which
//! keep `φ⊗φ` and `conj(φ)⊗φ` as exact solutions.
//!
//! One step is Strang splitting: exact kinetic half step in Fourier space,
//! classical RK4 for the remaining terms, kinetic half step.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fft::Fourier;
use crate::field::{OneBodyField, PairKernel, Symmetry};
use crate::grid::GridSpec;
use crate::kernels::{gamma_condensate, lambda_condensate, pair_densities, sh_ch_from_k, trace, SERIES_TOL};
use crate::linalg::gemm;
use crate::potential::PotentialSpec;

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
const I: C64 = C64 { re: 0.0, im: 1.0 };

/// Shadow condensate densities evolved by their own equations.
#[derive(Debug, Clone)]
pub struct Shadow {
    pub lambda_c: PairKernel,
    pub gamma_c: PairKernel,
}

#[derive(Debug, Clone)]
pub struct HfbState {
    pub t: f64,
    pub phi: OneBodyField,
    pub lambda_p: PairKernel,
    pub gamma_p: PairKernel,
    pub shadow: Option<Shadow>,
    /// Energy at `t = 0`.
    pub energy0: f64,
    /// Initial-data size `max(1, E(0))`.
    pub c0: f64,
}

impl HfbState {
    pub fn grid(&self) -> GridSpec {
        self.phi.grid
    }

    pub fn lambda_c(&self) -> PairKernel {
        lambda_condensate(&self.phi)
    }

    pub fn gamma_c(&self) -> PairKernel {
        gamma_condensate(&self.phi)
    }

    pub fn lambda(&self) -> PairKernel {
        self.lambda_p.add(&self.lambda_c()).expect("same grid")
    }

    pub fn gamma(&self) -> PairKernel {
        self.gamma_p.add(&self.gamma_c()).expect("same grid")
    }

    pub fn rho(&self) -> OneBodyField {
        crate::kernels::density(&self.phi, &self.gamma_p)
    }

    /// `tr Γ = ‖φ‖² + tr Γ_p`.
    pub fn trace_gamma(&self) -> C64 {
        trace(&self.gamma_p) + self.phi.norm_l2().powi(2)
    }

    /// Sup-norm distance of the shadows from the densities built from `φ`.
    pub fn shadow_defect(&self) -> Option<(f64, f64)> {
        self.shadow.as_ref().map(|s| {
            let dl = s.lambda_c.sub(&self.lambda_c()).unwrap().norm_sup();
            let dg = s.gamma_c.sub(&self.gamma_c()).unwrap().norm_sup();
            (dl, dg)
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyReport {
    pub trace_gamma: f64,
    pub energy: f64,
    pub kinetic: f64,
    /// `½∫∫V|Λ|²`, `½∫∫V|Γ|²`, `½∫∫V ρ(x)ρ(y)`, `-∫∫V|φ(x)|²|φ(y)|²`.
    pub potential_terms: [f64; 4],
    pub drift_trace: f64,
    pub drift_energy: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunMeta {
    pub dt: f64,
    pub t_final: f64,
    pub sample_every: usize,
    pub n_particles: f64,
    pub beta: f64,
    pub epsilon: f64,
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub grid: GridSpec,
    pub states: Vec<HfbState>,
    pub energies: Vec<EnergyReport>,
    pub meta: RunMeta,
}

impl Trajectory {
    pub fn times(&self) -> Vec<f64> {
        self.states.iter().map(|s| s.t).collect()
    }

    pub fn sample_interval(&self) -> f64 {
        self.meta.dt * self.meta.sample_every as f64
    }

    pub fn max_drift_trace(&self) -> f64 {
        self.energies.iter().map(|e| e.drift_trace).fold(0.0, f64::max)
    }

    pub fn max_drift_energy(&self) -> f64 {
        self.energies.iter().map(|e| e.drift_energy).fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct InitOptions {
    /// With `φ = 0`, rescale `k₀` so that `tr Γ = 1` instead of failing.
    pub rescale_pair: bool,
    pub shadows: bool,
}

impl Default for InitOptions {
    fn default() -> Self {
        InitOptions { rescale_pair: true, shadows: false }
    }
}

/// Raw unknowns used inside a step.
#[derive(Clone)]
struct Vars {
    phi: Vec<C64>,
    lp: Vec<C64>,
    gp: Vec<C64>,
    shadow: Option<(Vec<C64>, Vec<C64>)>,
}

fn axpy(out: &mut [C64], a: C64, x: &[C64]) {
    for (o, v) in out.iter_mut().zip(x) {
        *o += a * v;
    }
}

impl Vars {
    fn from_state(s: &HfbState) -> Self {
        Vars {
            phi: s.phi.values.clone(),
            lp: s.lambda_p.values.clone(),
            gp: s.gamma_p.values.clone(),
            shadow: s.shadow.as_ref().map(|sh| (sh.lambda_c.values.clone(), sh.gamma_c.values.clone())),
        }
    }

    /// `self + a·d`.
    fn offset(&self, a: f64, d: &Vars) -> Vars {
        let mut out = self.clone();
        out.add_scaled(a, d);
        out
    }

    fn add_scaled(&mut self, a: f64, d: &Vars) {
        let a = C64::new(a, 0.0);
        axpy(&mut self.phi, a, &d.phi);
        axpy(&mut self.lp, a, &d.lp);
        axpy(&mut self.gp, a, &d.gp);
        if let (Some((l, g)), Some((dl, dg))) = (self.shadow.as_mut(), d.shadow.as_ref()) {
            axpy(l, a, dl);
            axpy(g, a, dg);
        }
    }

    fn all_finite(&self) -> bool {
        let ok = |v: &[C64]| v.iter().all(|z| z.re.is_finite() && z.im.is_finite());
        ok(&self.phi) && ok(&self.lp) && ok(&self.gp) && self.shadow.as_ref().is_none_or(|(l, g)| ok(l) && ok(g))
    }
}

/// Integrator for one potential and particle number.
#[derive(Debug, Clone)]
pub struct HfbSolver {
    grid: GridSpec,
    n_particles: f64,
    potential: PotentialSpec,
    /// `W[x][y] = V_N(x - y)`.
    w: Vec<f64>,
    /// `h^d ×` FFT of the samples of `V_N`.
    v_hat: Vec<C64>,
    k2: Vec<f64>,
    fourier: Fourier,
    v_sup: f64,
}

impl HfbSolver {
    pub fn new(potential: &PotentialSpec) -> Result<Self> {
        let grid = potential.grid();
        let n_particles = potential.n_particles;
        if !(n_particles > 0.0) {
            return Err(Error::NonPositiveN(n_particles));
        }
        let n = grid.sites();
        let v = &potential.scaled;
        let mut w = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                w.push(v.values[grid.difference(x, y)].re);
            }
        }
        let fourier = Fourier::new(grid.points());
        let mut v_hat = v.values.clone();
        fourier.forward(&mut v_hat, grid.dim(), &axes(grid.dim()));
        for z in v_hat.iter_mut() {
            *z *= grid.cell();
        }
        Ok(HfbSolver {
            grid,
            n_particles,
            potential: potential.clone(),
            w,
            v_hat,
            k2: grid.wavenumber_squared(),
            fourier,
            v_sup: v.norm_sup(),
        })
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn n_particles(&self) -> f64 {
        self.n_particles
    }

    pub fn potential(&self) -> &PotentialSpec {
        &self.potential
    }

    /// Builds the initial state: `Λ_p`, `Γ_p` from `k₀` and `φ` rescaled so
    /// that `tr Γ = 1`.
    pub fn init_state(&self, phi_shape: &OneBodyField, k0: &PairKernel, opts: InitOptions) -> Result<HfbState> {
        if phi_shape.grid != self.grid || k0.grid != self.grid {
            return Err(Error::GridMismatch);
        }
        let phi_zero = phi_shape.is_zero();
        if phi_zero && k0.is_zero() {
            return Err(Error::EmptyInitialData);
        }
        let pair_trace = |k: &PairKernel| -> Result<(PairKernel, PairKernel, f64)> {
            let pair = sh_ch_from_k(k, SERIES_TOL)?;
            let (g, l) = pair_densities(&pair, self.n_particles)?;
            let t = trace(&g).re;
            Ok((g, l, t))
        };
        let (gamma_p, lambda_p, phi) = if phi_zero {
            let (g, l, t) = pair_trace(k0)?;
            if (t - 1.0).abs() <= 1e-12 {
                (g, l, phi_shape.clone())
            } else if !opts.rescale_pair {
                return Err(Error::InconsistentScenario(format!(
                    "condensate is zero and the pair trace is {t}, not 1"
                )));
            } else {
                let (g, l) = self.rescale_pair(k0, &pair_trace)?;
                (g, l, phi_shape.clone())
            }
        } else {
            let (g, l, t) = pair_trace(k0)?;
            if t >= 1.0 {
                return Err(Error::PairTraceTooLarge(t));
            }
            let scale = ((1.0 - t).sqrt()) / phi_shape.norm_l2();
            (g, l, phi_shape.scale(C64::new(scale, 0.0)))
        };
        let shadow =
            opts.shadows.then(|| Shadow { lambda_c: lambda_condensate(&phi), gamma_c: gamma_condensate(&phi) });
        let mut state = HfbState { t: 0.0, phi, lambda_p, gamma_p, shadow, energy0: 0.0, c0: 1.0 };
        let e = self.energy_report(&state, None);
        state.energy0 = e.energy;
        state.c0 = e.energy.max(1.0);
        Ok(state)
    }

    /// Bisection on `λ` in `λ k₀` for unit pair trace.
    fn rescale_pair(
        &self,
        k0: &PairKernel,
        pair_trace: &dyn Fn(&PairKernel) -> Result<(PairKernel, PairKernel, f64)>,
    ) -> Result<(PairKernel, PairKernel)> {
        let at = |s: f64| pair_trace(&k0.scale(C64::new(s, 0.0)));
        let (mut lo, mut hi) = (0.0, 1.0);
        while at(hi)?.2 < 1.0 {
            lo = hi;
            hi *= 2.0;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if at(mid)?.2 < 1.0 {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-15 * hi {
                break;
            }
        }
        let (g, l, _) = at(0.5 * (lo + hi))?;
        Ok((g, l))
    }

    /// Energy per particle and its parts; drifts are measured against
    /// `reference` when given.
    pub fn energy_report(&self, state: &HfbState, reference: Option<&EnergyReport>) -> EnergyReport {
        let g = self.grid;
        let n = g.sites();
        let h = g.cell();
        let norm = h / n as f64;

        let mut phi_hat = state.phi.values.clone();
        self.fourier.forward(&mut phi_hat, g.dim(), &axes(g.dim()));
        let kin_phi: f64 = phi_hat.iter().zip(&self.k2).map(|(z, k)| k * z.norm_sqr()).sum::<f64>() * norm;
        let mut gp_hat = state.gamma_p.values.clone();
        self.fourier.forward(&mut gp_hat, 2 * g.dim(), &axes(2 * g.dim()));
        let kin_pair: f64 = (0..n).map(|m| self.k2[m] * gp_hat[m * n + g.negated(m)].re).sum::<f64>() * norm;

        let phi = &state.phi.values;
        let rho = state.rho();
        let (mut p1, mut p2, mut p3, mut p4) = (0.0, 0.0, 0.0, 0.0);
        for x in 0..n {
            let row = x * n;
            for y in 0..n {
                let w = self.w[row + y];
                if w == 0.0 {
                    continue;
                }
                let lam = state.lambda_p.values[row + y] + phi[x] * phi[y];
                let gam = state.gamma_p.values[row + y] + phi[x].conj() * phi[y];
                p1 += w * lam.norm_sqr();
                p2 += w * gam.norm_sqr();
                p3 += w * rho.values[x].re * rho.values[y].re;
                p4 += w * phi[x].norm_sqr() * phi[y].norm_sqr();
            }
        }
        let hh = h * h;
        let terms = [0.5 * hh * p1, 0.5 * hh * p2, 0.5 * hh * p3, -hh * p4];
        let kinetic = kin_phi + kin_pair;
        let energy = kinetic + terms.iter().sum::<f64>();
        let trace_gamma = state.trace_gamma().re;
        let (drift_trace, drift_energy) = match reference {
            Some(r) => ((trace_gamma - r.trace_gamma).abs(), (energy - r.energy).abs() / r.energy.abs().max(1.0)),
            None => (0.0, 0.0),
        };
        EnergyReport { trace_gamma, energy, kinetic, potential_terms: terms, drift_trace, drift_energy }
    }

    fn convolve(&self, f: &[f64]) -> Vec<f64> {
        let g = self.grid;
        let mut a: Vec<C64> = f.iter().map(|&v| C64::new(v, 0.0)).collect();
        self.fourier.forward(&mut a, g.dim(), &axes(g.dim()));
        for (z, v) in a.iter_mut().zip(&self.v_hat) {
            *z *= v;
        }
        self.fourier.inverse(&mut a, g.dim(), &axes(g.dim()));
        a.iter().map(|z| z.re).collect()
    }

    /// Mean field `U = V_N * ρ` and the products `S`, `B`.
    fn coupling(&self, phi: &[C64], lp: &[C64], gp: &[C64]) -> (Vec<f64>, Vec<C64>, Vec<C64>) {
        let n = self.grid.sites();
        let h = C64::new(self.grid.cell(), 0.0);
        let rho: Vec<f64> = (0..n).map(|x| phi[x].norm_sqr() + gp[x * n + x].re).collect();
        let u = self.convolve(&rho);

        let mut wg_bar = vec![ZERO; n * n];
        let mut wl = vec![ZERO; n * n];
        for x in 0..n {
            for y in 0..n {
                let i = x * n + y;
                let w = self.w[i];
                wg_bar[i] = (gp[i] + phi[x].conj() * phi[y]).conj() * w;
                wl[i] = (lp[i] + phi[x] * phi[y]) * w;
            }
        }
        let wg: Vec<C64> = wg_bar.iter().map(|z| z.conj()).collect();
        let wl_bar: Vec<C64> = wl.iter().map(|z| z.conj()).collect();

        let mut s = vec![ZERO; n * n];
        gemm(&mut s, &wg_bar, lp, n, h, false);
        gemm(&mut s, &wl, gp, n, h, true);
        let mut b = vec![ZERO; n * n];
        gemm(&mut b, &wg, gp, n, h, false);
        gemm(&mut b, &wl_bar, lp, n, h, true);
        (u, s, b)
    }

    /// Forcing of the `Λ_p` equation apart from the `V_N/N` terms:
    /// `-(Ux + Uy)Λ_p - S - Sᵀ`.
    pub fn lambda_p_forcing(&self, state: &HfbState) -> PairKernel {
        let n = self.grid.sites();
        let lp = &state.lambda_p.values;
        let (u, s, _) = self.coupling(&state.phi.values, lp, &state.gamma_p.values);
        let mut out = vec![ZERO; n * n];
        for x in 0..n {
            for y in 0..n {
                out[x * n + y] = -(lp[x * n + y] * (u[x] + u[y]) + s[x * n + y] + s[y * n + x]);
            }
        }
        PairKernel::raw(self.grid, out, Symmetry::Symmetric)
    }

    /// Time derivative of the non-kinetic part.
    fn rhs(&self, v: &Vars) -> Vars {
        let n = self.grid.sites();
        let h = C64::new(self.grid.cell(), 0.0);
        let inv_n = 1.0 / self.n_particles;
        let phi = &v.phi;
        let (u, s, b) = self.coupling(phi, &v.lp, &v.gp);

        let mut dlp = vec![ZERO; n * n];
        let mut dgp = vec![ZERO; n * n];
        for x in 0..n {
            for y in 0..n {
                let i = x * n + y;
                let t = y * n + x;
                let lc = phi[x] * phi[y];
                let il = v.lp[i] * (u[x] + u[y]) + (v.lp[i] + lc) * (self.w[i] * inv_n) + s[i] + s[t];
                let ig = -v.gp[i] * (u[x] - u[y]) - (b[i] - b[t].conj());
                dlp[i] = -I * il;
                dgp[i] = -I * ig;
            }
        }

        let mut dphi = vec![ZERO; n];
        for x in 0..n {
            let mut acc = phi[x] * u[x];
            let mut pair = ZERO;
            for y in 0..n {
                let i = x * n + y;
                pair += (v.gp[i].conj() * phi[y] + v.lp[i] * phi[y].conj()) * self.w[i];
            }
            acc += pair * h;
            dphi[x] = -I * acc;
        }

        let shadow = v.shadow.as_ref().map(|(lc, gc)| {
            let wgp_bar: Vec<C64> = (0..n * n).map(|i| v.gp[i].conj() * self.w[i]).collect();
            let wlp: Vec<C64> = (0..n * n).map(|i| v.lp[i] * self.w[i]).collect();
            let mut t = vec![ZERO; n * n];
            gemm(&mut t, &wgp_bar, lc, n, h, false);
            gemm(&mut t, &wlp, gc, n, h, true);
            let wgp: Vec<C64> = wgp_bar.iter().map(|z| z.conj()).collect();
            let wlp_bar: Vec<C64> = wlp.iter().map(|z| z.conj()).collect();
            let mut bc = vec![ZERO; n * n];
            gemm(&mut bc, &wgp, gc, n, h, false);
            gemm(&mut bc, &wlp_bar, lc, n, h, true);
            let mut dl = vec![ZERO; n * n];
            let mut dg = vec![ZERO; n * n];
            for x in 0..n {
                for y in 0..n {
                    let i = x * n + y;
                    let tr = y * n + x;
                    dl[i] = -I * (lc[i] * (u[x] + u[y]) + t[i] + t[tr]);
                    dg[i] = -I * (-gc[i] * (u[x] - u[y]) - (bc[i] - bc[tr].conj()));
                }
            }
            (dl, dg)
        });

        Vars { phi: dphi, lp: dlp, gp: dgp, shadow }
    }

    /// Exact free propagation over `tau`.
    fn kinetic(&self, v: &mut Vars, tau: f64) {
        let g = self.grid;
        let n = g.sites();
        let e: Vec<C64> = self.k2.iter().map(|k| C64::from_polar(1.0, -k * tau)).collect();
        let one = axes(g.dim());
        let two = axes(2 * g.dim());
        self.fourier.forward(&mut v.phi, g.dim(), &one);
        for (z, p) in v.phi.iter_mut().zip(&e) {
            *z *= p;
        }
        self.fourier.inverse(&mut v.phi, g.dim(), &one);

        let propagate = |m: &mut Vec<C64>, lambda_type: bool| {
            self.fourier.forward(m, 2 * g.dim(), &two);
            for x in 0..n {
                let ex = if lambda_type { e[x] } else { e[x].conj() };
                for y in 0..n {
                    m[x * n + y] *= ex * e[y];
                }
            }
            self.fourier.inverse(m, 2 * g.dim(), &two);
        };
        propagate(&mut v.lp, true);
        propagate(&mut v.gp, false);
        if let Some((l, gc)) = v.shadow.as_mut() {
            propagate(l, true);
            propagate(gc, false);
        }
    }

    /// One Strang step of length `dt`.
    pub fn step(&self, state: &HfbState, dt: f64) -> Result<HfbState> {
        if !(dt > 0.0) {
            return Err(Error::InvalidArgument(format!("time step must be positive (got {dt})")));
        }
        if dt * self.v_sup > 1.0 {
            return Err(Error::StabilityBound(dt * self.v_sup));
        }
        if state.grid() != self.grid {
            return Err(Error::GridMismatch);
        }
        let mut v = Vars::from_state(state);
        if self.potential.is_zero() {
            self.kinetic(&mut v, dt);
            return Ok(self.assemble(state, v, state.t + dt));
        }
        self.kinetic(&mut v, 0.5 * dt);
        let k1 = self.rhs(&v);
        let k2 = self.rhs(&v.offset(0.5 * dt, &k1));
        let k3 = self.rhs(&v.offset(0.5 * dt, &k2));
        let k4 = self.rhs(&v.offset(dt, &k3));
        v.add_scaled(dt / 6.0, &k1);
        v.add_scaled(dt / 3.0, &k2);
        v.add_scaled(dt / 3.0, &k3);
        v.add_scaled(dt / 6.0, &k4);
        self.kinetic(&mut v, 0.5 * dt);
        if !v.all_finite() {
            return Err(Error::NonFinite("state after step"));
        }
        Ok(self.assemble(state, v, state.t + dt))
    }

    fn assemble(&self, prev: &HfbState, v: Vars, t: f64) -> HfbState {
        let g = self.grid;
        let mut lambda_p = PairKernel::raw(g, v.lp, Symmetry::None);
        lambda_p.symmetrize(Symmetry::Symmetric);
        let mut gamma_p = PairKernel::raw(g, v.gp, Symmetry::None);
        gamma_p.symmetrize(Symmetry::Hermitian);
        let shadow = v.shadow.map(|(l, gc)| {
            let mut lambda_c = PairKernel::raw(g, l, Symmetry::None);
            lambda_c.symmetrize(Symmetry::Symmetric);
            let mut gamma_c = PairKernel::raw(g, gc, Symmetry::None);
            gamma_c.symmetrize(Symmetry::Hermitian);
            Shadow { lambda_c, gamma_c }
        });
        HfbState {
            t,
            phi: OneBodyField { grid: g, values: v.phi },
            lambda_p,
            gamma_p,
            shadow,
            energy0: prev.energy0,
            c0: prev.c0,
        }
    }

    /// Integrates to `t_final`, keeping every `sample_every`-th state.
    pub fn evolve(&self, state0: &HfbState, t_final: f64, dt: f64, sample_every: usize) -> Result<Trajectory> {
        if !(t_final >= 0.0) || !(dt > 0.0) || sample_every == 0 {
            return Err(Error::InvalidArgument(format!(
                "need T ≥ 0, Δt > 0, sample_every ≥ 1 (got {t_final}, {dt}, {sample_every})"
            )));
        }
        let steps = (t_final / dt).round() as usize;
        if ((steps as f64) * dt - t_final).abs() > 1e-9 * t_final.max(1.0) {
            return Err(Error::InvalidArgument(format!("Δt = {dt} does not divide T = {t_final}")));
        }
        if !steps.is_multiple_of(sample_every) {
            return Err(Error::InvalidArgument(format!(
                "{steps} steps are not a multiple of the sampling stride {sample_every}"
            )));
        }
        let reference = self.energy_report(state0, None);
        let mut states = vec![state0.clone()];
        let mut energies = vec![self.energy_report(state0, Some(&reference))];
        let mut cur = state0.clone();
        for k in 1..=steps {
            cur = self.step(&cur, dt)?;
            cur.t = state0.t + k as f64 * dt;
            if k % sample_every == 0 {
                energies.push(self.energy_report(&cur, Some(&reference)));
                states.push(cur.clone());
            }
        }
        let last = energies.last().unwrap();
        log::debug!(
            "evolved {steps} steps: trace drift {:.3e}, energy drift {:.3e}",
            last.drift_trace,
            last.drift_energy
        );
        Ok(Trajectory {
            grid: self.grid,
            states,
            energies,
            meta: RunMeta {
                dt,
                t_final,
                sample_every,
                n_particles: self.n_particles,
                beta: self.potential.beta,
                epsilon: self.potential.epsilon,
            },
        })
    }
}

fn axes(k: usize) -> Vec<usize> {
    (0..k).collect()
}

/// Unit-`L²` Gaussian `c·exp(-|x - centre|²/(2σ²))` centred in the box.
pub fn gaussian(grid: GridSpec, sigma: f64) -> OneBodyField {
    let c = 0.5 * grid.length();
    let f = OneBodyField::from_fn(grid, |x| {
        let r2: f64 = x.iter().map(|v| (v - c).powi(2)).sum();
        C64::new((-r2 / (2.0 * sigma * sigma)).exp(), 0.0)
    });
    let norm = f.norm_l2();
    f.scale(C64::new(1.0 / norm, 0.0))
}

/// Rank-one pair kernel `amplitude · e⊗e`.
pub fn rank_one_kernel(e: &OneBodyField, amplitude: f64) -> PairKernel {
    let mut k = PairKernel::outer(e, e).unwrap().scale(C64::new(amplitude, 0.0));
    k.symmetry = Symmetry::Symmetric;
    k
}
