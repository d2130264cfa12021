//! Acceptance criteria, one PASS/FAIL line each.

use std::f64::consts::PI;
use std::process::Command;
use std::time::Instant;

use hfb_core::evolution::{gaussian, rank_one_kernel, HfbSolver, HfbState, InitOptions};
use hfb_core::kernels::{block_exp_oracle, sh_ch_from_k, SERIES_TOL};
use hfb_core::linear::{manufacture_data, manufactured_problem, solve_linear, Envelope, Forcing};
use hfb_core::littlewood_paley::{
    bernstein_ratio, lp_project, lp_project_saturating, Band, FreqVar, BERNSTEIN_CONSTANT,
};
use hfb_core::multiplier::{apply_multiplier, Axes, FourierMultiplier};
use hfb_core::norms::{field_norm, time_frac_deriv, Selector, Series, SeriesKind, Taper};
use hfb_core::potential::PotentialSpec;
use hfb_core::rotate::{rotate_pair_coords, Direction};
use hfb_core::{GridSpec, OneBodyField, PairKernel, Symmetry, C64};
use hfb_harness::run::{run_scenario, sweep_n, validate_linear};
use hfb_harness::{LinearConfig, ScenarioConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    passed: bool,
    detail: String,
}

type Check = fn() -> Outcome;

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn c(rng: &mut ChaCha8Rng) -> C64 {
    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

fn max_diff(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn random_field(grid: GridSpec, rng: &mut ChaCha8Rng) -> OneBodyField {
    OneBodyField::new(grid, (0..grid.sites()).map(|_| c(rng)).collect()).unwrap()
}

fn conservation() -> Outcome {
    let cfg = ScenarioConfig::default();
    let r = run_scenario(&cfg, cfg.n_list[0]).unwrap();
    let passed = r.drift_trace <= 1e-8 && r.drift_energy <= 1e-6 && r.seconds <= 120.0;
    outcome(
        passed,
        format!(
            "trace drift {:.2e} (≤ 1e-8), energy drift {:.2e} (≤ 1e-6), {:.1}s (≤ 120s)",
            r.drift_trace, r.drift_energy, r.seconds
        ),
    )
}

fn bogoliubov() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let grids = [
        GridSpec::new(1, 8, 4.0).unwrap(),
        GridSpec::new(1, 16, 6.0).unwrap(),
        GridSpec::new(1, 32, 8.0).unwrap(),
        GridSpec::new(2, 8, 4.0).unwrap(),
    ];
    let (mut agree, mut symplectic) = (0.0f64, 0.0f64);
    for i in 0..50 {
        let g = grids[i % grids.len()];
        let n = g.sites();
        let mut k = PairKernel::raw(g, (0..n * n).map(|_| c(&mut rng)).collect(), Symmetry::None);
        k.symmetrize(Symmetry::Symmetric);
        let k = k.scale(C64::new(rng.gen_range(0.0..1.0) / k.norm_l2(), 0.0));
        let series = sh_ch_from_k(&k, SERIES_TOL).unwrap();
        let oracle = block_exp_oracle(&k).unwrap();
        agree =
            agree.max(series.ch.sub(&oracle.ch).unwrap().norm_l2()).max(series.sh.sub(&oracle.sh).unwrap().norm_l2());
        symplectic = symplectic.max(series.symplectic_residual());
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        agree <= 1e-10 && symplectic <= 1e-10 && secs <= 30.0,
        format!("series vs block exponential {agree:.2e}, symplectic residual {symplectic:.2e} (≤ 1e-10), {secs:.1}s (≤ 30s)"),
    )
}

fn potential_energy() -> Outcome {
    let cfg = ScenarioConfig::default();
    let g = cfg.grid().unwrap();
    let pot = cfg.potential(&g, 8.0).unwrap();
    let s = HfbSolver::new(&pot).unwrap();
    let phi = gaussian(g, 1.0);
    let st = s.init_state(&phi, &PairKernel::zeros(g, Symmetry::Symmetric), InitOptions::default()).unwrap();
    let total: f64 = s.energy_report(&st, None).potential_terms.iter().sum();
    let n = g.sites();
    let rho: Vec<f64> = st.phi.values.iter().map(|z| z.norm_sqr()).collect();
    let mut oracle = 0.0;
    for x in 0..n {
        for y in 0..n {
            oracle += pot.scaled.values[g.difference(x, y)].re * rho[x] * rho[y];
        }
    }
    oracle *= 0.5 * g.cell() * g.cell();
    let rel = ((total - oracle) / oracle).abs();
    outcome(rel <= 1e-9, format!("relative error {rel:.2e} (≤ 1e-9), energy {total:.12e}"))
}

fn distance(a: &HfbState, b: &HfbState) -> f64 {
    let p = a.phi.values.iter().zip(&b.phi.values).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>();
    let l = a.lambda_p.sub(&b.lambda_p).unwrap().frobenius().powi(2);
    let g = a.gamma_p.sub(&b.gamma_p).unwrap().frobenius().powi(2);
    (p + l + g).sqrt()
}

fn temporal_order() -> Outcome {
    let g = GridSpec::new(1, 32, 16.0).unwrap();
    let pot = PotentialSpec::build_base(&g, 0.5).unwrap().scale(4.0, 1.0).unwrap();
    let s = HfbSolver::new(&pot).unwrap();
    let e = gaussian(g, 1.0);
    let st = s.init_state(&e, &rank_one_kernel(&e, 0.3), InitOptions::default()).unwrap();
    let t = 0.4;
    let run = |dt: f64| s.evolve(&st, t, dt, (t / dt).round() as usize).unwrap().states.pop().unwrap();
    let (a, b, cc) = (run(0.02), run(0.01), run(0.005));
    let hfb = (distance(&a, &b) / distance(&b, &cc)).log2();

    let g = GridSpec::new(1, 32, 8.0).unwrap();
    let pot = PotentialSpec::build_base(&g, 0.05).unwrap().scale(4.0, 1.0).unwrap();
    let data = manufacture_data(17, g, 3.0, 1.0).unwrap();
    let exact = Forcing::new(
        g,
        vec![
            (Envelope::constant(C64::new(1.0, 0.0)), data.lambda0.clone()),
            (Envelope::Trig { amp: C64::new(0.5, 0.2), omega: 2.0, phase: 0.3 }, data.g.terms[0].1.clone()),
        ],
    )
    .unwrap();
    let err = |dt: f64| {
        let prob = manufactured_problem(&pot, &exact, t, dt, 1).unwrap();
        max_diff(solve_linear(&prob).unwrap().frames.last().unwrap(), &exact.at(t))
    };
    let (e1, e2, e3) = (err(0.02), err(0.01), err(0.005));
    let (l1, l2) = ((e1 / e2).log2(), (e2 / e3).log2());
    let ok = |p: f64| (1.8..=2.2).contains(&p);
    outcome(ok(hfb) && ok(l1) && ok(l2), format!("HFB order {hfb:.3}, linear orders {l1:.3} {l2:.3} (in [1.8, 2.2])"))
}

fn free_flow() -> Outcome {
    let g = GridSpec::new(1, 128, 16.0).unwrap();
    let s = HfbSolver::new(&PotentialSpec::zero(&g, 8.0, 1.0)).unwrap();
    let phi0 = gaussian(g, 1.0);
    let st = s.init_state(&phi0, &PairKernel::zeros(g, Symmetry::Symmetric), InitOptions::default()).unwrap();
    let traj = s.evolve(&st, 0.1, 1e-3, 100).unwrap();
    let t = 0.1;
    let amp = phi0.values[64].re;
    let z = C64::new(1.0, 2.0 * t);
    let exact = OneBodyField::from_fn(g, |x| {
        let r = x[0] - 8.0;
        amp / z.sqrt() * (-(r * r) / (2.0 * z)).exp()
    });
    let err = max_diff(&traj.states[1].phi.values, &exact.values);

    let g = GridSpec::new(1, 256, 16.0).unwrap();
    let s = HfbSolver::new(&PotentialSpec::zero(&g, 8.0, 1.0)).unwrap();
    let st =
        s.init_state(&gaussian(g, 1.0), &PairKernel::zeros(g, Symmetry::Symmetric), InitOptions::default()).unwrap();
    let traj = s.evolve(&st, 1.0, 1e-3, 1).unwrap();
    let measured = field_norm(&Series::from_trajectory(&traj, Selector::Phi).unwrap(), 4.0, f64::INFINITY).unwrap();
    let amp = st.phi.values[128].re;
    let law = amp * (2f64.atan() / 2.0).powf(0.25);
    let rel = (measured / law - 1.0).abs();
    outcome(err <= 1e-8 && rel <= 0.01, format!("closed form {err:.2e} (≤ 1e-8), L⁴L^∞ relative {rel:.2e} (≤ 1e-2)"))
}

fn uniform_in_n() -> Outcome {
    let cfg = ScenarioConfig {
        id: "sweep-512".into(),
        points: 512,
        n_list: vec![2.0, 4.0, 8.0, 16.0],
        sample_every: 20,
        norms: ["S_xy", "sh2k_S_xy", "p2_S_xy", "phi_S"].iter().map(|s| s.to_string()).collect(),
        ..ScenarioConfig::default()
    };
    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get()).min(4);
    let start = Instant::now();
    let (results, summary) = sweep_n(&cfg, jobs).unwrap();
    let total = start.elapsed().as_secs_f64();
    let slowest = results.iter().map(|r| r.seconds).fold(0.0, f64::max);
    let mut passed = slowest <= 900.0;
    let mut parts = Vec::new();
    for (name, e) in &summary.growth.entries {
        passed &= e.ratio <= 1.5;
        parts.push(format!("{name} {:.3}", e.ratio));
    }
    outcome(
        passed,
        format!(
            "max/min {} (≤ 1.5), slowest job {slowest:.0}s (≤ 900s), total {total:.0}s on {jobs} worker(s)",
            parts.join(", ")
        ),
    )
}

fn linear_inequality() -> Outcome {
    let mut cfg = ScenarioConfig::default();
    cfg.linear.inequalities = vec!["main".into()];
    let s = validate_linear(&cfg, 1).unwrap();
    let spread = s.spreads[0].1;
    for r in &s.records {
        let terms: Vec<String> = r.rhs_terms.iter().map(|(n, v)| format!("{n}={v:.3e}")).collect();
        println!("    N={} ratio {:.4} rhs {}", r.n_particles, r.ratio, terms.join(" "));
    }
    outcome(spread.is_some_and(|v| v <= 2.0), format!("main ratio spread {spread:?} (≤ 2)"))
}

/// Plain O(n²) transform, independent of the FFT path.
fn dft(values: &[C64], freq: &[f64], pos: impl Fn(usize) -> f64) -> Vec<C64> {
    freq.iter().map(|k| values.iter().enumerate().map(|(j, v)| v * C64::from_polar(1.0, -k * pos(j))).sum()).collect()
}

fn toolkit() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut lp = 0.0f64;
    for case in 0..100 {
        let g = match case % 3 {
            0 => GridSpec::new(1, 64, 2.0 * PI).unwrap(),
            1 => GridSpec::new(2, 16, 2.0 * PI).unwrap(),
            _ => GridSpec::new(3, 8, 2.0 * PI).unwrap(),
        };
        let f = lp_project(&random_field(g, &mut rng), Band::Below(g.max_frequency() / 4.0), FreqVar::Xi).unwrap();
        let mut sum = vec![C64::new(0.0, 0.0); g.sites()];
        let mut k = 0;
        while !Band::DyadicAnnulus(k).saturates(FreqVar::Xi, &g) {
            let piece = lp_project_saturating(&f, Band::DyadicAnnulus(k), FreqVar::Xi).unwrap();
            sum.iter_mut().zip(&piece.values).for_each(|(s, p)| *s += p);
            k += 1;
        }
        lp = lp.max(max_diff(&sum, &f.values) / (1.0 + f.norm_sup()));
    }

    let mut rotation = 0.0f64;
    for g in [GridSpec::new(1, 16, 3.0).unwrap(), GridSpec::new(2, 8, 3.0).unwrap(), GridSpec::new(3, 8, 3.0).unwrap()]
    {
        let n = g.sites();
        let k = PairKernel::raw(g, (0..n * n).map(|_| c(&mut rng)).collect(), Symmetry::None);
        let back = rotate_pair_coords(&rotate_pair_coords(&k, Direction::Forward), Direction::Inverse);
        rotation = rotation.max(max_diff(&back.values, &k.values));
    }

    let g = GridSpec::new(1, 64, 7.5).unwrap();
    let f = random_field(g, &mut rng);
    let out = apply_multiplier(&f, &FourierMultiplier::bracket(Axes::X, 0.5)).unwrap();
    let k = g.wavenumbers();
    let rhs: f64 = dft(&f.values, &k, |j| j as f64 * g.spacing())
        .iter()
        .zip(&k)
        .map(|(c, k)| (1.0 + k * k).sqrt() * c.norm_sqr())
        .sum::<f64>()
        * g.spacing()
        * g.spacing()
        / g.length();
    let bracket = ((out.norm_l2().powi(2) - rhs) / rhs).abs();

    let (frames, dt) = (32, 0.05);
    let fg = GridSpec::new(1, 8, 2.0).unwrap();
    let data: Vec<Vec<C64>> = (0..frames).map(|_| (0..fg.sites()).map(|_| c(&mut rng)).collect()).collect();
    let s = Series::new(fg, SeriesKind::Field, dt, data.clone()).unwrap();
    let d = time_frac_deriv(&s, 0.25, Taper::None).unwrap();
    let lhs: f64 = d.frames.iter().flatten().map(|z| z.norm_sqr()).sum();
    let omega: Vec<f64> = (0..frames)
        .map(|j| {
            let m = if j <= frames / 2 { j as f64 } else { j as f64 - frames as f64 };
            2.0 * PI * m / (frames as f64 * dt)
        })
        .collect();
    let mut rhs = 0.0;
    for x in 0..fg.sites() {
        let column: Vec<C64> = data.iter().map(|f| f[x]).collect();
        rhs += dft(&column, &omega, |j| j as f64 * dt)
            .iter()
            .zip(&omega)
            .map(|(c, w)| w.abs().sqrt() * c.norm_sqr())
            .sum::<f64>()
            / frames as f64;
    }
    let time = ((lhs - rhs) / rhs).abs();

    let g = GridSpec::new(1, 256, 32.0).unwrap();
    let mut worst = 0.0f64;
    for k in 1..=3 {
        for _ in 0..20 {
            let f = lp_project(&random_field(g, &mut rng), Band::DyadicAnnulus(k), FreqVar::Xi).unwrap();
            for (p, q) in [(2.0, f64::INFINITY), (1.0, 2.0), (2.0, 4.0)] {
                worst = worst.max(bernstein_ratio(&f, k, p, q));
            }
        }
    }
    let band = BERNSTEIN_CONSTANT / 4.0..=BERNSTEIN_CONSTANT;
    outcome(
        lp <= 1e-12 && rotation == 0.0 && bracket <= 1e-10 && time <= 1e-10 && band.contains(&worst),
        format!(
            "LP {lp:.2e} (≤ 1e-12), rotation {rotation:.1e} (= 0), ⟨∇⟩^½ {bracket:.2e}, |∂t|^¼ {time:.2e} (≤ 1e-10), \
             Bernstein {worst:.3} (in [{:.2}, {:.2}])",
            band.start(),
            band.end()
        ),
    )
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let cfg = ScenarioConfig {
        id: "repeat".into(),
        points: 64,
        n_list: vec![2.0, 4.0, 8.0],
        t_final: 0.2,
        dt: 1e-2,
        sample_every: 1,
        linear: LinearConfig { n_list: vec![2.0, 4.0], ..LinearConfig::default() },
        ..ScenarioConfig::default()
    };
    let path = dir.path().join("c.toml");
    std::fs::write(&path, cfg.to_toml()).unwrap();
    let run = |out: &str, jobs: &str| {
        let out = dir.path().join(out);
        let status = Command::new(env!("CARGO_BIN_EXE_hfb"))
            .args(["sweep-n", "--config", path.to_str().unwrap(), "--out", out.to_str().unwrap(), "--jobs", jobs])
            .status()
            .unwrap();
        assert!(status.success());
        ["results.csv", "results.json", "summary.json"].map(|f| std::fs::read(out.join(f)).unwrap())
    };
    let (a, b) = (run("a", "1"), run("b", "3"));
    let same = a == b;
    outcome(same, format!("{} bytes of CSV/JSON identical across runs: {same}", a.iter().map(Vec::len).sum::<usize>()))
}

fn main() {
    let criteria: [(&str, Check); 9] = [
        ("conservation", conservation),
        ("bogoliubov", bogoliubov),
        ("potential_energy", potential_energy),
        ("temporal_order", temporal_order),
        ("free_flow", free_flow),
        ("uniform_in_n", uniform_in_n),
        ("linear_inequality", linear_inequality),
        ("toolkit", toolkit),
        ("determinism", determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        println!("{} {} {name}: {}", if o.passed { "PASS" } else { "FAIL" }, i + 1, o.detail);
        if !o.passed {
            failed.push(*name);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed: {failed:?}");
        std::process::exit(1);
    }
}
