use std::f64::consts::PI;

use hfb_core::evolution::{gaussian, rank_one_kernel, HfbSolver, InitOptions};
use hfb_core::littlewood_paley::bump;
use hfb_core::norms::{
    admissible_pairs, collapsing, diff_outer_norm, dual_exponents, field_norm, low_collapsing, mixed_norm, norm_report,
    strichartz_field, strichartz_full, strichartz_xy, uniform_in_n_report, NormConfig, NormReport, Ordering, Selector,
    Series, SeriesKind, NORM_NAMES,
};
use hfb_core::potential::PotentialSpec;
use hfb_core::rotate::{rotate_pair_coords, Direction};
use hfb_core::{GridSpec, PairKernel, Symmetry, C64};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_pair_series(grid: GridSpec, frames: usize, dt: f64, seed: u64) -> Series {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = grid.sites();
    let frames = (0..frames)
        .map(|_| (0..n * n).map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect())
        .collect();
    Series::new(grid, SeriesKind::Pair, dt, frames).unwrap()
}

#[test]
fn admissible_pair_lists() {
    let p3 = admissible_pairs(3, 4).unwrap();
    assert!(p3.iter().any(|a| a.p.is_infinite() && a.q == 2.0));
    assert!(p3.iter().any(|a| a.p == 2.0 && (a.q - 6.0).abs() < 1e-12));
    let p1 = admissible_pairs(1, 3).unwrap();
    assert!(p1.iter().any(|a| a.p == 8.0 && (a.q - 4.0).abs() < 1e-12));
    assert!(p1.iter().any(|a| a.p == 4.0 && a.q.is_infinite()));
    for d in 1..=3 {
        for a in admissible_pairs(d, 6).unwrap() {
            let inv = |e: f64| if e.is_infinite() { 0.0 } else { 1.0 / e };
            assert!((2.0 * inv(a.p) + d as f64 * inv(a.q) - d as f64 / 2.0).abs() < 1e-12);
        }
    }
    assert!(admissible_pairs(4, 3).is_err());
    assert!(admissible_pairs(1, 1).is_err());
    assert!(dual_exponents(1, 6, 3.0, 64.0).is_err());
    let duals = dual_exponents(3, 6, 2.2, 64.0).unwrap();
    assert!(duals.iter().all(|a| a.p > 1.0 && a.p < 2.0 && a.q > 1.0 && a.q < 2.0));
}

#[test]
fn constants_and_plane_waves() {
    let g = GridSpec::new(1, 16, 3.0).unwrap();
    let (frames, dt) = (11, 0.1);
    let t = 1.0f64;
    let wave = |k: f64| {
        let fr: Vec<Vec<C64>> = (0..frames)
            .map(|_| {
                (0..256)
                    .map(|i| {
                        let (x, y) = ((i / 16) as f64 * g.spacing(), (i % 16) as f64 * g.spacing());
                        C64::from_polar(1.0, k * (x - 2.0 * y))
                    })
                    .collect()
            })
            .collect();
        Series::new(g, SeriesKind::Pair, dt, fr).unwrap()
    };
    let l = 3.0f64;
    for k in [0.0, 2.0 * PI / 3.0 * 2.0] {
        let s = wave(k);
        for (p, q, r) in [(2.0f64, 4.0f64, 2.0f64), (f64::INFINITY, 2.0, 3.0), (5.0, 1.0, f64::INFINITY)] {
            let expected = |wl: f64| {
                let tp = if p.is_infinite() { 1.0 } else { t.powf(1.0 / p) };
                let lq = if q.is_infinite() { 1.0 } else { l.powf(1.0 / q) };
                let lr = if r.is_infinite() { 1.0 } else { wl.powf(1.0 / r) };
                tp * lq * lr
            };
            for ord in [Ordering::XThenY, Ordering::YThenX] {
                assert!((mixed_norm(&s, p, q, r, ord).unwrap() - expected(l)).abs() < 1e-12);
            }
            // The sum variable sweeps a window of length 2L.
            assert!((mixed_norm(&s, p, q, r, Ordering::DiffThenSum).unwrap() - expected(2.0 * l)).abs() < 1e-12);
        }
    }
}

/// Nested-loop oracle with the rotation done by explicit index arithmetic.
fn oracle(s: &Series, p: f64, q: f64, r: f64, ord: Ordering) -> f64 {
    let g = s.grid;
    let m = g.points();
    let h = g.spacing();
    let pw = |v: f64, e: f64| v.powf(e);
    let per: Vec<f64> = s
        .frames
        .iter()
        .map(|f| {
            let mut outer = 0.0;
            for a in 0..m {
                let mut inner = 0.0;
                for b in 0..m {
                    let (idx, cell) = match ord {
                        Ordering::XThenY => (a * m + b, h),
                        Ordering::YThenX => (b * m + a, h),
                        Ordering::DiffThenSum => (((a + b) % m) * m + b, 2.0 * h),
                    };
                    inner += pw(f[idx].norm(), r) * cell;
                }
                outer += pw(pw(inner, 1.0 / r), q) * h;
            }
            pw(outer, 1.0 / q)
        })
        .collect();
    let n = per.len() - 1;
    pw(per[..n].iter().map(|v| pw(*v, p) * s.dt).sum::<f64>(), 1.0 / p)
}

#[test]
fn mixed_norm_matches_nested_loops() {
    let g = GridSpec::new(1, 8, 2.5).unwrap();
    let s = random_pair_series(g, 7, 0.13, 3);
    for (p, q, r) in [(2.0, 3.0, 2.0), (4.0, 1.5, 6.0), (1.0, 2.0, 1.0)] {
        for ord in [Ordering::XThenY, Ordering::YThenX, Ordering::DiffThenSum] {
            let a = mixed_norm(&s, p, q, r, ord).unwrap();
            let b = oracle(&s, p, q, r, ord);
            assert!((a - b).abs() < 1e-12 * b, "{ord:?}: {a} {b}");
        }
    }
}

#[test]
fn rotation_consistency() {
    let g = GridSpec::new(1, 8, 2.5).unwrap();
    let s = random_pair_series(g, 5, 0.2, 9);
    let rotated = Series {
        frames: s
            .frames
            .iter()
            .map(|f| rotate_pair_coords(&PairKernel::raw(g, f.clone(), Symmetry::None), Direction::Forward).values)
            .collect(),
        ..s.clone()
    };
    for (p, q) in [(2.0, 6.0), (f64::INFINITY, 2.0)] {
        let a = mixed_norm(&s, p, q, 2.0, Ordering::DiffThenSum).unwrap();
        let b = mixed_norm(&rotated, p, q, 2.0, Ordering::XThenY).unwrap();
        assert!((a - b * 2f64.sqrt()).abs() < 1e-10 * a);
    }
}

#[test]
fn zero_and_ordering_of_variants() {
    let g = GridSpec::new(1, 8, 2.5).unwrap();
    let zero = Series::new(g, SeriesKind::Pair, 0.1, vec![vec![C64::new(0.0, 0.0); 64]; 5]).unwrap();
    let pairs = admissible_pairs(1, 6).unwrap();
    assert_eq!(strichartz_xy(&zero, &pairs).unwrap(), 0.0);
    assert_eq!(strichartz_full(&zero, &pairs).unwrap(), 0.0);
    assert_eq!(collapsing(&zero).unwrap(), 0.0);
    assert_eq!(low_collapsing(&zero, 0.2, 20.0).unwrap(), 0.0);
    let s = random_pair_series(g, 5, 0.1, 4);
    assert!(strichartz_full(&s, &pairs).unwrap() >= strichartz_xy(&s, &pairs).unwrap());
    assert!(mixed_norm(&s, 0.5, 2.0, 2.0, Ordering::XThenY).is_err());
}

#[test]
fn separable_collapsing() {
    // Λ = a(x - y) b(t, x + y) with band-limited b: both parities of the
    // sum lattice carry equal mass, so the rotated line integral is √2 times
    // the torus norm.
    let g = GridSpec::new(1, 16, 4.0).unwrap();
    let h = g.spacing();
    let a = |u: usize| 1.0 + 0.5 * (2.0 * PI * u as f64 / 16.0).cos();
    let b = |t: f64, w: f64| C64::new((PI * w / 2.0).cos() + t, (PI * w).sin());
    let (frames, dt) = (9, 0.05);
    let fr: Vec<Vec<C64>> = (0..frames)
        .map(|k| {
            (0..256)
                .map(|i| {
                    let (x, y) = (i / 16, i % 16);
                    b(k as f64 * dt, (x + y) as f64 * h) * a((x + 16 - y) % 16)
                })
                .collect()
        })
        .collect();
    let s = Series::new(g, SeriesKind::Pair, dt, fr).unwrap();
    let bnorm: f64 = (0..frames - 1)
        .map(|k| (0..16).map(|w| b(k as f64 * dt, w as f64 * h).norm_sqr()).sum::<f64>() * h * dt)
        .sum::<f64>()
        .sqrt();
    let amax = (0..16).map(a).fold(0.0, f64::max);
    let c = collapsing(&s).unwrap();
    assert!((c - amax * 2f64.sqrt() * bnorm).abs() < 1e-12 * c);
    let l1 = diff_outer_norm(&s, 1.0).unwrap();
    let asum: f64 = (0..16).map(a).sum::<f64>() * h;
    assert!((l1 - asum * 2f64.sqrt() * bnorm).abs() < 1e-12 * l1);
}

#[test]
fn low_collapsing_young_bound() {
    // L¹ norm of the inverse transform of the bump, by quadrature.
    let kernel = |x: f64| {
        let n = 4000;
        let dxi = 4.0 / n as f64;
        (0..n)
            .map(|i| {
                let xi = -2.0 + (i as f64 + 0.5) * dxi;
                bump(xi.abs()) * (xi * x).cos()
            })
            .sum::<f64>()
            * dxi
            / (2.0 * PI)
    };
    let c_proj: f64 = {
        let n = 8000;
        let dx = 80.0 / n as f64;
        (0..n).map(|i| kernel(-40.0 + (i as f64 + 0.5) * dx).abs()).sum::<f64>() * dx
    };
    assert!((1.0..2.0).contains(&c_proj), "{c_proj}");
    let g = GridSpec::new(1, 16, 2.0 * PI).unwrap();
    for seed in 0..20 {
        let s = random_pair_series(g, 4, 0.1, 100 + seed);
        let low = low_collapsing(&s, 0.1, 20.0).unwrap();
        let full = collapsing(&s).unwrap();
        assert!(low <= 3.0 * c_proj * full, "seed {seed}: {low} vs {full}");
    }
}

#[test]
fn free_gaussian_strichartz_law() {
    let g = GridSpec::new(1, 256, 16.0).unwrap();
    let s = HfbSolver::new(&PotentialSpec::zero(&g, 8.0, 1.0)).unwrap();
    let st =
        s.init_state(&gaussian(g, 1.0), &PairKernel::zeros(g, Symmetry::Symmetric), InitOptions::default()).unwrap();
    let traj = s.evolve(&st, 1.0, 1e-3, 1).unwrap();
    let phi = Series::from_trajectory(&traj, Selector::Phi).unwrap();
    let measured = field_norm(&phi, 4.0, f64::INFINITY).unwrap();
    // sup_x |u(t)| = A (1 + 4t²)^{-1/4}, so ‖u‖⁴_{L⁴_t L^∞_x} = A⁴ atan(2T)/2.
    let amp = st.phi.values[128].re;
    let exact = amp * (2f64.atan() / 2.0).powf(0.25);
    assert!((measured / exact - 1.0).abs() < 0.01, "{measured} {exact}");
    let pairs = admissible_pairs(1, 6).unwrap();
    assert!(strichartz_field(&phi, &pairs).unwrap() >= measured);
}

#[test]
fn named_norms_on_a_short_run() {
    let g = GridSpec::new(1, 32, 16.0).unwrap();
    let pot = PotentialSpec::build_base(&g, 0.05).unwrap().scale(2.0, 1.0).unwrap();
    let s = HfbSolver::new(&pot).unwrap();
    let e = gaussian(g, 1.0);
    let st = s.init_state(&e, &rank_one_kernel(&e, 0.1), InitOptions::default()).unwrap();
    let traj = s.evolve(&st, 0.2, 1e-2, 1).unwrap();
    let report = norm_report(&traj, Some(&s), &NORM_NAMES, &NormConfig::default(), "short").unwrap();
    assert_eq!(report.entries.len(), NORM_NAMES.len());
    for (name, v) in &report.entries {
        assert!(v.is_finite() && *v > 0.0, "{name} = {v}");
    }
    assert!(report.entries["S_full"] >= report.entries["S_xy"]);
    assert!(norm_report(&traj, None, &["S_dual_r"], &NormConfig::default(), "x").is_err());
    assert!(norm_report(&traj, None, &["bogus"], &NormConfig::default(), "x").is_err());
}

fn report(n: f64, v: f64) -> NormReport {
    NormReport {
        scenario_id: format!("n{n}"),
        n_particles: n,
        epsilon: 0.05,
        beta: 1.0,
        t_final: 1.0,
        dt: 1e-3,
        dim: 1,
        points: 128,
        length: 16.0,
        entries: [("S_xy".to_string(), v)].into_iter().collect(),
    }
}

#[test]
fn growth_summary() {
    let same = uniform_in_n_report(&[report(2.0, 0.7), report(4.0, 0.7), report(8.0, 0.7)]).unwrap();
    assert_eq!(same.entries["S_xy"].ratio, 1.0);
    assert!(!same.entries["S_xy"].monotone_growth);
    let g = uniform_in_n_report(&[report(2.0, 1.0), report(4.0, 1.2), report(8.0, 1.1)]).unwrap();
    assert!((g.entries["S_xy"].ratio - 1.2).abs() < 1e-15);
    let up = uniform_in_n_report(&[report(8.0, 3.0), report(2.0, 1.0), report(4.0, 2.0)]).unwrap();
    assert!(up.entries["S_xy"].monotone_growth);
    assert!(uniform_in_n_report(&[report(2.0, 1.0), report(2.0, 1.0)]).is_err());
    let mut odd = report(4.0, 1.0);
    odd.epsilon = 0.1;
    assert!(uniform_in_n_report(&[report(2.0, 1.0), odd]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn homogeneity_and_triangle(seed in 0u64..1000, re in -3.0f64..3.0, im in -3.0f64..3.0) {
        let g = GridSpec::new(1, 8, 2.0).unwrap();
        let a = random_pair_series(g, 5, 0.1, seed);
        let b = random_pair_series(g, 5, 0.1, seed + 7919);
        let c = C64::new(re, im);
        let pairs = admissible_pairs(1, 4).unwrap();
        for (p, q, r, ord) in [
            (2.0, 3.0, 2.0, Ordering::XThenY),
            (f64::INFINITY, 1.0, 4.0, Ordering::YThenX),
            (2.0, 6.0, 2.0, Ordering::DiffThenSum),
        ] {
            let na = mixed_norm(&a, p, q, r, ord).unwrap();
            let nca = mixed_norm(&a.scale(c), p, q, r, ord).unwrap();
            prop_assert!((nca - c.norm() * na).abs() <= 1e-10 * (1.0 + nca));
            let nb = mixed_norm(&b, p, q, r, ord).unwrap();
            let nab = mixed_norm(&a.add(&b).unwrap(), p, q, r, ord).unwrap();
            prop_assert!(nab <= na + nb + 1e-10);
        }
        let sa = strichartz_full(&a, &pairs).unwrap();
        prop_assert!((strichartz_full(&a.scale(c), &pairs).unwrap() - c.norm() * sa).abs() <= 1e-10 * (1.0 + sa));
        let ca = collapsing(&a).unwrap();
        prop_assert!((collapsing(&a.scale(c)).unwrap() - c.norm() * ca).abs() <= 1e-10 * (1.0 + ca));
        prop_assert!(collapsing(&a.add(&b).unwrap()).unwrap() <= ca + collapsing(&b).unwrap() + 1e-10);
    }
}
