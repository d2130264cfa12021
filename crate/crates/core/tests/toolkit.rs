use std::f64::consts::PI;

use hfb_core::littlewood_paley::{
    bernstein_ratio, lp_project, lp_project_saturating, Band, FreqVar, BERNSTEIN_CONSTANT,
};
use hfb_core::multiplier::{apply_multiplier, Axes, FourierMultiplier};
use hfb_core::rotate::{rotate_pair_coords, Direction};
use hfb_core::{GridSpec, OneBodyField, PairKernel, Symmetry, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_field(grid: GridSpec, rng: &mut ChaCha8Rng) -> OneBodyField {
    let values = (0..grid.sites()).map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    OneBodyField::new(grid, values).unwrap()
}

/// Plain O(n²) transform, independent of the FFT path.
fn dft(f: &OneBodyField) -> Vec<C64> {
    let g = f.grid;
    let m = g.points();
    let k = g.wavenumbers();
    (0..m)
        .map(|a| {
            (0..m).map(|j| f.values[j] * C64::from_polar(1.0, -k[a] * j as f64 * g.spacing())).sum::<C64>()
                * g.spacing()
        })
        .collect()
}

#[test]
fn littlewood_paley_partition_of_unity() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for case in 0..100 {
        let dim = 1 + case % 3;
        let g = match dim {
            1 => GridSpec::new(1, 64, 2.0 * PI).unwrap(),
            2 => GridSpec::new(2, 16, 2.0 * PI).unwrap(),
            _ => GridSpec::new(3, 8, 2.0 * PI).unwrap(),
        };
        let raw = random_field(g, &mut rng);
        // Band-limit below half the lattice so the top annulus is interior.
        let f = lp_project(&raw, Band::Below(g.max_frequency() / 4.0), FreqVar::Xi).unwrap();
        let mut sum = OneBodyField::zeros(g);
        let mut k = 0;
        loop {
            let band = Band::DyadicAnnulus(k);
            if band.saturates(FreqVar::Xi, &g) {
                break;
            }
            let piece = lp_project_saturating(&f, band, FreqVar::Xi).unwrap();
            for (s, p) in sum.values.iter_mut().zip(&piece.values) {
                *s += p;
            }
            k += 1;
        }
        let err = sum.values.iter().zip(&f.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        assert!(err <= 1e-12 * (1.0 + f.norm_sup()), "case {case}: {err}");
    }
}

#[test]
fn bernstein_constant_regression() {
    let g = GridSpec::new(1, 256, 32.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst: f64 = 0.0;
    for k in 1..=3 {
        for _ in 0..20 {
            let f = lp_project(&random_field(g, &mut rng), Band::DyadicAnnulus(k), FreqVar::Xi).unwrap();
            for (p, q) in [(2.0, f64::INFINITY), (1.0, 2.0), (2.0, 4.0)] {
                let r = bernstein_ratio(&f, k, p, q);
                assert!(r <= BERNSTEIN_CONSTANT, "k={k} p={p} q={q}: {r}");
                worst = worst.max(r);
            }
        }
    }
    eprintln!("worst Bernstein ratio {worst}");
    assert!(worst >= BERNSTEIN_CONSTANT / 4.0, "{worst}");
}

#[test]
fn half_bracket_parseval() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (m, l) in [(32, 2.0 * PI), (64, 7.5)] {
        let g = GridSpec::new(1, m, l).unwrap();
        let f = random_field(g, &mut rng);
        let out = apply_multiplier(&f, &FourierMultiplier::bracket(Axes::X, 0.5)).unwrap();
        let lhs = out.norm_l2().powi(2);
        let rhs: f64 =
            dft(&f).iter().zip(g.wavenumbers()).map(|(c, k)| (1.0 + k * k).sqrt() * c.norm_sqr()).sum::<f64>() / l;
        assert!((lhs - rhs).abs() <= 1e-10 * rhs, "{lhs} {rhs}");
    }
}

#[test]
fn rotation_roundtrip_is_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for g in [GridSpec::new(1, 16, 3.0).unwrap(), GridSpec::new(2, 8, 3.0).unwrap(), GridSpec::new(3, 8, 3.0).unwrap()]
    {
        let n = g.sites();
        let values = (0..n * n).map(|_| C64::new(rng.gen(), rng.gen())).collect();
        let k = PairKernel::raw(g, values, Symmetry::None);
        let back = rotate_pair_coords(&rotate_pair_coords(&k, Direction::Forward), Direction::Inverse);
        assert_eq!(back.values, k.values);
    }
}
