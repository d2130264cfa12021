//! Brute-force oracle checks of the numerical kernels.

use hfb_core::fft::Fourier;
use hfb_core::kernels::{block_exp_oracle, compose, sh_ch_from_k, weighted_compose};
use hfb_core::potential::{convolve_density, BaseTransform};
use hfb_core::rotate::{rotate_pair_coords, Direction};
use hfb_core::{GridSpec, OneBodyField, PairKernel, Symmetry, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelfTestCase {
    pub name: String,
    pub error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl SelfTestCase {
    fn new(name: &str, error: f64, tolerance: f64) -> Self {
        SelfTestCase { name: name.into(), error, tolerance, passed: error <= tolerance }
    }

    pub fn line(&self) -> String {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        format!("{tag} {:<24} error {:.3e} (tolerance {:.0e})", self.name, self.error, self.tolerance)
    }
}

fn c(rng: &mut ChaCha8Rng) -> C64 {
    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

fn random_kernel(grid: GridSpec, rng: &mut ChaCha8Rng) -> PairKernel {
    let n = grid.sites();
    PairKernel::raw(grid, (0..n * n).map(|_| c(rng)).collect(), Symmetry::None)
}

fn max_diff(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn check_compose(rng: &mut ChaCha8Rng) -> f64 {
    let g = GridSpec::new(2, 8, 3.0).unwrap();
    let n = g.sites();
    let (a, b) = (random_kernel(g, rng), random_kernel(g, rng));
    let fast = compose(&a, &b).unwrap();
    let mut slow = vec![C64::new(0.0, 0.0); n * n];
    for x in 0..n {
        for y in 0..n {
            slow[x * n + y] = (0..n).map(|z| a.at(x, z) * b.at(z, y)).sum::<C64>() * g.cell();
        }
    }
    max_diff(&fast.values, &slow)
}

fn real_field(grid: GridSpec, rng: &mut ChaCha8Rng) -> OneBodyField {
    OneBodyField::new(grid, (0..grid.sites()).map(|_| C64::new(rng.gen_range(-1.0..1.0), 0.0)).collect()).unwrap()
}

fn check_weighted(rng: &mut ChaCha8Rng) -> f64 {
    let g = GridSpec::new(1, 32, 5.0).unwrap();
    let n = g.sites();
    let v = real_field(g, rng);
    let (a, b) = (random_kernel(g, rng), random_kernel(g, rng));
    let fast = weighted_compose(&v, &a, &b).unwrap();
    let mut slow = vec![C64::new(0.0, 0.0); n * n];
    for x in 0..n {
        for y in 0..n {
            slow[x * n + y] =
                (0..n).map(|z| v.values[g.difference(x, z)] * a.at(x, z) * b.at(z, y)).sum::<C64>() * g.cell();
        }
    }
    max_diff(&fast.values, &slow)
}

fn check_convolution(rng: &mut ChaCha8Rng) -> f64 {
    let g = GridSpec::new(2, 8, 4.0).unwrap();
    let v = real_field(g, rng);
    let rho = real_field(g, rng);
    let fast = convolve_density(&v, &rho).unwrap();
    let slow: Vec<C64> = (0..g.sites())
        .map(|x| (0..g.sites()).map(|y| v.values[g.difference(x, y)] * rho.values[y]).sum::<C64>() * g.cell())
        .collect();
    max_diff(&fast.values, &slow)
}

fn check_block_exponential(rng: &mut ChaCha8Rng) -> (f64, f64) {
    let g = GridSpec::new(1, 16, 4.0).unwrap();
    let (mut worst, mut symplectic) = (0.0f64, 0.0f64);
    for _ in 0..10 {
        let mut k = random_kernel(g, rng);
        k.symmetrize(Symmetry::Symmetric);
        let k = k.scale(C64::new(rng.gen_range(0.1..1.0) / k.norm_l2(), 0.0));
        let series = sh_ch_from_k(&k, 1e-15).unwrap();
        let oracle = block_exp_oracle(&k).unwrap();
        worst =
            worst.max(series.ch.sub(&oracle.ch).unwrap().norm_l2()).max(series.sh.sub(&oracle.sh).unwrap().norm_l2());
        symplectic = symplectic.max(series.symplectic_residual());
    }
    (worst, symplectic)
}

fn check_fft(rng: &mut ChaCha8Rng) -> f64 {
    let m = 16;
    let f = Fourier::new(m);
    let data: Vec<C64> = (0..m * m).map(|_| c(rng)).collect();
    let mut fast = data.clone();
    f.forward(&mut fast, 2, &[0, 1]);
    let w = |a: usize, j: usize| C64::from_polar(1.0, -2.0 * std::f64::consts::PI * (a * j) as f64 / m as f64);
    let mut slow = vec![C64::new(0.0, 0.0); m * m];
    for a in 0..m {
        for b in 0..m {
            slow[a * m + b] = (0..m * m).map(|i| data[i] * w(a, i / m) * w(b, i % m)).sum();
        }
    }
    let mut back = fast.clone();
    f.inverse(&mut back, 2, &[0, 1]);
    max_diff(&fast, &slow).max(max_diff(&back, &data))
}

/// `(2π)^{-d} ∫ ŵ(ζ)² dζ` at the origin, evaluated once at high precision.
const TRANSFORM_AT_ORIGIN: [f64; 3] = [0.010590656994703084, 0.0007467204130045572, 0.000048429060285099795];

fn check_quadrature() -> f64 {
    (1..=3)
        .map(|d| ((BaseTransform::new(d).eval(0.0) - TRANSFORM_AT_ORIGIN[d - 1]) / TRANSFORM_AT_ORIGIN[d - 1]).abs())
        .fold(0.0, f64::max)
}

fn check_rotation(rng: &mut ChaCha8Rng) -> f64 {
    let g = GridSpec::new(2, 8, 3.0).unwrap();
    let k = random_kernel(g, rng);
    let back = rotate_pair_coords(&rotate_pair_coords(&k, Direction::Forward), Direction::Inverse);
    max_diff(&back.values, &k.values)
}

pub fn run_selftest(seed: u64) -> Vec<SelfTestCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (bogo, symplectic) = check_block_exponential(&mut rng);
    vec![
        SelfTestCase::new("compose", check_compose(&mut rng), 1e-12),
        SelfTestCase::new("weighted_compose", check_weighted(&mut rng), 1e-12),
        SelfTestCase::new("convolve_density", check_convolution(&mut rng), 1e-12),
        SelfTestCase::new("block_exponential", bogo, 1e-10),
        SelfTestCase::new("symplectic_identity", symplectic, 1e-10),
        SelfTestCase::new("fft", check_fft(&mut rng), 1e-11),
        SelfTestCase::new("potential_quadrature", check_quadrature(), 1e-12),
        SelfTestCase::new("rotation_roundtrip", check_rotation(&mut rng), 0.0),
    ]
}
