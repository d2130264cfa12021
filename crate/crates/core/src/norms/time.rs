use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

use super::series::Series;

pub const MIN_TIME_SAMPLES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Taper {
    /// Hann window over the sampled interval before transforming.
    Hann,
    /// Treat the window as one period (exact for resolved tones).
    None,
}

/// `|∂_t|^s` by DFT over the sampled window, frequencies `2πk/(nΔ)`.
pub fn time_frac_deriv(series: &Series, s: f64, taper: Taper) -> Result<Series> {
    let n = series.len();
    if n < MIN_TIME_SAMPLES {
        return Err(Error::TooFewSamples { need: MIN_TIME_SAMPLES, got: n });
    }
    let window: Vec<f64> = match taper {
        Taper::Hann => (0..n).map(|i| (PI * i as f64 / (n - 1) as f64).sin().powi(2)).collect(),
        Taper::None => vec![1.0; n],
    };
    let period = n as f64 * series.dt;
    let symbol: Vec<f64> = (0..n)
        .map(|k| {
            let m = if k <= n / 2 { k as f64 } else { k as f64 - n as f64 };
            (2.0 * PI * m / period).abs().powf(s)
        })
        .collect();
    let mut planner = FftPlanner::new();
    let fwd = planner.plan_fft_forward(n);
    let bwd = planner.plan_fft_inverse(n);
    let len = series.frames[0].len();
    let mut out = vec![vec![C64::new(0.0, 0.0); len]; n];
    let mut buf = vec![C64::new(0.0, 0.0); n];
    for j in 0..len {
        for (i, b) in buf.iter_mut().enumerate() {
            *b = series.frames[i][j] * window[i];
        }
        fwd.process(&mut buf);
        for (b, m) in buf.iter_mut().zip(&symbol) {
            *b *= m / n as f64;
        }
        bwd.process(&mut buf);
        for (i, b) in buf.iter().enumerate() {
            out[i][j] = *b;
        }
    }
    Ok(Series { frames: out, ..series.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::GridSpec;
    use crate::norms::SeriesKind;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn field_series(n: usize, dt: f64, mut f: impl FnMut(usize, usize) -> C64) -> Series {
        let g = GridSpec::new(1, 16, 4.0).unwrap();
        let frames = (0..n).map(|i| (0..16).map(|j| f(i, j)).collect()).collect();
        Series::new(g, SeriesKind::Field, dt, frames).unwrap()
    }

    #[test]
    fn resolved_tone_is_scaled() {
        let (n, dt) = (32, 0.1);
        let omega = 2.0 * PI * 3.0 / (n as f64 * dt);
        let s = field_series(n, dt, |i, _| C64::from_polar(1.0, omega * i as f64 * dt));
        let d = time_frac_deriv(&s, 0.25, Taper::None).unwrap();
        for (a, b) in d.frames.iter().zip(&s.frames) {
            assert!((a[0] - b[0] * omega.powf(0.25)).norm() < 1e-12);
        }
    }

    #[test]
    fn constant_is_annihilated() {
        let s = field_series(20, 0.05, |_, j| C64::new(j as f64, 1.0));
        let d = time_frac_deriv(&s, 0.25, Taper::None).unwrap();
        assert!(d.max_abs() < 1e-12);
        assert!(matches!(
            time_frac_deriv(&field_series(8, 0.1, |_, _| C64::new(1.0, 0.0)), 0.25, Taper::Hann),
            Err(Error::TooFewSamples { .. })
        ));
    }

    #[test]
    fn parseval_on_random_data() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let (n, dt) = (24, 0.07);
        let s = field_series(n, dt, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let d = time_frac_deriv(&s, 0.25, Taper::None).unwrap();
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(n);
        let period = n as f64 * dt;
        for j in 0..16 {
            let lhs: f64 = d.frames.iter().map(|f| f[j].norm_sqr()).sum::<f64>() * dt;
            let mut buf: Vec<C64> = s.frames.iter().map(|f| f[j]).collect();
            fwd.process(&mut buf);
            let rhs: f64 = buf
                .iter()
                .enumerate()
                .map(|(k, z)| {
                    let m = if k <= n / 2 { k as f64 } else { k as f64 - n as f64 };
                    (2.0 * PI * m / period).abs().sqrt() * z.norm_sqr()
                })
                .sum::<f64>()
                * dt
                / n as f64;
            assert!((lhs - rhs).abs() < 1e-10 * rhs.max(1.0));
        }
    }
}
