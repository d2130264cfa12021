use std::sync::Arc;

use num_complex::Complex64 as C64;
use rustfft::{Fft, FftPlanner};

/// Forward/inverse FFT plans for one axis length, applied along any subset of
/// axes of a row-major cube whose axes all have that length.
///
/// Forward transforms are unnormalized; inverse transforms divide by `M` per
/// transformed axis.
#[derive(Clone)]
pub struct Fourier {
    m: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for Fourier {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Fourier").field("m", &self.m).finish()
    }
}

impl Fourier {
    pub fn new(m: usize) -> Self {
        let mut planner = FftPlanner::new();
        Fourier { m, forward: planner.plan_fft_forward(m), inverse: planner.plan_fft_inverse(m) }
    }

    pub fn forward(&self, data: &mut [C64], rank: usize, axes: &[usize]) {
        self.run(data, rank, axes, false);
    }

    pub fn inverse(&self, data: &mut [C64], rank: usize, axes: &[usize]) {
        self.run(data, rank, axes, true);
        let scale = 1.0 / (self.m as f64).powi(axes.len() as i32);
        for v in data.iter_mut() {
            *v *= scale;
        }
    }

    fn run(&self, data: &mut [C64], rank: usize, axes: &[usize], inverse: bool) {
        let m = self.m;
        debug_assert_eq!(data.len(), m.pow(rank as u32));
        let plan = if inverse { &self.inverse } else { &self.forward };
        let mut scratch = vec![C64::new(0.0, 0.0); plan.get_inplace_scratch_len()];
        let mut block = Vec::new();
        for &axis in axes {
            debug_assert!(axis < rank);
            let stride = m.pow((rank - 1 - axis) as u32);
            if stride == 1 {
                plan.process_with_scratch(data, &mut scratch);
                continue;
            }
            // Transpose each [m × stride] slab so the axis becomes contiguous.
            let slab = m * stride;
            block.resize(slab, C64::new(0.0, 0.0));
            for chunk in data.chunks_mut(slab) {
                for i in 0..m {
                    let row = &chunk[i * stride..(i + 1) * stride];
                    for (s, v) in row.iter().enumerate() {
                        block[s * m + i] = *v;
                    }
                }
                plan.process_with_scratch(&mut block, &mut scratch);
                for i in 0..m {
                    let row = &mut chunk[i * stride..(i + 1) * stride];
                    for (s, v) in row.iter_mut().enumerate() {
                        *v = block[s * m + i];
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(len: usize, seed: u64) -> Vec<C64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..len).map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect()
    }

    fn dft_axis(data: &[C64], m: usize, rank: usize, axis: usize) -> Vec<C64> {
        let stride = m.pow((rank - 1 - axis) as u32);
        let mut out = vec![C64::new(0.0, 0.0); data.len()];
        for (idx, o) in out.iter_mut().enumerate() {
            let k = (idx / stride) % m;
            let base = idx - k * stride;
            for j in 0..m {
                let ang = -2.0 * std::f64::consts::PI * (j * k) as f64 / m as f64;
                *o += data[base + j * stride] * C64::from_polar(1.0, ang);
            }
        }
        out
    }

    #[test]
    fn matches_direct_dft_on_each_axis() {
        let m = 8;
        let data = random(m * m * m, 3);
        for axis in 0..3 {
            let mut fast = data.clone();
            Fourier::new(m).forward(&mut fast, 3, &[axis]);
            let slow = dft_axis(&data, m, 3, axis);
            for (a, b) in fast.iter().zip(&slow) {
                assert!((a - b).norm() < 1e-11);
            }
        }
    }

    #[test]
    fn roundtrip_all_axes() {
        let m = 16;
        let data = random(m * m, 9);
        let f = Fourier::new(m);
        let mut x = data.clone();
        f.forward(&mut x, 2, &[0, 1]);
        f.inverse(&mut x, 2, &[0, 1]);
        for (a, b) in x.iter().zip(&data) {
            assert!((a - b).norm() < 1e-13);
        }
    }
}
