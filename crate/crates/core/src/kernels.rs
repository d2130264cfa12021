//! Kernel algebra: composition, hyperbolic functions of a pair kernel, and
//! assembly of the normal and pair density matrices.
//!
//! A kernel `K(x, y)` acts as the operator `f ↦ h^d Σ_y K(x, y) f(y)`, so its
//! matrix is `K̃ = h^d K`. With that convention
//!
//! ```text
//! exp [[0, K̃], [conj(K̃), 0]] = [[conj(ch̃), sh̃], [conj(sh̃), ch̃]]
//! ch̃ = Σ (conj(K̃) K̃)^n / (2n)!
//! sh̃ = Σ (K̃ conj(K̃))^n K̃ / (2n+1)!
//! ```
//!
//! and the identities `ch∘ch - conj(sh)∘sh = δ_h`, `sh(2k) = 2 sh∘ch` hold.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::expm::expm;
use crate::field::{OneBodyField, PairKernel, Symmetry};
use crate::grid::GridSpec;
use crate::linalg::{frobenius, gemm, identity, inverse, mul};

pub const SERIES_TERM_CAP: usize = 40;
pub const SERIES_TOL: f64 = 1e-12;
const ORACLE_SITE_LIMIT: usize = 64;

fn same_grid(a: &PairKernel, b: &PairKernel) -> Result<()> {
    if a.grid != b.grid {
        return Err(Error::GridMismatch);
    }
    Ok(())
}

/// `(a∘b)(x, y) = h^d Σ_z a(x, z) b(z, y)`.
pub fn compose(a: &PairKernel, b: &PairKernel) -> Result<PairKernel> {
    same_grid(a, b)?;
    let n = a.n();
    let mut out = vec![C64::new(0.0, 0.0); n * n];
    gemm(&mut out, &a.values, &b.values, n, C64::new(a.grid.cell(), 0.0), false);
    Ok(PairKernel::raw(a.grid, out, Symmetry::None))
}

/// Matrix `W[x][z] = V(x - z)` of a one-body weight.
pub fn difference_matrix(v: &OneBodyField) -> Vec<C64> {
    let g = v.grid;
    let n = g.sites();
    let mut w = Vec::with_capacity(n * n);
    for x in 0..n {
        for z in 0..n {
            w.push(v.values[g.difference(x, z)]);
        }
    }
    w
}

fn check_real(v: &OneBodyField) -> Result<()> {
    let scale = v.norm_sup().max(f64::MIN_POSITIVE);
    let im = v.max_imag();
    if im > 1e-12 * scale {
        return Err(Error::ComplexWeight(im));
    }
    Ok(())
}

/// `h^d Σ_z V(x - z) a(x, z) b(z, y)`.
pub fn weighted_compose(v: &OneBodyField, a: &PairKernel, b: &PairKernel) -> Result<PairKernel> {
    same_grid(a, b)?;
    if v.grid != a.grid {
        return Err(Error::GridMismatch);
    }
    check_real(v)?;
    let n = a.n();
    let w = difference_matrix(v);
    let wa: Vec<C64> = w.iter().zip(&a.values).map(|(w, a)| a * w.re).collect();
    let mut out = vec![C64::new(0.0, 0.0); n * n];
    gemm(&mut out, &wa, &b.values, n, C64::new(a.grid.cell(), 0.0), false);
    Ok(PairKernel::raw(a.grid, out, Symmetry::None))
}

/// `h^d Σ_x g(x, x)`.
pub fn trace(g: &PairKernel) -> C64 {
    let n = g.n();
    let s: C64 = (0..n).map(|i| g.values[i * n + i]).sum();
    s * g.grid.cell()
}

#[derive(Debug, Clone)]
pub struct BogoliubovPair {
    /// Hermitian; includes the delta part `δ_h`.
    pub ch: PairKernel,
    /// Symmetric.
    pub sh: PairKernel,
    pub source_k: PairKernel,
    pub series_terms_used: usize,
    pub truncation_residual: f64,
}

fn require_symmetric(k: &PairKernel) -> Result<()> {
    let defect = k.symmetry_defect(Symmetry::Symmetric);
    if defect > 1e-12 {
        return Err(Error::NotSymmetric("symmetric", defect));
    }
    Ok(())
}

fn from_matrices(
    grid: GridSpec,
    ch: Vec<C64>,
    sh: Vec<C64>,
    k: &PairKernel,
    terms: usize,
    residual: f64,
) -> BogoliubovPair {
    let inv = 1.0 / grid.cell();
    let mut ch = PairKernel::raw(grid, ch.into_iter().map(|v| v * inv).collect(), Symmetry::None);
    let mut sh = PairKernel::raw(grid, sh.into_iter().map(|v| v * inv).collect(), Symmetry::None);
    ch.symmetrize(Symmetry::Hermitian);
    sh.symmetrize(Symmetry::Symmetric);
    BogoliubovPair { ch, sh, source_k: k.clone(), series_terms_used: terms, truncation_residual: residual }
}

/// Sums the sh/ch series until the next term's `L²(dx dy)` norm is below
/// `tol`.
pub fn sh_ch_from_k(k: &PairKernel, tol: f64) -> Result<BogoliubovPair> {
    require_symmetric(k)?;
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive (got {tol})")));
    }
    let grid = k.grid;
    let n = k.n();
    let kt: Vec<C64> = k.values.iter().map(|v| v * grid.cell()).collect();
    let kt_bar: Vec<C64> = kt.iter().map(|v| v.conj()).collect();
    let p = mul(&kt_bar, &kt, n);

    let mut ch = identity(n);
    let mut sh = kt.clone();
    let mut tc = identity(n);
    let mut ts = kt;
    let mut terms = 1;
    let mut residual = frobenius(&ts);
    let mut next_c = vec![C64::new(0.0, 0.0); n * n];
    let mut next_s = vec![C64::new(0.0, 0.0); n * n];
    while residual >= tol {
        if terms >= SERIES_TERM_CAP {
            return Err(Error::SeriesNotConverged { terms, residual });
        }
        let m = terms as f64;
        gemm(&mut next_c, &tc, &p, n, C64::new(1.0 / ((2.0 * m - 1.0) * (2.0 * m)), 0.0), false);
        gemm(&mut next_s, &ts, &p, n, C64::new(1.0 / ((2.0 * m) * (2.0 * m + 1.0)), 0.0), false);
        std::mem::swap(&mut tc, &mut next_c);
        std::mem::swap(&mut ts, &mut next_s);
        for (a, b) in ch.iter_mut().zip(&tc) {
            *a += b;
        }
        for (a, b) in sh.iter_mut().zip(&ts) {
            *a += b;
        }
        terms += 1;
        residual = frobenius(&tc).max(frobenius(&ts));
    }
    Ok(from_matrices(grid, ch, sh, k, terms, residual))
}

/// Reads `ch`, `sh` off the exponential of the `2n × 2n` block generator.
pub fn block_exp_oracle(k: &PairKernel) -> Result<BogoliubovPair> {
    require_symmetric(k)?;
    let grid = k.grid;
    let n = k.n();
    if n > ORACLE_SITE_LIMIT {
        return Err(Error::OracleGridTooLarge(n));
    }
    let m = 2 * n;
    let mut gen = vec![C64::new(0.0, 0.0); m * m];
    for i in 0..n {
        for j in 0..n {
            let v = k.values[i * n + j] * grid.cell();
            gen[i * m + n + j] = v;
            gen[(n + i) * m + j] = v.conj();
        }
    }
    let e = expm(&gen, m);
    let mut ch = vec![C64::new(0.0, 0.0); n * n];
    let mut sh = vec![C64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..n {
            ch[i * n + j] = e[(n + i) * m + n + j];
            sh[i * n + j] = e[i * m + n + j];
        }
    }
    Ok(from_matrices(grid, ch, sh, k, 0, 0.0))
}

impl BogoliubovPair {
    /// `sh(2k) = 2 sh∘ch`.
    pub fn sh2k(&self) -> PairKernel {
        let mut s = compose(&self.sh, &self.ch).expect("same grid").scale(C64::new(2.0, 0.0));
        s.symmetrize(Symmetry::Symmetric);
        s
    }

    /// `ch∘ch - conj(sh)∘sh - δ_h` in `L²(dx dy)`.
    pub fn symplectic_residual(&self) -> f64 {
        let a = compose(&self.ch, &self.ch).unwrap();
        let b = compose(&self.sh.conj(), &self.sh).unwrap();
        let d = PairKernel::delta(self.ch.grid);
        a.sub(&b).unwrap().sub(&d).unwrap().norm_l2()
    }

    /// `½ sh(2k)∘ch^{-1}`, which should reproduce `sh`.
    pub fn sh_from_sh2k(&self) -> PairKernel {
        let g = self.ch.grid;
        let n = g.sites();
        // ch^{-1} as a kernel has matrix (ch̃)^{-1}, i.e. values inv / h^d.
        let cht: Vec<C64> = self.ch.values.iter().map(|v| v * g.cell()).collect();
        let inv: Vec<C64> = inverse(&cht, n).into_iter().map(|v| v / g.cell()).collect();
        let inv = PairKernel::raw(g, inv, Symmetry::Hermitian);
        compose(&self.sh2k(), &inv).unwrap().scale(C64::new(0.5, 0.0))
    }
}

#[derive(Debug, Clone)]
pub struct Densities {
    pub gamma: PairKernel,
    pub lambda: PairKernel,
    pub gamma_p: PairKernel,
    pub lambda_p: PairKernel,
    pub gamma_c: PairKernel,
    pub lambda_c: PairKernel,
    pub rho: OneBodyField,
}

/// `Γ_c = conj(φ)⊗φ`.
pub fn gamma_condensate(phi: &OneBodyField) -> PairKernel {
    let mut g = PairKernel::outer(&phi.conj(), phi).unwrap();
    g.symmetry = Symmetry::Hermitian;
    g
}

/// `Λ_c = φ⊗φ`.
pub fn lambda_condensate(phi: &OneBodyField) -> PairKernel {
    let mut l = PairKernel::outer(phi, phi).unwrap();
    l.symmetry = Symmetry::Symmetric;
    l
}

/// `ρ(x) = |φ(x)|² + Γ_p(x, x)`, real part kept.
pub fn density(phi: &OneBodyField, gamma_p: &PairKernel) -> OneBodyField {
    let n = phi.grid.sites();
    let values = (0..n).map(|i| C64::new(phi.values[i].norm_sqr() + gamma_p.values[i * n + i].re, 0.0)).collect();
    OneBodyField { grid: phi.grid, values }
}

pub fn pair_densities(pair: &BogoliubovPair, n_particles: f64) -> Result<(PairKernel, PairKernel)> {
    if !(n_particles > 0.0) {
        return Err(Error::NonPositiveN(n_particles));
    }
    let inv = C64::new(1.0 / n_particles, 0.0);
    let mut gamma_p = compose(&pair.sh.conj(), &pair.sh)?.scale(inv);
    gamma_p.symmetrize(Symmetry::Hermitian);
    let mut lambda_p = pair.sh2k().scale(C64::new(0.5 / n_particles, 0.0));
    lambda_p.symmetrize(Symmetry::Symmetric);
    Ok((gamma_p, lambda_p))
}

pub fn assemble_densities(phi: &OneBodyField, pair: &BogoliubovPair, n_particles: f64) -> Result<Densities> {
    if phi.grid != pair.sh.grid {
        return Err(Error::GridMismatch);
    }
    let (gamma_p, lambda_p) = pair_densities(pair, n_particles)?;
    let gamma_c = gamma_condensate(phi);
    let lambda_c = lambda_condensate(phi);
    let gamma = gamma_p.add(&gamma_c)?;
    let lambda = lambda_p.add(&lambda_c)?;
    let rho = density(phi, &gamma_p);
    Ok(Densities { gamma, lambda, gamma_p, lambda_p, gamma_c, lambda_c, rho })
}

/// Smallest eigenvalue of `h^d Γ` (a Gram form for `Γ_p`).
pub fn min_eigenvalue(g: &PairKernel) -> f64 {
    let n = g.n();
    let m: Vec<C64> = g.values.iter().map(|v| v * g.grid.cell()).collect();
    crate::linalg::hermitian_eigenvalues(&m, n).first().copied().unwrap_or(0.0)
}
