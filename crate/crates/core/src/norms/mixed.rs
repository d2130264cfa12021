use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::littlewood_paley::{Band, FreqVar};
use crate::rotate::permutation;

use super::series::{Series, SeriesKind};

/// Variable order of a pair-kernel mixed norm, outer variable first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ordering {
    /// `L^q(dx) L^r(dy)`.
    XThenY,
    /// `L^q(dy) L^r(dx)`.
    YThenX,
    /// `L^q(d(x-y)) L^r(d(x+y))`.
    DiffThenSum,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdmissiblePair {
    pub p: f64,
    pub q: f64,
}

fn inv(e: f64) -> f64 {
    if e.is_infinite() {
        0.0
    } else {
        1.0 / e
    }
}

fn from_inv(i: f64) -> f64 {
    if i <= 0.0 {
        f64::INFINITY
    } else {
        1.0 / i
    }
}

/// Smallest admissible time exponent: 4 in one dimension, 2 otherwise.
fn p_min(d: usize) -> f64 {
    if d == 1 {
        4.0
    } else {
        2.0
    }
}

fn check_dim(d: usize) -> Result<()> {
    if !(1..=3).contains(&d) {
        return Err(Error::BadDimension(d));
    }
    Ok(())
}

/// `q` with `2/p + d/q = d/2`.
fn admissible_q(d: usize, p: f64) -> f64 {
    from_inv(0.5 - 2.0 * inv(p) / d as f64)
}

/// `count` admissible pairs with `1/p` evenly spaced from `0` to the
/// endpoint, both endpoints included.
pub fn admissible_pairs(d: usize, count: usize) -> Result<Vec<AdmissiblePair>> {
    check_dim(d)?;
    if count < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 admissible pairs (got {count})")));
    }
    let top = 1.0 / p_min(d);
    Ok((0..count)
        .map(|i| {
            let p = from_inv(top * i as f64 / (count - 1) as f64);
            AdmissiblePair { p, q: admissible_q(d, p) }
        })
        .collect())
}

/// Conjugate exponent pairs `(p', q')` for `count` log-spaced `p` in
/// `[p0, p1]`.
pub fn dual_exponents(d: usize, count: usize, p0: f64, p1: f64) -> Result<Vec<AdmissiblePair>> {
    check_dim(d)?;
    if !(p0 > p_min(d)) || !(p1 >= p0) || count == 0 {
        return Err(Error::InvalidArgument(format!("bad dual range [{p0}, {p1}] for d = {d}")));
    }
    let conj = |e: f64| if e.is_infinite() { 1.0 } else { e / (e - 1.0) };
    Ok((0..count)
        .map(|i| {
            let f = if count == 1 { 0.0 } else { i as f64 / (count - 1) as f64 };
            let p = p0 * (p1 / p0).powf(f);
            AdmissiblePair { p: conj(p), q: conj(admissible_q(d, p)) }
        })
        .collect())
}

fn check_exponent(e: f64) -> Result<()> {
    if !(e >= 1.0) {
        return Err(Error::InvalidExponent(e));
    }
    Ok(())
}

/// `(Σ |v|^p cell)^{1/p}`, or the maximum for `p = ∞`.
fn lp(values: impl Iterator<Item = f64>, p: f64, cell: f64) -> f64 {
    if p.is_infinite() {
        values.fold(0.0, f64::max)
    } else if p == 1.0 {
        values.sum::<f64>() * cell
    } else if p == 2.0 {
        (values.map(|v| v * v).sum::<f64>() * cell).sqrt()
    } else {
        (values.map(|v| v.powf(p)).sum::<f64>() * cell).powf(1.0 / p)
    }
}

/// `L^p` over time of per-sample values.
pub fn time_norm(values: &[f64], dt: f64, p: f64) -> f64 {
    if p.is_infinite() {
        return values.iter().cloned().fold(0.0, f64::max);
    }
    let n = values.len().saturating_sub(1);
    lp(values[..n].iter().cloned(), p, dt)
}

fn pair_spatial(
    frame: &[num_complex::Complex64],
    grid: &GridSpec,
    q: f64,
    r: f64,
    ordering: Ordering,
    perm: &[usize],
) -> f64 {
    let n = grid.sites();
    let h = grid.cell();
    let inner: Vec<f64> = match ordering {
        Ordering::XThenY => (0..n).map(|x| lp(frame[x * n..(x + 1) * n].iter().map(|z| z.norm()), r, h)).collect(),
        Ordering::YThenX => (0..n).map(|y| lp((0..n).map(|x| frame[x * n + y].norm()), r, h)).collect(),
        Ordering::DiffThenSum => {
            let wcell = h * 2f64.powi(grid.dim() as i32);
            (0..n).map(|a| lp(perm[a * n..(a + 1) * n].iter().map(|&s| frame[s].norm()), r, wcell)).collect()
        }
    };
    lp(inner.into_iter(), q, h)
}

fn require(series: &Series, kind: SeriesKind) -> Result<()> {
    if series.kind != kind {
        return Err(Error::InvalidArgument(format!("expected a {kind:?} series")));
    }
    Ok(())
}

/// `L^{p_t}(dt) L^q(outer) L^r(inner)` of a pair series.
pub fn mixed_norm(series: &Series, p_t: f64, q: f64, r: f64, ordering: Ordering) -> Result<f64> {
    require(series, SeriesKind::Pair)?;
    for e in [p_t, q, r] {
        check_exponent(e)?;
    }
    let perm = if ordering == Ordering::DiffThenSum { permutation(&series.grid) } else { Vec::new() };
    let per: Vec<f64> = series.frames.iter().map(|f| pair_spatial(f, &series.grid, q, r, ordering, &perm)).collect();
    Ok(time_norm(&per, series.dt, p_t))
}

/// `L^{p_t}(dt) L^q(dx)` of a field series.
pub fn field_norm(series: &Series, p_t: f64, q: f64) -> Result<f64> {
    require(series, SeriesKind::Field)?;
    check_exponent(p_t)?;
    check_exponent(q)?;
    let h = series.grid.cell();
    let per: Vec<f64> = series.frames.iter().map(|f| lp(f.iter().map(|z| z.norm()), q, h)).collect();
    Ok(time_norm(&per, series.dt, p_t))
}

/// `L^a(d(x-y)) L²(dt) L²(d(x+y))`.
pub fn diff_outer_norm(series: &Series, a: f64) -> Result<f64> {
    require(series, SeriesKind::Pair)?;
    check_exponent(a)?;
    let g = series.grid;
    let n = g.sites();
    let perm = permutation(&g);
    let wcell = g.cell() * 2f64.powi(g.dim() as i32);
    let steps = series.len().saturating_sub(1);
    let mut line = vec![0.0; n];
    for frame in &series.frames[..steps] {
        for (u, acc) in line.iter_mut().enumerate() {
            *acc += perm[u * n..(u + 1) * n].iter().map(|&s| frame[s].norm_sqr()).sum::<f64>();
        }
    }
    let scale = wcell * series.dt;
    Ok(lp(line.into_iter().map(|v| (v * scale).sqrt()), a, g.cell()))
}

/// `sup_{x-y} ‖·‖_{L²(dt) L²(d(x+y))}`.
pub fn collapsing(series: &Series) -> Result<f64> {
    diff_outer_norm(series, f64::INFINITY)
}

/// Sum of the collapsing norms of `P_{|ξ-η|<cN}`, `P_{|ξ|<cN}`,
/// `P_{|η|<cN}` applied to the series, `c = factor`.
pub fn low_collapsing(series: &Series, n_particles: f64, factor: f64) -> Result<f64> {
    let cut = factor * n_particles;
    let mut total = 0.0;
    for var in [FreqVar::XiMinusEta, FreqVar::Xi, FreqVar::Eta] {
        total += collapsing(&series.project(Band::Below(cut), var)?)?;
    }
    Ok(total)
}

fn sup_over(series: &Series, pairs: &[AdmissiblePair], ordering: Ordering) -> Result<f64> {
    let mut best = 0.0f64;
    for pr in pairs {
        best = best.max(mixed_norm(series, pr.p, pr.q, 2.0, ordering)?);
    }
    Ok(best)
}

/// Partial Strichartz norm: sup over pairs in the `x`-outer ordering plus
/// the sup in the `y`-outer ordering.
pub fn strichartz_xy(series: &Series, pairs: &[AdmissiblePair]) -> Result<f64> {
    Ok(sup_over(series, pairs, Ordering::XThenY)? + sup_over(series, pairs, Ordering::YThenX)?)
}

/// Partial norm plus the sup in the `(x-y)`-outer ordering.
pub fn strichartz_full(series: &Series, pairs: &[AdmissiblePair]) -> Result<f64> {
    Ok(strichartz_xy(series, pairs)? + sup_over(series, pairs, Ordering::DiffThenSum)?)
}

/// `sup ‖u‖_{L^p(dt) L^q(dx)}` for a field series.
pub fn strichartz_field(series: &Series, pairs: &[AdmissiblePair]) -> Result<f64> {
    let mut best = 0.0f64;
    for pr in pairs {
        best = best.max(field_norm(series, pr.p, pr.q)?);
    }
    Ok(best)
}

/// Restricted dual norm: minimum over conjugate exponents and both
/// orderings.
pub fn dual_restricted(series: &Series, duals: &[AdmissiblePair]) -> Result<f64> {
    let mut best = f64::INFINITY;
    for pr in duals {
        for ord in [Ordering::XThenY, Ordering::YThenX] {
            best = best.min(mixed_norm(series, pr.p, pr.q, 2.0, ord)?);
        }
    }
    Ok(best)
}

/// `Σ_k ‖P_{|ξ-η|∼2^k} u‖²_{S_xy} / ‖u‖²_{S_xy}` over all annuli meeting
/// the lattice.
pub fn square_function_ratio(series: &Series, pairs: &[AdmissiblePair]) -> Result<f64> {
    let whole = strichartz_xy(series, pairs)?;
    if whole == 0.0 {
        return Ok(1.0);
    }
    let limit = FreqVar::XiMinusEta.lattice_limit(&series.grid);
    let mut sum = 0.0;
    let mut k = 0;
    while k == 0 || 2f64.powi(k - 1) <= limit {
        let piece = series.project(Band::DyadicAnnulus(k), FreqVar::XiMinusEta)?;
        sum += strichartz_xy(&piece, pairs)?.powi(2);
        k += 1;
    }
    Ok(sum / whole.powi(2))
}
