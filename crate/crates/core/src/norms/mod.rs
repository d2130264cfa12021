//! Space-time norms of sampled trajectories: mixed Lebesgue norms in the
//! `x`, `y`, `x - y`, `x + y` variables, Strichartz and restricted dual
//! norms over admissible exponents, collapsing norms, and a fractional time
//! derivative.
//!
//! Time integrals use the left rectangle rule on the uniform samples, so a
//! window of `n` samples has length `(n - 1)Δ`; `L^∞` in time is the maximum
//! over all samples. Spatial integrals are lattice sums with the cell size of
//! the variable (`h^d` for `x`, `y`, `x - y` and `(2h)^d` for `x + y`).

mod mixed;
mod report;
mod series;
mod time;

pub use mixed::{
    admissible_pairs, collapsing, diff_outer_norm, dual_exponents, dual_restricted, field_norm, low_collapsing,
    mixed_norm, square_function_ratio, strichartz_field, strichartz_full, strichartz_xy, time_norm, AdmissiblePair,
    Ordering,
};
pub use report::{
    evaluate_norm, norm_report, uniform_in_n_report, GrowthEntry, GrowthSummary, NormConfig, NormReport, NORM_NAMES,
};
pub use series::{Selector, Series, SeriesKind};
pub use time::{time_frac_deriv, Taper, MIN_TIME_SAMPLES};
