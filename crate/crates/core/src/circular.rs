//! Circular statistics on phases.

use std::f64::consts::TAU;

use crate::geometry::wrap_finite;

/// Shortest angular distance between two phases, in `[0, π]`.
pub fn circular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).abs().rem_euclid(TAU);
    d.min(TAU - d)
}

/// Mean direction of a set of phases, wrapped to `[0, 2π)`.
///
/// Returns `None` for an empty set or when the resultant vector vanishes
/// (e.g. two antipodal phases), where the mean direction is undefined.
pub fn circular_mean(phases: &[f64]) -> Option<f64> {
    let (s, c) = phases
        .iter()
        .fold((0.0, 0.0), |(s, c), p| (s + p.sin(), c + p.cos()));
    let r = s.hypot(c);
    if phases.is_empty() || r <= 1e-12 * phases.len() as f64 {
        return None;
    }
    Some(wrap_finite(s.atan2(c)))
}

/// Largest pairwise circular distance in a set of phases.
pub fn circular_spread(phases: &[f64]) -> f64 {
    let mut spread: f64 = 0.0;
    for (i, a) in phases.iter().enumerate() {
        for b in &phases[i + 1..] {
            spread = spread.max(circular_distance(*a, *b));
        }
    }
    spread
}
