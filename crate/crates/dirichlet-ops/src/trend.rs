//! Grid-trend classification shared by the compactness indicators.
//!
//! Limit statements (`ratio -> 0` as the scale shrinks) are only ever probed
//! on finite geometric grids here, so the verdicts are explicitly trends,
//! not limits.

use serde::Serialize;

/// What a ratio sequence does as its scale decreases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Trend {
    /// Decays toward zero across the grid.
    Vanishing,
    /// Stays bounded away from zero.
    Persistent,
}

impl Trend {
    pub fn label(self) -> &'static str {
        match self {
            Trend::Vanishing => "vanishing",
            Trend::Persistent => "persistent",
        }
    }
}

/// Classify `(scale, value)` pairs with scales decreasing toward zero.
///
/// Vanishing means the value at the smallest scale has dropped below 2% of
/// the value at the largest scale (or below an absolute floor; identically
/// tiny sequences count as vanishing).
pub fn classify(pairs: &[(f64, f64)]) -> Trend {
    assert!(!pairs.is_empty());
    let mut sorted: Vec<(f64, f64)> = pairs.to_vec();
    sorted.sort_by(|a, b| b.0.total_cmp(&a.0));
    let first = sorted.first().unwrap().1.abs();
    let last = sorted.last().unwrap().1.abs();
    if last <= (0.02 * first).max(1e-9) {
        Trend::Vanishing
    } else {
        Trend::Persistent
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_ratio_persists() {
        let pairs: Vec<(f64, f64)> = (1..=10).map(|j| (2f64.powi(-j), 0.5)).collect();
        assert_eq!(classify(&pairs), Trend::Persistent);
    }

    #[test]
    fn linear_decay_vanishes() {
        let pairs: Vec<(f64, f64)> = (1..=12).map(|j| (2f64.powi(-j), 2f64.powi(-j))).collect();
        assert_eq!(classify(&pairs), Trend::Vanishing);
    }

    #[test]
    fn identically_zero_vanishes() {
        let pairs: Vec<(f64, f64)> = (1..=5).map(|j| (2f64.powi(-j), 0.0)).collect();
        assert_eq!(classify(&pairs), Trend::Vanishing);
    }
}
