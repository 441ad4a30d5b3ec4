//! Probability densities on `(0, +infinity)` and the derived space data:
//! coefficient weights `w_h(n)`, the accumulated weight `beta_h`, condition
//! (kappa), and the per-index weight identity behind the Littlewood-Paley
//! formula.
//!
//! A measure `d mu = h(sigma) d sigma` with `0 in Supp(mu)` determines the
//! weighted Bergman space through
//!
//! ```text
//! w_h(n)      = int_0^inf n^{-2 sigma} h(sigma) d sigma,
//! beta_h(s)   = int_0^s (s - u) h(u) du.
//! ```
//!
//! Two density families are supported: the alpha family
//! `h_a(sigma) = 2^{a+1}/Gamma(a+1) sigma^a exp(-2 sigma)` with closed-form
//! weights `(1 + ln n)^{-(a+1)}`, and tabulated piecewise-linear densities
//! with compact support, integrated cell-exactly.

use crate::error::{Error, Result};
use crate::quad::adaptive_simpson;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::{gamma, gamma_lr, gamma_ur};

#[derive(Debug, Clone)]
enum Kind {
    Alpha {
        alpha: f64,
        /// 2^{alpha+1} / Gamma(alpha+1)
        norm: f64,
    },
    Tabulated {
        grid: Vec<f64>,
        values: Vec<f64>,
        /// prefix integrals of h and u h(u) at grid nodes
        cum_mass: Vec<f64>,
        cum_moment: Vec<f64>,
    },
}

/// A density `h` on `(0, +infinity)` with unit mass and `0` in its support.
#[derive(Debug, Clone)]
pub struct MeasureDensity {
    kind: Kind,
    /// declared target accuracy for quadrature-backed quantities
    pub quad_tol: f64,
}

/// How a weight value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightProvenance {
    ClosedForm,
    CellExactQuadrature,
}

impl MeasureDensity {
    /// The alpha family, `alpha > -1`.
    pub fn alpha(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= -1.0 {
            return Err(Error::InvalidDensity(format!(
                "alpha must be finite and > -1, got {alpha}"
            )));
        }
        Ok(MeasureDensity {
            kind: Kind::Alpha {
                alpha,
                norm: 2f64.powf(alpha + 1.0) / gamma(alpha + 1.0),
            },
            quad_tol: 1e-10,
        })
    }

    /// A piecewise-linear density sampled on an increasing grid.
    ///
    /// The grid must start at 0 (so that 0 stays in the support), values must
    /// be nonnegative with positive mass near 0, and the total mass must be 1
    /// to within 1e-6; use [`MeasureDensity::tabulated_normalized`] to rescale
    /// arbitrary samples.
    pub fn tabulated(grid: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if grid.len() < 2 || grid.len() != values.len() {
            return Err(Error::InvalidDensity(
                "need matching grid/values with at least two nodes".into(),
            ));
        }
        if grid[0] != 0.0 {
            return Err(Error::InvalidDensity(
                "grid must start at 0 so that 0 lies in the support".into(),
            ));
        }
        if grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidDensity("grid must be strictly increasing".into()));
        }
        if values.iter().any(|&v| v < 0.0 || !v.is_finite()) {
            return Err(Error::InvalidDensity("density values must be >= 0".into()));
        }
        if values[0] == 0.0 && values[1] == 0.0 {
            return Err(Error::InvalidDensity(
                "density vanishes identically near 0; 0 must lie in the support".into(),
            ));
        }
        let mut cum_mass = vec![0.0; grid.len()];
        let mut cum_moment = vec![0.0; grid.len()];
        for i in 0..grid.len() - 1 {
            let dx = grid[i + 1] - grid[i];
            let (v0, v1) = (values[i], values[i + 1]);
            let slope = (v1 - v0) / dx;
            cum_mass[i + 1] = cum_mass[i] + dx * (v0 + v1) / 2.0;
            cum_moment[i + 1] = cum_moment[i]
                + grid[i] * dx * (v0 + v1) / 2.0
                + v0 * dx * dx / 2.0
                + slope * dx * dx * dx / 3.0;
        }
        let mass = *cum_mass.last().unwrap();
        if (mass - 1.0).abs() > 1e-6 {
            return Err(Error::InvalidDensity(format!(
                "total mass {mass} differs from 1; normalize the samples first"
            )));
        }
        Ok(MeasureDensity {
            kind: Kind::Tabulated {
                grid,
                values,
                cum_mass,
                cum_moment,
            },
            quad_tol: 1e-10,
        })
    }

    /// Tabulated density with the values rescaled to unit mass.
    pub fn tabulated_normalized(grid: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        let mut mass = 0.0;
        for i in 0..grid.len().saturating_sub(1) {
            mass += (grid[i + 1] - grid[i]) * (values[i] + values[i + 1]) / 2.0;
        }
        if mass <= 0.0 {
            return Err(Error::InvalidDensity("cannot normalize zero mass".into()));
        }
        Self::tabulated(grid, values.into_iter().map(|v| v / mass).collect())
    }

    /// The uniform density on `(0, 1)`; a nondecreasing example.
    pub fn uniform_unit() -> Self {
        Self::tabulated(vec![0.0, 1.0], vec![1.0, 1.0]).expect("valid by construction")
    }

    /// Pointwise density value `h(sigma)` (0 outside the support; for the
    /// alpha family with `alpha < 0` the value diverges as `sigma -> 0`).
    pub fn density(&self, sigma: f64) -> f64 {
        match &self.kind {
            Kind::Alpha { alpha, norm } => {
                if sigma < 0.0 {
                    0.0
                } else if sigma == 0.0 {
                    match alpha.partial_cmp(&0.0).unwrap() {
                        std::cmp::Ordering::Less => f64::INFINITY,
                        std::cmp::Ordering::Equal => *norm,
                        std::cmp::Ordering::Greater => 0.0,
                    }
                } else {
                    norm * sigma.powf(*alpha) * (-2.0 * sigma).exp()
                }
            }
            Kind::Tabulated { grid, values, .. } => {
                let end = *grid.last().unwrap();
                if sigma < 0.0 || sigma > end {
                    return 0.0;
                }
                let i = cell_index(grid, sigma);
                let dx = grid[i + 1] - grid[i];
                let t = (sigma - grid[i]) / dx;
                values[i] * (1.0 - t) + values[i + 1] * t
            }
        }
    }

    /// Distribution function `int_0^sigma h(u) du`.
    pub fn cdf(&self, sigma: f64) -> f64 {
        if sigma <= 0.0 {
            return 0.0;
        }
        match &self.kind {
            Kind::Alpha { alpha, .. } => gamma_lr(alpha + 1.0, 2.0 * sigma),
            Kind::Tabulated {
                grid,
                values,
                cum_mass,
                ..
            } => {
                let end = *grid.last().unwrap();
                if sigma >= end {
                    return *cum_mass.last().unwrap();
                }
                let i = cell_index(grid, sigma);
                let x = sigma - grid[i];
                let dx = grid[i + 1] - grid[i];
                let slope = (values[i + 1] - values[i]) / dx;
                cum_mass[i] + values[i] * x + slope * x * x / 2.0
            }
        }
    }

    /// First-moment prefix `int_0^sigma u h(u) du`.
    fn moment(&self, sigma: f64) -> f64 {
        if sigma <= 0.0 {
            return 0.0;
        }
        match &self.kind {
            Kind::Alpha { alpha, .. } => {
                // int u h = (alpha+1)/2 * P(alpha+2, 2 sigma)
                (alpha + 1.0) / 2.0 * gamma_lr(alpha + 2.0, 2.0 * sigma)
            }
            Kind::Tabulated {
                grid,
                values,
                cum_moment,
                ..
            } => {
                let end = *grid.last().unwrap();
                if sigma >= end {
                    return *cum_moment.last().unwrap();
                }
                let i = cell_index(grid, sigma);
                let x = sigma - grid[i];
                let dx = grid[i + 1] - grid[i];
                let slope = (values[i + 1] - values[i]) / dx;
                cum_moment[i]
                    + grid[i] * (values[i] * x + slope * x * x / 2.0)
                    + values[i] * x * x / 2.0
                    + slope * x * x * x / 3.0
            }
        }
    }

    /// `beta_h(sigma) = int_0^sigma (sigma - u) h(u) du`, the accumulated
    /// weight entering the Littlewood-Paley formula. Nonnegative, convex,
    /// nondecreasing, and bounded by `sigma`.
    pub fn beta(&self, sigma: f64) -> f64 {
        if sigma <= 0.0 {
            return 0.0;
        }
        sigma * self.cdf(sigma) - self.moment(sigma)
    }

    /// `G(sigma) = beta_h(sigma) / sigma`, the ratio tested by condition
    /// (kappa).
    pub fn beta_over_sigma(&self, sigma: f64) -> f64 {
        assert!(sigma > 0.0);
        self.beta(sigma) / sigma
    }

    /// Coefficient weight `w_h(n)`; closed form for the alpha family,
    /// cell-exact integration for tabulated densities.
    pub fn weight(&self, n: u64) -> Result<f64> {
        if n == 0 {
            return Err(Error::ZeroIndex);
        }
        Ok(self.weight_from_log((n as f64).ln()))
    }

    /// Weight as a function of `ln n`, valid for arbitrary real `ln n >= 0`.
    /// This is what kernel sums over huge smooth indices evaluate.
    pub fn weight_from_log(&self, ln_n: f64) -> f64 {
        assert!(ln_n >= 0.0);
        match &self.kind {
            Kind::Alpha { alpha, .. } => (1.0 + ln_n).powf(-(alpha + 1.0)),
            Kind::Tabulated { grid, values, .. } => {
                if ln_n == 0.0 {
                    return self.total_mass();
                }
                let c = 2.0 * ln_n;
                let mut acc = 0.0;
                for i in 0..grid.len() - 1 {
                    let dx = grid[i + 1] - grid[i];
                    let slope = (values[i + 1] - values[i]) / dx;
                    let scale = (-c * grid[i]).exp();
                    acc += scale * (values[i] * exp_int0(c, dx) + slope * exp_int1(c, dx));
                }
                acc
            }
        }
    }

    fn total_mass(&self) -> f64 {
        match &self.kind {
            Kind::Alpha { .. } => 1.0,
            Kind::Tabulated { cum_mass, .. } => *cum_mass.last().unwrap(),
        }
    }

    /// How the weights of this density are produced.
    pub fn weight_provenance(&self) -> WeightProvenance {
        match self.kind {
            Kind::Alpha { .. } => WeightProvenance::ClosedForm,
            Kind::Tabulated { .. } => WeightProvenance::CellExactQuadrature,
        }
    }

    /// Upper bound on the mass beyond `sigma`: `mu((sigma, inf))`.
    pub fn upper_tail_mass(&self, sigma: f64) -> f64 {
        match &self.kind {
            Kind::Alpha { alpha, .. } => gamma_ur(alpha + 1.0, 2.0 * sigma.max(0.0)),
            Kind::Tabulated { .. } => (self.total_mass() - self.cdf(sigma)).max(0.0),
        }
    }

    /// A cut point beyond which the density mass is below `tail_tol`;
    /// integrands against `h` can stop there.
    pub fn support_cut(&self, tail_tol: f64) -> f64 {
        match &self.kind {
            Kind::Alpha { .. } => {
                let mut cut = 10.0;
                while self.upper_tail_mass(cut) > tail_tol && cut < 1e6 {
                    cut *= 2.0;
                }
                cut
            }
            Kind::Tabulated { grid, .. } => *grid.last().unwrap(),
        }
    }

    /// For densities with genuinely compact support, its right end.
    pub fn compact_support_end(&self) -> Option<f64> {
        match &self.kind {
            Kind::Alpha { .. } => None,
            Kind::Tabulated { grid, .. } => Some(*grid.last().unwrap()),
        }
    }

    /// The alpha parameter if this is an alpha-family density.
    pub fn alpha_parameter(&self) -> Option<f64> {
        match self.kind {
            Kind::Alpha { alpha, .. } => Some(alpha),
            Kind::Tabulated { .. } => None,
        }
    }

    /// Rigorous lower-bound constant `C` with `w_h(n) >= C n^{-epsilon}` for
    /// all `n >= 1`, used by kernel tail comparisons. For the alpha family
    /// the continuous minimum of `x^eps (1+ln x)^{-(alpha+1)}` is explicit;
    /// for compactly supported densities `w_h(n) >= mass * n^{-2 sigma_end}`
    /// requires `epsilon >= 2 sigma_end`.
    pub fn weight_power_floor(&self, epsilon: f64) -> Result<f64> {
        assert!(epsilon > 0.0);
        match &self.kind {
            Kind::Alpha { alpha, .. } => {
                let a1 = alpha + 1.0;
                if epsilon >= a1 {
                    // minimum at x = 1
                    Ok(1.0)
                } else {
                    // stationary point x* = exp(a1/eps - 1)
                    Ok((a1 - epsilon).exp() * (epsilon / a1).powf(a1))
                }
            }
            Kind::Tabulated { grid, .. } => {
                let end = *grid.last().unwrap();
                if epsilon < 2.0 * end {
                    return Err(Error::TailBoundUnavailable(format!(
                        "compact support ends at {end}; need epsilon >= {}",
                        2.0 * end
                    )));
                }
                Ok(self.total_mass())
            }
        }
    }
}

fn cell_index(grid: &[f64], x: f64) -> usize {
    debug_assert!(x >= grid[0] && x <= *grid.last().unwrap());
    match grid.binary_search_by(|g| g.total_cmp(&x)) {
        Ok(i) => i.min(grid.len() - 2),
        Err(i) => i - 1,
    }
}

/// `int_0^d exp(-c x) dx`, stable for small `c d`.
fn exp_int0(c: f64, d: f64) -> f64 {
    let y = c * d;
    if y.abs() < 1e-6 {
        d * (1.0 - y / 2.0 + y * y / 6.0)
    } else {
        (1.0 - (-y).exp()) / c
    }
}

/// `int_0^d x exp(-c x) dx`, stable for small `c d`.
fn exp_int1(c: f64, d: f64) -> f64 {
    let y = c * d;
    if y.abs() < 1e-4 {
        d * d * (0.5 - y / 3.0 + y * y / 8.0)
    } else {
        (1.0 - (1.0 + y) * (-y).exp()) / (c * c)
    }
}

/// Precomputed weights `w_h(1..=n_max)` for matrix assembly and norms.
#[derive(Debug, Clone)]
pub struct WeightTable {
    values: Vec<f64>,
    pub provenance: WeightProvenance,
}

impl WeightTable {
    pub fn new(mu: &MeasureDensity, n_max: u64) -> Result<Self> {
        let mut values = Vec::with_capacity(n_max as usize);
        for n in 1..=n_max {
            values.push(mu.weight(n)?);
        }
        Ok(WeightTable {
            values,
            provenance: mu.weight_provenance(),
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `w_h(n)`; panics if `n` is outside the table.
    pub fn get(&self, n: u64) -> f64 {
        self.values[(n - 1) as usize]
    }
}

/// One row of a condition-(kappa) table.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct KappaRow {
    pub eta: f64,
    /// `sup_sigma G(eta sigma) / G(sigma)` over the probed sigma values.
    pub sup_ratio: f64,
}

/// Grid evidence for condition (kappa):
/// `lim_{eta->0} limsup_{sigma->0} G(eta sigma)/G(sigma) = 0`.
#[derive(Debug, Clone, Serialize)]
pub struct KappaReport {
    pub rows: Vec<KappaRow>,
    /// eta at which the verdict threshold is applied
    pub probe_eta: f64,
    pub threshold: f64,
    /// heuristic grid verdict, not a limit statement
    pub consistent: bool,
}

/// Probe condition (kappa) on decreasing `eta` and `sigma` grids.
///
/// The verdict is heuristic by construction: it asserts only that the sampled
/// ratios at `eta` near the probe value sit below the threshold.
pub fn kappa_check(
    mu: &MeasureDensity,
    eta_grid: &[f64],
    sigma_grid: &[f64],
    threshold: f64,
    probe_eta: f64,
) -> KappaReport {
    assert!(!eta_grid.is_empty() && !sigma_grid.is_empty());
    // limsup as sigma -> 0: probe the smaller half of the sigma grid
    let mut sigmas: Vec<f64> = sigma_grid.to_vec();
    sigmas.sort_by(|a, b| a.total_cmp(b));
    let small = &sigmas[..sigmas.len().div_ceil(2)];
    let rows: Vec<KappaRow> = eta_grid
        .iter()
        .map(|&eta| {
            let sup_ratio = small
                .iter()
                .map(|&s| mu.beta_over_sigma(eta * s) / mu.beta_over_sigma(s))
                .fold(0.0, f64::max);
            KappaRow { eta, sup_ratio }
        })
        .collect();
    // verdict at the grid eta closest to the probe value
    let probe_row = rows
        .iter()
        .min_by(|a, b| (a.eta - probe_eta).abs().total_cmp(&(b.eta - probe_eta).abs()))
        .expect("nonempty");
    KappaReport {
        consistent: probe_row.sup_ratio <= threshold,
        probe_eta: probe_row.eta,
        threshold,
        rows,
    }
}

/// Outcome of the per-index weight identity
/// `w_h(n) = 4 int_0^inf beta_h(sigma) n^{-2 sigma} ln^2(n) d sigma`, `n >= 2`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct WeightIdentity {
    pub lhs: f64,
    pub rhs: f64,
    pub relative_error: f64,
    pub quadrature_error: f64,
}

/// Verify the weight identity at one index by quadrature.
///
/// The identity follows from integrating `beta_h'' = h` by parts twice; it is
/// the coefficient-level form of the Littlewood-Paley norm formula. Excluded
/// at `n = 1` where `ln n = 0` (the constant term is carried by `|f(+inf)|^2`).
pub fn lp_weight_identity(n: u64, mu: &MeasureDensity) -> Result<WeightIdentity> {
    if n < 2 {
        return Err(Error::InvalidConfig(
            "weight identity applies to indices n >= 2".into(),
        ));
    }
    let lhs = mu.weight(n)?;
    let ln_n = (n as f64).ln();
    let c = 2.0 * ln_n;
    let tail_target = 1e-13 * lhs;
    // beta(sigma) <= sigma gives the integrable tail majorant
    // 4 ln^2 n * exp(-c t) (t/c + 1/c^2)
    let mut cut = mu.support_cut(1e-16).min(80.0);
    while 4.0 * ln_n * ln_n * (-c * cut).exp() * (cut / c + 1.0 / (c * c)) > tail_target {
        cut *= 1.5;
    }
    let quad = adaptive_simpson(
        |sigma| mu.beta(sigma) * (-c * sigma).exp(),
        0.0,
        cut,
        1e-12 * lhs.max(1e-3) / (4.0 * ln_n * ln_n),
        48,
    )?;
    let rhs = 4.0 * ln_n * ln_n * quad.value;
    Ok(WeightIdentity {
        lhs,
        rhs,
        relative_error: (lhs - rhs).abs() / lhs,
        quadrature_error: 4.0 * ln_n * ln_n * quad.abs_error + tail_target,
    })
}

// Wire format: {"kind":"alpha","alpha":0.0} or
// {"kind":"tabulated","grid":[...],"values":[...]}.

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum MeasureWire {
    Alpha { alpha: f64 },
    Tabulated { grid: Vec<f64>, values: Vec<f64> },
}

impl Serialize for MeasureDensity {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let wire = match &self.kind {
            Kind::Alpha { alpha, .. } => MeasureWire::Alpha { alpha: *alpha },
            Kind::Tabulated { grid, values, .. } => MeasureWire::Tabulated {
                grid: grid.clone(),
                values: values.clone(),
            },
        };
        wire.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MeasureDensity {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = MeasureWire::deserialize(deserializer)?;
        match wire {
            MeasureWire::Alpha { alpha } => MeasureDensity::alpha(alpha),
            MeasureWire::Tabulated { grid, values } => MeasureDensity::tabulated(grid, values),
        }
        .map_err(|e| D::Error::custom(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn weight_at_one_is_unit_mass() {
        for mu in [
            MeasureDensity::alpha(0.0).unwrap(),
            MeasureDensity::alpha(2.5).unwrap(),
            MeasureDensity::uniform_unit(),
        ] {
            assert_relative_eq!(mu.weight(1).unwrap(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn alpha_zero_weight_closed_form() {
        let mu = MeasureDensity::alpha(0.0).unwrap();
        assert_relative_eq!(
            mu.weight(2).unwrap(),
            1.0 / (1.0 + std::f64::consts::LN_2),
            epsilon = 1e-14
        );
        // 0.590616 from direct evaluation
        assert!((mu.weight(2).unwrap() - 0.590616).abs() < 1e-6);
    }

    #[test]
    fn alpha_weight_matches_quadrature_oracle() {
        // independent oracle: integrate n^{-2 sigma} h(sigma) directly
        let mu = MeasureDensity::alpha(0.0).unwrap();
        for n in [2u64, 3, 10, 57, 100] {
            let c = 2.0 * (n as f64).ln();
            let oracle = adaptive_simpson(
                |s| 2.0 * (-(2.0 + c) * s).exp(),
                0.0,
                60.0,
                1e-14,
                48,
            )
            .unwrap();
            assert_relative_eq!(mu.weight(n).unwrap(), oracle.value, epsilon = 1e-8);
        }
    }

    #[test]
    fn weights_decrease_and_beat_negative_powers() {
        for alpha in [0.0, 1.0, 2.5] {
            let mu = MeasureDensity::alpha(alpha).unwrap();
            let mut prev = 1.0 + 1e-15;
            for n in 1..=10_000u64 {
                let w = mu.weight(n).unwrap();
                assert!(w > 0.0 && w <= 1.0);
                assert!(w < prev || n == 1);
                prev = w;
            }
            // inf over n <= 10^4 of w(n) n^eps stays positive; when the
            // continuous minimizer e^{(alpha+1)/eps - 1} is in range, the
            // infimum is attained at small n
            for eps in [0.5, 0.2] {
                let mut inf = f64::INFINITY;
                let mut argmin = 0;
                for n in 1..=10_000u64 {
                    let v = mu.weight(n).unwrap() * (n as f64).powf(eps);
                    if v < inf {
                        inf = v;
                        argmin = n;
                    }
                }
                assert!(inf > 0.0);
                let minimizer = ((alpha + 1.0) / eps - 1.0).exp();
                if minimizer < 2_000.0 {
                    assert!(
                        (argmin as f64) < 4.0 * minimizer + 8.0,
                        "alpha={alpha} eps={eps}: argmin {argmin}"
                    );
                }
                // the rigorous floor really is a floor
                let floor = mu.weight_power_floor(eps).unwrap();
                assert!(inf >= floor * (1.0 - 1e-12));
            }
        }
    }

    #[test]
    fn beta_alpha_zero_closed_form() {
        // beta_0(sigma) = sigma - (1 - exp(-2 sigma)) / 2
        let mu = MeasureDensity::alpha(0.0).unwrap();
        for sigma in [0.1f64, 0.5, 1.0, 3.0] {
            let expected = sigma - (1.0 - (-2.0 * sigma).exp()) / 2.0;
            assert_relative_eq!(mu.beta(sigma), expected, epsilon = 1e-12);
        }
        assert_relative_eq!(mu.beta(1.0), 0.567667, epsilon = 1e-6);
    }

    #[test]
    fn beta_small_sigma_power_law() {
        // beta_alpha(sigma) ~ sigma^{alpha+2} near 0; for alpha = 0 the ratio
        // beta / sigma^2 tends to 1
        let mu = MeasureDensity::alpha(0.0).unwrap();
        for sigma in [1e-3, 1e-4, 1e-5] {
            let ratio = mu.beta(sigma) / (sigma * sigma);
            assert!((ratio - 1.0).abs() < 10.0 * sigma, "sigma={sigma}: {ratio}");
        }
    }

    #[test]
    fn beta_second_derivative_recovers_density() {
        for mu in [
            MeasureDensity::alpha(0.0).unwrap(),
            MeasureDensity::alpha(1.0).unwrap(),
        ] {
            for sigma in [0.3, 0.7, 1.5] {
                let h = 1e-4;
                let dd = (mu.beta(sigma + h) - 2.0 * mu.beta(sigma) + mu.beta(sigma - h)) / (h * h);
                assert!((dd - mu.density(sigma)).abs() < 1e-5, "sigma={sigma}");
            }
        }
    }

    #[test]
    fn beta_bounded_by_sigma_and_convex() {
        for mu in [
            MeasureDensity::alpha(0.0).unwrap(),
            MeasureDensity::alpha(2.5).unwrap(),
            MeasureDensity::uniform_unit(),
        ] {
            let mut prev = 0.0;
            for k in 1..=60 {
                let sigma = 0.05 * k as f64;
                let b = mu.beta(sigma);
                assert!(b >= prev);
                assert!(b <= sigma + 1e-15);
                prev = b;
            }
            for k in 1..=30 {
                let s1 = 0.07 * k as f64;
                let s2 = s1 + 0.4;
                let mid = mu.beta(0.5 * (s1 + s2));
                assert!(mid <= 0.5 * (mu.beta(s1) + mu.beta(s2)) + 1e-14);
            }
        }
    }

    #[test]
    fn tabulated_weight_for_uniform_density() {
        // w(n) = int_0^1 n^{-2s} ds = (1 - n^{-2}) / (2 ln n)
        let mu = MeasureDensity::uniform_unit();
        for n in [2u64, 5, 17] {
            let ln_n = (n as f64).ln();
            let expected = (1.0 - (n as f64).powf(-2.0)) / (2.0 * ln_n);
            assert_relative_eq!(mu.weight(n).unwrap(), expected, epsilon = 1e-12);
        }
    }

    #[test]
    fn tabulated_rejects_bad_inputs() {
        assert!(MeasureDensity::tabulated(vec![0.1, 1.0], vec![1.0, 1.0]).is_err());
        assert!(MeasureDensity::tabulated(vec![0.0, 1.0], vec![-0.1, 1.0]).is_err());
        assert!(MeasureDensity::tabulated(vec![0.0, 1.0], vec![2.0, 2.0]).is_err());
        assert!(
            MeasureDensity::tabulated(vec![0.0, 0.5, 1.0], vec![0.0, 0.0, 4.0]).is_err(),
            "no mass near zero"
        );
    }

    #[test]
    fn kappa_alpha_family_ratios() {
        // G(sigma) ~ sigma^{alpha+1}: ratio at eta is eta^{alpha+1}
        let sigma_grid: Vec<f64> = (4..=14).map(|j| 2f64.powi(-j)).collect();
        let eta_grid = [0.3, 0.1, 0.03, 0.01];
        let r0 = kappa_check(
            &MeasureDensity::alpha(0.0).unwrap(),
            &eta_grid,
            &sigma_grid,
            0.05,
            0.01,
        );
        assert!(r0.consistent);
        let row = r0.rows.iter().find(|r| r.eta == 0.1).unwrap();
        assert!((row.sup_ratio - 0.1).abs() < 0.02, "got {}", row.sup_ratio);

        let r1 = kappa_check(
            &MeasureDensity::alpha(1.0).unwrap(),
            &eta_grid,
            &sigma_grid,
            0.05,
            0.01,
        );
        assert!(r1.consistent);
        let row = r1.rows.iter().find(|r| r.eta == 0.1).unwrap();
        assert!((row.sup_ratio - 0.01).abs() < 0.005, "got {}", row.sup_ratio);
    }

    #[test]
    fn kappa_nondecreasing_density_consistent() {
        let sigma_grid: Vec<f64> = (4..=14).map(|j| 2f64.powi(-j)).collect();
        let report = kappa_check(
            &MeasureDensity::uniform_unit(),
            &[0.3, 0.1, 0.03, 0.01],
            &sigma_grid,
            0.05,
            0.01,
        );
        assert!(report.consistent);
    }

    #[test]
    fn weight_identity_holds() {
        for (n, alpha) in [(2u64, 0.0), (50u64, 1.0)] {
            let mu = MeasureDensity::alpha(alpha).unwrap();
            let id = lp_weight_identity(n, &mu).unwrap();
            assert!(id.relative_error <= 1e-8, "n={n} alpha={alpha}: {id:?}");
        }
        assert!(lp_weight_identity(1, &MeasureDensity::alpha(0.0).unwrap()).is_err());
    }

    #[test]
    fn weight_table_matches_direct() {
        let mu = MeasureDensity::alpha(1.0).unwrap();
        let table = WeightTable::new(&mu, 64).unwrap();
        assert_eq!(table.len(), 64);
        for n in 1..=64u64 {
            assert_eq!(table.get(n), mu.weight(n).unwrap());
        }
        assert_eq!(table.provenance, WeightProvenance::ClosedForm);
    }

    #[test]
    fn measure_json_round_trip() {
        let mu = MeasureDensity::alpha(0.0).unwrap();
        let json = serde_json::to_string(&mu).unwrap();
        assert_eq!(json, r#"{"kind":"alpha","alpha":0.0}"#);
        let back: MeasureDensity = serde_json::from_str(&json).unwrap();
        assert_eq!(back.alpha_parameter(), Some(0.0));

        let tab: MeasureDensity =
            serde_json::from_str(r#"{"kind":"tabulated","grid":[0.0,1.0],"values":[1.0,1.0]}"#)
                .unwrap();
        assert_relative_eq!(tab.weight(2).unwrap(), MeasureDensity::uniform_unit().weight(2).unwrap());
    }
}
