//! Carleson windows, pullback measures of the boundary line and of the
//! half-plane product measure, and the counting-vs-measure comparison.
//!
//! For a symbol with `c0 >= 1` the boundary values `Phi*(it) = i c0 t +
//! phi(it)` exist everywhere (the perturbation is a polynomial), and two
//! pullbacks are in play on a window `H(t, h) = { |s - it| < h, Re s > 0 }`:
//!
//! ```text
//! lambda_Phi(H)     = | { t' : Phi*(it') in H } |            (line measure),
//! lambda_{mu,Phi}(H) = (lambda (x) mu) { s : Phi(s) in H }    (plane measure).
//! ```
//!
//! Membership is impossible once `|c0 t' - t|` outruns `h + sup|Im phi|`, so
//! both sets live in explicit finite ranges and are resolved by adaptive
//! bisection scans.

use crate::error::{Error, Result};
use crate::measure::MeasureDensity;
use crate::quad::adaptive_simpson;
use crate::symbol::Symbol;
use crate::trend::{classify, Trend};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// The half-disc window `H(t, h) = { s : Re s > 0, |s - it| < h }`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub center_t: f64,
    pub radius: f64,
}

impl Window {
    pub fn new(center_t: f64, radius: f64) -> Self {
        assert!(radius > 0.0, "windows have positive radius");
        Window { center_t, radius }
    }

    pub fn contains(&self, s: Complex64) -> bool {
        s.re > 0.0 && (s - Complex64::new(0.0, self.center_t)).norm() < self.radius
    }
}

/// How a measure value was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EstimateMethod {
    IntervalScan,
    TensorQuadrature,
    MonteCarlo,
}

/// A nonnegative measure value with its error accounting.
#[derive(Debug, Clone, Copy)]
pub struct MeasureEstimate {
    pub value: f64,
    pub method: EstimateMethod,
    /// Bisection/quadrature error bound, or a Monte-Carlo standard error.
    pub error: f64,
}

/// Scan controls for membership sets.
#[derive(Debug, Clone, Copy)]
pub struct ScanSettings {
    /// Initial uniform samples across the admissible interval.
    pub resolution: usize,
    /// Crossing refinement, relative to the interval length.
    pub refine_rel: f64,
}

impl Default for ScanSettings {
    fn default() -> Self {
        ScanSettings {
            resolution: 4096,
            refine_rel: 1e-9,
        }
    }
}

/// Boundary value `Phi*(it) = i c0 t + phi(it)`; exact for polynomial
/// perturbations.
pub fn boundary_value(sym: &Symbol, t: f64) -> Complex64 {
    Complex64::new(0.0, sym.c0() as f64 * t) + sym.phi().evaluate(Complex64::new(0.0, t))
}

/// Total length of `{ x in [lo, hi] : g(x) < 0 }` by uniform sampling plus
/// bisection of every sign change.
fn sublevel_measure(
    g: impl Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    scan: &ScanSettings,
) -> Result<(f64, f64)> {
    assert!(hi >= lo);
    if hi == lo {
        return Ok((0.0, 0.0));
    }
    let m = scan.resolution.max(16);
    let step = (hi - lo) / m as f64;
    let values: Vec<f64> = (0..=m).map(|k| g(lo + k as f64 * step)).collect();
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::ScanStalled { t: lo });
    }
    let target = scan.refine_rel * (hi - lo);
    let bisect = |mut a: f64, mut b: f64| -> f64 {
        // g(a) and g(b) have opposite signs by construction
        let mut ga = g(a);
        for _ in 0..80 {
            if b - a <= target {
                break;
            }
            let mid = 0.5 * (a + b);
            let gm = g(mid);
            if (gm < 0.0) == (ga < 0.0) {
                a = mid;
                ga = gm;
            } else {
                b = mid;
            }
        }
        0.5 * (a + b)
    };
    let mut measure = 0.0;
    let mut crossings = 0usize;
    let mut k = 0usize;
    while k <= m {
        if values[k] < 0.0 {
            let mut end = k;
            while end < m && values[end + 1] < 0.0 {
                end += 1;
            }
            let left = if k == 0 {
                lo
            } else {
                crossings += 1;
                bisect(lo + (k - 1) as f64 * step, lo + k as f64 * step)
            };
            let right = if end == m {
                hi
            } else {
                crossings += 1;
                bisect(lo + end as f64 * step, lo + (end + 1) as f64 * step)
            };
            measure += (right - left).max(0.0);
            k = end + 1;
        } else {
            k += 1;
        }
    }
    Ok((measure, crossings as f64 * target))
}

/// Admissible `t` range for membership of `Phi(sigma + it)` in a window;
/// outside it membership is impossible because `Im Phi` tracks `c0 t` up to
/// the bounded perturbation.
fn admissible_interval(sym: &Symbol, window: &Window, widen: f64) -> (f64, f64) {
    let c0 = sym.c0() as f64;
    let margin = sym.im_bound() + sym.phi().constant_coeff().im.abs() + widen;
    (
        (window.center_t - window.radius - margin) / c0,
        (window.center_t + window.radius + margin) / c0,
    )
}

/// Pullback line measure `lambda_Phi(H) = |{ t : Phi*(it) in H }|`.
pub fn lambda_phi(sym: &Symbol, window: &Window, scan: &ScanSettings) -> Result<MeasureEstimate> {
    sym.require_certificate()?;
    if sym.c0() == 0 {
        return Err(Error::DilationRequired { c0: 0 });
    }
    let (lo, hi) = admissible_interval(sym, window, 0.0);
    let center = Complex64::new(0.0, window.center_t);
    let r_sq = window.radius * window.radius;
    let g = |t: f64| (boundary_value(sym, t) - center).norm_sqr() - r_sq;
    let (value, error) = sublevel_measure(g, lo, hi, scan)?;
    Ok(MeasureEstimate {
        value,
        method: EstimateMethod::IntervalScan,
        error,
    })
}

/// Pullback plane measure `lambda_{mu,Phi}(H)` by tensor quadrature: for
/// each `sigma` the `t`-section is an interval scan, and the sections are
/// integrated against `h(sigma) d sigma`. The `sigma` range is capped at the
/// window radius since `Re Phi(s) >= Re s` pushes deeper points out of the
/// window.
pub fn lambda_mu_phi(
    sym: &Symbol,
    mu: &MeasureDensity,
    window: &Window,
    scan: &ScanSettings,
) -> Result<MeasureEstimate> {
    sym.require_certificate()?;
    if sym.c0() == 0 {
        return Err(Error::DilationRequired { c0: 0 });
    }
    let (lo_t, hi_t) = admissible_interval(sym, window, window.radius / sym.c0() as f64);
    let center = Complex64::new(0.0, window.center_t);
    let r_sq = window.radius * window.radius;
    let sigma_max = window.radius.min(mu.support_cut(1e-16));
    let section = |sigma: f64| -> Result<f64> {
        let g = |t: f64| (sym.evaluate(Complex64::new(sigma, t)) - center).norm_sqr() - r_sq;
        Ok(sublevel_measure(g, lo_t, hi_t, scan)?.0)
    };
    // integrable density blowup at 0 (alpha < 0): cut and bound by the
    // section length times the missing mass
    let mut sigma_lo = 0.0;
    let mut cut_error = 0.0;
    if mu.density(0.0).is_infinite() {
        sigma_lo = sigma_max * 1e-9;
        cut_error = (hi_t - lo_t) * mu.cdf(sigma_lo);
    }
    let integrand = |sigma: f64| -> f64 {
        if sigma <= sigma_lo || sigma >= sigma_max {
            return 0.0;
        }
        section(sigma).unwrap_or(f64::NAN) * mu.density(sigma)
    };
    // coarse pass fixes the tolerance scale for the adaptive pass
    let coarse: f64 = (0..64)
        .map(|k| {
            let sigma = sigma_lo + (sigma_max - sigma_lo) * (k as f64 + 0.5) / 64.0;
            integrand(sigma) * (sigma_max - sigma_lo) / 64.0
        })
        .sum();
    let tol = (1e-7 * coarse.abs()).max(1e-11);
    let quad = adaptive_simpson(integrand, sigma_lo, sigma_max, tol, 24)?;
    Ok(MeasureEstimate {
        value: quad.value.max(0.0),
        method: EstimateMethod::TensorQuadrature,
        error: quad.abs_error + cut_error,
    })
}

/// Stratified Monte-Carlo fallback for thin plane-measure regions: `t`
/// uniform on the admissible interval (stratified), `sigma` drawn from `mu`
/// by inverse transform.
pub fn lambda_mu_phi_mc(
    sym: &Symbol,
    mu: &MeasureDensity,
    window: &Window,
    samples: usize,
    seed: u64,
) -> Result<MeasureEstimate> {
    sym.require_certificate()?;
    if sym.c0() == 0 {
        return Err(Error::DilationRequired { c0: 0 });
    }
    let (lo_t, hi_t) = admissible_interval(sym, window, window.radius / sym.c0() as f64);
    let len = hi_t - lo_t;
    let center = Complex64::new(0.0, window.center_t);
    let strata = 64.min(samples.max(1));
    let per = (samples / strata).max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0usize;
    let mut total = 0usize;
    let sample_sigma = |u: f64| -> f64 {
        // inverse CDF by bisection on a bounded support interval
        let mut a = 0.0;
        let mut b = mu.support_cut(1e-15);
        for _ in 0..60 {
            let mid = 0.5 * (a + b);
            if mu.cdf(mid) < u {
                a = mid;
            } else {
                b = mid;
            }
        }
        0.5 * (a + b)
    };
    for stratum in 0..strata {
        let t0 = lo_t + len * stratum as f64 / strata as f64;
        let t1 = lo_t + len * (stratum + 1) as f64 / strata as f64;
        for _ in 0..per {
            let t = rng.gen_range(t0..t1);
            let sigma = sample_sigma(rng.gen_range(0.0..1.0));
            let inside = (sym.evaluate(Complex64::new(sigma, t)) - center).norm() < window.radius;
            hits += inside as usize;
            total += 1;
        }
    }
    let p = hits as f64 / total as f64;
    Ok(MeasureEstimate {
        value: len * p,
        method: EstimateMethod::MonteCarlo,
        error: len * (p * (1.0 - p) / total as f64).sqrt(),
    })
}

/// A grid estimate of `rho(h) = sup_t` of a window measure, with a
/// grid-doubling stability diagnostic.
#[derive(Debug, Clone)]
pub struct RhoEstimate {
    pub value: f64,
    /// Value on the doubled grid (the reported `value` already uses it).
    pub coarse_value: f64,
    /// `|value - coarse| / max(value, eps)`.
    pub stability_rel: f64,
    pub per_center: Vec<(f64, f64)>,
}

fn rho_generic(
    centers: &[f64],
    measure_at: impl Fn(f64) -> Result<f64> + Sync,
) -> Result<RhoEstimate> {
    assert!(!centers.is_empty());
    let mut sorted = centers.to_vec();
    sorted.sort_by(|a, b| a.total_cmp(b));
    let coarse: Vec<(f64, f64)> = sorted
        .par_iter()
        .map(|&t| Ok((t, measure_at(t)?)))
        .collect::<Result<Vec<_>>>()?;
    // doubled density: midpoints of consecutive centers
    let mids: Vec<f64> = sorted.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    let extra: Vec<(f64, f64)> = mids
        .par_iter()
        .map(|&t| Ok((t, measure_at(t)?)))
        .collect::<Result<Vec<_>>>()?;
    let coarse_value = coarse.iter().map(|&(_, v)| v).fold(0.0, f64::max);
    let mut per_center = coarse;
    per_center.extend(extra);
    per_center.sort_by(|a, b| a.0.total_cmp(&b.0));
    let value = per_center.iter().map(|&(_, v)| v).fold(0.0, f64::max);
    Ok(RhoEstimate {
        value,
        coarse_value,
        stability_rel: (value - coarse_value).abs() / value.max(1e-300),
        per_center,
    })
}

/// `rho_Phi(h) = sup_t lambda_Phi(H(t,h))`, approximated on a finite center
/// grid (the sup over the whole line has no finite computation; almost
/// periodicity of the perturbation is the informal cover, and the doubling
/// diagnostic reports grid sensitivity).
pub fn rho_phi(
    sym: &Symbol,
    h: f64,
    t_grid: &[f64],
    scan: &ScanSettings,
) -> Result<RhoEstimate> {
    rho_generic(t_grid, |t| {
        Ok(lambda_phi(sym, &Window::new(t, h), scan)?.value)
    })
}

/// `rho_{mu,Phi}(h) = sup_t lambda_{mu,Phi}(H(t,h))` on a finite grid.
pub fn rho_mu_phi(
    sym: &Symbol,
    mu: &MeasureDensity,
    h: f64,
    t_grid: &[f64],
    scan: &ScanSettings,
) -> Result<RhoEstimate> {
    rho_generic(t_grid, |t| {
        Ok(lambda_mu_phi(sym, mu, &Window::new(t, h), scan)?.value)
    })
}

/// One window size of the counting-vs-measure comparison.
#[derive(Debug, Clone, Copy)]
pub struct ComparisonRow {
    pub h: f64,
    /// `sup N_Phi` over sampled points of `H(t, h/2)`.
    pub sup_n_phi: f64,
    /// `lambda_Phi(H(t, 2 c0 h))`.
    pub lambda: f64,
    /// `sup N_{beta,Phi}` over the same sample.
    pub sup_n_beta: f64,
    /// `lambda_{mu,Phi}(H(t, 2 c0 h))`.
    pub lambda_mu: f64,
    /// `sup_n_phi / lambda`, `NaN` when vacuous (both sides zero).
    pub ratio_line: f64,
    /// `sup_n_beta / lambda_mu`, `NaN` when vacuous.
    pub ratio_plane: f64,
}

/// Comparison report across a shrinking grid of window sizes.
#[derive(Debug, Clone)]
pub struct ComparisonReport {
    pub rows: Vec<ComparisonRow>,
    pub max_ratio_line: f64,
    pub max_ratio_plane: f64,
    /// Rows where a positive counting sup met a zero measure, which the
    /// comparison forbids; indicates numerical failure.
    pub contradictions: usize,
}

fn window_sample_points(t: f64, half_radius: f64) -> Vec<Complex64> {
    let mut pts = Vec::new();
    for &frac in &[0.25, 0.5, 0.75, 0.9, 0.99, 1.0 - 1e-9] {
        let r = half_radius * frac;
        for k in -4i32..=4 {
            let theta = k as f64 * std::f64::consts::FRAC_PI_2 / 4.5;
            let s = Complex64::new(r * theta.cos(), t + r * theta.sin());
            if s.re > 0.0 {
                pts.push(s);
            }
        }
    }
    pts
}

/// Compare `sup N` over `H(t, h/2)` against the pullback measure of
/// `H(t, 2 c0 h)` for every `h` in the grid. The comparison constant is not
/// explicit, so what is reported is boundedness of the empirical ratios;
/// a zero measure against a positive sup is a contradiction.
pub fn theorem8_check(
    sym: &Symbol,
    mu: &MeasureDensity,
    h_grid: &[f64],
    t: f64,
    scan: &ScanSettings,
    settings: &crate::counting::SolverSettings,
) -> Result<ComparisonReport> {
    sym.require_certificate()?;
    if sym.c0() == 0 {
        return Err(Error::DilationRequired { c0: 0 });
    }
    let big_radius = |h: f64| 2.0 * sym.c0() as f64 * h;
    let rows: Vec<ComparisonRow> = h_grid
        .par_iter()
        .map(|&h| {
            let mut sup_n_phi: f64 = 0.0;
            let mut sup_n_beta: f64 = 0.0;
            for s in window_sample_points(t, h / 2.0) {
                sup_n_phi = sup_n_phi.max(crate::counting::n_phi(sym, s, settings)?.value);
                sup_n_beta =
                    sup_n_beta.max(crate::counting::n_beta(sym, s, mu, settings)?.value);
            }
            let window = Window::new(t, big_radius(h));
            let lambda = lambda_phi(sym, &window, scan)?.value;
            let lambda_mu = lambda_mu_phi(sym, mu, &window, scan)?.value;
            let ratio = |sup: f64, measure: f64| {
                if sup == 0.0 && measure < 1e-12 {
                    f64::NAN // vacuous
                } else {
                    sup / measure
                }
            };
            Ok(ComparisonRow {
                h,
                sup_n_phi,
                lambda,
                sup_n_beta,
                lambda_mu,
                ratio_line: ratio(sup_n_phi, lambda),
                ratio_plane: ratio(sup_n_beta, lambda_mu),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let max_finite = |f: fn(&ComparisonRow) -> f64| {
        rows.iter()
            .map(f)
            .filter(|r| r.is_finite())
            .fold(0.0, f64::max)
    };
    let contradictions = rows
        .iter()
        .filter(|r| {
            (r.sup_n_phi > 1e-12 && r.lambda == 0.0)
                || (r.sup_n_beta > 1e-12 && r.lambda_mu == 0.0)
        })
        .count();
    Ok(ComparisonReport {
        max_ratio_line: max_finite(|r| r.ratio_line),
        max_ratio_plane: max_finite(|r| r.ratio_plane),
        contradictions,
        rows,
    })
}

/// One window size of a Carleson-function decay sweep.
#[derive(Debug, Clone, Copy)]
pub struct DecayRow {
    pub h: f64,
    pub rho: f64,
    /// `rho/h` (line case) or `rho/beta(h)` (plane case).
    pub ratio: f64,
}

/// Grid estimate of the essential-norm majorant `limsup rho(h) / h`
/// (line case) or `limsup rho_mu(h) / beta_h(h)` (plane case), with its
/// decay trend: a vanishing trend is the Carleson-side sufficient condition
/// for compactness.
#[derive(Debug, Clone)]
pub struct DecayReport {
    pub rows: Vec<DecayRow>,
    pub sup_ratio: f64,
    pub trend: Trend,
    /// True when measured against the plane pullback (weighted space).
    pub weighted: bool,
}

pub fn corollary4_estimate(
    sym: &Symbol,
    mu: Option<&MeasureDensity>,
    h_grid: &[f64],
    t_grid: &[f64],
    scan: &ScanSettings,
) -> Result<DecayReport> {
    let rows: Vec<DecayRow> = h_grid
        .iter()
        .map(|&h| {
            let (rho, denom) = match mu {
                None => (rho_phi(sym, h, t_grid, scan)?.value, h),
                Some(mu) => (rho_mu_phi(sym, mu, h, t_grid, scan)?.value, mu.beta(h)),
            };
            Ok(DecayRow {
                h,
                rho,
                ratio: rho / denom,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let pairs: Vec<(f64, f64)> = rows.iter().map(|r| (r.h, r.ratio)).collect();
    Ok(DecayReport {
        sup_ratio: rows.iter().map(|r| r.ratio).fold(0.0, f64::max),
        trend: classify(&pairs),
        weighted: mu.is_some(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::SolverSettings;
    use crate::poly::DirichletPolynomial;
    use crate::symbol::{BoundarySampler, ValidationMode};
    use approx::assert_relative_eq;

    fn alpha0() -> MeasureDensity {
        MeasureDensity::alpha(0.0).unwrap()
    }

    fn validated(c0: u32, terms: &[(u64, f64)]) -> Symbol {
        let mut sym = Symbol::new(
            c0,
            DirichletPolynomial::from_real_terms(terms.iter().copied()).unwrap(),
        );
        sym.validate(ValidationMode::RightHalfPlane, &BoundarySampler::default())
            .unwrap();
        sym
    }

    #[test]
    fn boundary_values() {
        assert!((boundary_value(&Symbol::dilation(1), 3.0) - Complex64::new(0.0, 3.0)).norm() < 1e-15);
        let sym = validated(1, &[(1, 1.0), (2, 1.0)]);
        assert!((boundary_value(&sym, 0.0) - Complex64::new(2.0, 0.0)).norm() < 1e-15);
        // 2^{-it} = -1 at t = pi/ln 2
        let sym = validated(2, &[(1, 2.0), (2, -1.0)]);
        let t = std::f64::consts::PI / std::f64::consts::LN_2;
        let expected = Complex64::new(3.0, 2.0 * t);
        assert!((boundary_value(&sym, t) - expected).norm() < 1e-12);
    }

    #[test]
    fn line_measure_of_dilations() {
        let scan = ScanSettings::default();
        for (c0, h) in [(1u32, 0.25), (2, 0.25), (3, 0.0625)] {
            let sym = Symbol::dilation(c0);
            let est = lambda_phi(&sym, &Window::new(0.0, h), &scan).unwrap();
            assert_relative_eq!(est.value, 2.0 * h / c0 as f64, epsilon = 1e-7);
            assert_eq!(est.method, EstimateMethod::IntervalScan);
        }
    }

    #[test]
    fn line_measure_vanishes_when_real_part_is_bounded_below() {
        // Phi(s) = s + 2 - 2^{-s} has Re Phi*(it) >= 1
        let sym = validated(1, &[(1, 2.0), (2, -1.0)]);
        let scan = ScanSettings::default();
        for h in [0.9, 0.5, 0.1] {
            let est = lambda_phi(&sym, &Window::new(0.0, h), &scan).unwrap();
            assert_eq!(est.value, 0.0);
        }
    }

    #[test]
    fn localization_soundness_membership_outside_interval() {
        let sym = validated(2, &[(1, 0.5), (3, 0.3)]);
        let window = Window::new(1.5, 0.4);
        let (lo, hi) = admissible_interval(&sym, &window, 0.0);
        for k in 1..=200 {
            let beyond = 0.01 * k as f64;
            assert!(!window.contains(boundary_value(&sym, lo - beyond)));
            assert!(!window.contains(boundary_value(&sym, hi + beyond)));
        }
    }

    #[test]
    fn plane_measure_identity_symbol_half_disc() {
        // region is the half-disc {sigma > 0, |s| < h}; the t-section at
        // height sigma has length 2 sqrt(h^2 - sigma^2)
        let mu = alpha0();
        let sym = Symbol::dilation(1);
        let scan = ScanSettings::default();
        for h in [0.5, 0.25] {
            let est = lambda_mu_phi(&sym, &mu, &Window::new(0.0, h), &scan).unwrap();
            let oracle = adaptive_simpson(
                |sigma| 2.0 * (h * h - sigma * sigma).max(0.0).sqrt() * mu.density(sigma),
                0.0,
                h,
                1e-12,
                40,
            )
            .unwrap();
            assert_relative_eq!(est.value, oracle.value, max_relative = 1e-5);
        }
    }

    #[test]
    fn plane_measure_monotone_in_radius_and_zero_off_range() {
        let mu = alpha0();
        let sym = validated(1, &[(1, 0.3), (2, 0.2)]);
        let scan = ScanSettings::default();
        let mut prev = 0.0;
        for h in [0.35, 0.4, 0.5, 0.7] {
            let v = lambda_mu_phi(&sym, &mu, &Window::new(0.0, h), &scan)
                .unwrap()
                .value;
            assert!(v >= prev - 1e-9, "h={h}: {v} < {prev}");
            prev = v;
        }
        // window fully left of the minimum of Re Phi
        let est = lambda_mu_phi(&sym, &mu, &Window::new(0.0, 0.05), &scan).unwrap();
        assert_eq!(est.value, 0.0);
    }

    #[test]
    fn monte_carlo_agrees_with_quadrature() {
        let mu = alpha0();
        let sym = Symbol::dilation(1);
        let window = Window::new(0.0, 0.5);
        let scan = ScanSettings::default();
        let quad = lambda_mu_phi(&sym, &mu, &window, &scan).unwrap();
        let mc = lambda_mu_phi_mc(&sym, &mu, &window, 200_000, 17).unwrap();
        assert!(
            (mc.value - quad.value).abs() < 4.0 * mc.error + 1e-4,
            "mc {} vs quad {} (se {})",
            mc.value,
            quad.value,
            mc.error
        );
    }

    #[test]
    fn rho_for_dilations_is_translation_invariant() {
        let scan = ScanSettings::default();
        let t_grid: Vec<f64> = (-3..=3).map(|k| k as f64 * 0.7).collect();
        for c0 in [1u32, 2] {
            let sym = Symbol::dilation(c0);
            let est = rho_phi(&sym, 0.25, &t_grid, &scan).unwrap();
            assert_relative_eq!(est.value, 0.5 / c0 as f64, epsilon = 1e-7);
            assert!(est.stability_rel < 1e-9);
        }
    }

    #[test]
    fn comparison_identity_symbol_closed_forms() {
        // sup over H(0,h/2) of N = h/2, lambda(H(0,2h)) = 4h, ratio 1/8
        let mu = alpha0();
        let sym = Symbol::dilation(1);
        let report = theorem8_check(
            &sym,
            &mu,
            &[0.125, 0.0625],
            0.0,
            &ScanSettings::default(),
            &SolverSettings::default(),
        )
        .unwrap();
        assert_eq!(report.contradictions, 0);
        for row in &report.rows {
            assert_relative_eq!(row.sup_n_phi, row.h / 2.0, epsilon = 1e-6);
            assert_relative_eq!(row.lambda, 4.0 * row.h, epsilon = 1e-6);
            assert_relative_eq!(row.ratio_line, 0.125, epsilon = 1e-4);
        }
    }

    #[test]
    fn comparison_double_dilation_closed_forms() {
        // sup over H(0,h/2) of N = h/4 (preimage s/2), and the windows grow
        // by 2 c0 h = 4h: lambda(H(0,4h)) = 2*(4h)/2 = 4h, ratio 1/16
        let mu = alpha0();
        let sym = Symbol::dilation(2);
        let report = theorem8_check(
            &sym,
            &mu,
            &[0.125, 0.0625],
            0.0,
            &ScanSettings::default(),
            &SolverSettings::default(),
        )
        .unwrap();
        for row in &report.rows {
            assert_relative_eq!(row.sup_n_phi, row.h / 4.0, epsilon = 1e-6);
            assert_relative_eq!(row.lambda, 4.0 * row.h, epsilon = 1e-6);
            assert_relative_eq!(row.ratio_line, 1.0 / 16.0, epsilon = 1e-4);
        }
    }

    #[test]
    fn comparison_vacuous_rows_for_compact_symbol() {
        let mu = alpha0();
        let sym = validated(1, &[(1, 2.0), (2, -1.0)]);
        let report = theorem8_check(
            &sym,
            &mu,
            &[0.2, 0.1],
            0.0,
            &ScanSettings::default(),
            &SolverSettings::default(),
        )
        .unwrap();
        assert_eq!(report.contradictions, 0);
        for row in &report.rows {
            assert!(row.ratio_line.is_nan(), "{row:?}");
            assert!(row.ratio_plane.is_nan());
        }
    }

    #[test]
    fn decay_report_three_symbols() {
        let mu = alpha0();
        let scan = ScanSettings::default();
        let h_grid: Vec<f64> = (1..=10).map(|j| 2f64.powi(-j)).collect();
        let t_grid = [0.0, 0.5, -0.5];

        let id = Symbol::dilation(1);
        let line = corollary4_estimate(&id, None, &h_grid, &t_grid, &scan).unwrap();
        assert_eq!(line.trend, Trend::Persistent);
        for row in &line.rows {
            assert_relative_eq!(row.ratio, 2.0, epsilon = 1e-5);
        }

        let double = Symbol::dilation(2);
        let line2 = corollary4_estimate(&double, None, &h_grid, &t_grid, &scan).unwrap();
        for row in &line2.rows {
            assert_relative_eq!(row.ratio, 1.0, epsilon = 1e-5);
        }

        let compact = validated(1, &[(1, 2.0), (2, -1.0)]);
        let lc = corollary4_estimate(&compact, None, &h_grid, &t_grid, &scan).unwrap();
        assert_eq!(lc.trend, Trend::Vanishing);
        let pc = corollary4_estimate(&compact, Some(&mu), &h_grid, &t_grid, &scan).unwrap();
        assert_eq!(pc.trend, Trend::Vanishing);
    }
}
