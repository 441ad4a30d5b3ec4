//! Preimage solving `Phi(a) = s` in the right half-plane and the generalized
//! Nevanlinna counting functions.
//!
//! For a symbol with `c0 >= 1` and target `s`, every solution satisfies
//! `Re(a) <= Re(s)` (the half-plane Schwarz lemma: `Phi(C_r) subset C_r`) and
//! `Im(a)` is pinned to an interval of width `2 A'/c0` around `Im(s)/c0` by
//! the bound on `Im(phi)`. Roots are isolated inside that rectangle by
//! recursive subdivision with integer winding counts of `Phi - s` along box
//! boundaries, then polished by Newton. The counting functions are
//!
//! ```text
//! N_Phi(s)      = sum_{Phi(a)=s} Re(a),
//! N_{beta,Phi}(s) = sum_{Phi(a)=s} beta_h(Re(a)),
//! ```
//!
//! with multiplicities, over roots with `Re(a) >= delta`; the thin excluded
//! strip contributes at most its root count times `delta` (resp.
//! `beta_h(delta)`), which is reported, never silently added.

use crate::error::{Error, Result};
use crate::measure::MeasureDensity;
use crate::quad::adaptive_simpson;
use crate::symbol::Symbol;
use num_complex::Complex64;

use std::f64::consts::{FRAC_PI_3, TAU};

/// Tunables of the preimage solver.
#[derive(Debug, Clone, Copy)]
pub struct SolverSettings {
    /// Roots with `Re(a) < delta` are excluded and only bounded.
    pub delta: f64,
    /// Residual tolerance for accepted roots, relative to `1 + |s|`.
    pub tol: f64,
    /// Maximum distance of a boundary winding integral from an integer.
    pub winding_snap: f64,
    /// Subdivision depth cap.
    pub max_subdivisions: u32,
}

impl Default for SolverSettings {
    fn default() -> Self {
        SolverSettings {
            delta: 1e-6,
            tol: 1e-11,
            winding_snap: 0.05,
            max_subdivisions: 60,
        }
    }
}

/// Axis-aligned search rectangle in the half-plane.
#[derive(Debug, Clone, Copy)]
pub struct Rect {
    pub re_lo: f64,
    pub re_hi: f64,
    pub im_lo: f64,
    pub im_hi: f64,
}

impl Rect {
    fn corners(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.re_lo, self.im_lo),
            Complex64::new(self.re_hi, self.im_lo),
            Complex64::new(self.re_hi, self.im_hi),
            Complex64::new(self.re_lo, self.im_hi),
        ]
    }

    pub fn width(&self) -> f64 {
        self.re_hi - self.re_lo
    }

    pub fn height(&self) -> f64 {
        self.im_hi - self.im_lo
    }

    pub fn center(&self) -> Complex64 {
        Complex64::new(
            0.5 * (self.re_lo + self.re_hi),
            0.5 * (self.im_lo + self.im_hi),
        )
    }

    fn diameter(&self) -> f64 {
        self.width().max(self.height())
    }

    fn contains(&self, z: Complex64, slack: f64) -> bool {
        z.re >= self.re_lo - slack
            && z.re <= self.re_hi + slack
            && z.im >= self.im_lo - slack
            && z.im <= self.im_hi + slack
    }

    fn split(&self, frac: f64) -> (Rect, Rect) {
        if self.width() >= self.height() {
            let cut = self.re_lo + frac * self.width();
            (
                Rect { re_hi: cut, ..*self },
                Rect { re_lo: cut, ..*self },
            )
        } else {
            let cut = self.im_lo + frac * self.height();
            (
                Rect { im_hi: cut, ..*self },
                Rect { im_lo: cut, ..*self },
            )
        }
    }
}

/// One isolated solution of `Phi(a) = s`.
#[derive(Debug, Clone, Copy)]
pub struct PreimageRoot {
    pub location: Complex64,
    pub multiplicity: u32,
    pub residual: f64,
}

/// Winding-count bound on roots in the excluded boundary strip.
#[derive(Debug, Clone, Copy)]
pub struct StripBound {
    /// Roots (with multiplicity) found in `[left_edge, delta]`.
    pub count: u32,
    pub left_edge: f64,
    /// True when the strip contour could start on the imaginary axis itself.
    pub complete: bool,
}

/// All preimages of one target in the search rectangle, certified by the
/// argument principle.
#[derive(Debug, Clone)]
pub struct PreimageSet {
    pub target: Complex64,
    pub roots: Vec<PreimageRoot>,
    pub search_box: Rect,
    /// Winding count of the full search box; equals the multiplicity sum.
    pub total_count: u32,
    pub strip: StripBound,
    pub excluded_depth: f64,
}

impl PreimageSet {
    /// Total multiplicity of found roots.
    pub fn count(&self) -> u32 {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

/// A counting-function value plus the worst-case contribution of the
/// excluded strip.
#[derive(Debug, Clone, Copy)]
pub struct CountingValue {
    pub value: f64,
    pub excluded_bound: f64,
    pub root_count: u32,
    /// False when the strip bound itself had to retreat from the axis.
    pub strip_complete: bool,
}

enum StepProblem {
    BoundaryZero(Complex64),
    Unstable(f64),
}

const EDGE_SEGMENT_CAP: usize = 8192;

/// Continuous argument change of `Phi - s` along the segment `z0 -> z1`,
/// by adaptive bisection until each piece turns by less than pi/3 and the
/// midpoint confirms the branch.
fn edge_arg_change(
    sym: &Symbol,
    s: Complex64,
    z0: Complex64,
    z1: Complex64,
    zero_eps: f64,
) -> std::result::Result<f64, StepProblem> {
    let f = |t: f64| sym.evaluate(z0 + (z1 - z0) * t) - s;
    let w0 = f(0.0);
    let w1 = f(1.0);
    let mut total = 0.0;
    let mut segments = 0usize;
    // stack of (t0, w0, t1, w1, depth)
    let mut stack = vec![(0.0, w0, 1.0, w1, 0u32)];
    while let Some((t0, w0, t1, w1, depth)) = stack.pop() {
        if w0.norm() < zero_eps {
            return Err(StepProblem::BoundaryZero(z0 + (z1 - z0) * t0));
        }
        if w1.norm() < zero_eps {
            return Err(StepProblem::BoundaryZero(z0 + (z1 - z0) * t1));
        }
        let tm = 0.5 * (t0 + t1);
        let wm = f(tm);
        let d0 = (wm / w0).arg();
        let d1 = (w1 / wm).arg();
        if depth >= 1 && d0.abs() <= FRAC_PI_3 && d1.abs() <= FRAC_PI_3 {
            total += d0 + d1;
            segments += 2;
            if segments > EDGE_SEGMENT_CAP {
                return Err(StepProblem::Unstable(total / TAU));
            }
            continue;
        }
        if depth >= 48 {
            return Err(StepProblem::Unstable(total / TAU));
        }
        stack.push((tm, wm, t1, w1, depth + 1));
        stack.push((t0, w0, tm, wm, depth + 1));
    }
    Ok(total)
}

/// Winding number of `Phi - s` around a rectangle: the number of roots
/// inside, counted with multiplicity.
fn winding_number(
    sym: &Symbol,
    s: Complex64,
    rect: &Rect,
    snap: f64,
) -> std::result::Result<u32, StepProblem> {
    let zero_eps = 1e-13 * (1.0 + s.norm());
    let corners = rect.corners();
    let mut total = 0.0;
    for i in 0..4 {
        total += edge_arg_change(sym, s, corners[i], corners[(i + 1) % 4], zero_eps)?;
    }
    let turns = total / TAU;
    let snapped = turns.round();
    if (turns - snapped).abs() > snap {
        return Err(StepProblem::Unstable(turns));
    }
    if snapped < -0.5 {
        // an analytic function cannot wind negatively; numerical garbage
        return Err(StepProblem::Unstable(turns));
    }
    Ok(snapped.max(0.0) as u32)
}

fn newton_polish(
    sym: &Symbol,
    s: Complex64,
    start: Complex64,
    rect: &Rect,
    residual_tol: f64,
) -> Option<PreimageRoot> {
    let slack = 1e-9 * (1.0 + rect.diameter());
    let mut z = start;
    for _ in 0..80 {
        let fz = sym.evaluate(z) - s;
        if fz.norm() <= residual_tol {
            if rect.contains(z, slack) {
                return Some(PreimageRoot {
                    location: z,
                    multiplicity: 1,
                    residual: fz.norm(),
                });
            }
            return None;
        }
        let dz = sym.derivative(z);
        if dz.norm() < 1e-280 {
            return None;
        }
        z -= fz / dz;
        if !z.re.is_finite() || !z.im.is_finite() || !rect.contains(z, 2.0 * rect.diameter() + 1.0)
        {
            return None;
        }
    }
    None
}

const SPLIT_FRACTIONS: [f64; 5] = [0.5, 0.53, 0.46, 0.59, 0.41];

fn isolate(
    sym: &Symbol,
    s: Complex64,
    rect: Rect,
    settings: &SolverSettings,
    residual_tol: f64,
    depth: u32,
    out: &mut Vec<PreimageRoot>,
) -> std::result::Result<(), StepProblem> {
    let count = winding_number(sym, s, &rect, settings.winding_snap)?;
    if count == 0 {
        return Ok(());
    }
    let cluster_tol = (10.0 * settings.tol).max(1e-10) * (1.0 + s.norm());
    if count == 1 {
        if let Some(root) = newton_polish(sym, s, rect.center(), &rect, residual_tol) {
            out.push(root);
            return Ok(());
        }
    }
    if rect.diameter() < cluster_tol || depth >= settings.max_subdivisions {
        // a cluster or genuinely multiple root: report the box center with
        // the winding multiplicity and the measured residual
        let z = rect.center();
        out.push(PreimageRoot {
            location: z,
            multiplicity: count,
            residual: (sym.evaluate(z) - s).norm(),
        });
        return Ok(());
    }
    let mut last = None;
    for frac in SPLIT_FRACTIONS {
        let (a, b) = rect.split(frac);
        let mut scratch = Vec::new();
        let attempt = isolate(sym, s, a, settings, residual_tol, depth + 1, &mut scratch)
            .and_then(|_| isolate(sym, s, b, settings, residual_tol, depth + 1, &mut scratch));
        match attempt {
            Ok(()) => {
                out.extend(scratch);
                return Ok(());
            }
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

fn localization_box(sym: &Symbol, s: Complex64, delta: f64, inflate: f64) -> Rect {
    let c0 = sym.c0() as f64;
    let margin = sym.im_bound() + sym.phi().constant_coeff().im.abs();
    let re_pad = (0.02 * s.re + 1e-7) * inflate;
    let im_pad = (0.05 * (margin + 1.0)) * inflate;
    Rect {
        re_lo: delta,
        re_hi: s.re + re_pad,
        im_lo: (s.im - margin) / c0 - im_pad,
        im_hi: (s.im + margin) / c0 + im_pad,
    }
}

/// All solutions of `Phi(a) = s` with `Re(a) >= delta`, isolated by the
/// argument principle and polished by Newton. Requires a validated symbol
/// with `c0 >= 1` and a target in the open right half-plane.
pub fn preimages(sym: &Symbol, s: Complex64, settings: &SolverSettings) -> Result<PreimageSet> {
    sym.require_certificate()?;
    if sym.c0() == 0 {
        return Err(Error::DilationRequired { c0: 0 });
    }
    if s.re.is_nan() || s.re <= 0.0 {
        return Err(Error::InvalidConfig(format!(
            "preimage target must lie in the open right half-plane, got Re(s) = {}",
            s.re
        )));
    }
    let residual_tol = settings.tol * (1.0 + s.norm());
    let mut delta_eff = settings.delta;
    let mut outcome = None;
    let mut last_problem: Option<StepProblem> = None;
    // roots sitting exactly on a contour are dodged by inflating the pads
    // (harmless: the mathematical localization already contains every root)
    // and nudging the delta edge inwards
    for attempt in 0..12 {
        let inflate = 1.0 + 0.13 * attempt as f64;
        delta_eff = settings.delta * (1.0 - 1e-3 * attempt as f64);
        let rect = localization_box(sym, s, delta_eff, inflate);
        if rect.re_hi <= rect.re_lo {
            // the whole admissible range is inside the excluded strip
            outcome = Some((Vec::new(), 0, rect));
            break;
        }
        let outer = match winding_number(sym, s, &rect, settings.winding_snap) {
            Ok(n) => n,
            Err(e) => {
                last_problem = Some(e);
                continue;
            }
        };
        let mut roots = Vec::new();
        match isolate(sym, s, rect, settings, residual_tol, 0, &mut roots) {
            Ok(()) => {
                // certify: the isolated multiplicities must reproduce the
                // argument-principle count of the full box
                if roots.iter().map(|r| r.multiplicity).sum::<u32>() != outer {
                    continue;
                }
                outcome = Some((roots, outer, rect));
                break;
            }
            Err(e) => {
                last_problem = Some(e);
                continue;
            }
        }
    }
    let (mut roots, total_count, rect) = outcome.ok_or_else(|| match last_problem {
        Some(StepProblem::Unstable(turns)) => Error::WindingUnstable {
            value: turns,
            snap: settings.winding_snap,
        },
        Some(StepProblem::BoundaryZero(z)) => Error::BoundaryZero {
            location: format!("{z} (target {s})"),
        },
        None => Error::BoundaryZero {
            location: format!("target {s}"),
        },
    })?;
    roots.sort_by(|a, b| {
        (a.location.re, a.location.im)
            .partial_cmp(&(b.location.re, b.location.im))
            .unwrap()
    });
    // merge Newton duplicates within the cluster scale
    let merge_tol = (100.0 * settings.tol).max(1e-9) * (1.0 + s.norm());
    let mut merged: Vec<PreimageRoot> = Vec::new();
    for r in roots {
        if let Some(last) = merged.last_mut() {
            if (last.location - r.location).norm() < merge_tol {
                last.multiplicity += r.multiplicity;
                last.residual = last.residual.max(r.residual);
                continue;
            }
        }
        merged.push(r);
    }

    // bound the excluded strip [left, delta]
    let mut strip = StripBound {
        count: 0,
        left_edge: delta_eff,
        complete: false,
    };
    for left_frac in [0.0, 1e-3, 1e-2, 0.1] {
        let strip_rect = Rect {
            re_lo: delta_eff * left_frac,
            re_hi: delta_eff,
            ..localization_box(sym, s, delta_eff, 1.0)
        };
        match winding_number(sym, s, &strip_rect, settings.winding_snap) {
            Ok(count) => {
                strip = StripBound {
                    count,
                    left_edge: strip_rect.re_lo,
                    complete: left_frac == 0.0,
                };
                break;
            }
            Err(_) => continue,
        }
    }

    Ok(PreimageSet {
        target: s,
        roots: merged,
        search_box: rect,
        total_count,
        strip,
        excluded_depth: delta_eff,
    })
}

/// `N_Phi(s) = sum Re(a)` over preimages, with the strip bound
/// `count * delta` attached.
pub fn n_phi(sym: &Symbol, s: Complex64, settings: &SolverSettings) -> Result<CountingValue> {
    let set = preimages(sym, s, settings)?;
    // `+ 0.0` turns the empty-sum identity -0.0 into +0.0
    let value = set
        .roots
        .iter()
        .map(|r| r.multiplicity as f64 * r.location.re)
        .sum::<f64>()
        + 0.0;
    Ok(CountingValue {
        value,
        excluded_bound: set.strip.count as f64 * set.excluded_depth,
        root_count: set.count(),
        strip_complete: set.strip.complete,
    })
}

/// `N_{beta,Phi}(s) = sum beta_h(Re(a))` over preimages, with the strip
/// bound `count * beta_h(delta)` attached.
pub fn n_beta(
    sym: &Symbol,
    s: Complex64,
    mu: &MeasureDensity,
    settings: &SolverSettings,
) -> Result<CountingValue> {
    let set = preimages(sym, s, settings)?;
    let value = set
        .roots
        .iter()
        .map(|r| r.multiplicity as f64 * mu.beta(r.location.re))
        .sum::<f64>()
        + 0.0;
    Ok(CountingValue {
        value,
        excluded_bound: set.strip.count as f64 * mu.beta(set.excluded_depth),
        root_count: set.count(),
        strip_complete: set.strip.complete,
    })
}

/// Independent route to `N_{beta,Phi}` through horizontal slices:
///
/// ```text
/// N_{beta_h,Phi}(s) = int_0^{Re(s)} N_{Phi_u}(s) h(u) du,
/// ```
///
/// where `Phi_u(a) = Phi(a + u)`. Each integrand evaluation is a full
/// preimage solve of the translated symbol, so this serves as an oracle for
/// the direct summation route.
pub fn n_beta_via_lemma1(
    sym: &Symbol,
    s: Complex64,
    mu: &MeasureDensity,
    settings: &SolverSettings,
    quad_tol: f64,
) -> Result<f64> {
    sym.require_certificate()?;
    if sym.c0() == 0 {
        return Err(Error::DilationRequired { c0: 0 });
    }
    let c0 = sym.c0() as f64;
    let slice_count = |u: f64| -> Result<f64> {
        Ok(n_phi(&sym.translated(u), s, settings)?.value)
    };
    // near u = 0 the density may be unbounded (alpha < 0); cut where the
    // accumulated mass is negligible against the slice counting bound
    let n_cap = s.re / c0;
    let mut lo = s.re * 1e-12;
    while mu.cdf(lo) * n_cap > 0.05 * quad_tol && lo > f64::MIN_POSITIVE {
        lo *= 0.5;
    }
    // each root contributes the hinge (Re(a) - u)^+, so the slice count is
    // nonincreasing in u and supported on [0, max Re(a)]; bracketing that
    // support by bisection keeps narrow slivers visible to the panels
    if slice_count(lo)? == 0.0 {
        return Ok(0.0);
    }
    let mut u_hi = s.re;
    if slice_count(s.re * (1.0 - 1e-12))? == 0.0 {
        let mut a = lo;
        let mut b = s.re;
        for _ in 0..60 {
            if b - a <= 1e-13 * s.re {
                break;
            }
            let mid = 0.5 * (a + b);
            if slice_count(mid)? > 0.0 {
                a = mid;
            } else {
                b = mid;
            }
        }
        u_hi = b;
    }
    let integrand = |u: f64| -> f64 {
        if u <= lo || u >= s.re {
            return 0.0;
        }
        let h = mu.density(u);
        if h == 0.0 {
            return 0.0;
        }
        slice_count(u).expect("slice solve") * h
    };
    let quad = adaptive_simpson(integrand, lo, u_hi, quad_tol, 44)?;
    Ok(quad.value)
}

/// One tested point of the Littlewood inequality
/// `N_{beta_h,Phi}(s) <= beta_h(Re s) / c0`.
#[derive(Debug, Clone, Copy)]
pub struct LittlewoodRow {
    pub s: Complex64,
    pub n_beta: f64,
    pub bound: f64,
    /// `bound - n_beta`; negative beyond tolerance means a solver bug.
    pub margin: f64,
}

#[derive(Debug, Clone)]
pub struct LittlewoodReport {
    pub rows: Vec<LittlewoodRow>,
    pub violations: usize,
    pub worst_margin: f64,
    pub tol: f64,
}

/// Check the Littlewood inequality over a target grid.
pub fn littlewood_check(
    sym: &Symbol,
    mu: &MeasureDensity,
    s_grid: &[Complex64],
    settings: &SolverSettings,
    tol: f64,
) -> Result<LittlewoodReport> {
    let c0 = sym.c0() as f64;
    if sym.c0() == 0 {
        return Err(Error::DilationRequired { c0: 0 });
    }
    let mut rows = Vec::with_capacity(s_grid.len());
    let mut violations = 0;
    let mut worst = f64::INFINITY;
    for &s in s_grid {
        let nb = n_beta(sym, s, mu, settings)?;
        let bound = mu.beta(s.re) / c0;
        let margin = bound - nb.value;
        if margin < -tol {
            violations += 1;
        }
        worst = worst.min(margin);
        rows.push(LittlewoodRow {
            s,
            n_beta: nb.value,
            bound,
            margin,
        });
    }
    Ok(LittlewoodReport {
        rows,
        violations,
        worst_margin: worst,
        tol,
    })
}

/// Largest preimage count (with multiplicity) observed over a grid: an
/// empirical lower bound for the valence.
pub fn valence_estimate(sym: &Symbol, s_grid: &[Complex64], settings: &SolverSettings) -> Result<u32> {
    let mut max = 0;
    for &s in s_grid {
        max = max.max(preimages(sym, s, settings)?.count());
    }
    Ok(max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::DirichletPolynomial;
    use crate::symbol::{BoundarySampler, ValidationMode};
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn validated(c0: u32, phi: DirichletPolynomial) -> Symbol {
        let mut sym = Symbol::new(c0, phi);
        sym.validate(ValidationMode::RightHalfPlane, &BoundarySampler::default())
            .unwrap();
        sym
    }

    fn shifted_compact_symbol() -> Symbol {
        // Phi(s) = s + 2 - 2^{-s}: Re Phi >= Re s + 1, so targets with
        // Re s < 1 have no preimages at all
        validated(
            1,
            DirichletPolynomial::from_real_terms([(1, 2.0), (2, -1.0)]).unwrap(),
        )
    }

    #[test]
    fn linear_dilation_single_root() {
        let sym = Symbol::dilation(2);
        let settings = SolverSettings::default();
        let set = preimages(&sym, c(1.0, 0.0), &settings).unwrap();
        assert_eq!(set.count(), 1);
        let root = set.roots[0];
        assert_eq!(root.multiplicity, 1);
        assert!((root.location - c(0.5, 0.0)).norm() < 1e-10);
        assert_eq!(set.total_count, 1);
        assert_eq!(set.strip.count, 0);

        let set = preimages(&sym, c(0.5, 7.0), &settings).unwrap();
        assert_eq!(set.count(), 1);
        assert!((set.roots[0].location - c(0.25, 3.5)).norm() < 1e-10);
    }

    #[test]
    fn no_root_when_real_part_is_forced_up() {
        // Phi(s) = s + 1 + 2^{-s}, target 2: a + 2^{-a} = 1 has no solution
        // with Re a > 0 (on the axis the only solution is a = 0, and
        // |sin(y ln 2)| < |y| kills every off-axis candidate)
        let sym = validated(
            1,
            DirichletPolynomial::from_real_terms([(1, 1.0), (2, 1.0)]).unwrap(),
        );
        let set = preimages(&sym, c(2.0, 0.0), &SolverSettings::default()).unwrap();
        assert_eq!(set.count(), 0, "roots: {:?}", set.roots);
        // the boundary root a = 0 prevents a contour on the axis itself
        assert!(!set.strip.complete || set.strip.count == 0);

        // target 3: a + 2^{-a} = 2 has the real solution near 1.6922
        let set = preimages(&sym, c(3.0, 0.0), &SolverSettings::default()).unwrap();
        assert_eq!(set.count(), 1);
        let a = set.roots[0].location;
        assert!((a.im).abs() < 1e-9);
        assert!((a.re + 2f64.powf(-a.re) - 2.0).abs() < 1e-9);
        assert!(set.roots[0].residual < 1e-10);
    }

    #[test]
    fn counting_functions_for_dilations() {
        let mu = MeasureDensity::alpha(0.0).unwrap();
        let settings = SolverSettings::default();
        for c0 in [1u32, 2, 3] {
            let sym = Symbol::dilation(c0);
            let s = c(0.8, 0.35);
            let np = n_phi(&sym, s, &settings).unwrap();
            assert_relative_eq!(np.value, s.re / c0 as f64, epsilon = 1e-10);
            let nb = n_beta(&sym, s, &mu, &settings).unwrap();
            assert_relative_eq!(nb.value, mu.beta(s.re / c0 as f64), epsilon = 1e-10);
        }
    }

    #[test]
    fn empty_preimage_counting_is_zero() {
        let sym = shifted_compact_symbol();
        let mu = MeasureDensity::alpha(0.0).unwrap();
        let settings = SolverSettings::default();
        for s in [c(0.5, 0.0), c(0.9, 2.0), c(0.25, -1.0)] {
            assert_eq!(n_phi(&sym, s, &settings).unwrap().value, 0.0);
            assert_eq!(n_beta(&sym, s, &mu, &settings).unwrap().value, 0.0);
            assert_eq!(
                n_beta_via_lemma1(&sym, s, &mu, &settings, 1e-9).unwrap(),
                0.0
            );
        }
    }

    #[test]
    fn lemma1_matches_closed_form_for_dilation() {
        let mu = MeasureDensity::alpha(0.0).unwrap();
        let settings = SolverSettings::default();
        for c0 in [1u32, 2] {
            let sym = Symbol::dilation(c0);
            let s = c(0.6, 0.0);
            let via = n_beta_via_lemma1(&sym, s, &mu, &settings, 1e-10).unwrap();
            assert_relative_eq!(via, mu.beta(s.re / c0 as f64), epsilon = 1e-8);
        }
    }

    #[test]
    fn lemma1_agrees_with_direct_route_on_shifted_symbol() {
        // Phi(s) = s + 1: single preimage s - 1 for Re s > 1
        let sym = validated(
            1,
            DirichletPolynomial::from_real_terms([(1, 1.0)]).unwrap(),
        );
        let mu = MeasureDensity::alpha(0.0).unwrap();
        let settings = SolverSettings::default();
        let s = c(1.7, 0.4);
        let direct = n_beta(&sym, s, &mu, &settings).unwrap().value;
        assert_relative_eq!(direct, mu.beta(0.7), epsilon = 1e-10);
        let via = n_beta_via_lemma1(&sym, s, &mu, &settings, 1e-9).unwrap();
        assert!((direct - via).abs() < 1e-7, "direct {direct} via {via}");
    }

    #[test]
    fn littlewood_margins() {
        let mu = MeasureDensity::alpha(0.0).unwrap();
        let settings = SolverSettings::default();
        // identity: equality, margin ~ 0
        let id = Symbol::dilation(1);
        let report = littlewood_check(&id, &mu, &[c(0.5, 0.0), c(0.25, 1.0)], &settings, 1e-9)
            .unwrap();
        assert_eq!(report.violations, 0);
        for row in &report.rows {
            assert!(row.margin.abs() <= 1e-9, "{row:?}");
        }
        // dilation c0 = 2: strict positivity by convexity
        let two = Symbol::dilation(2);
        let report =
            littlewood_check(&two, &mu, &[c(0.5, 0.0), c(1.0, -0.7)], &settings, 1e-9).unwrap();
        assert_eq!(report.violations, 0);
        for row in &report.rows {
            assert!(row.margin > 0.0);
        }
        // shift: margin beta(r) - beta(r-1) > 0
        let shift = validated(
            1,
            DirichletPolynomial::from_real_terms([(1, 1.0)]).unwrap(),
        );
        let report = littlewood_check(&shift, &mu, &[c(1.5, 0.0)], &settings, 1e-9).unwrap();
        assert_relative_eq!(
            report.rows[0].margin,
            mu.beta(1.5) - mu.beta(0.5),
            epsilon = 1e-9
        );
    }

    #[test]
    fn vertical_translation_covariance() {
        // N_{beta, Phi_tau}(s) = N_{beta, Phi}(s + i c0 tau)
        let sym = validated(
            2,
            DirichletPolynomial::from_real_terms([(1, 0.7), (2, 0.4), (3, 0.2)]).unwrap(),
        );
        let mu = MeasureDensity::alpha(1.0).unwrap();
        let settings = SolverSettings::default();
        let tau = 0.9;
        let shifted = sym.vertical_translate(tau);
        for s in [c(0.7, 0.1), c(1.1, -0.6)] {
            let lhs = n_beta(&shifted, s, &mu, &settings).unwrap().value;
            let rhs = n_beta(&sym, s + c(0.0, 2.0 * tau), &mu, &settings)
                .unwrap()
                .value;
            assert!((lhs - rhs).abs() < 1e-9, "lhs {lhs} rhs {rhs}");
        }
    }

    #[test]
    fn valence_of_injective_maps() {
        let settings = SolverSettings::default();
        let grid = [c(0.4, 0.0), c(0.8, 0.5), c(1.5, -1.0)];
        assert_eq!(
            valence_estimate(&Symbol::dilation(2), &grid, &settings).unwrap(),
            1
        );
        let sym = validated(
            1,
            DirichletPolynomial::from_real_terms([(1, 1.0), (2, 1.0)]).unwrap(),
        );
        let grid = [c(2.5, 0.0), c(3.0, 0.4), c(4.0, -0.9)];
        assert_eq!(valence_estimate(&sym, &grid, &settings).unwrap(), 1);
        // empty grid preimages
        let compact = shifted_compact_symbol();
        assert_eq!(
            valence_estimate(&compact, &[c(0.5, 0.0), c(0.8, 1.0)], &settings).unwrap(),
            0
        );
    }

    #[test]
    fn multiplicity_of_a_genuinely_double_root() {
        // Phi(s) = s + 1 + 16^{-s} and the critical target: Phi'(a) = 0 at
        // a* = ln(ln 16)/ln 16 in the half-plane, so Phi(a*) is attained with
        // multiplicity 2 (a boundary-contour oracle gives winding 2 for the
        // whole localization box)
        let q = 16u64;
        let lnq = (q as f64).ln();
        let sym = validated(
            1,
            DirichletPolynomial::from_real_terms([(1, 1.0), (q, 1.0)]).unwrap(),
        );
        let a_star = lnq.ln() / lnq;
        assert!(a_star > 0.0);
        let target = c(a_star + 1.0 + 1.0 / lnq, 0.0);
        let set = preimages(&sym, target, &SolverSettings::default()).unwrap();
        assert_eq!(set.count(), 2, "roots: {:?}", set.roots);
        // either one double root or two Newton-separated simple roots at the
        // same location; both must sit at a*
        for r in &set.roots {
            assert!((r.location - c(a_star, 0.0)).norm() < 1e-5, "{r:?}");
        }
    }

    #[test]
    fn close_pair_just_past_the_critical_value() {
        // push the double-root target of s + 1 + 16^{-s} slightly up: the
        // fiber splits into two nearby simple roots on the real axis, which
        // a 1-D bisection oracle locates independently
        let q = 16u64;
        let lnq = (q as f64).ln();
        let sym = validated(
            1,
            DirichletPolynomial::from_real_terms([(1, 1.0), (q, 1.0)]).unwrap(),
        );
        let a_star = lnq.ln() / lnq;
        let critical = a_star + 1.0 + 1.0 / lnq;
        let target = c(critical + 0.01, 0.0);
        let g = |a: f64| a + 1.0 + (q as f64).powf(-a) - target.re;
        let bisect = |mut lo: f64, mut hi: f64| {
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if (g(mid) < 0.0) == (g(lo) < 0.0) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            0.5 * (lo + hi)
        };
        // g is decreasing then increasing around a*, negative at a*
        let left = bisect(1e-6, a_star);
        let right = bisect(a_star, 3.0);
        assert!(right - left > 0.1, "oracle roots too close to trust");

        let set = preimages(&sym, target, &SolverSettings::default()).unwrap();
        assert_eq!(set.count(), 2, "roots: {:?}", set.roots);
        assert_eq!(set.roots.len(), 2);
        let mut found: Vec<f64> = set.roots.iter().map(|r| r.location.re).collect();
        found.sort_by(f64::total_cmp);
        assert!((found[0] - left).abs() < 1e-9, "{} vs {}", found[0], left);
        assert!((found[1] - right).abs() < 1e-9, "{} vs {}", found[1], right);
        for r in &set.roots {
            assert_eq!(r.multiplicity, 1);
            assert!(r.location.im.abs() < 1e-9);
        }
    }

    #[test]
    fn counting_against_a_tabulated_measure() {
        // dilation closed form holds for any density: N_beta = beta(Re s/c0)
        let mu = MeasureDensity::uniform_unit();
        let settings = SolverSettings::default();
        for c0 in [1u32, 2] {
            let sym = Symbol::dilation(c0);
            let s = c(0.9, -0.4);
            let nb = n_beta(&sym, s, &mu, &settings).unwrap();
            assert_relative_eq!(nb.value, mu.beta(s.re / c0 as f64), epsilon = 1e-10);
            let via = n_beta_via_lemma1(&sym, s, &mu, &settings, 1e-9).unwrap();
            assert!((via - nb.value).abs() < 1e-7, "via {via} direct {}", nb.value);
        }
    }

    #[test]
    fn rejects_unvalidated_and_zero_dilation() {
        let raw = Symbol::new(1, DirichletPolynomial::from_real_terms([(2, 0.1)]).unwrap());
        assert!(matches!(
            preimages(&raw, c(1.0, 0.0), &SolverSettings::default()),
            Err(Error::UnvalidatedSymbol)
        ));
        let mut flat = Symbol::new(0, DirichletPolynomial::from_real_terms([(1, 1.5)]).unwrap());
        flat.validate(
            ValidationMode::BeyondHalf { eta: 0.5 },
            &BoundarySampler::default(),
        )
        .unwrap();
        assert!(matches!(
            preimages(&flat, c(1.0, 0.0), &SolverSettings::default()),
            Err(Error::DilationRequired { .. })
        ));
    }
}
