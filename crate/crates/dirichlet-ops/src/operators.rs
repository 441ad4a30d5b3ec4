//! Composition operators as truncated matrices: operator norms,
//! Hilbert-Schmidt sums, and essential-norm estimators.
//!
//! In the orthonormal basis `e_n / sqrt(w_h(n))` the operator `C_Phi` has the
//! column structure
//!
//! ```text
//! M[m][n] = (coefficient of e_m in e_n o Phi) * sqrt(w_h(m) / w_h(n)),
//! ```
//!
//! so a truncation to indices `<= N` is assembled from monomial images. The
//! truncated norm is a lower bound for `||C_Phi||` that is nondecreasing in
//! `N` (compressions only remove mass). Essential-norm bounds come from two
//! independent routes: counting-function ratios from above and partial-kernel
//! ratios from below.

use crate::counting::{n_beta, n_phi, SolverSettings};
use crate::error::{Error, Result};
use crate::measure::{MeasureDensity, WeightTable};
use crate::poly::TruncationLoss;
use crate::spaces::{partial_kernel_norm_sq, KernelCutoff};
use crate::symbol::{Certificate, Symbol, SymbolExpansion, ValidationMode};
use crate::trend::{classify, Trend};
use num_complex::Complex64;
use rayon::prelude::*;
use statrs::function::gamma::{gamma, gamma_ur};

/// Check that the symbol's certificate actually covers boundedness for its
/// dilation degree: any certificate for `c0 >= 1`, a strict `eta > 0`
/// half-plane certificate for `c0 = 0`.
pub fn require_bounded(sym: &Symbol) -> Result<Certificate> {
    let cert = sym.require_certificate()?;
    if sym.c0() == 0 {
        match cert.mode {
            ValidationMode::BeyondHalf { eta } if eta > 0.0 => Ok(cert),
            _ => Err(Error::MissingEtaCertificate),
        }
    } else {
        Ok(cert)
    }
}

/// Column-sparse truncation of `C_Phi` on the weighted basis.
#[derive(Debug, Clone)]
pub struct OperatorMatrix {
    dim: usize,
    /// `cols[n-1]` holds `(m-1, entry)` pairs with `m` the row index.
    cols: Vec<Vec<(u32, Complex64)>>,
    /// Explicitly dropped product mass during assembly.
    pub dropped: TruncationLoss,
    /// Summed analytic bound on coefficient mass pushed past the truncation.
    pub tail_l1: f64,
}

impl OperatorMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, m: u64, n: u64) -> Complex64 {
        self.cols[(n - 1) as usize]
            .iter()
            .find(|&&(row, _)| row as u64 == m - 1)
            .map(|&(_, v)| v)
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn column(&self, n: u64) -> &[(u32, Complex64)] {
        &self.cols[(n - 1) as usize]
    }

    fn apply(&self, x: &[Complex64], y: &mut [Complex64]) {
        y.fill(Complex64::new(0.0, 0.0));
        for (col, entries) in self.cols.iter().enumerate() {
            let xc = x[col];
            if xc.norm_sqr() == 0.0 {
                continue;
            }
            for &(row, v) in entries {
                y[row as usize] += v * xc;
            }
        }
    }

    fn apply_adjoint(&self, y: &[Complex64], z: &mut [Complex64]) {
        for (col, entries) in self.cols.iter().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for &(row, v) in entries {
                acc += v.conj() * y[row as usize];
            }
            z[col] = acc;
        }
    }
}

/// Assemble the truncation of `C_Phi` to indices `<= dim`.
///
/// Refuses unvalidated symbols. Columns are exact for `c0 >= 1`; for
/// `c0 = 0` the exactness of kept coefficients still holds and the pushed-out
/// mass is reported in `tail_l1`.
pub fn operator_matrix(sym: &Symbol, mu: &MeasureDensity, dim: u64) -> Result<OperatorMatrix> {
    require_bounded(sym)?;
    assert!(dim >= 1);
    let weights = WeightTable::new(mu, dim)?;
    let expansion = SymbolExpansion::new(sym, dim)?;
    let columns: Vec<_> = (1..=dim)
        .into_par_iter()
        .map(|n| {
            let image = expansion.monomial_image(n)?;
            let scale = weights.get(n).sqrt();
            let col: Vec<(u32, Complex64)> = image
                .terms
                .iter()
                .map(|&(m, c)| ((m - 1) as u32, c * (weights.get(m).sqrt() / scale)))
                .collect();
            Ok((col, image.loss, image.tail_l1 / scale))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut cols = Vec::with_capacity(dim as usize);
    let mut dropped = TruncationLoss::default();
    let mut tail_l1 = 0.0;
    for (col, loss, tail) in columns {
        cols.push(col);
        dropped.absorb(loss);
        tail_l1 += tail;
    }
    Ok(OperatorMatrix {
        dim: dim as usize,
        cols,
        dropped,
        tail_l1,
    })
}

/// Largest singular value by power iteration on `M* M`.
///
/// Returns a lower-bound estimate of `||C_Phi||` (truncation only removes
/// mass). Errors with the residual if the iteration stalls.
pub fn operator_norm(matrix: &OperatorMatrix, tol: f64, max_iter: usize) -> Result<f64> {
    assert!(tol > 0.0);
    let n = matrix.dim;
    // deterministic dense start vector
    let mut x: Vec<Complex64> = (0..n)
        .map(|i| {
            let jitter = ((i as u64).wrapping_mul(2_654_435_761) % 97) as f64 / 97.0;
            Complex64::new(1.0 + 0.5 * jitter, 0.0)
        })
        .collect();
    normalize(&mut x);
    let mut y = vec![Complex64::new(0.0, 0.0); n];
    let mut z = vec![Complex64::new(0.0, 0.0); n];
    let mut sigma_prev = -1.0;
    let mut stable = 0;
    for _ in 0..max_iter {
        matrix.apply(&x, &mut y);
        let sigma = l2_norm(&y);
        if sigma == 0.0 {
            return Ok(0.0);
        }
        matrix.apply_adjoint(&y, &mut z);
        std::mem::swap(&mut x, &mut z);
        normalize(&mut x);
        if (sigma - sigma_prev).abs() <= tol * sigma.max(1e-300) {
            stable += 1;
            if stable >= 3 {
                return Ok(sigma);
            }
        } else {
            stable = 0;
        }
        sigma_prev = sigma;
    }
    let residual = {
        matrix.apply(&x, &mut y);
        (l2_norm(&y) - sigma_prev).abs()
    };
    Err(Error::PowerIterationStalled {
        iterations: max_iter,
        residual,
    })
}

fn l2_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

fn normalize(v: &mut [Complex64]) {
    let norm = l2_norm(v);
    if norm > 0.0 {
        for c in v.iter_mut() {
            *c /= norm;
        }
    }
}

/// A Hilbert-Schmidt partial sum with its comparison-series tail bound.
#[derive(Debug, Clone, Copy)]
pub struct HilbertSchmidtSum {
    pub truncation: u64,
    /// `sum_{n<=N} ||C_Phi(e_n^mu)||^2`.
    pub partial: f64,
    /// Bound on `sum_{n>N} n^{-1-2 eta} / w_h(n)`, which dominates the true
    /// remainder term by term.
    pub tail_bound: f64,
    /// Bound on how much the internal expansion cutoff can undercount the
    /// partial sum itself; negligible unless the perturbation carries large
    /// coefficient mass.
    pub expansion_slop: f64,
}

/// Tail of the comparison series past `n_from`, by integral test on
/// `x^{-1-2 eta} / w_h(x)`.
fn hs_comparison_tail(mu: &MeasureDensity, eta: f64, n_from: u64) -> Result<f64> {
    let q = 2.0 * eta;
    if let Some(alpha) = mu.alpha_parameter() {
        // integrand x^{-1-q} (1+ln x)^{alpha+1} decreases past
        // x* = exp((alpha+1)/(1+q) - 1); extend explicitly if needed
        let x_star = ((alpha + 1.0) / (1.0 + q) - 1.0).exp();
        let mut k = n_from;
        let mut explicit = 0.0;
        while (k as f64) < x_star {
            k += 1;
            explicit += (k as f64).powf(-1.0 - q) / mu.weight(k)?;
        }
        // int_K^inf x^{-1-q}(1+ln x)^{a+1} dx
        //   = e^q Gamma(a+2) q^{-(a+2)} Q(a+2, q (1+ln K))
        let a2 = alpha + 2.0;
        let integral =
            q.exp() * gamma(a2) * q.powf(-a2) * gamma_ur(a2, q * (1.0 + (k as f64).ln()));
        Ok(explicit + integral)
    } else {
        let end = mu
            .compact_support_end()
            .expect("non-alpha densities have compact support");
        // w_h(n) >= mass * n^{-2 end}: need 1 + q - 2 end > 1
        let p = 1.0 + q - 2.0 * end;
        if p <= 1.0 {
            return Err(Error::TailBoundUnavailable(format!(
                "support end {end} requires eta > {end} for a convergent comparison tail"
            )));
        }
        let mass_floor = mu.weight_power_floor(2.0 * end)?;
        Ok((n_from as f64).powf(1.0 - p) / ((p - 1.0) * mass_floor))
    }
}

/// Hilbert-Schmidt partial sums `sum_{n<=N} ||C_Phi(e_n^mu)||^2` at each
/// requested truncation, with tail bounds from the comparison series.
///
/// Requires `c0 = 0` and an `eta > 0` half-plane certificate; the proof-side
/// bound `||n^{-Phi_sigma}||^2 <= n^{-1-2 eta}` makes the comparison series
/// a term-by-term majorant, so `partial + tail` is nonincreasing in `N`.
pub fn hs_partial_sums(
    sym: &Symbol,
    mu: &MeasureDensity,
    truncations: &[u64],
) -> Result<Vec<HilbertSchmidtSum>> {
    let cert = sym.require_certificate()?;
    let eta = match (sym.c0(), cert.mode) {
        (0, ValidationMode::BeyondHalf { eta }) if eta > 0.0 => eta,
        (0, _) => return Err(Error::MissingEtaCertificate),
        (c0, _) => return Err(Error::DilationRequired { c0 }),
    };
    let mut sorted = truncations.to_vec();
    sorted.sort_unstable();
    let &n_max = sorted.last().ok_or_else(|| {
        Error::InvalidConfig("need at least one truncation for the HS sum".into())
    })?;
    // expansion cutoff far above the support scale so the exponential-factor
    // truncation error is negligible against the reported tails
    let internal_cutoff = 1u64 << 40;
    let expansion = SymbolExpansion::new(sym, internal_cutoff)?;
    let terms: Vec<(f64, f64)> = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let image = expansion.monomial_image(n)?;
            let mut norm_sq = 0.0;
            for &(m, c) in &image.terms {
                norm_sq += c.norm_sqr() * mu.weight(m)?;
            }
            let w = mu.weight(n)?;
            // ||g||^2 - ||g_kept||^2 <= tail (2 ||g_kept|| + tail), with the
            // tail measured in l1 and the weights at most 1
            let slop = image.tail_l1 * (2.0 * norm_sq.sqrt() + image.tail_l1) / w;
            Ok((norm_sq / w, slop))
        })
        .collect::<Result<Vec<(f64, f64)>>>()?;
    let mut out = Vec::with_capacity(sorted.len());
    let mut acc = 0.0;
    let mut slop = 0.0;
    let mut done = 0usize;
    for &t in &sorted {
        while done < t as usize {
            acc += terms[done].0;
            slop += terms[done].1;
            done += 1;
        }
        out.push(HilbertSchmidtSum {
            truncation: t,
            partial: acc,
            tail_bound: hs_comparison_tail(mu, eta, t)?,
            expansion_slop: slop,
        });
    }
    Ok(out)
}

/// Sampling window in the vertical direction for limsup estimates.
#[derive(Debug, Clone, Copy)]
pub struct TWindow {
    pub center: f64,
    /// Defaults to `im_bound + c0 + 1` when unset.
    pub half_width: Option<f64>,
    pub points: usize,
}

impl Default for TWindow {
    fn default() -> Self {
        TWindow {
            center: 0.0,
            half_width: None,
            points: 7,
        }
    }
}

impl TWindow {
    pub fn samples(&self, sym: &Symbol) -> Vec<f64> {
        let hw = self
            .half_width
            .unwrap_or(sym.im_bound() + sym.c0() as f64 + 1.0);
        if self.points <= 1 {
            return vec![self.center];
        }
        (0..self.points)
            .map(|j| self.center - hw + 2.0 * hw * j as f64 / (self.points - 1) as f64)
            .collect()
    }
}

/// One sampled point of a counting-ratio sweep.
#[derive(Debug, Clone, Copy)]
pub struct RatioRow {
    pub sigma: f64,
    pub t: f64,
    /// `N_{beta,Phi}(s) / beta_h(Re s)`.
    pub n_ratio: f64,
}

/// Upper essential-norm estimate on the weighted space:
/// `(2A + c0) * sup N_{beta,Phi}(s) / beta_h(Re s)` over the grid, with the
/// sup taken as `Re s` decreases. Non-rigorous in `t`, as the window is
/// finite.
#[derive(Debug, Clone)]
pub struct EssNormUpper {
    /// `2 sup|Im phi| + c0`, with the coefficient bound standing in for the
    /// sup (conservative).
    pub factor: f64,
    pub rows: Vec<RatioRow>,
    pub sup_ratio: f64,
    pub estimate: f64,
}

pub fn essnorm_upper(
    sym: &Symbol,
    mu: &MeasureDensity,
    sigma_grid: &[f64],
    window: &TWindow,
    settings: &SolverSettings,
) -> Result<EssNormUpper> {
    require_bounded(sym)?;
    if sym.c0() == 0 {
        return Err(Error::DilationRequired { c0: 0 });
    }
    let factor = 2.0 * sym.im_bound() + sym.c0() as f64;
    let ts = window.samples(sym);
    let grid: Vec<(f64, f64)> = sigma_grid
        .iter()
        .flat_map(|&sigma| ts.iter().map(move |&t| (sigma, t)))
        .collect();
    let rows: Vec<RatioRow> = grid
        .into_par_iter()
        .map(|(sigma, t)| {
            let nb = n_beta(sym, Complex64::new(sigma, t), mu, settings)?;
            Ok(RatioRow {
                sigma,
                t,
                n_ratio: nb.value / mu.beta(sigma),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let sup_ratio = rows.iter().map(|r| r.n_ratio).fold(0.0, f64::max);
    Ok(EssNormUpper {
        factor,
        rows,
        sup_ratio,
        estimate: factor * sup_ratio,
    })
}

/// One sampled point of a kernel-ratio sweep.
#[derive(Debug, Clone, Copy)]
pub struct KernelRow {
    pub sigma: f64,
    pub t: f64,
    /// `||K^l at Phi(s)|| / ||K^l at s||`.
    pub kernel_ratio: f64,
    /// The simplified indicator `Re(s) / Re(Phi(s))`.
    pub re_ratio: f64,
}

/// Lower essential-norm estimate from partial reproducing kernels.
///
/// The bound is `limsup_{Re s -> 0}` of the kernel ratio, so the estimate
/// reads the ratio off the small-sigma tail of the grid only; at moderate
/// sigma the ratio can legitimately exceed the essential norm. Requires the
/// perturbation to be supported on `p_l`-smooth indices, so that the adjoint
/// carries `K^l` kernels to `K^l` kernels.
#[derive(Debug, Clone)]
pub struct EssNormLower {
    pub rows: Vec<KernelRow>,
    pub estimate: f64,
}

pub fn essnorm_lower(
    sym: &Symbol,
    mu: &MeasureDensity,
    l: usize,
    sigma_grid: &[f64],
    window: &TWindow,
    cutoff: KernelCutoff,
) -> Result<EssNormLower> {
    require_bounded(sym)?;
    if sym.c0() == 0 {
        return Err(Error::DilationRequired { c0: 0 });
    }
    let prime_limit = *crate::arith::first_primes(l).last().unwrap();
    for n in sym.phi().support() {
        if crate::arith::greatest_prime_factor(n)? > prime_limit {
            return Err(Error::SmoothnessViolation {
                index: n,
                prime_limit,
            });
        }
    }
    let ts = window.samples(sym);
    let grid: Vec<(f64, f64)> = sigma_grid
        .iter()
        .flat_map(|&sigma| ts.iter().map(move |&t| (sigma, t)))
        .collect();
    let rows: Vec<KernelRow> = grid
        .into_par_iter()
        .map(|(sigma, t)| {
            let s = Complex64::new(sigma, t);
            let phi_s = sym.evaluate(s);
            let denom = partial_kernel_norm_sq(l, s, mu, cutoff)?;
            let numer = partial_kernel_norm_sq(l, phi_s, mu, cutoff)?;
            Ok(KernelRow {
                sigma,
                t,
                kernel_ratio: (numer.value.re / denom.value.re).sqrt(),
                re_ratio: s.re / phi_s.re,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    // limsup proxy: only the smallest sigma levels enter the estimate
    let sigma_min = sigma_grid.iter().copied().fold(f64::INFINITY, f64::min);
    let estimate = rows
        .iter()
        .filter(|r| r.sigma <= 8.0 * sigma_min)
        .map(|r| r.kernel_ratio)
        .fold(0.0, f64::max);
    Ok(EssNormLower { rows, estimate })
}

/// One sigma level of the compactness sweep (worst case over the window).
#[derive(Debug, Clone, Copy)]
pub struct CompactnessRow {
    pub sigma: f64,
    /// `max_t Re(s) / Re(Phi(s))`.
    pub re_ratio: f64,
    /// `max_t N_Phi(s) / Re(s)` (Hardy-space indicator).
    pub nphi_ratio: f64,
    /// `max_t N_{beta,Phi}(s) / beta_h(Re s)` (weighted-space indicator).
    pub nbeta_ratio: f64,
}

/// Counting-side compactness indicators and their grid trends.
#[derive(Debug, Clone)]
pub struct CompactnessReport {
    pub rows: Vec<CompactnessRow>,
    pub re_trend: Trend,
    pub nphi_trend: Trend,
    pub nbeta_trend: Trend,
}

impl CompactnessReport {
    /// Verdict for the weighted Bergman space: both the real-part ratio and
    /// the weighted counting ratio must die out.
    pub fn bergman_verdict(&self) -> &'static str {
        match (self.re_trend, self.nbeta_trend) {
            (Trend::Vanishing, Trend::Vanishing) => "compact trend",
            (Trend::Persistent, Trend::Persistent) => "not compact trend",
            _ => "mixed",
        }
    }

    /// Verdict for the Hardy space (finite valence assumed by the caller).
    pub fn hardy_verdict(&self) -> &'static str {
        match (self.re_trend, self.nphi_trend) {
            (Trend::Vanishing, Trend::Vanishing) => "compact trend",
            (Trend::Persistent, Trend::Persistent) => "not compact trend",
            _ => "mixed",
        }
    }
}

/// Sweep the counting-side compactness indicators over a shrinking
/// sigma grid.
pub fn compactness_report(
    sym: &Symbol,
    mu: &MeasureDensity,
    sigma_grid: &[f64],
    window: &TWindow,
    settings: &SolverSettings,
) -> Result<CompactnessReport> {
    require_bounded(sym)?;
    if sym.c0() == 0 {
        return Err(Error::DilationRequired { c0: 0 });
    }
    let ts = window.samples(sym);
    let rows: Vec<CompactnessRow> = sigma_grid
        .par_iter()
        .map(|&sigma| {
            let mut re_ratio: f64 = 0.0;
            let mut nphi_ratio: f64 = 0.0;
            let mut nbeta_ratio: f64 = 0.0;
            for &t in &ts {
                let s = Complex64::new(sigma, t);
                re_ratio = re_ratio.max(s.re / sym.evaluate(s).re);
                nphi_ratio = nphi_ratio.max(n_phi(sym, s, settings)?.value / sigma);
                nbeta_ratio = nbeta_ratio.max(n_beta(sym, s, mu, settings)?.value / mu.beta(sigma));
            }
            Ok(CompactnessRow {
                sigma,
                re_ratio,
                nphi_ratio,
                nbeta_ratio,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let pairs = |f: fn(&CompactnessRow) -> f64| -> Vec<(f64, f64)> {
        rows.iter().map(|r| (r.sigma, f(r))).collect()
    };
    Ok(CompactnessReport {
        re_trend: classify(&pairs(|r| r.re_ratio)),
        nphi_trend: classify(&pairs(|r| r.nphi_ratio)),
        nbeta_trend: classify(&pairs(|r| r.nbeta_ratio)),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::DirichletPolynomial;
    use crate::symbol::BoundarySampler;
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
    fn identity_symbol_gives_identity_matrix() {
        let m = operator_matrix(&Symbol::dilation(1), &alpha0(), 32).unwrap();
        for n in 1..=32u64 {
            assert_eq!(m.column(n).len(), 1);
            assert!((m.entry(n, n) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        }
        assert_relative_eq!(operator_norm(&m, 1e-12, 10_000).unwrap(), 1.0);
    }

    #[test]
    fn shift_symbol_gives_diagonal() {
        // Phi(s) = s + 1: e_n o Phi = n^{-1} e_n; weight ratios cancel
        let sym = validated(1, &[(1, 1.0)]);
        let m = operator_matrix(&sym, &alpha0(), 16).unwrap();
        for n in 1..=16u64 {
            assert!((m.entry(n, n).re - 1.0 / n as f64).abs() < 1e-14);
        }
        assert_relative_eq!(operator_norm(&m, 1e-12, 10_000).unwrap(), 1.0, epsilon = 1e-9);
    }

    #[test]
    fn double_dilation_subpermutation_scaling() {
        // Phi(s) = 2s: entries at (n^2, n) with sqrt(w(n^2)/w(n))
        let m = operator_matrix(&Symbol::dilation(2), &alpha0(), 64).unwrap();
        for n in 2..=8u64 {
            let expected = ((1.0 + (n as f64).ln()) / (1.0 + 2.0 * (n as f64).ln())).sqrt();
            assert!((m.entry(n * n, n).re - expected).abs() < 1e-13, "n={n}");
        }
        // columns with n^2 > 64 are pure dropped mass
        assert!(m.column(9).is_empty());
        assert!(m.dropped.terms > 0);
    }

    #[test]
    fn contraction_for_a_validated_symbol() {
        let sym = validated(1, &[(1, 1.2), (2, 0.6), (3, 0.4)]);
        let mu = alpha0();
        let mut prev = 0.0;
        for dim in [64u64, 256] {
            let m = operator_matrix(&sym, &mu, dim).unwrap();
            let norm = operator_norm(&m, 1e-11, 20_000).unwrap();
            assert!(norm <= 1.0 + 1e-6, "dim {dim}: {norm}");
            assert!(norm >= prev - 1e-9);
            prev = norm;
        }
    }

    #[test]
    fn matrix_requires_validation() {
        let sym = Symbol::new(1, DirichletPolynomial::from_real_terms([(2, 0.5)]).unwrap());
        assert!(matches!(
            operator_matrix(&sym, &alpha0(), 8),
            Err(Error::UnvalidatedSymbol)
        ));
        // c0 = 0 with only a right-half-plane certificate is not enough
        let mut flat = Symbol::new(0, DirichletPolynomial::from_real_terms([(1, 2.0)]).unwrap());
        flat.validate(ValidationMode::RightHalfPlane, &BoundarySampler::default())
            .unwrap();
        assert!(matches!(
            operator_matrix(&flat, &alpha0(), 8),
            Err(Error::MissingEtaCertificate)
        ));
    }

    #[test]
    fn hs_sum_constant_symbol_closed_form() {
        // Phi = c constant with Re c = 1: e_n o Phi = n^{-c} e_1, so
        // ||C(e_n^mu)||^2 = n^{-2} / w(n)
        let mut sym = Symbol::new(0, DirichletPolynomial::from_real_terms([(1, 1.0)]).unwrap());
        sym.validate(
            ValidationMode::BeyondHalf { eta: 0.5 },
            &BoundarySampler::default(),
        )
        .unwrap();
        let mu = alpha0();
        let sums = hs_partial_sums(&sym, &mu, &[200]).unwrap();
        let expected: f64 = (1..=200u64)
            .map(|n| (n as f64).powf(-2.0) / mu.weight(n).unwrap())
            .sum();
        assert_relative_eq!(sums[0].partial, expected, max_relative = 1e-12);
        // n = 1 term is exactly 1
        let first = hs_partial_sums(&sym, &mu, &[1]).unwrap();
        assert_relative_eq!(first[0].partial, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn hs_partial_plus_tail_is_monotone() {
        let mut sym = Symbol::new(
            0,
            DirichletPolynomial::from_real_terms([(1, 1.25), (2, 0.25)]).unwrap(),
        );
        sym.validate(
            ValidationMode::BeyondHalf { eta: 0.5 },
            &BoundarySampler::default(),
        )
        .unwrap();
        let sums = hs_partial_sums(&sym, &alpha0(), &[100, 1000, 10_000]).unwrap();
        for w in sums.windows(2) {
            assert!(w[1].partial >= w[0].partial);
            assert!(w[1].partial + w[1].tail_bound <= w[0].partial + w[0].tail_bound + 1e-12);
            assert!(w[1].tail_bound < w[0].tail_bound);
        }
        // the internal expansion cutoff plays no role at this scale
        assert!(sums.last().unwrap().expansion_slop < 1e-12);
    }

    #[test]
    fn essnorm_upper_identity_is_one() {
        let sigma_grid: Vec<f64> = (1..=8).map(|j| 2f64.powi(-j)).collect();
        let up = essnorm_upper(
            &Symbol::dilation(1),
            &alpha0(),
            &sigma_grid,
            &TWindow::default(),
            &SolverSettings::default(),
        )
        .unwrap();
        assert_relative_eq!(up.estimate, 1.0, epsilon = 1e-8);
    }

    #[test]
    fn essnorm_upper_dilation_ratio() {
        // Phi(s) = 2s: ratio = beta(sigma/2)/beta(sigma) -> 2^{-(alpha+2)}
        let sigma_grid: Vec<f64> = (6..=10).map(|j| 2f64.powi(-j)).collect();
        let up = essnorm_upper(
            &Symbol::dilation(2),
            &alpha0(),
            &sigma_grid,
            &TWindow {
                points: 1,
                ..TWindow::default()
            },
            &SolverSettings::default(),
        )
        .unwrap();
        assert!((up.sup_ratio - 0.25).abs() < 0.01, "{}", up.sup_ratio);
        assert_relative_eq!(up.factor, 2.0);
    }

    #[test]
    fn essnorm_lower_identity_and_smoothness_guard() {
        let sigma_grid = [0.25, 0.0625, 0.015625];
        let low = essnorm_lower(
            &Symbol::dilation(1),
            &alpha0(),
            1,
            &sigma_grid,
            &TWindow {
                points: 1,
                ..TWindow::default()
            },
            KernelCutoff::default(),
        )
        .unwrap();
        assert_relative_eq!(low.estimate, 1.0, epsilon = 1e-9);

        let sym = validated(1, &[(1, 1.0), (3, 1.0)]);
        match essnorm_lower(
            &sym,
            &alpha0(),
            1,
            &sigma_grid,
            &TWindow::default(),
            KernelCutoff::default(),
        ) {
            Err(Error::SmoothnessViolation { index, prime_limit }) => {
                assert_eq!(index, 3);
                assert_eq!(prime_limit, 2);
            }
            other => panic!("expected smoothness violation, got {other:?}"),
        }
    }

    #[test]
    fn essnorm_lower_shifted_symbol_vanishes() {
        // Phi(s) = s + 2 - 2^{-s}: Phi(s) stays in Re >= 1 where the partial
        // kernel is bounded, while the denominator blows up
        let sym = validated(1, &[(1, 2.0), (2, -1.0)]);
        let sigma_grid: Vec<f64> = (2..=10).map(|j| 2f64.powi(-j)).collect();
        let low = essnorm_lower(
            &sym,
            &alpha0(),
            1,
            &sigma_grid,
            &TWindow {
                points: 1,
                ..TWindow::default()
            },
            KernelCutoff::default(),
        )
        .unwrap();
        let pairs: Vec<(f64, f64)> = low.rows.iter().map(|r| (r.sigma, r.kernel_ratio)).collect();
        assert_eq!(classify(&pairs), Trend::Vanishing);
    }

    #[test]
    fn compactness_three_canonical_symbols() {
        let mu = alpha0();
        let sigma_grid: Vec<f64> = (1..=12).map(|j| 2f64.powi(-j)).collect();
        let window = TWindow {
            points: 3,
            ..TWindow::default()
        };
        let settings = SolverSettings::default();

        let id = compactness_report(&Symbol::dilation(1), &mu, &sigma_grid, &window, &settings)
            .unwrap();
        assert_eq!(id.bergman_verdict(), "not compact trend");

        let double =
            compactness_report(&Symbol::dilation(2), &mu, &sigma_grid, &window, &settings)
                .unwrap();
        assert_eq!(double.bergman_verdict(), "not compact trend");
        for row in &double.rows {
            assert!((row.re_ratio - 0.5).abs() < 1e-12);
        }

        let compact = validated(1, &[(1, 2.0), (2, -1.0)]);
        let rep =
            compactness_report(&compact, &mu, &sigma_grid, &window, &settings).unwrap();
        assert_eq!(rep.bergman_verdict(), "compact trend");
        assert_eq!(rep.hardy_verdict(), "compact trend");
    }
}
