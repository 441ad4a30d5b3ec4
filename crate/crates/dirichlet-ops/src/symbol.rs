//! Symbols `Phi(s) = c0 s + phi(s)` and composition of Dirichlet polynomials
//! with them.
//!
//! Here `c0` is a nonnegative integer and `phi` a Dirichlet polynomial. Such
//! maps are exactly the ones carrying Dirichlet series to Dirichlet series
//! under composition, via
//!
//! ```text
//! n^{-Phi(s)} = n^{-c1} * (n^{c0})^{-s} * exp(-ln(n) * phi0(s))
//! ```
//!
//! after splitting `phi = c1 + phi0` at its constant coefficient. The
//! exponential factor is again a Dirichlet series supported on products of
//! the support of `phi0`, and is computed exactly below any index cutoff.

use crate::error::{Error, Result};
use crate::poly::{multiply, Character, DirichletPolynomial, TruncationLoss};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Which half-plane mapping condition a certificate refers to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ValidationMode {
    /// `c0 >= 1`: requires `Re phi >= 0` on the right half-plane.
    RightHalfPlane,
    /// `c0 = 0`: requires `Re phi >= 1/2 + eta` on the right half-plane.
    BeyondHalf { eta: f64 },
}

impl ValidationMode {
    /// The lower bound on `Re phi` the mode demands.
    pub fn threshold(self) -> f64 {
        match self {
            ValidationMode::RightHalfPlane => 0.0,
            ValidationMode::BeyondHalf { eta } => 0.5 + eta,
        }
    }
}

/// Evidence that the mapping condition holds, with its margin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub mode: ValidationMode,
    /// `inf Re phi - threshold`, from the coefficient bound when rigorous,
    /// from boundary sampling otherwise.
    pub margin: f64,
    /// True when obtained from the coefficient inequality
    /// `Re c1 - sum_{n>=2} |c_n| >= threshold`, which controls the whole
    /// half-plane; false for sampled (non-rigorous) evidence.
    pub rigorous: bool,
}

/// Validation state of a symbol.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Validity {
    Unchecked,
    Certified(Certificate),
    Invalid { witness_t: f64, value: f64 },
}

/// Settings for the sampling fallback of `validate`.
#[derive(Debug, Clone, Copy)]
pub struct BoundarySampler {
    /// Number of boundary samples.
    pub points: usize,
    /// Total window width on the critical line, centered at 0.
    pub window: f64,
    /// Violation tolerance: samples below `threshold - tol` invalidate.
    pub tol: f64,
}

impl Default for BoundarySampler {
    fn default() -> Self {
        // phi(it) is almost periodic; a long window with dense quasi-uniform
        // sampling is a fallback, not a proof, and is flagged as such.
        BoundarySampler {
            points: 100_000,
            window: 1_000.0,
            tol: 1e-9,
        }
    }
}

/// A composition symbol `Phi(s) = c0 s + phi(s)` with validation state.
#[derive(Debug, Clone, PartialEq)]
pub struct Symbol {
    c0: u32,
    phi: DirichletPolynomial,
    im_bound: Option<f64>,
    validity: Validity,
}

impl Symbol {
    pub fn new(c0: u32, phi: DirichletPolynomial) -> Self {
        Symbol {
            c0,
            phi,
            im_bound: None,
            validity: Validity::Unchecked,
        }
    }

    /// The pure dilation `Phi(s) = c0 s`, certified by construction.
    pub fn dilation(c0: u32) -> Self {
        let mut sym = Symbol::new(c0, DirichletPolynomial::zero());
        sym.validity = Validity::Certified(Certificate {
            mode: ValidationMode::RightHalfPlane,
            margin: 0.0,
            rigorous: true,
        });
        sym
    }

    pub fn c0(&self) -> u32 {
        self.c0
    }

    pub fn phi(&self) -> &DirichletPolynomial {
        &self.phi
    }

    pub fn validity(&self) -> Validity {
        self.validity
    }

    pub fn certificate(&self) -> Option<Certificate> {
        match self.validity {
            Validity::Certified(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_validated(&self) -> bool {
        matches!(self.validity, Validity::Certified(_))
    }

    /// Demand a certificate, as required by operator-level operations.
    pub fn require_certificate(&self) -> Result<Certificate> {
        match self.validity {
            Validity::Certified(c) => Ok(c),
            Validity::Invalid { witness_t, value } => Err(Error::InvalidSymbol {
                witness: witness_t,
                value,
            }),
            Validity::Unchecked => Err(Error::UnvalidatedSymbol),
        }
    }

    /// Certified upper bound for `sup |Im phi|` on the right half-plane:
    /// `|Im c1| + sum_{n>=2} |c_n|`, exact enough for polynomials. A stored
    /// override takes precedence.
    pub fn im_bound(&self) -> f64 {
        self.im_bound.unwrap_or_else(|| {
            let c1 = self.phi.constant_coeff();
            c1.im.abs() + self.phi.l1_tail_norm()
        })
    }

    /// Store an externally certified bound on `sup |Im phi|`.
    pub fn set_im_bound(&mut self, bound: f64) {
        assert!(bound >= 0.0);
        self.im_bound = Some(bound);
    }

    /// `Phi(s) = c0 s + phi(s)`.
    pub fn evaluate(&self, s: Complex64) -> Complex64 {
        Complex64::new(self.c0 as f64, 0.0) * s + self.phi.evaluate(s)
    }

    /// `Phi'(s) = c0 + phi'(s)`.
    pub fn derivative(&self, s: Complex64) -> Complex64 {
        Complex64::new(self.c0 as f64, 0.0) + self.phi.derivative_evaluate(s)
    }

    /// Validate the half-plane mapping condition.
    ///
    /// Tries the coefficient certificate first: on the right half-plane
    /// `Re phi(s) >= Re c1 - sum_{n>=2} |c_n| n^{-Re s} > Re c1 - sum |c_n|`,
    /// so `Re c1 - sum_{n>=2}|c_n| >= threshold` is a sufficient, rigorous
    /// condition. Otherwise falls back to dense boundary sampling of
    /// `Re phi(it)` and returns a non-rigorous certificate, or an
    /// invalidation witness if a sampled violation is found.
    pub fn validate(&mut self, mode: ValidationMode, sampler: &BoundarySampler) -> Result<Certificate> {
        let threshold = mode.threshold();
        let c1 = self.phi.constant_coeff();
        let coefficient_margin = c1.re - self.phi.l1_tail_norm() - threshold;
        if coefficient_margin >= 0.0 {
            let cert = Certificate {
                mode,
                margin: coefficient_margin,
                rigorous: true,
            };
            self.validity = Validity::Certified(cert);
            return Ok(cert);
        }

        // sampling fallback on the boundary line
        let m = sampler.points.max(2);
        let lo = -0.5 * sampler.window;
        let step = sampler.window / m as f64;
        let mut inf_re = f64::INFINITY;
        let mut witness = 0.0;
        for j in 0..m {
            let t = lo + (j as f64 + 0.5) * step;
            let re = self.phi.evaluate(Complex64::new(0.0, t)).re;
            if re < inf_re {
                inf_re = re;
                witness = t;
            }
        }
        if inf_re < threshold - sampler.tol {
            self.validity = Validity::Invalid {
                witness_t: witness,
                value: inf_re,
            };
            return Err(Error::InvalidSymbol {
                witness,
                value: inf_re,
            });
        }
        let cert = Certificate {
            mode,
            margin: inf_re - threshold,
            rigorous: false,
        };
        self.validity = Validity::Certified(cert);
        Ok(cert)
    }

    /// The horizontal slice `Phi_u(s) = Phi(s + u)` for `u >= 0`, again a
    /// symbol: `c0 s + (c0 u + phi_u(s))`. Certificates survive: translation
    /// into the half-plane only increases `Re phi`, and `c0 u >= 0`.
    pub fn translated(&self, u: f64) -> Symbol {
        assert!(u >= 0.0, "horizontal slices move rightwards");
        let mut phi = self.phi.translate(u);
        phi.add_term(1, Complex64::new(self.c0 as f64 * u, 0.0));
        Symbol {
            c0: self.c0,
            phi,
            im_bound: self.im_bound,
            validity: self.validity,
        }
    }

    /// The vertical translate `c0 s + phi(s + i tau)`. Coefficient moduli are
    /// unchanged, so certificates and imaginary bounds survive.
    pub fn vertical_translate(&self, tau: f64) -> Symbol {
        Symbol {
            c0: self.c0,
            phi: self.phi.vertical_translate(tau),
            im_bound: self.im_bound,
            validity: self.validity,
        }
    }

    /// Character twist `c0 s + phi_chi(s)`; a vertical limit of vertical
    /// translates, with the same certificate survival as those.
    pub fn twisted(&self, chi: &Character) -> Result<Symbol> {
        Ok(Symbol {
            c0: self.c0,
            phi: self.phi.twist(chi)?,
            im_bound: self.im_bound,
            validity: self.validity,
        })
    }
}

/// Wire format `{"c0": k, "phi": {"coeffs": ...}}`; validation state is not
/// serialized and deserializes to `Unchecked`.
#[derive(Serialize, Deserialize)]
struct SymbolWire {
    c0: u32,
    phi: DirichletPolynomial,
}

impl Serialize for Symbol {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SymbolWire {
            c0: self.c0,
            phi: self.phi.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Symbol {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = SymbolWire::deserialize(deserializer)?;
        Ok(Symbol::new(wire.c0, wire.phi))
    }
}

/// Result of composing a polynomial with a symbol under an index cutoff.
///
/// Coefficients at indices <= cutoff are exact; `tail_l1` bounds the l1 mass
/// of the (possibly infinite) remainder above the cutoff, and `loss` counts
/// the finitely many explicitly dropped products.
#[derive(Debug, Clone)]
pub struct Composition {
    pub poly: DirichletPolynomial,
    pub loss: TruncationLoss,
    pub tail_l1: f64,
}

/// Shared expansion state for composing many monomials with one symbol.
///
/// Precomputes `phi0^m / m!` (and the majorant series with absolute
/// coefficients, used for tail accounting) once; each monomial image is then
/// a scaled, index-shifted combination.
pub struct SymbolExpansion<'a> {
    sym: &'a Symbol,
    cutoff: u64,
    c1: Complex64,
    phi0_l1: f64,
    powers: Vec<DirichletPolynomial>,
    majorants: Vec<DirichletPolynomial>,
}

/// The truncated expansion of a single `n^{-Phi}`.
#[derive(Debug, Clone)]
pub struct MonomialImage {
    pub terms: Vec<(u64, Complex64)>,
    pub loss: TruncationLoss,
    pub tail_l1: f64,
}

impl<'a> SymbolExpansion<'a> {
    pub fn new(sym: &'a Symbol, cutoff: u64) -> Result<Self> {
        assert!(cutoff >= 1);
        let c1 = sym.phi().constant_coeff();
        let phi0 = sym.phi().without_constant();
        let phi0_l1 = phi0.l1_norm();
        let mut powers = vec![DirichletPolynomial::one()];
        let mut majorants = vec![DirichletPolynomial::one()];
        if !phi0.is_zero() {
            let qmin = phi0.min_index_above_one().expect("constant-free nonzero");
            let abs = phi0.absolute();
            let mut reach = qmin;
            let mut m = 1u32;
            loop {
                let (p, _) = multiply(powers.last().unwrap(), &phi0, cutoff);
                let (a, _) = multiply(majorants.last().unwrap(), &abs, cutoff);
                let inv_m = Complex64::new(1.0 / m as f64, 0.0);
                powers.push(p.scale(inv_m));
                majorants.push(a.scale(inv_m));
                match reach.checked_mul(qmin) {
                    Some(r) if r <= cutoff => reach = r,
                    _ => break,
                }
                m += 1;
            }
        }
        Ok(SymbolExpansion {
            sym,
            cutoff,
            c1,
            phi0_l1,
            powers,
            majorants,
        })
    }

    pub fn cutoff(&self) -> u64 {
        self.cutoff
    }

    /// Expansion of `e_n` composed with the symbol, exact below the cutoff.
    pub fn monomial_image(&self, n: u64) -> Result<MonomialImage> {
        if n == 0 {
            return Err(Error::ZeroIndex);
        }
        let ln_n = (n as f64).ln();
        // |n^{-c1}| and the full-mass majorant n^{-Re c1} * n^{||phi0||_1}
        let n_pow_c1 = (-self.c1 * ln_n).exp();
        let total_abs = n_pow_c1.norm() * (ln_n * self.phi0_l1).exp();

        let shift = match n.checked_pow(self.sym.c0()) {
            Some(s) if s <= self.cutoff => s,
            _ => {
                // the whole image lies above the cutoff
                return Ok(MonomialImage {
                    terms: Vec::new(),
                    loss: TruncationLoss {
                        terms: 1,
                        l1: total_abs,
                    },
                    tail_l1: total_abs,
                });
            }
        };

        let mut acc: std::collections::BTreeMap<u64, Complex64> = std::collections::BTreeMap::new();
        let mut loss = TruncationLoss::default();
        let mut abs_kept = 0.0;
        let mut x_m = Complex64::new(1.0, 0.0); // (-ln n)^m
        let mut x_m_abs = 1.0; // (ln n)^m
        for (pw, apw) in self.powers.iter().zip(self.majorants.iter()) {
            for (j, coeff) in pw.terms() {
                match j.checked_mul(shift) {
                    Some(idx) if idx <= self.cutoff => {
                        *acc.entry(idx).or_insert(Complex64::new(0.0, 0.0)) +=
                            n_pow_c1 * x_m * coeff;
                    }
                    _ => loss.record(n_pow_c1 * x_m * coeff),
                }
            }
            // the majorant support can be strictly larger than the power's
            // (cancellation removes indices from the power only), so the
            // kept-mass ledger walks it separately
            for (j, abs_coeff) in apw.terms() {
                if let Some(idx) = j.checked_mul(shift) {
                    if idx <= self.cutoff {
                        abs_kept += n_pow_c1.norm() * x_m_abs * abs_coeff.re;
                    }
                }
            }
            x_m *= -ln_n;
            x_m_abs *= ln_n;
        }
        let tail_l1 = (total_abs - abs_kept).max(0.0);
        Ok(MonomialImage {
            terms: acc.into_iter().collect(),
            loss,
            tail_l1,
        })
    }
}

/// Compose a Dirichlet polynomial with a symbol, truncating at `cutoff`.
///
/// For `c0 >= 1` the kept coefficients are exact and the remainder starts at
/// index `min(support)^{c0}`; for `c0 = 0` the kept coefficients are still
/// exact but the remainder mass bound `tail_l1` is the thing to watch.
pub fn compose(p: &DirichletPolynomial, sym: &Symbol, cutoff: u64) -> Result<Composition> {
    let expansion = SymbolExpansion::new(sym, cutoff)?;
    compose_with(&expansion, p)
}

/// Compose using a precomputed expansion (shared across many calls).
pub fn compose_with(expansion: &SymbolExpansion<'_>, p: &DirichletPolynomial) -> Result<Composition> {
    let mut poly = DirichletPolynomial::zero();
    let mut loss = TruncationLoss::default();
    let mut tail_l1 = 0.0;
    for (n, a) in p.terms() {
        let image = expansion.monomial_image(n)?;
        for (idx, c) in image.terms {
            poly.add_term(idx, a * c);
        }
        loss.absorb(TruncationLoss {
            terms: image.loss.terms,
            l1: a.norm() * image.loss.l1,
        });
        tail_l1 += a.norm() * image.tail_l1;
    }
    Ok(Composition {
        poly,
        loss,
        tail_l1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn compose_with_pure_dilation() {
        // 2^{-2s} = 4^{-s}
        let e2 = DirichletPolynomial::basis(2);
        let out = compose(&e2, &Symbol::dilation(2), 16).unwrap();
        assert_eq!(out.poly.coeff(4), c(1.0, 0.0));
        assert_eq!(out.poly.term_count(), 1);
        assert_eq!(out.tail_l1, 0.0);
    }

    #[test]
    fn compose_with_constant_shift() {
        // Phi(s) = s + 1: 2^{-(s+1)} = (1/2) 2^{-s}
        let phi = DirichletPolynomial::from_real_terms([(1, 1.0)]).unwrap();
        let sym = Symbol::new(1, phi);
        let out = compose(&DirichletPolynomial::basis(2), &sym, 16).unwrap();
        assert_relative_eq!(out.poly.coeff(2).re, 0.5, epsilon = 1e-15);
        assert_eq!(out.poly.term_count(), 1);
    }

    #[test]
    fn compose_hand_expansion() {
        // Phi(s) = s + 3^{-s}: 2^{-Phi(s)} = e2 - ln2 e6 + (ln2^2/2) e18 - ...
        let phi = DirichletPolynomial::from_real_terms([(3, 1.0)]).unwrap();
        let sym = Symbol::new(1, phi);
        let out = compose(&DirichletPolynomial::basis(2), &sym, 18).unwrap();
        let ln2 = std::f64::consts::LN_2;
        assert_relative_eq!(out.poly.coeff(2).re, 1.0, epsilon = 1e-14);
        assert_relative_eq!(out.poly.coeff(6).re, -ln2, epsilon = 1e-14);
        assert_relative_eq!(out.poly.coeff(18).re, ln2 * ln2 / 2.0, epsilon = 1e-14);
        assert_eq!(out.poly.term_count(), 3);
        // remainder starts at index 54
        assert!(out.tail_l1 > 0.0);
        assert!(out.tail_l1 < ln2.powi(3));
    }

    #[test]
    fn compose_is_multiplicative_for_dilation_symbols() {
        let p = DirichletPolynomial::from_real_terms([(2, 1.0), (3, -0.5)]).unwrap();
        let q = DirichletPolynomial::from_real_terms([(1, 0.5), (2, 2.0)]).unwrap();
        let phi = DirichletPolynomial::from_real_terms([(1, 1.0), (2, 0.5)]).unwrap();
        let sym = Symbol::new(1, phi);
        let n = 4096;
        let (pq, _) = multiply(&p, &q, n);
        let lhs = compose(&pq, &sym, n).unwrap().poly;
        let (rhs, _) = multiply(
            &compose(&p, &sym, n).unwrap().poly,
            &compose(&q, &sym, n).unwrap().poly,
            n,
        );
        for idx in 1..=n {
            assert!(
                (lhs.coeff(idx) - rhs.coeff(idx)).norm() < 1e-12,
                "index {idx}"
            );
        }
    }

    #[test]
    fn tail_bound_survives_cancelling_powers() {
        // phi0 = e2 + e3 - e4 + e6: the square cancels exactly at index 12,
        // so the power's support is smaller than its majorant's; the tail
        // ledger must not be confused by that
        let phi = DirichletPolynomial::from_real_terms([(2, 1.0), (3, 1.0), (4, -1.0), (6, 1.0)])
            .unwrap();
        let sym = Symbol::new(1, phi);
        let small = compose(&DirichletPolynomial::basis(5), &sym, 60).unwrap();
        let large = compose(&DirichletPolynomial::basis(5), &sym, 600_000).unwrap();
        // identical coefficients below the small cutoff
        for (n, c) in small.poly.terms() {
            assert!((c - large.poly.coeff(n)).norm() < 1e-12, "index {n}");
        }
        // the measurable part of the mass pushed past the small cutoff is
        // dominated by the reported bound
        let dropped: f64 = large
            .poly
            .terms()
            .filter(|&(n, _)| n > 60)
            .map(|(_, c)| c.norm())
            .sum();
        assert!(
            small.tail_l1 + 1e-12 >= dropped,
            "tail {} vs measured dropped {}",
            small.tail_l1,
            dropped
        );
    }

    #[test]
    fn coefficient_certificate_validates() {
        // phi = 1 + 2^{-s}: margin 0, sufficient
        let phi = DirichletPolynomial::from_real_terms([(1, 1.0), (2, 1.0)]).unwrap();
        let mut sym = Symbol::new(1, phi);
        let cert = sym
            .validate(ValidationMode::RightHalfPlane, &BoundarySampler::default())
            .unwrap();
        assert!(cert.rigorous);
        assert_relative_eq!(cert.margin, 0.0);
    }

    #[test]
    fn boundary_sampling_finds_violation() {
        // phi = 2^{-s}: Re phi(it) = cos(t ln 2) hits -1 near t = pi/ln 2
        let phi = DirichletPolynomial::from_real_terms([(2, 1.0)]).unwrap();
        let mut sym = Symbol::new(1, phi);
        let err = sym
            .validate(ValidationMode::RightHalfPlane, &BoundarySampler::default())
            .unwrap_err();
        match err {
            Error::InvalidSymbol { witness, value } => {
                let t_star = std::f64::consts::PI / std::f64::consts::LN_2;
                let period = 2.0 * t_star;
                let dist = ((witness.abs() - t_star).rem_euclid(period)).min(
                    (period - (witness.abs() - t_star).rem_euclid(period)).abs(),
                );
                assert!(dist < 0.05, "witness {witness} not near a minimum");
                assert!(value < -0.999);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(sym.validity(), Validity::Invalid { .. }));
    }

    #[test]
    fn eta_mode_certificate() {
        // phi = 5/4 + (1/4) 2^{-s} with eta = 1/2: margin = 5/4 - 1/4 - 1 = 0
        let phi = DirichletPolynomial::from_real_terms([(1, 1.25), (2, 0.25)]).unwrap();
        let mut sym = Symbol::new(0, phi);
        let cert = sym
            .validate(
                ValidationMode::BeyondHalf { eta: 0.5 },
                &BoundarySampler::default(),
            )
            .unwrap();
        assert!(cert.rigorous);
        assert_relative_eq!(cert.margin, 0.0);
    }

    #[test]
    fn im_bound_examples() {
        // phi = 2 - 2^{-s} -> A = 1
        let phi = DirichletPolynomial::from_real_terms([(1, 2.0), (2, -1.0)]).unwrap();
        assert_relative_eq!(Symbol::new(1, phi).im_bound(), 1.0);
        // phi = 1 -> A = 0
        let one = DirichletPolynomial::from_real_terms([(1, 1.0)]).unwrap();
        assert_relative_eq!(Symbol::new(1, one).im_bound(), 0.0);
        // phi = i + (1/2) 3^{-s} -> A = 1.5
        let phi =
            DirichletPolynomial::from_terms([(1u64, c(0.0, 1.0)), (3u64, c(0.5, 0.0))]).unwrap();
        assert_relative_eq!(Symbol::new(1, phi).im_bound(), 1.5);
    }

    #[test]
    fn schwarz_containment_sampled() {
        // validated c0 >= 1 symbols satisfy Re Phi(a) >= Re(a)
        let phi = DirichletPolynomial::from_real_terms([(1, 0.8), (2, 0.5), (3, 0.3)]).unwrap();
        let mut sym = Symbol::new(1, phi);
        sym.validate(ValidationMode::RightHalfPlane, &BoundarySampler::default())
            .unwrap();
        for k in 0..200 {
            let a = c(0.01 + 0.05 * k as f64 % 3.0, (k as f64 * 0.37).sin() * 10.0);
            assert!(sym.evaluate(a).re >= a.re - 1e-12);
        }
    }

    #[test]
    fn translated_slice_matches_pointwise() {
        let phi = DirichletPolynomial::from_real_terms([(1, 1.0), (2, 0.5), (6, -0.25)]).unwrap();
        let sym = Symbol::new(2, phi);
        let slice = sym.translated(0.7);
        for k in 0..50 {
            let s = c(0.1 + 0.1 * k as f64, -3.0 + 0.3 * k as f64);
            assert!((slice.evaluate(s) - sym.evaluate(s + c(0.7, 0.0))).norm() < 1e-12);
        }
    }

    #[test]
    fn symbol_json_round_trip() {
        let phi = DirichletPolynomial::from_terms([(1u64, c(1.5, 0.0)), (2u64, c(-0.5, 0.25))])
            .unwrap();
        let sym = Symbol::new(1, phi);
        let json = serde_json::to_string(&sym).unwrap();
        assert_eq!(
            json,
            r#"{"c0":1,"phi":{"coeffs":[[1,1.5,0.0],[2,-0.5,0.25]]}}"#
        );
        let back: Symbol = serde_json::from_str(&json).unwrap();
        assert_eq!(back.phi(), sym.phi());
        assert_eq!(back.c0(), 1);
        assert!(matches!(back.validity(), Validity::Unchecked));
    }
}
