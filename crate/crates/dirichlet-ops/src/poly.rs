//! Sparse algebra of Dirichlet polynomials.
//!
//! A Dirichlet polynomial is a finite sum `f = sum_n a_n n^{-s}`. Indices are
//! exact integers; only the complex coefficients are floating point. All
//! operations are pure, and every product is truncated at an explicit index
//! cutoff with the dropped mass reported.

use crate::arith::factorize;
use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;

/// Coefficients with modulus below this are treated as structural zeros and
/// never stored, keeping the representation canonical.
const ZERO_EPS: f64 = 0.0;

/// A finitely supported map `index -> coefficient` representing
/// `sum a_n n^{-s}`. Stored zeros are never kept, so equality of maps is
/// equality of polynomials.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DirichletPolynomial {
    coeffs: BTreeMap<u64, Complex64>,
}

/// Mass removed by an index cutoff: term count and l1 coefficient mass.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct TruncationLoss {
    pub terms: usize,
    pub l1: f64,
}

impl TruncationLoss {
    pub fn absorb(&mut self, other: TruncationLoss) {
        self.terms += other.terms;
        self.l1 += other.l1;
    }

    pub fn record(&mut self, coefficient: Complex64) {
        self.terms += 1;
        self.l1 += coefficient.norm();
    }
}

impl DirichletPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The multiplicative unit `e_1 = 1`.
    pub fn one() -> Self {
        Self::basis(1)
    }

    /// The basis monomial `e_n(s) = n^{-s}`. Panics on index 0.
    pub fn basis(n: u64) -> Self {
        assert!(n >= 1, "Dirichlet indices start at 1");
        let mut coeffs = BTreeMap::new();
        coeffs.insert(n, Complex64::new(1.0, 0.0));
        DirichletPolynomial { coeffs }
    }

    /// Build from terms, summing duplicates and dropping zeros.
    pub fn from_terms<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, Complex64)>,
    {
        let mut poly = Self::zero();
        for (n, c) in terms {
            if n == 0 {
                return Err(Error::ZeroIndex);
            }
            poly.add_term(n, c);
        }
        Ok(poly)
    }

    /// Real-coefficient convenience constructor.
    pub fn from_real_terms<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, f64)>,
    {
        Self::from_terms(
            terms
                .into_iter()
                .map(|(n, x)| (n, Complex64::new(x, 0.0))),
        )
    }

    pub(crate) fn add_term(&mut self, n: u64, c: Complex64) {
        debug_assert!(n >= 1);
        let entry = self.coeffs.entry(n).or_insert(Complex64::new(0.0, 0.0));
        *entry += c;
        if entry.norm() <= ZERO_EPS {
            self.coeffs.remove(&n);
        }
    }

    pub fn coeff(&self, n: u64) -> Complex64 {
        self.coeffs
            .get(&n)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// The coefficient at index 1, i.e. the value at `Re(s) -> +infinity`.
    pub fn constant_coeff(&self) -> Complex64 {
        self.coeff(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    /// Iterate `(index, coefficient)` in increasing index order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, Complex64)> + '_ {
        self.coeffs.iter().map(|(&n, &c)| (n, c))
    }

    pub fn support(&self) -> impl Iterator<Item = u64> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn max_index(&self) -> Option<u64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Smallest support index strictly above 1, if any.
    pub fn min_index_above_one(&self) -> Option<u64> {
        self.coeffs.keys().copied().find(|&n| n > 1)
    }

    /// l1 norm of the coefficients, `sum |a_n|`.
    pub fn l1_norm(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm()).sum()
    }

    /// l1 norm restricted to indices >= 2.
    pub fn l1_tail_norm(&self) -> f64 {
        self.coeffs
            .iter()
            .filter(|&(&n, _)| n >= 2)
            .map(|(_, c)| c.norm())
            .sum()
    }

    pub fn scale(&self, z: Complex64) -> Self {
        if z.norm() == 0.0 {
            return Self::zero();
        }
        DirichletPolynomial {
            coeffs: self.coeffs.iter().map(|(&n, &c)| (n, c * z)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (n, c) in other.terms() {
            out.add_term(n, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// Copy without the constant term.
    pub fn without_constant(&self) -> Self {
        DirichletPolynomial {
            coeffs: self
                .coeffs
                .iter()
                .filter(|&(&n, _)| n > 1)
                .map(|(&n, &c)| (n, c))
                .collect(),
        }
    }

    /// Replace coefficients by their moduli. Useful for majorant series.
    pub fn absolute(&self) -> Self {
        DirichletPolynomial {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&n, &c)| (n, Complex64::new(c.norm(), 0.0)))
                .collect(),
        }
    }

    /// Evaluate `sum a_n n^{-s}`; entire in `s`, so no domain restriction.
    pub fn evaluate(&self, s: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (n, c) in self.terms() {
            let ln_n = (n as f64).ln();
            acc += c * (-s * ln_n).exp();
        }
        acc
    }

    /// Evaluate the derivative `-sum a_n ln(n) n^{-s}`.
    pub fn derivative_evaluate(&self, s: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (n, c) in self.terms() {
            if n == 1 {
                continue;
            }
            let ln_n = (n as f64).ln();
            acc -= c * ln_n * (-s * ln_n).exp();
        }
        acc
    }

    /// Horizontal translate `f(sigma + s)`: coefficients become `a_n n^{-sigma}`.
    pub fn translate(&self, sigma: f64) -> Self {
        DirichletPolynomial {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&n, &c)| (n, c * (n as f64).powf(-sigma)))
                .collect(),
        }
    }

    /// Vertical translate `f(s + i tau)`: coefficients become `a_n n^{-i tau}`.
    pub fn vertical_translate(&self, tau: f64) -> Self {
        DirichletPolynomial {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&n, &c)| {
                    let angle = -tau * (n as f64).ln();
                    (n, c * Complex64::new(angle.cos(), angle.sin()))
                })
                .collect(),
        }
    }

    /// Twist by a character: coefficients become `a_n chi(n)`.
    ///
    /// Fails if some support index has a prime factor beyond the character's
    /// horizon, naming the uncovered prime.
    pub fn twist(&self, chi: &Character) -> Result<Self> {
        let mut coeffs = BTreeMap::new();
        for (n, c) in self.terms() {
            coeffs.insert(n, c * chi.value(n)?);
        }
        Ok(DirichletPolynomial { coeffs })
    }
}

/// Truncated Dirichlet convolution: coefficient at `m <= cutoff` is
/// `sum_{jk=m} f_j g_k`; products beyond the cutoff are dropped and the loss
/// is reported.
pub fn multiply(
    f: &DirichletPolynomial,
    g: &DirichletPolynomial,
    cutoff: u64,
) -> (DirichletPolynomial, TruncationLoss) {
    assert!(cutoff >= 1, "cutoff must be a valid index");
    let mut out = DirichletPolynomial::zero();
    let mut loss = TruncationLoss::default();
    for (j, cf) in f.terms() {
        if j > cutoff {
            loss.record(cf * g.l1_norm());
            continue;
        }
        for (k, cg) in g.terms() {
            match j.checked_mul(k) {
                Some(m) if m <= cutoff => out.add_term(m, cf * cg),
                _ => loss.record(cf * cg),
            }
        }
    }
    (out, loss)
}

/// `f^power` under the cutoff, reporting accumulated loss.
pub fn power(
    f: &DirichletPolynomial,
    power: u32,
    cutoff: u64,
) -> (DirichletPolynomial, TruncationLoss) {
    let mut out = DirichletPolynomial::one();
    let mut loss = TruncationLoss::default();
    for _ in 0..power {
        let (next, l) = multiply(&out, f, cutoff);
        out = next;
        loss.absorb(l);
    }
    (out, loss)
}

/// Exponential `exp(g) = sum_m g^m / m!` truncated at the cutoff.
///
/// Requires `g` to have no constant term; then `g^m` is supported on
/// indices at least `2^m`, so only finitely many terms reach any fixed index
/// and the result is exact for all indices <= cutoff.
pub fn exp_series(
    g: &DirichletPolynomial,
    cutoff: u64,
) -> Result<(DirichletPolynomial, TruncationLoss)> {
    assert!(cutoff >= 1);
    let c = g.constant_coeff();
    if c.norm() != 0.0 {
        return Err(Error::NonzeroConstant {
            value: c.to_string(),
        });
    }
    let mut out = DirichletPolynomial::one();
    let mut loss = TruncationLoss::default();
    if g.is_zero() {
        return Ok((out, loss));
    }
    let min_index = g.min_index_above_one().expect("nonzero constant-free");
    let mut term = DirichletPolynomial::one();
    let mut m = 1u32;
    // g^m lives on indices >= min_index^m; stop once that clears the cutoff
    let mut reach = min_index;
    loop {
        let (next, l1) = multiply(&term, g, cutoff);
        loss.absorb(l1);
        term = next.scale(Complex64::new(1.0 / m as f64, 0.0));
        if term.is_zero() {
            break;
        }
        out = out.add(&term);
        match reach.checked_mul(min_index) {
            Some(r) if r <= cutoff => reach = r,
            _ => break,
        }
        m += 1;
    }
    Ok((out, loss))
}

/// A point of the polytorus with a finite prime horizon: angles
/// `theta_1..theta_k` assigned to the first k primes. The induced completely
/// multiplicative unimodular function is `chi(n) = exp(i sum a_j theta_j)`
/// for `n = prod p_j^{a_j}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Character {
    angles: Vec<f64>,
    primes: Vec<u64>,
}

impl Character {
    /// Angles are reduced modulo 2 pi.
    pub fn new(angles: Vec<f64>) -> Self {
        let tau = std::f64::consts::TAU;
        let primes = crate::arith::first_primes(angles.len());
        Character {
            angles: angles.into_iter().map(|a| a.rem_euclid(tau)).collect(),
            primes,
        }
    }

    /// The trivial character (all angles zero) on the first `k` primes.
    pub fn trivial(k: usize) -> Self {
        Character::new(vec![0.0; k])
    }

    /// The character sampling a vertical translation by `t0`, i.e.
    /// `theta_j = -t0 ln p_j (mod 2 pi)`, so twisting equals shifting `s` by
    /// `i t0`.
    pub fn vertical_translation(t0: f64, k: usize) -> Self {
        let primes = crate::arith::first_primes(k);
        Character::new(primes.iter().map(|&p| -t0 * (p as f64).ln()).collect())
    }

    /// Uniformly random angles from the given RNG.
    pub fn random<R: rand::Rng + ?Sized>(rng: &mut R, k: usize) -> Self {
        let tau = std::f64::consts::TAU;
        Character::new((0..k).map(|_| rng.gen_range(0.0..tau)).collect())
    }

    /// Number of primes covered.
    pub fn horizon(&self) -> usize {
        self.angles.len()
    }

    /// `chi(n)`; errors if `n` has a prime factor beyond the horizon.
    pub fn value(&self, n: u64) -> Result<Complex64> {
        let f = factorize(n)?;
        let mut angle = 0.0;
        for (p, a) in f.exponents {
            let j = self
                .primes
                .iter()
                .position(|&q| q == p)
                .ok_or(Error::HorizonExceeded {
                    horizon: self.horizon(),
                    index: n,
                    prime: p,
                })?;
            angle += a as f64 * self.angles[j];
        }
        Ok(Complex64::new(angle.cos(), angle.sin()))
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }
}

// Wire format: {"coeffs": [[n, re, im], ...]} sorted by index.

#[derive(Serialize, Deserialize)]
struct PolyWire {
    coeffs: Vec<(u64, f64, f64)>,
}

impl Serialize for DirichletPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let wire = PolyWire {
            coeffs: self.terms().map(|(n, c)| (n, c.re, c.im)).collect(),
        };
        wire.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DirichletPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = PolyWire::deserialize(deserializer)?;
        DirichletPolynomial::from_terms(
            wire.coeffs
                .into_iter()
                .map(|(n, re, im)| (n, Complex64::new(re, im))),
        )
        .map_err(|e| D::Error::custom(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn multiply_hand_convolution() {
        // (e2 + e3)^2 = e4 + 2 e6 + e9
        let f = DirichletPolynomial::from_real_terms([(2, 1.0), (3, 1.0)]).unwrap();
        let (sq, loss) = multiply(&f, &f, 9);
        assert_eq!(loss.terms, 0);
        assert_eq!(sq.coeff(4), c(1.0, 0.0));
        assert_eq!(sq.coeff(6), c(2.0, 0.0));
        assert_eq!(sq.coeff(9), c(1.0, 0.0));
        assert_eq!(sq.term_count(), 3);
    }

    #[test]
    fn multiply_identity_element() {
        let f = DirichletPolynomial::from_real_terms([(2, 0.5), (7, -1.25), (10, 3.0)]).unwrap();
        let (g, loss) = multiply(&f, &DirichletPolynomial::one(), 10);
        assert_eq!(g, f);
        assert_eq!(loss.terms, 0);
    }

    #[test]
    fn multiply_square_coefficient_by_double_loop() {
        // ((e1+e2+e3+e4)^2)[4] = #{(j,k): jk=4} = 3
        let f = DirichletPolynomial::from_real_terms((1..=4).map(|n| (n, 1.0))).unwrap();
        let (sq, _) = multiply(&f, &f, 16);
        // brute-force oracle
        let mut expected = 0.0;
        for j in 1..=4u64 {
            for k in 1..=4u64 {
                if j * k == 4 {
                    expected += 1.0;
                }
            }
        }
        assert_eq!(sq.coeff(4).re, expected);
    }

    #[test]
    fn multiply_reports_dropped_mass() {
        let f = DirichletPolynomial::from_real_terms([(2, 1.0), (3, 2.0)]).unwrap();
        let (g, loss) = multiply(&f, &f, 5);
        assert_eq!(g.coeff(4), c(1.0, 0.0));
        // dropped: 2*e6 (1*2 twice) and 4*e9
        assert_eq!(loss.terms, 3);
        assert_relative_eq!(loss.l1, 8.0);
    }

    #[test]
    fn translate_examples() {
        let e2 = DirichletPolynomial::basis(2);
        assert_relative_eq!(e2.translate(1.0).coeff(2).re, 0.5);
        let f = DirichletPolynomial::from_real_terms([(4, 1.0), (9, 1.0)]).unwrap();
        assert_eq!(f.translate(0.0), f);
        let half = f.translate(0.5);
        assert_relative_eq!(half.coeff(4).re, 0.5, epsilon = 1e-15);
        assert_relative_eq!(half.coeff(9).re, 1.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn twist_trivial_character_is_identity() {
        let f = DirichletPolynomial::from_real_terms([(2, 1.5), (6, -2.0)]).unwrap();
        assert_eq!(f.twist(&Character::trivial(2)).unwrap(), f);
    }

    #[test]
    fn twist_sign_flip_and_multiplicativity() {
        let e2 = DirichletPolynomial::basis(2);
        let chi = Character::new(vec![std::f64::consts::PI]);
        let t = e2.twist(&chi).unwrap();
        assert_relative_eq!(t.coeff(2).re, -1.0, epsilon = 1e-15);
        assert!(t.coeff(2).im.abs() < 1e-15);

        // chi(6) = chi(2) chi(3) = i * i = -1
        let e6 = DirichletPolynomial::basis(6);
        let chi2 = Character::new(vec![
            std::f64::consts::FRAC_PI_2,
            std::f64::consts::FRAC_PI_2,
        ]);
        let t6 = e6.twist(&chi2).unwrap();
        assert_relative_eq!(t6.coeff(6).re, -1.0, epsilon = 1e-12);
        assert!(t6.coeff(6).im.abs() < 1e-12);
    }

    #[test]
    fn twist_names_uncovered_prime() {
        let e15 = DirichletPolynomial::basis(15);
        match e15.twist(&Character::trivial(2)) {
            Err(Error::HorizonExceeded { prime, .. }) => assert_eq!(prime, 5),
            other => panic!("expected horizon error, got {other:?}"),
        }
    }

    #[test]
    fn evaluate_and_derivative() {
        let e2 = DirichletPolynomial::basis(2);
        assert_relative_eq!(e2.evaluate(c(1.0, 0.0)).re, 0.5, epsilon = 1e-15);
        let e1 = DirichletPolynomial::one();
        assert_eq!(e1.derivative_evaluate(c(0.3, 7.0)), c(0.0, 0.0));
        let d = e2.derivative_evaluate(c(0.0, 0.0));
        assert_relative_eq!(d.re, -std::f64::consts::LN_2, epsilon = 1e-15);
    }

    #[test]
    fn exp_series_of_zero() {
        let (e, loss) = exp_series(&DirichletPolynomial::zero(), 100).unwrap();
        assert_eq!(e, DirichletPolynomial::one());
        assert_eq!(loss.terms, 0);
    }

    #[test]
    fn exp_series_single_prime_power() {
        // exp(c e2) = e1 + c e2 + c^2/2 e4 + c^3/6 e8
        let cc = c(0.7, -0.3);
        let g = DirichletPolynomial::from_terms([(2u64, cc)]).unwrap();
        let (e, _) = exp_series(&g, 8).unwrap();
        assert_eq!(e.coeff(1), c(1.0, 0.0));
        assert_eq!(e.coeff(2), cc);
        assert!((e.coeff(4) - cc * cc * 0.5).norm() < 1e-15);
        assert!((e.coeff(8) - cc * cc * cc / 6.0).norm() < 1e-15);
        assert_eq!(e.max_index(), Some(8));
    }

    #[test]
    fn exp_series_two_primes_vs_convolution_oracle() {
        // brute-force oracle: sum g^m/m! by repeated convolution
        let g = DirichletPolynomial::from_real_terms([(2, 1.0), (3, 1.0)]).unwrap();
        let (e, _) = exp_series(&g, 6).unwrap();
        let mut oracle = DirichletPolynomial::one();
        let mut term = DirichletPolynomial::one();
        for m in 1..=3u32 {
            let (t, _) = multiply(&term, &g, 6);
            term = t.scale(c(1.0 / m as f64, 0.0));
            oracle = oracle.add(&term);
        }
        for n in 1..=6 {
            assert!((e.coeff(n) - oracle.coeff(n)).norm() < 1e-15, "index {n}");
        }
        assert_relative_eq!(e.coeff(4).re, 0.5);
        assert_relative_eq!(e.coeff(6).re, 1.0);
    }

    #[test]
    fn exp_series_rejects_constant_term() {
        let g = DirichletPolynomial::from_real_terms([(1, 1.0), (2, 1.0)]).unwrap();
        assert!(matches!(
            exp_series(&g, 10),
            Err(Error::NonzeroConstant { .. })
        ));
    }

    #[test]
    fn vertical_translation_character_matches_shift() {
        let f = DirichletPolynomial::from_terms([
            (2u64, c(1.0, 0.5)),
            (3u64, c(-0.25, 0.0)),
            (12u64, c(0.0, 2.0)),
        ])
        .unwrap();
        let t0 = 1.37;
        let chi = Character::vertical_translation(t0, 2);
        let g = f.twist(&chi).unwrap();
        let s = c(0.8, -0.4);
        let lhs = g.evaluate(s);
        let rhs = f.evaluate(s + c(0.0, t0));
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn json_round_trip_sorted() {
        let f = DirichletPolynomial::from_terms([(6u64, c(0.0, -1.0)), (2u64, c(1.5, 0.0))])
            .unwrap();
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, r#"{"coeffs":[[2,1.5,0.0],[6,0.0,-1.0]]}"#);
        let back: DirichletPolynomial = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
    }
}
