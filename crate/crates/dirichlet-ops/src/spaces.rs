//! Norms of the Hardy and weighted Bergman spaces of Dirichlet series,
//! reproducing kernels, and Monte-Carlo checks of the Littlewood-Paley
//! formula.
//!
//! For `f = sum a_n n^{-s}`:
//!
//! ```text
//! ||f||_{H^2}^2    = sum |a_n|^2,
//! ||f||_{A_mu^2}^2 = sum |a_n|^2 w_h(n),
//! ||f||_{H^{2k}}   = ||f^k||_{H^2}^{1/k}   (and likewise with weights),
//! ```
//!
//! and the reproducing kernel of the weighted space at `s` is
//! `K_{mu,s}(w) = sum n^{-conj(s)-w} / w_h(n)`. The partial kernel of order
//! `l` restricts the sum to `p_l`-smooth indices and converges on the whole
//! right half-plane, which is what makes boundary asymptotics computable.

use crate::arith::{factorize, first_primes, smooth_indices, SmoothLogStream};
use crate::error::{Error, Result};
use crate::measure::MeasureDensity;
use crate::poly::{power, Character, DirichletPolynomial, TruncationLoss};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Hardy-space norm `(sum |a_n|^2)^{1/2}`.
pub fn norm_h2(f: &DirichletPolynomial) -> f64 {
    f.terms().map(|(_, c)| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Weighted Bergman norm `(sum |a_n|^2 w_h(n))^{1/2}`.
pub fn norm_amu2(f: &DirichletPolynomial, mu: &MeasureDensity) -> Result<f64> {
    let mut acc = 0.0;
    for (n, c) in f.terms() {
        acc += c.norm_sqr() * mu.weight(n)?;
    }
    Ok(acc.sqrt())
}

fn require_power_fits(f: &DirichletPolynomial, k: u32, cutoff: u64) -> Result<()> {
    if let Some(top) = f.max_index() {
        match top.checked_pow(k) {
            Some(m) if m <= cutoff => {}
            _ => {
                return Err(Error::SupportOverflow {
                    index: top,
                    power: k,
                    cutoff,
                })
            }
        }
    }
    Ok(())
}

/// `H^{2k}` norm via `||f||_{2k} = ||f^k||_2^{1/k}`.
///
/// Errors when the powered support would not fit under the cutoff, since the
/// dropped mass would silently change the norm.
pub fn norm_h2k(f: &DirichletPolynomial, k: u32, cutoff: u64) -> Result<f64> {
    assert!(k >= 1);
    require_power_fits(f, k, cutoff)?;
    let (fk, _) = power(f, k, cutoff);
    Ok(norm_h2(&fk).powf(1.0 / k as f64))
}

/// `A_mu^{2k}` norm via `||f||_{2k} = ||f^k||_{A_mu^2}^{1/k}`.
pub fn norm_amu2k(f: &DirichletPolynomial, mu: &MeasureDensity, k: u32, cutoff: u64) -> Result<f64> {
    assert!(k >= 1);
    require_power_fits(f, k, cutoff)?;
    let (fk, _) = power(f, k, cutoff);
    Ok(norm_amu2(&fk, mu)?.powf(1.0 / k as f64))
}

/// `A_mu^{2k}` norm of an already-truncated series: the powering keeps the
/// same cutoff and the dropped mass is reported instead of refused. This is
/// the right notion for composed series, where both sides of the norm
/// identity truncate identically.
pub fn norm_amu2k_truncated(
    f: &DirichletPolynomial,
    mu: &MeasureDensity,
    k: u32,
    cutoff: u64,
) -> Result<(f64, TruncationLoss)> {
    assert!(k >= 1);
    let (fk, loss) = power(f, k, cutoff);
    Ok((norm_amu2(&fk, mu)?.powf(1.0 / k as f64), loss))
}

/// Weighted coefficient pairing `<f, g> = sum a_n conj(b_n) w_h(n)`.
pub fn pairing(f: &DirichletPolynomial, g: &DirichletPolynomial, mu: &MeasureDensity) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (n, a) in f.terms() {
        let b = g.coeff(n);
        if b.norm() > 0.0 {
            acc += a * b.conj() * mu.weight(n)?;
        }
    }
    Ok(acc)
}

/// Coefficient of the reproducing kernel `K_{mu,s}` at index `n`:
/// `n^{-conj(s)} / w_h(n)`. Pairing against these coefficients evaluates at
/// `s`.
pub fn kernel_coefficient(n: u64, s: Complex64, mu: &MeasureDensity) -> Result<Complex64> {
    if n == 0 {
        return Err(Error::ZeroIndex);
    }
    let ln_n = (n as f64).ln();
    Ok((-s.conj() * ln_n).exp() / mu.weight(n)?)
}

/// The order-`l` partial kernel at `s`, truncated to smooth indices below
/// `cutoff`, as an explicit polynomial (for pairing-based tests).
pub fn partial_kernel_polynomial(
    l: usize,
    s: Complex64,
    mu: &MeasureDensity,
    cutoff: u64,
) -> Result<DirichletPolynomial> {
    let prime_limit = *first_primes(l).last().unwrap();
    let _ = prime_limit;
    let mut terms = Vec::new();
    for n in smooth_indices(l, cutoff) {
        terms.push((n, kernel_coefficient(n, s, mu)?));
    }
    DirichletPolynomial::from_terms(terms)
}

/// A truncated kernel sum together with a rigorous tail bound.
#[derive(Debug, Clone, Copy)]
pub struct KernelValue {
    pub value: Complex64,
    pub tail_bound: f64,
    pub terms: usize,
}

/// Truncation policy for partial kernel sums.
#[derive(Debug, Clone, Copy)]
pub enum KernelCutoff {
    /// Sum smooth indices up to this index.
    Index(u64),
    /// Keep summing (in increasing index order) until the tail bound drops
    /// below `rel_tol` times the accumulated value, giving up after
    /// `max_terms` terms.
    Adaptive { rel_tol: f64, max_terms: usize },
}

impl Default for KernelCutoff {
    fn default() -> Self {
        KernelCutoff::Adaptive {
            rel_tol: 1e-12,
            max_terms: 4_000_000,
        }
    }
}

/// Tail of a smooth-index kernel sum past log-threshold `big_l`:
/// with `w_h(n) >= C_eps n^{-eps}` and `q = c - eps`,
///
/// ```text
/// sum_{smooth, ln n >= L} n^{-c} / w_h(n)
///   <= (1/C_eps) e^{-qL/2} prod_i (1 - p_i^{-q/2})^{-1}.
/// ```
fn smooth_tail_bound(mu: &MeasureDensity, primes: &[u64], c: f64, big_l: f64) -> Result<f64> {
    let eps = c / 2.0;
    let floor = mu.weight_power_floor(eps)?;
    let q = c - eps;
    let mut product = 1.0;
    for &p in primes {
        let r = (p as f64).powf(-q / 2.0);
        if r >= 1.0 {
            return Err(Error::KernelDivergent {
                exponent: c,
                boundary: 0.0,
            });
        }
        product /= 1.0 - r;
    }
    Ok((-q * big_l / 2.0).exp() * product / floor)
}

/// Partial reproducing kernel `K^l_{mu,s}(w)`, summed over `p_l`-smooth
/// indices in increasing order (in the log domain, so indices beyond u64 are
/// fine). Requires `Re(s) + Re(w) > 0`.
pub fn partial_kernel(
    l: usize,
    s: Complex64,
    w: Complex64,
    mu: &MeasureDensity,
    cutoff: KernelCutoff,
) -> Result<KernelValue> {
    let c = s.re + w.re;
    if c <= 0.0 {
        return Err(Error::KernelDivergent {
            exponent: c,
            boundary: 0.0,
        });
    }
    let primes = first_primes(l);
    let exponent = s.conj() + w;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut terms = 0usize;
    let (log_limit, rel_tol, max_terms) = match cutoff {
        KernelCutoff::Index(n) => ((n.max(1) as f64).ln() * (1.0 + 1e-14) + 1e-14, 0.0, usize::MAX),
        KernelCutoff::Adaptive { rel_tol, max_terms } => (f64::INFINITY, rel_tol, max_terms),
    };
    let mut stream = SmoothLogStream::new(l);
    let mut last_log = 0.0;
    loop {
        let log = match stream.next() {
            Some(log) if log <= log_limit => log,
            _ => break,
        };
        acc += (-exponent * log).exp() / mu.weight_from_log(log);
        terms += 1;
        last_log = log;
        if matches!(cutoff, KernelCutoff::Adaptive { .. }) {
            // check the tail once per popped term, after a warmup
            if terms.is_multiple_of(64) {
                let tail = smooth_tail_bound(mu, &primes, c, log)?;
                if tail <= rel_tol * acc.norm() {
                    return Ok(KernelValue {
                        value: acc,
                        tail_bound: tail,
                        terms,
                    });
                }
            }
            if terms >= max_terms {
                let tail = smooth_tail_bound(mu, &primes, c, log)?;
                return Err(Error::KernelBudget {
                    terms,
                    tail_rel: tail / acc.norm().max(f64::MIN_POSITIVE),
                });
            }
        }
    }
    let tail = smooth_tail_bound(mu, &primes, c, last_log.max(log_limit.min(1e300)))?;
    Ok(KernelValue {
        value: acc,
        tail_bound: tail,
        terms,
    })
}

/// Squared norm of the partial kernel, `||K^l_{mu,s}||^2 = K^l_{mu,s}(s)`.
pub fn partial_kernel_norm_sq(
    l: usize,
    s: Complex64,
    mu: &MeasureDensity,
    cutoff: KernelCutoff,
) -> Result<KernelValue> {
    partial_kernel(l, s, s, mu, cutoff)
}

/// Full reproducing kernel `K_{mu,s}(w) = sum_{n<=N} n^{-conj(s)-w}/w_h(n)`
/// with an integral tail bound. Requires `Re(s) + Re(w) > 1`.
pub fn kernel(s: Complex64, w: Complex64, mu: &MeasureDensity, n_max: u64) -> Result<KernelValue> {
    let c = s.re + w.re;
    if c <= 1.0 {
        return Err(Error::KernelDivergent {
            exponent: c,
            boundary: 1.0,
        });
    }
    let exponent = s.conj() + w;
    let mut acc = Complex64::new(0.0, 0.0);
    for n in 1..=n_max {
        let ln_n = (n as f64).ln();
        acc += (-exponent * ln_n).exp() / mu.weight_from_log(ln_n);
    }
    let tail = if let Some(alpha) = mu.alpha_parameter() {
        // integral test on x^{-c} (1 + ln x)^{alpha+1}, decreasing past
        // x* = exp((alpha+1)/c - 1); the integral has the closed form
        // e^{c-1} Gamma(a+2) (c-1)^{-(a+2)} Q(a+2, (c-1)(1 + ln K))
        let x_star = ((alpha + 1.0) / c - 1.0).exp();
        let mut k = n_max.max(1);
        let mut explicit = 0.0;
        while (k as f64) < x_star {
            k += 1;
            explicit += (k as f64).powf(-c) / mu.weight(k)?;
        }
        let a2 = alpha + 2.0;
        let q = c - 1.0;
        explicit
            + q.exp()
                * statrs::function::gamma::gamma(a2)
                * q.powf(-a2)
                * statrs::function::gamma::gamma_ur(a2, q * (1.0 + (k as f64).ln()))
    } else {
        // compact support: w_h(n) >= mass * n^{-2 sigma_end}
        let eps = 2.0 * mu.compact_support_end().unwrap_or(0.0);
        let q = c - eps;
        if q <= 1.0 {
            return Err(Error::TailBoundUnavailable(format!(
                "support end {} needs Re(s) + Re(w) > {}",
                eps / 2.0,
                1.0 + eps
            )));
        }
        let floor = mu.weight_power_floor(eps)?;
        (n_max.max(2) as f64).powf(1.0 - q) / ((q - 1.0) * floor)
    };
    Ok(KernelValue {
        value: acc,
        tail_bound: tail,
        terms: n_max as usize,
    })
}

/// The `eta` knob of the Littlewood-Paley formula: the probability measure
/// over the vertical coordinate. The formula's value is independent of the
/// choice; the sampler exposes two.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimeMeasure {
    /// Uniform on (0, 1) (the default).
    UniformUnit,
    /// Point mass at 0.
    PointMassAtZero,
}

/// A Monte-Carlo estimate against its closed form.
#[derive(Debug, Clone, Copy)]
pub struct McEstimate {
    pub estimate: f64,
    pub closed_form: f64,
    pub std_error: f64,
    /// `(estimate - closed_form) / std_error`; 0 when both the deviation and
    /// the spread vanish (degenerate exact cases).
    pub z_score: f64,
    pub samples: usize,
}

fn z_score(diff: f64, se: f64) -> f64 {
    if se == 0.0 {
        if diff == 0.0 {
            0.0
        } else {
            f64::INFINITY * diff.signum()
        }
    } else {
        diff / se
    }
}

/// Character horizon covering every prime factor in the support of `f`.
fn horizon_for(f: &DirichletPolynomial) -> Result<usize> {
    let mut max_prime = 1u64;
    for n in f.support() {
        if let Some(&(p, _)) = factorize(n)?.exponents.last() {
            max_prime = max_prime.max(p);
        }
    }
    if max_prime == 1 {
        return Ok(1);
    }
    let mut k = 1;
    loop {
        let primes = first_primes(k);
        if *primes.last().unwrap() >= max_prime {
            return Ok(k);
        }
        k += 1;
    }
}

fn sample_t<R: rand::Rng>(rng: &mut R, eta: TimeMeasure) -> f64 {
    match eta {
        TimeMeasure::UniformUnit => rng.gen_range(0.0..1.0),
        TimeMeasure::PointMassAtZero => 0.0,
    }
}

/// Monte-Carlo check of the fixed-slice derivative moment
///
/// ```text
/// E_{chi,t} |f_chi'(sigma + it)|^2 = sum_{n>=2} |a_n|^2 n^{-2 sigma} ln^2 n,
/// ```
///
/// sampling characters uniformly on the polytorus and `t` from `eta`. Cross
/// terms cancel in expectation by character orthogonality, even between
/// multiplicatively dependent indices.
pub fn mc_derivative_moment(
    f: &DirichletPolynomial,
    sigma: f64,
    samples: usize,
    seed: u64,
    eta: TimeMeasure,
) -> Result<McEstimate> {
    assert!(sigma > 0.0);
    assert!(samples >= 1);
    let horizon = horizon_for(f)?;
    let closed_form: f64 = f
        .terms()
        .filter(|&(n, _)| n >= 2)
        .map(|(n, c)| {
            let ln_n = (n as f64).ln();
            c.norm_sqr() * (n as f64).powf(-2.0 * sigma) * ln_n * ln_n
        })
        .sum();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for _ in 0..samples {
        let chi = Character::random(&mut rng, horizon);
        let t = sample_t(&mut rng, eta);
        let g = f.twist(&chi)?;
        let v = g
            .derivative_evaluate(Complex64::new(sigma, t))
            .norm_sqr();
        sum += v;
        sum_sq += v * v;
    }
    let mean = sum / samples as f64;
    let var = (sum_sq / samples as f64 - mean * mean).max(0.0);
    let se = (var / samples as f64).sqrt();
    Ok(McEstimate {
        estimate: mean,
        closed_form,
        std_error: se,
        z_score: z_score(mean - closed_form, se),
        samples,
    })
}

/// Monte-Carlo check of the full norm formula
///
/// ```text
/// ||f||_{A_mu^2}^2 = |a_1|^2
///   + 4 E_{chi,t} int_0^inf beta_h(sigma) |f_chi'(sigma + it)|^2 d sigma.
/// ```
///
/// The inner `sigma` integral is evaluated in closed form through the weight
/// identity (`4 int beta(sigma) q^{-sigma} d sigma = w_h(sqrt q)/ln^2(sqrt q)`),
/// so each sample costs one double sum over the support.
pub fn mc_lp_check(
    f: &DirichletPolynomial,
    mu: &MeasureDensity,
    samples: usize,
    seed: u64,
    eta: TimeMeasure,
) -> Result<McEstimate> {
    assert!(samples >= 1);
    let horizon = horizon_for(f)?;
    let closed_form = norm_amu2(f, mu)?.powi(2);
    let support: Vec<(u64, Complex64, f64)> = f
        .terms()
        .filter(|&(n, _)| n >= 2)
        .map(|(n, c)| (n, c, (n as f64).ln()))
        .collect();
    // pair integrals J(n*m) = 4 int beta(sigma) (nm)^{-sigma} d sigma
    let mut pair_j = vec![vec![0.0; support.len()]; support.len()];
    for (i, &(_, _, ln_n)) in support.iter().enumerate() {
        for (j, &(_, _, ln_m)) in support.iter().enumerate() {
            let half_log = 0.5 * (ln_n + ln_m);
            pair_j[i][j] = mu.weight_from_log(half_log) / (half_log * half_log);
        }
    }
    let a1_sq = f.constant_coeff().norm_sqr();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for _ in 0..samples {
        let chi = Character::random(&mut rng, horizon);
        let t = sample_t(&mut rng, eta);
        // d_n = a_n chi(n) ln n e^{-i t ln n}
        let d: Vec<Complex64> = support
            .iter()
            .map(|&(n, c, ln_n)| {
                let chi_n = chi.value(n).expect("horizon covers support");
                let rot = Complex64::new(0.0, -t * ln_n).exp();
                c * chi_n * rot * ln_n
            })
            .collect();
        let mut v = 0.0;
        for i in 0..d.len() {
            for j in 0..d.len() {
                v += (d[i] * d[j].conj()).re * pair_j[i][j];
            }
        }
        sum += v;
        sum_sq += v * v;
    }
    let mean = sum / samples as f64;
    let var = (sum_sq / samples as f64 - mean * mean).max(0.0);
    let se = (var / samples as f64).sqrt();
    let estimate = a1_sq + mean;
    Ok(McEstimate {
        estimate,
        closed_form,
        std_error: se,
        z_score: z_score(estimate - closed_form, se),
        samples,
    })
}
