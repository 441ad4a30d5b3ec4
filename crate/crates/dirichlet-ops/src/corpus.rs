//! Deterministic generation of certified test symbols.
//!
//! Generated symbols carry rigorous certificates by construction: the
//! constant coefficient is set to `threshold + sum |c_n| + margin`, so the
//! coefficient inequality validates them without sampling.

use crate::error::{Error, Result};
use crate::poly::DirichletPolynomial;
use crate::symbol::{BoundarySampler, Symbol, ValidationMode};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Shape constraints for generated symbols.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorpusConstraints {
    /// Dilation degrees to draw from.
    pub c0_choices: Vec<u32>,
    /// Largest support index for the perturbation.
    pub max_index: u64,
    /// Restrict support to `p_l`-smooth indices when set.
    pub smooth_prime_count: Option<usize>,
    pub support_size_min: usize,
    pub support_size_max: usize,
    /// Coefficient magnitudes are at most this.
    pub coefficient_scale: f64,
    /// Guaranteed slack of the half-plane certificate.
    pub margin: f64,
    /// Half-plane offset for `c0 = 0` symbols.
    pub eta: f64,
}

impl Default for CorpusConstraints {
    fn default() -> Self {
        CorpusConstraints {
            c0_choices: vec![1, 2],
            max_index: 16,
            smooth_prime_count: Some(1),
            support_size_min: 1,
            support_size_max: 3,
            coefficient_scale: 0.8,
            margin: 0.3,
            eta: 0.5,
        }
    }
}

/// Generate `count` certified symbols, deterministically in the seed.
pub fn generate_corpus(
    seed: u64,
    count: usize,
    constraints: &CorpusConstraints,
) -> Result<Vec<Symbol>> {
    if constraints.c0_choices.is_empty() {
        return Err(Error::UnsatisfiableConstraints(
            "no dilation degrees to choose from".into(),
        ));
    }
    if constraints.max_index < 2 {
        return Err(Error::UnsatisfiableConstraints(
            "need indices >= 2 for a nonconstant perturbation".into(),
        ));
    }
    if constraints.support_size_min > constraints.support_size_max {
        return Err(Error::UnsatisfiableConstraints(
            "support size range is empty".into(),
        ));
    }
    let pool: Vec<u64> = match constraints.smooth_prime_count {
        Some(l) => crate::arith::smooth_indices(l, constraints.max_index)
            .into_iter()
            .filter(|&n| n >= 2)
            .collect(),
        None => (2..=constraints.max_index).collect(),
    };
    if pool.len() < constraints.support_size_max {
        return Err(Error::UnsatisfiableConstraints(format!(
            "support pool has {} indices but up to {} are requested",
            pool.len(),
            constraints.support_size_max
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let c0 = constraints.c0_choices[rng.gen_range(0..constraints.c0_choices.len())];
        let size = rng.gen_range(constraints.support_size_min..=constraints.support_size_max);
        let mut indices = pool.clone();
        // deterministic partial shuffle
        for i in 0..size {
            let j = rng.gen_range(i..indices.len());
            indices.swap(i, j);
        }
        let mut terms: Vec<(u64, Complex64)> = indices[..size]
            .iter()
            .map(|&n| {
                let scale = constraints.coefficient_scale;
                (
                    n,
                    Complex64::new(
                        rng.gen_range(-scale..scale),
                        rng.gen_range(-scale..scale),
                    ),
                )
            })
            .collect();
        let mode = if c0 == 0 {
            ValidationMode::BeyondHalf {
                eta: constraints.eta,
            }
        } else {
            ValidationMode::RightHalfPlane
        };
        let tail: f64 = terms.iter().map(|(_, c)| c.norm()).sum();
        let slack = constraints.margin * rng.gen_range(0.0..1.0f64);
        let c1 = Complex64::new(
            mode.threshold() + tail + slack,
            rng.gen_range(-constraints.coefficient_scale..constraints.coefficient_scale),
        );
        terms.push((1, c1));
        let mut sym = Symbol::new(c0, DirichletPolynomial::from_terms(terms)?);
        let cert = sym
            .validate(mode, &BoundarySampler::default())
            .expect("certified by construction");
        debug_assert!(cert.rigorous);
        out.push(sym);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_deterministic_in_the_seed() {
        let constraints = CorpusConstraints::default();
        let a = generate_corpus(9, 8, &constraints).unwrap();
        let b = generate_corpus(9, 8, &constraints).unwrap();
        assert_eq!(a.len(), 8);
        for (x, y) in a.iter().zip(b.iter()) {
            assert_eq!(x.phi(), y.phi());
            assert_eq!(x.c0(), y.c0());
        }
        let c = generate_corpus(10, 8, &constraints).unwrap();
        assert!(a.iter().zip(c.iter()).any(|(x, y)| x.phi() != y.phi()));
    }

    #[test]
    fn all_generated_symbols_carry_rigorous_certificates() {
        let corpus = generate_corpus(3, 20, &CorpusConstraints::default()).unwrap();
        for sym in &corpus {
            let cert = sym.certificate().expect("validated");
            assert!(cert.rigorous);
            assert!(cert.margin >= 0.0);
        }
    }

    #[test]
    fn smoothness_constraint_is_respected() {
        let constraints = CorpusConstraints {
            smooth_prime_count: Some(1),
            max_index: 64,
            ..CorpusConstraints::default()
        };
        for sym in generate_corpus(5, 10, &constraints).unwrap() {
            for n in sym.phi().support() {
                assert!(crate::arith::greatest_prime_factor(n).unwrap() <= 2);
            }
        }
    }

    #[test]
    fn unsatisfiable_constraints_error() {
        let constraints = CorpusConstraints {
            max_index: 1,
            ..CorpusConstraints::default()
        };
        assert!(matches!(
            generate_corpus(1, 1, &constraints),
            Err(Error::UnsatisfiableConstraints(_))
        ));
    }
}
