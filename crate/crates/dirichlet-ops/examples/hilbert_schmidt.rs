//! Hilbert-Schmidt sums for `c0 = 0` symbols: with a certificate
//! `Re phi >= 1/2 + eta` the squared basis images are summable, dominated
//! term by term by `n^{-1-2 eta} / w_h(n)`.
//!
//! ```text
//! cargo run --example hilbert_schmidt
//! ```

use dirichlet_ops::measure::MeasureDensity;
use dirichlet_ops::operators::hs_partial_sums;
use dirichlet_ops::poly::DirichletPolynomial;
use dirichlet_ops::symbol::{BoundarySampler, Symbol, ValidationMode};

fn main() {
    let mu = MeasureDensity::alpha(0.0).unwrap();

    // Phi = 5/4 + (1/4) 2^{-s}: coefficient certificate with eta = 1/2
    let mut sym = Symbol::new(
        0,
        DirichletPolynomial::from_real_terms([(1, 1.25), (2, 0.25)]).unwrap(),
    );
    sym.validate(
        ValidationMode::BeyondHalf { eta: 0.5 },
        &BoundarySampler::default(),
    )
    .unwrap();

    println!("HS partial sums for Phi = 5/4 + (1/4) 2^-s on alpha = 0:");
    println!("  N        partial sum     tail bound      partial + tail");
    let sums = hs_partial_sums(&sym, &mu, &[100, 1_000, 10_000, 100_000]).unwrap();
    for row in &sums {
        println!(
            "  {:<8} {:<15.12} {:<15.3e} {:.12}",
            row.truncation,
            row.partial,
            row.tail_bound,
            row.partial + row.tail_bound
        );
    }
    println!("  (partial sums rise, partial + tail falls: the sum is trapped)");

    // constant symbol: closed form n^{-2 Re c} / w_h(n) per term
    let mut constant = Symbol::new(0, DirichletPolynomial::from_real_terms([(1, 1.0)]).unwrap());
    constant
        .validate(
            ValidationMode::BeyondHalf { eta: 0.5 },
            &BoundarySampler::default(),
        )
        .unwrap();
    let sums = hs_partial_sums(&constant, &mu, &[500]).unwrap();
    let expected: f64 = (1..=500u64)
        .map(|n| (n as f64).powf(-2.0) / mu.weight(n).unwrap())
        .sum();
    println!("\nconstant symbol Phi = 1:");
    println!("  partial at 500: {:.12}", sums[0].partial);
    println!("  closed form:    {expected:.12}");
}
