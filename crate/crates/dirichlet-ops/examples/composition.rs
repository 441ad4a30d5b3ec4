//! Symbols `Phi(s) = c0 s + phi(s)`: validation certificates and composition
//! with truncation diagnostics.
//!
//! ```text
//! cargo run --example composition
//! ```

use dirichlet_ops::poly::DirichletPolynomial;
use dirichlet_ops::symbol::{compose, BoundarySampler, Symbol, ValidationMode};

fn main() {
    // composition is formal index algebra and works for any symbol shape:
    // 2^{-Phi(s)} = 2^{-s} exp(-ln 2 * 3^{-s}) for Phi(s) = s + 3^{-s}
    let formal = Symbol::new(1, DirichletPolynomial::from_real_terms([(3, 1.0)]).unwrap());
    let out = compose(&DirichletPolynomial::basis(2), &formal, 18).unwrap();
    println!("2^-s composed with s + 3^-s, cutoff 18:");
    for (n, c) in out.poly.terms() {
        println!("  index {n}: {c}");
    }
    println!("  mass beyond the cutoff at most {:.3e}", out.tail_l1);

    // operator theory needs more: phi must map the half-plane into itself.
    // phi = 3^{-s} fails on the boundary (Re 3^{-it} reaches -1):
    let mut bad = formal.clone();
    match bad.validate(ValidationMode::RightHalfPlane, &BoundarySampler::default()) {
        Ok(_) => println!("unexpected certificate"),
        Err(e) => println!("\nphi = 3^-s rejected as a symbol: {e}"),
    }

    // the coefficient test Re c1 >= sum |c_n| certifies rigorously:
    let mut shifted = Symbol::new(
        1,
        DirichletPolynomial::from_real_terms([(1, 2.0), (2, -1.0)]).unwrap(),
    );
    let cert = shifted
        .validate(ValidationMode::RightHalfPlane, &BoundarySampler::default())
        .unwrap();
    println!(
        "phi = 2 - 2^-s: certified with margin {} (rigorous = {})",
        cert.margin, cert.rigorous
    );

    // when the coefficient test is inconclusive but the boundary stays
    // right of the axis, dense sampling yields a non-rigorous certificate:
    // min over t of 0.75 + cos(theta) + 0.3 cos(2 theta) is ~0.033 > 0
    let mut empirical = Symbol::new(
        1,
        DirichletPolynomial::from_real_terms([(1, 0.75), (2, 1.0), (4, 0.3)]).unwrap(),
    );
    let cert = empirical
        .validate(ValidationMode::RightHalfPlane, &BoundarySampler::default())
        .unwrap();
    println!(
        "phi = 3/4 + 2^-s + 0.3*4^-s: margin {:.4} (rigorous = {})",
        cert.margin, cert.rigorous
    );

    // a half-plane certificate for c0 = 0 requires Re phi >= 1/2 + eta
    let mut flat = Symbol::new(
        0,
        DirichletPolynomial::from_real_terms([(1, 1.25), (2, 0.25)]).unwrap(),
    );
    let cert = flat
        .validate(
            ValidationMode::BeyondHalf { eta: 0.5 },
            &BoundarySampler::default(),
        )
        .unwrap();
    println!(
        "phi = 5/4 + (1/4) 2^-s with eta = 1/2: margin {} (rigorous = {})",
        cert.margin, cert.rigorous
    );

    // dilation degree c0 sends e_n to index n^{c0}
    let dilated = compose(&DirichletPolynomial::basis(3), &Symbol::dilation(2), 100).unwrap();
    println!(
        "\n3^-s composed with 2s lives at index {:?}",
        dilated.poly.support().collect::<Vec<_>>()
    );
}
