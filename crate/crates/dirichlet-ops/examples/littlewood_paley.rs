//! Monte-Carlo checks of the Littlewood-Paley norm formula
//!
//! ```text
//! ||f||^2 = |a_1|^2 + 4 E_{chi,t} int beta_h(sigma) |f_chi'(sigma+it)|^2 d sigma
//! ```
//!
//! and of its fixed-slice derivative moment. Cross terms between characters
//! cancel in expectation, even for multiplicatively dependent indices.
//!
//! ```text
//! cargo run --example littlewood_paley
//! ```

use dirichlet_ops::measure::MeasureDensity;
use dirichlet_ops::poly::DirichletPolynomial;
use dirichlet_ops::spaces::{mc_derivative_moment, mc_lp_check, TimeMeasure};
use num_complex::Complex64;

fn main() {
    let mu = MeasureDensity::alpha(0.0).unwrap();

    // fixed-slice moment at sigma: E |f_chi'(sigma+it)|^2 equals
    // sum |a_n|^2 n^{-2 sigma} ln^2 n
    let f = DirichletPolynomial::from_real_terms([(2, 1.0), (3, 1.0)]).unwrap();
    let est = mc_derivative_moment(&f, 0.4, 100_000, 7, TimeMeasure::UniformUnit).unwrap();
    println!("derivative moment, f = e2 + e3, sigma = 0.4:");
    println!("  estimate    {:.8}", est.estimate);
    println!("  closed form {:.8}", est.closed_form);
    println!("  z-score     {:+.3}", est.z_score);

    // dependent characters: chi(4) = chi(2)^2, orthogonality still kills the
    // cross term
    let g = DirichletPolynomial::from_real_terms([(2, 1.0), (4, 1.0)]).unwrap();
    let est = mc_derivative_moment(&g, 0.3, 100_000, 8, TimeMeasure::UniformUnit).unwrap();
    println!("\ndependent support (e2 + e4), sigma = 0.3: z = {:+.3}", est.z_score);

    // the full formula against the Parseval norm, with complex coefficients
    let h = DirichletPolynomial::from_terms([
        (1u64, Complex64::new(0.5, 0.0)),
        (2u64, Complex64::new(1.0, -0.3)),
        (6u64, Complex64::new(-0.4, 0.8)),
    ])
    .unwrap();
    for (eta, label) in [
        (TimeMeasure::UniformUnit, "eta = uniform(0,1)"),
        (TimeMeasure::PointMassAtZero, "eta = point mass at 0"),
    ] {
        let est = mc_lp_check(&h, &mu, 200_000, 12, eta).unwrap();
        println!(
            "\nfull formula with {label}:\n  estimate {:.8} vs norm^2 {:.8} (z = {:+.3})",
            est.estimate, est.closed_form, est.z_score
        );
    }

    // the constant polynomial is degenerate: both sides are |a_1|^2 exactly
    let one = DirichletPolynomial::one();
    let est = mc_lp_check(&one, &mu, 1000, 1, TimeMeasure::UniformUnit).unwrap();
    println!(
        "\nconstant polynomial: estimate {} = norm^2 {} with zero variance",
        est.estimate, est.closed_form
    );
}
