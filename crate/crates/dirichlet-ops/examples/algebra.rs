//! Dirichlet polynomial algebra: convolution, translation, character twists,
//! and vertical limits.
//!
//! ```text
//! cargo run --example algebra
//! ```

use dirichlet_ops::poly::{multiply, Character, DirichletPolynomial};
use num_complex::Complex64;

fn main() {
    // f = 2^{-s} + 3^{-s}
    let f = DirichletPolynomial::from_real_terms([(2, 1.0), (3, 1.0)]).unwrap();

    // convolution squares it: indices multiply, coefficients convolve
    let (square, loss) = multiply(&f, &f, 9);
    println!("(e2 + e3)^2 truncated at 9:");
    for (n, c) in square.terms() {
        println!("  index {n}: {c}");
    }
    println!("  dropped terms: {}", loss.terms);

    // horizontal translation rescales coefficients by n^{-sigma}
    let shifted = f.translate(1.0);
    println!("f(s + 1) coefficient at 2: {}", shifted.coeff(2));

    // a character twist rotates each coefficient by chi(n), a completely
    // multiplicative point of the polytorus
    let chi = Character::new(vec![
        std::f64::consts::FRAC_PI_2,
        std::f64::consts::FRAC_PI_2,
    ]);
    let e6 = DirichletPolynomial::basis(6);
    let twisted = e6.twist(&chi).unwrap();
    println!("chi(6) = chi(2) chi(3) = i * i: coefficient {}", twisted.coeff(6));

    // twisting by theta_j = -t0 ln p_j samples a vertical limit: the twisted
    // polynomial evaluates like the original shifted by i t0
    let t0 = 2.31;
    let vertical = Character::vertical_translation(t0, 2);
    let g = f.twist(&vertical).unwrap();
    let s = Complex64::new(0.7, -0.4);
    println!(
        "vertical-limit sample: |f_chi(s) - f(s + i t0)| = {:.3e}",
        (g.evaluate(s) - f.evaluate(s + Complex64::new(0.0, t0))).norm()
    );

    // derivative evaluation, used throughout the norm formulas
    println!(
        "f'(0) = {} (expected -(ln 2 + ln 3))",
        f.derivative_evaluate(Complex64::new(0.0, 0.0))
    );
}
