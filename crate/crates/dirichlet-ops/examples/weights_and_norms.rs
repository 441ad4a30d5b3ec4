//! Measures on `(0, inf)`, coefficient weights, the accumulated weight
//! `beta_h`, space norms, and the per-index weight identity.
//!
//! ```text
//! cargo run --example weights_and_norms
//! ```

use dirichlet_ops::measure::{kappa_check, lp_weight_identity, MeasureDensity};
use dirichlet_ops::poly::DirichletPolynomial;
use dirichlet_ops::spaces::{norm_amu2, norm_h2, norm_h2k};

fn main() {
    let alpha0 = MeasureDensity::alpha(0.0).unwrap();
    let alpha1 = MeasureDensity::alpha(1.0).unwrap();
    let uniform = MeasureDensity::uniform_unit();

    println!("weights w_h(n) = int n^{{-2 sigma}} h d sigma:");
    println!("  n      alpha=0      alpha=1      uniform(0,1)");
    for n in [1u64, 2, 10, 100] {
        println!(
            "  {:<5}  {:<11.8}  {:<11.8}  {:<11.8}",
            n,
            alpha0.weight(n).unwrap(),
            alpha1.weight(n).unwrap(),
            uniform.weight(n).unwrap()
        );
    }

    println!("\nbeta_h(sigma) and the bound beta <= sigma:");
    for sigma in [0.25, 1.0, 4.0] {
        println!(
            "  sigma {:<5} alpha=0: {:.8}  uniform: {:.8}",
            sigma,
            alpha0.beta(sigma),
            uniform.beta(sigma)
        );
    }

    // norms: Parseval sums against the weights
    let f = DirichletPolynomial::from_real_terms([(2, 1.0), (3, 1.0)]).unwrap();
    println!("\nf = 2^-s + 3^-s:");
    println!("  H2 norm        = {}", norm_h2(&f));
    println!("  A_mu2 (alpha0) = {}", norm_amu2(&f, &alpha0).unwrap());
    println!("  H4 norm        = {}", norm_h2k(&f, 2, 1000).unwrap());

    // the identity 4 int beta(s) n^{-2s} ln^2 n ds = w_h(n), the
    // coefficient-level form of the Littlewood-Paley formula
    println!("\nweight identity at n = 2, 50:");
    for (n, mu, label) in [(2u64, &alpha0, "alpha=0"), (50u64, &alpha1, "alpha=1")] {
        let id = lp_weight_identity(n, mu).unwrap();
        println!(
            "  n={n} ({label}): lhs {:.12}, rhs {:.12}, rel err {:.2e}",
            id.lhs, id.rhs, id.relative_error
        );
    }

    // condition (kappa): the ratio G(eta sigma)/G(sigma) must die as both
    // shrink; for the alpha family G ~ sigma^{alpha+1}
    let sigma_grid: Vec<f64> = (4..=14).map(|j| 2f64.powi(-j)).collect();
    let report = kappa_check(&alpha1, &[0.3, 0.1, 0.03, 0.01], &sigma_grid, 0.05, 0.01);
    println!("\ncondition (kappa) for alpha = 1 (expect ratio ~ eta^2):");
    for row in &report.rows {
        println!("  eta {:<5} sup ratio {:.6}", row.eta, row.sup_ratio);
    }
    println!("  consistent: {}", report.consistent);
}
