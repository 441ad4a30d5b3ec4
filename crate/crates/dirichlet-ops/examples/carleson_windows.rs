//! Carleson windows and pullback measures: boundary values, the line and
//! plane pullbacks, the sup over window positions, the counting-vs-measure
//! comparison, and the decay ratios behind the Carleson-side compactness
//! criterion.
//!
//! ```text
//! cargo run --example carleson_windows
//! ```

use dirichlet_ops::carleson::{
    boundary_value, corollary4_estimate, lambda_mu_phi, lambda_phi, rho_phi, theorem8_check,
    ScanSettings, Window,
};
use dirichlet_ops::counting::SolverSettings;
use dirichlet_ops::measure::MeasureDensity;
use dirichlet_ops::poly::DirichletPolynomial;
use dirichlet_ops::suite::validate_for_space;
use dirichlet_ops::symbol::Symbol;

fn main() {
    let mu = MeasureDensity::alpha(0.0).unwrap();
    let scan = ScanSettings::default();
    let sym = Symbol::dilation(1);

    println!("boundary values Phi*(it) = i c0 t + phi(it):");
    let mut shifted = Symbol::new(
        1,
        DirichletPolynomial::from_real_terms([(1, 2.0), (2, -1.0)]).unwrap(),
    );
    validate_for_space(&mut shifted, 0.5).unwrap();
    println!("  identity at t = 3:   {}", boundary_value(&sym, 3.0));
    println!("  shifted at t = 0:    {}", boundary_value(&shifted, 0.0));

    // line pullback of a window: for the identity, |t| < h gives 2h
    let window = Window::new(0.0, 0.25);
    let lam = lambda_phi(&sym, &window, &scan).unwrap();
    println!(
        "\nlambda(H(0, 0.25)) for the identity: {:.9} (exact 0.5), error {:.1e}",
        lam.value, lam.error
    );

    // plane pullback: the half-disc region integrated against h(sigma)
    let lam_mu = lambda_mu_phi(&sym, &mu, &window, &scan).unwrap();
    println!("lambda_mu(H(0, 0.25)): {:.9} via {:?}", lam_mu.value, lam_mu.method);

    // the shifted symbol never reaches small windows: Re Phi* >= 1
    let empty = lambda_phi(&shifted, &Window::new(0.0, 0.9), &scan).unwrap();
    println!("shifted symbol, window of radius 0.9: measure {}", empty.value);

    // sup over centers with a grid-doubling diagnostic
    let rho = rho_phi(&sym, 0.25, &[-1.0, 0.0, 1.0], &scan).unwrap();
    println!(
        "\nrho(0.25) on a center grid: {:.9} (stability {:.1e})",
        rho.value, rho.stability_rel
    );

    // counting sup vs window measure across shrinking windows: the ratio
    // stays bounded (1/8 exactly for the identity at t = 0)
    let h_grid: Vec<f64> = (3..=8).map(|j| 2f64.powi(-j)).collect();
    let cmp = theorem8_check(&sym, &mu, &h_grid, 0.0, &scan, &SolverSettings::default()).unwrap();
    println!("\ncounting sup over H(0,h/2) vs lambda(H(0,2h)):");
    for row in cmp.rows.iter().take(3) {
        println!(
            "  h = {:<9} sup N = {:<12.9} lambda = {:<12.9} ratio = {:.6}",
            row.h, row.sup_n_phi, row.lambda, row.ratio_line
        );
    }

    // decay ratios: rho/h (line) and rho_mu/beta(h) (plane); vanishing
    // trends are the Carleson-side sufficient condition for compactness
    let line = corollary4_estimate(&shifted, None, &h_grid, &[0.0], &scan).unwrap();
    let plane = corollary4_estimate(&shifted, Some(&mu), &h_grid, &[0.0], &scan).unwrap();
    println!(
        "\nshifted symbol decay: rho/h trend {}, rho_mu/beta trend {}",
        line.trend.label(),
        plane.trend.label()
    );
    let line_id = corollary4_estimate(&sym, None, &h_grid, &[0.0], &scan).unwrap();
    println!(
        "identity decay ratio stays at {:.3} ({})",
        line_id.sup_ratio,
        line_id.trend.label()
    );
}
