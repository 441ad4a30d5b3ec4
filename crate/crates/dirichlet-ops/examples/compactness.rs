//! Compactness verdicts from the counting route: the real-part ratio
//! `Re s / Re Phi(s)`, the Hardy indicator `N_Phi(s)/Re s`, and the weighted
//! indicator `N_{beta,Phi}(s)/beta(Re s)`, each swept over a shrinking
//! geometric grid and classified as a trend.
//!
//! ```text
//! cargo run --example compactness
//! ```

use dirichlet_ops::counting::SolverSettings;
use dirichlet_ops::measure::MeasureDensity;
use dirichlet_ops::operators::{compactness_report, TWindow};
use dirichlet_ops::poly::DirichletPolynomial;
use dirichlet_ops::suite::validate_for_space;
use dirichlet_ops::symbol::Symbol;

fn main() {
    let mu = MeasureDensity::alpha(0.0).unwrap();
    let sigma_grid: Vec<f64> = (1..=12).map(|j| 2f64.powi(-j)).collect();
    let window = TWindow {
        center: 0.0,
        half_width: None,
        points: 3,
    };
    let settings = SolverSettings::default();

    let shifted = {
        let mut sym = Symbol::new(
            1,
            DirichletPolynomial::from_real_terms([(1, 2.0), (2, -1.0)]).unwrap(),
        );
        validate_for_space(&mut sym, 0.5).unwrap();
        sym
    };

    for (name, sym) in [
        ("identity s", Symbol::dilation(1)),
        ("double dilation 2s", Symbol::dilation(2)),
        ("shifted s + 2 - 2^-s", shifted),
    ] {
        let rep = compactness_report(&sym, &mu, &sigma_grid, &window, &settings).unwrap();
        println!("{name}:");
        println!("  sigma         Re-ratio    N/sigma     N_beta/beta");
        for row in rep.rows.iter().step_by(3) {
            println!(
                "  {:<12.6}  {:<10.6}  {:<10.6}  {:<10.6}",
                row.sigma, row.re_ratio, row.nphi_ratio, row.nbeta_ratio
            );
        }
        println!(
            "  trends: re {}, hardy {}, weighted {}",
            rep.re_trend.label(),
            rep.nphi_trend.label(),
            rep.nbeta_trend.label()
        );
        println!(
            "  verdicts: weighted space {}, Hardy space {}\n",
            rep.bergman_verdict(),
            rep.hardy_verdict()
        );
    }
}
