//! Preimage solving and the generalized Nevanlinna counting functions:
//! argument-principle root isolation, the two independent routes to
//! `N_{beta,Phi}`, and the Littlewood inequality.
//!
//! ```text
//! cargo run --example counting_functions
//! ```

use dirichlet_ops::counting::{
    littlewood_check, n_beta, n_beta_via_lemma1, n_phi, preimages, valence_estimate,
    SolverSettings,
};
use dirichlet_ops::measure::MeasureDensity;
use dirichlet_ops::poly::DirichletPolynomial;
use dirichlet_ops::suite::validate_for_space;
use dirichlet_ops::symbol::Symbol;
use num_complex::Complex64;

fn main() {
    let mu = MeasureDensity::alpha(0.0).unwrap();
    let settings = SolverSettings::default();

    // Phi(s) = s + 1 + 2^{-s}: solve Phi(a) = 3 in the half-plane
    let mut sym = Symbol::new(
        1,
        DirichletPolynomial::from_real_terms([(1, 1.0), (2, 1.0)]).unwrap(),
    );
    validate_for_space(&mut sym, 0.5).unwrap();
    let s = Complex64::new(3.0, 0.0);
    let set = preimages(&sym, s, &settings).unwrap();
    println!("preimages of {s} under s + 1 + 2^-s:");
    for root in &set.roots {
        println!(
            "  a = {} (multiplicity {}, residual {:.1e})",
            root.location, root.multiplicity, root.residual
        );
    }
    println!(
        "  box count {} = multiplicity sum; excluded strip holds {} roots",
        set.total_count, set.strip.count
    );

    // target 2 has no preimage at all: a + 2^{-a} = 1 only solves at a = 0,
    // on the boundary
    let empty = preimages(&sym, Complex64::new(2.0, 0.0), &settings).unwrap();
    println!("preimages of 2: {} roots", empty.count());

    // counting functions against closed forms for dilations
    println!("\ndilations Phi = c0 s at s = 0.8 + 0.35i:");
    let s = Complex64::new(0.8, 0.35);
    for c0 in [1u32, 2, 3] {
        let dil = Symbol::dilation(c0);
        let np = n_phi(&dil, s, &settings).unwrap().value;
        let nb = n_beta(&dil, s, &mu, &settings).unwrap().value;
        println!(
            "  c0={c0}: N = {np:.10} (expect {:.10}), N_beta = {nb:.10} (expect {:.10})",
            s.re / c0 as f64,
            mu.beta(s.re / c0 as f64)
        );
    }

    // two independent routes to the weighted counting function: direct
    // summation over roots vs integration of slice counts
    let s = Complex64::new(2.4, 0.7);
    let direct = n_beta(&sym, s, &mu, &settings).unwrap().value;
    let sliced = n_beta_via_lemma1(&sym, s, &mu, &settings, 1e-9).unwrap();
    println!("\ntwo routes at {s}: direct {direct:.12}, sliced {sliced:.12}");

    // Littlewood inequality margins: beta(Re s)/c0 - N_beta >= 0
    let grid: Vec<Complex64> = (1..=6)
        .map(|j| Complex64::new(1.5 + 0.3 * j as f64, 0.2 * j as f64))
        .collect();
    let report = littlewood_check(&sym, &mu, &grid, &settings, 1e-9).unwrap();
    println!("\nLittlewood margins over a grid (all must be >= 0):");
    for row in report.rows.iter().take(3) {
        println!("  s = {}: margin {:.6}", row.s, row.margin);
    }
    println!("  violations: {}", report.violations);

    // valence: the largest multiplicity-weighted fiber seen on a grid
    println!(
        "\nobserved valence of s + 1 + 2^-s: {}",
        valence_estimate(&sym, &grid, &settings).unwrap()
    );
}
