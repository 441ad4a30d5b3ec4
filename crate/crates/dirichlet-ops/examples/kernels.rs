//! Reproducing kernels of the weighted space: point evaluation by pairing,
//! partial kernels of bounded prime order (convergent up to the boundary),
//! and the adjoint identity that moves kernels through the operator.
//!
//! ```text
//! cargo run --example kernels
//! ```

use dirichlet_ops::arith::smooth_indices;
use dirichlet_ops::corpus::{generate_corpus, CorpusConstraints};
use dirichlet_ops::measure::MeasureDensity;
use dirichlet_ops::poly::DirichletPolynomial;
use dirichlet_ops::spaces::{
    kernel, kernel_coefficient, pairing, partial_kernel_norm_sq, KernelCutoff,
};
use dirichlet_ops::symbol::compose;
use num_complex::Complex64;

fn main() {
    let mu = MeasureDensity::alpha(0.0).unwrap();

    // the reproducing property: pairing f against the kernel coefficients
    // n^{-conj(s)}/w_h(n) with the weighted inner product returns f(s)
    let f = DirichletPolynomial::from_terms([
        (1u64, Complex64::new(0.2, 0.1)),
        (3u64, Complex64::new(-1.0, 0.4)),
        (8u64, Complex64::new(0.5, 0.0)),
    ])
    .unwrap();
    let s = Complex64::new(0.9, -2.3);
    let kernel_poly = DirichletPolynomial::from_terms(
        f.support()
            .map(|n| (n, kernel_coefficient(n, s, &mu).unwrap()))
            .collect::<Vec<_>>(),
    )
    .unwrap();
    let paired = pairing(&f, &kernel_poly, &mu).unwrap();
    println!("reproducing property: <f, K_s> = {paired}");
    println!("direct evaluation:    f(s)     = {}", f.evaluate(s));

    // the full kernel needs Re(s) + Re(w) > 1; the truncated sum carries a
    // rigorous tail bound
    let k = kernel(Complex64::new(0.8, 1.1), Complex64::new(0.7, -0.4), &mu, 5000).unwrap();
    println!("\nfull kernel at (0.8+1.1i, 0.7-0.4i): {} (tail <= {:.1e})", k.value, k.tail_bound);

    // partial kernels converge on the whole right half-plane; near the
    // boundary the sums run over smooth indices in the log domain
    println!("\npartial kernel norms ||K^1_sigma||^2 as sigma -> 0:");
    for j in [2, 6, 10] {
        let sigma = 2f64.powi(-j);
        let v = partial_kernel_norm_sq(1, Complex64::new(sigma, 0.0), &mu, KernelCutoff::default())
            .unwrap();
        println!(
            "  sigma 2^-{j:<2}: {:.6e}  ({} terms, tail <= {:.1e})",
            v.value.re, v.terms, v.tail_bound
        );
    }

    // adjoint identity: <C_Phi f, K^l_s> = <f, K^l_{Phi(s)}> for symbols
    // with p_l-smooth support
    let sym = &generate_corpus(
        1,
        1,
        &CorpusConstraints {
            max_index: 8,
            support_size_max: 2,
            coefficient_scale: 0.5,
            ..CorpusConstraints::default()
        },
    )
    .unwrap()[0];
    let cutoff = 1u64 << 30;
    let smooth: Vec<u64> = smooth_indices(1, cutoff);
    let kernel_at = |point: Complex64| {
        DirichletPolynomial::from_terms(
            smooth
                .iter()
                .map(|&n| (n, kernel_coefficient(n, point, &mu).unwrap()))
                .collect::<Vec<_>>(),
        )
        .unwrap()
    };
    let s = Complex64::new(0.45, 0.8);
    let lhs = pairing(&compose(&f, sym, cutoff).unwrap().poly, &kernel_at(s), &mu).unwrap();
    let rhs = pairing(&f, &kernel_at(sym.evaluate(s)), &mu).unwrap();
    println!("\nadjoint identity: <C f, K_s>       = {lhs}");
    println!("                  <f, K_(Phi(s))>  = {rhs}");
    println!("                  difference        = {:.2e}", (lhs - rhs).norm());
}
