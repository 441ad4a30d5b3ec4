//! Composition operators as truncated matrices: for every certified symbol
//! with `c0 >= 1` the operator is a contraction, and truncated norms grow
//! monotonically toward it.
//!
//! ```text
//! cargo run --example contraction
//! ```

use dirichlet_ops::corpus::{generate_corpus, CorpusConstraints};
use dirichlet_ops::measure::MeasureDensity;
use dirichlet_ops::operators::{operator_matrix, operator_norm};
use dirichlet_ops::symbol::Symbol;

fn main() {
    let mu = MeasureDensity::alpha(0.0).unwrap();

    // structured cases first: the identity is unitary on the basis, a shift
    // is diagonal, a double dilation is a scaled sub-permutation
    let shift = {
        let mut sym = Symbol::new(
            1,
            dirichlet_ops::DirichletPolynomial::from_real_terms([(1, 1.0)]).unwrap(),
        );
        dirichlet_ops::suite::validate_for_space(&mut sym, 0.5).unwrap();
        sym
    };
    for (name, sym) in [
        ("identity s", Symbol::dilation(1)),
        ("double dilation 2s", Symbol::dilation(2)),
        ("shift s + 1", shift),
    ] {
        let m = operator_matrix(&sym, &mu, 256).unwrap();
        let norm = operator_norm(&m, 1e-11, 50_000).unwrap();
        println!("{name:<20} truncation 256: norm {norm:.12}");
    }

    // a generated corpus: norms stay below 1 + eps and never decrease in N
    let corpus = generate_corpus(42, 6, &CorpusConstraints::default()).unwrap();
    println!("\ncorpus symbols across truncations 64 / 256 / 1024:");
    for (i, sym) in corpus.iter().enumerate() {
        let mut norms = Vec::new();
        for dim in [64u64, 256, 1024] {
            let m = operator_matrix(sym, &mu, dim).unwrap();
            norms.push(operator_norm(&m, 1e-11, 50_000).unwrap());
        }
        let monotone = norms.windows(2).all(|w| w[1] >= w[0] - 1e-9);
        println!(
            "  symbol {i} (c0 = {}): {:.9} / {:.9} / {:.9}  nondecreasing: {monotone}",
            sym.c0(),
            norms[0],
            norms[1],
            norms[2]
        );
        assert!(norms.iter().all(|&n| n <= 1.0 + 1e-6));
    }
}
