//! Thin command-line front end over the library: per-module subcommands and
//! the `verify` suite runner. Thread count follows RAYON_NUM_THREADS.

use clap::{Args, Parser, Subcommand};
use dirichlet_ops::carleson::{
    lambda_mu_phi, lambda_phi, rho_mu_phi, rho_phi, theorem8_check,
    ScanSettings, Window,
};
use dirichlet_ops::config::ExperimentConfig;
use dirichlet_ops::counting::{n_beta, n_beta_via_lemma1, n_phi, SolverSettings};
use dirichlet_ops::corpus::{generate_corpus, CorpusConstraints};
use dirichlet_ops::error::{Error, Result};
use dirichlet_ops::operators::{
    compactness_report, essnorm_lower, essnorm_upper, hs_partial_sums, operator_matrix,
    operator_norm, TWindow,
};
use dirichlet_ops::spaces::{norm_amu2, norm_amu2k, norm_h2, norm_h2k};
use dirichlet_ops::suite::{run_suite, validate_for_space};
use dirichlet_ops::symbol::compose;
use dirichlet_ops::{DirichletPolynomial, MeasureDensity, Symbol};
use num_complex::Complex64;
use std::io::Write as _;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "dirichlet-ops",
    about = "Composition operators on Hardy and weighted Bergman spaces of Dirichlet series",
    after_help = "Thread count: set RAYON_NUM_THREADS. JSON arguments accept a file path or an inline literal starting with '{'."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SymbolMeasureArgs {
    /// Symbol JSON: {"c0": 1, "phi": {"coeffs": [[n, re, im], ...]}}
    #[arg(long)]
    symbol: String,
    /// Measure JSON: {"kind":"alpha","alpha":0.0} or tabulated
    #[arg(long, default_value = r#"{"kind":"alpha","alpha":0.0}"#)]
    measure: String,
    /// Half-plane offset used to certify c0 = 0 symbols
    #[arg(long, default_value_t = 0.5)]
    eta: f64,
    /// Output CSV path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full verification suite from a config file
    Verify {
        #[arg(long)]
        config: PathBuf,
        /// Override the config seed
        #[arg(long)]
        seed: Option<u64>,
        /// Override the output directory
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write a default config to the given path and exit
        #[arg(long)]
        write_default: bool,
    },
    /// Norms of a Dirichlet polynomial in H^2, A_mu^2, H^{2k}, A_mu^{2k}
    Norm {
        /// Polynomial JSON: {"coeffs": [[n, re, im], ...]}
        #[arg(long)]
        poly: String,
        #[arg(long, default_value = r#"{"kind":"alpha","alpha":0.0}"#)]
        measure: String,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, default_value_t = 100_000)]
        cutoff: u64,
    },
    /// Compose a Dirichlet polynomial with a symbol
    Compose {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        symbol: String,
        #[arg(long, default_value_t = 10_000)]
        cutoff: u64,
        /// Output JSON path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Nevanlinna counting functions over a target grid
    Counting {
        #[command(flatten)]
        common: SymbolMeasureArgs,
        /// Comma-separated targets "re:im,re:im,..."
        #[arg(long, value_name = "GRID")]
        s_grid: String,
        #[arg(long, default_value_t = 1e-6)]
        delta: f64,
        #[arg(long, default_value_t = 1e-11)]
        tol: f64,
    },
    /// Window pullback measures and the counting comparison
    Carleson {
        #[command(flatten)]
        common: SymbolMeasureArgs,
        /// Comma-separated window sizes
        #[arg(long, value_name = "LIST", default_value = "0.25,0.125,0.0625,0.03125")]
        h_grid: String,
        /// Window center for the comparison
        #[arg(long, default_value_t = 0.0)]
        t: f64,
        /// Comma-separated centers for the sup over positions
        #[arg(long, value_name = "LIST", default_value = "-1.0,-0.5,0.0,0.5,1.0")]
        t_grid: String,
    },
    /// Essential-norm upper and lower estimates
    Essnorm {
        #[command(flatten)]
        common: SymbolMeasureArgs,
        #[arg(long, default_value_t = 12)]
        sigma_levels: u32,
        #[arg(long, default_value_t = 0.0)]
        t_center: f64,
        #[arg(long, default_value_t = 5)]
        t_points: usize,
        /// Prime count of the partial kernels
        #[arg(long, default_value_t = 1)]
        l: usize,
    },
    /// Hilbert-Schmidt partial sums for a c0 = 0 symbol
    Hsnorm {
        #[command(flatten)]
        common: SymbolMeasureArgs,
        #[arg(long, value_name = "LIST", default_value = "100,1000,10000")]
        truncations: String,
    },
    /// Operator norms of matrix truncations
    Opnorm {
        #[command(flatten)]
        common: SymbolMeasureArgs,
        #[arg(long, value_name = "LIST", default_value = "64,256,1024")]
        truncations: String,
    },
    /// Counting-side compactness indicators and verdicts
    Compactness {
        #[command(flatten)]
        common: SymbolMeasureArgs,
        #[arg(long, default_value_t = 12)]
        sigma_levels: u32,
        #[arg(long, default_value_t = 0.0)]
        t_center: f64,
        #[arg(long, default_value_t = 3)]
        t_points: usize,
    },
    /// Generate a certified symbol corpus as JSON
    Corpus {
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        count: usize,
        /// Constraints JSON (defaults match the verification corpus)
        #[arg(long)]
        constraints: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read_json_arg<T: serde::de::DeserializeOwned>(arg: &str) -> Result<T> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg)?
    };
    Ok(serde_json::from_str(&text)?)
}

fn parse_f64_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|e| Error::InvalidConfig(format!("bad number {p:?}: {e}")))
        })
        .collect()
}

fn parse_u64_list(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<u64>()
                .map_err(|e| Error::InvalidConfig(format!("bad integer {p:?}: {e}")))
        })
        .collect()
}

fn parse_s_grid(s: &str) -> Result<Vec<Complex64>> {
    s.split(',')
        .map(|pair| {
            let (re, im) = pair
                .split_once(':')
                .ok_or_else(|| Error::InvalidConfig(format!("expected re:im, got {pair:?}")))?;
            Ok(Complex64::new(
                re.trim()
                    .parse()
                    .map_err(|e| Error::InvalidConfig(format!("bad re {re:?}: {e}")))?,
                im.trim()
                    .parse()
                    .map_err(|e| Error::InvalidConfig(format!("bad im {im:?}: {e}")))?,
            ))
        })
        .collect()
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => std::io::stdout().write_all(content.as_bytes())?,
    }
    Ok(())
}

fn load_symbol(args: &SymbolMeasureArgs) -> Result<(Symbol, MeasureDensity)> {
    let mut sym: Symbol = read_json_arg(&args.symbol)?;
    validate_for_space(&mut sym, args.eta)?;
    let mu: MeasureDensity = read_json_arg(&args.measure)?;
    Ok((sym, mu))
}

fn sigma_grid(levels: u32) -> Vec<f64> {
    (1..=levels).map(|j| 2f64.powi(-(j as i32))).collect()
}

fn real_main() -> Result<i32> {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify {
            config,
            seed,
            out,
            write_default,
        } => {
            if write_default {
                ExperimentConfig::default().save(&config)?;
                println!("wrote default config to {}", config.display());
                return Ok(0);
            }
            let mut cfg = ExperimentConfig::load(&config)?;
            if let Some(seed) = seed {
                cfg.seed = seed;
            }
            if let Some(out) = out {
                cfg.output.dir = out;
            }
            let report = run_suite(&cfg)?;
            print!("{}", report.summary_text());
            Ok(if report.all_passed() { 0 } else { 1 })
        }
        Command::Norm {
            poly,
            measure,
            k,
            cutoff,
        } => {
            let f: DirichletPolynomial = read_json_arg(&poly)?;
            let mu: MeasureDensity = read_json_arg(&measure)?;
            println!("h2 = {}", norm_h2(&f));
            println!("amu2 = {}", norm_amu2(&f, &mu)?);
            if k > 1 {
                println!("h2k(k={k}) = {}", norm_h2k(&f, k, cutoff)?);
                println!("amu2k(k={k}) = {}", norm_amu2k(&f, &mu, k, cutoff)?);
            }
            Ok(0)
        }
        Command::Compose {
            poly,
            symbol,
            cutoff,
            out,
        } => {
            let f: DirichletPolynomial = read_json_arg(&poly)?;
            let sym: Symbol = read_json_arg(&symbol)?;
            let result = compose(&f, &sym, cutoff)?;
            let mut doc = serde_json::to_value(&result.poly)?;
            doc.as_object_mut().unwrap().insert(
                "dropped_l1".into(),
                serde_json::to_value(result.loss.l1)?,
            );
            doc.as_object_mut()
                .unwrap()
                .insert("tail_l1".into(), serde_json::to_value(result.tail_l1)?);
            emit(&out, &format!("{}\n", serde_json::to_string(&doc)?))?;
            Ok(0)
        }
        Command::Counting {
            common,
            s_grid,
            delta,
            tol,
        } => {
            let (sym, mu) = load_symbol(&common)?;
            let targets = parse_s_grid(&s_grid)?;
            let settings = SolverSettings {
                delta,
                tol,
                ..SolverSettings::default()
            };
            let mut csv =
                String::from("re_s,im_s,n_phi,n_beta,n_beta_lemma1,margin,root_count\n");
            for s in targets {
                let np = n_phi(&sym, s, &settings)?;
                let nb = n_beta(&sym, s, &mu, &settings)?;
                let via = n_beta_via_lemma1(&sym, s, &mu, &settings, 5e-8)?;
                let margin = mu.beta(s.re) / sym.c0() as f64 - nb.value;
                csv.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    s.re, s.im, np.value, nb.value, via, margin, np.root_count
                ));
            }
            emit(&common.out, &csv)?;
            Ok(0)
        }
        Command::Carleson {
            common,
            h_grid,
            t,
            t_grid,
        } => {
            let (sym, mu) = load_symbol(&common)?;
            let h_grid = parse_f64_list(&h_grid)?;
            let t_grid = parse_f64_list(&t_grid)?;
            let scan = ScanSettings::default();
            let solver = SolverSettings::default();
            let comparison = theorem8_check(&sym, &mu, &h_grid, t, &scan, &solver)?;
            let mut csv = String::from(
                "h,t,lambda,lambda_mu,rho,rho_mu,sup_N,sup_Nbeta,ratio_i,ratio_ii\n",
            );
            for row in &comparison.rows {
                let window = Window::new(t, row.h);
                let lam = lambda_phi(&sym, &window, &scan)?.value;
                let lam_mu = lambda_mu_phi(&sym, &mu, &window, &scan)?.value;
                let rho = rho_phi(&sym, row.h, &t_grid, &scan)?.value;
                let rho_mu = rho_mu_phi(&sym, &mu, row.h, &t_grid, &scan)?.value;
                csv.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{}\n",
                    row.h,
                    t,
                    lam,
                    lam_mu,
                    rho,
                    rho_mu,
                    row.sup_n_phi,
                    row.sup_n_beta,
                    row.ratio_line,
                    row.ratio_plane
                ));
            }
            emit(&common.out, &csv)?;
            Ok(0)
        }
        Command::Essnorm {
            common,
            sigma_levels,
            t_center,
            t_points,
            l,
        } => {
            let (sym, mu) = load_symbol(&common)?;
            let grid = sigma_grid(sigma_levels);
            let window = TWindow {
                center: t_center,
                half_width: None,
                points: t_points,
            };
            let upper = essnorm_upper(&sym, &mu, &grid, &window, &SolverSettings::default())?;
            let lower = essnorm_lower(&sym, &mu, l, &grid, &window, Default::default())?;
            let mut csv = String::from("sigma,t,N_ratio,kernel_ratio\n");
            for (up, low) in upper.rows.iter().zip(lower.rows.iter()) {
                csv.push_str(&format!(
                    "{},{},{},{}\n",
                    up.sigma, up.t, up.n_ratio, low.kernel_ratio
                ));
            }
            csv.push_str(&format!(
                "# upper_estimate={} lower_estimate={} factor={}\n",
                upper.estimate, lower.estimate, upper.factor
            ));
            emit(&common.out, &csv)?;
            Ok(0)
        }
        Command::Hsnorm {
            common,
            truncations,
        } => {
            let (sym, mu) = load_symbol(&common)?;
            let truncations = parse_u64_list(&truncations)?;
            let sums = hs_partial_sums(&sym, &mu, &truncations)?;
            let mut csv = String::from("truncation,partial_sum,tail_bound\n");
            for row in &sums {
                csv.push_str(&format!(
                    "{},{},{}\n",
                    row.truncation, row.partial, row.tail_bound
                ));
            }
            emit(&common.out, &csv)?;
            Ok(0)
        }
        Command::Opnorm {
            common,
            truncations,
        } => {
            let (sym, mu) = load_symbol(&common)?;
            let truncations = parse_u64_list(&truncations)?;
            let mut csv = String::from("truncation,operator_norm\n");
            for dim in truncations {
                let m = operator_matrix(&sym, &mu, dim)?;
                csv.push_str(&format!("{},{}\n", dim, operator_norm(&m, 1e-11, 50_000)?));
            }
            emit(&common.out, &csv)?;
            Ok(0)
        }
        Command::Compactness {
            common,
            sigma_levels,
            t_center,
            t_points,
        } => {
            let (sym, mu) = load_symbol(&common)?;
            let grid = sigma_grid(sigma_levels);
            let window = TWindow {
                center: t_center,
                half_width: None,
                points: t_points,
            };
            let rep = compactness_report(&sym, &mu, &grid, &window, &SolverSettings::default())?;
            let mut csv =
                String::from("sigma,re_ratio,nphi_ratio,nbeta_ratio,bergman_verdict,hardy_verdict\n");
            for row in &rep.rows {
                csv.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    row.sigma,
                    row.re_ratio,
                    row.nphi_ratio,
                    row.nbeta_ratio,
                    rep.bergman_verdict(),
                    rep.hardy_verdict()
                ));
            }
            emit(&common.out, &csv)?;
            Ok(0)
        }
        Command::Corpus {
            seed,
            count,
            constraints,
            out,
        } => {
            let constraints: CorpusConstraints = match constraints {
                Some(c) => read_json_arg(&c)?,
                None => CorpusConstraints::default(),
            };
            let corpus = generate_corpus(seed, count, &constraints)?;
            emit(&out, &format!("{}\n", serde_json::to_string_pretty(&corpus)?))?;
            Ok(0)
        }
    }
}

fn main() {
    match real_main() {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}
