//! Experiment configuration: a versioned JSON schema binding symbols, a
//! measure, grids, tolerances, and output destinations.

use crate::corpus::CorpusConstraints;
use crate::error::{Error, Result};
use crate::measure::MeasureDensity;
use crate::symbol::Symbol;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

pub const CONFIG_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorpusConfig {
    pub count: usize,
    #[serde(flatten)]
    pub constraints: CorpusConstraints,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            count: 20,
            constraints: CorpusConstraints::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct GridConfig {
    /// Geometric sigma grid 2^{-1} .. 2^{-levels}.
    pub sigma_levels: u32,
    /// Geometric window-size grid 2^{-1} .. 2^{-levels}.
    pub h_levels: u32,
    /// Matrix truncations for contraction checks.
    pub truncations: Vec<u64>,
    /// Truncations for Hilbert-Schmidt partial sums.
    pub hs_truncations: Vec<u64>,
    /// Vertical window center and sample count for limsup sweeps.
    pub t_center: f64,
    pub t_points: usize,
    /// Targets per symbol for inequality grids.
    pub s_grid_points: usize,
    /// Centers for the sup over window positions.
    pub rho_t_grid: Vec<f64>,
    /// Monte-Carlo sample count.
    pub mc_samples: usize,
    /// Targets per symbol for the slicing cross-check (each target costs a
    /// quadrature of preimage solves).
    pub lemma1_points: usize,
    /// How many corpus symbols enter the window-measure sweeps.
    pub carleson_corpus_limit: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            sigma_levels: 12,
            h_levels: 10,
            truncations: vec![64, 256, 1024],
            hs_truncations: vec![100, 1000, 10_000],
            t_center: 0.0,
            t_points: 5,
            s_grid_points: 50,
            rho_t_grid: vec![-1.0, -0.5, 0.0, 0.5, 1.0],
            mc_samples: 100_000,
            lemma1_points: 10,
            carleson_corpus_limit: 4,
        }
    }
}

impl GridConfig {
    pub fn sigma_grid(&self) -> Vec<f64> {
        (1..=self.sigma_levels).map(|j| 2f64.powi(-(j as i32))).collect()
    }

    pub fn h_grid(&self) -> Vec<f64> {
        (1..=self.h_levels).map(|j| 2f64.powi(-(j as i32))).collect()
    }

    /// The inequality target grid: `s_grid_points` points spread over
    /// sigma levels and vertical offsets.
    pub fn s_grid(&self) -> Vec<num_complex::Complex64> {
        let per_level = 5usize;
        let levels = self.s_grid_points.div_ceil(per_level);
        let mut out = Vec::with_capacity(self.s_grid_points);
        'outer: for j in 0..levels {
            let sigma = 2f64.powf(-(j as f64) * 8.0 / levels as f64);
            for k in 0..per_level {
                let t = self.t_center + (k as f64 - (per_level - 1) as f64 / 2.0) * 0.8;
                out.push(num_complex::Complex64::new(sigma, t));
                if out.len() == self.s_grid_points {
                    break 'outer;
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    pub contraction_slack: f64,
    pub littlewood: f64,
    /// Relative agreement of the two counting routes.
    pub lemma1_rel: f64,
    pub norm_path: f64,
    pub adjoint: f64,
    pub weight_identity_rel: f64,
    pub mc_z_max: f64,
    /// Final HS tail bound must drop below this fraction of the sum.
    pub hs_tail_rel: f64,
    pub kappa_threshold: f64,
    pub kappa_probe_eta: f64,
    /// Cap on empirical counting-vs-measure ratios.
    pub comparison_ratio_cap: f64,
    /// Half-plane offset assumed for c0 = 0 symbols given without one.
    pub eta: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            contraction_slack: 1e-6,
            littlewood: 1e-9,
            lemma1_rel: 1e-6,
            norm_path: 1e-10,
            adjoint: 1e-8,
            weight_identity_rel: 1e-8,
            mc_z_max: 3.0,
            hs_tail_rel: 1e-3,
            kappa_threshold: 0.05,
            kappa_probe_eta: 0.01,
            comparison_ratio_cap: 1e3,
            eta: 0.5,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct OutputConfig {
    pub dir: PathBuf,
    pub write_csv: bool,
    pub write_json: bool,
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig {
            dir: PathBuf::from("out"),
            write_csv: true,
            write_json: true,
        }
    }
}

/// Everything a verification run needs, reproducible from the seed.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub version: u32,
    #[serde(default = "default_seed")]
    pub seed: u64,
    pub measure: MeasureDensity,
    /// Explicit symbols checked alongside the generated corpus.
    #[serde(default)]
    pub symbols: Vec<Symbol>,
    #[serde(default)]
    pub corpus: CorpusConfig,
    #[serde(default)]
    pub grids: GridConfig,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub output: OutputConfig,
}

fn default_seed() -> u64 {
    0x5eed
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            version: CONFIG_VERSION,
            seed: default_seed(),
            measure: MeasureDensity::alpha(0.0).expect("alpha = 0 is valid"),
            symbols: canonical_symbols(),
            corpus: CorpusConfig::default(),
            grids: GridConfig::default(),
            tolerances: Tolerances::default(),
            output: OutputConfig::default(),
        }
    }
}

/// The standing examples: the identity, the double dilation, a compact
/// shifted symbol, and a Hilbert-Schmidt example with `c0 = 0`.
pub fn canonical_symbols() -> Vec<Symbol> {
    use crate::poly::DirichletPolynomial;
    vec![
        Symbol::new(1, DirichletPolynomial::zero()),
        Symbol::new(2, DirichletPolynomial::zero()),
        Symbol::new(
            1,
            DirichletPolynomial::from_real_terms([(1, 2.0), (2, -1.0)]).unwrap(),
        ),
        Symbol::new(
            0,
            DirichletPolynomial::from_real_terms([(1, 1.25), (2, 0.25)]).unwrap(),
        ),
    ]
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let config: ExperimentConfig = serde_json::from_str(&text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, serde_json::to_string_pretty(self)?)?;
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.version != CONFIG_VERSION {
            return Err(Error::InvalidConfig(format!(
                "config version {} unsupported (expected {CONFIG_VERSION})",
                self.version
            )));
        }
        if self.grids.sigma_levels == 0 || self.grids.h_levels == 0 {
            return Err(Error::InvalidConfig("grids must be nonempty".into()));
        }
        if self.grids.truncations.is_empty() || self.grids.hs_truncations.is_empty() {
            return Err(Error::InvalidConfig("truncation lists must be nonempty".into()));
        }
        if self.grids.rho_t_grid.is_empty() {
            return Err(Error::InvalidConfig("rho center grid must be nonempty".into()));
        }
        let t = &self.tolerances;
        for (name, v) in [
            ("contraction_slack", t.contraction_slack),
            ("littlewood", t.littlewood),
            ("lemma1_rel", t.lemma1_rel),
            ("norm_path", t.norm_path),
            ("adjoint", t.adjoint),
            ("weight_identity_rel", t.weight_identity_rel),
            ("mc_z_max", t.mc_z_max),
            ("hs_tail_rel", t.hs_tail_rel),
            ("kappa_threshold", t.kappa_threshold),
            ("comparison_ratio_cap", t.comparison_ratio_cap),
        ] {
            if v.is_nan() || v <= 0.0 {
                return Err(Error::InvalidConfig(format!("tolerance {name} must be > 0")));
            }
        }
        Ok(())
    }
}
