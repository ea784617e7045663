//! Declarative sweeps over (λ, kT) with deterministic CSV output.
//!
//! CSV layout: two `#` header lines carrying the JSON-encoded config and run
//! metadata, then `lambda,kT,quantity,pair,value,flags`. Numbers are written
//! with 9 significant digits, rows are sorted by (quantity, pair, lambda, kT)
//! and lines end in LF. Quantities that only exist at T = 0 (GE and the
//! threshold temperatures) are written with kT = 0.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use crate::bipartite::pair_eof;
use crate::error::{invalid, Error, Result};
use crate::geometric::{geometric_entanglement, GeResult, GeSearchConfig, RNG_ALGORITHM};
use crate::hamiltonian::Spectrum;
use crate::lattice::{build_edges, LatticeKind, LatticeSpec, N_SITES};
use crate::thermal::{make_ensemble, thermal_energy_gap};
use crate::threshold::{threshold_multipartite, threshold_pair, ScanConfig};

pub const CSV_HEADER: &str = "lambda,kT,quantity,pair,value,flags";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Quantity {
    Ef,
    Ge,
    DeltaE,
    TthPair,
    TthMe,
}

impl Quantity {
    pub const ALL: [Quantity; 5] = [Quantity::Ef, Quantity::Ge, Quantity::DeltaE, Quantity::TthPair, Quantity::TthMe];

    pub fn name(&self) -> &'static str {
        match self {
            Quantity::Ef => "EF",
            Quantity::Ge => "GE",
            Quantity::DeltaE => "DELTA_E",
            Quantity::TthPair => "TTH_PAIR",
            Quantity::TthMe => "TTH_ME",
        }
    }

    pub fn is_threshold(&self) -> bool {
        matches!(self, Quantity::TthPair | Quantity::TthMe)
    }

    fn per_pair(&self) -> bool {
        matches!(self, Quantity::Ef | Quantity::TthPair)
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let upper = s.trim().to_ascii_uppercase();
        Quantity::ALL
            .into_iter()
            .find(|q| q.name() == upper)
            .ok_or_else(|| Error::Invalid(format!("unknown quantity `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    #[default]
    Linear,
    Geometric,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
    #[serde(default)]
    pub spacing: Spacing,
}

impl Grid {
    pub fn linear(min: f64, max: f64, steps: usize) -> Self {
        Grid { min, max, steps, spacing: Spacing::Linear }
    }

    pub fn single(value: f64) -> Self {
        Grid::linear(value, value, 1)
    }

    fn problems(&self, name: &str, out: &mut Vec<String>) {
        if self.steps == 0 {
            out.push(format!("{name}: steps must be >= 1"));
        }
        if !self.min.is_finite() || !self.max.is_finite() {
            out.push(format!("{name}: bounds must be finite"));
        } else if self.min > self.max {
            out.push(format!("{name}: min {} exceeds max {}", self.min, self.max));
        }
        if self.min < 0.0 {
            out.push(format!("{name}: values must be >= 0"));
        }
        if self.spacing == Spacing::Geometric && !(self.min > 0.0) {
            out.push(format!("{name}: geometric spacing needs min > 0"));
        }
    }

    pub fn values(&self) -> Vec<f64> {
        if self.steps <= 1 {
            return vec![self.min];
        }
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|k| {
                let t = k as f64 / last;
                match (k, self.spacing) {
                    (0, _) => self.min,
                    (k, _) if k + 1 == self.steps => self.max,
                    (_, Spacing::Linear) => self.min + (self.max - self.min) * t,
                    (_, Spacing::Geometric) => self.min * (self.max / self.min).powf(t),
                }
            })
            .collect()
    }
}

/// Parses `min:max:steps[:geom]`, or a single number for a one-point grid.
impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        let num = |x: &str| x.parse::<f64>().map_err(|_| Error::Invalid(format!("bad number `{x}` in grid `{s}`")));
        match parts.as_slice() {
            [v] => Ok(Grid::single(num(v)?)),
            [min, max, steps] | [min, max, steps, _] => {
                let steps = steps.parse().map_err(|_| Error::Invalid(format!("bad step count in grid `{s}`")))?;
                let spacing = match parts.get(3) {
                    None => Spacing::Linear,
                    Some(&"geom") | Some(&"geometric") => Spacing::Geometric,
                    Some(&"lin") | Some(&"linear") => Spacing::Linear,
                    Some(other) => return invalid(format!("unknown grid spacing `{other}`")),
                };
                Ok(Grid { min: num(min)?, max: num(max)?, steps, spacing })
            }
            _ => invalid(format!("grid `{s}` is not min:max:steps[:geom]")),
        }
    }
}

/// Parses `"1,2;1,4;1,7"`.
pub fn parse_pairs(s: &str) -> Result<Vec<(usize, usize)>> {
    s.split(';')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            let (i, j) = p.split_once(',').ok_or_else(|| Error::Invalid(format!("pair `{p}` is not i,j")))?;
            let i = i.trim().parse().map_err(|_| Error::Invalid(format!("bad site in pair `{p}`")))?;
            let j = j.trim().parse().map_err(|_| Error::Invalid(format!("bad site in pair `{p}`")))?;
            Ok((i, j))
        })
        .collect()
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub lattice: LatticeKind,
    pub gamma: f64,
    #[serde(default)]
    pub alpha: f64,
    pub lambda_grid: Grid,
    /// Absent means a single kT = 0 slice.
    #[serde(default)]
    pub kt_grid: Option<Grid>,
    #[serde(default)]
    pub pairs: Vec<(usize, usize)>,
    pub quantities: Vec<Quantity>,
    /// The search seed is always taken from [`SweepConfig::seed`].
    #[serde(default)]
    pub ge: GeSearchConfig,
    #[serde(default)]
    pub threshold: ScanConfig,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub out_path: Option<String>,
    /// Reuse one spectrum per λ across the kT grid.
    #[serde(default = "yes")]
    pub reuse_spectra: bool,
}

impl SweepConfig {
    pub fn new(lattice: LatticeKind, gamma: f64, lambda_grid: Grid, quantities: Vec<Quantity>) -> Self {
        SweepConfig {
            lattice,
            gamma,
            alpha: 0.0,
            lambda_grid,
            kt_grid: None,
            pairs: Vec::new(),
            quantities,
            ge: GeSearchConfig::default(),
            threshold: ScanConfig::default(),
            seed: 0,
            out_path: None,
            reuse_spectra: true,
        }
    }

    /// Checks everything at once and reports all problems together.
    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        if !(0.0..=1.0).contains(&self.gamma) {
            problems.push(format!("gamma must lie in [0,1], got {}", self.gamma));
        }
        if !(self.alpha > -1.0) || !self.alpha.is_finite() {
            problems.push(format!("alpha must be > -1, got {}", self.alpha));
        }
        self.lambda_grid.problems("lambda grid", &mut problems);
        if let Some(kt) = &self.kt_grid {
            kt.problems("kT grid", &mut problems);
        }
        if self.quantities.is_empty() {
            problems.push("at least one quantity is required".into());
        }
        if self.quantities.iter().any(Quantity::per_pair) && self.pairs.is_empty() {
            problems.push("EF and TTH_PAIR need at least one pair".into());
        }
        for &(i, j) in &self.pairs {
            if i == j || !(1..=N_SITES).contains(&i) || !(1..=N_SITES).contains(&j) {
                problems.push(format!("invalid pair ({i},{j}); sites are 1..=7 and must differ"));
            }
        }
        if let Err(e) = self.ge.validate() {
            problems.push(e.to_string());
        }
        if let Err(e) = self.threshold.validate() {
            problems.push(e.to_string());
        }
        if problems.is_empty() {
            Ok(())
        } else {
            invalid(problems.join("; "))
        }
    }

    pub fn ge_config(&self) -> GeSearchConfig {
        GeSearchConfig { seed: self.seed, ..self.ge }
    }

    pub fn kt_values(&self) -> Vec<f64> {
        self.kt_grid.map_or_else(|| vec![0.0], |g| g.values())
    }

    fn sorted_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs: Vec<_> = self.pairs.iter().map(|&(i, j)| (i.min(j), i.max(j))).collect();
        pairs.sort_unstable();
        pairs.dedup();
        pairs
    }

    fn wants(&self, q: Quantity) -> bool {
        self.quantities.contains(&q)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub lambda: f64,
    pub kt: f64,
    pub quantity: Quantity,
    pub pair: Option<(usize, usize)>,
    pub value: f64,
    /// `|`-separated flag names, empty when none.
    pub flags: String,
}

impl Row {
    fn new(lambda: f64, kt: f64, quantity: Quantity, pair: Option<(usize, usize)>, value: f64, flags: &[&str]) -> Self {
        Row {
            lambda: round_sig9(lambda),
            kt: round_sig9(kt),
            quantity,
            pair,
            value: round_sig9(value),
            flags: flags.join("|"),
        }
    }

    fn sort_key_cmp(&self, other: &Row) -> std::cmp::Ordering {
        self.quantity
            .cmp(&other.quantity)
            .then(self.pair.cmp(&other.pair))
            .then(self.lambda.total_cmp(&other.lambda))
            .then(self.kt.total_cmp(&other.kt))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointMeta {
    pub lambda: f64,
    pub ground_degeneracy: usize,
    /// Whether the GE optimum needed a negative amplitude, when GE was run.
    pub ge_sign_flag: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepMetadata {
    pub version: String,
    pub seed: u64,
    pub rng: String,
    pub warnings: Vec<String>,
    pub points: Vec<PointMeta>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub config: SweepConfig,
    pub meta: SweepMetadata,
    pub rows: Vec<Row>,
}

fn format_sig9(x: f64) -> String {
    format!("{x:.8e}")
}

/// Rounds to the 9 significant digits written to CSV.
pub fn round_sig9(x: f64) -> f64 {
    if x.is_finite() {
        format_sig9(x).parse().unwrap_or(x)
    } else {
        x
    }
}

fn degenerate_flag(g0: usize) -> &'static [&'static str] {
    if g0 > 1 {
        &["degenerate_ground"]
    } else {
        &[]
    }
}

fn evaluate_point(cfg: &SweepConfig, lambda: f64, pairs: &[(usize, usize)]) -> Result<(Vec<Row>, PointMeta)> {
    let spec = LatticeSpec { kind: cfg.lattice, alpha: cfg.alpha, gamma: cfg.gamma, lambda };
    let spectrum = Spectrum::of(&spec)?;
    let g0 = spectrum.ground_degeneracy;
    let mut rows = Vec::new();

    if cfg.wants(Quantity::Ef) || cfg.wants(Quantity::DeltaE) {
        for kt in cfg.kt_values() {
            let fresh;
            let spectrum = if cfg.reuse_spectra {
                &spectrum
            } else {
                fresh = Spectrum::of(&spec)?;
                &fresh
            };
            let ens = make_ensemble(spectrum, kt)?;
            let flags = if kt == 0.0 { degenerate_flag(g0) } else { &[] };
            if cfg.wants(Quantity::Ef) {
                for &(i, j) in pairs {
                    let ef = pair_eof(spectrum, &ens, i, j)?;
                    rows.push(Row::new(lambda, kt, Quantity::Ef, Some((i, j)), ef, flags));
                }
            }
            if cfg.wants(Quantity::DeltaE) {
                rows.push(Row::new(lambda, kt, Quantity::DeltaE, None, thermal_energy_gap(spectrum, &ens), flags));
            }
        }
    }

    let mut ge: Option<GeResult> = None;
    if cfg.wants(Quantity::Ge) || cfg.wants(Quantity::TthMe) {
        let r = geometric_entanglement(&spectrum.ground_state(), &cfg.ge_config())?;
        if cfg.wants(Quantity::Ge) {
            let mut flags = degenerate_flag(g0).to_vec();
            if r.best.sign_flag_used() {
                flags.push("sign_flag");
            }
            rows.push(Row::new(lambda, 0.0, Quantity::Ge, None, r.g, &flags));
        }
        ge = Some(r);
    }

    if cfg.wants(Quantity::TthPair) {
        for &(i, j) in pairs {
            let t = threshold_pair(&spectrum, i, j, &cfg.threshold)?;
            rows.push(Row::new(lambda, 0.0, Quantity::TthPair, Some((i, j)), t.t_th, &t.flags.labels()));
        }
    }
    if let (true, Some(r)) = (cfg.wants(Quantity::TthMe), &ge) {
        let t = threshold_multipartite(&spectrum, r.g, cfg.threshold.tol)?;
        rows.push(Row::new(lambda, 0.0, Quantity::TthMe, None, t.t_th, &t.flags.labels()));
    }

    let meta = PointMeta {
        lambda: round_sig9(lambda),
        ground_degeneracy: g0,
        ge_sign_flag: ge.map(|r| r.best.sign_flag_used()),
    };
    Ok((rows, meta))
}

/// Evaluates every requested quantity on the (λ, kT) grid. Points are
/// processed in parallel on the current rayon pool; output order does not
/// depend on scheduling.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepResult> {
    cfg.validate()?;
    let warnings: Vec<String> = build_edges(cfg.lattice, cfg.alpha)?.warning.into_iter().collect();
    let pairs = cfg.sorted_pairs();
    let per_point: Vec<(Vec<Row>, PointMeta)> = cfg
        .lambda_grid
        .values()
        .into_par_iter()
        .map(|lambda| evaluate_point(cfg, lambda, &pairs))
        .collect::<Result<_>>()?;

    let mut rows = Vec::new();
    let mut points = Vec::new();
    for (r, m) in per_point {
        rows.extend(r);
        points.push(m);
    }
    rows.sort_by(Row::sort_key_cmp);
    let meta = SweepMetadata {
        version: env!("CARGO_PKG_VERSION").to_string(),
        seed: cfg.seed,
        rng: RNG_ALGORITHM.to_string(),
        warnings,
        points,
    };
    Ok(SweepResult { config: cfg.clone(), meta, rows })
}

/// Threshold temperatures only: one row per (λ, quantity[, pair]).
pub fn run_threshold_curve(cfg: &SweepConfig) -> Result<SweepResult> {
    if !cfg.quantities.iter().any(Quantity::is_threshold) {
        return invalid("threshold curve needs TTH_PAIR or TTH_ME among the quantities");
    }
    let mut cfg = cfg.clone();
    cfg.quantities.retain(Quantity::is_threshold);
    cfg.kt_grid = None;
    run_sweep(&cfg)
}

impl SweepResult {
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "# config: {}", serde_json::to_string(&self.config)?)?;
        writeln!(w, "# meta: {}", serde_json::to_string(&self.meta)?)?;
        writeln!(w, "{CSV_HEADER}")?;
        for r in &self.rows {
            let pair = r.pair.map_or_else(|| "-".to_string(), |(i, j)| format!("{i}-{j}"));
            writeln!(
                w,
                "{},{},{},{},{},{}",
                format_sig9(r.lambda),
                format_sig9(r.kt),
                r.quantity,
                pair,
                format_sig9(r.value),
                r.flags
            )?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory cannot fail");
        String::from_utf8(buf).expect("csv is utf-8")
    }

    pub fn parse_csv(text: &str) -> Result<SweepResult> {
        let mut config = None;
        let mut meta = None;
        let mut rows = Vec::new();
        let mut seen_header = false;
        for (lineno, line) in text.lines().enumerate() {
            let bad = |what: &str| Error::Invalid(format!("line {}: {what}", lineno + 1));
            if let Some(json) = line.strip_prefix("# config: ") {
                config = Some(serde_json::from_str(json)?);
            } else if let Some(json) = line.strip_prefix("# meta: ") {
                meta = Some(serde_json::from_str(json)?);
            } else if line.starts_with('#') || line.is_empty() {
                continue;
            } else if line == CSV_HEADER {
                seen_header = true;
            } else {
                if !seen_header {
                    return Err(bad("data before column header"));
                }
                let f: Vec<&str> = line.split(',').collect();
                if f.len() != 6 {
                    return Err(bad("expected 6 columns"));
                }
                let num = |s: &str| s.parse::<f64>().map_err(|_| bad("bad number"));
                let pair = match f[3] {
                    "-" => None,
                    p => {
                        let (i, j) = p.split_once('-').ok_or_else(|| bad("bad pair"))?;
                        Some((i.parse().map_err(|_| bad("bad pair"))?, j.parse().map_err(|_| bad("bad pair"))?))
                    }
                };
                rows.push(Row {
                    lambda: num(f[0])?,
                    kt: num(f[1])?,
                    quantity: f[2].parse()?,
                    pair,
                    value: num(f[4])?,
                    flags: f[5].to_string(),
                });
            }
        }
        match (config, meta) {
            (Some(config), Some(meta)) => Ok(SweepResult { config, meta, rows }),
            _ => invalid("csv is missing the config or meta header line"),
        }
    }

    pub fn select(&self, quantity: Quantity, pair: Option<(usize, usize)>) -> impl Iterator<Item = &Row> + '_ {
        self.rows.iter().filter(move |r| r.quantity == quantity && r.pair == pair)
    }
}
