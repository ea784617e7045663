//! Command-line front end.
//!
//! Settings come from an optional JSON config file (`--config`), then any
//! flag given on the command line replaces the file's value. The default
//! thread count can be set with `SPINXY_THREADS`; `--threads` wins over it.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use spinxy::oracles::run_oracle_suite;
use spinxy::sweep::{parse_pairs, Quantity};
use spinxy::{
    convert_units, run_sweep, run_threshold_curve, Error, Grid, LatticeKind, Result, SweepConfig, SweepResult,
};

const THREADS_ENV: &str = "SPINXY_THREADS";

#[derive(Parser)]
#[command(name = "spinxy", version, about = "Thermal and ground-state entanglement of 7-spin XY lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate EF, GE, DELTA_E and thresholds on a (lambda, kT) grid.
    Sweep(Shared),
    /// Threshold temperatures (TTH_PAIR, TTH_ME) against lambda.
    Threshold(Shared),
    /// Ground-state geometric entanglement against lambda.
    Ge(Shared),
    /// Convert kT and lambda from units of J to kelvin and tesla.
    Convert {
        #[arg(long, default_value_t = 1.0)]
        kt: f64,
        #[arg(long, default_value_t = 1.0)]
        field: f64,
        /// Exchange constant J in meV.
        #[arg(long, default_value_t = 1e-3)]
        j_mev: f64,
        #[arg(long, default_value_t = 1.0)]
        g_factor: f64,
    },
    /// Run the brute-force cross-checks and print one CSV line each.
    Oracle {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct Shared {
    /// JSON config file; flags given here override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// chain7 or star7.
    #[arg(long)]
    lattice: Option<LatticeKind>,
    #[arg(long)]
    gamma: Option<f64>,
    /// Impurity strength on the star spokes.
    #[arg(long)]
    alpha: Option<f64>,
    /// min:max:steps[:geom], or a single value.
    #[arg(long)]
    lambda: Option<Grid>,
    /// min:max:steps[:geom], or a single value. Omitted means kT = 0.
    #[arg(long)]
    kt: Option<Grid>,
    /// Site pairs, e.g. "1,2;1,4;1,7".
    #[arg(long)]
    pairs: Option<String>,
    /// Comma-separated: EF, GE, DELTA_E, TTH_PAIR, TTH_ME.
    #[arg(long)]
    quantities: Option<String>,
    #[arg(long)]
    ge_samples: Option<usize>,
    #[arg(long)]
    ge_refine: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output CSV path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    threads: Option<usize>,
}

fn parse_quantities(s: &str) -> Result<Vec<Quantity>> {
    s.split(',').map(str::trim).filter(|q| !q.is_empty()).map(str::parse).collect()
}

fn object(v: &mut Value) -> &mut Map<String, Value> {
    if !v.is_object() {
        *v = json!({});
    }
    v.as_object_mut().expect("just made an object")
}

impl Shared {
    /// Merges file values, flag overrides and per-command defaults.
    fn config(&self, default_quantities: impl FnOnce(bool) -> Vec<Quantity>) -> Result<SweepConfig> {
        let mut doc = match &self.config {
            Some(path) => serde_json::from_reader(File::open(path)?)?,
            None => json!({}),
        };
        let map = object(&mut doc);
        let mut set = |key: &str, v: Value| {
            map.insert(key.to_string(), v);
        };
        if let Some(l) = self.lattice {
            set("lattice", serde_json::to_value(l)?);
        }
        if let Some(g) = self.gamma {
            set("gamma", json!(g));
        }
        if let Some(a) = self.alpha {
            set("alpha", json!(a));
        }
        if let Some(g) = self.lambda {
            set("lambda_grid", serde_json::to_value(g)?);
        }
        if let Some(g) = self.kt {
            set("kt_grid", serde_json::to_value(g)?);
        }
        if let Some(p) = &self.pairs {
            set("pairs", serde_json::to_value(parse_pairs(p)?)?);
        }
        if let Some(q) = &self.quantities {
            set("quantities", serde_json::to_value(parse_quantities(q)?)?);
        }
        if let Some(s) = self.seed {
            set("seed", json!(s));
        }
        if let Some(o) = &self.out {
            set("out_path", json!(o.display().to_string()));
        }
        let ge = object(map.entry("ge").or_insert_with(|| json!({})));
        if let Some(n) = self.ge_samples {
            ge.insert("samples".into(), json!(n));
        }
        if let Some(n) = self.ge_refine {
            ge.insert("refine_iters".into(), json!(n));
        }

        if !map.contains_key("lambda_grid") {
            return Err(Error::Invalid("a lambda grid is required (--lambda or lambda_grid in --config)".into()));
        }
        map.entry("lattice").or_insert_with(|| json!("star7"));
        map.entry("gamma").or_insert_with(|| json!(1.0));
        if !map.contains_key("quantities") {
            let has_pairs = map.get("pairs").and_then(Value::as_array).is_some_and(|a| !a.is_empty());
            map.insert("quantities".into(), serde_json::to_value(default_quantities(has_pairs))?);
        }
        Ok(serde_json::from_value(doc)?)
    }

    fn init_threads(&self) -> Result<()> {
        let threads = match self.threads {
            Some(n) => n,
            None => match std::env::var(THREADS_ENV) {
                Ok(v) => v.trim().parse().map_err(|_| Error::Invalid(format!("{THREADS_ENV}=`{v}` is not a count")))?,
                Err(_) => 0,
            },
        };
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Error::Invalid(format!("thread pool: {e}")))
    }
}

fn emit(result: &SweepResult) -> Result<()> {
    for w in &result.meta.warnings {
        eprintln!("warning: {w}");
    }
    match &result.config.out_path {
        Some(path) => {
            let mut f = BufWriter::new(File::create(path)?);
            result.write_csv(&mut f)?;
            f.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            result.write_csv(&mut lock)?;
            lock.flush()?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Sweep(args) => {
            let cfg = args.config(|has_pairs| if has_pairs { vec![Quantity::Ef] } else { vec![Quantity::DeltaE] })?;
            args.init_threads()?;
            emit(&run_sweep(&cfg)?)
        }
        Command::Threshold(args) => {
            let cfg =
                args.config(|has_pairs| if has_pairs { vec![Quantity::TthPair] } else { vec![Quantity::TthMe] })?;
            args.init_threads()?;
            emit(&run_threshold_curve(&cfg)?)
        }
        Command::Ge(args) => {
            let mut cfg = args.config(|_| vec![Quantity::Ge])?;
            cfg.quantities.retain(|q| matches!(q, Quantity::Ge | Quantity::TthMe));
            if cfg.quantities.is_empty() {
                cfg.quantities.push(Quantity::Ge);
            }
            cfg.kt_grid = None;
            args.init_threads()?;
            emit(&run_sweep(&cfg)?)
        }
        Command::Convert { kt, field, j_mev, g_factor } => {
            let u = convert_units(kt, j_mev, field, g_factor)?;
            println!("kt_in_j,field_in_j,j_mev,g_factor,kelvin,tesla");
            println!("{kt},{field},{j_mev},{g_factor},{:.8e},{:.8e}", u.kelvin, u.tesla);
            Ok(())
        }
        Command::Oracle { seed } => {
            let reports = run_oracle_suite(seed)?;
            println!("name,max_abs_error,tolerance,passed");
            for r in &reports {
                println!("{},{:.3e},{:.1e},{}", r.name, r.max_abs_error, r.tolerance, r.passed);
            }
            let failed: Vec<&str> = reports.iter().filter(|r| !r.passed).map(|r| r.name.as_str()).collect();
            if failed.is_empty() {
                Ok(())
            } else {
                Err(Error::Invariant(format!("oracle mismatch: {}", failed.join(", "))))
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
