//! Runs a small sweep, writes the CSV to stdout and reads it back.

use spinxy::sweep::Quantity;
use spinxy::{run_sweep, Grid, LatticeKind, SweepConfig, SweepResult};

fn main() -> spinxy::Result<()> {
    let mut cfg =
        SweepConfig::new(LatticeKind::Star7, 1.0, Grid::linear(0.5, 2.0, 4), vec![Quantity::Ef, Quantity::DeltaE]);
    cfg.kt_grid = Some("0:1:3".parse()?);
    cfg.pairs = vec![(1, 2), (1, 4)];
    let result = run_sweep(&cfg)?;
    let csv = result.to_csv_string();
    print!("{csv}");
    let back = SweepResult::parse_csv(&csv)?;
    eprintln!("{} rows, round trip exact: {}", back.rows.len(), back == result);
    Ok(())
}
