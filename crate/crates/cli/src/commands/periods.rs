//! periods: a and a-dual of a curve file, as CSV.

use crate::output::{config_hash, fmt_f64, CsvWriter};
use crate::CliError;
use instanton::swcurve::{periods_a, periods_a_dual, SWCurve};
use std::path::{Path, PathBuf};

#[derive(clap::Args)]
pub struct Args {
    /// Curve file: JSON {r, coeffs, lambda}.
    #[arg(long)]
    pub curve: PathBuf,
}

pub fn run(args: &Args, out: &Path) -> Result<(), CliError> {
    let curve: SWCurve = super::read_json(&args.curve)?;
    let canonical = format!(
        "periods r={} coeffs={:?} lambda={}",
        curve.rank(),
        curve.lower_coeffs(),
        curve.lambda()
    );
    let hash = config_hash(&canonical);
    let a = periods_a(&curve)?;
    let ad = periods_a_dual(&curve)?;
    let mut csv = CsvWriter::new(
        &hash,
        &format!("quadrature=1e-12 checksum={}", fmt_f64(a.checksum)),
        &["i", "a_i", "a_dual_i"],
    );
    for i in 0..curve.rank() {
        csv.row(&[
            format!("{}", i + 1),
            fmt_f64(a.values[i]),
            fmt_f64(ad.values[i]),
        ]);
    }
    csv.write(&out.with_extension("csv"))?;
    println!(
        "a = [{}]",
        a.values
            .iter()
            .map(|v| fmt_f64(*v))
            .collect::<Vec<_>>()
            .join(", ")
    );
    Ok(())
}
