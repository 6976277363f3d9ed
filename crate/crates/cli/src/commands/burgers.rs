//! burgers: the characteristic solution field on a grid.

use crate::output::{config_hash, fmt_f64, CsvWriter};
use crate::CliError;
use instanton::stepped::{burgers_solve, BurgersData, BurgersPoint};
use std::path::{Path, PathBuf};

#[derive(clap::Args)]
pub struct Args {
    /// Characteristic data: JSON {p, q, c}.
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long, default_value_t = -3.0)]
    pub x0: f64,
    #[arg(long, default_value_t = 2.0)]
    pub x1: f64,
    #[arg(long, default_value_t = -3.0)]
    pub y0: f64,
    #[arg(long, default_value_t = 3.0)]
    pub y1: f64,
    #[arg(long, default_value_t = 41)]
    pub n: usize,
}

pub fn run(args: &Args, out: &Path) -> Result<(), CliError> {
    let data: BurgersData = super::read_json(&args.config)?;
    let canonical = format!(
        "burgers c={} window=({},{})x({},{}) n={}",
        data.c, args.x0, args.x1, args.y0, args.y1, args.n
    );
    let hash = config_hash(&canonical);
    let mut csv = CsvWriter::new(&hash, "root_polish=1e-13", &["x", "y", "hx", "hy", "phase"]);
    let n = args.n.max(2);
    for iy in 0..n {
        let y = args.y0 + (args.y1 - args.y0) * iy as f64 / (n - 1) as f64;
        for ix in 0..n {
            let x = args.x0 + (args.x1 - args.x0) * ix as f64 / (n - 1) as f64;
            match burgers_solve(&data, x, y)? {
                BurgersPoint::Liquid { grad, .. } => csv.row(&[
                    fmt_f64(x),
                    fmt_f64(y),
                    fmt_f64(grad.0),
                    fmt_f64(grad.1),
                    "liquid".into(),
                ]),
                BurgersPoint::Frozen => csv.row(&[
                    fmt_f64(x),
                    fmt_f64(y),
                    String::new(),
                    String::new(),
                    "frozen".into(),
                ]),
            }
        }
    }
    csv.write(&out.with_extension("csv"))?;
    println!("field written ({} nodes)", n * n);
    Ok(())
}
