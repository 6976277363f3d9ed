//! ronkin: R(x, y) on a grid, with an amoeba-boundary scatter.

use crate::output::{config_hash, fmt_f64, CsvWriter};
use crate::svg::SvgPlot;
use crate::CliError;
use instanton::stepped::{amoeba_membership, ronkin, Membership, PlaneCurve};
use std::path::{Path, PathBuf};

#[derive(clap::Args)]
pub struct Args {
    /// Plane curve file: JSON {monomials: [{i, j, c}]}.
    #[arg(long)]
    pub curve: PathBuf,
    #[arg(long, default_value_t = -2.0)]
    pub x0: f64,
    #[arg(long, default_value_t = 2.0)]
    pub x1: f64,
    #[arg(long, default_value_t = -2.0)]
    pub y0: f64,
    #[arg(long, default_value_t = 2.0)]
    pub y1: f64,
    /// Grid points per axis.
    #[arg(long, default_value_t = 21)]
    pub n: usize,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Also emit an SVG with the sampled amoeba boundary.
    #[arg(long, default_value_t = false)]
    pub svg: bool,
}

pub fn run(args: &Args, out: &Path) -> Result<(), CliError> {
    let curve: PlaneCurve = super::read_json(&args.curve)?;
    let canonical = format!(
        "ronkin {:?} window=({},{})x({},{}) n={} tol={}",
        curve.monomials(),
        args.x0,
        args.x1,
        args.y0,
        args.y1,
        args.n,
        args.tol
    );
    let hash = config_hash(&canonical);
    let mut csv = CsvWriter::new(&hash, &format!("quadrature={}", args.tol), &["x", "y", "R"]);
    let n = args.n.max(2);
    for iy in 0..n {
        let y = args.y0 + (args.y1 - args.y0) * iy as f64 / (n - 1) as f64;
        for ix in 0..n {
            let x = args.x0 + (args.x1 - args.x0) * ix as f64 / (n - 1) as f64;
            let r = ronkin(&curve, x, y, args.tol)?;
            csv.row(&[fmt_f64(x), fmt_f64(y), fmt_f64(r)]);
        }
    }
    csv.write(&out.with_extension("csv"))?;
    if args.svg {
        // boundary: membership flips along grid rows/columns
        let m = 4 * n;
        let mut boundary = Vec::new();
        let classify = |x: f64, y: f64| {
            matches!(
                amoeba_membership(&curve, x, y, 1e-7),
                Membership::Inside | Membership::Borderline
            )
        };
        for iy in 0..m {
            let y = args.y0 + (args.y1 - args.y0) * iy as f64 / (m - 1) as f64;
            let mut prev: Option<(f64, bool)> = None;
            for ix in 0..m {
                let x = args.x0 + (args.x1 - args.x0) * ix as f64 / (m - 1) as f64;
                let inside = classify(x, y);
                if let Some((px, pin)) = prev {
                    if pin != inside {
                        boundary.push((0.5 * (px + x), y));
                    }
                }
                prev = Some((x, inside));
            }
        }
        let mut plot = SvgPlot::new((args.x0, args.x1), (args.y0, args.y1));
        plot.scatter(&boundary, "#2ca02c", 1.5);
        std::fs::write(out.with_extension("svg"), plot.render("amoeba boundary"))?;
    }
    println!("grid written ({} points)", n * n);
    Ok(())
}
