//! legendre: the two-route duality report at a curve's xi.

use crate::output::{config_hash, write_json, Json};
use crate::CliError;
use instanton::limitshape::{legendre_check, xi_from_gaps, LegendreOptions};
use instanton::swcurve::SWCurve;
use std::path::{Path, PathBuf};

#[derive(clap::Args)]
pub struct Args {
    /// Curve file; xi is derived from its gap integrals.
    #[arg(long)]
    pub curve: Option<PathBuf>,
    /// Explicit xi list (ascending, mean zero) when no curve is given.
    #[arg(long)]
    pub xi: Option<String>,
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long, default_value_t = 1200)]
    pub grid: usize,
}

pub fn run(args: &Args, out: &Path) -> Result<(), CliError> {
    let (xi, lambda) = match (&args.curve, &args.xi) {
        (Some(path), None) => {
            let curve: SWCurve = super::read_json(path)?;
            let xi = xi_from_gaps(&curve)?;
            (xi.xi, curve.lambda())
        }
        (None, Some(list)) => {
            let xi = super::parse_list(list)?;
            let lambda = args
                .lambda
                .ok_or_else(|| CliError::Usage("--xi needs --lambda".into()))?;
            (xi, lambda)
        }
        _ => {
            return Err(CliError::Usage(
                "give exactly one of --curve or --xi".into(),
            ))
        }
    };
    let canonical = format!("legendre xi={xi:?} lambda={lambda} grid={}", args.grid);
    let hash = config_hash(&canonical);
    let opts = LegendreOptions {
        grid_per_band: args.grid,
        ..LegendreOptions::default()
    };
    let rep = legendre_check(&xi, lambda, &opts)?;
    let value = Json::Obj(vec![
        ("config_hash".into(), Json::Str(hash)),
        (
            "xi".into(),
            Json::Arr(xi.iter().map(|&v| Json::Num(v)).collect()),
        ),
        ("lambda".into(), Json::Num(lambda)),
        ("f_dual_action".into(), Json::Num(rep.f_dual_action)),
        ("f_dual_min".into(), Json::Num(rep.f_dual_min)),
        ("relative_gap".into(), Json::Num(rep.gap)),
        (
            "gradient_identity_err".into(),
            Json::Num(rep.gradient_identity_err),
        ),
        ("concave".into(), Json::Bool(rep.concave)),
    ]);
    write_json(&out.with_extension("json"), &value)?;
    println!(
        "two-route gap = {}, gradient identity err = {}",
        crate::output::fmt_f64(rep.gap),
        crate::output::fmt_f64(rep.gradient_identity_err)
    );
    Ok(())
}
