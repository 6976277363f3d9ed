//! dualz-check: both evaluation routes of the dual partition function.

use crate::output::{config_hash, write_json, Json};
use crate::CliError;
use instanton::nekrasov::{dual_z_lattice, dual_z_partitions};
use instanton::partitions::PeriodicPotential;
use std::path::Path;

#[derive(clap::Args)]
pub struct Args {
    /// Periodic potential values xi_1..xi_r, comma separated, mean zero.
    #[arg(long)]
    pub xi: String,
    #[arg(long)]
    pub eps: f64,
    #[arg(long)]
    pub lambda: f64,
    /// Partition-route truncation |lambda| <= size_max.
    #[arg(long, default_value_t = 26)]
    pub size_max: u64,
    /// Lattice-route radius |a| <= radius (defaults to 14 eps).
    #[arg(long)]
    pub radius: Option<f64>,
    /// Instanton truncation inside each lattice Z.
    #[arg(long, default_value_t = 10)]
    pub nmax: usize,
}

pub fn run(args: &Args, out: &Path) -> Result<(), CliError> {
    let xi = super::parse_list(&args.xi)?;
    let v = PeriodicPotential::new(xi.clone())?;
    let radius = args.radius.unwrap_or(14.0 * args.eps);
    let canonical = format!(
        "dualz xi={:?} eps={} lambda={} size_max={} radius={} nmax={}",
        xi, args.eps, args.lambda, args.size_max, radius, args.nmax
    );
    let hash = config_hash(&canonical);
    let parts = dual_z_partitions(&v, args.eps, args.lambda, args.size_max)?;
    let latt = dual_z_lattice(&v, args.eps, args.lambda, radius, args.nmax)?;
    let denom = parts.value.norm().max(latt.value.norm());
    let gap = (parts.value - latt.value).norm() / denom.max(f64::MIN_POSITIVE);
    let value = Json::Obj(vec![
        ("config_hash".into(), Json::Str(hash)),
        (
            "partitions_route".into(),
            Json::Obj(vec![
                ("re".into(), Json::Num(parts.value.re)),
                ("im".into(), Json::Num(parts.value.im)),
                ("tail".into(), Json::Num(parts.tail)),
                ("terms".into(), Json::Int(parts.terms as i64)),
            ]),
        ),
        (
            "lattice_route".into(),
            Json::Obj(vec![
                ("re".into(), Json::Num(latt.value.re)),
                ("im".into(), Json::Num(latt.value.im)),
                ("tail".into(), Json::Num(latt.tail)),
                ("terms".into(), Json::Int(latt.terms as i64)),
                ("skipped".into(), Json::Int(latt.skipped as i64)),
            ]),
        ),
        ("relative_gap".into(), Json::Num(gap)),
        (
            "within_tails".into(),
            Json::Bool((parts.value - latt.value).norm() <= parts.tail + latt.tail + 1e-12 * denom),
        ),
    ]);
    write_json(&out.with_extension("json"), &value)?;
    println!("relative gap = {}", crate::output::fmt_f64(gap));
    Ok(())
}
