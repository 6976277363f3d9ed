//! limitshape: the minimizer profile of a curve, its facet intercepts, and
//! an optional Metropolis overlay.

use crate::output::{config_hash, fmt_f64, write_json, CsvWriter, Json};
use crate::svg::SvgPlot;
use crate::CliError;
use instanton::limitshape::{facet_intercepts, mcmc_sample, psi_star};
use instanton::partitions::{profile, PeriodicPotential};
use instanton::swcurve::{periods_a, SWCurve};
use std::path::{Path, PathBuf};

#[derive(clap::Args)]
pub struct Args {
    /// Curve file: JSON {r, coeffs, lambda}.
    #[arg(long)]
    pub curve: PathBuf,
    /// Profile cells per band.
    #[arg(long, default_value_t = 2000)]
    pub grid: usize,
    /// Overlay an empirical profile from a Metropolis chain at this eps
    /// (rank-1 curves only).
    #[arg(long)]
    pub mcmc_eps: Option<f64>,
    #[arg(long)]
    pub mcmc_steps: Option<u64>,
    /// Seed, required for the stochastic overlay.
    #[arg(long)]
    pub seed: Option<u64>,
}

pub fn run(args: &Args, out: &Path) -> Result<(), CliError> {
    let curve: SWCurve = super::read_json(&args.curve)?;
    if args.mcmc_eps.is_some() && args.seed.is_none() {
        return Err(CliError::Usage(
            "--mcmc-eps is stochastic and requires --seed".into(),
        ));
    }
    let canonical = format!(
        "limitshape r={} coeffs={:?} lambda={} grid={} mcmc_eps={:?} mcmc_steps={:?} seed={:?}",
        curve.rank(),
        curve.lower_coeffs(),
        curve.lambda(),
        args.grid,
        args.mcmc_eps,
        args.mcmc_steps,
        args.seed
    );
    let hash = config_hash(&canonical);
    let psi = psi_star(&curve, args.grid)?;
    // CSV of the profile on its own node grid
    let mut csv = CsvWriter::new(
        &hash,
        &format!("closure_residual={}", fmt_f64(psi.closure_residual)),
        &["x", "psi", "psi_prime"],
    );
    let bps = psi.profile.breakpoints().to_vec();
    for &x in &bps {
        csv.row(&[fmt_f64(x), fmt_f64(psi.profile.eval(x)), fmt_f64(psi.profile.deriv(x))]);
    }
    csv.write(&out.with_extension("csv"))?;

    // facet intercepts and the recovered Coulomb parameters
    let fi = facet_intercepts(&psi)?;
    let a = periods_a(&curve)?;
    let report = Json::Obj(vec![
        ("config_hash".into(), Json::Str(hash.clone())),
        (
            "intercepts".into(),
            Json::Arr(fi.intercepts.iter().map(|&v| Json::Num(v)).collect()),
        ),
        (
            "a_from_intercepts".into(),
            Json::Arr(fi.a.iter().map(|&v| Json::Num(v)).collect()),
        ),
        (
            "a_from_periods".into(),
            Json::Arr(a.values.iter().map(|&v| Json::Num(v)).collect()),
        ),
        (
            "max_deviation".into(),
            Json::Num(
                fi.a.iter()
                    .zip(a.values.iter())
                    .map(|(x, y)| (x - y).abs())
                    .fold(0.0, f64::max),
            ),
        ),
    ]);
    write_json(&out.with_extension("json"), &report)?;

    // SVG overlay
    let (lo, hi) = (bps[0], *bps.last().unwrap());
    let pad = 0.3 * (hi - lo);
    let mut plot = SvgPlot::new((lo - pad, hi + pad), (0.0, (hi - lo) * 0.9));
    let analytic: Vec<(f64, f64)> = bps.iter().map(|&x| (x, psi.profile.eval(x))).collect();
    plot.polyline(&analytic, "#1f77b4", 2.0);
    let mut title = "limit shape".to_string();
    if let (Some(eps), Some(seed)) = (args.mcmc_eps, args.seed) {
        if curve.rank() != 1 {
            return Err(CliError::Usage("the Metropolis overlay targets rank 1".into()));
        }
        let steps = args.mcmc_steps.unwrap_or(1_000_000);
        let v = PeriodicPotential::zero(1);
        let sample = mcmc_sample(&v, eps, curve.lambda(), steps, seed)?;
        let emp = profile(&sample, eps)?;
        let pts: Vec<(f64, f64)> = emp
            .breakpoints()
            .iter()
            .map(|&x| (x, emp.eval(x)))
            .collect();
        plot.polyline(&pts, "#d62728", 1.0);
        title = format!("limit shape vs chain (eps={eps}, steps={steps}, seed={seed})");
    }
    std::fs::write(out.with_extension("svg"), plot.render(&title))?;
    println!(
        "a from intercepts = [{}]",
        fi.a.iter().map(|v| fmt_f64(*v)).collect::<Vec<_>>().join(", ")
    );
    Ok(())
}
