//! prepotential: F at a Coulomb point with Hessian diagnostics.

use crate::output::{config_hash, write_json, Json};
use crate::CliError;
use instanton::swcurve::{
    is_positive_definite, prepotential, prepotential_hessian, PrepotentialContext,
};
use std::path::Path;

#[derive(clap::Args)]
pub struct Args {
    /// Target Coulomb point, ascending, sum zero.
    #[arg(long)]
    pub a: String,
    #[arg(long)]
    pub lambda: f64,
    /// Scale of the perturbative reference point.
    #[arg(long, default_value_t = 40.0)]
    pub ref_scale: f64,
}

pub fn run(args: &Args, out: &Path) -> Result<(), CliError> {
    let a = super::parse_list(&args.a)?;
    let r = a.len();
    if r < 2 {
        return Err(CliError::Usage("prepotential needs rank >= 2".into()));
    }
    let canonical = format!(
        "prepotential a={:?} lambda={} ref_scale={}",
        a, args.lambda, args.ref_scale
    );
    let hash = config_hash(&canonical);
    let shape: Vec<f64> = (0..r).map(|i| i as f64 - 0.5 * (r as f64 - 1.0)).collect();
    let ctx = PrepotentialContext::with_perturbative_reference(&shape, args.lambda, args.ref_scale)?;
    let f = prepotential(&ctx, &a)?;
    let (hess, asym) = prepotential_hessian(&a, args.lambda)?;
    let pd = is_positive_definite(&hess);
    let value = Json::Obj(vec![
        ("config_hash".into(), Json::Str(hash)),
        (
            "a".into(),
            Json::Arr(a.iter().map(|&v| Json::Num(v)).collect()),
        ),
        ("lambda".into(), Json::Num(args.lambda)),
        (
            "reference".into(),
            Json::Obj(vec![
                (
                    "a".into(),
                    Json::Arr(ctx.reference_a.iter().map(|&v| Json::Num(v)).collect()),
                ),
                ("f".into(), Json::Num(ctx.f_reference)),
            ]),
        ),
        ("f".into(), Json::Num(f)),
        (
            "hessian".into(),
            Json::Arr(
                hess.iter()
                    .map(|row| Json::Arr(row.iter().map(|&v| Json::Num(v)).collect()))
                    .collect(),
            ),
        ),
        ("hessian_asymmetry".into(), Json::Num(asym)),
        ("hessian_positive_definite".into(), Json::Bool(pd)),
    ]);
    write_json(&out.with_extension("json"), &value)?;
    println!("F = {}", crate::output::fmt_f64(f));
    Ok(())
}
