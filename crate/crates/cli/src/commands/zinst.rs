//! zinst: instanton series coefficients, Z_inst, Z_pert, and Z.

use crate::output::{config_hash, write_json, Json};
use crate::CliError;
use instanton::nekrasov::{log_z_pert, z_inst, GaugeParams};
use std::path::Path;

#[derive(clap::Args)]
pub struct Args {
    /// Rank r (used when --a is omitted: a = 0, valid for r = 1).
    #[arg(long, default_value_t = 1)]
    pub r: usize,
    /// Coulomb parameters, comma separated, summing to zero.
    #[arg(long)]
    pub a: Option<String>,
    #[arg(long)]
    pub eps: f64,
    #[arg(long)]
    pub lambda: f64,
    #[arg(long, default_value_t = 8)]
    pub nmax: usize,
}

pub fn run(args: &Args, out: &Path) -> Result<(), CliError> {
    let a = match &args.a {
        Some(s) => super::parse_list(s)?,
        None => {
            if args.r != 1 {
                return Err(CliError::Usage(
                    "r > 1 needs explicit --a (a = 0 sits on the pole locus)".into(),
                ));
            }
            vec![0.0; args.r]
        }
    };
    let canonical = format!(
        "zinst r={} a={:?} eps={} lambda={} nmax={}",
        a.len(),
        a,
        args.eps,
        args.lambda,
        args.nmax
    );
    let hash = config_hash(&canonical);
    let g = GaugeParams::new(args.eps, a.clone(), args.lambda)?;
    let inst = z_inst(&g, args.nmax)?;
    let pert = log_z_pert(&g)?;
    let z_pert = pert.ln_modulus.exp();
    let value = Json::Obj(vec![
        ("config_hash".into(), Json::Str(hash)),
        ("r".into(), Json::Int(a.len() as i64)),
        ("epsilon".into(), Json::Num(args.eps)),
        (
            "a".into(),
            Json::Arr(a.iter().map(|&v| Json::Num(v)).collect()),
        ),
        ("lambda".into(), Json::Num(args.lambda)),
        ("n_max".into(), Json::Int(args.nmax as i64)),
        (
            "coefficients".into(),
            Json::Arr(inst.coefficients.iter().map(|&c| Json::Num(c)).collect()),
        ),
        ("z_inst".into(), Json::Num(inst.value)),
        ("last_term".into(), Json::Num(inst.last_term)),
        ("z_pert".into(), Json::Num(z_pert)),
        ("z_pert_phase".into(), Json::Num(pert.phase)),
        ("z".into(), Json::Num(z_pert * inst.value)),
    ]);
    write_json(&out.with_extension("json"), &value)?;
    println!("z_inst = {}", crate::output::fmt_f64(inst.value));
    Ok(())
}
