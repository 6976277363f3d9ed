//! frozen: trace the frozen boundary and fit a cardioid to it.

use crate::output::{config_hash, fmt_f64, write_json, CsvWriter, Json};
use crate::svg::SvgPlot;
use crate::CliError;
use instanton::stepped::{frozen_boundary, BurgersData};
use std::path::{Path, PathBuf};

#[derive(clap::Args)]
pub struct Args {
    /// Characteristic data: JSON {p, q, c}.
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long, default_value_t = -3.5)]
    pub x0: f64,
    #[arg(long, default_value_t = 2.0)]
    pub x1: f64,
    #[arg(long, default_value_t = -3.0)]
    pub y0: f64,
    #[arg(long, default_value_t = 3.0)]
    pub y1: f64,
    #[arg(long, default_value_t = 200)]
    pub resolution: usize,
}

/// Least-squares cardioid fit about a cusp: rho(theta) = 2a (1 - cos(theta - alpha)).
/// Linear in (2a, 2a cos alpha, 2a sin alpha); returns (center, a, alpha, rms).
pub fn fit_cardioid(points: &[(f64, f64)], cusp: (f64, f64)) -> (f64, f64, f64) {
    let mut m = [[0.0f64; 3]; 3];
    let mut b = [0.0f64; 3];
    for &(x, y) in points {
        let (dx, dy) = (x - cusp.0, y - cusp.1);
        let rho = dx.hypot(dy);
        let th = dy.atan2(dx);
        let row = [1.0, -th.cos(), -th.sin()];
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] += row[i] * row[j];
            }
            b[i] += row[i] * rho;
        }
    }
    // 3x3 solve
    let det = |m: &[[f64; 3]; 3]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let d = det(&m);
    let mut sol = [0.0f64; 3];
    for k in 0..3 {
        let mut mk = m;
        for i in 0..3 {
            mk[i][k] = b[i];
        }
        sol[k] = det(&mk) / d;
    }
    let a = 0.5 * sol[0];
    let alpha = sol[2].atan2(sol[1]);
    let mut rms = 0.0;
    for &(x, y) in points {
        let (dx, dy) = (x - cusp.0, y - cusp.1);
        let rho = dx.hypot(dy);
        let th = dy.atan2(dx);
        let model = sol[0] - sol[1] * th.cos() - sol[2] * th.sin();
        rms += (rho - model).powi(2);
    }
    (a, alpha, (rms / points.len() as f64).sqrt())
}

pub fn run(args: &Args, out: &Path) -> Result<(), CliError> {
    let data: BurgersData = super::read_json(&args.config)?;
    let canonical = format!(
        "frozen c={} window=({},{})x({},{}) resolution={}",
        data.c, args.x0, args.x1, args.y0, args.y1, args.resolution
    );
    let hash = config_hash(&canonical);
    let fb = frozen_boundary(
        &data,
        ((args.x0, args.y0), (args.x1, args.y1)),
        args.resolution,
    )?;
    let mut csv = CsvWriter::new(&hash, "corrector=1e-11", &["x", "y", "z_double"]);
    for (k, &(x, y)) in fb.points.iter().enumerate() {
        csv.row(&[fmt_f64(x), fmt_f64(y), fmt_f64(fb.z_values[k])]);
    }
    csv.write(&out.with_extension("csv"))?;

    // fit about the detected cusp (fall back to the rightmost point)
    let cusp = fb
        .cusps
        .first()
        .map(|&i| fb.points[i])
        .unwrap_or_else(|| {
            *fb.points
                .iter()
                .max_by(|a, b| a.0.total_cmp(&b.0))
                .unwrap()
        });
    let (a, alpha, rms) = fit_cardioid(&fb.points, cusp);
    let bbox = (args.x1 - args.x0).max(args.y1 - args.y0);
    let report = Json::Obj(vec![
        ("config_hash".into(), Json::Str(hash)),
        ("points".into(), Json::Int(fb.points.len() as i64)),
        ("closed".into(), Json::Bool(fb.closed)),
        (
            "cusps".into(),
            Json::Arr(
                fb.cusps
                    .iter()
                    .map(|&i| {
                        Json::Obj(vec![
                            ("x".into(), Json::Num(fb.points[i].0)),
                            ("y".into(), Json::Num(fb.points[i].1)),
                        ])
                    })
                    .collect(),
            ),
        ),
        (
            "cardioid_fit".into(),
            Json::Obj(vec![
                ("cusp_x".into(), Json::Num(cusp.0)),
                ("cusp_y".into(), Json::Num(cusp.1)),
                ("a".into(), Json::Num(a)),
                ("alpha".into(), Json::Num(alpha)),
                ("rms".into(), Json::Num(rms)),
                ("rms_relative".into(), Json::Num(rms / bbox)),
            ]),
        ),
    ]);
    write_json(&out.with_extension("json"), &report)?;

    // SVG: trace plus fitted cardioid
    let mut plot = SvgPlot::new((args.x0, args.x1), (args.y0, args.y1));
    plot.polyline(&fb.points, "#1f77b4", 1.5);
    let fitted: Vec<(f64, f64)> = (0..=256)
        .map(|k| {
            let th = std::f64::consts::TAU * k as f64 / 256.0;
            let rho = 2.0 * a * (1.0 - (th - alpha).cos());
            (cusp.0 + rho * th.cos(), cusp.1 + rho * th.sin())
        })
        .collect();
    plot.polyline(&fitted, "#d62728", 1.0);
    std::fs::write(
        out.with_extension("svg"),
        plot.render("frozen boundary with cardioid fit"),
    )?;
    println!(
        "traced {} points, cardioid rms/bbox = {}",
        fb.points.len(),
        fmt_f64(rms / bbox)
    );
    Ok(())
}
