//! Height reconstruction: path-integrate a gradient field over a grid with
//! a curl diagnostic; frozen facets extend linearly with the gradient of the
//! nearest liquid node rounded to a triangle vertex.

use crate::error::{Error, Result};
use serde::Serialize;

/// A reconstructed height function over a rectangular grid.
#[derive(Debug, Clone, Serialize)]
pub struct HeightField {
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    /// h[iy][ix]
    pub h: Vec<Vec<f64>>,
    pub liquid: Vec<Vec<bool>>,
    pub grad: Vec<Vec<(f64, f64)>>,
    /// Max plaquette circulation of the (completed) gradient field.
    pub curl_residual: f64,
}

/// Reconstruct h from grad[iy][ix] = Some((hx, hy)) on liquid nodes,
/// None on frozen ones.
pub fn height_reconstruct(
    xs: &[f64],
    ys: &[f64],
    grad_field: &[Vec<Option<(f64, f64)>>],
    curl_tol: f64,
) -> Result<HeightField> {
    let nx = xs.len();
    let ny = ys.len();
    if ny != grad_field.len() || grad_field.iter().any(|row| row.len() != nx) {
        return Err(Error::invalid("height field", "grid shape mismatch"));
    }
    // complete the field: frozen nodes take the nearest liquid gradient
    // rounded to a triangle vertex
    let mut grad = vec![vec![(0.0, 0.0); nx]; ny];
    let mut liquid = vec![vec![false; nx]; ny];
    let mut liquid_nodes: Vec<(usize, usize)> = Vec::new();
    for iy in 0..ny {
        for ix in 0..nx {
            if let Some(g) = grad_field[iy][ix] {
                grad[iy][ix] = g;
                liquid[iy][ix] = true;
                liquid_nodes.push((iy, ix));
            }
        }
    }
    if liquid_nodes.is_empty() {
        return Err(Error::invalid("height field", "no liquid nodes"));
    }
    let verts = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)];
    for iy in 0..ny {
        for ix in 0..nx {
            if liquid[iy][ix] {
                continue;
            }
            let (x, y) = (xs[ix], ys[iy]);
            let nearest = liquid_nodes
                .iter()
                .min_by(|&&(ay, ax), &&(by, bx)| {
                    let da = (xs[ax] - x).hypot(ys[ay] - y);
                    let db = (xs[bx] - x).hypot(ys[by] - y);
                    da.total_cmp(&db)
                })
                .unwrap();
            let g = grad[nearest.0][nearest.1];
            let v = verts
                .iter()
                .min_by(|a, b| {
                    let da = (g.0 - a.0).hypot(g.1 - a.1);
                    let db = (g.0 - b.0).hypot(g.1 - b.1);
                    da.total_cmp(&db)
                })
                .unwrap();
            grad[iy][ix] = *v;
        }
    }
    // curl diagnostic on interior plaquettes of the completed field,
    // restricted to all-liquid plaquettes (facet junctions carry honest
    // kinks that are not integration errors)
    let mut curl_residual = 0.0f64;
    for iy in 0..ny - 1 {
        for ix in 0..nx - 1 {
            if !(liquid[iy][ix] && liquid[iy][ix + 1] && liquid[iy + 1][ix] && liquid[iy + 1][ix + 1]) {
                continue;
            }
            let dx = xs[ix + 1] - xs[ix];
            let dy = ys[iy + 1] - ys[iy];
            let circulation = 0.5 * (grad[iy][ix].0 + grad[iy][ix + 1].0) * dx
                + 0.5 * (grad[iy][ix + 1].1 + grad[iy + 1][ix + 1].1) * dy
                - 0.5 * (grad[iy + 1][ix + 1].0 + grad[iy + 1][ix].0) * dx
                - 0.5 * (grad[iy + 1][ix].1 + grad[iy][ix].1) * dy;
            curl_residual = curl_residual.max(circulation.abs() / (dx * dy).abs().sqrt().max(1e-300));
        }
    }
    if curl_residual > curl_tol {
        return Err(Error::CurlResidual {
            residual: curl_residual,
            tol: curl_tol,
        });
    }
    // integrate: first row in x, then columns in y (trapezoid)
    let mut h = vec![vec![0.0; nx]; ny];
    for ix in 1..nx {
        let dx = xs[ix] - xs[ix - 1];
        h[0][ix] = h[0][ix - 1] + 0.5 * (grad[0][ix - 1].0 + grad[0][ix].0) * dx;
    }
    for iy in 1..ny {
        let dy = ys[iy] - ys[iy - 1];
        for ix in 0..nx {
            h[iy][ix] = h[iy - 1][ix] + 0.5 * (grad[iy - 1][ix].1 + grad[iy][ix].1) * dy;
        }
    }
    Ok(HeightField {
        xs: xs.to_vec(),
        ys: ys.to_vec(),
        h,
        liquid,
        grad,
        curl_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_gradient_gives_affine_height() {
        let xs: Vec<f64> = (0..11).map(|k| k as f64 * 0.1).collect();
        let ys = xs.clone();
        let field: Vec<Vec<Option<(f64, f64)>>> =
            vec![vec![Some((0.3, 0.5)); xs.len()]; ys.len()];
        let hf = height_reconstruct(&xs, &ys, &field, 1e-12).unwrap();
        assert!(hf.curl_residual < 1e-14);
        for (iy, y) in ys.iter().enumerate() {
            for (ix, x) in xs.iter().enumerate() {
                let expect = 0.3 * x + 0.5 * y;
                assert!((hf.h[iy][ix] - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn curl_violation_detected() {
        let xs: Vec<f64> = (0..6).map(|k| k as f64 * 0.2).collect();
        let ys = xs.clone();
        // rotational field (-y, x): curl = 2
        let field: Vec<Vec<Option<(f64, f64)>>> = ys
            .iter()
            .map(|&y| xs.iter().map(|&x| Some((-y, x))).collect())
            .collect();
        assert!(matches!(
            height_reconstruct(&xs, &ys, &field, 1e-6),
            Err(Error::CurlResidual { .. })
        ));
    }

    #[test]
    fn frozen_nodes_extend_linearly() {
        let xs: Vec<f64> = (0..9).map(|k| k as f64 * 0.25).collect();
        let ys = xs.clone();
        // liquid in the left half with gradient near a vertex; frozen right
        let field: Vec<Vec<Option<(f64, f64)>>> = ys
            .iter()
            .map(|_| {
                xs.iter()
                    .map(|&x| {
                        if x < 1.0 {
                            Some((0.97, 0.01))
                        } else {
                            None
                        }
                    })
                    .collect()
            })
            .collect();
        let hf = height_reconstruct(&xs, &ys, &field, 1e-6).unwrap();
        // frozen side snapped to the (1, 0) vertex
        assert_eq!(hf.grad[3][8], (1.0, 0.0));
        // height affine along the frozen rows
        let row = &hf.h[2];
        let d1 = row[7] - row[6];
        let d2 = row[8] - row[7];
        assert!((d1 - d2).abs() < 1e-12);
    }
}
