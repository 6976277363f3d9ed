//! Minimal SVG plots: polylines and scatter markers in a fitted viewport.

use std::fmt::Write as _;

pub struct SvgPlot {
    width: f64,
    height: f64,
    x_range: (f64, f64),
    y_range: (f64, f64),
    body: String,
}

impl SvgPlot {
    pub fn new(x_range: (f64, f64), y_range: (f64, f64)) -> Self {
        SvgPlot {
            width: 720.0,
            height: 540.0,
            x_range,
            y_range,
            body: String::new(),
        }
    }

    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        let sx = (x - self.x_range.0) / (self.x_range.1 - self.x_range.0);
        let sy = (y - self.y_range.0) / (self.y_range.1 - self.y_range.0);
        (
            40.0 + sx * (self.width - 80.0),
            self.height - 40.0 - sy * (self.height - 80.0),
        )
    }

    pub fn polyline(&mut self, pts: &[(f64, f64)], color: &str, width: f64) {
        if pts.is_empty() {
            return;
        }
        let mut d = String::new();
        for (k, &(x, y)) in pts.iter().enumerate() {
            let (px, py) = self.map(x, y);
            let _ = write!(d, "{}{px:.2},{py:.2}", if k == 0 { "" } else { " " });
        }
        let _ = writeln!(
            self.body,
            r#"<polyline points="{d}" fill="none" stroke="{color}" stroke-width="{width}"/>"#
        );
    }

    pub fn scatter(&mut self, pts: &[(f64, f64)], color: &str, radius: f64) {
        for &(x, y) in pts {
            let (px, py) = self.map(x, y);
            let _ = writeln!(
                self.body,
                r#"<circle cx="{px:.2}" cy="{py:.2}" r="{radius}" fill="{color}"/>"#
            );
        }
    }

    pub fn render(&self, title: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
            w = self.width,
            h = self.height
        );
        let _ = writeln!(
            s,
            r#"<rect width="{w}" height="{h}" fill="white"/>"#,
            w = self.width,
            h = self.height
        );
        let _ = writeln!(
            s,
            r#"<text x="20" y="24" font-family="monospace" font-size="14">{title}</text>"#
        );
        s.push_str(&self.body);
        s.push_str("</svg>\n");
        s
    }
}
