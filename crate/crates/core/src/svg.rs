//! SVG drawings of curves on the sphere and sheets of family members.

use crate::error::{LcError, Result};
use crate::families::FamilyGrid;
use crate::sphere::{e1, Curve, Vec3};
use std::fmt::Write;

/// Fewest samples used for a stroke.
pub const MIN_STROKE_SAMPLES: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Projection {
    Orthographic,
    Stereographic,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SvgScene {
    view: Vec3,
    pub projection: Projection,
    pub size: f64,
    pub stroke: f64,
    pub marker_e1: bool,
    pub marker_base: bool,
}

impl Default for SvgScene {
    fn default() -> Self {
        SvgScene {
            view: Vec3::new(1.0, 1.0, 1.0).normalize(),
            projection: Projection::Orthographic,
            size: 320.0,
            stroke: 1.6,
            marker_e1: true,
            marker_base: true,
        }
    }
}

struct Basis {
    d: Vec3,
    right: Vec3,
    up: Vec3,
}

impl SvgScene {
    pub fn with_view(mut self, v: Vec3) -> Result<Self> {
        let n = v.norm();
        if !(n > 1e-12 && n.is_finite()) {
            return Err(LcError::Config("viewpoint must be a nonzero vector".into()));
        }
        self.view = v / n;
        Ok(self)
    }

    pub fn view(&self) -> Vec3 {
        self.view
    }

    fn basis(&self) -> Basis {
        let d = self.view;
        let z = Vec3::new(0.0, 0.0, 1.0);
        let up0 = if d.cross(&z).norm() < 1e-6 { Vec3::new(0.0, 1.0, 0.0) } else { z };
        let up = (up0 - d * up0.dot(&d)).normalize();
        Basis { d, right: up.cross(&d), up }
    }

    /// Screen point in [−1, 1]² (y up) and whether p faces the viewer.
    fn project(&self, b: &Basis, p: &Vec3) -> ([f64; 2], bool) {
        let front = p.dot(&b.d) >= 0.0;
        let (x, y) = (p.dot(&b.right), p.dot(&b.up));
        match self.projection {
            Projection::Orthographic => ([x, y], front),
            Projection::Stereographic => {
                let k = 1.0 / (1.0 + p.dot(&b.d)).max(0.05);
                ([0.5 * x * k, 0.5 * y * k], front)
            }
        }
    }
}

/// Smallest m ≤ 8 with γ(t + 1/m) = γ(t), i.e. the curve traverses its trace m times.
fn retrace_count(c: &Curve) -> usize {
    (2..=8)
        .find(|&m| {
            (0..64).all(|i| {
                let t = i as f64 / (64.0 * m as f64);
                (c.point(t + 1.0 / m as f64) - c.point(t)).norm() < 1e-9
            })
        })
        .unwrap_or(1)
}

fn esc(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn polyline(out: &mut String, pts: &[[f64; 2]], dashed: bool, width: f64) {
    if pts.len() < 2 {
        return;
    }
    let coords: Vec<String> = pts.iter().map(|p| format!("{:.3},{:.3}", p[0], p[1])).collect();
    let dash = if dashed { r#" stroke-dasharray="4 3" stroke-opacity="0.55""# } else { "" };
    let _ = writeln!(
        out,
        r#"<polyline fill="none" stroke="black" stroke-width="{width}"{dash} points="{}"/>"#,
        coords.join(" ")
    );
}

/// Drawing of one curve inside the square [x0, x0 + w]², as SVG elements.
fn curve_body(c: &Curve, scene: &SvgScene, samples: usize, x0: f64, y0: f64, w: f64) -> String {
    let b = scene.basis();
    let n = samples.max(MIN_STROKE_SAMPLES);
    let m = retrace_count(c);
    let r = 0.45 * w;
    let (cx, cy) = (x0 + 0.5 * w, y0 + 0.5 * w);
    let screen = |q: [f64; 2]| [cx + r * q[0], cy - r * q[1]];
    let mut out = String::new();
    let _ = writeln!(out, r##"<circle cx="{cx:.3}" cy="{cy:.3}" r="{r:.3}" fill="none" stroke="#999" stroke-width="0.6"/>"##);
    let width = scene.stroke * w / 320.0;
    let mut run: Vec<[f64; 2]> = Vec::new();
    let mut run_front = true;
    for i in 0..=n {
        let t = i as f64 / n as f64;
        let p = c.point(t);
        let (q, front) = scene.project(&b, &p);
        // Retraced strokes are pushed apart radially so each traversal stays visible.
        let lap = ((t * m as f64).floor() as usize).min(m - 1);
        let k = 1.0 + 0.02 * lap as f64;
        let s = screen([q[0] * k, q[1] * k]);
        if i > 0 && front != run_front {
            let last = *run.last().expect("nonempty run");
            polyline(&mut out, &run, !run_front, width);
            run = vec![last];
        }
        run_front = front;
        run.push(s);
    }
    polyline(&mut out, &run, !run_front, width);
    if scene.marker_e1 {
        let (q, front) = scene.project(&b, &e1());
        let s = screen(q);
        let op = if front { 1.0 } else { 0.5 };
        let _ = writeln!(
            out,
            r##"<circle cx="{:.3}" cy="{:.3}" r="{:.3}" fill="#c0392b" fill-opacity="{op}"/>"##,
            s[0],
            s[1],
            2.5 * w / 320.0
        );
    }
    if scene.marker_base {
        let j = c.eval(0.0);
        let tip = (j.p + j.v.normalize() * 0.18).normalize();
        let (a, _) = scene.project(&b, &j.p);
        let (z, _) = scene.project(&b, &tip);
        let (a, z) = (screen(a), screen(z));
        let (dx, dy) = (z[0] - a[0], z[1] - a[1]);
        let l = dx.hypot(dy).max(1e-9);
        let (ux, uy) = (dx / l, dy / l);
        let h = 6.0 * w / 320.0;
        let left = [z[0] - h * ux - 0.5 * h * uy, z[1] - h * uy + 0.5 * h * ux];
        let right = [z[0] - h * ux + 0.5 * h * uy, z[1] - h * uy - 0.5 * h * ux];
        let _ = writeln!(
            out,
            r##"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="#2471a3" stroke-width="{width:.3}"/>"##,
            a[0], a[1], z[0], z[1]
        );
        let _ = writeln!(
            out,
            r##"<polygon fill="#2471a3" points="{:.3},{:.3} {:.3},{:.3} {:.3},{:.3}"/>"##,
            z[0], z[1], left[0], left[1], right[0], right[1]
        );
    }
    out
}

fn document(w: f64, h: f64, title: &str, body: &str) -> String {
    format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n<title>{}</title>\n<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n{body}</svg>\n",
        esc(title)
    )
}

pub fn render_curve(c: &Curve, scene: &SvgScene, samples: usize) -> String {
    let s = scene.size;
    document(s, s, &c.source().to_string(), &curve_body(c, scene, samples, 0.0, 0.0, s))
}

/// Small multiples of the cell centres, columns along the first chart axis, rows along the second.
pub fn render_sheet(f: &FamilyGrid, scene: &SvgScene, samples: usize) -> String {
    let cell = 120.0;
    let label = 14.0;
    let (w, h) = (cell * f.m1 as f64, (cell + label) * f.m2 as f64);
    let mut body = String::new();
    for j in 0..f.m2 {
        for i in 0..f.m1 {
            let (x0, y0) = (cell * i as f64, (cell + label) * j as f64);
            let _ = writeln!(body, "<g>");
            body.push_str(&curve_body(&f.centre(i, j), scene, samples, x0, y0, cell));
            let (u, v) = ((i as f64 + 0.5) / f.m1 as f64, (j as f64 + 0.5) / f.m2 as f64);
            let _ = writeln!(
                body,
                r#"<text x="{:.1}" y="{:.1}" font-size="9" font-family="monospace" text-anchor="middle">({u:.3}, {v:.3})</text>"#,
                x0 + 0.5 * cell,
                y0 + cell + 10.0
            );
            let _ = writeln!(body, "</g>");
        }
    }
    document(w, h, &format!("{} {}x{}", f.name, f.m1, f.m2), &body)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::nu;

    #[test]
    fn retrace_detection() {
        assert_eq!(retrace_count(&nu(1.0).unwrap()), 1);
        assert_eq!(retrace_count(&nu(2.0).unwrap()), 2);
        assert_eq!(retrace_count(&nu(3.0).unwrap()), 3);
    }

    #[test]
    fn zero_view_is_rejected() {
        assert!(SvgScene::default().with_view(Vec3::zeros()).is_err());
    }

    #[test]
    fn basis_is_orthonormal() {
        for v in [Vec3::new(1.0, 1.0, 1.0), Vec3::new(0.0, 0.0, 1.0), Vec3::new(0.0, 0.0, -2.0)] {
            let s = SvgScene::default().with_view(v).unwrap();
            let b = s.basis();
            let m = nalgebra::Matrix3::from_columns(&[b.right, b.up, b.d]);
            assert!((m.transpose() * m - nalgebra::Matrix3::identity()).abs().max() < 1e-12);
            assert!((m.determinant() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn titles_are_escaped() {
        assert_eq!(esc("a<b & \"c\""), "a&lt;b &amp; &quot;c&quot;");
    }
}
