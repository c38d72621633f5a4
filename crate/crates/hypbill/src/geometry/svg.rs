//! Poincare-disk drawings.

use std::fmt::Write;

use super::hyperboloid::*;
use super::trace::{GeodesicSegment, Trace};
use super::DiskRealization;
use crate::error::Result;

#[derive(Clone, Debug, PartialEq)]
pub struct SvgOptions {
    /// Width and height of the picture in pixels.
    pub size: u32,
    /// Draw tiles up to this tiling distance from the base tile.
    pub radius: u32,
    /// Print edge labels (even `q` only).
    pub labels: bool,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            size: 800,
            radius: 4,
            labels: true,
        }
    }
}

struct Canvas {
    half: f64,
    scale: f64,
}

impl Canvas {
    fn screen(&self, z: [f64; 2]) -> [f64; 2] {
        [self.half + self.scale * z[0], self.half - self.scale * z[1]]
    }

    /// SVG path commands continuing to `b` along the geodesic from `a`.
    fn arc_to(&self, a: [f64; 2], b: [f64; 2]) -> String {
        let (sa, sb) = (self.screen(a), self.screen(b));
        let cross = a[0] * b[1] - a[1] * b[0];
        let n2 = a[0] * a[0] + a[1] * a[1];
        if cross.abs() < 1e-12 || n2 < 1e-24 {
            return format!("L {:.3} {:.3}", sb[0], sb[1]);
        }
        // circle through a, b and the inversion of a in the unit circle
        let inv = [a[0] / n2, a[1] / n2];
        let Some((c, rad)) = circle_through(a, b, inv) else {
            return format!("L {:.3} {:.3}", sb[0], sb[1]);
        };
        let sc = self.screen(c);
        let turn = (sa[0] - sc[0]) * (sb[1] - sc[1]) - (sa[1] - sc[1]) * (sb[0] - sc[0]);
        let sweep = u8::from(turn > 0.0);
        let r = rad * self.scale;
        format!("A {r:.3} {r:.3} 0 0 {sweep} {:.3} {:.3}", sb[0], sb[1])
    }

    fn geodesic(&self, a: [f64; 2], b: [f64; 2]) -> String {
        let sa = self.screen(a);
        format!("M {:.3} {:.3} {}", sa[0], sa[1], self.arc_to(a, b))
    }
}

fn circle_through(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> Option<([f64; 2], f64)> {
    let d = 2.0 * (a[0] * (b[1] - c[1]) + b[0] * (c[1] - a[1]) + c[0] * (a[1] - b[1]));
    if d.abs() < 1e-300 {
        return None;
    }
    let (a2, b2, c2) = (
        a[0] * a[0] + a[1] * a[1],
        b[0] * b[0] + b[1] * b[1],
        c[0] * c[0] + c[1] * c[1],
    );
    let ux = (a2 * (b[1] - c[1]) + b2 * (c[1] - a[1]) + c2 * (a[1] - b[1])) / d;
    let uy = (a2 * (c[0] - b[0]) + b2 * (a[0] - c[0]) + c2 * (b[0] - a[0])) / d;
    let r = ((a[0] - ux).powi(2) + (a[1] - uy).powi(2)).sqrt();
    Some(([ux, uy], r))
}

/// Draws the realized tiles within `opts.radius`, optionally highlighting
/// a traced segment and the tiles it visits.
pub fn render_svg(
    r: &DiskRealization,
    opts: &SvgOptions,
    traced: Option<(&GeodesicSegment, &Trace)>,
) -> Result<String> {
    let g = &r.graph;
    let size = f64::from(opts.size);
    let canvas = Canvas {
        half: size / 2.0,
        scale: size / 2.0 - 4.0,
    };
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{0}" height="{0}" viewBox="0 0 {0} {0}">"#,
        opts.size
    );
    let _ = writeln!(
        out,
        r#"<circle cx="{0}" cy="{0}" r="{1}" fill="white" stroke="black"/>"#,
        canvas.half, canvas.scale
    );
    let visited: std::collections::BTreeSet<u32> = traced
        .map(|(_, t)| t.path.tiles.iter().copied().collect())
        .unwrap_or_default();
    for t in r.realized_tiles() {
        if !matches!(g.tile_distance[t as usize], Some(d) if d <= opts.radius) {
            continue;
        }
        let zs: Vec<[f64; 2]> = r.corners(t)?.iter().map(to_disk).collect();
        let mut d = String::new();
        let s0 = canvas.screen(zs[0]);
        let _ = write!(d, "M {:.3} {:.3}", s0[0], s0[1]);
        for j in 0..zs.len() {
            let _ = write!(d, " {}", canvas.arc_to(zs[j], zs[(j + 1) % zs.len()]));
        }
        let fill = if t == g.base_tile {
            "#c8d8f0"
        } else if visited.contains(&t) {
            "#f6e3a1"
        } else {
            "none"
        };
        let _ = writeln!(
            out,
            r#"<path d="{d} Z" fill="{fill}" stroke="black" stroke-width="0.6"/>"#
        );
    }
    if let (true, Some(labels)) = (opts.labels, &r.labels) {
        for t in r.realized_tiles() {
            if !matches!(g.tile_distance[t as usize], Some(d) if d <= opts.radius) {
                continue;
            }
            let corners = r.corners(t)?;
            let center = r.center(t)?;
            let p = corners.len();
            for (j, &e) in g.tiles[t as usize].edges.iter().enumerate() {
                let Some(label) = labels.label(e) else { continue };
                let mid = add(&corners[(j + p - 1) % p], &corners[j]);
                let spot = normalize_point(&lerp(&normalize_point(&mid), &center, 0.2));
                let z = to_disk(&spot);
                let font = 14.0 * (1.0 - (z[0] * z[0] + z[1] * z[1]));
                if font < 2.0 {
                    continue;
                }
                let s = canvas.screen(z);
                let _ = writeln!(
                    out,
                    r#"<text x="{:.3}" y="{:.3}" font-size="{font:.2}" text-anchor="middle" dominant-baseline="middle">{label}</text>"#,
                    s[0], s[1]
                );
            }
        }
    }
    if let Some((seg, _)) = traced {
        let ends = [seg.from, seg.to].map(|e| match e {
            super::Endpoint::Vertex(v) => r.vertices[v as usize].map(|x| to_disk(&x)),
            super::Endpoint::Point(x) => Some(to_disk(&normalize_point(&x))),
        });
        if let [Some(a), Some(b)] = ends {
            let _ = writeln!(
                out,
                r#"<path d="{}" fill="none" stroke="crimson" stroke-width="2"/>"#,
                canvas.geodesic(a, b)
            );
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}
