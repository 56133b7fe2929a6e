//! Static SVG figure of a point set: polygon edges solid, remaining pairs
//! dashed, every segment labelled with its integer length.

use std::fmt::Write as _;

use anyhow::{bail, Result};
use dngon_core::kernel::DiophantineSet;
use dngon_core::search::assemble_polygon;

const SIZE: f64 = 640.0;
const MARGIN: f64 = 48.0;

/// Polygon order for drawing: the baseline sweep when it applies, else by
/// angle about the centroid.
fn polygon_order(set: &DiophantineSet, coords: &[(f64, f64)]) -> Vec<usize> {
    if set.len() >= 3 {
        if let Ok(order) = assemble_polygon(set.points(), 0, 1) {
            return order;
        }
    }
    let n = coords.len() as f64;
    let cx = coords.iter().map(|p| p.0).sum::<f64>() / n;
    let cy = coords.iter().map(|p| p.1).sum::<f64>() / n;
    let mut idx: Vec<usize> = (0..coords.len()).collect();
    idx.sort_by(|&a, &b| {
        let ta = (coords[a].1 - cy).atan2(coords[a].0 - cx);
        let tb = (coords[b].1 - cy).atan2(coords[b].0 - cx);
        ta.total_cmp(&tb)
    });
    idx
}

pub fn render_svg(set: &DiophantineSet) -> Result<String> {
    if set.is_empty() {
        bail!("cannot render an empty set");
    }
    let coords: Vec<(f64, f64)> = set.points().iter().map(|p| p.to_f64()).collect();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in &coords {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-9);
    let scale = (SIZE - 2.0 * MARGIN) / span;
    // flip y so the figure reads in the usual orientation
    let map = |(x, y): (f64, f64)| (MARGIN + (x - x0) * scale, SIZE - MARGIN - (y - y0) * scale);
    let screen: Vec<(f64, f64)> = coords.iter().copied().map(map).collect();

    let n = set.len();
    let order = polygon_order(set, &coords);
    let mut on_polygon = vec![vec![false; n]; n];
    if n >= 3 {
        for i in 0..n {
            let (a, b) = (order[i], order[(i + 1) % n]);
            on_polygon[a][b] = true;
            on_polygon[b][a] = true;
        }
    }

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let mut labels = String::new();
    for i in 0..n {
        for j in i + 1..n {
            let ((ax, ay), (bx, by)) = (screen[i], screen[j]);
            let style = if on_polygon[i][j] {
                r#"stroke="black" stroke-width="2""#
            } else {
                r##"stroke="#999" stroke-width="1" stroke-dasharray="4 3""##
            };
            let _ = writeln!(
                s,
                r#"<line x1="{ax:.2}" y1="{ay:.2}" x2="{bx:.2}" y2="{by:.2}" {style}/>"#
            );
            let _ = writeln!(
                labels,
                r#"<text x="{:.2}" y="{:.2}" font-size="12" font-family="sans-serif" text-anchor="middle" fill="{}">{}</text>"#,
                (ax + bx) / 2.0,
                (ay + by) / 2.0 - 3.0,
                if on_polygon[i][j] { "black" } else { "#666" },
                set.distance(i, j)
            );
        }
    }
    s.push_str(&labels);
    for (i, &(x, y)) in screen.iter().enumerate() {
        let _ = writeln!(
            s,
            r##"<circle cx="{x:.2}" cy="{y:.2}" r="4" fill="#c0392b"/>"##
        );
        let _ = writeln!(
            s,
            r##"<text x="{:.2}" y="{:.2}" font-size="13" font-family="sans-serif" fill="#c0392b">{i}</text>"##,
            x + 6.0,
            y + 14.0
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use dngon_core::kernel::QuadPoint;

    #[test]
    fn rectangle_labels() {
        let pts = [(0, 0), (3, 0), (3, 4), (0, 4)]
            .map(|(x, y)| QuadPoint::from_ints(x, y))
            .to_vec();
        let set = DiophantineSet::certify(pts, None).unwrap();
        let svg = render_svg(&set).unwrap();
        let mut labels: Vec<&str> = svg
            .lines()
            .filter(|l| l.starts_with("<text") && l.contains("middle"))
            .map(|l| l.rsplit_once("\">").unwrap().1.trim_end_matches("</text>"))
            .collect();
        labels.sort();
        assert_eq!(labels, ["3", "3", "4", "4", "5", "5"]);
        assert_eq!(svg.matches("stroke-dasharray").count(), 2);
        assert_eq!(svg, render_svg(&set).unwrap());
    }
}
