//! Static SVG of a two-coordinate projection. Floats are used for drawing only.

use std::collections::HashSet;
use std::fmt::Write;

use monopath_core::io::RealizedJson;

const SIZE: f64 = 640.0;
const MARGIN: f64 = 48.0;

pub fn render(j: &RealizedJson, (cx, cy): (usize, usize)) -> String {
    let pts: Vec<(f64, f64)> = j.coords.iter().map(|x| x.approx()).map(|a| (a[cx], a[cy])).collect();
    let center = j.sweep_center.as_ref().map(|o| o.approx()).map(|a| (a[cx], a[cy]));
    let all: Vec<(f64, f64)> = pts.iter().copied().chain(center).collect();
    let (x0, x1) = bounds(all.iter().map(|p| p.0));
    let (y0, y1) = bounds(all.iter().map(|p| p.1));
    let span = SIZE - 2.0 * MARGIN;
    let map = |(x, y): (f64, f64)| (MARGIN + (x - x0) / (x1 - x0) * span, SIZE - MARGIN - (y - y0) / (y1 - y0) * span);

    let path_edges: HashSet<(usize, usize)> = j.path.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]))).collect();
    let mut s = String::new();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#).unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    writeln!(
        s,
        r#"<text x="{MARGIN}" y="24" font-family="sans-serif" font-size="14">Q_{} projected to x{} (right), x{} (up); {} vertices</text>"#,
        j.m,
        cx + 1,
        cy + 1,
        pts.len()
    )
    .unwrap();
    for &[u, v] in &j.combinatorics.edges {
        if path_edges.contains(&(u, v)) {
            continue;
        }
        line(&mut s, map(pts[u]), map(pts[v]), "#b0b0b0", 0.8);
    }
    for w in j.path.windows(2) {
        line(&mut s, map(pts[w[0]]), map(pts[w[1]]), "#c0392b", 2.0);
    }
    for (i, &p) in pts.iter().enumerate() {
        let (x, y) = map(p);
        writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="black"><title>{}</title></circle>"#, label(&j.combinatorics.vertices[i])).unwrap();
    }
    if let Some(o) = center {
        let (x, y) = map(o);
        line(&mut s, (x - 6.0, y - 6.0), (x + 6.0, y + 6.0), "#1f4e9c", 2.0);
        line(&mut s, (x - 6.0, y + 6.0), (x + 6.0, y - 6.0), "#1f4e9c", 2.0);
        writeln!(s, r##"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="13" fill="#1f4e9c">O</text>"##, x + 8.0, y - 8.0).unwrap();
    }
    s.push_str("</svg>\n");
    s
}

fn bounds(vals: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = vals.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if hi > lo {
        (lo, hi)
    } else {
        (lo - 1.0, lo + 1.0)
    }
}

fn line(s: &mut String, a: (f64, f64), b: (f64, f64), color: &str, width: f64) {
    writeln!(
        s,
        r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{color}" stroke-width="{width}"/>"#,
        a.0, a.1, b.0, b.1
    )
    .unwrap();
}

fn label(v: &[u32]) -> String {
    let parts: Vec<String> = v.iter().map(u32::to_string).collect();
    format!("{{{}}}", parts.join(","))
}
