// SPDX-License-Identifier: Apache-2.0

//! Bare-bones SVG output for quick looks at runs and sweeps.

use std::fmt::Write as _;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 50.0;
const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if !lo.is_finite() {
        (0.0, 1.0)
    } else if hi - lo < 1e-12 {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

fn header(out: &mut String, title: &str, x_label: &str, y_label: &str) {
    let _ = write!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="12">
<rect width="100%" height="100%" fill="white"/>
<text x="{}" y="20" text-anchor="middle" font-size="14">{}</text>
<text x="{}" y="{}" text-anchor="middle">{}</text>
<text x="14" y="{}" text-anchor="middle" transform="rotate(-90 14 {})">{}</text>
"#,
        WIDTH / 2.0,
        escape(title),
        WIDTH / 2.0,
        HEIGHT - 10.0,
        escape(x_label),
        HEIGHT / 2.0,
        HEIGHT / 2.0,
        escape(y_label),
    );
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn axes(out: &mut String, x: (f64, f64), y: (f64, f64)) {
    let (x0, x1, y0, y1) = (MARGIN, WIDTH - MARGIN, HEIGHT - MARGIN, MARGIN);
    let _ = writeln!(
        out,
        r#"<rect x="{x0}" y="{y1}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        x1 - x0,
        y0 - y1
    );
    let _ = writeln!(out, r#"<text x="{x0}" y="{}" text-anchor="middle">{:.3}</text>"#, y0 + 15.0, x.0);
    let _ = writeln!(out, r#"<text x="{x1}" y="{}" text-anchor="middle">{:.3}</text>"#, y0 + 15.0, x.1);
    let _ = writeln!(out, r#"<text x="{}" y="{y0}" text-anchor="end">{:.3}</text>"#, x0 - 4.0, y.0);
    let _ = writeln!(out, r#"<text x="{}" y="{}" text-anchor="end">{:.3}</text>"#, x0 - 4.0, y1 + 4.0, y.1);
}

fn project(v: f64, (lo, hi): (f64, f64), from: f64, to: f64) -> f64 {
    from + (v - lo) / (hi - lo) * (to - from)
}

/// Several named curves over a shared x axis.
pub fn line_plot(title: &str, x_label: &str, x: &[f64], curves: &[(&str, &[f64])]) -> String {
    let mut out = String::new();
    header(&mut out, title, x_label, "");
    let xb = bounds(x.iter().copied());
    let yb = bounds(curves.iter().flat_map(|(_, ys)| ys.iter().copied()));
    axes(&mut out, xb, yb);
    for (i, (name, ys)) in curves.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let points: Vec<String> = x
            .iter()
            .zip(ys.iter())
            .filter(|(_, y)| y.is_finite())
            .map(|(&xv, &yv)| {
                format!(
                    "{:.2},{:.2}",
                    project(xv, xb, MARGIN, WIDTH - MARGIN),
                    project(yv, yb, HEIGHT - MARGIN, MARGIN)
                )
            })
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            points.join(" ")
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" fill="{color}">{}</text>"#,
            WIDTH - MARGIN + 4.0,
            MARGIN + 14.0 * i as f64 + 10.0,
            escape(name)
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Grayscale map of `z[i * ys.len() + j]` at (xs[i], ys[j]); missing cells are red.
pub fn heatmap(title: &str, x_label: &str, y_label: &str, xs: &[f64], ys: &[f64], z: &[Option<f64>]) -> String {
    let mut out = String::new();
    header(&mut out, title, x_label, y_label);
    let xb = bounds(xs.iter().copied());
    let yb = bounds(ys.iter().copied());
    let zb = bounds(z.iter().flatten().copied());
    axes(&mut out, xb, yb);
    let cw = (WIDTH - 2.0 * MARGIN) / xs.len().max(1) as f64;
    let ch = (HEIGHT - 2.0 * MARGIN) / ys.len().max(1) as f64;
    for i in 0..xs.len() {
        for j in 0..ys.len() {
            let fill = match z.get(i * ys.len() + j).copied().flatten() {
                Some(v) => {
                    let level = (255.0 * (v - zb.0) / (zb.1 - zb.0)).round().clamp(0.0, 255.0) as u8;
                    format!("rgb({level},{level},{level})")
                }
                None => "red".to_string(),
            };
            let _ = writeln!(
                out,
                r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{fill}"/>"#,
                MARGIN + i as f64 * cw,
                HEIGHT - MARGIN - (j + 1) as f64 * ch,
                cw + 0.05,
                ch + 0.05
            );
        }
    }
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}">{:.4} .. {:.4}</text>"#,
        WIDTH - MARGIN,
        MARGIN - 6.0,
        zb.0,
        zb.1
    );
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_plot_has_one_polyline_per_curve() {
        let x = [0.0, 1.0, 2.0];
        let svg = line_plot("a < b", "t", &x, &[("P1", &[0.0, 0.5, 1.0]), ("F", &[1.0, 1.0, 1.0])]);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(svg.contains("a &lt; b"));
    }

    #[test]
    fn heatmap_marks_missing_cells() {
        let svg = heatmap("f", "x", "y", &[0.0, 1.0], &[0.0, 1.0, 2.0], &[Some(0.1), None, Some(0.3), Some(0.4), Some(0.5), Some(0.9)]);
        assert_eq!(svg.matches("<rect x=").count(), 1 + 6);
        assert_eq!(svg.matches("fill=\"red\"").count(), 1);
    }
}
