//! Static SVG rendering: median-matrix heatmaps and sweep curves.
//! Plain text output, deterministic for identical inputs.

use std::fmt::Write;

use super::median::MedianMatrix;
use super::sweep::SweepCurve;

const CELL: f64 = 34.0;
const MARGIN_LEFT: f64 = 64.0;
const MARGIN_TOP: f64 = 42.0;

// Five-stop dark-to-bright colormap interpolated linearly.
const STOPS: [(f64, f64, f64); 5] = [
    (0.267, 0.005, 0.329),
    (0.229, 0.322, 0.546),
    (0.127, 0.566, 0.551),
    (0.369, 0.789, 0.383),
    (0.993, 0.906, 0.144),
];

fn colormap(t: f64) -> String {
    let t = t.clamp(0.0, 1.0) * (STOPS.len() - 1) as f64;
    let i = (t.floor() as usize).min(STOPS.len() - 2);
    let f = t - i as f64;
    let lerp = |a: f64, b: f64| a + (b - a) * f;
    let (r, g, b) = (
        lerp(STOPS[i].0, STOPS[i + 1].0),
        lerp(STOPS[i].1, STOPS[i + 1].1),
        lerp(STOPS[i].2, STOPS[i + 1].2),
    );
    format!(
        "#{:02x}{:02x}{:02x}",
        (r * 255.0).round() as u8,
        (g * 255.0).round() as u8,
        (b * 255.0).round() as u8
    )
}

/// Renders a median matrix as a heatmap. `vmin`/`vmax` set the shared color
/// scale; missing cells are drawn hollow.
pub fn heatmap_svg(matrix: &MedianMatrix, vmin: f64, vmax: f64) -> String {
    let rows = matrix.row_labels.len();
    let cols = matrix.col_labels.len();
    let width = MARGIN_LEFT + cols as f64 * CELL + 16.0;
    let height = MARGIN_TOP + rows as f64 * CELL + 40.0;
    let span = if vmax > vmin { vmax - vmin } else { 1.0 };

    let mut out = String::new();
    let _ = write!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         font-family=\"sans-serif\" font-size=\"11\">\n"
    );
    let _ = write!(
        out,
        "<text x=\"{MARGIN_LEFT}\" y=\"16\" font-size=\"13\">{} by {}</text>\n",
        matrix.metric, matrix.group_key
    );
    for (j, label) in matrix.col_labels.iter().enumerate() {
        let x = MARGIN_LEFT + (j as f64 + 0.5) * CELL;
        let _ = write!(
            out,
            "<text x=\"{x}\" y=\"{}\" text-anchor=\"middle\">{label}</text>\n",
            MARGIN_TOP - 6.0
        );
    }
    for (i, label) in matrix.row_labels.iter().enumerate() {
        let y = MARGIN_TOP + (i as f64 + 0.65) * CELL;
        let _ = write!(
            out,
            "<text x=\"{}\" y=\"{y}\" text-anchor=\"end\">{label}</text>\n",
            MARGIN_LEFT - 6.0
        );
    }
    for i in 0..rows {
        for j in 0..cols {
            let x = MARGIN_LEFT + j as f64 * CELL;
            let y = MARGIN_TOP + i as f64 * CELL;
            match matrix.values[i][j] {
                Some(v) => {
                    let fill = colormap((v - vmin) / span);
                    let _ = write!(
                        out,
                        "<rect x=\"{x}\" y=\"{y}\" width=\"{CELL}\" height=\"{CELL}\" \
                         fill=\"{fill}\"><title>{v:.4}</title></rect>\n"
                    );
                }
                None => {
                    let _ = write!(
                        out,
                        "<rect x=\"{x}\" y=\"{y}\" width=\"{CELL}\" height=\"{CELL}\" \
                         fill=\"white\" stroke=\"#bbbbbb\"/>\n"
                    );
                }
            }
        }
    }
    let legend_y = MARGIN_TOP + rows as f64 * CELL + 24.0;
    let _ = write!(
        out,
        "<text x=\"{MARGIN_LEFT}\" y=\"{legend_y}\">scale {vmin:.3} to {vmax:.3}</text>\n"
    );
    out.push_str("</svg>\n");
    out
}

const PLOT_W: f64 = 520.0;
const PLOT_H: f64 = 300.0;
const PLOT_MARGIN: f64 = 48.0;
const PALETTE: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

/// Renders one or more sweep curves (median dots with one-sigma whiskers)
/// on a shared delta axis.
pub fn sweep_svg(curves: &[SweepCurve]) -> String {
    let mut d_lo = i32::MAX;
    let mut d_hi = i32::MIN;
    let mut v_lo = f64::INFINITY;
    let mut v_hi = f64::NEG_INFINITY;
    for curve in curves {
        for i in 0..curve.delta.len() {
            d_lo = d_lo.min(curve.delta[i]);
            d_hi = d_hi.max(curve.delta[i]);
            v_lo = v_lo.min(curve.median[i] - curve.std[i]);
            v_hi = v_hi.max(curve.median[i] + curve.std[i]);
        }
    }
    if curves.is_empty() || d_lo > d_hi {
        return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"10\" height=\"10\"/>\n".into();
    }
    let d_span = ((d_hi - d_lo) as f64).max(1.0);
    let v_span = (v_hi - v_lo).max(1e-12);
    let x_of = |d: i32| PLOT_MARGIN + (d - d_lo) as f64 / d_span * PLOT_W;
    let y_of = |v: f64| PLOT_MARGIN + (v_hi - v) / v_span * PLOT_H;

    let width = PLOT_MARGIN * 2.0 + PLOT_W;
    let height = PLOT_MARGIN * 2.0 + PLOT_H + 20.0;
    let mut out = String::new();
    let _ = write!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         font-family=\"sans-serif\" font-size=\"11\">\n"
    );
    let axis_y = PLOT_MARGIN + PLOT_H;
    let _ = write!(
        out,
        "<line x1=\"{PLOT_MARGIN}\" y1=\"{axis_y}\" x2=\"{}\" y2=\"{axis_y}\" stroke=\"black\"/>\n",
        PLOT_MARGIN + PLOT_W
    );
    let _ = write!(
        out,
        "<line x1=\"{PLOT_MARGIN}\" y1=\"{PLOT_MARGIN}\" x2=\"{PLOT_MARGIN}\" y2=\"{axis_y}\" stroke=\"black\"/>\n"
    );
    if d_lo <= 0 && d_hi >= 0 {
        let x0 = x_of(0);
        let _ = write!(
            out,
            "<line x1=\"{x0}\" y1=\"{PLOT_MARGIN}\" x2=\"{x0}\" y2=\"{axis_y}\" \
             stroke=\"#888888\" stroke-dasharray=\"4 3\"/>\n"
        );
    }
    let _ = write!(
        out,
        "<text x=\"{PLOT_MARGIN}\" y=\"{}\">delta {d_lo} to {d_hi}; value {v_lo:.3} to {v_hi:.3}</text>\n",
        axis_y + 28.0
    );

    for (c, curve) in curves.iter().enumerate() {
        let color = PALETTE[c % PALETTE.len()];
        let points: Vec<String> = curve
            .delta
            .iter()
            .zip(&curve.median)
            .map(|(&d, &m)| format!("{:.2},{:.2}", x_of(d), y_of(m)))
            .collect();
        let _ = write!(
            out,
            "<polyline fill=\"none\" stroke=\"{color}\" points=\"{}\"/>\n",
            points.join(" ")
        );
        for i in 0..curve.delta.len() {
            let x = x_of(curve.delta[i]);
            let (y1, y2) = (
                y_of(curve.median[i] + curve.std[i]),
                y_of(curve.median[i] - curve.std[i]),
            );
            let _ = write!(
                out,
                "<line x1=\"{x:.2}\" y1=\"{y1:.2}\" x2=\"{x:.2}\" y2=\"{y2:.2}\" stroke=\"{color}\"/>\n"
            );
            let _ = write!(
                out,
                "<circle cx=\"{x:.2}\" cy=\"{:.2}\" r=\"2.4\" fill=\"{color}\"/>\n",
                y_of(curve.median[i])
            );
        }
        let _ = write!(
            out,
            "<text x=\"{}\" y=\"{}\" fill=\"{color}\">{}</text>\n",
            PLOT_MARGIN + PLOT_W - 40.0,
            PLOT_MARGIN + 14.0 * (c + 1) as f64,
            curve.metric
        );
    }
    out.push_str("</svg>\n");
    out
}
