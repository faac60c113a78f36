//! Deterministic standalone SVG line charts of measure values against k:
//! labeled axes, one polyline per measure, a lone marker when only one row
//! exists, and a warning (not an error) for empty measure columns.

use crate::report::Report;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN_L: f64 = 70.0;
const MARGIN_R: f64 = 130.0;
const MARGIN_T: f64 = 30.0;
const MARGIN_B: f64 = 50.0;
const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

fn fmt(x: f64) -> String {
    format!("{x:.2}")
}

/// Renders the report's sequence rows to SVG. Returns the document and any
/// warnings (e.g. skipped empty columns). Byte-identical for identical
/// reports.
pub fn emit_plot(report: &Report) -> (String, Vec<String>) {
    let mut warnings = Vec::new();
    let mut names: Vec<String> = Vec::new();
    for row in &report.rows {
        for name in row.measures.keys() {
            if !names.contains(name) {
                names.push(name.clone());
            }
        }
    }
    // A series is (name, points (k, value)); skip columns with no finite data.
    let mut series: Vec<(String, Vec<(f64, f64)>)> = Vec::new();
    for name in names {
        let pts: Vec<(f64, f64)> = report
            .rows
            .iter()
            .filter_map(|r| {
                r.measures
                    .get(&name)
                    .filter(|c| c.value.is_finite())
                    .map(|c| (r.k as f64, c.value))
            })
            .collect();
        if pts.is_empty() {
            warnings.push(format!("measure column {name:?} is empty; skipped"));
        } else {
            series.push((name, pts));
        }
    }

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"monospace\" font-size=\"12\">\n"
    ));
    svg.push_str(&format!(
        "<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n"
    ));

    if series.is_empty() {
        warnings.push("no plottable data".into());
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">no data</text>\n</svg>\n",
            fmt(WIDTH / 2.0),
            fmt(HEIGHT / 2.0)
        ));
        return (svg, warnings);
    }

    let xs: Vec<f64> = series.iter().flat_map(|s| s.1.iter().map(|p| p.0)).collect();
    let ys: Vec<f64> = series.iter().flat_map(|s| s.1.iter().map(|p| p.1)).collect();
    let (xmin, xmax) = bounds(&xs);
    let (ymin, ymax) = bounds(&ys);
    let (ymin, ymax) = (ymin.min(0.0), if ymax > ymin { ymax } else { ymin + 1.0 });
    let xspan = if xmax > xmin { xmax - xmin } else { 1.0 };
    let px = |x: f64| MARGIN_L + (x - xmin) / xspan * (WIDTH - MARGIN_L - MARGIN_R);
    let py = |y: f64| HEIGHT - MARGIN_B - (y - ymin) / (ymax - ymin) * (HEIGHT - MARGIN_T - MARGIN_B);

    // Axes with end-tick labels.
    svg.push_str(&format!(
        "<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"black\"/>\n\
         <line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{3}\" stroke=\"black\"/>\n",
        fmt(MARGIN_L),
        fmt(HEIGHT - MARGIN_B),
        fmt(WIDTH - MARGIN_R),
        fmt(MARGIN_T)
    ));
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">k</text>\n",
        fmt((MARGIN_L + WIDTH - MARGIN_R) / 2.0),
        fmt(HEIGHT - 12.0)
    ));
    svg.push_str(&format!(
        "<text x=\"16\" y=\"{}\" transform=\"rotate(-90 16 {})\" text-anchor=\"middle\">value</text>\n",
        fmt((MARGIN_T + HEIGHT - MARGIN_B) / 2.0),
        fmt((MARGIN_T + HEIGHT - MARGIN_B) / 2.0)
    ));
    for (x, anchor) in [(xmin, "start"), (xmax, "end")] {
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"{anchor}\">{x}</text>\n",
            fmt(px(x)),
            fmt(HEIGHT - MARGIN_B + 16.0)
        ));
    }
    for y in [ymin, ymax] {
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{y:.4}</text>\n",
            fmt(MARGIN_L - 6.0),
            fmt(py(y) + 4.0)
        ));
    }

    for (i, (name, pts)) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        if pts.len() == 1 {
            // Degenerate single-row plot: a lone marker.
            svg.push_str(&format!(
                "<circle cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"{color}\"/>\n",
                fmt(px(pts[0].0)),
                fmt(py(pts[0].1))
            ));
        } else {
            let path: Vec<String> = pts
                .iter()
                .map(|(x, y)| format!("{},{}", fmt(px(*x)), fmt(py(*y))))
                .collect();
            svg.push_str(&format!(
                "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"/>\n",
                path.join(" ")
            ));
        }
        // Legend entry.
        let ly = MARGIN_T + 16.0 * i as f64 + 8.0;
        svg.push_str(&format!(
            "<rect x=\"{}\" y=\"{}\" width=\"12\" height=\"12\" fill=\"{color}\"/>\n\
             <text x=\"{}\" y=\"{}\">{name}</text>\n",
            fmt(WIDTH - MARGIN_R + 12.0),
            fmt(ly),
            fmt(WIDTH - MARGIN_R + 30.0),
            fmt(ly + 10.0)
        ));
    }
    svg.push_str("</svg>\n");
    (svg, warnings)
}

fn bounds(xs: &[f64]) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &x in xs {
        lo = lo.min(x);
        hi = hi.max(x);
    }
    (lo, hi)
}
