//! Deterministic SVG line charts for sweep results.
//!
//! The output is plain text built with fixed-precision number formatting,
//! so a given `SweepResult` always renders to byte-identical SVG; golden
//! files can diff it directly.

use crate::sweep::{seed_averaged, Metric, SweepResult};
use crate::table::format_sig;

/// X-axis scale for [`emit_plot`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AxisScale {
    #[default]
    Linear,
    Log,
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 660.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 450.0;
const PALETTE: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

fn coord(x: f64) -> String {
    format!("{x:.2}")
}

/// Renders one polyline per filter over the seed-averaged values.
pub fn emit_plot(result: &SweepResult, metric: Metric, scale: AxisScale) -> String {
    let set = seed_averaged(result, metric);
    let positions: Vec<f64> = match scale {
        AxisScale::Linear => set.levels.clone(),
        AxisScale::Log => set.levels.iter().map(|v| v.log10()).collect(),
    };
    let (pos_min, pos_max) = (
        positions.iter().cloned().fold(f64::INFINITY, f64::min),
        positions.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
    );
    let x_of = |p: f64| {
        if pos_max > pos_min {
            LEFT + (p - pos_min) / (pos_max - pos_min) * (RIGHT - LEFT)
        } else {
            (LEFT + RIGHT) / 2.0
        }
    };
    // Infinite PSNR cells are drawn at the top of the finite range.
    let y_cap = set
        .series
        .iter()
        .flat_map(|(_, vs)| vs.iter())
        .filter(|v| v.is_finite())
        .fold(0.0_f64, |a, &b| a.max(b));
    let y_cap = if y_cap > 0.0 { y_cap } else { 1.0 };
    let y_of = |v: f64| {
        let v = if v.is_finite() { v } else { y_cap };
        BOTTOM - (v.clamp(0.0, y_cap) / y_cap) * (BOTTOM - TOP)
    };

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"monospace\" font-size=\"12\">\n"
    ));
    svg.push_str(&format!(
        "  <rect x=\"0\" y=\"0\" width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n"
    ));
    svg.push_str(&format!(
        "  <text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">{} vs noise variance</text>\n",
        coord((LEFT + RIGHT) / 2.0),
        metric
    ));
    // Axes.
    svg.push_str(&format!(
        "  <line x1=\"{l}\" y1=\"{b}\" x2=\"{r}\" y2=\"{b}\" stroke=\"black\"/>\n",
        l = coord(LEFT),
        r = coord(RIGHT),
        b = coord(BOTTOM)
    ));
    svg.push_str(&format!(
        "  <line x1=\"{l}\" y1=\"{t}\" x2=\"{l}\" y2=\"{b}\" stroke=\"black\"/>\n",
        l = coord(LEFT),
        t = coord(TOP),
        b = coord(BOTTOM)
    ));
    // X ticks: every level when they fit, else a thinned subset plus the last.
    let step = set.levels.len().div_ceil(10);
    let mut tick_idx: Vec<usize> = (0..set.levels.len()).step_by(step).collect();
    if *tick_idx.last().expect("levels nonempty") != set.levels.len() - 1 {
        tick_idx.push(set.levels.len() - 1);
    }
    for &i in &tick_idx {
        let x = coord(x_of(positions[i]));
        svg.push_str(&format!(
            "  <line x1=\"{x}\" y1=\"{b}\" x2=\"{x}\" y2=\"{b2}\" stroke=\"black\"/>\n",
            b = coord(BOTTOM),
            b2 = coord(BOTTOM + 5.0)
        ));
        svg.push_str(&format!(
            "  <text x=\"{x}\" y=\"{y}\" text-anchor=\"middle\">{}</text>\n",
            format_sig(set.levels[i]),
            y = coord(BOTTOM + 18.0)
        ));
    }
    svg.push_str(&format!(
        "  <text x=\"{}\" y=\"{}\" text-anchor=\"middle\">noise variance</text>\n",
        coord((LEFT + RIGHT) / 2.0),
        coord(BOTTOM + 36.0)
    ));
    // Y ticks: 5 divisions of [0, y_cap].
    for k in 0..=5u32 {
        let v = y_cap * f64::from(k) / 5.0;
        let y = coord(y_of(v));
        svg.push_str(&format!(
            "  <line x1=\"{l2}\" y1=\"{y}\" x2=\"{l}\" y2=\"{y}\" stroke=\"black\"/>\n",
            l = coord(LEFT),
            l2 = coord(LEFT - 5.0)
        ));
        svg.push_str(&format!(
            "  <text x=\"{x}\" y=\"{y}\" text-anchor=\"end\" dy=\"4\">{}</text>\n",
            format_sig(v),
            x = coord(LEFT - 9.0)
        ));
    }
    svg.push_str(&format!(
        "  <text x=\"18\" y=\"{}\" text-anchor=\"middle\" transform=\"rotate(-90 18 {})\">{} ({})</text>\n",
        coord((TOP + BOTTOM) / 2.0),
        coord((TOP + BOTTOM) / 2.0),
        metric,
        if metric == Metric::Psnr { "dB" } else { "intensity^2" }
    ));
    // One polyline per filter, plus a legend entry.
    for (si, (filter, values)) in set.series.iter().enumerate() {
        let color = PALETTE[si % PALETTE.len()];
        let points: Vec<String> = positions
            .iter()
            .zip(values)
            .map(|(&p, &v)| format!("{},{}", coord(x_of(p)), coord(y_of(v))))
            .collect();
        svg.push_str(&format!(
            "  <polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
            points.join(" ")
        ));
        let ly = TOP + 14.0 + 18.0 * si as f64;
        svg.push_str(&format!(
            "  <line x1=\"{x1}\" y1=\"{y}\" x2=\"{x2}\" y2=\"{y}\" stroke=\"{color}\" stroke-width=\"1.5\"/>\n",
            x1 = coord(RIGHT + 16.0),
            x2 = coord(RIGHT + 44.0),
            y = coord(ly)
        ));
        svg.push_str(&format!(
            "  <text x=\"{x}\" y=\"{y}\" dy=\"4\">{filter}</text>\n",
            x = coord(RIGHT + 50.0),
            y = coord(ly)
        ));
    }
    svg.push_str("</svg>\n");
    svg
}
