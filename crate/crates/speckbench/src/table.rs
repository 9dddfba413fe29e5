//! Textual sweep artifacts: the long-form CSV and the wide per-filter
//! tables in CSV or Markdown.

use crate::sweep::{seed_averaged, Metric, SweepResult};

/// Output format for [`emit_table`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Markdown,
}

/// Formats with up to 6 significant digits, plain notation where reasonable
/// (ala printf %g). Infinite values print as "inf".
pub fn format_sig(x: f64) -> String {
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-5..6).contains(&exp) {
        let s = format!("{x:.5e}");
        let (mantissa, exponent) = s.split_once('e').expect("{:e} always has an exponent");
        let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
        return format!("{mantissa}e{exponent}");
    }
    let decimals = (5 - exp).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Two-decimal cell value; "inf" for infinite PSNR cells.
fn format_cell(x: f64) -> String {
    if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{x:.2}")
    }
}

/// Long-form machine-readable CSV: one row per (filter, variance, seed).
pub fn sweep_csv(result: &SweepResult) -> String {
    let mut out = String::from("filter,variance,seed,mse,psnr\n");
    for row in &result.rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            row.filter,
            format_sig(row.variance),
            row.seed,
            format_sig(row.mse),
            format_sig(row.psnr),
        ));
    }
    out
}

/// Wide table: one row per filter, one column per level, seed-averaged
/// cells rounded to 2 decimals.
pub fn emit_table(result: &SweepResult, metric: Metric, format: TableFormat) -> String {
    let set = seed_averaged(result, metric);
    let mut out = String::new();
    match format {
        TableFormat::Csv => {
            out.push_str("filter");
            for &level in &set.levels {
                out.push(',');
                out.push_str(&format_sig(level));
            }
            out.push('\n');
            for (filter, values) in &set.series {
                out.push_str(filter.name());
                for &v in values {
                    out.push(',');
                    out.push_str(&format_cell(v));
                }
                out.push('\n');
            }
        }
        TableFormat::Markdown => {
            out.push_str("| filter |");
            for &level in &set.levels {
                out.push_str(&format!(" {} |", format_sig(level)));
            }
            out.push('\n');
            out.push_str("| --- |");
            for _ in &set.levels {
                out.push_str(" --- |");
            }
            out.push('\n');
            for (filter, values) in &set.series {
                out.push_str(&format!("| {} |", filter.name()));
                for &v in values {
                    out.push_str(&format!(" {} |", format_cell(v)));
                }
                out.push('\n');
            }
        }
    }
    out
}
