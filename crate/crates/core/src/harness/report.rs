use std::fmt::Write as _;
use std::io::Write;

use super::ResultRow;
use crate::error::Result;

pub const CSV_HEADER: &str = "dataset,strategy,alpha,mean_survival,sd_survivors,reps,mean_rounds";

fn sorted(rows: &[ResultRow]) -> Vec<&ResultRow> {
    let mut out: Vec<&ResultRow> = rows.iter().collect();
    out.sort_by(|a, b| {
        (&a.dataset, &a.strategy)
            .cmp(&(&b.dataset, &b.strategy))
            .then(a.alpha.total_cmp(&b.alpha))
    });
    out
}

/// Writes `rows` sorted by `(dataset, strategy, alpha)` with six decimals.
pub fn write_csv<W: Write>(rows: &[ResultRow], writer: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(writer);
    w.write_record(CSV_HEADER.split(','))?;
    for r in sorted(rows) {
        w.write_record([
            r.dataset.clone(),
            r.strategy.clone(),
            format!("{:.6}", r.alpha),
            format!("{:.6}", r.mean_survival),
            format!("{:.6}", r.sd_survivors),
            r.reps.to_string(),
            format!("{:.6}", r.mean_rounds),
        ])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn to_csv_string(rows: &[ResultRow]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

/// Plain-text table, one line per strategy, one column per budget.
pub fn summarize(rows: &[ResultRow]) -> String {
    let rows = sorted(rows);
    let mut alphas: Vec<f64> = rows.iter().map(|r| r.alpha).collect();
    alphas.sort_by(f64::total_cmp);
    alphas.dedup();

    let mut out = String::new();
    let _ = write!(out, "{:<28}", "dataset/strategy");
    for a in &alphas {
        let _ = write!(out, "{:>8.2}", a);
    }
    out.push('\n');
    for group in rows.chunk_by(|a, b| a.dataset == b.dataset && a.strategy == b.strategy) {
        let _ = write!(
            out,
            "{:<28}",
            format!("{}/{}", group[0].dataset, group[0].strategy)
        );
        for a in &alphas {
            match group.iter().find(|r| r.alpha == *a) {
                Some(r) => {
                    let _ = write!(out, "{:>8.4}", r.mean_survival);
                }
                None => out.push_str("       -"),
            }
        }
        out.push('\n');
    }
    out
}
