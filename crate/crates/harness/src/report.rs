//! Aggregation of metric reports into one table per run.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::manifest::{Domain, Task};
use crate::score::{MetricReport, TokenStats};
use crate::Error;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub domain: Domain,
    pub task: Task,
    pub items: usize,
    /// Predictions that rendered, for tasks with rendered output.
    pub renderable: Option<usize>,
    pub metrics: BTreeMap<String, f64>,
    pub tokens: Option<TokenStats>,
}

/// Rows grouped by domain in a fixed order (icon, illustration, chemistry,
/// animation), then by task.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub rows: Vec<Row>,
}

pub fn aggregate_report(reports: &[MetricReport]) -> Result<Table, Error> {
    let mut seen = HashSet::new();
    let mut rows = Vec::with_capacity(reports.len());
    for r in reports {
        if !seen.insert((r.task, r.domain)) {
            return Err(Error::DuplicateKey { task: r.task, domain: r.domain });
        }
        rows.push(Row {
            domain: r.domain,
            task: r.task,
            items: r.items.len(),
            renderable: r.task.is_generative().then(|| r.renderable_count()),
            metrics: r.aggregate.clone(),
            tokens: r.tokens,
        });
    }
    rows.sort_by_key(|r| (r.domain, r.task));
    Ok(Table { rows })
}

impl Table {
    /// Pretty JSON with a trailing newline; byte-identical for equal tables.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes") + "\n"
    }

    /// Aligned plain-text table with three decimals.
    pub fn to_text(&self) -> String {
        let metrics: BTreeSet<&str> = self.rows.iter().flat_map(|r| r.metrics.keys().map(String::as_str)).collect();
        let with_tokens = self.rows.iter().any(|r| r.tokens.is_some());
        let mut header: Vec<String> = ["domain", "task", "items", "renderable"].map(String::from).to_vec();
        header.extend(metrics.iter().map(|m| m.to_string()));
        if with_tokens {
            header.extend(["tokens_base".to_string(), "tokens_special".to_string()]);
        }
        let mut lines = vec![header];
        for r in &self.rows {
            let mut cells =
                vec![r.domain.to_string(), r.task.to_string(), r.items.to_string(), r.renderable.map_or("-".into(), |n| n.to_string())];
            cells.extend(metrics.iter().map(|m| r.metrics.get(*m).map_or("-".into(), |v| format!("{v:.3}"))));
            if with_tokens {
                match r.tokens {
                    Some(t) => cells.extend([format!("{:.1}", t.base), format!("{:.1}", t.special)]),
                    None => cells.extend(["-".to_string(), "-".to_string()]),
                }
            }
            lines.push(cells);
        }
        let widths: Vec<usize> = (0..lines[0].len()).map(|c| lines.iter().map(|l| l[c].len()).max().unwrap_or(0)).collect();
        let mut out = String::new();
        for l in &lines {
            let cells: Vec<String> =
                l.iter().zip(&widths).enumerate().map(|(c, (s, w))| if c < 2 { format!("{s:<w$}") } else { format!("{s:>w$}") }).collect();
            out.push_str(cells.join("  ").trim_end());
            out.push('\n');
        }
        out
    }
}
