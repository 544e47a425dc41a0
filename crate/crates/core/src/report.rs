//! Normalized error tables in TSV, Markdown and JSON.
//!
//! Layout: one row per error category plus `Total`; the baseline column
//! first, then each other system followed by its delta column.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::taxonomy::{deltas, normalize, ErrorCategory, ErrorProfile, PerCategory};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ColumnKind {
    Value,
    Delta,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Column {
    pub header: String,
    pub system: String,
    pub kind: ColumnKind,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    /// Rounded value, equal to the number printed in `text`.
    pub value: f64,
    /// Full-precision value.
    pub raw: f64,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub label: String,
    pub cells: Vec<Cell>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportTable {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub baseline: String,
    pub columns: Vec<Column>,
    pub rows: Vec<Row>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Tsv,
    Markdown,
    Json,
}

fn value_cell(raw: f64) -> Cell {
    cell(raw, format!("{raw:.2}"))
}

fn baseline_total_cell(raw: f64) -> Cell {
    cell(raw, "100".to_string())
}

fn delta_cell(raw: f64) -> Cell {
    let text = format!("{raw:.2}");
    let text = if text.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        "0.00".to_string()
    } else if raw > 0.0 {
        format!("+{text}")
    } else {
        text
    };
    cell(raw, text)
}

fn cell(raw: f64, text: String) -> Cell {
    Cell {
        value: text.parse().expect("formatted number parses"),
        raw,
        text,
    }
}

impl ReportTable {
    /// Normalizes `profiles` against `baseline` and lays them out with delta
    /// columns. Profiles keep their input order after the baseline.
    pub fn from_profiles(
        profiles: &[ErrorProfile],
        baseline: &str,
        label: Option<String>,
    ) -> Result<ReportTable> {
        let normalized = normalize(profiles, baseline)?;
        let delta = deltas(&normalized, baseline)?;

        let mut order: Vec<usize> = Vec::with_capacity(profiles.len());
        order.extend(normalized.iter().position(|p| p.system == baseline));
        order.extend((0..normalized.len()).filter(|&i| normalized[i].system != baseline));

        let mut columns = Vec::new();
        for &i in &order {
            let system = normalized[i].system.clone();
            columns.push(Column {
                header: system.clone(),
                system: system.clone(),
                kind: ColumnKind::Value,
            });
            if system != baseline {
                columns.push(Column {
                    header: format!("Δ_{baseline}"),
                    system,
                    kind: ColumnKind::Delta,
                });
            }
        }

        let mut rows = Vec::new();
        let row_cells = |pick: &dyn Fn(&PerCategory<f64>, f64) -> f64, is_total: bool| {
            let mut cells = Vec::new();
            for &i in &order {
                let n = &normalized[i];
                let v = pick(&n.percentages, n.total_pct);
                if n.system == baseline {
                    cells.push(if is_total { baseline_total_cell(v) } else { value_cell(v) });
                } else {
                    cells.push(value_cell(v));
                    let d = &delta[i];
                    cells.push(delta_cell(pick(&d.deltas, d.total)));
                }
            }
            cells
        };
        for cat in ErrorCategory::ALL {
            rows.push(Row {
                label: cat.label().to_string(),
                cells: row_cells(&|p, _| p.get(cat), false),
            });
        }
        rows.push(Row {
            label: "Total".to_string(),
            cells: row_cells(&|_, total| total, true),
        });

        Ok(ReportTable {
            label,
            baseline: baseline.to_string(),
            columns,
            rows,
        })
    }

    /// The cell for `row_label` in the first column with `header`.
    pub fn cell(&self, row_label: &str, system: &str, kind: ColumnKind) -> Option<&Cell> {
        let col = self
            .columns
            .iter()
            .position(|c| c.system == system && c.kind == kind)?;
        self.rows
            .iter()
            .find(|r| r.label == row_label)
            .map(|r| &r.cells[col])
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Tsv => self.to_tsv(),
            Format::Markdown => self.to_markdown(),
            Format::Json => self.to_json(),
        }
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("category");
        for c in &self.columns {
            out.push('\t');
            out.push_str(&c.header);
        }
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.label);
            for cell in &row.cells {
                out.push('\t');
                out.push_str(&cell.text);
            }
            out.push('\n');
        }
        out
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        if let Some(label) = &self.label {
            out.push_str(&format!("**{label}**\n\n"));
        }
        out.push_str("| |");
        for c in &self.columns {
            out.push_str(&format!(" {} |", c.header));
        }
        out.push_str("\n|---|");
        for _ in &self.columns {
            out.push_str("---:|");
        }
        out.push('\n');
        for row in &self.rows {
            out.push_str(&format!("| {} |", row.label));
            for cell in &row.cells {
                out.push_str(&format!(" {} |", cell.text));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("table serializes");
        s.push('\n');
        s
    }
}
