//! Text tables and structured JSON output.

use serde::{Deserialize, Serialize};

use crate::indices::{IndexReport, ReportValue};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructuredOutput {
    pub schema_version: u32,
    pub reports: Vec<StructuredReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructuredReport {
    pub group: String,
    pub lattice: String,
    pub polytope: StructuredPolytope,
    pub quantity: String,
    pub param: Option<usize>,
    pub value: StructuredValue,
    pub paths_used: Vec<String>,
    pub notes: Vec<String>,
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructuredPolytope {
    pub vertices: usize,
    pub facets: usize,
    pub chamber_vertices: usize,
    pub regular: bool,
    pub regularity_reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StructuredValue {
    /// Decimal digits, so no precision is lost.
    Integer(String),
    Census(Vec<CensusEntry>),
    Regularity { regular: bool, reason: Option<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CensusEntry {
    pub codim: usize,
    pub faces: usize,
    pub orbits: usize,
}

impl From<&IndexReport> for StructuredReport {
    fn from(r: &IndexReport) -> Self {
        let value = match &r.value {
            ReportValue::Integer(v) => StructuredValue::Integer(v.to_string()),
            ReportValue::Census(rows) => StructuredValue::Census(
                rows.iter().map(|c| CensusEntry { codim: c.codim, faces: c.faces, orbits: c.orbits }).collect(),
            ),
            ReportValue::Regularity(reg) => {
                StructuredValue::Regularity { regular: reg.regular, reason: reg.reason.clone() }
            }
        };
        StructuredReport {
            group: r.group.clone(),
            lattice: r.lattice.clone(),
            polytope: StructuredPolytope {
                vertices: r.polytope.vertices,
                facets: r.polytope.facets,
                chamber_vertices: r.polytope.chamber_vertices,
                regular: r.polytope.regularity.regular,
                regularity_reason: r.polytope.regularity.reason.clone(),
            },
            quantity: r.quantity.clone(),
            param: r.param,
            value,
            paths_used: r.paths_used.clone(),
            notes: r.notes.clone(),
            degenerate: r.degenerate,
        }
    }
}

pub fn structured(reports: &[IndexReport]) -> StructuredOutput {
    StructuredOutput { schema_version: SCHEMA_VERSION, reports: reports.iter().map(Into::into).collect() }
}

pub fn render(reports: &[IndexReport], format: Format) -> String {
    match format {
        Format::Structured => {
            let mut s = serde_json::to_string_pretty(&structured(reports)).expect("plain data serializes");
            s.push('\n');
            s
        }
        Format::Text => render_text(reports),
    }
}

fn render_text(reports: &[IndexReport]) -> String {
    let Some(first) = reports.first() else {
        return "no tasks\n".to_string();
    };
    let mut out = String::new();
    let p = &first.polytope;
    out.push_str(&format!("group:    {}\n", first.group));
    out.push_str(&format!("lattice:  {}\n", first.lattice));
    out.push_str(&format!(
        "polytope: {} vertices, {} facets, {} vertices in the chamber, {}\n\n",
        p.vertices,
        p.facets,
        p.chamber_vertices,
        match &p.regularity.reason {
            None => "regular".to_string(),
            Some(r) => format!("not regular ({r})"),
        }
    ));
    let header = ["quantity", "value", "paths", "flags", "time"];
    let rows: Vec<[String; 5]> = reports
        .iter()
        .map(|r| {
            let mut flags = Vec::new();
            if r.degenerate {
                flags.push("degenerate".to_string());
            }
            flags.extend(r.notes.iter().cloned());
            [
                r.quantity.clone(),
                r.value.to_string(),
                r.paths_used.join(","),
                flags.join("; "),
                format!("{:.3}s", r.elapsed.as_secs_f64()),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &rows {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let mut s = cells
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ");
        s.truncate(s.trim_end().len());
        s.push('\n');
        s
    };
    out.push_str(&line(&header.map(String::from)));
    out.push_str(&line(&widths.map(|w| "-".repeat(w))));
    for row in &rows {
        out.push_str(&line(row));
    }
    out
}
