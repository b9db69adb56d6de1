//! Report records and their JSON/CSV serialization. Every number carries a
//! provenance label: `exact`, `volume`, `bound:...`, `oracle:...`.

use crate::Format;
use serde::Serialize;

#[derive(Debug, Clone, Serialize, Default)]
pub struct GridPoint {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<u32>,
    #[serde(rename = "T", skip_serializing_if = "Option::is_none")]
    pub threshold: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Item {
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub text: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub valid: Option<bool>,
}

impl Item {
    pub fn num(label: impl Into<String>, value: f64) -> Self {
        Self {
            label: label.into(),
            value: Some(value),
            text: None,
            valid: None,
        }
    }

    pub fn flagged(label: impl Into<String>, value: f64, valid: bool) -> Self {
        Self {
            label: label.into(),
            value: Some(value),
            text: None,
            valid: Some(valid),
        }
    }

    pub fn text(label: impl Into<String>, text: impl Into<String>) -> Self {
        Self {
            label: label.into(),
            value: None,
            text: Some(text.into()),
            valid: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Record {
    #[serde(flatten)]
    pub grid: GridPoint,
    pub values: Vec<Item>,
}

/// Fixed CSV column order shared by every subcommand.
pub const CSV_HEADER: &str = "s,T,a,kind,r,N,eps,delta,q,label,value,text,valid";

fn csv_field_f64(v: Option<f64>) -> String {
    v.map(|x| format!("{x}")).unwrap_or_default()
}

pub fn emit(format: Format, records: &[Record]) {
    match format {
        Format::Json => {
            for rec in records {
                println!(
                    "{}",
                    serde_json::to_string(rec).expect("serializable record")
                );
            }
        }
        Format::Csv => {
            println!("{CSV_HEADER}");
            for rec in records {
                let g = &rec.grid;
                let prefix = format!(
                    "{},{},{},{},{},{},{},{},{}",
                    g.s.map(|x| x.to_string()).unwrap_or_default(),
                    csv_field_f64(g.threshold),
                    csv_field_f64(g.a),
                    g.kind.clone().unwrap_or_default(),
                    csv_field_f64(g.r),
                    g.n.map(|x| x.to_string()).unwrap_or_default(),
                    csv_field_f64(g.eps),
                    csv_field_f64(g.delta),
                    csv_field_f64(g.q),
                );
                for item in &rec.values {
                    println!(
                        "{prefix},{},{},{},{}",
                        item.label,
                        csv_field_f64(item.value),
                        item.text.clone().unwrap_or_default(),
                        item.valid.map(|b| b.to_string()).unwrap_or_default(),
                    );
                }
            }
        }
    }
}
