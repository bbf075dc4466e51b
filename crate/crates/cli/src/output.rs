use clap::ValueEnum;
use coxgit::saturation::Caps;
use serde::Serialize;
use serde_json::Value;

use crate::spec::{Assertions, Kind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Metadata {
    pub kind: Option<Kind>,
    pub caps: Option<Caps>,
    pub path: String,
    pub assertions: Assertions,
    pub exactness: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stamp: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: &'static str,
    pub metadata: Metadata,
    pub result: Value,
    pub header: &'static [&'static str],
    pub rows: Vec<Vec<String>>,
    pub text: Vec<String>,
    pub code: i32,
    pub warnings: Vec<String>,
}

#[derive(Serialize)]
struct Document<'a> {
    command: &'a str,
    metadata: &'a Metadata,
    result: &'a Value,
}

pub fn join(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(";")
}

pub fn join_all(vs: &[Vec<i64>]) -> String {
    vs.iter().map(|v| join(v)).collect::<Vec<_>>().join("|")
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let doc = Document {
                    command: self.command,
                    metadata: &self.metadata,
                    result: &self.result,
                };
                let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(self.header).expect("in-memory write");
                for r in &self.rows {
                    w.write_record(r).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
            }
            Format::Text => {
                let m = &self.metadata;
                let mut out = format!("# {}: path {}, exactness {}", self.command, m.path, m.exactness);
                if let Some(c) = m.caps {
                    out += &format!(", max degree {}, max saturation power {}", c.max_degree, c.max_sat_power);
                }
                if m.assertions.s2 {
                    out += ", S2 asserted";
                }
                if let Some(t) = m.stamp {
                    out += &format!(", stamp {t}");
                }
                out.push('\n');
                for line in &self.text {
                    out += line;
                    out.push('\n');
                }
                out
            }
        }
    }
}
