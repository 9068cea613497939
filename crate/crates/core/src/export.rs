//! CSV and JSON rendering for sweeps, sequences and simulations.
//!
//! Both formats are byte-deterministic: metadata keeps insertion order,
//! floats in CSV are written with 17 significant digits, and rows keep the
//! order they were produced in. CSV metadata goes into leading `# key: value`
//! comment lines.

use serde_json::{json, Map, Value};

use crate::capacity::sequence::SequenceItem;
use crate::capacity::CapacityCurvePoint;

/// Ordered `key → value` metadata.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Meta {
    entries: Vec<(String, String)>,
}

impl Meta {
    pub fn new() -> Self {
        let mut m = Self::default();
        m.push("tool_version", crate::VERSION);
        m
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Into<String>) -> &mut Self {
        self.entries.push((key.into(), value.into()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) => format_float(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(v) => json!(v),
            Cell::Int(v) => json!(v),
            Cell::Text(s) => json!(s),
            Cell::Empty => Value::Null,
        }
    }
}

/// 17 significant digits; round-trips every finite `f64`.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn to_csv(&self, meta: &Meta) -> String {
        let mut out = String::new();
        for (k, v) in meta.entries() {
            out.push_str(&format!("# {k}: {v}\n"));
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// `{"meta": {...}, "rows": [{column: value, ...}, ...]}`
    pub fn to_json(&self, meta: &Meta) -> String {
        let meta_obj: Map<String, Value> = meta
            .entries()
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, cell)| (c.to_string(), cell.json()))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let doc = json!({ "meta": Value::Object(meta_obj), "rows": rows });
        let mut s = serde_json::to_string_pretty(&doc).expect("plain JSON values serialise");
        s.push('\n');
        s
    }
}

pub const QUANTUM_COLUMNS: [&str; 7] = ["x", "lambda", "p", "one_way", "two_way", "lower_bound", "upper_bound"];
pub const WIRETAP_COLUMNS: [&str; 5] = ["x", "lambda", "p", "one_way", "two_way"];
pub const SEQUENCE_COLUMNS: [&str; 5] = ["n", "x_n", "q_lb", "q_ub", "q_two_way"];
pub const SIMULATION_COLUMNS: [&str; 8] = ["kind", "lambda", "p", "uses", "seed", "estimate", "std_error", "target"];

/// Sweep rows; `wiretap` drops the bound columns.
pub fn sweep_table(points: &[CapacityCurvePoint], wiretap: bool) -> Table {
    let columns = if wiretap {
        WIRETAP_COLUMNS.to_vec()
    } else {
        QUANTUM_COLUMNS.to_vec()
    };
    let rows = points
        .iter()
        .map(|pt| {
            let mut row = vec![
                Cell::Num(pt.x),
                Cell::Num(pt.lambda),
                Cell::Num(pt.p),
                pt.one_way.map_or(Cell::Empty, Cell::Num),
                Cell::Num(pt.two_way),
            ];
            if !wiretap {
                row.push(Cell::Num(pt.lower_bound));
                row.push(Cell::Num(pt.upper_bound));
            }
            row
        })
        .collect();
    Table { columns, rows }
}

pub fn sequence_table(items: &[SequenceItem]) -> Table {
    let rows = items
        .iter()
        .map(|it| {
            vec![
                Cell::Int(it.n as u64),
                Cell::Num(it.x),
                Cell::Num(it.q_lb),
                Cell::Num(it.q_ub),
                Cell::Num(it.q_two_way.value()),
            ]
        })
        .collect();
    Table {
        columns: SEQUENCE_COLUMNS.to_vec(),
        rows,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationRow {
    pub kind: &'static str,
    pub lambda: f64,
    pub p: f64,
    pub uses: u64,
    pub seed: u64,
    pub estimate: f64,
    pub std_error: f64,
    pub target: f64,
}

pub fn simulation_table(rows: &[SimulationRow]) -> Table {
    let rows = rows
        .iter()
        .map(|r| {
            vec![
                Cell::Text(r.kind.to_string()),
                Cell::Num(r.lambda),
                Cell::Num(r.p),
                Cell::Int(r.uses),
                Cell::Int(r.seed),
                Cell::Num(r.estimate),
                Cell::Num(r.std_error),
                Cell::Num(r.target),
            ]
        })
        .collect();
    Table {
        columns: SIMULATION_COLUMNS.to_vec(),
        rows,
    }
}

/// Gnuplot script plotting every numeric column after `x` against `x`.
pub fn gnuplot_script(data_file: &str, table: &Table) -> String {
    let mut s = String::new();
    s.push_str("set datafile separator ','\n");
    s.push_str("set datafile commentschars '#'\n");
    s.push_str("set key autotitle columnhead\n");
    s.push_str(&format!("set xlabel '{}'\n", table.columns[0]));
    let series: Vec<String> = table
        .columns
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, c)| !matches!(**c, "lambda" | "p"))
        .map(|(i, c)| format!("'{data_file}' using 1:{} with lines title '{c}'", i + 1))
        .collect();
    s.push_str(&format!("plot {}\n", series.join(", \\\n     ")));
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::capacity::sweep_fig3;

    #[test]
    fn float_format_round_trips() {
        for v in [0.1, 1.0 / 3.0, 0.806_573_596_382_729_2, 1e-191, 0.0] {
            let s = format_float(v);
            assert_eq!(s.parse::<f64>().unwrap(), v);
        }
        assert_eq!(format_float(0.5), "5.0000000000000000e-1");
    }

    #[test]
    fn csv_layout() {
        let pts = sweep_fig3(3).unwrap();
        let mut meta = Meta::new();
        meta.push("scenario", "fig3");
        let csv = sweep_table(&pts, false).to_csv(&meta);
        let lines: Vec<&str> = csv.lines().collect();
        assert!(lines[0].starts_with("# tool_version: "));
        assert_eq!(lines[1], "# scenario: fig3");
        assert_eq!(lines[2], "x,lambda,p,one_way,two_way,lower_bound,upper_bound");
        assert_eq!(lines.len(), 6);
        assert!(lines[3].starts_with("2.5000000000000000e-1,"));
    }

    #[test]
    fn empty_cells_and_json() {
        let mut pt = sweep_fig3(2).unwrap()[0];
        pt.one_way = None;
        let table = sweep_table(&[pt], true);
        let meta = Meta::new();
        assert!(table.to_csv(&meta).lines().last().unwrap().contains(",,"));
        let doc: Value = serde_json::from_str(&table.to_json(&meta)).unwrap();
        assert!(doc["rows"][0]["one_way"].is_null());
        assert_eq!(doc["meta"]["tool_version"], crate::VERSION);
        let keys: Vec<&String> = doc["rows"][0].as_object().unwrap().keys().collect();
        assert_eq!(keys, WIRETAP_COLUMNS.to_vec());
    }

    #[test]
    fn plot_script_mentions_columns() {
        let t = sweep_table(&sweep_fig3(2).unwrap(), false);
        let s = gnuplot_script("fig3.csv", &t);
        assert!(s.contains("using 1:4"));
        assert!(s.contains("'upper_bound'"));
        assert!(!s.contains("using 1:2 "));
    }
}
