use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
}

/// Column-ordered numeric table with CSV and JSON renderings.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

/// 17 significant digits in scientific notation, independent of locale.
pub fn format_number(v: f64) -> String {
    format!("{v:.16e}")
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Num(v) => format_number(*v),
                    Cell::Int(i) => i.to_string(),
                })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// `{"columns": [...], "rows": [[...]], ...extra}`.
    pub fn to_json(&self, extra: Map<String, Value>) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                Value::Array(
                    r.iter()
                        .map(|c| match c {
                            Cell::Num(v) => json!(v),
                            Cell::Int(i) => json!(i),
                        })
                        .collect(),
                )
            })
            .collect();
        let mut obj = Map::new();
        obj.insert("columns".into(), json!(self.columns));
        obj.insert("rows".into(), Value::Array(rows));
        obj.extend(extra);
        let mut s = serde_json::to_string_pretty(&Value::Object(obj)).expect("table serializes");
        s.push('\n');
        s
    }
}
