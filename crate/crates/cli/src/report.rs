use serde_json::{json, Map, Value};

use crate::config::Format;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Fail,
    NotStabilized,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Fail => 1,
            Status::NotStabilized => 2,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Fail => "fail",
            Status::NotStabilized => "not stabilized",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: &str, columns: &[&str]) -> Table {
        Table { title: title.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    fn render(&self, out: &mut String) {
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.chars().count()).collect();
        for r in &self.rows {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                .collect();
            padded.join("  ").trim_end().to_string()
        };
        out.push_str(&format!("{}\n", self.title));
        out.push_str(&line(&self.columns));
        out.push('\n');
        let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
        out.push_str(&rule.join("  "));
        out.push('\n');
        for r in &self.rows {
            out.push_str(&line(r));
            out.push('\n');
        }
    }

    fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Object(self.columns.iter().cloned().zip(r.iter().map(|c| json!(c))).collect()))
            .collect();
        json!({ "title": self.title, "rows": rows })
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub summary: String,
    /// Key-value lines, in display order.
    pub fields: Vec<(String, Value)>,
    pub tables: Vec<Table>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report {
            command: command.into(),
            status: Status::Ok,
            summary: String::new(),
            fields: Vec::new(),
            tables: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn field(&mut self, key: &str, value: impl Into<Value>) {
        self.fields.push((key.into(), value.into()));
    }

    pub fn fail(&mut self) {
        if self.status == Status::Ok {
            self.status = Status::Fail;
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Table => self.render_table(),
            Format::Machine => {
                let mut m = Map::new();
                m.insert("command".into(), json!(self.command));
                m.insert("status".into(), json!(self.status.name()));
                m.insert("summary".into(), json!(self.summary));
                for (k, v) in &self.fields {
                    m.insert(k.clone(), v.clone());
                }
                m.insert("tables".into(), Value::Array(self.tables.iter().map(Table::to_json).collect()));
                m.insert("notes".into(), json!(self.notes));
                let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("json values serialize");
                s.push('\n');
                s
            }
        }
    }

    fn render_table(&self) -> String {
        let mut out = format!("{}: {}\n", self.command, self.summary);
        let width = self.fields.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
        for (k, v) in &self.fields {
            let shown = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            if shown.contains('\n') {
                out.push_str(&format!("{k}:\n"));
                for l in shown.lines() {
                    out.push_str(&format!("  {l}\n"));
                }
            } else {
                out.push_str(&format!("{k}{}  {shown}\n", " ".repeat(width - k.chars().count())));
            }
        }
        for t in &self.tables {
            out.push('\n');
            t.render(&mut out);
        }
        if !self.notes.is_empty() {
            out.push('\n');
            for n in &self.notes {
                out.push_str(&format!("note: {n}\n"));
            }
        }
        out.push_str(&format!("status: {}\n", self.status.name()));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_is_aligned() {
        let mut t = Table::new("points", &["#", "value"]);
        t.row(vec!["1".into(), "(-3)*T^1".into()]);
        t.row(vec!["10".into(), "0".into()]);
        let mut out = String::new();
        t.render(&mut out);
        assert_eq!(out, "points\n#   value\n--  --------\n1   (-3)*T^1\n10  0\n");
    }

    #[test]
    fn machine_output_is_json() {
        let mut r = Report::new("check");
        r.summary = "all checks passed".into();
        r.field("cutoff", "4");
        let v: Value = serde_json::from_str(&r.render(Format::Machine)).unwrap();
        assert_eq!(v["status"], "ok");
        assert_eq!(v["cutoff"], "4");
    }
}
