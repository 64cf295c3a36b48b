//! Deterministic reports in JSON, CSV or markdown.

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Md,
}

impl Format {
    pub const EACH: [Format; 3] = [Format::Json, Format::Csv, Format::Md];

    pub fn as_str(&self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Md => "md",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Item {
    pub name: String,
    /// `None` for purely informational rows.
    pub pass: Option<bool>,
    pub summary: String,
    pub data: Value,
}

impl Item {
    pub fn check(name: String, pass: bool, summary: String, data: Value) -> Self {
        Item { name, pass: Some(pass), summary, data }
    }

    pub fn info(name: String, summary: String, data: Value) -> Self {
        Item { name, pass: None, summary, data }
    }
}

/// Wall-clock times are deliberately absent so equal inputs give equal bytes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub config_hash: String,
    pub items: Vec<Item>,
    pub passed: usize,
    pub failed: usize,
}

impl Report {
    pub fn new(tool: &str, version: &str, config_hash: String, command: String) -> Self {
        Report {
            tool: tool.into(),
            version: version.into(),
            command,
            config_hash,
            items: Vec::new(),
            passed: 0,
            failed: 0,
        }
    }

    pub fn push(&mut self, item: Item) {
        match item.pass {
            Some(true) => self.passed += 1,
            Some(false) => self.failed += 1,
            None => {}
        }
        self.items.push(item);
    }

    pub fn extend(&mut self, items: impl IntoIterator<Item = Item>) {
        for i in items {
            self.push(i);
        }
    }

    pub fn status_line(&self) -> String {
        format!("{}: {} passed, {} failed", self.command, self.passed, self.failed)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Csv => self.csv(),
            Format::Md => self.markdown(),
        }
    }

    fn status(pass: Option<bool>) -> &'static str {
        match pass {
            Some(true) => "pass",
            Some(false) => "FAIL",
            None => "info",
        }
    }

    fn csv(&self) -> String {
        let field = |s: &str| {
            if s.contains([',', '"', '\n']) {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.to_string()
            }
        };
        let mut out = format!(
            "# {} {} | {} | config {}\nname,status,summary\n",
            self.tool, self.version, self.command, self.config_hash
        );
        for i in &self.items {
            out.push_str(&format!("{},{},{}\n", field(&i.name), Self::status(i.pass), field(&i.summary)));
        }
        out.push_str(&format!("# passed {}, failed {}\n", self.passed, self.failed));
        out
    }

    fn markdown(&self) -> String {
        let cell = |s: &str| s.replace('|', "\\|");
        let mut out = format!(
            "## `{}`\n\n{} {} · config `{}`\n\n| item | status | result |\n|---|---|---|\n",
            self.command, self.tool, self.version, self.config_hash
        );
        for i in &self.items {
            out.push_str(&format!("| {} | {} | {} |\n", cell(&i.name), Self::status(i.pass), cell(&i.summary)));
        }
        out.push_str(&format!("\n{} passed, {} failed\n", self.passed, self.failed));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn counts_and_formats() {
        let mut r = Report::new("t", "0", "h".into(), "cmd".into());
        r.push(Item::check("a".into(), true, "x, y".into(), json!(1)));
        r.push(Item::check("b".into(), false, String::new(), json!(null)));
        r.push(Item::info("c".into(), "a|b".into(), json!(null)));
        assert_eq!((r.passed, r.failed), (1, 1));
        assert!(r.render(Format::Csv).contains("a,pass,\"x, y\""));
        assert!(r.render(Format::Md).contains("a\\|b"));
        let v: Value = serde_json::from_str(&r.render(Format::Json)).unwrap();
        assert_eq!(v["items"][1]["pass"], json!(false));
    }
}
