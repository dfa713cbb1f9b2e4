use serde_json::{json, Value};
use tangentlab::VerificationReport;

/// A report plus optional constructed data and headline lines.
pub struct Output {
    pub report: VerificationReport,
    artifact: Option<Value>,
    summary: Vec<String>,
}

impl Output {
    pub fn report(report: VerificationReport) -> Self {
        Output {
            report,
            artifact: None,
            summary: Vec::new(),
        }
    }

    pub fn artifact(mut self, v: Value) -> Self {
        self.artifact = Some(v);
        self
    }

    pub fn summary(mut self, line: String) -> Self {
        self.summary.push(line);
        self
    }

    /// Text: headline lines then the aligned report. JSON: the report, or
    /// `{summary, report, artifact}` when there is more than the report.
    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            let body = if self.artifact.is_none() && self.summary.is_empty() {
                serde_json::to_value(&self.report).expect("report serializes")
            } else {
                json!({"summary": self.summary, "report": self.report, "artifact": self.artifact})
            };
            let mut s = serde_json::to_string_pretty(&body).expect("json serializes");
            s.push('\n');
            s
        } else {
            let mut s = String::new();
            for l in &self.summary {
                s.push_str(l);
                s.push('\n');
            }
            s.push_str(&self.report.to_text());
            s
        }
    }
}
