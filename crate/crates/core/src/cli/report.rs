use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Negative,
    Error,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Negative => 1,
            Outcome::Error => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Body {
    Text { text: String },
    Table { headers: Vec<String>, rows: Vec<Vec<String>> },
    Json { value: serde_json::Value },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Section {
    pub title: String,
    /// Machine-readable detail, left out of text output.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub detail: bool,
    #[serde(flatten)]
    pub body: Body,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub subject: String,
    pub outcome: Outcome,
    pub sections: Vec<Section>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Report {
            subject: subject.into(),
            outcome: Outcome::Pass,
            sections: Vec::new(),
        }
    }

    pub fn outcome(mut self, outcome: Outcome) -> Self {
        self.outcome = outcome;
        self
    }

    pub fn text(&mut self, title: &str, text: impl Into<String>) -> &mut Self {
        self.sections.push(Section {
            title: title.into(),
            detail: false,
            body: Body::Text { text: text.into() },
        });
        self
    }

    pub fn table<S: Into<String>>(&mut self, title: &str, headers: &[&str], rows: Vec<Vec<S>>) -> &mut Self {
        self.sections.push(Section {
            title: title.into(),
            detail: false,
            body: Body::Table {
                headers: headers.iter().map(|h| h.to_string()).collect(),
                rows: rows.into_iter().map(|r| r.into_iter().map(Into::into).collect()).collect(),
            },
        });
        self
    }

    pub fn json(&mut self, title: &str, value: impl Serialize) -> &mut Self {
        self.sections.push(Section {
            title: title.into(),
            detail: false,
            body: Body::Json {
                value: serde_json::to_value(value).expect("serializable"),
            },
        });
        self
    }

    pub fn detail(&mut self, title: &str, value: impl Serialize) -> &mut Self {
        self.json(title, value);
        self.sections.last_mut().expect("just pushed").detail = true;
        self
    }

    pub fn section(&self, title: &str) -> Option<&Body> {
        self.sections.iter().find(|s| s.title == title).map(|s| &s.body)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} [{}]", self.subject, serde_json::to_value(self.outcome).expect("enum").as_str().unwrap_or(""));
        for s in self.sections.iter().filter(|s| !s.detail) {
            let _ = writeln!(out, "\n## {}", s.title);
            match &s.body {
                Body::Text { text } => {
                    let _ = writeln!(out, "{text}");
                }
                Body::Table { headers, rows } => render_table(&mut out, headers, rows),
                Body::Json { value } => {
                    let _ = writeln!(out, "{}", serde_json::to_string_pretty(value).expect("value"));
                }
            }
        }
        out
    }
}

fn render_table(out: &mut String, headers: &[String], rows: &[Vec<String>]) {
    let cols = headers.len();
    let mut width: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (c, cell) in row.iter().enumerate().take(cols) {
            width[c] = width[c].max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| -> String {
        let padded: Vec<String> = cells
            .iter()
            .zip(&width)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        padded.join("  ").trim_end().to_string()
    };
    let _ = writeln!(out, "{}", line(headers));
    let _ = writeln!(out, "{}", width.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("  "));
    for row in rows {
        let _ = writeln!(out, "{}", line(row));
    }
}
