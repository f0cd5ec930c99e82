use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::ring::{catalog::catalog_get, FusionRing};

/// On-disk ring: `{"name", "rank", "labels", "dual", "N"}` with `N[i][j][k]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingFile {
    pub name: String,
    pub rank: usize,
    pub labels: Vec<String>,
    pub dual: Vec<usize>,
    #[serde(rename = "N")]
    pub n: Vec<Vec<Vec<u32>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParseError {
    pub source: String,
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub field: Option<String>,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.source)?;
        if let (Some(l), Some(c)) = (self.line, self.column) {
            write!(f, ":{l}:{c}")?;
        }
        if let Some(field) = &self.field {
            write!(f, " [{field}]")?;
        }
        write!(f, ": {}", self.message)
    }
}

impl std::error::Error for ParseError {}

impl RingFile {
    pub fn from_ring(ring: &FusionRing) -> Self {
        RingFile {
            name: ring.name().to_string(),
            rank: ring.rank(),
            labels: ring.labels().to_vec(),
            dual: ring.duals().to_vec(),
            n: ring.tensor(),
        }
    }

    /// Checks shapes, ranges and label uniqueness; axioms are left to the caller.
    pub fn into_ring(self, source: &str) -> Result<FusionRing, ParseError> {
        let err = |field: String, message: String| ParseError {
            source: source.to_string(),
            line: None,
            column: None,
            field: Some(field),
            message,
        };
        let r = self.rank;
        if r == 0 {
            return Err(err("rank".into(), "rank must be positive".into()));
        }
        if self.labels.len() != r {
            return Err(err("labels".into(), format!("{} labels for rank {r}", self.labels.len())));
        }
        let mut seen = HashSet::new();
        for (i, l) in self.labels.iter().enumerate() {
            if !seen.insert(l.as_str()) {
                return Err(err(format!("labels[{i}]"), format!("duplicate label {l:?}")));
            }
        }
        if self.dual.len() != r {
            return Err(err("dual".into(), format!("{} entries for rank {r}", self.dual.len())));
        }
        if let Some(i) = self.dual.iter().position(|&d| d >= r) {
            return Err(err(format!("dual[{i}]"), format!("index {} out of range", self.dual[i])));
        }
        if self.n.len() != r {
            return Err(err("N".into(), format!("{} slices for rank {r}", self.n.len())));
        }
        for (i, slice) in self.n.iter().enumerate() {
            if slice.len() != r {
                return Err(err(format!("N[{i}]"), format!("{} rows for rank {r}", slice.len())));
            }
            for (j, row) in slice.iter().enumerate() {
                if row.len() != r {
                    return Err(err(format!("N[{i}][{j}]"), format!("{} entries for rank {r}", row.len())));
                }
            }
        }
        FusionRing::new(self.name, self.labels, self.dual, self.n).map_err(|e| err("N".into(), e.to_string()))
    }

    /// Deterministic layout: one `N[i][j]` row per line.
    pub fn to_json(&self) -> String {
        let mut out = String::from("{\n");
        let _ = writeln!(out, "  \"name\": {},", serde_json::to_string(&self.name).expect("string"));
        let _ = writeln!(out, "  \"rank\": {},", self.rank);
        let _ = writeln!(out, "  \"labels\": {},", serde_json::to_string(&self.labels).expect("strings"));
        let _ = writeln!(out, "  \"dual\": {},", serde_json::to_string(&self.dual).expect("ints"));
        out.push_str("  \"N\": [\n");
        for (i, slice) in self.n.iter().enumerate() {
            out.push_str("    [\n");
            for (j, row) in slice.iter().enumerate() {
                let sep = if j + 1 < slice.len() { "," } else { "" };
                let _ = writeln!(out, "      {}{sep}", serde_json::to_string(row).expect("ints"));
            }
            let sep = if i + 1 < self.n.len() { "," } else { "" };
            let _ = writeln!(out, "    ]{sep}");
        }
        out.push_str("  ]\n}\n");
        out
    }
}

pub fn parse_ring_str(text: &str, source: &str) -> Result<RingFile, ParseError> {
    serde_json::from_str(text).map_err(|e| ParseError {
        source: source.to_string(),
        line: Some(e.line()),
        column: Some(e.column()),
        field: None,
        message: e.to_string(),
    })
}

/// Reads and shape-checks a ring file without checking the axioms.
pub fn read_ring_file(path: &Path) -> Result<FusionRing, CliError> {
    let source = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{source}: {e}")))?;
    Ok(parse_ring_str(&text, &source)?.into_ring(&source)?)
}

/// A validated ring from a file.
pub fn parse_ring_file(path: &Path) -> Result<FusionRing, CliError> {
    let ring = read_ring_file(path)?;
    let report = ring.verify_axioms();
    if !report.is_pass() {
        return Err(CliError::Axioms {
            path: path.display().to_string(),
            report,
        });
    }
    Ok(ring)
}

pub fn save_ring_file(ring: &FusionRing, path: &Path) -> Result<(), CliError> {
    std::fs::write(path, RingFile::from_ring(ring).to_json()).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// A file path if one exists, otherwise a catalog name or descriptor.
pub fn resolve_ring(arg: &str, validate: bool) -> Result<FusionRing, CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        return if validate { parse_ring_file(path) } else { read_ring_file(path) };
    }
    catalog_get(arg).map_err(|_| CliError::Usage(format!("{arg:?} is neither a ring file nor a catalog name")))
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let source = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{source}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| {
        CliError::Parse(ParseError {
            source,
            line: Some(e.line()),
            column: Some(e.column()),
            field: None,
            message: e.to_string(),
        })
    })
}
