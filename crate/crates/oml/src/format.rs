//! Input lines and the JSON interchange format.
//!
//! An input file holds one diagram per line, either in MMP notation
//! (`123,345,567.`) or as a JSON object `{"atoms":N,"blocks":[[0,1,2],...]}`
//! with zero-based atom indices. Blank lines and lines starting with `#` are
//! skipped.

use std::fs;
use std::io::{self, Read};
use std::path::Path;

use oml_core::mmp::parse_mmp;
use oml_core::MmpDiagram;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub atoms: usize,
    pub blocks: Vec<Vec<usize>>,
}

impl From<&MmpDiagram> for DiagramJson {
    fn from(d: &MmpDiagram) -> Self {
        DiagramJson {
            atoms: d.atom_count(),
            blocks: d.to_index_lists(),
        }
    }
}

impl TryFrom<DiagramJson> for MmpDiagram {
    type Error = oml_core::Error;

    fn try_from(j: DiagramJson) -> oml_core::Result<Self> {
        MmpDiagram::from_indices(j.atoms, j.blocks)
    }
}

pub fn to_json(d: &MmpDiagram) -> String {
    serde_json::to_string(&DiagramJson::from(d)).expect("plain data serializes")
}

/// Parses one line in either format.
pub fn parse_line(text: &str) -> Result<MmpDiagram> {
    let text = text.trim();
    if text.starts_with('{') {
        let j: DiagramJson = serde_json::from_str(text)?;
        Ok(MmpDiagram::try_from(j)?)
    } else {
        Ok(parse_mmp(text)?)
    }
}

/// One non-comment line of an input file.
#[derive(Debug)]
pub struct InputLine {
    /// 1-based line number in the file.
    pub number: usize,
    pub text: String,
    pub diagram: Result<MmpDiagram>,
}

/// Reads `path`, or standard input when `path` is `-`.
pub fn read_text(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Error::io(path, e))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Error::io(path, e))
    }
}

pub fn parse_lines(text: &str) -> Vec<InputLine> {
    text.lines()
        .enumerate()
        .filter_map(|(i, line)| {
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                return None;
            }
            Some(InputLine {
                number: i + 1,
                text: t.to_string(),
                diagram: parse_line(t),
            })
        })
        .collect()
}

pub fn read_lines(path: &Path) -> Result<Vec<InputLine>> {
    Ok(parse_lines(&read_text(path)?))
}
