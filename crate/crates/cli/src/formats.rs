//! JSON file formats.
//!
//! Every quaternion is a 4-element array `[a0, a1, a2, a3]`; matrices and
//! frames are nested arrays of those. Floats are written in shortest
//! round-trip form, so a write → read cycle is lossless.

use std::fs;
use std::path::{Path, PathBuf};

use qframe_core::{Frame, QMatrix, QVector, Quaternion};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: malformed JSON")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("{path}: {message}")]
    Shape { path: PathBuf, message: String },
}

pub type Entry = [f64; 4];

/// `{"dim": n, "vectors": [[[a0,a1,a2,a3], ...], ...]}`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameFile {
    pub dim: usize,
    pub vectors: Vec<Vec<Entry>>,
}

/// `{"rows": r, "cols": c, "entries": [[[a0,a1,a2,a3], ...], ...]}`, row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OperatorFile {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Entry>>,
}

/// `{"entries": [[a0,a1,a2,a3], ...]}`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VectorFile {
    pub entries: Vec<Entry>,
}

pub fn entries_of(v: &QVector) -> Vec<Entry> {
    v.iter().map(|q| q.to_array()).collect()
}

pub fn vector_of(entries: &[Entry]) -> QVector {
    entries.iter().map(|&a| Quaternion::from_array(a)).collect()
}

pub fn matrix_entries(m: &QMatrix) -> Vec<Vec<Entry>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|q| q.to_array()).collect())
        .collect()
}

impl FrameFile {
    pub fn from_frame(f: &Frame) -> Self {
        Self {
            dim: f.dim(),
            vectors: f.vectors().iter().map(entries_of).collect(),
        }
    }

    /// Validates shapes, naming the first offending vector.
    pub fn to_frame(&self) -> Result<Frame, String> {
        if self.dim == 0 {
            return Err("dim must be at least 1".into());
        }
        for (i, v) in self.vectors.iter().enumerate() {
            if v.len() != self.dim {
                return Err(format!(
                    "vector {i} has {} entries, expected dim = {}",
                    v.len(),
                    self.dim
                ));
            }
        }
        let vectors = self.vectors.iter().map(|v| vector_of(v)).collect();
        Frame::new(self.dim, vectors).map_err(|e| e.to_string())
    }
}

impl OperatorFile {
    pub fn from_matrix(m: &QMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            entries: matrix_entries(m),
        }
    }

    pub fn to_matrix(&self) -> Result<QMatrix, String> {
        if self.entries.len() != self.rows {
            return Err(format!(
                "entries has {} rows, expected rows = {}",
                self.entries.len(),
                self.rows
            ));
        }
        for (i, row) in self.entries.iter().enumerate() {
            if row.len() != self.cols {
                return Err(format!(
                    "row {i} has {} entries, expected cols = {}",
                    row.len(),
                    self.cols
                ));
            }
        }
        let data = self
            .entries
            .iter()
            .flatten()
            .map(|&a| Quaternion::from_array(a))
            .collect();
        QMatrix::new(self.rows, self.cols, data).map_err(|e| e.to_string())
    }
}

impl VectorFile {
    pub fn from_vector(v: &QVector) -> Self {
        Self {
            entries: entries_of(v),
        }
    }

    pub fn to_vector(&self) -> QVector {
        vector_of(&self.entries)
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, FormatError> {
    let text = fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.to_owned(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| FormatError::Json {
        path: path.to_owned(),
        source,
    })
}

pub fn read_frame(path: &Path) -> Result<Frame, FormatError> {
    let file: FrameFile = read_json(path)?;
    file.to_frame().map_err(|message| FormatError::Shape {
        path: path.to_owned(),
        message,
    })
}

pub fn read_operator(path: &Path) -> Result<QMatrix, FormatError> {
    let file: OperatorFile = read_json(path)?;
    file.to_matrix().map_err(|message| FormatError::Shape {
        path: path.to_owned(),
        message,
    })
}

pub fn read_vector(path: &Path) -> Result<QVector, FormatError> {
    let file: VectorFile = read_json(path)?;
    Ok(file.to_vector())
}

/// Compact JSON plus a trailing newline.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn write_text(path: &Path, text: &str) -> Result<(), FormatError> {
    fs::write(path, text).map_err(|source| FormatError::Io {
        path: path.to_owned(),
        source,
    })
}
