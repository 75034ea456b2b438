//! Embedding file: a JSON object with keys in sorted order.
//!
//! ```text
//! {
//!   "faces": [
//!     [0, 1, 2, 3],
//!     ...
//!   ],
//!   "genus": 1,
//!   "rotations": [
//!     [1, 2, 4, 5],
//!     ...
//!   ]
//! }
//! ```
//!
//! `genus` is `-1` for an unverified embedding and `faces` may be omitted.
//! The writer emits exactly this layout; the reader accepts any JSON
//! whitespace.

use std::fmt::Write as _;

use serde::Deserialize;

use super::{EmbeddingError, RotationSystem};
use crate::graph::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbeddingFile {
    #[serde(default)]
    pub faces: Option<Vec<Vec<Vertex>>>,
    pub genus: i64,
    pub rotations: Vec<Vec<Vertex>>,
}

impl EmbeddingFile {
    pub fn rotation_system(&self) -> Result<RotationSystem, EmbeddingError> {
        RotationSystem::from_rotations(self.rotations.clone())
    }
}

fn write_rows(out: &mut String, key: &str, rows: &[Vec<Vertex>]) {
    write!(out, "  \"{key}\": [").unwrap();
    for (i, row) in rows.iter().enumerate() {
        out.push_str(if i == 0 { "\n    [" } else { ",\n    [" });
        for (j, x) in row.iter().enumerate() {
            if j > 0 {
                out.push_str(", ");
            }
            write!(out, "{x}").unwrap();
        }
        out.push(']');
    }
    out.push_str(if rows.is_empty() { "]" } else { "\n  ]" });
}

/// Serializes an embedding. Pass `genus: None` for an unverified embedding.
pub fn write_embedding(rs: &RotationSystem, genus: Option<usize>, faces: Option<&[Vec<Vertex>]>) -> String {
    let mut out = String::from("{\n");
    if let Some(faces) = faces {
        write_rows(&mut out, "faces", faces);
        out.push_str(",\n");
    }
    let genus = genus.map_or(-1, |g| g as i64);
    writeln!(out, "  \"genus\": {genus},").unwrap();
    write_rows(&mut out, "rotations", rs.rotations());
    out.push_str("\n}\n");
    out
}

pub fn parse_embedding(text: &str) -> Result<EmbeddingFile, EmbeddingError> {
    serde_json::from_str(text).map_err(|e| EmbeddingError::Format(e.to_string()))
}
