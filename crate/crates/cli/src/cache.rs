//! Content-addressed cache of spinal embeddings.
//!
//! Entries are embedding files named by the sha256 of the spine in
//! canonical text form. A hit is only used after it re-verifies against
//! the spine it claims to embed.

use std::path::PathBuf;

use spinal_core::embedding::{parse_embedding, write_embedding, FaceSet, RotationSystem};
use spinal_core::graph::Graph;
use spinal_core::interlace::interlacement;
use spinal_core::text::write_graph;
use spinal_core::{embed_interlacement, trace_faces, verify_quadrangulation};

use crate::error::CliError;
use crate::io::{sha256_hex, write_atomic};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    Miss,
    Off,
}

impl CacheStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CacheStatus::Hit => "hit",
            CacheStatus::Miss => "miss",
            CacheStatus::Off => "off",
        }
    }
}

pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Cache { dir }
    }

    fn entry(&self, spine: &Graph) -> Option<PathBuf> {
        let key = sha256_hex(format!("spinal-embedding v1\n{}", write_graph(spine)).as_bytes());
        self.dir.as_ref().map(|d| d.join(format!("{key}.json")))
    }

    fn lookup(&self, spine: &Graph, beta: usize) -> Option<(RotationSystem, FaceSet)> {
        let text = std::fs::read_to_string(self.entry(spine)?).ok()?;
        let rs = parse_embedding(&text).ok()?.rotation_system().ok()?;
        let expected = interlacement(spine).ok()?.into_graph();
        if rs.graph() != &expected || !verify_quadrangulation(&rs, Some(beta)).ok()?.passed() {
            return None;
        }
        let faces = trace_faces(&rs).ok()?;
        Some((rs, faces))
    }

    /// Spinal embedding of `spine`, verified with genus `beta(spine)`.
    pub fn spinal_embedding(&self, spine: &Graph) -> Result<(RotationSystem, FaceSet, CacheStatus), CliError> {
        let beta = spine.betti().map_err(CliError::invalid)?;
        if let Some((rs, faces)) = self.lookup(spine, beta) {
            return Ok((rs, faces, CacheStatus::Hit));
        }
        let rs = embed_interlacement(spine)?;
        let faces = trace_faces(&rs).map_err(|e| CliError::Verification(e.to_string()))?;
        let Some(path) = self.entry(spine) else {
            return Ok((rs, faces, CacheStatus::Off));
        };
        write_atomic(&path, write_embedding(&rs, Some(faces.genus), Some(&faces.faces)).as_bytes())?;
        Ok((rs, faces, CacheStatus::Miss))
    }
}
