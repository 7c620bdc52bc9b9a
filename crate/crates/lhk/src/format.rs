//! The JSON complex format.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use lhk_core::complex::{BallComplex, RawCell};
use lhk_core::signatures::{ManifoldComplex, Promise};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellEntry {
    pub id: String,
    pub dim: usize,
    #[serde(default)]
    pub boundary: Vec<(String, i64)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PromiseName {
    #[serde(rename = "closed-orientable")]
    ClosedOrientable,
    #[serde(rename = "with-boundary")]
    WithBoundary,
}

impl From<PromiseName> for Promise {
    fn from(p: PromiseName) -> Self {
        match p {
            PromiseName::ClosedOrientable => Promise::ClosedOrientable,
            PromiseName::WithBoundary => Promise::WithBoundary,
        }
    }
}

/// A deliberate defect for exercising the checks: the degree-`degree` part of the
/// counit's diagonal block at `ball` is negated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Corruption {
    pub ball: String,
    pub degree: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub cells: Vec<CellEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub promise: Option<PromiseName>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary_cells: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corruption: Option<Corruption>,
}

impl ComplexFile {
    pub fn parse(text: &str, path: &Path) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Parse { path: path.to_path_buf(), detail: e.to_string() })
    }

    pub fn from_raw(raw: &[RawCell]) -> Self {
        let cells = raw.iter().map(|c| CellEntry { id: c.id.clone(), dim: c.dim, boundary: c.faces.clone() }).collect();
        ComplexFile { cells, promise: None, boundary_cells: None, corruption: None }
    }

    pub fn from_complex(x: &BallComplex) -> Self {
        let raw: Vec<RawCell> = x.cells().iter().map(|c| RawCell { id: c.id.clone(), dim: c.dim, faces: c.faces.iter().map(|&(f, s)| (x.id(f).to_string(), s)).collect() }).collect();
        Self::from_raw(&raw)
    }

    pub fn with_promise(mut self, p: PromiseName) -> Self {
        self.promise = Some(p);
        self
    }

    pub fn raw(&self) -> Vec<RawCell> {
        self.cells.iter().map(|c| RawCell { id: c.id.clone(), dim: c.dim, faces: c.boundary.clone() }).collect()
    }

    /// Every problem with the cells, or the validated complex.
    pub fn validate(&self) -> Result<BallComplex, Vec<lhk_core::Error>> {
        BallComplex::validate(&self.raw())
    }

    pub fn complex(&self) -> CliResult<BallComplex> {
        self.validate().map_err(|errs| CliError::Invalid(errs.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; ")))
    }

    /// The manifold promised by the file.
    pub fn manifold(&self, x: Arc<BallComplex>) -> CliResult<ManifoldComplex> {
        let promise = self.promise.ok_or_else(|| CliError::Invalid("the file carries no manifold promise".into()))?;
        let declared = match &self.boundary_cells {
            Some(ids) => Some(ids.iter().map(|id| x.find(id).ok_or_else(|| CliError::UnknownCell(id.clone()))).collect::<CliResult<Vec<_>>>()?),
            None => None,
        };
        Ok(ManifoldComplex::new(x, promise.into(), declared)?)
    }

    pub fn to_json(&self) -> String {
        crate::report::canonical_json(&serde_json::to_value(self).expect("complex file serializes"))
    }
}

/// A complex file read from disk, with the digest of its bytes.
#[derive(Clone, Debug)]
pub struct Input {
    pub path: PathBuf,
    pub digest: String,
    pub file: ComplexFile,
}

impl Input {
    pub fn read(path: &Path) -> CliResult<Self> {
        let bytes = std::fs::read(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
        let text = std::str::from_utf8(&bytes).map_err(|e| CliError::Parse { path: path.to_path_buf(), detail: e.to_string() })?;
        Self::from_text(path, text)
    }

    pub fn from_text(path: &Path, text: &str) -> CliResult<Self> {
        let file = ComplexFile::parse(text, path)?;
        Ok(Input { path: path.to_path_buf(), digest: sha256_hex(text.as_bytes()), file })
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn write_text(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}
