//! JSON file formats for complexes, actions and triples.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use cogcomp_core::{
    ComplexDocument, CompressedTriple, CompressionCertificate, FiniteGroup, GroupAction,
    SimplicialComplex, TripleError,
};

/// Problems with the inputs themselves, as opposed to mathematical failures.
#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Invalid { path: PathBuf, message: String },
    #[error("{0}")]
    Usage(String),
}

impl InputError {
    fn invalid(path: &Path, message: impl ToString) -> Self {
        InputError::Invalid {
            path: path.to_path_buf(),
            message: message.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorsDocument {
    pub generators: IndexMap<String, Vec<u32>>,
}

/// A complex given inline or as a path relative to the action file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexRef {
    Inline(ComplexDocument),
    Path(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionDocument {
    pub group: GeneratorsDocument,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complex: Option<ComplexRef>,
}

impl ActionDocument {
    pub fn from_action(action: &GroupAction) -> Self {
        ActionDocument {
            group: GeneratorsDocument {
                generators: action.generator_tables().into_iter().collect(),
            },
            complex: Some(ComplexRef::Inline(action.complex().to_document())),
        }
    }
}

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|source| InputError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn parse<T: serde::de::DeserializeOwned>(path: &Path, text: &str) -> Result<T, InputError> {
    serde_json::from_str(text).map_err(|e| InputError::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn load_complex(path: &Path) -> Result<SimplicialComplex, InputError> {
    let doc: ComplexDocument = parse(path, &read(path)?)?;
    SimplicialComplex::from_document(&doc).map_err(|e| InputError::invalid(path, e))
}

/// Loads an action file. `complex` overrides any complex named in the file.
pub fn load_action(path: &Path, complex: Option<&Path>) -> Result<GroupAction, InputError> {
    let doc: ActionDocument = parse(path, &read(path)?)?;
    let x = match (complex, &doc.complex) {
        (Some(c), _) => load_complex(c)?,
        (None, Some(ComplexRef::Inline(d))) => {
            SimplicialComplex::from_document(d).map_err(|e| InputError::invalid(path, e))?
        }
        (None, Some(ComplexRef::Path(p))) => {
            let base = path.parent().unwrap_or_else(|| Path::new("."));
            load_complex(&base.join(p))?
        }
        (None, None) => {
            return Err(InputError::Usage(format!(
                "{} names no complex; pass --complex",
                path.display()
            )))
        }
    };
    action_from_parts(path, doc.group.generators, x)
}

fn action_from_parts(
    path: &Path,
    generators: IndexMap<String, Vec<u32>>,
    x: SimplicialComplex,
) -> Result<GroupAction, InputError> {
    let degree = x.vertex_count();
    let group = FiniteGroup::from_generators(degree, generators.into_iter().collect())
        .map_err(|e| InputError::invalid(path, e))?;
    GroupAction::from_permutation_group(Arc::new(group), Arc::new(x))
        .map_err(|e| InputError::invalid(path, e))
}

pub fn load_triple(
    path: &Path,
) -> Result<(CompressedTriple, Option<CompressionCertificate>), InputError> {
    CompressedTriple::from_json(&read(path)?).map_err(|e| match e {
        TripleError::Parse {
            line,
            column,
            message,
        } => InputError::Parse {
            path: path.to_path_buf(),
            line,
            column,
            message,
        },
        other => InputError::invalid(path, other),
    })
}

/// Pretty JSON with a trailing newline; struct field order is fixed, so
/// the output is byte-deterministic.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

pub fn write(path: &Path, contents: &str) -> Result<(), InputError> {
    fs::write(path, contents).map_err(|source| InputError::Write {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes to `path`, or to stdout when no path is given.
pub fn emit(path: Option<&Path>, contents: &str) -> Result<(), InputError> {
    match path {
        Some(p) => write(p, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}
