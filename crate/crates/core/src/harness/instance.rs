//! Instance files: frames given by an order relation, spaces given by their
//! opens.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frame::{FiniteFrame, FrameError};
use crate::space::{frame_of_opens, validate_space, FiniteSpace, SpaceError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum InstanceBody {
    Frame {
        n: usize,
        leq: Vec<(usize, usize)>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
    },
    Space {
        points: Vec<String>,
        opens: Vec<Vec<String>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(flatten)]
    pub body: InstanceBody,
}

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{origin}:{line}:{column}: {message}")]
    Parse {
        origin: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}: frame has {1} labels for {2} elements")]
    LabelCount(String, usize, usize),
    #[error("{0}: {1}")]
    Frame(String, FrameError),
    #[error("{0}: {1}")]
    Space(String, SpaceError),
}

/// A validated instance. Spaces carry their frame of opens.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub space: Option<FiniteSpace>,
    pub frame: FiniteFrame,
}

impl InstanceFile {
    pub fn frame(name: &str, n: usize, leq: &[(usize, usize)]) -> Self {
        InstanceFile {
            name: Some(name.to_string()),
            body: InstanceBody::Frame {
                n,
                leq: leq.to_vec(),
                labels: None,
            },
        }
    }

    pub fn space(name: &str, points: &[&str], opens: &[&[&str]]) -> Self {
        let owned = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        InstanceFile {
            name: Some(name.to_string()),
            body: InstanceBody::Space {
                points: owned(points),
                opens: opens.iter().map(|o| owned(o)).collect(),
            },
        }
    }

    pub fn from_space(name: &str, space: &FiniteSpace) -> Self {
        let opens = space
            .opens()
            .iter()
            .map(|o| o.iter().map(|i| space.points()[i].clone()).collect())
            .collect();
        InstanceFile {
            name: Some(name.to_string()),
            body: InstanceBody::Space {
                points: space.points().to_vec(),
                opens,
            },
        }
    }

    /// Validates the payload. `fallback` names the instance when the file
    /// does not.
    pub fn build(&self, fallback: &str) -> Result<Instance, InstanceError> {
        let name = self.name.clone().unwrap_or_else(|| fallback.to_string());
        match &self.body {
            InstanceBody::Frame { n, leq, labels } => {
                let mut frame = FiniteFrame::build(*n, leq)
                    .map_err(|e| InstanceError::Frame(name.clone(), e))?;
                if let Some(labels) = labels {
                    if labels.len() != *n {
                        return Err(InstanceError::LabelCount(name, labels.len(), *n));
                    }
                    frame = frame.with_labels(labels.clone());
                }
                Ok(Instance {
                    name,
                    space: None,
                    frame,
                })
            }
            InstanceBody::Space { points, opens } => {
                let space = validate_space(points, opens)
                    .map_err(|e| InstanceError::Space(name.clone(), e))?;
                let frame =
                    frame_of_opens(&space).map_err(|e| InstanceError::Frame(name.clone(), e))?;
                Ok(Instance {
                    name,
                    space: Some(space),
                    frame,
                })
            }
        }
    }
}

pub fn parse_instance_file(text: &str, origin: &str) -> Result<InstanceFile, InstanceError> {
    serde_json::from_str(text).map_err(|e| InstanceError::Parse {
        origin: origin.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// Reads, parses and validates an instance file. The file stem names the
/// instance unless the file gives a name.
pub fn load_instance(path: &Path) -> Result<Instance, InstanceError> {
    let text = fs::read_to_string(path).map_err(|source| InstanceError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let origin = path.display().to_string();
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| origin.clone());
    parse_instance_file(&text, &origin)?.build(&stem)
}
