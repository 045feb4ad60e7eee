//! JSON instance files.
//!
//! ```json
//! {"cycles": [9, 8, 4, 2], "originator": {"cycle": 2, "position": 2}}
//! {"cycles": [6, 5, 2], "originator": {"center": true}}
//! ```
//!
//! Cycle lengths may come in any order. The originator's `cycle` index is
//! 1-based in the sorted (non-increasing, stable) order, which is the order
//! every other part of the crate uses.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::topology::{KCycleGraph, Originator, TopologyError};

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("cannot read or write {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed instance JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("`center` must be true when given")]
    CenterFalse,
    #[error(transparent)]
    Topology(#[from] TopologyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum OriginatorJson {
    Center { center: bool },
    Cycle { cycle: usize, position: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct InstanceJson {
    cycles: Vec<usize>,
    originator: OriginatorJson,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub graph: KCycleGraph,
    pub originator: Originator,
    /// `mapping[j]` is the sorted index of the `j + 1`-th cycle as written in
    /// the file. The identity when the file was already sorted.
    pub mapping: Vec<usize>,
}

impl Instance {
    pub fn new(graph: KCycleGraph, originator: Originator) -> Result<Self, TopologyError> {
        graph.check_originator(originator)?;
        let mapping = (1..=graph.k()).collect();
        Ok(Instance {
            graph,
            originator,
            mapping,
        })
    }

    /// True if loading re-ordered the cycles.
    pub fn was_reordered(&self) -> bool {
        self.mapping.iter().enumerate().any(|(j, &m)| m != j + 1)
    }

    pub fn from_json(s: &str) -> Result<Self, InstanceError> {
        let raw: InstanceJson = serde_json::from_str(s)?;
        let (graph, mapping) = KCycleGraph::with_mapping(&raw.cycles)?;
        let originator = match raw.originator {
            OriginatorJson::Center { center: true } => Originator::Center,
            OriginatorJson::Center { center: false } => return Err(InstanceError::CenterFalse),
            OriginatorJson::Cycle { cycle, position } => Originator::OnCycle { cycle, pos: position },
        };
        graph.check_originator(originator)?;
        Ok(Instance {
            graph,
            originator,
            mapping,
        })
    }

    pub fn to_json(&self) -> String {
        let originator = match self.originator {
            Originator::Center => OriginatorJson::Center { center: true },
            Originator::OnCycle { cycle, pos } => OriginatorJson::Cycle { cycle, position: pos },
        };
        let raw = InstanceJson {
            cycles: self.graph.lengths().to_vec(),
            originator,
        };
        serde_json::to_string(&raw).expect("instance serialization cannot fail")
    }

    pub fn load(path: &Path) -> Result<Self, InstanceError> {
        let text = fs::read_to_string(path).map_err(|source| InstanceError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn save(&self, path: &Path) -> Result<(), InstanceError> {
        fs::write(path, self.to_json() + "\n").map_err(|source| InstanceError::Io {
            path: path.display().to_string(),
            source,
        })
    }
}
