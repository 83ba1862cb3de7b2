//! Resumable progress files: one JSON line per completed subtree.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{LevelBest, SearchError, SearchSpec};

pub const CHECKPOINT_SCHEMA: &str = "extremal-checkpoint/v1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub(crate) struct SubtreeRecord {
    pub subtree: usize,
    pub generated: u64,
    /// Tallies for the sizes below the split level, indexed `[size][t]`.
    pub levels: Vec<Vec<LevelBest>>,
}

impl SubtreeRecord {
    pub fn new(subtree: usize, generated: u64, levels: Vec<Vec<LevelBest>>) -> Self {
        SubtreeRecord { subtree, generated, levels }
    }
}

#[derive(Serialize, Deserialize)]
struct Line {
    schema: String,
    spec_hash: String,
    #[serde(flatten)]
    record: SubtreeRecord,
}

pub(crate) struct Checkpoint {
    path: PathBuf,
    hash: String,
    completed: HashMap<usize, SubtreeRecord>,
    file: Mutex<File>,
}

/// Identifies everything that determines the subtree split and contents.
fn spec_hash(spec: &SearchSpec, ts: &[usize], split: usize) -> String {
    let identity = serde_json::json!({ "schema": CHECKPOINT_SCHEMA, "spec": spec, "t": ts, "split": split });
    let digest = Sha256::digest(identity.to_string().as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

impl Checkpoint {
    pub fn open(path: &Path, spec: &SearchSpec, ts: &[usize], split: usize) -> Result<Self, SearchError> {
        let fail = |reason: String| SearchError::Checkpoint { path: path.to_path_buf(), reason };
        let hash = spec_hash(spec, ts, split);
        let mut completed = HashMap::new();
        if path.exists() {
            let reader = BufReader::new(File::open(path).map_err(|e| fail(e.to_string()))?);
            let lines: Vec<String> = reader.lines().collect::<Result<_, _>>().map_err(|e| fail(e.to_string()))?;
            let last = lines.len();
            for (no, text) in lines.iter().enumerate() {
                if text.trim().is_empty() {
                    continue;
                }
                match serde_json::from_str::<Line>(text) {
                    Ok(line) if line.schema == CHECKPOINT_SCHEMA && line.spec_hash == hash => {
                        completed.insert(line.record.subtree, line.record);
                    }
                    Ok(_) => {}
                    // an interrupted write can leave a partial final line
                    Err(_) if no + 1 == last => {}
                    Err(e) => return Err(fail(format!("line {}: {e}", no + 1))),
                }
            }
        }
        let file = OpenOptions::new().create(true).append(true).open(path).map_err(|e| fail(e.to_string()))?;
        Ok(Checkpoint { path: path.to_path_buf(), hash, completed, file: Mutex::new(file) })
    }

    pub fn take_completed(&mut self, subtree: usize) -> Option<SubtreeRecord> {
        self.completed.remove(&subtree)
    }

    pub fn append(&self, record: &SubtreeRecord) -> Result<(), SearchError> {
        let line = Line { schema: CHECKPOINT_SCHEMA.to_string(), spec_hash: self.hash.clone(), record: record.clone() };
        let mut text = serde_json::to_string(&line).expect("records serialize");
        text.push('\n');
        let mut file = self.file.lock().expect("checkpoint writer poisoned");
        file.write_all(text.as_bytes())
            .and_then(|_| file.flush())
            .map_err(|e| SearchError::Checkpoint { path: self.path.clone(), reason: e.to_string() })
    }
}
