//! On-disk JSON cache for published Horn tables.
//!
//! One file per `(d, r, s, cycle type)`, grouped in a directory whose name is
//! the SHA-256 of the schema version, arity and cycle type.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::combinat::{CycleType, Subset, SubsetTuple};
use crate::engine::{HornTable, Provenance, TableEntry, TableKey};
use crate::error::{HornError, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct TableFile {
    schema_version: u32,
    s: usize,
    cycle_type: Vec<usize>,
    d: u32,
    r: u32,
    provenance: Provenance,
    members: Vec<EntryFile>,
}

#[derive(Serialize, Deserialize)]
struct EntryFile {
    tuple: Vec<Vec<u32>>,
    in0: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    in00: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct TableCache {
    root: PathBuf,
}

impl TableCache {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        TableCache { root: root.into() }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn directory(&self, cycle_type: &CycleType) -> PathBuf {
        let mut hasher = Sha256::new();
        hasher.update(format!(
            "horn-tables;schema={SCHEMA_VERSION};s={};type={}",
            cycle_type.arity(),
            cycle_type.label()
        ));
        let digest = hex::encode(hasher.finalize());
        self.root.join(&digest[..16])
    }

    pub fn path(&self, key: &TableKey) -> PathBuf {
        self.directory(&key.cycle_type)
            .join(format!("d{}_r{}.json", key.d, key.r))
    }

    /// Loads a table; `Ok(None)` when no file exists.
    pub fn load(&self, key: &TableKey) -> Result<Option<HornTable>> {
        let path = self.path(key);
        let text = match fs::read_to_string(&path) {
            Ok(text) => text,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(HornError::Cache(format!("{}: {e}", path.display()))),
        };
        let file: TableFile = serde_json::from_str(&text)
            .map_err(|e| HornError::Cache(format!("{}: {e}", path.display())))?;
        if file.schema_version != SCHEMA_VERSION
            || file.d != key.d
            || file.r != key.r
            || file.s != key.arity()
            || file.cycle_type != key.cycle_type.lengths()
        {
            return Err(HornError::Cache(format!(
                "{} does not hold {key} (schema {})",
                path.display(),
                file.schema_version
            )));
        }
        let mut entries = Vec::with_capacity(file.members.len());
        for m in file.members {
            let parts = m
                .tuple
                .iter()
                .map(|e| Subset::new(key.r, e))
                .collect::<Result<Vec<_>>>()?;
            let tuple = SubsetTuple::new(parts)?;
            if tuple.size() != key.d || tuple.arity() != key.arity() {
                return Err(HornError::Cache(format!(
                    "{}: member {tuple} has the wrong shape",
                    path.display()
                )));
            }
            entries.push(TableEntry {
                tuple,
                in0: m.in0,
                in00: m.in00,
            });
        }
        if !entries.windows(2).all(|w| w[0].tuple < w[1].tuple) {
            return Err(HornError::Cache(format!(
                "{}: members are not in canonical order",
                path.display()
            )));
        }
        Ok(Some(HornTable {
            key: key.clone(),
            entries,
            provenance: file.provenance,
        }))
    }

    /// Writes through a temporary file and renames it into place.
    pub fn save(&self, table: &HornTable) -> Result<()> {
        let key = &table.key;
        let path = self.path(key);
        let dir = path.parent().expect("cache paths have a parent");
        let io = |e: std::io::Error| HornError::Cache(format!("{}: {e}", path.display()));
        fs::create_dir_all(dir).map_err(io)?;
        let file = TableFile {
            schema_version: SCHEMA_VERSION,
            s: key.arity(),
            cycle_type: key.cycle_type.lengths().to_vec(),
            d: key.d,
            r: key.r,
            provenance: table.provenance,
            members: table
                .entries
                .iter()
                .map(|e| EntryFile {
                    tuple: e.tuple.parts().iter().map(Subset::elements).collect(),
                    in0: e.in0,
                    in00: e.in00,
                })
                .collect(),
        };
        let body = serde_json::to_vec(&file).map_err(|e| HornError::Cache(e.to_string()))?;
        let tmp = path.with_extension(format!("json.tmp{}", std::process::id()));
        let mut handle = fs::File::create(&tmp).map_err(io)?;
        handle.write_all(&body).map_err(io)?;
        handle.sync_all().map_err(io)?;
        fs::rename(&tmp, &path).map_err(io)?;
        Ok(())
    }
}
