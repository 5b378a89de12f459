use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{PermFamily, Permutation};
use crate::error::{Error, Result};

/// On-disk family: `{"n": 5, "perms": [[rank of 1, ..., rank of n], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyFile {
    pub n: usize,
    pub perms: Vec<Vec<u32>>,
}

impl From<&PermFamily> for FamilyFile {
    fn from(family: &PermFamily) -> Self {
        Self {
            n: family.n(),
            perms: family
                .members()
                .iter()
                .map(|p| p.ranks().to_vec())
                .collect(),
        }
    }
}

impl TryFrom<FamilyFile> for PermFamily {
    type Error = Error;

    fn try_from(file: FamilyFile) -> Result<Self> {
        let members = file
            .perms
            .into_iter()
            .map(|ranks| {
                if ranks.len() != file.n {
                    return Err(Error::MismatchedGroundSet {
                        expected: file.n as u64,
                        found: ranks.len() as u64,
                    });
                }
                Permutation::from_ranks(ranks)
            })
            .collect::<Result<Vec<_>>>()?;
        PermFamily::new(file.n, members)
    }
}

impl PermFamily {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&FamilyFile::from(self)).expect("family serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str::<FamilyFile>(text)?.try_into()
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        crate::files::write_json(path, &FamilyFile::from(self))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        crate::files::read_json::<FamilyFile>(path)?.try_into()
    }
}
