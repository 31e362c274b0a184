//! JSON documents for posets, families and percolation schedules.
//!
//! Sets are written as sorted 1-based element lists. Objects are emitted with
//! sorted keys so identical inputs give byte-identical output.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::embed::Embedding;
use crate::error::{Error, Result};
use crate::family::{SetFamily, SubsetMask};
use crate::percolation::PercolationSchedule;
use crate::poset::Poset;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetDocument {
    pub elements: usize,
    /// Strict relations `[i, j]` meaning `i < j`, 0-based. Transitivity is
    /// implied.
    pub lt: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl PosetDocument {
    /// Written with cover relations only.
    pub fn from_poset(poset: &Poset, name: Option<&str>) -> Self {
        PosetDocument {
            elements: poset.size(),
            lt: poset.covers().into_iter().map(|(i, j)| [i, j]).collect(),
            name: name.map(str::to_owned),
        }
    }

    pub fn to_poset(&self) -> Result<Poset> {
        let pairs: Vec<(usize, usize)> = self.lt.iter().map(|&[i, j]| (i, j)).collect();
        Poset::new(self.elements, &pairs)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyDocument {
    pub n: u32,
    pub sets: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Value>,
}

impl FamilyDocument {
    pub fn from_family(family: &SetFamily) -> Self {
        FamilyDocument { n: family.ground(), sets: family.to_lists(), metadata: None }
    }

    pub fn with_metadata(mut self, metadata: impl Serialize) -> Self {
        self.metadata = Some(serde_json::to_value(metadata).expect("metadata serializes"));
        self
    }

    /// Rejects duplicates and elements outside `1..=n`.
    pub fn to_family(&self) -> Result<SetFamily> {
        SetFamily::from_lists(self.n, &self.sets)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepDocument {
    pub set: Vec<u32>,
    /// `witness[i]` is the set playing poset element `i`.
    pub witness: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScheduleDocument {
    pub n: u32,
    pub poset: PosetDocument,
    pub initial: Vec<Vec<u32>>,
    pub steps: Vec<StepDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Value>,
}

impl ScheduleDocument {
    pub fn from_schedule(s: &PercolationSchedule) -> Self {
        ScheduleDocument {
            n: s.ground,
            poset: PosetDocument::from_poset(&s.poset, None),
            initial: s.initial.to_lists(),
            steps: s
                .steps
                .iter()
                .map(|(set, w)| StepDocument { set: set.elements(), witness: embedding_lists(w) })
                .collect(),
            metadata: None,
        }
    }

    /// Parses the document without validating the schedule itself; steps
    /// with out-of-range elements are still rejected here.
    pub fn to_schedule(&self) -> Result<PercolationSchedule> {
        let set = |l: &[u32]| list_to_mask(l, self.n);
        let steps = self
            .steps
            .iter()
            .map(|st| {
                let w = st.witness.iter().map(|l| set(l)).collect::<Result<Vec<_>>>()?;
                Ok((set(&st.set)?, Embedding::new(w)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PercolationSchedule {
            poset: self.poset.to_poset()?,
            ground: self.n,
            initial: SetFamily::from_lists(self.n, &self.initial)?,
            steps,
        })
    }
}

pub fn embedding_lists(e: &Embedding) -> Vec<Vec<u32>> {
    e.image().iter().map(|s| s.elements()).collect()
}

pub fn list_to_mask(list: &[u32], n: u32) -> Result<SubsetMask> {
    if list.iter().any(|&x| x == 0 || x > n) {
        return Err(Error::SetOutOfGround(list.to_vec(), n));
    }
    Ok(SubsetMask::from_elements(list))
}

/// Pretty JSON with keys sorted at every level, newline-terminated.
pub fn to_json(value: &impl Serialize) -> Result<String> {
    // `Value` keeps object keys in a BTreeMap, which sorts them.
    let v = serde_json::to_value(value)?;
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn read_poset(path: &Path) -> Result<Poset> {
    read_json::<PosetDocument>(path)?.to_poset()
}

pub fn read_family(path: &Path) -> Result<SetFamily> {
    read_json::<FamilyDocument>(path)?.to_family()
}
