//! JSON documents read and written by the command-line tool.
//!
//! Player and resource indices are one-based in every document.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use fairsched::{Assignment, Instance, LoadDistribution, Weight, Witness};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceDoc {
    pub weights: Vec<Weight>,
    pub m: usize,
    #[serde(default)]
    pub t: Option<Weight>,
}

impl InstanceDoc {
    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing instance {}", path.display()))
    }

    pub fn instance(&self) -> Result<Instance> {
        Ok(Instance::new(self.weights.clone(), self.m)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssignmentDoc {
    pub a: Vec<usize>,
}

impl AssignmentDoc {
    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing assignment {}", path.display()))
    }

    pub fn assignment(&self, instance: &Instance) -> Result<Assignment> {
        let a = Assignment::from_one_based(&self.a)?;
        a.validate(instance)?;
        Ok(a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Found,
    Infeasible,
    Refused,
}

#[derive(Debug, Serialize)]
pub struct SolveDoc {
    pub status: Status,
    pub property: String,
    pub threshold: Option<Weight>,
    pub solver: Option<String>,
    pub assignment: Option<Vec<usize>>,
    pub loads: Option<Vec<Weight>>,
    pub makespan: Option<Weight>,
    pub elapsed_ns: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessDoc {
    Pair { property: String, i: usize, j: usize },
    Deviation { property: String, i: usize, resource: usize },
}

impl From<Witness> for WitnessDoc {
    fn from(w: Witness) -> Self {
        let property = w.property().name().to_string();
        match w {
            Witness::Pair { i, j, .. } => WitnessDoc::Pair { property, i: i + 1, j: j + 1 },
            Witness::Deviation { i, resource } => WitnessDoc::Deviation { property, i: i + 1, resource: resource + 1 },
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CheckDoc {
    pub property: String,
    pub satisfied: bool,
    pub witness: Option<WitnessDoc>,
    pub loads: Vec<Weight>,
    pub makespan: Weight,
    pub distribution: String,
}

#[derive(Debug, Serialize)]
pub struct ClassDoc {
    pub distribution: String,
    pub groups: Vec<Vec<Weight>>,
    pub makespan: Weight,
    pub assignment: Vec<usize>,
}

impl ClassDoc {
    pub fn new(d: &LoadDistribution, a: &Assignment) -> Self {
        ClassDoc {
            distribution: d.to_string(),
            groups: d.groups().to_vec(),
            makespan: d.makespan(),
            assignment: a.to_one_based(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct EnumerateDoc {
    pub property: String,
    pub threshold: Option<Weight>,
    pub count: usize,
    pub classes: Vec<ClassDoc>,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("documents serialize") + "\n"
}
