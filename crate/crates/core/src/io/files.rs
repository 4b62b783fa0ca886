//! On-disk formats.
//!
//! Prior: `{"secrets": [{"name", "p", "q_y1"}, ...]}` with `p = P(S=s)` and
//! `q_y1 = P(Y=1|S=s)`, or a joint table `{"joint": [{"name", "y1", "y0"}]}`
//! holding `P(S=s, Y=1)` and `P(S=s, Y=0)`.
//!
//! Structure: `{"prior", "secrets", "signals", "widths", "cells"}` where
//! `widths[k][t] = P(T=t|S=secrets[k])` and `cells[k][t] = P(Y=1|S,T)`.
//!
//! Mechanism: `{"prior", "secrets", "signals", "kernel"}` with
//! `kernel[k][y][t] = P(T=t|S=secrets[k], Y=y)`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::format::write_json;
use crate::error::{Error, Result};
use crate::model::{InfoStructure, Mechanism, Prior};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SecretEntry {
    pub name: String,
    pub p: f64,
    pub q_y1: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JointEntry {
    pub name: String,
    pub y1: f64,
    pub y0: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PriorFile {
    Secrets { secrets: Vec<SecretEntry> },
    Joint { joint: Vec<JointEntry> },
}

impl PriorFile {
    /// Secrets in the order they were originally supplied.
    pub fn from_prior(prior: &Prior) -> Self {
        let mut secrets: Vec<(usize, SecretEntry)> = (0..prior.len())
            .map(|k| {
                let entry =
                    SecretEntry { name: prior.names()[k].clone(), p: prior.mass()[k], q_y1: prior.cond()[k] };
                (prior.order()[k], entry)
            })
            .collect();
        secrets.sort_by_key(|(i, _)| *i);
        PriorFile::Secrets { secrets: secrets.into_iter().map(|(_, e)| e).collect() }
    }

    pub fn to_prior(&self) -> Result<Prior> {
        match self {
            PriorFile::Secrets { secrets } => Prior::new(
                secrets.iter().map(|e| e.name.clone()).collect(),
                secrets.iter().map(|e| e.p).collect(),
                secrets.iter().map(|e| e.q_y1).collect(),
            ),
            PriorFile::Joint { joint } => Prior::from_joint(
                joint.iter().map(|e| e.name.clone()).collect(),
                &joint.iter().map(|e| e.y1).collect::<Vec<_>>(),
                &joint.iter().map(|e| e.y0).collect::<Vec<_>>(),
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructureFile {
    pub prior: PriorFile,
    pub secrets: Vec<String>,
    pub signals: Vec<String>,
    pub widths: Vec<Vec<f64>>,
    pub cells: Vec<Vec<f64>>,
}

impl StructureFile {
    pub fn from_structure(st: &InfoStructure) -> Self {
        StructureFile {
            prior: PriorFile::from_prior(st.prior()),
            secrets: st.prior().names().to_vec(),
            signals: st.signals().to_vec(),
            widths: st.widths().to_vec(),
            cells: st.cells().to_vec(),
        }
    }

    pub fn to_structure(&self) -> Result<InfoStructure> {
        let prior = self.prior.to_prior()?;
        let rows = row_order(&prior, &self.secrets)?;
        InfoStructure::new(
            prior,
            self.signals.clone(),
            pick(&self.widths, &rows, "widths")?,
            pick(&self.cells, &rows, "cells")?,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MechanismFile {
    pub prior: PriorFile,
    pub secrets: Vec<String>,
    pub signals: Vec<String>,
    pub kernel: Vec<[Vec<f64>; 2]>,
}

impl MechanismFile {
    pub fn from_mechanism(mech: &Mechanism) -> Self {
        MechanismFile {
            prior: PriorFile::from_prior(mech.prior()),
            secrets: mech.prior().names().to_vec(),
            signals: mech.signals().to_vec(),
            kernel: mech.kernel().to_vec(),
        }
    }

    pub fn to_mechanism(&self) -> Result<Mechanism> {
        let prior = self.prior.to_prior()?;
        let rows = row_order(&prior, &self.secrets)?;
        Mechanism::new(prior, self.signals.clone(), pick(&self.kernel, &rows, "kernel")?)
    }
}

/// File row holding each canonical secret.
fn row_order(prior: &Prior, secrets: &[String]) -> Result<Vec<usize>> {
    if secrets.len() != prior.len() {
        return Err(Error::Parse(format!("{} secret rows for a prior over {}", secrets.len(), prior.len())));
    }
    prior
        .names()
        .iter()
        .map(|name| secrets.iter().position(|s| s == name).ok_or_else(|| Error::UnknownSecret(name.clone())))
        .collect()
}

fn pick<T: Clone>(rows: &[T], order: &[usize], what: &str) -> Result<Vec<T>> {
    if rows.len() != order.len() {
        return Err(Error::Parse(format!("{what} has {} rows, expected {}", rows.len(), order.len())));
    }
    Ok(order.iter().map(|&k| rows[k].clone()).collect())
}

fn read<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn read_prior(path: &Path) -> Result<Prior> {
    read::<PriorFile>(path)?.to_prior()
}

pub fn write_prior(path: &Path, prior: &Prior) -> Result<()> {
    write_json(path, &PriorFile::from_prior(prior))
}

pub fn read_structure(path: &Path) -> Result<InfoStructure> {
    read::<StructureFile>(path)?.to_structure()
}

pub fn write_structure(path: &Path, st: &InfoStructure) -> Result<()> {
    write_json(path, &StructureFile::from_structure(st))
}

pub fn read_mechanism(path: &Path) -> Result<Mechanism> {
    read::<MechanismFile>(path)?.to_mechanism()
}

pub fn write_mechanism(path: &Path, mech: &Mechanism) -> Result<()> {
    write_json(path, &MechanismFile::from_mechanism(mech))
}
