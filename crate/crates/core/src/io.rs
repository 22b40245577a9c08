//! JSON documents for lattices, inflators, interval sets and operator lattices.

use std::collections::{BTreeMap, HashSet};
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::OperatorLattice;
use crate::inflator::{Flags, Inflator};
use crate::intervals::{Interval, IntervalSet, Intervals, Level};
use crate::lattice::{Digest, FiniteLattice};
use crate::nuclei::NucleusLattice;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeDoc {
    pub name: String,
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}

impl LatticeDoc {
    pub fn of(lat: &FiniteLattice) -> Self {
        LatticeDoc {
            name: lat.name().to_string(),
            elements: lat.labels().to_vec(),
            covers: lat
                .cover_pairs()
                .into_iter()
                .map(|(a, b)| (lat.label(a).to_string(), lat.label(b).to_string()))
                .collect(),
        }
    }

    pub fn build(&self) -> Result<FiniteLattice> {
        FiniteLattice::build(&self.name, &self.elements, &self.covers)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InflatorDoc {
    pub lattice: Digest,
    pub map: BTreeMap<String, String>,
    #[serde(default)]
    pub flags: Flags,
}

impl InflatorDoc {
    pub fn of(lat: &FiniteLattice, d: &Inflator) -> Self {
        InflatorDoc {
            lattice: lat.digest(),
            map: d.label_map(lat),
            flags: d.flags(),
        }
    }

    /// Rebuilds on `lat`; the recorded digest must match. Flags are
    /// recomputed rather than trusted.
    pub fn build(&self, lat: &FiniteLattice) -> Result<Inflator> {
        if self.lattice != lat.digest() {
            return Err(Error::HostMismatch(
                self.lattice.to_hex(),
                lat.digest().to_hex(),
            ));
        }
        let pairs: Vec<(&String, &String)> = self.map.iter().collect();
        Inflator::from_labels(lat, &pairs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalSetDoc {
    pub lattice: Digest,
    pub level: String,
    pub intervals: Vec<(String, String)>,
}

impl IntervalSetDoc {
    pub fn of(u: &Intervals, s: &IntervalSet) -> Self {
        let lat = u.lattice();
        IntervalSetDoc {
            lattice: lat.digest(),
            level: s.level().to_string(),
            intervals: u
                .intervals_of(s)
                .into_iter()
                .map(|iv| (lat.label(iv.lo).to_string(), lat.label(iv.hi).to_string()))
                .collect(),
        }
    }

    /// Rebuilds and checks that the set really has the recorded level.
    pub fn build(&self, u: &Intervals) -> Result<IntervalSet> {
        let lat = u.lattice();
        if self.lattice != lat.digest() {
            return Err(Error::HostMismatch(
                self.lattice.to_hex(),
                lat.digest().to_hex(),
            ));
        }
        let level: Level = self.level.parse()?;
        let ivs = self
            .intervals
            .iter()
            .map(|(lo, hi)| Ok(Interval::new(lat.elem(lo)?, lat.elem(hi)?)))
            .collect::<Result<Vec<_>>>()?;
        let raw = u.from_intervals(ivs)?;
        if u.level_of(&raw) < level {
            return Err(Error::Malformed(format!(
                "interval set is not a {level} set"
            )));
        }
        u.close(&raw, level)
    }
}

/// Export of an operator family: its order as a lattice plus member tables.
/// Element `d{i}` of `order` is member `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorLatticeDoc {
    pub host: Digest,
    pub kind: String,
    pub order: LatticeDoc,
    pub members: Vec<InflatorDoc>,
}

impl OperatorLatticeDoc {
    pub fn of(f: &OperatorLattice) -> Self {
        let host = f.host();
        OperatorLatticeDoc {
            host: host.digest(),
            kind: f.kind().to_string(),
            order: LatticeDoc::of(f.as_lattice()),
            members: f
                .members()
                .iter()
                .map(|d| InflatorDoc::of(host, d))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NucleiDoc {
    #[serde(flatten)]
    pub family: OperatorLatticeDoc,
    pub frame: bool,
}

impl NucleiDoc {
    pub fn of(nl: &NucleusLattice) -> Self {
        NucleiDoc {
            family: OperatorLatticeDoc::of(nl.family()),
            frame: nl.is_frame(),
        }
    }
}

/// `{"i": Gab(i)}` over nucleus indices.
pub fn gab_table(gab: &Inflator) -> BTreeMap<String, usize> {
    gab.values()
        .iter()
        .enumerate()
        .map(|(i, &v)| (i.to_string(), v))
        .collect()
}

pub fn parse_lattice(text: &str) -> Result<FiniteLattice> {
    let doc: LatticeDoc = serde_json::from_str(text)?;
    let mut seen = HashSet::new();
    for e in &doc.elements {
        if !seen.insert(e) {
            return Err(Error::DuplicateLabel(e.clone()));
        }
    }
    doc.build()
}

pub fn read_lattice(path: &Path) -> Result<FiniteLattice> {
    parse_lattice(&fs::read_to_string(path)?)
}

pub fn read_inflator(path: &Path, lat: &FiniteLattice) -> Result<Inflator> {
    let doc: InflatorDoc = serde_json::from_str(&fs::read_to_string(path)?)?;
    doc.build(lat)
}

pub fn to_pretty<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    fs::write(path, to_pretty(value)?)?;
    Ok(())
}
