//! JSON file formats for groups, families and designs.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use ddf_core::algebra::{CoordinateRing, FiniteField};
use ddf_core::verify::{Design, Translation};
use ddf_core::{DiffFamily, Element, Group};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum GroupSpec {
    Abelian {
        moduli: Vec<u64>,
    },
    Heisenberg {
        m: u64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        ring: Option<RingKind>,
    },
    Cayley {
        order: u64,
        table: Vec<Vec<u32>>,
    },
}

/// Coordinate ring of a Heisenberg group: `Z_m` (the default) or `F_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RingKind {
    Integers,
    Field,
}

impl GroupSpec {
    pub fn of(group: &Group) -> Self {
        match group {
            Group::Abelian(a) => GroupSpec::Abelian { moduli: a.moduli().to_vec() },
            Group::Heisenberg(h) => match h.ring() {
                CoordinateRing::Integers(m) => GroupSpec::Heisenberg { m: *m, ring: None },
                CoordinateRing::Field(f) => GroupSpec::Heisenberg { m: f.order(), ring: Some(RingKind::Field) },
            },
            Group::Cayley(c) => GroupSpec::Cayley { order: group.order(), table: c.table_rows() },
        }
    }

    pub fn build(&self) -> Result<Group, CliError> {
        Ok(match self {
            GroupSpec::Abelian { moduli } => Group::abelian(moduli.clone())?,
            GroupSpec::Heisenberg { m, ring: None | Some(RingKind::Integers) } => Group::heisenberg(*m)?,
            GroupSpec::Heisenberg { m, ring: Some(RingKind::Field) } => {
                Group::heisenberg_over_field(FiniteField::new(*m)?)?
            }
            GroupSpec::Cayley { order, table } => {
                if *order != table.len() as u64 {
                    return Err(CliError::Parse(format!(
                        "cayley order {order} does not match a table with {} rows",
                        table.len()
                    )));
                }
                Group::cayley(table.clone())?
            }
        })
    }
}

/// On-disk form of a family. `blocks` is a list of blocks, each a list of
/// coordinate arrays.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyFile {
    pub group: GroupSpec,
    pub v: u64,
    pub k: usize,
    pub lambda: u64,
    pub blocks: Vec<Vec<Vec<u64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<Value>,
}

impl FamilyFile {
    pub fn of(family: &DiffFamily, meta: Option<Value>) -> Self {
        FamilyFile {
            group: GroupSpec::of(family.group()),
            v: family.v(),
            k: family.k(),
            lambda: family.lambda(),
            blocks: encode_blocks(family.blocks()),
            meta,
        }
    }

    /// The group, after checking that `v` matches its order.
    pub fn group(&self) -> Result<Group, CliError> {
        let group = self.group.build()?;
        if group.order() != self.v {
            return Err(CliError::Parse(format!("v = {} but the group has order {}", self.v, group.order())));
        }
        Ok(group)
    }

    pub fn element_blocks(&self) -> Vec<Vec<Element>> {
        self.blocks.iter().map(|b| b.iter().map(|x| Element::new(x.clone())).collect()).collect()
    }

    pub fn family(&self) -> Result<DiffFamily, CliError> {
        Ok(DiffFamily::new(self.group()?, self.element_blocks(), self.k, self.lambda)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("family serializes")
    }
}

pub fn encode_blocks(blocks: &[Vec<Element>]) -> Vec<Vec<Vec<u64>>> {
    blocks.iter().map(|b| b.iter().map(|x| x.coords().to_vec()).collect()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignFile {
    pub translation: String,
    pub v: u64,
    pub k: usize,
    pub lambda: u64,
    pub points: Vec<Vec<u64>>,
    pub blocks: Vec<Vec<Vec<u64>>>,
    pub classes: Option<Vec<Vec<usize>>>,
    pub near_resolvable: bool,
    pub two_design: bool,
}

impl DesignFile {
    pub fn of(design: &Design, translation: Translation, k: usize, lambda: u64, checks: (bool, bool)) -> Self {
        DesignFile {
            translation: match translation {
                Translation::Right => "right",
                Translation::Left => "left",
            }
            .into(),
            v: design.points.len() as u64,
            k,
            lambda,
            points: design.points.iter().map(|p| p.coords().to_vec()).collect(),
            blocks: encode_blocks(&design.blocks),
            classes: design.classes.clone(),
            near_resolvable: checks.0,
            two_design: checks.1,
        }
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.into(), source })
}

pub fn describe_group(group: &Group) -> String {
    match group {
        Group::Abelian(a) if a.moduli().is_empty() => "trivial group".into(),
        Group::Abelian(a) => a.moduli().iter().map(|m| format!("Z_{m}")).collect::<Vec<_>>().join(" x "),
        Group::Heisenberg(h) => match h.ring() {
            CoordinateRing::Integers(m) => format!("Heisenberg(Z_{m})"),
            CoordinateRing::Field(f) => format!("Heisenberg(F_{})", f.order()),
        },
        Group::Cayley(_) => format!("Cayley table of order {}", group.order()),
    }
}

/// Compact element notation: concatenated digits when every coordinate
/// bound is at most 10 and there are two coordinates, tuples otherwise.
fn compact(group: &Group, x: &Element) -> String {
    let bounds = group.coordinate_bounds();
    if bounds.len() == 2 && bounds.iter().all(|&m| m <= 10) {
        x.coords().iter().map(|c| c.to_string()).collect()
    } else {
        x.to_string()
    }
}

/// Human-readable listing with one block per line.
pub fn pretty(family: &DiffFamily, meta: Option<&Value>) -> String {
    let g = family.group();
    let mut out = format!(
        "({},{},{})-DDF in {}, {} blocks\n",
        family.v(),
        family.k(),
        family.lambda(),
        describe_group(g),
        family.len()
    );
    if let Some(Value::Object(m)) = meta {
        if let (Some(p), Some(pi), Some(pi2), Some(phi)) = (m.get("p"), m.get("pi_p"), m.get("pi_p2"), m.get("phi")) {
            let p = p.as_u64().unwrap_or(0);
            let _ = writeln!(out, "pi({p}) = {pi}, pi({}) = {pi2}, phi = {phi}", p * p);
        }
    }
    for b in family.blocks() {
        let items: Vec<String> = b.iter().map(|x| compact(g, x)).collect();
        let _ = writeln!(out, "{{{}}}", items.join(","));
    }
    out
}
