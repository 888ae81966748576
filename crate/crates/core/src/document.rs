//! JSON description of a base space, a subbase and its factors.
//!
//! ```json
//! {
//!   "points": ["s0", "s1"],
//!   "opens_generators": [["s1"]],
//!   "subbase": [["s1"], ["s0", "s1"]],
//!   "spaces": { "K": { "points": ["u", "v"], "opens_generators": [["u"], ["v"]] } },
//!   "factors": { "0": "K", "default": "singleton" }
//! }
//! ```
//!
//! Points are referred to by name. `opens_generators` may be omitted, in
//! which case the base carries the topology generated by the subbase. A
//! factor is keyed by member index (or `"default"`) and is either an inline
//! space, the name of an entry of `spaces`, or one of the built-in names
//! `singleton`, `sierpinski`, `circle`, `discrete:k`, `indiscrete:k`.
//!
//! The optional `connectify` entry names an ambient space, an embedding of
//! the base points into it, and the ambient point left outside.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::amalgam::{AmalgamSpace, BuildOptions, FactorAssignment, SubbaseSel};
use crate::constructions;
use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::topology::{generate_topology, ContinuousMap, TopSpace};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDoc {
    pub points: Vec<String>,
    #[serde(default)]
    pub opens_generators: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FactorRef {
    Named(String),
    Inline(SpaceDoc),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConnectifyDoc {
    pub ambient: SpaceDoc,
    /// Base point name to ambient point name.
    pub embedding: BTreeMap<String, String>,
    pub outside: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDocument {
    pub points: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub opens_generators: Option<Vec<Vec<String>>>,
    pub subbase: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub spaces: BTreeMap<String, SpaceDoc>,
    #[serde(default)]
    pub factors: BTreeMap<String, FactorRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub connectify: Option<ConnectifyDoc>,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidDocument(msg.into())
}

fn name_index(points: &[String]) -> Result<HashMap<&str, usize>> {
    let mut index = HashMap::with_capacity(points.len());
    for (i, name) in points.iter().enumerate() {
        if index.insert(name.as_str(), i).is_some() {
            return Err(invalid(format!("point name {name:?} is used twice")));
        }
    }
    Ok(index)
}

fn resolve_set(index: &HashMap<&str, usize>, n: usize, names: &[String]) -> Result<PointSet> {
    let mut set = PointSet::empty(n);
    for name in names {
        let &i = index
            .get(name.as_str())
            .ok_or_else(|| invalid(format!("unknown point {name:?}")))?;
        set.insert(i);
    }
    Ok(set)
}

fn names_of(points: &[String], set: &PointSet) -> Vec<String> {
    set.iter().map(|i| points[i].clone()).collect()
}

/// Point names for `space`: its labels when distinct, else `prefix0, prefix1, ...`.
fn point_names(space: &TopSpace, prefix: &str) -> Vec<String> {
    if let Some(labels) = space.labels() {
        if name_index(labels).is_ok() {
            return labels.to_vec();
        }
    }
    space.points().map(|i| format!("{prefix}{i}")).collect()
}

impl SpaceDoc {
    pub fn build(&self) -> Result<TopSpace> {
        let index = name_index(&self.points)?;
        let n = self.points.len();
        let gens: Vec<PointSet> = self
            .opens_generators
            .iter()
            .map(|g| resolve_set(&index, n, g))
            .collect::<Result<_>>()?;
        Ok(generate_topology(n, &gens).with_labels(self.points.iter().cloned()))
    }

    /// Describes `space` by its minimal neighbourhoods.
    pub fn from_space(space: &TopSpace, prefix: &str) -> Self {
        let points = point_names(space, prefix);
        let mut gens: Vec<PointSet> = space.neighborhoods().to_vec();
        gens.sort();
        gens.dedup();
        let opens_generators = gens.iter().map(|g| names_of(&points, g)).collect();
        SpaceDoc { points, opens_generators }
    }
}

fn builtin(name: &str) -> Option<TopSpace> {
    let sized = |prefix: &str| -> Option<usize> {
        name.strip_prefix(prefix)?.parse().ok().filter(|&k: &usize| k >= 1)
    };
    match name {
        "singleton" => Some(constructions::discrete(1)),
        "sierpinski" => Some(constructions::sierpinski()),
        "circle" => Some(constructions::finite_circle()),
        _ => sized("discrete:")
            .map(constructions::discrete)
            .or_else(|| sized("indiscrete:").map(constructions::indiscrete)),
    }
}

impl SpecDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| invalid(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Describes an amalgam with every factor inline, keyed by member index.
    pub fn from_amalgam(a: &AmalgamSpace) -> Self {
        Self::from_parts(a.sel(), a.factors())
    }

    pub fn from_parts(sel: &SubbaseSel, factors: &FactorAssignment) -> Self {
        let base = SpaceDoc::from_space(sel.base(), "x");
        let subbase = sel.sets().iter().map(|s| names_of(&base.points, s)).collect();
        let factors = factors
            .as_slice()
            .iter()
            .enumerate()
            .map(|(s, f)| (s.to_string(), FactorRef::Inline(SpaceDoc::from_space(f, "y"))))
            .collect();
        SpecDocument {
            points: base.points,
            opens_generators: Some(base.opens_generators),
            subbase,
            spaces: BTreeMap::new(),
            factors,
            connectify: None,
        }
    }

    pub fn base(&self) -> Result<TopSpace> {
        let gens = self.opens_generators.as_ref().unwrap_or(&self.subbase);
        SpaceDoc { points: self.points.clone(), opens_generators: gens.clone() }.build()
    }

    pub fn selection(&self) -> Result<SubbaseSel> {
        let base = self.base()?;
        let index = name_index(&self.points)?;
        let sets = self
            .subbase
            .iter()
            .map(|m| resolve_set(&index, self.points.len(), m))
            .collect::<Result<_>>()?;
        SubbaseSel::new(base, sets)
    }

    fn resolve_factor(&self, r: &FactorRef) -> Result<TopSpace> {
        let space = match r {
            FactorRef::Inline(doc) => doc.build()?,
            FactorRef::Named(name) => match self.spaces.get(name) {
                Some(doc) => doc.build()?,
                None => builtin(name).ok_or_else(|| invalid(format!("unknown space {name:?}")))?,
            },
        };
        if space.is_empty() {
            return Err(invalid("factor spaces must be nonempty"));
        }
        Ok(space)
    }

    pub fn factor_assignment(&self, members: usize) -> Result<FactorAssignment> {
        for key in self.factors.keys() {
            if key != "default" && key.parse::<usize>().map_or(true, |s| s >= members) {
                return Err(invalid(format!("factor key {key:?} is not a member index below {members}")));
            }
        }
        let factors = (0..members)
            .map(|s| {
                let r = self
                    .factors
                    .get(&s.to_string())
                    .or_else(|| self.factors.get("default"))
                    .ok_or_else(|| invalid(format!("no factor for member {s} and no default")))?;
                self.resolve_factor(r)
            })
            .collect::<Result<_>>()?;
        FactorAssignment::new(factors)
    }

    pub fn build(&self, opts: BuildOptions) -> Result<AmalgamSpace> {
        let sel = self.selection()?;
        let factors = self.factor_assignment(sel.len())?;
        AmalgamSpace::build(&sel, &factors, opts)
    }

    /// The ambient space, the embedding of the base and the outside point,
    /// when the document asks for a connectification.
    pub fn connectify_input(&self) -> Result<Option<(TopSpace, ContinuousMap, usize)>> {
        let Some(c) = &self.connectify else { return Ok(None) };
        let ambient = c.ambient.build()?;
        let ambient_index = name_index(&c.ambient.points)?;
        let lookup = |name: &str| {
            ambient_index
                .get(name)
                .copied()
                .ok_or_else(|| invalid(format!("unknown ambient point {name:?}")))
        };
        let f = self
            .points
            .iter()
            .map(|p| {
                let target = c
                    .embedding
                    .get(p)
                    .ok_or_else(|| invalid(format!("base point {p:?} is not embedded")))?;
                lookup(target)
            })
            .collect::<Result<Vec<usize>>>()?;
        if let Some(extra) = c.embedding.keys().find(|k| !self.points.contains(k)) {
            return Err(invalid(format!("embedding names unknown base point {extra:?}")));
        }
        let outside = lookup(&c.outside)?;
        let map = ContinuousMap::new(self.base()?, ambient.clone(), f)?;
        Ok(Some((ambient, map, outside)))
    }
}
