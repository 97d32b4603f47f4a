//! JSON instance and result files, and the CSV rows written by sweeps.
//!
//! All voter and candidate indices in files are 1-based; the in-memory model
//! is 0-based. Exact values are written as JSON integers when integral and as
//! `"p/q"` strings otherwise.

use std::collections::BTreeMap;
use std::fmt;

use ccsc_core::grid::{Rect, Tiling};
use ccsc_core::{
    GridShape, Instance, LineOrder, Objective, PreferenceProfile, Rho, RootedTree, Solution, Structure,
};
use num_rational::Rational64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

/// Stats keys that vary between runs and are left out of result files.
const TIMING_KEYS: [&str; 1] = ["wall_time_us"];

/// Pretty JSON with one field per line, but arrays of scalars kept on a
/// single line so ranking matrices stay readable. Ends with a newline.
pub fn to_json_text<T: Serialize>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("file records always serialize");
    let mut out = String::new();
    write_value(&mut out, &value, 0);
    out.push('\n');
    out
}

fn write_value(out: &mut String, value: &serde_json::Value, depth: usize) {
    use serde_json::Value;
    let pad = |depth: usize| "  ".repeat(depth);
    match value {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (i, (key, v)) in map.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                out.push_str(&Value::String(key.clone()).to_string());
                out.push_str(": ");
                write_value(out, v, depth + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        Value::Array(items) if items.iter().any(|v| v.is_array() || v.is_object()) => {
            out.push_str("[\n");
            for (i, v) in items.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                write_value(out, v, depth + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        scalar_or_flat => out.push_str(&scalar_or_flat.to_string()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {msg}")]
    Syntax { line: usize, column: usize, msg: String },

    #[error("field `{field}`: {msg}")]
    Field { field: String, msg: String },
}

impl ParseError {
    fn field(field: impl Into<String>, msg: impl fmt::Display) -> Self {
        ParseError::Field {
            field: field.into(),
            msg: msg.to_string(),
        }
    }

    fn from_json(e: serde_json::Error) -> Self {
        let full = e.to_string();
        let msg = match full.rfind(" at line ") {
            Some(cut) if e.line() > 0 => full[..cut].to_string(),
            _ => full,
        };
        ParseError::Syntax {
            line: e.line(),
            column: e.column(),
            msg,
        }
    }
}

/// An exact rational as stored in files.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Exact(pub Rational64);

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_integer() {
            s.serialize_i64(self.0.to_integer())
        } else {
            s.serialize_str(&format!("{}/{}", self.0.numer(), self.0.denom()))
        }
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(x) => Ok(Exact(Rational64::from_integer(x))),
            Raw::Text(t) => t
                .trim()
                .parse::<Rational64>()
                .map(Exact)
                .map_err(|_| serde::de::Error::custom(format!("`{t}` is not an integer or a `p/q` fraction"))),
        }
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum StructureFile {
    Line {
        order: Vec<usize>,
    },
    Tree {
        parent: Vec<Option<usize>>,
        root: usize,
        /// Defaults to children in increasing index order.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        child_order: Option<Vec<Vec<usize>>>,
    },
    Grid {
        n1: usize,
        n2: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub structure: StructureFile,
    pub m: usize,
    pub rankings: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<Vec<Vec<Exact>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
}

fn to_zero_based(field: &str, x: usize, bound: usize) -> Result<usize, ParseError> {
    if x == 0 || x > bound {
        Err(ParseError::field(field, format!("{x} is outside 1..={bound}")))
    } else {
        Ok(x - 1)
    }
}

fn voter_list(field: &str, list: &[usize], n: usize) -> Result<Vec<usize>, ParseError> {
    list.iter()
        .enumerate()
        .map(|(i, &v)| to_zero_based(&format!("{field}[{i}]"), v, n))
        .collect()
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        serde_json::from_str(text).map_err(ParseError::from_json)
    }

    pub fn to_json(&self) -> String {
        to_json_text(self)
    }

    /// Checks field contents and builds the in-memory instance.
    pub fn to_instance(&self) -> Result<Instance, ParseError> {
        let m = self.m;
        if m == 0 {
            return Err(ParseError::field("m", "at least one candidate is required"));
        }
        let n = self.rankings.len();
        if n == 0 {
            return Err(ParseError::field("rankings", "at least one voter is required"));
        }
        let mut rankings = Vec::with_capacity(n);
        for (v, row) in self.rankings.iter().enumerate() {
            if row.len() != m {
                return Err(ParseError::field(
                    format!("rankings[{v}]"),
                    format!("has {} entries, expected m = {m}", row.len()),
                ));
            }
            rankings.push(voter_list(&format!("rankings[{v}]"), row, m)?);
        }
        let rho = match &self.rho {
            None => None,
            Some(rows) => {
                if rows.len() != n {
                    return Err(ParseError::field("rho", format!("has {} rows, expected {n}", rows.len())));
                }
                let mut flat = Vec::with_capacity(n * m);
                for (v, row) in rows.iter().enumerate() {
                    if row.len() != m {
                        return Err(ParseError::field(
                            format!("rho[{v}]"),
                            format!("has {} entries, expected m = {m}", row.len()),
                        ));
                    }
                    flat.extend(row.iter().map(|e| e.0));
                }
                Some(Rho::from_ratios(flat))
            }
        };
        let profile = PreferenceProfile::new(rankings, rho).map_err(|e| ParseError::field("rankings", e))?;
        let structure = self.structure_model(n)?;
        Instance::new(profile, structure).map_err(|e| ParseError::field("structure", e))
    }

    fn structure_model(&self, n: usize) -> Result<Structure, ParseError> {
        let structure = match &self.structure {
            StructureFile::Line { order } => {
                let order = voter_list("structure.order", order, n)?;
                Structure::Line(LineOrder::new(order).map_err(|e| ParseError::field("structure.order", e))?)
            }
            StructureFile::Tree {
                parent,
                root,
                child_order,
            } => {
                let parent = parent
                    .iter()
                    .enumerate()
                    .map(|(i, p)| p.map(|p| to_zero_based(&format!("structure.parent[{i}]"), p, n)).transpose())
                    .collect::<Result<Vec<_>, _>>()?;
                let root = to_zero_based("structure.root", *root, n)?;
                let tree = match child_order {
                    None => RootedTree::from_parents(parent, root),
                    Some(lists) => {
                        let children = lists
                            .iter()
                            .enumerate()
                            .map(|(i, l)| voter_list(&format!("structure.child_order[{i}]"), l, n))
                            .collect::<Result<Vec<_>, _>>()?;
                        RootedTree::new(parent, root, children)
                    }
                };
                Structure::Tree(tree.map_err(|e| ParseError::field("structure", e))?)
            }
            StructureFile::Grid { n1, n2 } => {
                Structure::Grid(GridShape::new(*n1, *n2).map_err(|e| ParseError::field("structure", e))?)
            }
        };
        Ok(structure)
    }

    pub fn from_instance(instance: &Instance, k: Option<usize>) -> Self {
        let one_based = |xs: &[usize]| xs.iter().map(|x| x + 1).collect::<Vec<_>>();
        let p = &instance.profile;
        let (n, m) = (p.num_voters(), p.num_candidates());
        let structure = match &instance.structure {
            Structure::Line(order) => StructureFile::Line {
                order: one_based(order.as_slice()),
            },
            Structure::Tree(t) => StructureFile::Tree {
                parent: t.parents().iter().map(|p| p.map(|p| p + 1)).collect(),
                root: t.root() + 1,
                child_order: Some((0..n).map(|v| one_based(t.children(v))).collect()),
            },
            Structure::Grid(g) => StructureFile::Grid { n1: g.n1, n2: g.n2 },
        };
        let rho = (!p.is_borda()).then(|| {
            (0..n)
                .map(|v| (0..m).map(|c| Exact(p.rho_at(v, c))).collect())
                .collect()
        });
        InstanceFile {
            structure,
            m,
            rankings: (0..n).map(|v| one_based(p.ranking(v))).collect(),
            rho,
            k,
        }
    }
}

/// One rectangle of a grid tiling: inclusive 1-based row and column ranges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RectFile {
    pub rows: [usize; 2],
    pub cols: [usize; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub representative: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultFile {
    pub schema_version: u32,
    pub algorithm: String,
    pub objective: String,
    pub k: usize,
    pub k_used: usize,
    pub committee: Vec<usize>,
    pub assignment: Vec<usize>,
    pub total_cost: Exact,
    pub egal_cost: Exact,
    pub stats: BTreeMap<String, u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tiling: Option<Vec<RectFile>>,
}

fn rect_file(rect: &Rect, rep: Option<usize>) -> RectFile {
    RectFile {
        rows: [rect.i0 + 1, rect.i1 + 1],
        cols: [rect.j0 + 1, rect.j1 + 1],
        representative: rep.map(|c| c + 1),
    }
}

fn tiling_file(tiling: &Tiling) -> Vec<RectFile> {
    tiling
        .rects
        .iter()
        .enumerate()
        .map(|(i, r)| rect_file(r, tiling.reps.as_ref().map(|reps| reps[i])))
        .collect()
}

impl ResultFile {
    /// Timing stats are dropped so that records are deterministic. With
    /// `exact_k`, unused candidates are appended to the committee until
    /// it has `k` members; `k_used` still counts the candidates that represent
    /// someone.
    pub fn new(solution: &Solution, objective: Objective, k: usize, m: usize, exact_k: bool) -> Self {
        let r = &solution.result;
        let committee = if exact_k {
            r.padded_committee(k, m)
        } else {
            r.committee().to_vec()
        };
        ResultFile {
            schema_version: SCHEMA_VERSION,
            algorithm: r.algorithm.clone(),
            objective: objective.name().to_string(),
            k,
            k_used: r.k_used,
            committee: committee.iter().map(|c| c + 1).collect(),
            assignment: r.assignment.rep().iter().map(|c| c + 1).collect(),
            total_cost: Exact(r.total_cost),
            egal_cost: Exact(r.egal_cost),
            stats: r
                .stats
                .iter()
                .filter(|(key, _)| !TIMING_KEYS.contains(&key.as_str()))
                .map(|(key, v)| (key.clone(), *v))
                .collect(),
            tiling: solution.tiling.as_ref().map(tiling_file),
        }
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        serde_json::from_str(text).map_err(ParseError::from_json)
    }

    pub fn to_json(&self) -> String {
        to_json_text(self)
    }

    /// The 0-based per-voter assignment.
    pub fn assignment_zero_based(&self) -> Vec<usize> {
        self.assignment.iter().map(|c| c.saturating_sub(1)).collect()
    }

    pub fn summary(&self) -> String {
        format!(
            "algorithm={} objective={} k={} k_used={} total_cost={} egal_cost={} committee={:?}",
            self.algorithm, self.objective, self.k, self.k_used, self.total_cost, self.egal_cost, self.committee
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_round_trip() {
        let v = vec![Exact(Rational64::new(3, 2)), Exact(Rational64::from_integer(-4))];
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"["3/2",-4]"#);
        assert_eq!(serde_json::from_str::<Vec<Exact>>(&s).unwrap(), v);
        assert!(serde_json::from_str::<Exact>(r#""half""#).is_err());
    }

    #[test]
    fn scalar_arrays_stay_on_one_line() {
        let v = serde_json::json!({"b": [[1, 2], [3]], "a": {}, "c": "x"});
        assert_eq!(to_json_text(&v), "{\n  \"b\": [\n    [1,2],\n    [3]\n  ],\n  \"a\": {},\n  \"c\": \"x\"\n}\n");
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = InstanceFile::parse("{\n  \"m\": 3,\n  oops\n}").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 3, .. }), "{err}");
    }

    #[test]
    fn field_errors_name_the_field() {
        let text = r#"{"structure": {"type": "line", "order": [1, 2]}, "m": 2, "rankings": [[1, 2], [2, 3]]}"#;
        let err = InstanceFile::parse(text).unwrap().to_instance().unwrap_err();
        assert_eq!(err, ParseError::field("rankings[1][1]", "3 is outside 1..=2"));
    }

    #[test]
    fn tree_child_order_defaults_to_index_order() {
        let text = r#"{"structure": {"type": "tree", "parent": [null, 1, 1], "root": 1}, "m": 1, "rankings": [[1], [1], [1]]}"#;
        let inst = InstanceFile::parse(text).unwrap().to_instance().unwrap();
        match inst.structure {
            Structure::Tree(t) => assert_eq!(t.children(0), &[1, 2]),
            other => panic!("{other:?}"),
        }
    }
}
