//! Design files (JSON) and group specifications.
//!
//! ```json
//! { "d": 3, "mode": "orbit", "points": [["1/2", "1/3", "1/6"]], "group": "sym" }
//! ```
//!
//! Coordinates given as `"p/q"` strings are exact; plain numbers are floats.
//! Permutation generators are 1-indexed image arrays.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::design::{DesignForm, DesignSet};
use crate::error::{Error, Result};
use crate::perm::{GroupKind, PermGroup, Permutation};
use crate::point::{Coordinates, PointVector};
use crate::scalar::{exact_to_f64, format_exact, parse_exact};

#[derive(Debug, Deserialize, Serialize, PartialEq, Eq, Clone, Copy)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Explicit,
    Orbit,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Coord {
    Number(f64),
    Text(String),
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum GroupSpec {
    Named(String),
    Generators { generators: Vec<Vec<usize>> },
}

#[derive(Debug, Deserialize)]
struct DesignFile {
    d: usize,
    mode: Mode,
    points: Vec<Vec<Coord>>,
    #[serde(default)]
    group: Option<GroupSpec>,
}

/// `"sym"`, `"cyc"`, `"none"`/`"trivial"`, or `"gen:2,1,3;1,3,2"` (1-indexed).
pub fn parse_group(spec: &str, d: usize) -> Result<PermGroup> {
    match spec.trim() {
        "sym" | "symmetric" => Ok(PermGroup::symmetric(d)),
        "cyc" | "cyclic" => Ok(PermGroup::cyclic(d)),
        "none" | "trivial" => Ok(PermGroup::trivial(d)),
        other => {
            let body = other
                .strip_prefix("gen:")
                .ok_or_else(|| Error::Parse(format!("unknown group `{other}` (expected sym, cyc, none or gen:...)")))?;
            let gens = body
                .split(';')
                .filter(|s| !s.trim().is_empty())
                .map(|g| {
                    let images = g
                        .split(',')
                        .map(|v| v.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad permutation `{g}`"))))
                        .collect::<Result<Vec<_>>>()?;
                    Permutation::from_one_based(&images)
                })
                .collect::<Result<Vec<_>>>()?;
            PermGroup::generated(d, gens)
        }
    }
}

fn group_from_spec(spec: &GroupSpec, d: usize) -> Result<PermGroup> {
    match spec {
        GroupSpec::Named(name) => parse_group(name, d),
        GroupSpec::Generators { generators } => {
            let gens = generators.iter().map(|g| Permutation::from_one_based(g)).collect::<Result<Vec<_>>>()?;
            PermGroup::generated(d, gens)
        }
    }
}

fn parse_point(coords: &[Coord], d: usize) -> Result<PointVector> {
    if coords.len() != d {
        return Err(Error::DimensionMismatch { expected: d, found: coords.len() });
    }
    if coords.iter().all(|c| matches!(c, Coord::Text(_))) {
        let exact = coords
            .iter()
            .map(|c| match c {
                Coord::Text(s) => parse_exact(s),
                Coord::Number(_) => unreachable!(),
            })
            .collect::<Result<Vec<_>>>()?;
        return PointVector::exact(exact);
    }
    let floats = coords
        .iter()
        .map(|c| match c {
            Coord::Number(x) => Ok(*x),
            Coord::Text(s) => parse_exact(s).map(|q| exact_to_f64(&q)),
        })
        .collect::<Result<Vec<_>>>()?;
    PointVector::float(floats)
}

pub fn parse_design(text: &str) -> Result<DesignSet> {
    let file: DesignFile = serde_json::from_str(text)?;
    if file.d < 1 {
        return Err(Error::InvalidArgument("d must be at least 1".into()));
    }
    let points = file.points.iter().map(|p| parse_point(p, file.d)).collect::<Result<Vec<_>>>()?;
    match file.mode {
        Mode::Explicit => DesignSet::explicit(points),
        Mode::Orbit => {
            let spec = file.group.as_ref().ok_or_else(|| Error::Parse("orbit designs need a `group`".into()))?;
            DesignSet::orbit(points, group_from_spec(spec, file.d)?)
        }
    }
}

pub fn read_design(path: impl AsRef<Path>) -> Result<DesignSet> {
    parse_design(&std::fs::read_to_string(path)?)
}

fn point_json(p: &PointVector) -> Value {
    match p.coordinates() {
        Coordinates::Exact(v) => json!(v.iter().map(format_exact).collect::<Vec<_>>()),
        Coordinates::Float(v) => json!(v),
    }
}

fn group_json(g: &PermGroup) -> Value {
    match g.kind() {
        GroupKind::Symmetric => json!("sym"),
        GroupKind::Cyclic => json!("cyc"),
        GroupKind::Generated(gens) => {
            json!({ "generators": gens.iter().map(Permutation::one_based).collect::<Vec<_>>() })
        }
    }
}

pub fn design_to_json(x: &DesignSet) -> Value {
    match x.form() {
        DesignForm::Explicit(points) => json!({
            "d": x.dim(),
            "mode": "explicit",
            "points": points.iter().map(point_json).collect::<Vec<_>>(),
        }),
        DesignForm::Orbit { base, group } => json!({
            "d": x.dim(),
            "mode": "orbit",
            "points": base.iter().map(point_json).collect::<Vec<_>>(),
            "group": group_json(group),
        }),
    }
}

/// Writes via a temporary file and rename so readers never see a partial file.
pub fn write_atomic(path: impl AsRef<Path>, contents: &str) -> Result<()> {
    let path = path.as_ref();
    let tmp = path.with_extension("tmp~");
    std::fs::write(&tmp, contents)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

pub fn write_design(path: impl AsRef<Path>, x: &DesignSet) -> Result<()> {
    let mut text = serde_json::to_string_pretty(&design_to_json(x))?;
    text.push('\n');
    write_atomic(path, &text)
}
