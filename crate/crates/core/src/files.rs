//! JSON descriptions of curves and bundles. Rationals travel as strings
//! ("3/2", "-1"), never as floats, so file round trips stay exact.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::curve::NodalCurve;
use crate::error::{Error, Result};
use crate::linalg::{parse_rat, rat_to_string, Rat};
use crate::sheaf::{CoefficientBundle, LineBundle, LinearSystem};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComponentEntry {
    pub id: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NodeEntry {
    pub id: String,
    /// (component id, affine point as a rational string)
    pub a: (String, String),
    pub b: (String, String),
}

/// Curve description file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurveFile {
    pub components: Vec<ComponentEntry>,
    #[serde(default)]
    pub nodes: Vec<NodeEntry>,
}

fn json_err(which: &str, e: &serde_json::Error) -> Error {
    Error::Input {
        field: which.to_string(),
        message: format!("{e} (line {}, column {})", e.line(), e.column()),
    }
}

pub fn parse_curve_file(text: &str) -> Result<(NodalCurve, CurveFile)> {
    let file: CurveFile = serde_json::from_str(text).map_err(|e| json_err("curve file", &e))?;
    let curve = curve_from_file(&file)?;
    Ok((curve, file))
}

pub fn curve_from_file(file: &CurveFile) -> Result<NodalCurve> {
    let ids: Vec<String> = file.components.iter().map(|c| c.id.clone()).collect();
    let mut nodes = Vec::new();
    for n in &file.nodes {
        let pa = parse_rat(&n.a.1).map_err(|e| Error::Input {
            field: format!("nodes.{}.a", n.id),
            message: e.to_string(),
        })?;
        let pb = parse_rat(&n.b.1).map_err(|e| Error::Input {
            field: format!("nodes.{}.b", n.id),
            message: e.to_string(),
        })?;
        nodes.push((n.id.clone(), (n.a.0.clone(), pa), (n.b.0.clone(), pb)));
    }
    NodalCurve::new(ids, nodes).map_err(|e| Error::Input {
        field: "curve".into(),
        message: e.to_string(),
    })
}

pub fn curve_to_file(curve: &NodalCurve) -> CurveFile {
    CurveFile {
        components: curve
            .components()
            .iter()
            .map(|c| ComponentEntry { id: c.id.clone() })
            .collect(),
        nodes: curve
            .nodes()
            .iter()
            .map(|n| NodeEntry {
                id: n.id.clone(),
                a: (
                    curve.components()[n.a.component].id.clone(),
                    rat_to_string(&n.a.point),
                ),
                b: (
                    curve.components()[n.b.component].id.clone(),
                    rat_to_string(&n.b.point),
                ),
            })
            .collect(),
    }
}

/// One line-bundle summand: degrees per component, gluings per node
/// (missing gluings default to "1").
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SummandFile {
    pub degrees: BTreeMap<String, i64>,
    #[serde(default)]
    pub gluings: BTreeMap<String, String>,
}

/// Bundle description file: the main bundle L, an optional subspace W given
/// by coefficient vectors in the canonical H^0(L) basis, and an optional
/// coefficient bundle E as a list of summands.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BundleFile {
    pub degrees: BTreeMap<String, i64>,
    #[serde(default)]
    pub gluings: BTreeMap<String, String>,
    #[serde(default, rename = "W", skip_serializing_if = "Option::is_none")]
    pub w: Option<Vec<Vec<String>>>,
    #[serde(default, rename = "E", skip_serializing_if = "Option::is_none")]
    pub e: Option<Vec<SummandFile>>,
}

pub fn parse_bundle_file(text: &str) -> Result<BundleFile> {
    serde_json::from_str(text).map_err(|e| json_err("bundle file", &e))
}

fn build_bundle(
    curve: &NodalCurve,
    degrees: &BTreeMap<String, i64>,
    gluings: &BTreeMap<String, String>,
    what: &str,
) -> Result<LineBundle> {
    let mut deg = Vec::with_capacity(curve.components().len());
    for c in curve.components() {
        match degrees.get(&c.id) {
            Some(d) => deg.push(*d),
            None => {
                return Err(Error::Input {
                    field: format!("{what}.degrees.{}", c.id),
                    message: "missing degree for component".into(),
                })
            }
        }
    }
    for k in degrees.keys() {
        if curve.component_index(k).is_none() {
            return Err(Error::Input {
                field: format!("{what}.degrees.{k}"),
                message: "unknown component".into(),
            });
        }
    }
    let mut glu = Vec::with_capacity(curve.nodes().len());
    for n in curve.nodes() {
        let s = gluings.get(&n.id).map(String::as_str).unwrap_or("1");
        let g = parse_rat(s).map_err(|e| Error::Input {
            field: format!("{what}.gluings.{}", n.id),
            message: e.to_string(),
        })?;
        if num_traits::Zero::is_zero(&g) {
            return Err(Error::Input {
                field: format!("{what}.gluings.{}", n.id),
                message: "gluing must be nonzero".into(),
            });
        }
        glu.push(g);
    }
    for k in gluings.keys() {
        if curve.node_index(k).is_none() {
            return Err(Error::Input {
                field: format!("{what}.gluings.{k}"),
                message: "unknown node".into(),
            });
        }
    }
    LineBundle::new(curve, deg, glu).map_err(|e| Error::Input {
        field: what.to_string(),
        message: e.to_string(),
    })
}

pub fn line_bundle_from_file(curve: &NodalCurve, file: &BundleFile) -> Result<LineBundle> {
    build_bundle(curve, &file.degrees, &file.gluings, "bundle")
}

/// W from the file, or the full section space when absent.
pub fn linear_system_from_file(
    curve: &NodalCurve,
    l: &LineBundle,
    file: &BundleFile,
) -> Result<LinearSystem> {
    let space = crate::sheaf::global_sections(curve, l)?;
    match &file.w {
        None => Ok(LinearSystem::full(space)),
        Some(rows) => {
            let mut coeffs: Vec<Vec<Rat>> = Vec::with_capacity(rows.len());
            for (i, row) in rows.iter().enumerate() {
                let mut out = Vec::with_capacity(row.len());
                for s in row {
                    out.push(parse_rat(s).map_err(|e| Error::Input {
                        field: format!("W[{i}]"),
                        message: e.to_string(),
                    })?);
                }
                coeffs.push(out);
            }
            LinearSystem::from_coefficients(space, &coeffs).map_err(|e| Error::Input {
                field: "W".into(),
                message: e.to_string(),
            })
        }
    }
}

/// E from the file, when present.
pub fn coefficient_bundle_from_file(
    curve: &NodalCurve,
    file: &BundleFile,
) -> Result<Option<CoefficientBundle>> {
    match &file.e {
        None => Ok(None),
        Some(summands) => {
            let mut out = Vec::with_capacity(summands.len());
            for (i, s) in summands.iter().enumerate() {
                out.push(build_bundle(
                    curve,
                    &s.degrees,
                    &s.gluings,
                    &format!("E[{i}]"),
                )?);
            }
            Ok(Some(CoefficientBundle { summands: out }))
        }
    }
}

pub fn bundle_to_file(curve: &NodalCurve, l: &LineBundle) -> BundleFile {
    BundleFile {
        degrees: curve
            .components()
            .iter()
            .zip(&l.degrees)
            .map(|(c, d)| (c.id.clone(), *d))
            .collect(),
        gluings: curve
            .nodes()
            .iter()
            .zip(&l.gluings)
            .map(|(n, g)| (n.id.clone(), rat_to_string(g)))
            .collect(),
        w: None,
        e: None,
    }
}

/// Canonical pretty JSON used for every emitted document (stable key order:
/// struct declaration order plus sorted maps).
pub fn canonical_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serialization cannot fail")
}
