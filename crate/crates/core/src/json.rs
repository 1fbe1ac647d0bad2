//! Serde descriptors for the file formats used by the command line tool.
//!
//! Complexes over the diagram category are `{terms: [{k, m}], twist:
//! [{i, j, n}]}`; over the projectives the terms carry a vertex and twist
//! entries carry path names. Module and bimodule descriptors mirror the
//! in-memory types with explicit 0/1 matrices.

use crate::algebra_r::{Path, PathElement, Vertex};
use crate::diagrams::{Morphism, NormalForm, ObjQ};
use crate::gf2::Gf2Matrix;
use crate::modules_r::{BasisVector, GradedModule, ProjBase, ProjMor};
use crate::twisted::{DiagBase, Term, TwistedComplex};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagTermDescriptor {
    pub k: usize,
    pub m: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagTwistDescriptor {
    pub i: usize,
    pub j: usize,
    /// Alpha exponent of the single normal form of the admissible degree.
    pub n: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjTermDescriptor {
    pub vertex: String,
    pub m: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjTwistDescriptor {
    pub i: usize,
    pub j: usize,
    /// Path names summed over GF(2), e.g. `["a"]`.
    pub paths: Vec<String>,
}

/// A twisted complex over either base.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "base")]
pub enum ComplexDescriptor {
    #[serde(rename = "diagrams")]
    Diagrams { terms: Vec<DiagTermDescriptor>, twist: Vec<DiagTwistDescriptor> },
    #[serde(rename = "projectives")]
    Projectives { terms: Vec<ProjTermDescriptor>, twist: Vec<ProjTwistDescriptor> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DescriptorError {
    UnknownVertex(String),
    UnknownPath(String),
    IndexOutOfRange { i: usize, j: usize },
    NoAdmissibleForm { i: usize, j: usize },
    EndpointMismatch { i: usize, j: usize },
}

impl std::fmt::Display for DescriptorError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DescriptorError::UnknownVertex(s) => write!(f, "unknown vertex {s:?}"),
            DescriptorError::UnknownPath(s) => write!(f, "unknown path {s:?}"),
            DescriptorError::IndexOutOfRange { i, j } => {
                write!(f, "twist index ({i},{j}) out of range")
            }
            DescriptorError::NoAdmissibleForm { i, j } => {
                write!(f, "no admissible normal form for twist ({i},{j})")
            }
            DescriptorError::EndpointMismatch { i, j } => {
                write!(f, "twist ({i},{j}) does not match its endpoints")
            }
        }
    }
}

impl std::error::Error for DescriptorError {}

pub fn vertex_from_name(s: &str) -> Result<Vertex, DescriptorError> {
    match s {
        "x" => Ok(Vertex::X),
        "y" => Ok(Vertex::Y),
        other => Err(DescriptorError::UnknownVertex(other.to_string())),
    }
}

/// Decodes a diagram complex; twist entries carry the alpha exponent of the
/// stored normal form, whose degree must come out as shifted degree 1.
pub fn diag_complex_from_descriptor(
    terms: &[DiagTermDescriptor],
    twist: &[DiagTwistDescriptor],
) -> Result<TwistedComplex<DiagBase>, DescriptorError> {
    let term_list: Vec<Term<usize>> = terms.iter().map(|t| Term::new(t.k, t.m)).collect();
    let mut twist_map = BTreeMap::new();
    for e in twist {
        if e.i >= term_list.len() || e.j >= term_list.len() {
            return Err(DescriptorError::IndexOutOfRange { i: e.i, j: e.j });
        }
        let (k_i, k_j) = (term_list[e.i].obj, term_list[e.j].obj);
        let nf = NormalForm::new(k_i, k_j, e.n);
        let mor = Morphism::from_normal_form(ObjQ::q(k_i), ObjQ::q(k_j), nf);
        twist_map.insert((e.i, e.j), mor);
    }
    Ok(TwistedComplex::new(term_list, twist_map))
}

pub fn diag_complex_to_descriptor(x: &TwistedComplex<DiagBase>) -> ComplexDescriptor {
    let terms = x
        .terms()
        .iter()
        .map(|t| DiagTermDescriptor { k: t.obj, m: t.shift })
        .collect();
    let twist = x
        .twist()
        .iter()
        .map(|(&(i, j), m)| {
            let nf = m.terms().next().expect("twist entries are single normal forms");
            DiagTwistDescriptor { i, j, n: nf.alpha }
        })
        .collect();
    ComplexDescriptor::Diagrams { terms, twist }
}

pub fn proj_complex_from_descriptor(
    terms: &[ProjTermDescriptor],
    twist: &[ProjTwistDescriptor],
) -> Result<TwistedComplex<ProjBase>, DescriptorError> {
    let mut term_list: Vec<Term<Vertex>> = Vec::with_capacity(terms.len());
    for t in terms {
        term_list.push(Term::new(vertex_from_name(&t.vertex)?, t.m));
    }
    let mut twist_map = BTreeMap::new();
    for e in twist {
        if e.i >= term_list.len() || e.j >= term_list.len() {
            return Err(DescriptorError::IndexOutOfRange { i: e.i, j: e.j });
        }
        let (src, tgt) = (term_list[e.i].obj, term_list[e.j].obj);
        let mut elem = PathElement::zero();
        for name in &e.paths {
            let p = Path::from_name(name)
                .ok_or_else(|| DescriptorError::UnknownPath(name.clone()))?;
            if p.left_vertex() != src || p.right_vertex() != tgt {
                return Err(DescriptorError::EndpointMismatch { i: e.i, j: e.j });
            }
            elem = elem.add(PathElement::path(p));
        }
        twist_map.insert((e.i, e.j), ProjMor::new(src, tgt, elem));
    }
    Ok(TwistedComplex::new(term_list, twist_map))
}

pub fn proj_complex_to_descriptor(x: &TwistedComplex<ProjBase>) -> ComplexDescriptor {
    let terms = x
        .terms()
        .iter()
        .map(|t| ProjTermDescriptor { vertex: t.obj.to_string(), m: t.shift })
        .collect();
    let twist = x
        .twist()
        .iter()
        .map(|(&(i, j), m)| ProjTwistDescriptor {
            i,
            j,
            paths: m.elem.paths().map(|p| p.name().to_string()).collect(),
        })
        .collect();
    ComplexDescriptor::Projectives { terms, twist }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisVectorDescriptor {
    pub label: String,
    pub vertex: String,
    pub deg: i64,
}

/// A graded module: basis plus 0/1 action matrices for `ex, ey, a, b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleDescriptor {
    pub basis: Vec<BasisVectorDescriptor>,
    pub action: BTreeMap<String, Vec<Vec<u8>>>,
}

pub fn module_to_descriptor(m: &GradedModule) -> ModuleDescriptor {
    let basis = m
        .basis()
        .iter()
        .map(|b| BasisVectorDescriptor {
            label: b.label.clone(),
            vertex: b.vertex.to_string(),
            deg: b.degree,
        })
        .collect();
    let mut action = BTreeMap::new();
    for (slot, name) in ["ex", "ey", "a", "b"].iter().enumerate() {
        action.insert(name.to_string(), matrix_to_rows(&m.generator_actions()[slot]));
    }
    ModuleDescriptor { basis, action }
}

pub fn module_from_descriptor(d: &ModuleDescriptor) -> Result<GradedModule, String> {
    let mut basis = Vec::with_capacity(d.basis.len());
    for b in &d.basis {
        basis.push(BasisVector {
            label: b.label.clone(),
            vertex: vertex_from_name(&b.vertex).map_err(|e| e.to_string())?,
            degree: b.deg,
        });
    }
    let mut actions = Vec::with_capacity(4);
    for name in ["ex", "ey", "a", "b"] {
        let rows = d.action.get(name).ok_or_else(|| format!("missing action {name:?}"))?;
        actions.push(rows_to_matrix(rows, basis.len())?);
    }
    let actions: [Gf2Matrix; 4] = actions.try_into().expect("four actions collected");
    GradedModule::new(basis, actions).map_err(|e| e.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BimodBasisVectorDescriptor {
    pub label: String,
    pub left: String,
    pub right: String,
    pub deg: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BimoduleDescriptor {
    pub basis: Vec<BimodBasisVectorDescriptor>,
    pub left_action: BTreeMap<String, Vec<Vec<u8>>>,
    pub right_action: BTreeMap<String, Vec<Vec<u8>>>,
}

pub fn bimodule_to_descriptor(m: &crate::bimodules::GradedBimodule) -> BimoduleDescriptor {
    let basis = m
        .basis()
        .iter()
        .map(|b| BimodBasisVectorDescriptor {
            label: b.label.clone(),
            left: b.left.to_string(),
            right: b.right.to_string(),
            deg: b.degree,
        })
        .collect();
    let mut left_action = BTreeMap::new();
    let mut right_action = BTreeMap::new();
    for (slot, name) in ["ex", "ey", "a", "b"].iter().enumerate() {
        left_action.insert(name.to_string(), matrix_to_rows(&m.left_actions()[slot]));
        right_action.insert(name.to_string(), matrix_to_rows(&m.right_actions()[slot]));
    }
    BimoduleDescriptor { basis, left_action, right_action }
}

pub fn bimodule_from_descriptor(
    d: &BimoduleDescriptor,
) -> Result<crate::bimodules::GradedBimodule, String> {
    let mut basis = Vec::with_capacity(d.basis.len());
    for b in &d.basis {
        basis.push(crate::bimodules::BimodBasisVector {
            label: b.label.clone(),
            left: vertex_from_name(&b.left).map_err(|e| e.to_string())?,
            right: vertex_from_name(&b.right).map_err(|e| e.to_string())?,
            degree: b.deg,
        });
    }
    let pull = |actions: &BTreeMap<String, Vec<Vec<u8>>>| -> Result<[Gf2Matrix; 4], String> {
        let mut out = Vec::with_capacity(4);
        for name in ["ex", "ey", "a", "b"] {
            let rows = actions.get(name).ok_or_else(|| format!("missing action {name:?}"))?;
            out.push(rows_to_matrix(rows, basis.len())?);
        }
        Ok(out.try_into().expect("four actions collected"))
    };
    let left = pull(&d.left_action)?;
    let right = pull(&d.right_action)?;
    crate::bimodules::GradedBimodule::new(basis, left, right).map_err(|e| e.to_string())
}

pub fn matrix_to_rows(m: &Gf2Matrix) -> Vec<Vec<u8>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| u8::from(m.get(i, j))).collect())
        .collect()
}

pub fn rows_to_matrix(rows: &[Vec<u8>], expect: usize) -> Result<Gf2Matrix, String> {
    if rows.len() != expect || rows.iter().any(|r| r.len() != expect) {
        return Err(format!("matrix must be {expect}x{expect}"));
    }
    Ok(Gf2Matrix::from_rows(rows))
}

/// One line of a verification report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub check: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// A full machine-readable verification report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<ReportEntry>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodules::bimodule_m;
    use crate::modules_r::projective;

    #[test]
    fn diag_complex_round_trip() {
        let json = r#"{
            "base": "diagrams",
            "terms": [{"k": 0, "m": 1}, {"k": 0, "m": 0}],
            "twist": [{"i": 0, "j": 1, "n": 0}]
        }"#;
        let d: ComplexDescriptor = serde_json::from_str(json).unwrap();
        let ComplexDescriptor::Diagrams { terms, twist } = &d else { panic!() };
        let x = diag_complex_from_descriptor(terms, twist).unwrap();
        assert_eq!(x.validate(), Ok(()));
        let back = diag_complex_to_descriptor(&x);
        assert_eq!(back, d);
    }

    #[test]
    fn proj_complex_round_trip() {
        let json = r#"{
            "base": "projectives",
            "terms": [{"vertex": "x", "m": 1}, {"vertex": "y", "m": 0}],
            "twist": [{"i": 0, "j": 1, "paths": ["a"]}]
        }"#;
        let d: ComplexDescriptor = serde_json::from_str(json).unwrap();
        let ComplexDescriptor::Projectives { terms, twist } = &d else { panic!() };
        let x = proj_complex_from_descriptor(terms, twist).unwrap();
        assert_eq!(x.validate(), Ok(()));
        assert_eq!(proj_complex_to_descriptor(&x), d);
    }

    #[test]
    fn module_descriptor_round_trip() {
        let px = projective(crate::algebra_r::Vertex::X, 0);
        let d = module_to_descriptor(&px);
        let back = module_from_descriptor(&d).unwrap();
        assert_eq!(back, px);
    }

    #[test]
    fn bimodule_descriptor_round_trip() {
        let m = bimodule_m();
        let d = bimodule_to_descriptor(&m);
        let back = bimodule_from_descriptor(&d).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn bad_path_name_rejected() {
        let terms = vec![ProjTermDescriptor { vertex: "x".into(), m: 0 }];
        let twist = vec![ProjTwistDescriptor { i: 0, j: 0, paths: vec!["q".into()] }];
        assert!(proj_complex_from_descriptor(&terms, &twist).is_err());
    }
}
