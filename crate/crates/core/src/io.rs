//! JSON file formats. Rationals are written as `"p/q"` strings.
//!
//! Combinatorial and path files index vertices in lexicographic label order.
//! Realized files list vertices by increasing `x4`; loading maps them back to
//! the lexicographic order used everywhere in memory.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combinatorics::{CombinatorialPolytope, VertexLabel};
use crate::geometry::{rational_str, Rational, Vec4};
use crate::hamilton::HamiltonPath;
use crate::realization::{recover_facets, Certificate, RealizedPolytope};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot access {path}: {source}")]
    File { path: String, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("inconsistent file: {0}")]
    Format(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CombinatorialJson {
    pub d: usize,
    pub n: usize,
    pub vertices: Vec<Vec<u32>>,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tips: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathJson {
    pub m: usize,
    pub order: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetJson {
    pub label: u32,
    pub normal: Vec4,
    #[serde(with = "rational_str")]
    pub offset: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RealizedJson {
    pub m: usize,
    #[serde(flatten)]
    pub combinatorics: CombinatorialJson,
    pub coords: Vec<Vec4>,
    pub facets: Vec<FacetJson>,
    pub path: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    /// Center of the sorting pencil for the next step, in these coordinates.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep_center: Option<Vec4>,
}

/// Relabels `p` with its vertices listed in `order` (old indices).
fn reindexed(p: &CombinatorialPolytope, order: &[usize]) -> CombinatorialJson {
    let mut new_of = vec![0; order.len()];
    for (new, &old) in order.iter().enumerate() {
        new_of[old] = new;
    }
    let mut edges: Vec<[usize; 2]> = p
        .edges
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (new_of[u], new_of[v]);
            [a.min(b), a.max(b)]
        })
        .collect();
    edges.sort_unstable();
    CombinatorialJson {
        d: p.d,
        n: p.n,
        vertices: order.iter().map(|&i| p.vertices[i].0.clone()).collect(),
        edges,
        tips: p.tips().map(|t| order.iter().map(|&i| t[i]).collect()),
    }
}

pub fn combinatorial_to_json(p: &CombinatorialPolytope) -> CombinatorialJson {
    let id: Vec<usize> = (0..p.len()).collect();
    reindexed(p, &id)
}

/// Rebuilds the polytope from its labels; returns it with `perm[file index] = lex index`.
fn rebuild(j: &CombinatorialJson) -> Result<(CombinatorialPolytope, Vec<usize>), IoError> {
    let labels: Vec<VertexLabel> = j.vertices.iter().map(|v| VertexLabel::new(v.clone())).collect();
    let p = CombinatorialPolytope::from_labels(j.d, j.n, labels.clone()).map_err(|e| IoError::Format(e.to_string()))?;
    if p.len() != labels.len() {
        return Err(IoError::Format("duplicate vertex labels".into()));
    }
    let perm: Vec<usize> = labels.iter().map(|l| p.index_of(l).expect("label just inserted")).collect();
    let expected = reindexed(&p, &perm);
    if expected.edges != j.edges {
        return Err(IoError::Format("edge list does not match the vertex labels".into()));
    }
    if j.tips.is_some() && expected.tips != j.tips {
        return Err(IoError::Format("tips do not match the vertex labels".into()));
    }
    Ok((p, perm))
}

fn invert(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

/// Validates a combinatorial file; its vertices must already be in lexicographic order.
pub fn combinatorial_from_json(j: &CombinatorialJson) -> Result<CombinatorialPolytope, IoError> {
    let (p, perm) = rebuild(j)?;
    if perm.iter().enumerate().any(|(i, &k)| i != k) {
        return Err(IoError::Format("vertices are not in lexicographic order".into()));
    }
    Ok(p)
}

pub fn path_to_json(m: usize, path: &HamiltonPath) -> PathJson {
    PathJson { m, order: path.order.clone() }
}

pub fn realized_to_json(q: &RealizedPolytope) -> RealizedJson {
    let mut order: Vec<usize> = (0..q.coords.len()).collect();
    order.sort_by(|&a, &b| q.coords[a][3].cmp(&q.coords[b][3]).then(a.cmp(&b)));
    let new_of = invert(&order);
    RealizedJson {
        m: q.m,
        combinatorics: reindexed(&q.combinatorics, &order),
        coords: order.iter().map(|&i| q.coords[i].clone()).collect(),
        facets: q
            .facets
            .iter()
            .enumerate()
            .map(|(f, h)| FacetJson { label: f as u32 + 1, normal: h.normal.clone(), offset: h.offset.clone() })
            .collect(),
        path: q.path.order.iter().map(|&i| new_of[i]).collect(),
        certificate: q.certificate.clone(),
        sweep_center: None,
    }
}

/// Loads a realized file. Facet planes are refitted from the coordinates when possible and the
/// stored certificate is kept only as data; callers re-certify.
pub fn realized_from_json(j: &RealizedJson) -> Result<RealizedPolytope, IoError> {
    let (comb, perm) = rebuild(&j.combinatorics)?;
    if j.coords.len() != comb.len() {
        return Err(IoError::Format(format!("{} coordinates for {} vertices", j.coords.len(), comb.len())));
    }
    if j.combinatorics.n != j.m + 5 {
        return Err(IoError::Format(format!("m = {} does not match n = {}", j.m, j.combinatorics.n)));
    }
    let mut coords = vec![Vec4::zero(); comb.len()];
    for (i, x) in j.coords.iter().enumerate() {
        coords[perm[i]] = x.clone();
    }
    if j.path.iter().any(|&i| i >= perm.len()) {
        return Err(IoError::Format("path index out of range".into()));
    }
    let path = HamiltonPath { order: j.path.iter().map(|&i| perm[i]).collect() };
    let facets = match recover_facets(&comb, &coords) {
        Ok(fs) => fs,
        Err(_) => {
            let mut fs = j.facets.clone();
            fs.sort_by_key(|f| f.label);
            if fs.iter().enumerate().any(|(k, f)| f.label as usize != k + 1) || fs.len() != comb.n {
                return Err(IoError::Format("facet labels must be 1..n".into()));
            }
            fs.into_iter().map(|f| crate::geometry::Hyperplane { normal: f.normal, offset: f.offset }).collect()
        }
    };
    Ok(RealizedPolytope { m: j.m, combinatorics: comb, coords, facets, path, certificate: j.certificate.clone() })
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, IoError> {
    let text = std::fs::read_to_string(path).map_err(|source| IoError::File { path: path.display().to_string(), source })?;
    Ok(serde_json::from_str(&text)?)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), IoError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text).map_err(|source| IoError::File { path: path.display().to_string(), source })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{generate_dual_cyclic, generate_qtilde};
    use crate::realization::{realize, RealizeOptions};

    #[test]
    fn combinatorial_round_trip() {
        for p in [generate_qtilde(4, 3).unwrap(), generate_dual_cyclic(4, 8).unwrap(), generate_qtilde(6, 2).unwrap()] {
            let j = combinatorial_to_json(&p);
            let text = serde_json::to_string(&j).unwrap();
            let back: CombinatorialJson = serde_json::from_str(&text).unwrap();
            assert_eq!(combinatorial_from_json(&back).unwrap(), p);
        }
    }

    #[test]
    fn rejects_bad_edges() {
        let mut j = combinatorial_to_json(&generate_qtilde(4, 1).unwrap());
        j.edges.pop();
        assert!(matches!(combinatorial_from_json(&j), Err(IoError::Format(_))));
    }

    #[test]
    fn realized_round_trip() {
        let q = realize(2, &RealizeOptions::default()).unwrap();
        let j = realized_to_json(&q);
        assert_eq!(j.path, (0..q.coords.len()).collect::<Vec<_>>());
        assert!(j.coords.windows(2).all(|w| w[0][3] < w[1][3]));
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.contains("\"certificate\":{\"simple\":true"));
        let back = realized_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, q);
    }
}
