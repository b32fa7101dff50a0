//! Independent verification of a realization from its coordinates alone.

use std::collections::HashMap;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{facet_plane, RealizationError, RealizedPolytope};
use crate::combinatorics::{generate_qtilde, CombinatorialPolytope, VertexLabel};
use crate::geometry::{solve4, Hyperplane, Rational, Vec4};
use crate::hamilton::{build_path, check_aof_with, check_holt_klee_with, orientation_from_path, FaceTable};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Certificate {
    /// Every vertex lies on exactly its four labelled facet planes and the graph is 4-regular.
    pub simple: bool,
    /// Each facet plane is spanned by its vertices and has all other vertices strictly inside.
    pub convex: bool,
    /// The label set equals the generator's.
    pub combinatorics_match: bool,
    /// The combinatorial path is Hamiltonian and strictly increasing in `x4`.
    pub monotone_path: bool,
    pub path_length: usize,
    pub aof: bool,
    pub indegree_histogram: Vec<usize>,
    pub holt_klee: Option<bool>,
    /// Solving all facet quadruples finds exactly the claimed vertices.
    pub enumeration_agrees: bool,
    pub enumerated_vertices: usize,
    pub max_coordinate_bits: u64,
}

impl Certificate {
    pub fn all_ok(&self) -> bool {
        self.simple
            && self.convex
            && self.combinatorics_match
            && self.monotone_path
            && self.aof
            && self.enumeration_agrees
            && self.holt_klee != Some(false)
    }
}

/// Hyperplane of every facet, fitted through its vertices and checked against all others.
pub fn recover_facets(comb: &CombinatorialPolytope, coords: &[Vec4]) -> Result<Vec<Hyperplane>, RealizationError> {
    (1..=comb.n).map(|f| facet_plane(comb, coords, f)).collect()
}

/// All feasible intersection points of four facet planes, keyed by the quadruple.
pub fn enumerate_vertices(facets: &[Hyperplane]) -> Vec<(VertexLabel, Vec4)> {
    let n = facets.len() as u32;
    let mut quads = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            for c in b + 1..=n {
                for d in c + 1..=n {
                    quads.push([a, b, c, d]);
                }
            }
        }
    }
    quads
        .par_iter()
        .filter_map(|q| {
            let rows: [Vec4; 4] = std::array::from_fn(|i| facets[q[i] as usize - 1].normal.clone());
            let rhs: [Rational; 4] = std::array::from_fn(|i| facets[q[i] as usize - 1].offset.clone());
            let x = solve4(&rows, &rhs).ok()?;
            facets.iter().all(|h| !h.eval(&x).is_negative()).then(|| (VertexLabel(q.to_vec()), x))
        })
        .collect()
}

/// Recomputes every check from `q.coords` and the labels.
pub fn certify(q: &RealizedPolytope, holt_klee: bool) -> Result<Certificate, RealizationError> {
    let comb = &q.combinatorics;
    let coords = &q.coords;
    let facets = recover_facets(comb, coords);
    let convex = facets.is_ok();

    let simple = comb.check_simple().is_ok()
        && facets.as_ref().is_ok_and(|fs| {
            coords.iter().all(|x| fs.iter().filter(|h| h.eval(x).is_zero()).count() == 4)
        });

    let generated = generate_qtilde(4, q.m)?;
    let combinatorics_match = generated.vertices == comb.vertices;

    let path = build_path(q.m)?;
    let monotone_path = combinatorics_match
        && path.is_hamiltonian(comb)
        && path.order.windows(2).all(|w| coords[w[0]][3] < coords[w[1]][3]);

    let faces = FaceTable::new(comb)?;
    let orient = orientation_from_path(&path, comb);
    let report = check_aof_with(&orient, comb, &faces);
    let aof = report.is_aof() && report.histogram_matches_h;
    let hk = if holt_klee && aof { Some(check_holt_klee_with(&orient, comb, &faces)?) } else { None };

    let (enumeration_agrees, enumerated_vertices) = match &facets {
        Ok(fs) => {
            let found = enumerate_vertices(fs);
            let claimed: HashMap<&VertexLabel, &Vec4> = comb.vertices.iter().zip(coords).collect();
            let exact = found.len() == comb.len()
                && found.iter().all(|(l, x)| {
                    claimed.get(l).is_some_and(|c| *c == x)
                        && fs.iter().enumerate().all(|(f, h)| l.contains(f as u32 + 1) || h.eval(x).is_positive())
                });
            (exact, found.len())
        }
        Err(_) => (false, 0),
    };

    Ok(Certificate {
        simple,
        convex,
        combinatorics_match,
        monotone_path,
        path_length: path.order.len(),
        aof,
        indegree_histogram: report.indegree_histogram,
        holt_klee: hk,
        enumeration_agrees,
        enumerated_vertices,
        max_coordinate_bits: q.max_bits(),
    })
}
