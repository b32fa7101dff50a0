//! The combinatorial monotone Hamilton path on `Q̃_m` and checks for
//! abstract objective function (AOF) and Holt-Klee orientations.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combinatorics::{
    faces_with_labels, generate_qtilde, h_vector, special_vertices, tip_of, CombinatorialError,
    CombinatorialPolytope, VertexLabel,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HamiltonError {
    #[error("path structure violated at m = {m}: {reason}")]
    StructureViolation { m: usize, reason: String },
    #[error("orientation is not an AOF orientation")]
    Precondition,
    #[error(transparent)]
    Combinatorial(#[from] CombinatorialError),
}

/// A vertex order; entries index `CombinatorialPolytope::vertices`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamiltonPath {
    pub order: Vec<usize>,
}

impl HamiltonPath {
    /// Visits every vertex once and steps along edges only.
    pub fn is_hamiltonian(&self, p: &CombinatorialPolytope) -> bool {
        let mut seen = vec![false; p.len()];
        for &v in &self.order {
            if v >= p.len() || std::mem::replace(&mut seen[v], true) {
                return false;
            }
        }
        self.order.len() == p.len() && self.order.windows(2).all(|w| p.are_adjacent(w[0], w[1]))
    }

    pub fn labels<'a>(&self, p: &'a CombinatorialPolytope) -> Vec<&'a VertexLabel> {
        self.order.iter().map(|&i| &p.vertices[i]).collect()
    }
}

/// One direction per edge of the graph, stored as `(tail, head)` aligned with `P::edges`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    pub arcs: Vec<(usize, usize)>,
}

impl Orientation {
    /// Orients every edge from the lower to the higher rank.
    pub fn from_ranks(p: &CombinatorialPolytope, rank: &[usize]) -> Self {
        let arcs = p.edges.iter().map(|&(a, b)| if rank[a] < rank[b] { (a, b) } else { (b, a) }).collect();
        Orientation { arcs }
    }

    pub fn reversed(&self) -> Self {
        Orientation { arcs: self.arcs.iter().map(|&(a, b)| (b, a)).collect() }
    }

    pub fn successors(&self, nv: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); nv];
        for &(a, b) in &self.arcs {
            out[a].push(b);
        }
        out
    }

    pub fn in_degrees(&self, nv: usize) -> Vec<usize> {
        let mut d = vec![0; nv];
        for &(_, b) in &self.arcs {
            d[b] += 1;
        }
        d
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AofReport {
    pub acyclic: bool,
    pub indegree_histogram: Vec<usize>,
    pub histogram_matches_h: bool,
    pub unique_sink_per_face: bool,
    pub holt_klee: Option<bool>,
}

impl AofReport {
    pub fn is_aof(&self) -> bool {
        self.acyclic && self.unique_sink_per_face
    }
}

/// Vertex sets of all faces of dimension `1..=d`, grouped by dimension.
#[derive(Clone, Debug)]
pub struct FaceTable {
    pub by_dim: Vec<Vec<Vec<usize>>>,
    pub h: Vec<i64>,
}

impl FaceTable {
    pub fn new(p: &CombinatorialPolytope) -> Result<Self, CombinatorialError> {
        let mut by_dim = vec![Vec::new()];
        for k in 1..=p.d {
            by_dim.push(faces_with_labels(p, k).into_values().collect());
        }
        Ok(FaceTable { by_dim, h: h_vector(p)? })
    }
}

pub fn orientation_from_path(path: &HamiltonPath, p: &CombinatorialPolytope) -> Orientation {
    let mut rank = vec![usize::MAX; p.len()];
    for (i, &v) in path.order.iter().enumerate() {
        rank[v] = i;
    }
    Orientation::from_ranks(p, &rank)
}

fn is_acyclic(o: &Orientation, nv: usize) -> bool {
    let succ = o.successors(nv);
    let mut indeg = o.in_degrees(nv);
    let mut queue: VecDeque<usize> = (0..nv).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = queue.pop_front() {
        seen += 1;
        for &w in &succ[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push_back(w);
            }
        }
    }
    seen == nv
}

/// Number of vertices of `face` without an out-arc inside the face.
fn sinks_in(face: &[usize], succ: &[Vec<usize>], member: &mut [bool]) -> usize {
    for &v in face {
        member[v] = true;
    }
    let c = face.iter().filter(|&&v| !succ[v].iter().any(|&w| member[w])).count();
    for &v in face {
        member[v] = false;
    }
    c
}

pub fn check_aof(o: &Orientation, p: &CombinatorialPolytope) -> Result<AofReport, HamiltonError> {
    let faces = FaceTable::new(p)?;
    Ok(check_aof_with(o, p, &faces))
}

/// [`check_aof`] with precomputed faces, for repeated checks on one polytope.
pub fn check_aof_with(o: &Orientation, p: &CombinatorialPolytope, faces: &FaceTable) -> AofReport {
    let nv = p.len();
    let acyclic = is_acyclic(o, nv);
    let mut hist = vec![0usize; p.d + 1];
    for d in o.in_degrees(nv) {
        if d < hist.len() {
            hist[d] += 1;
        }
    }
    let histogram_matches_h = hist.iter().zip(&faces.h).all(|(&a, &b)| a as i64 == b);
    let succ = o.successors(nv);
    let mut member = vec![false; nv];
    let unique_sink_per_face = faces
        .by_dim
        .iter()
        .flatten()
        .all(|face| sinks_in(face, &succ, &mut member) == 1);
    AofReport { acyclic, indegree_histogram: hist, histogram_matches_h, unique_sink_per_face, holt_klee: None }
}

/// Maximum number of internally vertex-disjoint `s → t` paths inside `face`.
pub fn max_disjoint_paths(face: &[usize], succ: &[Vec<usize>], s: usize, t: usize) -> usize {
    let k = face.len();
    let local = |v: usize| face.iter().position(|&x| x == v);
    // node 2i is the in-copy of face[i], 2i + 1 its out-copy
    let mut cap: Vec<Vec<(usize, i64, usize)>> = vec![Vec::new(); 2 * k];
    let add = |cap: &mut Vec<Vec<(usize, i64, usize)>>, a: usize, b: usize, c: i64| {
        let (ia, ib) = (cap[a].len(), cap[b].len());
        cap[a].push((b, c, ib));
        cap[b].push((a, 0, ia));
    };
    let big = k as i64 + 1;
    for (i, &v) in face.iter().enumerate() {
        let c = if v == s || v == t { big } else { 1 };
        add(&mut cap, 2 * i, 2 * i + 1, c);
        for &w in &succ[v] {
            if let Some(j) = local(w) {
                add(&mut cap, 2 * i + 1, 2 * j, 1);
            }
        }
    }
    let (src, dst) = (2 * local(s).unwrap() + 1, 2 * local(t).unwrap());
    let mut flow = 0;
    loop {
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; 2 * k];
        let mut q = VecDeque::from([src]);
        let mut found = false;
        while let Some(x) = q.pop_front() {
            if x == dst {
                found = true;
                break;
            }
            for (ei, &(y, c, _)) in cap[x].iter().enumerate() {
                if c > 0 && y != src && prev[y].is_none() {
                    prev[y] = Some((x, ei));
                    q.push_back(y);
                }
            }
        }
        if !found {
            return flow;
        }
        let mut y = dst;
        while y != src {
            let (x, ei) = prev[y].unwrap();
            cap[x][ei].1 -= 1;
            let rev = cap[x][ei].2;
            cap[y][rev].1 += 1;
            y = x;
        }
        flow += 1;
    }
}

/// Every face of dimension `k ≥ 2` has `k` disjoint monotone paths from its source to its sink.
pub fn check_holt_klee(o: &Orientation, p: &CombinatorialPolytope) -> Result<bool, HamiltonError> {
    let faces = FaceTable::new(p)?;
    check_holt_klee_with(o, p, &faces)
}

pub fn check_holt_klee_with(o: &Orientation, p: &CombinatorialPolytope, faces: &FaceTable) -> Result<bool, HamiltonError> {
    if !check_aof_with(o, p, faces).is_aof() {
        return Err(HamiltonError::Precondition);
    }
    let nv = p.len();
    let succ = o.successors(nv);
    let mut pred = vec![Vec::new(); nv];
    for &(a, b) in &o.arcs {
        pred[b].push(a);
    }
    let mut member = vec![false; nv];
    for (k, faces_k) in faces.by_dim.iter().enumerate().skip(2) {
        for face in faces_k {
            for &v in face {
                member[v] = true;
            }
            let sink = face.iter().copied().find(|&v| !succ[v].iter().any(|&w| member[w]));
            let source = face.iter().copied().find(|&v| !pred[v].iter().any(|&w| member[w]));
            for &v in face {
                member[v] = false;
            }
            let (Some(s), Some(t)) = (source, sink) else { return Ok(false) };
            if max_disjoint_paths(face, &succ, s, t) < k {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn violation(m: usize, reason: impl Into<String>) -> HamiltonError {
    HamiltonError::StructureViolation { m, reason: reason.into() }
}

/// Labels of the monotone Hamilton path on `Q̃_m`, built block by block from the path on `Q̃_{m−1}`.
pub fn build_path_labels(m: usize) -> Result<Vec<VertexLabel>, HamiltonError> {
    let mut path: Vec<VertexLabel> =
        vec![[2, 3, 4, 5].into(), [1, 2, 3, 5].into(), [1, 2, 3, 4].into(), [1, 3, 4, 5].into(), [1, 2, 4, 5].into()];
    for k in 1..=m {
        path = extend_path(&path, k)?;
    }
    Ok(path)
}

/// One step of the block recursion: the path on `Q̃_k` from the path on `Q̃_{k−1}`.
fn extend_path(prev: &[VertexLabel], k: usize) -> Result<Vec<VertexLabel>, HamiltonError> {
    let n = (k + 5) as u32;
    let q = generate_qtilde(4, k)?;
    let sp = special_vertices(k);
    let mut out = vec![sp.alpha.clone()];
    out.extend((1..=k as u32 + 1).rev().map(|j| VertexLabel::from([j, j + 1, j + 2, n])));
    for v in prev {
        if tip_of(v, 4, n as usize - 1)? % 2 == 0 {
            out.push(v.clone());
        }
    }
    out.push(sp.beta.clone());

    let t2: Vec<&VertexLabel> =
        q.vertices.iter().filter(|v| tip_of(v, 4, n as usize).ok() == Some(2)).collect();
    let adjacent = |a: &VertexLabel, b: &VertexLabel| a.common(b) == 3;
    let start: Vec<&&VertexLabel> = t2.iter().filter(|w| adjacent(w, &sp.beta)).collect();
    if start.len() != 1 {
        return Err(violation(k, format!("beta has {} neighbours in T^2", start.len())));
    }
    let mut walk = vec![(*start[0]).clone()];
    let mut rest: HashSet<&VertexLabel> = t2.iter().copied().filter(|v| *v != *start[0]).collect();
    while !rest.is_empty() {
        let last = walk.last().unwrap();
        let next: Vec<&VertexLabel> = rest.iter().copied().filter(|w| adjacent(w, last)).collect();
        if next.len() != 1 {
            return Err(violation(k, "T^2 does not induce a path"));
        }
        rest.remove(next[0]);
        walk.push(next[0].clone());
    }
    if walk.last() != Some(&sp.omega) {
        return Err(violation(k, "T^2 walk does not end at omega"));
    }
    out.extend(walk);

    let mut sorted = out.clone();
    sorted.sort();
    if sorted != q.vertices {
        return Err(violation(k, "blocks do not cover the vertex set exactly once"));
    }
    if let Some(w) = out.windows(2).find(|w| !adjacent(&w[0], &w[1])) {
        return Err(violation(k, format!("{} and {} are not adjacent", w[0], w[1])));
    }
    Ok(out)
}

/// The monotone Hamilton path on `generate_qtilde(4, m)`, checked to induce an AOF orientation.
pub fn build_path(m: usize) -> Result<HamiltonPath, HamiltonError> {
    let q = generate_qtilde(4, m)?;
    let labels = build_path_labels(m)?;
    let order = labels.iter().map(|l| q.index_of(l).unwrap()).collect();
    let path = HamiltonPath { order };
    let report = check_aof(&orientation_from_path(&path, &q), &q)?;
    if !report.is_aof() || !report.histogram_matches_h {
        return Err(violation(m, "induced orientation is not AOF"));
    }
    Ok(path)
}
