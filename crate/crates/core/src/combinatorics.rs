//! Combinatorial types of simple polytopes given by vertex-facet incidences.
//!
//! A vertex of a simple d-polytope is identified with the sorted set of the
//! d facets it lies on. Two vertices are adjacent exactly when their labels
//! share d − 1 facets.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombinatorialError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("invalid label {0}")]
    InvalidLabel(VertexLabel),
    #[error("vertex {0} has {1} neighbours, expected {2}")]
    NotSimple(VertexLabel, usize, usize),
    #[error("labels {0} and {1} are not adjacent")]
    NonAdjacent(VertexLabel, VertexLabel),
}

/// Sorted set of facet indices in `1..=n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexLabel(pub Vec<u32>);

impl VertexLabel {
    pub fn new(mut facets: Vec<u32>) -> Self {
        facets.sort_unstable();
        facets.dedup();
        VertexLabel(facets)
    }

    pub fn mask(&self) -> u64 {
        self.0.iter().fold(0u64, |m, &f| m | (1u64 << f))
    }

    pub fn contains(&self, f: u32) -> bool {
        self.0.binary_search(&f).is_ok()
    }

    pub fn common(&self, o: &VertexLabel) -> usize {
        (self.mask() & o.mask()).count_ones() as usize
    }
}

impl<const K: usize> From<[u32; K]> for VertexLabel {
    fn from(a: [u32; K]) -> Self {
        VertexLabel::new(a.to_vec())
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl fmt::Debug for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A simple polytope known only through its vertex labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombinatorialPolytope {
    pub d: usize,
    pub n: usize,
    /// Lexicographically sorted; positions are the canonical vertex indices.
    pub vertices: Vec<VertexLabel>,
    /// Pairs `(i, j)` with `i < j`, sorted.
    pub edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    masks: Vec<u64>,
    index: HashMap<VertexLabel, usize>,
}

impl CombinatorialPolytope {
    /// Builds the graph from labels via the `d − 1` common facets rule.
    pub fn from_labels(d: usize, n: usize, labels: Vec<VertexLabel>) -> Result<Self, CombinatorialError> {
        if n >= 64 {
            return Err(CombinatorialError::InvalidParameters(format!("n = {n} exceeds 63 facets")));
        }
        let mut vertices = labels;
        vertices.sort();
        vertices.dedup();
        for v in &vertices {
            if v.0.len() != d || v.0.iter().any(|&f| f < 1 || f as usize > n) {
                return Err(CombinatorialError::InvalidLabel(v.clone()));
            }
        }
        let masks: Vec<u64> = vertices.iter().map(VertexLabel::mask).collect();
        let mut edges = Vec::new();
        let mut adjacency = vec![Vec::new(); vertices.len()];
        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                if (masks[i] & masks[j]).count_ones() as usize == d - 1 {
                    edges.push((i, j));
                    adjacency[i].push(j);
                    adjacency[j].push(i);
                }
            }
        }
        let index = vertices.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        Ok(CombinatorialPolytope { d, n, vertices, edges, adjacency, masks, index })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adjacency
    }

    pub fn mask(&self, v: usize) -> u64 {
        self.masks[v]
    }

    pub fn index_of(&self, label: &VertexLabel) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn are_adjacent(&self, u: usize, v: usize) -> bool {
        (self.masks[u] & self.masks[v]).count_ones() as usize == self.d - 1
    }

    /// Errors unless every vertex has exactly `d` neighbours.
    pub fn check_simple(&self) -> Result<(), CombinatorialError> {
        for (v, adj) in self.adjacency.iter().enumerate() {
            if adj.len() != self.d {
                return Err(CombinatorialError::NotSimple(self.vertices[v].clone(), adj.len(), self.d));
            }
        }
        Ok(())
    }

    pub fn is_connected(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Tip index of every vertex, when the max-complement rule applies to all of them.
    pub fn tips(&self) -> Option<Vec<usize>> {
        self.vertices.iter().map(|v| tip_of(v, self.d, self.n).ok()).collect()
    }

    /// Number of vertices on each facet, indexed by facet − 1.
    pub fn facet_sizes(&self) -> Vec<usize> {
        let mut c = vec![0; self.n];
        for v in &self.vertices {
            for &f in &v.0 {
                c[f as usize - 1] += 1;
            }
        }
        c
    }
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Vertex count of `Q̃_m^d`: `binom(n − d/2, d/2) + binom(n − 1 − d/2, d/2 − 1)`.
pub fn qtilde_vertex_count(d: usize, m: usize) -> usize {
    let (n, h) = ((m + d + 1) as i64, (d / 2) as i64);
    (binom(n - h, h) + binom(n - 1 - h, h - 1)) as usize
}

/// `sorted[from..]` is a run of consecutive pairs `{j, j+1}`.
fn pairs_from(l: &[u32], from: usize) -> bool {
    (l.len() - from).is_multiple_of(2) && (from..l.len()).step_by(2).all(|k| l[k + 1] == l[k] + 1)
}

fn is_type1(l: &[u32]) -> bool {
    l[1] == l[0] + 2 && pairs_from(l, 2)
}

fn is_type2a(l: &[u32], n: u32) -> bool {
    let d = l.len();
    l[1] == l[0] + 1 && l[2] == l[0] + 2 && l[d - 1] == n && pairs_from(&l[..d - 1], 3)
}

fn is_type2b(l: &[u32]) -> bool {
    l[0] == 1 && l[1] == 2 && pairs_from(l, 2)
}

fn check_even_d(d: usize) -> Result<(), CombinatorialError> {
    if d < 4 || !d.is_multiple_of(2) {
        return Err(CombinatorialError::InvalidParameters(format!("d must be even and at least 4, got {d}")));
    }
    Ok(())
}

/// Calls `f` on every `k`-subset of `1..=n` in lexicographic order.
fn for_each_subset(n: u32, k: usize, mut f: impl FnMut(&[u32])) {
    if k as u32 > n {
        return;
    }
    let mut c: Vec<u32> = (1..=k as u32).collect();
    loop {
        f(&c);
        let mut i = k;
        while i > 0 && c[i - 1] == n - (k - i) as u32 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        c[i - 1] += 1;
        for j in i..k {
            c[j] = c[j - 1] + 1;
        }
    }
}

/// The polar-to-neighborly type `Q̃_m^d` with `n = m + d + 1` facets.
pub fn generate_qtilde(d: usize, m: usize) -> Result<CombinatorialPolytope, CombinatorialError> {
    check_even_d(d)?;
    let n = m + d + 1;
    let mut labels = Vec::new();
    for_each_subset(n as u32, d, |l| {
        if is_type1(l) || is_type2a(l, n as u32) || is_type2b(l) {
            labels.push(VertexLabel(l.to_vec()));
        }
    });
    CombinatorialPolytope::from_labels(d, n, labels)
}

/// The polar of the cyclic polytope `C_d(n)`, via Gale's evenness criterion.
pub fn generate_dual_cyclic(d: usize, n: usize) -> Result<CombinatorialPolytope, CombinatorialError> {
    if d < 2 || !d.is_multiple_of(2) {
        return Err(CombinatorialError::InvalidParameters(format!("d must be even, got {d}")));
    }
    if n <= d {
        return Err(CombinatorialError::InvalidParameters(format!("need n > d, got n = {n}, d = {d}")));
    }
    let mut labels = Vec::new();
    for_each_subset(n as u32, d, |l| {
        let outside: Vec<u32> = (1..=n as u32).filter(|i| !l.contains(i)).collect();
        let even = outside.windows(2).all(|w| l.iter().filter(|&&y| w[0] < y && y < w[1]).count() % 2 == 0);
        if even {
            labels.push(VertexLabel(l.to_vec()));
        }
    });
    CombinatorialPolytope::from_labels(d, n, labels)
}

/// Tip class from the largest facet index missing from the label.
pub fn tip_of(v: &VertexLabel, d: usize, n: usize) -> Result<usize, CombinatorialError> {
    let bad = || CombinatorialError::InvalidLabel(v.clone());
    if n < d + 1 {
        return Err(bad());
    }
    let m = n - d - 1;
    let mc = (1..=n as u32).rev().find(|f| !v.contains(*f)).ok_or_else(bad)? as usize;
    match mc {
        x if x == m + 2 => Ok(0),
        x if x == m + 1 => Ok(1),
        x if x >= m + 3 && x <= m + d + 1 => Ok(x - m - 1),
        _ => Err(bad()),
    }
}

/// Source, second vertex of the final `F^2` approach, sink and pivot of `Q̃_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialVertices {
    pub alpha: VertexLabel,
    pub beta: VertexLabel,
    pub omega: VertexLabel,
    pub tau: VertexLabel,
}

pub fn special_vertices(m: usize) -> SpecialVertices {
    if m == 0 {
        return SpecialVertices {
            alpha: [2, 3, 4, 5].into(),
            beta: [1, 3, 4, 5].into(),
            omega: [1, 2, 4, 5].into(),
            tau: [1, 2, 3, 4].into(),
        };
    }
    let n = (m + 5) as u32;
    SpecialVertices {
        alpha: [n - 3, n - 2, n - 1, n].into(),
        beta: [n - 4, n - 2, n - 1, n].into(),
        omega: [n - 5, n - 3, n - 1, n].into(),
        tau: [n - 5, n - 3, n - 2, n - 1].into(),
    }
}

/// The second vertex of the monotone path (first vertex of the `T^3` chain).
pub fn v1_label(m: usize) -> VertexLabel {
    if m == 0 {
        return [1, 2, 3, 5].into();
    }
    let n = (m + 5) as u32;
    [n - 4, n - 3, n - 2, n].into()
}

/// Label of the vertex created where the new facet cuts edge `uv`.
pub fn new_vertex_label(u: &VertexLabel, v: &VertexLabel, new_facet: u32) -> Result<VertexLabel, CombinatorialError> {
    let d = u.0.len();
    if v.0.len() != d || u.common(v) != d - 1 {
        return Err(CombinatorialError::NonAdjacent(u.clone(), v.clone()));
    }
    let mut f: Vec<u32> = u.0.iter().copied().filter(|&x| v.contains(x)).collect();
    f.push(new_facet);
    Ok(VertexLabel::new(f))
}

/// All `k`-faces as sorted vertex index lists, keyed by their defining facet set.
pub fn enumerate_faces(p: &CombinatorialPolytope, k: usize) -> Vec<Vec<usize>> {
    faces_with_labels(p, k).into_values().collect()
}

/// Like [`enumerate_faces`] but keeps the facet set (a `d − k` subset) of each face.
pub fn faces_with_labels(p: &CombinatorialPolytope, k: usize) -> BTreeMap<Vec<u32>, Vec<usize>> {
    let mut out: BTreeMap<Vec<u32>, Vec<usize>> = BTreeMap::new();
    if k > p.d {
        return out;
    }
    let s = p.d - k;
    for (i, v) in p.vertices.iter().enumerate() {
        let mut sub: Vec<u32> = Vec::with_capacity(s);
        subsets_of(&v.0, s, 0, &mut sub, &mut |set| out.entry(set.to_vec()).or_default().push(i));
    }
    out.retain(|_, vs| vs.len() > k);
    out
}

fn subsets_of(items: &[u32], s: usize, from: usize, cur: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if cur.len() == s {
        f(cur);
        return;
    }
    for i in from..items.len() {
        if items.len() - i < s - cur.len() {
            break;
        }
        cur.push(items[i]);
        subsets_of(items, s, i + 1, cur, f);
        cur.pop();
    }
}

/// `(f_0, …, f_{d−1})` counted by face enumeration.
pub fn f_vector(p: &CombinatorialPolytope) -> Result<Vec<usize>, CombinatorialError> {
    p.check_simple()?;
    Ok((0..p.d).map(|k| faces_with_labels(p, k).len()).collect())
}

/// h-vector of a simple polytope from its face numbers: `h_i = Σ_k (−1)^{k−i} C(k,i) f_k`.
pub fn h_vector(p: &CombinatorialPolytope) -> Result<Vec<i64>, CombinatorialError> {
    let mut f: Vec<i64> = f_vector(p)?.into_iter().map(|x| x as i64).collect();
    f.push(1);
    let d = p.d as i64;
    Ok((0..=d)
        .map(|i| (i..=d).map(|k| if (k - i) % 2 == 0 { 1 } else { -1 } * binom(k, i) * f[k as usize]).sum())
        .collect())
}

/// `(1, m+1, binom(m+2, 2), m+1, 1)`, the h-vector of `Q̃_m` in dimension four.
pub fn h_vector_qtilde(m: usize) -> Vec<i64> {
    let m = m as i64;
    vec![1, m + 1, binom(m + 2, 2), m + 1, 1]
}

/// Searches for a permutation `σ` of the facets with `σ(labels(P)) = labels(Q)`.
///
/// Returns `σ` as a vector whose entry `i` is the image of facet `i + 1`;
/// the lexicographically smallest witness is reported.
pub fn check_isomorphic(p: &CombinatorialPolytope, q: &CombinatorialPolytope) -> Option<Vec<u32>> {
    if p.d != q.d || p.n != q.n || p.len() != q.len() {
        return None;
    }
    let n = p.n;
    let (cp, cq) = (p.facet_sizes(), q.facet_sizes());
    let mut sp = cp.clone();
    let mut sq = cq.clone();
    sp.sort_unstable();
    sq.sort_unstable();
    if sp != sq {
        return None;
    }
    let pair = |x: &CombinatorialPolytope| {
        let mut c = vec![vec![0usize; n]; n];
        for v in &x.vertices {
            for &a in &v.0 {
                for &b in &v.0 {
                    c[a as usize - 1][b as usize - 1] += 1;
                }
            }
        }
        c
    };
    let (pp, pq) = (pair(p), pair(q));
    let target: HashSet<u64> = q.vertices.iter().map(VertexLabel::mask).collect();

    struct Search<'a> {
        n: usize,
        cp: &'a [usize],
        cq: &'a [usize],
        pp: &'a [Vec<usize>],
        pq: &'a [Vec<usize>],
        p: &'a CombinatorialPolytope,
        target: &'a HashSet<u64>,
        sigma: Vec<usize>,
        used: Vec<bool>,
    }

    impl Search<'_> {
        fn go(&mut self, i: usize) -> bool {
            if i == self.n {
                return self.p.vertices.iter().all(|v| {
                    let m = v.0.iter().fold(0u64, |m, &f| m | (1u64 << (self.sigma[f as usize - 1] + 1)));
                    self.target.contains(&m)
                });
            }
            for j in 0..self.n {
                if self.used[j] || self.cp[i] != self.cq[j] {
                    continue;
                }
                if (0..i).any(|k| self.pp[i][k] != self.pq[j][self.sigma[k]]) {
                    continue;
                }
                self.sigma[i] = j;
                self.used[j] = true;
                if self.go(i + 1) {
                    return true;
                }
                self.used[j] = false;
            }
            false
        }
    }

    let mut s = Search {
        n,
        cp: &cp,
        cq: &cq,
        pp: &pp,
        pq: &pq,
        p,
        target: &target,
        sigma: vec![0; n],
        used: vec![false; n],
    };
    s.go(0).then(|| s.sigma.iter().map(|&j| j as u32 + 1).collect())
}

/// Applies a facet permutation (as returned by [`check_isomorphic`]) to a label.
pub fn permute_label(v: &VertexLabel, sigma: &[u32]) -> VertexLabel {
    VertexLabel::new(v.0.iter().map(|&f| sigma[f as usize - 1]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(p: &CombinatorialPolytope) -> Vec<VertexLabel> {
        p.vertices.clone()
    }

    #[test]
    fn qtilde_small_cases() {
        let q0 = generate_qtilde(4, 0).unwrap();
        let mut want: Vec<VertexLabel> =
            vec![[1, 3, 4, 5].into(), [2, 3, 4, 5].into(), [1, 2, 4, 5].into(), [1, 2, 3, 5].into(), [1, 2, 3, 4].into()];
        want.sort();
        assert_eq!(labels(&q0), want);

        let q1 = generate_qtilde(4, 1).unwrap();
        let mut want: Vec<VertexLabel> = vec![
            [1, 3, 4, 5].into(),
            [1, 3, 5, 6].into(),
            [2, 4, 5, 6].into(),
            [1, 2, 3, 6].into(),
            [2, 3, 4, 6].into(),
            [3, 4, 5, 6].into(),
            [1, 2, 3, 4].into(),
            [1, 2, 4, 5].into(),
            [1, 2, 5, 6].into(),
        ];
        want.sort();
        assert_eq!(labels(&q1), want);

        assert_eq!(generate_qtilde(6, 2).unwrap().len(), 30);
    }

    #[test]
    fn qtilde_rejects_bad_d() {
        assert!(generate_qtilde(5, 1).is_err());
        assert!(generate_qtilde(2, 1).is_err());
    }

    #[test]
    fn qtilde_counts_match_closed_form() {
        for d in [4, 6, 8] {
            for m in 0..=10 {
                let p = generate_qtilde(d, m).unwrap();
                assert_eq!(p.len(), qtilde_vertex_count(d, m), "d={d} m={m}");
                p.check_simple().unwrap();
                assert!(p.is_connected());
            }
        }
    }

    #[test]
    fn dual_cyclic_counts() {
        assert_eq!(generate_dual_cyclic(4, 5).unwrap().len(), 5);
        assert_eq!(generate_dual_cyclic(4, 8).unwrap().len(), 20);
        assert_eq!(generate_dual_cyclic(4, 9).unwrap().len(), 27);
        for n in 5..=14 {
            let p = generate_dual_cyclic(4, n).unwrap();
            assert_eq!(p.len(), n * (n - 3) / 2);
            p.check_simple().unwrap();
        }
    }

    #[test]
    fn tip_examples() {
        assert_eq!(tip_of(&[3, 4, 5, 6].into(), 4, 6), Ok(1));
        assert_eq!(tip_of(&[2, 4, 5, 6].into(), 4, 6), Ok(0));
        assert_eq!(tip_of(&[1, 2, 3, 4].into(), 4, 6), Ok(4));
    }

    #[test]
    fn tip_sizes() {
        for m in 0..=10 {
            let p = generate_qtilde(4, m).unwrap();
            let mut c = [0usize; 5];
            for t in p.tips().unwrap() {
                c[t] += 1;
            }
            assert_eq!(c, [1, 1, m + 1, m + 1, (m + 1) * (m + 2) / 2], "m={m}");
        }
    }

    #[test]
    fn odd_tips_with_n_are_type_2a() {
        for m in 0..=8 {
            let p = generate_qtilde(4, m).unwrap();
            let n = p.n as u32;
            for (v, t) in p.vertices.iter().zip(p.tips().unwrap()) {
                if t % 2 == 1 && v.contains(n) {
                    assert!(is_type2a(&v.0, n), "{v}");
                }
                if t % 2 == 0 {
                    assert!(is_type1(&v.0) || is_type2b(&v.0), "{v}");
                }
            }
        }
    }

    #[test]
    fn specials() {
        let s = special_vertices(1);
        assert_eq!(s.alpha, [3, 4, 5, 6].into());
        assert_eq!(s.beta, [2, 4, 5, 6].into());
        assert_eq!(s.omega, [1, 3, 5, 6].into());
        assert_eq!(s.tau, [1, 3, 4, 5].into());
        assert_eq!(special_vertices(4).alpha, [6, 7, 8, 9].into());
        let s = special_vertices(0);
        assert_eq!(s.omega, [1, 2, 4, 5].into());
        assert_eq!(s.tau, [1, 2, 3, 4].into());
    }

    #[test]
    fn f_and_h_vectors() {
        let q1 = generate_qtilde(4, 1).unwrap();
        assert_eq!(f_vector(&q1).unwrap(), vec![9, 18, 15, 6]);
        assert_eq!(h_vector(&q1).unwrap(), vec![1, 2, 3, 2, 1]);
        let q0 = generate_qtilde(4, 0).unwrap();
        assert_eq!(h_vector(&q0).unwrap(), vec![1, 1, 1, 1, 1]);
        assert_eq!(generate_qtilde(4, 4).unwrap().len(), 27);
        for m in 0..=8 {
            let p = generate_qtilde(4, m).unwrap();
            let f = f_vector(&p).unwrap();
            assert_eq!(f, vec![p.len(), 2 * p.len(), p.len() + p.n, p.n]);
            assert_eq!(h_vector(&p).unwrap(), h_vector_qtilde(m));
        }
    }

    #[test]
    fn new_labels() {
        let a = new_vertex_label(&[3, 4, 5, 6].into(), &[2, 4, 5, 6].into(), 7).unwrap();
        assert_eq!(a, [4, 5, 6, 7].into());
        let w = new_vertex_label(&[2, 3, 4, 6].into(), &[2, 4, 5, 6].into(), 7).unwrap();
        assert_eq!(w, special_vertices(2).omega);
        assert!(new_vertex_label(&[1, 2, 3, 4].into(), &[1, 2, 5, 6].into(), 7).is_err());
    }

    #[test]
    fn faces() {
        let q1 = generate_qtilde(4, 1).unwrap();
        let facets = enumerate_faces(&q1, 3);
        assert_eq!(facets.len(), 6);
        assert_eq!(facets.iter().map(Vec::len).sum::<usize>(), 36);
        let two = faces_with_labels(&q1, 2);
        let r1: Vec<VertexLabel> = two[&vec![1, 5]].iter().map(|&i| q1.vertices[i].clone()).collect();
        let mut want: Vec<VertexLabel> =
            vec![[1, 3, 5, 6].into(), [1, 2, 5, 6].into(), [1, 3, 4, 5].into(), [1, 2, 4, 5].into()];
        want.sort();
        assert_eq!(r1, want);
        let simplex = generate_qtilde(4, 0).unwrap();
        assert_eq!(enumerate_faces(&simplex, 1).len(), 10);
    }

    #[test]
    fn isomorphism() {
        let c5 = generate_dual_cyclic(4, 5).unwrap();
        assert!(check_isomorphic(&generate_qtilde(4, 0).unwrap(), &c5).is_some());
        let q1 = generate_qtilde(4, 1).unwrap();
        let c6 = generate_dual_cyclic(4, 6).unwrap();
        let sigma = check_isomorphic(&q1, &c6).unwrap();
        let mut mapped: Vec<VertexLabel> = q1.vertices.iter().map(|v| permute_label(v, &sigma)).collect();
        mapped.sort();
        assert_eq!(mapped, c6.vertices);
        assert!(check_isomorphic(&generate_qtilde(4, 3).unwrap(), &generate_dual_cyclic(4, 8).unwrap()).is_none());
        assert!(check_isomorphic(&q1, &q1).is_some());
    }
}
