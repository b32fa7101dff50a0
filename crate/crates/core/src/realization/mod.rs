//! Inductive exact realization of `Q_m`.
//!
//! Each step positions `Q_m` so that a single hyperplane cut produces the
//! combinatorics of `Q̃_{m+1}`, sorts the result with a pencil of
//! hyperplanes and sends that pencil to parallel level sets of `x4` by a
//! projective map. Every stage re-verifies its predicates exactly.

mod certificate;
mod conditions;
mod cut;
mod pencil;
mod position;
mod snap;

use std::collections::HashMap;

use log::{debug, info};
use thiserror::Error;

use crate::combinatorics::{
    generate_qtilde, special_vertices, tip_of, v1_label, CombinatorialError, CombinatorialPolytope, VertexLabel,
};
use crate::geometry::{frac, int, shear, GeometryError, Hyperplane, Rational, Vec4};
use crate::hamilton::{build_path_labels, HamiltonError, HamiltonPath};

pub use certificate::{certify, enumerate_vertices, recover_facets, Certificate};
pub use conditions::{check_conditions_m, MReport};
pub use cut::{choose_cut, cut, CutParams, Schedule};
pub use pencil::{build_pencil, projective_normalize, Pencil};
pub use position::{cone_direction, position};
use snap::snap_facets;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizationError {
    #[error("step {step}: positioning failed ({condition})")]
    PositioningFailure { step: usize, condition: String },
    #[error("step {step}: cut schedule exhausted after {tries} attempts (last failure: {last})")]
    CutFailure { step: usize, tries: usize, last: String },
    #[error("pencil failure: {0}")]
    PencilFailure(String),
    #[error("cut produced labels that differ from the generator")]
    CombinatorialMismatch,
    #[error("realization bug: {0}")]
    RealizationBug(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Combinatorial(#[from] CombinatorialError),
    #[error(transparent)]
    Hamilton(#[from] HamiltonError),
}

impl RealizationError {
    /// True when a bounded parameter search ran out rather than a check failing.
    pub fn is_schedule_exhausted(&self) -> bool {
        matches!(self, RealizationError::PositioningFailure { .. } | RealizationError::CutFailure { .. })
    }
}

/// Exact coordinates for `Q̃_m` together with its monotone path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizedPolytope {
    pub m: usize,
    pub combinatorics: CombinatorialPolytope,
    /// Aligned with `combinatorics.vertices`.
    pub coords: Vec<Vec4>,
    /// Facet `f` is `facets[f - 1]`, positive on the interior.
    pub facets: Vec<Hyperplane>,
    pub path: HamiltonPath,
    pub certificate: Option<Certificate>,
}

impl RealizedPolytope {
    pub fn coord(&self, label: &VertexLabel) -> &Vec4 {
        &self.coords[self.combinatorics.index_of(label).expect("label of this polytope")]
    }

    pub fn max_bits(&self) -> u64 {
        self.coords.iter().map(Vec4::max_bits).max().unwrap_or(0)
    }

    /// `x4` values along the path.
    pub fn heights(&self) -> Vec<Rational> {
        self.path.order.iter().map(|&i| self.coords[i][3].clone()).collect()
    }
}

/// Everything about `Q̃_m` that the geometric stages look up repeatedly.
#[derive(Clone, Debug)]
pub(crate) struct Stage {
    pub m: usize,
    pub n: usize,
    pub comb: CombinatorialPolytope,
    pub tips: Vec<usize>,
    /// Path as vertex indices.
    pub path: Vec<usize>,
    pub alpha: usize,
    pub beta: usize,
    pub omega: usize,
    pub tau: usize,
    pub v1: usize,
}

impl Stage {
    pub fn new(m: usize, path_labels: &[VertexLabel]) -> Result<Self, RealizationError> {
        let comb = generate_qtilde(4, m)?;
        let n = comb.n;
        let tips = comb.vertices.iter().map(|v| tip_of(v, 4, n)).collect::<Result<Vec<_>, _>>()?;
        let idx = |l: &VertexLabel| {
            comb.index_of(l).ok_or_else(|| RealizationError::RealizationBug(format!("missing vertex {l}")))
        };
        let path = path_labels.iter().map(idx).collect::<Result<Vec<_>, _>>()?;
        let sp = special_vertices(m);
        Ok(Stage {
            m,
            n,
            alpha: idx(&sp.alpha)?,
            beta: idx(&sp.beta)?,
            omega: idx(&sp.omega)?,
            tau: idx(&sp.tau)?,
            v1: idx(&v1_label(m))?,
            comb,
            tips,
            path,
        })
    }

    pub fn is_odd(&self, v: usize) -> bool {
        self.tips[v] % 2 == 1
    }

    pub fn on_facet(&self, v: usize, f: usize) -> bool {
        self.comb.vertices[v].contains(f as u32)
    }

    /// Vertices of `F^2`, the 2-face `{n − 1, n}`.
    pub fn f2(&self) -> Vec<usize> {
        (0..self.comb.len()).filter(|&v| self.on_facet(v, self.n) && self.on_facet(v, self.n - 1)).collect()
    }

    pub fn path_increasing(&self, coords: &[Vec4]) -> bool {
        self.path.windows(2).all(|w| coords[w[0]][3] < coords[w[1]][3])
    }
}

/// The plane of facet `label`, oriented positive on the other vertices.
pub(crate) fn facet_plane(
    comb: &CombinatorialPolytope,
    coords: &[Vec4],
    label: usize,
) -> Result<Hyperplane, RealizationError> {
    let bug = |why: String| RealizationError::RealizationBug(why);
    let on: Vec<Vec4> = (0..comb.len())
        .filter(|&v| comb.vertices[v].contains(label as u32))
        .map(|v| coords[v].clone())
        .collect();
    let mut h = crate::geometry::hyperplane_through(&on).map_err(|_| bug(format!("facet {label} is not a 3-flat")))?;
    let other = (0..comb.len())
        .find(|&v| !comb.vertices[v].contains(label as u32))
        .ok_or_else(|| bug(format!("facet {label} contains every vertex")))?;
    if h.eval(&coords[other]) < int(0) {
        h = h.flipped();
    }
    for (v, lab) in comb.vertices.iter().enumerate() {
        let s = h.eval(&coords[v]);
        let ok = if lab.contains(label as u32) { s == int(0) } else { s > int(0) };
        if !ok {
            return Err(bug(format!("vertex {lab} on the wrong side of facet {label}")));
        }
    }
    Ok(h)
}

/// The starting simplex with its labels, before positioning.
pub fn base_coordinates() -> Vec<(VertexLabel, Vec4)> {
    vec![
        ([2, 3, 4, 5].into(), Vec4::new(int(0), int(0), int(-3), int(-2))),
        ([1, 2, 3, 5].into(), Vec4::new(int(0), int(1), int(-1), frac(-1, 2))),
        ([1, 2, 3, 4].into(), Vec4::new(int(1), int(0), int(3), int(0))),
        ([1, 3, 4, 5].into(), Vec4::new(int(0), int(0), int(2), frac(1, 4))),
        ([1, 2, 4, 5].into(), Vec4::new(int(0), int(0), int(1), int(2))),
    ]
}

fn assemble(stage: &Stage, coords: Vec<Vec4>) -> Result<RealizedPolytope, RealizationError> {
    let facets = (1..=stage.n).map(|f| facet_plane(&stage.comb, &coords, f)).collect::<Result<Vec<_>, _>>()?;
    Ok(RealizedPolytope {
        m: stage.m,
        combinatorics: stage.comb.clone(),
        coords,
        facets,
        path: HamiltonPath { order: stage.path.clone() },
        certificate: None,
    })
}

fn from_labelled(stage: &Stage, pts: Vec<(VertexLabel, Vec4)>) -> Result<Vec<Vec4>, RealizationError> {
    let map: HashMap<VertexLabel, Vec4> = pts.into_iter().collect();
    stage
        .comb
        .vertices
        .iter()
        .map(|l| map.get(l).cloned().ok_or(RealizationError::CombinatorialMismatch))
        .collect()
}

/// The starting simplex after positioning, so that (M1)–(M6) hold.
pub fn base_simplex() -> Result<RealizedPolytope, RealizationError> {
    let paths = [build_path_labels(0)?, build_path_labels(1)?];
    let stage = Stage::new(0, &paths[0])?;
    let raw = from_labelled(&stage, base_coordinates())?;
    let placed = position::position_stage(&stage, &raw, &paths[1])?;
    assemble(&stage, placed)
}

#[derive(Clone, Debug)]
pub struct RealizeOptions {
    pub schedule: Schedule,
    /// Bound on cut and pencil attempts per inductive step.
    pub max_retries: usize,
    /// Round facet planes to short dyadic rationals after each step when that re-verifies.
    pub snap: bool,
    pub holt_klee: bool,
    pub certify: bool,
}

impl Default for RealizeOptions {
    fn default() -> Self {
        RealizeOptions { schedule: Schedule::default(), max_retries: 10_000, snap: true, holt_klee: false, certify: true }
    }
}

/// Record of one inductive step.
#[derive(Clone, Debug)]
pub struct StepRecord {
    pub m: usize,
    pub params: CutParams,
    pub pencil: Pencil,
    pub attempts: usize,
    pub bits_before_snap: u64,
    pub snap_precision: Option<u32>,
    pub bits: u64,
}

/// Realizes `Q_0, …, Q_m`, handing each to `visit` as soon as it is finished.
pub fn realize_each(
    m: usize,
    opts: &RealizeOptions,
    mut visit: impl FnMut(&RealizedPolytope, Option<&StepRecord>),
) -> Result<RealizedPolytope, RealizationError> {
    let mut paths = vec![build_path_labels(0)?];
    let mut stage = Stage::new(0, &paths[0])?;
    let mut coords = from_labelled(&stage, base_coordinates())?;
    let mut record: Option<StepRecord> = None;
    for k in 0..=m {
        paths.push(build_path_labels(k + 1)?);
        let placed = if k == 0 || k < m {
            Some(position::position_stage(&stage, &coords, &paths[k + 1])?)
        } else {
            None
        };
        if k == 0 {
            coords = placed.clone().unwrap();
        }
        let mut rp = assemble(&stage, coords)?;
        if opts.certify {
            rp.certificate = Some(certify(&rp, opts.holt_klee)?);
        }
        visit(&rp, record.as_ref());
        if k == m {
            return Ok(rp);
        }
        let next = Stage::new(k + 1, &paths[k + 1])?;
        let (new_coords, rec) = step(&stage, &next, placed.as_ref().unwrap(), opts)?;
        info!(
            "step {} -> {}: a={} eps={} delta={} eps1={} eps3={} attempts={} bits {} -> {}",
            k,
            k + 1,
            rec.params.a,
            rec.params.eps,
            rec.params.delta,
            rec.pencil.eps1,
            rec.pencil.eps3,
            rec.attempts,
            rec.bits_before_snap,
            rec.bits
        );
        coords = new_coords;
        stage = next;
        record = Some(rec);
    }
    unreachable!()
}

pub fn realize(m: usize, opts: &RealizeOptions) -> Result<RealizedPolytope, RealizationError> {
    realize_each(m, opts, |_, _| {})
}

/// `Q_m` in the frame where the next step builds its pencil (positioned, then sheared), together
/// with the pencil center `O` embedded as `(0, 0, O_3, O_4)`.
pub fn realize_sweep_frame(m: usize, opts: &RealizeOptions) -> Result<(RealizedPolytope, Vec4), RealizationError> {
    let q = realize(m, &RealizeOptions { certify: false, ..opts.clone() })?;
    let labels = build_path_labels(m + 1)?;
    let stage = Stage::new(m, &build_path_labels(m)?)?;
    let next = Stage::new(m + 1, &labels)?;
    let placed = if m == 0 { q.coords.clone() } else { position::position_stage(&stage, &q.coords, &labels)? };
    let (_, rec) = step(&stage, &next, &placed, opts)?;
    let sh = shear(3, 1, rec.params.a.clone())?;
    let mut rp = assemble(&stage, placed.iter().map(|x| sh.apply(x)).collect())?;
    if opts.certify {
        rp.certificate = Some(certify(&rp, opts.holt_klee)?);
    }
    let (o3, o4) = rec.pencil.o;
    Ok((rp, Vec4([int(0), int(0), o3, o4])))
}

/// One inductive step from positioned coordinates of `Q_m` to coordinates of `Q_{m+1}`.
fn step(
    stage: &Stage,
    next: &Stage,
    placed: &[Vec4],
    opts: &RealizeOptions,
) -> Result<(Vec<Vec4>, StepRecord), RealizationError> {
    let report = conditions::check_stage(stage, placed);
    if !report.all() {
        return Err(RealizationError::PositioningFailure { step: stage.m, condition: report.first_failure() });
    }
    let (params, cut_coords, pencil, attempts) = cut::choose_cut_stage(stage, next, placed, opts)?;
    let normalized = projective_normalize(&cut_coords, &pencil)?;
    if !next.path_increasing(&normalized) {
        return Err(RealizationError::RealizationBug("normalized heights not increasing".into()));
    }
    let bits_before_snap = normalized.iter().map(Vec4::max_bits).max().unwrap_or(0);
    let (coords, snap_precision) = if opts.snap {
        match snap_facets(next, &normalized) {
            Some((c, k)) => (c, Some(k)),
            None => (normalized, None),
        }
    } else {
        (normalized, None)
    };
    let bits = coords.iter().map(Vec4::max_bits).max().unwrap_or(0);
    debug!("step {}: snapped to 2^-{:?}", stage.m, snap_precision);
    Ok((coords, StepRecord { m: stage.m, params, pencil, attempts, bits_before_snap, snap_precision, bits }))
}

/// Rebuilds a realized polytope from labels and coordinates alone.
pub fn from_coordinates(labels: Vec<VertexLabel>, coords: Vec<Vec4>) -> Result<RealizedPolytope, RealizationError> {
    if labels.len() != coords.len() || labels.is_empty() {
        return Err(RealizationError::Precondition("labels and coordinates differ in length".into()));
    }
    let n = labels.iter().flat_map(|l| l.0.iter().copied()).max().unwrap_or(0) as usize;
    if n < 5 {
        return Err(RealizationError::Precondition("need at least five facets".into()));
    }
    let m = n - 5;
    let stage = Stage::new(m, &build_path_labels(m)?)?;
    let pts: Vec<(VertexLabel, Vec4)> = labels.into_iter().zip(coords).collect();
    if pts.len() != stage.comb.len() {
        return Err(RealizationError::CombinatorialMismatch);
    }
    let coords = from_labelled(&stage, pts)?;
    assemble(&stage, coords)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_columns() {
        let cols = base_coordinates();
        assert_eq!(cols[0].1, Vec4::from_ints([0, 0, -3, -2]));
        let x4: Vec<Rational> = cols.iter().map(|c| c.1[3].clone()).collect();
        assert_eq!(x4, vec![int(-2), frac(-1, 2), int(0), frac(1, 4), int(2)]);
        // row 3 separates the odd columns from the even ones
        assert!(cols[..2].iter().all(|c| c.1[2] < int(0)));
        assert!(cols[2..].iter().all(|c| c.1[2] > int(0)));
    }

    #[test]
    fn raw_base_fails_m4_only_through_f2() {
        let paths = build_path_labels(0).unwrap();
        let stage = Stage::new(0, &paths).unwrap();
        let raw = from_labelled(&stage, base_coordinates()).unwrap();
        let r = conditions::check_stage(&stage, &raw);
        assert!(r.m1 && r.m6);
        assert!(!r.m4);
    }

    #[test]
    fn base_simplex_is_positioned() {
        let q = base_simplex().unwrap();
        let paths = build_path_labels(0).unwrap();
        let stage = Stage::new(0, &paths).unwrap();
        let r = conditions::check_stage(&stage, &q.coords);
        assert!(r.all(), "{r:?}");
        assert_eq!(q.facets.len(), 5);
    }

    #[test]
    fn translated_copy_breaks_m4() {
        let q = base_simplex().unwrap();
        let paths = build_path_labels(0).unwrap();
        let stage = Stage::new(0, &paths).unwrap();
        let moved: Vec<Vec4> = q.coords.iter().map(|x| x + &Vec4::from_ints([0, 1, 0, 0])).collect();
        let r = conditions::check_stage(&stage, &moved);
        assert!(!r.m4);
        assert!(r.m1);
    }

    #[test]
    fn small_chain() {
        let opts = RealizeOptions::default();
        let q = realize(2, &opts).unwrap();
        assert_eq!(q.coords.len(), 14);
        assert!(q.certificate.as_ref().unwrap().all_ok());
    }
}
