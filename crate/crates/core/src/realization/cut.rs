//! The cut by `H = {(0, −δ, 1, ε)·x = 0}` after the shear `x3 ← x3 + a·x1`.

use num_traits::{Signed, Zero};

use super::pencil::build_pencil_raw;
use super::{from_labelled, Pencil, RealizationError, RealizeOptions, RealizedPolytope, Stage};
use crate::combinatorics::{new_vertex_label, VertexLabel};
use crate::geometry::{int, pow2, segment_cut, shear, GeometryError, Hyperplane, Rational, Vec4};
use crate::hamilton::build_path_labels;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutParams {
    pub a: Rational,
    pub eps: Rational,
    pub delta: Rational,
}

impl CutParams {
    pub fn hyperplane(&self) -> Hyperplane {
        Hyperplane::new(Vec4::new(int(0), -self.delta.clone(), int(1), self.eps.clone()), int(0))
    }
}

/// Exponents of the deterministic parameter grid, tried in lexicographic order.
///
/// `a = 2^a`, `ε = 2^-eps`, `δ = ε·2^-delta`, `ε1 = 2^-eps1`, `ε3 = 2^-eps3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schedule {
    pub a: Vec<u32>,
    pub eps: Vec<u32>,
    pub delta: Vec<u32>,
    pub eps1: Vec<u32>,
    pub eps3: Vec<u32>,
}

impl Default for Schedule {
    fn default() -> Self {
        Schedule {
            a: vec![4, 8, 12, 16, 24, 32],
            eps: vec![2, 4, 6, 8, 10],
            delta: vec![1, 3, 6, 10, 14],
            eps1: vec![1, 3, 6, 10],
            eps3: vec![3, 6, 10, 14, 20, 28, 32],
        }
    }
}

impl Schedule {
    pub fn cut_params(&self) -> impl Iterator<Item = CutParams> + '_ {
        self.a.iter().flat_map(move |&ka| {
            self.eps.iter().flat_map(move |&ke| {
                self.delta.iter().map(move |&kd| CutParams {
                    a: pow2(ka as i32),
                    eps: pow2(-(ke as i32)),
                    delta: pow2(-((ke + kd) as i32)),
                })
            })
        })
    }

    pub fn pencil_params(&self) -> impl Iterator<Item = (Rational, Rational)> + '_ {
        self.eps1
            .iter()
            .flat_map(move |&k1| self.eps3.iter().map(move |&k3| (pow2(-(k1 as i32)), pow2(-(k3 as i32)))))
    }
}

/// Keeps the positive side of `h` and adds one vertex per crossing edge.
pub(crate) fn cut_labelled(
    stage: &Stage,
    coords: &[Vec4],
    h: &Hyperplane,
    new_facet: u32,
) -> Result<Vec<(VertexLabel, Vec4)>, RealizationError> {
    let vals: Vec<Rational> = coords.iter().map(|x| h.eval(x)).collect();
    if vals.iter().any(Zero::is_zero) {
        return Err(GeometryError::NonGenericCut.into());
    }
    let mut out: Vec<(VertexLabel, Vec4)> = (0..coords.len())
        .filter(|&v| vals[v].is_positive())
        .map(|v| (stage.comb.vertices[v].clone(), coords[v].clone()))
        .collect();
    for &(u, w) in &stage.comb.edges {
        if vals[u].is_positive() != vals[w].is_positive() {
            let p = segment_cut(&coords[u], &coords[w], h)?;
            out.push((new_vertex_label(&stage.comb.vertices[u], &stage.comb.vertices[w], new_facet)?, p));
        }
    }
    Ok(out)
}

/// Cuts a realized `Q_m` by `h`, which must produce the combinatorics of `Q̃_{m+1}`.
pub fn cut(q: &RealizedPolytope, h: &Hyperplane) -> Result<RealizedPolytope, RealizationError> {
    let stage = Stage::new(q.m, &build_path_labels(q.m)?)?;
    let next = Stage::new(q.m + 1, &build_path_labels(q.m + 1)?)?;
    let pts = cut_labelled(&stage, &q.coords, h, next.n as u32)?;
    if pts.len() != next.comb.len() {
        return Err(RealizationError::CombinatorialMismatch);
    }
    let coords = from_labelled(&next, pts)?;
    super::assemble(&next, coords)
}

/// Separation and genericity of `h` on the sheared coordinates.
fn separates(stage: &Stage, coords: &[Vec4], h: &Hyperplane) -> Result<(), &'static str> {
    for (v, x) in coords.iter().enumerate() {
        let s = h.eval(x);
        if s.is_zero() {
            return Err("genericity");
        }
        if s.is_positive() == stage.is_odd(v) {
            return Err("separation");
        }
    }
    Ok(())
}

/// Searches the schedule for a cut whose result admits a sorting pencil.
pub fn choose_cut(
    q: &RealizedPolytope,
    opts: &RealizeOptions,
) -> Result<(CutParams, RealizedPolytope, Pencil), RealizationError> {
    let stage = Stage::new(q.m, &build_path_labels(q.m)?)?;
    let next = Stage::new(q.m + 1, &build_path_labels(q.m + 1)?)?;
    let (params, coords, pencil, _) = choose_cut_stage(&stage, &next, &q.coords, opts)?;
    Ok((params, super::assemble(&next, coords)?, pencil))
}

pub(crate) fn choose_cut_stage(
    stage: &Stage,
    next: &Stage,
    placed: &[Vec4],
    opts: &RealizeOptions,
) -> Result<(CutParams, Vec<Vec4>, Pencil, usize), RealizationError> {
    let mut tries = 0;
    let mut last = String::from("none");
    for params in opts.schedule.cut_params() {
        if tries >= opts.max_retries {
            break;
        }
        tries += 1;
        let sh = shear(3, 1, params.a.clone())?;
        let sheared: Vec<Vec4> = placed.iter().map(|x| sh.apply(x)).collect();
        let h = params.hyperplane();
        if let Err(why) = separates(stage, &sheared, &h) {
            last = why.into();
            continue;
        }
        let pts = cut_labelled(stage, &sheared, &h, next.n as u32)?;
        let coords = match (pts.len() == next.comb.len()).then(|| from_labelled(next, pts)) {
            Some(Ok(c)) => c,
            _ => {
                last = "combinatorics".into();
                continue;
            }
        };
        for (e1, e3) in opts.schedule.pencil_params() {
            if tries >= opts.max_retries {
                last = "retry limit reached before a pencil sorted the vertices".into();
                break;
            }
            tries += 1;
            match build_pencil_raw(&coords, &next.path, next.alpha, next.omega, &e1, &e3) {
                Ok(p) => return Ok((params, coords, p, tries)),
                Err(e) => last = e.to_string(),
            }
        }
    }
    Err(RealizationError::CutFailure { step: stage.m, tries, last })
}
