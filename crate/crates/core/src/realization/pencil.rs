//! The sorting pencil around the axis `π⁻¹(O)` and the projective map that
//! turns it into the level sets of `x4`.

use num_traits::{Signed, Zero};

use super::{RealizationError, RealizedPolytope};
use crate::combinatorics::special_vertices;
use crate::geometry::{apply_projective, int, ProjectiveMap, Rational, Vec4};

type P2 = (Rational, Rational);

/// Sweep parameter `t(x) = u·(π(x) − O) / w·(π(x) − O)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pencil {
    pub o: P2,
    pub eps1: Rational,
    pub eps3: Rational,
    pub u: P2,
    pub w: P2,
}

impl Pencil {
    fn offset(&self, x: &Vec4) -> P2 {
        (&x[2] - &self.o.0, &x[3] - &self.o.1)
    }

    /// `w·(π(x) − O)`; zero exactly on the hyperplane sent to infinity.
    pub fn denominator(&self, x: &Vec4) -> Rational {
        let d = self.offset(x);
        &self.w.0 * &d.0 + &self.w.1 * &d.1
    }

    pub fn sweep(&self, x: &Vec4) -> Option<Rational> {
        let den = self.denominator(x);
        if den.is_zero() {
            return None;
        }
        let d = self.offset(x);
        Some((&self.u.0 * &d.0 + &self.u.1 * &d.1) / den)
    }
}

/// Checks (S1), uniform positive denominators, and (S2) strict sorting along `path`.
/// Returns the index of the first failing path position.
fn sorts(p: &Pencil, coords: &[Vec4], path: &[usize]) -> Result<(), usize> {
    let mut prev: Option<Rational> = None;
    for (i, &v) in path.iter().enumerate() {
        let x = &coords[v];
        if x[2] == p.o.0 && x[3] == p.o.1 {
            return Err(i);
        }
        let den = p.denominator(x);
        if !den.is_positive() {
            return Err(i);
        }
        let t = p.sweep(x).ok_or(i)?;
        if prev.as_ref().is_some_and(|q| *q >= t) {
            return Err(i);
        }
        prev = Some(t);
    }
    Ok(())
}

/// Pencil with `O = π(α) + ε1 (π(ω) − π(α)) − ε3 e3`, trying both signs of `u` and `w`.
pub(crate) fn build_pencil_raw(
    coords: &[Vec4],
    path: &[usize],
    alpha: usize,
    omega: usize,
    eps1: &Rational,
    eps3: &Rational,
) -> Result<Pencil, RealizationError> {
    let (a, w) = (&coords[alpha], &coords[omega]);
    let u = (&w[2] - &a[2], &w[3] - &a[3]);
    let o = (&a[2] + eps1 * &u.0 - eps3, &a[3] + eps1 * &u.1);
    let rot = (-&u.1, u.0.clone());
    let mut furthest = (0, 0);
    for sw in [1i64, -1] {
        for su in [1i64, -1] {
            let (sw, su) = (int(sw), int(su));
            let p = Pencil {
                o: o.clone(),
                eps1: eps1.clone(),
                eps3: eps3.clone(),
                u: (&su * &u.0, &su * &u.1),
                w: (&sw * &rot.0, &sw * &rot.1),
            };
            match sorts(&p, coords, path) {
                Ok(()) => return Ok(p),
                Err(i) => furthest = furthest.max((i, path[i])),
            }
        }
    }
    let (i, v) = furthest;
    Err(RealizationError::PencilFailure(format!(
        "path positions {} and {} out of order (vertex {})",
        i.saturating_sub(1),
        i,
        v
    )))
}

/// Builds and verifies the pencil for a cut polytope carrying its path.
pub fn build_pencil(q: &RealizedPolytope, eps1: &Rational, eps3: &Rational) -> Result<Pencil, RealizationError> {
    let sp = special_vertices(q.m);
    let alpha = q.combinatorics.index_of(&sp.alpha).unwrap();
    let omega = q.combinatorics.index_of(&sp.omega).unwrap();
    build_pencil_raw(&q.coords, &q.path.order, alpha, omega, eps1, eps3)
}

/// Applies `ψ(x) = x / (w̃·x − c_w)` and then the affine change that makes the sweep value the new `x4`.
pub fn projective_normalize(coords: &[Vec4], pencil: &Pencil) -> Result<Vec<Vec4>, RealizationError> {
    if coords.iter().any(|x| !pencil.denominator(x).is_positive()) {
        return Err(RealizationError::Precondition("pencil denominators change sign".into()));
    }
    // translate until the hyperplane at infinity misses the origin
    let mut shift = Vec4::zero();
    let mut o = pencil.o.clone();
    let axis = if pencil.w.1.is_zero() { 2 } else { 3 };
    let cw = |o: &P2| &pencil.w.0 * &o.0 + &pencil.w.1 * &o.1;
    while cw(&o).is_zero() {
        shift[axis] += int(1);
        if axis == 2 {
            o.0 += int(1);
        } else {
            o.1 += int(1);
        }
    }
    let (w, u) = (&pencil.w, &pencil.u);
    let c_w = cw(&o);
    let c_u = &u.0 * &o.0 + &u.1 * &o.1;
    let psi = ProjectiveMap::new(Vec4::new(int(0), int(0), w.0.clone(), w.1.clone()), c_w.clone());
    let r = &c_u / &c_w;
    let g3 = &u.0 - &r * &w.0;
    let g4 = &u.1 - &r * &w.1;
    coords
        .iter()
        .map(|x| {
            let y = apply_projective(&psi, &(x + &shift))?;
            let t = &g3 * &y[2] + &g4 * &y[3] + &r;
            Ok(if g4.is_zero() {
                Vec4::new(y[0].clone(), y[1].clone(), y[3].clone(), t)
            } else {
                Vec4::new(y[0].clone(), y[1].clone(), y[2].clone(), t)
            })
        })
        .collect()
}
