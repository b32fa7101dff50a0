//! Affine positioning of `Q_m` before the cut.
//!
//! The new coordinates are built from facet functionals:
//! `x1` is the functional of facet `n`, `x3` is a combination of the
//! functional of facet `n − 1` with an affine function vanishing on the
//! intended cut line inside `F^2`, and `x4` is kept up to translation.
//! `x2` is chosen from an open cone of directions for which the centrally
//! projected odd chain and the slice through `F^2` are ordered the way the
//! later pencil sweep needs them.

use std::collections::HashMap;

use num_traits::{Signed, Zero};

use super::{facet_plane, RealizationError, RealizedPolytope, Stage};
use crate::combinatorics::{new_vertex_label, tip_of, VertexLabel};
use crate::geometry::{int, rank4, solve4, solve_linear, AffineMap, Rational, Vec4};
use crate::hamilton::build_path_labels;

const MAX_DOUBLINGS: usize = 400;

type P2 = (Rational, Rational);

fn dot2(a: &P2, b: &P2) -> Rational {
    &a.0 * &b.0 + &a.1 * &b.1
}

fn l1(a: &P2) -> Rational {
    a.0.abs() + a.1.abs()
}

/// A direction `φ` with `φ·c > 0` for every constraint `c`, chosen to maximise
/// the smallest normalised margin among boundary rays and their pairwise sums.
pub fn cone_direction(cons: &[P2]) -> Option<P2> {
    let zero = int(0);
    let mut rays = Vec::new();
    for c in cons {
        rays.push((-&c.1, c.0.clone()));
        rays.push((c.1.clone(), -&c.0));
    }
    rays.retain(|r| cons.iter().all(|c| dot2(r, c) >= zero));
    let mut cands = rays.clone();
    for i in 0..rays.len() {
        for j in i + 1..rays.len() {
            let (a, b) = (&rays[i], &rays[j]);
            let (la, lb) = (l1(a), l1(b));
            if la.is_zero() || lb.is_zero() {
                continue;
            }
            cands.push((&a.0 / &la + &b.0 / &lb, &a.1 / &la + &b.1 / &lb));
        }
    }
    let mut best: Option<(Rational, P2)> = None;
    for d in cands {
        if d.0.is_zero() && d.1.is_zero() {
            continue;
        }
        let ld = l1(&d);
        let marg = cons
            .iter()
            .map(|c| {
                let lc = l1(c);
                if lc.is_zero() {
                    int(0)
                } else {
                    dot2(&d, c) / (lc * &ld)
                }
            })
            .min()?;
        if marg > zero && best.as_ref().is_none_or(|(b, _)| marg > *b) {
            best = Some((marg, d));
        }
    }
    best.map(|(_, d)| d)
}

fn fail(stage: &Stage, condition: &str) -> RealizationError {
    RealizationError::PositioningFailure { step: stage.m, condition: condition.into() }
}

/// Positions a realized `Q_m` so that (M1)–(M6) hold.
pub fn position(q: &RealizedPolytope) -> Result<RealizedPolytope, RealizationError> {
    let stage = Stage::new(q.m, &build_path_labels(q.m)?)?;
    let next_path = build_path_labels(q.m + 1)?;
    let coords = position_stage(&stage, &q.coords, &next_path)?;
    super::assemble(&stage, coords)
}

/// Tries both orientations of the `x2` functional and returns the first that passes every check.
pub(crate) fn position_stage(
    stage: &Stage,
    coords: &[Vec4],
    next_path: &[VertexLabel],
) -> Result<Vec<Vec4>, RealizationError> {
    let mut last = fail(stage, "no orientation tried");
    for s in [1i64, -1] {
        match position_with(stage, coords, next_path, &int(s)) {
            Ok(p) => {
                let r = super::conditions::check_stage(stage, &p);
                if r.all() {
                    return Ok(p);
                }
                last = fail(stage, &r.first_failure());
            }
            Err(e) => last = e,
        }
    }
    Err(last)
}

fn position_with(
    stage: &Stage,
    coords: &[Vec4],
    next_path: &[VertexLabel],
    s_sign: &Rational,
) -> Result<Vec<Vec4>, RealizationError> {
    let n = stage.n;
    let nv = stage.comb.len();
    let t4 = coords[stage.tau][3].clone();
    let v: Vec<Vec4> = coords
        .iter()
        .map(|x| {
            let mut y = x.clone();
            y[3] -= &t4;
            y
        })
        .collect();
    let (a, b, w) = (&v[stage.alpha], &v[stage.beta], &v[stage.omega]);
    if a[3] == b[3] || a[3] == w[3] {
        return Err(fail(stage, "M1"));
    }
    let p0 = a.lerp(b, &(-&a[3] / (&b[3] - &a[3])));
    let r = a.lerp(w, &((&w[3] / int(2) - &a[3]) / (&w[3] - &a[3])));

    let f1 = facet_plane(&stage.comb, &v, n)?;
    let h = facet_plane(&stage.comb, &v, n - 1)?.flipped();

    // g vanishes on p0 and r and takes the value -1 at α
    let mut rows = vec![&r - &p0, a - &p0];
    for k in 0..4 {
        if rows.len() == 4 {
            break;
        }
        let mut trial = rows.clone();
        trial.push(Vec4::unit(k));
        if rank4(&trial) > rows.len() {
            rows = trial;
        }
    }
    let rows: [Vec4; 4] = rows.try_into().map_err(|_| fail(stage, "degenerate F^2"))?;
    let g = solve4(&rows, &[int(0), int(-1), int(0), int(0)])?;
    let g0 = g.dot(&p0);

    let odd: Vec<usize> = (0..nv).filter(|&x| stage.is_odd(x)).collect();
    let even_f2: Vec<usize> = (0..nv).filter(|&x| matches!(stage.tips[x], 0 | 2)).collect();
    let ell3 = |x: &Vec4, lam: &Rational| g.dot(x) - &g0 + lam * h.eval(x);
    let crossings = |lam: &Rational| {
        let mut pts = Vec::new();
        for &u in &odd {
            for &e in &even_f2 {
                if stage.comb.are_adjacent(u, e) {
                    let (au, ae) = (ell3(&v[u], lam), ell3(&v[e], lam));
                    let mu = &au / (&au - &ae);
                    pts.push((v[u].lerp(&v[e], &mu), u, e));
                }
            }
        }
        pts
    };

    let mut lam = int(1);
    let mut found = false;
    for _ in 0..MAX_DOUBLINGS {
        let signs = odd.iter().all(|&x| ell3(&v[x], &lam).is_negative())
            && even_f2.iter().all(|&x| ell3(&v[x], &lam).is_positive());
        if signs {
            let mut pts = crossings(&lam);
            pts.sort_by(|p, q| p.0[3].cmp(&q.0[3]));
            if pts.len() >= 2 && pts[0].1 == stage.alpha && pts[0].2 == stage.beta && pts[0].0[3] < pts[1].0[3] {
                found = true;
                break;
            }
        }
        lam *= int(2);
    }
    if !found {
        return Err(fail(stage, "M6"));
    }

    // zeroth-order slice of the next F^2, and the odd chain below it
    let mut slice: HashMap<VertexLabel, Vec4> = HashMap::new();
    for (p, u, e) in crossings(&lam) {
        let l = new_vertex_label(&stage.comb.vertices[u], &stage.comb.vertices[e], n as u32 + 1)?;
        slice.insert(l, p);
    }
    let upper: Vec<&Vec4> = next_path
        .iter()
        .filter(|l| matches!(tip_of(l, 4, n + 1), Ok(0 | 2)))
        .filter_map(|l| slice.get(l))
        .collect();
    let lower: Vec<&Vec4> = stage.path.iter().filter(|&&x| stage.is_odd(x)).map(|&x| &v[x]).collect();
    if upper.len() < 2 || lower.is_empty() {
        return Err(fail(stage, "slice"));
    }

    // basis of the horizontal directions inside F^3
    let mut basis: Vec<Vec4> = Vec::new();
    'outer: for k in 0..3 {
        for j in 0..3 {
            if j == k {
                continue;
            }
            let rows = [f1.normal.clone(), Vec4::unit(3), Vec4::unit(k), Vec4::unit(j)];
            if let Ok(x) = solve4(&rows, &[int(0), int(0), int(1), int(0)]) {
                let mut trial = basis.clone();
                trial.push(x);
                if rank4(&trial) > basis.len() {
                    basis = trial;
                    if basis.len() == 2 {
                        break 'outer;
                    }
                }
            }
        }
    }
    if basis.len() != 2 {
        return Err(fail(stage, "horizontal basis"));
    }
    let (b1, b2) = (&basis[0], &basis[1]);
    let vdir = (b - a).scale(&(&b[3] - &a[3]).recip());
    let coords2 = |y: &Vec4| -> Option<P2> {
        for i in 0..4 {
            for j in i + 1..4 {
                let m = vec![vec![b1[i].clone(), b2[i].clone()], vec![b1[j].clone(), b2[j].clone()]];
                if let Ok(s) = solve_linear(&m, &[y[i].clone(), y[j].clone()]) {
                    return Some((s[0].clone(), s[1].clone()));
                }
            }
        }
        None
    };
    let project = |z: &Vec4, up: bool| -> Option<P2> {
        let dz = z - &p0;
        let hgt = dz[3].abs();
        if hgt.is_zero() {
            return None;
        }
        let yy = dz.scale(&hgt.recip());
        let yy = if up { &yy - &vdir } else { &yy + &vdir };
        if !yy[3].is_zero() {
            return None;
        }
        coords2(&yy)
    };
    let ylow: Vec<P2> = lower.iter().map(|z| project(z, false)).collect::<Option<_>>().ok_or_else(|| fail(stage, "odd chain height"))?;
    let yup: Vec<P2> = upper.iter().map(|z| project(z, true)).collect::<Option<_>>().ok_or_else(|| fail(stage, "slice height"))?;
    let diff = |p: &P2, q: &P2| (&p.0 - &q.0, &p.1 - &q.1);
    let mut cons: Vec<P2> = ylow.windows(2).map(|w| diff(&w[1], &w[0])).collect();
    cons.extend(yup.windows(2).map(|w| diff(&w[0], &w[1])));
    let (l0, ul) = (&ylow[0], yup.last().unwrap());
    cons.push((&l0.0 + &ul.0, &l0.1 + &ul.1));
    let phi2 = cone_direction(&cons).ok_or_else(|| fail(stage, "empty direction cone"))?;
    let phi = solve4(&[b1.clone(), b2.clone(), vdir.clone(), f1.normal.clone()], &[phi2.0, phi2.1, int(0), int(0)])?;

    let f2 = stage.f2();
    let phi_a = phi.dot(a);
    let x2 = |x: &Vec4, mu: &Rational| s_sign * (phi.dot(x) - &phi_a) + mu * (&x[3] - &a[3]);
    let mut mu = int(-1);
    let mut found = false;
    for _ in 0..MAX_DOUBLINGS {
        if f2.iter().filter(|&&x| x != stage.alpha).all(|&x| x2(&v[x], &mu).is_negative())
            && x2(&v[stage.beta], &mu) < x2(&v[stage.v1], &mu)
        {
            found = true;
            break;
        }
        mu *= int(2);
    }
    if !found {
        return Err(fail(stage, "M4"));
    }

    let mut row2 = phi.scale(s_sign);
    row2[3] += &mu;
    let off2 = -(s_sign * &phi_a) - &mu * &a[3];
    let row3 = &g + &h.normal.scale(&lam);
    let off3 = -&g0 - &lam * &h.offset;
    let map = AffineMap::from_rows(
        [f1.normal.clone(), row2, row3, Vec4::unit(3)],
        Vec4::new(-f1.offset.clone(), off2, off3, int(0)),
    );
    let mut out: Vec<Vec4> = v.iter().map(|x| map.apply(x)).collect();

    // shear x3 += κ x1 until the T^4 vertices are above {x3 = 0}
    let t4: Vec<usize> = (0..nv).filter(|&x| stage.tips[x] == 4).collect();
    let mut kappa = int(0);
    let mut found = false;
    for _ in 0..MAX_DOUBLINGS {
        if t4.iter().all(|&x| (&out[x][2] + &kappa * &out[x][0]).is_positive()) {
            found = true;
            break;
        }
        kappa = if kappa.is_zero() { int(1) } else { kappa * int(2) };
    }
    if !found {
        return Err(fail(stage, "M6"));
    }
    for x in &mut out {
        let add = &kappa * &x[0];
        x[2] += add;
    }
    Ok(out)
}
