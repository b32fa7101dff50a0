//! Exact rational linear algebra in dimension four.
//!
//! Everything here works on [`Rational`] values, so every comparison is an
//! exact sign test.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Arbitrary precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("linear system is singular")]
    Singular,
    #[error("segment does not cross the hyperplane strictly")]
    NonGenericCut,
    #[error("point is mapped to infinity")]
    PointAtInfinity,
    #[error("invalid shear axes ({0}, {1})")]
    InvalidShear(usize, usize),
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// `2^e` for any integer exponent.
pub fn pow2(e: i32) -> Rational {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let t = s.trim();
    let r = Rational::from_str(t).map_err(|e| format!("bad rational {t:?}: {e}"))?;
    Ok(r)
}

/// Larger of the numerator and denominator bit lengths.
pub fn bit_size(r: &Rational) -> u64 {
    r.numer().bits().max(r.denom().bits())
}

/// Serde adapter writing rationals as `"p/q"` strings.
pub mod rational_str {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// A point or direction in R^4. Index 0 is x1.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Vec4(pub [Rational; 4]);

impl Vec4 {
    pub fn new(x1: Rational, x2: Rational, x3: Rational, x4: Rational) -> Self {
        Vec4([x1, x2, x3, x4])
    }

    pub fn from_ints(v: [i64; 4]) -> Self {
        Vec4(v.map(int))
    }

    pub fn zero() -> Self {
        Vec4::default()
    }

    pub fn unit(i: usize) -> Self {
        let mut v = Vec4::zero();
        v.0[i] = Rational::one();
        v
    }

    pub fn dot(&self, o: &Vec4) -> Rational {
        let mut s = Rational::zero();
        for i in 0..4 {
            if !self.0[i].is_zero() && !o.0[i].is_zero() {
                s += &self.0[i] * &o.0[i];
            }
        }
        s
    }

    pub fn scale(&self, k: &Rational) -> Vec4 {
        Vec4(std::array::from_fn(|i| &self.0[i] * k))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Point `self + t (o - self)`.
    pub fn lerp(&self, o: &Vec4, t: &Rational) -> Vec4 {
        self + &(o - self).scale(t)
    }

    pub fn max_bits(&self) -> u64 {
        self.0.iter().map(bit_size).max().unwrap_or(0)
    }

    /// Nearest floats, for display only.
    pub fn approx(&self) -> [f64; 4] {
        std::array::from_fn(|i| self.0[i].to_f64().unwrap_or(f64::NAN))
    }
}

impl fmt::Debug for Vec4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

impl Index<usize> for Vec4 {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl IndexMut<usize> for Vec4 {
    fn index_mut(&mut self, i: usize) -> &mut Rational {
        &mut self.0[i]
    }
}

impl Add for &Vec4 {
    type Output = Vec4;
    fn add(self, o: &Vec4) -> Vec4 {
        Vec4(std::array::from_fn(|i| &self.0[i] + &o.0[i]))
    }
}

impl Sub for &Vec4 {
    type Output = Vec4;
    fn sub(self, o: &Vec4) -> Vec4 {
        Vec4(std::array::from_fn(|i| &self.0[i] - &o.0[i]))
    }
}

impl Neg for &Vec4 {
    type Output = Vec4;
    fn neg(self) -> Vec4 {
        Vec4(std::array::from_fn(|i| -&self.0[i]))
    }
}

impl Mul<&Rational> for &Vec4 {
    type Output = Vec4;
    fn mul(self, k: &Rational) -> Vec4 {
        self.scale(k)
    }
}

impl Serialize for Vec4 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = self.0.iter().map(|r| r.to_string()).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Vec4 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        if v.len() != 4 {
            return Err(serde::de::Error::custom("expected four coordinates"));
        }
        let mut out = Vec4::zero();
        for (i, s) in v.iter().enumerate() {
            out.0[i] = parse_rational(s).map_err(serde::de::Error::custom)?;
        }
        Ok(out)
    }
}

/// The set `{x : normal·x = offset}`; `normal·x > offset` is the positive side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hyperplane {
    pub normal: Vec4,
    #[serde(with = "rational_str")]
    pub offset: Rational,
}

impl Hyperplane {
    pub fn new(normal: Vec4, offset: Rational) -> Self {
        assert!(!normal.is_zero(), "hyperplane normal must be nonzero");
        Hyperplane { normal, offset }
    }

    /// `normal·x − offset`: zero on the plane, positive on the positive side.
    pub fn eval(&self, x: &Vec4) -> Rational {
        self.normal.dot(x) - &self.offset
    }

    pub fn flipped(&self) -> Hyperplane {
        Hyperplane { normal: -&self.normal, offset: -&self.offset }
    }
}

/// `x ↦ matrix·x + translation`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    pub matrix: [[Rational; 4]; 4],
    pub translation: Vec4,
}

impl AffineMap {
    pub fn identity() -> Self {
        AffineMap {
            matrix: std::array::from_fn(|i| std::array::from_fn(|j| if i == j { int(1) } else { int(0) })),
            translation: Vec4::zero(),
        }
    }

    /// Map whose output coordinate `i` is `rows[i]·x + offsets[i]`.
    pub fn from_rows(rows: [Vec4; 4], offsets: Vec4) -> Self {
        AffineMap { matrix: rows.map(|r| r.0), translation: offsets }
    }

    pub fn translation(t: Vec4) -> Self {
        AffineMap { translation: t, ..AffineMap::identity() }
    }

    pub fn apply(&self, x: &Vec4) -> Vec4 {
        Vec4(std::array::from_fn(|i| Vec4(self.matrix[i].clone()).dot(x) + &self.translation.0[i]))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        let matrix = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let mut s = int(0);
                for k in 0..4 {
                    s += &self.matrix[i][k] * &other.matrix[k][j];
                }
                s
            })
        });
        AffineMap { matrix, translation: self.apply(&other.translation) }
    }

    pub fn determinant(&self) -> Rational {
        let rows: Vec<Vec<Rational>> = self.matrix.iter().map(|r| r.to_vec()).collect();
        determinant(rows)
    }
}

/// The shear `x_i ← x_i + a·x_j` on 1-based axes.
pub fn shear(i: usize, j: usize, a: Rational) -> Result<AffineMap, GeometryError> {
    if i == j || !(1..=4).contains(&i) || !(1..=4).contains(&j) {
        return Err(GeometryError::InvalidShear(i, j));
    }
    let mut m = AffineMap::identity();
    m.matrix[i - 1][j - 1] = a;
    Ok(m)
}

/// `x ↦ x / (a·x − a0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveMap {
    pub a: Vec4,
    pub a0: Rational,
}

impl ProjectiveMap {
    pub fn new(a: Vec4, a0: Rational) -> Self {
        assert!(!a.is_zero(), "projective map needs a nonzero functional");
        ProjectiveMap { a, a0 }
    }

    pub fn denominator(&self, x: &Vec4) -> Rational {
        self.a.dot(x) - &self.a0
    }
}

pub fn apply_projective(psi: &ProjectiveMap, x: &Vec4) -> Result<Vec4, GeometryError> {
    let den = psi.denominator(x);
    if den.is_zero() {
        return Err(GeometryError::PointAtInfinity);
    }
    Ok(x.scale(&den.recip()))
}

pub fn project34(x: &Vec4) -> (Rational, Rational) {
    (x.0[2].clone(), x.0[3].clone())
}

/// The point of segment `[p, q]` on `h`; the endpoints must lie strictly on opposite sides.
pub fn segment_cut(p: &Vec4, q: &Vec4, h: &Hyperplane) -> Result<Vec4, GeometryError> {
    let a = h.eval(p);
    let b = h.eval(q);
    if a.is_zero() || b.is_zero() || a.is_positive() == b.is_positive() {
        return Err(GeometryError::NonGenericCut);
    }
    let mu = &a / (&a - &b);
    Ok(p.lerp(q, &mu))
}

/// Exact Gaussian elimination for a square system of size at most five.
pub fn solve_linear(a: &[Vec<Rational>], b: &[Rational]) -> Result<Vec<Rational>, GeometryError> {
    let k = a.len();
    assert!(k <= 5, "solve_linear supports systems up to 5x5");
    assert_eq!(b.len(), k);
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, bb)| {
            assert_eq!(row.len(), k, "matrix must be square");
            let mut r = row.clone();
            r.push(bb.clone());
            r
        })
        .collect();
    for c in 0..k {
        let p = (c..k).find(|&r| !m[r][c].is_zero()).ok_or(GeometryError::Singular)?;
        m.swap(c, p);
        let piv = m[c][c].clone();
        for r in 0..k {
            if r != c && !m[r][c].is_zero() {
                let f = &m[r][c] / &piv;
                for j in c..=k {
                    let d = &f * &m[c][j];
                    m[r][j] -= d;
                }
            }
        }
    }
    Ok((0..k).map(|i| &m[i][k] / &m[i][i]).collect())
}

/// Solves `rows[i]·x = rhs[i]` for a 4-vector `x`.
pub fn solve4(rows: &[Vec4; 4], rhs: &[Rational; 4]) -> Result<Vec4, GeometryError> {
    let a: Vec<Vec<Rational>> = rows.iter().map(|r| r.0.to_vec()).collect();
    let x = solve_linear(&a, rhs)?;
    Ok(Vec4(std::array::from_fn(|i| x[i].clone())))
}

/// Rank of a list of equal-length vectors.
pub fn rank(vs: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = vs.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for j in c..cols {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn rank4(vs: &[Vec4]) -> usize {
    rank(&vs.iter().map(|v| v.0.to_vec()).collect::<Vec<_>>())
}

pub fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let k = m.len();
    let mut det = int(1);
    for c in 0..k {
        let Some(p) = (c..k).find(|&r| !m[r][c].is_zero()) else { return int(0) };
        if p != c {
            m.swap(c, p);
            det = -det;
        }
        det *= &m[c][c];
        for r in c + 1..k {
            if !m[r][c].is_zero() {
                let f = &m[r][c] / &m[c][c];
                for j in c..k {
                    let d = &f * &m[c][j];
                    m[r][j] -= d;
                }
            }
        }
    }
    det
}

/// Hyperplane through points of affine rank 3, with unspecified orientation.
pub fn hyperplane_through(pts: &[Vec4]) -> Result<Hyperplane, GeometryError> {
    let base = pts.first().ok_or(GeometryError::Singular)?;
    let mut sel: Vec<Vec4> = Vec::new();
    for p in &pts[1..] {
        let d = p - base;
        let mut trial = sel.clone();
        trial.push(d.clone());
        if rank4(&trial) > sel.len() {
            sel = trial;
        }
    }
    if sel.len() != 3 {
        return Err(GeometryError::Singular);
    }
    for k in 0..4 {
        let rows = [sel[0].clone(), sel[1].clone(), sel[2].clone(), Vec4::unit(k)];
        if let Ok(c) = solve4(&rows, &[int(0), int(0), int(0), int(1)]) {
            let off = c.dot(base);
            return Ok(Hyperplane::new(c, off));
        }
    }
    Err(GeometryError::Singular)
}

/// Collinearity test for three points: the differences have rank at most one.
pub fn collinear(p: &Vec4, q: &Vec4, r: &Vec4) -> bool {
    rank4(&[q - p, r - p]) <= 1
}

/// Nearest multiple of `2^-k` (ties round up).
pub fn round_dyadic(x: &Rational, k: u32) -> Rational {
    let scale = BigInt::one() << k;
    let s = x * Rational::from_integer(scale.clone());
    let fl = (s + frac(1, 2)).floor().to_integer();
    Rational::new(fl, scale)
}

pub fn sign(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}
