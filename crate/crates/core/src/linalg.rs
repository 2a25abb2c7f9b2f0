//! Small dense complex linear algebra: vectors, matrices, inner products,
//! orthonormalization and the angle conventions used throughout the crate.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};

/// Complex scalar. Serialized as `[re, im]`.
pub type Cplx = num_complex::Complex64;

pub const ZERO: Cplx = Cplx::new(0.0, 0.0);
pub const ONE: Cplx = Cplx::new(1.0, 0.0);
pub const I: Cplx = Cplx::new(0.0, 1.0);

/// Absolute and relative comparison thresholds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub eps_abs: f64,
    pub eps_rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            eps_abs: 1e-10,
            eps_rel: 1e-9,
        }
    }
}

impl Tolerance {
    pub fn new(eps_abs: f64, eps_rel: f64) -> Result<Self> {
        if !(eps_abs > 0.0 && eps_abs.is_finite()) || !(eps_rel > 0.0 && eps_rel.is_finite()) {
            return Err(Error::InvalidValue(format!(
                "tolerances must be strictly positive, got eps_abs={eps_abs}, eps_rel={eps_rel}"
            )));
        }
        Ok(Tolerance { eps_abs, eps_rel })
    }

    /// `|a - b|` within `eps_abs`, or within `eps_rel` relative to the larger magnitude.
    pub fn close(&self, a: f64, b: f64) -> bool {
        let d = (a - b).abs();
        d <= self.eps_abs || d <= self.eps_rel * a.abs().max(b.abs())
    }
}

/// A vector of `C^d`, `d >= 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Cplx>", into = "Vec<Cplx>")]
pub struct CVector {
    entries: Vec<Cplx>,
}

impl TryFrom<Vec<Cplx>> for CVector {
    type Error = Error;

    fn try_from(entries: Vec<Cplx>) -> Result<Self> {
        CVector::new(entries)
    }
}

impl From<CVector> for Vec<Cplx> {
    fn from(v: CVector) -> Self {
        v.entries
    }
}

impl CVector {
    pub fn new(entries: Vec<Cplx>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidValue("vectors need dimension >= 1".into()));
        }
        if entries.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidValue("vector entries must be finite".into()));
        }
        Ok(CVector { entries })
    }

    /// Builds a vector from real entries.
    pub fn real(entries: &[f64]) -> Result<Self> {
        CVector::new(entries.iter().map(|&x| Cplx::new(x, 0.0)).collect())
    }

    /// Builds a vector from `(re, im)` pairs.
    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        CVector::new(pairs.iter().map(|&(re, im)| Cplx::new(re, im)).collect())
    }

    pub(crate) fn from_raw(entries: Vec<Cplx>) -> Self {
        debug_assert!(!entries.is_empty());
        CVector { entries }
    }

    pub fn zeros(dim: usize) -> Self {
        CVector::from_raw(vec![ZERO; dim.max(1)])
    }

    /// The `i`-th standard basis vector of `C^dim`.
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = CVector::zeros(dim);
        v.entries[i] = ONE;
        v
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Cplx] {
        &self.entries
    }

    pub fn scale(&self, c: Cplx) -> CVector {
        CVector::from_raw(self.entries.iter().map(|&e| e * c).collect())
    }

    pub fn scale_real(&self, s: f64) -> CVector {
        CVector::from_raw(self.entries.iter().map(|&e| e * s).collect())
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: Cplx, other: &CVector) -> CVector {
        debug_assert_eq!(self.dim(), other.dim());
        CVector::from_raw(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| a + c * b)
                .collect(),
        )
    }

    pub fn conj(&self) -> CVector {
        CVector::from_raw(self.entries.iter().map(|e| e.conj()).collect())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.entries.iter().map(|e| e.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|e| e.im == 0.0)
    }
}

impl Add for &CVector {
    type Output = CVector;

    fn add(self, rhs: &CVector) -> CVector {
        self.axpy(ONE, rhs)
    }
}

impl Sub for &CVector {
    type Output = CVector;

    fn sub(self, rhs: &CVector) -> CVector {
        self.axpy(-ONE, rhs)
    }
}

impl Neg for &CVector {
    type Output = CVector;

    fn neg(self) -> CVector {
        self.scale_real(-1.0)
    }
}

impl Mul<Cplx> for &CVector {
    type Output = CVector;

    fn mul(self, c: Cplx) -> CVector {
        self.scale(c)
    }
}

/// Inner product, linear in the first argument and conjugate-linear in the second.
pub fn inner(u: &CVector, v: &CVector) -> Result<Cplx> {
    check_dim(u.dim(), v.dim())?;
    Ok(inner_unchecked(u, v))
}

pub(crate) fn inner_unchecked(u: &CVector, v: &CVector) -> Cplx {
    u.entries
        .iter()
        .zip(&v.entries)
        .fold(ZERO, |acc, (&a, &b)| acc + a * b.conj())
}

pub fn norm(u: &CVector) -> f64 {
    u.norm()
}

/// Maps any finite angle onto its representative in `(-pi, pi]`.
pub fn wrap_angle(a: f64) -> f64 {
    let mut t = a.rem_euclid(2.0 * PI);
    if t > PI {
        t -= 2.0 * PI;
    }
    t
}

/// Distance between two angles on the circle, in `[0, pi]`.
pub fn circular_distance(a: f64, b: f64) -> f64 {
    wrap_angle(a - b).abs()
}

/// Complex argument in `(-pi, pi]`.
pub fn carg(c: Cplx, tol: &Tolerance) -> Result<f64> {
    let m = c.norm();
    if m <= tol.eps_abs {
        return Err(Error::ZeroArgument(m));
    }
    // atan2 yields -pi on the negative real axis with a negative zero imaginary part
    Ok(wrap_angle(c.im.atan2(c.re)))
}

/// Removes from `v` its components along the orthonormal `basis`, twice.
pub(crate) fn residual_against(v: &CVector, basis: &[CVector]) -> CVector {
    let mut r = v.clone();
    for _ in 0..2 {
        for b in basis {
            let c = inner_unchecked(&r, b);
            r = r.axpy(-c, b);
        }
    }
    r
}

/// Modified Gram-Schmidt with one re-orthogonalization pass.
///
/// Vectors whose residual falls below `eps_abs` (scaled by the input norm
/// when that exceeds one) are treated as dependent and dropped.
pub fn orthonormalize(vs: &[CVector], tol: &Tolerance) -> Vec<CVector> {
    let mut out: Vec<CVector> = Vec::with_capacity(vs.len());
    for v in vs {
        if let Some(first) = out.first() {
            assert_eq!(first.dim(), v.dim(), "orthonormalize: mixed dimensions");
        }
        let r = residual_against(v, &out);
        let n = r.norm();
        if n > tol.eps_abs * v.norm().max(1.0) {
            out.push(r.scale_real(1.0 / n));
        }
    }
    out
}

/// Kronecker product; entry `i * v.dim() + j` is `u_i v_j`.
pub fn kron(u: &CVector, v: &CVector) -> CVector {
    let mut out = Vec::with_capacity(u.dim() * v.dim());
    for &a in u.entries() {
        for &b in v.entries() {
            out.push(a * b);
        }
    }
    CVector::from_raw(out)
}

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatRepr", into = "MatRepr")]
pub struct Mat {
    rows: usize,
    cols: usize,
    entries: Vec<Cplx>,
}

#[derive(Serialize, Deserialize)]
struct MatRepr {
    rows: usize,
    cols: usize,
    entries: Vec<Cplx>,
}

impl TryFrom<MatRepr> for Mat {
    type Error = Error;

    fn try_from(r: MatRepr) -> Result<Self> {
        Mat::new(r.rows, r.cols, r.entries)
    }
}

impl From<Mat> for MatRepr {
    fn from(m: Mat) -> Self {
        MatRepr {
            rows: m.rows,
            cols: m.cols,
            entries: m.entries,
        }
    }
}

impl Mat {
    pub fn new(rows: usize, cols: usize, entries: Vec<Cplx>) -> Result<Self> {
        if rows * cols != entries.len() {
            return Err(Error::InvalidValue(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if entries.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidValue("matrix entries must be finite".into()));
        }
        Ok(Mat {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            entries: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = ONE;
        }
        m
    }

    pub fn diagonal(diag: &[Cplx]) -> Self {
        let n = diag.len();
        let mut m = Mat::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.entries[i * n + i] = d;
        }
        m
    }

    /// Matrix whose columns are the given vectors (all of the same dimension).
    pub fn from_columns(cols: &[CVector]) -> Result<Self> {
        let Some(first) = cols.first() else {
            return Err(Error::InvalidValue("need at least one column".into()));
        };
        let rows = first.dim();
        let mut m = Mat::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            check_dim(rows, c.dim())?;
            for i in 0..rows {
                m.entries[i * cols.len() + j] = c.entries()[i];
            }
        }
        Ok(m)
    }

    /// Sum of `b b^dagger` over an orthonormal list: the orthogonal projector onto its span.
    pub fn projector(basis: &[CVector], dim: usize) -> Self {
        let mut m = Mat::zeros(dim, dim);
        for b in basis {
            for i in 0..dim {
                for j in 0..dim {
                    m.entries[i * dim + j] += b.entries()[i] * b.entries()[j].conj();
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Cplx] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> Cplx {
        self.entries[i * self.cols + j]
    }

    pub fn column(&self, j: usize) -> CVector {
        CVector::from_raw((0..self.rows).map(|i| self.get(i, j)).collect())
    }

    pub fn columns(&self) -> Vec<CVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn mul_vec(&self, v: &CVector) -> Result<CVector> {
        check_dim(self.cols, v.dim())?;
        let out = (0..self.rows)
            .map(|i| {
                self.entries[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(v.entries())
                    .fold(ZERO, |acc, (&a, &b)| acc + a * b)
            })
            .collect();
        Ok(CVector::from_raw(out))
    }

    pub fn matmul(&self, other: &Mat) -> Result<Mat> {
        check_dim(self.cols, other.rows)?;
        let mut m = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                for j in 0..other.cols {
                    m.entries[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        Ok(m)
    }

    pub fn adjoint(&self) -> Mat {
        let mut m = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.entries[j * self.rows + i] = self.get(i, j).conj();
            }
        }
        m
    }

    pub fn scale(&self, c: Cplx) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&e| e * c).collect(),
        }
    }

    /// Largest entrywise modulus of `self - other`; infinite on shape mismatch.
    pub fn max_abs_diff(&self, other: &Mat) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    const S: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> Cplx {
        Cplx::new(re, im)
    }

    #[test]
    fn inner_examples() {
        let e1 = CVector::real(&[1.0, 0.0]).unwrap();
        let e2 = CVector::real(&[0.0, 1.0]).unwrap();
        assert_eq!(inner(&e1, &e1).unwrap(), ONE);
        assert_eq!(inner(&e1, &e2).unwrap(), ZERO);
        let u = CVector::from_pairs(&[(S, 0.0), (S, 0.0)]).unwrap();
        let v = CVector::from_pairs(&[(S, 0.0), (0.0, S)]).unwrap();
        let ip = inner(&u, &v).unwrap();
        assert_abs_diff_eq!(ip.re, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(ip.im, -0.5, epsilon = 1e-15);
    }

    #[test]
    fn inner_dimension_mismatch() {
        let a = CVector::real(&[1.0]).unwrap();
        let b = CVector::real(&[1.0, 0.0]).unwrap();
        assert_eq!(
            inner(&a, &b),
            Err(Error::DimensionMismatch {
                expected: 1,
                found: 2
            })
        );
    }

    #[test]
    fn norm_examples() {
        assert_eq!(norm(&CVector::real(&[3.0, 4.0]).unwrap()), 5.0);
        assert_eq!(norm(&CVector::zeros(2)), 0.0);
        let v = CVector::from_pairs(&[(S, 0.0), (0.0, S)]).unwrap();
        assert_abs_diff_eq!(norm(&v), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn carg_examples() {
        let tol = Tolerance::default();
        assert_eq!(carg(ONE, &tol).unwrap(), 0.0);
        assert_abs_diff_eq!(carg(I, &tol).unwrap(), PI / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(carg(c(0.5, -0.5), &tol).unwrap(), -PI / 4.0, epsilon = 1e-15);
        assert_eq!(carg(c(-1.0, -0.0), &tol).unwrap(), PI);
        assert!(matches!(carg(c(1e-12, 0.0), &tol), Err(Error::ZeroArgument(_))));
    }

    #[test]
    fn wrap_and_circular_distance() {
        assert_abs_diff_eq!(wrap_angle(3.0 * PI), PI, epsilon = 1e-12);
        assert_abs_diff_eq!(wrap_angle(-PI), PI, epsilon = 1e-12);
        assert_abs_diff_eq!(circular_distance(PI - 1e-3, -PI + 1e-3), 2e-3, epsilon = 1e-12);
    }

    #[test]
    fn orthonormalize_examples() {
        let tol = Tolerance::default();
        let r = orthonormalize(&[CVector::real(&[2.0, 0.0]).unwrap()], &tol);
        assert_eq!(r, vec![CVector::real(&[1.0, 0.0]).unwrap()]);

        let e1 = CVector::real(&[1.0, 0.0]).unwrap();
        let r = orthonormalize(&[e1.clone(), e1.clone()], &tol);
        assert_eq!(r.len(), 1);

        let r = orthonormalize(&[e1.clone(), CVector::real(&[1.0, 1.0]).unwrap()], &tol);
        assert_eq!(r.len(), 2);
        assert_abs_diff_eq!(r[1].entries()[0].norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r[1].entries()[1].re, 1.0, epsilon = 1e-15);

        assert!(orthonormalize(&[], &tol).is_empty());
    }

    #[test]
    fn tolerance_must_be_positive() {
        assert!(Tolerance::new(0.0, 1e-9).is_err());
        assert!(Tolerance::new(1e-10, -1.0).is_err());
        assert!(Tolerance::new(1e-10, 1e-9).is_ok());
    }

    #[test]
    fn matrix_ops() {
        let m = Mat::new(2, 2, vec![ONE, I, ZERO, c(2.0, 0.0)]).unwrap();
        let v = CVector::real(&[1.0, 1.0]).unwrap();
        assert_eq!(m.mul_vec(&v).unwrap().entries(), &[c(1.0, 1.0), c(2.0, 0.0)]);
        let a = m.adjoint();
        assert_eq!(a.get(1, 0), -I);
        assert_eq!(m.matmul(&Mat::identity(2)).unwrap(), m);
        assert!(Mat::new(2, 2, vec![ONE]).is_err());
    }

    #[test]
    fn json_encoding() {
        let v = CVector::from_pairs(&[(1.0, 0.0), (0.0, -2.0)]).unwrap();
        assert_eq!(serde_json::to_string(&v).unwrap(), "[[1.0,0.0],[0.0,-2.0]]");
        let m = Mat::identity(1);
        assert_eq!(
            serde_json::to_string(&m).unwrap(),
            r#"{"rows":1,"cols":1,"entries":[[1.0,0.0]]}"#
        );
        assert!(serde_json::from_str::<CVector>("[]").is_err());
    }

    fn cvec(dim: usize) -> impl Strategy<Value = CVector> {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim)
            .prop_map(|p| CVector::from_pairs(&p).unwrap())
    }

    proptest! {
        #[test]
        fn inner_is_sesquilinear(
            (u, v, w) in (1usize..6).prop_flat_map(|d| (cvec(d), cvec(d), cvec(d))),
            a in (-2.0f64..2.0, -2.0f64..2.0),
            b in (-2.0f64..2.0, -2.0f64..2.0),
        ) {
            let (a, b) = (c(a.0, a.1), c(b.0, b.1));
            let lhs = inner(&u.scale(a).axpy(b, &v), &w).unwrap();
            let rhs = a * inner(&u, &w).unwrap() + b * inner(&v, &w).unwrap();
            prop_assert!((lhs - rhs).norm() < 1e-12);
            prop_assert!((inner(&v, &u).unwrap() - inner(&u, &v).unwrap().conj()).norm() < 1e-14);
            prop_assert!(inner(&u, &v).unwrap().norm() <= u.norm() * v.norm() + 1e-10);
        }

        #[test]
        fn orthonormalize_is_a_projection(
            vs in (1usize..6).prop_flat_map(|d| prop::collection::vec(cvec(d), 0..8)),
        ) {
            let tol = Tolerance::default();
            let q = orthonormalize(&vs, &tol);
            for (i, a) in q.iter().enumerate() {
                prop_assert!((a.norm() - 1.0).abs() < 1e-10);
                for b in &q[i + 1..] {
                    prop_assert!(inner(a, b).unwrap().norm() < 1e-10);
                }
            }
            if let Some(d) = vs.first().map(CVector::dim) {
                prop_assert!(q.len() <= d.min(vs.len()));
            }
            let again = orthonormalize(&q, &tol);
            prop_assert_eq!(again.len(), q.len());
            for (a, b) in again.iter().zip(&q) {
                prop_assert!((a - b).norm() < 1e-10);
            }
        }
    }
}
