//! States and propositions: rays of `C^d` and the closed subspaces of `C^d`.
//!
//! A [`Ray`] is stored through a canonical unit representative whose first
//! significantly non-zero entry is real and positive, so two rays can be
//! compared through their representatives. A [`Subspace`] is stored through
//! an orthonormal basis; rank 0 is falsehood and full rank is truth.

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::linalg::{
    inner_unchecked, orthonormalize, residual_against, CVector, Cplx, Mat, Tolerance,
};

/// A one-dimensional subspace of `C^d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RayRepr", into = "RayRepr")]
pub struct Ray {
    rep: CVector,
}

#[derive(Serialize, Deserialize)]
struct RayRepr {
    dim: usize,
    rep: CVector,
}

impl TryFrom<RayRepr> for Ray {
    type Error = Error;

    fn try_from(r: RayRepr) -> Result<Self> {
        check_dim(r.dim, r.rep.dim())?;
        Ray::from_vector(&r.rep)
    }
}

impl From<Ray> for RayRepr {
    fn from(r: Ray) -> Self {
        RayRepr {
            dim: r.rep.dim(),
            rep: r.rep,
        }
    }
}

/// Result of projecting a ray: either a ray or the zero subspace.
#[derive(Debug, Clone, PartialEq)]
pub enum Projected {
    Zero,
    Ray(Ray),
}

impl Projected {
    pub fn ray(&self) -> Option<&Ray> {
        match self {
            Projected::Zero => None,
            Projected::Ray(r) => Some(r),
        }
    }

    pub fn into_ray(self) -> Option<Ray> {
        match self {
            Projected::Zero => None,
            Projected::Ray(r) => Some(r),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Projected::Zero)
    }
}

impl Ray {
    /// The ray spanned by `v`.
    pub fn from_vector(v: &CVector) -> Result<Ray> {
        Ray::from_vector_tol(v, &Tolerance::default())
    }

    pub fn from_vector_tol(v: &CVector, tol: &Tolerance) -> Result<Ray> {
        let n = v.norm();
        if !(n > tol.eps_abs) {
            return Err(Error::ZeroVector);
        }
        let unit = v.scale_real(1.0 / n);
        let pivot = unit
            .entries()
            .iter()
            .copied()
            .find(|c| c.norm() > tol.eps_abs)
            .ok_or(Error::ZeroVector)?;
        let phase = pivot.conj() / pivot.norm();
        let mut entries: Vec<Cplx> = unit.entries().iter().map(|&e| e * phase).collect();
        // pin the pivot exactly on the positive real axis
        if let Some(p) = entries.iter_mut().find(|c| c.norm() > tol.eps_abs) {
            *p = Cplx::new(p.norm(), 0.0);
        }
        Ok(Ray {
            rep: CVector::from_raw(entries),
        })
    }

    /// The ray of the `i`-th standard basis vector.
    pub fn basis(dim: usize, i: usize) -> Ray {
        Ray {
            rep: CVector::basis(dim, i),
        }
    }

    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    /// The canonical unit representative.
    pub fn rep(&self) -> &CVector {
        &self.rep
    }

    /// Distance between unit representatives after optimal phase alignment.
    ///
    /// Zero iff the rays coincide, `sqrt(2)` for orthogonal rays.
    pub fn distance(&self, other: &Ray) -> f64 {
        let c = inner_unchecked(&self.rep, &other.rep);
        let m = c.norm();
        if m == 0.0 {
            return std::f64::consts::SQRT_2;
        }
        (&self.rep - &other.rep.scale(c / m)).norm()
    }

    pub fn same_as(&self, other: &Ray, tol: &Tolerance) -> bool {
        self.dim() == other.dim() && self.distance(other) <= tol.eps_abs
    }

    /// Rank-one subspace spanned by this ray.
    pub fn to_subspace(&self) -> Subspace {
        Subspace {
            dim: self.dim(),
            basis: vec![self.rep.clone()],
        }
    }
}

/// Anything described by an orthonormal spanning list: rays and subspaces.
pub trait Spanned {
    fn ambient_dim(&self) -> usize;
    fn spanning(&self) -> &[CVector];
}

impl Spanned for Ray {
    fn ambient_dim(&self) -> usize {
        self.dim()
    }

    fn spanning(&self) -> &[CVector] {
        std::slice::from_ref(&self.rep)
    }
}

impl Spanned for Subspace {
    fn ambient_dim(&self) -> usize {
        self.dim
    }

    fn spanning(&self) -> &[CVector] {
        &self.basis
    }
}

/// A (closed) subspace of `C^d`, kept as an orthonormal basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SubspaceRepr", into = "SubspaceRepr")]
pub struct Subspace {
    dim: usize,
    basis: Vec<CVector>,
}

#[derive(Serialize, Deserialize)]
struct SubspaceRepr {
    dim: usize,
    basis: Vec<CVector>,
}

impl TryFrom<SubspaceRepr> for Subspace {
    type Error = Error;

    fn try_from(r: SubspaceRepr) -> Result<Self> {
        Subspace::span(r.dim, &r.basis)
    }
}

impl From<Subspace> for SubspaceRepr {
    fn from(s: Subspace) -> Self {
        SubspaceRepr {
            dim: s.dim,
            basis: s.basis,
        }
    }
}

impl Subspace {
    /// Span of arbitrary vectors of `C^dim`.
    pub fn span(dim: usize, vs: &[CVector]) -> Result<Subspace> {
        Subspace::span_tol(dim, vs, &Tolerance::default())
    }

    pub fn span_tol(dim: usize, vs: &[CVector], tol: &Tolerance) -> Result<Subspace> {
        if dim == 0 {
            return Err(Error::InvalidValue("ambient dimension must be >= 1".into()));
        }
        for v in vs {
            check_dim(dim, v.dim())?;
        }
        Ok(Subspace {
            dim,
            basis: orthonormalize(vs, tol),
        })
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(dim: usize, indices: &[usize]) -> Subspace {
        let vs: Vec<CVector> = indices.iter().map(|&i| CVector::basis(dim, i)).collect();
        Subspace::span(dim, &vs).expect("coordinate subspace")
    }

    /// The whole space.
    pub fn truth(dim: usize) -> Subspace {
        Subspace::coordinate(dim, &(0..dim).collect::<Vec<_>>())
    }

    /// The zero subspace.
    pub fn falsehood(dim: usize) -> Subspace {
        Subspace {
            dim,
            basis: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[CVector] {
        &self.basis
    }

    pub fn is_falsehood(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_truth(&self) -> bool {
        self.basis.len() == self.dim
    }

    pub fn projector(&self) -> Mat {
        Mat::projector(&self.basis, self.dim)
    }

    /// Orthogonal projection of a vector.
    pub fn project_vec(&self, u: &CVector) -> Result<CVector> {
        check_dim(self.dim, u.dim())?;
        Ok(self.project_unchecked(u))
    }

    pub(crate) fn project_unchecked(&self, u: &CVector) -> CVector {
        self.basis
            .iter()
            .fold(CVector::zeros(self.dim), |acc, b| {
                acc.axpy(inner_unchecked(u, b), b)
            })
    }

    /// Projection of a ray; [`Projected::Zero`] when the ray is orthogonal to `self`.
    pub fn project_ray(&self, x: &Ray) -> Result<Projected> {
        let v = self.project_vec(x.rep())?;
        if v.norm() <= Tolerance::default().eps_abs {
            Ok(Projected::Zero)
        } else {
            Ray::from_vector(&v).map(Projected::Ray)
        }
    }

    pub fn ortho_complement(&self) -> Subspace {
        self.ortho_complement_tol(&Tolerance::default())
    }

    /// Complement built by pivoted completion: at each step the standard
    /// basis vector with the largest residual is adjoined.
    pub fn ortho_complement_tol(&self, tol: &Tolerance) -> Subspace {
        let mut all = self.basis.clone();
        let mut out = Vec::with_capacity(self.dim - self.rank());
        while all.len() < self.dim {
            let best = (0..self.dim)
                .map(|i| residual_against(&CVector::basis(self.dim, i), &all))
                .max_by(|a, b| a.norm().total_cmp(&b.norm()))
                .expect("dim >= 1");
            let n = best.norm();
            if n <= tol.eps_abs {
                break;
            }
            let q = best.scale_real(1.0 / n);
            all.push(q.clone());
            out.push(q);
        }
        Subspace {
            dim: self.dim,
            basis: out,
        }
    }

    /// Closed linear sum.
    pub fn join(&self, other: &Subspace) -> Result<Subspace> {
        check_dim(self.dim, other.dim)?;
        let vs: Vec<CVector> = self.basis.iter().chain(&other.basis).cloned().collect();
        Subspace::span(self.dim, &vs)
    }

    /// Intersection, computed as the complement of the join of complements.
    pub fn meet(&self, other: &Subspace) -> Result<Subspace> {
        check_dim(self.dim, other.dim)?;
        Ok(self
            .ortho_complement()
            .join(&other.ortho_complement())?
            .ortho_complement())
    }

    /// Whether the ray lies in this subspace.
    pub fn contains_ray(&self, x: &Ray) -> Result<bool> {
        let v = self.project_vec(x.rep())?;
        Ok((&v - x.rep()).norm() <= Tolerance::default().eps_abs)
    }

    /// Whether `other` is a subspace of `self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        check_dim(self.dim, other.dim)?;
        let eps = Tolerance::default().eps_abs;
        Ok(other
            .basis
            .iter()
            .all(|b| (&self.project_unchecked(b) - b).norm() <= eps))
    }

    /// Equality as subspaces (not as bases).
    pub fn same_as(&self, other: &Subspace) -> bool {
        self.dim == other.dim
            && self.rank() == other.rank()
            && self.contains(other).unwrap_or(false)
    }
}

/// `x ∈ α`.
pub fn is_member(x: &Ray, a: &Subspace) -> Result<bool> {
    a.contains_ray(x)
}

/// Whether every vector of `a` is orthogonal to every vector of `b`.
pub fn is_orthogonal<A: Spanned + ?Sized, B: Spanned + ?Sized>(a: &A, b: &B) -> Result<bool> {
    check_dim(a.ambient_dim(), b.ambient_dim())?;
    let eps = Tolerance::default().eps_abs;
    Ok(a.spanning()
        .iter()
        .all(|u| b.spanning().iter().all(|v| inner_unchecked(u, v).norm() <= eps)))
}

/// Whether the projections onto `a` and `b` commute, decided on the projector matrices.
pub fn commutes(a: &Subspace, b: &Subspace, tol: &Tolerance) -> Result<bool> {
    check_dim(a.dim, b.dim)?;
    let (pa, pb) = (a.projector(), b.projector());
    let ab = pa.matmul(&pb)?;
    let ba = pb.matmul(&pa)?;
    Ok(ab.max_abs_diff(&ba) <= tol.eps_abs.max(tol.eps_rel))
}

/// Ray-level commutation `α(β(x)) = β(α(x))` checked on a list of probe rays.
///
/// Cross-check for [`commutes`]: every probe agrees with the operator-level
/// verdict when the subspaces commute.
pub fn commutes_on_probes(a: &Subspace, b: &Subspace, probes: &[Ray], tol: &Tolerance) -> Result<bool> {
    check_dim(a.dim, b.dim)?;
    for x in probes {
        check_dim(a.dim, x.dim())?;
        let ab = a.project_unchecked(&b.project_unchecked(x.rep()));
        let ba = b.project_unchecked(&a.project_unchecked(x.rep()));
        if (&ab - &ba).norm() > tol.eps_abs.max(tol.eps_rel) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{inner, I, ONE};
    use approx::assert_abs_diff_eq;

    const S: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn v(xs: &[f64]) -> CVector {
        CVector::real(xs).unwrap()
    }

    fn ray(xs: &[f64]) -> Ray {
        Ray::from_vector(&v(xs)).unwrap()
    }

    #[test]
    fn ray_canonicalization() {
        let r = Ray::from_vector(&CVector::new(vec![Cplx::new(0.0, 0.0), Cplx::new(0.0, 2.0)]).unwrap())
            .unwrap();
        assert_eq!(r.rep(), &v(&[0.0, 1.0]));
        let r = ray(&[1.0, 1.0]);
        assert_abs_diff_eq!(r.rep().entries()[0].re, S, epsilon = 1e-15);
        assert_abs_diff_eq!(r.rep().entries()[1].re, S, epsilon = 1e-15);
        assert_eq!(ray(&[-1.0, 0.0]).rep(), &v(&[1.0, 0.0]));
        assert_eq!(Ray::from_vector(&v(&[0.0, 0.0])), Err(Error::ZeroVector));
    }

    #[test]
    fn ray_from_is_scale_invariant() {
        let u = CVector::from_pairs(&[(0.3, -0.2), (1.0, 0.5), (-0.1, 0.0)]).unwrap();
        let a = Ray::from_vector(&u).unwrap();
        let b = Ray::from_vector(&u.scale(Cplx::new(-2.0, 3.0))).unwrap();
        assert!((a.rep() - b.rep()).norm() < 1e-14);
        assert!(a.same_as(&b, &Tolerance::default()));
    }

    #[test]
    fn projection_examples() {
        let xaxis = Subspace::coordinate(2, &[0]);
        assert_eq!(xaxis.project_vec(&v(&[1.0, 1.0])).unwrap(), v(&[1.0, 0.0]));
        let t = Subspace::truth(2);
        let u = v(&[0.3, -0.7]);
        assert!((&t.project_vec(&u).unwrap() - &u).norm() < 1e-15);
        let diag = Subspace::span(2, &[v(&[1.0, 1.0])]).unwrap();
        let p = diag.project_vec(&v(&[1.0, 0.0])).unwrap();
        assert!((&p - &v(&[0.5, 0.5])).norm() < 1e-15);
        assert!(xaxis.project_vec(&v(&[1.0, 0.0, 0.0])).is_err());
    }

    #[test]
    fn project_ray_examples() {
        let xaxis = Subspace::coordinate(2, &[0]);
        let e1 = Ray::basis(2, 0);
        assert_eq!(xaxis.project_ray(&e1).unwrap(), Projected::Ray(e1.clone()));
        assert!(xaxis.project_ray(&Ray::basis(2, 1)).unwrap().is_zero());
        let d = ray(&[1.0, 1.0]);
        assert_eq!(xaxis.project_ray(&d).unwrap(), Projected::Ray(e1));
    }

    #[test]
    fn complement_examples() {
        assert!(Subspace::truth(3).ortho_complement().is_falsehood());
        assert!(Subspace::falsehood(3).ortho_complement().is_truth());
        let c = Subspace::coordinate(2, &[0]).ortho_complement();
        assert!(c.same_as(&Subspace::coordinate(2, &[1])));
        let c = Subspace::span(3, &[v(&[1.0, 1.0, 0.0])]).unwrap().ortho_complement();
        assert_eq!(c.rank(), 2);
        assert!(c.contains_ray(&Ray::basis(3, 2)).unwrap());
        assert!(c.ortho_complement().same_as(&Subspace::span(3, &[v(&[1.0, 1.0, 0.0])]).unwrap()));
    }

    #[test]
    fn meet_and_join_examples() {
        let a = Subspace::span(3, &[v(&[1.0, 2.0, 0.0]), v(&[0.0, 1.0, -1.0])]).unwrap();
        assert!(a.meet(&Subspace::truth(3)).unwrap().same_as(&a));
        assert!(a.meet(&a.ortho_complement()).unwrap().is_falsehood());
        let e12 = Subspace::coordinate(3, &[0, 1]);
        let e23 = Subspace::coordinate(3, &[1, 2]);
        assert!(e12.meet(&e23).unwrap().same_as(&Subspace::coordinate(3, &[1])));

        assert!(a.join(&Subspace::falsehood(3)).unwrap().same_as(&a));
        assert!(a.join(&a.ortho_complement()).unwrap().is_truth());
        let j = Subspace::coordinate(3, &[0])
            .join(&Subspace::span(3, &[v(&[1.0, 1.0, 0.0])]).unwrap())
            .unwrap();
        assert!(j.same_as(&e12));
    }

    #[test]
    fn membership_and_orthogonality() {
        let e12 = Subspace::coordinate(3, &[0, 1]);
        assert!(is_member(&Ray::basis(3, 0), &e12).unwrap());
        assert!(!is_member(&Ray::basis(3, 2), &e12).unwrap());
        assert!(is_member(&ray(&[1.0, 1.0, 0.0]), &e12).unwrap());

        assert!(is_orthogonal(&Ray::basis(2, 0), &Ray::basis(2, 1)).unwrap());
        let x = ray(&[0.6, 0.8]);
        assert!(!is_orthogonal(&x, &x).unwrap());
        assert!(is_orthogonal(&ray(&[1.0, 1.0]), &ray(&[1.0, -1.0])).unwrap());
        assert!(is_orthogonal(&e12, &Ray::basis(3, 2)).unwrap());
    }

    #[test]
    fn commutation_examples() {
        let tol = Tolerance::default();
        let a = Subspace::span(3, &[v(&[1.0, 2.0, 0.0])]).unwrap();
        assert!(commutes(&a, &a.ortho_complement(), &tol).unwrap());
        assert!(commutes(&a, &a, &tol).unwrap());
        let xaxis = Subspace::coordinate(2, &[0]);
        let diag = Subspace::span(2, &[v(&[1.0, 1.0])]).unwrap();
        assert!(!commutes(&xaxis, &diag, &tol).unwrap());
        assert!(!commutes_on_probes(&xaxis, &diag, &[Ray::basis(2, 0)], &tol).unwrap());
        assert!(commutes_on_probes(&a, &a.ortho_complement(), &[ray(&[0.3, 0.1, 2.0])], &tol).unwrap());
    }

    #[test]
    fn projector_is_hermitian_idempotent() {
        let a = Subspace::span(
            3,
            &[
                CVector::new(vec![ONE, I, Cplx::new(0.5, 0.0)]).unwrap(),
                v(&[0.0, 1.0, 1.0]),
            ],
        )
        .unwrap();
        let p = a.projector();
        assert!(p.matmul(&p).unwrap().max_abs_diff(&p) < 1e-14);
        assert!(p.adjoint().max_abs_diff(&p) < 1e-15);
        assert!(inner(&a.basis()[0], &a.basis()[1]).unwrap().norm() < 1e-15);
    }

    #[test]
    fn json_round_trip_recanonicalizes() {
        let r: Ray = serde_json::from_str(r#"{"dim":2,"rep":[[0.0,0.0],[0.0,3.0]]}"#).unwrap();
        assert_eq!(r.rep(), &v(&[0.0, 1.0]));
        assert!(serde_json::from_str::<Ray>(r#"{"dim":3,"rep":[[1.0,0.0]]}"#).is_err());
        let s: Subspace =
            serde_json::from_str(r#"{"dim":2,"basis":[[[2.0,0.0],[0.0,0.0]],[[1.0,0.0],[1.0,0.0]]]}"#)
                .unwrap();
        assert!(s.is_truth());
        let back: Subspace = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
        assert!(back.same_as(&s));
    }
}
