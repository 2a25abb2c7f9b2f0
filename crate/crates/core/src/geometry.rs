//! Similarity of pairs, phase of triples, coplanarity and reciprocity.

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::linalg::{carg, inner_unchecked, wrap_angle, Tolerance};
use crate::subspace::{Projected, Ray, Subspace};

/// Pairwise `a` below this value makes the triple phase undefined.
pub const DEFAULT_ANGLE_GUARD: f64 = 1e-8;

/// Three rays of a common space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Triple {
    pub x: Ray,
    pub y: Ray,
    pub z: Ray,
}

/// Modulus of the inner product of unit representatives, in `[0, 1]`.
pub fn a_sim(x: &Ray, y: &Ray) -> Result<f64> {
    check_dim(x.dim(), y.dim())?;
    Ok(inner_unchecked(x.rep(), y.rep()).norm().min(1.0))
}

/// Transition probability between two states.
pub fn p_sim(x: &Ray, y: &Ray) -> Result<f64> {
    check_dim(x.dim(), y.dim())?;
    Ok(inner_unchecked(x.rep(), y.rep()).norm_sqr().min(1.0))
}

/// Probability that state `x` satisfies proposition `a` (Born rule).
pub fn p_prop(x: &Ray, a: &Subspace) -> Result<f64> {
    match a.project_ray(x)? {
        Projected::Zero => Ok(0.0),
        Projected::Ray(ax) => p_sim(x, &ax),
    }
}

/// Triple phase with the default orthogonality guard.
pub fn theta(x: &Ray, y: &Ray, z: &Ray) -> Result<f64> {
    theta_guarded(x, y, z, DEFAULT_ANGLE_GUARD)
}

/// Sum of the arguments of `<x,y>`, `<y,z>` and `<z,x>`, wrapped to `(-pi, pi]`.
///
/// Fails with [`Error::OrthogonalPair`] naming the first pair whose `a`
/// is at most `guard`.
pub fn theta_guarded(x: &Ray, y: &Ray, z: &Ray, guard: f64) -> Result<f64> {
    check_dim(x.dim(), y.dim())?;
    check_dim(x.dim(), z.dim())?;
    let xy = inner_unchecked(x.rep(), y.rep());
    let yz = inner_unchecked(y.rep(), z.rep());
    let zx = inner_unchecked(z.rep(), x.rep());
    for (c, name) in [(xy, "(x, y)"), (yz, "(y, z)"), (zx, "(z, x)")] {
        if c.norm() <= guard {
            return Err(Error::OrthogonalPair(name));
        }
    }
    let tol = Tolerance::default();
    Ok(wrap_angle(carg(xy, &tol)? + carg(yz, &tol)? + carg(zx, &tol)?))
}

/// Three rays lie in a common plane.
///
/// True when two of them coincide, or when `y` and `z` have the same
/// projection onto the orthocomplement of `x`.
pub fn coplanar(x: &Ray, y: &Ray, z: &Ray) -> Result<bool> {
    check_dim(x.dim(), y.dim())?;
    check_dim(x.dim(), z.dim())?;
    let tol = Tolerance::default();
    if x.same_as(y, &tol) || y.same_as(z, &tol) || z.same_as(x, &tol) {
        return Ok(true);
    }
    let not_x = x.to_subspace().ortho_complement();
    match (not_x.project_ray(y)?, not_x.project_ray(z)?) {
        (Projected::Ray(py), Projected::Ray(pz)) => Ok(projections_agree(&py, &pz)),
        // y or z is numerically equal to x
        _ => Ok(true),
    }
}

// equality test for projected rays, looser than `Ray::same_as`
fn projections_agree(a: &Ray, b: &Ray) -> bool {
    inner_unchecked(a.rep(), b.rep()).norm() > 1.0 - Tolerance::default().eps_abs
}

fn complement_image(of: &Ray, target: &Ray) -> Option<Ray> {
    of.to_subspace()
        .ortho_complement()
        .project_ray(target)
        .ok()
        .and_then(Projected::into_ray)
}

/// The orthocomplement triple `((¬x)(y), (¬y)(z), (¬z)(x))` of a coplanar,
/// pairwise distinct, pairwise non-orthogonal triple.
pub fn prime_triple(x: &Ray, y: &Ray, z: &Ray) -> Result<Triple> {
    check_dim(x.dim(), y.dim())?;
    check_dim(x.dim(), z.dim())?;
    let tol = Tolerance::default();
    if x.same_as(y, &tol) || y.same_as(z, &tol) || z.same_as(x, &tol) {
        return Err(Error::DegenerateTriple("two of the rays are equal".into()));
    }
    for (a, b) in [(x, y), (y, z), (z, x)] {
        if a_sim(a, b)? <= DEFAULT_ANGLE_GUARD {
            return Err(Error::DegenerateTriple("two of the rays are orthogonal".into()));
        }
    }
    if !coplanar(x, y, z)? {
        return Err(Error::DegenerateTriple("rays are not coplanar".into()));
    }
    let missing = || Error::DegenerateTriple("complement projection vanished".into());
    Ok(Triple {
        x: complement_image(x, y).ok_or_else(missing)?,
        y: complement_image(y, z).ok_or_else(missing)?,
        z: complement_image(z, x).ok_or_else(missing)?,
    })
}

/// Whether `(¬x)(y) = (¬x)(z)` implies `(¬y)(z) = (¬y)(x)` for this triple.
///
/// Vacuously true when the antecedent fails.
pub fn reciprocity_holds(x: &Ray, y: &Ray, z: &Ray) -> Result<bool> {
    check_dim(x.dim(), y.dim())?;
    check_dim(x.dim(), z.dim())?;
    let same = |a: Option<Ray>, b: Option<Ray>| match (a, b) {
        (Some(a), Some(b)) => projections_agree(&a, &b),
        (None, None) => true,
        _ => false,
    };
    if !same(complement_image(x, y), complement_image(x, z)) {
        return Ok(true);
    }
    Ok(same(complement_image(y, z), complement_image(y, x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{CVector, Cplx};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

    fn ray(pairs: &[(f64, f64)]) -> Ray {
        Ray::from_vector(&CVector::from_pairs(pairs).unwrap()).unwrap()
    }

    fn hand_triple() -> (Ray, Ray, Ray) {
        (
            ray(&[(1.0, 0.0), (0.0, 0.0)]),
            ray(&[(1.0, 0.0), (1.0, 0.0)]),
            ray(&[(1.0, 0.0), (0.0, 1.0)]),
        )
    }

    #[test]
    fn similarity_examples() {
        let e1 = Ray::basis(2, 0);
        let e2 = Ray::basis(2, 1);
        let d = ray(&[(1.0, 0.0), (1.0, 0.0)]);
        assert_abs_diff_eq!(a_sim(&e1, &e1).unwrap(), 1.0);
        assert_eq!(a_sim(&e1, &e2).unwrap(), 0.0);
        assert_abs_diff_eq!(a_sim(&e1, &d).unwrap(), FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_abs_diff_eq!(p_sim(&e1, &e1).unwrap(), 1.0);
        assert_eq!(p_sim(&e1, &e2).unwrap(), 0.0);
        assert_abs_diff_eq!(p_sim(&e1, &d).unwrap(), 0.5, epsilon = 1e-15);
        assert!(p_sim(&e1, &Ray::basis(3, 0)).is_err());
    }

    #[test]
    fn p_prop_examples() {
        let e12 = Subspace::coordinate(3, &[0, 1]);
        assert_abs_diff_eq!(p_prop(&Ray::basis(3, 1), &e12).unwrap(), 1.0, epsilon = 1e-15);
        assert_eq!(p_prop(&Ray::basis(3, 2), &e12).unwrap(), 0.0);
        let x = ray(&[(1.0, 0.0), (1.0, 0.0), (1.0, 0.0)]);
        assert_abs_diff_eq!(p_prop(&x, &e12).unwrap(), 2.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn theta_examples() {
        let (x, y, z) = hand_triple();
        assert_abs_diff_eq!(theta(&x, &y, &z).unwrap(), -FRAC_PI_4, epsilon = 1e-15);
        assert_abs_diff_eq!(theta(&x, &y, &x).unwrap(), 0.0, epsilon = 1e-15);
        let real = (
            ray(&[(1.0, 0.0), (0.2, 0.0), (0.1, 0.0)]),
            ray(&[(0.5, 0.0), (1.0, 0.0), (0.0, 0.0)]),
            ray(&[(0.3, 0.0), (0.4, 0.0), (1.0, 0.0)]),
        );
        assert_abs_diff_eq!(theta(&real.0, &real.1, &real.2).unwrap(), 0.0, epsilon = 1e-15);
        assert_eq!(
            theta(&Ray::basis(2, 0), &Ray::basis(2, 1), &y),
            Err(Error::OrthogonalPair("(x, y)"))
        );
    }

    #[test]
    fn coplanar_examples() {
        let x = ray(&[(1.0, 0.0), (0.3, 0.1), (0.0, 2.0)]);
        let z = ray(&[(0.0, 1.0), (0.5, 0.0), (1.0, 0.0)]);
        assert!(coplanar(&x, &x, &z).unwrap());
        assert!(!coplanar(&Ray::basis(3, 0), &Ray::basis(3, 1), &Ray::basis(3, 2)).unwrap());
        let y = ray(&[(0.2, 0.0), (1.0, -1.0), (0.5, 0.0)]);
        let s = Ray::from_vector(&(x.rep() + y.rep())).unwrap();
        assert!(coplanar(&x, &y, &s).unwrap());
        assert!(coplanar(&s, &x, &y).unwrap());
        assert!(!coplanar(&x, &y, &z).unwrap());
    }

    #[test]
    fn prime_triple_examples() {
        let (x, y, z) = hand_triple();
        let p = prime_triple(&x, &y, &z).unwrap();
        assert_abs_diff_eq!(theta(&p.x, &p.y, &p.z).unwrap(), FRAC_PI_4, epsilon = 1e-14);
        for (a, b) in [(&x, &p.x), (&y, &p.y), (&z, &p.z)] {
            assert!(a_sim(a, b).unwrap() < 1e-15);
        }
        let real = (
            ray(&[(1.0, 0.0), (0.2, 0.0)]),
            ray(&[(0.5, 0.0), (1.0, 0.0)]),
            ray(&[(0.3, 0.0), (0.4, 0.0)]),
        );
        let p = prime_triple(&real.0, &real.1, &real.2).unwrap();
        assert!(theta(&p.x, &p.y, &p.z).unwrap().abs() < 1e-14);
        assert!(matches!(prime_triple(&x, &x, &z), Err(Error::DegenerateTriple(_))));
    }

    #[test]
    fn reciprocity_examples() {
        let (x, y, z) = hand_triple();
        assert!(reciprocity_holds(&x, &y, &z).unwrap());
        let g = (
            ray(&[(1.0, 0.0), (0.3, 0.1), (0.0, 2.0)]),
            ray(&[(0.2, 0.0), (1.0, -1.0), (0.5, 0.0)]),
            ray(&[(0.0, 1.0), (0.5, 0.0), (1.0, 0.0)]),
        );
        assert!(reciprocity_holds(&g.0, &g.1, &g.2).unwrap());
        assert!(reciprocity_holds(&Ray::basis(3, 0), &Ray::basis(3, 1), &Ray::basis(3, 2)).unwrap());
    }

    #[test]
    fn theta_ignores_representative_phases() {
        let x = ray(&[(1.0, 0.5), (0.3, 0.1), (0.0, 2.0)]);
        let y = ray(&[(0.2, 0.0), (1.0, -1.0), (0.5, 0.3)]);
        let z = ray(&[(0.0, 1.0), (0.5, 0.0), (1.0, 0.4)]);
        let t = theta(&x, &y, &z).unwrap();
        // re-deriving the rays from rotated representatives canonicalizes again,
        // so compute the sum of arguments directly on rotated vectors
        let ph = |a: f64| Cplx::from_polar(1.0, a);
        let (u, v, w) = (x.rep().scale(ph(0.7)), y.rep().scale(ph(-2.1)), z.rep().scale(ph(2.9)));
        let tol = Tolerance::default();
        let raw = carg(inner_unchecked(&u, &v), &tol).unwrap()
            + carg(inner_unchecked(&v, &w), &tol).unwrap()
            + carg(inner_unchecked(&w, &u), &tol).unwrap();
        assert!(crate::linalg::circular_distance(raw, t) < 1e-14);
    }
}
