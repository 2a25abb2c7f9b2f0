//! Product states in `C^d1 ⊗ C^d2`.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::{p_sim, theta};
use crate::linalg::{circular_distance, kron};
use crate::subspace::Ray;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProductRay {
    pub factor1: Ray,
    pub factor2: Ray,
    /// Ray of the Kronecker product, in dimension `d1 * d2`.
    pub combined: Ray,
}

pub fn tensor_ray(x1: &Ray, x2: &Ray) -> ProductRay {
    let combined = Ray::from_vector(&kron(x1.rep(), x2.rep())).expect("product of unit vectors is a unit vector");
    ProductRay {
        factor1: x1.clone(),
        factor2: x2.clone(),
        combined,
    }
}

/// `|p(x1 ⊗ x2, y1 ⊗ y2) - p(x1, y1) p(x2, y2)|`.
pub fn check_p_product(x1: &Ray, y1: &Ray, x2: &Ray, y2: &Ray) -> Result<f64> {
    let lhs = p_sim(&tensor_ray(x1, x2).combined, &tensor_ray(y1, y2).combined)?;
    Ok((lhs - p_sim(x1, y1)? * p_sim(x2, y2)?).abs())
}

/// Circular distance between `theta` of the product triple and `theta1 + theta2`.
pub fn check_theta_product(x1: &Ray, y1: &Ray, z1: &Ray, x2: &Ray, y2: &Ray, z2: &Ray) -> Result<f64> {
    let t1 = theta(x1, y1, z1)?;
    let t2 = theta(x2, y2, z2)?;
    let t = theta(
        &tensor_ray(x1, x2).combined,
        &tensor_ray(y1, y2).combined,
        &tensor_ray(z1, z2).combined,
    )?;
    Ok(circular_distance(t, t1 + t2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{inner, CVector, Cplx, Tolerance};
    use crate::random::{gaussian_vector, TrialRng};
    use rand::SeedableRng;
    use std::f64::consts::FRAC_PI_2;

    fn ray(pairs: &[(f64, f64)]) -> Ray {
        Ray::from_vector(&CVector::from_pairs(pairs).unwrap()).unwrap()
    }

    #[test]
    fn tensor_examples() {
        let e = tensor_ray(&Ray::basis(2, 0), &Ray::basis(2, 0));
        assert_eq!(e.combined, Ray::basis(4, 0));
        let d = ray(&[(1.0, 0.0), (1.0, 0.0)]);
        let p = tensor_ray(&d, &Ray::basis(2, 0));
        let expected = ray(&[(1.0, 0.0), (0.0, 0.0), (1.0, 0.0), (0.0, 0.0)]);
        assert!(p.combined.same_as(&expected, &Tolerance::default()));
        assert_eq!(p.combined.dim(), 4);
    }

    #[test]
    fn factor_phases_are_irrelevant() {
        let x1 = ray(&[(0.3, 0.2), (1.0, -0.5)]);
        let x2 = ray(&[(0.0, 1.0), (0.4, 0.0), (0.1, 0.1)]);
        let a = tensor_ray(&x1, &x2).combined;
        let v = kron(&x1.rep().scale(Cplx::from_polar(1.0, 1.3)), &x2.rep().scale(Cplx::from_polar(1.0, -0.4)));
        assert!(a.same_as(&Ray::from_vector(&v).unwrap(), &Tolerance::default()));
    }

    #[test]
    fn p_product_examples() {
        let x1 = ray(&[(0.3, 0.2), (1.0, -0.5)]);
        let x2 = ray(&[(0.0, 1.0), (0.4, 0.0), (0.1, 0.1)]);
        assert!(check_p_product(&x1, &x1, &x2, &x2).unwrap() < 1e-14);
        let perp = ray(&[(1.0, 0.5), (-0.3, 0.2)]);
        assert!(crate::geometry::p_sim(&x1, &perp).unwrap() < 1e-14);
        assert!(check_p_product(&x1, &perp, &x2, &x2).unwrap() < 1e-14);
        let y2 = ray(&[(1.0, 0.0), (0.2, 0.7), (0.0, -0.3)]);
        assert!(check_p_product(&x1, &perp, &x2, &y2).unwrap() < 1e-14);
    }

    #[test]
    fn theta_product_examples() {
        let x = ray(&[(1.0, 0.0), (0.0, 0.0)]);
        let y = ray(&[(1.0, 0.0), (1.0, 0.0)]);
        let z = ray(&[(1.0, 0.0), (0.0, 1.0)]);
        assert!(check_theta_product(&x, &y, &z, &x, &y, &z).unwrap() < 1e-14);
        let t = theta(
            &tensor_ray(&x, &x).combined,
            &tensor_ray(&y, &y).combined,
            &tensor_ray(&z, &z).combined,
        )
        .unwrap();
        assert!((t + FRAC_PI_2).abs() < 1e-14);
        let w = ray(&[(0.3, 0.0), (0.9, 0.0)]);
        assert!(check_theta_product(&x, &y, &z, &w, &w, &w).unwrap() < 1e-14);
    }

    #[test]
    fn inner_product_factorizes() {
        let mut rng = TrialRng::seed_from_u64(11);
        for _ in 0..20 {
            let (u1, v1) = (gaussian_vector(&mut rng, 2), gaussian_vector(&mut rng, 2));
            let (u2, v2) = (gaussian_vector(&mut rng, 3), gaussian_vector(&mut rng, 3));
            let lhs = inner(&kron(&u1, &u2), &kron(&v1, &v2)).unwrap();
            let rhs = inner(&u1, &v1).unwrap() * inner(&u2, &v2).unwrap();
            assert!((lhs - rhs).norm() < 1e-12);
        }
    }
}
