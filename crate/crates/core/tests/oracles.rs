//! Values checked against an independent numpy computation
//! (`np.vdot`, `np.linalg.qr`, `np.kron`) on the same inputs.

use approx::assert_relative_eq;
use raygeo::geometry::{p_prop, p_sim, theta};
use raygeo::probability::total_probability_residual;
use raygeo::superposition::{p_of_superposition_closed_form, superpose_rays, SuperpositionSpec};
use raygeo::tensor::tensor_ray;
use raygeo::{CVector, Ray, Subspace};

fn ray(pairs: &[(f64, f64)]) -> Ray {
    Ray::from_vector(&CVector::from_pairs(pairs).unwrap()).unwrap()
}

fn fixture() -> (Ray, Ray, Ray) {
    (
        ray(&[(1.0, 0.0), (0.0, 2.0), (-1.0, 0.5)]),
        ray(&[(0.3, 0.0), (1.0, 0.0), (0.0, 1.0)]),
        ray(&[(2.0, 0.0), (0.0, -1.0), (0.5, 0.0)]),
    )
}

#[test]
fn triple_phase_matches_numpy() {
    let (x, y, z) = fixture();
    assert_relative_eq!(theta(&x, &y, &z).unwrap(), -0.17746115985889968, epsilon = 1e-13);
}

#[test]
fn superposition_similarity_matches_numpy() {
    let (x, y, z) = fixture();
    let s = superpose_rays(&y, &z, 0.3).unwrap();
    assert_relative_eq!(p_sim(&s, &x).unwrap(), 0.2098784784502209, epsilon = 1e-13);
    let spec = SuperpositionSpec::new(y.clone(), z.clone(), 0.3).unwrap();
    assert_relative_eq!(p_of_superposition_closed_form(&spec, &x).unwrap(), 0.2098784784502209, epsilon = 1e-13);
    assert_relative_eq!(p_sim(&y, &z).unwrap(), 0.23786739576213262, epsilon = 1e-13);
}

#[test]
fn proposition_probability_matches_numpy() {
    let (x, _, _) = fixture();
    let alpha = Subspace::span(
        3,
        &[
            CVector::from_pairs(&[(1.0, 0.0), (0.0, 1.0), (0.0, 0.0)]).unwrap(),
            CVector::real(&[0.0, 1.0, 1.0]).unwrap(),
        ],
    )
    .unwrap();
    assert_relative_eq!(p_prop(&x, &alpha).unwrap(), 0.9333333333333329, epsilon = 1e-13);
    let beta = ray(&[(1.0, 0.0), (-1.0, 0.0), (0.0, 2.0)]).to_subspace();
    assert_relative_eq!(
        total_probability_residual(&x, &alpha, &beta).unwrap(),
        -0.16296296296296287,
        epsilon = 1e-13
    );
}

#[test]
fn product_similarity_matches_numpy() {
    let (x, y, _) = fixture();
    let x2 = ray(&[(1.0, 0.0), (0.0, 1.0)]);
    let y2 = ray(&[(1.0, 0.0), (-1.0, 0.0)]);
    let p = p_sim(&tensor_ray(&x, &x2).combined, &tensor_ray(&y, &y2).combined).unwrap();
    assert_relative_eq!(p, 0.3689952153110046, epsilon = 1e-13);
}
