//! Maps between ray spaces induced by injective linear maps.

use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::geometry::{a_sim, p_sim, theta, DEFAULT_ANGLE_GUARD};
use crate::linalg::{circular_distance, CVector, Mat, Tolerance};
use crate::random::{gaussian_vector, random_ray, substream_seed, TrialRng};
use crate::subspace::Ray;
use crate::superposition::superpose_rays;

/// Injective linear map `C^dim_in -> C^dim_out`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "LinearMapRepr", into = "LinearMapRepr")]
pub struct LinearMap {
    matrix: Mat,
}

#[derive(Serialize, Deserialize)]
struct LinearMapRepr {
    dim_in: usize,
    dim_out: usize,
    matrix: Mat,
}

impl TryFrom<LinearMapRepr> for LinearMap {
    type Error = Error;

    fn try_from(r: LinearMapRepr) -> Result<Self> {
        check_dim(r.dim_in, r.matrix.cols())?;
        check_dim(r.dim_out, r.matrix.rows())?;
        LinearMap::new(r.matrix)
    }
}

impl From<LinearMap> for LinearMapRepr {
    fn from(m: LinearMap) -> Self {
        LinearMapRepr {
            dim_in: m.dim_in(),
            dim_out: m.dim_out(),
            matrix: m.matrix,
        }
    }
}

impl LinearMap {
    /// Wraps a `dim_out x dim_in` matrix, rejecting numerically singular ones.
    pub fn new(matrix: Mat) -> Result<Self> {
        if matrix.cols() == 0 || matrix.rows() == 0 {
            return Err(Error::InvalidValue("empty matrix".into()));
        }
        let cols = matrix.columns();
        let scale = cols.iter().map(CVector::norm).fold(0.0, f64::max).max(1.0);
        let tol = Tolerance::new(Tolerance::default().eps_abs * scale, 1.0).expect("positive");
        if crate::linalg::orthonormalize(&cols, &tol).len() != matrix.cols() {
            return Err(Error::NotInjective);
        }
        Ok(LinearMap { matrix })
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn dim_in(&self) -> usize {
        self.matrix.cols()
    }

    pub fn dim_out(&self) -> usize {
        self.matrix.rows()
    }
}

/// The ray map `x -> m(x)` of an injective linear map `m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RegularMap {
    pub underlying: LinearMap,
}

impl RegularMap {
    pub fn new(underlying: LinearMap) -> Self {
        RegularMap { underlying }
    }

    pub fn from_matrix(matrix: Mat) -> Result<Self> {
        LinearMap::new(matrix).map(RegularMap::new)
    }

    pub fn dim_in(&self) -> usize {
        self.underlying.dim_in()
    }

    pub fn dim_out(&self) -> usize {
        self.underlying.dim_out()
    }
}

/// Image of a ray.
pub fn apply_ray(f: &RegularMap, x: &Ray) -> Result<Ray> {
    let v = f.underlying.matrix.mul_vec(x.rep())?;
    Ray::from_vector(&v)
}

/// The constant `c > 0` with `|m u| = c |u|` for all `u`, if there is one.
///
/// Decided on the Gram matrix `m^dagger m = c^2 I`, then cross-checked on
/// `probes` pseudo-random vectors.
pub fn isometry_scale(f: &RegularMap, probes: usize) -> Option<f64> {
    let m = &f.underlying.matrix;
    let n = m.cols();
    let gram = m.adjoint().matmul(m).ok()?;
    let c2 = (0..n).map(|i| gram.get(i, i).re).sum::<f64>() / n as f64;
    let tol = Tolerance::default();
    if gram.max_abs_diff(&Mat::identity(n).scale(c2.into())) > tol.eps_rel * c2 {
        return None;
    }
    let c = c2.sqrt();
    let mut rng = TrialRng::seed_from_u64(substream_seed(0, "morphism.isometry_probe", n as u64, 0));
    for _ in 0..probes {
        let u = gaussian_vector(&mut rng, n);
        let mu = m.mul_vec(&u).ok()?;
        if !tol.close(mu.norm(), c * u.norm()) {
            return None;
        }
    }
    Some(c)
}

/// A sampled instance where `f(r y + (1-r) z) != r f(y) + (1-r) f(z)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuperpositionWitness {
    pub trial: usize,
    pub y: Ray,
    pub z: Ray,
    pub r: f64,
    /// Distance between the two candidate image rays (`sqrt(2)` if the images are orthogonal).
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuperpositionVerdict {
    pub preserved: bool,
    pub trials: usize,
    pub seed: u64,
    pub worst_residual: f64,
    pub witness: Option<SuperpositionWitness>,
}

fn nonorthogonal_pair(rng: &mut TrialRng, dim: usize) -> (Ray, Ray) {
    loop {
        let y = random_ray(rng, dim);
        let z = random_ray(rng, dim);
        if a_sim(&y, &z).unwrap_or(0.0) > 1e-6 {
            return (y, z);
        }
    }
}

/// Sampled check that `f` maps superpositions to superpositions.
pub fn preserves_superpositions(f: &RegularMap, trials: usize, seed: u64) -> SuperpositionVerdict {
    let eps = Tolerance::default().eps_abs;
    let n = f.dim_in();
    let mut worst: f64 = 0.0;
    let mut witness = None;
    for t in 0..trials {
        let mut rng = TrialRng::seed_from_u64(substream_seed(seed, "morphism.superposition", n as u64, t as u64));
        let (y, z) = nonorthogonal_pair(&mut rng, n);
        let r: f64 = rng.gen_range(0.0..1.0);
        let residual = (|| -> Result<f64> {
            let (fy, fz) = (apply_ray(f, &y)?, apply_ray(f, &z)?);
            if a_sim(&fy, &fz)? <= eps {
                return Ok(std::f64::consts::SQRT_2);
            }
            let lhs = apply_ray(f, &superpose_rays(&y, &z, r)?)?;
            let rhs = superpose_rays(&fy, &fz, r)?;
            Ok(lhs.distance(&rhs))
        })()
        .unwrap_or(f64::INFINITY);
        worst = worst.max(residual);
        if residual > eps && witness.is_none() {
            witness = Some(SuperpositionWitness {
                trial: t,
                y,
                z,
                r,
                residual,
            });
        }
    }
    SuperpositionVerdict {
        preserved: witness.is_none(),
        trials,
        seed,
        worst_residual: worst,
        witness,
    }
}

/// Whether "is an isometry up to scale" and "preserves superpositions" agree on `f`.
pub fn check_char_morph(f: &RegularMap, trials: usize, seed: u64) -> bool {
    isometry_scale(f, 8).is_some() == preserves_superpositions(f, trials, seed).preserved
}

/// Worst deviations of `p` and of `theta` (circular distance) under `f`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PThetaResiduals {
    pub p: f64,
    pub theta: f64,
}

/// Sampled check that an isometry preserves `p` and `theta`.
pub fn check_preserves_p_theta(f: &RegularMap, trials: usize, seed: u64) -> Result<PThetaResiduals> {
    if isometry_scale(f, 8).is_none() {
        return Err(Error::NotIsometry);
    }
    let n = f.dim_in();
    let mut out = PThetaResiduals { p: 0.0, theta: 0.0 };
    for t in 0..trials {
        let mut rng = TrialRng::seed_from_u64(substream_seed(seed, "morphism.p_theta", n as u64, t as u64));
        let (x, y, z) = (random_ray(&mut rng, n), random_ray(&mut rng, n), random_ray(&mut rng, n));
        let (fx, fy, fz) = (apply_ray(f, &x)?, apply_ray(f, &y)?, apply_ray(f, &z)?);
        out.p = out.p.max((p_sim(&fx, &fy)? - p_sim(&x, &y)?).abs());
        let generic = [(&x, &y), (&y, &z), (&z, &x)]
            .iter()
            .all(|(a, b)| a_sim(a, b).map_or(false, |s| s > 1e3 * DEFAULT_ANGLE_GUARD));
        if generic {
            out.theta = out.theta.max(circular_distance(theta(&fx, &fy, &fz)?, theta(&x, &y, &z)?));
        }
    }
    Ok(out)
}
