//! The superposition `r y + (1 - r) z` of two non-orthogonal states and the
//! closed forms describing its similarity to other states.

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::geometry::{a_sim, p_sim, theta, DEFAULT_ANGLE_GUARD};
use crate::linalg::{inner_unchecked, Tolerance};
use crate::subspace::Ray;

/// Names the superposition `r y + (1 - r) z`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuperpositionSpec {
    pub y: Ray,
    pub z: Ray,
    pub r: f64,
}

impl SuperpositionSpec {
    pub fn new(y: Ray, z: Ray, r: f64) -> Result<Self> {
        let spec = SuperpositionSpec { y, z, r };
        spec.validate()?;
        Ok(spec)
    }

    /// Checks the weight range, matching dimensions and non-orthogonality.
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.r) {
            return Err(Error::InvalidWeight(self.r));
        }
        check_dim(self.y.dim(), self.z.dim())?;
        if a_sim(&self.y, &self.z)? <= Tolerance::default().eps_abs {
            return Err(Error::OrthogonalComponents);
        }
        Ok(())
    }
}

/// The superposed state.
///
/// With `v` the representative of `y` and `w` the unit vector of `z` making
/// `<v, w>` real and positive, the result is the ray of
/// `sqrt(r) v + sqrt(1 - r) w`.
pub fn superpose(spec: &SuperpositionSpec) -> Result<Ray> {
    spec.validate()?;
    if spec.r == 1.0 {
        return Ok(spec.y.clone());
    }
    if spec.r == 0.0 {
        return Ok(spec.z.clone());
    }
    let v = spec.y.rep();
    let w0 = spec.z.rep();
    let c = inner_unchecked(v, w0);
    // <v, w0 * c/|c|> = conj(c/|c|) * c = |c|
    let w = w0.scale(c / c.norm());
    let u = v.scale_real(spec.r.sqrt()).axpy((1.0 - spec.r).sqrt().into(), &w);
    Ray::from_vector(&u)
}

/// Convenience wrapper around [`superpose`].
pub fn superpose_rays(y: &Ray, z: &Ray, r: f64) -> Result<Ray> {
    superpose(&SuperpositionSpec::new(y.clone(), z.clone(), r)?)
}

/// Squared norm `1 + 2 sqrt(r (1 - r) p(y, z))` of the unnormalized superposition vector.
pub fn omega(r: f64, y: &Ray, z: &Ray) -> Result<f64> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::InvalidWeight(r));
    }
    let p = p_sim(y, z)?;
    if p.sqrt() <= Tolerance::default().eps_abs {
        return Err(Error::OrthogonalComponents);
    }
    Ok(1.0 + 2.0 * (r * (1.0 - r) * p).sqrt())
}

/// Similarity of the superposition to `x`, from `p` and `theta` of the
/// components alone (interference formula).
///
/// When `x` is orthogonal to `y` or `z` the interference term vanishes and
/// the phase is not evaluated.
pub fn p_of_superposition_closed_form(spec: &SuperpositionSpec, x: &Ray) -> Result<f64> {
    spec.validate()?;
    check_dim(spec.y.dim(), x.dim())?;
    let r = spec.r;
    let pyx = p_sim(&spec.y, x)?;
    let pzx = p_sim(&spec.z, x)?;
    let cross = r * (1.0 - r) * pyx * pzx;
    let interference = if cross == 0.0
        || a_sim(&spec.y, x)? <= DEFAULT_ANGLE_GUARD
        || a_sim(&spec.z, x)? <= DEFAULT_ANGLE_GUARD
    {
        0.0
    } else {
        2.0 * theta(x, &spec.y, &spec.z)?.cos() * cross.sqrt()
    };
    Ok((r * pyx + (1.0 - r) * pzx + interference) / omega(r, &spec.y, &spec.z)?)
}

/// `p(r y + (1 - r) z, y)`, which exceeds `p(y, z)` whenever `r > 0` and `y != z`.
pub fn p_superposed_vs_component(spec: &SuperpositionSpec) -> Result<f64> {
    p_sim(&superpose(spec)?, &spec.y)
}

/// Closed form `1 - (1 - r)(1 - p(y, z)) / omega(r, y, z)` for `p(r y + (1 - r) z, y)`.
pub fn p_superposed_component_closed_form(spec: &SuperpositionSpec) -> Result<f64> {
    spec.validate()?;
    let p = p_sim(&spec.y, &spec.z)?;
    Ok(1.0 - (1.0 - spec.r) * (1.0 - p) / omega(spec.r, &spec.y, &spec.z)?)
}

/// `cos theta(x', y, z)` for `x'` orthogonal to `x` in the plane of `x, y, z`,
/// expressed through `p` and `theta` of `x, y, z`.
pub fn cos_theta_prime(x: &Ray, x_perp: &Ray, y: &Ray, z: &Ray) -> Result<f64> {
    check_dim(x.dim(), x_perp.dim())?;
    check_dim(x.dim(), y.dim())?;
    check_dim(x.dim(), z.dim())?;
    if a_sim(x, x_perp)? > Tolerance::default().eps_abs {
        return Err(Error::DegenerateTriple("x_perp is not orthogonal to x".into()));
    }
    let pxy = p_sim(x, y)?;
    let pxz = p_sim(x, z)?;
    let denom = ((1.0 - pxy) * (1.0 - pxz)).sqrt();
    if denom <= Tolerance::default().eps_abs {
        return Err(Error::DegenerateTriple("x coincides with y or z".into()));
    }
    let num = p_sim(y, z)?.sqrt() - theta(x, y, z)?.cos() * (pxy * pxz).sqrt();
    Ok(num / denom)
}

/// Triple phase of a superposition with two other states, by construction.
pub fn theta_of_superposition(spec: &SuperpositionSpec, x1: &Ray, x2: &Ray) -> Result<f64> {
    theta(&superpose(spec)?, x1, x2)
}
