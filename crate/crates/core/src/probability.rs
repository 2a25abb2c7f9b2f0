//! Born-rule probability calculus over propositions.
//!
//! The `check_*` functions evaluate one identity or inequality on a single
//! instance and return its residual, after verifying the hypotheses under
//! which the identity is a theorem.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::geometry::p_prop;
use crate::linalg::Tolerance;
use crate::random::{random_real_subspace, substream_seed};
use crate::subspace::{commutes, is_orthogonal, Projected, Ray, Subspace};

/// Pairwise orthogonal `γ1, γ2, γ3` with `α = γ1 ∨ γ2` and `β = γ1 ∨ γ3`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommutingDecomposition {
    pub gamma1: Subspace,
    pub gamma2: Subspace,
    pub gamma3: Subspace,
}

fn tol() -> Tolerance {
    Tolerance::default()
}

fn ensure_commuting(a: &Subspace, b: &Subspace) -> Result<()> {
    if commutes(a, b, &tol())? {
        Ok(())
    } else {
        Err(Error::NotCommuting)
    }
}

/// `p(α(x), β)` weighted by `p(x, α)`; zero when `x ⊥ α`.
fn weighted_conditional(x: &Ray, a: &Subspace, b: &Subspace) -> Result<f64> {
    match a.project_ray(x)? {
        Projected::Zero => Ok(0.0),
        Projected::Ray(ax) => Ok(p_prop(x, a)? * p_prop(&ax, b)?),
    }
}

/// `|p(x, α ∨ β) - p(x, α) - p(x, β)|` for orthogonal `α, β`.
pub fn check_ortho_additivity(x: &Ray, a: &Subspace, b: &Subspace) -> Result<f64> {
    if !is_orthogonal(a, b)? {
        return Err(Error::NotOrthogonal);
    }
    let j = a.join(b)?;
    Ok((p_prop(x, &j)? - p_prop(x, a)? - p_prop(x, b)?).abs())
}

/// `|p(x, α) + p(x, ¬α) - 1|`.
pub fn check_complement(x: &Ray, a: &Subspace) -> Result<f64> {
    Ok((p_prop(x, a)? + p_prop(x, &a.ortho_complement())? - 1.0).abs())
}

/// Inclusion-exclusion `|p(x, α ∨ β) - p(x, α) - p(x, β) + p(x, α ∧ β)|` for commuting `α, β`.
pub fn check_inclusion_exclusion(x: &Ray, a: &Subspace, b: &Subspace) -> Result<f64> {
    ensure_commuting(a, b)?;
    let j = a.join(b)?;
    let m = a.meet(b)?;
    Ok((p_prop(x, &j)? - p_prop(x, a)? - p_prop(x, b)? + p_prop(x, &m)?).abs())
}

/// Chain rule `|p(x, α ∧ β) - p(x, α) p(α(x), β)|` for commuting `α, β`.
///
/// When `x ⊥ α` the conjunction probability must vanish; that is checked
/// before reporting [`Error::OrthogonalState`].
pub fn check_chain_rule(x: &Ray, a: &Subspace, b: &Subspace) -> Result<f64> {
    ensure_commuting(a, b)?;
    let m = a.meet(b)?;
    match a.project_ray(x)? {
        Projected::Zero => {
            debug_assert!(p_prop(x, &m)? <= tol().eps_abs);
            Err(Error::OrthogonalState)
        }
        Projected::Ray(ax) => Ok((p_prop(x, &m)? - p_prop(x, a)? * p_prop(&ax, b)?).abs()),
    }
}

/// `p(x, α) <= p(x, β)` for `α ⊆ β`.
pub fn check_monotone(x: &Ray, a: &Subspace, b: &Subspace) -> Result<bool> {
    if !b.contains(a)? {
        return Err(Error::NotContained);
    }
    Ok(p_prop(x, a)? <= p_prop(x, b)? + tol().eps_abs)
}

/// Signed residual of the total-probability identity
/// `p(x, β) = p(x, α) p(α(x), β) + p(x, ¬α) p((¬α)(x), β)`,
/// without checking any hypothesis.
pub fn total_probability_residual(x: &Ray, a: &Subspace, b: &Subspace) -> Result<f64> {
    check_dim(a.dim(), b.dim())?;
    let na = a.ortho_complement();
    Ok(p_prop(x, b)? - weighted_conditional(x, a, b)? - weighted_conditional(x, &na, b)?)
}

/// Whether `α(β(x)) = β(α(x))` for this particular state.
pub fn locally_commute(x: &Ray, a: &Subspace, b: &Subspace) -> Result<bool> {
    check_dim(a.dim(), b.dim())?;
    check_dim(a.dim(), x.dim())?;
    let ab = a.project_unchecked(&b.project_unchecked(x.rep()));
    let ba = b.project_unchecked(&a.project_unchecked(x.rep()));
    Ok((&ab - &ba).norm() <= tol().eps_abs)
}

/// Absolute residual of the total-probability identity, defined when the
/// propositions commute, or at least commute on `x`.
pub fn check_total_probability(x: &Ray, a: &Subspace, b: &Subspace) -> Result<f64> {
    if !commutes(a, b, &tol())? && !locally_commute(x, a, b)? {
        return Err(Error::PreconditionUnmet(
            "propositions commute neither globally nor on the state".into(),
        ));
    }
    Ok(total_probability_residual(x, a, b)?.abs())
}

/// The two sides of the quantitative interference inequality.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InterferenceTerms {
    /// `p(x, β)`
    pub p_x_beta: f64,
    /// `p(β(x), α)`
    pub p_bx_alpha: f64,
    /// `p(α(β(x)), β)`
    pub p_abx_beta: f64,
}

impl InterferenceTerms {
    /// `p(β(x), α) (1 - p(α(β(x)), β)) - p(x, β) (1 - p(β(x), α))^2`
    pub fn squared_margin(&self) -> f64 {
        self.p_bx_alpha * (1.0 - self.p_abx_beta) - self.p_x_beta * (1.0 - self.p_bx_alpha).powi(2)
    }

    /// The same with the left factor not squared; may be negative.
    pub fn unsquared_margin(&self) -> f64 {
        self.p_bx_alpha * (1.0 - self.p_abx_beta) - self.p_x_beta * (1.0 - self.p_bx_alpha)
    }
}

/// Evaluates the interference terms for `x ∈ α`, `x` not orthogonal to `β`.
pub fn interference_terms(x: &Ray, a: &Subspace, b: &Subspace) -> Result<InterferenceTerms> {
    check_dim(a.dim(), b.dim())?;
    if !a.contains_ray(x)? {
        return Err(Error::PreconditionUnmet("state is not in the first proposition".into()));
    }
    let Projected::Ray(bx) = b.project_ray(x)? else {
        return Err(Error::PreconditionUnmet("state is orthogonal to the second proposition".into()));
    };
    let Projected::Ray(abx) = a.project_ray(&bx)? else {
        return Err(Error::PreconditionUnmet("projected state is orthogonal to the first proposition".into()));
    };
    Ok(InterferenceTerms {
        p_x_beta: p_prop(x, b)?,
        p_bx_alpha: p_prop(&bx, a)?,
        p_abx_beta: p_prop(&abx, b)?,
    })
}

/// Right side minus left side of the (squared) interference inequality.
pub fn check_interference_inequality(x: &Ray, a: &Subspace, b: &Subspace) -> Result<f64> {
    Ok(interference_terms(x, a, b)?.squared_margin())
}

/// A real 3-dimensional instance violating the unsquared interference inequality.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterferenceWitness {
    pub trial: u64,
    pub x: Ray,
    pub alpha_basis: Subspace,
    pub beta_basis: Subspace,
    pub p_values: InterferenceTerms,
    /// Unsquared margin; negative for a witness.
    pub margin: f64,
    /// Squared margin; non-negative by the theorem.
    pub squared_margin: f64,
}

fn search_trial(seed: u64, trial: u64) -> Option<InterferenceWitness> {
    const DIM: usize = 3;
    let mut rng = ChaCha8Rng::seed_from_u64(substream_seed(seed, "search.nonsquared", DIM as u64, trial));
    let ka = rng.gen_range(1..DIM);
    let kb = rng.gen_range(1..DIM);
    let alpha = random_real_subspace(&mut rng, DIM, ka);
    let beta = random_real_subspace(&mut rng, DIM, kb);
    let coords: Vec<_> = (0..ka).map(|_| rng.gen::<f64>() * 2.0 - 1.0).collect();
    let v = alpha
        .basis()
        .iter()
        .zip(&coords)
        .fold(crate::linalg::CVector::zeros(DIM), |acc, (b, &c)| acc.axpy(c.into(), b));
    let x = Ray::from_vector(&v).ok()?;
    let terms = interference_terms(&x, &alpha, &beta).ok()?;
    if terms.p_x_beta < 1e-6 || terms.p_bx_alpha < 1e-6 {
        return None;
    }
    let margin = terms.unsquared_margin();
    if margin < -tol().eps_abs {
        Some(InterferenceWitness {
            trial,
            x,
            alpha_basis: alpha,
            beta_basis: beta,
            p_values: terms,
            margin,
            squared_margin: terms.squared_margin(),
        })
    } else {
        None
    }
}

/// Random search over real 3-dimensional instances for a violation of the
/// interference inequality with the left factor not squared.
///
/// Trial `i` draws from its own substream of `seed`; the witness with the
/// smallest trial index is returned, independently of scheduling.
pub fn search_nonsquared_counterexample(seed: u64, budget: u64) -> Option<InterferenceWitness> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..budget).into_par_iter().find_map_first(|t| search_trial(seed, t))
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..budget).find_map(|t| search_trial(seed, t))
    }
}

/// Splits commuting `α, β` as `γ1 = α ∧ β`, `γ2 = α ∧ ¬β`, `γ3 = ¬α ∧ β`.
pub fn decompose_commuting(a: &Subspace, b: &Subspace) -> Result<CommutingDecomposition> {
    ensure_commuting(a, b)?;
    let gamma1 = a.meet(b)?;
    let gamma2 = a.meet(&b.ortho_complement())?;
    let gamma3 = a.ortho_complement().meet(b)?;
    let ok = is_orthogonal(&gamma1, &gamma2)?
        && is_orthogonal(&gamma1, &gamma3)?
        && is_orthogonal(&gamma2, &gamma3)?
        && gamma1.join(&gamma2)?.same_as(a)
        && gamma1.join(&gamma3)?.same_as(b);
    if !ok {
        return Err(Error::NotCommuting);
    }
    Ok(CommutingDecomposition {
        gamma1,
        gamma2,
        gamma3,
    })
}

/// The non-commuting planar family: `α` the first axis, `x = β` the line at angle `phi`.
///
/// Returns `(x, α, β)`; the total-probability identity then has residual
/// `1 - cos^4 phi - sin^4 phi`.
pub fn planar_noncommuting_family(phi: f64) -> (Ray, Subspace, Subspace) {
    let v = crate::linalg::CVector::real(&[phi.cos(), phi.sin()]).expect("finite");
    let x = Ray::from_vector(&v).expect("unit vector");
    (x.clone(), Subspace::coordinate(2, &[0]), x.to_subspace())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::CVector;
    use approx::assert_abs_diff_eq;

    fn ray(xs: &[f64]) -> Ray {
        Ray::from_vector(&CVector::real(xs).unwrap()).unwrap()
    }

    fn generic3() -> Ray {
        Ray::from_vector(&CVector::from_pairs(&[(0.3, 0.1), (-0.5, 0.7), (0.2, -0.4)]).unwrap()).unwrap()
    }

    #[test]
    fn additivity_examples() {
        let x = generic3();
        let a = Subspace::coordinate(3, &[0]);
        assert!(check_ortho_additivity(&x, &a, &Subspace::falsehood(3)).unwrap() < 1e-15);
        let x2 = ray(&[0.6, 0.8]);
        let (e1, e2) = (Subspace::coordinate(2, &[0]), Subspace::coordinate(2, &[1]));
        assert!(check_ortho_additivity(&x2, &e1, &e2).unwrap() < 1e-15);
        assert_abs_diff_eq!(p_prop(&x2, &e1).unwrap() + p_prop(&x2, &e2).unwrap(), 1.0, epsilon = 1e-15);
        assert_eq!(
            check_ortho_additivity(&x, &a, &Subspace::coordinate(3, &[0, 1])),
            Err(Error::NotOrthogonal)
        );
    }

    #[test]
    fn complement_examples() {
        let x = generic3();
        assert!(check_complement(&x, &Subspace::truth(3)).unwrap() < 1e-15);
        let a = Subspace::span(3, &[x.rep().clone(), CVector::basis(3, 0)]).unwrap();
        assert!(check_complement(&x, &a).unwrap() < 1e-15);
    }

    #[test]
    fn inclusion_exclusion_and_chain_rule() {
        let x = generic3();
        let a = Subspace::coordinate(3, &[0, 1]);
        assert!(check_inclusion_exclusion(&x, &a, &a.ortho_complement()).unwrap() < 1e-15);
        let b = Subspace::coordinate(3, &[1]);
        assert!(check_inclusion_exclusion(&x, &a, &b).unwrap() < 1e-15);
        let c = Subspace::coordinate(3, &[1, 2]);
        assert!(check_inclusion_exclusion(&x, &a, &c).unwrap() < 1e-15);
        assert!(check_chain_rule(&x, &a, &c).unwrap() < 1e-15);
        assert!(check_chain_rule(&x, &Subspace::truth(3), &c).unwrap() < 1e-15);
        assert_eq!(
            check_chain_rule(&Ray::basis(3, 2), &a, &c),
            Err(Error::OrthogonalState)
        );
        let skew = Subspace::span(3, &[CVector::real(&[1.0, 0.0, 1.0]).unwrap()]).unwrap();
        assert_eq!(check_inclusion_exclusion(&x, &a, &skew), Err(Error::NotCommuting));
    }

    #[test]
    fn monotone_examples() {
        let x = generic3();
        let a = Subspace::coordinate(3, &[2]);
        let b = Subspace::coordinate(3, &[0, 2]);
        assert!(check_monotone(&x, &a, &a).unwrap());
        assert!(check_monotone(&x, &Subspace::falsehood(3), &a).unwrap());
        assert!(check_monotone(&x, &a, &b).unwrap());
        assert_eq!(check_monotone(&x, &b, &a), Err(Error::NotContained));
    }

    #[test]
    fn total_probability_examples() {
        let x = generic3();
        let a = Subspace::coordinate(3, &[0, 1]);
        let c = Subspace::coordinate(3, &[1, 2]);
        assert!(check_total_probability(&x, &a, &c).unwrap() < 1e-15);

        for phi in [0.3, 0.7, 1.2, 2.5] {
            let (x, a, b) = planar_noncommuting_family(phi);
            assert!(matches!(check_total_probability(&x, &a, &b), Err(Error::PreconditionUnmet(_))));
            let r = total_probability_residual(&x, &a, &b).unwrap();
            let analytic = 1.0 - phi.cos().powi(4) - phi.sin().powi(4);
            assert_abs_diff_eq!(r, analytic, epsilon = 1e-14);
        }

        // α(x) ∈ β and (¬α)(x) ∈ β: both sides equal one
        let x = ray(&[1.0, 1.0, 0.0]);
        let a = Subspace::coordinate(3, &[0]);
        let b = Subspace::coordinate(3, &[0, 1]);
        assert_abs_diff_eq!(p_prop(&x, &b).unwrap(), 1.0, epsilon = 1e-15);
        assert!(check_total_probability(&x, &a, &b).unwrap() < 1e-15);
    }

    #[test]
    fn local_commutation_suffices() {
        // β is not compatible with α globally but x lies in α ∩ β
        let a = Subspace::coordinate(3, &[0, 1]);
        let b = Subspace::span(3, &[CVector::basis(3, 0), CVector::real(&[0.0, 1.0, 1.0]).unwrap()]).unwrap();
        let x = Ray::basis(3, 0);
        assert!(!commutes(&a, &b, &Tolerance::default()).unwrap());
        assert!(locally_commute(&x, &a, &b).unwrap());
        assert!(check_total_probability(&x, &a, &b).unwrap() < 1e-15);
    }

    #[test]
    fn interference_examples() {
        let a = Subspace::coordinate(3, &[0, 1]);
        let x = ray(&[0.6, 0.8, 0.0]);
        assert!(check_interference_inequality(&x, &a, &a).unwrap().abs() < 1e-15);
        let b = Subspace::span(3, &[x.rep().clone(), CVector::basis(3, 2)]).unwrap();
        assert!(check_interference_inequality(&x, &a, &b).unwrap() >= 0.0);
        let b = Subspace::span(3, &[CVector::real(&[1.0, 0.0, 1.0]).unwrap()]).unwrap();
        assert!(check_interference_inequality(&x, &a, &b).unwrap() >= -1e-12);
        assert!(matches!(
            check_interference_inequality(&Ray::basis(3, 2), &a, &b),
            Err(Error::PreconditionUnmet(_))
        ));
    }

    #[test]
    fn search_examples() {
        assert!(search_nonsquared_counterexample(42, 0).is_none());
        let w = search_nonsquared_counterexample(42, 100_000).expect("witness");
        assert!(w.margin < 0.0);
        assert!(w.squared_margin >= -1e-12);
        assert!(w.x.rep().is_real());
        let again = search_nonsquared_counterexample(42, 100_000).unwrap();
        assert_eq!(w, again);
    }

    #[test]
    fn decomposition_examples() {
        let a = Subspace::coordinate(4, &[0, 1]);
        let d = decompose_commuting(&a, &a).unwrap();
        assert!(d.gamma1.same_as(&a) && d.gamma2.is_falsehood() && d.gamma3.is_falsehood());
        let b = Subspace::coordinate(4, &[2]);
        let d = decompose_commuting(&a, &b).unwrap();
        assert!(d.gamma1.is_falsehood() && d.gamma2.same_as(&a) && d.gamma3.same_as(&b));
        let c = Subspace::coordinate(4, &[1, 2, 3]);
        let d = decompose_commuting(&a, &c).unwrap();
        assert_eq!((d.gamma1.rank(), d.gamma2.rank(), d.gamma3.rank()), (1, 1, 2));
        let skew = Subspace::span(4, &[CVector::real(&[1.0, 0.0, 1.0, 0.0]).unwrap()]).unwrap();
        assert_eq!(decompose_commuting(&a, &skew), Err(Error::NotCommuting));
    }
}
