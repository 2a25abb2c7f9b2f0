//! The law registry and the per-trial checkers.

use rand::Rng;

use super::sample::{random_ray_in, Flavor, Instance};
use super::{Budget, Law, LawKind, Outcome};
use crate::error::{Error, Result};
use crate::geometry::{a_sim, coplanar, p_prop, p_sim, prime_triple, reciprocity_holds, theta};
use crate::linalg::{carg, circular_distance, inner, CVector, Cplx, Mat, Tolerance, ONE};
use crate::morphism::{
    apply_ray, check_char_morph, check_preserves_p_theta, isometry_scale, preserves_superpositions, RegularMap,
};
use crate::probability::{
    check_chain_rule, check_complement, check_inclusion_exclusion, check_monotone, check_ortho_additivity,
    check_total_probability, decompose_commuting, interference_terms, locally_commute,
    planar_noncommuting_family, total_probability_residual,
};
use crate::random::{
    gaussian_cplx, random_isometry, random_orthonormal_basis, random_phase, random_ray, random_subspace, TrialRng,
};
use crate::subspace::{commutes, commutes_on_probes, is_member, Ray, Subspace};
use crate::superposition::{
    cos_theta_prime, p_of_superposition_closed_form, p_superposed_component_closed_form, superpose_rays,
    SuperpositionSpec,
};
use crate::tensor::{check_p_product, check_theta_product};

const TOL: f64 = 1e-10;
const ANGLE_TOL: f64 = 1e-8;
const REL_TOL: f64 = 1e-9;
// pairs closer to orthogonal than this are outside the phase laws
const NEAR_ORTHO: f64 = 1e-6;
const MORPHISM_TRIALS: usize = 20;

macro_rules! require {
    ($cond:expr, $residual:expr, $reason:expr) => {
        if !$cond {
            return Ok(Outcome::fail($residual, $reason));
        }
    };
}

fn tol() -> Tolerance {
    Tolerance::default()
}

fn ray(inst: &Instance, i: usize) -> Result<&Ray> {
    inst.rays
        .get(i)
        .ok_or_else(|| Error::PreconditionUnmet(format!("instance has fewer than {} rays", i + 1)))
}

fn sub(inst: &Instance, i: usize) -> Result<&Subspace> {
    inst.subspaces
        .get(i)
        .ok_or_else(|| Error::PreconditionUnmet(format!("instance has fewer than {} subspaces", i + 1)))
}

fn map(inst: &Instance) -> Result<RegularMap> {
    inst.map
        .clone()
        .map(RegularMap::new)
        .ok_or_else(|| Error::PreconditionUnmet("instance has no map".into()))
}

fn complement(x: &Ray) -> Subspace {
    x.to_subspace().ortho_complement()
}

fn image(s: &Subspace, x: &Ray) -> Result<Option<Ray>> {
    Ok(s.project_ray(x)?.into_ray())
}

fn min_pairwise_a(rays: &[&Ray]) -> Result<f64> {
    let mut m = f64::INFINITY;
    for (i, a) in rays.iter().enumerate() {
        for b in &rays[i + 1..] {
            m = m.min(a_sim(a, b)?);
        }
    }
    Ok(m)
}

fn generic_pair(rng: &mut TrialRng, dim: usize) -> (Subspace, Subspace) {
    let draw = |rng: &mut TrialRng| {
        let k = if dim <= 2 { 1 } else { rng.gen_range(1..dim) };
        random_subspace(rng, dim, k)
    };
    let a = draw(rng);
    let b = draw(rng);
    (a, b)
}

fn bool_residual(ok: bool) -> f64 {
    if ok {
        0.0
    } else {
        1.0
    }
}

// ---- states and superposition ----

fn classical(inst: &Instance, _: &mut TrialRng) -> Result<Outcome> {
    let (x, y) = (ray(inst, 0)?, ray(inst, 1)?);
    let Some(img) = image(&complement(x), y)? else {
        return Ok(Outcome::fail(1.0, "orthogonal basis ray projected to zero"));
    };
    let mut res = img.distance(y);
    for (i, u) in inst.rays.iter().enumerate() {
        for w in &inst.rays[i + 1..] {
            require!(
                matches!(superpose_rays(u, w, inst.r), Err(Error::OrthogonalComponents)),
                1.0,
                "superposition of orthogonal basis rays did not fail"
            );
        }
    }
    for a in &inst.subspaces {
        let p = p_prop(x, a)?;
        res = res.max(p.min(1.0 - p).abs());
    }
    if let Ok(z) = ray(inst, 2) {
        require!(reciprocity_holds(x, y, z)?, 1.0, "reciprocity failed on basis rays");
    }
    Ok(Outcome::Residual(res))
}

fn reciprocity(inst: &Instance, _: &mut TrialRng) -> Result<Outcome> {
    let (x, y, z) = (ray(inst, 0)?, ray(inst, 1)?, ray(inst, 2)?);
    if min_pairwise_a(&[x, y, z])? > 1.0 - NEAR_ORTHO {
        return Ok(Outcome::Skip);
    }
    let pair = |of: &Ray, a: &Ray, b: &Ray| -> Result<Option<f64>> {
        let n = complement(of);
        Ok(match (image(&n, a)?, image(&n, b)?) {
            (Some(p), Some(q)) => Some(p.distance(&q)),
            _ => None,
        })
    };
    let (Some(ante), Some(cons)) = (pair(x, y, z)?, pair(y, z, x)?) else {
        return Ok(Outcome::Skip);
    };
    require!(reciprocity_holds(x, y, z)?, cons, "reciprocity reported false");
    Ok(Outcome::Residual(ante.max(cons)))
}

fn def_coplanarity(inst: &Instance, rng: &mut TrialRng) -> Result<Outcome> {
    let (x, y, z) = (ray(inst, 0)?, ray(inst, 1)?, ray(inst, 2)?);
    for (a, b, c) in [(x, y, z), (x, z, y), (y, x, z), (y, z, x), (z, x, y), (z, y, x)] {
        require!(coplanar(a, b, c)?, 1.0, "rays of one plane reported non-coplanar");
    }
    if inst.dim >= 3 {
        let g: Vec<Ray> = (0..3).map(|_| random_ray(rng, inst.dim)).collect();
        require!(!coplanar(&g[0], &g[1], &g[2])?, 1.0, "generic triple reported coplanar");
    }
    Ok(Outcome::Residual(0.0))
}

fn superposition_exists(inst: &Instance, _: &mut TrialRng) -> Result<Outcome> {
    let (y, z) = (ray(inst, 1)?, ray(inst, 2)?);
    let s = superpose_rays(y, z, inst.r)?;
    require!(s.dim() == inst.dim, 1.0, "superposition changed dimension");
    if let Some(zp) = image(&complement(y), z)? {
        require!(
            matches!(superpose_rays(y, &zp, inst.r), Err(Error::OrthogonalComponents)),
            1.0,
            "superposition of orthogonal rays did not fail"
        );
    }
    Ok(Outcome::Residual(0.0))
}

fn triviality(inst: &Instance, _: &mut TrialRng) -> Result<Outcome> {
    let y = ray(inst, 1)?;
    Ok(Outcome::Residual(superpose_rays(y, y, inst.r)?.distance(y)))
}

fn superposition_coplanar(inst: &Instance, _: &mut TrialRng) -> Result<Outcome> {
    let (y, z) = (ray(inst, 1)?, ray(inst, 2)?);
    let s = superpose_rays(y, z, inst.r)?;
    Ok(Outcome::Residual(bool_residual(coplanar(&s, y, z)?)))
}

fn representative_independence(inst: &Instance, rng: &mut TrialRng) -> Result<Outcome> {
    let (y, z, r) = (ray(inst, 1)?, ray(inst, 2)?, inst.r);
    let v = y.rep().scale(random_phase(rng));
    let w0 = z.rep().scale(random_phase(rng));
    let c = inner(&v, &w0)?;
    let w = w0.scale(c / c.norm());
    let phase = inner(&v, &w)?;
    let u = v.scale_real(r.sqrt()).axpy(Cplx::new((1.0 - r).sqrt(), 0.0), &w);
    let oracle = Ray::from_vector(&u)?;
    let res = oracle.distance(&superpose_rays(y, z, r)?).max(phase.im.abs());
    require!(phase.re > 0.0, phase.re.abs(), "aligned inner product is not positive");
    Ok(Outcome::Residual(res))
}

fn superposition_symmetry(inst: &Instance, _: &mut TrialRng) -> Result<Outcome> {
    let (y, z, r) = (ray(inst, 1)?, ray(inst, 2)?, inst.r);
    let swapped = superpose_rays(y, z, r)?.distance(&superpose_rays(z, y, 1.0 - r)?);
    let at_one = superpose_rays(y, z, 1.0)?.distance(y);
    let at_zero = superpose_rays(y, z, 0.0)?.distance(z);
    Ok(Outcome::Residual(swapped.max(at_one).max(at_zero)))
}

// ---- similarity and probability of states ----

fn a_properties(inst: &Instance, rng: &mut TrialRng) -> Result<Outcome> {
    let (x, y) = (ray(inst, 0)?, ray(inst, 1)?);
    let a = a_sim(x, y)?;
    let mut res = (a_sim(x, x)? - 1.0).abs().max((a - a_sim(y, x)?).abs());
    res = res.max((-a).max(a - 1.0).max(0.0));
    let u = x.rep().scale(random_phase(rng));
    let v = y.rep().scale(random_phase(rng));
    res = res.max((inner(&u, &v)?.norm() - a).abs());
    if let Some(yp) = image(&complement(x), y)? {
        res = res.max(a_sim(x, &yp)?);
    }
    Ok(Outcome::Residual(res))
}

fn projection_residual(inst: &Instance, _: &mut TrialRng) -> Result<Outcome> {
    let (x, a) = (ray(inst, 0)?, sub(inst, 0)?);
    let u = x.rep();
    let w = u - &a.project_vec(u)?;
    let mut res = a.basis().iter().map(|b| inner(&w, b).map(|c| c.norm())).try_fold(0.0, |m, c| c.map(|c| f64::max(m, c)))?;
    let p = a.projector();
    res = res.max(p.matmul(&p)?.max_abs_diff(&p)).max(p.adjoint().max_abs_diff(&p));
    Ok(Outcome::Residual(res))
}

fn p_properties(inst: &Instance, _: &mut TrialRng) -> Result<Outcome> {
    let (x, y) = (ray(inst, 0)?, ray(inst, 1)?);
    let p = p_sim(x, y)?;
    let direct = inner(x.rep(), y.rep())?.norm_sqr();
    let projected = y.to_subspace().project_vec(x.rep())?.norm_sqr();
    let res = (p - p_sim(y, x)?)
        .abs()
        .max((p - direct).abs())
        .max((p - projected).abs())
        .max((p - p_prop(x, &y.to_subspace())?).abs());
    Ok(Outcome::Residual(res))
}

fn p_factorization(inst: &Instance, rng: &mut TrialRng) -> Result<Outcome> {
    let (x, a) = (ray(inst, 0)?, sub(inst, 0)?);
    let Some(ax) = image(a, x)? else {
        return Ok(Outcome::Skip);
    };
    let y = random_ray_in(rng, a);
    Ok(Outcome::Residual((p_sim(x, &y)? - p_prop(x, a)? * p_sim(&ax, &y)?).abs()))
}

fn projection_maximal(inst: &Instance, rng: &mut TrialRng) -> Result<Outcome> {
    const SAMPLES: usize = 200;
    const MARGIN: f64 = 1e-12;
    let (x, a) = (ray(inst, 0)?, sub(inst, 0)?);
    let Some(ax) = image(a, x)? else {
        return Ok(Outcome::Skip);
    };
    let best = p_sim(x, &ax)?;
    let mut res = (best - p_prop(x, a)?).abs();
    for _ in 0..SAMPLES {
        let y = random_ray_in(rng, a);
        let p = p_sim(x, &y)?;
        res = res.max(p - best);
        require!(
            best - p > MARGIN || y.distance(&ax) <= 1e-6,
            best - p,
            "a ray other than the projection came within the margin"
        );
    }
    Ok(Outcome::Residual(res.max(0.0)))
}

fn satisfaction(inst: &Instance, rng: &mut TrialRng) -> Result<Outcome> {
    let (x, a) = (ray(inst, 0)?, sub(inst, 0)?);
    let inside = random_ray_in(rng, a);
    let res = (p_prop(&inside, a)? - 1.0).abs();
    require!(is_member(&inside, a)?, res, "ray drawn inside the subspace is not a member");
    if !a.is_truth() {
        let p = p_prop(x, a)?;
        require!(p < 1.0 - 1e-6 && !is_member(x, a)?, 1.0 - p, "generic ray satisfied a proper subspace");
    }
    Ok(Outcome::Residual(res))
}

fn born(inst: &Instance, rng: &mut TrialRng) -> Result<Outcome> {
    let (x, a) = (ray(inst, 0)?, sub(inst, 0)?);
    let mut c = gaussian_cplx(rng);
    while c.norm() < 1e-3 {
        c = gaussian_cplx(rng);
    }
    let u = x.rep().scale(c);
    let ratio = a.project_vec(&u)?.norm_sqr() / u.norm_sqr();
    Ok(Outcome::Residual((p_prop(x, a)? - ratio).abs()))
}

fn unit_interval(inst: &Instance, _: &mut TrialRng) -> Result<Outcome> {
    let x = ray(inst, 0)?;
    let mut res: f64 = 0.0;
    for a in &inst.subspaces {
        let p = p_prop(x, a)?;
        res = res.max((-p).max(p - 1.0));
    }
    res = res
        .max((p_prop(x, &Subspace::truth(inst.dim))? - 1.0).abs())
        .max(p_prop(x, &Subspace::falsehood(inst.dim))?.abs());
    Ok(Outcome::Residual(res.max(0.0)))
}

// ---- commuting propositions ----

fn commuting_decomposition(inst: &Instance, rng: &mut TrialRng) -> Result<Outcome> {
    let (a, b) = (sub(inst, 0)?, sub(inst, 1)?);
    decompose_commuting(a, b)?;
    let (ga, gb) = generic_pair(rng, inst.dim);
    require!(
        matches!(decompose_commuting(&ga, &gb), Err(Error::NotCommuting)),
        1.0,
        "generic pair admitted a commuting decomposition"
    );
    Ok(Outcome::Residual(0.0))
}

fn commuting_criteria(inst: &Instance, rng: &mut TrialRng) -> Result<Outcome> {
    let (a, b) = (sub(inst, 0)?.clone(), sub(inst, 1)?.clone());
    let (ga, gb) = generic_pair(rng, inst.dim);
    let probes: Vec<Ray> = (0..8).map(|_| random_ray(rng, inst.dim)).collect();
    for (s, t, expected) in [(&a, &b, true), (&ga, &gb, false)] {
        let (ps, pt) = (s.projector(), t.projector());
        let gap = ps.matmul(&pt)?.max_abs_diff(&pt.matmul(&ps)?);
        require!((gap <= TOL) == expected, gap, "projector commutator disagrees with the construction");
        require!(commutes(s, t, &tol())? == expected, gap, "commutation verdict disagrees");
        require!(
            commutes_on_probes(s, t, &probes, &tol())? == expected,
            gap,
            "probe verdict disagrees"
        );
    }
    Ok(Outcome::Residual(0.0))
}

fn nested_commute(inst: &Instance, _: &mut TrialRng) -> Result<Outcome> {
    let (a, b) = (sub(inst, 0)?, sub(inst, 1)?);
    require!(commutes(a, b, &tol())?, 1.0, "nested pair does not commute");
    require!(commutes(a, &b.ortho_complement(), &tol())?, 1.0, "orthogonal pair does not commute");
    Ok(Outcome::Residual(0.0))
}

fn negation_commute(inst: &Instance, rng: &mut TrialRng) -> Result<Outcome> {
    let (a, b) = (sub(inst, 0)?.clone(), sub(inst, 1)?.clone());
    let (ga, gb) = generic_pair(rng, inst.dim);
    for (s, t) in [(&a, &b), (&ga, &gb)] {
        require!(
            commutes(s, t, &tol())? == commutes(&s.ortho_complement(), t, &tol())?,
            1.0,
            "negation changed the commutation verdict"
        );
    }
    Ok(Outcome::Residual(0.0))
}

fn blocks(inst: &Instance) -> Result<&[Subspace]> {
    if inst.blocks.len() < 2 {
        return Err(Error::PreconditionUnmet("instance has no orthogonal blocks".into()));
    }
    Ok(&inst.blocks)
}

fn ortho_additivity(inst: &Instance, _: &mut TrialRng) -> Result<Outcome> {
    let bs = blocks(inst)?;
    Ok(Outcome::Residual(check_ortho_additivity(ray(inst, 0)?, &bs[0], &bs[1])?))
}

fn finite_additivity(inst: &Instance, _: &mut TrialRng) -> Result<Outcome> {
    let (x, bs) = (ray(inst, 0)?, blocks(inst)?);
    let mut joined = bs[0].clone();
    let mut sum = p_prop(x, &bs[0])?;
    let mut res: f64 = 0.0;
    for b in &bs[1..] {
        joined = joined.join(b)?;
        sum += p_prop(x, b)?;
        res = res.max((p_prop(x, &joined)? - sum).abs());
    }
    Ok(Outcome::Residual(res))
}

fn complement_sum(inst: &Instance, _: &mut TrialRng) -> Result<Outcome> {
    let x = ray(inst, 0)?;
    let mut res: f64 = 0.0;
    for a in &inst.subspaces {
        res = res.max(check_complement(x, a)?);
    }
    Ok(Outcome::Residual(res))
}

fn inclusion_exclusion(inst: &Instance, _: &mut TrialRng) -> Result<Outcome> {
    Ok(Outcome::Residual(check_inclusion_exclusion(ray(inst, 0)?, sub(inst, 0)?, sub(inst, 1)?)?))
}

fn chain_rule(inst: &Instance, _: &mut TrialRng) -> Result<Outcome> {
    match check_chain_rule(ray(inst, 0)?, sub(inst, 0)?, sub(inst, 1)?) {
        Err(Error::OrthogonalState) => Ok(Outcome::Skip),
        r => Ok(Outcome::Residual(r?)),
    }
}

fn monotone(inst: &Instance, _: &mut TrialRng) -> Result<Outcome> {
    let (x, a, b) = (ray(inst, 0)?, sub(inst, 0)?, sub(inst, 1)?);
    let gap = p_prop(x, a)? - p_prop(x, b)?;
    require!(check_monotone(x, a, b)?, gap, "probability decreased along inclusion");
    Ok(Outcome::Residual(gap.max(0.0)))
}

fn total_probability(inst: &Instance, _: &mut TrialRng) -> Result<Outcome> {
    Ok(Outcome::Residual(
        total_probability_residual(ray(inst, 0)?, sub(inst, 0)?, sub(inst, 1)?)?.abs(),
    ))
}

fn orthomodular_equality(inst: &Instance, rng: &mut TrialRng) -> Result<Outcome> {
    let (x, a) = (ray(inst, 0)?, sub(inst, 0)?);
    let (Some(ax), Some(nax)) = (image(a, x)?, image(&a.ortho_complement(), x)?) else {
        return Ok(Outcome::Skip);
    };
    let extra = random_ray(rng, inst.dim);
    let b = Subspace::span(inst.dim, &[ax.rep().clone(), nax.rep().clone(), extra.rep().clone()])?;
    let res = (p_prop(x, &b)? - 1.0)
        .abs()
        .max(total_probability_residual(x, a, &b)?.abs());
    Ok(Outcome::Residual(res))
}

fn local_commutation(inst: &Instance, rng: &mut TrialRng) -> Result<Outcome> {
    let d = inst.dim;
    let e = random_orthonormal_basis(rng, d);
    let x = Ray::from_vector(&e[0].scale(gaussian_cplx(rng)).axpy(gaussian_cplx(rng), &e[1]))?;
    let phi: f64 = rng.gen_range(0.1..1.4);
    let tilted = e[2].scale_real(phi.cos()).axpy(random_phase(rng) * phi.sin(), &e[3]);
    let a = Subspace::span(d, &[e[0].clone(), e[2].clone()])?;
    let b = Subspace::span(d, &[e[0].clone(), tilted])?;
    require!(locally_commute(&x, &a, &b)?, 1.0, "construction does not commute on the state");
    require!(!commutes(&a, &b, &tol())?, 1.0, "construction commutes globally");
    Ok(Outcome::Residual(check_total_probability(&x, &a, &b)?))
}

fn interference(inst: &Instance, rng: &mut TrialRng) -> Result<Outcome> {
    let (a, b) = (sub(inst, 0)?, sub(inst, 1)?);
    let x = random_ray_in(rng, a);
    match interference_terms(&x, a, b) {
        Err(Error::PreconditionUnmet(_)) => Ok(Outcome::Skip),
        r => Ok(Outcome::Residual((-r?.squared_margin()).max(0.0))),
    }
}

fn interference_consequence(inst: &Instance, rng: &mut TrialRng) -> Result<Outcome> {
    let d = inst.dim;
    let a = sub(inst, 0)?;
    let x = random_ray_in(rng, a);
    let w = random_ray_in(rng, a);
    let na = a.ortho_complement();
    let k = rng.gen_range(0..=na.rank());
    let outside: Vec<CVector> = random_orthonormal_basis(rng, na.rank())
        .into_iter()
        .take(k)
        .map(|c| {
            c.entries()
                .iter()
                .zip(na.basis())
                .fold(CVector::zeros(d), |acc, (&ci, bi)| acc.axpy(ci, bi))
        })
        .collect();
    let mut vs = vec![w.rep().clone()];
    vs.extend(outside);
    let built = Subspace::span(d, &vs)?;
    for b in [&built, sub(inst, 1)?] {
        let Some(bx) = image(b, &x)? else { continue };
        let Some(abx) = image(a, &bx)? else { continue };
        if b.contains_ray(&abx)? {
            require!(a.contains_ray(&bx)?, 1.0, "premise held but the projected state left the subspace");
        }
    }
    Ok(Outcome::Residual(0.0))
}

fn total_probability_breaks(inst: &Instance, _: &mut TrialRng) -> Result<Outcome> {
    let v = total_probability_residual(ray(inst, 0)?, sub(inst, 0)?, sub(inst, 1)?)?.abs();
    Ok(Outcome::Control { hit: v > TOL, value: v })
}

fn planar_family(inst: &Instance, rng: &mut TrialRng) -> Result<Outcome> {
    let d = inst.dim;
    let phi: f64 = rng.gen_range(0.0..std::f64::consts::FRAC_PI_2);
    let (x, a, b) = planar_noncommuting_family(phi);
    let m = random_isometry(rng, d, 2);
    let lift_ray = |r: &Ray| -> Result<Ray> { Ray::from_vector(&m.mul_vec(r.rep())?) };
    let lift = |s: &Subspace| -> Result<Subspace> {
        let vs = s.basis().iter().map(|v| m.mul_vec(v)).collect::<Result<Vec<_>>>()?;
        Subspace::span(d, &vs)
    };
    let (x, a, b) = (lift_ray(&x)?, lift(&a)?, lift(&b)?);
    let analytic = 1.0 - phi.cos().powi(4) - phi.sin().powi(4);
    let computed = total_probability_residual(&x, &a, &b)?;
    if analytic > 1e-8 {
        require!(!commutes(&a, &b, &tol())?, 1.0, "planar pair commutes");
    }
    Ok(Outcome::Residual((computed.abs() - analytic).abs()))
}

fn strict_dominance_at_zero(inst: &Instance, _: &mut TrialRng) -> Result<Outcome> {
    let (y, z) = (ray(inst, 1)?, ray(inst, 2)?);
    let gain = p_sim(&superpose_rays(y, z, 0.0)?, y)? - p_sim(y, z)?;
    Ok(Outcome::Control {
        hit: gain <= tol().eps_abs,
        value: gain.abs(),
    })
}

// ---- the triple phase ----

fn theta_definition(inst: &Instance, rng: &mut TrialRng) -> Result<Outcome> {
    let (x, y, z) = (ray(inst, 0)?, ray(inst, 1)?, ray(inst, 2)?);
    if min_pairwise_a(&[x, y, z])? < NEAR_ORTHO {
        return Ok(Outcome::Skip);
    }
    let mut rescale = |r: &Ray| r.rep().scale(random_phase(rng) * rng.gen_range(0.5..2.0));
    let (u, v, w) = (rescale(x), rescale(y), rescale(z));
    let t = tol();
    let direct = carg(inner(&u, &v)?, &t)? + carg(inner(&v, &w)?, &t)? + carg(inner(&w, &u)?, &t)?;
    let th = theta(x, y, z)?;
    require!(th > -std::f64::consts::PI && th <= std::f64::consts::PI, 1.0, "phase outside (-pi, pi]");
    Ok(Outcome::Residual(circular_distance(direct, th)))
}

fn theta_cyclic(inst: &Instance, _: &mut TrialRng) -> Result<Outcome> {
    let (x, y, z, w) = (ray(inst, 0)?, ray(inst, 1)?, ray(inst, 2)?, ray(inst, 3)?);
    if min_pairwise_a(&[x, y, z, w])? < NEAR_ORTHO {
        return Ok(Outcome::Skip);
    }
    let t = theta(x, y, z)?;
    let res = circular_distance(t, theta(y, z, x)?)
        .max(circular_distance(t, -theta(y, x, z)?))
        .max(circular_distance(theta(x, x, y)?, 0.0))
        .max(circular_distance(
            theta(x, y, w)?,
            t + theta(x, z, w)? + theta(z, y, w)?,
        ));
    Ok(Outcome::Residual(res))
}

fn prime_antisymmetry(inst: &Instance, _: &mut TrialRng) -> Result<Outcome> {
    let (x, y, z) = (ray(inst, 0)?, ray(inst, 1)?, ray(inst, 2)?);
    let rays = [x, y, z];
    if min_pairwise_a(&rays)? < 1e-4 {
        return Ok(Outcome::Skip);
    }
    for (i, a) in rays.iter().enumerate() {
        for b in &rays[i + 1..] {
            if 1.0 - p_sim(a, b)? < 1e-8 {
                return Ok(Outcome::Skip);
            }
        }
    }
    let p = prime_triple(x, y, z)?;
    Ok(Outcome::Residual(circular_distance(theta(&p.x, &p.y, &p.z)?, -theta(x, y, z)?)))
}

fn interference_formula(inst: &Instance, _: &mut TrialRng) -> Result<Outcome> {
    let (x, y, z) = (ray(inst, 0)?, ray(inst, 1)?, ray(inst, 2)?);
    if a_sim(y, z)? < NEAR_ORTHO {
        return Ok(Outcome::Skip);
    }
    let spec = SuperpositionSpec::new(y.clone(), z.clone(), inst.r)?;
    let direct = p_sim(&superpose_rays(y, z, inst.r)?, x)?;
    // relative comparison is meaningless near total destructive interference
    if direct < 1e-6 {
        return Ok(Outcome::Skip);
    }
    let closed = p_of_superposition_closed_form(&spec, x)?;
    Ok(Outcome::Residual((closed - direct).abs() / direct))
}

fn superposition_facts(inst: &Instance, _: &mut TrialRng) -> Result<Outcome> {
    let (y, z, r) = (ray(inst, 1)?, ray(inst, 2)?, inst.r);
    if r == 0.0 || a_sim(y, z)? < NEAR_ORTHO {
        return Ok(Outcome::Skip);
    }
    let spec = SuperpositionSpec::new(y.clone(), z.clone(), r)?;
    let s = superpose_rays(y, z, r)?;
    require!(coplanar(&s, y, z)?, 1.0, "superposition left the plane");
    let phase = circular_distance(theta(&s, y, z)?, 0.0);
    require!(phase <= ANGLE_TOL, phase, "phase of superposition with its components is not zero");
    let direct = p_sim(&s, y)?;
    let gain = direct - p_sim(y, z)?;
    require!(gain > 0.0, -gain, "superposition is not closer to its component");
    let closed = p_superposed_component_closed_form(&spec)?;
    Ok(Outcome::Residual((closed - direct).abs() / direct))
}

fn cos_prime(inst: &Instance, _: &mut TrialRng) -> Result<Outcome> {
    let (x, y, z) = (ray(inst, 0)?, ray(inst, 1)?, ray(inst, 2)?);
    let Some(xp) = image(&complement(x), ray(inst, 3)?)? else {
        return Ok(Outcome::Skip);
    };
    if min_pairwise_a(&[x, y, z])? < 1e-4 || min_pairwise_a(&[&xp, y, z])? < 1e-4 {
        return Ok(Outcome::Skip);
    }
    if (1.0 - p_sim(x, y)?) * (1.0 - p_sim(x, z)?) < 1e-6 {
        return Ok(Outcome::Skip);
    }
    let formula = cos_theta_prime(x, &xp, y, z)?;
    Ok(Outcome::Residual((formula - theta(&xp, y, z)?.cos()).abs()))
}

// ---- morphisms ----

fn regular_map(inst: &Instance, rng: &mut TrialRng) -> Result<Outcome> {
    let f = map(inst)?;
    let c = gaussian_cplx(rng) + Cplx::new(0.5, 0.0);
    let scaled = RegularMap::from_matrix(f.underlying.matrix().scale(c))?;
    let (x, y) = (ray(inst, 0)?, ray(inst, 1)?);
    let fx = apply_ray(&f, x)?;
    let mut res = fx.distance(&apply_ray(&scaled, x)?);
    let moved = Ray::from_vector(&x.rep().scale(random_phase(rng)))?;
    res = res.max(fx.distance(&apply_ray(&f, &moved)?));
    require!(fx.distance(&apply_ray(&f, y)?) > 1e-8, 0.0, "distinct rays collapsed");
    Ok(Outcome::Residual(res))
}

fn isometry_inner(inst: &Instance, rng: &mut TrialRng) -> Result<Outcome> {
    let f = map(inst)?;
    let m = f.underlying.matrix();
    let (u, v) = (ray(inst, 0)?.rep(), ray(inst, 1)?.rep());
    let mut res = (inner(&m.mul_vec(u)?, &m.mul_vec(v)?)? - inner(u, v)?).norm();
    let Some(s) = isometry_scale(&f, 4) else {
        return Ok(Outcome::fail(res, "isometry not recognized"));
    };
    res = res.max((s - 1.0).abs());
    let c = gaussian_cplx(rng) + Cplx::new(0.5, 0.0);
    let Some(sc) = isometry_scale(&RegularMap::from_matrix(m.scale(c))?, 4) else {
        return Ok(Outcome::fail(res, "scaled isometry not recognized"));
    };
    Ok(Outcome::Residual(res.max((sc - c.norm()).abs() / c.norm())))
}

fn non_isometry_breaks(inst: &Instance, rng: &mut TrialRng) -> Result<Outcome> {
    let f = map(inst)?;
    require!(isometry_scale(&f, 4).is_none(), 1.0, "map is an isometry up to scale");
    let verdict = preserves_superpositions(&f, MORPHISM_TRIALS, rng.gen());
    require!(!verdict.preserved && verdict.witness.is_some(), 1.0, "non-isometry preserved every sampled superposition");
    Ok(Outcome::Residual(0.0))
}

fn unitary_preserves(inst: &Instance, rng: &mut TrialRng) -> Result<Outcome> {
    let f = map(inst)?;
    let c = random_phase(rng) * rng.gen_range(0.5..3.0);
    let scaled = RegularMap::from_matrix(f.underlying.matrix().scale(c))?;
    let mut res: f64 = 0.0;
    for g in [&f, &scaled] {
        let seed = rng.gen();
        let verdict = preserves_superpositions(g, MORPHISM_TRIALS, seed);
        res = res.max(verdict.worst_residual);
        let pt = check_preserves_p_theta(g, MORPHISM_TRIALS, seed)?;
        require!(pt.theta <= ANGLE_TOL, pt.theta, "isometry changed a phase");
        res = res.max(pt.p);
    }
    Ok(Outcome::Residual(res))
}

fn characterization(inst: &Instance, rng: &mut TrialRng) -> Result<Outcome> {
    let f = map(inst)?;
    let n = f.dim_in();
    let mut diag = vec![ONE; n];
    diag[rng.gen_range(0..n)] = Cplx::new(rng.gen_range(1.2..2.0), 0.0);
    let bent = RegularMap::from_matrix(f.underlying.matrix().matmul(&Mat::diagonal(&diag))?)?;
    for (g, what) in [(&f, "isometry"), (&bent, "non-isometry")] {
        require!(
            check_char_morph(g, MORPHISM_TRIALS, rng.gen()),
            1.0,
            format!("isometry test and superposition test disagree on the {what}")
        );
    }
    Ok(Outcome::Residual(0.0))
}

// ---- products ----

fn tensor_p(inst: &Instance, rng: &mut TrialRng) -> Result<Outcome> {
    let (x1, y1) = (random_ray(rng, 2), random_ray(rng, 2));
    Ok(Outcome::Residual(check_p_product(&x1, &y1, ray(inst, 0)?, ray(inst, 1)?)?))
}

fn tensor_theta(inst: &Instance, rng: &mut TrialRng) -> Result<Outcome> {
    let (x1, y1, z1) = (random_ray(rng, 2), random_ray(rng, 2), random_ray(rng, 2));
    let (x2, y2, z2) = (ray(inst, 0)?, ray(inst, 1)?, ray(inst, 2)?);
    if min_pairwise_a(&[&x1, &y1, &z1])? < 1e-4 || min_pairwise_a(&[x2, y2, z2])? < 1e-4 {
        return Ok(Outcome::Skip);
    }
    Ok(Outcome::Residual(check_theta_product(&x1, &y1, &z1, x2, y2, z2)?))
}

const fn law(id: &'static str, statement: &'static str, flavor: Flavor, check: super::Checker) -> Law {
    Law {
        id,
        statement,
        flavor,
        kind: LawKind::Identity,
        tolerance: TOL,
        min_dim: 2,
        budget: Budget::PerDim,
        check,
    }
}

const fn with_tol(mut l: Law, tolerance: f64) -> Law {
    l.tolerance = tolerance;
    l
}

const fn with_min_dim(mut l: Law, d: usize) -> Law {
    l.min_dim = d;
    l
}

const fn with_budget(mut l: Law, b: Budget) -> Law {
    l.budget = b;
    l
}

const fn control(mut l: Law) -> Law {
    l.kind = LawKind::NegativeControl;
    l
}

use Flavor::*;

/// Every law, in report order.
pub static LAWS: &[Law] = &[
    law(
        "principle.classical",
        "distinct basis rays are orthogonal, cannot be superposed, and satisfy coordinate propositions with probability 0 or 1",
        ClassicalOrthogonal,
        classical,
    ),
    with_tol(
        law(
            "principle.reciprocity",
            "for coplanar rays, equal images under the complement of x force equal images under the complement of y",
            Coplanar,
            reciprocity,
        ),
        1e-9,
    ),
    law(
        "definition.coplanarity",
        "rays drawn from one plane are coplanar in every order; three generic rays are not",
        Coplanar,
        def_coplanarity,
    ),
    law(
        "principle.superposition",
        "non-orthogonal rays can be superposed with any weight; orthogonal ones cannot",
        GenericComplex,
        superposition_exists,
    ),
    law(
        "principle.triviality",
        "superposing a ray with itself returns it",
        GenericComplex,
        triviality,
    ),
    law(
        "principle.coplanarity",
        "a superposition is coplanar with its components",
        GenericComplex,
        superposition_coplanar,
    ),
    law(
        "definition.superposition",
        "the superposed ray does not depend on the representatives chosen",
        GenericComplex,
        representative_independence,
    ),
    law(
        "lemma.plus_commu",
        "swapping the components and the weights gives the same superposition; weight 1 and 0 return the components",
        GenericComplex,
        superposition_symmetry,
    ),
    law(
        "lemma.a",
        "the similarity a lies in [0, 1], is symmetric, is 1 on the diagonal and 0 on orthogonal pairs",
        GenericComplex,
        a_properties,
    ),
    law(
        "lemma.inner",
        "projection leaves a residual orthogonal to the subspace, through a self-adjoint idempotent",
        GenericComplex,
        projection_residual,
    ),
    law(
        "lemma.p",
        "p(x, y) is the squared modulus of the inner product and the squared length of the projection",
        GenericComplex,
        p_properties,
    ),
    law(
        "theorem.p",
        "for y in a subspace, p(x, y) factors through the projection of x onto it",
        GenericComplex,
        p_factorization,
    ),
    law(
        "corollary.max",
        "the projection of x is the unique ray of the subspace most similar to x",
        GenericComplex,
        projection_maximal,
    ),
    law(
        "corollary.satisfaction",
        "x satisfies a proposition with probability 1 exactly when it lies in it",
        GenericComplex,
        satisfaction,
    ),
    law(
        "lemma.born",
        "p(x, a) is the squared length ratio of the projection of any representative",
        GenericComplex,
        born,
    ),
    law(
        "lemma.zero_one",
        "proposition probabilities lie in [0, 1], with 1 for truth and 0 for falsehood",
        GenericComplex,
        unit_interval,
    ),
    law(
        "lemma.commuting",
        "two propositions commute exactly when they split into three mutually orthogonal parts",
        CommutingPair,
        commuting_decomposition,
    ),
    law(
        "definition.commuting",
        "the operator commutator, the matrix test and the test on probe rays agree",
        CommutingPair,
        commuting_criteria,
    ),
    law(
        "corollary.comm",
        "nested propositions commute, and so do orthogonal ones",
        NestedPair,
        nested_commute,
    ),
    law(
        "corollary.comm_neg",
        "a proposition commutes with another exactly when its negation does",
        CommutingPair,
        negation_commute,
    ),
    law(
        "lemma.orthodisjunction",
        "probabilities of orthogonal propositions add",
        CommutingPair,
        ortho_additivity,
    ),
    law(
        "corollary.orthodisjunction",
        "probabilities of up to four pairwise orthogonal propositions add",
        CommutingPair,
        finite_additivity,
    ),
    law(
        "lemma.neg_sum_one",
        "a proposition and its negation have probabilities summing to 1",
        GenericComplex,
        complement_sum,
    ),
    law(
        "lemma.disj_prob",
        "inclusion-exclusion holds for commuting propositions",
        CommutingPair,
        inclusion_exclusion,
    ),
    law(
        "lemma.conj",
        "for commuting propositions the probability of the meet is a product of conditional probabilities",
        CommutingPair,
        chain_rule,
    ),
    law(
        "corollary.leq",
        "probability grows along inclusion of propositions",
        NestedPair,
        monotone,
    ),
    law(
        "lemma.total_probability",
        "total probability holds for commuting propositions",
        CommutingPair,
        total_probability,
    ),
    law(
        "lemma.orthomodular_equality",
        "if both projections of x onto a and its negation lie in b, x satisfies b with certainty and total probability holds",
        GenericComplex,
        orthomodular_equality,
    ),
    with_min_dim(
        law(
            "lemma.local_comp",
            "total probability holds for propositions that commute on the given state only",
            GenericComplex,
            local_commutation,
        ),
        4,
    ),
    with_budget(
        with_min_dim(
            with_tol(
                law(
                    "theorem.quant_interference",
                    "for x in a, the squared interference inequality between a and b holds",
                    GenericComplex,
                    interference,
                ),
                1e-12,
            ),
            3,
        ),
        Budget::Scaled(10),
    ),
    law(
        "corollary.interference",
        "for x in a, if a(b(x)) lies in b then b(x) lies in a",
        GenericComplex,
        interference_consequence,
    ),
    control(law(
        "counterexample.total_probability",
        "total probability fails for generic non-commuting propositions",
        GenericComplex,
        total_probability_breaks,
    )),
    with_tol(
        law(
            "counterexample.total_probability_planar",
            "for the planar pair at angle phi total probability misses by exactly 1 - cos^4 - sin^4",
            GenericComplex,
            planar_family,
        ),
        1e-9,
    ),
    control(law(
        "counterexample.prop1_strict_at_r0",
        "at weight 0 the superposition is no closer to its first component than the second is",
        GenericComplex,
        strict_dominance_at_zero,
    )),
    with_tol(
        law(
            "definition.theta",
            "the triple phase does not depend on representatives and lies in (-pi, pi]",
            GenericComplex,
            theta_definition,
        ),
        ANGLE_TOL,
    ),
    with_tol(
        law(
            "lemma.cyclic",
            "the triple phase is cyclic, antisymmetric under a swap, and additive over a fourth ray",
            GenericComplex,
            theta_cyclic,
        ),
        ANGLE_TOL,
    ),
    with_tol(
        law(
            "lemma.prime",
            "the complement triple of a coplanar triple has the opposite phase",
            Coplanar,
            prime_antisymmetry,
        ),
        ANGLE_TOL,
    ),
    with_tol(
        law(
            "lemma.p_basis",
            "similarity to a superposition follows from similarities and the phase of the components",
            GenericComplex,
            interference_formula,
        ),
        REL_TOL,
    ),
    with_tol(
        law(
            "lemma.prop1",
            "a superposition is coplanar with and in phase with its components, and strictly closer to each",
            GenericComplex,
            superposition_facts,
        ),
        REL_TOL,
    ),
    with_tol(
        law(
            "corollary.co_prime",
            "the phase with x replaced by its in-plane complement follows from similarities and the original phase",
            Coplanar,
            cos_prime,
        ),
        ANGLE_TOL,
    ),
    law(
        "definition.regular",
        "an injective linear map acts on rays independently of scale and representative, and injectively",
        NonIsometry,
        regular_map,
    ),
    law(
        "theorem.isometry",
        "isometries preserve inner products, and scaled isometries are recognized with their scale",
        Isometry,
        isometry_inner,
    ),
    with_budget(
        law(
            "lemma.regular",
            "a regular map that is not an isometry up to scale breaks some superposition",
            NonIsometry,
            non_isometry_breaks,
        ),
        Budget::Capped(100),
    ),
    with_budget(
        law(
            "lemma.unit_superp",
            "isometries up to scale preserve superpositions, similarity and phase",
            Isometry,
            unitary_preserves,
        ),
        Budget::Capped(100),
    ),
    with_budget(
        law(
            "theorem.char_morph",
            "a regular map preserves superpositions exactly when it is an isometry up to scale",
            Isometry,
            characterization,
        ),
        Budget::Capped(100),
    ),
    law(
        "conclusion.tensor_p",
        "similarity of product states is the product of the factor similarities",
        GenericComplex,
        tensor_p,
    ),
    law(
        "conclusion.tensor_theta",
        "the phase of product triples is the sum of the factor phases",
        GenericComplex,
        tensor_theta,
    ),
];
