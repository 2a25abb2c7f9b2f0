use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::linalg::{CVector, Cplx, Mat, ONE};
use crate::morphism::LinearMap;
use crate::random::{
    gaussian_cplx, random_isometry, random_orthonormal_basis, random_ray, random_real_ray,
    random_real_subspace, random_subspace, TrialRng,
};
use crate::subspace::{Ray, Subspace};

/// Family of random instances a law is checked on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flavor {
    GenericComplex,
    RealOnly,
    Coplanar,
    CommutingPair,
    NestedPair,
    ClassicalOrthogonal,
    Isometry,
    NonIsometry,
}

impl Flavor {
    pub const ALL: [Flavor; 8] = [
        Flavor::GenericComplex,
        Flavor::RealOnly,
        Flavor::Coplanar,
        Flavor::CommutingPair,
        Flavor::NestedPair,
        Flavor::ClassicalOrthogonal,
        Flavor::Isometry,
        Flavor::NonIsometry,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Flavor::GenericComplex => "generic-complex",
            Flavor::RealOnly => "real-only",
            Flavor::Coplanar => "coplanar",
            Flavor::CommutingPair => "commuting-pair",
            Flavor::NestedPair => "nested-pair",
            Flavor::ClassicalOrthogonal => "classical-orthogonal",
            Flavor::Isometry => "isometry",
            Flavor::NonIsometry => "non-isometry",
        }
    }
}

impl std::str::FromStr for Flavor {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Flavor::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown flavor `{s}`"))
    }
}

/// One random instance.
///
/// What the rays and subspaces mean depends on the flavor:
///
/// * `generic-complex` / `real-only`: independent uniform rays and random
///   subspaces of rank `1..dim` (rank 1 in `C^2`).
/// * `coplanar`: all rays lie in one random plane, stored as `plane`.
/// * `commuting-pair`: `subspaces[0]` and `subspaces[1]` are spanned by
///   random subsets of one random orthonormal basis; `blocks` partitions
///   that basis into at most four pairwise orthogonal subspaces.
/// * `nested-pair`: `subspaces[0] ⊆ subspaces[1]`.
/// * `classical-orthogonal`: rays are distinct standard basis rays and
///   subspaces are coordinate subspaces.
/// * `isometry` / `non-isometry`: `map` is an embedding `C^dim -> C^(dim+k)`
///   with orthonormal columns, or one with a singular value moved by a
///   factor of at least 1.1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub flavor: Flavor,
    pub dim: usize,
    pub rays: Vec<Ray>,
    pub subspaces: Vec<Subspace>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub blocks: Vec<Subspace>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub plane: Option<Subspace>,
    pub r: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub map: Option<LinearMap>,
}

const RAYS: usize = 4;
const SUBSPACES: usize = 2;

fn generic_rank(rng: &mut TrialRng, dim: usize) -> usize {
    if dim <= 2 {
        1
    } else {
        rng.gen_range(1..dim)
    }
}

fn span_of(dim: usize, basis: &[CVector], idx: &[usize]) -> Subspace {
    let vs: Vec<CVector> = idx.iter().map(|&i| basis[i].clone()).collect();
    Subspace::span(dim, &vs).expect("matching dimensions")
}

fn random_in(rng: &mut TrialRng, s: &Subspace) -> Ray {
    loop {
        let v = s
            .basis()
            .iter()
            .fold(CVector::zeros(s.dim()), |acc, b| acc.axpy(gaussian_cplx(rng), b));
        if v.norm() > 1e-6 {
            return Ray::from_vector(&v).expect("non-zero vector");
        }
    }
}

/// Draws a random ray of the subspace `s` (rank >= 1).
pub fn random_ray_in(rng: &mut TrialRng, s: &Subspace) -> Ray {
    assert!(s.rank() > 0, "cannot sample a ray of the zero subspace");
    random_in(rng, s)
}

/// Draws one instance of the given flavor in `C^dim`.
pub fn sample_instance(rng: &mut TrialRng, dim: usize, flavor: Flavor) -> Instance {
    let mut inst = Instance {
        flavor,
        dim,
        rays: Vec::new(),
        subspaces: Vec::new(),
        blocks: Vec::new(),
        plane: None,
        r: rng.gen_range(0.0..1.0),
        map: None,
    };
    match flavor {
        Flavor::GenericComplex => {
            inst.rays = (0..RAYS).map(|_| random_ray(rng, dim)).collect();
            inst.subspaces = (0..SUBSPACES)
                .map(|_| {
                    let k = generic_rank(rng, dim);
                    random_subspace(rng, dim, k)
                })
                .collect();
        }
        Flavor::RealOnly => {
            inst.rays = (0..RAYS).map(|_| random_real_ray(rng, dim)).collect();
            inst.subspaces = (0..SUBSPACES)
                .map(|_| {
                    let k = generic_rank(rng, dim);
                    random_real_subspace(rng, dim, k)
                })
                .collect();
        }
        Flavor::Coplanar => {
            let plane = random_subspace(rng, dim, 2);
            inst.rays = (0..RAYS).map(|_| random_in(rng, &plane)).collect();
            inst.subspaces = (0..SUBSPACES)
                .map(|_| {
                    let k = generic_rank(rng, dim);
                    random_subspace(rng, dim, k)
                })
                .collect();
            inst.plane = Some(plane);
        }
        Flavor::CommutingPair => {
            let basis = random_orthonormal_basis(rng, dim);
            let pick = |rng: &mut TrialRng| -> Vec<usize> {
                loop {
                    let idx: Vec<usize> = (0..dim).filter(|_| rng.gen_bool(0.5)).collect();
                    if !idx.is_empty() && idx.len() < dim {
                        return idx;
                    }
                }
            };
            let a = pick(rng);
            let b = pick(rng);
            inst.subspaces = vec![span_of(dim, &basis, &a), span_of(dim, &basis, &b)];
            let mut order: Vec<usize> = (0..dim).collect();
            order.shuffle(rng);
            let k = dim.min(4);
            inst.blocks = (0..k)
                .map(|j| {
                    let idx: Vec<usize> = order.iter().copied().skip(j).step_by(k).collect();
                    span_of(dim, &basis, &idx)
                })
                .collect();
            inst.rays = (0..RAYS).map(|_| random_ray(rng, dim)).collect();
        }
        Flavor::NestedPair => {
            let basis = random_orthonormal_basis(rng, dim);
            let outer = rng.gen_range(1..=dim);
            let inner = rng.gen_range(0..=outer);
            inst.subspaces = vec![
                span_of(dim, &basis, &(0..inner).collect::<Vec<_>>()),
                span_of(dim, &basis, &(0..outer).collect::<Vec<_>>()),
            ];
            inst.rays = (0..RAYS).map(|_| random_ray(rng, dim)).collect();
        }
        Flavor::ClassicalOrthogonal => {
            let mut order: Vec<usize> = (0..dim).collect();
            order.shuffle(rng);
            inst.rays = order.iter().take(RAYS.min(dim)).map(|&i| Ray::basis(dim, i)).collect();
            inst.subspaces = (0..SUBSPACES)
                .map(|_| {
                    let idx: Vec<usize> = (0..dim).filter(|_| rng.gen_bool(0.5)).collect();
                    Subspace::coordinate(dim, &idx)
                })
                .collect();
        }
        Flavor::Isometry => {
            let extra = rng.gen_range(0..=2);
            inst.map = Some(LinearMap::new(random_isometry(rng, dim + extra, dim)).expect("isometries are injective"));
            inst.rays = (0..RAYS).map(|_| random_ray(rng, dim)).collect();
        }
        Flavor::NonIsometry => {
            let extra = rng.gen_range(0..=2);
            let out = random_isometry(rng, dim + extra, dim);
            let v = random_isometry(rng, dim, dim);
            let factor = rng.gen_range(1.1..2.0);
            let mut diag = vec![ONE; dim];
            let j = rng.gen_range(0..dim);
            diag[j] = Cplx::new(if rng.gen_bool(0.5) { factor } else { 1.0 / factor }, 0.0);
            let m = out
                .matmul(&Mat::diagonal(&diag))
                .and_then(|m| m.matmul(&v.adjoint()))
                .expect("conformable");
            inst.map = Some(LinearMap::new(m).expect("full-rank product"));
            inst.rays = (0..RAYS).map(|_| random_ray(rng, dim)).collect();
        }
    }
    inst
}
