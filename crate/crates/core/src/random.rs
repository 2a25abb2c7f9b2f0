//! Seeded random instances: Gaussian vectors, rays, subspaces and unitaries.
//!
//! Every trial draws from its own ChaCha8 stream whose 64-bit seed is
//! derived from `(seed, label, dim, trial)` with FNV-1a and the SplitMix64
//! finalizer, so results do not depend on evaluation order.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{orthonormalize, CVector, Cplx, Mat, Tolerance};
use crate::subspace::{Ray, Subspace};

pub type TrialRng = ChaCha8Rng;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

/// Seed of the substream for one `(label, dim, trial)` under a master seed.
pub fn substream_seed(seed: u64, label: &str, dim: u64, trial: u64) -> u64 {
    let mut h = splitmix64(seed ^ fnv1a(label));
    h = splitmix64(h ^ dim);
    splitmix64(h ^ trial)
}

pub fn gaussian_cplx<R: Rng + ?Sized>(rng: &mut R) -> Cplx {
    Cplx::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Standard complex Gaussian vector.
pub fn gaussian_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CVector {
    CVector::from_raw((0..dim).map(|_| gaussian_cplx(rng)).collect())
}

pub fn gaussian_real_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CVector {
    CVector::from_raw(
        (0..dim)
            .map(|_| Cplx::new(rng.sample(StandardNormal), 0.0))
            .collect(),
    )
}

fn nonzero<R: Rng + ?Sized>(rng: &mut R, mut draw: impl FnMut(&mut R) -> CVector) -> CVector {
    loop {
        let v = draw(rng);
        if v.norm() > 1e-6 {
            return v;
        }
    }
}

/// Uniformly distributed ray of `C^dim`.
pub fn random_ray<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Ray {
    let v = nonzero(rng, |r| gaussian_vector(r, dim));
    Ray::from_vector(&v).expect("non-zero vector")
}

/// Ray with a real representative.
pub fn random_real_ray<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Ray {
    let v = nonzero(rng, |r| gaussian_real_vector(r, dim));
    Ray::from_vector(&v).expect("non-zero vector")
}

pub fn random_real_unit<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CVector {
    let v = nonzero(rng, |r| gaussian_real_vector(r, dim));
    v.scale_real(1.0 / v.norm())
}

/// Random orthonormal basis of `C^dim` (Haar-distributed columns via Gram-Schmidt).
pub fn random_orthonormal_basis<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<CVector> {
    loop {
        let vs: Vec<CVector> = (0..dim).map(|_| gaussian_vector(rng, dim)).collect();
        let q = orthonormalize(&vs, &Tolerance::default());
        if q.len() == dim {
            return q;
        }
    }
}

/// `rows x cols` matrix with orthonormal columns, `cols <= rows`.
pub fn random_isometry<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Mat {
    assert!(cols <= rows);
    let basis = random_orthonormal_basis(rng, rows);
    Mat::from_columns(&basis[..cols]).expect("non-empty column list")
}

/// Random rank-`rank` subspace of `C^dim`.
pub fn random_subspace<R: Rng + ?Sized>(rng: &mut R, dim: usize, rank: usize) -> Subspace {
    if rank == 0 {
        return Subspace::falsehood(dim);
    }
    let basis = random_orthonormal_basis(rng, dim);
    Subspace::span(dim, &basis[..rank]).expect("matching dimensions")
}

/// Random rank-`rank` subspace of `R^dim`, embedded in `C^dim`.
pub fn random_real_subspace<R: Rng + ?Sized>(rng: &mut R, dim: usize, rank: usize) -> Subspace {
    loop {
        let vs: Vec<CVector> = (0..rank).map(|_| gaussian_real_vector(rng, dim)).collect();
        let s = Subspace::span(dim, &vs).expect("matching dimensions");
        if s.rank() == rank {
            return s;
        }
    }
}

/// Random unit-modulus complex number.
pub fn random_phase<R: Rng + ?Sized>(rng: &mut R) -> Cplx {
    Cplx::from_polar(1.0, rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI))
}
