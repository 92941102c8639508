use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};

use super::{CMatrix, DensityOperator, HermitianOperator};
use crate::channel::Prior;
use crate::error::{Error, Result};

/// Random state of exactly the requested rank: `G G† / Tr` for a complex
/// Gaussian `dim × rank` matrix `G`.
pub fn random_density(dim: usize, rank: usize, seed: u64) -> Result<DensityOperator> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_density_with(&mut rng, dim, rank)
}

pub fn random_density_with<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    rank: usize,
) -> Result<DensityOperator> {
    let psd = random_psd_with(rng, dim, rank, 1.0)?;
    Ok(DensityOperator::trusted(psd))
}

/// Random positive semidefinite operator of the given rank and trace.
pub fn random_psd_with<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    rank: usize,
    trace: f64,
) -> Result<HermitianOperator> {
    if dim == 0 || rank == 0 || rank > dim {
        return Err(Error::InvalidRank { rank, dim });
    }
    let g = CMatrix::from_fn(dim, rank, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im)
    });
    let m = &g * g.adjoint();
    let op = HermitianOperator::symmetrized(m);
    let tr = op.trace();
    Ok(op.scale(trace / tr))
}

/// Uniform (Dirichlet(1)) random prior on `k` symbols.
pub fn random_prior(k: usize, seed: u64) -> Result<Prior> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_prior_with(&mut rng, k)
}

pub fn random_prior_with<R: Rng + ?Sized>(rng: &mut R, k: usize) -> Result<Prior> {
    if k == 0 {
        return Err(Error::InvalidPrior("empty alphabet".into()));
    }
    let w: Vec<f64> = (0..k).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    Prior::normalized(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcalc::eig;

    #[test]
    fn requested_rank_is_exact() {
        for rank in 1..=4 {
            let rho = random_density(4, rank, 11).unwrap();
            let sd = eig(&rho);
            let cut = sd.default_cutoff();
            let r = sd.eigenvalues.iter().filter(|&&l| l > cut).count();
            assert_eq!(r, rank);
            assert!((rho.trace() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn seeded_generation_is_reproducible() {
        let a = random_density(3, 2, 99).unwrap();
        let b = random_density(3, 2, 99).unwrap();
        assert_eq!(a, b);
        let p = random_prior(5, 4).unwrap();
        assert_eq!(p, random_prior(5, 4).unwrap());
        assert!((p.weights().iter().sum::<f64>() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn invalid_rank() {
        assert!(matches!(
            random_density(2, 3, 0),
            Err(Error::InvalidRank { .. })
        ));
    }
}
