//! Seeded random instances.
//!
//! Every instance is generated from its own seed, derived from the run seed,
//! the suite name and the instance index, so a witness seed reproduces the
//! failing instance on its own.

use qexp_core::matcalc::{random_density_with, random_psd_with};
use qexp_core::{CqChannel, DensityOperator, HermitianOperator, Prior, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn tag_hash(tag: &str) -> u64 {
    // FNV-1a; stable across platforms and releases.
    tag.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

/// Seed of instance `index` of suite `tag` in a run with seed `seed`.
pub fn instance_seed(seed: u64, tag: &str, index: usize) -> u64 {
    splitmix(splitmix(seed ^ tag_hash(tag)).wrapping_add(index as u64))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Full-rank random state.
pub fn full_rank_state(rng: &mut ChaCha8Rng, dim: usize) -> Result<DensityOperator> {
    random_density_with(rng, dim, dim)
}

/// Random state of uniformly drawn rank.
pub fn any_rank_state(rng: &mut ChaCha8Rng, dim: usize) -> Result<DensityOperator> {
    let rank = rng.random_range(1..=dim);
    random_density_with(rng, dim, rank)
}

pub fn psd(rng: &mut ChaCha8Rng, dim: usize, rank: usize, trace: f64) -> Result<HermitianOperator> {
    random_psd_with(rng, dim, rank, trace)
}

/// Channel with full-rank outputs.
pub fn channel(rng: &mut ChaCha8Rng, k: usize, dim: usize) -> Result<CqChannel> {
    let outs = (0..k)
        .map(|_| full_rank_state(rng, dim))
        .collect::<Result<Vec<_>>>()?;
    CqChannel::new(outs)
}

/// Channel whose outputs are mixed with the maximally mixed state by
/// `noise ∈ [0, 1]`.
pub fn noisy_channel(rng: &mut ChaCha8Rng, k: usize, dim: usize, noise: f64) -> Result<CqChannel> {
    let mixed = DensityOperator::maximally_mixed(dim);
    let outs = (0..k)
        .map(|_| Ok(full_rank_state(rng, dim)?.mix(&mixed, noise)))
        .collect::<Result<Vec<_>>>()?;
    CqChannel::new(outs)
}

/// Probability vector bounded below by `floor / k` (Dirichlet(1) mixed with
/// the uniform distribution).
pub fn prior(rng: &mut ChaCha8Rng, k: usize, floor: f64) -> Result<Prior> {
    let w: Vec<f64> = (0..k).map(|_| -rng.random::<f64>().max(1e-300).ln()).collect();
    let p = Prior::normalized(w)?;
    Ok(p.mix(&Prior::uniform(k), floor))
}

/// Channel with commuting (diagonal) full-rank outputs.
pub fn diagonal_channel(rng: &mut ChaCha8Rng, k: usize, dim: usize) -> Result<CqChannel> {
    let outs = (0..k)
        .map(|_| {
            let p = prior(rng, dim, 0.05)?;
            DensityOperator::diagonal(p.weights())
        })
        .collect::<Result<Vec<_>>>()?;
    CqChannel::new(outs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_depend_on_all_inputs() {
        let a = instance_seed(1, "x", 0);
        assert_eq!(a, instance_seed(1, "x", 0));
        assert_ne!(a, instance_seed(2, "x", 0));
        assert_ne!(a, instance_seed(1, "y", 0));
        assert_ne!(a, instance_seed(1, "x", 1));
    }

    #[test]
    fn priors_respect_the_floor() {
        let mut r = rng(3);
        for _ in 0..50 {
            let p = prior(&mut r, 4, 0.2).unwrap();
            assert!(p.weights().iter().all(|&w| w >= 0.05 - 1e-15));
        }
    }
}
