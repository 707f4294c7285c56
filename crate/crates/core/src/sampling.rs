//! Seeded synthetic profiles: normalized Mallows, Euclidean, impartial culture.
//!
//! All randomness comes from ChaCha8 (`rand_chacha`), whose output stream is
//! specified bit-for-bit, so a `(seed, parameters)` pair reproduces the same
//! profiles on every platform. Sub-task `i` (e.g. the i-th profile of an
//! experiment) draws from stream `i` of the generator keyed by the seed; see
//! [`stream_rng`].

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::profile::Profile;
use crate::ranking::{Candidate, Ranking};

/// Generator for sub-task `index` under `seed`: ChaCha8 keyed by
/// `seed_from_u64(seed)`, positioned on stream `index`.
pub fn stream_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Expected swap distance between a Mallows sample and its centre.
pub fn expected_kendall(m: usize, phi: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&phi) {
        return Err(Error::Domain(format!("phi must lie in [0,1], got {}", phi)));
    }
    let mut total = 0.0;
    for i in 1..m {
        if phi == 1.0 {
            total += i as f64 / 2.0;
            continue;
        }
        let (mut num, mut den, mut pw) = (0.0, 0.0, 1.0);
        for j in 0..=i {
            num += j as f64 * pw;
            den += pw;
            pw *= phi;
        }
        total += num / den;
    }
    Ok(total)
}

/// Dispersion `phi` whose expected swap distance is `norm_phi · m(m−1)/4`.
pub fn phi_from_norm(m: usize, norm_phi: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&norm_phi) {
        return Err(Error::Domain(format!("norm-phi must lie in [0,1], got {}", norm_phi)));
    }
    if norm_phi == 0.0 || norm_phi == 1.0 || m < 2 {
        return Ok(norm_phi);
    }
    let goal = norm_phi * (m * (m - 1)) as f64 / 4.0;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if expected_kendall(m, mid)? < goal {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[derive(Clone, Debug, PartialEq)]
pub struct MallowsParams {
    pub central: Ranking,
    pub norm_phi: f64,
    pub phi: f64,
}

impl MallowsParams {
    pub fn new(central: Ranking, norm_phi: f64) -> Result<Self> {
        let phi = phi_from_norm(central.len(), norm_phi)?;
        Ok(MallowsParams { central, norm_phi, phi })
    }

    /// Centre is the identity ranking.
    pub fn identity(m: usize, norm_phi: f64) -> Result<Self> {
        Self::new(Ranking::identity(m), norm_phi)
    }

    pub fn m(&self) -> usize {
        self.central.len()
    }
}

/// One Mallows ranking by repeated insertion.
pub fn mallows_ranking<R: Rng + ?Sized>(params: &MallowsParams, rng: &mut R) -> Ranking {
    let m = params.m();
    let phi = params.phi;
    let mut slots: Vec<usize> = Vec::with_capacity(m);
    let mut weights: Vec<f64> = Vec::with_capacity(m);
    let mut pw = 1.0;
    for i in 0..m {
        // weights[j] = phi^j, j = displacement above the sorted (last) slot
        weights.push(pw);
        pw *= phi;
        let j = if phi == 0.0 {
            0
        } else {
            let total: f64 = weights.iter().sum();
            let mut u = rng.gen::<f64>() * total;
            let mut j = 0;
            while j < i && u >= weights[j] {
                u -= weights[j];
                j += 1;
            }
            j
        };
        slots.insert(i - j, i);
    }
    let order = slots.into_iter().map(|i| params.central.order()[i]).collect();
    Ranking::from_order_unchecked(order)
}

pub fn sample_mallows_with<R: Rng + ?Sized>(params: &MallowsParams, n: usize, rng: &mut R) -> Profile {
    let votes: Vec<Ranking> = (0..n).map(|_| mallows_ranking(params, rng)).collect();
    Profile::from_rankings(params.m(), votes).expect("sampled rankings are well-formed")
}

pub fn sample_mallows(params: &MallowsParams, n: usize, seed: u64) -> Profile {
    sample_mallows_with(params, n, &mut stream_rng(seed, 0))
}

/// Voters rank candidates by increasing squared Euclidean distance; exact
/// ties go to the lower candidate index.
pub fn euclidean_profile(candidates: &[Vec<f64>], voters: &[Vec<f64>]) -> Result<Profile> {
    let dim = candidates.first().or(voters.first()).map_or(1, |p| p.len());
    if candidates.iter().chain(voters).any(|p| p.len() != dim) {
        return Err(Error::Dimension("points of different dimensions".into()));
    }
    let m = candidates.len();
    let votes: Vec<Ranking> = voters
        .iter()
        .map(|v| {
            let dist: Vec<f64> = candidates
                .iter()
                .map(|c| c.iter().zip(v).map(|(a, b)| (a - b) * (a - b)).sum())
                .collect();
            let mut order: Vec<Candidate> = (0..m).map(Candidate).collect();
            order.sort_by(|a, b| dist[a.0].total_cmp(&dist[b.0]).then(a.0.cmp(&b.0)));
            Ranking::from_order_unchecked(order)
        })
        .collect();
    Profile::from_rankings(m, votes)
}

pub fn sample_euclidean_with<R: Rng + ?Sized>(dim: usize, m: usize, n: usize, rng: &mut R) -> Result<Profile> {
    if dim == 0 {
        return Err(Error::Domain("Euclidean dimension must be at least 1".into()));
    }
    let point = |rng: &mut R| (0..dim).map(|_| rng.gen::<f64>()).collect::<Vec<f64>>();
    let candidates: Vec<Vec<f64>> = (0..m).map(|_| point(rng)).collect();
    let voters: Vec<Vec<f64>> = (0..n).map(|_| point(rng)).collect();
    euclidean_profile(&candidates, &voters)
}

/// Uniform points in `[0,1]^dim` for candidates and voters.
pub fn sample_euclidean(dim: usize, m: usize, n: usize, seed: u64) -> Result<Profile> {
    sample_euclidean_with(dim, m, n, &mut stream_rng(seed, 0))
}

pub fn sample_impartial_culture_with<R: Rng + ?Sized>(m: usize, n: usize, rng: &mut R) -> Profile {
    let votes: Vec<Ranking> = (0..n)
        .map(|_| {
            let mut order: Vec<Candidate> = (0..m).map(Candidate).collect();
            order.shuffle(rng);
            Ranking::from_order_unchecked(order)
        })
        .collect();
    Profile::from_rankings(m, votes).expect("shuffles are permutations")
}

/// `n` independent uniformly random rankings.
pub fn sample_impartial_culture(m: usize, n: usize, seed: u64) -> Profile {
    sample_impartial_culture_with(m, n, &mut stream_rng(seed, 0))
}
