//! Seeded random scalars and forms for property sweeps.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::forms::{masks_of_degree, InvariantForm};
use crate::scalar::{rational, GaussRational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small numerators and denominators, zero included.
pub fn gauss(rng: &mut impl Rng) -> GaussRational {
    let mut part = || rational(rng.gen_range(-12..=12), rng.gen_range(1..=9));
    GaussRational::new(part(), part())
}

pub fn nonzero_gauss(rng: &mut impl Rng) -> GaussRational {
    loop {
        let z = gauss(rng);
        if !num_traits::Zero::is_zero(&z) {
            return z;
        }
    }
}

/// A homogeneous form with each basis monomial present with probability 1/2.
pub fn form(rng: &mut impl Rng, dim: usize, degree: usize) -> InvariantForm {
    let terms: Vec<_> = masks_of_degree(dim, degree)
        .into_iter()
        .filter_map(|m| rng.gen_bool(0.5).then(|| (m, gauss(rng))))
        .collect();
    InvariantForm::from_terms(dim, terms)
}
