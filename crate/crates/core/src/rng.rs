//! Seeded pseudo-random test signals.
//!
//! The generator is ChaCha8 seeded with a `u64`; each amplitude draws its real
//! part and then its imaginary part uniformly from `[-1, 1]`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::domain::Domain;
use crate::group::PhasePoint;
use crate::signal::Signal;

pub type TestRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_complex(rng: &mut TestRng) -> Complex64 {
    let re = rng.gen_range(-1.0..=1.0);
    let im = rng.gen_range(-1.0..=1.0);
    Complex64::new(re, im)
}

pub fn random_signal(domain: &Domain, rng: &mut TestRng) -> Signal {
    let values: Vec<Complex64> = (0..domain.len()).map(|_| random_complex(rng)).collect();
    Signal::new(domain.clone(), values).expect("finite random values")
}

/// Random signal with a guaranteed non-zero value (redraws the all-zero case).
pub fn random_window(domain: &Domain, rng: &mut TestRng) -> Signal {
    loop {
        let s = random_signal(domain, rng);
        if s.max_abs() > 1e-3 {
            return s;
        }
    }
}

pub fn random_phase_point(domain: &Domain, rng: &mut TestRng) -> PhasePoint {
    PhasePoint::new(rng.gen_range(0..domain.len()), rng.gen_range(0..domain.dual().len()))
}
