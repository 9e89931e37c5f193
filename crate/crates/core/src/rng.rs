//! Deterministic random streams.
//!
//! Every Monte-Carlo loop splits its work into fixed-size chunks and draws
//! chunk `i` from stream `i` of a ChaCha generator keyed by the run seed, so
//! results never depend on the number of worker threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::linalg::Vector;

pub type Rng = ChaCha8Rng;

pub const CHUNK: usize = 4096;

pub fn stream(seed: u64, index: u64) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn gaussian_vector(rng: &mut Rng, dim: usize) -> Vector {
    Vector::from_iterator(dim, (0..dim).map(|_| StandardNormal.sample(rng)))
}

pub fn unit_vector(rng: &mut Rng, dim: usize) -> Vector {
    loop {
        let g = gaussian_vector(rng, dim);
        let n = g.norm();
        if n > 1e-12 {
            return g / n;
        }
    }
}

/// Stable 64-bit mixing of a seed with a key, for per-item streams.
pub fn mix(seed: u64, key: u64) -> u64 {
    let mut z = seed ^ key.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Running mean/variance accumulator with a deterministic merge.
#[derive(Clone, Copy, Debug, Default)]
pub struct Moments {
    pub n: u64,
    pub sum: f64,
    pub sum_sq: f64,
}

impl Moments {
    pub fn push(&mut self, x: f64) {
        self.n += 1;
        self.sum += x;
        self.sum_sq += x * x;
    }

    pub fn merge(mut self, other: Moments) -> Moments {
        self.n += other.n;
        self.sum += other.sum;
        self.sum_sq += other.sum_sq;
        self
    }

    pub fn mean(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            self.sum / self.n as f64
        }
    }

    /// Standard error of the mean.
    pub fn stderr(&self) -> f64 {
        if self.n < 2 {
            return 0.0;
        }
        let n = self.n as f64;
        let mean = self.sum / n;
        let var = ((self.sum_sq - n * mean * mean) / (n - 1.0)).max(0.0);
        (var / n).sqrt()
    }
}
