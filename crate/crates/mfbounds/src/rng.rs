//! Deterministic random number generation.
//!
//! SplitMix64 is a counter-based generator: output i is a fixed bijective
//! mix of `seed + i*GAMMA`, so a (seed, stream) pair fully determines the
//! sequence with no warm-up and no shared state. Independent streams are
//! derived by hashing a stream tag into the seed, which lets one user seed
//! drive several internally independent noise sources (e.g. the volatility
//! field and the Brownian driver of a multifractal random walk).

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// FNV-1a over a byte string, used to fold stream tags into seeds.
fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// SplitMix64 stream. `next_u64` is `mix(seed + n*GAMMA)` for call count n.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
    // Box-Muller produces normals in pairs; the spare is cached here.
    cached_normal: Option<f64>,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 {
            state: seed,
            cached_normal: None,
        }
    }

    /// Derive an independent stream from `seed` and a tag. Distinct tags give
    /// sequences that behave as independent generators.
    pub fn stream(seed: u64, tag: &str) -> Self {
        SplitMix64::new(mix64(seed ^ fnv1a(tag.as_bytes())))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix64(self.state)
    }

    /// Uniform draw in the half-open interval (0, 1].
    pub fn next_uniform(&mut self) -> f64 {
        ((self.next_u64() >> 11) + 1) as f64 * (1.0 / 9007199254740992.0)
    }

    /// Uniform draw in the open interval (-pi/2, pi/2).
    pub fn next_uniform_angle(&mut self) -> f64 {
        (self.next_uniform() - 0.5) * std::f64::consts::PI
    }

    /// Standard exponential draw.
    pub fn next_exponential(&mut self) -> f64 {
        -self.next_uniform().ln()
    }

    /// Standard normal draw via Box-Muller.
    pub fn next_normal(&mut self) -> f64 {
        if let Some(z) = self.cached_normal.take() {
            return z;
        }
        let u1 = self.next_uniform();
        let u2 = self.next_uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = 2.0 * std::f64::consts::PI * u2;
        self.cached_normal = Some(r * theta.sin());
        r * theta.cos()
    }

    pub fn fill_normals(&mut self, out: &mut [f64]) {
        for x in out.iter_mut() {
            *x = self.next_normal();
        }
    }
}
