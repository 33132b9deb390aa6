//! Counter-based randomness.
//!
//! Every random decision in a simulation is a pure function of
//! `(trial seed, step, walk id)`, so results do not depend on how trials are
//! scheduled across threads, and two processes driven by the same trial seed
//! make identical moves for identically-numbered walks.

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for trial `index` of an ensemble driven by `master`.
#[inline]
pub fn trial_seed(master: u64, index: u64) -> u64 {
    mix64(mix64(master ^ 0x7472_6961_6c5f_7365).wrapping_add(index.wrapping_mul(GOLDEN)))
}

/// Random word for `(seed, step, id)`.
#[inline]
pub fn word(seed: u64, step: u64, id: u64) -> u64 {
    let a = mix64(seed.wrapping_add(step.wrapping_mul(GOLDEN)));
    mix64(a ^ id.wrapping_add(1).wrapping_mul(0xD6E8_FEB8_6659_FD93))
}

/// One lazy-walk decision: `None` to stay put, `Some(i)` to move to the
/// `i`-th neighbor. The top bit decides laziness; the remaining 63 bits pick
/// the neighbor by multiply-shift.
#[inline]
pub fn lazy_choice(w: u64, degree: usize) -> Option<usize> {
    if w >> 63 == 0 || degree == 0 {
        return None;
    }
    let low = w & (u64::MAX >> 1);
    Some(((low as u128 * degree as u128) >> 63) as usize)
}

/// Uniform float in `[0, 1)` from a word.
#[inline]
pub fn unit_f64(w: u64) -> f64 {
    (w >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}
