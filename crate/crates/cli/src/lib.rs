//! Library side of the `grover` command: configuration, the `run` and
//! `sweep` drivers, and output writers. `main.rs` only parses flags.

pub mod config;
pub mod run;
pub mod sweep;

/// Dense-simulation ceiling unless raised with `--max-qubits`. At 24 qubits
/// a single state is 16M amplitudes (256 MiB); a run holds a few of them.
pub const DEFAULT_MAX_QUBITS: usize = 24;

/// Independent 64-bit stream derived from a base seed and two labels
/// (SplitMix64 finalizer over each input in turn).
pub fn stream_seed(seed: u64, a: u64, b: u64) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
    mix(mix(mix(seed) ^ a) ^ b)
}
