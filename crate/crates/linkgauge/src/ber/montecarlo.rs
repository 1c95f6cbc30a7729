//! Seeded Monte Carlo AWGN simulator.
//!
//! Complex-baseband simulation with Gray mapping and hard (minimum
//! distance) decisions. Noise is injected per dimension with variance
//! N0/2, with Es = k * Eb for k bits per symbol.
//!
//! Reproducibility: the bit stream is split into fixed-size chunks and
//! every chunk draws from its own ChaCha8 stream keyed by
//! `(seed, chunk_index)`, so the result is bitwise identical for a given
//! `(scheme, ebn0_db, n_bits, seed)` regardless of how many workers the
//! chunks fan out across.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use super::ModulationScheme;
use crate::error::DomainError;
use crate::ber::BerError;

/// Symbols simulated per RNG chunk.
const SYMBOLS_PER_CHUNK: u64 = 1 << 15;

/// Gray labels around the 8-PSK circle (adjacent positions differ in one bit).
const GRAY8: [u8; 8] = [0, 1, 3, 2, 6, 7, 5, 4];
/// Gray labels for the four PAM levels -3d, -d, +d, +3d.
const GRAY4: [u8; 4] = [0, 1, 3, 2];

/// Outcome of one Monte Carlo run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McResult {
    /// Bits actually transmitted (n_bits rounded up to whole symbols).
    pub n_tx_bits: u64,
    pub n_err: u64,
    /// n_err / n_tx_bits.
    pub ber_hat: f64,
    /// 1.96 * sqrt(ber_hat * (1 - ber_hat) / n_tx_bits).
    pub ci95_halfwidth: f64,
}

/// Simulates `n_bits` of `scheme` over AWGN at the given Eb/N0.
///
/// Deterministic for fixed `(scheme, ebn0_db, n_bits, seed)`. GMSK is
/// analytic-only (continuous phase, needs trellis detection) and is
/// rejected; OFDM simulates its subcarrier.
pub fn ber_monte_carlo(
    scheme: &ModulationScheme,
    ebn0_db: f64,
    n_bits: u64,
    seed: u64,
) -> Result<McResult, BerError> {
    if !scheme.is_linear() {
        return Err(BerError::UnsupportedScheme(scheme.clone()));
    }
    if n_bits < 1000 {
        return Err(DomainError::new(format!("n_bits must be >= 1000, got {n_bits}")).into());
    }
    let scheme = flatten(scheme);
    let gamma = 10f64.powf(ebn0_db / 10.0);
    let k = scheme.bits_per_symbol() as u64;
    let n_symbols = n_bits.div_ceil(k);
    let n_chunks = n_symbols.div_ceil(SYMBOLS_PER_CHUNK);

    let n_err: u64 = (0..n_chunks)
        .into_par_iter()
        .map(|chunk| {
            let symbols = if chunk == n_chunks - 1 {
                n_symbols - chunk * SYMBOLS_PER_CHUNK
            } else {
                SYMBOLS_PER_CHUNK
            };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk);
            simulate_chunk(scheme, gamma, symbols, &mut rng)
        })
        .sum();

    let n_tx_bits = n_symbols * k;
    let ber_hat = n_err as f64 / n_tx_bits as f64;
    Ok(McResult {
        n_tx_bits,
        n_err,
        ber_hat,
        ci95_halfwidth: 1.96 * (ber_hat * (1.0 - ber_hat) / n_tx_bits as f64).sqrt(),
    })
}

/// Resolves OFDM to its subcarrier scheme.
fn flatten(scheme: &ModulationScheme) -> &ModulationScheme {
    match scheme {
        ModulationScheme::Ofdm(sub) => flatten(sub),
        other => other,
    }
}

fn simulate_chunk(
    scheme: &ModulationScheme,
    gamma: f64,
    n_symbols: u64,
    rng: &mut ChaCha8Rng,
) -> u64 {
    // Eb = 1 throughout, so N0 = 1/gamma and the per-dimension noise
    // deviation is sqrt(N0/2).
    let n0 = 1.0 / gamma;
    let sigma = (n0 / 2.0).sqrt();
    match scheme {
        ModulationScheme::BpskFamily => bpsk_chunk(sigma, n_symbols, rng),
        ModulationScheme::CoherentBfsk => coherent_bfsk_chunk(sigma, n_symbols, rng),
        ModulationScheme::Gfsk => noncoherent_bfsk_chunk(sigma, n_symbols, rng),
        ModulationScheme::Psk8 => psk8_chunk(sigma, n_symbols, rng),
        ModulationScheme::Dpsk8 => dpsk8_chunk(sigma, n_symbols, rng),
        ModulationScheme::Pam4 => pam4_chunk(sigma, n_symbols, rng),
        ModulationScheme::Qam16 => qam16_chunk(sigma, n_symbols, rng),
        ModulationScheme::Gmsk | ModulationScheme::Ofdm(_) => {
            unreachable!("rejected/flattened before simulation")
        }
    }
}

fn normal(rng: &mut ChaCha8Rng) -> f64 {
    rng.sample(StandardNormal)
}

fn bpsk_chunk(sigma: f64, n: u64, rng: &mut ChaCha8Rng) -> u64 {
    let mut errors = 0;
    for _ in 0..n {
        let tx = if rng.gen::<bool>() { 1.0 } else { -1.0 };
        let r = tx + sigma * normal(rng);
        if (r >= 0.0) != (tx >= 0.0) {
            errors += 1;
        }
    }
    errors
}

fn coherent_bfsk_chunk(sigma: f64, n: u64, rng: &mut ChaCha8Rng) -> u64 {
    // orthogonal tones, coherent correlation: the sent branch sees
    // amplitude sqrt(Eb) = 1 plus noise, the other branch noise only
    let mut errors = 0;
    for _ in 0..n {
        let sent = 1.0 + sigma * normal(rng);
        let other = sigma * normal(rng);
        if other > sent {
            errors += 1;
        }
    }
    errors
}

fn noncoherent_bfsk_chunk(sigma: f64, n: u64, rng: &mut ChaCha8Rng) -> u64 {
    // envelope detection; the carrier phase is irrelevant to |r|^2
    let mut errors = 0;
    for _ in 0..n {
        let s_re = 1.0 + sigma * normal(rng);
        let s_im = sigma * normal(rng);
        let o_re = sigma * normal(rng);
        let o_im = sigma * normal(rng);
        if o_re * o_re + o_im * o_im > s_re * s_re + s_im * s_im {
            errors += 1;
        }
    }
    errors
}

fn psk8_chunk(sigma: f64, n: u64, rng: &mut ChaCha8Rng) -> u64 {
    let amp = 3f64.sqrt(); // Es = 3 Eb
    let sector = std::f64::consts::PI / 4.0;
    let mut errors = 0;
    for _ in 0..n {
        let m = rng.gen_range(0..8usize);
        let phase = m as f64 * sector;
        let re = amp * phase.cos() + sigma * normal(rng);
        let im = amp * phase.sin() + sigma * normal(rng);
        let detected = (im.atan2(re) / sector).round().rem_euclid(8.0) as usize % 8;
        errors += (GRAY8[m] ^ GRAY8[detected]).count_ones() as u64;
    }
    errors
}

fn dpsk8_chunk(sigma: f64, n: u64, rng: &mut ChaCha8Rng) -> u64 {
    let amp = 3f64.sqrt();
    let sector = std::f64::consts::PI / 4.0;
    let mut errors = 0;
    // reference symbol starting the differential chain for this chunk
    let mut phase = 0.0f64;
    let mut prev_re = amp + sigma * normal(rng);
    let mut prev_im = sigma * normal(rng);
    for _ in 0..n {
        let m = rng.gen_range(0..8usize);
        phase += m as f64 * sector;
        let re = amp * phase.cos() + sigma * normal(rng);
        let im = amp * phase.sin() + sigma * normal(rng);
        // phase of r_k * conj(r_{k-1})
        let d_re = re * prev_re + im * prev_im;
        let d_im = im * prev_re - re * prev_im;
        let detected = (d_im.atan2(d_re) / sector).round().rem_euclid(8.0) as usize % 8;
        errors += (GRAY8[m] ^ GRAY8[detected]).count_ones() as u64;
        prev_re = re;
        prev_im = im;
    }
    errors
}

/// One Gray-mapped 4-PAM decision; `d` is half the level spacing.
fn pam_rail(d: f64, sigma: f64, rng: &mut ChaCha8Rng) -> u64 {
    let i = rng.gen_range(0..4usize);
    let level = (2.0 * i as f64 - 3.0) * d;
    let r = level + sigma * normal(rng);
    let detected = ((r / (2.0 * d) + 2.0).floor() as i64).clamp(0, 3) as usize;
    (GRAY4[i] ^ GRAY4[detected]).count_ones() as u64
}

fn pam4_chunk(sigma: f64, n: u64, rng: &mut ChaCha8Rng) -> u64 {
    // Es = 2 Eb = 2; E[level^2] = 5 d^2, so d = sqrt(0.4)
    let d = 0.4f64.sqrt();
    (0..n).map(|_| pam_rail(d, sigma, rng)).sum()
}

fn qam16_chunk(sigma: f64, n: u64, rng: &mut ChaCha8Rng) -> u64 {
    // two independent 4-PAM rails, 2 Eb per rail: same d as 4-PAM
    let d = 0.4f64.sqrt();
    (0..n)
        .map(|_| pam_rail(d, sigma, rng) + pam_rail(d, sigma, rng))
        .sum()
}
