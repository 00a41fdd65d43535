//! Quasi-static Rayleigh fading realizations.
//!
//! A link gain `h ~ CN(0, 1)` enters every bound only through `|h|^2`,
//! which is Exponential(1). Realizations therefore store squared
//! magnitudes; amplitudes are recovered with a square root where needed.
//!
//! Randomness is addressed by a [`RandomStream`] token `(seed, stream_index)`.
//! The token is mapped onto a ChaCha8 key (from `seed`) and ChaCha stream id
//! (`stream_index`), so substream `i` can be regenerated in isolation, in
//! any order and on any thread.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Name of the generator reported in run metadata.
pub const GENERATOR_NAME: &str = "ChaCha8Rng(rand_chacha 0.3; key=seed_from_u64(seed), stream=stream_index)";

/// Squared link gains for one fading draw.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelRealization {
    g_sd: f64,
    g_sr: Vec<f64>,
    g_rd: Vec<f64>,
}

fn check_gain(name: &str, g: f64) -> Result<()> {
    if g.is_finite() && g >= 0.0 {
        Ok(())
    } else {
        Err(domain(format!("gain {name} = {g} must be finite and >= 0")))
    }
}

impl ChannelRealization {
    pub fn new(g_sd: f64, g_sr: Vec<f64>, g_rd: Vec<f64>) -> Result<Self> {
        if g_sr.len() != g_rd.len() {
            return Err(domain(format!(
                "g_sr has {} entries but g_rd has {}",
                g_sr.len(),
                g_rd.len()
            )));
        }
        check_gain("g_sd", g_sd)?;
        for (i, (&sr, &rd)) in g_sr.iter().zip(&g_rd).enumerate() {
            check_gain(&format!("g_sr[{i}]"), sr)?;
            check_gain(&format!("g_rd[{i}]"), rd)?;
        }
        Ok(Self { g_sd, g_sr, g_rd })
    }

    /// Single-relay realization.
    pub fn single(g_sd: f64, g_sr: f64, g_rd: f64) -> Result<Self> {
        Self::new(g_sd, vec![g_sr], vec![g_rd])
    }

    pub fn n_relays(&self) -> usize {
        self.g_sr.len()
    }

    pub fn g_sd(&self) -> f64 {
        self.g_sd
    }

    pub fn g_sr(&self) -> &[f64] {
        &self.g_sr
    }

    pub fn g_rd(&self) -> &[f64] {
        &self.g_rd
    }
}

/// Immutable token addressing one deterministic random substream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RandomStream {
    pub seed: u64,
    pub stream_index: u64,
}

impl RandomStream {
    pub fn new(seed: u64, stream_index: u64) -> Self {
        Self { seed, stream_index }
    }

    /// Fresh generator positioned at the start of this substream.
    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream_index);
        rng
    }
}

/// Unit-mean exponential variate by inversion, `-ln U` with `U` in (0, 1].
pub fn sample_unit_exponential<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let u: f64 = rng.gen();
    -(1.0 - u).ln()
}

/// Draws `g_sd`, then `g_sr[0..n]`, then `g_rd[0..n]`, all i.i.d. Exp(1).
pub fn sample_realization(n_relays: usize, stream: RandomStream) -> ChannelRealization {
    let mut rng = stream.rng();
    let g_sd = sample_unit_exponential(&mut rng);
    let g_sr = (0..n_relays).map(|_| sample_unit_exponential(&mut rng)).collect();
    let g_rd = (0..n_relays).map(|_| sample_unit_exponential(&mut rng)).collect();
    ChannelRealization { g_sd, g_sr, g_rd }
}

/// Finite-SNR exponential order `log(1 + g snr) / log(snr)`.
pub fn exponential_order(g: f64, snr: f64) -> Result<f64> {
    if !(snr > 1.0) || !snr.is_finite() {
        return Err(domain(format!("snr = {snr} must be finite and > 1")));
    }
    check_gain("g", g)?;
    Ok((g * snr).ln_1p() / snr.ln())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_relays_gives_direct_link_only() {
        let r = sample_realization(0, RandomStream::new(1, 2));
        assert_eq!(r.n_relays(), 0);
        assert!(r.g_sr().is_empty() && r.g_rd().is_empty());
        assert!(r.g_sd() >= 0.0);
    }

    #[test]
    fn same_token_same_realization() {
        let a = sample_realization(3, RandomStream::new(42, 7));
        let b = sample_realization(3, RandomStream::new(42, 7));
        assert_eq!(a, b);
        let c = sample_realization(3, RandomStream::new(42, 8));
        assert_ne!(a, c);
        let d = sample_realization(3, RandomStream::new(43, 7));
        assert_ne!(a, d);
    }

    #[test]
    fn substreams_independent_of_generation_order() {
        let forward: Vec<_> = (0..64)
            .map(|i| sample_realization(2, RandomStream::new(9, i)))
            .collect();
        for i in (0..64).rev() {
            assert_eq!(sample_realization(2, RandomStream::new(9, i)), forward[i as usize]);
        }
    }

    fn samples(n: usize) -> Vec<f64> {
        (0..n as u64)
            .map(|i| sample_realization(0, RandomStream::new(2024, i)).g_sd())
            .collect()
    }

    #[test]
    fn unit_mean() {
        let xs = samples(1_000_000);
        let mean = xs.iter().sum::<f64>() / xs.len() as f64;
        assert!((mean - 1.0).abs() < 0.01, "mean = {mean}");
    }

    #[test]
    fn kolmogorov_smirnov_against_exp1() {
        let mut xs = samples(1_000_000);
        xs.sort_by(f64::total_cmp);
        let n = xs.len() as f64;
        let ks = xs
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let cdf = 1.0 - (-x).exp();
                let lo = i as f64 / n;
                let hi = (i + 1) as f64 / n;
                (cdf - lo).abs().max((hi - cdf).abs())
            })
            .fold(0.0, f64::max);
        assert!(ks < 0.002, "KS statistic {ks}");
    }

    #[test]
    fn exponential_order_examples() {
        assert_eq!(exponential_order(0.0, 100.0).unwrap(), 0.0);
        let v = exponential_order(1.0, 1e6).unwrap();
        let expected = (1.0f64 + 1e6).ln() / 1e6f64.ln();
        assert!((v - expected).abs() < 1e-15);
        assert!((v - 1.0000001).abs() < 1e-7);
        let v = exponential_order(1e-4, 1e4).unwrap();
        assert!((v - 2f64.ln() / 1e4f64.ln()).abs() < 1e-15);
        assert!((v - 0.0753).abs() < 1e-4);
    }

    #[test]
    fn exponential_order_rejects_low_snr() {
        assert!(exponential_order(1.0, 1.0).is_err());
        assert!(exponential_order(1.0, 0.5).is_err());
        assert!(exponential_order(-1.0, 10.0).is_err());
    }

    #[test]
    fn exponential_order_monotone() {
        let snrs = [2.0, 10.0, 1e3, 1e6, 1e9];
        let gains = [0.0, 1e-6, 1e-3, 0.1, 1.0, 10.0, 1e3];
        for &snr in &snrs {
            let orders: Vec<f64> = gains.iter().map(|&g| exponential_order(g, snr).unwrap()).collect();
            assert!(orders.windows(2).all(|w| w[0] <= w[1]));
        }
        // In snr the order rises toward 1 for g < 1 (once g * snr >= 10) and
        // falls toward 1 for g >= 1.
        for &g in &[0.01, 0.1, 0.5, 1.0, 10.0] {
            let orders: Vec<f64> = snrs
                .iter()
                .filter(|&&s| g * s >= 10.0)
                .map(|&s| exponential_order(g, s).unwrap())
                .collect();
            assert!(orders.len() >= 2);
            if g < 1.0 {
                assert!(orders.windows(2).all(|w| w[0] <= w[1]), "g = {g}: {orders:?}");
            } else {
                assert!(orders.windows(2).all(|w| w[0] >= w[1]), "g = {g}: {orders:?}");
            }
        }
    }

    #[test]
    fn realization_validation() {
        assert!(ChannelRealization::new(1.0, vec![1.0], vec![]).is_err());
        assert!(ChannelRealization::single(-1.0, 1.0, 1.0).is_err());
        assert!(ChannelRealization::single(1.0, f64::NAN, 1.0).is_err());
        assert!(ChannelRealization::single(0.0, 0.0, 0.0).is_ok());
    }
}
