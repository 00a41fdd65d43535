//! Monte Carlo outage probability of the cut-set bounds.
//!
//! A realization is in outage at rate `R = r log2(snr)` when
//! `bound - gap_bits < R`. Each `(snr point, trial)` pair owns its own
//! random substream, so counts are bit-identical for any worker count.
//! Trial `i` sees a different realization at each SNR point; across runs
//! with the same seed the same `(point, trial)` realization recurs, which
//! makes counts monotone in `r` and in `gap_bits`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::channel::{sample_realization, ChannelRealization, RandomStream, GENERATOR_NAME};
use crate::cutset::{network_min_cut_lower_bound, single_relay_cutset_bits, Schedule};
use crate::error::{domain, Error, Result};

/// Bits of the stream index reserved for the trial number.
pub const TRIAL_BITS: u32 = 40;

/// Rows with fewer outages than this are left out of slope fits by default.
pub const DEFAULT_MIN_COUNT: u64 = 50;

/// Environment variable that overrides the default worker count.
pub const WORKERS_ENV: &str = "HDRELAY_WORKERS";

/// Which capacity bound decides outage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundModel {
    /// Single-relay Gaussian cut-set upper bound.
    SingleRelayUb,
    /// Min-cut of the two-hop Z-channel lower bound.
    TwoHopZlb,
}

impl std::fmt::Display for BoundModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BoundModel::SingleRelayUb => "single-relay-ub",
            BoundModel::TwoHopZlb => "two-hop-zlb",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub model: BoundModel,
    pub n_relays: usize,
    pub schedule: Schedule,
    pub r: f64,
    pub snr_db_grid: Vec<f64>,
    pub trials_per_point: u64,
    pub seed: u64,
    pub gap_bits: f64,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        let invalid = |m: String| Err(Error::InvalidConfig(m));
        match (self.model, &self.schedule) {
            (BoundModel::SingleRelayUb, Schedule::SingleRelay { .. }) if self.n_relays == 1 => {}
            (BoundModel::SingleRelayUb, _) => {
                return invalid("single-relay model needs n_relays = 1 and a single-relay schedule".into())
            }
            (BoundModel::TwoHopZlb, Schedule::TwoHop(s)) if s.n_relays() == self.n_relays => {}
            (BoundModel::TwoHopZlb, _) => {
                return invalid(format!("two-hop model needs a two-hop schedule over {} relays", self.n_relays))
            }
        }
        if let Schedule::SingleRelay { t } = self.schedule {
            if !(0.0..=1.0).contains(&t) {
                return invalid(format!("listen fraction {t} outside [0, 1]"));
            }
        }
        if !(0.0..=1.0).contains(&self.r) {
            return invalid(format!("multiplexing gain {} outside [0, 1]", self.r));
        }
        if self.snr_db_grid.is_empty() {
            return invalid("empty SNR grid".into());
        }
        if self.snr_db_grid.iter().any(|x| !x.is_finite()) {
            return invalid("SNR grid has non-finite entries".into());
        }
        if self.snr_db_grid.windows(2).any(|w| !(w[0] < w[1])) {
            return invalid("SNR grid must be strictly ascending".into());
        }
        if self.snr_db_grid.len() as u64 >= 1 << (64 - TRIAL_BITS) {
            return invalid("too many SNR points".into());
        }
        if self.trials_per_point == 0 || self.trials_per_point >= 1 << TRIAL_BITS {
            return invalid(format!("trials per point must be in [1, 2^{TRIAL_BITS})"));
        }
        if !(self.gap_bits >= 0.0 && self.gap_bits.is_finite()) {
            return invalid(format!("gap_bits = {} must be finite and >= 0", self.gap_bits));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutageRow {
    pub snr_db: f64,
    pub snr_linear: f64,
    pub rate_bits: f64,
    pub trials: u64,
    pub outage_count: u64,
    pub p_hat: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutageMetadata {
    pub seed: u64,
    pub generator: String,
    pub model: BoundModel,
    pub n_relays: usize,
    pub schedule: Schedule,
    pub r: f64,
    pub gap_bits: f64,
    pub tool_version: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutageTable {
    pub metadata: OutageMetadata,
    pub rows: Vec<OutageRow>,
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Capacity bound in bits selected by `model`.
pub fn bound_bits(real: &ChannelRealization, snr: f64, model: BoundModel, schedule: &Schedule) -> Result<f64> {
    match (model, schedule) {
        (BoundModel::SingleRelayUb, Schedule::SingleRelay { t }) => single_relay_cutset_bits(real, snr, *t),
        (BoundModel::TwoHopZlb, Schedule::TwoHop(s)) => network_min_cut_lower_bound(real, snr, s),
        _ => Err(domain(format!("model {model} does not accept this schedule"))),
    }
}

/// `bound - gap_bits < rate_bits`
pub fn outage_event(
    real: &ChannelRealization,
    snr: f64,
    rate_bits: f64,
    model: BoundModel,
    schedule: &Schedule,
    gap_bits: f64,
) -> Result<bool> {
    Ok(bound_bits(real, snr, model, schedule)? - gap_bits < rate_bits)
}

/// Worker count from [`WORKERS_ENV`], else the available parallelism.
pub fn default_workers() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&w| w > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

pub fn stream_index(point: usize, trial: u64) -> u64 {
    (point as u64) << TRIAL_BITS | trial
}

pub fn estimate_outage(cfg: &RunConfig) -> Result<OutageTable> {
    estimate_outage_with_workers(cfg, default_workers())
}

/// Runs the campaign on a dedicated pool of `workers` threads.
pub fn estimate_outage_with_workers(cfg: &RunConfig, workers: usize) -> Result<OutageTable> {
    cfg.validate()?;
    if workers == 0 {
        return Err(Error::InvalidConfig("worker count must be >= 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidConfig(format!("cannot start worker pool: {e}")))?;

    let rows = cfg
        .snr_db_grid
        .iter()
        .enumerate()
        .map(|(point, &snr_db)| {
            let snr_linear = db_to_linear(snr_db);
            let rate_bits = cfg.r * snr_linear.log2();
            let outage_count = pool.install(|| {
                (0..cfg.trials_per_point)
                    .into_par_iter()
                    .filter(|&trial| {
                        let stream = RandomStream::new(cfg.seed, stream_index(point, trial));
                        let real = sample_realization(cfg.n_relays, stream);
                        outage_event(&real, snr_linear, rate_bits, cfg.model, &cfg.schedule, cfg.gap_bits)
                            .expect("config validated")
                    })
                    .count() as u64
            });
            let trials = cfg.trials_per_point;
            let (ci_low, ci_high) = confidence_interval(outage_count, trials, 0.95)?;
            Ok(OutageRow {
                snr_db,
                snr_linear,
                rate_bits,
                trials,
                outage_count,
                p_hat: outage_count as f64 / trials as f64,
                ci_low,
                ci_high,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(OutageTable {
        metadata: OutageMetadata {
            seed: cfg.seed,
            generator: GENERATOR_NAME.to_string(),
            model: cfg.model,
            n_relays: cfg.n_relays,
            schedule: cfg.schedule.clone(),
            r: cfg.r,
            gap_bits: cfg.gap_bits,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
        },
        rows,
    })
}

/// Wilson score interval for a binomial proportion.
pub fn confidence_interval(successes: u64, trials: u64, level: f64) -> Result<(f64, f64)> {
    if trials == 0 || successes > trials {
        return Err(domain(format!("need 0 <= successes ({successes}) <= trials ({trials}), trials > 0")));
    }
    if !(level > 0.0 && level < 1.0) {
        return Err(domain(format!("confidence level {level} outside (0, 1)")));
    }
    let z = Normal::new(0.0, 1.0).expect("standard normal").inverse_cdf(0.5 + level / 2.0);
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2n = z * z / n;
    let center = (p + z2n / 2.0) / (1.0 + z2n);
    let half = z / (1.0 + z2n) * (p * (1.0 - p) / n + z2n / (4.0 * n)).sqrt();
    let low = if successes == 0 { 0.0 } else { (center - half).clamp(0.0, p) };
    let high = if successes == trials { 1.0 } else { (center + half).clamp(p, 1.0) };
    Ok((low, high))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlopeFit {
    pub slope: f64,
    /// `None` when exactly two rows qualify (no residual degrees of freedom).
    pub stderr: Option<f64>,
    pub points_used: usize,
}

/// OLS slope of `-log10(p_hat)` against `log10(snr_linear)` over rows with
/// at least `min_count` outages.
pub fn estimate_diversity_slope(rows: &[OutageRow], min_count: u64) -> Result<SlopeFit> {
    let min_count = min_count.max(1);
    let (xs, ys): (Vec<f64>, Vec<f64>) = rows
        .iter()
        .filter(|row| row.outage_count >= min_count)
        .map(|row| (row.snr_linear.log10(), -row.p_hat.log10()))
        .unzip();
    let n = xs.len();
    if n < 2 {
        return Err(Error::InsufficientData(n));
    }
    let mean_x = xs.iter().sum::<f64>() / n as f64;
    let mean_y = ys.iter().sum::<f64>() / n as f64;
    let sxx: f64 = xs.iter().map(|x| (x - mean_x).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::InsufficientData(1));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mean_x) * (y - mean_y)).sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let stderr = (n > 2).then(|| {
        let ssr: f64 = xs.iter().zip(&ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
        (ssr / (n - 2) as f64 / sxx).sqrt()
    });
    Ok(SlopeFit { slope, stderr, points_used: n })
}
