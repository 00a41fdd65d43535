//! Falsification harnesses for the inequalities behind the two-hop result:
//! Chebyshev's sum inequality for similarly ordered sequences, the subset
//! average inequality, and "cut value >= average of crossing links".
//!
//! Every check returns `LHS - RHS`; a valid instance never goes below
//! `-MARGIN_TOL`.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::{sample_realization, ChannelRealization, RandomStream};
use crate::cutset::{Cut, LinkCapacities, TwoHopSchedule};
use crate::error::{domain, Error, Result};

pub const MARGIN_TOL: f64 = 1e-12;

/// Largest `n` accepted by [`check_avg_lemma`].
pub const MAX_AVG_LEMMA_N: usize = 16;

/// Largest relay count accepted by [`check_cut_avg_consistency`].
pub const MAX_CUT_AVG_RELAYS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    Tchebychef,
    AvgLemma,
    CutAvg,
}

impl CheckKind {
    /// Default upper limit on the instance size drawn by the suite.
    pub fn default_max_n(self) -> usize {
        match self {
            CheckKind::Tchebychef => 16,
            CheckKind::AvgLemma => 8,
            CheckKind::CutAvg => 6,
        }
    }
}

impl std::fmt::Display for CheckKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CheckKind::Tchebychef => "tchebychef",
            CheckKind::AvgLemma => "avg-lemma",
            CheckKind::CutAvg => "cut-avg",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub kind: CheckKind,
    pub instances: u64,
    pub violations: u64,
    /// Smallest `LHS - RHS` seen.
    pub worst_margin: f64,
    pub seed: u64,
    pub max_n: usize,
}

/// `(1/n) Σ a_i b_i - ((1/n) Σ a_i)((1/n) Σ b_i)` for similarly ordered sequences.
pub fn check_tchebychef(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || a.len() != b.len() {
        return Err(domain(format!("need equal non-empty lengths, got {} and {}", a.len(), b.len())));
    }
    for u in 0..a.len() {
        for v in u + 1..a.len() {
            if (a[u] - a[v]) * (b[u] - b[v]) < 0.0 {
                return Err(Error::NotSimilarlyOrdered(u, v));
            }
        }
    }
    let n = a.len() as f64;
    let mean_ab = a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>() / n;
    let mean_a = a.iter().sum::<f64>() / n;
    let mean_b = b.iter().sum::<f64>() / n;
    Ok(mean_ab - mean_a * mean_b)
}

/// `max(a, max_{i∈V} s_i)` for every subset mask `V`, with `f(∅) = a`.
fn subset_max_table(a: f64, s: &[f64]) -> Vec<f64> {
    let mut table = vec![a; 1 << s.len()];
    for mask in 1..table.len() {
        let low = mask.trailing_zeros() as usize;
        table[mask] = table[mask & (mask - 1)].max(s[low]);
    }
    table
}

/// `(1/2^n) Σ_V f(V) - (a + Σ s_i)/(n + 1)`.
///
/// `f_override`, indexed by subset bitmask, must dominate the default
/// `f(V) = max(a, max_{i∈V} s_i)` pointwise.
pub fn check_avg_lemma(a: f64, s: &[f64], f_override: Option<&[f64]>) -> Result<f64> {
    let n = s.len();
    if n > MAX_AVG_LEMMA_N {
        return Err(domain(format!("n = {n} exceeds {MAX_AVG_LEMMA_N}")));
    }
    let nonneg = |x: f64| x.is_finite() && x >= 0.0;
    if !nonneg(a) || !s.iter().all(|&x| nonneg(x)) {
        return Err(domain("a and s must be finite and >= 0"));
    }
    let bound = subset_max_table(a, s);
    let f = match f_override {
        None => bound.as_slice(),
        Some(f) => {
            if f.len() != bound.len() {
                return Err(domain(format!("override has {} entries, expected {}", f.len(), bound.len())));
            }
            if let Some(mask) = (0..f.len()).find(|&m| !(f[m] >= bound[m])) {
                return Err(Error::OverrideBelowBound { mask: mask as u32, value: f[mask], bound: bound[mask] });
            }
            f
        }
    };
    let lhs = f.iter().sum::<f64>() / f.len() as f64;
    let rhs = (a + s.iter().sum::<f64>()) / (n + 1) as f64;
    Ok(lhs - rhs)
}

/// Uniform-schedule cut flow minus the crossing-link average for one cut.
pub fn check_cut_avg_consistency(real: &ChannelRealization, snr: f64, cut: Cut) -> Result<f64> {
    let n = real.n_relays();
    if n > MAX_CUT_AVG_RELAYS {
        return Err(domain(format!("{n} relays exceeds {MAX_CUT_AVG_RELAYS}")));
    }
    let sched = TwoHopSchedule::uniform(n)?;
    let flow = crate::cutset::cut_flow_lower_bound(real, snr, &sched, cut)?;
    let avg = crate::cutset::cut_average_lower_bound(real, snr, cut)?;
    Ok(flow - avg)
}

fn tchebychef_instance(stream: RandomStream, max_n: usize) -> f64 {
    let mut rng = stream.rng();
    let n = rng.gen_range(1..=max_n);
    let mut a: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..10.0)).collect();
    let mut b: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..10.0)).collect();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    if rng.gen::<bool>() {
        a.reverse();
        b.reverse();
    }
    check_tchebychef(&a, &b).expect("sorted pairs are similarly ordered")
}

fn avg_lemma_instance(stream: RandomStream, max_n: usize) -> f64 {
    let mut rng = stream.rng();
    let n = rng.gen_range(1..=max_n);
    let a = rng.gen_range(0.0..10.0);
    let s: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..10.0)).collect();
    if stream.stream_index % 2 == 1 {
        let slack: Vec<f64> = subset_max_table(a, &s).into_iter().map(|f| f + rng.gen::<f64>()).collect();
        check_avg_lemma(a, &s, Some(&slack)).expect("slack override dominates")
    } else {
        check_avg_lemma(a, &s, None).expect("valid instance")
    }
}

fn cut_avg_instance(stream: RandomStream, max_n: usize) -> f64 {
    let mut rng = stream.rng();
    let n = rng.gen_range(1..=max_n);
    let snr_db: f64 = rng.gen_range(0.0..40.0);
    let cut = Cut(rng.gen_range(0..1u32 << n));
    // gains come from a separate substream of the same seed
    let real = sample_realization(n, RandomStream::new(stream.seed ^ 0x9e37_79b9_7f4a_7c15, stream.stream_index));
    let caps = LinkCapacities::new(&real, 10f64.powf(snr_db / 10.0));
    let sched = TwoHopSchedule::uniform(n).expect("n within range");
    caps.cut_flow(&sched, cut) - caps.cut_average(cut)
}

/// Draws `n_instances` random instances of `kind` and tallies violations.
///
/// Distributions: Tchebychef pairs are sorted Uniform[0, 10) sequences of
/// length 1..=max_n; the subset-average lemma draws `a`, `s_i` from
/// Uniform[0, 10), with every odd instance adding Uniform[0, 1) slack to the
/// tight `f`; cut checks draw Exp(1) gains, SNR Uniform[0, 40) dB and a
/// uniform cut over 1..=max_n relays.
pub fn run_randomized_suite(kind: CheckKind, n_instances: u64, seed: u64, max_n: Option<usize>) -> Result<VerificationReport> {
    let max_n = max_n.unwrap_or_else(|| kind.default_max_n());
    let limit = match kind {
        CheckKind::Tchebychef => usize::MAX,
        CheckKind::AvgLemma => MAX_AVG_LEMMA_N,
        CheckKind::CutAvg => MAX_CUT_AVG_RELAYS,
    };
    if max_n == 0 || max_n > limit {
        return Err(domain(format!("max size {max_n} outside 1..={limit} for {kind}")));
    }
    let instance = match kind {
        CheckKind::Tchebychef => tchebychef_instance,
        CheckKind::AvgLemma => avg_lemma_instance,
        CheckKind::CutAvg => cut_avg_instance,
    };
    let (violations, worst_margin) = (0..n_instances)
        .into_par_iter()
        .map(|i| {
            let margin = instance(RandomStream::new(seed, i), max_n);
            (u64::from(!(margin >= -MARGIN_TOL)), margin)
        })
        .reduce(|| (0, f64::INFINITY), |a, b| (a.0 + b.0, a.1.min(b.1)));
    Ok(VerificationReport { kind, instances: n_instances, violations, worst_margin, seed, max_n })
}
