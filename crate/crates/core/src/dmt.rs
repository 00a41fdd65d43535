//! Diversity-multiplexing tradeoff exponents.
//!
//! At rate `R = r log2(snr)` and high SNR, each link with squared gain
//! `|h|^2 ~ Exp(1)` has exponential order `α ∈ [0, 1]` with density
//! `snr^-(1 - α)`. The outage exponent is therefore
//!
//! ```text
//! d(r) = inf { Σ_i (1 - α_i) : α ∈ O(r), 0 <= α <= 1 }
//! ```
//!
//! This module carries the closed-form answers for the single-relay channel
//! and the two-hop network, the outage sets they are derived from, and a
//! brute-force grid oracle that minimizes over `[0, 1]^dim` directly.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::{exponential_order, ChannelRealization};
use crate::cutset::{enumerate_cuts, single_relay_order, Cut};
use crate::error::{domain, Error, Result};

/// Default cap on `dim * points^dim` for [`exponent_grid_oracle`].
pub const DEFAULT_ORACLE_BUDGET: f64 = 1e9;

/// Oracle step used by [`optimize_schedule_single`].
pub const DEFAULT_ORACLE_STEP: f64 = 0.005;

/// Exponential orders of every link in the network.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExponentVector {
    sd: f64,
    sr: Vec<f64>,
    rd: Vec<f64>,
}

impl ExponentVector {
    /// Orders on the support `[0, 1]` of the high-SNR density.
    pub fn new(sd: f64, sr: Vec<f64>, rd: Vec<f64>) -> Result<Self> {
        if sr.len() != rd.len() {
            return Err(domain("sr and rd order lists differ in length"));
        }
        let in_support = |a: f64| (0.0..=1.0).contains(&a);
        if !in_support(sd) || !sr.iter().chain(&rd).all(|&a| in_support(a)) {
            return Err(domain("exponential orders must lie in [0, 1]"));
        }
        Ok(Self { sd, sr, rd })
    }

    pub fn single(sd: f64, sr: f64, rd: f64) -> Result<Self> {
        Self::new(sd, vec![sr], vec![rd])
    }

    /// Layout `[sd, sr_1..sr_N, rd_1..rd_N]`.
    pub fn from_flat(n_relays: usize, flat: &[f64]) -> Result<Self> {
        if flat.len() != 2 * n_relays + 1 {
            return Err(Error::DimensionMismatch { expected: 2 * n_relays + 1, got: flat.len() });
        }
        Self::new(flat[0], flat[1..=n_relays].to_vec(), flat[n_relays + 1..].to_vec())
    }

    /// Finite-SNR orders `log(1 + g snr) / log(snr)` of a realization.
    ///
    /// These are >= 0 but exceed 1 for gains above 1, so they bypass the
    /// support check of [`ExponentVector::new`].
    pub fn finite_snr(real: &ChannelRealization, snr: f64) -> Result<Self> {
        let order = |g| exponential_order(g, snr);
        Ok(Self {
            sd: order(real.g_sd())?,
            sr: real.g_sr().iter().map(|&g| order(g)).collect::<Result<_>>()?,
            rd: real.g_rd().iter().map(|&g| order(g)).collect::<Result<_>>()?,
        })
    }

    pub fn n_relays(&self) -> usize {
        self.sr.len()
    }

    pub fn sd(&self) -> f64 {
        self.sd
    }

    pub fn sr(&self) -> &[f64] {
        &self.sr
    }

    pub fn rd(&self) -> &[f64] {
        &self.rd
    }

    /// `Σ (1 - α)` over all links: the exponent of this point's density.
    pub fn density_exponent(&self) -> f64 {
        std::iter::once(&self.sd).chain(&self.sr).chain(&self.rd).map(|a| 1.0 - a).sum()
    }
}

/// Sampled `(r, d)` pairs with strictly increasing `r`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DmtCurve {
    points: Vec<(f64, f64)>,
}

impl DmtCurve {
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.windows(2).any(|w| !(w[0].0 < w[1].0)) {
            return Err(domain("curve multiplexing gains must be strictly increasing"));
        }
        Ok(Self { points })
    }

    pub fn sample<F>(rs: &[f64], mut f: F) -> Result<Self>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        let points = rs.iter().map(|&r| f(r).map(|d| (r, d))).collect::<Result<_>>()?;
        Self::new(points)
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn is_nonincreasing(&self) -> bool {
        self.points.windows(2).all(|w| w[1].1 <= w[0].1)
    }
}

fn check_gain_range(r: f64) -> Result<()> {
    if (0.0..=1.0).contains(&r) {
        Ok(())
    } else {
        Err(domain(format!("multiplexing gain r = {r} outside [0, 1]")))
    }
}

/// `m (1 - r)`, the DMT of an `m x 1` MISO channel.
pub fn miso_dmt(m_antennas: usize, r: f64) -> Result<f64> {
    check_gain_range(r)?;
    if m_antennas == 0 {
        return Err(domain("MISO channel needs at least one transmit antenna"));
    }
    Ok(m_antennas as f64 * (1.0 - r))
}

/// Two parallel channels used alternately, rate `r` each: `2 (1 - r)`.
pub fn parallel_channel_dmt(r: f64) -> Result<f64> {
    check_gain_range(r)?;
    Ok(2.0 * (1.0 - r))
}

/// Cut-set exponent of the single-relay channel at `t = 0.5`: `3 - (1 + 2r)`.
pub fn single_relay_exponent_analytic(r: f64) -> Result<f64> {
    check_gain_range(r)?;
    Ok(3.0 - (1.0 + 2.0 * r))
}

/// Cut-set exponent of the two-hop network under uniform scheduling: `(N + 1)(1 - r)`.
pub fn two_hop_exponent_analytic(n_relays: usize, r: f64) -> Result<f64> {
    check_gain_range(r)?;
    if n_relays == 0 {
        return Err(domain("two-hop network needs at least one relay"));
    }
    Ok((n_relays + 1) as f64 * (1.0 - r))
}

/// Whether the single-relay cut-set bound is in outage at multiplexing gain `r`
/// with listen fraction `t`. The outage set is closed.
pub fn single_relay_outage_predicate(alpha: &ExponentVector, r: f64, t: f64) -> Result<bool> {
    if alpha.n_relays() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, got: alpha.n_relays() });
    }
    Ok(single_relay_order(alpha.sd, alpha.sr[0], alpha.rd[0], t) <= r)
}

/// Whether cut `Ω` of the two-hop network is in outage:
/// `α_sd + Σ_{j∈Ω} α_rjd + Σ_{j∉Ω} α_srj <= (N + 1) r`.
pub fn two_hop_cut_outage_predicate(alpha: &ExponentVector, r: f64, cut: Cut) -> Result<bool> {
    let n = alpha.n_relays();
    if (cut.0 as u64) >= 1u64 << n {
        return Err(domain(format!("cut {:#b} invalid for {} relays", cut.0, n)));
    }
    let crossing: f64 = (0..n).map(|j| if cut.contains(j) { alpha.rd[j] } else { alpha.sr[j] }).sum();
    Ok(alpha.sd + crossing <= (n + 1) as f64 * r)
}

/// Minimizer found by [`exponent_grid_search`].
#[derive(Debug, Clone, PartialEq)]
pub struct GridOptimum {
    /// `min Σ (1 - α_i)` over in-outage grid points; `+∞` if there are none.
    pub exponent: f64,
    /// First grid point (in row-major order) attaining the minimum.
    pub point: Option<Vec<f64>>,
}

impl GridOptimum {
    pub fn no_outage(&self) -> bool {
        self.exponent.is_infinite()
    }
}

/// Grid `{0, step, 2 step, ...}` on `[0, 1]`, always including both endpoints.
fn unit_axis(step: f64) -> Vec<f64> {
    let inv = 1.0 / step;
    let m = inv.round();
    if (inv - m).abs() < 1e-9 {
        let m = m as usize;
        return (0..=m).map(|i| i as f64 / m as f64).collect();
    }
    let mut axis: Vec<f64> = (0..).map(|i| i as f64 * step).take_while(|&a| a < 1.0).collect();
    axis.push(1.0);
    axis
}

/// Worst-case gap between the grid minimum and the true infimum for the
/// piecewise-linear outage sets handled here.
pub fn oracle_tolerance(dim: usize, step: f64) -> f64 {
    dim as f64 * step
}

/// Brute-force minimization of `Σ (1 - α_i)` over the uniform grid on
/// `[0, 1]^dim`, restricted to points where `predicate` holds.
///
/// The grid is split across rayon workers; the reduction picks the smallest
/// exponent and then the smallest linear index, so the result does not
/// depend on scheduling.
pub fn exponent_grid_search<F>(predicate: F, dim: usize, step: f64, budget: f64) -> Result<GridOptimum>
where
    F: Fn(&[f64]) -> bool + Sync,
{
    if !(step > 0.0 && step <= 0.25) {
        return Err(domain(format!("grid step {step} outside (0, 0.25]")));
    }
    if dim == 0 {
        return Err(domain("grid dimension must be >= 1"));
    }
    let axis = unit_axis(step);
    let k = axis.len();
    let needed = dim as f64 * (k as f64).powi(dim as i32);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let total = (k as u64).pow(dim as u32);

    let best = (0..total)
        .into_par_iter()
        .map_init(
            || vec![0.0; dim],
            |point, idx| {
                let mut rest = idx;
                for slot in point.iter_mut().rev() {
                    *slot = axis[(rest % k as u64) as usize];
                    rest /= k as u64;
                }
                if predicate(point) {
                    let cost: f64 = point.iter().map(|a| 1.0 - a).sum();
                    (cost, idx)
                } else {
                    (f64::INFINITY, u64::MAX)
                }
            },
        )
        .reduce(
            || (f64::INFINITY, u64::MAX),
            |a, b| if (b.0, b.1) < (a.0, a.1) { b } else { a },
        );

    let point = (best.1 != u64::MAX).then(|| {
        let mut rest = best.1;
        let mut p = vec![0.0; dim];
        for slot in p.iter_mut().rev() {
            *slot = axis[(rest % k as u64) as usize];
            rest /= k as u64;
        }
        p
    });
    Ok(GridOptimum { exponent: best.0, point })
}

/// [`exponent_grid_search`] with the default budget, returning only the exponent.
pub fn exponent_grid_oracle<F>(predicate: F, dim: usize, step: f64) -> Result<f64>
where
    F: Fn(&[f64]) -> bool + Sync,
{
    exponent_grid_search(predicate, dim, step, DEFAULT_ORACLE_BUDGET).map(|o| o.exponent)
}

/// Grid-oracle exponent of the single-relay cut-set bound with listen fraction `t`.
pub fn single_relay_exponent_oracle(r: f64, t: f64, step: f64) -> Result<f64> {
    check_gain_range(r)?;
    if !(0.0..=1.0).contains(&t) {
        return Err(domain(format!("listen fraction t = {t} outside [0, 1]")));
    }
    exponent_grid_oracle(|a| single_relay_order(a[0], a[1], a[2], t) <= r, 3, step)
}

/// Which variables the per-cut oracle grids over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutGrid {
    /// Only the `N + 1` links crossing the cut; the others sit at 1 and cost nothing.
    Crossing,
    /// All `2N + 1` links.
    Full,
}

/// Grid-oracle exponent of one cut of the two-hop network.
pub fn two_hop_cut_exponent_oracle(
    n_relays: usize,
    cut: Cut,
    r: f64,
    step: f64,
    grid: CutGrid,
) -> Result<f64> {
    check_gain_range(r)?;
    if n_relays == 0 || (cut.0 as u64) >= 1u64 << n_relays {
        return Err(domain(format!("cut {:#b} invalid for {} relays", cut.0, n_relays)));
    }
    match grid {
        CutGrid::Full => exponent_grid_oracle(
            |flat| {
                let alpha = ExponentVector::from_flat(n_relays, flat).expect("grid point in [0, 1]");
                two_hop_cut_outage_predicate(&alpha, r, cut).expect("cut fits network")
            },
            2 * n_relays + 1,
            step,
        ),
        CutGrid::Crossing => exponent_grid_oracle(
            |crossing| {
                let mut sr = vec![1.0; n_relays];
                let mut rd = vec![1.0; n_relays];
                for j in 0..n_relays {
                    if cut.contains(j) {
                        rd[j] = crossing[j + 1];
                    } else {
                        sr[j] = crossing[j + 1];
                    }
                }
                let alpha = ExponentVector::new(crossing[0], sr, rd).expect("grid point in [0, 1]");
                two_hop_cut_outage_predicate(&alpha, r, cut).expect("cut fits network")
            },
            n_relays + 1,
            step,
        ),
    }
}

/// Per-cut oracle exponents and their minimum, the exponent of the min-cut bound.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoHopOracle {
    pub per_cut: Vec<(Cut, f64)>,
    pub min: f64,
}

pub fn two_hop_exponent_oracle(n_relays: usize, r: f64, step: f64, grid: CutGrid) -> Result<TwoHopOracle> {
    let per_cut = enumerate_cuts(n_relays)?
        .into_iter()
        .map(|cut| two_hop_cut_exponent_oracle(n_relays, cut, r, step, grid).map(|d| (cut, d)))
        .collect::<Result<Vec<_>>>()?;
    let min = per_cut.iter().map(|&(_, d)| d).fold(f64::INFINITY, f64::min);
    Ok(TwoHopOracle { per_cut, min })
}

/// Best single-relay listen fraction found on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ScheduleOptimum {
    pub t_star: f64,
    pub d_star: f64,
    /// Oracle exponent at every grid `t`, ascending in `t`.
    pub profile: Vec<(f64, f64)>,
}

/// Ties within this margin count as equal when picking `t*`.
const TIE_TOL: f64 = 1e-12;

/// Maximizes the grid-oracle exponent over `t ∈ {0, t_step, ..., 1}`.
pub fn optimize_schedule_single(r: f64, t_step: f64) -> Result<ScheduleOptimum> {
    optimize_schedule_single_with(r, t_step, DEFAULT_ORACLE_STEP)
}

/// As [`optimize_schedule_single`] with an explicit oracle step.
///
/// Ties go to the `t` closest to 0.5, then to the smaller `t`.
pub fn optimize_schedule_single_with(r: f64, t_step: f64, oracle_step: f64) -> Result<ScheduleOptimum> {
    check_gain_range(r)?;
    if !(t_step > 0.0 && t_step <= 0.25) {
        return Err(domain(format!("schedule step {t_step} outside (0, 0.25]")));
    }
    let profile = unit_axis(t_step)
        .into_iter()
        .map(|t| single_relay_exponent_oracle(r, t, oracle_step).map(|d| (t, d)))
        .collect::<Result<Vec<_>>>()?;
    let best = profile.iter().map(|&(_, d)| d).fold(f64::NEG_INFINITY, f64::max);
    let &(t_star, d_star) = profile
        .iter()
        .filter(|&&(_, d)| d >= best - TIE_TOL)
        .min_by(|a, b| {
            // distance rounded so that 0.45 and 0.55 tie
            let key = |t: f64| (((t - 0.5).abs() * 1e9).round(), t);
            key(a.0).partial_cmp(&key(b.0)).expect("finite schedule grid")
        })
        .expect("schedule grid is non-empty");
    Ok(ScheduleOptimum { t_star, d_star, profile })
}
