//! Cut-set bounds for half-duplex relay networks.
//!
//! Two bounds are evaluated at finite SNR:
//!
//! * the explicit Gaussian cut-set *upper* bound of the single-relay channel,
//!   where the relay listens for a fraction `t` of each block;
//! * a Z-channel *lower* bound on each cut of the two-hop network with `N`
//!   non-interfering relays, evaluated over the `2^N` listen/transmit states.
//!
//! All capacities are in bits per symbol (base-2 logarithms).
//!
//! Bitmask conventions: in a [`NetworkState`] bit `j` set means relay `j`
//! listens; in a [`Cut`] bit `j` set means relay `j` sits on the source side.

use serde::{Deserialize, Serialize};

use crate::channel::ChannelRealization;
use crate::dmt::ExponentVector;
use crate::error::{domain, Error, Result};

/// Largest relay count accepted by state and cut enumeration.
pub const MAX_RELAYS: usize = 12;

/// Tolerance on the schedule simplex constraint.
pub const SCHEDULE_SUM_TOL: f64 = 1e-9;

/// Listen/transmit configuration of all relays; bit `j` set means relay `j` listens.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct NetworkState(pub u32);

impl NetworkState {
    pub fn listens(self, relay: usize) -> bool {
        self.0 >> relay & 1 == 1
    }
}

/// Source-side relay set `Ω`; bit `j` set means relay `j ∈ Ω`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cut(pub u32);

impl Cut {
    pub fn contains(self, relay: usize) -> bool {
        self.0 >> relay & 1 == 1
    }

    pub fn from_relays(relays: &[usize]) -> Self {
        Cut(relays.iter().fold(0, |m, &j| m | 1 << j))
    }
}

/// Time-sharing weights over the `2^N` network states, indexed by listening mask.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoHopSchedule {
    n_relays: usize,
    weights: Vec<f64>,
}

impl TwoHopSchedule {
    pub fn new(n_relays: usize, weights: Vec<f64>) -> Result<Self> {
        check_relay_count(n_relays)?;
        if weights.len() != 1 << n_relays {
            return Err(domain(format!(
                "{} relays need {} state weights, got {}",
                n_relays,
                1usize << n_relays,
                weights.len()
            )));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(domain("state weights must be finite and >= 0"));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > SCHEDULE_SUM_TOL {
            return Err(domain(format!("state weights sum to {sum}, expected 1")));
        }
        Ok(Self { n_relays, weights })
    }

    /// Every state gets `2^-N` of the time.
    pub fn uniform(n_relays: usize) -> Result<Self> {
        check_relay_count(n_relays)?;
        let m = 1usize << n_relays;
        Ok(Self { n_relays, weights: vec![1.0 / m as f64; m] })
    }

    pub fn n_relays(&self) -> usize {
        self.n_relays
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

/// Listen/transmit schedule for either network topology.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Schedule {
    /// Relay listens for fraction `t` of each block.
    SingleRelay { t: f64 },
    TwoHop(TwoHopSchedule),
}

impl Schedule {
    pub fn single_relay(t: f64) -> Result<Self> {
        check_fraction(t)?;
        Ok(Schedule::SingleRelay { t })
    }

    pub fn uniform_two_hop(n_relays: usize) -> Result<Self> {
        TwoHopSchedule::uniform(n_relays).map(Schedule::TwoHop)
    }
}

fn check_relay_count(n: usize) -> Result<()> {
    if n == 0 {
        return Err(domain("need at least one relay"));
    }
    if n > MAX_RELAYS {
        return Err(Error::TooManyRelays(n));
    }
    Ok(())
}

fn check_fraction(t: f64) -> Result<()> {
    if (0.0..=1.0).contains(&t) {
        Ok(())
    } else {
        Err(domain(format!("listen fraction t = {t} outside [0, 1]")))
    }
}

fn check_snr(snr: f64) -> Result<()> {
    if snr.is_finite() && snr >= 0.0 {
        Ok(())
    } else {
        Err(domain(format!("snr = {snr} must be finite and >= 0")))
    }
}

fn check_dimension(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}

/// `log2(1 + snr * g)`
pub fn awgn_bits(g: f64, snr: f64) -> f64 {
    (snr * g).ln_1p() / std::f64::consts::LN_2
}

/// Single-relay Gaussian cut-set upper bound in bits/symbol.
///
/// Minimum of the broadcast cut `{S} | {R, D}`, where the relay receives for
/// fraction `t`, and the multiple-access cut `{S, R} | {D}`, where the relay
/// helps for fraction `1 - t` with coherent amplitude combining
/// `(|h_rd| + |h_sd|)^2`.
pub fn single_relay_cutset_bits(real: &ChannelRealization, snr: f64, t: f64) -> Result<f64> {
    check_dimension(1, real.n_relays())?;
    check_snr(snr)?;
    check_fraction(t)?;
    let (g_sd, g_sr, g_rd) = (real.g_sd(), real.g_sr()[0], real.g_rd()[0]);
    let direct = awgn_bits(g_sd, snr);
    let broadcast = t * awgn_bits(g_sr + g_sd, snr) + (1.0 - t) * direct;
    let coherent = (g_rd.sqrt() + g_sd.sqrt()).powi(2);
    let multiple_access = (1.0 - t) * awgn_bits(coherent, snr) + t * direct;
    Ok(broadcast.min(multiple_access))
}

/// High-SNR form of [`single_relay_cutset_bits`] in exponential orders:
/// `min{a_sd + t (a_sr - a_sd)^+, a_sd + (1 - t)(a_rd - a_sd)^+}`.
///
/// Orders above 1 are accepted so finite-SNR orders can be compared directly.
pub fn highsnr_cutset_order(orders: &ExponentVector, t: f64) -> Result<f64> {
    check_dimension(1, orders.n_relays())?;
    check_fraction(t)?;
    Ok(single_relay_order(orders.sd(), orders.sr()[0], orders.rd()[0], t))
}

#[inline]
pub(crate) fn single_relay_order(sd: f64, sr: f64, rd: f64, t: f64) -> f64 {
    let listen = t * (sr - sd).max(0.0);
    let transmit = (1.0 - t) * (rd - sd).max(0.0);
    sd + listen.min(transmit)
}

/// `log2 det(I + snr H H†)` for the upper-triangular Z-channel
/// `H = [[h_rd*, h_sd], [0, h_sr*]]`, in closed form.
pub fn z_channel_flow_bits(g_sd: f64, g_sr_best: f64, g_rd_best: f64, snr: f64) -> f64 {
    let linear = snr * (g_rd_best + g_sd + g_sr_best) + snr * snr * g_rd_best * g_sr_best;
    linear.ln_1p() / std::f64::consts::LN_2
}

/// All `2^N` listening masks, ascending.
pub fn enumerate_states(n_relays: usize) -> Result<Vec<NetworkState>> {
    check_relay_count(n_relays)?;
    Ok((0..1u32 << n_relays).map(NetworkState).collect())
}

/// All `2^N` source-side relay sets, ascending by mask.
pub fn enumerate_cuts(n_relays: usize) -> Result<Vec<Cut>> {
    check_relay_count(n_relays)?;
    Ok((0..1u32 << n_relays).map(Cut).collect())
}

/// Per-link capacities `n_xy = log2(1 + snr g_xy)` of a realization.
#[derive(Debug, Clone)]
pub struct LinkCapacities {
    pub sd: f64,
    pub sr: Vec<f64>,
    pub rd: Vec<f64>,
}

impl LinkCapacities {
    pub fn new(real: &ChannelRealization, snr: f64) -> Self {
        Self {
            sd: awgn_bits(real.g_sd(), snr),
            sr: real.g_sr().iter().map(|&g| awgn_bits(g, snr)).collect(),
            rd: real.g_rd().iter().map(|&g| awgn_bits(g, snr)).collect(),
        }
    }

    pub fn n_relays(&self) -> usize {
        self.sr.len()
    }

    /// Z-channel lower bound on the flow across `cut` while the network is in `state`.
    ///
    /// `V` = source-side relays that transmit, `W` = destination-side relays
    /// that listen. A maximum over an empty set is 0.
    pub fn state_flow(&self, cut: Cut, state: NetworkState) -> f64 {
        let mut best_rd = 0.0f64;
        let mut best_sr = 0.0f64;
        for j in 0..self.n_relays() {
            match (cut.contains(j), state.listens(j)) {
                (true, false) => best_rd = best_rd.max(self.rd[j]),
                (false, true) => best_sr = best_sr.max(self.sr[j]),
                _ => {}
            }
        }
        self.sd.max(best_rd + best_sr)
    }

    pub fn cut_flow(&self, sched: &TwoHopSchedule, cut: Cut) -> f64 {
        sched
            .weights()
            .iter()
            .enumerate()
            .filter(|(_, &w)| w > 0.0)
            .map(|(m, &w)| w * self.state_flow(cut, NetworkState(m as u32)))
            .sum()
    }

    pub fn min_cut(&self, sched: &TwoHopSchedule) -> f64 {
        (0..1u32 << self.n_relays())
            .map(|m| self.cut_flow(sched, Cut(m)))
            .fold(f64::INFINITY, f64::min)
    }

    /// Average of the `N + 1` link capacities crossing `cut`.
    pub fn cut_average(&self, cut: Cut) -> f64 {
        let crossing: f64 = (0..self.n_relays())
            .map(|j| if cut.contains(j) { self.rd[j] } else { self.sr[j] })
            .sum();
        (self.sd + crossing) / (self.n_relays() + 1) as f64
    }
}

fn check_cut(cut: Cut, n_relays: usize) -> Result<()> {
    if (cut.0 as u64) < 1u64 << n_relays {
        Ok(())
    } else {
        Err(domain(format!("cut mask {:#b} has bits beyond {} relays", cut.0, n_relays)))
    }
}

/// Schedule-weighted Z-channel lower bound on the flow across one cut, in bits.
pub fn cut_flow_lower_bound(
    real: &ChannelRealization,
    snr: f64,
    sched: &TwoHopSchedule,
    cut: Cut,
) -> Result<f64> {
    check_dimension(sched.n_relays(), real.n_relays())?;
    check_cut(cut, real.n_relays())?;
    check_snr(snr)?;
    Ok(LinkCapacities::new(real, snr).cut_flow(sched, cut))
}

/// Minimum of [`cut_flow_lower_bound`] over all `2^N` cuts.
pub fn network_min_cut_lower_bound(
    real: &ChannelRealization,
    snr: f64,
    sched: &TwoHopSchedule,
) -> Result<f64> {
    check_dimension(sched.n_relays(), real.n_relays())?;
    check_snr(snr)?;
    Ok(LinkCapacities::new(real, snr).min_cut(sched))
}

/// `(n_sd + Σ_{j∈Ω} n_rjd + Σ_{j∉Ω} n_srj) / (N + 1)`
pub fn cut_average_lower_bound(real: &ChannelRealization, snr: f64, cut: Cut) -> Result<f64> {
    check_relay_count(real.n_relays())?;
    check_cut(cut, real.n_relays())?;
    check_snr(snr)?;
    Ok(LinkCapacities::new(real, snr).cut_average(cut))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{sample_realization, RandomStream};
    use num_complex::Complex64;
    use proptest::prelude::*;
    use rand::Rng;

    fn log2(x: f64) -> f64 {
        x.log2()
    }

    #[test]
    fn single_relay_dead_links() {
        let real = ChannelRealization::single(0.0, 0.0, 0.0).unwrap();
        for &(snr, t) in &[(1.0, 0.5), (1e6, 0.0), (10.0, 1.0)] {
            assert_eq!(single_relay_cutset_bits(&real, snr, t).unwrap(), 0.0);
        }
    }

    #[test]
    fn single_relay_never_listening_is_direct_link() {
        let real = ChannelRealization::single(0.7, 3.0, 0.2).unwrap();
        let v = single_relay_cutset_bits(&real, 50.0, 0.0).unwrap();
        assert_eq!(v, awgn_bits(0.7, 50.0));
    }

    #[test]
    fn single_relay_worked_example() {
        let real = ChannelRealization::single(1.0, 1.0, 1.0).unwrap();
        let v = single_relay_cutset_bits(&real, 1.0, 0.5).unwrap();
        let broadcast = 0.5 * log2(3.0) + 0.5;
        let mac = 0.5 * log2(5.0) + 0.5;
        assert!((v - broadcast.min(mac)).abs() < 1e-12);
        assert!((v - 1.2925).abs() < 1e-4);
    }

    #[test]
    fn single_relay_errors() {
        let real = ChannelRealization::single(1.0, 1.0, 1.0).unwrap();
        assert!(single_relay_cutset_bits(&real, 1.0, 1.1).is_err());
        assert!(single_relay_cutset_bits(&real, 1.0, -0.1).is_err());
        assert!(single_relay_cutset_bits(&real, -1.0, 0.5).is_err());
        let two = ChannelRealization::new(1.0, vec![1.0; 2], vec![1.0; 2]).unwrap();
        assert!(matches!(
            single_relay_cutset_bits(&two, 1.0, 0.5),
            Err(Error::DimensionMismatch { expected: 1, got: 2 })
        ));
    }

    #[test]
    fn highsnr_order_examples() {
        let half = |sd, sr, rd| {
            highsnr_cutset_order(&ExponentVector::single(sd, sr, rd).unwrap(), 0.5).unwrap()
        };
        assert_eq!(half(1.0, 0.3, 0.9), 1.0);
        assert_eq!(half(1.0, 1.0, 1.0), 1.0);
        assert_eq!(half(0.5, 1.0, 1.0), 0.75);
        let v = highsnr_cutset_order(&ExponentVector::single(0.5, 1.0, 0.7).unwrap(), 0.25).unwrap();
        assert!((v - 0.625).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn highsnr_order_matches_half_duplex_form(sd in 0.0..=1.0f64, sr in 0.0..=1.0f64, rd in 0.0..=1.0f64) {
            let v = highsnr_cutset_order(&ExponentVector::single(sd, sr, rd).unwrap(), 0.5).unwrap();
            let expected = sd + 0.5 * (sr - sd).max(0.0).min((rd - sd).max(0.0));
            prop_assert_eq!(v, expected);
        }

        #[test]
        fn z_channel_dominates_both_branches(
            g_sd in 0.0..100.0f64, g_sr in 0.0..100.0f64, g_rd in 0.0..100.0f64, snr in 0.0..1e6f64
        ) {
            let v = z_channel_flow_bits(g_sd, g_sr, g_rd, snr);
            let direct = awgn_bits(g_sd, snr);
            let two_hop = awgn_bits(g_sr, snr) + awgn_bits(g_rd, snr);
            prop_assert!(v >= direct - 1e-12 * direct.max(1.0));
            prop_assert!(v >= two_hop - 1e-12 * two_hop.max(1.0));
        }

        #[test]
        fn single_relay_bounded_by_sum_of_full_cuts(
            g_sd in 0.0..20.0f64, g_sr in 0.0..20.0f64, g_rd in 0.0..20.0f64,
            snr in 0.0..1e5f64, t in 0.0..=1.0f64
        ) {
            let real = ChannelRealization::single(g_sd, g_sr, g_rd).unwrap();
            let v = single_relay_cutset_bits(&real, snr, t).unwrap();
            let envelope = awgn_bits((g_rd.sqrt() + g_sd.sqrt()).powi(2), snr) + awgn_bits(g_sr + g_sd, snr);
            prop_assert!(v >= 0.0);
            prop_assert!(v <= envelope + 1e-12);
        }
    }

    /// Oracle: determinant of `I + snr H H†` with explicit complex entries.
    fn z_channel_det_oracle(h_sd: Complex64, h_sr: Complex64, h_rd: Complex64, snr: f64) -> f64 {
        let h = [[h_rd, h_sd], [Complex64::new(0.0, 0.0), h_sr]];
        let mut a = [[Complex64::new(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                let hh: Complex64 = (0..2).map(|k| h[i][k] * h[j][k].conj()).sum();
                a[i][j] = hh * snr + if i == j { 1.0 } else { 0.0 };
            }
        }
        let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
        det.re.log2()
    }

    #[test]
    fn z_channel_examples() {
        assert!((z_channel_flow_bits(1.0, 1.0, 1.0, 1.0) - 5f64.log2()).abs() < 1e-12);
        let one = Complex64::new(1.0, 0.0);
        assert!((z_channel_det_oracle(one, one, one, 1.0) - 5f64.log2()).abs() < 1e-12);
        assert_eq!(z_channel_flow_bits(0.0, 0.0, 0.0, 7.0), 0.0);
        assert!((z_channel_flow_bits(1.0, 0.0, 0.0, 3.0) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn z_channel_matches_determinant_with_random_phases() {
        let mut rng = RandomStream::new(5, 0).rng();
        for _ in 0..1000 {
            let mut h = || Complex64::from_polar(rng.gen_range(0.0..3.0), rng.gen_range(0.0..std::f64::consts::TAU));
            let (h_sd, h_sr, h_rd) = (h(), h(), h());
            let snr = 10f64.powf(rng.gen_range(-1.0..4.0));
            let oracle = z_channel_det_oracle(h_sd, h_sr, h_rd, snr);
            let v = z_channel_flow_bits(h_sd.norm_sqr(), h_sr.norm_sqr(), h_rd.norm_sqr(), snr);
            assert!((v - oracle).abs() < 1e-9 * oracle.max(1.0), "{v} vs {oracle}");
        }
    }

    #[test]
    fn enumeration() {
        assert_eq!(enumerate_states(1).unwrap(), vec![NetworkState(0), NetworkState(1)]);
        assert_eq!(
            enumerate_states(2).unwrap(),
            (0..4).map(NetworkState).collect::<Vec<_>>()
        );
        assert_eq!(enumerate_states(3).unwrap().len(), 8);
        assert_eq!(enumerate_cuts(1).unwrap(), vec![Cut(0), Cut(1)]);
        assert_eq!(enumerate_cuts(2).unwrap().len(), 4);
        assert_eq!(enumerate_cuts(12).unwrap().len(), 4096);
        assert_eq!(enumerate_cuts(13), Err(Error::TooManyRelays(13)));
        assert!(enumerate_states(0).is_err());
    }

    #[test]
    fn schedule_validation() {
        assert!(TwoHopSchedule::new(1, vec![0.3, 0.7]).is_ok());
        assert!(TwoHopSchedule::new(1, vec![0.3, 0.6]).is_err());
        assert!(TwoHopSchedule::new(1, vec![1.5, -0.5]).is_err());
        assert!(TwoHopSchedule::new(2, vec![0.5, 0.5]).is_err());
        assert!(TwoHopSchedule::new(1, vec![0.5, 0.5 + 1e-10]).is_ok());
        assert!(Schedule::single_relay(1.2).is_err());
        let u = TwoHopSchedule::uniform(3).unwrap();
        assert_eq!(u.weights(), &[0.125; 8]);
    }

    #[test]
    fn one_relay_cut_with_relay_on_destination_side() {
        let real = ChannelRealization::single(0.4, 2.0, 0.1).unwrap();
        let snr = 30.0;
        let sched = TwoHopSchedule::uniform(1).unwrap();
        let v = cut_flow_lower_bound(&real, snr, &sched, Cut(0)).unwrap();
        let (n_sd, n_sr) = (awgn_bits(0.4, snr), awgn_bits(2.0, snr));
        assert!((v - (0.5 * n_sd.max(n_sr) + 0.5 * n_sd)).abs() < 1e-12);
    }

    #[test]
    fn two_relays_all_source_side_no_direct_link() {
        let real = ChannelRealization::new(0.0, vec![0.5, 1.5], vec![0.8, 2.5]).unwrap();
        let snr = 12.0;
        let sched = TwoHopSchedule::uniform(2).unwrap();
        let v = cut_flow_lower_bound(&real, snr, &sched, Cut(0b11)).unwrap();
        let (r1, r2) = (awgn_bits(0.8, snr), awgn_bits(2.5, snr));
        // listening masks 11, 10, 01, 00 leave transmitting sets {}, {R1}, {R2}, {R1,R2}
        let expected = 0.25 * (0.0 + r1 + r2 + r1.max(r2));
        assert!((v - expected).abs() < 1e-12);
    }

    #[test]
    fn dead_network_has_zero_flow() {
        let real = ChannelRealization::new(0.0, vec![0.0; 3], vec![0.0; 3]).unwrap();
        let sched = TwoHopSchedule::uniform(3).unwrap();
        for cut in enumerate_cuts(3).unwrap() {
            assert_eq!(cut_flow_lower_bound(&real, 100.0, &sched, cut).unwrap(), 0.0);
            assert_eq!(cut_average_lower_bound(&real, 100.0, cut).unwrap(), 0.0);
        }
        assert_eq!(network_min_cut_lower_bound(&real, 100.0, &sched).unwrap(), 0.0);
    }

    #[test]
    fn min_cut_single_relay_is_min_of_two_cuts() {
        let real = ChannelRealization::single(0.3, 1.7, 0.9).unwrap();
        let sched = TwoHopSchedule::uniform(1).unwrap();
        let snr = 100.0;
        let a = cut_flow_lower_bound(&real, snr, &sched, Cut(0)).unwrap();
        let b = cut_flow_lower_bound(&real, snr, &sched, Cut(1)).unwrap();
        assert_eq!(network_min_cut_lower_bound(&real, snr, &sched).unwrap(), a.min(b));
    }

    #[test]
    fn min_cut_below_every_cut() {
        for i in 0..200 {
            let n = 1 + (i % 5) as usize;
            let real = sample_realization(n, RandomStream::new(11, i));
            let sched = TwoHopSchedule::uniform(n).unwrap();
            let min = network_min_cut_lower_bound(&real, 50.0, &sched).unwrap();
            let cuts = enumerate_cuts(n).unwrap();
            let values: Vec<f64> = cuts
                .iter()
                .map(|&c| cut_flow_lower_bound(&real, 50.0, &sched, c).unwrap())
                .collect();
            assert!(values.iter().all(|&v| min <= v));
            assert!(values.contains(&min));
        }
    }

    #[test]
    fn cut_average_examples() {
        let snr = 20.0;
        let real = ChannelRealization::single(0.6, 1.1, 0.2).unwrap();
        let v = cut_average_lower_bound(&real, snr, Cut(0)).unwrap();
        assert!((v - (awgn_bits(0.6, snr) + awgn_bits(1.1, snr)) / 2.0).abs() < 1e-12);

        let real = ChannelRealization::new(0.6, vec![1.1, 0.4], vec![0.2, 3.0]).unwrap();
        let v = cut_average_lower_bound(&real, snr, Cut::from_relays(&[0])).unwrap();
        let expected = (awgn_bits(0.6, snr) + awgn_bits(0.2, snr) + awgn_bits(0.4, snr)) / 3.0;
        assert!((v - expected).abs() < 1e-12);
    }

    #[test]
    fn cut_flow_dimension_checks() {
        let real = ChannelRealization::single(1.0, 1.0, 1.0).unwrap();
        let sched = TwoHopSchedule::uniform(2).unwrap();
        assert!(matches!(
            cut_flow_lower_bound(&real, 1.0, &sched, Cut(0)),
            Err(Error::DimensionMismatch { .. })
        ));
        let sched = TwoHopSchedule::uniform(1).unwrap();
        assert!(cut_flow_lower_bound(&real, 1.0, &sched, Cut(0b10)).is_err());
    }

    #[test]
    fn highsnr_tracks_finite_snr_bound() {
        let snr = 1e8;
        let mut rng = RandomStream::new(77, 0).rng();
        for _ in 0..1000 {
            let (g_sd, g_sr, g_rd) = (
                rng.gen_range(0.1..10.0),
                rng.gen_range(0.1..10.0),
                rng.gen_range(0.1..10.0),
            );
            let real = ChannelRealization::single(g_sd, g_sr, g_rd).unwrap();
            let bits = single_relay_cutset_bits(&real, snr, 0.5).unwrap();
            let orders = ExponentVector::finite_snr(&real, snr).unwrap();
            let order = highsnr_cutset_order(&orders, 0.5).unwrap();
            assert!((bits / snr.log2() - order).abs() < 0.05);
        }
    }

    #[test]
    fn general_schedule_weights() {
        let real = ChannelRealization::single(0.2, 4.0, 4.0).unwrap();
        let snr = 100.0;
        // relay always listening: only the listening state counts
        let listen = TwoHopSchedule::new(1, vec![0.0, 1.0]).unwrap();
        let n_sd = awgn_bits(0.2, snr);
        let n_sr = awgn_bits(4.0, snr);
        let v = cut_flow_lower_bound(&real, snr, &listen, Cut(0)).unwrap();
        assert!((v - n_sd.max(n_sr)).abs() < 1e-12);
        let v = cut_flow_lower_bound(&real, snr, &listen, Cut(1)).unwrap();
        assert!((v - n_sd).abs() < 1e-12);
    }
}
