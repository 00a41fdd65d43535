//! Cut-set bounds, Monte Carlo outage estimation and diversity-multiplexing
//! tradeoff exponents for half-duplex relay channels.
//!
//! * [`channel`]: Rayleigh realizations and exponential orders.
//! * [`cutset`]: finite-SNR cut-set bounds and state/cut enumeration.
//! * [`dmt`]: analytic exponents, outage sets and the grid oracle.
//! * [`outage`]: seeded outage campaigns, Wilson intervals, slope fits.
//! * [`verify`]: falsification suites for the supporting inequalities.
//! * [`cli`]: the `hdrelay` command-line front end.

pub mod channel;
pub mod cli;
pub mod cutset;
pub mod dmt;
pub mod error;
pub mod outage;
pub mod verify;

pub use error::{Error, Result};
