//! Command-line front end: closure audits, single channel applications, and
//! negativity sweeps over Werner-state and channel-parameter grids.

pub mod apply;
pub mod config;
pub mod sweep;
pub mod validate;
