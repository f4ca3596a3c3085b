//! Apply one channel to one Werner state and print the result.

use std::fmt::Write as _;

use anyhow::{Context, Result};
use ditflip::{negativity, DensityMatrix64, NegativityResult64};

use crate::config::RunSpec;

pub struct ApplyOutcome {
    pub rho_out: DensityMatrix64,
    pub negativity: NegativityResult64,
}

pub fn run(spec: &RunSpec) -> Result<ApplyOutcome> {
    let a = spec
        .a
        .context("apply needs --a (Werner mixing parameter)")?;
    let p = spec.p.context("apply needs --p (flip probability)")?;
    let rho = spec.werner_state(a)?;
    let rho_out = spec.lifted_channel(p)?.apply(&rho)?;
    let negativity = negativity(&rho_out)?;
    Ok(ApplyOutcome {
        rho_out,
        negativity,
    })
}

/// Fixed-precision report: the output matrix at six decimals plus both
/// negativity values.
pub fn format_outcome(spec: &RunSpec, outcome: &ApplyOutcome) -> String {
    let mut s = String::new();
    writeln!(s, "# ditflip {} apply", env!("CARGO_PKG_VERSION")).unwrap();
    writeln!(s, "# config: {}", spec.echo()).unwrap();
    writeln!(s, "rho_out:").unwrap();
    let m = outcome.rho_out.matrix();
    for r in 0..m.rows() {
        let mut line = String::from(" ");
        for c in 0..m.cols() {
            let e = m[(r, c)];
            write!(line, " {:+.6}{:+.6}i", e.re, e.im).unwrap();
        }
        writeln!(s, "{line}").unwrap();
    }
    writeln!(s, "negativity_raw={:.6}", outcome.negativity.raw).unwrap();
    writeln!(
        s,
        "negativity_normalized={:.6}",
        outcome.negativity.normalized
    )
    .unwrap();
    s
}
