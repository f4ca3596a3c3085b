//! Closure audit: random parameter draws per family, reported per family.

use std::fmt::Write as _;

use anyhow::{bail, Result};
use ditflip::{enumerate_d_cycles, FlipProbabilities, KrausChannel64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::Family;

/// Exit threshold for the audit.
pub const PASS_THRESHOLD: f64 = 1e-10;

const AUDIT_DIMS: [usize; 5] = [2, 3, 4, 5, 6];

#[derive(Debug, Clone)]
pub struct ValidateOptions {
    pub families: Vec<Family>,
    pub samples: usize,
    pub seed: u64,
    /// Restrict the audit to one dimension instead of 2..=6.
    pub only_dim: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FamilyAudit {
    pub family: Family,
    pub max_deviation: f64,
    pub samples: usize,
}

impl FamilyAudit {
    pub fn passed(&self) -> bool {
        self.max_deviation < PASS_THRESHOLD
    }
}

/// One random channel of `family` at dimension `d`, parameters drawn inside
/// the family's feasible region.
pub fn random_channel(rng: &mut ChaCha8Rng, family: Family, d: usize) -> KrausChannel64 {
    let p: f64 = rng.random_range(0.0..=1.0);
    let pair = |rng: &mut ChaCha8Rng| {
        let i = rng.random_range(0..d);
        let j = (i + rng.random_range(1..d)) % d;
        (i, j)
    };
    match family {
        Family::Idf => {
            let (i, j) = pair(rng);
            KrausChannel64::individual_flip(d, i, j, p).expect("feasible idf draw")
        }
        Family::SuIdf => {
            let (i, j) = pair(rng);
            KrausChannel64::su_individual_flip(d, i, j, p).expect("feasible su_idf draw")
        }
        Family::Full => {
            let budget: f64 = rng.random_range(0.0..=1.0);
            let mut raw = Vec::new();
            for _ in 0..d * (d - 1) / 2 {
                raw.push(rng.random_range(1e-6..1.0));
            }
            let total: f64 = raw.iter().sum();
            let mut probs = FlipProbabilities::new(d).expect("d >= 2");
            let mut it = raw.into_iter();
            for i in 0..d {
                for j in (i + 1)..d {
                    probs
                        .set(i, j, it.next().unwrap() / total * budget)
                        .expect("scaled entry in range");
                }
            }
            KrausChannel64::full_flip(&probs).expect("budget respected")
        }
        Family::SuFull => {
            let mut probs = FlipProbabilities::new(d).expect("d >= 2");
            for i in 0..d {
                for j in (i + 1)..d {
                    probs
                        .set(i, j, rng.random_range(0.0..1.0 / (d - 1) as f64))
                        .expect("entry in range");
                }
            }
            KrausChannel64::su_full_flip(&probs).expect("row budgets respected")
        }
        Family::Shift => {
            let f: f64 = rng.random_range(0.0..=1.0);
            KrausChannel64::shift(d, p, f, 1.0 - f).expect("f + b = 1")
        }
        Family::DampedShift => {
            let t: f64 = rng.random_range(0.0..=1.0);
            let x: f64 = rng.random_range(0.0..=1.0);
            KrausChannel64::damped_shift(d, p, x * t, (1.0 - x) * t, t).expect("f + b = t")
        }
        Family::Shuffled => {
            let count = enumerate_d_cycles(d).expect("d within cycle cap").len();
            let raw: Vec<f64> = (0..count)
                .map(|_| -rng.random_range(1e-9..1.0f64).ln())
                .collect();
            let total: f64 = raw.iter().sum();
            let weights: Vec<f64> = raw.into_iter().map(|x| x / total).collect();
            KrausChannel64::shuffled_shift(d, p, &weights).expect("weights normalized")
        }
    }
}

pub fn audit_family(
    family: Family,
    samples: usize,
    seed: u64,
    only_dim: Option<usize>,
) -> FamilyAudit {
    // Per-family seed offset keeps draws stable when auditing a subset.
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((family as u64 + 1) << 32));
    let dims: Vec<usize> = match only_dim {
        Some(d) => vec![d],
        None => AUDIT_DIMS.to_vec(),
    };
    let mut max_deviation: f64 = 0.0;
    for &d in &dims {
        for _ in 0..samples {
            let ch = random_channel(&mut rng, family, d);
            max_deviation = max_deviation.max(ch.closure_deviation());
        }
    }
    FamilyAudit {
        family,
        max_deviation,
        samples: samples * dims.len(),
    }
}

pub fn run(opts: &ValidateOptions) -> Result<(String, bool)> {
    if opts.samples == 0 {
        bail!("samples must be at least 1");
    }
    if let Some(d) = opts.only_dim {
        if !(2..=6).contains(&d) {
            bail!("audit dimension {d} outside 2..=6");
        }
    }
    let mut report = String::new();
    writeln!(report, "# ditflip {} validate", env!("CARGO_PKG_VERSION"))?;
    writeln!(
        report,
        "# samples={} seed={} dims={} threshold={PASS_THRESHOLD:e}",
        opts.samples,
        opts.seed,
        match opts.only_dim {
            Some(d) => d.to_string(),
            None => "2..6".to_string(),
        }
    )?;
    let mut all_pass = true;
    for &family in &opts.families {
        let audit = audit_family(family, opts.samples, opts.seed, opts.only_dim);
        all_pass &= audit.passed();
        writeln!(
            report,
            "family={} max_closure_deviation={:.3e} result={}",
            audit.family,
            audit.max_deviation,
            if audit.passed() { "pass" } else { "fail" }
        )?;
    }
    writeln!(report, "overall={}", if all_pass { "pass" } else { "fail" })?;
    Ok((report, all_pass))
}
