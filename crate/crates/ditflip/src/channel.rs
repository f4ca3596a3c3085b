//! Kraus channels: closure validation, application, subsystem lifting, and
//! one constructor per flip-channel family.
//!
//! Families:
//! - individual flip: swap two levels with a unitary, identity elsewhere;
//! - su(d) individual flip: same swap built from the `Gamma_ij` generator,
//!   paired with a non-unitary companion operator;
//! - full flip / su(d) full flip: every pairwise swap in one channel;
//! - shift: weighted successor/predecessor cycle;
//! - damped shift: shift with only a fraction `t` of the state transformed;
//! - shuffled shift: one shift operator per d-cycle of the basis.

use num_complex::Complex;

use crate::linalg::ComplexMatrix;
use crate::operators::{
    backward_operator, enumerate_d_cycles, forward_operator, gamma_operator,
    pairwise_flip_operator, permutation_operator, OperatorError,
};
use crate::scalar::{scaled_tol, to_f64, Scalar};
use crate::state::{DensityMatrix, StateError, Subsystem, SystemDims};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ChannelError {
    #[error("channel needs at least one Kraus operator")]
    EmptyOperatorList,
    #[error("operator {index} is {rows}x{cols}, expected {dim}x{dim}")]
    OperatorShapeMismatch {
        index: usize,
        rows: usize,
        cols: usize,
        dim: usize,
    },
    #[error("channel dimension {channel} does not match state dimension {state}")]
    DimensionMismatch { channel: usize, state: usize },
    #[error("Kraus closure violated: max |sum K^†K - 1| entry = {deviation:e}")]
    ClosureViolation { deviation: f64 },
    #[error("probability {name} = {value} outside [0, 1]")]
    ProbabilityOutOfRange { name: &'static str, value: f64 },
    #[error("flip probabilities sum to {total}, exceeding 1")]
    ProbabilityBudgetExceeded { total: f64 },
    #[error("flip probabilities touching level {index} sum to {total}, exceeding 1")]
    RowBudgetExceeded { index: usize, total: f64 },
    #[error("closure requires f + b = {target}, got f = {f}, b = {b}")]
    ClosureParameterViolation { f: f64, b: f64, target: f64 },
    #[error("cycle weights sum to {total}, expected 1")]
    WeightNormalizationViolation { total: f64 },
    #[error("expected {expected} cycle weights, got {actual}")]
    WeightCountMismatch { expected: usize, actual: usize },
    #[error("cycle weight {index} = {value} is negative")]
    NegativeWeight { index: usize, value: f64 },
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    State(#[from] StateError),
}

/// Symmetric table of pairwise flip probabilities `p_ij` for `0 <= i < j < d`,
/// stored upper-triangular.
#[derive(Debug, Clone, PartialEq)]
pub struct FlipProbabilities<T: Scalar> {
    d: usize,
    upper: Vec<T>,
}

impl<T: Scalar> FlipProbabilities<T> {
    pub fn new(d: usize) -> Result<Self, ChannelError> {
        if d < 2 {
            return Err(OperatorError::DimensionTooSmall { d }.into());
        }
        Ok(Self {
            d,
            upper: vec![T::zero(); d * (d - 1) / 2],
        })
    }

    /// Every pair set to the same probability.
    pub fn uniform(d: usize, p: T) -> Result<Self, ChannelError> {
        let mut table = Self::new(d)?;
        for i in 0..d {
            for j in (i + 1)..d {
                table.set(i, j, p)?;
            }
        }
        Ok(table)
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    fn slot(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.d);
        i * self.d - i * (i + 1) / 2 + (j - i - 1)
    }

    /// Symmetric assignment: `set(i, j, p)` and `set(j, i, p)` agree.
    pub fn set(&mut self, i: usize, j: usize, p: T) -> Result<(), ChannelError> {
        let (lo, hi) = if i < j { (i, j) } else { (j, i) };
        if hi >= self.d {
            return Err(OperatorError::IndexOutOfRange {
                index: hi,
                d: self.d,
            }
            .into());
        }
        if lo == hi {
            return Err(OperatorError::EqualIndices { index: lo }.into());
        }
        check_probability("p_ij", p)?;
        let slot = self.slot(lo, hi);
        self.upper[slot] = p;
        Ok(())
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        let (lo, hi) = if i < j { (i, j) } else { (j, i) };
        assert!(lo != hi && hi < self.d, "invalid pair ({i}, {j})");
        self.upper[self.slot(lo, hi)]
    }

    /// Pairs `((i, j), p_ij)` in lexicographic order, `i < j`.
    pub fn pairs(&self) -> impl Iterator<Item = ((usize, usize), T)> + '_ {
        (0..self.d).flat_map(move |i| ((i + 1)..self.d).map(move |j| ((i, j), self.get(i, j))))
    }

    pub fn total(&self) -> T {
        self.upper.iter().fold(T::zero(), |acc, &p| acc + p)
    }

    /// Sum of probabilities involving level `i`.
    pub fn row_sum(&self, i: usize) -> T {
        (0..self.d)
            .filter(|&k| k != i)
            .fold(T::zero(), |acc, k| acc + self.get(i, k))
    }
}

fn check_probability<T: Scalar>(name: &'static str, p: T) -> Result<(), ChannelError> {
    if p < T::zero() || p > T::one() || !p.is_finite() {
        return Err(ChannelError::ProbabilityOutOfRange {
            name,
            value: to_f64(p),
        });
    }
    Ok(())
}

/// Ordered list of same-dimension Kraus operators.
///
/// Construction does not enforce closure, so deliberately non-closing sets
/// can be built and measured; [`KrausChannel::apply`] gates on closure.
/// Zero operators (e.g. from `p = 0`) are kept so the operator-list shape is
/// parameter-independent; `apply` skips them numerically.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel<T: Scalar> {
    dim: usize,
    operators: Vec<ComplexMatrix<T>>,
    label: String,
}

impl<T: Scalar> KrausChannel<T> {
    pub fn new(
        operators: Vec<ComplexMatrix<T>>,
        label: impl Into<String>,
    ) -> Result<Self, ChannelError> {
        let dim = match operators.first() {
            None => return Err(ChannelError::EmptyOperatorList),
            Some(k) => k.rows(),
        };
        for (index, k) in operators.iter().enumerate() {
            if k.rows() != dim || k.cols() != dim {
                return Err(ChannelError::OperatorShapeMismatch {
                    index,
                    rows: k.rows(),
                    cols: k.cols(),
                    dim,
                });
            }
        }
        Ok(Self {
            dim,
            operators,
            label: label.into(),
        })
    }

    pub fn identity(d: usize) -> Self {
        Self {
            dim: d,
            operators: vec![ComplexMatrix::identity(d)],
            label: "identity".into(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn operators(&self) -> &[ComplexMatrix<T>] {
        &self.operators
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Max entry of `|sum K^†K - 1|`; the caller judges it against a tolerance.
    pub fn closure_deviation(&self) -> T {
        let d = self.dim;
        let mut sum = ComplexMatrix::zeros(d, d);
        for k in &self.operators {
            for r in 0..d {
                for c in 0..d {
                    let acc = (0..d).fold(Complex::from(T::zero()), |acc, m| {
                        acc + k[(m, r)].conj() * k[(m, c)]
                    });
                    sum[(r, c)] = sum[(r, c)] + acc;
                }
            }
        }
        sum.max_abs_diff(&ComplexMatrix::identity(d))
    }

    /// `sum_k K rho K^†`, gated on closure within 1e-8 so hand-built channels
    /// can still be experimented with.
    pub fn apply(&self, rho: &DensityMatrix<T>) -> Result<DensityMatrix<T>, ChannelError> {
        if rho.dim() != self.dim {
            return Err(ChannelError::DimensionMismatch {
                channel: self.dim,
                state: rho.dim(),
            });
        }
        let deviation = self.closure_deviation();
        if deviation > scaled_tol(1e-8, 512.0) {
            return Err(ChannelError::ClosureViolation {
                deviation: to_f64(deviation),
            });
        }
        let mut out = ComplexMatrix::zeros(self.dim, self.dim);
        for k in &self.operators {
            if k.max_abs() == T::zero() {
                continue;
            }
            out = &out + &(&(k * rho.matrix()) * &k.adjoint());
        }
        Ok(DensityMatrix::new(out, rho.dims())?)
    }

    /// Embeds every Kraus operator as `K (x) 1` (target A) or `1 (x) K`
    /// (target B); closure is preserved.
    pub fn lift_to_subsystem(
        &self,
        d_a: usize,
        d_b: usize,
        target: Subsystem,
    ) -> Result<KrausChannel<T>, ChannelError> {
        let target_dim = match target {
            Subsystem::A => d_a,
            Subsystem::B => d_b,
        };
        if target_dim != self.dim {
            return Err(ChannelError::DimensionMismatch {
                channel: self.dim,
                state: target_dim,
            });
        }
        let operators = self
            .operators
            .iter()
            .map(|k| match target {
                Subsystem::A => k.kron(&ComplexMatrix::identity(d_b)),
                Subsystem::B => ComplexMatrix::identity(d_a).kron(k),
            })
            .collect();
        Ok(KrausChannel {
            dim: d_a * d_b,
            operators,
            label: format!(
                "{} on {}",
                self.label,
                match target {
                    Subsystem::A => "A",
                    Subsystem::B => "B",
                }
            ),
        })
    }

    /// Individual flip: `K0 = sqrt(1-p) 1`, `K1 = sqrt(p) F_ij`.
    pub fn individual_flip(d: usize, i: usize, j: usize, p: T) -> Result<Self, ChannelError> {
        check_probability("p", p)?;
        let flip = pairwise_flip_operator::<T>(d, i, j)?;
        let k0 = ComplexMatrix::identity(d).scale_re((T::one() - p).sqrt());
        let k1 = flip.scale_re(p.sqrt());
        Ok(Self {
            dim: d,
            operators: vec![k0, k1],
            label: format!("idf d={d} flip={i}<->{j}"),
        })
    }

    /// su(d) individual flip: `K0 = sqrt(1-p) Gamma^2 + sum_{k != i,j} |k><k|`,
    /// `K1 = sqrt(p) Gamma_ij`. Restricted to span{|i>, |j>} this acts as the
    /// qubit bit flip; elsewhere the companion operator is not unitary.
    pub fn su_individual_flip(d: usize, i: usize, j: usize, p: T) -> Result<Self, ChannelError> {
        check_probability("p", p)?;
        let gamma = gamma_operator::<T>(d, i, j)?;
        let mut k0 = ComplexMatrix::identity(d);
        let damp = Complex::from((T::one() - p).sqrt());
        k0[(i, i)] = damp;
        k0[(j, j)] = damp;
        let k1 = gamma.scale_re(p.sqrt());
        Ok(Self {
            dim: d,
            operators: vec![k0, k1],
            label: format!("su_idf d={d} flip={i}<->{j}"),
        })
    }

    /// Every pairwise flip in one channel:
    /// `K0 = sqrt(1 - sum p_ij) 1`, `K_ij = sqrt(p_ij) F_ij`.
    pub fn full_flip(probs: &FlipProbabilities<T>) -> Result<Self, ChannelError> {
        let d = probs.dim();
        let total = probs.total();
        if total > T::one() + scaled_tol(1e-12, 16.0) {
            return Err(ChannelError::ProbabilityBudgetExceeded {
                total: to_f64(total),
            });
        }
        let slack = (T::one() - total).max(T::zero());
        let mut operators = vec![ComplexMatrix::identity(d).scale_re(slack.sqrt())];
        for ((i, j), p) in probs.pairs() {
            operators.push(pairwise_flip_operator::<T>(d, i, j)?.scale_re(p.sqrt()));
        }
        Ok(Self {
            dim: d,
            operators,
            label: format!("full d={d}"),
        })
    }

    /// su(d) full flip: `K0 = sum_i sqrt(1 - sum_{k != i} p_ik) |i><i|`,
    /// `K_ij = sqrt(p_ij) Gamma_ij`.
    pub fn su_full_flip(probs: &FlipProbabilities<T>) -> Result<Self, ChannelError> {
        let d = probs.dim();
        let tol: T = scaled_tol(1e-12, 16.0);
        let mut k0 = ComplexMatrix::zeros(d, d);
        for i in 0..d {
            let row = probs.row_sum(i);
            if row > T::one() + tol {
                return Err(ChannelError::RowBudgetExceeded {
                    index: i,
                    total: to_f64(row),
                });
            }
            k0[(i, i)] = Complex::from((T::one() - row).max(T::zero()).sqrt());
        }
        let mut operators = vec![k0];
        for ((i, j), p) in probs.pairs() {
            operators.push(gamma_operator::<T>(d, i, j)?.scale_re(p.sqrt()));
        }
        Ok(Self {
            dim: d,
            operators,
            label: format!("su_full d={d}"),
        })
    }

    /// Shift channel: `K0 = sqrt(1-p) 1`, `K1 = sqrt(pf) F`, `K2 = sqrt(pb) B`,
    /// with `f + b = 1`.
    pub fn shift(d: usize, p: T, f: T, b: T) -> Result<Self, ChannelError> {
        check_probability("p", p)?;
        check_probability("f", f)?;
        check_probability("b", b)?;
        let target = T::one();
        if (f + b - target).abs() > scaled_tol(1e-12, 16.0) {
            return Err(ChannelError::ClosureParameterViolation {
                f: to_f64(f),
                b: to_f64(b),
                target: 1.0,
            });
        }
        Ok(Self {
            dim: d,
            operators: shift_operators(d, p, f, b, T::one())?,
            label: format!("shift d={d}"),
        })
    }

    /// Damped shift: `K0 = sqrt(1 - tp) 1` with `f + b = t`. At `t = 1` this
    /// is the plain shift channel; at `t = 0` it is the identity for any `p`.
    pub fn damped_shift(d: usize, p: T, f: T, b: T, t: T) -> Result<Self, ChannelError> {
        check_probability("p", p)?;
        check_probability("t", t)?;
        for (name, v) in [("f", f), ("b", b)] {
            if v < T::zero() || !v.is_finite() {
                return Err(ChannelError::ProbabilityOutOfRange {
                    name,
                    value: to_f64(v),
                });
            }
        }
        if (f + b - t).abs() > scaled_tol(1e-12, 16.0) {
            return Err(ChannelError::ClosureParameterViolation {
                f: to_f64(f),
                b: to_f64(b),
                target: to_f64(t),
            });
        }
        Ok(Self {
            dim: d,
            operators: shift_operators(d, p, f, b, t)?,
            label: format!("damped_shift d={d}"),
        })
    }

    /// Shuffled shift: `K0 = sqrt(1-p) 1` plus one `sqrt(p f_j) P_j` per
    /// d-cycle `P_j`, in `enumerate_d_cycles` order; weights sum to 1.
    pub fn shuffled_shift(d: usize, p: T, weights: &[T]) -> Result<Self, ChannelError> {
        check_probability("p", p)?;
        let cycles = enumerate_d_cycles(d)?;
        if weights.len() != cycles.len() {
            return Err(ChannelError::WeightCountMismatch {
                expected: cycles.len(),
                actual: weights.len(),
            });
        }
        let mut total = T::zero();
        for (index, &w) in weights.iter().enumerate() {
            if w < T::zero() || !w.is_finite() {
                return Err(ChannelError::NegativeWeight {
                    index,
                    value: to_f64(w),
                });
            }
            total = total + w;
        }
        if (total - T::one()).abs() > scaled_tol(1e-12, 16.0) {
            return Err(ChannelError::WeightNormalizationViolation {
                total: to_f64(total),
            });
        }
        let mut operators = vec![ComplexMatrix::identity(d).scale_re((T::one() - p).sqrt())];
        for (cycle, &w) in cycles.iter().zip(weights) {
            operators.push(permutation_operator::<T>(cycle).scale_re((p * w).sqrt()));
        }
        Ok(Self {
            dim: d,
            operators,
            label: format!("shuffled d={d}"),
        })
    }
}

fn shift_operators<T: Scalar>(
    d: usize,
    p: T,
    f: T,
    b: T,
    t: T,
) -> Result<Vec<ComplexMatrix<T>>, ChannelError> {
    let k0 = ComplexMatrix::identity(d).scale_re((T::one() - t * p).max(T::zero()).sqrt());
    let k1 = forward_operator::<T>(d)?.scale_re((p * f).sqrt());
    let k2 = backward_operator::<T>(d)?.scale_re((p * b).sqrt());
    Ok(vec![k0, k1, k2])
}

/// Channel lifted onto one side of a bipartite system, ready to apply to
/// states with dims `(d_a, d_b)`.
pub fn lift<T: Scalar>(
    channel: &KrausChannel<T>,
    dims: SystemDims,
    target: Subsystem,
) -> Result<KrausChannel<T>, ChannelError> {
    let (d_a, d_b) = dims.bipartite().ok_or(ChannelError::DimensionMismatch {
        channel: channel.dim(),
        state: dims.total(),
    })?;
    channel.lift_to_subsystem(d_a, d_b, target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{phi_plus, pure_density};
    use num_traits::Zero;

    type M = ComplexMatrix<f64>;
    type C = Complex<f64>;

    fn basis_density(d: usize, i: usize) -> DensityMatrix<f64> {
        let mut psi = vec![C::zero(); d];
        psi[i] = C::from(1.0);
        pure_density(&psi, SystemDims::Single(d)).unwrap()
    }

    #[test]
    fn identity_channel_closure_and_apply() {
        let id = KrausChannel::<f64>::identity(4);
        assert_eq!(id.closure_deviation(), 0.0);
        let rho = basis_density(4, 2);
        let out = id.apply(&rho).unwrap();
        assert!(out.matrix().max_abs_diff(rho.matrix()) < 1e-15);
    }

    #[test]
    fn individual_flip_closure_and_deterministic_action() {
        let ch = KrausChannel::individual_flip(3, 0, 1, 0.3).unwrap();
        assert!(ch.closure_deviation() < 1e-14);

        let sure = KrausChannel::individual_flip(3, 0, 1, 1.0).unwrap();
        let out = sure.apply(&basis_density(3, 0)).unwrap();
        assert!(out.matrix().max_abs_diff(basis_density(3, 1).matrix()) < 1e-15);

        let ch4 = KrausChannel::individual_flip(4, 1, 3, 0.5).unwrap();
        assert!(ch4.closure_deviation() < 1e-14);
    }

    #[test]
    fn individual_flip_p_zero_keeps_zero_operator() {
        let ch = KrausChannel::individual_flip(3, 0, 1, 0.0).unwrap();
        assert_eq!(ch.operators().len(), 2);
        assert_eq!(ch.operators()[1].max_abs(), 0.0);
        let rho = basis_density(3, 2);
        let out = ch.apply(&rho).unwrap();
        assert!(out.matrix().max_abs_diff(rho.matrix()) < 1e-15);
    }

    #[test]
    fn individual_flip_rejects_bad_parameters() {
        assert!(matches!(
            KrausChannel::individual_flip(3, 0, 1, 1.2),
            Err(ChannelError::ProbabilityOutOfRange { name: "p", .. })
        ));
        assert!(matches!(
            KrausChannel::individual_flip(3, 2, 2, 0.5),
            Err(ChannelError::Operator(OperatorError::EqualIndices { .. }))
        ));
    }

    #[test]
    fn su_individual_flip_mixes_states_with_spectators() {
        // p = 1 flip 0<->1 on (|0> + |2>)/sqrt(2) yields the equal mixture of
        // |1><1| and |2><2|.
        let s = 1.0 / 2.0f64.sqrt();
        let psi = vec![C::from(s), C::zero(), C::from(s)];
        let rho = pure_density(&psi, SystemDims::Single(3)).unwrap();
        let ch = KrausChannel::su_individual_flip(3, 0, 1, 1.0).unwrap();
        let out = ch.apply(&rho).unwrap();
        let mut want = M::zeros(3, 3);
        want[(1, 1)] = C::from(0.5);
        want[(2, 2)] = C::from(0.5);
        assert!(out.matrix().max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn su_individual_flip_closure_without_identity_kraus() {
        let ch = KrausChannel::su_individual_flip(3, 0, 2, 0.4).unwrap();
        assert!(ch.closure_deviation() < 1e-14);
        // K0 is not proportional to the identity.
        let k0 = &ch.operators()[0];
        assert!((k0[(0, 0)] - k0[(1, 1)]).norm() > 0.1);
    }

    #[test]
    fn su_individual_flip_on_pair_subspace_acts_as_bit_flip() {
        let ch = KrausChannel::su_individual_flip(3, 0, 1, 1.0).unwrap();
        let gamma = gamma_operator::<f64>(3, 0, 1).unwrap();
        let s = 1.0 / 2.0f64.sqrt();
        let psi = vec![C::from(s), C::new(0.0, s), C::zero()];
        let rho = pure_density(&psi, SystemDims::Single(3)).unwrap();
        let out = ch.apply(&rho).unwrap();
        let conj = &(&gamma * rho.matrix()) * &gamma;
        assert!(out.matrix().max_abs_diff(&conj) < 1e-15);
    }

    #[test]
    fn su_individual_flip_p_zero_is_identity_behavior() {
        let ch = KrausChannel::su_individual_flip(3, 0, 1, 0.0).unwrap();
        let s = 1.0 / 3.0f64.sqrt();
        let psi = vec![C::from(s), C::from(s), C::from(s)];
        let rho = pure_density(&psi, SystemDims::Single(3)).unwrap();
        let out = ch.apply(&rho).unwrap();
        assert!(out.matrix().max_abs_diff(rho.matrix()) < 1e-15);
    }

    #[test]
    fn rejected_su_set_misses_closure_by_two() {
        // Pairing every Gamma_ij flip with every companion T_ij gives
        // sum K^†K = 3 * identity in d = 3, independent of the p values.
        let mut operators = Vec::new();
        for ((i, j), p) in [((0, 1), 0.3f64), ((0, 2), 0.5), ((1, 2), 0.7)] {
            let su = KrausChannel::su_individual_flip(3, i, j, p).unwrap();
            operators.extend(su.operators().to_vec());
        }
        let set = KrausChannel::new(operators, "rejected su set").unwrap();
        assert!((set.closure_deviation() - 2.0).abs() < 1e-12);
        assert!(matches!(
            set.apply(&basis_density(3, 0)),
            Err(ChannelError::ClosureViolation { .. })
        ));
    }

    #[test]
    fn full_flip_families_with_zero_table_act_as_identity() {
        let probs = FlipProbabilities::new(3).unwrap();
        for ch in [
            KrausChannel::full_flip(&probs).unwrap(),
            KrausChannel::su_full_flip(&probs).unwrap(),
        ] {
            assert!(ch.operators()[0].max_abs_diff(&M::identity(3)) < 1e-15);
            let rho = basis_density(3, 1);
            let out = ch.apply(&rho).unwrap();
            assert!(out.matrix().max_abs_diff(rho.matrix()) < 1e-15);
        }
    }

    #[test]
    fn full_flip_uniform_thirds_spreads_basis_state() {
        let mut probs = FlipProbabilities::new(3).unwrap();
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            probs.set(i, j, 1.0 / 3.0).unwrap();
        }
        let ch = KrausChannel::full_flip(&probs).unwrap();
        assert!(ch.closure_deviation() < 1e-14);
        let out = ch.apply(&basis_density(3, 0)).unwrap();
        for i in 0..3 {
            assert!((out.matrix()[(i, i)].re - 1.0 / 3.0).abs() < 1e-14);
        }
    }

    #[test]
    fn full_flip_single_pair_matches_individual_flip_up_to_zero_operators() {
        let mut probs = FlipProbabilities::new(3).unwrap();
        probs.set(0, 1, 1.0).unwrap();
        let full = KrausChannel::full_flip(&probs).unwrap();
        let idf = KrausChannel::individual_flip(3, 0, 1, 1.0).unwrap();
        assert!(full.operators()[0].max_abs_diff(&idf.operators()[0]) < 1e-15);
        assert!(full.operators()[1].max_abs_diff(&idf.operators()[1]) < 1e-15);
        for extra in &full.operators()[2..] {
            assert_eq!(extra.max_abs(), 0.0);
        }
        let out_full = full.apply(&basis_density(3, 0)).unwrap();
        let out_idf = idf.apply(&basis_density(3, 0)).unwrap();
        assert!(out_full.matrix().max_abs_diff(out_idf.matrix()) < 1e-15);
    }

    #[test]
    fn full_flip_enforces_probability_budget() {
        let probs = FlipProbabilities::uniform(3, 0.5).unwrap();
        assert!(matches!(
            KrausChannel::full_flip(&probs),
            Err(ChannelError::ProbabilityBudgetExceeded { .. })
        ));
    }

    #[test]
    fn su_full_flip_closure_on_random_feasible_tables() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for _ in 0..100 {
            let d = 4;
            let mut probs = FlipProbabilities::new(d).unwrap();
            for i in 0..d {
                for j in (i + 1)..d {
                    // Row sums stay below 1: each of the d-1 entries < 1/(d-1).
                    probs
                        .set(i, j, rng.random_range(0.0..1.0 / (d - 1) as f64))
                        .unwrap();
                }
            }
            let ch = KrausChannel::su_full_flip(&probs).unwrap();
            assert!(ch.closure_deviation() < 1e-14);
        }
    }

    #[test]
    fn su_full_flip_single_pair_equals_su_individual_flip() {
        let mut probs = FlipProbabilities::new(3).unwrap();
        probs.set(0, 1, 1.0).unwrap();
        let su_full = KrausChannel::su_full_flip(&probs).unwrap();
        let su_idf = KrausChannel::su_individual_flip(3, 0, 1, 1.0).unwrap();
        assert!(su_full.operators()[0].max_abs_diff(&su_idf.operators()[0]) < 1e-15);
        assert!(su_full.operators()[1].max_abs_diff(&su_idf.operators()[1]) < 1e-15);
    }

    #[test]
    fn su_full_flip_enforces_row_budget() {
        let mut probs = FlipProbabilities::new(3).unwrap();
        probs.set(0, 1, 0.7).unwrap();
        probs.set(0, 2, 0.7).unwrap();
        assert!(matches!(
            KrausChannel::su_full_flip(&probs),
            Err(ChannelError::RowBudgetExceeded { index: 0, .. })
        ));
    }

    #[test]
    fn shift_channel_deterministic_successor() {
        let ch = KrausChannel::shift(3, 1.0, 1.0, 0.0).unwrap();
        let out = ch.apply(&basis_density(3, 0)).unwrap();
        assert!(out.matrix().max_abs_diff(basis_density(3, 1).matrix()) < 1e-15);
    }

    #[test]
    fn shift_channel_p_zero_is_identity_behavior() {
        let ch = KrausChannel::shift(3, 0.0, 0.5, 0.5).unwrap();
        let s = 1.0 / 2.0f64.sqrt();
        let psi = vec![C::from(s), C::new(0.0, -s), C::zero()];
        let rho = pure_density(&psi, SystemDims::Single(3)).unwrap();
        let out = ch.apply(&rho).unwrap();
        assert!(out.matrix().max_abs_diff(rho.matrix()) < 1e-15);
    }

    #[test]
    fn shift_channel_closure_and_parameter_validation() {
        let ch = KrausChannel::shift(5, 0.7, 0.25, 0.75).unwrap();
        assert!(ch.closure_deviation() < 1e-14);
        assert!(matches!(
            KrausChannel::shift(3, 0.5, 0.6, 0.6),
            Err(ChannelError::ClosureParameterViolation { .. })
        ));
    }

    #[test]
    fn shift_at_p1_f1_has_period_d() {
        let d = 4;
        let ch = KrausChannel::shift(d, 1.0, 1.0, 0.0).unwrap();
        let start = basis_density(d, 2);
        let mut rho = start.clone();
        for _ in 0..d {
            rho = ch.apply(&rho).unwrap();
        }
        assert!(rho.matrix().max_abs_diff(start.matrix()) < 1e-13);
    }

    #[test]
    fn damped_shift_t_zero_is_identity_for_any_p() {
        for p in [0.0, 0.4, 1.0] {
            let ch = KrausChannel::damped_shift(3, p, 0.0, 0.0, 0.0).unwrap();
            let rho = basis_density(3, 2);
            let out = ch.apply(&rho).unwrap();
            assert!(out.matrix().max_abs_diff(rho.matrix()) < 1e-15);
        }
    }

    #[test]
    fn damped_shift_t_one_recovers_shift() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let p: f64 = rng.random_range(0.0..1.0);
            let f: f64 = rng.random_range(0.0..1.0);
            let b = 1.0 - f;
            let damped = KrausChannel::damped_shift(3, p, f, b, 1.0).unwrap();
            let plain = KrausChannel::shift(3, p, f, b).unwrap();
            let rho = crate::random::random_density::<f64, _>(&mut rng, SystemDims::Single(3));
            let out_damped = damped.apply(&rho).unwrap();
            let out_plain = plain.apply(&rho).unwrap();
            assert!(out_damped.matrix().max_abs_diff(out_plain.matrix()) < 1e-14);
        }
    }

    #[test]
    fn damped_shift_reproduces_rescaled_literature_channel() {
        // One-parameter cyclic channel with p' = 2p/3 and f = b = 1/2 equals
        // the damped shift at t = 2/3 with f = b = t/2.
        let p = 0.63;
        let t = 2.0 / 3.0;
        let damped = KrausChannel::damped_shift(3, p, t / 2.0, t / 2.0, t).unwrap();
        let rescaled = KrausChannel::shift(3, 2.0 * p / 3.0, 0.5, 0.5).unwrap();
        let s = 1.0 / 3.0f64.sqrt();
        let psi = vec![C::from(s), C::new(0.0, s), C::from(-s)];
        let rho = pure_density(&psi, SystemDims::Single(3)).unwrap();
        let a = damped.apply(&rho).unwrap();
        let b = rescaled.apply(&rho).unwrap();
        assert!(a.matrix().max_abs_diff(b.matrix()) < 1e-14);
    }

    #[test]
    fn damped_shift_requires_f_plus_b_equal_t() {
        assert!(matches!(
            KrausChannel::damped_shift(3, 0.5, 0.3, 0.3, 0.5),
            Err(ChannelError::ClosureParameterViolation { .. })
        ));
    }

    #[test]
    fn shuffled_shift_qutrit_weights_reproduce_shift() {
        let p = 0.37;
        let shuffled = KrausChannel::shuffled_shift(3, p, &[0.25, 0.75]).unwrap();
        let shift = KrausChannel::shift(3, p, 0.25, 0.75).unwrap();
        assert_eq!(shuffled.operators().len(), shift.operators().len());
        for (a, b) in shuffled.operators().iter().zip(shift.operators()) {
            assert!(a.max_abs_diff(b) < 1e-15);
        }
    }

    #[test]
    fn shuffled_shift_qubit_is_individual_flip() {
        let p = 0.42;
        let shuffled = KrausChannel::shuffled_shift(2, p, &[1.0]).unwrap();
        let idf = KrausChannel::individual_flip(2, 0, 1, p).unwrap();
        for (a, b) in shuffled.operators().iter().zip(idf.operators()) {
            assert!(a.max_abs_diff(b) < 1e-15);
        }
    }

    #[test]
    fn shuffled_shift_uniform_weights_close() {
        let weights = vec![1.0 / 6.0; 6];
        let ch = KrausChannel::shuffled_shift(4, 0.8, &weights).unwrap();
        assert_eq!(ch.operators().len(), 7);
        assert!(ch.closure_deviation() < 1e-14);
    }

    #[test]
    fn shuffled_shift_validates_weights() {
        assert!(matches!(
            KrausChannel::shuffled_shift(3, 0.5, &[0.5, 0.6]),
            Err(ChannelError::WeightNormalizationViolation { .. })
        ));
        assert!(matches!(
            KrausChannel::shuffled_shift(3, 0.5, &[1.0]),
            Err(ChannelError::WeightCountMismatch {
                expected: 2,
                actual: 1
            })
        ));
        assert!(matches!(
            KrausChannel::shuffled_shift(3, 0.5, &[-0.1, 1.1]),
            Err(ChannelError::NegativeWeight { index: 0, .. })
        ));
    }

    #[test]
    fn lift_identity_stays_identity() {
        let id = KrausChannel::<f64>::identity(3);
        let lifted = id.lift_to_subsystem(2, 3, Subsystem::B).unwrap();
        assert_eq!(lifted.dim(), 6);
        assert!(lifted.operators()[0].max_abs_diff(&M::identity(6)) < 1e-15);
    }

    #[test]
    fn lift_preserves_closure() {
        let ch = KrausChannel::individual_flip(3, 0, 1, 0.3).unwrap();
        let lifted = ch.lift_to_subsystem(2, 3, Subsystem::B).unwrap();
        assert!(lifted.closure_deviation() < 1e-14);
        let on_a = KrausChannel::individual_flip(2, 0, 1, 0.3)
            .unwrap()
            .lift_to_subsystem(2, 3, Subsystem::A)
            .unwrap();
        assert!(on_a.closure_deviation() < 1e-14);
    }

    #[test]
    fn lift_shift_moves_entangled_state_to_shifted_pure_state() {
        let ch = KrausChannel::shift(3, 1.0, 1.0, 0.0).unwrap();
        let lifted = ch.lift_to_subsystem(2, 3, Subsystem::B).unwrap();
        let rho = pure_density(&phi_plus::<f64>(2, 3), SystemDims::Bipartite(2, 3)).unwrap();
        let out = lifted.apply(&rho).unwrap();
        // (|01> + |12>)/sqrt(2)
        let s = 1.0 / 2.0f64.sqrt();
        let mut psi = vec![C::zero(); 6];
        psi[1] = C::from(s);
        psi[5] = C::from(s);
        let want = pure_density(&psi, SystemDims::Bipartite(2, 3)).unwrap();
        assert!(out.matrix().max_abs_diff(want.matrix()) < 1e-14);
    }

    #[test]
    fn lift_rejects_wrong_target_dimension() {
        let ch = KrausChannel::individual_flip(3, 0, 1, 0.3).unwrap();
        assert!(matches!(
            ch.lift_to_subsystem(3, 2, Subsystem::B),
            Err(ChannelError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn apply_rejects_dimension_mismatch() {
        let ch = KrausChannel::individual_flip(3, 0, 1, 0.3).unwrap();
        let rho = basis_density(4, 0);
        assert!(matches!(
            ch.apply(&rho),
            Err(ChannelError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn flip_probabilities_symmetric_accessors() {
        let mut probs = FlipProbabilities::new(4).unwrap();
        probs.set(2, 0, 0.25).unwrap();
        assert_eq!(probs.get(0, 2), 0.25);
        assert_eq!(probs.get(2, 0), 0.25);
        assert_eq!(probs.row_sum(0), 0.25);
        assert_eq!(probs.row_sum(1), 0.0);
        assert!(matches!(
            probs.set(1, 1, 0.5),
            Err(ChannelError::Operator(OperatorError::EqualIndices { .. }))
        ));
        assert!(matches!(
            probs.set(0, 1, 1.5),
            Err(ChannelError::ProbabilityOutOfRange { .. })
        ));
    }
}
