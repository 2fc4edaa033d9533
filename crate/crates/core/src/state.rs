//! Joint position and chirality state of a walker on the integer line.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::coin::{Chirality, CoinOperator};
use crate::error::{Result, WalkError};

/// Norm tolerance for states after long evolutions.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Probabilities below this are left out of reported distributions.
pub const PROBABILITY_FLOOR: f64 = 1e-300;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Parameters of the general initial state
/// `sqrt(eta)|R> + e^{i mu} sqrt(1 - eta)|L>` at the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialStateSpec {
    pub eta: f64,
    pub mu: f64,
}

impl InitialStateSpec {
    pub fn new(eta: f64, mu: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&eta) {
            Ok(Self { eta, mu })
        } else {
            Err(WalkError::EtaOutOfRange(eta))
        }
    }
}

/// Amplitudes `(a_L(x), a_R(x))` for `x` in `[-t, t]` after `t` steps.
///
/// Index 0 of each buffer corresponds to `x = -t`. Sites whose parity
/// differs from `t` always hold zero.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkerState {
    t: usize,
    left: Vec<Complex64>,
    right: Vec<Complex64>,
}

impl WalkerState {
    /// `(|0,L> - |0,R>)/sqrt(2)`, the state that makes the unbiased coin
    /// produce a symmetric walk.
    pub fn standard() -> Self {
        Self {
            t: 0,
            left: vec![Complex64::new(FRAC_1_SQRT_2, 0.0)],
            right: vec![Complex64::new(-FRAC_1_SQRT_2, 0.0)],
        }
    }

    pub fn general(spec: InitialStateSpec) -> Result<Self> {
        let spec = InitialStateSpec::new(spec.eta, spec.mu)?;
        Ok(Self {
            t: 0,
            left: vec![Complex64::from_polar((1.0 - spec.eta).sqrt(), spec.mu)],
            right: vec![Complex64::new(spec.eta.sqrt(), 0.0)],
        })
    }

    /// Builds a state from explicit amplitude buffers covering `[-t, t]`.
    /// The buffers must have length `2t + 1`, hold zeros off the parity
    /// sublattice, and carry unit norm within [`NORM_TOLERANCE`].
    pub fn from_amplitudes(t: usize, left: Vec<Complex64>, right: Vec<Complex64>) -> Result<Self> {
        let len = 2 * t + 1;
        if left.len() != len || right.len() != len {
            return Err(WalkError::InvalidState(format!(
                "expected {len} sites for t = {t}, got {} (L) and {} (R)",
                left.len(),
                right.len()
            )));
        }
        // index i has x = i - t, so x and t share parity iff i is even
        for i in (1..len).step_by(2) {
            if left[i] != ZERO || right[i] != ZERO {
                return Err(WalkError::InvalidState(format!(
                    "nonzero amplitude at x = {} which has the wrong parity for t = {t}",
                    i as i64 - t as i64
                )));
            }
        }
        let state = Self { t, left, right };
        let norm = state.norm_sqr();
        if (1.0 - norm).abs() > NORM_TOLERANCE {
            return Err(WalkError::InvalidState(format!("norm {norm} is not 1")));
        }
        Ok(state)
    }

    /// Number of steps taken so far.
    pub fn time(&self) -> usize {
        self.t
    }

    pub fn min_position(&self) -> i64 {
        -(self.t as i64)
    }

    pub fn max_position(&self) -> i64 {
        self.t as i64
    }

    pub fn left_amplitudes(&self) -> &[Complex64] {
        &self.left
    }

    pub fn right_amplitudes(&self) -> &[Complex64] {
        &self.right
    }

    /// Amplitude at `(x, c)`; zero outside `[-t, t]`.
    pub fn amplitude(&self, x: i64, c: Chirality) -> Complex64 {
        let idx = x + self.t as i64;
        if idx < 0 || idx as usize >= self.left.len() {
            return ZERO;
        }
        match c {
            Chirality::L => self.left[idx as usize],
            Chirality::R => self.right[idx as usize],
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.left.iter().chain(&self.right).map(|a| a.norm_sqr()).sum()
    }

    /// Multiplies every amplitude by `scale`.
    pub fn scaled(&self, scale: Complex64) -> Self {
        Self {
            t: self.t,
            left: self.left.iter().map(|a| a * scale).collect(),
            right: self.right.iter().map(|a| a * scale).collect(),
        }
    }

    /// Applies one coin-then-shift step in place: the coin acts on every
    /// site, then L components move to `x - 1` and R components to `x + 1`.
    pub fn advance(&mut self, coin: &CoinOperator) {
        let n = self.left.len();
        self.left.resize(n + 2, ZERO);
        self.right.resize(n + 2, ZERO);
        // With the new offset t + 1, an L amplitude leaving old index i lands
        // on new index i and an R amplitude on i + 2. Walking downwards keeps
        // every slot read before it is overwritten.
        for i in (0..n).rev() {
            let (r, l) = coin.apply(self.right[i], self.left[i]);
            self.right[i] = ZERO;
            self.left[i] = l;
            self.right[i + 2] = r;
        }
        self.t += 1;
    }

    /// Largest pairwise amplitude difference against another state at the
    /// same time step.
    pub fn max_amplitude_diff(&self, other: &WalkerState) -> f64 {
        assert_eq!(self.t, other.t, "states must be at the same time step");
        self.left
            .iter()
            .zip(&other.left)
            .chain(self.right.iter().zip(&other.right))
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn site_probabilities(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        let offset = self.t as i64;
        self.left
            .iter()
            .zip(&self.right)
            .enumerate()
            .map(move |(i, (l, r))| (i as i64 - offset, l.norm_sqr() + r.norm_sqr()))
    }
}

/// `P(x) = |a_L(x)|^2 + |a_R(x)|^2`, omitting sites below [`PROBABILITY_FLOOR`].
pub fn position_distribution(state: &WalkerState) -> BTreeMap<i64, f64> {
    state.site_probabilities().filter(|&(_, p)| p >= PROBABILITY_FLOOR).collect()
}

/// Expected walker position `sum_x x P(x)`.
pub fn expectation_position(state: &WalkerState) -> f64 {
    state.site_probabilities().map(|(x, p)| x as f64 * p).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coin::make_phase_coin;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn standard_state() {
        let s = WalkerState::standard();
        assert_eq!(s.time(), 0);
        assert_abs_diff_eq!(s.amplitude(0, Chirality::L).re, 0.5f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(s.amplitude(0, Chirality::R).re, -(0.5f64.sqrt()), epsilon = 1e-15);
        assert_abs_diff_eq!(s.norm_sqr(), 1.0, epsilon = 1e-15);
        assert_eq!(expectation_position(&s), 0.0);
        let dist = position_distribution(&s);
        assert_eq!(dist.len(), 1);
        assert_abs_diff_eq!(dist[&0], 1.0, epsilon = 1e-15);
    }

    #[test]
    fn general_state() {
        let s = WalkerState::general(InitialStateSpec { eta: 1.0, mu: 2.5 }).unwrap();
        assert_eq!(s.amplitude(0, Chirality::R), c(1.0, 0.0));
        assert_eq!(s.amplitude(0, Chirality::L).norm(), 0.0);

        let s = WalkerState::general(InitialStateSpec { eta: 0.3, mu: 0.4 }).unwrap();
        assert_abs_diff_eq!(s.norm_sqr(), 1.0, epsilon = 1e-15);

        let half = WalkerState::general(InitialStateSpec { eta: 0.5, mu: PI }).unwrap();
        let neg = WalkerState::standard().scaled(c(-1.0, 0.0));
        assert!(half.max_amplitude_diff(&neg) < 1e-15);
    }

    #[test]
    fn eta_out_of_range() {
        assert_eq!(InitialStateSpec::new(1.2, 0.0), Err(WalkError::EtaOutOfRange(1.2)));
        assert_eq!(
            WalkerState::general(InitialStateSpec { eta: -0.5, mu: 0.0 }),
            Err(WalkError::EtaOutOfRange(-0.5))
        );
    }

    #[test]
    fn one_unbiased_step_splits_evenly() {
        let mut s = WalkerState::standard();
        s.advance(&make_phase_coin(0.5, 0.0).unwrap());
        let dist = position_distribution(&s);
        assert_eq!(dist.keys().copied().collect::<Vec<_>>(), vec![-1, 1]);
        assert_abs_diff_eq!(dist[&-1], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(dist[&1], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(expectation_position(&s), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn point_mass_expectation() {
        let t = 3;
        let mut left = vec![c(0.0, 0.0); 7];
        let right = vec![c(0.0, 0.0); 7];
        left[6] = c(0.0, 1.0);
        let s = WalkerState::from_amplitudes(t, left, right).unwrap();
        assert_eq!(expectation_position(&s), 3.0);
        assert_eq!(position_distribution(&s).into_iter().collect::<Vec<_>>(), vec![(3, 1.0)]);
    }

    #[test]
    fn from_amplitudes_rejects_bad_input() {
        let z = c(0.0, 0.0);
        assert!(WalkerState::from_amplitudes(1, vec![z; 2], vec![z; 3]).is_err());
        // wrong parity: x = 0 at t = 1
        let mut left = vec![z; 3];
        left[1] = c(1.0, 0.0);
        assert!(WalkerState::from_amplitudes(1, left, vec![z; 3]).is_err());
        // not normalised
        let mut left = vec![z; 3];
        left[0] = c(0.5, 0.0);
        assert!(WalkerState::from_amplitudes(1, left, vec![z; 3]).is_err());
    }

    #[test]
    fn global_phase_quarter_turns_are_exact() {
        let coin = make_phase_coin(0.5, 0.37).unwrap();
        let mut s = WalkerState::standard();
        for _ in 0..40 {
            s.advance(&coin);
        }
        let base_dist = position_distribution(&s);
        let base_x = expectation_position(&s);
        for z in [c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0)] {
            let t = s.scaled(z);
            assert_eq!(position_distribution(&t), base_dist);
            assert_eq!(expectation_position(&t), base_x);
        }
    }

    proptest! {
        #[test]
        fn global_phase_leaves_observables_unchanged(gamma in -PI..PI, alpha in -1.5f64..1.5, steps in 0usize..60) {
            let coin = make_phase_coin(0.5, alpha).unwrap();
            let mut s = WalkerState::standard();
            for _ in 0..steps {
                s.advance(&coin);
            }
            let t = s.scaled(Complex64::from_polar(1.0, gamma));
            let (a, b) = (position_distribution(&s), position_distribution(&t));
            for (x, p) in &a {
                prop_assert!((p - b.get(x).copied().unwrap_or(0.0)).abs() < 1e-15);
            }
            prop_assert!((expectation_position(&s) - expectation_position(&t)).abs() < 1e-13);
        }

        #[test]
        fn support_has_time_parity(alpha in -1.5f64..1.5, steps in 0usize..80) {
            let coin = make_phase_coin(0.5, alpha).unwrap();
            let mut s = WalkerState::standard();
            for _ in 0..steps {
                s.advance(&coin);
            }
            let dist = position_distribution(&s);
            let total: f64 = dist.values().sum();
            prop_assert!((total - 1.0).abs() < 1e-10);
            for x in dist.keys() {
                prop_assert_eq!((x - steps as i64).rem_euclid(2), 0);
                prop_assert!(x.abs() <= steps as i64);
            }
        }
    }
}
