//! Two-level coin operators acting on the chirality space.
//!
//! Matrices are written in the basis order `(R, L)`: row and column 0 is the
//! right-moving chirality, row and column 1 the left-moving one, and columns
//! are indexed by the input chirality. With this order the unbiased coin
//! `make_phase_coin(0.5, 0.0)` sends `|L> -> (|L> + i|R>)/sqrt(2)` and
//! `|R> -> (i|L> + |R>)/sqrt(2)`, and a positive phase `alpha` biases the
//! walker towards negative positions.

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Result, WalkError};

/// Tolerance used when validating unitarity of a coin.
pub const UNITARY_TOLERANCE: f64 = 1e-12;

/// Internal degree of freedom of the walker.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Chirality {
    R,
    L,
}

impl Chirality {
    /// Row/column index of this chirality in a coin matrix.
    pub const fn index(self) -> usize {
        match self {
            Chirality::R => 0,
            Chirality::L => 1,
        }
    }
}

/// One of the two games. Each game is a phase coin with `rho = 1/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Game {
    A,
    B,
}

impl Game {
    pub fn letter(self) -> char {
        match self {
            Game::A => 'A',
            Game::B => 'B',
        }
    }

    pub fn swapped(self) -> Game {
        match self {
            Game::A => Game::B,
            Game::B => Game::A,
        }
    }
}

/// Phases `(alpha, beta)` of games A and B, in radians.
///
/// Any real value is accepted; the canonical range `[-pi/2, pi/2]` is only
/// checked by [`PhasePair::in_canonical_range`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePair {
    pub alpha: f64,
    pub beta: f64,
}

impl PhasePair {
    pub const fn new(alpha: f64, beta: f64) -> Self {
        Self { alpha, beta }
    }

    /// Both games share one phase, which collapses any sequence to game A.
    pub const fn single(alpha: f64) -> Self {
        Self { alpha, beta: alpha }
    }

    pub fn swapped(self) -> Self {
        Self { alpha: self.beta, beta: self.alpha }
    }

    pub fn negated(self) -> Self {
        Self { alpha: -self.alpha, beta: -self.beta }
    }

    pub fn phase_of(self, game: Game) -> f64 {
        match game {
            Game::A => self.alpha,
            Game::B => self.beta,
        }
    }

    pub fn in_canonical_range(self) -> bool {
        let ok = |p: f64| (-FRAC_PI_2..=FRAC_PI_2).contains(&p);
        ok(self.alpha) && ok(self.beta)
    }
}

/// A 2x2 unitary on the chirality space. Construction always validates
/// unitarity, so every value of this type is a valid coin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinOperator {
    m: [[Complex64; 2]; 2],
}

impl CoinOperator {
    /// Wraps an explicit matrix (basis order `(R, L)`), rejecting it unless
    /// `U^dagger U = I` holds entrywise within [`UNITARY_TOLERANCE`].
    pub fn from_matrix(m: [[Complex64; 2]; 2]) -> Result<Self> {
        let coin = Self { m };
        let dev = coin.unitarity_deviation();
        if dev.is_finite() && dev <= UNITARY_TOLERANCE {
            Ok(coin)
        } else {
            Err(WalkError::NonUnitaryCoin(dev))
        }
    }

    pub fn matrix(&self) -> [[Complex64; 2]; 2] {
        self.m
    }

    /// Amplitude sent from chirality `input` to chirality `output`.
    pub fn entry(&self, output: Chirality, input: Chirality) -> Complex64 {
        self.m[output.index()][input.index()]
    }

    /// Applies the coin to one site's amplitudes, returning `(a_R, a_L)`.
    #[inline]
    pub fn apply(&self, right: Complex64, left: Complex64) -> (Complex64, Complex64) {
        (
            self.m[0][0] * right + self.m[0][1] * left,
            self.m[1][0] * right + self.m[1][1] * left,
        )
    }

    pub fn determinant(&self) -> Complex64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn adjoint(&self) -> [[Complex64; 2]; 2] {
        let m = &self.m;
        [[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]]
    }

    /// Largest entrywise deviation of `U^dagger U` from the identity.
    pub fn unitarity_deviation(&self) -> f64 {
        let a = self.adjoint();
        let mut worst = 0.0f64;
        for (i, row) in a.iter().enumerate() {
            for j in 0..2 {
                let p = row[0] * self.m[0][j] + row[1] * self.m[1][j];
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((p - target).norm());
            }
        }
        worst
    }

    /// Multiplies every entry by a unit-modulus scalar (an overall phase).
    pub fn with_global_phase(&self, phase: f64) -> Self {
        let z = Complex64::from_polar(1.0, phase);
        let mut m = self.m;
        m.iter_mut().flatten().for_each(|e| *e *= z);
        Self { m }
    }

    /// Largest entrywise distance to another coin.
    pub fn max_abs_diff(&self, other: &CoinOperator) -> f64 {
        self.m
            .iter()
            .flatten()
            .zip(other.m.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl fmt::Display for CoinOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.m;
        write!(f, "[[{}, {}], [{}, {}]]", m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

fn check_rho(rho: f64) -> Result<()> {
    if (0.0..=1.0).contains(&rho) {
        Ok(())
    } else {
        Err(WalkError::RhoOutOfRange(rho))
    }
}

/// The most general coin up to an overall phase:
/// `[[sqrt(rho), e^{i theta} sqrt(1-rho)], [e^{i phi} sqrt(1-rho), -e^{i(theta+phi)} sqrt(rho)]]`.
pub fn make_general_coin(rho: f64, theta: f64, phi: f64) -> Result<CoinOperator> {
    check_rho(rho)?;
    let diag = rho.sqrt();
    let off = (1.0 - rho).sqrt();
    let m = [
        [Complex64::new(diag, 0.0), Complex64::from_polar(off, theta)],
        [Complex64::from_polar(off, phi), -Complex64::from_polar(diag, theta + phi)],
    ];
    CoinOperator::from_matrix(m)
}

/// The symmetric phase coin
/// `[[e^{i alpha} sqrt(rho), i sqrt(1-rho)], [i sqrt(1-rho), e^{-i alpha} sqrt(rho)]]`.
pub fn make_phase_coin(rho: f64, alpha: f64) -> Result<CoinOperator> {
    check_rho(rho)?;
    let diag = rho.sqrt();
    let off = Complex64::new(0.0, (1.0 - rho).sqrt());
    let m = [
        [Complex64::from_polar(diag, alpha), off],
        [off, Complex64::from_polar(diag, -alpha)],
    ];
    CoinOperator::from_matrix(m)
}

/// Coin of game A (phase `alpha`) or game B (phase `beta`), both at `rho = 1/2`.
pub fn game_coin(game: Game, phases: PhasePair) -> CoinOperator {
    make_phase_coin(0.5, phases.phase_of(game)).expect("rho = 1/2 is always valid")
}
