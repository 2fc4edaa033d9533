//! Time evolution under periodic game sequences.
//!
//! One letter of a sequence is one time step: at global step `k` (0-based)
//! the coin of game `letters[k % len]` is applied, followed by the
//! conditional shift.

use std::fmt;
use std::str::FromStr;

use crate::coin::{game_coin, CoinOperator, Game, PhasePair};
use crate::error::{Result, WalkError};
use crate::state::{expectation_position, WalkerState};

/// A nonempty word over `{A, B}`, played periodically starting with its
/// first letter.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GameSequence(Vec<Game>);

impl GameSequence {
    pub fn new(games: Vec<Game>) -> Result<Self> {
        if games.is_empty() {
            return Err(WalkError::EmptySequence);
        }
        Ok(Self(games))
    }

    pub fn games(&self) -> &[Game] {
        &self.0
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Game played at global step `k`.
    pub fn game_at(&self, k: usize) -> Game {
        self.0[k % self.0.len()]
    }

    /// The same word with A and B exchanged.
    pub fn swapped(&self) -> Self {
        Self(self.0.iter().map(|g| g.swapped()).collect())
    }
}

impl FromStr for GameSequence {
    type Err = WalkError;

    fn from_str(s: &str) -> Result<Self> {
        let games = s
            .chars()
            .enumerate()
            .map(|(position, letter)| match letter {
                'A' => Ok(Game::A),
                'B' => Ok(Game::B),
                _ => Err(WalkError::InvalidLetter { letter, position }),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(games)
    }
}

impl fmt::Display for GameSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|g| write!(f, "{}", g.letter()))
    }
}

/// One coin-then-shift step.
pub fn step(state: &WalkerState, coin: &CoinOperator) -> WalkerState {
    let mut next = state.clone();
    next.advance(coin);
    next
}

/// Advances `state` by `steps` steps, taking the coin for each global step
/// (counted from the start of this call) from `coin_at`.
pub fn evolve_with<F>(state: &WalkerState, steps: usize, mut coin_at: F) -> WalkerState
where
    F: FnMut(usize) -> CoinOperator,
{
    let mut s = state.clone();
    for k in 0..steps {
        s.advance(&coin_at(k));
    }
    s
}

/// Plays `sequence` for `steps` steps from `state`.
pub fn evolve(state: &WalkerState, sequence: &GameSequence, phases: PhasePair, steps: usize) -> Result<WalkerState> {
    if steps == 0 {
        return Err(WalkError::ZeroSteps);
    }
    let coins = [game_coin(Game::A, phases), game_coin(Game::B, phases)];
    let pick = |g: Game| coins[g as usize];
    Ok(evolve_with(state, steps, |k| pick(sequence.game_at(k))))
}

/// Final expectation `<x>` after `steps` steps from the standard initial
/// state, without materialising the series.
pub fn final_expectation(sequence: &GameSequence, phases: PhasePair, steps: usize) -> Result<f64> {
    evolve(&WalkerState::standard(), sequence, phases, steps).map(|s| expectation_position(&s))
}

/// `(t, <x>(t))` for `t = 1..=t_max`, evolving one state from the standard
/// initial state.
pub fn expectation_series(sequence: &GameSequence, phases: PhasePair, t_max: usize) -> Result<Vec<(usize, f64)>> {
    if t_max == 0 {
        return Err(WalkError::ZeroSteps);
    }
    let coins = [game_coin(Game::A, phases), game_coin(Game::B, phases)];
    let mut state = WalkerState::standard();
    let mut out = Vec::with_capacity(t_max);
    for k in 0..t_max {
        state.advance(&coins[sequence.game_at(k) as usize]);
        out.push((state.time(), expectation_position(&state)));
    }
    Ok(out)
}
