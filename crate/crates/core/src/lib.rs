//! Discrete-time quantum walks on the integer line driven by phase-biased
//! coins, played as periodic sequences of two "games" A and B.
//!
//! A walker carries a chirality (`R` or `L`). Each step applies a 2x2 coin
//! to the chirality at every site, then moves `R` components one site to the
//! right and `L` components one site to the left. Game A uses the phase coin
//! with phase `alpha`, game B the one with phase `beta`. A positive phase
//! pushes the walker towards negative positions; the interesting question is
//! whether some interleavings of two such losing games push it right.
//!
//! ```
//! use parrondo_walk::{expectation_series, GameSequence, PhasePair};
//!
//! let seq: GameSequence = "ABB".parse().unwrap();
//! let series = expectation_series(&seq, PhasePair::new(0.005, 0.03), 99).unwrap();
//! assert_eq!(series.len(), 99);
//! ```

pub mod analysis;
pub mod coin;
pub mod error;
pub mod evolution;
pub mod oracle;
pub mod state;
pub mod sweep;

pub use analysis::{compare_to_game_a, diagnose, diagnose_with, DiagnoseOptions, SeriesDiagnostics};
pub use coin::{game_coin, make_general_coin, make_phase_coin, Chirality, CoinOperator, Game, PhasePair};
pub use error::{Result, WalkError};
pub use evolution::{evolve, evolve_with, expectation_series, final_expectation, step, GameSequence};
pub use oracle::{dense_oracle_evolve, OracleStart, MAX_ORACLE_STEPS};
pub use state::{expectation_position, position_distribution, InitialStateSpec, WalkerState};
pub use sweep::{
    enumerate_sequences, parrondo_screen, positive_region, screen_steps, sweep, Cell, PhaseGrid, ScreenEntry,
    SweepGrid, SweepResult, Workers,
};
