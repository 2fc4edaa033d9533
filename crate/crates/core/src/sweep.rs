//! Grid sweeps over the phase plane and screening of periodic sequences.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::coin::{Game, PhasePair};
use crate::error::{Result, WalkError};
use crate::evolution::{final_expectation, GameSequence};

/// Inclusive uniform grid over `(alpha, beta)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseGrid {
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub beta_min: f64,
    pub beta_max: f64,
    pub n_alpha: usize,
    pub n_beta: usize,
}

impl Default for PhaseGrid {
    /// `[0, 0.2] x [0, 0.2]` with 81 points per axis.
    fn default() -> Self {
        Self { alpha_min: 0.0, alpha_max: 0.2, beta_min: 0.0, beta_max: 0.2, n_alpha: 81, n_beta: 81 }
    }
}

impl PhaseGrid {
    pub fn validate(&self) -> Result<()> {
        let axis = |name: &str, lo: f64, hi: f64, n: usize| {
            if !(lo.is_finite() && hi.is_finite()) {
                return Err(WalkError::InvalidGrid(format!("{name} bounds must be finite")));
            }
            if lo >= hi {
                return Err(WalkError::InvalidGrid(format!("{name}_min ({lo}) must be below {name}_max ({hi})")));
            }
            if n < 2 {
                return Err(WalkError::InvalidGrid(format!("n_{name} must be at least 2, got {n}")));
            }
            Ok(())
        };
        axis("alpha", self.alpha_min, self.alpha_max, self.n_alpha)?;
        axis("beta", self.beta_min, self.beta_max, self.n_beta)
    }

    pub fn alpha(&self, i: usize) -> f64 {
        self.alpha_min + i as f64 * (self.alpha_max - self.alpha_min) / (self.n_alpha - 1) as f64
    }

    pub fn beta(&self, j: usize) -> f64 {
        self.beta_min + j as f64 * (self.beta_max - self.beta_min) / (self.n_beta - 1) as f64
    }

    pub fn cell_count(&self) -> usize {
        self.n_alpha * self.n_beta
    }
}

/// A phase grid bound to a sequence and a step count.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    pub phases: PhaseGrid,
    pub sequence: GameSequence,
    pub steps: usize,
}

impl SweepGrid {
    pub fn new(phases: PhaseGrid, sequence: GameSequence, steps: usize) -> Result<Self> {
        let grid = Self { phases, sequence, steps };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<()> {
        self.phases.validate()?;
        if self.steps == 0 {
            return Err(WalkError::ZeroSteps);
        }
        Ok(())
    }
}

/// `<x>` at every grid point, stored row-major with alpha as the outer index.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub grid: SweepGrid,
    values: Vec<f64>,
}

/// One grid cell of a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub alpha: f64,
    pub beta: f64,
    pub exp_x: f64,
}

impl SweepResult {
    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.grid.phases.n_beta + j]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        let g = self.grid.phases;
        self.values.iter().enumerate().map(move |(k, &exp_x)| Cell {
            alpha: g.alpha(k / g.n_beta),
            beta: g.beta(k % g.n_beta),
            exp_x,
        })
    }

    /// Largest cell, first in row-major order on ties.
    pub fn max_cell(&self) -> Cell {
        self.cells()
            .reduce(|best, c| if c.exp_x > best.exp_x { c } else { best })
            .expect("grids have at least four cells")
    }
}

/// How many workers a sweep may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Workers {
    /// Plain sequential loop.
    Serial,
    /// A dedicated pool with this many threads.
    Threads(usize),
    /// The global rayon pool.
    Available,
}

impl Workers {
    pub fn from_count(n: usize) -> Self {
        if n <= 1 {
            Workers::Serial
        } else {
            Workers::Threads(n)
        }
    }
}

fn cell_value(grid: &SweepGrid, k: usize) -> f64 {
    let p = &grid.phases;
    let phases = PhasePair::new(p.alpha(k / p.n_beta), p.beta(k % p.n_beta));
    final_expectation(&grid.sequence, phases, grid.steps).expect("steps validated")
}

/// Evaluates `<x>` after `grid.steps` steps at every grid point. Each cell is
/// computed independently, so the result does not depend on `workers`.
pub fn sweep(grid: &SweepGrid, workers: Workers) -> Result<SweepResult> {
    grid.validate()?;
    let n = grid.phases.cell_count();
    let mut values = vec![0.0; n];
    let fill = |values: &mut [f64]| {
        values.par_iter_mut().enumerate().for_each(|(k, v)| *v = cell_value(grid, k));
    };
    match workers {
        Workers::Serial => values.iter_mut().enumerate().for_each(|(k, v)| *v = cell_value(grid, k)),
        Workers::Available => fill(&mut values),
        Workers::Threads(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| WalkError::InvalidGrid(format!("cannot start {t} workers: {e}")))?;
            pool.install(|| fill(&mut values));
        }
    }
    Ok(SweepResult { grid: grid.clone(), values })
}

/// Cells strictly above `threshold`, ordered by alpha then beta.
pub fn positive_region(result: &SweepResult, threshold: f64) -> Vec<Cell> {
    // Row-major order is already (alpha, beta) ascending.
    result.cells().filter(|c| c.exp_x > threshold).collect()
}

fn primitive_root(word: &[Game]) -> &[Game] {
    let n = word.len();
    (1..=n)
        .filter(|&p| n.is_multiple_of(p))
        .find(|&p| (p..n).all(|i| word[i] == word[i - p]))
        .map(|p| &word[..p])
        .unwrap_or(word)
}

fn least_rotation(word: &[Game]) -> Vec<Game> {
    (0..word.len())
        .map(|r| word[r..].iter().chain(&word[..r]).copied().collect::<Vec<_>>())
        .min()
        .expect("nonempty word")
}

/// Canonical periodic sequences of period at most `max_len`.
///
/// Words are reduced to their primitive period and identified up to cyclic
/// rotation; each class is represented by its lexicographically least
/// rotation. The all-B word is dropped since exchanging the games maps it
/// onto the all-A word. Output is ordered by length, then lexicographically.
pub fn enumerate_sequences(max_len: usize) -> Result<Vec<GameSequence>> {
    if !(1..=8).contains(&max_len) {
        return Err(WalkError::MaxLenOutOfRange(max_len));
    }
    let mut classes = BTreeSet::new();
    for len in 1..=max_len {
        for bits in 0u32..(1 << len) {
            let word: Vec<Game> = (0..len)
                .map(|i| if bits >> (len - 1 - i) & 1 == 1 { Game::B } else { Game::A })
                .collect();
            let canon = least_rotation(primitive_root(&word));
            if canon.iter().all(|&g| g == Game::B) {
                continue;
            }
            classes.insert((canon.len(), canon));
        }
    }
    classes.into_iter().map(|(_, w)| GameSequence::new(w)).collect()
}

/// Outcome of screening one sequence over a phase grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ScreenEntry {
    pub sequence: GameSequence,
    pub steps: usize,
    /// Largest `<x>` over cells with `alpha > 0` and `beta > 0`.
    pub max_exp_x: f64,
    pub argmax: Cell,
    pub positive_cells: usize,
    pub has_positive: bool,
}

/// Largest multiple of `period` not exceeding `target` (at least one period).
pub fn screen_steps(period: usize, target: usize) -> usize {
    (target / period).max(1) * period
}

/// Sweeps every canonical sequence up to `max_len` over `phases`, each for
/// the largest whole number of periods within `target_steps`, and reports
/// whether any cell with both phases positive ends with `<x> > 0`.
pub fn parrondo_screen(max_len: usize, phases: PhaseGrid, target_steps: usize, workers: Workers) -> Result<Vec<ScreenEntry>> {
    phases.validate()?;
    if target_steps == 0 {
        return Err(WalkError::ZeroSteps);
    }
    enumerate_sequences(max_len)?
        .into_iter()
        .map(|sequence| {
            let steps = screen_steps(sequence.len(), target_steps);
            let grid = SweepGrid::new(phases, sequence, steps)?;
            let result = sweep(&grid, workers)?;
            let interior: Vec<Cell> = result.cells().filter(|c| c.alpha > 0.0 && c.beta > 0.0).collect();
            let argmax = interior
                .iter()
                .copied()
                .reduce(|best, c| if c.exp_x > best.exp_x { c } else { best })
                .ok_or_else(|| WalkError::InvalidGrid("grid has no cell with alpha > 0 and beta > 0".into()))?;
            let positive_cells = interior.iter().filter(|c| c.exp_x > 0.0).count();
            Ok(ScreenEntry {
                sequence: grid.sequence,
                steps,
                max_exp_x: argmax.exp_x,
                argmax,
                positive_cells,
                has_positive: positive_cells > 0,
            })
        })
        .collect()
}
