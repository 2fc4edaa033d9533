//! Dense-matrix reference evolution for small step counts.
//!
//! Nothing here goes through [`WalkerState::advance`]: each step is an
//! explicit `2(2s+1)`-dimensional matrix `shift * (I_P ⊗ U)` on the ring
//! `[-s, s]`, the steps are composed by naive matrix products, and the
//! product is applied to the initial vector once. The ring closes the
//! lattice so that every step matrix is unitary; the walker cannot reach the
//! seam within `s` steps.

use num_complex::Complex64;

use crate::coin::{game_coin, Chirality, CoinOperator, PhasePair};
use crate::error::{Result, WalkError};
use crate::evolution::GameSequence;
use crate::state::{InitialStateSpec, WalkerState};

/// Largest step count accepted by the oracle.
pub const MAX_ORACLE_STEPS: usize = 12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Initial state for [`dense_oracle_evolve`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OracleStart {
    Standard,
    General(InitialStateSpec),
}

/// Row-major square complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![ZERO; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mul(&self, rhs: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = ZERO;
                for k in 0..n {
                    acc += self[(i, k)] * rhs[(k, j)];
                }
                out[(i, j)] = acc;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.dim, v.len());
        (0..self.dim)
            .map(|i| (0..self.dim).map(|k| self[(i, k)] * v[k]).sum())
            .collect()
    }

    pub fn adjoint(&self) -> DenseMatrix {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    /// Largest entrywise deviation of `M^dagger M` from the identity.
    pub fn unitarity_deviation(&self) -> f64 {
        let p = self.adjoint().mul(self);
        let id = Self::identity(self.dim);
        p.data.iter().zip(&id.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

impl std::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

/// Basis index of `|x, c>` on the ring `[-s, s]`.
fn basis_index(x: i64, c: Chirality, half_width: usize) -> usize {
    let sites = 2 * half_width as i64 + 1;
    let site = (x + half_width as i64).rem_euclid(sites) as usize;
    2 * site + c.index()
}

fn kron_identity_coin(coin: &CoinOperator, sites: usize) -> DenseMatrix {
    let m = coin.matrix();
    let mut out = DenseMatrix::zeros(2 * sites);
    for site in 0..sites {
        for a in 0..2 {
            for b in 0..2 {
                out[(2 * site + a, 2 * site + b)] = m[a][b];
            }
        }
    }
    out
}

fn conditional_shift(half_width: usize) -> DenseMatrix {
    let mut out = DenseMatrix::zeros(2 * (2 * half_width + 1));
    let hw = half_width as i64;
    for x in -hw..=hw {
        let from_r = basis_index(x, Chirality::R, half_width);
        let from_l = basis_index(x, Chirality::L, half_width);
        out[(basis_index(x + 1, Chirality::R, half_width), from_r)] = ONE;
        out[(basis_index(x - 1, Chirality::L, half_width), from_l)] = ONE;
    }
    out
}

/// Explicit single-step unitary `shift * (I ⊗ coin)` on the ring `[-s, s]`.
pub fn oracle_step_matrix(coin: &CoinOperator, half_width: usize) -> DenseMatrix {
    conditional_shift(half_width).mul(&kron_identity_coin(coin, 2 * half_width + 1))
}

/// Product of all step matrices for `steps` steps of `sequence`, on the
/// ring of half-width `steps`.
pub fn oracle_evolution_matrix(sequence: &GameSequence, phases: PhasePair, steps: usize) -> Result<DenseMatrix> {
    if steps > MAX_ORACLE_STEPS {
        return Err(WalkError::OracleTooLarge { steps, max: MAX_ORACLE_STEPS });
    }
    let mut total = DenseMatrix::identity(2 * (2 * steps + 1));
    for k in 0..steps {
        let coin = game_coin(sequence.game_at(k), phases);
        total = oracle_step_matrix(&coin, steps).mul(&total);
    }
    Ok(total)
}

/// Reference evolution from `start` through `steps` steps of `sequence`.
pub fn dense_oracle_evolve(
    start: OracleStart,
    sequence: &GameSequence,
    phases: PhasePair,
    steps: usize,
) -> Result<WalkerState> {
    let total = oracle_evolution_matrix(sequence, phases, steps)?;
    let (a_r, a_l) = match start {
        OracleStart::Standard => {
            let h = std::f64::consts::FRAC_1_SQRT_2;
            (Complex64::new(-h, 0.0), Complex64::new(h, 0.0))
        }
        OracleStart::General(spec) => {
            let spec = InitialStateSpec::new(spec.eta, spec.mu)?;
            (
                Complex64::new(spec.eta.sqrt(), 0.0),
                Complex64::from_polar((1.0 - spec.eta).sqrt(), spec.mu),
            )
        }
    };
    let mut psi = vec![ZERO; total.dim()];
    psi[basis_index(0, Chirality::R, steps)] = a_r;
    psi[basis_index(0, Chirality::L, steps)] = a_l;
    let out = total.mul_vec(&psi);

    let hw = steps as i64;
    let left = (-hw..=hw).map(|x| out[basis_index(x, Chirality::L, steps)]).collect();
    let right = (-hw..=hw).map(|x| out[basis_index(x, Chirality::R, steps)]).collect();
    WalkerState::from_amplitudes(steps, left, right)
}
