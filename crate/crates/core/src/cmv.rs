//! The five-diagonal unitary matrix attached to a coin parameter sequence,
//! and its correspondence with the squared walk operator.
//!
//! The matrix is built from the block factorization `C = L * M` with
//! `L = diag(Theta_0, Theta_2, ...)`, `M = diag(1, Theta_1, Theta_3, ...)`,
//! where `Theta_j` is the 2x2 unitary
//!
//! ```text
//! Theta_j = [ conj(gamma_j)   rho_j ]
//!           [ rho_j        -gamma_j ]
//! ```
//!
//! The factorized product is taken as the definition; banded storage keeps
//! two diagonals on each side.

use num_complex::Complex64;

use crate::coin::{build_coin, rho_of, CoinSequence};
use crate::error::{Error, Result};
use crate::mat2::{Mat2, C64};

/// The 2x2 rotation block of one parameter.
pub fn theta_block(gamma: C64) -> Mat2 {
    let rho = C64::new(rho_of(gamma), 0.0);
    Mat2::new(gamma.conj(), rho, rho, -gamma)
}

/// Banded unitary matrix of size `2M + 1` with bandwidth 2.
#[derive(Clone, Debug)]
pub struct CMVMatrix {
    size: usize,
    /// `band[i][k]` holds entry `(i, i - 2 + k)`.
    band: Vec<[C64; 5]>,
}

impl CMVMatrix {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entry(&self, i: usize, j: usize) -> C64 {
        let d = j as i64 - i as i64;
        if d.abs() <= 2 {
            self.band[i][(d + 2) as usize]
        } else {
            C64::ZERO
        }
    }

    /// Largest deviation of the inner rows (2 away from each truncation
    /// edge) from orthonormality.
    pub fn interior_unitarity_residual(&self) -> f64 {
        let n = self.size;
        let mut worst = 0.0f64;
        for i in 2..n.saturating_sub(2) {
            for i2 in i..n.saturating_sub(2) {
                let mut dot = C64::ZERO;
                let lo = i2.saturating_sub(2);
                let hi = (i + 2).min(n - 1);
                for j in lo..=hi {
                    dot += self.entry(i, j) * self.entry(i2, j).conj();
                }
                let target = if i == i2 { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).norm());
            }
        }
        worst
    }
}

/// Block-diagonal application helper: the dense `(2M+1) x (2M+1)` matrices
/// `L` and `M` as banded products.
fn block_diag(blocks_start: usize, gammas: &[C64], size: usize) -> Vec<Vec<C64>> {
    let mut m = vec![vec![C64::ZERO; size]; size];
    for d in 0..blocks_start {
        m[d][d] = C64::new(1.0, 0.0);
    }
    let mut row = blocks_start;
    let mut b = 0usize;
    while row < size {
        if row + 1 < size {
            let th = theta_block(gammas[b]);
            m[row][row] = th.0[0][0];
            m[row][row + 1] = th.0[0][1];
            m[row + 1][row] = th.0[1][0];
            m[row + 1][row + 1] = th.0[1][1];
        } else {
            // Truncated final block: keep the (0,0) corner so the matrix
            // stays square; only interior rows carry unitarity claims.
            m[row][row] = theta_block(gammas[b]).0[0][0];
        }
        row += 2;
        b += 1;
    }
    m
}

/// Builds the banded matrix for parameters `gamma_0 .. gamma_{2M}` from the
/// coin sequence. Interior parameters must satisfy `|gamma| < 1`.
pub fn build_cmv(coins: &CoinSequence, m: usize) -> Result<CMVMatrix> {
    if m < 1 {
        return Err(Error::Invalid("half-size M must be at least 1".into()));
    }
    let size = 2 * m + 1;
    let gammas: Vec<C64> = (0..size as i64).map(|j| coins.gamma(j)).collect();
    for (j, g) in gammas.iter().enumerate() {
        if g.norm() >= 1.0 {
            return Err(Error::Invalid(format!(
                "interior parameter at index {j} has magnitude {} >= 1",
                g.norm()
            )));
        }
    }
    let even: Vec<C64> = gammas.iter().copied().step_by(2).collect();
    let odd: Vec<C64> = gammas.iter().copied().skip(1).step_by(2).collect();
    let l = block_diag(0, &even, size);
    let mm = block_diag(1, &odd, size);

    let mut band = vec![[C64::ZERO; 5]; size];
    for i in 0..size {
        for j in 0..size {
            let mut acc = C64::ZERO;
            for k in j.saturating_sub(2)..=(j + 2).min(size - 1) {
                acc += l[i][k] * mm[k][j];
            }
            if acc.norm() > 0.0 {
                let d = j as i64 - i as i64;
                if d.abs() > 2 {
                    return Err(Error::Invalid(format!(
                        "factorized product left the band at ({i}, {j})"
                    )));
                }
                band[i][(d + 2) as usize] = acc;
            }
        }
    }
    Ok(CMVMatrix { size, band })
}

/// Dense one-step operator of the second-kind half-line walk, on the basis
/// `(0,L), (1,L), (1,R), (2,L), (2,R), ...` with `sites` lattice sites. The
/// coin at site `j >= 1` is the sequence parameter `a_{j-1}`; the origin coin
/// is the boundary rotation (`gamma = -1`).
fn h2_unitary(coins: &CoinSequence, sites: usize) -> Vec<Vec<C64>> {
    let dim = 2 * sites - 1;
    let idx_l = |j: usize| if j == 0 { 0 } else { 2 * j - 1 };
    let idx_r = |j: usize| 2 * j; // j >= 1
    let mut u = vec![vec![C64::ZERO; dim]; dim];
    for j in 0..sites {
        let gamma = if j == 0 {
            Complex64::new(-1.0, 0.0)
        } else {
            coins.gamma(j as i64 - 1)
        };
        let h = build_coin(gamma).expect("|gamma| <= 1").0;
        for x in 0..2usize {
            // Column of U for basis vector (j, x); x = 0 is L, x = 1 is R.
            if j == 0 && x == 1 {
                continue; // (0, R) is outside the invariant subspace
            }
            let src = if x == 0 { idx_l(j) } else { idx_r(j) };
            let coined = h.apply(if x == 0 {
                [C64::new(1.0, 0.0), C64::ZERO]
            } else {
                [C64::ZERO, C64::new(1.0, 0.0)]
            });
            // Leftward output moves to site j-1 (absent at the origin where
            // the boundary coin makes it vanish on the invariant subspace).
            if j >= 1 {
                u[idx_l(j - 1)][src] += coined[0];
            }
            // Rightward output moves to site j+1.
            if j + 1 < sites {
                u[idx_r(j + 1)][src] += coined[1];
            }
        }
    }
    u
}

/// Residual of the correspondence between the squared walk operator and the
/// banded matrix: `U^2` restricted to the even subspace (basis `(0,L),
/// (2,R), (2,L), (4,R), (4,L), ...`) is compared entrywise with `C`, and its
/// restriction to the odd subspace (basis `(1,R), (1,L), (3,R), (3,L), ...`)
/// with the transpose of `C`, over an inner window of `m` rows.
pub fn cmv_walk_correspondence(coins: &CoinSequence, m: usize) -> Result<f64> {
    let c = build_cmv(coins, 2 * m)?;
    let sites = 4 * m + 4;
    let u = h2_unitary(coins, sites);
    let dim = 2 * sites - 1;
    // U^2 as a sparse-ish dense product (U has at most 2 entries per column).
    let mut u2 = vec![vec![C64::ZERO; dim]; dim];
    for col in 0..dim {
        for mid in 0..dim {
            let v = u[mid][col];
            if v.norm() > 0.0 {
                for row in mid.saturating_sub(3)..(mid + 4).min(dim) {
                    let w = u[row][mid];
                    if w.norm() > 0.0 {
                        u2[row][col] += w * v;
                    }
                }
            }
        }
    }
    let idx_l = |j: usize| if j == 0 { 0 } else { 2 * j - 1 };
    let idx_r = |j: usize| 2 * j;
    // Even basis: e_0 = (0,L); e_{2k-1} = (2k,R), e_{2k} = (2k,L).
    let even_idx = |k: usize| -> usize {
        if k == 0 {
            idx_l(0)
        } else if k % 2 == 1 {
            idx_r(k + 1)
        } else {
            idx_l(k)
        }
    };
    // Odd basis: e_{2k} = (2k+1,R), e_{2k+1} = (2k+1,L).
    let odd_idx = |k: usize| -> usize {
        let site = 2 * (k / 2) + 1;
        if k % 2 == 0 {
            idx_r(site)
        } else {
            idx_l(site)
        }
    };
    let window = m; // inner rows, well inside both truncations
    let mut worst = 0.0f64;
    for i in 0..window {
        for j in 0..window {
            let d_even = (u2[even_idx(i)][even_idx(j)] - c.entry(i, j)).norm();
            let d_odd = (u2[odd_idx(i)][odd_idx(j)] - c.entry(j, i)).norm();
            worst = worst.max(d_even).max(d_odd);
        }
    }
    Ok(worst)
}
