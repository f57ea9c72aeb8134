//! Atomic density matrices in excitation-number block form, the initial
//! states of interest, and the darkness residual.
//!
//! Coherences between sectors with different excitation numbers are never
//! created by the dynamics and are not stored; each sector carries a dense
//! Hermitian block.

use std::io::Write;

use ndarray::Array2;

use crate::basis::{binomial, BlockBasis};
use crate::couplings::CouplingSet;
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{Scalar, C};

/// Density matrix stored as one complex block per excitation sector.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockDensityMatrix<T: Scalar> {
    n_atoms: usize,
    blocks: Vec<Array2<C<T>>>,
}

impl<T: Scalar> BlockDensityMatrix<T> {
    /// All-zero blocks for `n_atoms` atoms.
    pub fn zeros(n_atoms: usize) -> Self {
        assert!(n_atoms >= 1);
        let blocks = (0..=n_atoms)
            .map(|n| {
                let d = binomial(n_atoms, n);
                Array2::zeros((d, d))
            })
            .collect();
        BlockDensityMatrix { n_atoms, blocks }
    }

    pub fn from_blocks(n_atoms: usize, blocks: Vec<Array2<C<T>>>) -> Result<Self> {
        if blocks.len() != n_atoms + 1 {
            return Err(Error::DimensionMismatch {
                context: "block density matrix",
                expected: n_atoms + 1,
                found: blocks.len(),
            });
        }
        for (n, b) in blocks.iter().enumerate() {
            let d = binomial(n_atoms, n);
            if b.nrows() != d || b.ncols() != d {
                return Err(Error::DimensionMismatch {
                    context: "block density matrix sector",
                    expected: d,
                    found: b.nrows(),
                });
            }
        }
        Ok(BlockDensityMatrix { n_atoms, blocks })
    }

    pub fn n_atoms(&self) -> usize {
        self.n_atoms
    }

    pub fn block(&self, n: usize) -> &Array2<C<T>> {
        &self.blocks[n]
    }

    pub fn block_mut(&mut self, n: usize) -> &mut Array2<C<T>> {
        &mut self.blocks[n]
    }

    pub fn blocks(&self) -> &[Array2<C<T>>] {
        &self.blocks
    }

    pub fn trace(&self) -> T {
        let mut acc = T::zero();
        for b in &self.blocks {
            for i in 0..b.nrows() {
                acc += b[(i, i)].re;
            }
        }
        acc
    }

    /// Expectation of the total excitation number.
    pub fn excitation_expectation(&self) -> T {
        let mut acc = T::zero();
        for (n, b) in self.blocks.iter().enumerate() {
            let mut tr = T::zero();
            for i in 0..b.nrows() {
                tr += b[(i, i)].re;
            }
            acc += T::of(n as f64) * tr;
        }
        acc
    }

    /// Largest deviation from Hermiticity over all blocks.
    pub fn hermiticity_error(&self) -> T {
        let mut worst = T::zero();
        for b in &self.blocks {
            for i in 0..b.nrows() {
                for j in i..b.ncols() {
                    let d = (b[(i, j)] - b[(j, i)].conj()).norm();
                    worst = worst.max(d);
                }
            }
        }
        worst
    }

    /// Smallest eigenvalue across all blocks (nonnegative for a physical
    /// state up to numerical noise).
    pub fn min_eigenvalue(&self) -> T {
        let mut min = T::infinity();
        for b in &self.blocks {
            if b.nrows() == 0 {
                continue;
            }
            let eigs = linalg::hermitian_eigenvalues(b);
            min = min.min(eigs[0]);
        }
        min
    }

    /// Frobenius norm over all stored entries.
    pub fn frobenius_norm(&self) -> T {
        self.blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|z| z.norm_sqr())
                    .fold(T::zero(), |acc, v| acc + v)
            })
            .fold(T::zero(), |acc, v| acc + v)
            .sqrt()
    }

    /// Embed into the full `2^N x 2^N` product-basis matrix.
    pub fn to_full(&self) -> Array2<C<T>> {
        let basis = BlockBasis::new(self.n_atoms);
        let dim = 1 << self.n_atoms;
        let mut full = Array2::zeros((dim, dim));
        for n in 0..=self.n_atoms {
            let masks = basis.sector_masks(n);
            let b = &self.blocks[n];
            for (r, &u) in masks.iter().enumerate() {
                for (c, &v) in masks.iter().enumerate() {
                    full[(u, v)] = b[(r, c)];
                }
            }
        }
        full
    }

    /// Extract the block-supported part of a full product-basis matrix.
    /// Lossless for matrices supported on the blocks.
    pub fn from_full(full: &Array2<C<T>>, n_atoms: usize) -> Result<Self> {
        let dim = 1usize << n_atoms;
        if full.nrows() != dim || full.ncols() != dim {
            return Err(Error::DimensionMismatch {
                context: "from_full",
                expected: dim,
                found: full.nrows(),
            });
        }
        let basis = BlockBasis::new(n_atoms);
        let mut out = Self::zeros(n_atoms);
        for n in 0..=n_atoms {
            let masks = basis.sector_masks(n);
            let b = out.block_mut(n);
            for (r, &u) in masks.iter().enumerate() {
                for (c, &v) in masks.iter().enumerate() {
                    b[(r, c)] = full[(u, v)];
                }
            }
        }
        Ok(out)
    }

    /// Text dump: `n=<k>` header per sector, then the block entries in
    /// `re+imj` form at 17 significant digits.
    pub fn write_dump<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        for (n, b) in self.blocks.iter().enumerate() {
            writeln!(w, "n={n}")?;
            for r in 0..b.nrows() {
                let mut line = String::new();
                for c in 0..b.ncols() {
                    if c > 0 {
                        line.push(' ');
                    }
                    let z = b[(r, c)];
                    let im = z.im.as_f64();
                    let sign = if im.is_sign_negative() { '-' } else { '+' };
                    line.push_str(&format!(
                        "{:.16e}{}{:.16e}j",
                        z.re.as_f64(),
                        sign,
                        im.abs()
                    ));
                }
                writeln!(w, "{line}")?;
            }
        }
        Ok(())
    }
}

/// `|e...e><e...e|`: the top sector is the 1x1 block `[1]`.
pub fn fully_excited_state<T: Scalar>(n_atoms: usize) -> BlockDensityMatrix<T> {
    assert!(n_atoms >= 1);
    let mut rho = BlockDensityMatrix::zeros(n_atoms);
    rho.block_mut(n_atoms)[(0, 0)] = C::new(T::one(), T::zero());
    rho
}

/// Ground state `|g...g><g...g|`.
pub fn ground_state<T: Scalar>(n_atoms: usize) -> BlockDensityMatrix<T> {
    assert!(n_atoms >= 1);
    let mut rho = BlockDensityMatrix::zeros(n_atoms);
    rho.block_mut(0)[(0, 0)] = C::new(T::one(), T::zero());
    rho
}

/// Three-atom state `(|g e g> - |g g e>)/sqrt(2)`, antisymmetric under
/// exchange of the second and third atoms. Dark when all couplings are
/// identical.
pub fn subradiant_state<T: Scalar>(n_atoms: usize) -> Result<BlockDensityMatrix<T>> {
    if n_atoms != 3 {
        return Err(Error::UnsupportedAtomCount {
            context: "subradiant_state",
            expected: "exactly 3 atoms",
            found: n_atoms,
        });
    }
    let mut rho = BlockDensityMatrix::zeros(3);
    // one-excitation sector basis: |g g e>, |g e g>, |e g g>
    let half = T::of(0.5);
    let b = rho.block_mut(1);
    b[(0, 0)] = C::new(half, T::zero());
    b[(1, 1)] = C::new(half, T::zero());
    b[(0, 1)] = C::new(-half, T::zero());
    b[(1, 0)] = C::new(-half, T::zero());
    Ok(rho)
}

/// Frobenius norm of the dissipator applied to `rho`: zero exactly when the
/// state is dark for the given couplings.
pub fn darkness_residual<T: Scalar>(
    rho: &BlockDensityMatrix<T>,
    couplings: &CouplingSet<T>,
) -> Result<T> {
    let d_rho = crate::liouvillian::dissipator_apply(couplings, rho)?;
    Ok(d_rho.frobenius_norm())
}
