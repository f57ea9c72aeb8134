//! The master-equation generator as a linear map on the vectorized block
//! density matrix.
//!
//! The generator is the commutator with the dipole-dipole Hamiltonian plus
//! the dissipator. Both respect the excitation-number block structure: the
//! Hamiltonian couples entries within a sector, the dissipator feeds sector
//! `n` into `n - 1` and damps within-sector entries. The matrix `A` acts on
//! the `C(2N, N)` stored entries, ordered blocks-ascending, row-major.

use ndarray::Array2;

use crate::basis::{atom_bit, BlockBasis};
use crate::couplings::CouplingSet;
use crate::error::{Error, Result};
use crate::scalar::{Scalar, C};
use crate::state::BlockDensityMatrix;

/// Dense generator matrix together with its slot layout.
#[derive(Debug, Clone)]
pub struct LiouvillianMatrix<T: Scalar> {
    basis: BlockBasis,
    a: Array2<C<T>>,
}

impl<T: Scalar> LiouvillianMatrix<T> {
    pub fn n_atoms(&self) -> usize {
        self.basis.n_atoms()
    }

    /// Number of vector slots, C(2N, N).
    pub fn dim(&self) -> usize {
        self.basis.slot_count()
    }

    pub fn matrix(&self) -> &Array2<C<T>> {
        &self.a
    }

    pub fn basis(&self) -> &BlockBasis {
        &self.basis
    }

    /// Spectrum of the generator; real parts are (minus) decay rates.
    pub fn eigenvalues(&self) -> Result<Vec<C<T>>> {
        crate::linalg::eigenvalues(&self.a)
    }

    /// How far the generator is from being trace preserving: the largest
    /// column sum of the rows corresponding to diagonal slots. Zero up to
    /// rounding by construction.
    pub fn trace_functional_norm(&self) -> T {
        let d = self.dim();
        let n_atoms = self.n_atoms();
        let mut diag_slots = Vec::new();
        for n in 0..=n_atoms {
            for r in 0..self.basis.sector_dim(n) {
                diag_slots.push(self.basis.slot(n, r, r));
            }
        }
        let mut worst = T::zero();
        for col in 0..d {
            let mut acc = C::new(T::zero(), T::zero());
            for &row in &diag_slots {
                acc = acc + self.a[(row, col)];
            }
            worst = worst.max(acc.norm());
        }
        worst
    }
}

/// Flatten a block density matrix into the slot vector.
pub fn vectorize<T: Scalar>(basis: &BlockBasis, rho: &BlockDensityMatrix<T>) -> Vec<C<T>> {
    let mut v = vec![C::new(T::zero(), T::zero()); basis.slot_count()];
    for n in 0..=basis.n_atoms() {
        let b = rho.block(n);
        for r in 0..b.nrows() {
            for c in 0..b.ncols() {
                v[basis.slot(n, r, c)] = b[(r, c)];
            }
        }
    }
    v
}

/// Inverse of [`vectorize`].
pub fn unvectorize<T: Scalar>(basis: &BlockBasis, v: &[C<T>]) -> BlockDensityMatrix<T> {
    let n_atoms = basis.n_atoms();
    let mut rho = BlockDensityMatrix::zeros(n_atoms);
    for n in 0..=n_atoms {
        let b = rho.block_mut(n);
        let dim = b.nrows();
        for r in 0..dim {
            for c in 0..dim {
                b[(r, c)] = v[basis.slot(n, r, c)];
            }
        }
    }
    rho
}

/// Build the generator for the given couplings.
pub fn assemble<T: Scalar>(
    couplings: &CouplingSet<T>,
    n_atoms: usize,
) -> Result<LiouvillianMatrix<T>> {
    if couplings.n_atoms() != n_atoms {
        return Err(Error::DimensionMismatch {
            context: "liouvillian assembly",
            expected: n_atoms,
            found: couplings.n_atoms(),
        });
    }
    let basis = BlockBasis::new(n_atoms);
    let d = basis.slot_count();
    let mut a: Array2<C<T>> = Array2::zeros((d, d));
    let half = T::of(0.5);

    for n in 0..=n_atoms {
        let masks = basis.sector_masks(n).to_vec();
        for (r, &u) in masks.iter().enumerate() {
            for (c, &v) in masks.iter().enumerate() {
                let col = basis.slot(n, r, c);
                for i in 0..n_atoms {
                    let bi = atom_bit(n_atoms, i);
                    for j in 0..n_atoms {
                        let bj = atom_bit(n_atoms, j);
                        let f_ij = couplings.f[(i, j)];
                        let g_ij = couplings.gamma[(i, j)];

                        // -i [H, rho], H = sum_{i != j} f_ij s+_i s-_j
                        if i != j && f_ij != T::zero() {
                            if u & bj != 0 && u & bi == 0 {
                                let row = basis.slot_of_masks(u - bj + bi, v);
                                a[(row, col)] = a[(row, col)] + C::new(T::zero(), -f_ij);
                            }
                            if v & bi != 0 && v & bj == 0 {
                                let row = basis.slot_of_masks(u, v - bi + bj);
                                a[(row, col)] = a[(row, col)] + C::new(T::zero(), f_ij);
                            }
                        }

                        if g_ij == T::zero() {
                            continue;
                        }
                        // gain: g_ij s-_j rho s+_i, feeds sector n - 1
                        if u & bj != 0 && v & bi != 0 {
                            let row = basis.slot_of_masks(u - bj, v - bi);
                            a[(row, col)] = a[(row, col)] + C::new(g_ij, T::zero());
                        }
                        // loss: -(g_ij/2) {s+_i s-_j, rho}, within the sector
                        let loss = C::new(-half * g_ij, T::zero());
                        if i == j {
                            if u & bi != 0 {
                                a[(col, col)] = a[(col, col)] + loss;
                            }
                            if v & bi != 0 {
                                a[(col, col)] = a[(col, col)] + loss;
                            }
                        } else {
                            if u & bj != 0 && u & bi == 0 {
                                let row = basis.slot_of_masks(u - bj + bi, v);
                                a[(row, col)] = a[(row, col)] + loss;
                            }
                            if v & bi != 0 && v & bj == 0 {
                                let row = basis.slot_of_masks(u, v - bi + bj);
                                a[(row, col)] = a[(row, col)] + loss;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(LiouvillianMatrix { basis, a })
}

/// Apply the generator: `d rho / dt`.
pub fn apply<T: Scalar>(
    generator: &LiouvillianMatrix<T>,
    rho: &BlockDensityMatrix<T>,
) -> Result<BlockDensityMatrix<T>> {
    if rho.n_atoms() != generator.n_atoms() {
        return Err(Error::DimensionMismatch {
            context: "liouvillian apply",
            expected: generator.n_atoms(),
            found: rho.n_atoms(),
        });
    }
    let v = vectorize(&generator.basis, rho);
    let mut out = vec![C::new(T::zero(), T::zero()); v.len()];
    crate::linalg::matvec_into(generator.a.view(), &v, &mut out);
    Ok(unvectorize(&generator.basis, &out))
}

/// Dissipator action alone, computed directly on the blocks (no assembled
/// matrix). Zero exactly on dark states.
pub fn dissipator_apply<T: Scalar>(
    couplings: &CouplingSet<T>,
    rho: &BlockDensityMatrix<T>,
) -> Result<BlockDensityMatrix<T>> {
    let n_atoms = rho.n_atoms();
    if couplings.n_atoms() != n_atoms {
        return Err(Error::DimensionMismatch {
            context: "dissipator apply",
            expected: n_atoms,
            found: couplings.n_atoms(),
        });
    }
    let basis = BlockBasis::new(n_atoms);
    let half = T::of(0.5);
    let mut out = BlockDensityMatrix::zeros(n_atoms);
    for n in 0..=n_atoms {
        let masks = basis.sector_masks(n).to_vec();
        for (r, &u) in masks.iter().enumerate() {
            for (c, &v) in masks.iter().enumerate() {
                let z = rho.block(n)[(r, c)];
                if z == C::new(T::zero(), T::zero()) {
                    continue;
                }
                for i in 0..n_atoms {
                    let bi = atom_bit(n_atoms, i);
                    for j in 0..n_atoms {
                        let bj = atom_bit(n_atoms, j);
                        let g_ij = couplings.gamma[(i, j)];
                        if g_ij == T::zero() {
                            continue;
                        }
                        let gain = C::new(g_ij, T::zero());
                        let loss = C::new(-half * g_ij, T::zero());
                        if u & bj != 0 && v & bi != 0 {
                            let ru = basis.locate(u - bj).within_block;
                            let rv = basis.locate(v - bi).within_block;
                            let t = out.block_mut(n - 1);
                            t[(ru, rv)] = t[(ru, rv)] + gain * z;
                        }
                        if i == j {
                            if u & bi != 0 {
                                let t = out.block_mut(n);
                                t[(r, c)] = t[(r, c)] + loss * z;
                            }
                            if v & bi != 0 {
                                let t = out.block_mut(n);
                                t[(r, c)] = t[(r, c)] + loss * z;
                            }
                        } else {
                            if u & bj != 0 && u & bi == 0 {
                                let ru = basis.locate(u - bj + bi).within_block;
                                let t = out.block_mut(n);
                                t[(ru, c)] = t[(ru, c)] + loss * z;
                            }
                            if v & bi != 0 && v & bj == 0 {
                                let rv = basis.locate(v - bi + bj).within_block;
                                let t = out.block_mut(n);
                                t[(r, rv)] = t[(r, rv)] + loss * z;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}
