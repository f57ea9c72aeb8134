//! Product-basis bookkeeping for the excitation-number block structure.
//!
//! Basis states are bit masks over atoms, with atom 0 on the most significant
//! bit, so ascending mask order coincides with lexicographic order of the
//! bit strings. States with the same number of excited atoms form a sector;
//! the density matrix only ever carries entries within sectors.

use crate::error::{Error, Result};

/// Binomial coefficient C(n, k).
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Bit of atom `atom` inside a mask over `n_atoms` atoms (atom 0 = MSB).
#[inline]
pub fn atom_bit(n_atoms: usize, atom: usize) -> usize {
    1 << (n_atoms - 1 - atom)
}

/// Position of a basis state inside the block structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisIndex {
    /// Number of excited atoms, `0..=N`.
    pub excitation_count: usize,
    /// Index into the C(N, n) states of that sector, lexicographic order.
    pub within_block: usize,
}

/// Precomputed sector bases and the (block, row, col) -> vector slot map.
///
/// Vectorization runs over blocks ascending in excitation number, row-major
/// within each block, for a total of `sum_n C(N,n)^2 = C(2N, N)` slots.
#[derive(Debug, Clone)]
pub struct BlockBasis {
    n_atoms: usize,
    /// Sector `n` holds the masks with `n` bits set, ascending.
    sectors: Vec<Vec<usize>>,
    /// mask -> (sector, index within sector)
    lookup: Vec<BasisIndex>,
    /// Start of block `n` in the vectorized layout.
    offsets: Vec<usize>,
    slot_count: usize,
}

impl BlockBasis {
    pub fn new(n_atoms: usize) -> Self {
        assert!(n_atoms >= 1, "need at least one atom");
        assert!(n_atoms < usize::BITS as usize, "atom count too large");
        let dim = 1usize << n_atoms;
        let mut sectors: Vec<Vec<usize>> = vec![Vec::new(); n_atoms + 1];
        let mut lookup = vec![
            BasisIndex {
                excitation_count: 0,
                within_block: 0,
            };
            dim
        ];
        for mask in 0..dim {
            let n = mask.count_ones() as usize;
            lookup[mask] = BasisIndex {
                excitation_count: n,
                within_block: sectors[n].len(),
            };
            sectors[n].push(mask);
        }
        let mut offsets = Vec::with_capacity(n_atoms + 2);
        let mut acc = 0;
        for sec in &sectors {
            offsets.push(acc);
            acc += sec.len() * sec.len();
        }
        BlockBasis {
            n_atoms,
            sectors,
            lookup,
            offsets,
            slot_count: acc,
        }
    }

    pub fn n_atoms(&self) -> usize {
        self.n_atoms
    }

    /// Number of stored matrix entries, C(2N, N).
    pub fn slot_count(&self) -> usize {
        self.slot_count
    }

    pub fn sector_dim(&self, n: usize) -> usize {
        self.sectors[n].len()
    }

    pub fn sector_masks(&self, n: usize) -> &[usize] {
        &self.sectors[n]
    }

    pub fn locate(&self, mask: usize) -> BasisIndex {
        self.lookup[mask]
    }

    /// Vector slot of entry (row mask `u`, column mask `v`); both masks must
    /// belong to the same sector.
    pub fn slot_of_masks(&self, u: usize, v: usize) -> usize {
        let bu = self.lookup[u];
        let bv = self.lookup[v];
        debug_assert_eq!(bu.excitation_count, bv.excitation_count);
        self.slot(bu.excitation_count, bu.within_block, bv.within_block)
    }

    pub fn slot(&self, n: usize, row: usize, col: usize) -> usize {
        self.offsets[n] + row * self.sectors[n].len() + col
    }

    /// Inverse of [`BlockBasis::slot`].
    pub fn unslot(&self, slot: usize) -> (usize, usize, usize) {
        let n = match self.offsets.binary_search(&slot) {
            Ok(n) => n,
            Err(ins) => ins - 1,
        };
        let dim = self.sectors[n].len();
        let local = slot - self.offsets[n];
        (n, local / dim, local % dim)
    }

    /// Slots of all off-diagonal entries, the support of the l1 coherence.
    pub fn off_diagonal_slots(&self) -> Vec<usize> {
        let mut slots = Vec::with_capacity(self.slot_count - (1 << self.n_atoms));
        for n in 0..=self.n_atoms {
            let dim = self.sectors[n].len();
            for r in 0..dim {
                for c in 0..dim {
                    if r != c {
                        slots.push(self.slot(n, r, c));
                    }
                }
            }
        }
        slots
    }

    pub fn check_sector_dims(&self, dims: &[usize], context: &'static str) -> Result<()> {
        if dims.len() != self.n_atoms + 1 {
            return Err(Error::DimensionMismatch {
                context,
                expected: self.n_atoms + 1,
                found: dims.len(),
            });
        }
        for (n, &d) in dims.iter().enumerate() {
            if d != self.sector_dim(n) {
                return Err(Error::DimensionMismatch {
                    context,
                    expected: self.sector_dim(n),
                    found: d,
                });
            }
        }
        Ok(())
    }
}
