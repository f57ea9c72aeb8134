//! Shared test support: a brute-force full-Hilbert-space construction of the
//! master equation, built from Kronecker products. Deliberately independent
//! of the block-structured implementation it is used to check.

use ndarray::Array2;
use num_complex::Complex64 as C64;
use rand::Rng;

use superrad::couplings::CouplingSet;
use superrad::state::BlockDensityMatrix;

pub fn kron(a: &Array2<C64>, b: &Array2<C64>) -> Array2<C64> {
    let (ar, ac) = a.dim();
    let (br, bc) = b.dim();
    let mut out = Array2::zeros((ar * br, ac * bc));
    for i in 0..ar {
        for j in 0..ac {
            for k in 0..br {
                for l in 0..bc {
                    out[(i * br + k, j * bc + l)] = a[(i, j)] * b[(k, l)];
                }
            }
        }
    }
    out
}

fn identity(n: usize) -> Array2<C64> {
    let mut m = Array2::zeros((n, n));
    for i in 0..n {
        m[(i, i)] = C64::new(1.0, 0.0);
    }
    m
}

/// Single-atom raising operator in the `{|g>, |e>}` ordering used by the
/// block basis (index 1 = excited).
fn sigma_plus_single() -> Array2<C64> {
    let mut m = Array2::zeros((2, 2));
    m[(1, 0)] = C64::new(1.0, 0.0);
    m
}

/// `sigma_+` of atom `i` embedded in the N-atom product space, atom 0 on the
/// leftmost (most significant) factor.
pub fn sigma_plus(n_atoms: usize, atom: usize) -> Array2<C64> {
    let mut op = identity(1);
    for k in 0..n_atoms {
        let factor = if k == atom {
            sigma_plus_single()
        } else {
            identity(2)
        };
        op = kron(&op, &factor);
    }
    op
}

pub fn sigma_minus(n_atoms: usize, atom: usize) -> Array2<C64> {
    sigma_plus(n_atoms, atom).t().mapv(|z| z.conj())
}

pub fn dagger(m: &Array2<C64>) -> Array2<C64> {
    m.t().mapv(|z| z.conj())
}

/// Full-space master-equation action on a `2^N x 2^N` density matrix.
pub fn dense_liouvillian_apply(
    couplings: &CouplingSet<f64>,
    rho: &Array2<C64>,
) -> Array2<C64> {
    let n = couplings.n_atoms();
    let dim = 1usize << n;
    assert_eq!(rho.dim(), (dim, dim));
    let sp: Vec<Array2<C64>> = (0..n).map(|i| sigma_plus(n, i)).collect();
    let sm: Vec<Array2<C64>> = (0..n).map(|i| sigma_minus(n, i)).collect();

    let mut h = Array2::<C64>::zeros((dim, dim));
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let f = couplings.f[(i, j)];
            if f != 0.0 {
                h = h + sp[i].dot(&sm[j]).mapv(|z| z * C64::new(f, 0.0));
            }
        }
    }
    let commutator = h.dot(rho) - rho.dot(&h);
    let mut out = commutator.mapv(|z| z * C64::new(0.0, -1.0));
    for i in 0..n {
        for j in 0..n {
            let g = couplings.gamma[(i, j)];
            if g == 0.0 {
                continue;
            }
            let gain = sm[j].dot(rho).dot(&sp[i]);
            let pm = sp[i].dot(&sm[j]);
            let loss = pm.dot(rho) + rho.dot(&pm);
            out = out + (gain - loss.mapv(|z| z * C64::new(0.5, 0.0))).mapv(|z| z * C64::new(g, 0.0));
        }
    }
    out
}

/// Dense superoperator matrix on vec(rho), column-major over the full space.
pub fn dense_superoperator(couplings: &CouplingSet<f64>) -> Array2<C64> {
    let n = couplings.n_atoms();
    let dim = 1usize << n;
    let d2 = dim * dim;
    let mut a = Array2::zeros((d2, d2));
    for u in 0..dim {
        for v in 0..dim {
            let mut e = Array2::zeros((dim, dim));
            e[(u, v)] = C64::new(1.0, 0.0);
            let image = dense_liouvillian_apply(couplings, &e);
            for r in 0..dim {
                for c in 0..dim {
                    a[(r * dim + c, u * dim + v)] = image[(r, c)];
                }
            }
        }
    }
    a
}

/// Sum of absolute off-diagonal entries of a full-space matrix.
pub fn coherence_l1_full(rho: &Array2<C64>) -> f64 {
    let mut acc = 0.0;
    for r in 0..rho.nrows() {
        for c in 0..rho.ncols() {
            if r != c {
                acc += rho[(r, c)].norm();
            }
        }
    }
    acc
}

/// Random Hermitian matrix supported on the excitation-number blocks,
/// normalized to unit Frobenius norm.
pub fn random_block_supported<R: Rng>(n_atoms: usize, rng: &mut R) -> BlockDensityMatrix<f64> {
    let mut rho = BlockDensityMatrix::<f64>::zeros(n_atoms);
    for n in 0..=n_atoms {
        let d = rho.block(n).nrows();
        let raw = Array2::from_shape_fn((d, d), |_| {
            C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
        });
        *rho.block_mut(n) = Array2::from_shape_fn((d, d), |(i, j)| {
            (raw[(i, j)] + raw[(j, i)].conj()) * C64::new(0.5, 0.0)
        });
    }
    let norm = rho.frobenius_norm();
    for n in 0..=n_atoms {
        rho.block_mut(n).mapv_inplace(|z| z / C64::new(norm, 0.0));
    }
    rho
}
