//! Dense linear solve by LU factorization with partial pivoting.

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::scalar::{Scalar, C};

/// Solve `A X = B` for `X`, consuming both operands.
pub fn solve<T: Scalar>(mut a: Array2<C<T>>, mut b: Array2<C<T>>) -> Result<Array2<C<T>>> {
    let n = a.nrows();
    if a.ncols() != n || b.nrows() != n {
        return Err(Error::DimensionMismatch {
            context: "linear solve",
            expected: n,
            found: if a.ncols() != n { a.ncols() } else { b.nrows() },
        });
    }
    let m = b.ncols();
    for col in 0..n {
        // partial pivot on modulus
        let mut pivot_row = col;
        let mut pivot_mag = a[(col, col)].norm_sqr();
        for r in col + 1..n {
            let mag = a[(r, col)].norm_sqr();
            if mag > pivot_mag {
                pivot_mag = mag;
                pivot_row = r;
            }
        }
        if pivot_mag == T::zero() {
            return Err(Error::Numerical("singular matrix in linear solve"));
        }
        if pivot_row != col {
            for j in 0..n {
                let tmp = a[(col, j)];
                a[(col, j)] = a[(pivot_row, j)];
                a[(pivot_row, j)] = tmp;
            }
            for j in 0..m {
                let tmp = b[(col, j)];
                b[(col, j)] = b[(pivot_row, j)];
                b[(pivot_row, j)] = tmp;
            }
        }
        let inv_pivot = C::new(T::one(), T::zero()) / a[(col, col)];
        for r in col + 1..n {
            let factor = a[(r, col)] * inv_pivot;
            if factor == C::new(T::zero(), T::zero()) {
                continue;
            }
            a[(r, col)] = C::new(T::zero(), T::zero());
            for j in col + 1..n {
                let v = a[(col, j)];
                a[(r, j)] = a[(r, j)] - factor * v;
            }
            for j in 0..m {
                let v = b[(col, j)];
                b[(r, j)] = b[(r, j)] - factor * v;
            }
        }
    }
    // back substitution
    for col in (0..n).rev() {
        let inv_pivot = C::new(T::one(), T::zero()) / a[(col, col)];
        for j in 0..m {
            let mut acc = b[(col, j)];
            for k in col + 1..n {
                acc = acc - a[(col, k)] * b[(k, j)];
            }
            b[(col, j)] = acc * inv_pivot;
        }
    }
    Ok(b)
}
