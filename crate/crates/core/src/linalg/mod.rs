//! Dense complex linear algebra over the generic scalar.
//!
//! Everything here operates on `ndarray` matrices of `Complex<T>`. The
//! matrices in this crate stay small (dimension C(2N, N), so at most a few
//! hundred for the atom counts of interest), which keeps straightforward
//! dense kernels both adequate and portable across scalar types.

mod eig;
mod expm;
mod solve;

pub use eig::{eigenvalues, hermitian_eigenvalues};
pub use expm::expm;
pub use solve::solve;

use ndarray::{Array1, Array2, ArrayView1, ArrayView2};

use crate::scalar::{Scalar, C};

/// Square-ish complex matrix in planar (split real/imaginary) row-major
/// storage. The split keeps the inner loops on plain scalar slices, which
/// vectorize far better than interleaved complex pairs.
#[derive(Debug, Clone)]
pub struct PlanarMatrix<T> {
    rows: usize,
    cols: usize,
    re: Vec<T>,
    im: Vec<T>,
}

impl<T: Scalar> PlanarMatrix<T> {
    pub fn from_array(a: ArrayView2<C<T>>) -> Self {
        let (rows, cols) = a.dim();
        let mut re = Vec::with_capacity(rows * cols);
        let mut im = Vec::with_capacity(rows * cols);
        for z in a.iter() {
            re.push(z.re);
            im.push(z.im);
        }
        PlanarMatrix { rows, cols, re, im }
    }

    pub fn to_array(&self) -> Array2<C<T>> {
        Array2::from_shape_fn((self.rows, self.cols), |(i, j)| {
            C::new(self.re[i * self.cols + j], self.im[i * self.cols + j])
        })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    /// `y = self * x` on planar vectors.
    pub fn matvec(&self, x_re: &[T], x_im: &[T], y_re: &mut [T], y_im: &mut [T]) {
        assert_eq!(x_re.len(), self.cols);
        assert_eq!(y_re.len(), self.rows);
        for i in 0..self.rows {
            let row_re = &self.re[i * self.cols..(i + 1) * self.cols];
            let row_im = &self.im[i * self.cols..(i + 1) * self.cols];
            let mut acc_re = T::zero();
            let mut acc_im = T::zero();
            for k in 0..self.cols {
                let (ar, ai) = (row_re[k], row_im[k]);
                let (xr, xi) = (x_re[k], x_im[k]);
                acc_re += ar * xr - ai * xi;
                acc_im += ar * xi + ai * xr;
            }
            y_re[i] = acc_re;
            y_im[i] = acc_im;
        }
    }

    fn mul(&self, other: &PlanarMatrix<T>) -> PlanarMatrix<T> {
        assert_eq!(self.cols, other.rows, "matmul: inner dimensions differ");
        let (m, ka, n) = (self.rows, self.cols, other.cols);
        let mut out = PlanarMatrix {
            rows: m,
            cols: n,
            re: vec![T::zero(); m * n],
            im: vec![T::zero(); m * n],
        };
        for i in 0..m {
            for k in 0..ka {
                let ar = self.re[i * ka + k];
                let ai = self.im[i * ka + k];
                if ar == T::zero() && ai == T::zero() {
                    continue;
                }
                let br = &other.re[k * n..(k + 1) * n];
                let bi = &other.im[k * n..(k + 1) * n];
                let out_re = &mut out.re[i * n..(i + 1) * n];
                for j in 0..n {
                    out_re[j] += ar * br[j] - ai * bi[j];
                }
                let out_im = &mut out.im[i * n..(i + 1) * n];
                for j in 0..n {
                    out_im[j] += ar * bi[j] + ai * br[j];
                }
            }
        }
        out
    }
}

/// Matrix product through the planar kernels.
pub fn matmul<T: Scalar>(a: ArrayView2<C<T>>, b: ArrayView2<C<T>>) -> Array2<C<T>> {
    PlanarMatrix::from_array(a)
        .mul(&PlanarMatrix::from_array(b))
        .to_array()
}

/// Matrix-vector product `y = a x` into a preallocated buffer.
pub fn matvec_into<T: Scalar>(a: ArrayView2<C<T>>, x: &[C<T>], y: &mut [C<T>]) {
    let (m, n) = a.dim();
    assert_eq!(n, x.len());
    assert_eq!(m, y.len());
    for (i, yi) in y.iter_mut().enumerate() {
        let row = a.row(i);
        let mut acc = C::new(T::zero(), T::zero());
        match row.as_slice() {
            Some(rs) => {
                for (&aij, &xj) in rs.iter().zip(x) {
                    acc = acc + aij * xj;
                }
            }
            None => {
                for (&aij, &xj) in row.iter().zip(x) {
                    acc = acc + aij * xj;
                }
            }
        }
        *yi = acc;
    }
}

/// Matrix 1-norm (maximum absolute column sum).
pub fn one_norm<T: Scalar>(a: ArrayView2<C<T>>) -> T {
    let (m, n) = a.dim();
    let mut best = T::zero();
    for j in 0..n {
        let mut s = T::zero();
        for i in 0..m {
            s += a[(i, j)].norm();
        }
        if s > best {
            best = s;
        }
    }
    best
}

/// Frobenius norm.
pub fn frobenius_norm<T: Scalar>(a: ArrayView2<C<T>>) -> T {
    a.iter()
        .map(|z| z.norm_sqr())
        .fold(T::zero(), |acc, v| acc + v)
        .sqrt()
}

/// Identity matrix.
pub fn eye<T: Scalar>(n: usize) -> Array2<C<T>> {
    let mut m = Array2::zeros((n, n));
    for i in 0..n {
        m[(i, i)] = C::new(T::one(), T::zero());
    }
    m
}

/// Maximum absolute entry difference.
pub fn max_abs_diff<T: Scalar>(a: ArrayView2<C<T>>, b: ArrayView2<C<T>>) -> T {
    assert_eq!(a.dim(), b.dim());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (*x - *y).norm())
        .fold(T::zero(), T::max)
}

/// Dot product of a complex vector with itself under the Hermitian inner
/// product, returned as the real norm.
pub fn vector_norm<T: Scalar>(x: ArrayView1<C<T>>) -> T {
    x.iter()
        .map(|z| z.norm_sqr())
        .fold(T::zero(), |acc, v| acc + v)
        .sqrt()
}

/// Owned-array convenience wrapper around [`matvec_into`].
pub fn matvec<T: Scalar>(a: ArrayView2<C<T>>, x: ArrayView1<C<T>>) -> Array1<C<T>> {
    let xs: Vec<C<T>> = x.iter().copied().collect();
    let mut y = vec![C::new(T::zero(), T::zero()); a.nrows()];
    matvec_into(a, &xs, &mut y);
    Array1::from_vec(y)
}
