//! Matrix exponential by scaling and squaring with Padé approximants.
//!
//! Order selection and coefficients follow Higham, "The Scaling and Squaring
//! Method for the Matrix Exponential Revisited" (SIAM J. Matrix Anal. Appl.
//! 26, 2005). Orders 3/5/7/9 are used when the 1-norm permits, order 13 with
//! scaling otherwise.

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::linalg::{matmul, one_norm, solve};
use crate::scalar::{Scalar, C};

const THETA_3: f64 = 1.495_585_217_958_292e-2;
const THETA_5: f64 = 2.539_398_330_063_23e-1;
const THETA_7: f64 = 9.504_178_996_162_932e-1;
const THETA_9: f64 = 2.097_847_961_257_068;
const THETA_13: f64 = 5.371_920_351_148_152;

const B3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const B5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const B7: [f64; 8] = [
    17_297_280.0,
    8_648_640.0,
    1_995_840.0,
    277_200.0,
    25_200.0,
    1_512.0,
    56.0,
    1.0,
];
const B9: [f64; 10] = [
    17_643_225_600.0,
    8_821_612_800.0,
    2_075_673_600.0,
    302_702_400.0,
    30_270_240.0,
    2_162_160.0,
    110_880.0,
    3_960.0,
    90.0,
    1.0,
];
const B13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];

const MAX_SQUARINGS: u32 = 64;

fn scaled<T: Scalar>(m: &Array2<C<T>>, factor: T) -> Array2<C<T>> {
    m.mapv(|z| z * C::new(factor, T::zero()))
}

fn add_scaled_eye<T: Scalar>(m: &mut Array2<C<T>>, coeff: T) {
    let n = m.nrows();
    for i in 0..n {
        m[(i, i)] = m[(i, i)] + C::new(coeff, T::zero());
    }
}

/// Padé numerator/denominator pieces for orders 3..=9: `U = A * (sum of odd
/// coefficients times even powers)`, `V = sum of even coefficients`.
fn pade_low<T: Scalar>(
    a: &Array2<C<T>>,
    powers: &[Array2<C<T>>],
    b: &[f64],
) -> (Array2<C<T>>, Array2<C<T>>) {
    let n = a.nrows();
    let mut u_inner: Array2<C<T>> = Array2::zeros((n, n));
    let mut v: Array2<C<T>> = Array2::zeros((n, n));
    add_scaled_eye(&mut u_inner, T::of(b[1]));
    add_scaled_eye(&mut v, T::of(b[0]));
    for (k, p) in powers.iter().enumerate() {
        // powers[k] = A^(2(k+1))
        let odd = T::of(b[2 * k + 3]);
        let even = T::of(b[2 * k + 2]);
        u_inner = u_inner + p.mapv(|z| z * C::new(odd, T::zero()));
        v = v + p.mapv(|z| z * C::new(even, T::zero()));
    }
    (matmul(a.view(), u_inner.view()), v)
}

fn pade13<T: Scalar>(a: &Array2<C<T>>) -> (Array2<C<T>>, Array2<C<T>>) {
    let a2 = matmul(a.view(), a.view());
    let a4 = matmul(a2.view(), a2.view());
    let a6 = matmul(a2.view(), a4.view());
    let b = |i: usize| C::new(T::of(B13[i]), T::zero());

    let w1 = a6.mapv(|z| z * b(13)) + a4.mapv(|z| z * b(11)) + a2.mapv(|z| z * b(9));
    let mut w2 = a6.mapv(|z| z * b(7)) + a4.mapv(|z| z * b(5)) + a2.mapv(|z| z * b(3));
    add_scaled_eye(&mut w2, T::of(B13[1]));
    let u = matmul(a.view(), (matmul(w1.view(), a6.view()) + w2).view());

    let z1 = a6.mapv(|z| z * b(12)) + a4.mapv(|z| z * b(10)) + a2.mapv(|z| z * b(8));
    let mut z2 = a6.mapv(|z| z * b(6)) + a4.mapv(|z| z * b(4)) + a2.mapv(|z| z * b(2));
    add_scaled_eye(&mut z2, T::of(B13[0]));
    let v = matmul(z1.view(), a6.view()) + z2;
    (u, v)
}

/// Compute `exp(a)` for a square complex matrix.
pub fn expm<T: Scalar>(a: &Array2<C<T>>) -> Result<Array2<C<T>>> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(Error::DimensionMismatch {
            context: "expm",
            expected: n,
            found: a.ncols(),
        });
    }
    if n == 0 {
        return Ok(Array2::zeros((0, 0)));
    }
    if n == 1 {
        let mut out = Array2::zeros((1, 1));
        out[(0, 0)] = a[(0, 0)].exp();
        return Ok(out);
    }

    let norm = one_norm(a.view()).as_f64();
    if !norm.is_finite() {
        return Err(Error::Numerical("non-finite matrix in expm"));
    }

    let (u, v, squarings) = if norm <= THETA_9 {
        let a2 = matmul(a.view(), a.view());
        if norm <= THETA_3 {
            let (u, v) = pade_low(a, &[a2], &B3);
            (u, v, 0)
        } else if norm <= THETA_5 {
            let a4 = matmul(a2.view(), a2.view());
            let (u, v) = pade_low(a, &[a2, a4], &B5);
            (u, v, 0)
        } else if norm <= THETA_7 {
            let a4 = matmul(a2.view(), a2.view());
            let a6 = matmul(a2.view(), a4.view());
            let (u, v) = pade_low(a, &[a2, a4, a6], &B7);
            (u, v, 0)
        } else {
            let a4 = matmul(a2.view(), a2.view());
            let a6 = matmul(a2.view(), a4.view());
            let a8 = matmul(a4.view(), a4.view());
            let (u, v) = pade_low(a, &[a2, a4, a6, a8], &B9);
            (u, v, 0)
        }
    } else {
        let s = ((norm / THETA_13).log2().ceil() as i64).max(0) as u32;
        if s > MAX_SQUARINGS {
            return Err(Error::Numerical("expm scaling exponent too large"));
        }
        let a_scaled = scaled(a, T::of(0.5f64.powi(s as i32)));
        let (u, v) = pade13(&a_scaled);
        (u, v, s)
    };

    // exp(A) ~ (V - U)^{-1} (V + U)
    let num = &v + &u;
    let den = &v - &u;
    let mut f = solve(den, num)?;
    for _ in 0..squarings {
        f = matmul(f.view(), f.view());
    }
    Ok(f)
}
