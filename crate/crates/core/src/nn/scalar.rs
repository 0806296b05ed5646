//! Scalar abstraction for the network math.
//!
//! Everything numeric in [`crate::nn`] is generic over [`Scalar`], which
//! is implemented for `f32` and `f64`. Training typically runs in `f64`
//! for headroom and in `f32` where throughput matters; inference is fine
//! in either. Model files always store `f64` on disk, so the conversions
//! here are part of the persistence contract.

use num_traits::Float;

/// Floating-point element type the network can compute in.
pub trait Scalar:
    Float + num_traits::NumAssign + Copy + Send + Sync + std::fmt::Debug + std::fmt::Display + 'static
{
    /// Lossy conversion from `f64` (exact for `f64`, rounded for `f32`).
    fn from_f64(v: f64) -> Self;
    /// Widening conversion to `f64` (always exact).
    fn as_f64(self) -> f64;

    /// `c = alpha * a @ b + beta * c` for row-major slices,
    /// `a`: m x k, `b`: k x n, `c`: m x n.
    fn gemm(m: usize, k: usize, n: usize, alpha: Self, a: &[Self], b: &[Self], beta: Self, c: &mut [Self]);

    /// Like [`Scalar::gemm`] but with `a` interpreted transposed:
    /// `a` is a k x m row-major slice and `c += alpha * a^T @ b`.
    fn gemm_at(m: usize, k: usize, n: usize, alpha: Self, a: &[Self], b: &[Self], beta: Self, c: &mut [Self]);

    /// Like [`Scalar::gemm`] but with `b` interpreted transposed:
    /// `b` is an n x k row-major slice and `c += alpha * a @ b^T`.
    fn gemm_bt(m: usize, k: usize, n: usize, alpha: Self, a: &[Self], b: &[Self], beta: Self, c: &mut [Self]);
}

macro_rules! impl_scalar {
    ($t:ty, $gemm:path) => {
        impl Scalar for $t {
            #[inline]
            fn from_f64(v: f64) -> Self {
                v as $t
            }
            #[inline]
            fn as_f64(self) -> f64 {
                self as f64
            }

            fn gemm(m: usize, k: usize, n: usize, alpha: Self, a: &[Self], b: &[Self], beta: Self, c: &mut [Self]) {
                assert!(a.len() >= m * k && b.len() >= k * n && c.len() >= m * n, "gemm shape mismatch");
                if m == 0 || k == 0 || n == 0 {
                    return;
                }
                unsafe {
                    $gemm(
                        m, k, n, alpha,
                        a.as_ptr(), k as isize, 1,
                        b.as_ptr(), n as isize, 1,
                        beta,
                        c.as_mut_ptr(), n as isize, 1,
                    );
                }
            }

            fn gemm_at(m: usize, k: usize, n: usize, alpha: Self, a: &[Self], b: &[Self], beta: Self, c: &mut [Self]) {
                assert!(a.len() >= k * m && b.len() >= k * n && c.len() >= m * n, "gemm_at shape mismatch");
                if m == 0 || k == 0 || n == 0 {
                    return;
                }
                unsafe {
                    $gemm(
                        m, k, n, alpha,
                        a.as_ptr(), 1, m as isize,
                        b.as_ptr(), n as isize, 1,
                        beta,
                        c.as_mut_ptr(), n as isize, 1,
                    );
                }
            }

            fn gemm_bt(m: usize, k: usize, n: usize, alpha: Self, a: &[Self], b: &[Self], beta: Self, c: &mut [Self]) {
                assert!(a.len() >= m * k && b.len() >= n * k && c.len() >= m * n, "gemm_bt shape mismatch");
                if m == 0 || k == 0 || n == 0 {
                    return;
                }
                unsafe {
                    $gemm(
                        m, k, n, alpha,
                        a.as_ptr(), k as isize, 1,
                        b.as_ptr(), 1, k as isize,
                        beta,
                        c.as_mut_ptr(), n as isize, 1,
                    );
                }
            }
        }
    };
}

impl_scalar!(f32, matrixmultiply::sgemm);
impl_scalar!(f64, matrixmultiply::dgemm);

#[cfg(test)]
mod tests {
    use super::*;

    fn naive<F: Scalar>(m: usize, k: usize, n: usize, a: &[F], b: &[F]) -> Vec<F> {
        let mut c = vec![F::zero(); m * n];
        for i in 0..m {
            for j in 0..n {
                let mut acc = F::zero();
                for p in 0..k {
                    acc = acc + a[i * k + p] * b[p * n + j];
                }
                c[i * n + j] = acc;
            }
        }
        c
    }

    #[test]
    fn gemm_matches_naive() {
        let (m, k, n) = (7, 5, 9);
        let a: Vec<f64> = (0..m * k).map(|i| (i as f64 * 0.37).sin()).collect();
        let b: Vec<f64> = (0..k * n).map(|i| (i as f64 * 0.71).cos()).collect();
        let want = naive(m, k, n, &a, &b);

        let mut c = vec![0.0f64; m * n];
        f64::gemm(m, k, n, 1.0, &a, &b, 0.0, &mut c);
        for (x, y) in c.iter().zip(&want) {
            assert!((x - y).abs() < 1e-12);
        }

        // a^T path: store a as k x m and expect the same product.
        let mut at = vec![0.0f64; k * m];
        for i in 0..m {
            for p in 0..k {
                at[p * m + i] = a[i * k + p];
            }
        }
        let mut c2 = vec![0.0f64; m * n];
        f64::gemm_at(m, k, n, 1.0, &at, &b, 0.0, &mut c2);
        for (x, y) in c2.iter().zip(&want) {
            assert!((x - y).abs() < 1e-12);
        }

        // b^T path: store b as n x k.
        let mut bt = vec![0.0f64; n * k];
        for p in 0..k {
            for j in 0..n {
                bt[j * k + p] = b[p * n + j];
            }
        }
        let mut c3 = vec![0.0f64; m * n];
        f64::gemm_bt(m, k, n, 1.0, &a, &bt, 0.0, &mut c3);
        for (x, y) in c3.iter().zip(&want) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn gemm_accumulates_with_beta() {
        let a = [1.0f32, 2.0, 3.0, 4.0];
        let b = [1.0f32, 0.0, 0.0, 1.0];
        let mut c = [10.0f32, 20.0, 30.0, 40.0];
        f32::gemm(2, 2, 2, 1.0, &a, &b, 1.0, &mut c);
        assert_eq!(c, [11.0, 22.0, 33.0, 44.0]);
    }
}
