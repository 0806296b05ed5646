//! Prototype register-tiled GEMM to compare with the baseline.

use std::time::Instant;

const MR: usize = 4;
const NR: usize = 32;

/// C[m x n] = A[m x k] @ B[k x n], all row-major, C overwritten.
fn gemm_tiled(m: usize, k: usize, n: usize, a: &[f32], b: &[f32], c: &mut [f32]) {
    let n_tiles = n / NR;
    let m_tiles = m / MR;
    for it in 0..m_tiles {
        let i0 = it * MR;
        for jt in 0..n_tiles {
            let j0 = jt * NR;
            let mut acc = [[0.0f32; NR]; MR];
            for kk in 0..k {
                let brow = &b[kk * n + j0..kk * n + j0 + NR];
                for (r, accr) in acc.iter_mut().enumerate() {
                    let av = a[(i0 + r) * k + kk];
                    for (j, accv) in accr.iter_mut().enumerate() {
                        *accv += av * brow[j];
                    }
                }
            }
            for r in 0..MR {
                c[(i0 + r) * n + j0..(i0 + r) * n + j0 + NR].copy_from_slice(&acc[r]);
            }
        }
        // n tail
        for j in n_tiles * NR..n {
            for r in 0..MR {
                let mut s = 0.0;
                for kk in 0..k {
                    s += a[(i0 + r) * k + kk] * b[kk * n + j];
                }
                c[(i0 + r) * n + j] = s;
            }
        }
    }
    // m tail
    for i in m_tiles * MR..m {
        for j in 0..n {
            let mut s = 0.0;
            for kk in 0..k {
                s += a[i * k + kk] * b[kk * n + j];
            }
            c[i * n + j] = s;
        }
    }
}

fn main() {
    let (m, k, n) = (1276usize, 800usize, 64usize);
    let a: Vec<f32> = (0..m * k).map(|i| (i % 97) as f32 * 0.013).collect();
    let b: Vec<f32> = (0..k * n).map(|i| (i % 89) as f32 * 0.011).collect();
    let mut c = vec![0.0f32; m * n];
    let mut c2 = vec![0.0f32; m * n];

    gemm_tiled(m, k, n, &a, &b, &mut c);
    unsafe {
        matrixmultiply::sgemm(
            m, k, n, 1.0, a.as_ptr(), k as isize, 1, b.as_ptr(), n as isize, 1, 0.0,
            c2.as_mut_ptr(), n as isize, 1,
        );
    }
    let max_rel = c
        .iter()
        .zip(&c2)
        .map(|(x, y)| ((x - y).abs() / y.abs().max(1.0)) as f64)
        .fold(0.0, f64::max);
    println!("max rel diff vs matrixmultiply: {max_rel:.2e}");

    for _ in 0..3 {
        gemm_tiled(m, k, n, &a, &b, &mut c);
    }
    let reps = 30;
    let t0 = Instant::now();
    for _ in 0..reps {
        gemm_tiled(m, k, n, &a, &b, &mut c);
    }
    let dt = t0.elapsed().as_secs_f64() / reps as f64;
    println!("tiled f32 [{m}x{k}]x[{k}x{n}]: {:.3} ms  {:.1} GFLOP/s", dt * 1e3, 2.0 * (m * k * n) as f64 / dt / 1e9);
}
