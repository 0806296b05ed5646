//! Rough throughput probe for the GEMM shapes the network uses.

use avtp_ids_core::nn::scalar::Scalar;
use std::time::Instant;

fn bench<F: Scalar>(name: &str, m: usize, k: usize, n: usize, reps: usize) {
    let a: Vec<F> = (0..m * k).map(|i| F::from_f64((i % 97) as f64 * 0.013)).collect();
    let b: Vec<F> = (0..k * n).map(|i| F::from_f64((i % 89) as f64 * 0.011)).collect();
    let mut c: Vec<F> = vec![F::zero(); m * n];
    // warm up
    for _ in 0..3 {
        F::gemm(m, k, n, F::one(), &a, &b, F::zero(), &mut c);
    }
    let t0 = Instant::now();
    for _ in 0..reps {
        F::gemm(m, k, n, F::one(), &a, &b, F::zero(), &mut c);
    }
    let dt = t0.elapsed().as_secs_f64() / reps as f64;
    let gflops = 2.0 * m as f64 * k as f64 * n as f64 / dt / 1e9;
    println!("{name:26} [{m}x{k}]x[{k}x{n}]  {:.3} ms  {gflops:.1} GFLOP/s", dt * 1e3);
}

fn main() {
    // conv2 single sample, chunk of 8, conv1 chunk, dense1 batch
    bench::<f32>("f32 conv2 n=1", 1276, 800, 64, 30);
    bench::<f32>("f32 conv2 chunk8", 8 * 1276, 800, 64, 10);
    bench::<f32>("f32 conv1 chunk8", 8 * 5104, 25, 32, 10);
    bench::<f32>("f32 dense1 batch64", 64, 20416, 64, 30);
    bench::<f64>("f64 conv2 n=1", 1276, 800, 64, 20);
    bench::<f64>("f64 conv2 chunk8", 8 * 1276, 800, 64, 5);
    bench::<f64>("f64 dense1 batch64", 64, 20416, 64, 20);
}
