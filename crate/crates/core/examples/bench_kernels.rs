use ndarray::Array2;
use num_complex::Complex64 as C64;
use std::time::Instant;
use superrad::couplings::{build_couplings, Regime};
use superrad::geometry::sample_configuration;
use superrad::liouvillian::assemble;

fn main() {
    for (n_atoms, k0r) in [(3usize, 0.67), (4, 0.85), (5, 0.94)] {
        let config = sample_configuration::<f64>(n_atoms, k0r, 6.6e-4, 1).unwrap();
        let set = build_couplings(&config, Regime::Exact);
        let t0 = Instant::now();
        let gen = assemble(&set, n_atoms).unwrap();
        let t_asm = t0.elapsed().as_secs_f64();
        let d = gen.dim();
        let dt = 0.005;
        let scaled: Array2<C64> = gen.matrix().mapv(|z| z * C64::new(dt, 0.0));
        let norm = superrad::linalg::one_norm(scaled.view());
        let t0 = Instant::now();
        let e = superrad::linalg::expm(&scaled).unwrap();
        let t_expm = t0.elapsed().as_secs_f64();
        let t0 = Instant::now();
        let reps = 200;
        let p = superrad::linalg::PlanarMatrix::from_array(e.view());
        let xr = vec![0.1f64; d]; let xi = vec![0.0f64; d];
        let mut yr = vec![0.0f64; d]; let mut yi = vec![0.0f64; d];
        for _ in 0..reps { p.matvec(&xr, &xi, &mut yr, &mut yi); }
        let t_mv = t0.elapsed().as_secs_f64() / reps as f64;
        let t0 = Instant::now();
        let _ = superrad::linalg::matmul(e.view(), e.view());
        let t_mm = t0.elapsed().as_secs_f64();
        println!("N={n_atoms} D={d}: assemble {:.1} ms, ||A dt||={norm:.3}, expm {:.1} ms, matmul {:.1} ms, matvec {:.3} ms",
                 t_asm*1e3, t_expm*1e3, t_mm*1e3, t_mv*1e3);
    }
}
