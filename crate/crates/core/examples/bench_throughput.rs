use std::time::Instant;
use superrad::couplings::Regime;
use superrad::ensemble::{run_ensemble, EnsembleSpec, InitialState};
use superrad::propagator::TimeGrid;

fn main() {
    // N=3 superradiant point
    let spec = EnsembleSpec {
        n_atoms: 3,
        k0r: 0.67,
        n_samples: 500,
        base_seed: 1,
        regime: Regime::Exact,
        initial: InitialState::FullyExcited,
        grid: TimeGrid::uniform(6.0, 1201).unwrap(),
        xi_min: 6.6e-4,
        max_redraws: 1_000_000,
    };
    let t0 = Instant::now();
    let s = run_ensemble(&spec).unwrap();
    let dt = t0.elapsed().as_secs_f64();
    println!("N=3 uniform 1201pts, 500 samples: {dt:.2} s -> {:.2} ms/realization; peak I={:.4}",
             1000.0 * dt / 500.0, s.intensity.iter().cloned().fold(0.0f64, f64::max));

    // N=3 subradiant point (log grid)
    let spec2 = EnsembleSpec {
        n_atoms: 3,
        k0r: 0.466,
        n_samples: 100,
        base_seed: 1,
        regime: Regime::Exact,
        initial: InitialState::Subradiant,
        grid: TimeGrid::log_after(1.0, 100, 1e5, 40).unwrap(),
        xi_min: 6.6e-4,
        max_redraws: 1_000_000,
    };
    println!("log grid points: {}", spec2.grid.len());
    let t0 = Instant::now();
    let s2 = run_ensemble(&spec2).unwrap();
    let dt = t0.elapsed().as_secs_f64();
    println!("N=3 subradiant log grid, 100 samples: {dt:.2} s -> {:.2} ms/realization; peak I={:.4}",
             1000.0 * dt / 100.0, s2.intensity.iter().cloned().fold(0.0f64, f64::max));

    // N=4 point
    let spec3 = EnsembleSpec {
        n_atoms: 4,
        k0r: 0.85,
        n_samples: 100,
        base_seed: 1,
        regime: Regime::Exact,
        initial: InitialState::FullyExcited,
        grid: TimeGrid::uniform(4.0, 801).unwrap(),
        xi_min: 6.6e-4,
        max_redraws: 1_000_000,
    };
    let t0 = Instant::now();
    let s3 = run_ensemble(&spec3).unwrap();
    let dt = t0.elapsed().as_secs_f64();
    println!("N=4 uniform 801pts, 100 samples: {dt:.2} s -> {:.2} ms/realization; peak I={:.4}",
             1000.0 * dt / 100.0, s3.intensity.iter().cloned().fold(0.0f64, f64::max));

    // N=5 point
    let spec4 = EnsembleSpec {
        n_atoms: 5,
        k0r: 0.94,
        n_samples: 30,
        base_seed: 1,
        regime: Regime::Exact,
        initial: InitialState::FullyExcited,
        grid: TimeGrid::uniform(3.0, 601).unwrap(),
        xi_min: 6.6e-4,
        max_redraws: 1_000_000,
    };
    let t0 = Instant::now();
    let s4 = run_ensemble(&spec4).unwrap();
    let dt = t0.elapsed().as_secs_f64();
    println!("N=5 uniform 601pts, 30 samples: {dt:.2} s -> {:.2} ms/realization; peak I={:.4}",
             1000.0 * dt / 30.0, s4.intensity.iter().cloned().fold(0.0f64, f64::max));
}
