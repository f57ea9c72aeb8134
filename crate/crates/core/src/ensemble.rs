//! Monte Carlo averaging over random atomic configurations at fixed `k0R`,
//! and sweeps over `k0R`.
//!
//! Realizations are independent work items distributed over a worker pool in
//! fixed-size chunks; chunk partial sums are merged in index order, so the
//! result is bit-identical regardless of the number of workers.

use rayon::prelude::*;

use crate::couplings::{build_couplings, Regime};
use crate::error::{Error, Result};
use crate::geometry::sample_configuration_with;
use crate::liouvillian::assemble;
use crate::observables::{pulse_stats, IntensityKernel, PulseStats, TimeSeries};
use crate::propagator::{evolve_vectors, TimeGrid};
use crate::scalar::Scalar;
use crate::state::{fully_excited_state, subradiant_state};

/// Fixed chunk size of the deterministic reduction.
const REDUCTION_CHUNK: usize = 32;

/// Initial state selector for ensemble runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitialState {
    FullyExcited,
    Subradiant,
}

impl InitialState {
    pub fn tag(&self) -> &'static str {
        match self {
            InitialState::FullyExcited => "fully_excited",
            InitialState::Subradiant => "subradiant",
        }
    }

    pub fn from_tag(tag: &str) -> Result<Self> {
        match tag {
            "fully_excited" => Ok(InitialState::FullyExcited),
            "subradiant" => Ok(InitialState::Subradiant),
            other => Err(Error::InvalidInput(format!(
                "unknown initial state '{other}' (expected fully_excited or subradiant)"
            ))),
        }
    }

    /// Baselines `(I0, C0)` entering the relative pulse maxima.
    pub fn baselines<T: Scalar>(&self, n_atoms: usize) -> (T, T) {
        match self {
            InitialState::FullyExcited => (T::of(n_atoms as f64), T::zero()),
            InitialState::Subradiant => (T::one(), T::one()),
        }
    }
}

/// Everything one averaged run needs.
#[derive(Debug, Clone)]
pub struct EnsembleSpec<T: Scalar> {
    pub n_atoms: usize,
    pub k0r: T,
    pub n_samples: usize,
    pub base_seed: u64,
    pub regime: Regime<T>,
    pub initial: InitialState,
    pub grid: TimeGrid<T>,
    pub xi_min: T,
    pub max_redraws: u64,
}

impl<T: Scalar> EnsembleSpec<T> {
    pub fn validate(&self) -> Result<()> {
        if self.n_samples == 0 {
            return Err(Error::InvalidInput("n_samples must be at least 1".into()));
        }
        if self.n_atoms < 2 {
            return Err(Error::UnsupportedAtomCount {
                context: "ensemble",
                expected: "at least 2 atoms",
                found: self.n_atoms,
            });
        }
        if self.initial == InitialState::Subradiant && self.n_atoms != 3 {
            return Err(Error::UnsupportedAtomCount {
                context: "subradiant ensemble",
                expected: "exactly 3 atoms",
                found: self.n_atoms,
            });
        }
        Ok(())
    }

    fn with_k0r(&self, k0r: T) -> Self {
        let mut s = self.clone();
        s.k0r = k0r;
        s
    }
}

/// Per-`k0R` pulse statistics of an averaged run.
#[derive(Debug, Clone, Copy)]
pub struct SweepRow<T: Scalar> {
    pub k0r: T,
    pub a_intensity: T,
    pub t_intensity: T,
    pub a_coherence: T,
    pub t_coherence: T,
    pub a_intensity_stderr: T,
    pub a_coherence_stderr: T,
    pub n_samples: usize,
}

/// Rows sorted ascending in `k0R`.
#[derive(Debug, Clone)]
pub struct SweepResult<T: Scalar> {
    pub rows: Vec<SweepRow<T>>,
}

/// Derive the seed of realization `k` from the base seed (splitmix64
/// finalizer over the pair).
pub fn split_seed(base_seed: u64, k: u64) -> u64 {
    let mut z = base_seed
        .wrapping_add(k.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Per-grid-point running mean and squared deviation (Welford), merged
/// across chunks with the pairwise combination rule. Identical realizations
/// yield an exactly zero spread.
struct ChunkAccum<T> {
    count: usize,
    mean_i: Vec<T>,
    m2_i: Vec<T>,
    mean_c: Vec<T>,
    m2_c: Vec<T>,
}

impl<T: Scalar> ChunkAccum<T> {
    fn new(len: usize) -> Self {
        ChunkAccum {
            count: 0,
            mean_i: vec![T::zero(); len],
            m2_i: vec![T::zero(); len],
            mean_c: vec![T::zero(); len],
            m2_c: vec![T::zero(); len],
        }
    }

    /// `count` advances once per realization (after all grid points), so
    /// every point of one realization sees the same prior count.
    fn push(&mut self, k: usize, intensity: T, coherence: T) {
        let n = T::of(self.count as f64);
        let n1 = n + T::one();
        let d_i = intensity - self.mean_i[k];
        self.mean_i[k] += d_i / n1;
        self.m2_i[k] += d_i * (intensity - self.mean_i[k]);
        let d_c = coherence - self.mean_c[k];
        self.mean_c[k] += d_c / n1;
        self.m2_c[k] += d_c * (coherence - self.mean_c[k]);
    }

    fn merge(&mut self, other: &ChunkAccum<T>) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            self.count = other.count;
            self.mean_i.clone_from(&other.mean_i);
            self.m2_i.clone_from(&other.m2_i);
            self.mean_c.clone_from(&other.mean_c);
            self.m2_c.clone_from(&other.m2_c);
            return;
        }
        let na = T::of(self.count as f64);
        let nb = T::of(other.count as f64);
        let nab = na + nb;
        for k in 0..self.mean_i.len() {
            let d = other.mean_i[k] - self.mean_i[k];
            self.mean_i[k] += d * nb / nab;
            self.m2_i[k] += other.m2_i[k] + d * d * na * nb / nab;
            let d = other.mean_c[k] - self.mean_c[k];
            self.mean_c[k] += d * nb / nab;
            self.m2_c[k] += other.m2_c[k] + d * d * na * nb / nab;
        }
        self.count += other.count;
    }
}

/// One realization's intensity and coherence, accumulated into `acc`.
fn accumulate_realization<T: Scalar>(
    spec: &EnsembleSpec<T>,
    sample_index: usize,
    acc: &mut ChunkAccum<T>,
) -> Result<()> {
    let seed = split_seed(spec.base_seed, sample_index as u64);
    let config = sample_configuration_with(
        spec.n_atoms,
        spec.k0r,
        spec.xi_min,
        seed,
        spec.max_redraws,
    )?;
    let couplings = build_couplings(&config, spec.regime);
    let generator = assemble(&couplings, spec.n_atoms)?;
    let basis = generator.basis();
    let kernel = IntensityKernel::new(&couplings, basis);
    let off_diag = basis.off_diagonal_slots();
    let initial = match spec.initial {
        InitialState::FullyExcited => fully_excited_state(spec.n_atoms),
        InitialState::Subradiant => subradiant_state(spec.n_atoms)?,
    };
    evolve_vectors(&generator, &initial, &spec.grid, |k, _t, v| {
        let i = kernel.eval_slots(v);
        let mut c = T::zero();
        for &slot in &off_diag {
            c += v[slot].norm();
        }
        acc.push(k, i, c);
    })?;
    acc.count += 1;
    Ok(())
}

/// Average intensity and coherence over `n_samples` random configurations,
/// with pointwise standard errors of the mean.
pub fn run_ensemble<T: Scalar>(spec: &EnsembleSpec<T>) -> Result<TimeSeries<T>> {
    spec.validate()?;
    let len = spec.grid.len();
    let indices: Vec<usize> = (0..spec.n_samples).collect();
    let partials: Vec<Result<ChunkAccum<T>>> = indices
        .par_chunks(REDUCTION_CHUNK)
        .map(|chunk| {
            let mut acc = ChunkAccum::new(len);
            for &k in chunk {
                accumulate_realization(spec, k, &mut acc)?;
            }
            Ok(acc)
        })
        .collect();

    let mut total = ChunkAccum::new(len);
    for p in partials {
        total.merge(&p?);
    }
    debug_assert_eq!(total.count, spec.n_samples);

    let n = T::of(spec.n_samples as f64);
    let mut intensity = Vec::with_capacity(len);
    let mut coherence = Vec::with_capacity(len);
    let mut intensity_stderr = Vec::with_capacity(len);
    let mut coherence_stderr = Vec::with_capacity(len);
    let stderr = |m2: T| -> T {
        if spec.n_samples < 2 {
            return T::zero();
        }
        (m2.max(T::zero()) / ((n - T::one()) * n)).sqrt()
    };
    for k in 0..len {
        intensity.push(total.mean_i[k]);
        coherence.push(total.mean_c[k]);
        intensity_stderr.push(stderr(total.m2_i[k]));
        coherence_stderr.push(stderr(total.m2_c[k]));
    }
    Ok(TimeSeries {
        grid: spec.grid.clone(),
        intensity,
        coherence,
        intensity_stderr: Some(intensity_stderr),
        coherence_stderr: Some(coherence_stderr),
    })
}

/// Run the ensemble at every `k0R` and extract pulse statistics of the
/// averaged curves, with the baselines fixed by the initial state.
pub fn sweep<T: Scalar>(base_spec: &EnsembleSpec<T>, k0r_values: &[T]) -> Result<SweepResult<T>> {
    if k0r_values.is_empty() {
        return Err(Error::InvalidInput("sweep needs at least one k0R".into()));
    }
    let mut values = k0r_values.to_vec();
    values.sort_by(|a, b| a.partial_cmp(b).expect("finite k0R"));
    let (i0, c0) = base_spec.initial.baselines(base_spec.n_atoms);
    let mut rows = Vec::with_capacity(values.len());
    for &k0r in &values {
        let spec = base_spec.with_k0r(k0r);
        let series = run_ensemble(&spec)?;
        let stats: PulseStats<T> = pulse_stats(&series, i0, c0)?;
        let stderr_at = |errs: &Option<Vec<T>>, t_peak: T| -> T {
            let points = series.grid.points();
            let mut nearest = 0;
            for (k, &t) in points.iter().enumerate() {
                if (t - t_peak).abs() < (points[nearest] - t_peak).abs() {
                    nearest = k;
                }
            }
            errs.as_ref().map_or(T::zero(), |e| e[nearest])
        };
        rows.push(SweepRow {
            k0r,
            a_intensity: stats.a_intensity,
            t_intensity: stats.t_intensity,
            a_coherence: stats.a_coherence,
            t_coherence: stats.t_coherence,
            a_intensity_stderr: stderr_at(&series.intensity_stderr, stats.t_intensity),
            a_coherence_stderr: stderr_at(&series.coherence_stderr, stats.t_coherence),
            n_samples: spec.n_samples,
        });
    }
    Ok(SweepResult { rows })
}

/// Least-squares power-law fit `value = prefactor * k0r^exponent` over the
/// window, in log-log coordinates. All values inside the window must share
/// one sign.
pub fn fit_power_law<T: Scalar>(
    series: &[(T, T)],
    window: (T, T),
) -> Result<(T, T)> {
    let selected: Vec<(T, T)> = series
        .iter()
        .copied()
        .filter(|&(x, _)| x >= window.0 && x <= window.1)
        .collect();
    if selected.len() < 3 {
        return Err(Error::PowerLawFit("need at least 3 points in the window"));
    }
    let positive = selected.iter().filter(|&&(_, y)| y > T::zero()).count();
    if positive != 0 && positive != selected.len() {
        return Err(Error::PowerLawFit("values change sign inside the window"));
    }
    if selected.iter().any(|&(_, y)| y == T::zero()) {
        return Err(Error::PowerLawFit("zero value inside the window"));
    }
    let sign = if positive == 0 { -T::one() } else { T::one() };
    let n = T::of(selected.len() as f64);
    let mut sx = T::zero();
    let mut sy = T::zero();
    let mut sxx = T::zero();
    let mut sxy = T::zero();
    for &(x, y) in &selected {
        let lx = x.ln();
        let ly = y.abs().ln();
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let intercept = (sy - slope * sx) / n;
    Ok((slope, sign * intercept.exp()))
}
