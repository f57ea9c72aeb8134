//! Physical observables: radiated energy rate, l1-norm of coherence, pulse
//! statistics and the cooperativity parameter.
//!
//! The energy rate is evaluated in expectation form,
//! `I = sum_ij gamma_ij <s+_i s-_j>`, which is exact on the grid; the
//! finite-difference form `-d<n>/dt` is kept as a cross-check.

use crate::basis::{atom_bit, BlockBasis};
use crate::couplings::CouplingSet;
use crate::error::{Error, Result};
use crate::propagator::TimeGrid;
use crate::scalar::{Scalar, C};
use crate::state::BlockDensityMatrix;

/// Sampled intensity and coherence on a time grid, optionally with standard
/// errors when ensemble-averaged.
#[derive(Debug, Clone)]
pub struct TimeSeries<T: Scalar> {
    pub grid: TimeGrid<T>,
    pub intensity: Vec<T>,
    pub coherence: Vec<T>,
    pub intensity_stderr: Option<Vec<T>>,
    pub coherence_stderr: Option<Vec<T>>,
}

impl<T: Scalar> TimeSeries<T> {
    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }
}

/// Relative pulse maxima and their times.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseStats<T: Scalar> {
    pub a_intensity: T,
    pub t_intensity: T,
    pub a_coherence: T,
    pub t_coherence: T,
    pub baseline_i0: T,
    pub baseline_c0: T,
}

/// Precomputed slot/weight pairs evaluating the energy rate on a state
/// vector: `I = sum w_k Re(v[slot_k])`.
#[derive(Debug, Clone)]
pub struct IntensityKernel<T: Scalar> {
    terms: Vec<(usize, T)>,
}

impl<T: Scalar> IntensityKernel<T> {
    pub fn new(couplings: &CouplingSet<T>, basis: &BlockBasis) -> Self {
        let n_atoms = basis.n_atoms();
        debug_assert_eq!(couplings.n_atoms(), n_atoms);
        let mut terms = Vec::new();
        for n in 0..=n_atoms {
            for &u in basis.sector_masks(n) {
                for i in 0..n_atoms {
                    let bi = atom_bit(n_atoms, i);
                    for j in 0..n_atoms {
                        let bj = atom_bit(n_atoms, j);
                        let g = couplings.gamma[(i, j)];
                        if g == T::zero() {
                            continue;
                        }
                        // <u| rho s+_i s-_j |u> = rho[u, u - bj + bi]
                        if i == j {
                            if u & bi != 0 {
                                terms.push((basis.slot_of_masks(u, u), g));
                            }
                        } else if u & bj != 0 && u & bi == 0 {
                            terms.push((basis.slot_of_masks(u, u - bj + bi), g));
                        }
                    }
                }
            }
        }
        IntensityKernel { terms }
    }

    pub fn eval_slots(&self, v: &[C<T>]) -> T {
        let mut acc = T::zero();
        for &(slot, w) in &self.terms {
            acc += w * v[slot].re;
        }
        acc
    }
}

/// Radiated energy rate `I = sum_ij gamma_ij <s+_i s-_j>` in units of
/// `gamma0`.
pub fn intensity<T: Scalar>(
    rho: &BlockDensityMatrix<T>,
    couplings: &CouplingSet<T>,
) -> Result<T> {
    if rho.n_atoms() != couplings.n_atoms() {
        return Err(Error::DimensionMismatch {
            context: "intensity",
            expected: couplings.n_atoms(),
            found: rho.n_atoms(),
        });
    }
    let basis = BlockBasis::new(rho.n_atoms());
    let kernel = IntensityKernel::new(couplings, &basis);
    let v = crate::liouvillian::vectorize(&basis, rho);
    Ok(kernel.eval_slots(&v))
}

/// l1-norm of coherence: sum of absolute off-diagonal entries in the product
/// basis. Entries outside the blocks vanish identically, so the block sum is
/// the full sum.
pub fn coherence_l1<T: Scalar>(rho: &BlockDensityMatrix<T>) -> T {
    let mut acc = T::zero();
    for b in rho.blocks() {
        for r in 0..b.nrows() {
            for c in 0..b.ncols() {
                if r != c {
                    acc += b[(r, c)].norm();
                }
            }
        }
    }
    acc
}

/// Pointwise intensity and coherence for a list of evolved states.
pub fn intensity_series<T: Scalar>(
    states: &[BlockDensityMatrix<T>],
    couplings: &CouplingSet<T>,
    grid: &TimeGrid<T>,
) -> Result<TimeSeries<T>> {
    if states.len() != grid.len() {
        return Err(Error::DimensionMismatch {
            context: "intensity_series",
            expected: grid.len(),
            found: states.len(),
        });
    }
    let mut intensity_values = Vec::with_capacity(states.len());
    let mut coherence_values = Vec::with_capacity(states.len());
    for s in states {
        intensity_values.push(intensity(s, couplings)?);
        coherence_values.push(coherence_l1(s));
    }
    Ok(TimeSeries {
        grid: grid.clone(),
        intensity: intensity_values,
        coherence: coherence_values,
        intensity_stderr: None,
        coherence_stderr: None,
    })
}

/// Finite-difference energy rate `-d<n>/dt` from the excitation expectation
/// sampled on the grid (central differences inside, one-sided at the ends).
/// Cross-check only; the expectation form is the primary path.
pub fn finite_difference_intensity<T: Scalar>(excitation: &[T], grid: &TimeGrid<T>) -> Vec<T> {
    let t = grid.points();
    let n = excitation.len();
    assert_eq!(n, t.len());
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let d = if k == 0 {
            (excitation[1] - excitation[0]) / (t[1] - t[0])
        } else if k == n - 1 {
            (excitation[n - 1] - excitation[n - 2]) / (t[n - 1] - t[n - 2])
        } else {
            // three-point derivative valid for nonuniform spacing
            let h1 = t[k] - t[k - 1];
            let h2 = t[k + 1] - t[k];
            let w1 = -h2 / (h1 * (h1 + h2));
            let w2 = (h2 - h1) / (h1 * h2);
            let w3 = h1 / (h2 * (h1 + h2));
            w1 * excitation[k - 1] + w2 * excitation[k] + w3 * excitation[k + 1]
        };
        out.push(-d);
    }
    out
}

fn refine_peak<T: Scalar>(t: &[T], y: &[T], k: usize) -> (T, T) {
    if k == 0 || k + 1 >= y.len() {
        return (t[k], y[k]);
    }
    // quadratic through the peak sample and its neighbors (nonuniform grid)
    let (t0, t1, t2) = (t[k - 1], t[k], t[k + 1]);
    let (y0, y1, y2) = (y[k - 1], y[k], y[k + 1]);
    let h1 = t1 - t0;
    let h2 = t2 - t1;
    let d1 = (y1 - y0) / h1;
    let d2 = (y2 - y1) / h2;
    let curvature = (d2 - d1) / (h1 + h2);
    if !(curvature < T::zero()) {
        return (t1, y1);
    }
    // vertex of y(t) = y1 + d(t - t1) + curvature (t - t1)(t - t0-ish):
    // fit p(t) = a (t - ts)^2 + ym exactly through the three points
    let a = curvature;
    // slope of the parabola at t1
    let slope = (d1 * h2 + d2 * h1) / (h1 + h2);
    let ts = t1 - slope / (T::of(2.0) * a);
    let ts = ts.max(t0).min(t2);
    let ym = y1 + slope * (ts - t1) + a * (ts - t1) * (ts - t1);
    (ts, ym)
}

/// Locate the maxima of the intensity and coherence series, refined by local
/// quadratic interpolation, and subtract the caller-supplied baselines.
pub fn pulse_stats<T: Scalar>(
    series: &TimeSeries<T>,
    baseline_i0: T,
    baseline_c0: T,
) -> Result<PulseStats<T>> {
    if series.is_empty() || series.intensity.is_empty() {
        return Err(Error::EmptySeries);
    }
    let t = series.grid.points();
    let argmax = |y: &[T]| -> usize {
        let mut best = 0;
        for (k, v) in y.iter().enumerate() {
            if *v > y[best] {
                best = k;
            }
        }
        best
    };
    let ki = argmax(&series.intensity);
    let (ti, yi) = refine_peak(t, &series.intensity, ki);
    let kc = argmax(&series.coherence);
    let (tc, yc) = refine_peak(t, &series.coherence, kc);
    Ok(PulseStats {
        a_intensity: yi - baseline_i0,
        t_intensity: ti,
        a_coherence: yc - baseline_c0,
        t_coherence: tc,
        baseline_i0,
        baseline_c0,
    })
}

/// Cooperativity parameter: number density times the cubed wavelength over
/// `4 pi^2`, with the container radius given in dimensionless units.
pub fn cooperativity<T: Scalar>(n_atoms: usize, sphere_radius_xi: T) -> T {
    let r3 = sphere_radius_xi * sphere_radius_xi * sphere_radius_xi;
    let density = T::of(n_atoms as f64) / (T::of(4.0 / 3.0) * T::PI() * r3);
    let lambda3 = T::of(2.0).powi(3) * T::PI().powi(3); // (2 pi)^3 in xi units
    density * lambda3 / (T::of(4.0) * T::PI() * T::PI())
}
