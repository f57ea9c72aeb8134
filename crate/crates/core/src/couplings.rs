//! Pair couplings entering the master equation: the dissipative rates
//! `gamma_ij` and the coherent dipole-dipole shifts `f_ij`, in units of the
//! single-atom decay rate `gamma0 = 1`.
//!
//! Both are combinations of `sin xi / xi^k` and `cos xi / xi^k` terms. The
//! combination `cos xi / xi^2 - sin xi / xi^3` appearing in `gamma` suffers
//! catastrophic cancellation for small separations, so below
//! [`XI_SERIES_SWITCH`] the evaluators use 6-term Taylor expansions.

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::geometry::{pair_geometry, AtomConfiguration, PairGeometry};
use crate::linalg;
use crate::scalar::{Scalar, C};

/// Below this separation the series branches are used.
pub const XI_SERIES_SWITCH: f64 = 1e-2;

/// Coefficients of `cos(x)/x^2 - sin(x)/x^3 = sum_m c_m x^{2m}`,
/// `c_m = (-1)^{m+1} (2m+2) / (2m+3)!`.
const G1_SERIES: [f64; 6] = [
    -1.0 / 3.0,
    1.0 / 30.0,
    -1.0 / 840.0,
    1.0 / 45_360.0,
    -1.0 / 3_991_680.0,
    1.0 / 518_918_400.0,
];

/// Coefficients of `sin(x)/x^2 + cos(x)/x^3 - 1/x^3 = sum_k d_k x^{2k-1}`,
/// `d_k = (-1)^{k+1} (2k-1) / (2k)!` starting at the `1/x` term.
const H1_SERIES: [f64; 6] = [
    1.0 / 2.0,
    -1.0 / 8.0,
    1.0 / 144.0,
    -1.0 / 5_760.0,
    1.0 / 403_200.0,
    -1.0 / 43_545_600.0,
];

/// `cos(xi)/xi^2 - sin(xi)/xi^3`, stable for all positive `xi`.
fn radial_gamma_term<T: Scalar>(xi: T) -> T {
    if xi < T::of(XI_SERIES_SWITCH) {
        let x2 = xi * xi;
        let mut acc = T::zero();
        for &c in G1_SERIES.iter().rev() {
            acc = acc * x2 + T::of(c);
        }
        acc
    } else {
        xi.cos() / (xi * xi) - xi.sin() / (xi * xi * xi)
    }
}

/// `sin(xi)/xi^2 + cos(xi)/xi^3`, stable for all positive `xi`.
fn radial_f_term<T: Scalar>(xi: T) -> T {
    if xi < T::of(XI_SERIES_SWITCH) {
        let x2 = xi * xi;
        let mut acc = T::zero();
        for &c in H1_SERIES.iter().rev() {
            acc = acc * x2 + T::of(c);
        }
        T::one() / (xi * xi * xi) + acc / xi
    } else {
        xi.sin() / (xi * xi) + xi.cos() / (xi * xi * xi)
    }
}

/// Exact dissipative coupling `gamma_ij` for one pair.
pub fn gamma_exact<T: Scalar>(geom: &PairGeometry<T>) -> T {
    let xi = geom.xi;
    let cos2 = geom.alpha.cos().powi(2);
    let aniso = T::one() - T::of(3.0) * cos2;
    let perp = T::one() - cos2;
    T::of(1.5) * (aniso * radial_gamma_term(xi) + perp * xi.sin() / xi)
}

/// Exact coherent dipole-dipole shift `f_ij` for one pair.
pub fn f_exact<T: Scalar>(geom: &PairGeometry<T>) -> T {
    let xi = geom.xi;
    let cos2 = geom.alpha.cos().powi(2);
    let aniso = T::one() - T::of(3.0) * cos2;
    let perp = T::one() - cos2;
    T::of(0.75) * (aniso * radial_f_term(xi) - perp * xi.cos() / xi)
}

/// Static-limit shift, the small-separation asymptote of [`f_exact`].
pub fn f_close<T: Scalar>(geom: &PairGeometry<T>) -> T {
    let cos2 = geom.alpha.cos().powi(2);
    let aniso = T::one() - T::of(3.0) * cos2;
    T::of(0.75) * aniso / (geom.xi * geom.xi * geom.xi)
}

/// Which coefficient set enters the master equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Regime<T: Scalar> {
    /// Exact position-dependent coefficients.
    Exact,
    /// Distant atoms: `gamma = identity`, `f = 0` (independent emitters).
    Distant,
    /// Spatially close atoms: `gamma_ij = 1` for all pairs, static `1/xi^3`
    /// shifts.
    Close,
    /// Identical couplings `gamma_ij = 1`, `f_ij = f0`: observables do not
    /// depend on `f0`.
    PureSuperradiant { f0: T },
}

impl<T: Scalar> Regime<T> {
    pub fn tag(&self) -> &'static str {
        match self {
            Regime::Exact => "exact",
            Regime::Distant => "distant",
            Regime::Close => "close",
            Regime::PureSuperradiant { .. } => "pure_superradiant",
        }
    }

    /// Parse a tag; `f0` applies to the pure-superradiant regime.
    pub fn from_tag(tag: &str, f0: T) -> Result<Self> {
        match tag {
            "exact" => Ok(Regime::Exact),
            "distant" => Ok(Regime::Distant),
            "close" => Ok(Regime::Close),
            "pure_superradiant" | "pure" => Ok(Regime::PureSuperradiant { f0 }),
            other => Err(Error::InvalidInput(format!(
                "unknown regime '{other}' (expected exact, distant, close or pure_superradiant)"
            ))),
        }
    }
}

/// The N x N coupling matrices for one configuration.
#[derive(Debug, Clone)]
pub struct CouplingSet<T: Scalar> {
    /// Symmetric, unit diagonal, entries in [-1, 1].
    pub gamma: Array2<T>,
    /// Symmetric with zero diagonal.
    pub f: Array2<T>,
    pub regime: Regime<T>,
}

impl<T: Scalar> CouplingSet<T> {
    pub fn n_atoms(&self) -> usize {
        self.gamma.nrows()
    }

    /// Smallest eigenvalue of the `gamma` matrix (it is positive
    /// semidefinite for the exact coefficients).
    pub fn min_gamma_eigenvalue(&self) -> T {
        let n = self.n_atoms();
        let complexified =
            Array2::from_shape_fn((n, n), |(i, j)| C::new(self.gamma[(i, j)], T::zero()));
        linalg::hermitian_eigenvalues(&complexified)[0]
    }
}

/// Evaluate the coupling matrices for a configuration in a given regime.
pub fn build_couplings<T: Scalar>(
    config: &AtomConfiguration<T>,
    regime: Regime<T>,
) -> CouplingSet<T> {
    let n = config.n_atoms();
    let mut gamma = Array2::zeros((n, n));
    let mut f = Array2::zeros((n, n));
    for i in 0..n {
        gamma[(i, i)] = T::one();
    }
    for i in 0..n {
        for j in i + 1..n {
            let geom = pair_geometry(config, i, j).expect("distinct valid indices");
            let (g, shift) = match regime {
                Regime::Exact => (gamma_exact(&geom), f_exact(&geom)),
                Regime::Distant => (T::zero(), T::zero()),
                Regime::Close => (T::one(), f_close(&geom)),
                Regime::PureSuperradiant { f0 } => (T::one(), f0),
            };
            gamma[(i, j)] = g;
            gamma[(j, i)] = g;
            f[(i, j)] = shift;
            f[(j, i)] = shift;
        }
    }
    CouplingSet { gamma, f, regime }
}
