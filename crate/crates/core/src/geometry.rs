//! Random atomic configurations in spherical containers and pairwise
//! geometric parameters.
//!
//! Positions are dimensionless (premultiplied by the radiation wavenumber
//! `k0`), so the container is characterized entirely by the average
//! interatomic distance `k0R`.

use std::io::Write;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Pair-distance cutoff default: `k0 * a0` for a 500 nm transition
/// (Bohr radius over reduced wavelength).
pub const DEFAULT_XI_MIN: f64 = 6.6e-4;

/// Default bound on whole-configuration redraws before sampling gives up.
pub const DEFAULT_MAX_REDRAWS: u64 = 1_000_000;

/// N atom positions in dimensionless units plus the common dipole axis.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomConfiguration<T: Scalar> {
    positions: Vec<[T; 3]>,
    dipole_axis: [T; 3],
}

/// Geometry of one atom pair: separation `xi = k0 r_ij` and the angle between
/// the relative position and the dipole axis, canonicalized to `[0, pi/2]`
/// (the couplings depend only on `cos^2 alpha`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairGeometry<T: Scalar> {
    pub xi: T,
    pub alpha: T,
}

fn norm3<T: Scalar>(v: [T; 3]) -> T {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

impl<T: Scalar> AtomConfiguration<T> {
    /// Build a configuration with the default dipole axis `(0, 0, 1)`.
    pub fn new(positions: Vec<[T; 3]>) -> Result<Self> {
        Self::with_axis(positions, [T::zero(), T::zero(), T::one()])
    }

    /// Build a configuration with an explicit dipole axis (unit norm within
    /// 1e-12).
    pub fn with_axis(positions: Vec<[T; 3]>, dipole_axis: [T; 3]) -> Result<Self> {
        if positions.is_empty() {
            return Err(Error::InvalidInput("need at least one atom".into()));
        }
        let axis_norm = norm3(dipole_axis).as_f64();
        if (axis_norm - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidInput(format!(
                "dipole axis must have unit norm, got {axis_norm}"
            )));
        }
        Ok(AtomConfiguration {
            positions,
            dipole_axis,
        })
    }

    pub fn n_atoms(&self) -> usize {
        self.positions.len()
    }

    pub fn positions(&self) -> &[[T; 3]] {
        &self.positions
    }

    pub fn dipole_axis(&self) -> [T; 3] {
        self.dipole_axis
    }

    /// Mean over all N(N-1)/2 pairwise distances.
    pub fn mean_pair_distance(&self) -> T {
        let n = self.n_atoms();
        let mut sum = T::zero();
        let mut count = 0usize;
        for i in 0..n {
            for j in i + 1..n {
                sum += self.pair_distance(i, j);
                count += 1;
            }
        }
        if count == 0 {
            T::zero()
        } else {
            sum / T::of(count as f64)
        }
    }

    pub fn min_pair_distance(&self) -> T {
        let n = self.n_atoms();
        let mut best = T::infinity();
        for i in 0..n {
            for j in i + 1..n {
                best = best.min(self.pair_distance(i, j));
            }
        }
        best
    }

    fn pair_distance(&self, i: usize, j: usize) -> T {
        let a = self.positions[i];
        let b = self.positions[j];
        norm3([a[0] - b[0], a[1] - b[1], a[2] - b[2]])
    }

    /// Largest distance of any atom from the origin (the container radius for
    /// sampled configurations, up to rescaling of the sampling sphere).
    pub fn max_radius(&self) -> T {
        self.positions
            .iter()
            .map(|&p| norm3(p))
            .fold(T::zero(), T::max)
    }

    /// Text dump: header with the sampling parameters, then one position per
    /// line in three columns.
    pub fn write_dump<W: Write>(&self, k0r: T, seed: u64, mut w: W) -> std::io::Result<()> {
        writeln!(w, "# k0R={:.16e} seed={}", k0r.as_f64(), seed)?;
        for p in &self.positions {
            writeln!(
                w,
                "{:.16e} {:.16e} {:.16e}",
                p[0].as_f64(),
                p[1].as_f64(),
                p[2].as_f64()
            )?;
        }
        Ok(())
    }
}

/// Pairwise separation and dipole angle for atoms `i` and `j`.
pub fn pair_geometry<T: Scalar>(
    config: &AtomConfiguration<T>,
    i: usize,
    j: usize,
) -> Result<PairGeometry<T>> {
    let n = config.n_atoms();
    if i >= n {
        return Err(Error::AtomIndexOutOfRange { index: i, n_atoms: n });
    }
    if j >= n {
        return Err(Error::AtomIndexOutOfRange { index: j, n_atoms: n });
    }
    if i == j {
        return Err(Error::IdenticalAtoms { index: i });
    }
    let a = config.positions[i];
    let b = config.positions[j];
    let r = [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
    let xi = norm3(r);
    let axis = config.dipole_axis;
    let dot = r[0] * axis[0] + r[1] * axis[1] + r[2] * axis[2];
    // canonicalize to [0, pi/2]: alpha and pi - alpha are equivalent
    let cos_alpha = (dot / xi).abs().min(T::one());
    Ok(PairGeometry {
        xi,
        alpha: cos_alpha.acos(),
    })
}

/// One point uniformly distributed in the unit ball (rejection from the
/// enclosing cube). Exposed so the radial law is testable directly.
pub fn sample_point_in_unit_ball<R: Rng>(rng: &mut R) -> [f64; 3] {
    loop {
        let x = 2.0 * rng.random::<f64>() - 1.0;
        let y = 2.0 * rng.random::<f64>() - 1.0;
        let z = 2.0 * rng.random::<f64>() - 1.0;
        if x * x + y * y + z * z <= 1.0 {
            return [x, y, z];
        }
    }
}

/// Draw a random configuration of `n_atoms` atoms: positions uniform in a
/// ball, rescaled so the mean pairwise distance equals `k0r` exactly. Any
/// pair closer than `xi_min` triggers a redraw of the whole configuration.
///
/// Deterministic for a given seed.
pub fn sample_configuration<T: Scalar>(
    n_atoms: usize,
    k0r: T,
    xi_min: T,
    rng_seed: u64,
) -> Result<AtomConfiguration<T>> {
    sample_configuration_with(n_atoms, k0r, xi_min, rng_seed, DEFAULT_MAX_REDRAWS)
}

/// [`sample_configuration`] with an explicit redraw budget.
pub fn sample_configuration_with<T: Scalar>(
    n_atoms: usize,
    k0r: T,
    xi_min: T,
    rng_seed: u64,
    max_redraws: u64,
) -> Result<AtomConfiguration<T>> {
    if n_atoms < 2 {
        return Err(Error::UnsupportedAtomCount {
            context: "sample_configuration",
            expected: "at least 2 atoms",
            found: n_atoms,
        });
    }
    if !(k0r > T::zero()) || !(k0r > xi_min) {
        return Err(Error::InvalidInput(format!(
            "k0R must be positive and larger than xi_min (k0R = {}, xi_min = {})",
            k0r.as_f64(),
            xi_min.as_f64()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    for _ in 0..max_redraws {
        let mut positions: Vec<[T; 3]> = Vec::with_capacity(n_atoms);
        for _ in 0..n_atoms {
            let p = sample_point_in_unit_ball(&mut rng);
            positions.push([T::of(p[0]), T::of(p[1]), T::of(p[2])]);
        }
        let config = AtomConfiguration {
            positions,
            dipole_axis: [T::zero(), T::zero(), T::one()],
        };
        let mean = config.mean_pair_distance();
        if !(mean > T::zero()) {
            continue; // coincident points; vanishingly rare
        }
        let factor = k0r / mean;
        let config = AtomConfiguration {
            positions: config
                .positions
                .into_iter()
                .map(|p| [p[0] * factor, p[1] * factor, p[2] * factor])
                .collect(),
            dipole_axis: config.dipole_axis,
        };
        if config.min_pair_distance() > xi_min {
            return Ok(config);
        }
    }
    Err(Error::SamplingExhausted {
        redraws: max_redraws,
        k0r: k0r.as_f64(),
        xi_min: xi_min.as_f64(),
    })
}
