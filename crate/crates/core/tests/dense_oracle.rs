//! Equivalence of the block-structured generator with a brute-force
//! full-Hilbert-space construction.

mod common;

use common::{
    coherence_l1_full, dense_liouvillian_apply, dense_superoperator, random_block_supported,
};
use ndarray::Array2;
use num_complex::Complex64 as C64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use superrad::couplings::{build_couplings, Regime};
use superrad::geometry::{sample_configuration, AtomConfiguration};
use superrad::liouvillian::{apply, assemble};
use superrad::state::BlockDensityMatrix;

fn max_abs_diff(a: &Array2<C64>, b: &Array2<C64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (*x - *y).norm())
        .fold(0.0, f64::max)
}

#[test]
fn block_generator_matches_dense_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7777);
    let mut checked = 0usize;
    for n_atoms in 1..=4usize {
        for &k0r in &[0.6, 1.0, 3.0] {
            let config = if n_atoms == 1 {
                AtomConfiguration::new(vec![[0.0, 0.0, 0.0]]).unwrap()
            } else {
                sample_configuration::<f64>(n_atoms, k0r, 1e-6, 100 + n_atoms as u64).unwrap()
            };
            let set = build_couplings(&config, Regime::Exact);
            let generator = assemble(&set, n_atoms).unwrap();
            let trials = if n_atoms == 1 { 4 } else { 10 };
            for _ in 0..trials {
                let rho = random_block_supported(n_atoms, &mut rng);
                let block_image = apply(&generator, &rho).unwrap().to_full();
                let dense_image = dense_liouvillian_apply(&set, &rho.to_full());
                let diff = max_abs_diff(&block_image, &dense_image);
                assert!(
                    diff <= 1e-12,
                    "N={n_atoms} k0R={k0r}: block vs dense deviation {diff}"
                );
                checked += 1;
            }
        }
    }
    assert!(checked >= 100, "only {checked} random inputs checked");
}

#[test]
fn dense_oracle_matches_other_regimes_too() {
    let mut rng = ChaCha8Rng::seed_from_u64(321);
    let config = sample_configuration::<f64>(3, 0.7, 1e-6, 5).unwrap();
    for regime in [
        Regime::Distant,
        Regime::Close,
        Regime::PureSuperradiant { f0: 0.7 },
    ] {
        let set = build_couplings(&config, regime);
        let generator = assemble(&set, 3).unwrap();
        for _ in 0..5 {
            let rho = random_block_supported(3, &mut rng);
            let block_image = apply(&generator, &rho).unwrap().to_full();
            let dense_image = dense_liouvillian_apply(&set, &rho.to_full());
            assert!(max_abs_diff(&block_image, &dense_image) <= 1e-12);
        }
    }
}

#[test]
fn single_atom_full_superoperator_spectrum() {
    // all four entries of the 2x2 density matrix: rates {0, -1, -1/2, -1/2};
    // the stored block entries see only the population pair {0, -1}
    let config = AtomConfiguration::new(vec![[0.0, 0.0, 0.0]]).unwrap();
    let set = build_couplings(&config, Regime::Exact);
    let a = dense_superoperator(&set);
    let mut eigs: Vec<f64> = superrad::linalg::eigenvalues(&a)
        .unwrap()
        .iter()
        .map(|z| {
            assert!(z.im.abs() < 1e-12);
            z.re
        })
        .collect();
    eigs.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let expected = [-1.0, -0.5, -0.5, 0.0];
    for (e, x) in eigs.iter().zip(expected.iter()) {
        assert!((e - x).abs() < 1e-12, "{eigs:?}");
    }

    let generator = assemble(&set, 1).unwrap();
    let mut block_eigs: Vec<f64> = generator
        .eigenvalues()
        .unwrap()
        .iter()
        .map(|z| z.re)
        .collect();
    block_eigs.sort_by(|x, y| x.partial_cmp(y).unwrap());
    assert!((block_eigs[0] + 1.0).abs() < 1e-12);
    assert!(block_eigs[1].abs() < 1e-12);
}

#[test]
fn coherence_of_ghz_like_superposition() {
    // (|ee> + |gg>)/sqrt(2) lies outside the block structure; the full-space
    // coherence sum still gives 1 (two entries of modulus 1/2)
    let dim = 4;
    let mut rho = Array2::<C64>::zeros((dim, dim));
    let half = C64::new(0.5, 0.0);
    // |gg> = index 0, |ee> = index 3
    rho[(0, 0)] = half;
    rho[(3, 3)] = half;
    rho[(0, 3)] = half;
    rho[(3, 0)] = half;
    assert!((coherence_l1_full(&rho) - 1.0).abs() < 1e-15);
}

#[test]
fn block_coherence_agrees_with_full_sum() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for n_atoms in 2..=4 {
        let rho = random_block_supported(n_atoms, &mut rng);
        let via_blocks = superrad::observables::coherence_l1(&rho);
        let via_full = coherence_l1_full(&rho.to_full());
        assert!((via_blocks - via_full).abs() < 1e-12);
    }
}

#[test]
fn full_embedding_is_block_supported() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let rho = random_block_supported(3, &mut rng);
    let full = rho.to_full();
    let back = BlockDensityMatrix::from_full(&full, 3).unwrap();
    assert_eq!(rho, back);
    // entries between different sectors vanish
    for u in 0..8usize {
        for v in 0..8usize {
            if u.count_ones() != v.count_ones() {
                assert_eq!(full[(u, v)], C64::new(0.0, 0.0));
            }
        }
    }
}
