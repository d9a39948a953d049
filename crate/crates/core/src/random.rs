//! Seeded randomness: per-trial generators, Haar unitaries and random states.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{c, CMatrix, CVector};

/// Generator for trial `index` of a run seeded with `seed`. Identical
/// `(seed, index)` pairs give identical streams regardless of scheduling.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn gaussian_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    CMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        c(re * s, im * s)
    })
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix, with the
/// phases of `R`'s diagonal moved into `Q`.
pub fn haar_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CMatrix {
    let qr = gaussian_matrix(d, d, rng).qr();
    let (mut q, r) = qr.unpack();
    for j in 0..d {
        let z = r[(j, j)];
        let phase = if z.norm() > 0.0 { z / z.norm() } else { c(1.0, 0.0) };
        for i in 0..d {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Uniformly random unit vector in `C^d`.
pub fn random_pure_state<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CVector {
    let g = gaussian_matrix(d, 1, rng);
    let v = CVector::from_column_slice(g.as_slice());
    let n = v.norm();
    v / c(n, 0.0)
}

/// Random mixed state `G G† / tr(G G†)` from a complex Gaussian `G`.
pub fn random_density_matrix<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CMatrix {
    let g = gaussian_matrix(d, d, rng);
    let m = &g * g.adjoint();
    let tr: f64 = m.diagonal().iter().map(|z| z.re).sum();
    let m = m / c(tr, 0.0);
    (&m + m.adjoint()) * c(0.5, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::unitarity_defect;

    #[test]
    fn haar_samples_are_unitary_and_reproducible() {
        let mut a = trial_rng(42, 3);
        let mut b = trial_rng(42, 3);
        for d in 1..=6 {
            let u = haar_unitary(d, &mut a);
            assert!(unitarity_defect(&u) < 1e-12);
            assert_eq!(u, haar_unitary(d, &mut b));
        }
        assert_ne!(haar_unitary(3, &mut trial_rng(42, 0)), haar_unitary(3, &mut trial_rng(42, 1)));
    }

    #[test]
    fn haar_first_moment() {
        // E|U_00|^2 = 1/d
        let mut rng = trial_rng(1, 0);
        let d = 3;
        let n = 4000;
        let mean: f64 = (0..n).map(|_| haar_unitary(d, &mut rng)[(0, 0)].norm_sqr()).sum::<f64>() / n as f64;
        assert!((mean - 1.0 / 3.0).abs() < 0.02, "{mean}");
    }

    #[test]
    fn pure_states_are_normalized() {
        let mut rng = trial_rng(5, 0);
        for d in 1..8 {
            assert!((random_pure_state(d, &mut rng).norm() - 1.0).abs() < 1e-14);
        }
    }
}
