//! Finite-dimensional pure-state quantum mechanics.
//!
//! States are unit-norm complex amplitude vectors; observables are labeled
//! orthonormal eigenbases (nondegenerate by construction). Everything here is
//! a pure function of immutable values, so all types are `Send + Sync` and
//! safe to share across threads.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};

/// Tolerance for unit-norm and orthonormality validation of supplied data.
/// Inputs that fail it are rejected, not repaired.
pub const NORM_TOL: f64 = 1e-10;

/// Probabilities at or below this threshold are treated as impossible.
/// Shared by the collapse guard, world accessibility, and the ABL
/// zero-denominator policy.
pub const PROB_EPS: f64 = 1e-12;

/// A pure state: a unit-norm vector of complex probability amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Validates unit norm (within [`NORM_TOL`]) and dimension ≥ 2.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() < 2 {
            return Err(Error::DimensionTooSmall(amplitudes.len()));
        }
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        let deviation = (norm_sq - 1.0).abs();
        if deviation > NORM_TOL {
            return Err(Error::NotNormalized { deviation });
        }
        Ok(Self { amplitudes })
    }

    /// Normalizes the given vector and wraps it. Rejects zero vectors.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() < 2 {
            return Err(Error::DimensionTooSmall(amplitudes.len()));
        }
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if norm_sq <= PROB_EPS {
            return Err(Error::ZeroVector);
        }
        let inv = 1.0 / norm_sq.sqrt();
        Ok(Self {
            amplitudes: amplitudes.into_iter().map(|a| a * inv).collect(),
        })
    }

    /// Real-amplitude convenience constructor (normalizing).
    pub fn from_reals(amplitudes: &[f64]) -> Result<Self> {
        Self::normalized(amplitudes.iter().map(|&r| Complex64::new(r, 0.0)).collect())
    }

    /// Canonical basis vector |k⟩ of the given dimension.
    pub fn basis_vector(dim: usize, k: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::DimensionTooSmall(dim));
        }
        if k >= dim {
            return Err(Error::OutcomeOutOfRange { index: k, dim });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[k] = Complex64::new(1.0, 0.0);
        Ok(Self { amplitudes })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Componentwise complex conjugate (still unit-norm).
    pub fn conjugate(&self) -> PureState {
        PureState {
            amplitudes: self.amplitudes.iter().map(|a| a.conj()).collect(),
        }
    }
}

/// ⟨x|y⟩ with conjugation on the first argument.
pub fn inner_product(x: &PureState, y: &PureState) -> Result<Complex64> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            left: x.dim(),
            right: y.dim(),
        });
    }
    Ok(x.amplitudes
        .iter()
        .zip(&y.amplitudes)
        .map(|(a, b)| a.conj() * b)
        .sum())
}

/// |⟨x|y⟩|², the transition probability between two pure states. Clamped to
/// [0, 1]: squared moduli of unit vectors can overshoot 1 by an ulp.
pub fn overlap(x: &PureState, y: &PureState) -> Result<f64> {
    Ok(inner_product(x, y)?.norm_sqr().clamp(0.0, 1.0))
}

/// A nondegenerate observable: an orthonormal eigenbasis with one distinct
/// outcome label per eigenvector. Outcome order is the eigenvector order.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    name: String,
    eigenvectors: Vec<PureState>,
    outcome_labels: Vec<String>,
}

impl Observable {
    pub fn new(
        name: impl Into<String>,
        eigenvectors: Vec<PureState>,
        outcome_labels: Vec<String>,
    ) -> Result<Self> {
        let name = name.into();
        let dim = eigenvectors.first().map(|v| v.dim()).unwrap_or(0);
        if dim < 2 || eigenvectors.len() != dim || outcome_labels.len() != dim {
            return Err(Error::MalformedObservable {
                name,
                vectors: eigenvectors.len(),
                labels: outcome_labels.len(),
                dim,
            });
        }
        for v in &eigenvectors {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: v.dim(),
                });
            }
        }
        for i in 0..dim {
            for j in (i + 1)..dim {
                let ov = inner_product(&eigenvectors[i], &eigenvectors[j])?.norm();
                if ov > NORM_TOL {
                    return Err(Error::NotOrthogonal {
                        name,
                        i,
                        j,
                        overlap: ov,
                    });
                }
            }
        }
        for (i, label) in outcome_labels.iter().enumerate() {
            if outcome_labels[..i].contains(label) {
                return Err(Error::DuplicateLabel {
                    name,
                    label: label.clone(),
                });
            }
        }
        Ok(Self {
            name,
            eigenvectors,
            outcome_labels,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.eigenvectors.len()
    }

    pub fn eigenvectors(&self) -> &[PureState] {
        &self.eigenvectors
    }

    pub fn eigenvector(&self, k: usize) -> Result<&PureState> {
        self.eigenvectors.get(k).ok_or(Error::OutcomeOutOfRange {
            index: k,
            dim: self.dim(),
        })
    }

    pub fn outcome_labels(&self) -> &[String] {
        &self.outcome_labels
    }

    pub fn label(&self, k: usize) -> Result<&str> {
        self.outcome_labels
            .get(k)
            .map(|s| s.as_str())
            .ok_or(Error::OutcomeOutOfRange {
                index: k,
                dim: self.dim(),
            })
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.outcome_labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Componentwise conjugate of every eigenvector (same labels).
    pub fn conjugate(&self) -> Observable {
        Observable {
            name: self.name.clone(),
            eigenvectors: self.eigenvectors.iter().map(|v| v.conjugate()).collect(),
            outcome_labels: self.outcome_labels.clone(),
        }
    }
}

/// Born probability |⟨c_k|state⟩|² of outcome `k`.
pub fn born_probability(state: &PureState, obs: &Observable, k: usize) -> Result<f64> {
    if state.dim() != obs.dim() {
        return Err(Error::DimensionMismatch {
            left: state.dim(),
            right: obs.dim(),
        });
    }
    overlap(obs.eigenvector(k)?, state)
}

/// Born probabilities for every outcome, in outcome order.
pub fn born_distribution(state: &PureState, obs: &Observable) -> Result<Vec<f64>> {
    (0..obs.dim())
        .map(|k| born_probability(state, obs, k))
        .collect()
}

/// Projective collapse onto outcome `k`: yields the eigenvector |c_k⟩.
/// Collapsing onto a zero-probability outcome is an error.
pub fn collapse(state: &PureState, obs: &Observable, k: usize) -> Result<PureState> {
    let p = born_probability(state, obs, k)?;
    if p <= PROB_EPS {
        return Err(Error::ImpossibleCollapse {
            label: obs.label(k)?.to_string(),
            probability: p,
        });
    }
    Ok(obs.eigenvector(k)?.clone())
}

/// Haar-like random state: normalized vector of i.i.d. complex Gaussians.
/// Deterministic for a fixed seed.
pub fn random_state(dim: usize, seed: u64) -> Result<PureState> {
    if dim < 2 {
        return Err(Error::DimensionTooSmall(dim));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_state(dim, &mut rng)
}

fn sample_state(dim: usize, rng: &mut ChaCha8Rng) -> Result<PureState> {
    loop {
        let amplitudes: Vec<Complex64> = (0..dim)
            .map(|_| {
                let re: f64 = StandardNormal.sample(rng);
                let im: f64 = StandardNormal.sample(rng);
                Complex64::new(re, im)
            })
            .collect();
        if let Ok(state) = PureState::normalized(amplitudes) {
            return Ok(state);
        }
    }
}

/// Random orthonormal basis of the given dimension (Gram–Schmidt over
/// random states). Deterministic for a fixed seed.
pub fn random_basis(dim: usize, seed: u64) -> Result<Vec<PureState>> {
    if dim < 2 {
        return Err(Error::DimensionTooSmall(dim));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut basis: Vec<PureState> = Vec::with_capacity(dim);
    while basis.len() < dim {
        let candidate = sample_state(dim, &mut rng)?;
        if let Some(next) = orthogonalize(&candidate, &basis, 1e-6) {
            basis.push(next);
        }
    }
    Ok(basis)
}

/// Completes `first` to a full orthonormal basis using canonical vectors.
/// The returned basis has `first` at index 0.
pub fn orthonormal_completion(first: &PureState) -> Vec<PureState> {
    let dim = first.dim();
    let mut basis = vec![first.clone()];
    for k in 0..dim {
        if basis.len() == dim {
            break;
        }
        let candidate = PureState::basis_vector(dim, k).expect("dim validated");
        if let Some(next) = orthogonalize(&candidate, &basis, 1e-8) {
            basis.push(next);
        }
    }
    debug_assert_eq!(basis.len(), dim);
    basis
}

/// Removes the projection of `candidate` onto `basis` and renormalizes.
/// Returns None when the residual is numerically dependent on the basis.
fn orthogonalize(candidate: &PureState, basis: &[PureState], min_residual: f64) -> Option<PureState> {
    let mut v: Vec<Complex64> = candidate.amplitudes().to_vec();
    // Two Gram–Schmidt passes for numerical stability.
    for _ in 0..2 {
        for b in basis {
            let proj: Complex64 = b
                .amplitudes()
                .iter()
                .zip(&v)
                .map(|(bi, vi)| bi.conj() * vi)
                .sum();
            for (vi, bi) in v.iter_mut().zip(b.amplitudes()) {
                *vi -= proj * bi;
            }
        }
    }
    let norm_sq: f64 = v.iter().map(|c| c.norm_sqr()).sum();
    if norm_sq.sqrt() < min_residual {
        return None;
    }
    let inv = 1.0 / norm_sq.sqrt();
    Some(PureState {
        amplitudes: v.into_iter().map(|c| c * inv).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z_plus() -> PureState {
        PureState::basis_vector(2, 0).unwrap()
    }

    fn z_minus() -> PureState {
        PureState::basis_vector(2, 1).unwrap()
    }

    fn x_plus() -> PureState {
        PureState::from_reals(&[1.0, 1.0]).unwrap()
    }

    fn sigma_z() -> Observable {
        Observable::new(
            "sigma_z",
            vec![z_plus(), z_minus()],
            vec!["z+".into(), "z-".into()],
        )
        .unwrap()
    }

    fn sigma_x() -> Observable {
        Observable::new(
            "sigma_x",
            vec![x_plus(), PureState::from_reals(&[1.0, -1.0]).unwrap()],
            vec!["x+".into(), "x-".into()],
        )
        .unwrap()
    }

    #[test]
    fn inner_product_identity() {
        let v = z_plus();
        let ip = inner_product(&v, &v).unwrap();
        assert!((ip - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn inner_product_orthogonal() {
        let ip = inner_product(&z_plus(), &z_minus()).unwrap();
        assert!(ip.norm() < 1e-12);
    }

    #[test]
    fn inner_product_superposition() {
        // ⟨x+|z+⟩ = 1/√2, expanded by hand.
        let ip = inner_product(&x_plus(), &z_plus()).unwrap();
        assert!((ip.re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert!(ip.im.abs() < 1e-12);
    }

    #[test]
    fn inner_product_rejects_dimension_mismatch() {
        let v3 = PureState::basis_vector(3, 0).unwrap();
        assert!(matches!(
            inner_product(&z_plus(), &v3),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn born_eigenstate_is_certain() {
        assert!((born_probability(&z_plus(), &sigma_z(), 0).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn born_superposition_half() {
        // |⟨x+|z+⟩|² = 1/2 by hand.
        assert!((born_probability(&z_plus(), &sigma_x(), 0).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn born_orthogonal_vanishes() {
        assert!(born_probability(&z_plus(), &sigma_z(), 1).unwrap() < 1e-12);
    }

    #[test]
    fn born_rejects_out_of_range() {
        assert!(matches!(
            born_probability(&z_plus(), &sigma_z(), 2),
            Err(Error::OutcomeOutOfRange { .. })
        ));
    }

    #[test]
    fn collapse_fixed_point() {
        let after = collapse(&z_plus(), &sigma_z(), 0).unwrap();
        assert_eq!(after, z_plus());
    }

    #[test]
    fn collapse_yields_eigenvector() {
        let after = collapse(&z_plus(), &sigma_x(), 0).unwrap();
        assert_eq!(after, x_plus());
    }

    #[test]
    fn collapse_zero_probability_errors() {
        assert!(matches!(
            collapse(&z_plus(), &sigma_z(), 1),
            Err(Error::ImpossibleCollapse { .. })
        ));
    }

    #[test]
    fn collapse_idempotent() {
        let once = collapse(&z_plus(), &sigma_x(), 0).unwrap();
        let twice = collapse(&once, &sigma_x(), 0).unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn state_validation_rejects_unnormalized() {
        let raw = vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)];
        assert!(matches!(
            PureState::new(raw),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn state_validation_rejects_dim_one() {
        assert!(matches!(
            PureState::new(vec![Complex64::new(1.0, 0.0)]),
            Err(Error::DimensionTooSmall(1))
        ));
    }

    #[test]
    fn observable_rejects_non_orthogonal() {
        let err = Observable::new(
            "bad",
            vec![z_plus(), z_plus()],
            vec!["a".into(), "b".into()],
        );
        assert!(matches!(err, Err(Error::NotOrthogonal { .. })));
    }

    #[test]
    fn observable_rejects_duplicate_labels() {
        let err = Observable::new(
            "bad",
            vec![z_plus(), z_minus()],
            vec!["a".into(), "a".into()],
        );
        assert!(matches!(err, Err(Error::DuplicateLabel { .. })));
    }

    #[test]
    fn random_state_deterministic() {
        assert_eq!(random_state(2, 7).unwrap(), random_state(2, 7).unwrap());
        assert_eq!(random_state(4, 123).unwrap(), random_state(4, 123).unwrap());
    }

    #[test]
    fn random_state_unit_norm() {
        let s = random_state(4, 99).unwrap();
        let norm_sq: f64 = s.amplitudes().iter().map(|a| a.norm_sqr()).sum();
        assert!((norm_sq - 1.0).abs() < 1e-10);
    }

    #[test]
    fn random_state_seeds_differ() {
        let a = random_state(2, 1).unwrap();
        let b = random_state(2, 2).unwrap();
        assert!(a
            .amplitudes()
            .iter()
            .zip(b.amplitudes())
            .any(|(x, y)| (x - y).norm() > 1e-6));
    }

    #[test]
    fn random_state_rejects_dim_one() {
        assert!(matches!(
            random_state(1, 0),
            Err(Error::DimensionTooSmall(1))
        ));
    }

    #[test]
    fn random_basis_orthonormal() {
        for dim in 2..=6 {
            let basis = random_basis(dim, 42 + dim as u64).unwrap();
            assert_eq!(basis.len(), dim);
            for i in 0..dim {
                for j in 0..dim {
                    let ip = inner_product(&basis[i], &basis[j]).unwrap().norm();
                    let expected = if i == j { 1.0 } else { 0.0 };
                    assert!((ip - expected).abs() < 1e-10, "dim {dim} entry {i},{j}");
                }
            }
        }
    }

    #[test]
    fn completion_contains_first_and_is_orthonormal() {
        let b = PureState::from_reals(&[3.0, 4.0]).unwrap();
        let basis = orthonormal_completion(&b);
        assert_eq!(basis.len(), 2);
        assert_eq!(basis[0], b);
        assert!(inner_product(&basis[0], &basis[1]).unwrap().norm() < 1e-10);
        let sums: f64 = basis[1].amplitudes().iter().map(|a| a.norm_sqr()).sum();
        assert!((sums - 1.0).abs() < 1e-10);
    }

    #[test]
    fn completion_handles_canonical_first() {
        // |b⟩ parallel to a canonical vector must skip that candidate.
        let basis = orthonormal_completion(&z_plus());
        assert_eq!(basis.len(), 2);
        assert!(inner_product(&basis[0], &basis[1]).unwrap().norm() < 1e-10);
    }
}
