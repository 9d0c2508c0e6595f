//! Dense operators, expectations, moments, and standard deviations.

use alloc::sync::Arc;
use alloc::vec::Vec;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::metric::SpaceMetric;
use crate::state::State;
use crate::{EPS_NORM, HERMITICITY_TOL, K_MAX};

/// Tolerance on the normalization precondition of expectation values.
pub const NORMALIZATION_TOL: f64 = 1e-9;

/// Dense complex square matrix acting on states of a shared metric.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    matrix: Vec<C64>, // row-major, side = metric dimension
    hermitian: bool,
    metric: Arc<SpaceMetric>,
}

impl Operator {
    /// Builds an operator and records whether it is self-adjoint under the
    /// weighted metric. `w_i A_ij = conj(A_ji) w_j` entrywise within 1e-10.
    pub fn new(matrix: Vec<C64>, metric: Arc<SpaceMetric>) -> Result<Self> {
        let dim = metric.dimension();
        if matrix.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, got: matrix.len() });
        }
        let hermitian = Self::adjoint_deviation(&matrix, &metric) <= HERMITICITY_TOL;
        Ok(Self { matrix, hermitian, metric })
    }

    /// Like [`Operator::new`] but fails unless the matrix is hermitian.
    pub fn hermitian(matrix: Vec<C64>, metric: Arc<SpaceMetric>) -> Result<Self> {
        let dim = metric.dimension();
        if matrix.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, got: matrix.len() });
        }
        let dev = Self::adjoint_deviation(&matrix, &metric);
        if dev > HERMITICITY_TOL {
            return Err(Error::NotHermitian { max_deviation: dev });
        }
        Ok(Self { matrix, hermitian: true, metric })
    }

    fn adjoint_deviation(matrix: &[C64], metric: &SpaceMetric) -> f64 {
        let dim = metric.dimension();
        let w = metric.weights();
        let mut max = 0.0_f64;
        for i in 0..dim {
            for j in 0..dim {
                let dev = (w[i] * matrix[i * dim + j] - (matrix[j * dim + i]).conj() * w[j]).norm();
                max = max.max(dev);
            }
        }
        max
    }

    pub fn identity(metric: Arc<SpaceMetric>) -> Self {
        let dim = metric.dimension();
        let mut matrix = alloc::vec![C64::ZERO; dim * dim];
        for i in 0..dim {
            matrix[i * dim + i] = C64::ONE;
        }
        Self { matrix, hermitian: true, metric }
    }

    pub fn diagonal(values: &[f64], metric: Arc<SpaceMetric>) -> Result<Self> {
        let dim = metric.dimension();
        if values.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: values.len() });
        }
        let mut matrix = alloc::vec![C64::ZERO; dim * dim];
        for (i, &v) in values.iter().enumerate() {
            matrix[i * dim + i] = C64::new(v, 0.0);
        }
        Ok(Self { matrix, hermitian: true, metric })
    }

    /// Rank-one projector `|d><d|` onto the normalized direction.
    pub fn projector(direction: &State) -> Result<Self> {
        let d = direction.normalized()?;
        let metric = d.metric().clone();
        let dim = metric.dimension();
        let w = metric.weights();
        let amps = d.amplitudes();
        let mut matrix = alloc::vec![C64::ZERO; dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                // weight on the bra side so that P t = d <d|t>
                matrix[i * dim + j] = amps[i] * amps[j].conj() * w[j];
            }
        }
        Ok(Self { matrix, hermitian: true, metric })
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn metric(&self) -> &Arc<SpaceMetric> {
        &self.metric
    }

    pub fn matrix(&self) -> &[C64] {
        &self.matrix
    }

    pub fn apply(&self, s: &State) -> Result<State> {
        if !SpaceMetric::compatible(&self.metric, s.metric()) {
            return Err(Error::MetricMismatch);
        }
        let dim = self.metric.dimension();
        let amps = s.amplitudes();
        let out: Vec<C64> = (0..dim)
            .map(|i| (0..dim).map(|j| self.matrix[i * dim + j] * amps[j]).sum())
            .collect();
        State::new(out, s.metric().clone())
    }

    /// `<s|A|s>` for a unit-norm state.
    pub fn expectation(&self, s: &State) -> Result<C64> {
        let n = s.norm();
        if (n - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::Unnormalized { norm: n });
        }
        s.inner(&self.apply(s)?)
    }

    /// `(A - <A> I) s`, orthogonal to `s` by construction.
    pub fn centered(&self, s: &State) -> Result<State> {
        if !self.hermitian {
            return Err(Error::NotHermitian { max_deviation: f64::NAN });
        }
        let mean = self.expectation(s)?;
        self.apply(s)?.add_scaled(-mean, s)
    }

    /// `Delta A = sqrt(<A^2> - <A>^2)` via the norm of the centered state.
    pub fn std_dev(&self, s: &State) -> Result<f64> {
        let centered = self.centered(s)?;
        let variance = centered.norm_sqr();
        if variance < -1e-12 {
            return Err(Error::NegativeVariance { value: variance });
        }
        Ok(libm::sqrt(variance.max(0.0)))
    }

    /// `<A^k>` by repeated matrix-vector application, `k <= 16`.
    pub fn moment(&self, s: &State, k: usize) -> Result<f64> {
        if !self.hermitian {
            return Err(Error::NotHermitian { max_deviation: f64::NAN });
        }
        if k > K_MAX {
            return Err(Error::MomentOrderTooLarge { k, max: K_MAX });
        }
        let n = s.norm();
        if (n - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::Unnormalized { norm: n });
        }
        let mut v = s.clone();
        for _ in 0..k {
            v = self.apply(&v)?;
        }
        let value = s.inner(&v)?;
        if value.im.abs() > 1e-10 {
            return Err(Error::ImaginaryResidue { imag: value.im });
        }
        Ok(value.re)
    }

    pub fn add(&self, other: &Operator) -> Result<Operator> {
        self.combine(other, C64::ONE)
    }

    pub fn sub(&self, other: &Operator) -> Result<Operator> {
        self.combine(other, -C64::ONE)
    }

    fn combine(&self, other: &Operator, factor: C64) -> Result<Operator> {
        if !SpaceMetric::compatible(&self.metric, &other.metric) {
            return Err(Error::MetricMismatch);
        }
        let matrix: Vec<C64> = self
            .matrix
            .iter()
            .zip(&other.matrix)
            .map(|(a, b)| a + factor * b)
            .collect();
        Operator::new(matrix, self.metric.clone())
    }

    /// True when `s` is an eigenstate within the spread floor.
    pub fn is_eigenstate(&self, s: &State) -> Result<bool> {
        Ok(self.std_dev(s)? <= EPS_NORM)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn discrete2() -> Arc<SpaceMetric> {
        SpaceMetric::discrete(2).unwrap()
    }

    fn pauli_x(m: Arc<SpaceMetric>) -> Operator {
        Operator::hermitian(vec![C64::ZERO, C64::ONE, C64::ONE, C64::ZERO], m).unwrap()
    }

    #[test]
    fn hermitian_check_rejects_asymmetric_matrix() {
        let m = discrete2();
        let bad = Operator::hermitian(vec![C64::ZERO, C64::ONE, C64::ZERO, C64::ZERO], m);
        assert!(matches!(bad, Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn expectation_of_identity_is_one() {
        let m = discrete2();
        let id = Operator::identity(m.clone());
        let s = State::from_reals(&[0.6, 0.8], m).unwrap();
        let v = id.expectation(&s).unwrap();
        assert!((v.re - 1.0).abs() < 1e-12 && v.im.abs() < 1e-15);
    }

    #[test]
    fn expectation_on_eigenstate_and_mixture() {
        let m = discrete2();
        let sz = Operator::diagonal(&[1.0, -1.0], m.clone()).unwrap();
        let up = State::basis(m.clone(), 0).unwrap();
        assert!((sz.expectation(&up).unwrap().re - 1.0).abs() < 1e-15);

        let h = Operator::diagonal(&[0.0, 1.0], m.clone()).unwrap();
        let r = 1.0 / libm::sqrt(2.0);
        let equi = State::from_reals(&[r, r], m).unwrap();
        assert!((h.expectation(&equi).unwrap().re - 0.5).abs() < 1e-12);
    }

    #[test]
    fn expectation_rejects_unnormalized_state() {
        let m = discrete2();
        let id = Operator::identity(m.clone());
        let s = State::from_reals(&[1.0, 1.0], m).unwrap();
        assert!(matches!(id.expectation(&s), Err(Error::Unnormalized { .. })));
    }

    #[test]
    fn centered_cases() {
        let m = discrete2();
        let up = State::basis(m.clone(), 0).unwrap();

        // eigenstate centers to zero
        let sz = Operator::diagonal(&[1.0, -1.0], m.clone()).unwrap();
        assert!(sz.centered(&up).unwrap().norm() < 1e-12);

        // sigma_x on (1,0): <sx> = 0, result (0,1)
        let sx = pauli_x(m.clone());
        let r = sx.centered(&up).unwrap();
        assert!(r.amplitudes()[0].norm() < 1e-12);
        assert!((r.amplitudes()[1] - C64::ONE).norm() < 1e-12);

        // diag(0,1) on equiprobable: subtract 1/2
        let h = Operator::diagonal(&[0.0, 1.0], m.clone()).unwrap();
        let s = 1.0 / libm::sqrt(2.0);
        let equi = State::from_reals(&[s, s], m).unwrap();
        let cent = h.centered(&equi).unwrap();
        assert!((cent.amplitudes()[0].re + 0.5 * s).abs() < 1e-12);
        assert!((cent.amplitudes()[1].re - 0.5 * s).abs() < 1e-12);
        // in-built orthogonality
        assert!(cent.inner(&equi).unwrap().norm() < 1e-10);
    }

    #[test]
    fn std_dev_cases() {
        let m = discrete2();
        let h = Operator::diagonal(&[0.0, 1.0], m.clone()).unwrap();
        let up = State::basis(m.clone(), 0).unwrap();
        assert!(h.std_dev(&up).unwrap() < 1e-12);

        let s = 1.0 / libm::sqrt(2.0);
        let equi = State::from_reals(&[s, s], m.clone()).unwrap();
        assert!((h.std_dev(&equi).unwrap() - 0.5).abs() < 1e-12);

        // projector spread: Delta A = S sqrt(1 - S^2)
        let dir = State::basis(m.clone(), 0).unwrap();
        let p = Operator::projector(&dir).unwrap();
        let delta = 0.3_f64;
        let trial =
            State::from_reals(&[libm::cos(delta), libm::sin(delta)], m).unwrap();
        let s_n = libm::cos(delta);
        let expected = s_n * libm::sqrt(1.0 - s_n * s_n);
        assert!((p.std_dev(&trial).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn moment_cases() {
        let m = discrete2();
        let h = Operator::diagonal(&[0.0, 1.0], m.clone()).unwrap();
        let s = 1.0 / libm::sqrt(2.0);
        let equi = State::from_reals(&[s, s], m).unwrap();
        assert!((h.moment(&equi, 0).unwrap() - 1.0).abs() < 1e-15);
        assert!((h.moment(&equi, 3).unwrap() - 0.5).abs() < 1e-12);

        let m3 = SpaceMetric::discrete(3).unwrap();
        let a = Operator::diagonal(&[1.0, 2.0, 3.0], m3.clone()).unwrap();
        let r = 1.0 / libm::sqrt(3.0);
        let phi = State::from_reals(&[r, r, r], m3).unwrap();
        assert!((a.moment(&phi, 2).unwrap() - 14.0 / 3.0).abs() < 1e-12);
        assert!(matches!(a.moment(&phi, 17), Err(Error::MomentOrderTooLarge { .. })));
    }

    #[test]
    fn projector_is_idempotent_and_weighted_hermitian() {
        let m = SpaceMetric::simpson(0.0, 1.0, 11).unwrap();
        let d = State::from_fn(m.clone(), |x| c(1.0 + x, 0.0)).unwrap();
        let p = Operator::projector(&d).unwrap();
        assert!(p.is_hermitian());
        let t = State::from_fn(m, |x| c(libm::sin(3.0 * x), 0.5 * x)).unwrap();
        let once = p.apply(&t).unwrap();
        let twice = p.apply(&once).unwrap();
        for (a, b) in once.amplitudes().iter().zip(twice.amplitudes()) {
            assert!((a - b).norm() < 1e-12);
        }
    }
}
