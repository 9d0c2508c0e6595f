//! States and the weighted inner product.

use alloc::sync::Arc;
use alloc::vec::Vec;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::metric::{MetricKind, SpaceMetric};
use crate::EPS_NORM;

/// A complex amplitude sequence over a metric space.
#[derive(Debug, Clone, PartialEq)]
pub struct State {
    amplitudes: Vec<C64>,
    metric: Arc<SpaceMetric>,
}

impl State {
    pub fn new(amplitudes: Vec<C64>, metric: Arc<SpaceMetric>) -> Result<Self> {
        if amplitudes.len() != metric.dimension() {
            return Err(Error::DimensionMismatch {
                expected: metric.dimension(),
                got: amplitudes.len(),
            });
        }
        if amplitudes.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::InvalidInput { what: "amplitudes must be finite" });
        }
        Ok(Self { amplitudes, metric })
    }

    pub fn from_reals(values: &[f64], metric: Arc<SpaceMetric>) -> Result<Self> {
        Self::new(values.iter().map(|&v| C64::new(v, 0.0)).collect(), metric)
    }

    /// Wraps function samples on a quadrature grid.
    pub fn grid_state(samples: Vec<C64>, metric: Arc<SpaceMetric>) -> Result<Self> {
        if metric.kind() != MetricKind::Grid {
            return Err(Error::InvalidInput { what: "grid_state requires a grid metric" });
        }
        Self::new(samples, metric)
    }

    /// Samples `f` on the metric's abscissae.
    pub fn from_fn(metric: Arc<SpaceMetric>, f: impl Fn(f64) -> C64) -> Result<Self> {
        let points = metric
            .points()
            .ok_or(Error::InvalidInput { what: "from_fn requires a grid metric" })?;
        let samples: Vec<C64> = points.iter().map(|&x| f(x)).collect();
        Self::new(samples, metric)
    }

    pub fn basis(metric: Arc<SpaceMetric>, index: usize) -> Result<Self> {
        if index >= metric.dimension() {
            return Err(Error::DimensionMismatch { expected: metric.dimension(), got: index });
        }
        let mut amplitudes = alloc::vec![C64::ZERO; metric.dimension()];
        amplitudes[index] = C64::ONE;
        Self::new(amplitudes, metric)
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn metric(&self) -> &Arc<SpaceMetric> {
        &self.metric
    }

    pub fn same_metric(&self, other: &State) -> Result<()> {
        if SpaceMetric::compatible(&self.metric, &other.metric) {
            Ok(())
        } else {
            Err(Error::MetricMismatch)
        }
    }

    /// Weighted inner product `sum_k w_k conj(a_k) b_k`, antilinear in `self`.
    pub fn inner(&self, other: &State) -> Result<C64> {
        self.same_metric(other)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .zip(self.metric.weights())
            .map(|((a, b), &w)| a.conj() * b * w)
            .sum())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes
            .iter()
            .zip(self.metric.weights())
            .map(|(a, &w)| a.norm_sqr() * w)
            .sum()
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.norm_sqr())
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }

    /// Unit-norm state parallel to `self`.
    pub fn normalized(&self) -> Result<State> {
        let n = self.norm();
        if n <= EPS_NORM {
            return Err(Error::DegenerateState);
        }
        Ok(self.scaled(C64::new(1.0 / n, 0.0)))
    }

    /// Overlap `S = |<a_N|b_N>|` of the normalized pair.
    pub fn overlap(&self, other: &State) -> Result<f64> {
        Ok(self.normalized()?.inner(&other.normalized()?)?.norm())
    }

    pub fn scaled(&self, factor: C64) -> State {
        State {
            amplitudes: self.amplitudes.iter().map(|a| a * factor).collect(),
            metric: self.metric.clone(),
        }
    }

    pub fn add(&self, other: &State) -> Result<State> {
        self.add_scaled(C64::ONE, other)
    }

    pub fn sub(&self, other: &State) -> Result<State> {
        self.add_scaled(-C64::ONE, other)
    }

    /// `self + factor * other`.
    pub fn add_scaled(&self, factor: C64, other: &State) -> Result<State> {
        self.same_metric(other)?;
        Ok(State {
            amplitudes: self
                .amplitudes
                .iter()
                .zip(&other.amplitudes)
                .map(|(a, b)| a + factor * b)
                .collect(),
            metric: self.metric.clone(),
        })
    }

    /// `(I - P) self` with `P` the projector onto `direction`.
    pub fn project_out(&self, direction: &State) -> Result<State> {
        let d = direction.normalized()?;
        let component = d.inner(self)?;
        self.add_scaled(-component, &d)
    }
}
