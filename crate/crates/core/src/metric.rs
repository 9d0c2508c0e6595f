//! Inner-product metrics: plain discrete sums and quadrature grids.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricKind {
    Discrete,
    Grid,
}

/// The weight structure of an inner-product space. Discrete metrics sum with
/// unit weights; grid metrics carry quadrature weights over abscissae.
#[derive(Debug, Clone, PartialEq)]
pub struct SpaceMetric {
    kind: MetricKind,
    weights: Vec<f64>,
    points: Option<Vec<f64>>,
}

impl SpaceMetric {
    pub fn discrete(dimension: usize) -> Result<Arc<Self>> {
        if dimension == 0 {
            return Err(Error::InvalidInput { what: "dimension must be positive" });
        }
        Ok(Arc::new(Self {
            kind: MetricKind::Discrete,
            weights: alloc::vec![1.0; dimension],
            points: None,
        }))
    }

    /// Grid metric from explicit abscissae and quadrature weights.
    pub fn grid(points: Vec<f64>, weights: Vec<f64>) -> Result<Arc<Self>> {
        if points.is_empty() {
            return Err(Error::EmptyInput);
        }
        if points.len() != weights.len() {
            return Err(Error::DimensionMismatch { expected: points.len(), got: weights.len() });
        }
        if weights.iter().any(|&w| !(w > 0.0) || !w.is_finite()) {
            return Err(Error::InvalidInput { what: "weights must be positive and finite" });
        }
        if points.windows(2).any(|p| !(p[1] > p[0])) {
            return Err(Error::InvalidInput { what: "grid points must be strictly increasing" });
        }
        Ok(Arc::new(Self { kind: MetricKind::Grid, weights, points: Some(points) }))
    }

    /// Composite Simpson rule on `[a, b]` with an odd number of points.
    pub fn simpson(a: f64, b: f64, n_points: usize) -> Result<Arc<Self>> {
        if n_points < 3 || n_points.is_multiple_of(2) {
            return Err(Error::InvalidInput { what: "Simpson rule needs an odd point count >= 3" });
        }
        if !(b > a) {
            return Err(Error::InvalidInput { what: "interval must satisfy a < b" });
        }
        let h = (b - a) / (n_points - 1) as f64;
        let points: Vec<f64> = (0..n_points).map(|i| a + h * i as f64).collect();
        let weights: Vec<f64> = (0..n_points)
            .map(|i| {
                let c = if i == 0 || i == n_points - 1 {
                    1.0
                } else if i % 2 == 1 {
                    4.0
                } else {
                    2.0
                };
                c * h / 3.0
            })
            .collect();
        Self::grid(points, weights)
    }

    pub fn kind(&self) -> MetricKind {
        self.kind
    }

    pub fn dimension(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn points(&self) -> Option<&[f64]> {
        self.points.as_deref()
    }

    pub fn compatible(a: &Arc<Self>, b: &Arc<Self>) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simpson_weights_sum_to_interval_length() {
        let m = SpaceMetric::simpson(0.0, core::f64::consts::PI, 1001).unwrap();
        let total: f64 = m.weights().iter().sum();
        assert!((total - core::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn simpson_rejects_even_point_count() {
        assert!(SpaceMetric::simpson(0.0, 1.0, 1000).is_err());
        assert!(SpaceMetric::simpson(0.0, 1.0, 1).is_err());
    }

    #[test]
    fn grid_requires_increasing_points() {
        let err = SpaceMetric::grid(alloc::vec![0.0, 0.0, 1.0], alloc::vec![1.0; 3]);
        assert!(err.is_err());
    }

    #[test]
    fn discrete_weights_are_unit() {
        let m = SpaceMetric::discrete(4).unwrap();
        assert_eq!(m.weights(), &[1.0, 1.0, 1.0, 1.0]);
        assert_eq!(m.kind(), MetricKind::Discrete);
    }
}
