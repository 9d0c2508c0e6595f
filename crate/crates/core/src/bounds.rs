//! The Cauchy-Schwarz family: classical, auxiliary-state improved,
//! single-auxiliary, triangle, and projector-tightened forms.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::state::State;
use crate::{EPS_NORM, TOL_BOUND, TOL_ORTH};

/// One inequality evaluation. `satisfied` means `lhs >= rhs` up to
/// `TOL_BOUND` unless the method tag says otherwise.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub lhs: f64,
    pub rhs: f64,
    pub satisfied: bool,
    pub gap: f64,
    /// `rhs / lhs`; absent when the left side is numerically zero.
    pub tightness: Option<f64>,
    pub method: &'static str,
}

impl BoundReport {
    pub(crate) fn lower_bound(method: &'static str, lhs: f64, rhs: f64) -> Self {
        let gap = lhs - rhs;
        Self {
            lhs,
            rhs,
            satisfied: gap >= -TOL_BOUND,
            gap,
            tightness: (lhs > EPS_NORM).then(|| rhs / lhs),
            method,
        }
    }

    /// Reversed sense: `satisfied` means `lhs <= rhs`.
    pub(crate) fn upper_bound(method: &'static str, lhs: f64, rhs: f64) -> Self {
        let gap = lhs - rhs;
        Self {
            lhs,
            rhs,
            satisfied: gap <= TOL_BOUND,
            gap,
            tightness: (lhs > EPS_NORM).then(|| rhs / lhs),
            method,
        }
    }
}

/// Two normalized auxiliary states.
#[derive(Debug, Clone)]
pub struct AuxPair {
    theta1: State,
    theta2: State,
}

impl AuxPair {
    pub fn new(theta1: State, theta2: State) -> Result<Self> {
        for theta in [&theta1, &theta2] {
            let n = theta.norm();
            if (n - 1.0).abs() > 1e-9 {
                return Err(Error::Unnormalized { norm: n });
            }
        }
        theta1.same_metric(&theta2)?;
        Ok(Self { theta1, theta2 })
    }

    /// Normalizes both inputs first.
    pub fn normalizing(theta1: &State, theta2: &State) -> Result<Self> {
        Self::new(theta1.normalized()?, theta2.normalized()?)
    }

    /// The aux choice that reduces the improved inequality to the plain CSI:
    /// `theta1 = psi2 / |psi2|`, `theta2 = psi1 / |psi1|`.
    pub fn csi_reducing(psi1: &State, psi2: &State) -> Result<Self> {
        Self::new(psi2.normalized()?, psi1.normalized()?)
    }

    pub fn theta1(&self) -> &State {
        &self.theta1
    }

    pub fn theta2(&self) -> &State {
        &self.theta2
    }
}

/// Selects which triangle inequality to evaluate: `|psi1 - psi2|` or
/// `|psi1 + psi2|` on the right side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriangleSign {
    Minus,
    Plus,
}

/// `|psi1| |psi2| >= |<psi1|psi2>|`.
pub fn csi(psi1: &State, psi2: &State) -> Result<BoundReport> {
    let rhs = psi1.inner(psi2)?.norm();
    Ok(BoundReport::lower_bound("csi", psi1.norm() * psi2.norm(), rhs))
}

/// Cauchy's inequality on raw coefficient sequences.
pub fn cauchy_coefficients(a: &[C64], b: &[C64]) -> Result<BoundReport> {
    if a.is_empty() {
        return Err(Error::EmptyInput);
    }
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch { expected: a.len(), got: b.len() });
    }
    let na: f64 = libm::sqrt(a.iter().map(|x| x.norm_sqr()).sum());
    let nb: f64 = libm::sqrt(b.iter().map(|x| x.norm_sqr()).sum());
    let dot: C64 = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
    // For real inputs, dividing both sides by the length N gives the
    // averaged statistical form (a^2-bar b^2-bar)^(1/2) >= |ab-bar|.
    Ok(BoundReport::lower_bound("cauchy-coefficients", na * nb, dot.norm()))
}

/// Moment inequality `sqrt(<A^2m><A^2n>) >= |<A^(m+n)>|`.
pub fn moment_bound(
    a: &crate::Operator,
    phi: &State,
    m: usize,
    n: usize,
) -> Result<BoundReport> {
    let lhs = libm::sqrt(a.moment(phi, 2 * m)? * a.moment(phi, 2 * n)?);
    let rhs = a.moment(phi, m + n)?.abs();
    Ok(BoundReport::lower_bound("moment", lhs, rhs))
}

/// Improved CSI with two auxiliary states:
/// `|psi1| |psi2| >= |<psi1|theta1>| |<psi2|theta2>|`.
pub fn icsi(psi1: &State, psi2: &State, aux: &AuxPair) -> Result<BoundReport> {
    let rhs = psi1.inner(aux.theta1())?.norm() * psi2.inner(aux.theta2())?.norm();
    Ok(BoundReport::lower_bound("icsi", psi1.norm() * psi2.norm(), rhs))
}

fn require_orthogonal(psi1: &State, psi2: &State) -> Result<()> {
    let scale = psi1.norm() * psi2.norm();
    let ov = psi1.inner(psi2)?.norm();
    if ov >= TOL_ORTH * scale.max(EPS_NORM) {
        return Err(Error::OrthogonalityRequired { overlap: ov });
    }
    Ok(())
}

/// Single-auxiliary form, valid only when `<psi1|psi2> = 0`:
/// `|psi1| |psi2| >= 2 |<psi1|theta>| |<psi2|theta>|`.
pub fn icsi_single_aux(psi1: &State, psi2: &State, theta: &State) -> Result<BoundReport> {
    require_orthogonal(psi1, psi2)?;
    let n = theta.norm();
    if (n - 1.0).abs() > 1e-9 {
        return Err(Error::Unnormalized { norm: n });
    }
    let rhs = 2.0 * psi1.inner(theta)?.norm() * psi2.inner(theta)?.norm();
    Ok(BoundReport::lower_bound("icsi-single-aux", psi1.norm() * psi2.norm(), rhs))
}

/// Minimizer of `|psi1 + alpha psi3|^2`: `alpha* = -<psi3|psi1>/<psi3|psi3>`.
pub fn optimal_alpha(psi1: &State, psi3: &State) -> Result<C64> {
    let nsq = psi3.norm_sqr();
    if nsq <= EPS_NORM * EPS_NORM {
        return Err(Error::DegenerateState);
    }
    Ok(-psi3.inner(psi1)? / nsq)
}

/// Tightened CSI via the projector onto `psi3`, which must be orthogonal to
/// `psi2`: `|<psi1|psi2>| <= |(I - P3) psi1| |psi2|`.
pub fn projector_tightened_csi(psi1: &State, psi2: &State, psi3: &State) -> Result<BoundReport> {
    require_orthogonal(psi2, psi3)?;
    let reduced = psi1.project_out(psi3)?;
    let lhs = psi1.inner(psi2)?.norm();
    let rhs = reduced.norm() * psi2.norm();
    Ok(BoundReport::upper_bound("projector-tightened-csi", lhs, rhs))
}

/// Triangle inequality `|psi1| + |psi2| >= |psi1 -/+ psi2|`.
pub fn triangle_usi(psi1: &State, psi2: &State, sign: TriangleSign) -> Result<BoundReport> {
    let combined = match sign {
        TriangleSign::Minus => psi1.sub(psi2)?,
        TriangleSign::Plus => psi1.add(psi2)?,
    };
    Ok(BoundReport::lower_bound("triangle", psi1.norm() + psi2.norm(), combined.norm()))
}

/// Auxiliary-state improvement of the triangle inequality:
/// `|psi1| + |psi2| >= |<psi1|theta1>| + |<psi2|theta2>|`.
pub fn improved_triangle(psi1: &State, psi2: &State, aux: &AuxPair) -> Result<BoundReport> {
    let rhs = psi1.inner(aux.theta1())?.norm() + psi2.inner(aux.theta2())?.norm();
    Ok(BoundReport::lower_bound("improved-triangle", psi1.norm() + psi2.norm(), rhs))
}

/// Improved CSI with auxiliaries mixed from the parent states only:
/// `theta1 = N1 (c1 psi_N1 + c2 psi_N2)`, `theta2 = N2 (d1 psi_N2 + d2 psi_N1)`,
/// with real nonnegative coefficients and orthogonal parents.
pub fn parent_aux_bound(
    psi1: &State,
    psi2: &State,
    c: (f64, f64),
    d: (f64, f64),
) -> Result<BoundReport> {
    for v in [c.0, c.1, d.0, d.1] {
        if !(v >= 0.0) || !v.is_finite() {
            return Err(Error::InvalidInput { what: "combining coefficients must be >= 0" });
        }
    }
    require_orthogonal(psi1, psi2)?;
    let p1 = psi1.normalized()?;
    let p2 = psi2.normalized()?;
    let theta1 = p1
        .scaled(C64::new(c.0, 0.0))
        .add_scaled(C64::new(c.1, 0.0), &p2)?
        .normalized()
        .map_err(|_| Error::InvalidInput { what: "zero combination c" })?;
    let theta2 = p2
        .scaled(C64::new(d.0, 0.0))
        .add_scaled(C64::new(d.1, 0.0), &p1)?
        .normalized()
        .map_err(|_| Error::InvalidInput { what: "zero combination d" })?;
    let aux = AuxPair::new(theta1, theta2)?;
    let report = icsi(psi1, psi2, &aux)?;
    Ok(BoundReport { method: "parent-aux", ..report })
}
