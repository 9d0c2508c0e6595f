//! Uncertainty product/sum inequalities, their auxiliary-state improvements,
//! and the Eckart / complementary-Eckart overlap bounds.

use num_complex::Complex64 as C64;

use crate::bounds::{AuxPair, BoundReport};
use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::state::State;
use crate::{EPS_NORM, TOL_ORTH};

/// Energies entering the Eckart lower bound: exact ground and first-excited
/// levels plus the variational trial energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EckartInput {
    pub epsilon1: f64,
    pub epsilon2: f64,
    pub epsilon_bar: f64,
}

impl EckartInput {
    pub fn new(epsilon1: f64, epsilon2: f64, epsilon_bar: f64) -> Result<Self> {
        if !(epsilon1 < epsilon2) {
            return Err(Error::InvalidInput { what: "epsilon1 must be below epsilon2" });
        }
        if epsilon_bar < epsilon1 - 1e-12 {
            return Err(Error::InvalidInput { what: "trial energy below the exact ground level" });
        }
        Ok(Self { epsilon1, epsilon2, epsilon_bar })
    }
}

/// Trial-state diagnostics for the complementary Eckart bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverlapDiagnostics {
    /// Overlap `S_n` of the trial state with the exact level.
    pub s_n: f64,
    /// Energy spread of the trial state.
    pub delta_eps: f64,
    /// Trial energy `<H>`.
    pub eps_bar: f64,
    /// Exact level energy.
    pub eps_n: f64,
}

impl OverlapDiagnostics {
    pub fn new(s_n: f64, delta_eps: f64, eps_bar: f64, eps_n: f64) -> Result<Self> {
        if !(0.0..=1.0 + 1e-12).contains(&s_n) {
            return Err(Error::InvalidInput { what: "overlap must lie in [0, 1]" });
        }
        if delta_eps < 0.0 {
            return Err(Error::InvalidInput { what: "energy spread must be >= 0" });
        }
        Ok(Self { s_n, delta_eps, eps_bar, eps_n })
    }
}

/// Complementary Eckart evaluation plus the implied overlap cap.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplementaryEckart {
    pub report: BoundReport,
    /// `S_max = R / sqrt(1 + R^2)` with `R` the right side.
    pub s_max: f64,
}

/// Both triangle variants alongside the max-form report.
#[derive(Debug, Clone, PartialEq)]
pub struct UncertaintySumReport {
    pub report: BoundReport,
    /// `Delta(A - B)`.
    pub minus: f64,
    /// `Delta(A + B)`.
    pub plus: f64,
}

fn spreads(a: &Operator, b: &Operator, phi: &State) -> Result<(State, State, f64, f64)> {
    let phi_a = a.centered(phi)?;
    let phi_b = b.centered(phi)?;
    let da = phi_a.norm();
    let db = phi_b.norm();
    if da <= EPS_NORM || db <= EPS_NORM {
        return Err(Error::DegenerateUncertainty);
    }
    Ok((phi_a, phi_b, da, db))
}

/// Uncertainty product inequality `Delta A Delta B >= |<phi_A|phi_B>|`.
pub fn upi(a: &Operator, b: &Operator, phi: &State) -> Result<BoundReport> {
    let (phi_a, phi_b, da, db) = spreads(a, b, phi)?;
    Ok(BoundReport::lower_bound("upi", da * db, phi_a.inner(&phi_b)?.norm()))
}

/// Modified UPI with two auxiliary states (improved form of the product
/// inequality): `Delta A Delta B >= |<phi_A|theta1>| |<phi_B|theta2>|`.
pub fn modified_upi(
    a: &Operator,
    b: &Operator,
    phi: &State,
    aux: &AuxPair,
) -> Result<BoundReport> {
    let (phi_a, phi_b, da, db) = spreads(a, b, phi)?;
    let rhs = phi_a.inner(aux.theta1())?.norm() * phi_b.inner(aux.theta2())?.norm();
    Ok(BoundReport::lower_bound("modified-upi", da * db, rhs))
}

/// Single-auxiliary modified UPI, valid when `<phi_A|phi_B> = 0`:
/// `Delta A Delta B >= 2 |<phi_A|theta>| |<phi_B|theta>|`.
pub fn modified_upi_single(
    a: &Operator,
    b: &Operator,
    phi: &State,
    theta: &State,
) -> Result<BoundReport> {
    let (phi_a, phi_b, da, db) = spreads(a, b, phi)?;
    let cross = phi_a.inner(&phi_b)?.norm();
    if cross >= TOL_ORTH * da * db {
        return Err(Error::OrthogonalityRequired { overlap: cross });
    }
    let n = theta.norm();
    if (n - 1.0).abs() > 1e-9 {
        return Err(Error::Unnormalized { norm: n });
    }
    let rhs = 2.0 * phi_a.inner(theta)?.norm() * phi_b.inner(theta)?.norm();
    Ok(BoundReport::lower_bound("modified-upi-single", da * db, rhs))
}

/// `Delta A + Delta B >= max{Delta(A - B), Delta(A + B)}`.
pub fn uncertainty_sum(a: &Operator, b: &Operator, phi: &State) -> Result<UncertaintySumReport> {
    let da = a.std_dev(phi)?;
    let db = b.std_dev(phi)?;
    let minus = a.sub(b)?.std_dev(phi)?;
    let plus = a.add(b)?.std_dev(phi)?;
    Ok(UncertaintySumReport {
        report: BoundReport::lower_bound("uncertainty-sum", da + db, minus.max(plus)),
        minus,
        plus,
    })
}

/// Under `<phi_A|phi_B> = 0` the sum-inequality right side collapses to
/// `sqrt(Delta A^2 + Delta B^2)`.
pub fn orthogonal_floor(a: &Operator, b: &Operator, phi: &State) -> Result<f64> {
    let (phi_a, phi_b, da, db) = spreads(a, b, phi)?;
    let cross = phi_a.inner(&phi_b)?.norm();
    if cross >= TOL_ORTH * da * db {
        return Err(Error::OrthogonalityRequired { overlap: cross });
    }
    Ok(libm::sqrt(da * da + db * db))
}

/// Improved uncertainty sum inequality:
/// `Delta A + Delta B >= |<phi_A|theta1>| + |<phi_B|theta2>|`.
pub fn iusi(a: &Operator, b: &Operator, phi: &State, aux: &AuxPair) -> Result<BoundReport> {
    let (phi_a, phi_b, da, db) = spreads(a, b, phi)?;
    let rhs = phi_a.inner(aux.theta1())?.norm() + phi_b.inner(aux.theta2())?.norm();
    Ok(BoundReport::lower_bound("iusi", da + db, rhs))
}

/// Best shared auxiliary in `span{phi_A, phi_B}` for the improved sum
/// inequality under `<phi_A|phi_B> = 0`. Returns the optimal state and the
/// attained right side, which equals `sqrt(Delta A^2 + Delta B^2)`.
///
/// One-dimensional search over the mixing angle: 64-point grid scan, then
/// golden-section refinement.
pub fn optimal_shared_aux(a: &Operator, b: &Operator, phi: &State) -> Result<(State, f64)> {
    let (phi_a, phi_b, da, db) = spreads(a, b, phi)?;
    let cross = phi_a.inner(&phi_b)?.norm();
    if cross >= TOL_ORTH * da * db {
        return Err(Error::OrthogonalityRequired { overlap: cross });
    }
    let ua = phi_a.normalized()?;
    let ub = phi_b.normalized()?;
    let theta_at = |t: f64| -> Result<State> {
        ua.scaled(C64::new(libm::cos(t), 0.0))
            .add_scaled(C64::new(libm::sin(t), 0.0), &ub)?
            .normalized()
    };
    let value_at = |t: f64| -> Result<f64> {
        let theta = theta_at(t)?;
        Ok(phi_a.inner(&theta)?.norm() + phi_b.inner(&theta)?.norm())
    };

    let half_pi = core::f64::consts::FRAC_PI_2;
    let mut best_i = 0usize;
    let mut best_v = f64::NEG_INFINITY;
    let grid = 64usize;
    for i in 0..=grid {
        let v = value_at(half_pi * i as f64 / grid as f64)?;
        if v > best_v {
            best_v = v;
            best_i = i;
        }
    }
    let step = half_pi / grid as f64;
    let mut lo = step * best_i.saturating_sub(1) as f64;
    let mut hi = (step * (best_i + 1) as f64).min(half_pi);

    let inv_phi = (libm::sqrt(5.0) - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = value_at(x1)?;
    let mut f2 = value_at(x2)?;
    for _ in 0..80 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = value_at(x2)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = value_at(x1)?;
        }
    }
    let t = 0.5 * (lo + hi);
    let v = value_at(t)?;
    let (t_best, v_best) = if v >= best_v { (t, v) } else { (step * best_i as f64, best_v) };
    Ok((theta_at(t_best)?, v_best))
}

/// Eckart lower bound `(eps2 - eps_bar)/(eps2 - eps1)` on the squared ground
/// overlap, clipped to `[0, 1]`.
pub fn eckart_lower(input: &EckartInput) -> Result<f64> {
    let span = input.epsilon2 - input.epsilon1;
    if span.abs() <= EPS_NORM {
        return Err(Error::DegenerateSpectrum);
    }
    Ok(((input.epsilon2 - input.epsilon_bar) / span).clamp(0.0, 1.0))
}

/// Complementary Eckart bound `S_n / sqrt(1 - S_n^2) <= Delta eps / |eps_bar - eps_n|`.
/// Note the reversed sense: satisfied means the left side does not exceed
/// the right.
pub fn eckart_complementary(diag: &OverlapDiagnostics) -> Result<ComplementaryEckart> {
    let denom = (diag.eps_bar - diag.eps_n).abs();
    if denom <= EPS_NORM {
        return Err(Error::ZeroDenominator);
    }
    if diag.s_n >= 1.0 {
        return Err(Error::InvalidInput { what: "s_n = 1 makes the left side infinite" });
    }
    let lhs = diag.s_n / libm::sqrt(1.0 - diag.s_n * diag.s_n);
    let rhs = diag.delta_eps / denom;
    let report = BoundReport::upper_bound("eckart-complementary (upper bound)", lhs, rhs);
    let s_max = rhs / libm::sqrt(1.0 + rhs * rhs);
    Ok(ComplementaryEckart { report, s_max })
}

/// Computes the diagnostics of a trial state against a known eigenpair and
/// cross-checks the identity `<psi1|psi2> = S_n^2 (eps_n - eps_bar)` that the
/// projector construction implies.
pub fn eckart_verify(
    h: &Operator,
    trial: &State,
    exact_energy: f64,
    exact_state: &State,
) -> Result<OverlapDiagnostics> {
    let exact = exact_state.normalized()?;
    let residual = h
        .apply(&exact)?
        .add_scaled(C64::new(-exact_energy, 0.0), &exact)?
        .norm();
    if residual > 1e-8 {
        return Err(Error::EigenResidualTooLarge { residual });
    }
    let s_n = trial.inner(&exact)?.norm();
    let eps_bar = h.expectation(trial)?.re;
    let delta_eps = h.std_dev(trial)?;

    let projector = Operator::projector(&exact)?;
    let psi1 = projector.centered(trial)?;
    let psi2 = h.centered(trial)?;
    let cross = psi1.inner(&psi2)?;
    let expected = s_n * s_n * (exact_energy - eps_bar);
    if (cross - C64::new(expected, 0.0)).norm() > 1e-10 {
        return Err(Error::ImaginaryResidue { imag: (cross - C64::new(expected, 0.0)).norm() });
    }
    OverlapDiagnostics::new(s_n.min(1.0), delta_eps, eps_bar, exact_energy)
}
