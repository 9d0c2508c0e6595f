//! Figure and report generators. Every function is a pure map from its
//! configuration to output text; same input, same bytes.

use std::f64::consts::PI;
use std::sync::Arc;

use qineq_core::bounds::{csi, icsi, icsi_single_aux, parent_aux_bound};
use qineq_core::dynamics::{
    decay_lower_bound, gaussian_exact, gaussian_lower_bound, recurrence_summary,
    sine_upper_bound, survival, GaussianPacketModel, TwoLevelModel,
};
use qineq_core::{AuxPair, Result, SpaceMetric, State, C64, TOL_ORTH};

use crate::csvfmt::{fmt_sig9, row};

#[derive(Debug, Clone, Copy)]
pub struct GridRange {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl GridRange {
    pub fn new(min: f64, max: f64, steps: usize) -> Self {
        GridRange { min, max, steps }
    }

    pub fn at(&self, i: usize) -> f64 {
        self.min + (self.max - self.min) * i as f64 / (self.steps - 1) as f64
    }
}

pub const FIG1_RANGE: GridRange = GridRange { min: -5.0, max: 5.0, steps: 1001 };
pub const FIG2_STEPS: usize = 101;
pub const GAUSSIAN_RANGE: GridRange = GridRange { min: 0.0, max: 2.0, steps: 401 };
pub const FIG3_STEPS: usize = 501;
pub const FIG3_THETAS: [f64; 4] = [PI / 4.0, PI / 6.0, PI / 8.0, PI / 12.0];
pub const DEFAULT_QUAD_POINTS: usize = 2001;

/// The one-parameter family behind figure 1: `psi1 = (x, 1)/sqrt(1+x^2)`
/// against the fixed `psi2 = (1, 0)`, with auxiliaries `theta1 = (1, 1)/sqrt 2`
/// and `theta2 = (1, -x)/sqrt(1+x^2)`.
fn fig1_states(x: f64, metric: &Arc<SpaceMetric>) -> Result<(State, State, State, State)> {
    let r = 1.0 / (1.0 + x * x).sqrt();
    let s = 1.0 / 2.0f64.sqrt();
    Ok((
        State::from_reals(&[x * r, r], metric.clone())?,
        State::from_reals(&[1.0, 0.0], metric.clone())?,
        State::from_reals(&[s, s], metric.clone())?,
        State::from_reals(&[r, -x * r], metric.clone())?,
    ))
}

/// Overlap-family curves: the plain bound, the two-auxiliary improvement,
/// its aux-exchanged and single-direction variants, and (where the parents
/// are orthogonal) the factor-2 single-auxiliary evaluation.
pub fn fig1(range: &GridRange) -> Result<String> {
    let metric = SpaceMetric::discrete(2)?;
    let mut out = String::from("x,curve1,curve2,curve3,curve4,curve5,curve4_eq16\n");
    for i in 0..range.steps {
        let x = range.at(i);
        let (psi1, psi2, theta1, theta2) = fig1_states(x, &metric)?;
        let curve1 = csi(&psi1, &psi2)?.rhs;
        let both = AuxPair::new(theta1.clone(), theta2.clone())?;
        let swapped = AuxPair::new(theta2.clone(), theta1.clone())?;
        let first_only = AuxPair::new(theta1.clone(), theta1.clone())?;
        let second_only = AuxPair::new(theta2.clone(), theta2.clone())?;
        let curve2 = icsi(&psi1, &psi2, &both)?.rhs;
        let curve3 = icsi(&psi1, &psi2, &swapped)?.rhs;
        let curve4 = icsi(&psi1, &psi2, &first_only)?.rhs;
        let curve5 = icsi(&psi1, &psi2, &second_only)?.rhs;
        let single = if psi1.overlap(&psi2)? < TOL_ORTH {
            Some(icsi_single_aux(&psi1, &psi2, &theta1)?.rhs)
        } else {
            None
        };
        out.push_str(&row(&[
            Some(x),
            Some(curve1),
            Some(curve2),
            Some(curve3),
            Some(curve4),
            Some(curve5),
            single,
        ]));
        out.push('\n');
    }
    Ok(out)
}

/// Bound surface over the two mixing fractions when the auxiliaries are
/// built from the (orthonormal) parent pair alone.
pub fn fig2(steps: usize) -> Result<String> {
    let metric = SpaceMetric::discrete(2)?;
    let psi1 = State::basis(metric.clone(), 0)?;
    let psi2 = State::basis(metric, 1)?;
    let frac = GridRange::new(0.0, 1.0, steps);
    let mut out = String::from("c1_frac,d1_frac,rhs\n");
    for i in 0..steps {
        let c1 = frac.at(i);
        let c2 = (1.0 - c1 * c1).max(0.0).sqrt();
        for j in 0..steps {
            let d1 = frac.at(j);
            let d2 = (1.0 - d1 * d1).max(0.0).sqrt();
            let rhs = parent_aux_bound(&psi1, &psi2, (c1, c2), (d1, d2))?.rhs;
            out.push_str(&row(&[Some(c1), Some(d1), Some(rhs)]));
            out.push('\n');
        }
    }
    Ok(out)
}

/// The two lowest box eigenstates on (0, pi) with the skewed polynomial
/// auxiliary `x^2 (pi - x)`; checks the factor-2 bound against its analytic
/// value 630 / pi^6.
pub fn box_report(quad_points: usize) -> Result<(String, bool)> {
    let metric = SpaceMetric::simpson(0.0, PI, quad_points)?;
    let amp = (2.0 / PI).sqrt();
    let s1 = State::from_fn(metric.clone(), |x| C64::new(amp * x.sin(), 0.0))?;
    let s2 = State::from_fn(metric.clone(), |x| C64::new(amp * (2.0 * x).sin(), 0.0))?;
    let theta = State::from_fn(metric, |x| C64::new(x * x * (PI - x), 0.0))?.normalized()?;

    let s = s1.overlap(&s2)?;
    let rhs = icsi_single_aux(&s1, &s2, &theta)?.rhs;
    let target = 630.0 / PI.powi(6);
    let difference = rhs - target;
    let ok = difference.abs() <= 1e-3;

    let mut out = String::new();
    if quad_points < 101 {
        out.push_str("# warning: quadrature too coarse for the quoted accuracy\n");
    }
    out.push_str(&format!("S = {}\n", fmt_sig9(s)));
    out.push_str(&format!("eq16_rhs = {}\n", fmt_sig9(rhs)));
    out.push_str(&format!("target = {}\n", fmt_sig9(target)));
    out.push_str(&format!("difference = {}\n", fmt_sig9(difference)));
    Ok((out, ok))
}

/// Decay curves of the free Gaussian packet against its lower and sine
/// upper bounds over the dimensionless time `s`; the upper bound is blank
/// outside its validity window.
pub fn gaussian(range: &GridRange) -> Result<String> {
    let g = GaussianPacketModel::new(1.0, 1.0)?;
    let mut out = String::from("s,lower45,upper44,exact\n");
    for i in 0..range.steps {
        let s = range.at(i);
        let lower = gaussian_lower_bound(&g, s);
        let upper = sine_upper_bound(1.0, s, 1.0).ok();
        let exact = gaussian_exact(&g, s);
        out.push_str(&row(&[Some(s), Some(lower), upper, Some(exact)]));
        out.push('\n');
    }
    Ok(out)
}

/// Two-level decay traces over one recurrence period for each mixing angle,
/// with a commented summary block of the recurrence quantities per angle.
pub fn fig3(thetas: &[f64], steps: usize) -> Result<String> {
    let omega21 = 1.0;
    let period = 2.0 * PI / omega21;
    let grid = GridRange::new(0.0, period, steps);
    let mut out = String::from("theta,t,sqrtQ,bound41\n");
    for &theta in thetas {
        let model = TwoLevelModel::new(0.0, omega21, theta, 1.0)?;
        let n = model.to_n_level();
        for i in 0..steps {
            let t = grid.at(i);
            let (_, q) = survival(&n, t);
            let bound = decay_lower_bound(&n, t)?;
            out.push_str(&row(&[Some(theta), Some(t), Some(q.sqrt()), Some(bound)]));
            out.push('\n');
        }
        let s = recurrence_summary(theta, omega21, 1.0)?;
        out.push_str(&format!(
            "# theta={} sqrt_q_max={} tau_g={} tau_e={} delta_e_g={} delta_e_e={} tau_rel={} delta_e_rel={} product={}\n",
            fmt_sig9(theta),
            fmt_sig9(s.sqrt_q_max),
            fmt_sig9(s.tau_g),
            fmt_sig9(s.tau_e),
            fmt_sig9(s.delta_e_g),
            fmt_sig9(s.delta_e_e),
            fmt_sig9(s.tau_rel),
            fmt_sig9(s.delta_e_rel),
            fmt_sig9(s.product),
        ));
    }
    Ok(out)
}
