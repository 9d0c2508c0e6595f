//! Survival and decay probability under conservative evolution: the
//! spread-weighted lower bound on sqrt(Q), its short-time expansions, the
//! Gaussian-packet closed forms, two-level recurrence algebra, and
//! quantum-speed-limit times.

use alloc::vec::Vec;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::metric::SpaceMetric;
use crate::state::State;
use crate::EPS_NORM;

/// Discrete-spectrum model: energies `hbar * omega_j` with initial
/// coefficients `c_j`, normalized.
#[derive(Debug, Clone, PartialEq)]
pub struct NLevelModel {
    omegas: Vec<f64>,
    coefficients: Vec<C64>,
    hbar: f64,
}

impl NLevelModel {
    pub fn new(omegas: Vec<f64>, coefficients: Vec<C64>, hbar: f64) -> Result<Self> {
        if omegas.len() < 2 {
            return Err(Error::InvalidInput { what: "need at least 2 levels" });
        }
        if omegas.len() != coefficients.len() {
            return Err(Error::DimensionMismatch {
                expected: omegas.len(),
                got: coefficients.len(),
            });
        }
        if !(hbar > 0.0) {
            return Err(Error::InvalidInput { what: "hbar must be positive" });
        }
        let total: f64 = coefficients.iter().map(|c| c.norm_sqr()).sum();
        if (total - 1.0).abs() > 1e-10 {
            return Err(Error::Unnormalized { norm: libm::sqrt(total) });
        }
        Ok(Self { omegas, coefficients, hbar })
    }

    /// Normalizes the coefficient vector first.
    pub fn normalizing(omegas: Vec<f64>, coefficients: Vec<C64>, hbar: f64) -> Result<Self> {
        let total: f64 = coefficients.iter().map(|c| c.norm_sqr()).sum();
        if total <= EPS_NORM * EPS_NORM {
            return Err(Error::DegenerateState);
        }
        let scale = 1.0 / libm::sqrt(total);
        let coefficients = coefficients.iter().map(|c| c * scale).collect();
        Self::new(omegas, coefficients, hbar)
    }

    pub fn levels(&self) -> usize {
        self.omegas.len()
    }

    pub fn omegas(&self) -> &[f64] {
        &self.omegas
    }

    pub fn coefficients(&self) -> &[C64] {
        &self.coefficients
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// `<H^k> = sum_j |c_j|^2 (hbar omega_j)^k`.
    pub fn energy_moment(&self, k: u32) -> f64 {
        self.omegas
            .iter()
            .zip(&self.coefficients)
            .map(|(&w, c)| c.norm_sqr() * libm::pow(self.hbar * w, k as f64))
            .sum()
    }

    pub fn mean_energy(&self) -> f64 {
        self.energy_moment(1)
    }

    pub fn energy_spread(&self) -> f64 {
        let mean = self.mean_energy();
        let var = self.energy_moment(2) - mean * mean;
        libm::sqrt(var.max(0.0))
    }
}

/// Two-level model parametrized by the mixing angle: `r1 = cos(theta)`,
/// `r2 = sin(theta)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoLevelModel {
    pub omega1: f64,
    pub omega2: f64,
    pub theta: f64,
    pub hbar: f64,
}

impl TwoLevelModel {
    pub fn new(omega1: f64, omega2: f64, theta: f64, hbar: f64) -> Result<Self> {
        if omega2 == omega1 {
            return Err(Error::DegenerateSpectrum);
        }
        if !(theta > 0.0 && theta < core::f64::consts::FRAC_PI_2) {
            return Err(Error::InvalidInput { what: "theta must lie in (0, pi/2)" });
        }
        if !(hbar > 0.0) {
            return Err(Error::InvalidInput { what: "hbar must be positive" });
        }
        Ok(Self { omega1, omega2, theta, hbar })
    }

    pub fn omega21(&self) -> f64 {
        self.omega2 - self.omega1
    }

    pub fn to_n_level(&self) -> NLevelModel {
        NLevelModel::normalizing(
            alloc::vec![self.omega1, self.omega2],
            alloc::vec![
                C64::new(libm::cos(self.theta), 0.0),
                C64::new(libm::sin(self.theta), 0.0),
            ],
            self.hbar,
        )
        .expect("two-level coefficients are normalizable")
    }
}

/// Free Gaussian packet characterized by its energy spread.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianPacketModel {
    pub delta_e: f64,
    pub hbar: f64,
}

impl GaussianPacketModel {
    pub fn new(delta_e: f64, hbar: f64) -> Result<Self> {
        if !(delta_e > 0.0) {
            return Err(Error::InvalidInput { what: "delta_e must be positive" });
        }
        if !(hbar > 0.0) {
            return Err(Error::InvalidInput { what: "hbar must be positive" });
        }
        Ok(Self { delta_e, hbar })
    }

    fn s(&self, t: f64) -> f64 {
        self.delta_e * t / self.hbar
    }
}

/// Exact vs. bound values of sqrt(Q) over a time grid. `None` marks times
/// where a bound's validity window does not apply.
#[derive(Debug, Clone, PartialEq)]
pub struct DecayTrace {
    pub times: Vec<f64>,
    pub sqrt_q_exact: Vec<f64>,
    pub bound: Vec<f64>,
    pub sine_upper: Vec<Option<f64>>,
    pub series: Vec<Option<f64>>,
}

/// The fixed-angle recurrence quantities: maximum decay, the times and
/// spreads along the general and equiprobable routes, and their ratios.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecurrenceSummary {
    pub phi: f64,
    pub sqrt_q_max: f64,
    pub tau_g: f64,
    pub tau_e: f64,
    pub delta_e_g: f64,
    pub delta_e_e: f64,
    pub tau_rel: f64,
    pub delta_e_rel: f64,
    pub product: f64,
}

/// Speed-limit times for the equiprobable two-level decay. The mean-energy
/// bound applies only when the ground frequency is zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpeedLimits {
    pub fleming: f64,
    pub margolus_levitin: Option<f64>,
}

/// Closed-form two-level values at one time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoLevelValues {
    pub sqrt_q: f64,
    pub delta_e: f64,
    pub h_mean: f64,
}

/// Phase evolution `c_j -> c_j exp(-i omega_j t)` as a discrete-metric state.
pub fn evolve(m: &NLevelModel, t: f64) -> State {
    let metric = SpaceMetric::discrete(m.levels()).expect("level count >= 2");
    let amps: Vec<C64> = m
        .coefficients
        .iter()
        .zip(&m.omegas)
        .map(|(c, &w)| c * C64::new(0.0, -w * t).exp())
        .collect();
    State::new(amps, metric).expect("finite amplitudes")
}

/// Survival and decay probabilities `(P, Q)` at time `t`.
///
/// `Q` is accumulated pairwise as `sum_{j<k} 4 p_j p_k sin^2(omega_jk t/2)`,
/// which stays fully accurate where `Q` is tiny; the `1 - |amp|^2` route
/// would lose half the digits there.
pub fn survival(m: &NLevelModel, t: f64) -> (f64, f64) {
    let n = m.levels();
    let mut q = 0.0;
    for j in 0..n {
        let pj = m.coefficients[j].norm_sqr();
        for k in j + 1..n {
            let pk = m.coefficients[k].norm_sqr();
            let half = libm::sin((m.omegas[k] - m.omegas[j]) * t / 2.0);
            q += 4.0 * pj * pk * half * half;
        }
    }
    let q = q.clamp(0.0, 1.0);
    (1.0 - q, q)
}

/// Spread-weighted lower bound on `sqrt(Q(t))`:
/// `|sum_j |c_j|^2 (hbar omega_j - <H>) exp(-i omega_j t)| / Delta E`.
pub fn decay_lower_bound(m: &NLevelModel, t: f64) -> Result<f64> {
    let delta_e = m.energy_spread();
    if delta_e <= EPS_NORM {
        return Err(Error::DegenerateUncertainty);
    }
    let mean = m.mean_energy();
    let amp: C64 = m
        .coefficients
        .iter()
        .zip(&m.omegas)
        .map(|(c, &w)| c.norm_sqr() * (m.hbar * w - mean) * C64::new(0.0, -w * t).exp())
        .sum();
    Ok(amp.norm() / delta_e)
}

/// Which short-time expansion to evaluate: the printed second-order
/// coefficient, or the one consistent with the exact amplitude to third
/// order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesVariant {
    Paper,
    Full,
}

/// Short-time expansion of the decay lower bound, valid for
/// `|t| Delta E / hbar < 0.5`.
pub fn short_time_series(m: &NLevelModel, t: f64, variant: SeriesVariant) -> Result<f64> {
    let delta_e = m.energy_spread();
    if delta_e <= EPS_NORM {
        return Err(Error::DegenerateUncertainty);
    }
    let hbar = m.hbar;
    if t.abs() * delta_e / hbar >= 0.5 {
        return Err(Error::OutOfWindow { what: "|t| dE/hbar must be < 0.5" });
    }
    let mean = m.mean_energy();
    let h2 = m.energy_moment(2);
    let h3 = m.energy_moment(3);
    let mu = h3 - h2 * mean;
    let de4 = libm::pow(delta_e, 4.0);
    let leading = delta_e * t / hbar;
    let correction = match variant {
        SeriesVariant::Paper => t * t * mu * mu / (8.0 * hbar * hbar * de4),
        SeriesVariant::Full => {
            let h4 = m.energy_moment(4);
            let nu = h4 - mean * h3;
            t * t * (mu * mu / 4.0 - delta_e * delta_e * nu / 3.0)
                / (2.0 * hbar * hbar * de4)
        }
    };
    Ok(leading * (1.0 + correction))
}

/// Sine upper bound on `sqrt(Q(t))`, valid on `0 <= t <= pi hbar / (2 dE)`.
pub fn sine_upper_bound(delta_e: f64, t: f64, hbar: f64) -> Result<f64> {
    if !(delta_e > 0.0 && hbar > 0.0) {
        return Err(Error::InvalidInput { what: "delta_e and hbar must be positive" });
    }
    let s = delta_e * t / hbar;
    if !(0.0..=core::f64::consts::FRAC_PI_2 + 1e-15).contains(&s) {
        return Err(Error::OutOfWindow { what: "0 <= t <= pi hbar / (2 dE)" });
    }
    Ok(libm::sin(s.min(core::f64::consts::FRAC_PI_2)))
}

/// Lower bound `s / (1 + 2 s^2)^(3/4)` for the free Gaussian packet,
/// `s = dE t / hbar`; valid for all `t >= 0`.
pub fn gaussian_lower_bound(g: &GaussianPacketModel, t: f64) -> f64 {
    let s = g.s(t);
    s / libm::pow(1.0 + 2.0 * s * s, 0.75)
}

/// Exact `sqrt(Q(t)) = sqrt(1 - (1 + 2 s^2)^(-1/2))` for the zero-mean
/// free Gaussian packet.
pub fn gaussian_exact(g: &GaussianPacketModel, t: f64) -> f64 {
    let s = g.s(t);
    libm::sqrt(1.0 - 1.0 / libm::sqrt(1.0 + 2.0 * s * s))
}

/// Closed-form two-level quantities:
/// `sqrt(Q) = sin(2 theta) |sin(omega21 t / 2)|`,
/// `dE = (hbar omega21 / 2) sin(2 theta)`,
/// `<H> = hbar (r1^2 omega1 + r2^2 omega2)`.
pub fn two_level_closed_form(m: &TwoLevelModel, t: f64) -> TwoLevelValues {
    let sin2t = libm::sin(2.0 * m.theta);
    let w21 = m.omega21();
    let (c, s) = (libm::cos(m.theta), libm::sin(m.theta));
    TwoLevelValues {
        sqrt_q: sin2t * libm::fabs(libm::sin(w21 * t / 2.0)),
        delta_e: 0.5 * m.hbar * libm::fabs(w21) * sin2t,
        h_mean: m.hbar * (c * c * m.omega1 + s * s * m.omega2),
    }
}

/// Fleming time `pi / omega21` plus, when `omega1 = 0`, the mean-energy
/// (Margolus-Levitin) time `h / (4 <H>)`.
pub fn speed_limit_times(m: &TwoLevelModel) -> Result<SpeedLimits> {
    let w21 = m.omega21();
    if w21 == 0.0 {
        return Err(Error::DegenerateSpectrum);
    }
    let fleming = core::f64::consts::PI / libm::fabs(w21);
    let margolus_levitin = (m.omega1 == 0.0).then(|| {
        let h_mean = two_level_closed_form(m, 0.0).h_mean;
        let h_planck = 2.0 * core::f64::consts::PI * m.hbar;
        h_planck / (4.0 * h_mean)
    });
    Ok(SpeedLimits { fleming, margolus_levitin })
}

/// Recurrence quantities at fixed mixing angle `phi` in `(0, pi/4]`.
pub fn recurrence_summary(phi: f64, omega21: f64, hbar: f64) -> Result<RecurrenceSummary> {
    if !(phi > 0.0 && phi <= core::f64::consts::FRAC_PI_4) {
        return Err(Error::InvalidInput { what: "phi must lie in (0, pi/4]" });
    }
    if !(omega21 != 0.0 && hbar > 0.0) {
        return Err(Error::InvalidInput { what: "omega21 nonzero, hbar positive" });
    }
    let w = libm::fabs(omega21);
    let sin2phi = libm::sin(2.0 * phi);
    let tau_g = core::f64::consts::PI / w;
    let tau_e = 4.0 * phi / w;
    let tau_rel = tau_g / tau_e;
    Ok(RecurrenceSummary {
        phi,
        sqrt_q_max: sin2phi,
        tau_g,
        tau_e,
        delta_e_g: 0.5 * hbar * w * sin2phi,
        delta_e_e: 0.5 * hbar * w,
        tau_rel,
        delta_e_rel: sin2phi,
        product: tau_rel * sin2phi,
    })
}

/// Assembles the decay curves over a time grid. Bounds with validity
/// windows are `None` outside them.
pub fn trace(m: &NLevelModel, times: &[f64]) -> Result<DecayTrace> {
    if times.is_empty() {
        return Err(Error::EmptyInput);
    }
    if times.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidInput { what: "times must be strictly increasing" });
    }
    let delta_e = m.energy_spread();
    let mut out = DecayTrace {
        times: times.to_vec(),
        sqrt_q_exact: Vec::with_capacity(times.len()),
        bound: Vec::with_capacity(times.len()),
        sine_upper: Vec::with_capacity(times.len()),
        series: Vec::with_capacity(times.len()),
    };
    for &t in times {
        let (_, q) = survival(m, t);
        out.sqrt_q_exact.push(libm::sqrt(q));
        out.bound.push(decay_lower_bound(m, t)?);
        out.sine_upper.push(sine_upper_bound(delta_e, t, m.hbar).ok());
        out.series.push(short_time_series(m, t, SeriesVariant::Full).ok());
    }
    Ok(out)
}

/// Ratios `hbar sqrt(Q(t)) / (dE t)` for a decreasing positive time
/// sequence; they approach 1 as `t -> 0`.
pub fn small_time_limit_check(m: &NLevelModel, t_sequence: &[f64]) -> Result<Vec<f64>> {
    let delta_e = m.energy_spread();
    if delta_e <= EPS_NORM {
        return Err(Error::DegenerateUncertainty);
    }
    let cap = 0.1 * m.hbar / delta_e;
    t_sequence
        .iter()
        .map(|&t| {
            if !(t > 0.0 && t < cap) {
                return Err(Error::OutOfWindow { what: "t must lie in (0, 0.1 hbar/dE)" });
            }
            let (_, q) = survival(m, t);
            Ok(m.hbar * libm::sqrt(q) / (delta_e * t))
        })
        .collect()
}
