//! Property suites for the inequality kernels: soundness sweeps, algebraic
//! identities, and convergence laws.

use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::Arc;

use num_complex::Complex64 as C64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qineq_core::bounds::{
    csi, icsi, improved_triangle, moment_bound, optimal_alpha, projector_tightened_csi,
    triangle_usi,
};
use qineq_core::dynamics::{
    decay_lower_bound, gaussian_exact, gaussian_lower_bound, recurrence_summary,
    short_time_series, sine_upper_bound, survival, two_level_closed_form, GaussianPacketModel,
    NLevelModel, SeriesVariant, TwoLevelModel,
};
use qineq_core::uncertainty::{
    eckart_complementary, eckart_lower, eckart_verify, optimal_shared_aux, orthogonal_floor,
    uncertainty_sum, upi, EckartInput,
};
use qineq_core::{AuxPair, Operator, SpaceMetric, State, TriangleSign};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn amplitude() -> impl Strategy<Value = C64> {
    (-3.0..3.0f64, -3.0..3.0f64).prop_map(|(re, im)| c(re, im))
}

fn state_pair(max_dim: usize) -> impl Strategy<Value = (State, State)> {
    (2..=max_dim).prop_flat_map(|dim| {
        let metric = SpaceMetric::discrete(dim).unwrap();
        let m2 = metric.clone();
        (
            prop::collection::vec(amplitude(), dim),
            prop::collection::vec(amplitude(), dim),
        )
            .prop_map(move |(a, b)| {
                (
                    State::new(a, metric.clone()).unwrap(),
                    State::new(b, m2.clone()).unwrap(),
                )
            })
    })
}

fn random_state(rng: &mut impl Rng, metric: &Arc<SpaceMetric>) -> State {
    let amps: Vec<C64> = (0..metric.dimension())
        .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    State::new(amps, metric.clone()).unwrap()
}

fn random_hermitian(rng: &mut impl Rng, metric: &Arc<SpaceMetric>) -> Operator {
    let dim = metric.dimension();
    let mut matrix = vec![C64::ZERO; dim * dim];
    for i in 0..dim {
        matrix[i * dim + i] = c(rng.gen_range(-1.0..1.0), 0.0);
        for j in i + 1..dim {
            let v = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            matrix[i * dim + j] = v;
            matrix[j * dim + i] = v.conj();
        }
    }
    Operator::hermitian(matrix, metric.clone()).unwrap()
}

proptest! {
    #[test]
    fn inner_is_conjugate_symmetric((a, b) in state_pair(8)) {
        let ab = a.inner(&b).unwrap();
        let ba = b.inner(&a).unwrap();
        prop_assert!((ab - ba.conj()).norm() < 1e-12);
    }

    #[test]
    fn metric_is_positive((a, _) in state_pair(8)) {
        let sq = a.inner(&a).unwrap();
        prop_assert!(sq.im.abs() < 1e-12);
        prop_assert!(sq.re >= 0.0);
    }

    #[test]
    fn projector_removal_is_idempotent((t, d) in state_pair(8)) {
        prop_assume!(d.norm() > 1e-6);
        let once = t.project_out(&d).unwrap();
        let twice = once.project_out(&d).unwrap();
        for (x, y) in once.amplitudes().iter().zip(twice.amplitudes()) {
            prop_assert!((x - y).norm() < 1e-12);
        }
        prop_assert!(once.inner(&d).unwrap().norm() < 1e-10 * d.norm() * t.norm().max(1.0));
    }

    #[test]
    fn lower_bounds_are_sound((psi1, psi2) in state_pair(8), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let metric = psi1.metric().clone();
        let theta1 = random_state(&mut rng, &metric);
        let theta2 = random_state(&mut rng, &metric);
        prop_assume!(theta1.norm() > 1e-6 && theta2.norm() > 1e-6);
        let aux = AuxPair::normalizing(&theta1, &theta2).unwrap();

        prop_assert!(csi(&psi1, &psi2).unwrap().gap >= -1e-10);
        prop_assert!(icsi(&psi1, &psi2, &aux).unwrap().gap >= -1e-10);
        prop_assert!(triangle_usi(&psi1, &psi2, TriangleSign::Minus).unwrap().gap >= -1e-10);
        prop_assert!(triangle_usi(&psi1, &psi2, TriangleSign::Plus).unwrap().gap >= -1e-10);
        prop_assert!(improved_triangle(&psi1, &psi2, &aux).unwrap().gap >= -1e-10);
    }

    #[test]
    fn moment_bound_is_sound(seed in any::<u64>(), m in 0usize..3, n in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let metric = SpaceMetric::discrete(4).unwrap();
        let a = random_hermitian(&mut rng, &metric);
        let phi = random_state(&mut rng, &metric);
        prop_assume!(phi.norm() > 1e-6);
        let phi = phi.normalized().unwrap();
        let report = moment_bound(&a, &phi, m, n).unwrap();
        prop_assert!(report.gap >= -1e-10, "gap {}", report.gap);
    }

    #[test]
    fn centered_state_is_orthogonal_to_parent(seed in any::<u64>(), dim in 2usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let metric = SpaceMetric::discrete(dim).unwrap();
        let a = random_hermitian(&mut rng, &metric);
        let phi = random_state(&mut rng, &metric);
        prop_assume!(phi.norm() > 1e-6);
        let phi = phi.normalized().unwrap();
        let centered = a.centered(&phi).unwrap();
        prop_assert!(centered.inner(&phi).unwrap().norm() < 1e-10);
    }

    #[test]
    fn upi_is_sound(seed in any::<u64>(), dim in 2usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let metric = SpaceMetric::discrete(dim).unwrap();
        let a = random_hermitian(&mut rng, &metric);
        let b = random_hermitian(&mut rng, &metric);
        let phi = random_state(&mut rng, &metric);
        prop_assume!(phi.norm() > 1e-6);
        let phi = phi.normalized().unwrap();
        prop_assume!(a.std_dev(&phi).unwrap() > 1e-6 && b.std_dev(&phi).unwrap() > 1e-6);
        let report = upi(&a, &b, &phi).unwrap();
        prop_assert!(report.gap >= -1e-10);
        let sum = uncertainty_sum(&a, &b, &phi).unwrap();
        prop_assert!(sum.report.gap >= -1e-10);
        prop_assert!(sum.minus <= sum.report.lhs + 1e-10);
        prop_assert!(sum.plus <= sum.report.lhs + 1e-10);
    }

    #[test]
    fn projector_tightening_is_monotone((psi1, psi2) in state_pair(8), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        prop_assume!(psi2.norm() > 1e-6);
        // force <psi2|psi3> = 0 by removing the psi2 component
        let raw = random_state(&mut rng, psi1.metric());
        let psi3 = raw.project_out(&psi2).unwrap();
        prop_assume!(psi3.norm() > 1e-6);
        let report = projector_tightened_csi(&psi1, &psi2, &psi3).unwrap();
        prop_assert!(report.satisfied);
        prop_assert!(report.rhs <= psi1.norm() * psi2.norm() + 1e-12);
    }

    #[test]
    fn unitary_evolution_and_bound_soundness(
        seed in any::<u64>(),
        levels in 2usize..=8,
        t in 0.0..100.0f64,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let omegas: Vec<f64> = (0..levels).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let coeffs: Vec<C64> = (0..levels)
            .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        prop_assume!(coeffs.iter().map(|v| v.norm_sqr()).sum::<f64>() > 1e-6);
        let model = NLevelModel::normalizing(omegas, coeffs, 1.0).unwrap();

        let (p, q) = survival(&model, t);
        prop_assert!((0.0..=1.0).contains(&p) && (0.0..=1.0).contains(&q));
        prop_assert!((qineq_core::dynamics::evolve(&model, t).norm() - 1.0).abs() < 1e-12);
        if model.energy_spread() > 1e-9 {
            let bound = decay_lower_bound(&model, t).unwrap();
            prop_assert!(bound <= q.sqrt() + 1e-10);
            prop_assert!(bound <= 1.0 + 1e-10);
        }
    }
}

#[test]
fn optimal_alpha_is_a_minimizer() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let metric = SpaceMetric::discrete(5).unwrap();
    for _ in 0..50 {
        let psi1 = random_state(&mut rng, &metric);
        let psi3 = random_state(&mut rng, &metric);
        if psi3.norm() < 1e-6 {
            continue;
        }
        let alpha = optimal_alpha(&psi1, &psi3).unwrap();
        let best = psi1.add_scaled(alpha, &psi3).unwrap().norm();
        for _ in 0..20 {
            let angle = rng.gen_range(0.0..2.0 * PI);
            let delta = c(1e-3 * angle.cos(), 1e-3 * angle.sin());
            let perturbed = psi1.add_scaled(alpha + delta, &psi3).unwrap().norm();
            assert!(perturbed >= best - 1e-12);
        }
    }
}

#[test]
fn figure_curve_identities_at_sample_points() {
    let metric = SpaceMetric::discrete(2).unwrap();
    let psi2 = State::from_reals(&[1.0, 0.0], metric.clone()).unwrap();
    let s = 1.0 / 2.0f64.sqrt();
    let theta1 = State::from_reals(&[s, s], metric.clone()).unwrap();
    for x in [-2.0f64, -1.0, 0.0, 1.0, 2.0] {
        let r = 1.0 / (1.0 + x * x).sqrt();
        let psi1 = State::from_reals(&[x * r, r], metric.clone()).unwrap();
        let theta2 = State::from_reals(&[r, -x * r], metric.clone()).unwrap();

        // curve 1: CSI right side |x|/sqrt(1+x^2)
        let c1 = csi(&psi1, &psi2).unwrap().rhs;
        assert!((c1 - x.abs() * r).abs() < 1e-12);

        // curve 2: improved right side with the Eq. (33) aux pair
        let aux = AuxPair::new(theta1.clone(), theta2.clone()).unwrap();
        let c2 = icsi(&psi1, &psi2, &aux).unwrap().rhs;
        let expected =
            psi1.inner(&theta1).unwrap().norm() * psi2.inner(&theta2).unwrap().norm();
        assert!((c2 - expected).abs() < 1e-14);
    }
}

/// Commuting diagonal operators with a state arranged so that
/// `<phi_A|phi_B> = 0` while both spreads stay finite.
fn orthogonal_fixture(rng: &mut impl Rng) -> (Operator, Operator, State) {
    let metric = SpaceMetric::discrete(4).unwrap();
    let sa = rng.gen_range(0.5..3.0);
    let sb = rng.gen_range(0.5..3.0);
    let a = Operator::diagonal(&[sa, sa, -sa, -sa], metric.clone()).unwrap();
    let b = Operator::diagonal(&[sb, -sb, sb, -sb], metric.clone()).unwrap();
    let phi = State::from_reals(&[0.5, 0.5, 0.5, 0.5], metric).unwrap();
    (a, b, phi)
}

#[test]
fn shared_aux_supremum_equals_the_variance_floor() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let (a, b, phi) = orthogonal_fixture(&mut rng);
        let floor = orthogonal_floor(&a, &b, &phi).unwrap();
        let (_, best) = optimal_shared_aux(&a, &b, &phi).unwrap();
        assert!((best - floor).abs() < 1e-8, "best {best} floor {floor}");
        let sum = uncertainty_sum(&a, &b, &phi).unwrap();
        assert!((sum.report.rhs - floor).abs() < 1e-10);
    }
}

#[test]
fn eckart_sandwich_saturates_on_two_level_rotations() {
    let metric = SpaceMetric::discrete(2).unwrap();
    let h = Operator::diagonal(&[0.0, 1.0], metric.clone()).unwrap();
    let ground = State::basis(metric.clone(), 0).unwrap();
    for i in 1..=50 {
        let delta = FRAC_PI_2 * i as f64 / 51.0;
        let trial = State::from_reals(&[delta.cos(), delta.sin()], metric.clone()).unwrap();
        let diag = eckart_verify(&h, &trial, 0.0, &ground).unwrap();
        let lower = eckart_lower(&EckartInput::new(0.0, 1.0, diag.eps_bar).unwrap()).unwrap();
        let comp = eckart_complementary(&diag).unwrap();
        let s_sq = diag.s_n * diag.s_n;
        assert!(lower <= s_sq + 1e-10);
        assert!(s_sq <= comp.s_max * comp.s_max + 1e-10);
        // both ends saturate simultaneously on the 2-level fixture
        assert!((lower - s_sq).abs() < 1e-10);
        assert!((comp.s_max * comp.s_max - s_sq).abs() < 1e-10);
    }
}

#[test]
fn complementary_eckart_holds_for_perturbed_eigenstates() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let metric = SpaceMetric::discrete(4).unwrap();
    for _ in 0..100 {
        let mut energies: Vec<f64> = (0..4).map(|_| rng.gen_range(-2.0..2.0)).collect();
        energies.sort_by(|a, b| a.partial_cmp(b).unwrap());
        if energies.windows(2).any(|w| w[1] - w[0] < 0.05) {
            continue;
        }
        let h = Operator::diagonal(&energies, metric.clone()).unwrap();
        let n = rng.gen_range(0..4usize);
        let exact = State::basis(metric.clone(), n).unwrap();
        let noise = random_state(&mut rng, &metric).scaled(c(0.05, 0.0));
        let trial = exact.add(&noise).unwrap().normalized().unwrap();
        let diag = match eckart_verify(&h, &trial, energies[n], &exact) {
            Ok(d) => d,
            Err(_) => continue, // eps_bar may coincide with eps_n
        };
        if (diag.eps_bar - diag.eps_n).abs() < 1e-9 || diag.s_n >= 1.0 - 1e-12 {
            continue;
        }
        let comp = eckart_complementary(&diag).unwrap();
        assert!(comp.report.satisfied, "lhs {} rhs {}", comp.report.lhs, comp.report.rhs);
    }
}

#[test]
fn two_level_bound_is_exact_over_a_period() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..20 {
        let theta = rng.gen_range(0.05..FRAC_PI_2 - 0.05);
        let omega1 = rng.gen_range(-2.0..2.0);
        let omega2 = omega1 + rng.gen_range(0.2..3.0);
        let m = TwoLevelModel::new(omega1, omega2, theta, 1.0).unwrap();
        let n = m.to_n_level();
        let period = 2.0 * PI / m.omega21();
        for i in 0..1000 {
            let t = period * i as f64 / 999.0;
            let (_, q) = survival(&n, t);
            let bound = decay_lower_bound(&n, t).unwrap();
            assert!(
                (bound - q.sqrt()).abs() <= 1e-12,
                "theta {theta} t {t} diff {:e}",
                (bound - q.sqrt()).abs()
            );
        }
    }
}

#[test]
fn gaussian_bounds_are_ordered() {
    let g = GaussianPacketModel::new(1.0, 1.0).unwrap();
    for i in 0..=500 {
        let s = FRAC_PI_2 * i as f64 / 500.0;
        let lower = gaussian_lower_bound(&g, s);
        let exact = gaussian_exact(&g, s);
        let upper = sine_upper_bound(1.0, s, 1.0).unwrap();
        assert!(lower <= exact + 1e-12);
        assert!(exact <= upper + 1e-12);
    }
}

#[test]
fn full_series_residual_shrinks_fifth_order() {
    let fixtures = [
        NLevelModel::normalizing(
            vec![0.0, 1.0, 3.0],
            vec![c(0.6, 0.0), c(0.48, 0.36), c(0.52, 0.0)],
            1.0,
        )
        .unwrap(),
        NLevelModel::normalizing(
            vec![-1.0, 0.5, 2.0, 4.0],
            vec![c(0.5, 0.1), c(0.3, -0.2), c(0.6, 0.0), c(0.2, 0.4)],
            1.0,
        )
        .unwrap(),
        NLevelModel::normalizing(vec![0.0, 2.0], vec![c(0.8, 0.0), c(0.6, 0.0)], 1.0).unwrap(),
    ];
    for m in &fixtures {
        let residual = |t: f64| {
            (short_time_series(m, t, SeriesVariant::Full).unwrap()
                - decay_lower_bound(m, t).unwrap())
            .abs()
        };
        let t = 0.2 / m.energy_spread();
        let ratio = residual(t) / residual(t / 2.0);
        assert!((24.0..40.0).contains(&ratio), "ratio {ratio}");
    }
}

#[test]
fn recurrence_product_error_law() {
    let mut last = 0.0;
    for phi in [0.2, 0.1, 0.05, 0.025] {
        let summary = recurrence_summary(phi, 1.0, 1.0).unwrap();
        last = (PI / 2.0 - summary.product) / (phi * phi);
        assert!(last > 0.0 && last <= 1.05 * PI / 3.0, "phi {phi} ratio {last}");
    }
    // the normalized error approaches pi/3 as phi -> 0
    assert!((last - PI / 3.0).abs() < 0.01);
}

#[test]
fn exchange_symmetry_of_two_level_quantities() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..50 {
        let theta = rng.gen_range(0.05..FRAC_PI_2 - 0.05);
        let t = rng.gen_range(0.0..10.0);
        let a = TwoLevelModel::new(0.3, 1.9, theta, 1.0).unwrap();
        let b = TwoLevelModel::new(0.3, 1.9, FRAC_PI_2 - theta, 1.0).unwrap();
        let (va, vb) = (two_level_closed_form(&a, t), two_level_closed_form(&b, t));
        assert!((va.sqrt_q - vb.sqrt_q).abs() < 1e-14);
        assert!((va.delta_e - vb.delta_e).abs() < 1e-14);
    }
}

#[test]
fn quadrature_overlap_converges_at_fourth_order() {
    // norm^2 of exp(x/2) over [0, pi] is exp(pi) - 1; the Simpson residue
    // should shrink ~16x per interval-count doubling
    let residue = |points: usize| {
        let metric = SpaceMetric::simpson(0.0, PI, points).unwrap();
        let s = State::from_fn(metric, |x| c((x / 2.0).exp(), 0.0)).unwrap();
        (s.norm_sqr() - (PI.exp() - 1.0)).abs()
    };
    let coarse = residue(63);
    let fine = residue(125);
    assert!(coarse / fine > 8.0, "coarse {coarse:e} fine {fine:e}");
}
