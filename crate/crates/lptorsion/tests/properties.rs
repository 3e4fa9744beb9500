//! Property-based tests: exact-scalar field laws, interval lattice laws,
//! agreement between exact signs and floating-point evaluation, and
//! cross-checks between independent code paths (closed-form intervals vs
//! the window computation, subset enumeration vs extremal weight sums,
//! stationary Riccati solutions vs the integrator).

use num::{BigInt, BigRational};
use proptest::prelude::*;

use lptorsion::numeric::{qs_sign, ExponentInterval, QuadScalar};
use lptorsion::pinching::q_bound;
use lptorsion::report::{g_mu_n_delta_spectrum, theorem_b_interval, torsion_nonvanishing_interval};
use lptorsion::riccati::{riccati_integrate, CurvatureField};
use lptorsion::spectral::{exterior_spectrum, is_contracting, Contraction, DerivationSpectrum};

fn big_ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Small rationals with denominators up to 6.
fn rational() -> impl Strategy<Value = BigRational> {
    (-30i64..=30, 1i64..=6).prop_map(|(n, d)| big_ratio(n, d))
}

/// Non-square radicands (so the surd part survives canonicalization)
/// plus perfect squares (so canonicalization itself gets exercised).
fn radicand() -> impl Strategy<Value = BigRational> {
    prop_oneof![
        Just(big_ratio(2, 1)),
        Just(big_ratio(3, 1)),
        Just(big_ratio(5, 1)),
        Just(big_ratio(1, 2)),
        Just(big_ratio(2, 9)),
        Just(big_ratio(1, 4)),
        Just(big_ratio(4, 9)),
    ]
}

/// Exact scalars a + b*sqrt(s) over one shared radicand.
fn surd(s: BigRational) -> impl Strategy<Value = QuadScalar> {
    (rational(), rational()).prop_map(move |(a, b)| QuadScalar::surd(a, b, s.clone()).unwrap())
}

/// (x, y, z) sharing a radicand, so all field operations stay exact.
fn surd_triple() -> impl Strategy<Value = (QuadScalar, QuadScalar, QuadScalar)> {
    radicand().prop_flat_map(|s| (surd(s.clone()), surd(s.clone()), surd(s)))
}

/// Intervals over a shared radicand: empty, bounded, or a ray.
fn interval(s: BigRational) -> impl Strategy<Value = ExponentInterval> {
    prop_oneof![
        1 => Just(ExponentInterval::empty()),
        2 => surd(s.clone()).prop_map(|lo| ExponentInterval::ray(lo).unwrap()),
        5 => (surd(s.clone()), surd(s), any::<bool>()).prop_map(|(lo, hi, closed)| {
            if closed {
                ExponentInterval::open_closed(lo, hi).unwrap()
            } else {
                ExponentInterval::open(lo, hi).unwrap()
            }
        }),
    ]
}

fn interval_triple() -> impl Strategy<Value = (ExponentInterval, ExponentInterval, ExponentInterval)>
{
    radicand().prop_flat_map(|s| (interval(s.clone()), interval(s.clone()), interval(s)))
}

proptest! {
    /// The exact sign agrees with the floating-point sign whenever the
    /// float value is clear of round-off.
    #[test]
    fn exact_sign_matches_float_sign((x, _, _) in surd_triple()) {
        let f = x.to_f64();
        prop_assume!(f.abs() > 1e-9);
        prop_assert_eq!(qs_sign(&x) as f64, f.signum());
    }

    /// Field laws hold exactly: associativity and distributivity.
    #[test]
    fn field_laws((x, y, z) in surd_triple()) {
        let assoc_l = x.try_add(&y).unwrap().try_add(&z).unwrap();
        let assoc_r = x.try_add(&y.try_add(&z).unwrap()).unwrap();
        prop_assert!(assoc_l.eq_val(&assoc_r).unwrap());

        let dist_l = x.try_mul(&y.try_add(&z).unwrap()).unwrap();
        let dist_r = x.try_mul(&y).unwrap().try_add(&x.try_mul(&z).unwrap()).unwrap();
        prop_assert!(dist_l.eq_val(&dist_r).unwrap());
    }

    /// Conjugate division is an exact inverse: (x / y) * y == x.
    #[test]
    fn division_roundtrip((x, y, _) in surd_triple()) {
        prop_assume!(!y.is_zero_val());
        let back = x.try_div(&y).unwrap().try_mul(&y).unwrap();
        prop_assert!(back.eq_val(&x).unwrap());
    }

    /// Rendering an exact scalar and parsing it back loses nothing.
    #[test]
    fn display_parse_roundtrip((x, _, _) in surd_triple()) {
        let text = x.to_string();
        let parsed: QuadScalar = text.parse().unwrap();
        prop_assert!(parsed.is_exact(), "{text} parsed inexact");
        prop_assert!(parsed.eq_val(&x).unwrap(), "{text} round-tripped wrong");
    }

    /// Interval intersection is commutative, idempotent, and has the full
    /// domain as identity.
    #[test]
    fn interval_lattice_laws((a, b, _) in interval_triple()) {
        let ab = a.intersect(&b).unwrap();
        prop_assert_eq!(ab.clone(), b.intersect(&a).unwrap());
        prop_assert_eq!(a.intersect(&a).unwrap(), a.clone());
        prop_assert_eq!(a.intersect(&ExponentInterval::full().unwrap()).unwrap(), a.clone());
        // The intersection is below both factors in the meet order.
        prop_assert_eq!(ab.intersect(&a).unwrap(), ab.clone());
        prop_assert_eq!(ab.intersect(&b).unwrap(), ab);
    }

    /// Membership respects intersection: p is in a ∩ b iff it is in both.
    #[test]
    fn intersection_membership((a, b, c) in interval_triple()) {
        let Some((p, _)) = c.lower().map(|(p, closed)| (p.clone(), closed)) else {
            return Ok(());
        };
        let both = a.contains(&p).unwrap() && b.contains(&p).unwrap();
        prop_assert_eq!(a.intersect(&b).unwrap().contains(&p).unwrap(), both);
    }

    /// The closed-form nonvanishing interval agrees with the first
    /// puncture-free component of the window computation, and its lower
    /// endpoint is the pinching bound, for arbitrary rational delta.
    #[test]
    fn dual_path_identity(
        n in 3usize..=9,
        mu_offset in 0usize..=6,
        (num, den) in (1i64..=11, 2i64..=12),
    ) {
        prop_assume!(num < den);
        let mu = 2 + mu_offset % (n - 2);
        let delta = QuadScalar::rational(big_ratio(-num, den));
        let spectrum = g_mu_n_delta_spectrum(n, mu, &delta).unwrap();
        let window = torsion_nonvanishing_interval(&spectrum, mu).unwrap();
        let closed_form = theorem_b_interval(n, mu, &delta).unwrap();
        prop_assert_eq!(&window.components().unwrap()[0], &closed_form);
        let (lo, _) = closed_form.lower().unwrap();
        prop_assert!(lo.eq_val(&q_bound(n, &delta, mu - 1).unwrap()).unwrap());
    }

    /// The extremal-weight contraction criterion agrees with brute-force
    /// enumeration of all exterior weight sums.
    #[test]
    fn contraction_matches_subset_enumeration(
        raw in prop::collection::vec((1i64..=9, 1i64..=4), 2..=6),
        degree_seed in 1usize..=6,
        (p_num, p_den) in (5i64..=40, 2i64..=8),
    ) {
        prop_assume!(p_num > p_den); // p > 1
        let weights: Vec<QuadScalar> = raw
            .iter()
            .map(|&(n, d)| QuadScalar::from_ratio(n, d).unwrap())
            .collect();
        let spectrum = DerivationSpectrum::new(weights, true).unwrap();
        let k = 1 + degree_seed % spectrum.dim();
        let p = QuadScalar::from_ratio(p_num, p_den).unwrap();
        let class = is_contracting(&spectrum, k, &p).unwrap();

        let threshold = spectrum.trace().try_div(&p).unwrap();
        let sums = exterior_spectrum(&spectrum, k).unwrap().sums;
        let all_above = sums
            .iter()
            .all(|s| s.try_sub(&threshold).unwrap().sign() > 0);
        let all_below = sums
            .iter()
            .all(|s| s.try_sub(&threshold).unwrap().sign() < 0);
        let expected = if all_above {
            Contraction::Contracting
        } else if all_below {
            Contraction::Dilating
        } else {
            Contraction::Neither
        };
        prop_assert_eq!(class, expected);
    }
}

proptest! {
    // The integrator cases are slower; a handful of random fields suffices.
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// For the constant curvature field R = delta*I started on the model
    /// solution U(0) = sqrt(-delta)*I, the trajectory is stationary and the
    /// decay functional n_{k,p}(t) = (p*k - m) * sqrt(-delta) * t exactly.
    #[test]
    fn constant_curvature_is_stationary(
        delta in -1.0f64..=-0.1,
        m in 2usize..=4,
        k_seed in 1usize..=4,
        p in 1.1f64..=3.0,
    ) {
        let k = 1 + k_seed % m;
        let root = (-delta).sqrt();
        let field =
            CurvatureField::constant(nalgebra::DMatrix::identity(m, m) * delta, delta).unwrap();
        let u0 = nalgebra::DMatrix::identity(m, m) * root;
        let traj = riccati_integrate(&field, u0, 2.0, 1e-2).unwrap();

        let logs = traj.singular_logs();
        let steps = logs.len() - 1;
        for (i, row) in logs.iter().enumerate() {
            let t = 2.0 * i as f64 / steps as f64;
            for &log_sigma in row {
                prop_assert!(
                    (log_sigma - root * t).abs() < 1e-8,
                    "log sigma {log_sigma} at t = {t}, expected {}",
                    root * t
                );
            }
        }
        let n_vals = traj.n_k_p(k, p);
        let slope = (p * k as f64 - m as f64) * root;
        for (i, &v) in n_vals.iter().enumerate() {
            let t = 2.0 * i as f64 / steps as f64;
            prop_assert!(
                (v - slope * t).abs() < 1e-7,
                "n_k_p = {v} at t = {t}, expected {}",
                slope * t
            );
        }
    }
}
