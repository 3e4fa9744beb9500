//! Numerical certification of the Riccati comparison argument.
//!
//! Along a unit-speed gradient line of a Busemann function, the second
//! fundamental form U of the horospheres satisfies U′ + U² + R = 0, where
//! R(t) is the curvature operator in a parallel orthonormal frame, and the
//! transfer matrix of the flow satisfies J′ = JU with J(0) = I. Curvature
//! pinching −1 ≤ K ≤ δ forces the spectrum of U into the invariant region
//! [√−δ, 1]; integrating, the quantity
//! n_{k,p}(t) = p·log‖Λ^k J(t)‖ − log det J(t) is bounded by −ηt with
//! η = (n−k−1)√−δ − k(p−1). The lab integrates these ODEs with a classical
//! 4th-order one-step scheme and checks both facts on the full time grid.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::check::CheckReport;

/// Symmetry / spectrum validation tolerance for curvature samples.
pub const FIELD_TOL: f64 = 1e-12;
/// Tolerance for the invariant-region and contraction checks.
pub const CHECK_TOL: f64 = 1e-6;
/// ‖U‖ beyond which the integration is declared blown up.
pub const BLOWUP_NORM: f64 = 1e6;
/// Breakpoint spacing of random piecewise-constant curvature fields.
pub const SEGMENT_DT: f64 = 0.5;

/// Errors from the Riccati laboratory.
#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum RiccatiError {
    #[error("matrix must be symmetric within {FIELD_TOL:e}, worst asymmetry {0:e}")]
    NotSymmetric(f64),
    #[error("curvature spectrum [{lo}, {hi}] escapes [-1, {delta}]")]
    SpectrumOutOfRange { lo: f64, hi: f64, delta: f64 },
    #[error("numerical blow-up at t = {t} (conjugate-point-like behavior from bad U0)")]
    BlowUp { t: f64 },
    #[error("invalid integration parameters: {0}")]
    BadParameters(String),
    #[error("dimension mismatch: field is {field}x{field}, U0 is {u0}x{u0}")]
    DimensionMismatch { field: usize, u0: usize },
}

#[derive(Clone, Debug)]
enum FieldKind {
    Constant(DMatrix<f64>),
    /// Piecewise constant in t, segment i covering [i·dt, (i+1)·dt).
    Piecewise { segments: Vec<DMatrix<f64>>, dt: f64 },
}

/// A curvature operator sampler t ↦ R(t): symmetric m×m with spectrum in
/// [−1, δ] for every t.
#[derive(Clone, Debug)]
pub struct CurvatureField {
    m: usize,
    delta: f64,
    kind: FieldKind,
}

fn check_symmetric(mat: &DMatrix<f64>) -> Result<(), RiccatiError> {
    let worst = (mat - mat.transpose()).abs().max();
    if worst > FIELD_TOL {
        return Err(RiccatiError::NotSymmetric(worst));
    }
    Ok(())
}

fn check_spectrum(mat: &DMatrix<f64>, delta: f64) -> Result<(), RiccatiError> {
    let eigs = mat.clone().symmetric_eigen().eigenvalues;
    let lo = eigs.min();
    let hi = eigs.max();
    if lo < -1.0 - FIELD_TOL || hi > delta + FIELD_TOL {
        return Err(RiccatiError::SpectrumOutOfRange { lo, hi, delta });
    }
    Ok(())
}

impl CurvatureField {
    /// A constant field R(t) ≡ R; validates symmetry and spectrum.
    pub fn constant(r: DMatrix<f64>, delta: f64) -> Result<Self, RiccatiError> {
        check_symmetric(&r)?;
        check_spectrum(&r, delta)?;
        Ok(CurvatureField {
            m: r.nrows(),
            delta,
            kind: FieldKind::Constant(r),
        })
    }

    /// A seeded random piecewise-constant field on [0, t_end] with
    /// breakpoints every 0.5: each segment is Q·diag(μ_i)·Qᵀ with Q a random
    /// orthogonal matrix and μ_i uniform in [−1, δ].
    pub fn random_piecewise(
        m: usize,
        delta: f64,
        t_end: f64,
        seed: u64,
    ) -> Result<Self, RiccatiError> {
        if !(-1.0..0.0).contains(&delta) {
            return Err(RiccatiError::BadParameters(format!(
                "delta must be in [-1, 0), got {delta}"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let count = (t_end / SEGMENT_DT).ceil() as usize + 1;
        let mut segments = Vec::with_capacity(count);
        for _ in 0..count {
            let gauss = DMatrix::from_fn(m, m, |_, _| {
                // Box–Muller from two uniforms.
                let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
                let u2: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
                (-2.0 * u1.ln()).sqrt() * u2.cos()
            });
            let q = gauss.qr().q();
            let eigs =
                DMatrix::from_fn(m, m, |i, j| if i == j { rng.gen_range(-1.0..delta) } else { 0.0 });
            let r = &q * eigs * q.transpose();
            // Exact symmetrization kills QR round-off.
            let r = (&r + r.transpose()) * 0.5;
            check_symmetric(&r)?;
            check_spectrum(&r, delta)?;
            segments.push(r);
        }
        Ok(CurvatureField {
            m,
            delta,
            kind: FieldKind::Piecewise {
                segments,
                dt: SEGMENT_DT,
            },
        })
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// The curvature operator at time t.
    pub fn sample(&self, t: f64) -> &DMatrix<f64> {
        match &self.kind {
            FieldKind::Constant(r) => r,
            FieldKind::Piecewise { segments, dt } => {
                // Nudge avoids float-boundary straddling at exact breakpoints.
                let idx = ((t / dt + 1e-9).floor().max(0.0)) as usize;
                &segments[idx.min(segments.len() - 1)]
            }
        }
    }
}

/// An integrated trajectory: U(t), J(t) on a uniform grid, with lazily
/// computed singular-value logarithms of J for the n_{k,p} quantities.
#[derive(Clone, Debug)]
pub struct RiccatiTrajectory {
    pub times: Vec<f64>,
    pub u: Vec<DMatrix<f64>>,
    pub j: Vec<DMatrix<f64>>,
    /// Per grid point: log singular values of J, sorted descending.
    singular_logs: std::cell::OnceCell<Vec<Vec<f64>>>,
}

impl RiccatiTrajectory {
    /// log singular values of J(t_i), descending, computed once.
    pub fn singular_logs(&self) -> &Vec<Vec<f64>> {
        self.singular_logs.get_or_init(|| {
            self.j
                .iter()
                .map(|j| {
                    let mut sv: Vec<f64> =
                        j.clone().svd(false, false).singular_values.iter().copied().collect();
                    sv.sort_by(|a, b| b.partial_cmp(a).expect("finite singular values"));
                    sv.into_iter().map(|s| s.ln()).collect()
                })
                .collect()
        })
    }

    /// n_{k,p}(t_i) = p·log‖Λ^k J‖ − log det J, with ‖Λ^k J‖ the product of
    /// the k largest singular values.
    pub fn n_k_p(&self, k: usize, p: f64) -> Vec<f64> {
        self.singular_logs()
            .iter()
            .map(|logs| {
                let top: f64 = logs[..k].iter().sum();
                let all: f64 = logs.iter().sum();
                p * top - all
            })
            .collect()
    }

    /// log det J(t_i) via the singular values (det J stays positive).
    pub fn log_det_j(&self) -> Vec<f64> {
        self.singular_logs()
            .iter()
            .map(|logs| logs.iter().sum())
            .collect()
    }
}

/// Classical 4th-order one-step integration of U′ = −U² − R(t), J′ = JU,
/// with U re-symmetrized after every step.
pub fn riccati_integrate(
    field: &CurvatureField,
    u0: DMatrix<f64>,
    t_end: f64,
    h: f64,
) -> Result<RiccatiTrajectory, RiccatiError> {
    if !(h > 0.0 && t_end > 0.0) {
        return Err(RiccatiError::BadParameters(format!(
            "need h > 0 and t_end > 0, got h={h}, t_end={t_end}"
        )));
    }
    check_symmetric(&u0)?;
    if u0.nrows() != field.m {
        return Err(RiccatiError::DimensionMismatch {
            field: field.m,
            u0: u0.nrows(),
        });
    }
    let steps = (t_end / h).round() as usize;
    let m = field.m;
    let mut u = u0;
    let mut j = DMatrix::identity(m, m);
    let mut times = Vec::with_capacity(steps + 1);
    let mut us = Vec::with_capacity(steps + 1);
    let mut js = Vec::with_capacity(steps + 1);
    times.push(0.0);
    us.push(u.clone());
    js.push(j.clone());
    let f_u = |u: &DMatrix<f64>, r: &DMatrix<f64>| -(u * u) - r;
    for step in 0..steps {
        let t = step as f64 * h;
        let r0 = field.sample(t);
        let rm = field.sample(t + 0.5 * h);
        let r1 = field.sample(t + h);

        let k1u = f_u(&u, r0);
        let k1j = &j * &u;
        let u2 = &u + &k1u * (0.5 * h);
        let j2 = &j + &k1j * (0.5 * h);
        let k2u = f_u(&u2, rm);
        let k2j = &j2 * &u2;
        let u3 = &u + &k2u * (0.5 * h);
        let j3 = &j + &k2j * (0.5 * h);
        let k3u = f_u(&u3, rm);
        let k3j = &j3 * &u3;
        let u4 = &u + &k3u * h;
        let j4 = &j + &k3j * h;
        let k4u = f_u(&u4, r1);
        let k4j = &j4 * &u4;

        u += (k1u + k2u * 2.0 + k3u * 2.0 + k4u) * (h / 6.0);
        j += (k1j + k2j * 2.0 + k3j * 2.0 + k4j) * (h / 6.0);
        // Re-symmetrize: U stays exactly symmetric along the flow, the
        // scheme only breaks it by round-off.
        u = (&u + u.transpose()) * 0.5;
        if u.norm() > BLOWUP_NORM {
            return Err(RiccatiError::BlowUp { t: t + h });
        }
        times.push((step + 1) as f64 * h);
        us.push(u.clone());
        js.push(j.clone());
    }
    Ok(RiccatiTrajectory {
        times,
        u: us,
        j: js,
        singular_logs: std::cell::OnceCell::new(),
    })
}

/// Check that the spectrum of U(t) stays in [√−δ − tol, 1 + tol] on the
/// whole grid (the invariant region forced by −1 ≤ K ≤ δ).
pub fn invariant_region_check(traj: &RiccatiTrajectory, delta: f64) -> CheckReport {
    let root = (-delta).sqrt();
    let mut worst = f64::NEG_INFINITY;
    let mut worst_t = 0.0;
    for (t, u) in traj.times.iter().zip(&traj.u) {
        let eigs = u.clone().symmetric_eigen().eigenvalues;
        let excursion = (root - eigs.min()).max(eigs.max() - 1.0);
        if excursion > worst {
            worst = excursion;
            worst_t = *t;
        }
    }
    CheckReport {
        name: "invariant_region".to_string(),
        pass: worst <= CHECK_TOL,
        worst,
        detail: format!(
            "worst excursion beyond [sqrt(-delta), 1] is {worst:.3e} at t = {worst_t}"
        ),
    }
}

/// Check the integrated contraction inequality n_{k,p}(t) ≤ −ηt + tol with
/// η = (n−k−1)√−δ − k(p−1), n = m + 1.
pub fn contraction_inequality_check(
    traj: &RiccatiTrajectory,
    n: usize,
    delta: f64,
    k: usize,
    p: f64,
) -> CheckReport {
    let root = (-delta).sqrt();
    let eta = (n as f64 - k as f64 - 1.0) * root - k as f64 * (p - 1.0);
    let mut worst = f64::NEG_INFINITY;
    let mut worst_t = 0.0;
    for (t, nkp) in traj.times.iter().zip(traj.n_k_p(k, p)) {
        let violation = nkp + eta * t;
        if violation > worst {
            worst = violation;
            worst_t = *t;
        }
    }
    CheckReport {
        name: format!("contraction_k{k}_p{p}"),
        pass: worst <= CHECK_TOL,
        worst,
        detail: format!(
            "max of n_k_p(t) + eta*t is {worst:.3e} at t = {worst_t} (eta = {eta:.6})"
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eye(m: usize) -> DMatrix<f64> {
        DMatrix::identity(m, m)
    }

    #[test]
    fn coth_decay_to_one() {
        // R = −I: scalar Riccati u′ = −u² + 1, u(0) = 2 decays to 1.
        let field = CurvatureField::constant(-eye(3), -1.0).unwrap();
        let traj = riccati_integrate(&field, eye(3) * 2.0, 20.0, 1e-3).unwrap();
        let err = (traj.u.last().unwrap() - eye(3)).abs().max();
        assert!(err < 1e-6, "U(20) should be I within 1e-6, err = {err:e}");
    }

    #[test]
    fn stationary_diagonal_pair() {
        // U² = −R exactly: the flow is stationary.
        let r = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![-0.25, -0.25, -1.0]));
        let u0 = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![0.5, 0.5, 1.0]));
        let field = CurvatureField::constant(r, -0.25).unwrap();
        let traj = riccati_integrate(&field, u0.clone(), 20.0, 1e-3).unwrap();
        let drift = (traj.u.last().unwrap() - &u0).abs().max();
        assert!(drift < 1e-9, "stationary solution drifted by {drift:e}");
    }

    #[test]
    fn hyperbolic_transfer_growth() {
        // R = −I, U0 = I: U ≡ I, J = e^t·I, n_k_p(t) = (kp − m)·t.
        let field = CurvatureField::constant(-eye(2), -1.0).unwrap();
        let traj = riccati_integrate(&field, eye(2), 10.0, 1e-3).unwrap();
        for (k, p) in [(1usize, 1.5), (2, 1.25)] {
            let nkp = traj.n_k_p(k, p);
            for (t, v) in traj.times.iter().zip(nkp) {
                let expected = (k as f64 * p - 2.0) * t;
                assert!(
                    (v - expected).abs() < 1e-6,
                    "n_{k}_{p}({t}) = {v}, expected {expected}"
                );
            }
        }
    }

    #[test]
    fn liouville_identity() {
        // det J(t) = exp(∫ tr U) — independent cross-check of J.
        let field = CurvatureField::random_piecewise(3, -0.25, 5.0, 7).unwrap();
        let traj = riccati_integrate(&field, eye(3), 5.0, 1e-3).unwrap();
        let h = 1e-3;
        // Trapezoidal accumulation of tr U.
        let mut integral = 0.0;
        let mut max_err: f64 = 0.0;
        for i in 1..traj.times.len() {
            integral += 0.5 * h * (traj.u[i - 1].trace() + traj.u[i].trace());
            let det = traj.j[i].determinant();
            max_err = max_err.max((det.ln() - integral).abs());
        }
        assert!(max_err < 1e-6, "Liouville identity violated by {max_err:e}");
    }

    #[test]
    fn richardson_order() {
        // Halving h changes U(t_end) by ~h⁴ (ratio within [12, 20]).
        let r = DMatrix::from_fn(3, 3, |i, j| if i == j { -0.5 - 0.1 * i as f64 } else { -0.05 });
        let r = (&r + r.transpose()) * 0.5;
        let field = CurvatureField::constant(r, -0.25).unwrap();
        // Step sizes large enough that truncation error dominates round-off.
        let fine = riccati_integrate(&field, eye(3), 2.0, 2.5e-3).unwrap();
        let mid = riccati_integrate(&field, eye(3), 2.0, 1e-2).unwrap();
        let coarse = riccati_integrate(&field, eye(3), 2.0, 2e-2).unwrap();
        let e_coarse = (coarse.u.last().unwrap() - fine.u.last().unwrap()).abs().max();
        let e_mid = (mid.u.last().unwrap() - fine.u.last().unwrap()).abs().max();
        let ratio = e_coarse / e_mid;
        // Against a 4x-finer reference the ideal 4th-order ratio is
        // (4096 − 1)/(256 − 1) ≈ 16.06; accept the stated band.
        assert!(
            (12.0..=20.0).contains(&ratio),
            "expected 4th-order ratio, got {ratio}"
        );
    }

    #[test]
    fn invariant_region_boundary_start() {
        let delta = -0.25;
        let field = CurvatureField::random_piecewise(3, delta, 10.0, 42).unwrap();
        let u0 = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![0.5, 1.0, 1.0]));
        let traj = riccati_integrate(&field, u0, 10.0, 1e-3).unwrap();
        let report = invariant_region_check(&traj, delta);
        assert!(report.pass, "{}", report.detail);
    }

    #[test]
    fn contraction_equality_constant_curvature() {
        // δ = −1, R = −I: n_k_p(t) = (kp − m)t = −ηt exactly — sharpness.
        let m = 3;
        let field = CurvatureField::constant(-eye(m), -1.0).unwrap();
        let traj = riccati_integrate(&field, eye(m), 10.0, 1e-3).unwrap();
        let report = contraction_inequality_check(&traj, m + 1, -1.0, 1, 2.0);
        assert!(report.pass, "{}", report.detail);
        assert!(
            report.worst.abs() < 1e-6,
            "equality case should be tight, worst = {:e}",
            report.worst
        );
    }

    #[test]
    fn blow_up_detected() {
        // U0 with a large negative eigenvalue drives u′ = −u² − R to −∞.
        let field = CurvatureField::constant(-eye(2), -1.0).unwrap();
        let u0 = -eye(2) * 3.0;
        match riccati_integrate(&field, u0, 20.0, 1e-3) {
            Err(RiccatiError::BlowUp { t }) => assert!(t < 5.0, "blow-up too late: {t}"),
            other => panic!("expected blow-up, got {other:?}"),
        }
    }

    #[test]
    fn field_validation() {
        let asym = DMatrix::from_row_slice(2, 2, &[-1.0, 0.5, -0.5, -1.0]);
        assert!(matches!(
            CurvatureField::constant(asym, -0.25),
            Err(RiccatiError::NotSymmetric(_))
        ));
        let positive = eye(2);
        assert!(matches!(
            CurvatureField::constant(positive, -0.25),
            Err(RiccatiError::SpectrumOutOfRange { .. })
        ));
    }
}
