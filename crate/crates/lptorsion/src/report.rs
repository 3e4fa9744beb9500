//! Per-degree torsion reports: nonvanishing windows for Heintze groups,
//! the real-hyperbolic torsion points, the quasiisometry invariant T, and
//! the obstruction checker pitting nonvanishing theorems against pinching
//! vanishing theorems.
//!
//! The nonvanishing criterion: for `G = R^(n−1) ⋊_α R` with abelian `R^(n−1)`
//! and degree k, torsion T^{k,p}(G) ≠ 0 whenever
//! `w_{n−1}/W_{k−1} < p < w_{n−1}/w_{k−1}` and p is not critical in degree
//! k−1 (w/W = sums of smallest/largest weights). Critical exponents inside
//! the window are genuine gaps of the theorem and are reported as punctures,
//! never folded into either the zero or the nonzero set.

use serde::Serialize;

use crate::numeric::{complement, ExponentInterval, NumericError, QuadScalar};
use crate::pinching::{q_bound, sqrt_minus_delta, vanishing_intervals, PinchedClass, PinchingError};
use crate::spectral::{critical_exponents, DerivationSpectrum, SpectralError};

/// Errors from report assembly.
#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum TorsionError {
    #[error("criterion requires abelian H")]
    NonabelianGroup,
    #[error("degree {degree} out of range {min}..={max}")]
    DegreeOutOfRange {
        degree: usize,
        min: usize,
        max: usize,
    },
    #[error("parameter out of range: {0}")]
    ParameterRange(String),
    #[error("not determined by implemented theorems: {0}")]
    NotDetermined(String),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Pinching(#[from] PinchingError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

/// Reference spaces carried as stored constants only.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RefSpace {
    /// The complex hyperbolic plane; T = 4.
    ComplexHyperbolicPlane,
}

/// The groups and spaces the calculator can reason about.
///
/// These enums are built a handful of times per run; the size imbalance
/// between variants is irrelevant, so no boxing.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
#[allow(clippy::large_enum_variant)]
pub enum GroupModel {
    Heintze { spectrum: DerivationSpectrum },
    RealHyperbolic { n: usize },
    Reference { space: RefSpace },
}

/// The spectrum of G_{μ,n,δ}: weight √−δ with multiplicity n−μ and weight 1
/// with multiplicity μ−1, abelian nilpotent part.
pub fn g_mu_n_delta_spectrum(
    n: usize,
    mu: usize,
    delta: &QuadScalar,
) -> Result<DerivationSpectrum, TorsionError> {
    check_mu_n_delta(n, mu, delta)?;
    let root = sqrt_minus_delta(delta)?;
    let one = if root.is_exact() {
        QuadScalar::one()
    } else {
        QuadScalar::float(1.0)
    };
    let mut weights = vec![root; n - mu];
    weights.extend(std::iter::repeat_n(one, mu - 1));
    Ok(DerivationSpectrum::new(weights, true)?)
}

fn check_mu_n_delta(n: usize, mu: usize, delta: &QuadScalar) -> Result<(), TorsionError> {
    if mu < 2 || mu > n - 1 {
        return Err(TorsionError::ParameterRange(format!(
            "mu must satisfy 2 <= mu <= n-1, got mu={mu}, n={n}"
        )));
    }
    let minus_one = if delta.is_exact() {
        QuadScalar::from_int(-1)
    } else {
        QuadScalar::float(-1.0)
    };
    if delta.sign() >= 0 || delta.try_cmp(&minus_one)? != std::cmp::Ordering::Greater {
        return Err(TorsionError::ParameterRange(format!(
            "delta must satisfy -1 < delta < 0, got {delta}"
        )));
    }
    Ok(())
}

/// An open nonvanishing interval with isolated critical-exponent punctures.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NonvanishingWindow {
    pub interval: ExponentInterval,
    pub punctures: Vec<QuadScalar>,
}

impl NonvanishingWindow {
    /// The window split into maximal puncture-free open components, in order.
    pub fn components(&self) -> Result<Vec<ExponentInterval>, NumericError> {
        let Some((lower, lower_closed)) = self.interval.lower() else {
            return Ok(Vec::new());
        };
        let mut out = Vec::new();
        let mut cursor = (lower.clone(), lower_closed);
        for punc in &self.punctures {
            let piece = ExponentInterval::new(
                cursor.0.clone(),
                cursor.1,
                Some((punc.clone(), false)),
            )?;
            if !piece.is_empty() {
                out.push(piece);
            }
            cursor = (punc.clone(), false);
        }
        let last = ExponentInterval::new(
            cursor.0,
            cursor.1,
            self.interval.upper().map(|(u, c)| (u.clone(), c)),
        )?;
        if !last.is_empty() {
            out.push(last);
        }
        Ok(out)
    }
}

/// The nonvanishing window for T^{k,p}: the open interval
/// (tr α / W_{k−1}, tr α / w_{k−1}) clipped to (1,∞), with the critical
/// exponents of degree k−1 excluded as punctures.
pub fn torsion_nonvanishing_interval(
    spec: &DerivationSpectrum,
    k: usize,
) -> Result<NonvanishingWindow, TorsionError> {
    if !spec.abelian() {
        return Err(TorsionError::NonabelianGroup);
    }
    if k < 2 || k > spec.dim() {
        return Err(TorsionError::DegreeOutOfRange {
            degree: k,
            min: 2,
            max: spec.dim(),
        });
    }
    let w = spec.w_small(k - 1)?;
    let big_w = spec.w_large(k - 1)?;
    if w.eq_val(&big_w)? {
        return Ok(NonvanishingWindow {
            interval: ExponentInterval::empty(),
            punctures: Vec::new(),
        });
    }
    let interval = ExponentInterval::open(
        spec.trace().try_div(&big_w)?,
        spec.trace().try_div(&w)?,
    )?;
    let mut punctures = Vec::new();
    for c in critical_exponents(spec, k - 1)? {
        // Only punctures strictly inside the window matter; the endpoints
        // are themselves critical values and already excluded.
        if interval.contains(&c)? {
            punctures.push(c);
        }
    }
    Ok(NonvanishingWindow {
        interval,
        punctures,
    })
}

/// The nonvanishing interval of T^{μ,p}(G_{μ,n,δ}):
/// ( q(n,δ,μ−1), 1 + (1+(n−1−μ)√−δ)/(μ−2+√−δ) ), computed from the closed
/// formula. Must agree with [`torsion_nonvanishing_interval`] applied to the
/// G_{μ,n,δ} spectrum (first puncture-free component) — the dual-path
/// identity exercised by the test suite.
pub fn theorem_b_interval(
    n: usize,
    mu: usize,
    delta: &QuadScalar,
) -> Result<ExponentInterval, TorsionError> {
    check_mu_n_delta(n, mu, delta)?;
    let lower = q_bound(n, delta, mu - 1)?;
    let root = sqrt_minus_delta(delta)?;
    let one = if root.is_exact() {
        QuadScalar::one()
    } else {
        QuadScalar::float(1.0)
    };
    let int = |v: i64| {
        if root.is_exact() {
            QuadScalar::from_int(v)
        } else {
            QuadScalar::float(v as f64)
        }
    };
    let numer = one.try_add(&int(n as i64 - 1 - mu as i64).try_mul(&root)?)?;
    let denom = int(mu as i64 - 2).try_add(&root)?;
    let upper = one.try_add(&numer.try_div(&denom)?)?;
    Ok(ExponentInterval::open(lower, upper)?)
}

/// Real hyperbolic space H^n: T^{k,p} ≠ 0 iff p = (n−1)/(k−1).
pub fn hyperbolic_torsion_points(n: usize, k: usize) -> Result<Vec<QuadScalar>, TorsionError> {
    if n < 3 || k < 2 || k > n - 1 {
        return Err(TorsionError::DegreeOutOfRange {
            degree: k,
            min: 2,
            max: n.saturating_sub(1),
        });
    }
    Ok(vec![QuadScalar::from_ratio(n as i64 - 1, k as i64 - 1)
        .expect("k >= 2")])
}

/// The quasiisometry invariant T = inf { p > 1 : T^{2,p} ≠ 0 }.
///
/// Covered cases: Heintze spectra of the two-valued μ = 2 shape (exactly two
/// distinct weights, the larger with multiplicity one), real hyperbolic
/// spaces, and stored reference constants.
pub fn t_invariant(g: &GroupModel) -> Result<QuadScalar, TorsionError> {
    match g {
        GroupModel::Reference {
            space: RefSpace::ComplexHyperbolicPlane,
        } => Ok(QuadScalar::from_int(4)),
        GroupModel::RealHyperbolic { n } => {
            if *n < 3 {
                return Err(TorsionError::ParameterRange(format!(
                    "real hyperbolic T needs n >= 3, got {n}"
                )));
            }
            Ok(QuadScalar::from_int(*n as i64 - 1))
        }
        GroupModel::Heintze { spectrum } => {
            if !spectrum.abelian() {
                return Err(TorsionError::NonabelianGroup);
            }
            let weights = spectrum.weights();
            let top = weights.last().expect("nonempty spectrum");
            let distinct_below_top = weights[..weights.len() - 1]
                .iter()
                .try_fold(true, |acc, w| Ok::<_, NumericError>(acc && !w.eq_val(top)?))?;
            let all_equal_below = match weights.len() {
                0 | 1 => true,
                _ => {
                    let first = &weights[0];
                    weights[1..weights.len() - 1]
                        .iter()
                        .try_fold(true, |acc, w| {
                            Ok::<_, NumericError>(acc && w.eq_val(first)?)
                        })?
                }
            };
            if weights.len() < 2 || !distinct_below_top || !all_equal_below {
                return Err(TorsionError::NotDetermined(
                    "degree-2 nonvanishing is only proved for two-valued mu=2 spectra"
                        .to_string(),
                ));
            }
            // inf of the degree-2 window (tr α / λ_max, tr α / λ_min).
            Ok(spectrum.trace().try_div(top)?)
        }
    }
}

/// A degree + exponent set witnessing that no quasiisometry can exist.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ObstructionWitness {
    pub degree: usize,
    pub interval: ExponentInterval,
}

/// Outcome of scanning all degrees for a torsion-nonzero / torsion-zero clash.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ObstructionReport {
    pub obstructed: bool,
    pub witness: Option<ObstructionWitness>,
    pub scanned_degrees: Vec<usize>,
    pub approximate: bool,
    pub note: String,
}

/// Torsion-nonzero pieces of the group in degree k, if any theorem covers it.
fn nonzero_pieces(
    g: &GroupModel,
    k: usize,
) -> Result<Option<Vec<ExponentInterval>>, TorsionError> {
    match g {
        GroupModel::Reference { .. } => Ok(None),
        GroupModel::RealHyperbolic { n } => {
            if *n >= 3 && k >= 2 && k < *n {
                let p = hyperbolic_torsion_points(*n, k)?.remove(0);
                Ok(Some(vec![ExponentInterval::point(p)?]))
            } else {
                Ok(None)
            }
        }
        GroupModel::Heintze { spectrum } => {
            if spectrum.abelian() && k >= 2 && k <= spectrum.dim() {
                let window = torsion_nonvanishing_interval(spectrum, k)?;
                Ok(Some(window.components()?))
            } else {
                Ok(None)
            }
        }
    }
}

/// Scan degrees 2..n−1 for an exponent region where the group's torsion is
/// provably nonzero while every manifold of the pinched class has provably
/// zero torsion. Such a region obstructs any quasiisometry (torsion
/// nonvanishing ranges are quasiisometry invariants); absence of a witness
/// proves nothing and is reported as such.
pub fn qi_obstruction(
    g: &GroupModel,
    cls: &PinchedClass,
) -> Result<ObstructionReport, TorsionError> {
    let approximate = !cls.delta().is_exact()
        || match g {
            GroupModel::Heintze { spectrum } => {
                spectrum.weights().iter().any(|w| !w.is_exact())
            }
            _ => false,
        };
    let g_max = match g {
        GroupModel::Heintze { spectrum } => spectrum.dim(),
        GroupModel::RealHyperbolic { n } => n.saturating_sub(1),
        GroupModel::Reference { .. } => 0,
    };
    let mut scanned = Vec::new();
    for k in 2..=g_max.min(cls.n()) {
        let Some(pieces) = nonzero_pieces(g, k)? else {
            continue;
        };
        scanned.push(k);
        let (torsion_zero, _) = vanishing_intervals(cls, k)?;
        for piece in pieces {
            let (piece, torsion_zero) = if approximate {
                (piece.approx(), torsion_zero.approx())
            } else {
                (piece, torsion_zero.clone())
            };
            let witness = piece.intersect(&torsion_zero)?;
            if !witness.is_empty() {
                return Ok(ObstructionReport {
                    obstructed: true,
                    witness: Some(ObstructionWitness {
                        degree: k,
                        interval: witness,
                    }),
                    scanned_degrees: scanned,
                    approximate,
                    note: "torsion provably nonzero for the group but zero for every \
                           manifold in the pinched class: no quasiisometry exists"
                        .to_string(),
                });
            }
        }
    }
    Ok(ObstructionReport {
        obstructed: false,
        witness: None,
        scanned_degrees: scanned,
        approximate,
        note: "no obstruction found by implemented theorems (this does not \
               imply a quasiisometry exists)"
            .to_string(),
    })
}

/// The torsion-nonzero part of a degree report.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
#[allow(clippy::large_enum_variant)]
pub enum NonzeroSet {
    Window(NonvanishingWindow),
    Points(Vec<QuadScalar>),
    NotCovered,
}

/// Everything the implemented theorems say about one degree: vanishing
/// ranges, nonvanishing ranges, critical exponents, and the exact complement
/// of the covered regions.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeReport {
    pub degree: usize,
    pub torsion_zero: Vec<ExponentInterval>,
    pub full_zero: ExponentInterval,
    pub torsion_nonzero: NonzeroSet,
    pub critical: Vec<QuadScalar>,
    pub unknown: Vec<ExponentInterval>,
}

/// The model pinching attached to a Heintze spectrum: normalize so the top
/// weight is 1; then the invariant metric has −1 ≤ K ≤ −(λ_min/λ_max)².
/// Returns None when that δ is not an exact rational (no exact class exists
/// in the implemented field arithmetic) and the weights are exact.
fn model_pinching(spec: &DerivationSpectrum) -> Result<Option<PinchedClass>, TorsionError> {
    let lo = &spec.weights()[0];
    let hi = spec.weights().last().expect("nonempty");
    let ratio = lo.try_div(hi)?;
    let delta = ratio.try_mul(&ratio)?.neg();
    match PinchedClass::new(spec.n(), delta) {
        Ok(cls) => Ok(Some(cls)),
        Err(PinchingError::IrrationalDelta(_)) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

/// Assemble the per-degree report for a group model.
pub fn degree_report(g: &GroupModel, k: usize) -> Result<DegreeReport, TorsionError> {
    match g {
        GroupModel::Reference { .. } => Err(TorsionError::NotDetermined(
            "reference spaces carry stored constants only; use the T invariant".to_string(),
        )),
        GroupModel::RealHyperbolic { n } => {
            let n = *n;
            if n < 3 || k < 2 || k > n - 1 {
                return Err(TorsionError::DegreeOutOfRange {
                    degree: k,
                    min: 2,
                    max: n.saturating_sub(1),
                });
            }
            let point = hyperbolic_torsion_points(n, k)?.remove(0);
            // The real hyperbolic statement is an equivalence: torsion is
            // zero exactly off the single point.
            let torsion_zero = complement(&[ExponentInterval::point(point.clone())?])?;
            let delta = QuadScalar::from_int(-1);
            let cls = PinchedClass::new(n, delta)?;
            let (_, full_zero) = vanishing_intervals(&cls, k)?;
            Ok(DegreeReport {
                degree: k,
                torsion_zero,
                full_zero,
                torsion_nonzero: NonzeroSet::Points(vec![point.clone()]),
                critical: vec![point],
                unknown: Vec::new(),
            })
        }
        GroupModel::Heintze { spectrum } => {
            if k < 2 || k > spectrum.n() {
                return Err(TorsionError::DegreeOutOfRange {
                    degree: k,
                    min: 2,
                    max: spectrum.n(),
                });
            }
            let (torsion_zero, full_zero) = match model_pinching(spectrum)? {
                Some(cls) => {
                    let (tz, fz) = vanishing_intervals(&cls, k)?;
                    (tz, fz)
                }
                None => {
                    // Fallback: pure spectral contraction bounds. Torsion
                    // vanishes below tr α / W_{k−1}, full cohomology below
                    // tr α / W_k (no closed endpoint without the pinching
                    // limit-case argument).
                    let one = QuadScalar::one();
                    let tz = ExponentInterval::open(
                        one.clone(),
                        spectrum.trace().try_div(&spectrum.w_large(k - 1)?)?,
                    )?;
                    let fz = if k <= spectrum.dim() {
                        ExponentInterval::open(
                            one,
                            spectrum.trace().try_div(&spectrum.w_large(k)?)?,
                        )?
                    } else {
                        ExponentInterval::empty()
                    };
                    (tz, fz)
                }
            };
            let torsion_nonzero = match nonzero_pieces(g, k)? {
                Some(_) => NonzeroSet::Window(torsion_nonvanishing_interval(spectrum, k)?),
                None => NonzeroSet::NotCovered,
            };
            let critical = if k <= spectrum.dim() {
                critical_exponents(spectrum, k)?
            } else {
                Vec::new()
            };
            let mut known = vec![torsion_zero.clone()];
            if let NonzeroSet::Window(window) = &torsion_nonzero {
                known.extend(window.components()?);
            }
            let unknown = complement(&known)?;
            Ok(DegreeReport {
                degree: k,
                torsion_zero: vec![torsion_zero],
                full_zero,
                torsion_nonzero,
                critical,
                unknown,
            })
        }
    }
}

/// The truncation trade-off from the robust-class machinery: given decay
/// rates μ (forward) and η (backward) and magnitudes m, n, the optimal
/// truncation time is s = (1/(μ+η))·log(ηm/(μn)) and the resulting bound is
/// m^{μ/(μ+η)}·n^{η/(μ+η)} (multiplicative constant omitted).
pub fn truncation_tradeoff(
    mu: f64,
    eta: f64,
    m: f64,
    n_mag: f64,
) -> Result<(f64, f64), TorsionError> {
    if !(mu > 0.0 && eta > 0.0) {
        return Err(TorsionError::ParameterRange(format!(
            "rates must be positive, got mu={mu}, eta={eta}"
        )));
    }
    if !(m > 0.0 && n_mag > 0.0) {
        return Err(TorsionError::ParameterRange(format!(
            "magnitudes must be positive, got m={m}, n={n_mag}"
        )));
    }
    let s = (eta * m / (mu * n_mag)).ln() / (mu + eta);
    let bound = m.powf(mu / (mu + eta)) * n_mag.powf(eta / (mu + eta));
    Ok((s, bound))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec_112() -> DerivationSpectrum {
        DerivationSpectrum::new(
            vec![
                QuadScalar::from_int(1),
                QuadScalar::from_int(1),
                QuadScalar::from_int(2),
            ],
            true,
        )
        .unwrap()
    }

    fn quarter() -> QuadScalar {
        QuadScalar::from_ratio(-1, 4).unwrap()
    }

    #[test]
    fn headline_window_degree_2() {
        let window = torsion_nonvanishing_interval(&spec_112(), 2).unwrap();
        assert_eq!(window.interval.to_string(), "(2, 4)");
        assert!(window.punctures.is_empty());
    }

    #[test]
    fn degree_3_window() {
        let window = torsion_nonvanishing_interval(&spec_112(), 3).unwrap();
        assert_eq!(window.interval.to_string(), "(4/3, 2)");
        assert!(window.punctures.is_empty());
    }

    #[test]
    fn window_empty_for_equal_extremes() {
        // Weights (1,1): w_1 = W_1, the H³ model — no open window.
        let spec = DerivationSpectrum::new(
            vec![QuadScalar::one(), QuadScalar::one()],
            true,
        )
        .unwrap();
        let window = torsion_nonvanishing_interval(&spec, 2).unwrap();
        assert!(window.interval.is_empty());
    }

    #[test]
    fn nonabelian_rejected() {
        let spec = DerivationSpectrum::new(
            vec![QuadScalar::one(), QuadScalar::one(), QuadScalar::from_int(2)],
            false,
        )
        .unwrap();
        assert!(matches!(
            torsion_nonvanishing_interval(&spec, 2),
            Err(TorsionError::NonabelianGroup)
        ));
    }

    #[test]
    fn theorem_b_examples() {
        let i = theorem_b_interval(4, 2, &quarter()).unwrap();
        assert_eq!(i.to_string(), "(2, 4)");
        let i = theorem_b_interval(5, 2, &quarter()).unwrap();
        assert_eq!(i.to_string(), "(5/2, 5)");
        let i = theorem_b_interval(4, 3, &quarter()).unwrap();
        assert_eq!(i.lower().unwrap().0, &QuadScalar::from_ratio(5, 4).unwrap());
    }

    #[test]
    fn theorem_b_matches_window_with_punctures() {
        // n=5, μ=3, δ=−1/4: weights (1/2,1/2,1,1); the window (3/2, 3) has a
        // puncture at 2 and the closed formula returns its first component.
        let delta = quarter();
        let spec = g_mu_n_delta_spectrum(5, 3, &delta).unwrap();
        let window = torsion_nonvanishing_interval(&spec, 3).unwrap();
        assert_eq!(window.interval.to_string(), "(3/2, 3)");
        assert_eq!(window.punctures, vec![QuadScalar::from_int(2)]);
        let components = window.components().unwrap();
        assert_eq!(components.len(), 2);
        assert_eq!(components[0], theorem_b_interval(5, 3, &delta).unwrap());
        assert_eq!(components[1].to_string(), "(2, 3)");
    }

    #[test]
    fn hyperbolic_points() {
        assert_eq!(
            hyperbolic_torsion_points(4, 2).unwrap(),
            vec![QuadScalar::from_int(3)]
        );
        assert_eq!(
            hyperbolic_torsion_points(4, 3).unwrap(),
            vec![QuadScalar::from_ratio(3, 2).unwrap()]
        );
        assert_eq!(
            hyperbolic_torsion_points(3, 2).unwrap(),
            vec![QuadScalar::from_int(2)]
        );
        assert!(hyperbolic_torsion_points(4, 4).is_err());
    }

    #[test]
    fn t_invariant_cases() {
        let g = GroupModel::Heintze { spectrum: spec_112() };
        assert_eq!(t_invariant(&g).unwrap(), QuadScalar::from_int(2));
        let h4 = GroupModel::RealHyperbolic { n: 4 };
        assert_eq!(t_invariant(&h4).unwrap(), QuadScalar::from_int(3));
        let ch2 = GroupModel::Reference {
            space: RefSpace::ComplexHyperbolicPlane,
        };
        assert_eq!(t_invariant(&ch2).unwrap(), QuadScalar::from_int(4));
        // Three distinct weights: outside the two-valued μ=2 family.
        let spec = DerivationSpectrum::new(
            vec![QuadScalar::one(), QuadScalar::from_int(2), QuadScalar::from_int(3)],
            true,
        )
        .unwrap();
        assert!(matches!(
            t_invariant(&GroupModel::Heintze { spectrum: spec }),
            Err(TorsionError::NotDetermined(_))
        ));
    }

    #[test]
    fn qi_obstruction_examples() {
        let g = GroupModel::Heintze { spectrum: spec_112() };
        // δ′ = −0.3 (float): q(4,−0.3,1) ≈ 2.095 > 2 — witness at k = 2.
        let cls = PinchedClass::new(4, QuadScalar::float(-0.3)).unwrap();
        let report = qi_obstruction(&g, &cls).unwrap();
        assert!(report.obstructed);
        assert!(report.approximate);
        let witness = report.witness.unwrap();
        assert_eq!(witness.degree, 2);
        let (lo, _) = witness.interval.lower().unwrap();
        let (hi, _) = witness.interval.upper().unwrap();
        assert!((lo.to_f64() - 2.0).abs() < 1e-12);
        assert!((hi.to_f64() - (1.0 + 2.0 * 0.3f64.sqrt())).abs() < 1e-12);

        // δ′ = −1/4: the intervals abut exactly at p = 2 — no obstruction.
        let cls = PinchedClass::new(4, quarter()).unwrap();
        let report = qi_obstruction(&g, &cls).unwrap();
        assert!(!report.obstructed);
        assert!(!report.approximate);

        // Real hyperbolic H⁴ against δ′ = −1/2: no degree catches the point.
        let h4 = GroupModel::RealHyperbolic { n: 4 };
        let cls = PinchedClass::new(4, QuadScalar::from_ratio(-1, 2).unwrap()).unwrap();
        let report = qi_obstruction(&h4, &cls).unwrap();
        assert!(!report.obstructed);
        assert_eq!(report.scanned_degrees, vec![2, 3]);
    }

    #[test]
    fn degree_report_heintze() {
        let g = GroupModel::Heintze { spectrum: spec_112() };
        let r = degree_report(&g, 2).unwrap();
        assert_eq!(r.torsion_zero[0].to_string(), "(1, 2)");
        assert_eq!(r.full_zero.to_string(), "(1, 5/4]");
        match &r.torsion_nonzero {
            NonzeroSet::Window(w) => assert_eq!(w.interval.to_string(), "(2, 4)"),
            other => panic!("expected window, got {other:?}"),
        }
        // Exact complement: the boundary point 2 and the closed ray from 4.
        assert_eq!(r.unknown.len(), 2);
        assert_eq!(r.unknown[0].to_string(), "[2, 2]");
        assert_eq!(r.unknown[1].to_string(), "[4, inf)");

        // Top degree k = 4 = n: nothing is covered by nonvanishing theorems.
        let r = degree_report(&g, 4).unwrap();
        assert!(matches!(r.torsion_nonzero, NonzeroSet::NotCovered));
        assert!(r.full_zero.is_empty());
        assert!(r.critical.is_empty());
    }

    #[test]
    fn degree_report_real_hyperbolic() {
        let g = GroupModel::RealHyperbolic { n: 4 };
        let r = degree_report(&g, 3).unwrap();
        match &r.torsion_nonzero {
            NonzeroSet::Points(pts) => {
                assert_eq!(pts, &vec![QuadScalar::from_ratio(3, 2).unwrap()])
            }
            other => panic!("expected points, got {other:?}"),
        }
        assert_eq!(r.torsion_zero.len(), 2);
        assert_eq!(r.torsion_zero[0].to_string(), "(1, 3/2)");
        assert_eq!(r.torsion_zero[1].to_string(), "(3/2, inf)");
        assert!(r.unknown.is_empty());
    }

    #[test]
    fn truncation_tradeoff_closed_forms() {
        let (s, bound) = truncation_tradeoff(1.0, 1.0, 5.0, 5.0).unwrap();
        assert!(s.abs() < 1e-15);
        assert!((bound - 5.0).abs() < 1e-12);
        let e2 = std::f64::consts::E * std::f64::consts::E;
        let (s, bound) = truncation_tradeoff(1.0, 1.0, e2, 1.0).unwrap();
        assert!((s - 1.0).abs() < 1e-12);
        assert!((bound - std::f64::consts::E).abs() < 1e-12);
        let (_, bound) = truncation_tradeoff(2.0, 1.0, 8.0, 1.0).unwrap();
        assert!((bound - 4.0).abs() < 1e-12);
        assert!(truncation_tradeoff(0.0, 1.0, 1.0, 1.0).is_err());
    }
}
