//! Sharp vanishing thresholds for δ-pinched negatively curved manifolds and
//! the contraction/dilation ranges of the Busemann gradient field.
//!
//! The pinched class is an axiom, not a computed object: a complete simply
//! connected manifold of dimension n whose sectional curvature satisfies
//! −1 ≤ K ≤ δ < 0. Its L^p-cohomology vanishing ranges are controlled by the
//! threshold q(n,δ,k) = 1 + ((n−k−1)/k)·√−δ: torsion vanishes on the open
//! interval below q(n,δ,k−1), full cohomology on the half-open interval up to
//! and including q(n,δ,k) (the limit case is covered by a separate argument,
//! hence the closed endpoint).

use serde::Serialize;

use crate::numeric::{ExponentInterval, NumericError, QuadScalar};

/// Errors from pinching-threshold computations.
#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum PinchingError {
    #[error("dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("delta must satisfy -1 <= delta < 0, got {0}")]
    DeltaOutOfRange(String),
    #[error("delta must be a rational (or decimal) number, got {0}")]
    IrrationalDelta(String),
    #[error("degree {degree} out of range {min}..={max}")]
    DegreeOutOfRange {
        degree: usize,
        min: usize,
        max: usize,
    },
    #[error("exponent must satisfy p > 1, got {0}")]
    ExponentOutOfRange(String),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

/// The class of complete simply connected n-manifolds with −1 ≤ K ≤ δ.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PinchedClass {
    n: usize,
    delta: QuadScalar,
}

impl PinchedClass {
    /// Validates −1 ≤ δ < 0 (δ = −1 is the real hyperbolic case; δ = 0 is
    /// rejected, the theory needs strictly negative pinching). δ must be a
    /// rational or a decimal; exact irrational δ would need nested radicals.
    pub fn new(n: usize, delta: QuadScalar) -> Result<Self, PinchingError> {
        if n < 2 {
            return Err(PinchingError::DimensionTooSmall(n));
        }
        if delta.is_exact() && delta.as_rational().is_none() {
            return Err(PinchingError::IrrationalDelta(delta.to_string()));
        }
        let minus_one = int_like(&delta, -1);
        if delta.sign() >= 0 || delta.try_cmp(&minus_one)? == std::cmp::Ordering::Less {
            return Err(PinchingError::DeltaOutOfRange(delta.to_string()));
        }
        Ok(PinchedClass { n, delta })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn delta(&self) -> &QuadScalar {
        &self.delta
    }

    /// √−δ, exact in Q(√−δ) when δ is an exact rational, float otherwise.
    pub fn sqrt_minus_delta(&self) -> Result<QuadScalar, PinchingError> {
        sqrt_minus_delta(&self.delta)
    }
}

/// A scalar constant in the same mode (exact/float) as the template.
fn int_like(template: &QuadScalar, v: i64) -> QuadScalar {
    if template.is_exact() {
        QuadScalar::from_int(v)
    } else {
        QuadScalar::float(v as f64)
    }
}

/// √−δ for a validated δ.
pub fn sqrt_minus_delta(delta: &QuadScalar) -> Result<QuadScalar, PinchingError> {
    match delta {
        QuadScalar::Float(v) => Ok(QuadScalar::float((-v).sqrt())),
        QuadScalar::Exact { .. } => {
            let r = delta
                .as_rational()
                .ok_or_else(|| PinchingError::IrrationalDelta(delta.to_string()))?;
            Ok(QuadScalar::sqrt_rational(-r.clone())?)
        }
    }
}

/// The sharp threshold q(n,δ,k) = 1 + ((n−k−1)/k)·√−δ.
pub fn q_bound(n: usize, delta: &QuadScalar, k: usize) -> Result<QuadScalar, PinchingError> {
    if n < 2 {
        return Err(PinchingError::DimensionTooSmall(n));
    }
    if k == 0 || k > n - 1 {
        return Err(PinchingError::DegreeOutOfRange {
            degree: k,
            min: 1,
            max: n - 1,
        });
    }
    let root = sqrt_minus_delta(delta)?;
    let ratio = int_like(&root, n as i64 - k as i64 - 1).try_div(&int_like(&root, k as i64))?;
    Ok(int_like(&root, 1).try_add(&ratio.try_mul(&root)?)?)
}

/// Théorème A's two vanishing ranges in degree k:
/// torsion_zero = (1, q(n,δ,k−1)) open; full_zero = (1, q(n,δ,k)] closed at
/// the top (empty for k = n, where the threshold degenerates to 1).
pub fn vanishing_intervals(
    cls: &PinchedClass,
    k: usize,
) -> Result<(ExponentInterval, ExponentInterval), PinchingError> {
    let n = cls.n;
    if k < 2 || k > n {
        return Err(PinchingError::DegreeOutOfRange {
            degree: k,
            min: 2,
            max: n,
        });
    }
    let one = int_like(&cls.delta, 1);
    let torsion_zero = ExponentInterval::open(one.clone(), q_bound(n, &cls.delta, k - 1)?)?;
    let full_zero = if k == n {
        ExponentInterval::empty()
    } else {
        ExponentInterval::open_closed(one, q_bound(n, &cls.delta, k)?)?
    };
    Ok((torsion_zero, full_zero))
}

/// The exponent ranges where the Busemann field is (k,p)-contracting,
/// respectively (k,p)-dilating: (1, q(n,δ,k)) and (1 + (n−k−1)/(k√−δ), ∞).
pub fn contraction_range(
    cls: &PinchedClass,
    k: usize,
) -> Result<(ExponentInterval, ExponentInterval), PinchingError> {
    let n = cls.n;
    if k > n - 1 {
        return Err(PinchingError::DegreeOutOfRange {
            degree: k,
            min: 0,
            max: n - 1,
        });
    }
    let one = int_like(&cls.delta, 1);
    if k == 0 {
        // 0-forms: the flow contracts for every exponent.
        return Ok((ExponentInterval::ray(one)?, ExponentInterval::empty()));
    }
    let contracting = ExponentInterval::open(one.clone(), q_bound(n, &cls.delta, k)?)?;
    let root = cls.sqrt_minus_delta()?;
    let dil_lower = one.try_add(
        &int_like(&root, n as i64 - k as i64 - 1)
            .try_div(&int_like(&root, k as i64).try_mul(&root)?)?,
    )?;
    let dilating = ExponentInterval::ray(dil_lower)?;
    Ok((contracting, dilating))
}

/// The pair of decay exponents from the comparison argument:
/// η = (n−k−1)√−δ − k(p−1) (positive iff p < q(n,δ,k)) and
/// η′ = k(p−1)√−δ − n + k + 1 (positive iff p is in the dilating range).
pub fn eta_exponents(
    cls: &PinchedClass,
    k: usize,
    p: &QuadScalar,
) -> Result<(QuadScalar, QuadScalar), PinchingError> {
    let n = cls.n;
    if k > n - 1 {
        return Err(PinchingError::DegreeOutOfRange {
            degree: k,
            min: 0,
            max: n - 1,
        });
    }
    // Promote to float mode if either input is a float.
    let (root, p) = if cls.delta.is_exact() && p.is_exact() {
        (cls.sqrt_minus_delta()?, p.clone())
    } else {
        (cls.sqrt_minus_delta()?.approx(), p.approx())
    };
    let one = int_like(&root, 1);
    if p.try_sub(&one)?.sign() <= 0 {
        return Err(PinchingError::ExponentOutOfRange(p.to_string()));
    }
    let k_s = int_like(&root, k as i64);
    let p_minus_1 = p.try_sub(&one)?;
    let eta = int_like(&root, n as i64 - k as i64 - 1)
        .try_mul(&root)?
        .try_sub(&k_s.try_mul(&p_minus_1)?)?;
    let eta_prime = k_s
        .try_mul(&p_minus_1)?
        .try_mul(&root)?
        .try_sub(&int_like(&root, n as i64 - k as i64 - 1))?;
    Ok((eta, eta_prime))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quarter() -> QuadScalar {
        QuadScalar::from_ratio(-1, 4).unwrap()
    }

    #[test]
    fn q_bound_examples() {
        assert_eq!(q_bound(4, &quarter(), 1).unwrap(), QuadScalar::from_int(2));
        // δ = −1: q(n,−1,k) = (n−1)/k.
        for n in 2..=8usize {
            for k in 1..n {
                let q = q_bound(n, &QuadScalar::from_int(-1), k).unwrap();
                assert_eq!(q, QuadScalar::from_ratio(n as i64 - 1, k as i64).unwrap());
            }
        }
        // n−k−1 = 0 kills the pinching term.
        assert_eq!(q_bound(4, &quarter(), 3).unwrap(), QuadScalar::one());
        assert!(matches!(
            q_bound(4, &quarter(), 0),
            Err(PinchingError::DegreeOutOfRange { .. })
        ));
    }

    #[test]
    fn q_bound_irrational_root_stays_exact() {
        // δ = −1/2: q(4,δ,1) = 1 + 2√(1/2), exact in Q(√(1/2)).
        let q = q_bound(4, &QuadScalar::from_ratio(-1, 2).unwrap(), 1).unwrap();
        assert!(q.is_exact());
        assert!((q.to_f64() - (1.0 + 2.0 * 0.5f64.sqrt())).abs() < 1e-14);
    }

    #[test]
    fn vanishing_interval_examples() {
        let cls = PinchedClass::new(4, quarter()).unwrap();
        let (torsion, full) = vanishing_intervals(&cls, 2).unwrap();
        assert_eq!(torsion.to_string(), "(1, 2)");
        assert_eq!(full.to_string(), "(1, 5/4]");

        let hyp = PinchedClass::new(4, QuadScalar::from_int(-1)).unwrap();
        let (torsion, full) = vanishing_intervals(&hyp, 2).unwrap();
        assert_eq!(torsion.to_string(), "(1, 3)");
        assert_eq!(full.to_string(), "(1, 3/2]");

        // Top degree: both thresholds degenerate to 1
        // (q(n,δ,n−1) = 1 because n−k−1 = 0), so both intervals clip empty.
        let (torsion, full) = vanishing_intervals(&cls, 4).unwrap();
        assert!(full.is_empty());
        assert!(torsion.is_empty());
        // One degree below the top, full vanishing clips empty but the
        // torsion interval survives: q(6,−1/4,4) = 1 + (1/4)(1/2) = 9/8.
        let cls6 = PinchedClass::new(6, quarter()).unwrap();
        let (torsion, full) = vanishing_intervals(&cls6, 5).unwrap();
        assert!(full.is_empty());
        assert_eq!(torsion.to_string(), "(1, 9/8)");
    }

    #[test]
    fn contraction_range_examples() {
        let cls = PinchedClass::new(4, quarter()).unwrap();
        let (con, dil) = contraction_range(&cls, 1).unwrap();
        assert_eq!(con.to_string(), "(1, 2)");
        assert_eq!(dil.to_string(), "(5, inf)");

        let hyp = PinchedClass::new(4, QuadScalar::from_int(-1)).unwrap();
        let (con, dil) = contraction_range(&hyp, 1).unwrap();
        assert_eq!(con.to_string(), "(1, 3)");
        assert_eq!(dil.to_string(), "(3, inf)");

        let thin = PinchedClass::new(2, quarter()).unwrap();
        let (con, dil) = contraction_range(&thin, 1).unwrap();
        assert!(con.is_empty());
        assert_eq!(dil.to_string(), "(1, inf)");

        let (con, dil) = contraction_range(&cls, 0).unwrap();
        assert_eq!(con.to_string(), "(1, inf)");
        assert!(dil.is_empty());
    }

    #[test]
    fn eta_exponent_examples() {
        let cls = PinchedClass::new(4, quarter()).unwrap();
        let (eta, _) = eta_exponents(&cls, 1, &QuadScalar::from_ratio(3, 2).unwrap()).unwrap();
        assert_eq!(eta, QuadScalar::from_ratio(1, 2).unwrap());
        let (eta, _) = eta_exponents(&cls, 1, &QuadScalar::from_int(2)).unwrap();
        assert_eq!(eta, QuadScalar::zero());
        let (_, eta_prime) = eta_exponents(&cls, 1, &QuadScalar::from_int(5)).unwrap();
        assert_eq!(eta_prime, QuadScalar::zero());
    }

    #[test]
    fn class_validation() {
        assert!(matches!(
            PinchedClass::new(4, QuadScalar::zero()),
            Err(PinchingError::DeltaOutOfRange(_))
        ));
        assert!(matches!(
            PinchedClass::new(4, QuadScalar::from_int(-2)),
            Err(PinchingError::DeltaOutOfRange(_))
        ));
        assert!(matches!(
            PinchedClass::new(1, quarter()),
            Err(PinchingError::DimensionTooSmall(1))
        ));
        assert!(matches!(
            PinchedClass::new(4, "-1+sqrt(2)".parse().unwrap()),
            Err(PinchingError::IrrationalDelta(_))
        ));
        // δ = −1 and float δ are both accepted.
        assert!(PinchedClass::new(4, QuadScalar::from_int(-1)).is_ok());
        assert!(PinchedClass::new(4, QuadScalar::float(-0.3)).is_ok());
    }
}
