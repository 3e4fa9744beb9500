//! Derivation spectra of `R^(n−1) ⋊_α R`, exterior-power spectra, the
//! (k,p)-contracting/dilating criterion, critical exponents, and the
//! dimensions of the Λ^k_± / Λ^k_0 grading.
//!
//! The group is encoded by the multiset of real parts of the eigenvalues of
//! the derivation α (the "weights"), all strictly positive so that the group
//! carries negatively curved left-invariant metrics. The negative gradient
//! flow of the Busemann function acts on k-forms through Λ^k α, whose
//! spectrum is the set of k-element subset sums of the weights; comparing
//! those sums to tr α / p decides exponential contraction or dilation of
//! the L^p-weighted norm.

use itertools::Itertools;
use serde::Serialize;

use crate::numeric::{NumericError, QuadScalar};

/// Errors from spectral computations.
#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum SpectralError {
    #[error("spectrum must contain at least one weight")]
    EmptySpectrum,
    #[error("weights must be strictly positive, got {0}")]
    NonpositiveWeight(String),
    #[error("at most {max} weights supported (direct subset enumeration), got {got}")]
    TooManyWeights { got: usize, max: usize },
    #[error("degree {degree} out of range 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("exponent must satisfy p > 1, got {0}")]
    ExponentOutOfRange(String),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

/// Direct enumeration of C(n−1, k) subset sums stays trivially cheap up to
/// this many weights; larger inputs are rejected.
pub const MAX_WEIGHTS: usize = 24;

/// The sorted multiset of real parts of eigenvalues of the derivation α,
/// with its trace; defines the group `R^(n−1) ⋊_α R`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DerivationSpectrum {
    weights: Vec<QuadScalar>,
    abelian: bool,
    trace: QuadScalar,
}

impl DerivationSpectrum {
    /// Validates weights (strictly positive, ≤ 24 of them), sorts them
    /// ascending, and caches the trace.
    pub fn new(weights: Vec<QuadScalar>, abelian: bool) -> Result<Self, SpectralError> {
        if weights.is_empty() {
            return Err(SpectralError::EmptySpectrum);
        }
        if weights.len() > MAX_WEIGHTS {
            return Err(SpectralError::TooManyWeights {
                got: weights.len(),
                max: MAX_WEIGHTS,
            });
        }
        for w in &weights {
            if w.sign() <= 0 {
                return Err(SpectralError::NonpositiveWeight(w.to_string()));
            }
        }
        let mut weights = weights;
        sort_scalars(&mut weights)?;
        let mut trace = QuadScalar::zero();
        if !weights[0].is_exact() {
            trace = trace.approx();
        }
        for w in &weights {
            trace = trace.try_add(w)?;
        }
        Ok(DerivationSpectrum {
            weights,
            abelian,
            trace,
        })
    }

    /// Weights sorted ascending: λ_1 ≤ … ≤ λ_{n−1}.
    pub fn weights(&self) -> &[QuadScalar] {
        &self.weights
    }

    /// Number of weights, n − 1.
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// Ambient dimension n of the group.
    pub fn n(&self) -> usize {
        self.weights.len() + 1
    }

    /// Whether the nilpotent part H = R^(n−1) is abelian. The nonvanishing
    /// criterion is only proved for abelian H; nonabelian inputs are carried
    /// so downstream operations can refuse.
    pub fn abelian(&self) -> bool {
        self.abelian
    }

    /// tr α = Σ λ_i, computed once at construction.
    pub fn trace(&self) -> &QuadScalar {
        &self.trace
    }

    /// w_k: the sum of the k smallest weights (0 for k = 0).
    pub fn w_small(&self, k: usize) -> Result<QuadScalar, SpectralError> {
        self.check_degree(k)?;
        sum(&self.weights[..k])
    }

    /// W_k: the sum of the k largest weights (0 for k = 0).
    pub fn w_large(&self, k: usize) -> Result<QuadScalar, SpectralError> {
        self.check_degree(k)?;
        sum(&self.weights[self.weights.len() - k..])
    }

    fn check_degree(&self, k: usize) -> Result<(), SpectralError> {
        if k > self.weights.len() {
            Err(SpectralError::DegreeOutOfRange {
                degree: k,
                max: self.weights.len(),
            })
        } else {
            Ok(())
        }
    }
}

fn sum(values: &[QuadScalar]) -> Result<QuadScalar, SpectralError> {
    let mut acc = QuadScalar::zero();
    if values.first().is_some_and(|v| !v.is_exact()) {
        acc = acc.approx();
    }
    for v in values {
        acc = acc.try_add(v)?;
    }
    Ok(acc)
}

fn sort_scalars(values: &mut [QuadScalar]) -> Result<(), NumericError> {
    // Selection sort: comparisons are fallible and inputs are tiny.
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            if values[j].try_cmp(&values[i])? == std::cmp::Ordering::Less {
                values.swap(i, j);
            }
        }
    }
    Ok(())
}

/// The spectrum of Λ^k α: all C(n−1, k) subset sums λ_I, sorted ascending.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExteriorSpectrum {
    pub degree: usize,
    pub sums: Vec<QuadScalar>,
}

/// All k-element subset sums of the weights; k = 0 yields {0}.
pub fn exterior_spectrum(
    spec: &DerivationSpectrum,
    k: usize,
) -> Result<ExteriorSpectrum, SpectralError> {
    spec.check_degree(k)?;
    let mut sums = Vec::new();
    for combo in (0..spec.dim()).combinations(k) {
        let mut acc = QuadScalar::zero();
        if !spec.weights[0].is_exact() {
            acc = acc.approx();
        }
        for i in combo {
            acc = acc.try_add(&spec.weights[i])?;
        }
        sums.push(acc);
    }
    sort_scalars(&mut sums)?;
    Ok(ExteriorSpectrum { degree: k, sums })
}

/// Outcome of the (k,p) criterion for the Busemann field ξ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Contraction {
    Contracting,
    Dilating,
    Neither,
}

/// The spectral criterion: ξ is (k,p)-contracting iff every subset sum λ_I
/// exceeds tr α / p, and (k,p)-dilating iff every λ_I is below tr α / p.
pub fn is_contracting(
    spec: &DerivationSpectrum,
    k: usize,
    p: &QuadScalar,
) -> Result<Contraction, SpectralError> {
    let threshold = threshold(spec, p)?;
    let min = spec.w_small(k)?;
    let max = spec.w_large(k)?;
    if min.try_sub(&threshold)?.sign() > 0 {
        Ok(Contraction::Contracting)
    } else if max.try_sub(&threshold)?.sign() < 0 {
        Ok(Contraction::Dilating)
    } else {
        Ok(Contraction::Neither)
    }
}

fn threshold(spec: &DerivationSpectrum, p: &QuadScalar) -> Result<QuadScalar, SpectralError> {
    let one = if p.is_exact() {
        QuadScalar::one()
    } else {
        QuadScalar::float(1.0)
    };
    if p.try_sub(&one)?.sign() <= 0 {
        return Err(SpectralError::ExponentOutOfRange(p.to_string()));
    }
    let trace = if p.is_exact() {
        spec.trace.clone()
    } else {
        spec.trace.approx()
    };
    Ok(trace.try_div(p)?)
}

/// The critical exponents in degree k: { tr α / λ_I : |I| = k } ∩ (1, ∞),
/// deduplicated and sorted. At these p the grading degenerates (Λ^k_0 ≠ 0).
pub fn critical_exponents(
    spec: &DerivationSpectrum,
    k: usize,
) -> Result<Vec<QuadScalar>, SpectralError> {
    if k == 0 {
        return Err(SpectralError::DegreeOutOfRange {
            degree: 0,
            max: spec.dim(),
        });
    }
    let ext = exterior_spectrum(spec, k)?;
    let one = QuadScalar::one();
    let mut out: Vec<QuadScalar> = Vec::new();
    for lam in &ext.sums {
        if lam.sign() <= 0 {
            continue;
        }
        let ratio = spec.trace.try_div(lam)?;
        if ratio.try_sub(&one)?.sign() <= 0 {
            continue;
        }
        let mut seen = false;
        for existing in &out {
            if existing.eq_val(&ratio)? {
                seen = true;
                break;
            }
        }
        if !seen {
            out.push(ratio);
        }
    }
    sort_scalars(&mut out)?;
    Ok(out)
}

/// Dimensions of Λ^k_{+(p)}, Λ^k_{0(p)}, Λ^k_{−(p)}: counts of subset sums
/// strictly above / equal to / strictly below tr α / p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GradingDims {
    pub dim_plus: usize,
    pub dim_zero: usize,
    pub dim_minus: usize,
}

/// Decompose Λ^k H^* by comparing each eigenvalue of Λ^k α to tr α / p.
pub fn grading_dims(
    spec: &DerivationSpectrum,
    k: usize,
    p: &QuadScalar,
) -> Result<GradingDims, SpectralError> {
    let threshold = threshold(spec, p)?;
    let ext = exterior_spectrum(spec, k)?;
    let mut dims = GradingDims {
        dim_plus: 0,
        dim_zero: 0,
        dim_minus: 0,
    };
    for lam in &ext.sums {
        match lam.try_sub(&threshold)?.sign() {
            1 => dims.dim_plus += 1,
            0 => dims.dim_zero += 1,
            _ => dims.dim_minus += 1,
        }
    }
    Ok(dims)
}
