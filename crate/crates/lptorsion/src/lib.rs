//! Exact-arithmetic calculator for the L^p-cohomology torsion invariants of
//! solvable Lie groups R^{n−1} ⋊_α R and of pinched negatively curved
//! spaces, together with a numerical laboratory certifying the analytic
//! ingredients behind the torsion estimates.
//!
//! Layout:
//! * [`numeric`] — the exact scalar field Q(√s) and exponent intervals;
//! * [`spectral`] — derivation spectra, exterior weight sums, contraction
//!   thresholds, and critical exponents;
//! * [`pinching`] — vanishing/contraction windows from curvature pinching;
//! * [`report`] — group models, per-degree torsion reports, the torsion
//!   quasiisometry invariant, and obstruction scans;
//! * [`riccati`] — matrix Riccati comparison along geodesics with the
//!   exponential-contraction inequality checks;
//! * [`analysis`] — quadrature-certified constructions: the pairing
//!   test-function family, the radial degree-3 check, and the L² Künneth
//!   counterexample;
//! * [`cli`] — the command-line front end.

pub mod analysis;
pub mod check;
pub mod cli;
pub mod numeric;
pub mod pinching;
pub mod report;
pub mod riccati;
pub mod spectral;
