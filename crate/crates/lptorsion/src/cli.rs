//! Command-line front end with stable machine-readable output.
//!
//! Calculator subcommands (`spectrum`, `critical`, `contract`, `vanish`,
//! `nonvanish`, `report`, `tinv`, `qi-check`) print a JSON object with the
//! echoed input, the degree where applicable, exact interval endpoints, and
//! critical exponents. Laboratory subcommands (`lab-riccati`,
//! `lab-lemma-r`, `lab-radial`, `lab-kunneth`) additionally print a
//! `checks` array; any failed check makes the process exit with code 3.
//! Exit codes: 0 success, 2 input error, 3 failed laboratory check.

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::analysis::kunneth::{kunneth_report, KunnethConfig};
use crate::analysis::lemma_r::lemma_r_report;
use crate::analysis::radial::radial_report;
use crate::analysis::AnalysisError;
use crate::check::CheckReport;
use crate::numeric::QuadScalar;
use crate::pinching::{contraction_range, vanishing_intervals, PinchedClass};
use crate::report::{
    degree_report, g_mu_n_delta_spectrum, qi_obstruction, t_invariant,
    torsion_nonvanishing_interval, GroupModel, RefSpace,
};
use crate::riccati::{
    contraction_inequality_check, invariant_region_check, riccati_integrate, CurvatureField,
    RiccatiError,
};
use crate::spectral::{
    critical_exponents, exterior_spectrum, grading_dims, is_contracting, DerivationSpectrum,
};

const EXIT_OK: i32 = 0;
const EXIT_INPUT: i32 = 2;
const EXIT_LAB: i32 = 3;

#[derive(Parser)]
#[command(
    name = "lptorsion",
    about = "Exact calculator for L^p-cohomology torsion ranges of solvable \
             groups and pinched negatively curved spaces, with numerical \
             certification labs"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GroupKind {
    /// R^{n-1} semidirect R with diagonal derivation G_{mu,n,delta}.
    Heintze,
    /// Real hyperbolic space H^n.
    RealHyperbolic,
    /// The complex hyperbolic plane (stored constants only).
    Ch2,
}

/// Group selection: either an explicit weight list or a named family.
#[derive(Args, Clone)]
struct GroupArgs {
    /// Comma-separated derivation weights: rationals or a+b*sqrt(s) literals.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    weights: Option<Vec<String>>,
    /// Mark the weight-listed nilpotent part as nonabelian.
    #[arg(long, requires = "weights")]
    nonabelian: bool,
    /// Named family instead of explicit weights.
    #[arg(long, value_enum, conflicts_with = "weights")]
    group: Option<GroupKind>,
    /// Dimension n (heintze and real-hyperbolic).
    #[arg(long)]
    n: Option<usize>,
    /// Multiplicity parameter mu of G_{mu,n,delta} (heintze).
    #[arg(long)]
    mu: Option<usize>,
    /// Pinching constant delta in (-1, 0), e.g. -1/4 (heintze).
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exterior weight sums of the derivation in one degree.
    Spectrum {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        degree: usize,
    },
    /// Critical exponents tr(alpha)/lambda_I in one degree.
    Critical {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        degree: usize,
    },
    /// Contraction/dilation classification and grading dimensions at p.
    Contract {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        p: String,
    },
    /// Vanishing ranges for the pinched class -1 <= K <= delta.
    Vanish {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        delta: String,
        #[arg(long)]
        degree: usize,
    },
    /// Torsion nonvanishing window with critical-exponent punctures.
    Nonvanish {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        degree: usize,
    },
    /// Everything known about one degree: zero/nonzero/unknown ranges.
    Report {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        degree: usize,
    },
    /// The quasiisometry invariant T = inf { p > 1 : torsion in degree 2 }.
    Tinv {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Scan for a torsion obstruction to quasiisometry against a pinched class.
    QiCheck {
        #[command(flatten)]
        group: GroupArgs,
        /// Pinching constant of the comparison class.
        #[arg(long, allow_hyphen_values = true)]
        against_delta: String,
        /// Dimension of the comparison class (defaults to the group's).
        #[arg(long)]
        against_n: Option<usize>,
    },
    /// Riccati comparison on seeded random curvature fields.
    LabRiccati {
        /// Matrix dimension m = n - 1.
        #[arg(long, default_value_t = 3)]
        m: usize,
        /// Pinching constant delta in [-1, 0) (float).
        #[arg(long, default_value_t = -0.25, allow_hyphen_values = true)]
        delta: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 20.0)]
        t_end: f64,
        #[arg(long, default_value_t = 1e-3)]
        h: f64,
        /// Restrict the contraction check to one exterior degree.
        #[arg(long)]
        k: Option<usize>,
        /// Exponent p for the contraction check (defaults near the threshold).
        #[arg(long)]
        p: Option<f64>,
    },
    /// Certify the pairing test-function family estimates.
    LabLemmaR {
        #[arg(long, default_value = "2")]
        p: String,
        #[arg(long, value_delimiter = ',', num_args = 1.., default_values_t = [5.0, 10.0, 20.0, 40.0])]
        j: Vec<f64>,
        /// Ambient dimension fixing the weight exponent 1/(n-1).
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
    /// Certify the degree-3 radial pairing on the 4-dimensional model.
    LabRadial {
        #[arg(long, default_value = "3/2")]
        p: String,
        #[arg(long, value_delimiter = ',', num_args = 1.., default_values_t = [5.0, 10.0, 20.0])]
        j: Vec<f64>,
    },
    /// Certify the L^2 Kunneth counterexample integrals.
    LabKunneth {
        /// Annulus scales (defaults to 24 dyadic scales from 1/8).
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        eps: Option<Vec<f64>>,
        /// Scale at which the divergence ratio is measured.
        #[arg(long, default_value_t = 1e-6)]
        div_eps: f64,
    },
}

/// A semantic input error (exit code 2).
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn parse_scalar(text: &str) -> Result<QuadScalar, InputError> {
    text.parse::<QuadScalar>()
        .map_err(|e| InputError(e.to_string()))
}

impl GroupArgs {
    /// Resolve to a model plus the echoed-input JSON.
    fn to_model(&self) -> Result<(GroupModel, Value), InputError> {
        if let Some(texts) = &self.weights {
            let mut weights = Vec::new();
            for t in texts {
                weights.push(parse_scalar(t)?);
            }
            let spectrum = DerivationSpectrum::new(weights, !self.nonabelian)?;
            let input = json!({
                "weights": spectrum.weights(),
                "abelian": spectrum.abelian(),
            });
            return Ok((GroupModel::Heintze { spectrum }, input));
        }
        let Some(kind) = self.group else {
            return Err(InputError(
                "provide either --weights or --group".to_string(),
            ));
        };
        match kind {
            GroupKind::Heintze => {
                let (Some(n), Some(mu), Some(delta)) = (self.n, self.mu, &self.delta) else {
                    return Err(InputError(
                        "--group heintze requires --n, --mu and --delta".to_string(),
                    ));
                };
                let delta = parse_scalar(delta)?;
                let spectrum = g_mu_n_delta_spectrum(n, mu, &delta)?;
                let input = json!({
                    "group": "heintze", "n": n, "mu": mu, "delta": delta,
                });
                Ok((GroupModel::Heintze { spectrum }, input))
            }
            GroupKind::RealHyperbolic => {
                let Some(n) = self.n else {
                    return Err(InputError(
                        "--group real-hyperbolic requires --n".to_string(),
                    ));
                };
                Ok((
                    GroupModel::RealHyperbolic { n },
                    json!({"group": "real-hyperbolic", "n": n}),
                ))
            }
            GroupKind::Ch2 => Ok((
                GroupModel::Reference {
                    space: RefSpace::ComplexHyperbolicPlane,
                },
                json!({"group": "ch2"}),
            )),
        }
    }

    /// The underlying spectrum, required by spectral subcommands.
    fn to_spectrum(&self) -> Result<(DerivationSpectrum, Value), InputError> {
        match self.to_model()? {
            (GroupModel::Heintze { spectrum }, input) => Ok((spectrum, input)),
            _ => Err(InputError(
                "this subcommand needs a weight spectrum (explicit --weights \
                 or --group heintze)"
                    .to_string(),
            )),
        }
    }
}

/// Run the CLI on the given argv; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // --help / --version are successes; everything else is input error.
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli.cmd) {
        Ok((value, labs_ok)) => {
            emit(&value, cli.format);
            if labs_ok {
                EXIT_OK
            } else {
                EXIT_LAB
            }
        }
        Err(Outcome::Input(msg)) => {
            eprintln!("error: {msg}");
            EXIT_INPUT
        }
        Err(Outcome::Lab(msg)) => {
            eprintln!("certification failure: {msg}");
            EXIT_LAB
        }
    }
}

#[derive(Debug)]
enum Outcome {
    Input(String),
    Lab(String),
}

impl From<InputError> for Outcome {
    fn from(e: InputError) -> Self {
        Outcome::Input(e.0)
    }
}

fn analysis_outcome(e: AnalysisError) -> Outcome {
    match e {
        AnalysisError::BadParameter(_) => Outcome::Input(e.to_string()),
        // Failed calibration / unstable grid means the certification did
        // not go through, not that the request was malformed.
        _ => Outcome::Lab(e.to_string()),
    }
}

fn riccati_outcome(e: RiccatiError) -> Outcome {
    match e {
        RiccatiError::BlowUp { .. } | RiccatiError::SpectrumOutOfRange { .. } => {
            Outcome::Lab(e.to_string())
        }
        _ => Outcome::Input(e.to_string()),
    }
}

fn to_value<S: serde::Serialize>(s: &S) -> Value {
    serde_json::to_value(s).expect("report types serialize infallibly")
}

fn checks_pass(checks: &[CheckReport]) -> bool {
    checks.iter().all(|c| c.pass)
}

fn dispatch(cmd: &Cmd) -> Result<(Value, bool), Outcome> {
    match cmd {
        Cmd::Spectrum { group, degree } => {
            let (spectrum, input) = group.to_spectrum()?;
            let ext = exterior_spectrum(&spectrum, *degree).map_err(InputError::from)?;
            Ok((
                json!({
                    "input": input,
                    "degree": degree,
                    "trace": spectrum.trace(),
                    "exterior": ext.sums,
                }),
                true,
            ))
        }
        Cmd::Critical { group, degree } => {
            let (spectrum, input) = group.to_spectrum()?;
            let critical =
                critical_exponents(&spectrum, *degree).map_err(InputError::from)?;
            Ok((
                json!({
                    "input": input,
                    "degree": degree,
                    "critical": critical,
                }),
                true,
            ))
        }
        Cmd::Contract { group, degree, p } => {
            let (spectrum, input) = group.to_spectrum()?;
            let p = parse_scalar(p)?;
            let class = is_contracting(&spectrum, *degree, &p).map_err(InputError::from)?;
            let dims = grading_dims(&spectrum, *degree, &p).map_err(InputError::from)?;
            Ok((
                json!({
                    "input": input,
                    "degree": degree,
                    "p": p,
                    "contraction": class,
                    "grading": dims,
                }),
                true,
            ))
        }
        Cmd::Vanish { n, delta, degree } => {
            let delta = parse_scalar(delta)?;
            let cls = PinchedClass::new(*n, delta.clone()).map_err(InputError::from)?;
            let (torsion_zero, full_zero) =
                vanishing_intervals(&cls, *degree).map_err(InputError::from)?;
            let ranges = if *degree < *n {
                let (contracting, dilating) =
                    contraction_range(&cls, *degree).map_err(InputError::from)?;
                json!({"contracting": contracting, "dilating": dilating})
            } else {
                Value::Null
            };
            Ok((
                json!({
                    "input": {"n": n, "delta": delta},
                    "degree": degree,
                    "intervals": {
                        "torsion_zero": torsion_zero,
                        "full_zero": full_zero,
                        "contraction": ranges,
                    },
                }),
                true,
            ))
        }
        Cmd::Nonvanish { group, degree } => {
            let (spectrum, input) = group.to_spectrum()?;
            let window =
                torsion_nonvanishing_interval(&spectrum, *degree).map_err(InputError::from)?;
            let components = window.components().map_err(InputError::from)?;
            Ok((
                json!({
                    "input": input,
                    "degree": degree,
                    "intervals": {
                        "torsion_nonzero": window.interval,
                        "components": components,
                    },
                    "critical": window.punctures,
                }),
                true,
            ))
        }
        Cmd::Report { group, degree } => {
            let (model, input) = group.to_model()?;
            let report = degree_report(&model, *degree).map_err(InputError::from)?;
            Ok((
                json!({
                    "input": input,
                    "degree": degree,
                    "intervals": {
                        "torsion_zero": report.torsion_zero,
                        "full_zero": report.full_zero,
                        "unknown": report.unknown,
                    },
                    "torsion_nonzero": to_value(&report.torsion_nonzero),
                    "critical": report.critical,
                }),
                true,
            ))
        }
        Cmd::Tinv { group } => {
            let (model, input) = group.to_model()?;
            let t = t_invariant(&model).map_err(InputError::from)?;
            Ok((json!({"input": input, "t": t}), true))
        }
        Cmd::QiCheck {
            group,
            against_delta,
            against_n,
        } => {
            let (model, input) = group.to_model()?;
            let delta = parse_scalar(against_delta)?;
            let n = against_n.unwrap_or(match &model {
                GroupModel::Heintze { spectrum } => spectrum.n(),
                GroupModel::RealHyperbolic { n } => *n,
                GroupModel::Reference { .. } => 4,
            });
            let cls = PinchedClass::new(n, delta.clone()).map_err(InputError::from)?;
            let report = qi_obstruction(&model, &cls).map_err(InputError::from)?;
            Ok((
                json!({
                    "input": {"group": input, "against": {"n": n, "delta": delta}},
                    "obstructed": report.obstructed,
                    "witness": to_value(&report.witness),
                    "scanned_degrees": report.scanned_degrees,
                    "approximate": report.approximate,
                    "note": report.note,
                }),
                true,
            ))
        }
        Cmd::LabRiccati {
            m,
            delta,
            seed,
            t_end,
            h,
            k,
            p,
        } => {
            let field = CurvatureField::random_piecewise(*m, *delta, *t_end, *seed)
                .map_err(riccati_outcome)?;
            let root = (-*delta).sqrt();
            // Start on the invariant-region boundary U(0) = √−δ·I.
            let u0 = nalgebra::DMatrix::identity(*m, *m) * root;
            let traj = riccati_integrate(&field, u0, *t_end, *h).map_err(riccati_outcome)?;
            let n = *m + 1;
            let mut checks = vec![invariant_region_check(&traj, *delta)];
            let pairs: Vec<(usize, f64)> = match (k, p) {
                (Some(k), Some(p)) => vec![(*k, *p)],
                (Some(k), None) => vec![(*k, default_p(n, *k, root))],
                (None, None) => (1..*m).map(|k| (k, default_p(n, k, root))).collect(),
                (None, Some(_)) => {
                    return Err(Outcome::Input("--p requires --k".to_string()));
                }
            };
            for (k, p) in &pairs {
                if *k == 0 || *k > *m {
                    return Err(Outcome::Input(format!(
                        "degree k must satisfy 1 <= k <= m = {m}, got {k}"
                    )));
                }
                checks.push(contraction_inequality_check(&traj, n, *delta, *k, *p));
            }
            let ok = checks_pass(&checks);
            Ok((
                json!({
                    "input": {"m": m, "delta": delta, "seed": seed, "t_end": t_end, "h": h},
                    "checks": checks,
                    "pass": ok,
                }),
                ok,
            ))
        }
        Cmd::LabLemmaR { p, j, n } => {
            let p = parse_scalar(p)?.to_f64();
            let report = lemma_r_report(p, j, *n).map_err(analysis_outcome)?;
            let ok = report.pass;
            Ok((
                json!({
                    "input": {"p": p, "j": j, "n": n},
                    "rows": report.rows,
                    "rates": report.rates,
                    "norm_slopes": report.norm_slopes,
                    "sa_integral": report.sa_integral,
                    "checks": report.checks,
                    "pass": ok,
                }),
                ok,
            ))
        }
        Cmd::LabRadial { p, j } => {
            let p = parse_scalar(p)?.to_f64();
            let report = radial_report(p, j).map_err(analysis_outcome)?;
            let ok = report.pass;
            Ok((
                json!({
                    "input": {"p": p, "j": j},
                    "rows": report.rows,
                    "checks": report.checks,
                    "pass": ok,
                }),
                ok,
            ))
        }
        Cmd::LabKunneth { eps, div_eps } => {
            let report = kunneth_report(eps.as_deref(), *div_eps, &KunnethConfig::default())
                .map_err(analysis_outcome)?;
            let ok = report.pass;
            Ok((
                json!({
                    "input": {"eps": eps, "div_eps": div_eps},
                    "divergence": to_value(&report.divergence),
                    "rows": report.rows,
                    "total": report.total,
                    "ub_total": report.ub_total,
                    "checks": report.checks,
                    "pass": ok,
                }),
                ok,
            ))
        }
    }
}

/// Default exponent for the contraction check: 90% of the way from 1 to the
/// threshold 1 + (n−k−1)√−δ/k, so the decay rate η stays strictly positive.
fn default_p(n: usize, k: usize, root: f64) -> f64 {
    1.0 + 0.9 * (n as f64 - k as f64 - 1.0) * root / k as f64
}

fn emit(value: &Value, format: Format) {
    match format {
        Format::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(value).expect("JSON value renders")
            );
        }
        Format::Table => {
            let mut lines = Vec::new();
            flatten("", value, &mut lines);
            for (key, rendered) in lines {
                println!("{key:<40} {rendered}");
            }
        }
    }
}

/// Flatten nested JSON into dotted key/value lines for the table format.
fn flatten(prefix: &str, value: &Value, out: &mut Vec<(String, String)>) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, v, out);
            }
        }
        Value::Array(items) => {
            let scalar_only = items.iter().all(|v| !v.is_object() && !v.is_array());
            if scalar_only {
                let joined: Vec<String> = items.iter().map(render_scalar).collect();
                out.push((prefix.to_string(), format!("[{}]", joined.join(", "))));
            } else {
                for (i, v) in items.iter().enumerate() {
                    flatten(&format!("{prefix}[{i}]"), v, out);
                }
            }
        }
        other => out.push((prefix.to_string(), render_scalar(other))),
    }
}

fn render_scalar(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(line: &str) -> Vec<String> {
        std::iter::once("lptorsion")
            .chain(line.split_whitespace())
            .map(str::to_string)
            .collect()
    }

    fn dispatch_line(line: &str) -> Result<(Value, bool), Outcome> {
        let cli = Cli::try_parse_from(args(line)).expect("parse");
        dispatch(&cli.cmd)
    }

    #[test]
    fn nonvanish_headline() {
        let (value, ok) =
            dispatch_line("nonvanish --group heintze --n 4 --mu 2 --delta -1/4 --degree 2")
                .unwrap();
        assert!(ok);
        let window = &value["intervals"]["torsion_nonzero"];
        assert_eq!(window[0], json!("2"));
        assert_eq!(window[1], json!("4"));
        assert_eq!(window[2], json!("open-open"));
    }

    #[test]
    fn tinv_real_hyperbolic() {
        let (value, _) = dispatch_line("tinv --group real-hyperbolic --n 4").unwrap();
        assert_eq!(value["t"], json!("3"));
    }

    #[test]
    fn qi_check_witness() {
        let (value, _) = dispatch_line(
            "qi-check --group heintze --n 4 --mu 2 --delta -1/4 --against-delta -0.26",
        )
        .unwrap();
        assert_eq!(value["obstructed"], json!(true));
        assert_eq!(value["witness"]["degree"], json!(2));
    }

    #[test]
    fn weights_literal_parsing() {
        // sqrt(1/4) canonicalizes to the exact rational 1/2.
        let (value, _) = dispatch_line("spectrum --weights sqrt(1/4),1,1 --degree 1").unwrap();
        assert_eq!(value["exterior"][0], json!("1/2"));
        let err = Cli::try_parse_from(args("spectrum --degree 1")).unwrap();
        assert!(matches!(dispatch(&err.cmd), Err(Outcome::Input(_))));
    }

    #[test]
    fn exit_code_for_bad_subcommand() {
        assert_eq!(run(args("no-such-command")), EXIT_INPUT);
    }

    #[test]
    fn lab_riccati_small_run_passes() {
        let (value, ok) =
            dispatch_line("lab-riccati --m 2 --delta -0.25 --seed 7 --t-end 2 --h 0.001")
                .unwrap();
        assert!(ok, "checks: {}", value["checks"]);
    }
}
