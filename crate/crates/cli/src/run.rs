use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use endohom::frobenius::{make_endomorphism, EndoKind, EndoMap, DEFAULT_CERTIFICATE_BOUND};
use endohom::invariants::{
    bass_over, betti_numbers, betti_over, check_composition, check_duality, check_main_theorem, ci_test,
    curvature_estimate, flat_length_check, kunz_regularity_test, loewy_bound, poincare_identity_check,
    tor_lengths, BettiTable, CheckReport, GrowthEstimate, Over, Verdict,
};
use endohom::modules::QuotientRing;
use endohom::{Error, Result};

use crate::job::{Command, EndoSpec, JobSpec, ModuleSpec};

pub const SCHEMA_ID: &str = "endohom.report.v1";
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// A computation without a verdict finished.
    Ok,
    Consistent,
    Violated,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok | Status::Consistent => 0,
            Status::Violated => 2,
            Status::Error => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ErrorInfo {
    pub code: String,
    pub message: String,
}

impl From<&Error> for ErrorInfo {
    fn from(e: &Error) -> Self {
        ErrorInfo {
            code: e.code().to_string(),
            message: e.to_string(),
        }
    }
}

/// The machine-readable outcome of one job.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub engine_version: &'static str,
    pub command: Option<String>,
    /// Every job parameter, defaults included.
    pub job: BTreeMap<String, String>,
    pub status: Status,
    pub exit_code: i32,
    pub result: Option<Value>,
    pub error: Option<ErrorInfo>,
}

impl Report {
    pub fn error(job: Option<&JobSpec>, e: &Error) -> Report {
        Report {
            schema: SCHEMA_ID,
            engine_version: ENGINE_VERSION,
            command: job.map(|j| j.cmd.to_string()),
            job: job.map(job_map).unwrap_or_default(),
            status: Status::Error,
            exit_code: Status::Error.exit_code(),
            result: None,
            error: Some(e.into()),
        }
    }

    /// Pretty JSON with a trailing newline; byte-identical across runs.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}

fn job_map(job: &JobSpec) -> BTreeMap<String, String> {
    job.entries().into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// A finished job: the report and its human-readable rendering.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Report,
    pub text: String,
}

fn endo(ring: &Arc<QuotientRing>, spec: Option<&EndoSpec>) -> Result<EndoMap> {
    match spec.unwrap_or(&EndoSpec::Frobenius(1)) {
        EndoSpec::Frobenius(e) => EndoMap::frobenius(ring.clone(), *e),
        EndoSpec::Projection => EndoMap::projection(ring.clone()),
        EndoSpec::Images(g) => {
            let images = g.iter().map(|s| ring.poly().parse(s)).collect::<Result<Vec<_>>>()?;
            make_endomorphism(ring.clone(), images, DEFAULT_CERTIFICATE_BOUND)
        }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("results serialize")
}

/// What a command produced, before rendering.
enum Produced {
    Plain(Value, String),
    Check(CheckReport),
}

fn over_text(over: &Over) -> String {
    match over {
        Over::Ring => "over the ring".to_string(),
        Over::Endo { kind, e, images } => {
            let map = match kind {
                EndoKind::Frobenius(f) => format!("frobenius({f})"),
                EndoKind::Projection => "projection".to_string(),
                EndoKind::Substitution => format!("[{}]", images.join(", ")),
            };
            if *e == 1 {
                format!("through {map}")
            } else {
                format!("through {map} iterated {e} times")
            }
        }
    }
}

fn table_text(t: &BettiTable) -> String {
    let mut s = format!("{:?} numbers of {}, {}\n", t.kind, t.module_id, over_text(&t.over));
    for (n, v) in t.values.iter().enumerate() {
        let _ = writeln!(s, "  {n:>3}  {v}");
    }
    s
}

fn estimate_text(name: &str, g: &GrowthEstimate) -> String {
    format!(
        "  {name}: rate {:.4} (residual {:.2e}), degree fit {:.3}, complexity {:?}\n",
        g.fitted_rate, g.residual, g.poly_degree_fit, g.complexity
    )
}

fn check_text(r: &CheckReport) -> String {
    let mut s = format!("{}: {:?}", r.name, r.verdict);
    if let Some(d) = r.witness_degree {
        let _ = write!(s, " at degree {d}");
    }
    s.push('\n');
    for (k, v) in &r.inputs {
        let _ = writeln!(s, "  {k} = {v}");
    }
    for (k, v) in &r.series {
        let vals: Vec<String> = v.values.iter().map(u64::to_string).collect();
        let _ = writeln!(s, "  {k} (from {}): {}", v.start, vals.join(" "));
    }
    for (k, g) in &r.estimates {
        s.push_str(&estimate_text(k, g));
    }
    for (k, v) in &r.scalars {
        let _ = writeln!(s, "  {k} = {v}");
    }
    for (k, v) in &r.flags {
        let _ = writeln!(s, "  {k}: {v}");
    }
    s
}

fn produce(job: &JobSpec) -> Result<Produced> {
    let ring = job.ring()?;
    let m = JobSpec::build_module(&ring, &job.module)?;
    let phi = || endo(&ring, job.endo.as_ref());
    let (nmax, e, w, tol) = (job.nmax, job.e, job.window, job.tolerance);
    Ok(match job.cmd {
        Command::Betti => {
            let t = betti_numbers(&m, nmax)?;
            Produced::Plain(json!({ "table": to_value(&t) }), table_text(&t))
        }
        Command::BettiPhi => {
            let t = betti_over(&phi()?, e, &m, nmax)?;
            Produced::Plain(json!({ "table": to_value(&t) }), table_text(&t))
        }
        Command::BassPhi => {
            let t = bass_over(&phi()?, e, &m, nmax)?;
            Produced::Plain(json!({ "table": to_value(&t) }), table_text(&t))
        }
        Command::TorLengths => {
            let l = tor_lengths(&phi()?, e, &m, nmax)?;
            let text = l.iter().enumerate().map(|(n, v)| format!("  {n:>3}  {v}\n")).collect::<String>();
            Produced::Plain(json!({ "lengths": l }), format!("Tor lengths\n{text}"))
        }
        Command::Curvature => {
            let phi = phi()?;
            let b = betti_over(&phi, e, &m, nmax)?;
            let i = bass_over(&phi, e, &m, nmax)?;
            let gb = curvature_estimate(&b.values, w, tol)?;
            let gi = curvature_estimate(&i.values, w, tol)?;
            let text = format!(
                "{}{}{}{}",
                table_text(&b),
                estimate_text("betti", &gb),
                table_text(&i),
                estimate_text("bass", &gi)
            );
            Produced::Plain(
                json!({
                    "betti": { "table": to_value(&b), "estimate": to_value(&gb) },
                    "bass": { "table": to_value(&i), "estimate": to_value(&gi) },
                }),
                text,
            )
        }
        Command::Kunz => Produced::Check(kunz_regularity_test(&m, e, nmax)?),
        Command::Ci => {
            let phi = job.endo.as_ref().map(|s| endo(&ring, Some(s))).transpose()?;
            Produced::Check(ci_test(&ring, phi.as_ref().map(|f| (f, e)), nmax, w, tol)?)
        }
        Command::CheckThm => Produced::Check(check_main_theorem(&phi()?, e, &m, nmax, w, tol)?),
        Command::CheckDuality => Produced::Check(check_duality(&phi()?, e, &m, nmax)?),
        Command::CheckComposition => {
            let rho = phi()?;
            let phi2 = match &job.endo2 {
                Some(s) => endo(&ring, Some(s))?,
                None => rho.clone(),
            };
            let m2 = JobSpec::build_module(&ring, job.module2.as_ref().unwrap_or(&job.module))?;
            Produced::Check(check_composition(&rho, &phi2, &m, &m2, nmax, w, tol)?)
        }
        Command::Loewy => {
            let i = loewy_bound(&ring)?;
            Produced::Plain(json!({ "loewy_bound": i }), format!("Loewy bound: {i}\n"))
        }
        Command::FlatLength => Produced::Check(flat_length_check(&phi()?, e, &m, job.nupto)?),
        Command::PoincareId => {
            let extra = job.extra.iter().map(|s| ring.poly().parse(s)).collect::<Result<Vec<_>>>()?;
            Produced::Check(poincare_identity_check(&phi()?, e, &m, &extra, nmax)?)
        }
    })
}

/// Runs a validated job. Engine errors become error reports.
pub fn run(job: &JobSpec) -> Outcome {
    match produce(job) {
        Err(e) => Outcome {
            text: format!("error[{}]: {e}\n", e.code()),
            report: Report::error(Some(job), &e),
        },
        Ok(p) => {
            let (status, result, body) = match p {
                Produced::Plain(v, text) => (Status::Ok, v, text),
                Produced::Check(r) => {
                    let status = match r.verdict {
                        Verdict::Consistent => Status::Consistent,
                        Verdict::Violated => Status::Violated,
                    };
                    (status, json!({ "check": to_value(&r) }), check_text(&r))
                }
            };
            let header = format!("{} over {}\n", job.cmd, ring_text(job));
            Outcome {
                text: header + &body,
                report: Report {
                    schema: SCHEMA_ID,
                    engine_version: ENGINE_VERSION,
                    command: Some(job.cmd.to_string()),
                    job: job_map(job),
                    status,
                    exit_code: status.exit_code(),
                    result: Some(result),
                    error: None,
                },
            }
        }
    }
}

fn ring_text(job: &JobSpec) -> String {
    let base = format!("F_{}[{}]", job.p, job.vars.join(","));
    let module = match &job.module {
        ModuleSpec::Matrix(_) => "coker".to_string(),
        m => m.to_string(),
    };
    if job.ideal.is_empty() {
        format!("{base}, module {module}")
    } else {
        format!("{base}/({}), module {module}", job.ideal.join(", "))
    }
}
