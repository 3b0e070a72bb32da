use std::process::{Command as Process, Output};

use proptest::prelude::*;
use serde_json::Value;

use endohom_cli::{parse_job, run, Command, EndoSpec, Format, JobSpec, ModuleSpec};

const R2: &str = "p=2 vars=[x] ideal=[x^2]";
const R4: &str = "p=2 vars=[x, y] ideal=[x^2, x*y, y^2]";
const POLY2: &str = "p=2 vars=[x, y]";

fn endohom(args: &[&str]) -> Output {
    Process::new(env!("CARGO_BIN_EXE_endohom")).args(args).output().expect("binary runs")
}

fn schema() -> jsonschema::Validator {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/schema/report.v1.json")).unwrap();
    let schema: Value = serde_json::from_str(&text).unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

fn assert_valid(v: &jsonschema::Validator, report: &Value) {
    let errors: Vec<String> = v.iter_errors(report).map(|e| format!("{e} at {}", e.instance_path)).collect();
    assert!(errors.is_empty(), "{errors:#?}\n{report:#}");
}

/// One job per command, small enough to run quickly.
fn one_job_per_command() -> Vec<String> {
    vec![
        format!("{R4} module=k cmd=betti nmax=6"),
        format!("{R2} module=R cmd=betti-phi nmax=6"),
        format!("{R2} module=R cmd=bass-phi nmax=6"),
        format!("{R4} module=k cmd=tor-lengths nmax=5"),
        format!("{R2} module=k cmd=curvature nmax=8"),
        format!("{POLY2} module=k cmd=kunz nmax=6"),
        format!("p=2 vars=[x, y] ideal=[x*y] cmd=ci nmax=8"),
        format!("{R4} module=k cmd=check-thm nmax=8"),
        format!("{R2} module=k cmd=check-duality nmax=6"),
        format!("{R2} module=R cmd=check-composition nmax=7"),
        format!("{R4} cmd=loewy"),
        format!("p=2 vars=[x] module=R cmd=flat-length nupto=3"),
        format!("p=2 vars=[x, y] ideal=[x*y] module=R extra=[x + y] cmd=poincare-id nmax=6"),
    ]
}

#[test]
fn every_command_produces_a_schema_valid_report() {
    let v = schema();
    let jobs = one_job_per_command();
    let mut seen = Vec::new();
    for text in &jobs {
        let job = parse_job(text).unwrap();
        let out = run(&job);
        let report: Value = serde_json::from_str(&out.report.to_json()).unwrap();
        assert_valid(&v, &report);
        assert_ne!(report["status"], "error", "{text}: {report:#}");
        seen.push(job.cmd);
    }
    for c in Command::ALL {
        assert!(seen.contains(&c), "no job for {c}");
    }
}

#[test]
fn error_reports_are_schema_valid() {
    let v = schema();
    // Tor lengths need an artinian target; F2[x] under the projection is not.
    let job = parse_job("p=2 vars=[x] module=R endo=projection cmd=tor-lengths nmax=4").unwrap();
    let report: Value = serde_json::from_str(&run(&job).report.to_json()).unwrap();
    assert_valid(&v, &report);
    assert_eq!(report["status"], "error");
    assert_eq!(report["exit_code"], 1);
    assert!(report["error"]["code"].as_str().unwrap().starts_with("E_"));
}

#[test]
fn consistent_checks_exit_zero() {
    let kunz = endohom(&["kunz", "p=2", "vars=[x, y]", "module=R", "nmax=6"]);
    assert_eq!(kunz.status.code(), Some(0), "{}", String::from_utf8_lossy(&kunz.stderr));
    assert!(String::from_utf8_lossy(&kunz.stdout).contains("kunz: Consistent"));

    let thm = endohom(&["check-thm", "p=2", "vars=[x, y]", "ideal=[x^2, x*y, y^2]", "module=k"]);
    assert_eq!(thm.status.code(), Some(0), "{}", String::from_utf8_lossy(&thm.stderr));
}

#[test]
fn unknown_commands_print_usage() {
    let out = endohom(&["frobnicate", "p=2", "vars=[x]"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("unknown command") && err.contains("usage:"), "{err}");

    let out = endohom(&["p=2", "vars=[x]"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("usage:"));
}

#[test]
fn parse_errors_exit_one_with_a_position() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let out = endohom(&["betti", "p=2", "vars=[x]", "ideal=[x**2]", "--json", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("E_PARSE") && err.contains("line 1"), "{err}");
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_valid(&schema(), &report);
    assert_eq!(report["error"]["code"], "E_PARSE");
}

#[test]
fn job_files_flags_and_json_output() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("job.txt");
    std::fs::write(&file, "# residue field of the cusp\np=2\nvars=[a, b]\nweights=[2, 3]\nideal=[a^3 + b^2]\nmodule=k\nnmax=3\n")
        .unwrap();
    let report = dir.path().join("out.json");
    let out = endohom(&[
        "--file",
        file.to_str().unwrap(),
        "--nmax",
        "5",
        "--seed",
        "7",
        "--json",
        report.to_str().unwrap(),
        "betti",
        "format=json",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let written = std::fs::read_to_string(&report).unwrap();
    assert_eq!(String::from_utf8_lossy(&out.stdout), written);
    let report: Value = serde_json::from_str(&written).unwrap();
    assert_valid(&schema(), &report);
    assert_eq!(report["job"]["nmax"], "5");
    assert_eq!(report["job"]["seed"], "7");
    // The cusp is a hypersurface, so its residue field has Betti numbers 1, 2, 2, ...
    let values: Vec<u64> =
        report["result"]["table"]["values"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    assert_eq!(values, vec![1, 2, 2, 2, 2, 2]);
}

#[test]
fn violated_checks_exit_two() {
    // With zero tolerance the finite-window rate estimates of R4 cannot agree exactly.
    let args = ["check-thm", "p=2", "vars=[x, y]", "ideal=[x^2, x*y, y^2]", "module=k", "--tolerance", "0"];
    let out = endohom(&args);
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("main_theorem: Violated at degree 8"));
}

fn name() -> impl Strategy<Value = String> {
    prop::sample::select(vec!["x", "y", "z", "a", "b", "t0", "u_1"]).prop_map(str::to_string)
}

fn job_strategy() -> impl Strategy<Value = JobSpec> {
    let vars = prop::collection::btree_set(name(), 1..4).prop_map(|s| s.into_iter().collect::<Vec<_>>());
    let module = prop_oneof![
        Just(ModuleSpec::Residue),
        (1usize..4).prop_map(ModuleSpec::Free),
    ];
    let endo = prop_oneof![
        (1u32..4).prop_map(EndoSpec::Frobenius),
        Just(EndoSpec::Projection),
    ];
    (
        vars,
        prop::sample::select(vec![2u64, 3, 5, 7]),
        prop::option::of(module.clone()),
        prop::option::of(endo.clone()),
        prop::option::of(endo),
        prop::sample::select(Command::ALL.to_vec()),
        (1usize..12, 1u32..4, 2usize..6, 0u32..1000, 1u32..5, any::<bool>(), prop::option::of(any::<u64>())),
        module,
        any::<bool>(),
    )
        .prop_map(|(vars, p, module2, endo, endo2, cmd, (nmax, e, window, tol, nupto, json, seed), module, weighted)| {
            let weights = weighted.then(|| (1..=vars.len() as u32).collect());
            let ideal = if vars.len() > 1 { vec![format!("{}*{}", vars[0], vars[1])] } else { vec![] };
            let extra = vec![format!("{} + {}", vars[0], vars[vars.len() - 1])];
            JobSpec {
                p,
                ideal: if weighted { vec![] } else { ideal },
                extra: if vars.len() > 1 && !weighted { extra } else { vec![] },
                vars,
                weights,
                module,
                module2,
                endo,
                endo2,
                cmd,
                nmax,
                e,
                window,
                tolerance: tol as f64 / 100.0,
                nupto,
                format: if json { Format::Json } else { Format::Text },
                seed,
            }
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn rendered_jobs_parse_back(job in job_strategy()) {
        let text = job.render();
        let back = parse_job(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(back, job);
    }
}
