//! Job parsing, dispatch and report rendering for the `endohom` binary.

pub mod job;
pub mod run;

pub use job::{parse_job, Command, EndoSpec, Format, JobSpec, ModuleSpec, RawJob};
pub use run::{run, Outcome, Report, Status, ENGINE_VERSION, SCHEMA_ID};

/// Usage text printed for unknown commands and argument errors.
pub fn usage() -> String {
    let cmds: Vec<&str> = Command::ALL.iter().map(|c| c.name()).collect();
    format!(
        "usage: endohom [--file JOB] [--nmax N] [--e E] [--window W] [--tolerance T] [--json PATH] [--seed S] \
         [COMMAND] [key=value ...]

commands: {}

keys: p, vars, weights, ideal, module (k | R | R^n | [[..], ..]), module2,
      endo (frobenius(e) | projection | [images]), endo2, extra, cmd, nmax, e,
      window, tolerance, nupto, format (text | json), seed

exit codes: 0 consistent or done, 2 violated check, 1 error
",
        cmds.join(", ")
    )
}
