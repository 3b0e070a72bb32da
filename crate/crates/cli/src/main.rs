use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use endohom::Error;
use endohom_cli::{run, usage, Format, RawJob, Report};

#[derive(Parser, Debug)]
#[command(name = "endohom", version, about = "Betti and Bass numbers over contracting endomorphisms")]
struct Cli {
    /// Job file of key=value lines; items on the command line override it.
    #[arg(long, short)]
    file: Option<PathBuf>,
    #[arg(long)]
    nmax: Option<usize>,
    #[arg(long)]
    e: Option<u32>,
    #[arg(long)]
    window: Option<usize>,
    #[arg(long)]
    tolerance: Option<f64>,
    /// Also write the JSON report to this path.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Recorded in the report for reproducibility.
    #[arg(long)]
    seed: Option<u64>,
    /// A command name and key=value items.
    items: Vec<String>,
}

fn fail(message: &str) -> ExitCode {
    eprint!("{message}\n\n{}", usage());
    ExitCode::from(1)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if e.use_stderr() => return fail(&e.to_string()),
        Err(e) => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };

    let mut raw = RawJob::default();
    if let Some(path) = &cli.file {
        match std::fs::read_to_string(path) {
            Ok(text) => match RawJob::parse(&text, false) {
                Ok(r) => raw = r,
                Err(e) => return report_error(&cli, &e),
            },
            Err(e) => return fail(&format!("cannot read {}: {e}", path.display())),
        }
    }
    match RawJob::parse(&cli.items.join(" "), true) {
        Ok(r) => raw.merge(r),
        Err(e) => return report_error(&cli, &e),
    }
    if let Some(cmd) = raw.items.get("cmd") {
        if cmd.text.parse::<endohom_cli::Command>().is_err() {
            return fail(&format!("unknown command `{}`", cmd.text));
        }
    } else {
        return fail("no command given");
    }
    if let Some(v) = cli.nmax {
        raw.set("nmax", v);
    }
    if let Some(v) = cli.e {
        raw.set("e", v);
    }
    if let Some(v) = cli.window {
        raw.set("window", v);
    }
    if let Some(v) = cli.tolerance {
        raw.set("tolerance", v);
    }
    if let Some(v) = cli.seed {
        raw.set("seed", v);
    }
    let job = match raw.finish() {
        Ok(j) => j,
        Err(e) => return report_error(&cli, &e),
    };

    let outcome = run(&job);
    match job.format {
        Format::Text => print!("{}", outcome.text),
        Format::Json => print!("{}", outcome.report.to_json()),
    }
    if let Some(path) = &cli.json {
        if let Err(e) = std::fs::write(path, outcome.report.to_json()) {
            eprintln!("cannot write {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    ExitCode::from(outcome.report.exit_code as u8)
}

fn report_error(cli: &Cli, e: &Error) -> ExitCode {
    eprintln!("error[{}]: {e}", e.code());
    if let Some(path) = &cli.json {
        let _ = std::fs::write(path, Report::error(None, e).to_json());
    }
    ExitCode::from(1)
}
