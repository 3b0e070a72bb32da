//! The line-oriented `key=value` job format.
//!
//! ```text
//! p=2 vars=[x, y] ideal=[x*y]
//! module=k endo=frobenius(1)
//! cmd=betti-phi nmax=8
//! ```
//!
//! Items are separated by whitespace outside brackets and parentheses; `#`
//! starts a comment. Later items override earlier ones.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use endohom::modules::{FinModule, QuotientRing};
use endohom::polyring::{PolyRing, Polynomial};
use endohom::{Error, Result};

pub const DEFAULT_NMAX: usize = 8;
pub const DEFAULT_E: u32 = 1;
pub const DEFAULT_NUPTO: u32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Command {
    Betti,
    BettiPhi,
    BassPhi,
    TorLengths,
    Curvature,
    Kunz,
    Ci,
    CheckThm,
    CheckDuality,
    CheckComposition,
    Loewy,
    FlatLength,
    PoincareId,
}

impl Command {
    pub const ALL: [Command; 13] = [
        Command::Betti,
        Command::BettiPhi,
        Command::BassPhi,
        Command::TorLengths,
        Command::Curvature,
        Command::Kunz,
        Command::Ci,
        Command::CheckThm,
        Command::CheckDuality,
        Command::CheckComposition,
        Command::Loewy,
        Command::FlatLength,
        Command::PoincareId,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Betti => "betti",
            Command::BettiPhi => "betti-phi",
            Command::BassPhi => "bass-phi",
            Command::TorLengths => "tor-lengths",
            Command::Curvature => "curvature",
            Command::Kunz => "kunz",
            Command::Ci => "ci",
            Command::CheckThm => "check-thm",
            Command::CheckDuality => "check-duality",
            Command::CheckComposition => "check-composition",
            Command::Loewy => "loewy",
            Command::FlatLength => "flat-length",
            Command::PoincareId => "poincare-id",
        }
    }
}

impl FromStr for Command {
    type Err = ();

    fn from_str(s: &str) -> std::result::Result<Self, ()> {
        Command::ALL.into_iter().find(|c| c.name() == s).ok_or(())
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleSpec {
    /// `k`
    Residue,
    /// `R` or `R^n`
    Free(usize),
    /// `[[f11, f12], [f21, f22]]`: presentation matrix by rows.
    Matrix(Vec<Vec<String>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EndoSpec {
    /// `frobenius(e)`
    Frobenius(u32),
    /// `projection`: every variable to zero.
    Projection,
    /// `[g1, ..., gn]`: images of the variables.
    Images(Vec<String>),
}

/// A fully specified job. Defaults are filled in by the parser, so two jobs
/// compare equal exactly when they run the same computation.
#[derive(Clone, Debug, PartialEq)]
pub struct JobSpec {
    pub p: u64,
    pub vars: Vec<String>,
    pub weights: Option<Vec<u32>>,
    pub ideal: Vec<String>,
    pub module: ModuleSpec,
    pub module2: Option<ModuleSpec>,
    pub endo: Option<EndoSpec>,
    pub endo2: Option<EndoSpec>,
    pub extra: Vec<String>,
    pub cmd: Command,
    pub nmax: usize,
    pub e: u32,
    pub window: usize,
    pub tolerance: f64,
    pub nupto: u32,
    pub format: Format,
    pub seed: Option<u64>,
}

fn list(items: &[String]) -> String {
    format!("[{}]", items.join(", "))
}

impl fmt::Display for ModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleSpec::Residue => f.write_str("k"),
            ModuleSpec::Free(1) => f.write_str("R"),
            ModuleSpec::Free(n) => write!(f, "R^{n}"),
            ModuleSpec::Matrix(rows) => {
                let rows: Vec<String> = rows.iter().map(|r| list(r)).collect();
                f.write_str(&list(&rows))
            }
        }
    }
}

impl fmt::Display for EndoSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EndoSpec::Frobenius(e) => write!(f, "frobenius({e})"),
            EndoSpec::Projection => f.write_str("projection"),
            EndoSpec::Images(g) => f.write_str(&list(g)),
        }
    }
}

impl JobSpec {
    /// All keys with their values in a fixed order; optional keys only when set.
    pub fn entries(&self) -> Vec<(&'static str, String)> {
        let mut out = vec![("p", self.p.to_string()), ("vars", list(&self.vars))];
        if let Some(w) = &self.weights {
            out.push(("weights", list(&w.iter().map(u32::to_string).collect::<Vec<_>>())));
        }
        out.push(("ideal", list(&self.ideal)));
        out.push(("module", self.module.to_string()));
        if let Some(m) = &self.module2 {
            out.push(("module2", m.to_string()));
        }
        if let Some(x) = &self.endo {
            out.push(("endo", x.to_string()));
        }
        if let Some(x) = &self.endo2 {
            out.push(("endo2", x.to_string()));
        }
        if !self.extra.is_empty() {
            out.push(("extra", list(&self.extra)));
        }
        out.push(("cmd", self.cmd.to_string()));
        out.push(("nmax", self.nmax.to_string()));
        out.push(("e", self.e.to_string()));
        out.push(("window", self.window.to_string()));
        out.push(("tolerance", self.tolerance.to_string()));
        out.push(("nupto", self.nupto.to_string()));
        out.push((
            "format",
            match self.format {
                Format::Text => "text",
                Format::Json => "json",
            }
            .to_string(),
        ));
        if let Some(s) = self.seed {
            out.push(("seed", s.to_string()));
        }
        out
    }

    /// One `key=value` line per entry; `parse_job(&job.render())` returns `job`.
    pub fn render(&self) -> String {
        self.entries().iter().map(|(k, v)| format!("{k}={v}\n")).collect()
    }

    pub fn poly_ring(&self) -> Result<PolyRing> {
        let n = self.vars.len();
        let w = self.weights.clone().unwrap_or_else(|| vec![1; n]);
        PolyRing::with_weights(self.p, self.vars.clone(), w)
    }

    pub fn ring(&self) -> Result<Arc<QuotientRing>> {
        let poly = self.poly_ring()?;
        let gens = self.ideal.iter().map(|s| poly.parse(s)).collect::<Result<Vec<_>>>()?;
        Ok(Arc::new(QuotientRing::new(poly, gens)?))
    }

    pub fn build_module(ring: &Arc<QuotientRing>, spec: &ModuleSpec) -> Result<FinModule> {
        Ok(match spec {
            ModuleSpec::Residue => FinModule::residue_field(ring.clone()),
            ModuleSpec::Free(n) => FinModule::free(ring.clone(), *n),
            ModuleSpec::Matrix(rows) => {
                let rows = rows
                    .iter()
                    .map(|r| r.iter().map(|s| ring.poly().parse(s)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<Vec<Polynomial>>>>()?;
                FinModule::from_rows(ring.clone(), &rows)?
            }
        })
    }
}

/// A value with the position (1-based line and column) where it starts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Located {
    pub text: String,
    pub line: usize,
    pub column: usize,
}

impl Located {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    fn at(&self, offset: usize, text: &str) -> Located {
        Located {
            text: text.to_string(),
            line: self.line,
            column: self.column + offset,
        }
    }
}

pub const KEYS: [&str; 17] = [
    "p", "vars", "weights", "ideal", "module", "module2", "endo", "endo2", "extra", "cmd", "nmax", "e", "window",
    "tolerance", "nupto", "format", "seed",
];

/// Items of a job before validation; later `set`s override earlier ones.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawJob {
    pub items: BTreeMap<String, Located>,
}

/// Splits a line into whitespace-separated items, keeping brackets together.
fn split_items(line: &str) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut start = 0;
    for (i, ch) in line.chars().enumerate() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            _ => {}
        }
        if ch.is_whitespace() && depth <= 0 {
            if !cur.is_empty() {
                out.push((start, std::mem::take(&mut cur)));
            }
        } else {
            if cur.is_empty() {
                start = i;
            }
            cur.push(ch);
        }
    }
    if !cur.is_empty() {
        out.push((start, cur));
    }
    out
}

impl RawJob {
    /// Reads `key=value` items from job text. With `allow_command`, a bare
    /// word is taken as `cmd=word` (command-line use).
    pub fn parse(text: &str, allow_command: bool) -> Result<RawJob> {
        let mut raw = RawJob::default();
        for (ln, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("");
            for (col, item) in split_items(line) {
                let pos = |offset: usize| Located {
                    text: String::new(),
                    line: ln + 1,
                    column: col + 1 + offset,
                };
                match item.split_once('=') {
                    Some((key, value)) => {
                        if !KEYS.contains(&key) {
                            return Err(pos(0).error(format!("unknown key `{key}`")));
                        }
                        raw.items.insert(key.to_string(), pos(key.chars().count() + 1).at(0, value));
                    }
                    None if allow_command => {
                        raw.items.insert("cmd".into(), pos(0).at(0, &item));
                    }
                    None => return Err(pos(0).error(format!("expected key=value, found `{item}`"))),
                }
            }
        }
        Ok(raw)
    }

    pub fn set(&mut self, key: &str, value: impl ToString) {
        self.items.insert(
            key.to_string(),
            Located {
                text: value.to_string(),
                line: 0,
                column: 0,
            },
        );
    }

    pub fn merge(&mut self, other: RawJob) {
        self.items.extend(other.items);
    }

    fn get(&self, key: &str) -> Option<&Located> {
        self.items.get(key)
    }

    fn number<T: FromStr>(&self, key: &str, default: Option<T>) -> Result<T> {
        match self.get(key) {
            Some(v) => v
                .text
                .trim()
                .parse()
                .map_err(|_| v.error(format!("`{}` is not a valid value for {key}", v.text))),
            None => default.ok_or_else(|| Error::Parse {
                line: 0,
                column: 0,
                message: format!("missing key `{key}`"),
            }),
        }
    }

    /// Validates everything that can be checked without running the engine:
    /// syntax, variable names, polynomial strings (with positions), and
    /// homogeneity of the ideal.
    pub fn finish(&self) -> Result<JobSpec> {
        let p: u64 = self.number("p", None)?;
        let vars_v = self.get("vars").ok_or_else(|| missing("vars"))?;
        let vars: Vec<String> = parse_list(vars_v)?.into_iter().map(|v| v.text).collect();
        for (i, v) in vars.iter().enumerate() {
            let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok || vars[..i].contains(v) {
                return Err(vars_v.error(format!("invalid or repeated variable name `{v}`")));
            }
        }
        let weights = match self.get("weights") {
            Some(w) => Some(
                parse_list(w)?
                    .iter()
                    .map(|x| {
                        x.text
                            .parse::<u32>()
                            .ok()
                            .filter(|&v| v > 0)
                            .ok_or_else(|| x.error(format!("`{}` is not a positive weight", x.text)))
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
            None => None,
        };
        let cmd_v = self.get("cmd").ok_or_else(|| missing("cmd"))?;
        let cmd: Command = cmd_v
            .text
            .parse()
            .map_err(|_| cmd_v.error(format!("unknown command `{}`", cmd_v.text)))?;
        let format = match self.get("format") {
            None => Format::Text,
            Some(v) => match v.text.as_str() {
                "text" => Format::Text,
                "json" => Format::Json,
                _ => return Err(v.error(format!("unknown format `{}`", v.text))),
            },
        };

        let mut job = JobSpec {
            p,
            vars,
            weights,
            ideal: Vec::new(),
            module: ModuleSpec::Free(1),
            module2: None,
            endo: None,
            endo2: None,
            extra: Vec::new(),
            cmd,
            nmax: self.number("nmax", Some(DEFAULT_NMAX))?,
            e: self.number("e", Some(DEFAULT_E))?,
            window: self.number("window", Some(endohom::invariants::DEFAULT_WINDOW))?,
            tolerance: self.number("tolerance", Some(endohom::invariants::DEFAULT_TOLERANCE))?,
            nupto: self.number("nupto", Some(DEFAULT_NUPTO))?,
            format,
            seed: self.get("seed").map(|_| self.number("seed", None)).transpose()?,
        };
        if !(job.tolerance >= 0.0 && job.tolerance.is_finite()) {
            return Err(self.get("tolerance").unwrap().error("tolerance must be a non-negative number"));
        }
        if job.e == 0 {
            return Err(self.get("e").unwrap().error("e must be positive"));
        }

        let poly = job.poly_ring()?;
        let polys = |key: &str| -> Result<Vec<String>> {
            match self.get(key) {
                None => Ok(Vec::new()),
                Some(v) => parse_list(v)?.iter().map(|x| check_poly(&poly, x)).collect(),
            }
        };
        job.ideal = polys("ideal")?;
        job.extra = polys("extra")?;
        job.module = match self.get("module") {
            Some(v) => parse_module(&poly, v)?,
            None => ModuleSpec::Free(1),
        };
        job.module2 = self.get("module2").map(|v| parse_module(&poly, v)).transpose()?;
        job.endo = self.get("endo").map(|v| parse_endo(&poly, v)).transpose()?;
        job.endo2 = self.get("endo2").map(|v| parse_endo(&poly, v)).transpose()?;

        // homogeneity and module shapes
        let ring = job.ring()?;
        JobSpec::build_module(&ring, &job.module)?;
        if let Some(m) = &job.module2 {
            JobSpec::build_module(&ring, m)?;
        }
        Ok(job)
    }
}

fn missing(key: &str) -> Error {
    Error::Parse {
        line: 0,
        column: 0,
        message: format!("missing key `{key}`"),
    }
}

/// Parses a polynomial in place and returns its trimmed text.
fn check_poly(poly: &PolyRing, v: &Located) -> Result<String> {
    poly.parse_at(&v.text, v.line, v.column)?;
    Ok(v.text.clone())
}

/// Splits `[a, b, ...]` at top-level commas, trimming each element.
pub fn parse_list(v: &Located) -> Result<Vec<Located>> {
    let t = v.text.as_str();
    let inner = t
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| v.error(format!("expected a bracketed list, found `{t}`")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let chars: Vec<char> = inner.chars().collect();
    let mut push = |from: usize, to: usize| {
        let piece: String = chars[from..to].iter().collect();
        let lead = piece.chars().take_while(|c| c.is_whitespace()).count();
        let item = piece.trim();
        if item.is_empty() {
            return Err(v.at(1 + from, "").error("empty list element"));
        }
        out.push(v.at(1 + from + lead, item));
        Ok(())
    };
    for (i, &c) in chars.iter().enumerate() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' if depth == 0 => {
                push(start, i)?;
                start = i + 1;
            }
            _ => {}
        }
    }
    push(start, chars.len())?;
    Ok(out)
}

fn parse_module(poly: &PolyRing, v: &Located) -> Result<ModuleSpec> {
    let t = v.text.trim();
    if t == "k" {
        return Ok(ModuleSpec::Residue);
    }
    if t == "R" {
        return Ok(ModuleSpec::Free(1));
    }
    if let Some(n) = t.strip_prefix("R^") {
        return n
            .parse()
            .map(ModuleSpec::Free)
            .map_err(|_| v.error(format!("bad free rank `{n}`")));
    }
    let rows = parse_list(v)?
        .iter()
        .map(|row| parse_list(row)?.iter().map(|x| check_poly(poly, x)).collect())
        .collect::<Result<Vec<Vec<String>>>>()?;
    if rows.is_empty() {
        return Err(v.error("a presentation matrix needs at least one row"));
    }
    Ok(ModuleSpec::Matrix(rows))
}

fn parse_endo(poly: &PolyRing, v: &Located) -> Result<EndoSpec> {
    let t = v.text.trim();
    if t == "projection" {
        return Ok(EndoSpec::Projection);
    }
    if let Some(e) = t.strip_prefix("frobenius(").and_then(|s| s.strip_suffix(')')) {
        return match e.trim().parse::<u32>() {
            Ok(e) if e > 0 => Ok(EndoSpec::Frobenius(e)),
            _ => Err(v.error(format!("bad Frobenius exponent `{e}`"))),
        };
    }
    if t.starts_with('[') {
        let images = parse_list(v)?.iter().map(|x| check_poly(poly, x)).collect::<Result<Vec<_>>>()?;
        return Ok(EndoSpec::Images(images));
    }
    Err(v.error(format!("expected frobenius(e), projection or an image list, found `{t}`")))
}

/// Parses and validates job text.
pub fn parse_job(text: &str) -> Result<JobSpec> {
    RawJob::parse(text, false)?.finish()
}
