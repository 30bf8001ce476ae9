mod args;
mod commands;
mod setup;

use std::fs;
use std::process::ExitCode;

use clap::Parser;
use homocert::certificate::{content_hash, to_json};
use serde_json::{json, Value};

use args::{Cli, Command, Format};

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Cap(String),
    Refuted(String),
    Internal(String),
}

impl From<homocert::Error> for Failure {
    fn from(e: homocert::Error) -> Self {
        use homocert::Error as E;
        let msg = e.to_string();
        match e {
            E::CapExceeded { .. } => Failure::Cap(msg),
            E::Refuted(_) => Failure::Refuted(msg),
            E::IndexOutOfRange { .. }
            | E::RankMismatch { .. }
            | E::NotPrime(_)
            | E::Precondition(_)
            | E::ParameterMismatch(_)
            | E::Parse(_)
            | E::GenerationFailure
            | E::NotInAutR => Failure::Usage(msg),
            _ => Failure::Internal(msg),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    WrongVerdict,
    CapExceeded,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::WrongVerdict => "wrong-verdict",
            Status::CapExceeded => "cap-exceeded",
        }
    }

    fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::WrongVerdict => 1,
            Status::CapExceeded => 3,
        }
    }
}

pub struct Outcome {
    pub verdict: String,
    pub status: Status,
    pub result: Value,
    pub text: String,
    pub dot: Option<String>,
}

impl Outcome {
    /// A partial report for a run stopped by a cap or budget.
    pub fn cap(reason: String) -> Self {
        Outcome {
            verdict: "incomplete".into(),
            status: Status::CapExceeded,
            text: format!("stopped: {reason}\n"),
            result: json!({ "error": reason }),
            dot: None,
        }
    }

    fn refuted(reason: String) -> Self {
        Outcome {
            verdict: "refuted".into(),
            status: Status::WrongVerdict,
            text: format!("{reason}\n"),
            result: json!({ "error": reason }),
            dot: None,
        }
    }
}

const USAGE: u8 = 2;
const INTERNAL: u8 = 4;

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("HOMOCERT_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Usage(format!("HOMOCERT_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Internal(e.to_string()))
}

fn run(cmd: &Command) -> Result<Outcome, Failure> {
    let result = match cmd {
        Command::Phi(o) => commands::phi(o),
        Command::Group(o) => commands::group(o),
        Command::Witness(o) => commands::witness(o),
        Command::Chainrep(o) => commands::chainrep(o),
        Command::Intrep(o) => commands::intrep(o),
        Command::Hall { word, opts } => commands::hall(word, opts),
    };
    match result {
        Err(Failure::Cap(msg)) => Ok(Outcome::cap(msg)),
        Err(Failure::Refuted(msg)) => Ok(Outcome::refuted(msg)),
        other => other,
    }
}

/// The certificate document; `hash` covers every other field.
fn document(cmd: &Command, out: &Outcome) -> Value {
    let mut doc = json!({
        "command": cmd.name(),
        "config": serde_json::to_value(cmd.opts()).expect("config serializes"),
        "verdict": out.verdict,
        "status": out.status.label(),
        "result": out.result,
    });
    if let Command::Hall { word, .. } = cmd {
        doc["config"]["word"] = json!(word);
    }
    let hash = content_hash(&doc);
    doc["hash"] = json!(hash);
    doc
}

fn render(cmd: &Command, out: &Outcome) -> String {
    let doc = document(cmd, out);
    match cmd.opts().format {
        Format::Json => to_json(&doc),
        Format::Dot => out.dot.clone().unwrap_or_default(),
        Format::Txt => format!(
            "command: {}\nverdict: {}\nstatus: {}\nhash: {}\n{}",
            cmd.name(),
            out.verdict,
            out.status.label(),
            doc["hash"].as_str().unwrap_or_default(),
            out.text
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cmd = &cli.command;
    let opts = cmd.opts();
    if opts.format == Format::Dot && !matches!(cmd, Command::Hall { .. }) {
        eprintln!("error: --format dot is only available for hall");
        return ExitCode::from(USAGE);
    }
    let outcome = configure_threads().and_then(|()| run(cmd));
    let outcome = match outcome {
        Ok(o) => o,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(USAGE);
        }
        Err(Failure::Internal(msg) | Failure::Cap(msg) | Failure::Refuted(msg)) => {
            eprintln!("internal error: {msg}");
            return ExitCode::from(INTERNAL);
        }
    };
    let text = render(cmd, &outcome);
    match &opts.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(INTERNAL);
            }
        }
        None => print!("{text}"),
    }
    eprintln!("{}: {} ({})", cmd.name(), outcome.verdict, outcome.status.label());
    ExitCode::from(outcome.status.code())
}
