//! The run report: command echo, input digests, outcome, witnesses,
//! budget and timing. Everything except the timing line is deterministic.

use std::fmt::Write as _;
use std::time::Instant;

use labelab_core::search::SearchBudget;

/// Verdict of a command, mapped to the process exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Positive,
    Negative,
    Unknown,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Positive => 0,
            Verdict::Negative => 1,
            Verdict::Unknown => 3,
        }
    }
}

pub struct Report {
    command: String,
    start: Instant,
    pub inputs: Vec<(String, String)>,
    pub outcome: String,
    pub details: Vec<String>,
    pub witnesses: Vec<String>,
    pub budget: Option<SearchBudget>,
}

impl Report {
    pub fn new(args: &[String]) -> Self {
        Report {
            command: args.join(" "),
            start: Instant::now(),
            inputs: Vec::new(),
            outcome: String::new(),
            details: Vec::new(),
            witnesses: Vec::new(),
            budget: None,
        }
    }

    pub fn detail(&mut self, line: impl Into<String>) {
        self.details.push(line.into());
    }

    pub fn render(&self) -> String {
        let mut s = format!("command: {}\n", self.command);
        for (path, digest) in &self.inputs {
            let _ = writeln!(s, "input: {path} sha256={digest}");
        }
        let _ = writeln!(s, "outcome: {}", self.outcome);
        for d in &self.details {
            let _ = writeln!(s, "detail: {d}");
        }
        for w in &self.witnesses {
            let _ = writeln!(s, "witness: {w}");
        }
        if let Some(b) = &self.budget {
            let limit = b
                .time_limit
                .map_or("none".to_string(), |t| format!("{}s", t.as_secs_f64()));
            let _ = writeln!(
                s,
                "budget: max_nodes={} max_vertices={} time_limit={limit}",
                b.max_nodes, b.max_vertices
            );
        }
        let _ = writeln!(s, "time: {:.3}s", self.start.elapsed().as_secs_f64());
        s
    }
}
