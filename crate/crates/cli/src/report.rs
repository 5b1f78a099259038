use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    Unsupported,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Unsupported => 2,
        }
    }

    pub fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Unsupported => "unsupported",
        })
    }
}

/// The document every command produces.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub verdict: Verdict,
    pub findings: Value,
    pub seed: u64,
    pub version: String,
    /// Human-readable lines; not part of the JSON document.
    #[serde(skip)]
    pub summary: Vec<String>,
}

impl Report {
    pub fn new(command: impl Into<String>, verdict: Verdict, findings: Value, seed: u64) -> Report {
        Report {
            command: command.into(),
            verdict,
            findings,
            seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            summary: Vec::new(),
        }
    }

    pub fn with_summary(mut self, lines: Vec<String>) -> Report {
        self.summary = lines;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for line in &self.summary {
            out.push_str(line);
            out.push('\n');
        }
        out.push_str(&format!("{}: {}\n", self.command, self.verdict));
        out
    }
}
