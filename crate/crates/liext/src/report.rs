//! Deterministic report assembly. A report is a header plus ordered
//! sections; each section carries human readable lines and a fenced machine
//! block of `key = value` pairs. Two runs over identical inputs render to
//! identical bytes.

use std::fmt::Write as _;

/// Rendering mode: `Text` interleaves the narrative lines with the machine
/// blocks, `Machine` emits the fenced blocks only.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Debug, Clone)]
pub struct Section {
    pub title: String,
    pub status: String,
    pub failed: bool,
    pub lines: Vec<String>,
    pub data: Vec<(String, String)>,
}

impl Section {
    pub fn new(title: impl Into<String>) -> Section {
        Section {
            title: title.into(),
            status: "ok".to_string(),
            failed: false,
            lines: Vec::new(),
            data: Vec::new(),
        }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn datum(&mut self, key: impl Into<String>, value: impl ToString) {
        self.data.push((key.into(), value.to_string()));
    }

    /// Mark the section's claim as not met. The run keeps going; the exit
    /// code remembers.
    pub fn fail(&mut self, status: impl Into<String>) {
        self.status = status.into();
        self.failed = true;
    }

    /// Downgrade the status label without failing the run.
    pub fn note_status(&mut self, status: impl Into<String>) {
        self.status = status.into();
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub script: String,
    pub digest: String,
    pub seed: u64,
    pub sections: Vec<Section>,
}

impl Report {
    /// `script` is a display label; `source` is the exact text the digest
    /// covers.
    pub fn new(script: impl Into<String>, source: &str, seed: u64) -> Report {
        Report {
            script: script.into(),
            digest: fnv1a_digest(source.as_bytes()),
            seed,
            sections: Vec::new(),
        }
    }

    pub fn push(&mut self, section: Section) {
        self.sections.push(section);
    }

    pub fn failed(&self) -> bool {
        self.sections.iter().any(|s| s.failed)
    }

    pub fn exit_code(&self) -> i32 {
        if self.failed() {
            1
        } else {
            0
        }
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Text => {
                let _ = writeln!(out, "liext {} :: {}", env!("CARGO_PKG_VERSION"), self.script);
                let _ = writeln!(out, "digest = {}", self.digest);
                let _ = writeln!(out, "seed = {}", self.seed);
                for s in &self.sections {
                    let _ = writeln!(out);
                    let _ = writeln!(out, "== {} [{}]", s.title, s.status);
                    for l in &s.lines {
                        let _ = writeln!(out, "  {l}");
                    }
                    render_block(&mut out, s);
                }
            }
            Format::Machine => {
                out.push_str("::begin machine\n");
                let _ = writeln!(out, "tool = liext");
                let _ = writeln!(out, "version = {}", env!("CARGO_PKG_VERSION"));
                let _ = writeln!(out, "script = {}", self.script);
                let _ = writeln!(out, "digest = {}", self.digest);
                let _ = writeln!(out, "seed = {}", self.seed);
                out.push_str("::end machine\n");
                for s in &self.sections {
                    render_block(&mut out, s);
                }
            }
        }
        out
    }
}

fn render_block(out: &mut String, s: &Section) {
    out.push_str("::begin machine\n");
    let _ = writeln!(out, "section = {}", s.title);
    let _ = writeln!(out, "status = {}", s.status);
    for (k, v) in &s.data {
        debug_assert!(!k.contains('\n') && !v.contains('\n'), "machine lines are single lines");
        let _ = writeln!(out, "{k} = {v}");
    }
    out.push_str("::end machine\n");
}

/// 64 bit FNV-1a over the given bytes, as `fnv1a:` plus 16 hex digits.
pub fn fnv1a_digest(bytes: &[u8]) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x100_0000_01b3);
    }
    format!("fnv1a:{h:016x}")
}
