use std::fmt::Write as _;
use std::io::{self, Write};

/// Version tag written on the first line of every trace file.
pub const TRACE_VERSION_LINE: &str = "# mpm-trace v1";
pub const TRACE_HEADER: &str =
    "generation,best_objective,average_objective,diversity,stagnation,restarts,selection_fallbacks,elapsed_ms";

/// Per-generation snapshot. Generation 0 is the initial population.
#[derive(Debug, Clone, PartialEq)]
pub struct GenerationRecord {
    pub generation: u64,
    pub best_objective: i64,
    pub average_objective: f64,
    pub diversity: f64,
    pub stagnation: u32,
    /// Restarts so far.
    pub restarts: u64,
    /// Parent selections that fell back to unconstrained draws in this generation.
    pub selection_fallbacks: u64,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunTrace {
    pub records: Vec<GenerationRecord>,
}

impl RunTrace {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(TRACE_VERSION_LINE);
        out.push('\n');
        out.push_str(TRACE_HEADER);
        out.push('\n');
        for r in &self.records {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{:.3}",
                r.generation,
                r.best_objective,
                r.average_objective,
                r.diversity,
                r.stagnation,
                r.restarts,
                r.selection_fallbacks,
                r.elapsed_ms
            );
        }
        out
    }

    pub fn write_csv<W: Write>(&self, mut sink: W) -> io::Result<()> {
        sink.write_all(self.to_csv().as_bytes())
    }
}
