use std::fmt;
use std::time::Instant;

use strongcol::SolveReport;

/// One `key=value` record per run, printed as a single line.
pub struct RunReport {
    fields: Vec<(&'static str, String)>,
    started: Instant,
}

impl RunReport {
    pub fn new(cmd: &'static str) -> Self {
        RunReport {
            fields: vec![("cmd", cmd.to_string())],
            started: Instant::now(),
        }
    }

    pub fn set(&mut self, key: &'static str, value: impl fmt::Display) -> &mut Self {
        let value = value.to_string().replace(char::is_whitespace, "_");
        match self.fields.iter_mut().find(|(k, _)| *k == key) {
            Some(slot) => slot.1 = value,
            None => self.fields.push((key, value)),
        }
        self
    }

    pub fn solve(&mut self, r: &SolveReport) -> &mut Self {
        self.set("regime", r.regime.map_or("-", |g| g.label()))
            .set("blocks", r.blocks)
            .set("max_degree", r.max_degree)
            .set("enlarge_calls", r.enlarge_calls)
            .set("max_chain", r.max_chain)
            .set("max_edits", r.max_edits)
            .set("independent_pivots", r.independent_pivots)
            .set("triangle", r.triangle)
            .set("two_edges", r.two_edges)
            .set("single_edge", r.single_edge)
    }

    pub fn finish(&mut self, status: &str, exit: u8) -> String {
        let elapsed = self.started.elapsed().as_secs_f64() * 1e3;
        self.set("status", status).set("exit", exit).set("elapsed_ms", format!("{elapsed:.3}"));
        self.to_string()
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, v)) in self.fields.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{k}={v}")?;
        }
        Ok(())
    }
}
