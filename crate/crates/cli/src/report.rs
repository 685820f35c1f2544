use std::fmt;
use std::time::Duration;

use vcstream::SolveOutcome;

/// Space separated `key=value` tokens in insertion order.
#[derive(Default, Debug)]
pub struct Report {
    fields: Vec<(String, String)>,
}

impl Report {
    pub fn push(&mut self, key: &str, value: impl fmt::Display) -> &mut Self {
        self.fields.push((key.to_string(), value.to_string()));
        self
    }

    pub fn outcome(&mut self, o: &SolveOutcome, wall: Duration) -> &mut Self {
        self.push("verdict", &o.verdict);
        self.push("solution", o.verdict.solution().map_or("-".to_string(), join));
        self.push("passes", o.passes);
        self.push("peak_words", o.peak_words);
        self.push("wall_ms", wall.as_millis())
    }
}

impl fmt::Display for Report {
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

/// Comma separated ids, `-` when empty.
pub fn join(ids: &[usize]) -> String {
    if ids.is_empty() {
        return "-".into();
    }
    ids.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}
