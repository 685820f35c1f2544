use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes(Vec<usize>),
    No,
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }

    pub fn solution(&self) -> Option<&[usize]> {
        match self {
            Verdict::Yes(s) => Some(s),
            Verdict::No => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Yes(_) => f.write_str("YES"),
            Verdict::No => f.write_str("NO"),
        }
    }
}

/// Verdict plus the meter readings of the run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOutcome {
    pub verdict: Verdict,
    pub passes: u64,
    pub peak_words: usize,
}

impl SolveOutcome {
    pub fn is_yes(&self) -> bool {
        self.verdict.is_yes()
    }
}
