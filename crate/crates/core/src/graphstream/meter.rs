use std::cell::Cell;
use std::rc::Rc;

use crate::error::{Error, Result};

pub const BUDGET_ENV: &str = "VCSTREAM_WORD_BUDGET";

/// Words needed to hold a bit-vector of `bits` bits.
pub fn bit_words(bits: usize) -> usize {
    bits.div_ceil(64)
}

/// Counts completed passes. Clones share the same counter, so a filtered
/// substream charges its parent.
#[derive(Clone, Debug, Default)]
pub struct PassMeter(Rc<Cell<u64>>);

impl PassMeter {
    pub fn new() -> PassMeter {
        PassMeter::default()
    }

    pub fn passes(&self) -> u64 {
        self.0.get()
    }

    pub(crate) fn tick(&self) {
        self.0.set(self.0.get() + 1);
    }
}

/// Working-memory accountant in words.
#[derive(Debug, Default)]
pub struct MemoryMeter {
    live: Cell<usize>,
    peak: Cell<usize>,
    budget: Option<usize>,
}

impl MemoryMeter {
    pub fn new() -> MemoryMeter {
        MemoryMeter::default()
    }

    pub fn with_budget(words: usize) -> MemoryMeter {
        MemoryMeter { budget: Some(words), ..MemoryMeter::default() }
    }

    /// Meter whose budget comes from `VCSTREAM_WORD_BUDGET` when set.
    pub fn from_env() -> Result<MemoryMeter> {
        match std::env::var(BUDGET_ENV) {
            Ok(s) => {
                let w = s
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| Error::BadParams(format!("{BUDGET_ENV}={s} is not a word count")))?;
                Ok(MemoryMeter::with_budget(w))
            }
            Err(_) => Ok(MemoryMeter::new()),
        }
    }

    pub fn live_words(&self) -> usize {
        self.live.get()
    }

    pub fn peak_words(&self) -> usize {
        self.peak.get()
    }

    pub fn budget_words(&self) -> Option<usize> {
        self.budget
    }

    pub fn charge(&self, words: usize) -> Result<Charge<'_>> {
        self.alloc(words)?;
        Ok(Charge { meter: self, words })
    }

    fn alloc(&self, words: usize) -> Result<()> {
        let live = self.live.get();
        if let Some(b) = self.budget {
            if live + words > b {
                return Err(Error::BudgetExceeded { requested: words, live, budget: b });
            }
        }
        self.live.set(live + words);
        if live + words > self.peak.get() {
            self.peak.set(live + words);
        }
        Ok(())
    }

    fn release(&self, words: usize) {
        let live = self.live.get();
        debug_assert!(words <= live, "release of {words} words with {live} live");
        self.live.set(live - words);
    }
}

/// A live allocation; released on drop.
#[derive(Debug)]
pub struct Charge<'m> {
    meter: &'m MemoryMeter,
    words: usize,
}

impl Charge<'_> {
    pub fn words(&self) -> usize {
        self.words
    }

    pub fn grow(&mut self, words: usize) -> Result<()> {
        self.meter.alloc(words)?;
        self.words += words;
        Ok(())
    }

    pub fn shrink(&mut self, words: usize) {
        let w = words.min(self.words);
        self.meter.release(w);
        self.words -= w;
    }

    pub fn resize(&mut self, words: usize) -> Result<()> {
        if words > self.words {
            self.grow(words - self.words)
        } else {
            self.shrink(self.words - words);
            Ok(())
        }
    }
}

impl Drop for Charge<'_> {
    fn drop(&mut self) {
        self.meter.release(self.words);
    }
}
