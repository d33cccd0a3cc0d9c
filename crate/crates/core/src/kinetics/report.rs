use std::fmt;

/// Outcome of checking a family of inequalities or identities over a range.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub check: String,
    /// Number of individual cases evaluated.
    pub cases: usize,
    pub certified: bool,
    /// Smallest slack observed; negative once a case is violated.
    pub worst_margin: f64,
    /// First violating case, in evaluation order.
    pub counterexample: Option<String>,
    pub notes: Vec<String>,
}

impl ValidationReport {
    pub fn new(check: impl Into<String>) -> Self {
        Self {
            check: check.into(),
            cases: 0,
            certified: true,
            worst_margin: f64::INFINITY,
            counterexample: None,
            notes: Vec::new(),
        }
    }

    /// Records one case with slack `margin` (already net of any tolerance).
    pub fn record(&mut self, margin: f64, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if margin < self.worst_margin || margin.is_nan() {
            self.worst_margin = margin;
        }
        if !(margin >= 0.0) {
            self.fail(describe());
        }
    }

    /// Records a pass/fail case without a numeric slack.
    pub fn record_bool(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.record(if ok { 0.0 } else { -1.0 }, describe);
    }

    pub fn fail(&mut self, counterexample: String) {
        self.certified = false;
        if self.counterexample.is_none() {
            self.counterexample = Some(counterexample);
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Folds another report into this one.
    pub fn absorb(&mut self, other: ValidationReport) {
        self.cases += other.cases;
        if other.worst_margin < self.worst_margin {
            self.worst_margin = other.worst_margin;
        }
        if !other.certified {
            self.fail(format!("[{}] {}", other.check, other.counterexample.unwrap_or_default()));
        }
        self.notes.extend(other.notes);
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.certified { "certified" } else { "VIOLATED" };
        write!(f, "{}: {} ({} cases", self.check, status, self.cases)?;
        if self.worst_margin.is_finite() {
            write!(f, ", worst margin {:e}", self.worst_margin)?;
        }
        write!(f, ")")?;
        if let Some(c) = &self.counterexample {
            write!(f, "\n  counterexample: {c}")?;
        }
        for n in &self.notes {
            write!(f, "\n  note: {n}")?;
        }
        Ok(())
    }
}
