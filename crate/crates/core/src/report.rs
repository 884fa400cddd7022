use std::fmt;

/// Default cap on the number of violations a validator records.
pub const DEFAULT_MAX_VIOLATIONS: usize = 10;

/// One failed instance of an identity, with 1-based basis indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub identity: String,
    pub indices: Vec<usize>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {:?}", self.identity, self.indices)
    }
}

/// Outcome of an exhaustive identity check.
///
/// `violations` holds at most `cap` entries; `total` counts every failure found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub total: usize,
    pub cap: usize,
}

impl ValidationReport {
    pub fn new(cap: usize) -> Self {
        Self {
            violations: Vec::new(),
            total: 0,
            cap,
        }
    }

    pub fn is_ok(&self) -> bool {
        self.total == 0
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }

    pub fn push(&mut self, identity: impl Into<String>, indices: Vec<usize>) {
        self.total += 1;
        if self.violations.len() < self.cap {
            self.violations.push(Violation {
                identity: identity.into(),
                indices,
            });
        }
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.total += other.total;
        for v in other.violations {
            if self.violations.len() < self.cap {
                self.violations.push(v);
            }
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        write!(f, "{} violation(s)", self.total)?;
        if let Some(v) = self.first() {
            write!(f, ", first: {v}")?;
        }
        Ok(())
    }
}
