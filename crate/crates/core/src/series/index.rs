use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A multi-index `(k_1, ..., k_r)` with an optional trailing exponent
/// `k_{r+1}` used by the Λ-type generating functions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexVector {
    entries: Vec<u32>,
    tail: Option<u32>,
}

impl IndexVector {
    pub fn new(entries: Vec<u32>) -> Self {
        Self {
            entries,
            tail: None,
        }
    }

    pub fn with_tail(entries: Vec<u32>, tail: u32) -> Self {
        Self {
            entries,
            tail: Some(tail),
        }
    }

    /// `(k, k, ..., k)` with `n` entries.
    pub fn repeated(k: u32, n: usize) -> Self {
        Self::new(vec![k; n])
    }

    /// The all-ones Λ index `1_{r+1}`: `r` ones followed by a tail of 1.
    pub fn ones_with_unit_tail(r: usize) -> Self {
        Self::with_tail(vec![1; r], 1)
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn tail(&self) -> Option<u32> {
        self.tail
    }

    /// Number of summation variables `r`.
    pub fn depth(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Same entries, tail dropped.
    pub fn without_tail(&self) -> Self {
        Self::new(self.entries.clone())
    }

    /// Same entries, tail replaced.
    pub fn replace_tail(&self, tail: u32) -> Self {
        Self::with_tail(self.entries.clone(), tail)
    }

    /// Entries concatenated with `other`'s entries (tails dropped).
    pub fn concat(&self, other: &[u32]) -> Self {
        let mut entries = self.entries.clone();
        entries.extend_from_slice(other);
        Self::new(entries)
    }

    /// Checks the requirements for ξ-type usage: `r ≥ 1`, every `k_j ≥ 1`, no tail.
    pub fn require_xi(&self) -> Result<()> {
        if self.entries.is_empty() {
            return Err(Error::InvalidIndex("index must have at least one entry".into()));
        }
        if self.tail.is_some() {
            return Err(Error::InvalidIndex(format!(
                "{self}: ξ index must not carry a tail exponent"
            )));
        }
        if self.entries.contains(&0) {
            return Err(Error::InvalidIndex(format!("{self}: entries must be positive")));
        }
        Ok(())
    }

    /// Checks the requirements for Λ-type usage: `r ≥ 1`, every `k_j ≥ 1`, tail present.
    pub fn require_lambda(&self) -> Result<u32> {
        let tail = self.tail.ok_or_else(|| {
            Error::InvalidIndex(format!("{self}: Λ index needs a tail exponent"))
        })?;
        if self.entries.is_empty() {
            return Err(Error::InvalidIndex("index must have at least one entry".into()));
        }
        if self.entries.contains(&0) {
            return Err(Error::InvalidIndex(format!("{self}: entries must be positive")));
        }
        Ok(tail)
    }

    /// Parses a comma separated list, treating the last entry as the tail
    /// (the command-line syntax for Λ indices).
    pub fn parse_with_tail(text: &str) -> Result<Self> {
        let mut all = parse_list(text)?;
        if all.len() < 2 {
            return Err(Error::InvalidIndex(format!(
                "`{text}`: a Λ index needs at least one entry plus a tail"
            )));
        }
        let tail = all.pop().unwrap_or_default();
        Ok(Self::with_tail(all, tail))
    }
}

fn parse_list(text: &str) -> Result<Vec<u32>> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<u32>()
                .map_err(|_| Error::InvalidIndex(format!("`{part}` is not a nonnegative integer")))
        })
        .collect()
}

impl FromStr for IndexVector {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        Ok(Self::new(parse_list(text)?))
    }
}

impl fmt::Display for IndexVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, k) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        if let Some(tail) = self.tail {
            write!(f, ";{tail}")?;
        }
        write!(f, ")")
    }
}
