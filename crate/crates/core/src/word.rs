//! Words over an interned alphabet.

use std::fmt;

/// A word in the free monoid: a sequence of generator indices.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Leftmost letter.
    pub fn head(&self) -> Option<usize> {
        self.0.first().copied()
    }

    /// Rightmost letter.
    pub fn tail(&self) -> Option<usize> {
        self.0.last().copied()
    }

    /// True when `pattern` occurs at offset `pos`.
    pub fn occurs_at(&self, pattern: &Word, pos: usize) -> bool {
        pos + pattern.len() <= self.len() && self.0[pos..pos + pattern.len()] == pattern.0[..]
    }

    /// All offsets where `pattern` occurs.
    pub fn occurrences(&self, pattern: &Word) -> Vec<usize> {
        if pattern.len() > self.len() {
            return Vec::new();
        }
        (0..=self.len() - pattern.len())
            .filter(|&p| self.occurs_at(pattern, p))
            .collect()
    }

    /// Replaces `len` letters at `pos` by `with`.
    pub fn splice(&self, pos: usize, len: usize, with: &Word) -> Word {
        let mut out = Vec::with_capacity(self.len() + with.len() - len.min(self.len()));
        out.extend_from_slice(&self.0[..pos]);
        out.extend_from_slice(&with.0);
        out.extend_from_slice(&self.0[pos + len..]);
        Word(out)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        out.extend_from_slice(&other.0);
        Word(out)
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word(self.0[from..to].to_vec())
    }

    /// Renders with generator names, concatenated when all names are single
    /// characters and separated by `|` otherwise.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_empty() {
            return "1".to_string();
        }
        let compact = self.0.iter().all(|&g| names[g].chars().count() == 1);
        let parts: Vec<&str> = self.0.iter().map(|&g| names[g].as_str()).collect();
        if compact {
            parts.concat()
        } else {
            parts.join("|")
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<Vec<usize>> for Word {
    fn from(v: Vec<usize>) -> Self {
        Word(v)
    }
}

impl From<&[usize]> for Word {
    fn from(v: &[usize]) -> Self {
        Word(v.to_vec())
    }
}
