//! Heads of pairs and normal forms over a Garside datum.

use super::presentations::{gen, GarsideContext};
use crate::error::{Error, Result};
use crate::normalize::{Leftmost, Rewriter, Strategy, DEFAULT_BUDGET};
use crate::word::Word;

/// A word over the nonunit elements, checked to be normal when `certified`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SNormalWord {
    pub word: Word,
    pub certified: bool,
}

impl SNormalWord {
    pub fn s_length(&self) -> usize {
        self.word.len()
    }

    /// The letters as element indices.
    pub fn elements(&self) -> Vec<usize> {
        self.word.letters().iter().map(|&g| g + 1).collect()
    }
}

/// The greatest left divisor in the family of the product `uv`.
pub fn head2(cx: &GarsideContext, u: usize, v: usize) -> Result<usize> {
    let d = cx.datum;
    if u == 0 || v == 0 || u >= d.len() || v >= d.len() {
        return Err(Error::BadParameter(format!("head2 takes two nonunit elements, got {u} and {v}")));
    }
    Ok(cx.head(u, v))
}

/// Every adjacent pair is its own head decomposition.
pub fn is_s_normal(cx: &GarsideContext, w: &Word) -> Result<bool> {
    for pair in w.letters().windows(2) {
        let (u, v) = (pair[0] + 1, pair[1] + 1);
        if head2(cx, u, v)? != u {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Normalizes many words against one redex index.
pub struct SNormalizer<'c, 'a> {
    cx: &'c GarsideContext<'a>,
    rw: Rewriter<'c>,
}

impl<'c, 'a> SNormalizer<'c, 'a> {
    pub fn new(cx: &'c GarsideContext<'a>) -> Self {
        SNormalizer {
            cx,
            rw: Rewriter::new(&cx.ugar2),
        }
    }

    /// Normal form by the convergent presentation, with the pairwise check.
    pub fn normalize_with(&self, w: &Word, strategy: &dyn Strategy) -> Result<SNormalWord> {
        let (word, _) = self
            .rw
            .normalize(w, strategy, DEFAULT_BUDGET)
            .map_err(|e| Error::NormalizationFailure(e.to_string()))?;
        if !is_s_normal(self.cx, &word)? {
            return Err(Error::NormalizationFailure(format!(
                "{} is not normal",
                self.cx.ugar2.render(&word)
            )));
        }
        Ok(SNormalWord { word, certified: true })
    }
}

pub fn s_normalize_with(cx: &GarsideContext, w: &Word, strategy: &dyn Strategy) -> Result<SNormalWord> {
    SNormalizer::new(cx).normalize_with(w, strategy)
}

pub fn s_normalize(cx: &GarsideContext, w: &Word) -> Result<SNormalWord> {
    s_normalize_with(cx, w, &Leftmost)
}

/// Normal form of a sequence of elements, units skipped.
pub fn s_normalize_elements(cx: &GarsideContext, elements: &[usize]) -> Result<SNormalWord> {
    let w = Word(elements.iter().filter(|&&u| u != 0).map(|&u| gen(u)).collect());
    s_normalize(cx, &w)
}
