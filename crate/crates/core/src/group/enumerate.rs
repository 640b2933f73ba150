//! Bounded enumeration: balls, conjugacy-class fragments, centralizer members.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::GroupCtx;
use crate::error::{Error, Result};
use crate::word::{Letter, Word};

/// Ball radius in the word metric. `Infinite` enumerates until closure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Radius {
    Finite(usize),
    Infinite,
}

impl From<usize> for Radius {
    fn from(r: usize) -> Self {
        Radius::Finite(r)
    }
}

/// All elements of word length at most `radius`, in shortlex order.
#[derive(Debug, Clone)]
pub struct Ball {
    radius: Radius,
    elements: Vec<Word>,
    members: BTreeSet<Word>,
}

impl Ball {
    pub fn radius(&self) -> Radius {
        self.radius
    }

    pub fn elements(&self) -> &[Word] {
        &self.elements
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Word> {
        self.elements.iter()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.members.contains(w)
    }

    pub fn as_set(&self) -> &BTreeSet<Word> {
        &self.members
    }
}

impl<'a> IntoIterator for &'a Ball {
    type Item = &'a Word;
    type IntoIter = core::slice::Iter<'a, Word>;
    fn into_iter(self) -> Self::IntoIter {
        self.elements.iter()
    }
}

impl GroupCtx {
    fn letters_all(&self) -> Vec<Letter> {
        self.generators().flat_map(|g| [Letter::new(g, false), Letter::new(g, true)]).collect()
    }

    /// Breadth-first enumeration of the ball of the given radius.
    pub fn ball(&self, radius: impl Into<Radius>) -> Result<Ball> {
        let radius = radius.into();
        let letters = self.letters_all();
        let mut members: BTreeSet<Word> = BTreeSet::new();
        members.insert(Word::identity());
        let mut frontier = alloc::vec![Word::identity()];
        let mut depth = 0usize;
        while !frontier.is_empty() {
            if let Radius::Finite(r) = radius {
                if depth >= r {
                    break;
                }
            }
            depth += 1;
            let mut next = Vec::new();
            for w in &frontier {
                for &l in &letters {
                    let v = self.nf_unchecked(&w.concat(&Word::from_letters([l])));
                    if members.insert(v.clone()) {
                        if members.len() > self.cap {
                            return Err(Error::CapExceeded { cap: self.cap });
                        }
                        next.push(v);
                    }
                }
            }
            frontier = next;
        }
        let elements = members.iter().cloned().collect();
        Ok(Ball { radius, elements, members })
    }

    /// `{ g a g^-1 : g in ball(radius) }`.
    pub fn conjugacy_class_ball(&self, a: &Word, radius: impl Into<Radius>) -> Result<BTreeSet<Word>> {
        self.check(a)?;
        let ball = self.ball(radius)?;
        self.class_over(a, &ball)
    }

    pub(crate) fn class_over(&self, a: &Word, ball: &Ball) -> Result<BTreeSet<Word>> {
        let mut out = BTreeSet::new();
        for g in ball {
            out.insert(self.conjugate(g, a)?);
            if out.len() > self.cap {
                return Err(Error::CapExceeded { cap: self.cap });
            }
        }
        Ok(out)
    }

    /// Ball elements commuting with `a`.
    pub fn centralizer_members(&self, a: &Word, radius: impl Into<Radius>) -> Result<Vec<Word>> {
        self.check(a)?;
        let ball = self.ball(radius)?;
        let mut out = Vec::new();
        for g in &ball {
            if self.commutes(g, a)? {
                out.push(g.clone());
            }
        }
        Ok(out)
    }
}
