//! Freely reduced words over a finite generating set.
//!
//! A [`Word`] is stored in run-length form: a sequence of syllables
//! `(generator, exponent)` where adjacent syllables use distinct generators
//! and no exponent is zero. The empty word is the identity.
//!
//! Words are totally ordered shortlex: first by length (sum of absolute
//! exponents), then lexicographically on the expanded letter sequence with
//! letters ordered by generator id and then sign (`x < x^-1 < y < y^-1`).

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

/// Index of a generator in its presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gen(pub u32);

impl Gen {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A single generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: Gen,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: Gen, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn pos(gen: u32) -> Self {
        Letter::new(Gen(gen), false)
    }

    pub fn neg(gen: u32) -> Self {
        Letter::new(Gen(gen), true)
    }

    pub fn inv(self) -> Self {
        Letter::new(self.gen, !self.inverse)
    }

    pub fn exponent(self) -> i32 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    /// Dense index `2 * gen + sign`, useful for tables.
    pub fn code(self) -> usize {
        2 * self.gen.index() + self.inverse as usize
    }
}

/// A freely reduced word in run-length form.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    syllables: Vec<(Gen, i32)>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn gen(g: u32) -> Self {
        Word { syllables: alloc::vec![(Gen(g), 1)] }
    }

    pub fn gen_pow(g: u32, exp: i32) -> Self {
        Word::from_syllables([(Gen(g), exp)])
    }

    /// Builds a word from arbitrary syllables, merging and freely reducing.
    pub fn from_syllables<I: IntoIterator<Item = (Gen, i32)>>(iter: I) -> Self {
        let mut out: Vec<(Gen, i32)> = Vec::new();
        for (g, e) in iter {
            push_syllable(&mut out, g, e);
        }
        Word { syllables: out }
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word::from_syllables(iter.into_iter().map(|l| (l.gen, l.exponent())))
    }

    pub fn syllables(&self) -> &[(Gen, i32)] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of letters, i.e. the sum of absolute exponents.
    pub fn len(&self) -> usize {
        self.syllables.iter().map(|&(_, e)| e.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn letters(&self) -> impl DoubleEndedIterator<Item = Letter> + Clone + '_ {
        self.syllables.iter().flat_map(|&(g, e)| {
            core::iter::repeat_n(Letter::new(g, e < 0), e.unsigned_abs() as usize)
        })
    }

    pub fn to_letters(&self) -> Vec<Letter> {
        self.letters().collect()
    }

    /// Free product (concatenation followed by free reduction).
    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.syllables.clone();
        for &(g, e) in &other.syllables {
            push_syllable(&mut out, g, e);
        }
        Word { syllables: out }
    }

    /// Formal inverse: reversed syllables with negated exponents.
    pub fn inverse(&self) -> Word {
        Word {
            syllables: self.syllables.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    /// Largest generator index used, if any.
    pub fn max_gen(&self) -> Option<Gen> {
        self.syllables.iter().map(|&(g, _)| g).max()
    }

    /// Exponent sum of `gen` in this word.
    pub fn exponent_sum(&self, gen: Gen) -> i64 {
        self.syllables
            .iter()
            .filter(|&&(g, _)| g == gen)
            .map(|&(_, e)| e as i64)
            .sum()
    }
}

fn push_syllable(out: &mut Vec<(Gen, i32)>, g: Gen, e: i32) {
    if e == 0 {
        return;
    }
    match out.last_mut() {
        Some(last) if last.0 == g => {
            last.1 += e;
            if last.1 == 0 {
                out.pop();
            }
        }
        _ => out.push((g, e)),
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters().cmp(other.letters()))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("e");
        }
        for (i, &(g, e)) in self.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "g{}", g.0)?;
            if e != 1 {
                write!(f, "^{}", e)?;
            }
        }
        Ok(())
    }
}

/// Shortlex comparison of raw letter strings (used by the rewriting engine).
pub fn shortlex_cmp(a: &[Letter], b: &[Letter]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}
