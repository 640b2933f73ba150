//! Group contexts: a finite presentation together with a decidable equality
//! strategy, and the exact element arithmetic built on it.

mod enumerate;
pub mod rewriting;
pub mod table;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

pub use enumerate::{Ball, Radius};
pub use rewriting::{CompletionLimits, RewriteSystem, Rule};
pub use table::FiniteTable;

use crate::error::{Error, Result};
use crate::word::{Gen, Word};

/// Default element-count cap for every enumeration.
pub const DEFAULT_CAP: usize = 100_000;

/// How equality of group elements is decided.
#[derive(Debug, Clone)]
pub enum Strategy {
    /// No relators; normal form is free reduction.
    FreeGroup,
    /// Full multiplication table of a finite group.
    FiniteTable(FiniteTable),
    /// A terminating, locally confluent rewriting system.
    ConfluentRewriting(RewriteSystem),
}

impl Strategy {
    pub fn name(&self) -> &'static str {
        match self {
            Strategy::FreeGroup => "free",
            Strategy::FiniteTable(_) => "table",
            Strategy::ConfluentRewriting(_) => "rewriting",
        }
    }
}

/// A presentation plus an equality strategy. Immutable once built.
#[derive(Debug, Clone)]
pub struct GroupCtx {
    names: Vec<String>,
    relators: Vec<Word>,
    strategy: Strategy,
    cap: usize,
}

impl GroupCtx {
    /// The free group on the given generator names.
    pub fn free<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        GroupCtx {
            names: names.into_iter().map(Into::into).collect(),
            relators: Vec::new(),
            strategy: Strategy::FreeGroup,
            cap: DEFAULT_CAP,
        }
    }

    /// Free group on `n` generators named `x1 .. xn`.
    pub fn free_rank(n: usize) -> Self {
        GroupCtx::free((1..=n).map(|i| format!("x{i}")))
    }

    /// Runs bounded Knuth-Bendix completion on the relators. An empty relator
    /// list yields the free group.
    pub fn from_relators<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        relators: Vec<Word>,
        limits: CompletionLimits,
    ) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        check_words(names.len(), &relators)?;
        let relators: Vec<Word> = relators.into_iter().filter(|r| !r.is_identity()).collect();
        if relators.is_empty() {
            return Ok(GroupCtx::free(names));
        }
        let sys = RewriteSystem::complete(names.len(), &relators, limits)?;
        Ok(GroupCtx {
            names,
            relators,
            strategy: Strategy::ConfluentRewriting(sys),
            cap: DEFAULT_CAP,
        })
    }

    /// Uses caller-supplied rewrite rules. They are validated for
    /// orientation and local confluence, and every relator must reduce to
    /// the identity.
    pub fn from_rules<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        relators: Vec<Word>,
        rules: Vec<Rule>,
    ) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        check_words(names.len(), &relators)?;
        let sys = RewriteSystem::from_rules(names.len(), rules)?;
        for r in &relators {
            if !sys.reduce(&r.to_letters()).is_empty() {
                return Err(Error::Strategy(format!("relator {r:?} does not reduce to e")));
            }
        }
        Ok(GroupCtx {
            names,
            relators,
            strategy: Strategy::ConfluentRewriting(sys),
            cap: DEFAULT_CAP,
        })
    }

    /// Wraps an explicit multiplication table. Relators are checked against it.
    pub fn from_table<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        relators: Vec<Word>,
        table: FiniteTable,
    ) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        check_words(names.len(), &relators)?;
        for r in &relators {
            if table.evaluate(r) != 0 {
                return Err(Error::Strategy(format!("relator {r:?} is not trivial in the table")));
            }
        }
        Ok(GroupCtx {
            names,
            relators,
            strategy: Strategy::FiniteTable(table),
            cap: DEFAULT_CAP,
        })
    }

    /// Enumerates the whole group (failing on the cap) and switches to the
    /// [`Strategy::FiniteTable`] strategy.
    pub fn materialize_table(&self) -> Result<Self> {
        if let Strategy::FiniteTable(_) = self.strategy {
            return Ok(self.clone());
        }
        let ball = self.ball(Radius::Infinite)?;
        let elements: Vec<Word> = ball.elements().to_vec();
        let index: BTreeMap<&Word, usize> = elements.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let lookup = |w: &Word| -> Result<usize> {
            index
                .get(w)
                .copied()
                .ok_or_else(|| Error::Strategy(format!("product {w:?} escaped the enumeration")))
        };
        let mut table = Vec::with_capacity(elements.len());
        for a in &elements {
            let mut row = Vec::with_capacity(elements.len());
            for b in &elements {
                row.push(lookup(&self.multiply(a, b)?)?);
            }
            table.push(row);
        }
        let mut letters = Vec::with_capacity(2 * self.rank());
        for g in 0..self.rank() as u32 {
            letters.push(lookup(&self.normal_form(&Word::gen(g))?)?);
            letters.push(lookup(&self.normal_form(&Word::gen_pow(g, -1))?)?);
        }
        let ft = FiniteTable::new(elements, table, letters)?;
        let mut ctx = GroupCtx::from_table(self.names.clone(), self.relators.clone(), ft)?;
        ctx.cap = self.cap;
        Ok(ctx)
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, g: Gen) -> Option<&str> {
        self.names.get(g.index()).map(String::as_str)
    }

    pub fn gen_by_name(&self, name: &str) -> Option<Gen> {
        self.names.iter().position(|n| n == name).map(|i| Gen(i as u32))
    }

    pub fn generators(&self) -> impl Iterator<Item = Gen> {
        (0..self.rank() as u32).map(Gen)
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn strategy(&self) -> &Strategy {
        &self.strategy
    }

    pub fn is_free(&self) -> bool {
        matches!(self.strategy, Strategy::FreeGroup)
    }

    /// Order of the group when the strategy is a finite table.
    pub fn order(&self) -> Option<usize> {
        match &self.strategy {
            Strategy::FiniteTable(t) => Some(t.order()),
            _ => None,
        }
    }

    /// Rejects words mentioning generators outside this presentation.
    pub fn check(&self, w: &Word) -> Result<()> {
        match w.max_gen() {
            Some(g) if g.index() >= self.rank() => Err(Error::UnknownGenerator(g)),
            _ => Ok(()),
        }
    }

    pub fn normal_form(&self, w: &Word) -> Result<Word> {
        self.check(w)?;
        Ok(self.nf_unchecked(w))
    }

    pub(crate) fn nf_unchecked(&self, w: &Word) -> Word {
        match &self.strategy {
            Strategy::FreeGroup => w.clone(),
            Strategy::FiniteTable(t) => t.normal_form(w),
            Strategy::ConfluentRewriting(sys) => Word::from_letters(sys.reduce(&w.to_letters())),
        }
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        self.check(w).is_ok() && self.nf_unchecked(w) == *w
    }

    pub fn multiply(&self, u: &Word, v: &Word) -> Result<Word> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.nf_unchecked(&u.concat(v)))
    }

    pub fn inverse(&self, u: &Word) -> Result<Word> {
        self.check(u)?;
        Ok(self.nf_unchecked(&u.inverse()))
    }

    /// `g a g^-1` in normal form.
    pub fn conjugate(&self, g: &Word, a: &Word) -> Result<Word> {
        self.check(g)?;
        self.check(a)?;
        Ok(self.nf_unchecked(&g.concat(a).concat(&g.inverse())))
    }

    pub fn commutes(&self, u: &Word, v: &Word) -> Result<bool> {
        Ok(self.multiply(u, v)? == self.multiply(v, u)?)
    }
}

fn check_words(rank: usize, words: &[Word]) -> Result<()> {
    for w in words {
        if let Some(g) = w.max_gen() {
            if g.index() >= rank {
                return Err(Error::UnknownGenerator(g));
            }
        }
    }
    Ok(())
}
