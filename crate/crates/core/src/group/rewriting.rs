//! String rewriting over the letter alphabet `{g, g^-1}` with shortlex
//! orientation, plus a bounded Knuth-Bendix completion.
//!
//! The free cancellation rules `g g^-1 -> e` and `g^-1 g -> e` are always part
//! of the system, so irreducible strings are freely reduced words.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::word::{shortlex_cmp, Gen, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Vec<Letter>,
    pub rhs: Vec<Letter>,
}

/// Caps for [`RewriteSystem::complete`].
#[derive(Debug, Clone, Copy)]
pub struct CompletionLimits {
    pub max_rounds: usize,
    pub max_rules: usize,
}

impl Default for CompletionLimits {
    fn default() -> Self {
        CompletionLimits {
            max_rounds: 64,
            max_rules: 2_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RewriteSystem {
    ngens: usize,
    rules: Vec<Rule>,
    // rule indices keyed by the code of the last lhs letter
    by_last: Vec<Vec<usize>>,
}

impl RewriteSystem {
    /// A system holding only the free cancellation rules.
    pub fn free(ngens: usize) -> Self {
        let mut sys = RewriteSystem {
            ngens,
            rules: Vec::new(),
            by_last: Vec::new(),
        };
        for g in 0..ngens as u32 {
            let x = Letter::pos(g);
            sys.rules.push(Rule { lhs: alloc::vec![x, x.inv()], rhs: Vec::new() });
            sys.rules.push(Rule { lhs: alloc::vec![x.inv(), x], rhs: Vec::new() });
        }
        sys.reindex();
        sys
    }

    /// Builds a system from user-supplied rules (cancellation rules are added
    /// automatically). Each rule must be shortlex-decreasing and the whole
    /// system locally confluent.
    pub fn from_rules(ngens: usize, rules: Vec<Rule>) -> Result<Self> {
        let mut sys = RewriteSystem::free(ngens);
        for r in rules {
            for l in r.lhs.iter().chain(r.rhs.iter()) {
                if l.gen.index() >= ngens {
                    return Err(Error::UnknownGenerator(l.gen));
                }
            }
            if shortlex_cmp(&r.lhs, &r.rhs) != Ordering::Greater {
                return Err(Error::Strategy(format!(
                    "rule {:?} -> {:?} is not shortlex-decreasing",
                    Word::from_letters(r.lhs.iter().copied()),
                    Word::from_letters(r.rhs.iter().copied())
                )));
            }
            sys.rules.push(r);
        }
        sys.reindex();
        if let Some((a, b)) = sys.first_unjoinable_pair() {
            return Err(Error::Strategy(format!(
                "rewriting system is not locally confluent: critical pair {:?} / {:?}",
                Word::from_letters(a),
                Word::from_letters(b)
            )));
        }
        Ok(sys)
    }

    /// Bounded Knuth-Bendix completion of the presentation with the given
    /// relators, using shortlex order.
    pub fn complete(ngens: usize, relators: &[Word], limits: CompletionLimits) -> Result<Self> {
        let mut sys = RewriteSystem::free(ngens);
        let mut pending: VecDeque<(Vec<Letter>, Vec<Letter>)> =
            relators.iter().map(|r| (r.to_letters(), Vec::new())).collect();
        let mut rounds = 0;
        loop {
            while let Some((l, r)) = pending.pop_front() {
                sys.add_equation(l, r, &mut pending);
                if sys.rules.len() > limits.max_rules {
                    return Err(Error::CompletionExhausted {
                        iterations: rounds,
                        rules: sys.rules.len(),
                    });
                }
            }
            let pairs = sys.unjoinable_pairs();
            if pairs.is_empty() {
                return Ok(sys);
            }
            rounds += 1;
            if rounds > limits.max_rounds {
                return Err(Error::CompletionExhausted {
                    iterations: rounds,
                    rules: sys.rules.len(),
                });
            }
            pending.extend(pairs);
        }
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// Rules other than free cancellation.
    pub fn nontrivial_rules(&self) -> impl Iterator<Item = &Rule> {
        self.rules.iter().filter(|r| {
            !(r.rhs.is_empty() && r.lhs.len() == 2 && r.lhs[0] == r.lhs[1].inv())
        })
    }

    fn reindex(&mut self) {
        self.by_last = alloc::vec![Vec::new(); 2 * self.ngens];
        for (i, r) in self.rules.iter().enumerate() {
            if let Some(l) = r.lhs.last() {
                self.by_last[l.code()].push(i);
            }
        }
    }

    /// Reduces a letter string to its irreducible form.
    pub fn reduce(&self, input: &[Letter]) -> Vec<Letter> {
        let mut todo: Vec<Letter> = input.iter().rev().copied().collect();
        let mut out: Vec<Letter> = Vec::with_capacity(input.len());
        while let Some(l) = todo.pop() {
            out.push(l);
            let candidates = match self.by_last.get(l.code()) {
                Some(c) => c,
                None => continue,
            };
            for &i in candidates {
                let rule = &self.rules[i];
                if out.ends_with(&rule.lhs) {
                    out.truncate(out.len() - rule.lhs.len());
                    todo.extend(rule.rhs.iter().rev().copied());
                    break;
                }
            }
        }
        out
    }

    fn add_equation(
        &mut self,
        l: Vec<Letter>,
        r: Vec<Letter>,
        pending: &mut VecDeque<(Vec<Letter>, Vec<Letter>)>,
    ) {
        let l = self.reduce(&l);
        let r = self.reduce(&r);
        let (lhs, rhs) = match shortlex_cmp(&l, &r) {
            Ordering::Equal => return,
            Ordering::Greater => (l, r),
            Ordering::Less => (r, l),
        };
        // Rules whose lhs contains the new lhs become equations again.
        let mut kept = Vec::with_capacity(self.rules.len() + 1);
        for rule in self.rules.drain(..) {
            if contains(&rule.lhs, &lhs) {
                pending.push_back((rule.lhs, rule.rhs));
            } else {
                kept.push(rule);
            }
        }
        kept.push(Rule { lhs, rhs });
        self.rules = kept;
        self.reindex();
        // Keep right-hand sides irreducible.
        for i in 0..self.rules.len() {
            let rhs = self.reduce(&self.rules[i].rhs);
            self.rules[i].rhs = rhs;
        }
    }

    fn critical_pairs(&self) -> Vec<(Vec<Letter>, Vec<Letter>)> {
        let mut out = Vec::new();
        for (i, r1) in self.rules.iter().enumerate() {
            for (j, r2) in self.rules.iter().enumerate() {
                let (l1, l2) = (&r1.lhs, &r2.lhs);
                // suffix of l1 overlaps prefix of l2
                for k in 1..l1.len().min(l2.len()) {
                    if l1[l1.len() - k..] == l2[..k] {
                        let mut a = r1.rhs.clone();
                        a.extend_from_slice(&l2[k..]);
                        let mut b = l1[..l1.len() - k].to_vec();
                        b.extend_from_slice(&r2.rhs);
                        out.push((a, b));
                    }
                }
                // l2 occurs inside l1
                if i != j && l2.len() <= l1.len() {
                    for start in 0..=l1.len() - l2.len() {
                        if l1[start..start + l2.len()] == l2[..] {
                            let mut b = l1[..start].to_vec();
                            b.extend_from_slice(&r2.rhs);
                            b.extend_from_slice(&l1[start + l2.len()..]);
                            out.push((r1.rhs.clone(), b));
                        }
                    }
                }
            }
        }
        out
    }

    fn unjoinable_pairs(&self) -> Vec<(Vec<Letter>, Vec<Letter>)> {
        self.critical_pairs()
            .into_iter()
            .filter_map(|(a, b)| {
                let (a, b) = (self.reduce(&a), self.reduce(&b));
                (a != b).then_some((a, b))
            })
            .collect()
    }

    fn first_unjoinable_pair(&self) -> Option<(Vec<Letter>, Vec<Letter>)> {
        self.unjoinable_pairs().into_iter().next()
    }

    /// True when every critical pair is joinable.
    pub fn is_locally_confluent(&self) -> bool {
        self.first_unjoinable_pair().is_none()
    }

    pub fn max_gen(&self) -> Option<Gen> {
        self.rules.iter().flat_map(|r| r.lhs.iter()).map(|l| l.gen).max()
    }
}

fn contains(hay: &[Letter], needle: &[Letter]) -> bool {
    needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}
