//! The group algebra over the rationals: finite formal combinations
//! `Σ λ_g g` with convolution product.
//!
//! Coefficients are exact [`Rational`]s. Another coefficient field would slot
//! in by replacing the `Rational` alias; only `Q` is provided.

use alloc::collections::BTreeMap;
use alloc::format;
use core::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::GroupCtx;
use crate::word::Word;
use crate::Rational;

/// A finite rational combination of normal-form words. Zero coefficients
/// are never stored; the empty combination is zero.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash, PartialOrd, Ord)]
pub struct AlgebraElement {
    terms: BTreeMap<Word, Rational>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement::default()
    }

    /// The basis element `g` (caller guarantees normal form).
    pub fn basis(g: Word) -> Self {
        AlgebraElement::term(Rational::one(), g)
    }

    pub fn term(coeff: Rational, g: Word) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(g, coeff);
        }
        AlgebraElement { terms }
    }

    pub fn identity() -> Self {
        AlgebraElement::basis(Word::identity())
    }

    /// Sums terms, normalizing every word in `ctx`.
    pub fn from_terms<I: IntoIterator<Item = (Rational, Word)>>(ctx: &GroupCtx, iter: I) -> Result<Self> {
        let mut out = AlgebraElement::zero();
        for (c, w) in iter {
            out.add_term(c, ctx.normal_form(&w)?);
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        self.terms.get(w).copied().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    /// Adds `c * w` in place (no normalization).
    pub fn add_term(&mut self, c: Rational, w: Word) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w);
        match entry {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let s = *o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, c: Rational, other: &AlgebraElement) {
        if c.is_zero() {
            return;
        }
        for (w, &q) in &other.terms {
            self.add_term(c * q, w.clone());
        }
    }

    pub fn scale(&self, q: Rational) -> AlgebraElement {
        if q.is_zero() {
            return AlgebraElement::zero();
        }
        AlgebraElement {
            terms: self.terms.iter().map(|(w, &c)| (w.clone(), c * q)).collect(),
        }
    }

    /// Checks every key is a normal form of `ctx`.
    pub fn check(&self, ctx: &GroupCtx) -> Result<()> {
        for w in self.terms.keys() {
            if !ctx.is_normal(w) {
                return Err(Error::ContextMismatch(format!("{w:?} is not a normal form of this group")));
            }
        }
        Ok(())
    }

    /// Convolution `u * v`.
    pub fn convolve(ctx: &GroupCtx, u: &AlgebraElement, v: &AlgebraElement) -> Result<AlgebraElement> {
        u.check(ctx)?;
        v.check(ctx)?;
        Ok(convolve_unchecked(ctx, u, v))
    }

    /// `u * v - v * u`.
    pub fn commutator(ctx: &GroupCtx, u: &AlgebraElement, v: &AlgebraElement) -> Result<AlgebraElement> {
        Ok(&AlgebraElement::convolve(ctx, u, v)? - &AlgebraElement::convolve(ctx, v, u)?)
    }

    /// Left multiplication by a group element.
    pub fn left_mul(&self, ctx: &GroupCtx, g: &Word) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (w, &c) in &self.terms {
            out.add_term(c, ctx.nf_unchecked(&g.concat(w)));
        }
        out
    }

    /// Right multiplication by a group element.
    pub fn right_mul(&self, ctx: &GroupCtx, g: &Word) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (w, &c) in &self.terms {
            out.add_term(c, ctx.nf_unchecked(&w.concat(g)));
        }
        out
    }
}

pub(crate) fn convolve_unchecked(ctx: &GroupCtx, u: &AlgebraElement, v: &AlgebraElement) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for (g, &a) in &u.terms {
        for (h, &b) in &v.terms {
            out.add_term(a * b, ctx.nf_unchecked(&g.concat(h)));
        }
    }
    out
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        out.add_scaled(Rational::one(), rhs);
        out
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        out.add_scaled(-Rational::one(), rhs);
        out
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.scale(-Rational::one())
    }
}

impl Add for AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: AlgebraElement) -> AlgebraElement {
        &self + &rhs
    }
}

impl Sub for AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: AlgebraElement) -> AlgebraElement {
        &self - &rhs
    }
}

impl Neg for AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        -&self
    }
}
