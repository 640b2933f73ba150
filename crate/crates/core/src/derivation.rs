//! Linear operators on the group algebra as column-finite matrices, the
//! Leibniz condition, inner derivations and derivations generated from their
//! values on the generators.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::group::{Ball, GroupCtx};
use crate::word::{Gen, Letter, Word};
use crate::Rational;

/// Anything that can produce the column `X(g)` of an operator.
pub trait Operator {
    fn column(&self, ctx: &GroupCtx, g: &Word) -> Result<AlgebraElement>;
}

/// An explicitly materialized operator: finitely many columns, each a finite
/// algebra element. Columns not stored are missing (not zero).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SparseOperator {
    columns: BTreeMap<Word, AlgebraElement>,
}

impl SparseOperator {
    pub fn new() -> Self {
        SparseOperator::default()
    }

    /// The zero operator with (zero) columns on every domain element.
    pub fn zero_on(domain: &Ball) -> Self {
        SparseOperator {
            columns: domain.iter().map(|g| (g.clone(), AlgebraElement::zero())).collect(),
        }
    }

    pub fn insert(&mut self, g: Word, column: AlgebraElement) {
        self.columns.insert(g, column);
    }

    pub fn get(&self, g: &Word) -> Option<&AlgebraElement> {
        self.columns.get(g)
    }

    pub fn columns(&self) -> impl Iterator<Item = (&Word, &AlgebraElement)> {
        self.columns.iter()
    }

    pub fn domain(&self) -> impl Iterator<Item = &Word> {
        self.columns.keys()
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// Matrix entry `x^h_g` (zero when absent).
    pub fn entry(&self, g: &Word, h: &Word) -> Rational {
        self.columns.get(g).map_or_else(num_traits::Zero::zero, |c| c.coeff(h))
    }

    /// True when every stored column is zero.
    pub fn is_zero(&self) -> bool {
        self.columns.values().all(AlgebraElement::is_zero)
    }

    /// Materializes any operator on the given domain.
    pub fn materialize(ctx: &GroupCtx, op: &impl Operator, domain: &Ball) -> Result<Self> {
        Self::materialize_on(ctx, op, domain.iter())
    }

    pub fn materialize_on<'a>(
        ctx: &GroupCtx,
        op: &impl Operator,
        domain: impl IntoIterator<Item = &'a Word>,
    ) -> Result<Self> {
        let mut out = SparseOperator::new();
        for g in domain {
            out.insert(g.clone(), op.column(ctx, g)?);
            if out.len() > ctx.cap() {
                return Err(Error::CapExceeded { cap: ctx.cap() });
            }
        }
        Ok(out)
    }

    /// Re-checks that every key and every column term is a normal form of
    /// `ctx` (columns are finite by construction).
    pub fn validate(&self, ctx: &GroupCtx) -> Result<()> {
        for (g, col) in &self.columns {
            if !ctx.is_normal(g) {
                return Err(Error::ContextMismatch(format!("column key {g:?} is not a normal form")));
            }
            col.check(ctx)?;
        }
        Ok(())
    }

    /// Restriction to the given columns (missing ones are an error).
    pub fn restrict<'a>(&self, cols: impl IntoIterator<Item = &'a Word>) -> Result<Self> {
        let mut out = SparseOperator::new();
        for g in cols {
            let c = self.columns.get(g).ok_or_else(|| Error::MissingColumn(format!("{g:?}")))?;
            out.insert(g.clone(), c.clone());
        }
        Ok(out)
    }
}

impl Operator for SparseOperator {
    fn column(&self, _ctx: &GroupCtx, g: &Word) -> Result<AlgebraElement> {
        self.columns.get(g).cloned().ok_or_else(|| Error::MissingColumn(format!("{g:?}")))
    }
}

/// `ad(a)(v) = a v - v a`, evaluated on demand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InnerDerivation {
    pub a: AlgebraElement,
}

impl Operator for InnerDerivation {
    fn column(&self, ctx: &GroupCtx, g: &Word) -> Result<AlgebraElement> {
        ctx.check(g)?;
        let g = AlgebraElement::basis(ctx.nf_unchecked(g));
        AlgebraElement::commutator(ctx, &self.a, &g)
    }
}

/// `X(u) = Σ_g λ_g X(g)`.
pub fn apply(ctx: &GroupCtx, op: &impl Operator, u: &AlgebraElement) -> Result<AlgebraElement> {
    let mut out = AlgebraElement::zero();
    for (g, &c) in u.terms() {
        out.add_scaled(c, &op.column(ctx, g)?);
    }
    Ok(out)
}

/// Materializes `ad(a)` on `domain`.
pub fn ad(ctx: &GroupCtx, a: &AlgebraElement, domain: &Ball) -> Result<SparseOperator> {
    a.check(ctx)?;
    SparseOperator::materialize(ctx, &InnerDerivation { a: a.clone() }, domain)
}

/// One failing instance of `X(uv) = X(u) v + u X(v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeibnizViolation {
    pub u: Word,
    pub v: Word,
    pub lhs: AlgebraElement,
    pub rhs: AlgebraElement,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LeibnizReport {
    pub checked: usize,
    pub violations: Vec<LeibnizViolation>,
}

impl LeibnizReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the Leibniz rule on the given pairs of group elements. A missing
/// column is an error, never a violation.
pub fn leibniz_check<'a>(
    ctx: &GroupCtx,
    op: &impl Operator,
    pairs: impl IntoIterator<Item = &'a (Word, Word)>,
) -> Result<LeibnizReport> {
    let mut report = LeibnizReport::default();
    for (u, v) in pairs {
        let uv = ctx.multiply(u, v)?;
        let lhs = op.column(ctx, &uv)?;
        let xu = op.column(ctx, u)?;
        let xv = op.column(ctx, v)?;
        let rhs = &xu.right_mul(ctx, v) + &xv.left_mul(ctx, u);
        report.checked += 1;
        if lhs != rhs {
            report.violations.push(LeibnizViolation { u: u.clone(), v: v.clone(), lhs, rhs });
        }
    }
    Ok(report)
}

/// All pairs `(u, v)` with `u`, `v` and `uv` inside the ball.
pub fn in_ball_pairs(ctx: &GroupCtx, ball: &Ball) -> Vec<(Word, Word)> {
    let mut out = Vec::new();
    for u in ball {
        for v in ball {
            if ball.contains(&ctx.nf_unchecked(&u.concat(v))) {
                out.push((u.clone(), v.clone()));
            }
        }
    }
    out
}

/// A derivation described by its values on the generators.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DerivationSpec {
    generator_values: BTreeMap<Gen, AlgebraElement>,
}

impl DerivationSpec {
    pub fn new(ctx: &GroupCtx, values: impl IntoIterator<Item = (Gen, AlgebraElement)>) -> Result<Self> {
        let mut generator_values = BTreeMap::new();
        for (g, v) in values {
            if g.index() >= ctx.rank() {
                return Err(Error::UnknownGenerator(g));
            }
            v.check(ctx)?;
            if !v.is_zero() {
                generator_values.insert(g, v);
            }
        }
        Ok(DerivationSpec { generator_values })
    }

    pub fn zero() -> Self {
        DerivationSpec::default()
    }

    pub fn value(&self, g: Gen) -> AlgebraElement {
        self.generator_values.get(&g).cloned().unwrap_or_default()
    }

    pub fn values(&self) -> impl Iterator<Item = (&Gen, &AlgebraElement)> {
        self.generator_values.iter()
    }

    /// `X(l)` for a single letter; `X(g^-1) = -g^-1 X(g) g^-1`.
    pub fn eval_letter(&self, ctx: &GroupCtx, l: Letter) -> Result<AlgebraElement> {
        if l.gen.index() >= ctx.rank() {
            return Err(Error::UnknownGenerator(l.gen));
        }
        let v = match self.generator_values.get(&l.gen) {
            Some(v) => v,
            None => return Ok(AlgebraElement::zero()),
        };
        if !l.inverse {
            return Ok(v.clone());
        }
        let ginv = ctx.nf_unchecked(&Word::from_letters([l]));
        Ok(-&v.left_mul(ctx, &ginv).right_mul(ctx, &ginv))
    }

    /// Evaluates the Leibniz extension on the letters of `w` from left to
    /// right: `X(p l) = X(p) l + p X(l)`. `X(e) = 0`.
    pub fn eval_word(&self, ctx: &GroupCtx, w: &Word) -> Result<AlgebraElement> {
        ctx.check(w)?;
        let mut acc = AlgebraElement::zero();
        let mut prefix = Word::identity();
        for l in w.letters() {
            let lw = Word::from_letters([l]);
            let xl = self.eval_letter(ctx, l)?;
            acc = &acc.right_mul(ctx, &lw) + &xl.left_mul(ctx, &prefix);
            prefix = ctx.nf_unchecked(&prefix.concat(&lw));
        }
        Ok(acc)
    }

    /// Materializes the spec on a domain.
    pub fn to_operator(&self, ctx: &GroupCtx, domain: &Ball) -> Result<SparseOperator> {
        SparseOperator::materialize(ctx, self, domain)
    }
}

impl Operator for DerivationSpec {
    fn column(&self, ctx: &GroupCtx, g: &Word) -> Result<AlgebraElement> {
        self.eval_word(ctx, g)
    }
}

/// A relator whose Leibniz value is not zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelatorFailure {
    pub index: usize,
    pub relator: Word,
    pub value: AlgebraElement,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RelatorReport {
    pub checked: usize,
    pub failures: Vec<RelatorFailure>,
}

impl RelatorReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Every relator is `e` in the group, so its Leibniz value must vanish.
pub fn relator_consistency(ctx: &GroupCtx, spec: &DerivationSpec) -> Result<RelatorReport> {
    let mut report = RelatorReport::default();
    for (index, r) in ctx.relators().iter().enumerate() {
        let value = spec.eval_word(ctx, r)?;
        report.checked += 1;
        if !value.is_zero() {
            report.failures.push(RelatorFailure { index, relator: r.clone(), value });
        }
    }
    Ok(report)
}

/// `[X, Y] = X∘Y - Y∘X`, column by column over `domain`.
pub fn lie_bracket(
    ctx: &GroupCtx,
    x: &impl Operator,
    y: &impl Operator,
    domain: &Ball,
) -> Result<SparseOperator> {
    let mut out = SparseOperator::new();
    for g in domain {
        let xg = x.column(ctx, g)?;
        let yg = y.column(ctx, g)?;
        let col = &apply(ctx, x, &yg)? - &apply(ctx, y, &xg)?;
        out.insert(g.clone(), col);
    }
    Ok(out)
}

/// The identity operator `X(g) = g` on a domain (not a derivation).
pub fn identity_operator(domain: &Ball) -> SparseOperator {
    let mut out = SparseOperator::new();
    for g in domain {
        out.insert(g.clone(), AlgebraElement::basis(g.clone()));
    }
    out
}
