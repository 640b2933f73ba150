//! Additive characters on the adjoint-action groupoid.
//!
//! A derivation `X` corresponds to the function
//! `T(a -> b, g) = coefficient of g·a in X(g)`, and `X` satisfies the Leibniz
//! rule exactly when `T(η * ξ) = T(η) + T(ξ)` for all composable pairs.
//! Characters are described intensionally by finitely many values on
//! elementary morphisms (witness a single generator or its inverse) and
//! extended additively.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::vec::Vec;
use core::cell::RefCell;

use num_traits::{One, Zero};

use crate::algebra::AlgebraElement;
use crate::derivation::{DerivationSpec, Operator, SparseOperator};
use crate::error::{Error, Result};
use crate::group::{GroupCtx, Radius};
use crate::groupoid::{gamma_graph, Edge, Morphism, PathKind};
use crate::word::{Gen, Letter, Word};
use crate::Rational;

/// Something that assigns values to morphisms. `Ok(None)` means the
/// morphism is not covered (only tables can be partial).
pub trait MorphismValues {
    fn lookup(&self, ctx: &GroupCtx, m: &Morphism) -> Result<Option<Rational>>;

    /// Number of stored base values when the description is finite.
    fn base_support(&self) -> Option<usize> {
        None
    }
}

/// A character given by values on elementary morphisms `(source, letter)`,
/// extended by additivity and `T(ξ^-1) = -T(ξ)`. Unlisted elementary
/// morphisms have value zero.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Character {
    base_values: BTreeMap<(Word, Letter), Rational>,
}

impl Character {
    pub fn zero() -> Self {
        Character::default()
    }

    pub fn new(ctx: &GroupCtx, values: impl IntoIterator<Item = (Word, Letter, Rational)>) -> Result<Self> {
        let mut c = Character::zero();
        for (source, l, v) in values {
            c.set(ctx, &source, l, v)?;
        }
        Ok(c)
    }

    /// Sets (overwrites) one base value.
    pub fn set(&mut self, ctx: &GroupCtx, source: &Word, l: Letter, v: Rational) -> Result<()> {
        if l.gen.index() >= ctx.rank() {
            return Err(Error::UnknownGenerator(l.gen));
        }
        let source = ctx.normal_form(source)?;
        if v.is_zero() {
            self.base_values.remove(&(source, l));
        } else {
            self.base_values.insert((source, l), v);
        }
        Ok(())
    }

    fn add(&mut self, source: Word, l: Letter, v: Rational) {
        let key = (source, l);
        let sum = self.base_values.get(&key).copied().unwrap_or_else(Rational::zero) + v;
        if sum.is_zero() {
            self.base_values.remove(&key);
        } else {
            self.base_values.insert(key, sum);
        }
    }

    pub fn base_values(&self) -> impl Iterator<Item = (&(Word, Letter), &Rational)> {
        self.base_values.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.base_values.is_empty()
    }

    /// Value on the elementary morphism `(source -> l source l^-1, l)`.
    pub fn elementary(&self, ctx: &GroupCtx, source: &Word, l: Letter) -> Rational {
        if let Some(v) = self.base_values.get(&(source.clone(), l)) {
            return *v;
        }
        if self.base_values.is_empty() {
            return Rational::zero();
        }
        // T(ξ) = -T(ξ^-1), where ξ^-1 = (l source l^-1 -> source, l^-1)
        let target = ctx.nf_unchecked(&Word::from_letters([l]).concat(source).concat(&Word::from_letters([l.inv()])));
        match self.base_values.get(&(target, l.inv())) {
            Some(v) => -*v,
            None => Rational::zero(),
        }
    }

    /// Value on an arbitrary morphism, factoring its witness into letters
    /// (rightmost letter acts first).
    pub fn value(&self, ctx: &GroupCtx, m: &Morphism) -> Result<Rational> {
        m.validate(ctx)?;
        let mut obj = m.source.clone();
        let mut sum = Rational::zero();
        for l in m.witness.letters().rev() {
            sum += self.elementary(ctx, &obj, l);
            let lw = Word::from_letters([l]);
            obj = ctx.nf_unchecked(&lw.concat(&obj).concat(&lw.inverse()));
        }
        Ok(sum)
    }

    /// Elementary morphisms whose stored value disagrees with the negated
    /// value stored on their inverse.
    pub fn inverse_conflicts(&self, ctx: &GroupCtx) -> Vec<(Word, Letter)> {
        let mut out = Vec::new();
        for ((src, l), v) in &self.base_values {
            let target = ctx.nf_unchecked(&Word::from_letters([*l]).concat(src).concat(&Word::from_letters([l.inv()])));
            if let Some(w) = self.base_values.get(&(target, l.inv())) {
                if *v + *w != Rational::zero() {
                    out.push((src.clone(), *l));
                }
            }
        }
        out
    }
}

impl MorphismValues for Character {
    fn lookup(&self, ctx: &GroupCtx, m: &Morphism) -> Result<Option<Rational>> {
        self.value(ctx, m).map(Some)
    }

    fn base_support(&self) -> Option<usize> {
        Some(self.base_values.len())
    }
}

/// A finite extensional fragment of a function on morphisms.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CharacterTable {
    values: BTreeMap<Morphism, Rational>,
}

impl CharacterTable {
    pub fn new() -> Self {
        CharacterTable::default()
    }

    pub fn insert(&mut self, ctx: &GroupCtx, m: Morphism, v: Rational) -> Result<()> {
        m.validate(ctx)?;
        self.values.insert(m, v);
        Ok(())
    }

    pub fn get(&self, m: &Morphism) -> Option<Rational> {
        self.values.get(m).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Morphism, &Rational)> {
        self.values.iter()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(Zero::is_zero)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (&Morphism, &Rational)> {
        self.values.iter().filter(|(_, v)| !v.is_zero())
    }

    /// Evaluates `values` on every morphism in the list.
    pub fn materialize<'a>(
        ctx: &GroupCtx,
        values: &impl MorphismValues,
        morphisms: impl IntoIterator<Item = &'a Morphism>,
    ) -> Result<Self> {
        let mut out = CharacterTable::new();
        for m in morphisms {
            if let Some(v) = values.lookup(ctx, m)? {
                out.insert(ctx, m.clone(), v)?;
            }
        }
        Ok(out)
    }
}

impl MorphismValues for CharacterTable {
    fn lookup(&self, _ctx: &GroupCtx, m: &Morphism) -> Result<Option<Rational>> {
        Ok(self.get(m))
    }
}

/// `T(a -> b, g)` = coefficient of `g·a` in the column `X(g)`.
pub fn char_from_operator<'a>(
    ctx: &GroupCtx,
    op: &impl Operator,
    morphisms: impl IntoIterator<Item = &'a Morphism>,
) -> Result<CharacterTable> {
    let mut out = CharacterTable::new();
    let mut cache: BTreeMap<Word, AlgebraElement> = BTreeMap::new();
    for m in morphisms {
        m.validate(ctx)?;
        if !cache.contains_key(&m.witness) {
            cache.insert(m.witness.clone(), op.column(ctx, &m.witness)?);
        }
        let col = &cache[&m.witness];
        let h = ctx.multiply(&m.witness, &m.source)?;
        out.values.insert(m.clone(), col.coeff(&h));
    }
    Ok(out)
}

/// Rebuilds operator columns `X(g) = Σ_{ξ in H_g} T(ξ)·(g·source(ξ))`.
///
/// The table's object set is the set of sources it mentions; every requested
/// column must have an entry for every such object.
pub fn operator_from_table<'a>(
    ctx: &GroupCtx,
    table: &CharacterTable,
    columns: impl IntoIterator<Item = &'a Word>,
) -> Result<SparseOperator> {
    let objects: BTreeSet<&Word> = table.values.keys().map(|m| &m.source).collect();
    let by_key: BTreeMap<(&Word, &Word), Rational> =
        table.values.iter().map(|(m, v)| ((&m.source, &m.witness), *v)).collect();
    let mut out = SparseOperator::new();
    for g in columns {
        let g = ctx.normal_form(g)?;
        let mut col = AlgebraElement::zero();
        for a in &objects {
            let v = by_key.get(&(*a, &g)).ok_or_else(|| {
                Error::IncompleteCoverage(format!("morphism with source {a:?} and witness {g:?}"))
            })?;
            col.add_term(*v, ctx.nf_unchecked(&g.concat(a)));
        }
        out.insert(g, col);
    }
    Ok(out)
}

/// A composable pair where `T(η * ξ) != T(η) + T(ξ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdditivityViolation {
    pub eta: Morphism,
    pub xi: Morphism,
    pub composite: Morphism,
    pub eta_value: Rational,
    pub xi_value: Rational,
    pub composite_value: Rational,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AdditivityReport {
    pub checked: usize,
    pub violations: Vec<AdditivityViolation>,
}

impl AdditivityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks additivity on every composable pair whose factors and composite
/// are all in the table.
pub fn additivity_check(ctx: &GroupCtx, table: &CharacterTable) -> Result<AdditivityReport> {
    let mut by_source: BTreeMap<&Word, Vec<(&Morphism, Rational)>> = BTreeMap::new();
    for (m, v) in &table.values {
        by_source.entry(&m.source).or_default().push((m, *v));
    }
    let mut report = AdditivityReport::default();
    for (xi, &xv) in &table.values {
        let Some(nexts) = by_source.get(&xi.target) else { continue };
        for &(eta, ev) in nexts {
            let composite = Morphism {
                source: xi.source.clone(),
                witness: ctx.multiply(&eta.witness, &xi.witness)?,
                target: eta.target.clone(),
            };
            let Some(cv) = table.get(&composite) else { continue };
            report.checked += 1;
            if cv != ev + xv {
                report.violations.push(AdditivityViolation {
                    eta: eta.clone(),
                    xi: xi.clone(),
                    composite,
                    eta_value: ev,
                    xi_value: xv,
                    composite_value: cv,
                });
            }
        }
    }
    Ok(report)
}

/// Nonzero counts on one fiber over two nested object balls.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitenessReport {
    pub witness: Word,
    pub radius: usize,
    pub nonzero_at_radius: usize,
    pub nonzero_at_previous: Option<usize>,
    /// Counts agree between radius r-1 and r. Heuristic only.
    pub stable: bool,
    /// Number of stored base values when the character is finitely described.
    pub base_support: Option<usize>,
    pub support: Vec<Morphism>,
}

pub fn local_finiteness_check(
    ctx: &GroupCtx,
    chr: &impl MorphismValues,
    g: &Word,
    object_radius: usize,
) -> Result<FinitenessReport> {
    let g = ctx.normal_form(g)?;
    let count = |r: usize| -> Result<Vec<Morphism>> {
        let mut support = Vec::new();
        for a in &ctx.ball(r)? {
            let m = Morphism { source: a.clone(), witness: g.clone(), target: ctx.conjugate(&g, a)? };
            if let Some(v) = chr.lookup(ctx, &m)? {
                if !v.is_zero() {
                    support.push(m);
                }
            }
        }
        Ok(support)
    };
    let support = count(object_radius)?;
    let previous = if object_radius > 0 { Some(count(object_radius - 1)?.len()) } else { None };
    Ok(FinitenessReport {
        witness: g,
        radius: object_radius,
        nonzero_at_radius: support.len(),
        nonzero_at_previous: previous,
        stable: previous == Some(support.len()),
        base_support: chr.base_support(),
        support,
    })
}

/// `T(ξ) = [target = a] - [source = a]`, evaluated directly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InnerRule {
    pub a: Word,
}

impl MorphismValues for InnerRule {
    fn lookup(&self, ctx: &GroupCtx, m: &Morphism) -> Result<Option<Rational>> {
        m.validate(ctx)?;
        let ind = |b: bool| if b { Rational::one() } else { Rational::zero() };
        Ok(Some(ind(m.target == self.a) - ind(m.source == self.a)))
    }
}

/// The character of `ad(a)` as base values: `+1` on `(g^-1 a g -> a, g)` and
/// `-1` on `(a -> g a g^-1, g)` for every generator `g`.
pub fn inner_character(ctx: &GroupCtx, a: &Word) -> Result<Character> {
    let a = ctx.normal_form(a)?;
    let mut c = Character::zero();
    for g in ctx.generators() {
        let l = Letter::new(g, false);
        let gw = Word::gen(g.0);
        let pre = ctx.conjugate(&ctx.inverse(&gw)?, &a)?;
        c.add(pre, l, Rational::one());
        c.add(a.clone(), l, -Rational::one());
    }
    Ok(c)
}

/// Values on loops at `a` with witnesses among the centralizer members of
/// the given radius.
pub fn restrict_loops(
    ctx: &GroupCtx,
    chr: &impl MorphismValues,
    a: &Word,
    witness_radius: impl Into<Radius>,
) -> Result<CharacterTable> {
    let a = ctx.normal_form(a)?;
    let mut out = CharacterTable::new();
    for g in ctx.centralizer_members(&a, witness_radius)? {
        let m = Morphism { source: a.clone(), witness: g, target: a.clone() };
        if let Some(v) = chr.lookup(ctx, &m)? {
            out.values.insert(m, v);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopReport {
    /// The character vanishes on the loops at the base point.
    pub base_vanishes: bool,
    pub checked: usize,
    pub violations: Vec<(Morphism, Rational)>,
}

impl LoopReport {
    pub fn passed(&self) -> bool {
        self.base_vanishes && self.violations.is_empty()
    }
}

/// If a character vanishes on the loops at `a`, it vanishes on the loops at
/// every conjugate of `a`. Checks this over a class fragment.
pub fn loop_vanishing_transfer_check(
    ctx: &GroupCtx,
    chr: &impl MorphismValues,
    a: &Word,
    object_radius: impl Into<Radius>,
    witness_radius: impl Into<Radius>,
) -> Result<LoopReport> {
    let witness_radius = witness_radius.into();
    let a = ctx.normal_form(a)?;
    let base = restrict_loops(ctx, chr, &a, witness_radius)?;
    let mut report = LoopReport { base_vanishes: base.is_zero(), checked: 0, violations: Vec::new() };
    for u in ctx.conjugacy_class_ball(&a, object_radius)? {
        for g in ctx.centralizer_members(&u, witness_radius)? {
            let m = Morphism { source: u.clone(), witness: g, target: u.clone() };
            if let Some(v) = chr.lookup(ctx, &m)? {
                report.checked += 1;
                if !v.is_zero() {
                    report.violations.push((m, v));
                }
            }
        }
    }
    Ok(report)
}

/// Additive closure of a character on centralizer generators, grown
/// breadth-first on demand.
#[derive(Debug, Clone)]
struct ChiClosure {
    gens: Vec<(Word, Rational)>,
    values: BTreeMap<Word, Rational>,
    frontier: VecDeque<Word>,
}

impl ChiClosure {
    fn eval(&mut self, ctx: &GroupCtx, z: &Word) -> Result<Rational> {
        loop {
            if let Some(v) = self.values.get(z) {
                return Ok(*v);
            }
            let Some(w) = self.frontier.pop_front() else {
                return Err(Error::Stabilizer(format!("{z:?} is outside the subgroup generated by the domain of chi")));
            };
            let base = self.values[&w];
            for (c, cv) in &self.gens {
                for (step, sv) in [(c.clone(), *cv), (c.inverse(), -*cv)] {
                    let next = ctx.nf_unchecked(&w.concat(&step));
                    let val = base + sv;
                    match self.values.get(&next) {
                        Some(old) if *old != val => {
                            return Err(Error::Stabilizer(format!(
                                "chi is not additive: {next:?} reached with values {old} and {val}"
                            )))
                        }
                        Some(_) => {}
                        None => {
                            if self.values.len() >= ctx.cap() {
                                return Err(Error::CapExceeded { cap: ctx.cap() });
                            }
                            self.values.insert(next.clone(), val);
                            self.frontier.push_back(next);
                        }
                    }
                }
            }
        }
    }
}

/// A character on a conjugacy-class fragment extending a character `chi` of
/// the centralizer of `a`: `T(x: b -> c) = chi(g_{a,c}^-1 · x · g_{a,b})`,
/// where `g_{a,b}` is the shortlex-least conjugator taking `a` to `b`.
#[derive(Debug, Clone)]
pub struct StabilizerExtension {
    pub base: Word,
    transversal: BTreeMap<Word, Word>,
    chi: RefCell<ChiClosure>,
}

impl StabilizerExtension {
    /// `g_{a,b}` for each class member `b` in the fragment.
    pub fn transversal(&self) -> impl Iterator<Item = (&Word, &Word)> {
        self.transversal.iter()
    }

    pub fn objects(&self) -> impl Iterator<Item = &Word> {
        self.transversal.keys()
    }

    /// `chi` on a centralizer element.
    pub fn chi(&self, ctx: &GroupCtx, z: &Word) -> Result<Rational> {
        self.chi.borrow_mut().eval(ctx, z)
    }

    pub fn value(&self, ctx: &GroupCtx, m: &Morphism) -> Result<Rational> {
        m.validate(ctx)?;
        let g_ab = self
            .transversal
            .get(&m.source)
            .ok_or_else(|| Error::OutsideFragment(format!("source {:?}", m.source)))?;
        let g_ac = self
            .transversal
            .get(&m.target)
            .ok_or_else(|| Error::OutsideFragment(format!("target {:?}", m.target)))?;
        let z = ctx.nf_unchecked(&g_ac.inverse().concat(&m.witness).concat(g_ab));
        debug_assert!(ctx.commutes(&z, &self.base).unwrap_or(false));
        self.chi(ctx, &z)
    }
}

impl MorphismValues for StabilizerExtension {
    fn lookup(&self, ctx: &GroupCtx, m: &Morphism) -> Result<Option<Rational>> {
        self.value(ctx, m).map(Some)
    }
}

/// Extends `chi`, given on generators of (part of) the centralizer of `a`,
/// to the class fragment of `a` of the given radius.
pub fn extend_from_stabilizer(
    ctx: &GroupCtx,
    a: &Word,
    chi: &[(Word, Rational)],
    object_radius: impl Into<Radius>,
) -> Result<StabilizerExtension> {
    let a = ctx.normal_form(a)?;
    let mut gens = Vec::new();
    for (c, v) in chi {
        let c = ctx.normal_form(c)?;
        if !ctx.commutes(&c, &a)? {
            return Err(Error::Stabilizer(format!("{c:?} does not centralize {a:?}")));
        }
        gens.push((c, *v));
    }
    let mut transversal = BTreeMap::new();
    for g in &ctx.ball(object_radius)? {
        let b = ctx.conjugate(g, &a)?;
        transversal.entry(b).or_insert_with(|| g.clone());
    }
    debug_assert_eq!(transversal.get(&a), Some(&Word::identity()));
    let mut values = BTreeMap::new();
    values.insert(Word::identity(), Rational::zero());
    let closure = ChiClosure { gens, values, frontier: VecDeque::from([Word::identity()]) };
    Ok(StabilizerExtension { base: a, transversal, chi: RefCell::new(closure) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FfVerdict {
    Pass,
    Fail,
    InconclusiveTruncation,
}

impl FfVerdict {
    pub fn name(self) -> &'static str {
        match self {
            FfVerdict::Pass => "pass",
            FfVerdict::Fail => "fail",
            FfVerdict::InconclusiveTruncation => "inconclusive-truncation",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FfPath {
    pub kind: PathKind,
    pub edges: Vec<(Edge, Rational)>,
    pub sum: Rational,
    /// Value on the edge entering a truncated path from outside.
    pub entry_value: Option<Rational>,
    /// Cycles are always conclusive; truncated paths only when both edges
    /// touching the outside of the fragment carry value zero.
    pub conclusive: bool,
}

impl FfPath {
    pub fn offending(&self) -> bool {
        self.conclusive && !self.sum.is_zero()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FfReport {
    pub mover: Word,
    pub base: Word,
    pub verdict: FfVerdict,
    pub paths: Vec<FfPath>,
}

impl FfReport {
    pub fn offending(&self) -> impl Iterator<Item = &FfPath> {
        self.paths.iter().filter(|p| p.offending())
    }
}

/// Sums the character along every orbit of conjugation by `g` on the class
/// fragment of `a`.
pub fn ff_check(
    ctx: &GroupCtx,
    chr: &impl MorphismValues,
    g: &Word,
    a: &Word,
    object_radius: impl Into<Radius>,
) -> Result<FfReport> {
    let graph = gamma_graph(ctx, g, a, object_radius)?;
    let edge_value = |from: &Word, to: &Word| -> Result<Rational> {
        let m = Morphism { source: from.clone(), witness: graph.mover.clone(), target: to.clone() };
        chr.lookup(ctx, &m)?
            .ok_or_else(|| Error::OutsideFragment(format!("no value for edge {from:?} -> {to:?}")))
    };
    let mut paths = Vec::new();
    for p in &graph.paths {
        let mut edges = Vec::with_capacity(p.edges.len());
        let mut sum = Rational::zero();
        for e in &p.edges {
            let v = edge_value(&e.from, &e.to)?;
            sum += v;
            edges.push((e.clone(), v));
        }
        let (entry_value, conclusive) = match p.kind {
            PathKind::Cycle => (None, true),
            PathKind::Truncated => {
                let first = &p.edges[0].from;
                let entry = p.entry.as_ref().expect("truncated paths record their entry");
                let ev = edge_value(entry, first)?;
                let exit_zero = edges.last().is_none_or(|(e, v)| !e.boundary || v.is_zero());
                (Some(ev), ev.is_zero() && exit_zero)
            }
        };
        paths.push(FfPath { kind: p.kind, edges, sum, entry_value, conclusive });
    }
    let verdict = if paths.iter().any(FfPath::offending) {
        FfVerdict::Fail
    } else if paths.iter().any(|p| !p.conclusive) {
        FfVerdict::InconclusiveTruncation
    } else {
        FfVerdict::Pass
    };
    Ok(FfReport { mover: graph.mover, base: graph.base, verdict, paths })
}

/// The free group on `x1, x2` and the character with a single base value 1
/// on `(x2 x1 x2^-1 -> x1 x2 x1 x2^-1 x1^-1, x1)`: locally finite, zero on
/// the loops at `x1`, yet it violates the orbit-sum condition.
pub fn counterexample_f2() -> (GroupCtx, Character) {
    let ctx = GroupCtx::free_rank(2);
    let source = Word::from_syllables([(Gen(1), 1), (Gen(0), 1), (Gen(1), -1)]);
    let mut c = Character::zero();
    c.add(source, Letter::pos(0), Rational::one());
    (ctx, c)
}

fn check_hom(ctx: &GroupCtx, hom: &BTreeMap<Gen, Rational>) -> Result<()> {
    for g in hom.keys() {
        if g.index() >= ctx.rank() {
            return Err(Error::UnknownGenerator(*g));
        }
    }
    for r in ctx.relators() {
        let s: Rational = ctx
            .generators()
            .map(|g| hom.get(&g).copied().unwrap_or_else(Rational::zero) * Rational::from_integer(r.exponent_sum(g) as i128))
            .sum();
        if !s.is_zero() {
            return Err(Error::RelatorNonzero(format!("relator {r:?} sums to {s}")));
        }
    }
    Ok(())
}

/// The derivation `X(g) = T(g) g` of an additive map `T: G -> Q` given on
/// generators. Its matrix is diagonal.
pub fn identity_class_derivation(ctx: &GroupCtx, hom: &BTreeMap<Gen, Rational>) -> Result<DerivationSpec> {
    check_hom(ctx, hom)?;
    DerivationSpec::new(
        ctx,
        hom.iter().map(|(&g, &v)| (g, AlgebraElement::term(v, ctx.nf_unchecked(&Word::gen(g.0))))),
    )
}

/// The matching character: `hom` on the loops at `e`, zero elsewhere.
pub fn identity_class_character(ctx: &GroupCtx, hom: &BTreeMap<Gen, Rational>) -> Result<Character> {
    check_hom(ctx, hom)?;
    Character::new(ctx, hom.iter().map(|(&g, &v)| (Word::identity(), Letter::new(g, false), v)))
}
