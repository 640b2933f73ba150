//! Linear constraints that relators impose on character base values.
//!
//! Unknowns are the values `T(β -> gβg^-1, g)` for objects `β` in a ball and
//! positive generators `g`. Each relator `r` and object `α` give the row
//! `Σ_j T(ξ_j) = 0`, where `ξ_1, ..., ξ_s` is the chain of elementary
//! morphisms spelled by `r` starting at `α`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::character::{Character, CharacterTable, InnerRule, MorphismValues, StabilizerExtension};
use crate::error::{Error, Result};
use crate::group::{GroupCtx, Radius};
use crate::groupoid::Morphism;
use crate::linalg;
use crate::word::{Gen, Letter, Word};
use crate::Rational;

/// Anything that can be evaluated on elementary morphisms.
pub trait ElementaryValues {
    fn elementary_value(&self, ctx: &GroupCtx, source: &Word, l: Letter) -> Result<Rational>;
}

impl ElementaryValues for Character {
    fn elementary_value(&self, ctx: &GroupCtx, source: &Word, l: Letter) -> Result<Rational> {
        Ok(self.elementary(ctx, source, l))
    }
}

fn elementary_morphism(ctx: &GroupCtx, source: &Word, l: Letter) -> Result<Morphism> {
    let lw = ctx.normal_form(&Word::from_letters([l]))?;
    Ok(Morphism { source: source.clone(), target: ctx.conjugate(&lw, source)?, witness: lw })
}

fn lookup_elementary(v: &impl MorphismValues, ctx: &GroupCtx, source: &Word, l: Letter) -> Result<Rational> {
    let m = elementary_morphism(ctx, source, l)?;
    v.lookup(ctx, &m)?.ok_or_else(|| Error::OutsideFragment(format!("{m:?}")))
}

impl ElementaryValues for CharacterTable {
    fn elementary_value(&self, ctx: &GroupCtx, source: &Word, l: Letter) -> Result<Rational> {
        lookup_elementary(self, ctx, source, l)
    }
}

impl ElementaryValues for InnerRule {
    fn elementary_value(&self, ctx: &GroupCtx, source: &Word, l: Letter) -> Result<Rational> {
        lookup_elementary(self, ctx, source, l)
    }
}

impl ElementaryValues for StabilizerExtension {
    fn elementary_value(&self, ctx: &GroupCtx, source: &Word, l: Letter) -> Result<Rational> {
        lookup_elementary(self, ctx, source, l)
    }
}

/// The chain of elementary morphisms spelled by `relator` at `alpha`, in
/// application order: the rightmost letter acts first, so the composite
/// has witness `relator` and returns to `alpha`.
pub fn relator_morphism_chain(ctx: &GroupCtx, relator: &Word, alpha: &Word) -> Result<Vec<(Letter, Morphism)>> {
    ctx.check(relator)?;
    let alpha = ctx.normal_form(alpha)?;
    let mut obj = alpha.clone();
    let mut chain = Vec::with_capacity(relator.len());
    for l in relator.letters().rev() {
        let m = elementary_morphism(ctx, &obj, l)?;
        obj = m.target.clone();
        chain.push((l, m));
    }
    if obj != alpha {
        return Err(Error::RelatorNonzero(format!("{relator:?} moves {alpha:?} to {obj:?}")));
    }
    Ok(chain)
}

/// One relator applied at one base object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintRow {
    pub relator_index: usize,
    pub relator: Word,
    pub object: Word,
    /// Sparse coefficients over the unknown indices.
    pub entries: BTreeMap<usize, Rational>,
    /// Some elementary morphism of the chain has an unknown outside the ball.
    pub boundary: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintSystem {
    pub radius: Radius,
    pub unknowns: Vec<(Word, Gen)>,
    index: BTreeMap<(Word, Gen), usize>,
    pub rows: Vec<ConstraintRow>,
}

impl ConstraintSystem {
    pub fn unknown_index(&self, object: &Word, g: Gen) -> Option<usize> {
        self.index.get(&(object.clone(), g)).copied()
    }

    pub fn interior_rows(&self) -> impl Iterator<Item = &ConstraintRow> {
        self.rows.iter().filter(|r| !r.boundary)
    }

    pub fn boundary_rows(&self) -> impl Iterator<Item = &ConstraintRow> {
        self.rows.iter().filter(|r| r.boundary)
    }

    fn dense(&self, row: &ConstraintRow) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.unknowns.len()];
        for (&i, &c) in &row.entries {
            v[i] = c;
        }
        v
    }

    /// Dense interior rows.
    pub fn interior_matrix(&self) -> Vec<Vec<Rational>> {
        self.interior_rows().map(|r| self.dense(r)).collect()
    }

    /// The character whose base values on positive generators are the
    /// entries of `v`.
    pub fn character_from_vector(&self, ctx: &GroupCtx, v: &[Rational]) -> Result<Character> {
        assert_eq!(v.len(), self.unknowns.len(), "vector length mismatch");
        Character::new(
            ctx,
            self.unknowns.iter().zip(v).map(|((obj, g), x)| (obj.clone(), Letter::new(*g, false), *x)),
        )
    }

    /// Base values of a character on the unknowns.
    pub fn vector_of(&self, ctx: &GroupCtx, chr: &impl ElementaryValues) -> Result<Vec<Rational>> {
        self.unknowns.iter().map(|(obj, g)| chr.elementary_value(ctx, obj, Letter::new(*g, false))).collect()
    }
}

/// One row per relator and object of the ball, relators outermost.
pub fn build_system(ctx: &GroupCtx, object_radius: impl Into<Radius>) -> Result<ConstraintSystem> {
    let radius = object_radius.into();
    let ball = ctx.ball(radius)?;
    let mut unknowns = Vec::new();
    let mut index = BTreeMap::new();
    for obj in &ball {
        for g in ctx.generators() {
            index.insert((obj.clone(), g), unknowns.len());
            unknowns.push((obj.clone(), g));
        }
    }
    let mut rows = Vec::new();
    for (ri, r) in ctx.relators().iter().enumerate() {
        for alpha in &ball {
            let mut entries: BTreeMap<usize, Rational> = BTreeMap::new();
            let mut boundary = false;
            for (l, m) in relator_morphism_chain(ctx, r, alpha)? {
                // T(β -> g^-1βg, g^-1) = -T(g^-1βg -> β, g)
                let (key, sign) =
                    if l.inverse { ((m.target.clone(), l.gen), -Rational::one()) } else { ((m.source.clone(), l.gen), Rational::one()) };
                match index.get(&key) {
                    Some(&i) => *entries.entry(i).or_insert_with(Rational::zero) += sign,
                    None => boundary = true,
                }
            }
            entries.retain(|_, c| !c.is_zero());
            rows.push(ConstraintRow { relator_index: ri, relator: r.clone(), object: alpha.clone(), entries, boundary });
        }
    }
    Ok(ConstraintSystem { radius, unknowns, index, rows })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub rank: usize,
    pub interior_rows: usize,
    pub boundary_rows: usize,
    /// Basis of the solution space, as vectors over the unknowns.
    pub basis: Vec<Vec<Rational>>,
}

impl Solution {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// Solves the interior rows exactly. Boundary rows are counted but ignored.
pub fn solve_system(system: &ConstraintSystem) -> Result<Solution> {
    let m = system.interior_matrix();
    let ech = linalg::row_reduce(&m, system.unknowns.len())?;
    Ok(Solution {
        rank: ech.rank(),
        interior_rows: m.len(),
        boundary_rows: system.boundary_rows().count(),
        basis: ech.nullspace(),
    })
}

/// An interior row on which a character's chain sum is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowViolation {
    pub row: usize,
    pub relator_index: usize,
    pub relator: Word,
    pub object: Word,
    pub chain: Vec<(Morphism, Rational)>,
    pub sum: Rational,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub checked: usize,
    pub boundary_skipped: usize,
    /// Rows touching morphisms the character does not cover.
    pub uncovered: usize,
    pub violations: Vec<RowViolation>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Evaluates every interior row by summing the character's own elementary
/// values along the relator chain. Rows the character does not cover are
/// counted and skipped.
pub fn verify_character(
    ctx: &GroupCtx,
    chr: &impl ElementaryValues,
    object_radius: impl Into<Radius>,
) -> Result<VerifyReport> {
    let system = build_system(ctx, object_radius)?;
    let mut report = VerifyReport::default();
    for (i, row) in system.rows.iter().enumerate() {
        if row.boundary {
            report.boundary_skipped += 1;
            continue;
        }
        let mut chain = Vec::new();
        let mut sum = Rational::zero();
        let mut covered = true;
        for (l, m) in relator_morphism_chain(ctx, &row.relator, &row.object)? {
            let v = match chr.elementary_value(ctx, &m.source, l) {
                Ok(v) => v,
                Err(Error::OutsideFragment(_)) => {
                    covered = false;
                    break;
                }
                Err(e) => return Err(e),
            };
            sum += v;
            chain.push((m, v));
        }
        if !covered {
            report.uncovered += 1;
            continue;
        }
        report.checked += 1;
        if !sum.is_zero() {
            report.violations.push(RowViolation {
                row: i,
                relator_index: row.relator_index,
                relator: row.relator.clone(),
                object: row.object.clone(),
                chain,
                sum,
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::character::{extend_from_stabilizer, identity_class_character, inner_character};
    use crate::text::parse_presentation;

    fn q(n: i128) -> Rational {
        Rational::from_integer(n)
    }

    fn z2() -> GroupCtx {
        parse_presentation("gens: a b\nrel: a b a^-1 b^-1").unwrap()
    }

    fn s3() -> GroupCtx {
        parse_presentation("gens: a b\nrel: a^3, b^2, (a b)^2").unwrap()
    }

    #[test]
    fn chains() {
        let z = z2();
        let a = Word::gen(0);
        let chain = relator_morphism_chain(&z, &z.relators()[0], &a).unwrap();
        assert_eq!(chain.len(), 4);
        assert!(chain.iter().all(|(_, m)| m.is_loop() && m.source == a));

        let s = s3();
        let chain = relator_morphism_chain(&s, &s.relators()[1], &Word::identity()).unwrap();
        assert!(chain.iter().all(|(_, m)| m.is_loop()));
        let b = Word::gen(1);
        let chain = relator_morphism_chain(&s, &s.relators()[0], &b).unwrap();
        assert_eq!(chain.len(), 3);
        let objs: alloc::collections::BTreeSet<_> = chain.iter().map(|(_, m)| m.source.clone()).collect();
        assert_eq!(objs.len(), 3);
        assert_eq!(chain[2].1.target, b);
    }

    #[test]
    fn free_group_system_is_empty() {
        let f2 = GroupCtx::free_rank(2);
        let sys = build_system(&f2, 1).unwrap();
        assert!(sys.rows.is_empty());
        assert_eq!(sys.unknowns.len(), 10);
        assert_eq!(solve_system(&sys).unwrap().dimension(), 10);
    }

    #[test]
    fn s3_full_system() {
        let s = s3();
        let sys = build_system(&s, Radius::Infinite).unwrap();
        assert_eq!(sys.unknowns.len(), 12);
        assert_eq!(sys.rows.len(), 18);
        assert_eq!(sys.boundary_rows().count(), 0);
        let sol = solve_system(&sys).unwrap();
        assert_eq!(sol.dimension(), 3);
        for v in &sol.basis {
            let chr = sys.character_from_vector(&s, v).unwrap();
            assert!(verify_character(&s, &chr, Radius::Infinite).unwrap().passed());
        }
    }

    #[test]
    fn z2_rows_and_boundary() {
        let z = z2();
        let sys = build_system(&z, 1).unwrap();
        assert_eq!(sys.rows.len(), 5);
        assert!(sys.interior_rows().all(|r| r.entries.is_empty()));
        let sys = build_system(&z, 2).unwrap();
        assert_eq!(sys.boundary_rows().count(), 0);

        // In Z/2 * Z the chain of a^2 at b leaves the ball through a b a^-1.
        let g = parse_presentation("gens: a b\nrel: a^2").unwrap();
        let sys = build_system(&g, 1).unwrap();
        let b_row = sys.rows.iter().find(|r| r.object == Word::gen(1)).unwrap();
        assert!(b_row.boundary);
        assert!(!sys.rows.iter().find(|r| r.object == Word::identity()).unwrap().boundary);
    }

    #[test]
    fn verify_examples() {
        let z = z2();
        assert!(verify_character(&z, &Character::zero(), 2).unwrap().passed());
        let inner = inner_character(&z, &Word::gen(0)).unwrap();
        assert!(verify_character(&z, &inner, 2).unwrap().passed());
        let mut hom = BTreeMap::new();
        hom.insert(Gen(0), q(1));
        hom.insert(Gen(1), q(-2));
        assert!(verify_character(&z, &identity_class_character(&z, &hom).unwrap(), 2).unwrap().passed());

        // Z^2 fixes every object, so only an inconsistent pair of explicit
        // values on a loop and its inverse can break a row.
        let mut bad = inner.clone();
        bad.set(&z, &Word::identity(), Letter::pos(1), q(1)).unwrap();
        bad.set(&z, &Word::identity(), Letter::neg(1), q(7)).unwrap();
        let rep = verify_character(&z, &bad, 2).unwrap();
        assert!(!rep.passed());
        assert_eq!(rep.violations[0].object, Word::identity());
        assert_eq!(rep.violations[0].sum, q(8));
    }

    #[test]
    fn verify_stabilizer_extension() {
        let z = z2();
        let a = Word::gen(0);
        let ext = extend_from_stabilizer(&z, &a, &[(a.clone(), q(1)), (Word::gen(1), q(2))], 2).unwrap();
        // In Z^2 the class of a is {a}; only loops at a are covered.
        let m = elementary_morphism(&z, &a, Letter::pos(1)).unwrap();
        assert_eq!(ext.value(&z, &m).unwrap(), q(2));
        let rep = verify_character(&z, &ext, 2).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.checked, 1);
        assert_eq!(rep.uncovered, 12);
    }
}
