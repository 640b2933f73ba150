//! Canned pipelines: the free-group counterexample and seeded checks of
//! the operator/character dictionary.

use gderiv_core::character::{
    additivity_check, char_from_operator, counterexample_f2, ff_check, local_finiteness_check, operator_from_table,
    restrict_loops, Character, FfReport, FinitenessReport,
};
use gderiv_core::derivation::{ad, in_ball_pairs, leibniz_check, DerivationSpec, SparseOperator};
use gderiv_core::groupoid::{component_morphisms, morphisms_over};
use gderiv_core::{AlgebraElement, Ball, GroupCtx, Rational, Word};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::Error;

#[derive(Debug, Clone)]
pub struct CounterexampleReport {
    pub ctx: GroupCtx,
    pub character: Character,
    pub object_radius: usize,
    pub witness_radius: usize,
    pub additivity_checked: usize,
    pub additivity_pass: bool,
    pub loops_checked: usize,
    pub loops_zero: bool,
    pub finiteness: FinitenessReport,
    pub ff: FfReport,
}

impl CounterexampleReport {
    pub fn offending_sum(&self) -> Rational {
        self.ff.offending().map(|p| p.sum).sum()
    }
}

/// Additivity on the class fragment of `x1`, the loops at `x1`, local
/// finiteness on the fiber of `x1`, and the orbit-sum check for
/// conjugation by `x1`.
pub fn counterexample(object_radius: usize, witness_radius: usize) -> Result<CounterexampleReport, Error> {
    let (ctx, character) = counterexample_f2();
    let x1 = Word::gen(0);
    let ms = component_morphisms(&ctx, &x1, object_radius, witness_radius)?;
    let table = gderiv_core::character::CharacterTable::materialize(&ctx, &character, &ms)?;
    let add = additivity_check(&ctx, &table)?;
    let loops = restrict_loops(&ctx, &character, &x1, witness_radius)?;
    let finiteness = local_finiteness_check(&ctx, &character, &x1, object_radius)?;
    let ff = ff_check(&ctx, &character, &x1, &x1, object_radius)?;
    Ok(CounterexampleReport {
        object_radius,
        witness_radius,
        additivity_checked: add.checked,
        additivity_pass: add.passed(),
        loops_checked: loops.len(),
        loops_zero: loops.is_zero(),
        finiteness,
        ff,
        ctx,
        character,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    /// Random entries at `(g, g·a)` with `|a| <= 1`.
    Random,
    /// A materialized derivation.
    Derivation,
    /// A derivation with one entry `(g, g)` changed.
    Perturbed,
}

impl OperatorKind {
    pub fn name(self) -> &'static str {
        match self {
            OperatorKind::Random => "random",
            OperatorKind::Derivation => "derivation",
            OperatorKind::Perturbed => "perturbed",
        }
    }
}

fn nonzero(rng: &mut ChaCha8Rng) -> Rational {
    let k = rng.gen_range(1..=3i128);
    Rational::from_integer(if rng.gen_bool(0.5) { k } else { -k })
}

fn random_element(rng: &mut ChaCha8Rng, support: &[Word], terms: usize) -> AlgebraElement {
    let mut u = AlgebraElement::zero();
    for _ in 0..terms {
        let w = support.choose(rng).expect("nonempty support");
        u.add_term(nonzero(rng), w.clone());
    }
    u
}

/// A seeded operator with a column for every element of `ball`.
pub fn random_operator(
    ctx: &GroupCtx,
    ball: &Ball,
    rng: &mut ChaCha8Rng,
    kind: OperatorKind,
) -> Result<SparseOperator, Error> {
    let small = ctx.ball(1)?;
    match kind {
        OperatorKind::Random => {
            let mut op = SparseOperator::new();
            for g in ball {
                let mut col = AlgebraElement::zero();
                for a in &small {
                    if rng.gen_bool(0.3) {
                        col.add_term(nonzero(rng), ctx.multiply(g, a)?);
                    }
                }
                op.insert(g.clone(), col);
            }
            Ok(op)
        }
        OperatorKind::Derivation => {
            if ctx.is_free() {
                let values: Vec<_> = ctx
                    .generators()
                    .map(|g| (g, random_element(rng, small.elements(), 3)))
                    .collect();
                Ok(DerivationSpec::new(ctx, values)?.to_operator(ctx, ball)?)
            } else {
                Ok(ad(ctx, &random_element(rng, small.elements(), 3), ball)?)
            }
        }
        OperatorKind::Perturbed => {
            let mut op = random_operator(ctx, ball, rng, OperatorKind::Derivation)?;
            let g = ball.elements().choose(rng).expect("nonempty ball").clone();
            let mut col = op.get(&g).cloned().unwrap_or_default();
            col.add_term(nonzero(rng), g.clone());
            op.insert(g, col);
            Ok(op)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DictionaryCase {
    pub kind: OperatorKind,
    pub leibniz_pass: bool,
    pub leibniz_checked: usize,
    pub additivity_pass: bool,
    pub additivity_checked: usize,
    /// Table -> operator -> table is the identity.
    pub table_round_trip: bool,
    /// Operator -> table -> operator reproduces every entry `(g, g·a)` with
    /// `a` in the ball.
    pub operator_round_trip: bool,
}

impl DictionaryCase {
    pub fn agrees(&self) -> bool {
        self.leibniz_pass == self.additivity_pass && self.table_round_trip && self.operator_round_trip
    }
}

/// Compares the Leibniz check of `op` with the additivity check of its
/// character over the ball.
pub fn dictionary_case(ctx: &GroupCtx, ball: &Ball, op: &SparseOperator, kind: OperatorKind) -> Result<DictionaryCase, Error> {
    let pairs = in_ball_pairs(ctx, ball);
    let leib = leibniz_check(ctx, op, &pairs)?;
    let ms = morphisms_over(ctx, ball.iter(), ball.elements())?;
    let table = char_from_operator(ctx, op, &ms)?;
    let add = additivity_check(ctx, &table)?;
    let rebuilt = operator_from_table(ctx, &table, ball.iter())?;
    let table_round_trip = char_from_operator(ctx, &rebuilt, &ms)? == table;
    let mut operator_round_trip = true;
    for g in ball {
        for a in ball {
            let h = ctx.multiply(g, a)?;
            if rebuilt.entry(g, &h) != op.entry(g, &h) {
                operator_round_trip = false;
            }
        }
        // nothing outside g·ball may appear in the rebuilt column
        if let Some(col) = rebuilt.get(g) {
            for h in col.support() {
                if !ball.contains(&ctx.multiply(&ctx.inverse(g)?, h)?) {
                    operator_round_trip = false;
                }
            }
        }
    }
    Ok(DictionaryCase {
        kind,
        leibniz_pass: leib.passed(),
        leibniz_checked: leib.checked,
        additivity_pass: add.passed(),
        additivity_checked: add.checked,
        table_round_trip,
        operator_round_trip,
    })
}

/// `count` seeded operators, cycling through the three kinds.
pub fn dictionary(ctx: &GroupCtx, radius: usize, count: usize, rng: &mut ChaCha8Rng) -> Result<Vec<DictionaryCase>, Error> {
    let ball = ctx.ball(radius)?;
    let kinds = [OperatorKind::Random, OperatorKind::Derivation, OperatorKind::Perturbed];
    (0..count)
        .map(|i| {
            let kind = kinds[i % kinds.len()];
            let op = random_operator(ctx, &ball, rng, kind)?;
            dictionary_case(ctx, &ball, &op, kind)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use gderiv_core::character::FfVerdict;
    use rand::SeedableRng;

    #[test]
    fn counterexample_verdict() {
        let rep = counterexample(3, 3).unwrap();
        assert!(rep.additivity_pass);
        assert!(rep.loops_zero);
        assert_eq!(rep.ff.verdict, FfVerdict::Fail);
        assert_eq!(rep.ff.offending().count(), 1);
        assert_eq!(rep.offending_sum(), Rational::from_integer(1));
        assert_eq!(rep.finiteness.nonzero_at_radius, 1);
    }

    #[test]
    fn dictionary_agrees_on_small_ball() {
        let ctx = GroupCtx::free_rank(2);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let cases = dictionary(&ctx, 2, 6, &mut rng).unwrap();
        for c in &cases {
            assert!(c.agrees(), "{c:?}");
            match c.kind {
                OperatorKind::Derivation => assert!(c.leibniz_pass),
                OperatorKind::Perturbed => assert!(!c.leibniz_pass),
                OperatorKind::Random => {}
            }
        }
    }
}
