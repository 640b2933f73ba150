mod common;

use common::*;
use gderiv_core::character::{
    additivity_check, char_from_operator, extend_from_stabilizer, ff_check, identity_class_character,
    inner_character, operator_from_table, restrict_loops, CharacterTable, FfVerdict, InnerRule,
};
use gderiv_core::constraints::{build_system, verify_character};
use gderiv_core::derivation::{
    ad, apply, in_ball_pairs, leibniz_check, lie_bracket, DerivationSpec, InnerDerivation,
};
use gderiv_core::groupoid::{compose, component_morphisms, invert, make_morphism, morphisms_over};
use gderiv_core::text::{parse_element, parse_presentation, parse_word, render_element, render_word};
use gderiv_core::{AlgebraElement, Gen, GroupCtx, Radius, Word};
use proptest::prelude::*;
use std::collections::BTreeMap;

fn ctx_for(i: usize) -> GroupCtx {
    groups().swap_remove(i).1
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_form_is_idempotent(i in 0usize..4, u in raw_word(2, 8), v in raw_word(2, 8)) {
        let ctx = ctx_for(i);
        let n = ctx.normal_form(&u).unwrap();
        prop_assert_eq!(ctx.normal_form(&n).unwrap(), n.clone());
        let uv = ctx.multiply(&u, &v).unwrap();
        prop_assert_eq!(ctx.normal_form(&uv).unwrap(), uv.clone());
        prop_assert!(ctx.is_normal(&uv));
    }

    #[test]
    fn inverse_is_an_involution(i in 0usize..4, u in raw_word(2, 8)) {
        let ctx = ctx_for(i);
        let inv = ctx.inverse(&u).unwrap();
        prop_assert_eq!(ctx.inverse(&inv).unwrap(), ctx.normal_form(&u).unwrap());
        prop_assert!(ctx.multiply(&u, &inv).unwrap().is_identity());
    }

    #[test]
    fn conjugation_is_functorial(i in 0usize..4, g1 in raw_word(2, 2), g2 in raw_word(2, 2), a in raw_word(2, 4)) {
        let ctx = ctx_for(i);
        let g21 = ctx.multiply(&g2, &g1).unwrap();
        let lhs = ctx.conjugate(&g21, &a).unwrap();
        let rhs = ctx.conjugate(&g2, &ctx.conjugate(&g1, &a).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn convolution_is_associative_and_unital(
        i in 0usize..4,
        u in element(2, 2, 3),
        v in element(2, 2, 3),
        w in element(2, 2, 3),
    ) {
        let ctx = ctx_for(i);
        let (u, v, w) = (build(&ctx, &u), build(&ctx, &v), build(&ctx, &w));
        let conv = |x: &AlgebraElement, y: &AlgebraElement| AlgebraElement::convolve(&ctx, x, y).unwrap();
        prop_assert_eq!(conv(&conv(&u, &v), &w), conv(&u, &conv(&v, &w)));
        let e = AlgebraElement::identity();
        prop_assert_eq!(conv(&e, &u), u.clone());
        prop_assert_eq!(conv(&u, &e), u.clone());
        for g in conv(&u, &v).support() {
            prop_assert!(ctx.is_normal(g));
        }
    }

    #[test]
    fn commutator_satisfies_jacobi(
        i in 0usize..4,
        u in element(2, 1, 3),
        v in element(2, 1, 3),
        w in element(2, 1, 3),
    ) {
        let ctx = ctx_for(i);
        let (u, v, w) = (build(&ctx, &u), build(&ctx, &v), build(&ctx, &w));
        let br = |x: &AlgebraElement, y: &AlgebraElement| AlgebraElement::commutator(&ctx, x, y).unwrap();
        let sum = &(&br(&u, &br(&v, &w)) + &br(&v, &br(&w, &u))) + &br(&w, &br(&u, &v));
        prop_assert!(sum.is_zero());
    }

    #[test]
    fn ideal_identity(i in 0usize..2, u in element(2, 1, 3), x1 in element(2, 1, 2), x2 in element(2, 1, 2)) {
        let ctx = ctx_for(i);
        let u = build(&ctx, &u);
        let spec = DerivationSpec::new(&ctx, [(Gen(0), build(&ctx, &x1)), (Gen(1), build(&ctx, &x2))]).unwrap();
        let ball = ctx.ball(1).unwrap();
        let lhs = lie_bracket(&ctx, &InnerDerivation { a: u.clone() }, &spec, &ball).unwrap();
        let xu = apply(&ctx, &spec, &u).unwrap();
        let rhs = ad(&ctx, &xu, &ball).unwrap();
        for g in &ball {
            prop_assert_eq!(lhs.get(g).unwrap(), &-rhs.get(g).unwrap());
        }
    }

    #[test]
    fn compose_is_associative(
        i in 0usize..4,
        a in raw_word(2, 3),
        g1 in raw_word(2, 3),
        g2 in raw_word(2, 3),
        g3 in raw_word(2, 3),
    ) {
        let ctx = ctx_for(i);
        let m1 = make_morphism(&ctx, &a, &g1).unwrap();
        let m2 = make_morphism(&ctx, &m1.target, &g2).unwrap();
        let m3 = make_morphism(&ctx, &m2.target, &g3).unwrap();
        let left = compose(&ctx, &compose(&ctx, &m3, &m2).unwrap(), &m1).unwrap();
        let right = compose(&ctx, &m3, &compose(&ctx, &m2, &m1).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        let inv = invert(&ctx, &left).unwrap();
        prop_assert!(compose(&ctx, &inv, &left).unwrap().witness.is_identity());
    }

    #[test]
    fn text_round_trips(i in 0usize..4, u in element(2, 4, 4), w in raw_word(2, 6)) {
        let ctx = ctx_for(i);
        let u = build(&ctx, &u);
        prop_assert_eq!(parse_element(&ctx, &render_element(&ctx, &u)).unwrap(), u);
        let w = ctx.normal_form(&w).unwrap();
        prop_assert_eq!(parse_word(ctx.names(), &render_word(&ctx, &w)).unwrap(), w);
    }

    #[test]
    fn character_dictionary_round_trip(x1 in element(2, 1, 3), x2 in element(2, 1, 3), seed in 0usize..17) {
        let ctx = f2();
        let spec = DerivationSpec::new(&ctx, [(Gen(0), build(&ctx, &x1)), (Gen(1), build(&ctx, &x2))]).unwrap();
        let ball = ctx.ball(2).unwrap();
        let op = spec.to_operator(&ctx, &ball).unwrap();
        let ms = morphisms_over(&ctx, ball.iter(), ball.elements()).unwrap();
        let table = char_from_operator(&ctx, &op, &ms).unwrap();
        prop_assert!(additivity_check(&ctx, &table).unwrap().passed());
        let rebuilt = operator_from_table(&ctx, &table, ball.iter()).unwrap();
        prop_assert_eq!(char_from_operator(&ctx, &rebuilt, &ms).unwrap(), table);
        // rebuilt agrees with op on every entry (g, g a) with a in the ball
        let g = &ball.elements()[seed];
        for a in &ball {
            let h = ctx.multiply(g, a).unwrap();
            prop_assert_eq!(rebuilt.entry(g, &h), op.entry(g, &h));
        }
    }
}

#[test]
fn multiplication_is_associative_on_balls() {
    for (name, ctx) in groups() {
        let ball = ctx.ball(2).unwrap();
        for u in &ball {
            for v in &ball {
                let uv = ctx.multiply(u, v).unwrap();
                for w in &ball {
                    let l = ctx.multiply(&uv, w).unwrap();
                    let r = ctx.multiply(u, &ctx.multiply(v, w).unwrap()).unwrap();
                    assert_eq!(l, r, "{name}");
                }
            }
        }
    }
}

#[test]
fn balls_are_nested_and_symmetric() {
    for (name, ctx) in groups() {
        for r in 0..3 {
            let small = ctx.ball(r).unwrap();
            let big = ctx.ball(r + 1).unwrap();
            assert!(small.iter().all(|w| big.contains(w)), "{name}");
            assert!(small.iter().all(|w| small.contains(&ctx.inverse(w).unwrap())), "{name}");
            assert!(small.contains(&Word::identity()));
        }
    }
}

#[test]
fn class_ball_is_class_invariant() {
    for (name, ctx) in groups() {
        for a in &ctx.ball(1).unwrap() {
            let class = ctx.conjugacy_class_ball(a, Radius::Finite(2)).unwrap();
            let full = ctx.conjugacy_class_ball(a, Radius::Finite(4)).unwrap();
            for b in &class {
                let other = ctx.conjugacy_class_ball(b, Radius::Finite(2)).unwrap();
                // every member's fragment stays inside the class
                assert!(other.iter().all(|c| full.contains(c)), "{name}: {a:?} {b:?}");
                assert!(other.contains(a), "{name}");
            }
        }
    }
}

#[test]
fn inner_derivations_satisfy_leibniz() {
    for (name, ctx) in groups() {
        let ball = ctx.ball(2).unwrap();
        let pairs = in_ball_pairs(&ctx, &ball);
        for a in &ball {
            let op = ad(&ctx, &AlgebraElement::basis(a.clone()), &ball).unwrap();
            assert!(leibniz_check(&ctx, &op, &pairs).unwrap().passed(), "{name}: {a:?}");
        }
    }
}

#[test]
fn eval_word_is_bracketing_independent() {
    let x = [
        ("F2", f2(), "x1 - 2*x2 x1", "3*e + x1^-1"),
        ("S3", s3(), "a - b", "2*a b"),
    ];
    for (name, ctx, v0, v1) in x {
        let spec = DerivationSpec::new(
            &ctx,
            [(Gen(0), parse_element(&ctx, v0).unwrap()), (Gen(1), parse_element(&ctx, v1).unwrap())],
        )
        .unwrap();
        let free = f2();
        for w in &free.ball(4).unwrap() {
            let letters = w.to_letters();
            let whole = spec.eval_word(&ctx, w).unwrap();
            for k in 0..=letters.len() {
                let p = Word::from_letters(letters[..k].iter().copied());
                let s = Word::from_letters(letters[k..].iter().copied());
                let split = &spec.eval_word(&ctx, &p).unwrap().right_mul(&ctx, &ctx.normal_form(&s).unwrap())
                    + &spec.eval_word(&ctx, &s).unwrap().left_mul(&ctx, &ctx.normal_form(&p).unwrap());
                assert_eq!(whole, split, "{name}: {w:?} split at {k}");
            }
        }
    }
}

#[test]
fn fibers_meet_each_object_once() {
    for (name, ctx) in groups() {
        let ball = ctx.ball(2).unwrap();
        let ms = morphisms_over(&ctx, ball.iter(), ball.elements()).unwrap();
        let mut seen = BTreeMap::new();
        for m in &ms {
            *seen.entry((m.witness.clone(), m.source.clone())).or_insert(0) += 1;
            m.validate(&ctx).unwrap();
        }
        assert!(seen.values().all(|&c| c == 1), "{name}");
        assert_eq!(seen.len(), ball.len() * ball.len());
    }
}

#[test]
fn component_closed_under_invert_and_compose() {
    for (name, ctx) in groups() {
        let a = Word::gen(0);
        let small = component_morphisms(&ctx, &a, 1, 1).unwrap();
        let slack: std::collections::BTreeSet<_> = component_morphisms(&ctx, &a, 3, 2).unwrap().into_iter().collect();
        for m in &small {
            assert!(slack.contains(&invert(&ctx, m).unwrap()), "{name}");
            for n in small.iter().filter(|n| n.source == m.target) {
                assert!(slack.contains(&compose(&ctx, n, m).unwrap()), "{name}");
            }
        }
    }
}

#[test]
fn inner_characters_vanish_on_loops_and_pass_ff() {
    for (name, ctx) in groups() {
        let ball = ctx.ball(1).unwrap();
        for a in &ball {
            let chr = inner_character(&ctx, a).unwrap();
            for u in &ball {
                assert!(restrict_loops(&ctx, &chr, u, 2).unwrap().is_zero(), "{name}");
            }
            for g in &ball {
                let rep = ff_check(&ctx, &chr, g, a, 3).unwrap();
                assert_ne!(rep.verdict, FfVerdict::Fail, "{name}: g={g:?} a={a:?}");
                if ctx.order().is_some() {
                    assert_eq!(rep.verdict, FfVerdict::Pass, "{name}");
                }
            }
        }
    }
}

#[test]
fn inner_character_matches_extracted_ad() {
    for (name, ctx) in groups() {
        let ball = ctx.ball(2).unwrap();
        let ms = morphisms_over(&ctx, ball.iter(), ball.elements()).unwrap();
        for a in &ctx.ball(1).unwrap() {
            let op = ad(&ctx, &AlgebraElement::basis(a.clone()), &ball).unwrap();
            let t = char_from_operator(&ctx, &op, &ms).unwrap();
            assert_eq!(CharacterTable::materialize(&ctx, &inner_character(&ctx, a).unwrap(), &ms).unwrap(), t, "{name}");
            assert_eq!(CharacterTable::materialize(&ctx, &InnerRule { a: a.clone() }, &ms).unwrap(), t, "{name}");
        }
    }
}

#[test]
fn library_characters_satisfy_relator_rows() {
    for (name, ctx) in [("Z2", z2()), ("S3", s3()), ("Z/2*Z", parse_presentation("gens: a b\nrel: a^2").unwrap())] {
        for a in &ctx.ball(1).unwrap() {
            let rep = verify_character(&ctx, &inner_character(&ctx, a).unwrap(), 2).unwrap();
            assert!(rep.passed(), "{name}: {a:?} {:?}", rep.violations);
        }
        let hom: BTreeMap<Gen, _> = ctx
            .generators()
            .filter(|g| ctx.relators().iter().all(|r| r.exponent_sum(*g) == 0))
            .map(|g| (g, q(g.0 as i128 + 2)))
            .collect();
        let idc = identity_class_character(&ctx, &hom).unwrap();
        assert!(verify_character(&ctx, &idc, 2).unwrap().passed(), "{name}");
        // chi(c) = 2 exp_a(c) + 3 exp_b(c) is additive on the infinite
        // centralizers here; finite centralizers only carry chi = 0.
        let a = Word::gen(0);
        let weights = if ctx.order().is_none() && ctx.relators().len() == 1 && ctx.relators()[0].len() == 4 { (2, 3) } else { (0, 0) };
        let chi: Vec<_> = ctx
            .centralizer_members(&a, 1)
            .unwrap()
            .into_iter()
            .filter(|c| !c.is_identity())
            .map(|c| {
                let v = weights.0 * c.exponent_sum(Gen(0)) as i128 + weights.1 * c.exponent_sum(Gen(1)) as i128;
                (c, q(v))
            })
            .collect();
        let ext = extend_from_stabilizer(&ctx, &a, &chi, 2).unwrap();
        assert!(verify_character(&ctx, &ext, 2).unwrap().passed(), "{name}");
    }
}

#[test]
fn system_generation_is_deterministic() {
    for ctx in [z2(), s3()] {
        assert_eq!(build_system(&ctx, 2).unwrap(), build_system(&ctx, 2).unwrap());
    }
}

#[test]
fn stabilizer_extension_restricts_to_chi() {
    let ctx = f2();
    let a = Word::gen(0);
    let ext = extend_from_stabilizer(&ctx, &a, &[(a.clone(), q(1))], 2).unwrap();
    for k in -4i32..=4 {
        let m = make_morphism(&ctx, &a, &Word::gen_pow(0, k)).unwrap();
        assert_eq!(ext.value(&ctx, &m).unwrap(), q(k as i128));
    }
    let ms = component_morphisms(&ctx, &a, 2, 2).unwrap();
    let t = CharacterTable::materialize(&ctx, &ext, &ms).unwrap();
    assert!(additivity_check(&ctx, &t).unwrap().passed());
}
