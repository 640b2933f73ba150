mod common;

use common::*;
use gderiv_core::character::{operator_from_table, CharacterTable};
use gderiv_core::constraints::{build_system, solve_system, ConstraintSystem};
use gderiv_core::derivation::{ad, DerivationSpec};
use gderiv_core::groupoid::morphisms_over;
use gderiv_core::text::parse_presentation;
use gderiv_core::{AlgebraElement, GroupCtx, Radius, Rational, Word};

/// The Leibniz rule on a finite group as a dense linear system in the 36
/// (for S3) unknowns `x[g][h]` = coefficient of `h` in `X(g)`.
fn leibniz_rows(ctx: &GroupCtx, elems: &[Word]) -> Vec<Vec<Rational>> {
    let n = elems.len();
    let idx = |w: &Word| elems.iter().position(|e| e == w).unwrap();
    let var = |g: usize, h: usize| g * n + h;
    let mut rows = Vec::new();
    for (ui, u) in elems.iter().enumerate() {
        for (vi, v) in elems.iter().enumerate() {
            let uv = idx(&ctx.multiply(u, v).unwrap());
            let vinv = ctx.inverse(v).unwrap();
            let uinv = ctx.inverse(u).unwrap();
            for w in elems {
                let mut row = vec![q(0); n * n];
                row[var(uv, idx(w))] += q(1);
                row[var(ui, idx(&ctx.multiply(w, &vinv).unwrap()))] -= q(1);
                row[var(vi, idx(&ctx.multiply(&uinv, w).unwrap()))] -= q(1);
                rows.push(row);
            }
        }
    }
    rows
}

fn operator_vector(elems: &[Word], entry: impl Fn(&Word, &Word) -> Rational) -> Vec<Rational> {
    elems.iter().flat_map(|g| elems.iter().map(move |h| (g, h))).map(|(g, h)| entry(g, h)).collect()
}

#[test]
fn s3_constraint_space_matches_brute_force_leibniz() {
    for ctx in [s3(), s3_table()] {
        let elems = ctx.ball(Radius::Infinite).unwrap().elements().to_vec();
        assert_eq!(elems.len(), 6);
        let rows = leibniz_rows(&ctx, &elems);
        let rank = dense_rank(rows.clone());
        assert_eq!(36 - rank, 3);

        let sys = build_system(&ctx, Radius::Infinite).unwrap();
        let sol = solve_system(&sys).unwrap();
        assert_eq!(sol.dimension(), 36 - rank);

        // map each solution to an operator and check it solves the Leibniz system
        let ms = morphisms_over(&ctx, elems.iter(), &elems).unwrap();
        let mut vectors = Vec::new();
        for v in &sol.basis {
            let chr = sys.character_from_vector(&ctx, v).unwrap();
            let table = CharacterTable::materialize(&ctx, &chr, &ms).unwrap();
            let op = operator_from_table(&ctx, &table, elems.iter()).unwrap();
            let vec = operator_vector(&elems, |g, h| op.entry(g, h));
            for row in &rows {
                let dot: Rational = row.iter().zip(&vec).map(|(a, b)| a * b).sum();
                assert_eq!(dot, q(0));
            }
            vectors.push(vec);
        }
        assert_eq!(dense_rank(vectors.clone()), 3);

        // inner derivations span the same space
        let ball = ctx.ball(Radius::Infinite).unwrap();
        let inner: Vec<Vec<Rational>> = elems
            .iter()
            .map(|a| {
                let op = ad(&ctx, &AlgebraElement::basis(a.clone()), &ball).unwrap();
                operator_vector(&elems, |g, h| op.entry(g, h))
            })
            .collect();
        assert_eq!(dense_rank(inner.clone()), 3);
        let mut both = inner;
        both.extend(vectors);
        assert_eq!(dense_rank(both), 3);
    }
}

/// Rows computed from the algebra: the coefficient of `alpha` in `X(r)`,
/// where `X` sends one generator `g` to `g·beta` and the others to zero.
fn algebra_rows(ctx: &GroupCtx, sys: &ConstraintSystem) -> Vec<(usize, Word, Vec<Rational>)> {
    let mut values = Vec::new();
    for (beta, g) in &sys.unknowns {
        let col = AlgebraElement::basis(ctx.multiply(&Word::gen(g.0), beta).unwrap());
        let spec = DerivationSpec::new(ctx, [(*g, col)]).unwrap();
        values.push(ctx.relators().iter().map(|r| spec.eval_word(ctx, r).unwrap()).collect::<Vec<_>>());
    }
    let mut out = Vec::new();
    for (ri, r) in ctx.relators().iter().enumerate() {
        for alpha in &ctx.ball(sys.radius).unwrap() {
            let row = values.iter().map(|v| v[ri].coeff(alpha)).collect();
            out.push((ri, r.clone(), row));
        }
    }
    out
}

#[test]
fn constraint_rows_match_algebra_evaluation() {
    let cases: Vec<(GroupCtx, Radius)> = vec![
        (z2(), Radius::Finite(1)),
        (z2(), Radius::Finite(2)),
        (s3(), Radius::Infinite),
        (parse_presentation("gens: a b\nrel: a^2").unwrap(), Radius::Finite(2)),
        (parse_presentation("gens: a b\nrel: a^2, b^3").unwrap(), Radius::Finite(2)),
    ];
    for (ctx, radius) in cases {
        let sys = build_system(&ctx, radius).unwrap();
        let oracle = algebra_rows(&ctx, &sys);
        assert_eq!(oracle.len(), sys.rows.len());
        let mut interior = Vec::new();
        for (row, (ri, _, dense)) in sys.rows.iter().zip(&oracle) {
            assert_eq!(row.relator_index, *ri);
            if row.boundary {
                continue;
            }
            let mine: Vec<Rational> = (0..sys.unknowns.len()).map(|i| row.entries.get(&i).copied().unwrap_or(q(0))).collect();
            assert_eq!(&mine, dense, "row {:?} at {:?}", row.relator, row.object);
            interior.push(dense.clone());
        }
        let dim = sys.unknowns.len() - dense_rank(interior);
        assert_eq!(solve_system(&sys).unwrap().dimension(), dim);
    }
}

#[test]
fn z2_interior_system_is_unconstrained() {
    let ctx = z2();
    let sys = build_system(&ctx, 1).unwrap();
    assert_eq!(sys.unknowns.len(), 10);
    assert_eq!(solve_system(&sys).unwrap().dimension(), 10);
}
