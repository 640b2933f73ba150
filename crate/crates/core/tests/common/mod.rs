#![allow(dead_code)]

use gderiv_core::text::parse_presentation;
use gderiv_core::{AlgebraElement, Gen, GroupCtx, Rational, Word};
use proptest::prelude::*;

pub fn q(n: i128) -> Rational {
    Rational::from_integer(n)
}

pub fn f2() -> GroupCtx {
    GroupCtx::free_rank(2)
}

pub fn z2() -> GroupCtx {
    parse_presentation("gens: a b\nrel: a b a^-1 b^-1").unwrap()
}

pub fn s3() -> GroupCtx {
    parse_presentation("gens: a b\nrel: a^3, b^2, (a b)^2").unwrap()
}

pub fn s3_table() -> GroupCtx {
    s3().materialize_table().unwrap()
}

pub fn groups() -> Vec<(&'static str, GroupCtx)> {
    vec![("F2", f2()), ("Z2", z2()), ("S3", s3()), ("S3-table", s3_table())]
}

pub fn raw_word(rank: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..rank as u32, prop::sample::select(vec![-2i32, -1, 1, 2])), 0..=max_len)
        .prop_map(|s| Word::from_syllables(s.into_iter().map(|(g, e)| (Gen(g), e))))
}

pub fn element(rank: usize, max_len: usize, max_terms: usize) -> impl Strategy<Value = Vec<(i128, Word)>> {
    prop::collection::vec((-3i128..=3, raw_word(rank, max_len)), 0..=max_terms)
}

pub fn build(ctx: &GroupCtx, terms: &[(i128, Word)]) -> AlgebraElement {
    AlgebraElement::from_terms(ctx, terms.iter().map(|(c, w)| (q(*c), w.clone()))).unwrap()
}

/// Dense rational Gaussian elimination, independent of the library's
/// fraction-free solver. Returns the rank.
pub fn dense_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][col] != q(0)) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank][col];
        let prow: Vec<Rational> = rows[rank].iter().map(|x| x / pivot).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[col] != q(0) {
                let f = row[col];
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= f * y;
                }
            }
        }
        rows[rank] = prow;
        rank += 1;
    }
    rank
}
