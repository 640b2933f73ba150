//! JSON file formats for elements, operators, characters and tables.
//!
//! Words are written with generator names, rationals as strings such as
//! `"3"` or `"-2/5"`. Every top-level document carries `schema_version`.

use gderiv_core::character::{Character, CharacterTable};
use gderiv_core::derivation::SparseOperator;
use gderiv_core::groupoid::Morphism;
use gderiv_core::text::{parse_normal_word, parse_rational, render_rational, render_word};
use gderiv_core::{AlgebraElement, GroupCtx, Letter, Rational, Word};
use serde::{Deserialize, Serialize};

use crate::Error;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub word: String,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnJson {
    pub column: String,
    pub element: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorJson {
    pub schema_version: u32,
    pub columns: Vec<ColumnJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseValueJson {
    pub source: String,
    /// A single generator or inverse generator, e.g. `x1` or `x1^-1`.
    pub witness: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterJson {
    pub schema_version: u32,
    pub base_values: Vec<BaseValueJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismJson {
    pub source: String,
    pub witness: String,
    pub target: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntryJson {
    #[serde(flatten)]
    pub morphism: MorphismJson,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    pub schema_version: u32,
    pub entries: Vec<TableEntryJson>,
}

fn check_version(v: u32) -> Result<(), Error> {
    if v != SCHEMA_VERSION {
        return Err(Error::Input(format!("unsupported schema_version {v}, expected {SCHEMA_VERSION}")));
    }
    Ok(())
}

pub fn rational(q: &Rational) -> String {
    render_rational(q)
}

pub fn element_to_json(ctx: &GroupCtx, u: &AlgebraElement) -> Vec<TermJson> {
    u.terms().map(|(w, c)| TermJson { word: render_word(ctx, w), coeff: rational(c) }).collect()
}

pub fn element_from_json(ctx: &GroupCtx, terms: &[TermJson]) -> Result<AlgebraElement, Error> {
    let mut out = AlgebraElement::zero();
    for t in terms {
        out.add_term(parse_rational(&t.coeff)?, parse_normal_word(ctx, &t.word)?);
    }
    Ok(out)
}

pub fn operator_to_json(ctx: &GroupCtx, op: &SparseOperator) -> OperatorJson {
    OperatorJson {
        schema_version: SCHEMA_VERSION,
        columns: op
            .columns()
            .map(|(g, col)| ColumnJson { column: render_word(ctx, g), element: element_to_json(ctx, col) })
            .collect(),
    }
}

pub fn operator_from_json(ctx: &GroupCtx, doc: &OperatorJson) -> Result<SparseOperator, Error> {
    check_version(doc.schema_version)?;
    let mut op = SparseOperator::new();
    for c in &doc.columns {
        op.insert(parse_normal_word(ctx, &c.column)?, element_from_json(ctx, &c.element)?);
    }
    op.validate(ctx)?;
    Ok(op)
}

pub fn letter_name(ctx: &GroupCtx, l: Letter) -> String {
    render_word(ctx, &Word::from_letters([l]))
}

pub fn parse_letter(ctx: &GroupCtx, text: &str) -> Result<Letter, Error> {
    let w = gderiv_core::text::parse_word(ctx.names(), text)?;
    let letters = w.to_letters();
    match letters.as_slice() {
        [l] => Ok(*l),
        _ => Err(Error::Input(format!("`{text}` is not a single generator or inverse generator"))),
    }
}

pub fn character_to_json(ctx: &GroupCtx, chr: &Character) -> CharacterJson {
    CharacterJson {
        schema_version: SCHEMA_VERSION,
        base_values: chr
            .base_values()
            .map(|((src, l), v)| BaseValueJson {
                source: render_word(ctx, src),
                witness: letter_name(ctx, *l),
                value: rational(v),
            })
            .collect(),
    }
}

pub fn character_from_json(ctx: &GroupCtx, doc: &CharacterJson) -> Result<Character, Error> {
    check_version(doc.schema_version)?;
    let mut chr = Character::zero();
    for b in &doc.base_values {
        chr.set(ctx, &parse_normal_word(ctx, &b.source)?, parse_letter(ctx, &b.witness)?, parse_rational(&b.value)?)?;
    }
    Ok(chr)
}

pub fn morphism_to_json(ctx: &GroupCtx, m: &Morphism) -> MorphismJson {
    MorphismJson {
        source: render_word(ctx, &m.source),
        witness: render_word(ctx, &m.witness),
        target: render_word(ctx, &m.target),
    }
}

pub fn morphism_from_json(ctx: &GroupCtx, m: &MorphismJson) -> Result<Morphism, Error> {
    let m = Morphism {
        source: parse_normal_word(ctx, &m.source)?,
        witness: parse_normal_word(ctx, &m.witness)?,
        target: parse_normal_word(ctx, &m.target)?,
    };
    m.validate(ctx)?;
    Ok(m)
}

pub fn table_to_json(ctx: &GroupCtx, table: &CharacterTable) -> TableJson {
    TableJson {
        schema_version: SCHEMA_VERSION,
        entries: table
            .iter()
            .map(|(m, v)| TableEntryJson { morphism: morphism_to_json(ctx, m), value: rational(v) })
            .collect(),
    }
}

pub fn table_from_json(ctx: &GroupCtx, doc: &TableJson) -> Result<CharacterTable, Error> {
    check_version(doc.schema_version)?;
    let mut t = CharacterTable::new();
    for e in &doc.entries {
        t.insert(ctx, morphism_from_json(ctx, &e.morphism)?, parse_rational(&e.value)?)?;
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use gderiv_core::character::{counterexample_f2, inner_character};
    use gderiv_core::derivation::ad;
    use gderiv_core::groupoid::morphisms_over;
    use gderiv_core::text::parse_element;

    #[test]
    fn element_round_trip() {
        let ctx = GroupCtx::free_rank(2);
        let u = parse_element(&ctx, "3/2*x1 x2 - e + 4*x2^-2").unwrap();
        let j = element_to_json(&ctx, &u);
        assert_eq!(element_from_json(&ctx, &j).unwrap(), u);
    }

    #[test]
    fn operator_and_table_round_trip() {
        let ctx = GroupCtx::free_rank(2);
        let ball = ctx.ball(1).unwrap();
        let op = ad(&ctx, &parse_element(&ctx, "x1 - 2*x2").unwrap(), &ball).unwrap();
        let text = serde_json::to_string(&operator_to_json(&ctx, &op)).unwrap();
        let back: OperatorJson = serde_json::from_str(&text).unwrap();
        assert_eq!(operator_from_json(&ctx, &back).unwrap(), op);

        let ms = morphisms_over(&ctx, ball.iter(), ball.elements()).unwrap();
        let t = CharacterTable::materialize(&ctx, &inner_character(&ctx, &Word::gen(0)).unwrap(), &ms).unwrap();
        let text = serde_json::to_string(&table_to_json(&ctx, &t)).unwrap();
        assert_eq!(table_from_json(&ctx, &serde_json::from_str(&text).unwrap()).unwrap(), t);
    }

    #[test]
    fn character_round_trip() {
        let (ctx, chr) = counterexample_f2();
        let j = character_to_json(&ctx, &chr);
        assert_eq!(j.base_values[0].source, "x2 x1 x2^-1");
        assert_eq!(j.base_values[0].witness, "x1");
        assert_eq!(character_from_json(&ctx, &j).unwrap(), chr);
    }

    #[test]
    fn schema_version_is_checked() {
        let ctx = GroupCtx::free_rank(1);
        let doc = CharacterJson { schema_version: 99, base_values: vec![] };
        assert!(matches!(character_from_json(&ctx, &doc), Err(Error::Input(_))));
    }

    #[test]
    fn corrupted_table_entry_is_rejected() {
        let ctx = GroupCtx::free_rank(2);
        let doc = TableJson {
            schema_version: SCHEMA_VERSION,
            entries: vec![TableEntryJson {
                morphism: MorphismJson { source: "x1".into(), witness: "x2".into(), target: "x1".into() },
                value: "1".into(),
            }],
        };
        assert!(matches!(table_from_json(&ctx, &doc), Err(Error::Core(gderiv_core::Error::InvalidMorphism(_)))));
    }
}
