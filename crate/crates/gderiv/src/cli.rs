//! The `gderiv` command line.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use gderiv_core::character::{
    additivity_check, char_from_operator, extend_from_stabilizer, ff_check, identity_class_character,
    identity_class_derivation, inner_character, local_finiteness_check, operator_from_table, restrict_loops,
    AdditivityReport, Character, CharacterTable, FfReport, InnerRule, MorphismValues,
};
use gderiv_core::constraints::{build_system, solve_system, verify_character, ElementaryValues};
use gderiv_core::derivation::{
    ad, apply, in_ball_pairs, leibniz_check, lie_bracket, relator_consistency, DerivationSpec, InnerDerivation,
    Operator, SparseOperator,
};
use gderiv_core::group::Strategy;
use gderiv_core::groupoid::{compose, component_morphisms, fiber, gamma_graph, make_morphism, morphisms_over, Morphism};
use gderiv_core::text::{
    generator, parse_element, parse_normal_word, parse_presentation, parse_rational, render_element, render_word,
};
use gderiv_core::{AlgebraElement, Gen, GroupCtx, Letter, Radius, Rational, Word};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::demo;
use crate::export;
use crate::format::{self, rational, SCHEMA_VERSION};
use crate::Error;

type Result<T> = std::result::Result<T, Error>;

#[derive(Parser, Debug)]
#[command(name = "gderiv", version, about = "Derivations of rational group algebras as characters on the adjoint groupoid")]
pub struct Cli {
    /// Presentation file. Defaults to the free group on x1, x2.
    #[arg(long, global = true, value_name = "FILE")]
    pub group: Option<PathBuf>,
    /// Object ball radius, or `inf` for a finite group.
    #[arg(long, global = true, value_name = "N", value_parser = parse_radius)]
    pub radius: Option<Radius>,
    /// Witness ball radius, or `inf`.
    #[arg(long, global = true, value_name = "N", value_parser = parse_radius)]
    pub witness_radius: Option<Radius>,
    /// Maximum number of elements any enumeration may produce.
    #[arg(long, global = true, value_name = "N")]
    pub cap: Option<usize>,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized subcommands.
    #[arg(long, global = true, value_name = "N", default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

fn parse_radius(s: &str) -> std::result::Result<Radius, String> {
    match s {
        "inf" | "infinite" => Ok(Radius::Infinite),
        _ => s.parse::<usize>().map(Radius::Finite).map_err(|e| format!("expected a number or `inf`: {e}")),
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Group elements: normal forms, products, balls, classes.
    #[command(subcommand)]
    Group(GroupCmd),
    /// The group algebra.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Derivations and operators.
    #[command(subcommand)]
    Deriv(DerivCmd),
    /// The adjoint-action groupoid.
    #[command(subcommand)]
    Groupoid(GroupoidCmd),
    /// Characters on the groupoid.
    #[command(subcommand)]
    Char(CharCmd),
    /// Relator constraints on character base values.
    #[command(subcommand)]
    Constraints(ConstraintsCmd),
    /// Canned pipelines.
    #[command(subcommand)]
    Demo(DemoCmd),
}

#[derive(Subcommand, Debug)]
pub enum GroupCmd {
    /// Presentation summary.
    Info,
    /// Normal form of a word.
    Reduce { word: String },
    /// Product of two words.
    Mul { u: String, v: String },
    /// `g a g^-1`.
    Conj { g: String, a: String },
    /// All elements of the ball of radius `--radius`.
    Ball,
    /// Conjugates of `a` by the ball of radius `--radius`.
    Class { a: String },
}

#[derive(Subcommand, Debug)]
pub enum AlgebraCmd {
    /// Convolution product.
    Mul { u: String, v: String },
    /// `uv - vu`.
    Comm { u: String, v: String },
}

/// Operator given as `inner:<element>`, `gens:<name>=<element>;...`,
/// `identity:<name>=<q>,...` or `file:<path>`.
#[derive(Args, Debug)]
pub struct OpArg {
    #[arg(long = "op", value_name = "SPEC")]
    pub op: String,
}

/// Character given as `zero`, `inner:<word>`, `rule:<word>`,
/// `identity:<name>=<q>,...`, `counterexample`, `char:<path>` or
/// `table:<path>`.
#[derive(Args, Debug)]
pub struct CharArg {
    #[arg(long = "char", value_name = "SPEC")]
    pub chr: String,
}

#[derive(Subcommand, Debug)]
pub enum DerivCmd {
    /// Columns of `ad(a)` over the ball.
    Ad { a: String },
    /// `X(u)`.
    Apply {
        u: String,
        #[command(flatten)]
        op: OpArg,
    },
    /// Leibniz rule on all pairs inside the ball.
    Leibniz {
        #[command(flatten)]
        op: OpArg,
    },
    /// Materialize a derivation given on generators (`--gen x1="x2 - e"`).
    FromGens {
        #[arg(long = "gen", value_name = "NAME=ELEMENT")]
        gens: Vec<String>,
    },
    /// Check `X(r) = 0` for every relator.
    Relcheck {
        #[arg(long = "gen", value_name = "NAME=ELEMENT")]
        gens: Vec<String>,
    },
    /// `[X, Y]` over the ball.
    Bracket {
        #[arg(long, value_name = "SPEC")]
        x: String,
        #[arg(long, value_name = "SPEC")]
        y: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum GroupoidCmd {
    /// The morphism `a -> g a g^-1`.
    Morphism { a: String, g: String },
    /// Apply `g1` to `a`, then `g2`, and compose.
    Compose { a: String, g1: String, g2: String },
    /// The fiber of `g` over the ball.
    Fiber { g: String },
    /// Morphisms inside the class fragment of `a`.
    Component { a: String },
    /// Orbits of conjugation by `g` on the class fragment of `a`.
    Gamma {
        g: String,
        a: String,
        /// Print Graphviz DOT.
        #[arg(long)]
        dot: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum CharCmd {
    /// Table of an operator over ball x witness ball.
    Extract {
        #[command(flatten)]
        op: OpArg,
    },
    /// Operator columns from a table file.
    Rebuild { table: PathBuf },
    /// Additivity on composable pairs.
    Additivity {
        #[command(flatten)]
        chr: CharArg,
        /// Restrict to the class fragment of this element.
        #[arg(long, value_name = "WORD")]
        class: Option<String>,
    },
    /// Nonzero values on the fiber of `g` over two nested balls.
    Finiteness {
        g: String,
        #[command(flatten)]
        chr: CharArg,
    },
    /// Base values of the character of `ad(a)`.
    Inner { a: String },
    /// Values on the loops at `a`.
    Restrict {
        a: String,
        #[command(flatten)]
        chr: CharArg,
    },
    /// Extend a character of the centralizer of `a` (`--chi x1=1`).
    ExtendStab {
        a: String,
        #[arg(long = "chi", value_name = "WORD=VALUE")]
        chi: Vec<String>,
    },
    /// Orbit sums of conjugation by `g` on the class fragment of `a`.
    Ff {
        g: String,
        a: String,
        #[command(flatten)]
        chr: CharArg,
    },
    /// Derivation and character of an additive map (`--hom x1=1,x2=0`).
    IdentityClass {
        #[arg(long, value_name = "NAME=VALUE,...")]
        hom: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum ConstraintsCmd {
    /// Build the system; optionally export it.
    Build {
        /// Matrix Market output file.
        #[arg(long, value_name = "FILE")]
        mm: Option<PathBuf>,
        /// JSON legend of unknowns and rows.
        #[arg(long, value_name = "FILE")]
        legend: Option<PathBuf>,
    },
    /// Basis of the solution space of the interior rows.
    Solve,
    /// Evaluate a character on every interior row.
    Verify {
        #[command(flatten)]
        chr: CharArg,
    },
}

#[derive(Subcommand, Debug)]
pub enum DemoCmd {
    /// The free-group character that is additive, vanishes on the loops at
    /// x1, and still fails the orbit-sum condition.
    Counterexample,
    /// Seeded random operators: Leibniz check against additivity check.
    Dictionary {
        #[arg(long, default_value_t = 12)]
        count: usize,
    },
}

/// A command result in both renderings.
pub struct Output {
    pub json: Value,
    pub text: String,
}

impl Output {
    fn new(json: Value, text: impl Into<String>) -> Self {
        Output { json, text: text.into() }
    }

    /// The document itself is the text rendering.
    fn doc(json: Value) -> Self {
        let text = serde_json::to_string_pretty(&json).expect("serializable");
        Output { json, text }
    }
}

struct Env {
    ctx: GroupCtx,
    radius: Option<Radius>,
    witness_radius: Option<Radius>,
    seed: u64,
}

impl Env {
    fn radius(&self, default: usize) -> Radius {
        self.radius.unwrap_or(Radius::Finite(default))
    }

    fn witness_radius(&self, default: usize) -> Radius {
        self.witness_radius.unwrap_or(Radius::Finite(default))
    }

    fn finite_radius(&self, default: usize) -> Result<usize> {
        match self.radius(default) {
            Radius::Finite(r) => Ok(r),
            Radius::Infinite => Err(Error::Input("this command needs a finite --radius".into())),
        }
    }

    fn w(&self, w: &Word) -> String {
        render_word(&self.ctx, w)
    }

    fn e(&self, u: &AlgebraElement) -> String {
        render_element(&self.ctx, u)
    }

    fn word(&self, s: &str) -> Result<Word> {
        Ok(parse_normal_word(&self.ctx, s)?)
    }

    fn elem(&self, s: &str) -> Result<AlgebraElement> {
        Ok(parse_element(&self.ctx, s)?)
    }

    fn morphism(&self, m: &Morphism) -> Value {
        json!({ "source": self.w(&m.source), "witness": self.w(&m.witness), "target": self.w(&m.target) })
    }

    fn morphism_text(&self, m: &Morphism) -> String {
        format!("{} -[{}]-> {}", self.w(&m.source), self.w(&m.witness), self.w(&m.target))
    }

    fn operator(&self, op: &SparseOperator) -> (Value, String) {
        let doc = serde_json::to_value(format::operator_to_json(&self.ctx, op)).expect("serializable");
        let mut text = String::new();
        for (g, col) in op.columns() {
            let _ = writeln!(text, "X({}) = {}", self.w(g), self.e(col));
        }
        (doc, text)
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

fn load_ctx(cli: &Cli) -> Result<GroupCtx> {
    let ctx = match &cli.group {
        Some(path) => parse_presentation(&read(path)?)?,
        None => GroupCtx::free(["x1", "x2"]),
    };
    Ok(match cli.cap {
        Some(cap) => ctx.with_cap(cap),
        None => ctx,
    })
}

enum OpSource {
    Inner(InnerDerivation),
    Spec(DerivationSpec),
    Sparse(SparseOperator),
}

impl Operator for OpSource {
    fn column(&self, ctx: &GroupCtx, g: &Word) -> gderiv_core::Result<AlgebraElement> {
        match self {
            OpSource::Inner(x) => x.column(ctx, g),
            OpSource::Spec(x) => x.column(ctx, g),
            OpSource::Sparse(x) => x.column(ctx, g),
        }
    }
}

fn split_spec(spec: &str) -> (&str, &str) {
    spec.split_once(':').unwrap_or((spec, ""))
}

fn parse_assignments(text: &str, sep: char) -> Result<Vec<(&str, &str)>> {
    text.split(sep)
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.split_once('=').map(|(a, b)| (a.trim(), b.trim())).ok_or_else(|| Error::Input(format!("expected NAME=VALUE, got `{s}`"))))
        .collect()
}

fn parse_gens(env: &Env, items: &[String]) -> Result<DerivationSpec> {
    let mut values = Vec::new();
    for item in items {
        for (name, value) in parse_assignments(item, ';')? {
            values.push((generator(&env.ctx, name)?, env.elem(value)?));
        }
    }
    Ok(DerivationSpec::new(&env.ctx, values)?)
}

fn parse_hom(env: &Env, text: &str) -> Result<std::collections::BTreeMap<Gen, Rational>> {
    parse_assignments(text, ',')?
        .into_iter()
        .map(|(name, v)| Ok((generator(&env.ctx, name)?, parse_rational(v)?)))
        .collect()
}

fn parse_op(env: &Env, spec: &str) -> Result<OpSource> {
    let (kind, rest) = split_spec(spec);
    match kind {
        "inner" => Ok(OpSource::Inner(InnerDerivation { a: env.elem(rest)? })),
        "gens" => Ok(OpSource::Spec(parse_gens(env, &[rest.to_string()])?)),
        "identity" => Ok(OpSource::Spec(identity_class_derivation(&env.ctx, &parse_hom(env, rest)?)?)),
        "file" => {
            let doc: format::OperatorJson = serde_json::from_str(&read(Path::new(rest))?)?;
            Ok(OpSource::Sparse(format::operator_from_json(&env.ctx, &doc)?))
        }
        _ => Err(Error::Input(format!("unknown operator spec `{spec}`"))),
    }
}

enum CharSource {
    Char(Character),
    Table(CharacterTable),
    Rule(InnerRule),
}

impl MorphismValues for CharSource {
    fn lookup(&self, ctx: &GroupCtx, m: &Morphism) -> gderiv_core::Result<Option<Rational>> {
        match self {
            CharSource::Char(c) => c.lookup(ctx, m),
            CharSource::Table(t) => t.lookup(ctx, m),
            CharSource::Rule(r) => r.lookup(ctx, m),
        }
    }

    fn base_support(&self) -> Option<usize> {
        match self {
            CharSource::Char(c) => c.base_support(),
            _ => None,
        }
    }
}

impl ElementaryValues for CharSource {
    fn elementary_value(&self, ctx: &GroupCtx, source: &Word, l: Letter) -> gderiv_core::Result<Rational> {
        match self {
            CharSource::Char(c) => c.elementary_value(ctx, source, l),
            CharSource::Table(t) => t.elementary_value(ctx, source, l),
            CharSource::Rule(r) => r.elementary_value(ctx, source, l),
        }
    }
}

fn parse_char(env: &Env, spec: &str) -> Result<CharSource> {
    let ctx = &env.ctx;
    let (kind, rest) = split_spec(spec);
    match kind {
        "zero" => Ok(CharSource::Char(Character::zero())),
        "inner" => Ok(CharSource::Char(inner_character(ctx, &env.word(rest)?)?)),
        "rule" => Ok(CharSource::Rule(InnerRule { a: env.word(rest)? })),
        "identity" => Ok(CharSource::Char(identity_class_character(ctx, &parse_hom(env, rest)?)?)),
        "counterexample" => {
            if !ctx.is_free() || ctx.rank() != 2 {
                return Err(Error::Input("the counterexample lives on a free group of rank 2".into()));
            }
            let (_, chr) = gderiv_core::character::counterexample_f2();
            let values = chr.base_values().map(|((s, l), v)| (s.clone(), *l, *v)).collect::<Vec<_>>();
            Ok(CharSource::Char(Character::new(ctx, values)?))
        }
        "char" => {
            let doc: format::CharacterJson = serde_json::from_str(&read(Path::new(rest))?)?;
            Ok(CharSource::Char(format::character_from_json(ctx, &doc)?))
        }
        "table" => {
            let doc: format::TableJson = serde_json::from_str(&read(Path::new(rest))?)?;
            Ok(CharSource::Table(format::table_from_json(ctx, &doc)?))
        }
        _ => Err(Error::Input(format!("unknown character spec `{spec}`"))),
    }
}

fn pass(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "fail"
    }
}

fn render_letters(ctx: &GroupCtx, letters: &[Letter]) -> String {
    if letters.is_empty() {
        return "e".into();
    }
    letters.iter().map(|l| format::letter_name(ctx, *l)).collect::<Vec<_>>().join(" ")
}

fn group_cmd(env: &Env, cmd: &GroupCmd) -> Result<Output> {
    let ctx = &env.ctx;
    match cmd {
        GroupCmd::Info => {
            let rules: Vec<Value> = match ctx.strategy() {
                Strategy::ConfluentRewriting(rs) => rs
                    .nontrivial_rules()
                    .map(|r| json!([render_letters(ctx, &r.lhs), render_letters(ctx, &r.rhs)]))
                    .collect(),
                _ => Vec::new(),
            };
            let relators: Vec<String> = ctx.relators().iter().map(|r| env.w(r)).collect();
            let mut text = format!(
                "generators: {}\nrelators: {}\nstrategy: {}\n",
                ctx.names().join(" "),
                if relators.is_empty() { "none".to_string() } else { relators.join(", ") },
                ctx.strategy().name()
            );
            if let Some(n) = ctx.order() {
                let _ = writeln!(text, "order: {n}");
            }
            for r in &rules {
                let _ = writeln!(text, "rule: {} -> {}", r[0].as_str().unwrap_or(""), r[1].as_str().unwrap_or(""));
            }
            Ok(Output::new(
                json!({
                    "generators": ctx.names(),
                    "relators": relators,
                    "strategy": ctx.strategy().name(),
                    "order": ctx.order(),
                    "rules": rules,
                }),
                text,
            ))
        }
        GroupCmd::Reduce { word } => {
            let w = env.w(&env.word(word)?);
            Ok(Output::new(json!({ "result": w }), w))
        }
        GroupCmd::Mul { u, v } => {
            let w = env.w(&ctx.multiply(&env.word(u)?, &env.word(v)?)?);
            Ok(Output::new(json!({ "result": w }), w))
        }
        GroupCmd::Conj { g, a } => {
            let w = env.w(&ctx.conjugate(&env.word(g)?, &env.word(a)?)?);
            Ok(Output::new(json!({ "result": w }), w))
        }
        GroupCmd::Ball => {
            let ball = ctx.ball(env.radius(2))?;
            let elems: Vec<String> = ball.iter().map(|w| env.w(w)).collect();
            let text = format!("{} elements\n{}", elems.len(), elems.join("\n"));
            Ok(Output::new(json!({ "size": elems.len(), "elements": elems }), text))
        }
        GroupCmd::Class { a } => {
            let class = ctx.conjugacy_class_ball(&env.word(a)?, env.radius(2))?;
            let elems: Vec<String> = class.iter().map(|w| env.w(w)).collect();
            let text = format!("{} members\n{}", elems.len(), elems.join("\n"));
            Ok(Output::new(json!({ "size": elems.len(), "members": elems }), text))
        }
    }
}

fn algebra_cmd(env: &Env, cmd: &AlgebraCmd) -> Result<Output> {
    let r = match cmd {
        AlgebraCmd::Mul { u, v } => AlgebraElement::convolve(&env.ctx, &env.elem(u)?, &env.elem(v)?)?,
        AlgebraCmd::Comm { u, v } => AlgebraElement::commutator(&env.ctx, &env.elem(u)?, &env.elem(v)?)?,
    };
    Ok(Output::new(
        json!({ "result": env.e(&r), "terms": format::element_to_json(&env.ctx, &r) }),
        env.e(&r),
    ))
}

fn leibniz_output(env: &Env, op: &impl Operator) -> Result<Output> {
    let ctx = &env.ctx;
    let ball = ctx.ball(env.radius(2))?;
    let rep = leibniz_check(ctx, op, &in_ball_pairs(ctx, &ball))?;
    let violations: Vec<Value> = rep
        .violations
        .iter()
        .map(|v| json!({ "u": env.w(&v.u), "v": env.w(&v.v), "lhs": env.e(&v.lhs), "rhs": env.e(&v.rhs) }))
        .collect();
    let mut text = format!("leibniz: {} ({} pairs checked, {} violations)\n", pass(rep.passed()), rep.checked, violations.len());
    for v in &rep.violations {
        let _ = writeln!(text, "  X({} {}): {} != {}", env.w(&v.u), env.w(&v.v), env.e(&v.lhs), env.e(&v.rhs));
    }
    Ok(Output::new(
        json!({ "leibniz": pass(rep.passed()), "checked": rep.checked, "violations": violations }),
        text,
    ))
}

fn relcheck_output(env: &Env, spec: &DerivationSpec) -> Result<(Value, String, bool)> {
    let rep = relator_consistency(&env.ctx, spec)?;
    let failures: Vec<Value> = rep
        .failures
        .iter()
        .map(|f| json!({ "index": f.index, "relator": env.w(&f.relator), "value": env.e(&f.value) }))
        .collect();
    let mut text = format!("relators: {} ({} checked)\n", pass(rep.passed()), rep.checked);
    for f in &rep.failures {
        let _ = writeln!(text, "  X({}) = {}", env.w(&f.relator), env.e(&f.value));
    }
    Ok((json!({ "relators": pass(rep.passed()), "checked": rep.checked, "failures": failures }), text, rep.passed()))
}

fn deriv_cmd(env: &Env, cmd: &DerivCmd) -> Result<Output> {
    let ctx = &env.ctx;
    match cmd {
        DerivCmd::Ad { a } => {
            let ball = ctx.ball(env.radius(2))?;
            let (doc, text) = env.operator(&ad(ctx, &env.elem(a)?, &ball)?);
            Ok(Output::new(json!({ "operator": doc }), text))
        }
        DerivCmd::Apply { u, op } => {
            let op = parse_op(env, &op.op)?;
            let r = apply(ctx, &op, &env.elem(u)?)?;
            Ok(Output::new(json!({ "result": env.e(&r) }), env.e(&r)))
        }
        DerivCmd::Leibniz { op } => leibniz_output(env, &parse_op(env, &op.op)?),
        DerivCmd::FromGens { gens } => {
            let spec = parse_gens(env, gens)?;
            let (rel_json, mut text, ok) = relcheck_output(env, &spec)?;
            if !ok {
                return Ok(Output::new(rel_json, text));
            }
            let ball = ctx.ball(env.radius(2))?;
            let (doc, optext) = env.operator(&spec.to_operator(ctx, &ball)?);
            text.push_str(&optext);
            Ok(Output::new(json!({ "relators": rel_json, "operator": doc }), text))
        }
        DerivCmd::Relcheck { gens } => {
            let (j, text, _) = relcheck_output(env, &parse_gens(env, gens)?)?;
            Ok(Output::new(j, text))
        }
        DerivCmd::Bracket { x, y } => {
            let ball = ctx.ball(env.radius(2))?;
            let br = lie_bracket(ctx, &parse_op(env, x)?, &parse_op(env, y)?, &ball)?;
            let (doc, text) = env.operator(&br);
            Ok(Output::new(json!({ "operator": doc }), text))
        }
    }
}

fn morphism_list(env: &Env, ms: &[Morphism]) -> Output {
    let list: Vec<Value> = ms.iter().map(|m| env.morphism(m)).collect();
    let mut text = format!("{} morphisms\n", ms.len());
    for m in ms {
        let _ = writeln!(text, "{}", env.morphism_text(m));
    }
    Output::new(json!({ "count": ms.len(), "morphisms": list }), text)
}

fn gamma_json(env: &Env, graph: &gderiv_core::groupoid::ConjGraph) -> Value {
    let paths: Vec<Value> = graph
        .paths
        .iter()
        .map(|p| {
            json!({
                "kind": p.kind.name(),
                "entry": p.entry.as_ref().map(|w| env.w(w)),
                "edges": p.edges.iter().map(|e| json!({ "from": env.w(&e.from), "to": env.w(&e.to), "boundary": e.boundary })).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "mover": env.w(&graph.mover), "base": env.w(&graph.base), "vertices": graph.vertices.len(), "paths": paths })
}

fn groupoid_cmd(env: &Env, cmd: &GroupoidCmd) -> Result<Output> {
    let ctx = &env.ctx;
    match cmd {
        GroupoidCmd::Morphism { a, g } => {
            let m = make_morphism(ctx, &env.word(a)?, &env.word(g)?)?;
            Ok(Output::new(env.morphism(&m), env.morphism_text(&m)))
        }
        GroupoidCmd::Compose { a, g1, g2 } => {
            let xi = make_morphism(ctx, &env.word(a)?, &env.word(g1)?)?;
            let eta = make_morphism(ctx, &xi.target, &env.word(g2)?)?;
            let c = compose(ctx, &eta, &xi)?;
            let text = format!("{}\n{}\n{}", env.morphism_text(&xi), env.morphism_text(&eta), env.morphism_text(&c));
            Ok(Output::new(json!({ "first": env.morphism(&xi), "second": env.morphism(&eta), "composite": env.morphism(&c) }), text))
        }
        GroupoidCmd::Fiber { g } => {
            let ball = ctx.ball(env.radius(2))?;
            Ok(morphism_list(env, &fiber(ctx, &env.word(g)?, &ball)?))
        }
        GroupoidCmd::Component { a } => {
            let ms = component_morphisms(ctx, &env.word(a)?, env.radius(2), env.witness_radius(2))?;
            Ok(morphism_list(env, &ms))
        }
        GroupoidCmd::Gamma { g, a, dot } => {
            let graph = gamma_graph(ctx, &env.word(g)?, &env.word(a)?, env.radius(3))?;
            let mut j = gamma_json(env, &graph);
            let text = if *dot {
                let d = export::conj_graph_dot(ctx, &graph);
                j["dot"] = Value::String(d.clone());
                d
            } else {
                let mut t = format!("{} vertices, {} paths\n", graph.vertices.len(), graph.paths.len());
                for p in &graph.paths {
                    let names: Vec<String> = p.edges.iter().map(|e| env.w(&e.from)).collect();
                    let end = p.edges.last().map(|e| env.w(&e.to)).unwrap_or_default();
                    let _ = writeln!(t, "{}: {} -> {}", p.kind.name(), names.join(" -> "), end);
                }
                t
            };
            Ok(Output::new(j, text))
        }
    }
}

fn additivity_output(env: &Env, rep: &AdditivityReport) -> Output {
    let violations: Vec<Value> = rep
        .violations
        .iter()
        .map(|v| {
            json!({
                "eta": env.morphism(&v.eta), "xi": env.morphism(&v.xi), "composite": env.morphism(&v.composite),
                "eta_value": rational(&v.eta_value), "xi_value": rational(&v.xi_value), "composite_value": rational(&v.composite_value),
            })
        })
        .collect();
    let mut text = format!("additivity: {} ({} pairs checked)\n", pass(rep.passed()), rep.checked);
    for v in &rep.violations {
        let _ = writeln!(
            text,
            "  T({}) = {} but T({}) + T({}) = {} + {}",
            env.morphism_text(&v.composite),
            rational(&v.composite_value),
            env.morphism_text(&v.eta),
            env.morphism_text(&v.xi),
            rational(&v.eta_value),
            rational(&v.xi_value)
        );
    }
    Output::new(json!({ "additivity": pass(rep.passed()), "checked": rep.checked, "violations": violations }), text)
}

fn ff_json(env: &Env, rep: &FfReport) -> (Value, String) {
    let paths: Vec<Value> = rep
        .paths
        .iter()
        .map(|p| {
            json!({
                "kind": p.kind.name(),
                "sum": rational(&p.sum),
                "conclusive": p.conclusive,
                "offending": p.offending(),
                "entry_value": p.entry_value.as_ref().map(rational),
                "edges": p.edges.iter().map(|(e, v)| json!({
                    "from": env.w(&e.from), "to": env.w(&e.to), "boundary": e.boundary, "value": rational(v),
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    let offending: Rational = rep.offending().map(|p| p.sum).sum();
    let mut text = format!("ff: {} ({} paths, {} offending)\n", rep.verdict.name(), rep.paths.len(), rep.offending().count());
    for p in rep.paths.iter().filter(|p| p.offending() || !p.conclusive) {
        let names: Vec<String> = p.edges.iter().map(|(e, v)| format!("{} [{}]", env.w(&e.from), rational(v))).collect();
        let _ = writeln!(
            text,
            "  {} {}: sum {}: {}",
            if p.offending() { "offending" } else { "inconclusive" },
            p.kind.name(),
            rational(&p.sum),
            names.join(" -> ")
        );
    }
    (
        json!({
            "ff": rep.verdict.name(),
            "mover": env.w(&rep.mover),
            "base": env.w(&rep.base),
            "offending_paths": rep.offending().count(),
            "ff_path_sum": rational(&offending),
            "paths": paths,
        }),
        text,
    )
}

fn char_cmd(env: &Env, cmd: &CharCmd) -> Result<Output> {
    let ctx = &env.ctx;
    match cmd {
        CharCmd::Extract { op } => {
            let op = parse_op(env, &op.op)?;
            let objects = ctx.ball(env.radius(2))?;
            let witnesses = ctx.ball(env.witness_radius(2))?;
            let ms = morphisms_over(ctx, objects.iter(), witnesses.elements())?;
            let table = char_from_operator(ctx, &op, &ms)?;
            Ok(Output::doc(serde_json::to_value(format::table_to_json(ctx, &table))?))
        }
        CharCmd::Rebuild { table } => {
            let doc: format::TableJson = serde_json::from_str(&read(table)?)?;
            let table = format::table_from_json(ctx, &doc)?;
            let columns: std::collections::BTreeSet<Word> = table.iter().map(|(m, _)| m.witness.clone()).collect();
            let op = operator_from_table(ctx, &table, columns.iter())?;
            Ok(Output::doc(serde_json::to_value(format::operator_to_json(ctx, &op))?))
        }
        CharCmd::Additivity { chr, class } => {
            let src = parse_char(env, &chr.chr)?;
            let table = match (&src, class) {
                (CharSource::Table(t), None) => t.clone(),
                (_, Some(a)) => {
                    let ms = component_morphisms(ctx, &env.word(a)?, env.radius(2), env.witness_radius(2))?;
                    CharacterTable::materialize(ctx, &src, &ms)?
                }
                (_, None) => {
                    let objects = ctx.ball(env.radius(2))?;
                    let witnesses = ctx.ball(env.witness_radius(2))?;
                    CharacterTable::materialize(ctx, &src, &morphisms_over(ctx, objects.iter(), witnesses.elements())?)?
                }
            };
            Ok(additivity_output(env, &additivity_check(ctx, &table)?))
        }
        CharCmd::Finiteness { g, chr } => {
            let src = parse_char(env, &chr.chr)?;
            let rep = local_finiteness_check(ctx, &src, &env.word(g)?, env.finite_radius(3)?)?;
            let text = format!(
                "fiber of {}: {} nonzero at radius {}, {} at radius {}{}\n",
                env.w(&rep.witness),
                rep.nonzero_at_radius,
                rep.radius,
                rep.nonzero_at_previous.map_or("-".to_string(), |n| n.to_string()),
                rep.radius.saturating_sub(1),
                if rep.stable { " (stable)" } else { "" }
            );
            Ok(Output::new(
                json!({
                    "witness": env.w(&rep.witness),
                    "radius": rep.radius,
                    "nonzero_at_radius": rep.nonzero_at_radius,
                    "nonzero_at_previous": rep.nonzero_at_previous,
                    "stable": rep.stable,
                    "base_support": rep.base_support,
                    "support": rep.support.iter().map(|m| env.morphism(m)).collect::<Vec<_>>(),
                }),
                text,
            ))
        }
        CharCmd::Inner { a } => {
            let chr = inner_character(ctx, &env.word(a)?)?;
            Ok(Output::doc(serde_json::to_value(format::character_to_json(ctx, &chr))?))
        }
        CharCmd::Restrict { a, chr } => {
            let src = parse_char(env, &chr.chr)?;
            let t = restrict_loops(ctx, &src, &env.word(a)?, env.witness_radius(3))?;
            let loops: Vec<Value> = t.iter().map(|(m, v)| json!({ "witness": env.w(&m.witness), "value": rational(v) })).collect();
            let mut text = format!("loops: {} ({} checked)\n", if t.is_zero() { "zero" } else { "nonzero" }, t.len());
            for (m, v) in t.nonzero() {
                let _ = writeln!(text, "  T({}) = {}", env.morphism_text(m), rational(v));
            }
            Ok(Output::new(json!({ "loops": if t.is_zero() { "zero" } else { "nonzero" }, "values": loops }), text))
        }
        CharCmd::ExtendStab { a, chi } => {
            let a = env.word(a)?;
            let mut values = Vec::new();
            for item in chi {
                for (w, v) in parse_assignments(item, ',')? {
                    values.push((env.word(w)?, parse_rational(v)?));
                }
            }
            let ext = extend_from_stabilizer(ctx, &a, &values, env.radius(2))?;
            let ms = component_morphisms(ctx, &a, env.radius(2), env.witness_radius(2))?;
            let table = CharacterTable::materialize(ctx, &ext, &ms)?;
            let add = additivity_check(ctx, &table)?;
            let loops = restrict_loops(ctx, &ext, &a, env.witness_radius(2))?;
            let loop_values: Vec<Value> =
                loops.iter().map(|(m, v)| json!({ "witness": env.w(&m.witness), "value": rational(v) })).collect();
            let transversal: Vec<Value> =
                ext.transversal().map(|(b, g)| json!({ "object": env.w(b), "conjugator": env.w(g) })).collect();
            let mut text = format!("additivity: {} ({} pairs checked)\n", pass(add.passed()), add.checked);
            for (m, v) in loops.iter() {
                let _ = writeln!(text, "  chi({}) = {}", env.w(&m.witness), rational(v));
            }
            Ok(Output::new(
                json!({
                    "additivity": pass(add.passed()),
                    "checked": add.checked,
                    "loops": loop_values,
                    "transversal": transversal,
                    "table": serde_json::to_value(format::table_to_json(ctx, &table))?,
                }),
                text,
            ))
        }
        CharCmd::Ff { g, a, chr } => {
            let src = parse_char(env, &chr.chr)?;
            let rep = ff_check(ctx, &src, &env.word(g)?, &env.word(a)?, env.radius(3))?;
            let (j, text) = ff_json(env, &rep);
            Ok(Output::new(j, text))
        }
        CharCmd::IdentityClass { hom } => {
            let hom = parse_hom(env, hom)?;
            let spec = identity_class_derivation(ctx, &hom)?;
            let chr = identity_class_character(ctx, &hom)?;
            let ball = ctx.ball(env.radius(2))?;
            let op = spec.to_operator(ctx, &ball)?;
            let leib = leibniz_check(ctx, &op, &in_ball_pairs(ctx, &ball))?;
            let gens: Vec<Value> =
                spec.values().map(|(g, v)| json!({ "generator": ctx.name(*g), "value": env.e(v) })).collect();
            let mut text = format!("leibniz: {} ({} pairs checked)\n", pass(leib.passed()), leib.checked);
            for (g, v) in spec.values() {
                let _ = writeln!(text, "X({}) = {}", ctx.name(*g).unwrap_or_default(), env.e(v));
            }
            Ok(Output::new(
                json!({
                    "leibniz": pass(leib.passed()),
                    "generator_values": gens,
                    "character": serde_json::to_value(format::character_to_json(ctx, &chr))?,
                }),
                text,
            ))
        }
    }
}

fn constraints_cmd(env: &Env, cmd: &ConstraintsCmd) -> Result<Output> {
    let ctx = &env.ctx;
    let radius = env.radius(2);
    match cmd {
        ConstraintsCmd::Build { mm, legend } => {
            let sys = build_system(ctx, radius)?;
            if let Some(path) = mm {
                write(path, &export::matrix_market(&sys))?;
            }
            if let Some(path) = legend {
                write(path, &serde_json::to_string_pretty(&export::legend(ctx, &sys))?)?;
            }
            let interior = sys.interior_rows().count();
            let boundary = sys.boundary_rows().count();
            let text = format!("{} unknowns, {} rows ({} interior, {} boundary)\n", sys.unknowns.len(), sys.rows.len(), interior, boundary);
            Ok(Output::new(
                json!({ "unknowns": sys.unknowns.len(), "rows": sys.rows.len(), "interior_rows": interior, "boundary_rows": boundary }),
                text,
            ))
        }
        ConstraintsCmd::Solve => {
            let sys = build_system(ctx, radius)?;
            let sol = solve_system(&sys)?;
            let j = export::basis_json(ctx, &sys, &sol);
            let mut text = format!(
                "dimension {} ({} unknowns, rank {}, {} interior rows, {} boundary rows)\n",
                sol.dimension(),
                sys.unknowns.len(),
                sol.rank,
                sol.interior_rows,
                sol.boundary_rows
            );
            for (i, v) in sol.basis.iter().enumerate() {
                let terms: Vec<String> = v
                    .iter()
                    .zip(&sys.unknowns)
                    .filter(|(x, _)| **x != Rational::from_integer(0))
                    .map(|(x, (obj, g))| format!("{}*T({}, {})", rational(x), env.w(obj), ctx.name(*g).unwrap_or_default()))
                    .collect();
                let _ = writeln!(text, "v{}: {}", i + 1, terms.join(" + "));
            }
            Ok(Output::new(j, text))
        }
        ConstraintsCmd::Verify { chr } => {
            let src = parse_char(env, &chr.chr)?;
            let rep = verify_character(ctx, &src, radius)?;
            let violations: Vec<Value> = rep
                .violations
                .iter()
                .map(|v| {
                    json!({
                        "row": v.row + 1,
                        "relator_index": v.relator_index,
                        "relator": env.w(&v.relator),
                        "object": env.w(&v.object),
                        "sum": rational(&v.sum),
                        "chain": v.chain.iter().map(|(m, x)| {
                            let mut j = env.morphism(m);
                            j["value"] = Value::String(rational(x));
                            j
                        }).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let mut text = format!(
                "verify: {} ({} rows checked, {} boundary, {} uncovered)\n",
                pass(rep.passed()),
                rep.checked,
                rep.boundary_skipped,
                rep.uncovered
            );
            for v in &rep.violations {
                let _ = writeln!(text, "  row {}: relator {} at {} sums to {}", v.row + 1, env.w(&v.relator), env.w(&v.object), rational(&v.sum));
            }
            Ok(Output::new(
                json!({
                    "verify": pass(rep.passed()),
                    "checked": rep.checked,
                    "boundary_skipped": rep.boundary_skipped,
                    "uncovered": rep.uncovered,
                    "violations": violations,
                }),
                text,
            ))
        }
    }
}

fn demo_cmd(env: &Env, cmd: &DemoCmd) -> Result<Output> {
    match cmd {
        DemoCmd::Counterexample => {
            let object_radius = env.finite_radius(3)?;
            let witness_radius = match env.witness_radius(3) {
                Radius::Finite(r) => r,
                Radius::Infinite => return Err(Error::Input("this command needs a finite --witness-radius".into())),
            };
            let rep = demo::counterexample(object_radius, witness_radius)?;
            let fenv = Env { ctx: rep.ctx.clone(), radius: env.radius, witness_radius: env.witness_radius, seed: env.seed };
            let (ff, fftext) = ff_json(&fenv, &rep.ff);
            let loops = if rep.loops_zero { "zero" } else { "nonzero" };
            let text = format!(
                "additivity: {} ({} pairs checked)\nloops_at_x1: {} ({} loops checked)\nfiber of x1: {} nonzero values at radius {}\n{}",
                pass(rep.additivity_pass),
                rep.additivity_checked,
                loops,
                rep.loops_checked,
                rep.finiteness.nonzero_at_radius,
                rep.object_radius,
                fftext
            );
            Ok(Output::new(
                json!({
                    "character": serde_json::to_value(format::character_to_json(&rep.ctx, &rep.character))?,
                    "object_radius": rep.object_radius,
                    "witness_radius": rep.witness_radius,
                    "additivity": pass(rep.additivity_pass),
                    "additivity_checked": rep.additivity_checked,
                    "loops_at_x1": loops,
                    "loops_checked": rep.loops_checked,
                    "fiber_nonzero": rep.finiteness.nonzero_at_radius,
                    "ff": ff["ff"],
                    "ff_path_sum": ff["ff_path_sum"],
                    "offending_paths": ff["offending_paths"],
                    "ff_report": ff,
                }),
                text,
            ))
        }
        DemoCmd::Dictionary { count } => {
            let radius = env.finite_radius(2)?;
            let mut rng = ChaCha8Rng::seed_from_u64(env.seed);
            let cases = demo::dictionary(&env.ctx, radius, *count, &mut rng)?;
            let agree = cases.iter().all(|c| c.agrees());
            let mut text = format!("dictionary: {} ({} operators, seed {})\n", pass(agree), cases.len(), env.seed);
            let list: Vec<Value> = cases
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let _ = writeln!(
                        text,
                        "  {:>3} {:<10} leibniz {} additivity {} round trips {}",
                        i,
                        c.kind.name(),
                        pass(c.leibniz_pass),
                        pass(c.additivity_pass),
                        pass(c.table_round_trip && c.operator_round_trip)
                    );
                    json!({
                        "kind": c.kind.name(),
                        "leibniz": pass(c.leibniz_pass),
                        "leibniz_checked": c.leibniz_checked,
                        "additivity": pass(c.additivity_pass),
                        "additivity_checked": c.additivity_checked,
                        "table_round_trip": c.table_round_trip,
                        "operator_round_trip": c.operator_round_trip,
                    })
                })
                .collect();
            Ok(Output::new(json!({ "dictionary": pass(agree), "seed": env.seed, "cases": list }), text))
        }
    }
}

fn command_name(cmd: &Command) -> String {
    let (group, sub) = match cmd {
        Command::Group(c) => ("group", format!("{c:?}")),
        Command::Algebra(c) => ("algebra", format!("{c:?}")),
        Command::Deriv(c) => ("deriv", format!("{c:?}")),
        Command::Groupoid(c) => ("groupoid", format!("{c:?}")),
        Command::Char(c) => ("char", format!("{c:?}")),
        Command::Constraints(c) => ("constraints", format!("{c:?}")),
        Command::Demo(c) => ("demo", format!("{c:?}")),
    };
    let variant: String = sub.chars().take_while(|c| c.is_alphanumeric()).collect();
    let mut kebab = String::new();
    for (i, ch) in variant.chars().enumerate() {
        if ch.is_uppercase() && i > 0 {
            kebab.push('-');
        }
        kebab.push(ch.to_ascii_lowercase());
    }
    format!("{group} {kebab}")
}

pub fn run(cli: &Cli) -> Result<Output> {
    let env = Env { ctx: load_ctx(cli)?, radius: cli.radius, witness_radius: cli.witness_radius, seed: cli.seed };
    match &cli.command {
        Command::Group(c) => group_cmd(&env, c),
        Command::Algebra(c) => algebra_cmd(&env, c),
        Command::Deriv(c) => deriv_cmd(&env, c),
        Command::Groupoid(c) => groupoid_cmd(&env, c),
        Command::Char(c) => char_cmd(&env, c),
        Command::Constraints(c) => constraints_cmd(&env, c),
        Command::Demo(c) => demo_cmd(&env, c),
    }
}

fn envelope(command: &str, body: Value) -> Value {
    let mut out = serde_json::Map::new();
    out.insert("schema_version".into(), json!(SCHEMA_VERSION));
    out.insert("command".into(), json!(command));
    match body {
        Value::Object(map) => {
            for (k, v) in map {
                out.entry(k).or_insert(v);
            }
        }
        other => {
            out.insert("result".into(), other);
        }
    }
    Value::Object(out)
}

/// Runs the tool on `args` and returns `(exit code, stdout, stderr)`.
pub fn execute<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 { (0, text, String::new()) } else { (code, String::new(), text) };
        }
    };
    let name = command_name(&cli.command);
    match run(&cli) {
        Ok(out) if cli.json => {
            let doc = envelope(&name, out.json);
            (0, serde_json::to_string_pretty(&doc).expect("serializable") + "\n", String::new())
        }
        Ok(out) => {
            let mut text = out.text;
            if !text.ends_with('\n') {
                text.push('\n');
            }
            (0, text, String::new())
        }
        Err(e) if cli.json => {
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "command": name,
                "error": { "kind": e.kind(), "message": e.to_string() },
            });
            (1, serde_json::to_string_pretty(&doc).expect("serializable") + "\n", String::new())
        }
        Err(e) => (1, String::new(), format!("error: {e}\n")),
    }
}
