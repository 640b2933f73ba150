//! Text formats: group presentations, words and algebra elements.
//!
//! Presentation grammar (sections separated by newlines or `;`, `#` starts a
//! comment):
//!
//! ```text
//! gens: a b
//! rel: a^3, b^2, (a b)^2
//! rules: b a -> a b            # optional, explicit rewriting system
//! strategy: free|rewriting|table   # optional
//! ```
//!
//! Words are whitespace-separated letters with optional integer exponents,
//! parenthesized sub-words may be raised to a power, and `e` is the
//! identity. Algebra elements look like `2*e + 1*x1 - 3/2*x1 x2^-1`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;

use num_traits::{One, Signed};

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::group::{CompletionLimits, GroupCtx, Rule};
use crate::word::{Gen, Word};
use crate::Rational;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(i128),
    Pow(i64),
    Slash,
    Star,
    Plus,
    Minus,
    LParen,
    RParen,
    Arrow,
}

struct Lexer<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
}

fn syntax(src: &str, pos: usize, message: impl Into<String>) -> Error {
    let before = &src[..pos.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    Error::Syntax { line, column, message: message.into() }
}

impl<'a> Lexer<'a> {
    fn lex(src: &'a str, start: usize, end: usize) -> Result<Self> {
        let bytes = src.as_bytes();
        let mut toks = Vec::new();
        let mut i = start;
        while i < end {
            let c = bytes[i];
            match c {
                b' ' | b'\t' | b'\r' | b'\n' => i += 1,
                b'(' => {
                    toks.push((Tok::LParen, i));
                    i += 1
                }
                b')' => {
                    toks.push((Tok::RParen, i));
                    i += 1
                }
                b'*' => {
                    toks.push((Tok::Star, i));
                    i += 1
                }
                b'/' => {
                    toks.push((Tok::Slash, i));
                    i += 1
                }
                b'+' => {
                    toks.push((Tok::Plus, i));
                    i += 1
                }
                b'-' if i + 1 < end && bytes[i + 1] == b'>' => {
                    toks.push((Tok::Arrow, i));
                    i += 2
                }
                b'-' => {
                    toks.push((Tok::Minus, i));
                    i += 1
                }
                b'^' => {
                    let at = i;
                    i += 1;
                    while i < end && bytes[i] == b' ' {
                        i += 1;
                    }
                    let s = i;
                    if i < end && (bytes[i] == b'-' || bytes[i] == b'+') {
                        i += 1;
                    }
                    let d = i;
                    while i < end && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if d == i {
                        return Err(syntax(src, at, "expected integer exponent after `^`"));
                    }
                    let k: i64 = src[s..i]
                        .parse()
                        .map_err(|_| syntax(src, s, "exponent out of range"))?;
                    toks.push((Tok::Pow(k), at));
                }
                b'0'..=b'9' => {
                    let s = i;
                    while i < end && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let n: i128 = src[s..i].parse().map_err(|_| syntax(src, s, "integer out of range"))?;
                    toks.push((Tok::Int(n), s));
                }
                c if c.is_ascii_alphabetic() || c == b'_' => {
                    let s = i;
                    while i < end && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_' || bytes[i] == b'\'') {
                        i += 1;
                    }
                    toks.push((Tok::Ident(src[s..i].to_string()), s));
                }
                _ => return Err(syntax(src, i, format!("unexpected character `{}`", c as char))),
            }
        }
        Ok(Lexer { src, toks })
    }
}

struct Parser<'a, 'n> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    names: &'n [String],
}

impl<'a, 'n> Parser<'a, 'n> {
    fn new(lexer: Lexer<'a>, end: usize, names: &'n [String]) -> Self {
        Parser { src: lexer.src, toks: lexer.toks, pos: 0, end, names }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |&(_, p)| p)
    }

    fn err(&self, message: impl Into<String>) -> Error {
        syntax(self.src, self.here(), message)
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(_)) | Some(Tok::LParen))
    }

    /// word := factor*
    fn word(&mut self) -> Result<Word> {
        let mut w = Word::identity();
        while self.starts_atom() {
            w = w.concat(&self.factor()?);
        }
        Ok(w)
    }

    fn factor(&mut self) -> Result<Word> {
        let atom = match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                let p = self.here();
                self.pos += 1;
                if name == "e" {
                    Word::identity()
                } else {
                    match self.names.iter().position(|n| *n == name) {
                        Some(i) => Word::gen(i as u32),
                        None => return Err(syntax(self.src, p, format!("unknown generator `{name}`"))),
                    }
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let w = self.word()?;
                match self.peek() {
                    Some(Tok::RParen) => self.pos += 1,
                    _ => return Err(self.err("expected `)`")),
                }
                w
            }
            _ => return Err(self.err("expected a generator or `(`")),
        };
        if let Some(&Tok::Pow(k)) = self.peek() {
            self.pos += 1;
            return power(&atom, k).ok_or_else(|| self.err("exponent too large"));
        }
        Ok(atom)
    }

    fn rational(&mut self) -> Result<Rational> {
        let num = match self.peek() {
            Some(&Tok::Int(n)) => n,
            _ => return Err(self.err("expected a number")),
        };
        self.pos += 1;
        if let Some(Tok::Slash) = self.peek() {
            self.pos += 1;
            match self.peek() {
                Some(&Tok::Int(d)) if d != 0 => {
                    self.pos += 1;
                    return Ok(Rational::new(num, d));
                }
                _ => return Err(self.err("expected a nonzero denominator")),
            }
        }
        Ok(Rational::from_integer(num))
    }

    /// term := rational ['*' word] | word
    fn term(&mut self) -> Result<(Rational, Word)> {
        if let Some(Tok::Int(_)) = self.peek() {
            let c = self.rational()?;
            if let Some(Tok::Star) = self.peek() {
                self.pos += 1;
                if !self.starts_atom() {
                    return Err(self.err("expected a word after `*`"));
                }
                return Ok((c, self.word()?));
            }
            return Ok((c, Word::identity()));
        }
        if !self.starts_atom() {
            return Err(self.err("expected a term"));
        }
        Ok((Rational::one(), self.word()?))
    }

    fn element(&mut self) -> Result<Vec<(Rational, Word)>> {
        let mut out = Vec::new();
        let mut sign = Rational::one();
        if let Some(Tok::Minus) = self.peek() {
            self.pos += 1;
            sign = -sign;
        } else if let Some(Tok::Plus) = self.peek() {
            self.pos += 1;
        }
        loop {
            let (c, w) = self.term()?;
            out.push((sign * c, w));
            match self.peek() {
                Some(Tok::Plus) => sign = Rational::one(),
                Some(Tok::Minus) => sign = -Rational::one(),
                None => break,
                _ => return Err(self.err("expected `+` or `-`")),
            }
            self.pos += 1;
        }
        Ok(out)
    }
}

fn power(w: &Word, k: i64) -> Option<Word> {
    if k.unsigned_abs() > 1_000_000 {
        return None;
    }
    // a single syllable keeps run-length form
    if let [(g, e)] = w.syllables() {
        let exp = i32::try_from((*e as i64).checked_mul(k)?).ok()?;
        return Some(Word::from_syllables([(*g, exp)]));
    }
    let base = if k < 0 { w.inverse() } else { w.clone() };
    let mut out = Word::identity();
    for _ in 0..k.unsigned_abs() {
        out = out.concat(&base);
    }
    Some(out)
}

/// Parses a word over the given generator names (not normalized).
pub fn parse_word(names: &[String], text: &str) -> Result<Word> {
    let lexer = Lexer::lex(text, 0, text.len())?;
    let mut p = Parser::new(lexer, text.len(), names);
    let w = p.word()?;
    if !p.at_end() {
        return Err(p.err("unexpected token after word"));
    }
    Ok(w)
}

/// Parses an algebra element and normalizes every word in `ctx`.
pub fn parse_element(ctx: &GroupCtx, text: &str) -> Result<AlgebraElement> {
    let lexer = Lexer::lex(text, 0, text.len())?;
    let mut p = Parser::new(lexer, text.len(), ctx.names());
    if p.at_end() {
        return Err(p.err("empty element"));
    }
    let terms = p.element()?;
    AlgebraElement::from_terms(ctx, terms)
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let lexer = Lexer::lex(text, 0, text.len())?;
    let mut p = Parser::new(lexer, text.len(), &[]);
    let mut sign = Rational::one();
    if let Some(Tok::Minus) = p.peek() {
        p.pos += 1;
        sign = -sign;
    }
    let q = p.rational()?;
    if !p.at_end() {
        return Err(p.err("unexpected token after number"));
    }
    Ok(sign * q)
}

/// Renders a word with the context's generator names, `e` for the identity.
pub fn render_word(ctx: &GroupCtx, w: &Word) -> String {
    render_word_names(ctx.names(), w)
}

pub fn render_word_names(names: &[String], w: &Word) -> String {
    if w.is_identity() {
        return "e".into();
    }
    let mut s = String::new();
    for (i, &(g, e)) in w.syllables().iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        match names.get(g.index()) {
            Some(n) => s.push_str(n),
            None => {
                let _ = write!(s, "g{}", g.0);
            }
        }
        if e != 1 {
            let _ = write!(s, "^{e}");
        }
    }
    s
}

pub fn render_rational(q: &Rational) -> String {
    if q.is_integer() {
        format!("{}", q.numer())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Renders `2*e + 1*x1 - 3*x1 x2^-1`; the zero element renders as `0`.
pub fn render_element(ctx: &GroupCtx, u: &AlgebraElement) -> String {
    if u.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (w, c)) in u.terms().enumerate() {
        let word = render_word(ctx, w);
        match (i, c.is_negative()) {
            (0, false) => {}
            (0, true) => s.push('-'),
            (_, false) => s.push_str(" + "),
            (_, true) => s.push_str(" - "),
        }
        let _ = write!(s, "{}*{}", render_rational(&c.abs()), word);
    }
    s
}

/// Requested equality strategy from a presentation file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrategyRequest {
    Auto,
    Free,
    Rewriting,
    Table,
}

/// Parses a presentation and builds its context with default completion
/// limits.
pub fn parse_presentation(text: &str) -> Result<GroupCtx> {
    parse_presentation_with(text, CompletionLimits::default())
}

pub fn parse_presentation_with(text: &str, limits: CompletionLimits) -> Result<GroupCtx> {
    // Blank out comments so byte offsets stay valid for error positions.
    let mut clean = String::with_capacity(text.len());
    let mut in_comment = false;
    for ch in text.chars() {
        match ch {
            '#' => in_comment = true,
            '\n' => in_comment = false,
            _ => {}
        }
        if in_comment {
            for _ in 0..ch.len_utf8() {
                clean.push(' ');
            }
        } else {
            clean.push(ch);
        }
    }
    let src = clean.as_str();

    let mut names: Option<Vec<String>> = None;
    let mut rel_span: Option<(usize, usize)> = None;
    let mut rules_span: Option<(usize, usize)> = None;
    let mut strategy = StrategyRequest::Auto;

    let mut start = 0;
    for (i, ch) in src.char_indices().chain(core::iter::once((src.len(), ';'))) {
        if ch != '\n' && ch != ';' {
            continue;
        }
        let (s, e) = (start, i);
        start = i + 1;
        let stmt = &src[s..e];
        if stmt.trim().is_empty() {
            continue;
        }
        let lead = stmt.len() - stmt.trim_start().len();
        let colon = match stmt.find(':') {
            Some(c) => c,
            None => return Err(syntax(src, s + lead, "expected `key: value`")),
        };
        let key = stmt[..colon].trim();
        let body = (s + colon + 1, e);
        match key {
            "gens" => {
                if names.is_some() {
                    return Err(syntax(src, s + lead, "duplicate `gens` section"));
                }
                let mut list = Vec::new();
                let lexer = Lexer::lex(src, body.0, body.1)?;
                for (tok, p) in lexer.toks {
                    match tok {
                        Tok::Ident(n) if n == "e" => {
                            return Err(syntax(src, p, "`e` is reserved for the identity"))
                        }
                        Tok::Ident(n) => {
                            if list.contains(&n) {
                                return Err(syntax(src, p, format!("duplicate generator `{n}`")));
                            }
                            list.push(n)
                        }
                        _ => return Err(syntax(src, p, "expected a generator name")),
                    }
                }
                names = Some(list);
            }
            "rel" | "rels" => rel_span = Some(body),
            "rules" => rules_span = Some(body),
            "strategy" => {
                strategy = match stmt[colon + 1..].trim() {
                    "free" => StrategyRequest::Free,
                    "rewriting" => StrategyRequest::Rewriting,
                    "table" => StrategyRequest::Table,
                    "auto" => StrategyRequest::Auto,
                    other => return Err(syntax(src, body.0, format!("unknown strategy `{other}`"))),
                }
            }
            other => return Err(syntax(src, s + lead, format!("unknown section `{other}`"))),
        }
    }
    let names = names.ok_or_else(|| syntax(src, 0, "missing `gens:` section"))?;

    let relators = match rel_span {
        Some((a, b)) => parse_word_list(src, a, b, &names)?,
        None => Vec::new(),
    };
    let rules = match rules_span {
        Some((a, b)) => Some(parse_rules(src, a, b, &names)?),
        None => None,
    };

    let nontrivial = relators.iter().any(|r| !r.is_identity());
    let ctx = match (strategy, rules) {
        (StrategyRequest::Free, _) if nontrivial => {
            return Err(Error::Strategy("free strategy requires an empty relator list".into()))
        }
        (StrategyRequest::Free, _) => GroupCtx::free(names),
        (_, Some(rules)) => GroupCtx::from_rules(names, relators, rules)?,
        (_, None) => GroupCtx::from_relators(names, relators, limits)?,
    };
    match strategy {
        StrategyRequest::Table => ctx.materialize_table(),
        _ => Ok(ctx),
    }
}

fn parse_word_list(src: &str, a: usize, b: usize, names: &[String]) -> Result<Vec<Word>> {
    let mut out = Vec::new();
    let mut s = a;
    for (i, ch) in src[a..b].char_indices().map(|(i, c)| (i + a, c)).chain(core::iter::once((b, ','))) {
        if ch != ',' {
            continue;
        }
        if src[s..i].trim().is_empty() {
            if i < b {
                return Err(syntax(src, i, "empty word in list"));
            }
            s = i + 1;
            continue;
        }
        let lexer = Lexer::lex(src, s, i)?;
        let mut p = Parser::new(lexer, i, names);
        let w = p.word()?;
        if !p.at_end() {
            return Err(p.err("unexpected token in word"));
        }
        out.push(w);
        s = i + 1;
    }
    Ok(out)
}

fn parse_rules(src: &str, a: usize, b: usize, names: &[String]) -> Result<Vec<Rule>> {
    let mut out = Vec::new();
    let mut s = a;
    for (i, ch) in src[a..b].char_indices().map(|(i, c)| (i + a, c)).chain(core::iter::once((b, ','))) {
        if ch != ',' {
            continue;
        }
        if src[s..i].trim().is_empty() {
            s = i + 1;
            continue;
        }
        let lexer = Lexer::lex(src, s, i)?;
        let mut p = Parser::new(lexer, i, names);
        let lhs = p.word()?;
        match p.peek() {
            Some(Tok::Arrow) => p.pos += 1,
            _ => return Err(p.err("expected `->`")),
        }
        let rhs = p.word()?;
        if !p.at_end() {
            return Err(p.err("unexpected token in rule"));
        }
        out.push(Rule { lhs: lhs.to_letters(), rhs: rhs.to_letters() });
        s = i + 1;
    }
    Ok(out)
}

/// Looks up a generator by name.
pub fn generator(ctx: &GroupCtx, name: &str) -> Result<Gen> {
    ctx.gen_by_name(name).ok_or_else(|| Error::UnknownGeneratorName(name.into()))
}

/// Parses a word and puts it in normal form.
pub fn parse_normal_word(ctx: &GroupCtx, text: &str) -> Result<Word> {
    ctx.normal_form(&parse_word(ctx.names(), text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Radius;

    #[test]
    fn free_presentation() {
        let g = parse_presentation("gens: x1 x2").unwrap();
        assert!(g.is_free());
        assert_eq!(g.rank(), 2);
    }

    #[test]
    fn z2_presentation_is_rewriting() {
        let g = parse_presentation("gens: a b; rel: a b a^-1 b^-1").unwrap();
        assert_eq!(g.strategy().name(), "rewriting");
        let ba = parse_word(g.names(), "b a").unwrap();
        assert_eq!(render_word(&g, &g.normal_form(&ba).unwrap()), "a b");
    }

    #[test]
    fn s3_presentation_has_six_elements() {
        let g = parse_presentation("gens: a b\nrel: a^3, b^2, (a b)^2\nstrategy: table").unwrap();
        assert_eq!(g.order(), Some(6));
        let g = parse_presentation("gens: a b; rel: a^3, b^2, (a b)^2").unwrap();
        assert_eq!(g.ball(Radius::Infinite).unwrap().len(), 6);
    }

    #[test]
    fn syntax_errors_report_position() {
        let err = parse_presentation("gens: a b\nrel: a c").unwrap_err();
        assert_eq!(
            err,
            Error::Syntax { line: 2, column: 8, message: "unknown generator `c`".into() }
        );
        assert!(matches!(parse_presentation("rel: a"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_presentation("gens: a\nrel: a^"), Err(Error::Syntax { line: 2, .. })));
        assert!(matches!(parse_presentation("gens: a\nrel: (a"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_presentation("gens: a e"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn comments_are_ignored() {
        let g = parse_presentation("# free group\ngens: x1 x2 # two generators\n").unwrap();
        assert_eq!(g.rank(), 2);
    }

    #[test]
    fn explicit_rules() {
        let g = parse_presentation(
            "gens: a b\nrel: a b a^-1 b^-1\nrules: b a -> a b, b^-1 a -> a b^-1, b a^-1 -> a^-1 b, b^-1 a^-1 -> a^-1 b^-1",
        )
        .unwrap();
        let w = parse_word(g.names(), "b a b^-1").unwrap();
        assert_eq!(render_word(&g, &g.normal_form(&w).unwrap()), "a");
        let bad = parse_presentation("gens: a b\nrules: a a -> e, a a a -> b");
        assert!(matches!(bad, Err(Error::Strategy(_))));
    }

    #[test]
    fn free_strategy_rejects_relators() {
        assert!(parse_presentation("gens: a\nrel: a^2\nstrategy: free").is_err());
    }

    #[test]
    fn word_syntax() {
        let names: Vec<String> = ["x1", "x2"].iter().map(|s| s.to_string()).collect();
        let w = parse_word(&names, "x1 x2^-1 x1^3").unwrap();
        assert_eq!(render_word_names(&names, &w), "x1 x2^-1 x1^3");
        let w = parse_word(&names, "(x1 x2)^-2").unwrap();
        assert_eq!(render_word_names(&names, &w), "x2^-1 x1^-1 x2^-1 x1^-1");
        assert_eq!(render_word_names(&names, &parse_word(&names, "e").unwrap()), "e");
    }

    #[test]
    fn element_round_trip() {
        let g = GroupCtx::free_rank(2);
        let u = parse_element(&g, "2*e + 1*x1 - 3*x1 x2^-1").unwrap();
        assert_eq!(render_element(&g, &u), "2*e + 1*x1 - 3*x1 x2^-1");
        let v = parse_element(&g, "-1/2*x2 + x1 x1^-1").unwrap();
        assert_eq!(render_element(&g, &v), "1*e - 1/2*x2");
        assert_eq!(render_element(&g, &parse_element(&g, "0").unwrap()), "0");
        assert!(parse_element(&g, "2*").is_err());
        assert!(parse_element(&g, "").is_err());
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-3/4").unwrap(), Rational::new(-3, 4));
        assert_eq!(render_rational(&Rational::new(6, 3)), "2");
        assert!(parse_rational("1/0").is_err());
    }
}
