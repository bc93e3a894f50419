//! Text syntax for trees, words and linear combinations, plus Graphviz and
//! ASCII renderers.
//!
//! Trees:
//!
//! ```text
//! tree   := "V(" slots ")"
//! slots  := branch { "," angle "," branch }
//! branch := "|" | "[" omega "]" tree
//! ```
//!
//! Words:
//!
//! ```text
//! word   := factor+ | "1"
//! factor := identifier | "[" word "]" "_" omega
//! ```
//!
//! The formatters emit the canonical form: no whitespace in trees, a single
//! space between word factors. The parsers skip whitespace between tokens.
//! Linear combinations print as `t1 + 3/2*t2 - t3` in canonical term order,
//! with `0` for the empty combination.

use std::fmt::{self, Write as _};

use crate::coefficients::{parse_rational, write_lincomb, LinComb, Rational};
use crate::error::{Error, ParseError, Result};
use crate::semigroup::{OmegaElem, SemigroupSpec};
use crate::symbol::Symbol;
use crate::trees::{Branch, Tree};
use crate::words::{Factor, Word};

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Self { text, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn found(&self) -> String {
        match self.rest().chars().next() {
            None => "end of input".to_string(),
            Some(c) => format!("`{c}`"),
        }
    }

    fn error(&self, expected: &str) -> ParseError {
        ParseError::new(self.pos, expected, self.found())
    }

    fn expect(&mut self, token: &str) -> Result<(), ParseError> {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            Ok(())
        } else {
            Err(self.error(&format!("`{token}`")))
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    /// Longest prefix of the remaining input whose characters satisfy `f`.
    fn take_while(&mut self, mut f: impl FnMut(usize, char) -> bool) -> &'a str {
        let rest = self.rest();
        let len = rest
            .char_indices()
            .find(|&(i, c)| !f(i, c))
            .map_or(rest.len(), |(i, _)| i);
        self.pos += len;
        &rest[..len]
    }

    fn identifier(&mut self) -> Result<Symbol, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let ident = self.take_while(|i, c| {
            if i == 0 {
                c.is_ascii_alphabetic() || c == '_'
            } else {
                c.is_ascii_alphanumeric() || c == '_'
            }
        });
        if ident.is_empty() {
            self.pos = start;
            return Err(self.error("identifier"));
        }
        Ok(Symbol::new(ident))
    }

    fn omega(&mut self, spec: &SemigroupSpec, lexeme: &str) -> Result<OmegaElem, ParseError> {
        let start = self.pos;
        spec.parse(lexeme).map_err(|mut e| {
            e.position += start - lexeme.len();
            e
        })
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        if self.rest().is_empty() {
            Ok(())
        } else {
            Err(self.error("end of input"))
        }
    }
}

fn tree_at(cur: &mut Cursor, spec: &SemigroupSpec) -> Result<Tree> {
    cur.expect("V(")?;
    let mut angles = Vec::new();
    let mut branches = vec![branch_at(cur, spec)?];
    while cur.eat(",") {
        angles.push(cur.identifier()?);
        cur.expect(",")?;
        branches.push(branch_at(cur, spec)?);
    }
    cur.expect(")")?;
    Tree::new(angles, branches)
}

fn branch_at(cur: &mut Cursor, spec: &SemigroupSpec) -> Result<Branch> {
    match cur.peek() {
        Some('|') => {
            cur.pos += 1;
            Ok(Branch::Leaf)
        }
        Some('[') => {
            cur.pos += 1;
            let lexeme = cur.take_while(|_, c| c != ']' && c != '|' && c != '(' && c != ',');
            let omega = cur.omega(spec, lexeme.trim_end())?;
            cur.expect("]")?;
            if cur.peek() == Some('|') {
                return Err(Error::Invariant(format!(
                    "leaf at offset {} typed by {omega}; leaves carry the identity type",
                    cur.pos
                )));
            }
            Ok(Branch::edge(omega, tree_at(cur, spec)?))
        }
        Some('V') => Err(Error::Invariant(format!(
            "subtree at offset {} without an edge type",
            cur.pos
        ))),
        _ => Err(cur.error("`|` or `[`").into()),
    }
}

/// Parses a tree in the canonical grammar.
pub fn parse_tree(spec: &SemigroupSpec, text: &str) -> Result<Tree> {
    let mut cur = Cursor::new(text);
    let t = tree_at(&mut cur, spec)?;
    cur.finish()?;
    Ok(t)
}

fn omega_lexeme<'a>(cur: &mut Cursor<'a>) -> &'a str {
    cur.take_while(|i, c| c.is_ascii_alphanumeric() || c == '_' || (i == 0 && c == '-'))
}

fn word_at(cur: &mut Cursor, spec: &SemigroupSpec) -> Result<Word> {
    if cur.peek() == Some('1') {
        cur.pos += 1;
        return Ok(Word::one());
    }
    let mut factors = Vec::new();
    loop {
        match cur.peek() {
            Some('[') => {
                cur.pos += 1;
                let inner = word_at(cur, spec)?;
                cur.expect("]")?;
                if !cur.rest().starts_with('_') {
                    return Err(cur.error("`_`").into());
                }
                cur.pos += 1;
                let lexeme = omega_lexeme(cur);
                let omega = cur.omega(spec, lexeme)?;
                factors.push(Factor::bracket(inner, omega));
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                factors.push(Factor::Letter(cur.identifier()?));
            }
            _ => break,
        }
    }
    if factors.is_empty() {
        return Err(cur.error("letter, `[` or `1`").into());
    }
    Ok(Word::from_factors(factors))
}

/// Parses a bracketed word, e.g. `[x]_a [y]_b` or `1`.
pub fn parse_word(spec: &SemigroupSpec, text: &str) -> Result<Word> {
    let mut cur = Cursor::new(text);
    let w = word_at(&mut cur, spec)?;
    cur.finish()?;
    Ok(w)
}

/// Parses `[-] [c*] term { (+|-) [c*] term }` using `term` for basis
/// elements. A lone `0` is the empty combination.
fn parse_lincomb<B: Ord + Clone>(
    text: &str,
    mut term: impl FnMut(&mut Cursor) -> Result<B>,
) -> Result<LinComb<B>> {
    let mut cur = Cursor::new(text);
    if cur.rest().trim() == "0" {
        return Ok(LinComb::zero());
    }
    let mut out = LinComb::zero();
    let mut sign = if cur.eat("-") { -1 } else { 1 };
    loop {
        cur.skip_ws();
        let save = cur.pos;
        let lexeme = cur.take_while(|_, c| c.is_ascii_digit() || c == '/');
        let coeff = if !lexeme.is_empty() && cur.eat("*") {
            parse_rational(lexeme).ok_or_else(|| ParseError::new(save, "rational coefficient", lexeme))?
        } else {
            cur.pos = save;
            Rational::from_integer(1.into())
        };
        let b = term(&mut cur)?;
        out.add_term(b, coeff * Rational::from_integer(sign.into()));
        if cur.eat("+") {
            sign = 1;
        } else if cur.eat("-") {
            sign = -1;
        } else {
            break;
        }
    }
    cur.finish()?;
    Ok(out)
}

pub fn parse_tree_lincomb(spec: &SemigroupSpec, text: &str) -> Result<LinComb<Tree>> {
    parse_lincomb(text, |cur| tree_at(cur, spec))
}

pub fn parse_word_lincomb(spec: &SemigroupSpec, text: &str) -> Result<LinComb<Word>> {
    parse_lincomb(text, |cur| word_at(cur, spec))
}

fn write_tree(out: &mut String, t: &Tree) {
    out.push_str("V(");
    for (i, b) in t.branches().iter().enumerate() {
        if i > 0 {
            let _ = write!(out, ",{},", t.angles()[i - 1]);
        }
        match b {
            Branch::Leaf => out.push('|'),
            Branch::Edge(w, child) => {
                let _ = write!(out, "[{w}]");
                write_tree(out, child);
            }
        }
    }
    out.push(')');
}

pub fn format_tree(t: &Tree) -> String {
    let mut out = String::new();
    write_tree(&mut out, t);
    out
}

fn write_word(out: &mut String, w: &Word) {
    if w.is_one() {
        out.push('1');
        return;
    }
    for (i, f) in w.factors().iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        match f {
            Factor::Letter(x) => out.push_str(x.as_str()),
            Factor::Bracket(inner, omega) => {
                out.push('[');
                write_word(out, inner);
                let _ = write!(out, "]_{omega}");
            }
        }
    }
}

pub fn format_word(w: &Word) -> String {
    let mut out = String::new();
    write_word(&mut out, w);
    out
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_tree(self))
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_tree(self))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_word(self))
    }
}

pub fn format_lincomb<B: Ord + fmt::Display>(lc: &LinComb<B>) -> String {
    let mut out = String::new();
    let _ = write_lincomb(&mut out, lc, |b| b.to_string());
    out
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

struct DotWriter {
    out: String,
    next: usize,
}

impl DotWriter {
    fn node(&mut self, attrs: &str) -> String {
        let id = format!("n{}", self.next);
        self.next += 1;
        let _ = writeln!(self.out, "    {id} [{attrs}];");
        id
    }

    /// Emits the vertex of `t` and everything above it; returns its id.
    fn vertex(&mut self, t: &Tree) -> String {
        let angles: Vec<&str> = t.angles().iter().map(Symbol::as_str).collect();
        let label = if angles.is_empty() {
            String::new()
        } else {
            format!(", xlabel=\"{}\"", dot_escape(&angles.join(" ")))
        };
        let v = self.node(&format!("shape=point{label}"));
        for b in t.branches() {
            match b {
                Branch::Leaf => {
                    let leaf = self.node("shape=none, label=\"\", width=0, height=0");
                    let _ = writeln!(self.out, "    {v} -> {leaf} [arrowhead=none, minlen=1];");
                }
                Branch::Edge(w, child) => {
                    let c = self.vertex(child);
                    let _ = writeln!(
                        self.out,
                        "    {v} -> {c} [arrowhead=none, label=\"{}\"];",
                        dot_escape(&w.to_string())
                    );
                }
            }
        }
        v
    }
}

/// Graphviz rendering of a combination of trees: one cluster per term,
/// labelled by its coefficient. Trees grow upwards from a root stub; angle
/// decorations are vertex labels; internal edges are labelled by their type.
pub fn render_dot(e: &LinComb<Tree>) -> String {
    let mut w = DotWriter {
        out: String::new(),
        next: 0,
    };
    w.out.push_str("digraph lincomb {\n  rankdir=BT;\n");
    if e.is_zero() {
        w.out.push_str("  label=\"0\";\n}\n");
        return w.out;
    }
    for (i, (t, c)) in e.iter().enumerate() {
        let _ = writeln!(w.out, "  subgraph cluster_{i} {{");
        let _ = writeln!(w.out, "    label=\"{}\";", dot_escape(&c.to_string()));
        let root = w.vertex(t);
        let stub = w.node("shape=none, label=\"\", width=0, height=0");
        let _ = writeln!(w.out, "    {stub} -> {root} [arrowhead=none];");
        w.out.push_str("  }\n");
    }
    w.out.push_str("}\n");
    w.out
}

/// Human-readable indented rendering; not meant to be parsed back.
pub fn render_ascii(t: &Tree) -> String {
    fn go(t: &Tree, prefix: &str, out: &mut String) {
        let n = t.branches().len();
        for (i, b) in t.branches().iter().enumerate() {
            let last = i + 1 == n;
            let (elbow, pad) = if last { ("└─", "   ") } else { ("├─", "│  ") };
            match b {
                Branch::Leaf => {
                    let _ = writeln!(out, "{prefix}{elbow} |");
                }
                Branch::Edge(w, child) => {
                    let _ = writeln!(out, "{prefix}{elbow}[{w}]─o");
                    go(child, &format!("{prefix}{pad}"), out);
                }
            }
            if !last {
                let _ = writeln!(out, "{prefix}│ {}", t.angles()[i]);
            }
        }
    }
    let mut out = String::from("o\n");
    go(t, "", &mut out);
    out
}

/// ASCII rendering of every term of a combination, each headed by its
/// coefficient.
pub fn render_ascii_lincomb(e: &LinComb<Tree>) -> String {
    if e.is_zero() {
        return "0\n".into();
    }
    let mut out = String::new();
    for (t, c) in e.iter() {
        let _ = writeln!(out, "{c} *");
        out.push_str(&render_ascii(t));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::{int, ratio};

    fn free_ab() -> SemigroupSpec {
        SemigroupSpec::free(&["a", "b", "w"]).unwrap()
    }

    #[test]
    fn parses_corolla_and_grafted_corolla() {
        let spec = free_ab();
        assert_eq!(parse_tree(&spec, "V(|,x,|)").unwrap(), Tree::corolla(["x"]));
        let t = parse_tree(&spec, "V([a]V(|,x,|))").unwrap();
        assert_eq!(t, Tree::corolla(["x"]).graft_root(&spec.parse("a").unwrap()));
        assert_eq!(parse_tree(&spec, " V( | , x , | ) ").unwrap(), Tree::corolla(["x"]));
    }

    #[test]
    fn unbalanced_input_reports_end_offset() {
        let err = parse_tree(&free_ab(), "V(|,x").unwrap_err();
        let Error::Parse(p) = err else { panic!("{err:?}") };
        assert_eq!(p.position, 5);
        assert_eq!(p.found, "end of input");
    }

    #[test]
    fn typed_leaf_and_untyped_subtree_are_invariant_violations() {
        let spec = free_ab();
        assert!(matches!(parse_tree(&spec, "V([a]|)"), Err(Error::Invariant(_))));
        assert!(matches!(parse_tree(&spec, "V(V(|))"), Err(Error::Invariant(_))));
        assert!(matches!(parse_tree(&spec, "V([q]V(|))"), Err(Error::Parse(_))));
        assert!(matches!(parse_tree(&spec, "V(|) x"), Err(Error::Parse(_))));
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(format_tree(&Tree::unit()), "V(|)");
        let spec = free_ab();
        let t = Tree::corolla(["x", "y"]).graft_root(&spec.parse("w").unwrap());
        assert_eq!(format_tree(&t), "V([w]V(|,x,|,y,|))");
        let w = parse_word(&spec, "[x [y]_b]_ab").unwrap();
        assert_eq!(format_word(&w), "[x [y]_b]_ab");
    }

    #[test]
    fn word_parsing() {
        let spec = free_ab();
        let w = parse_word(&spec, "[x]_a [y]_b").unwrap();
        assert_eq!(w.factors().len(), 2);
        assert!(!w.is_rb_word());
        assert_eq!(parse_word(&spec, "1").unwrap(), Word::one());
        assert_eq!(parse_word(&spec, "[1]_a").unwrap(), Word::one().bracketed(&spec.parse("a").unwrap()));
        assert!(parse_word(&spec, "").is_err());
        assert!(parse_word(&spec, "[x]a").is_err());
        assert!(parse_word(&spec, "[x]_c").is_err());
        let ints = SemigroupSpec::Integers;
        let w = parse_word(&ints, "x [y]_-3 z").unwrap();
        assert_eq!(format_word(&w), "x [y]_-3 z");
    }

    #[test]
    fn lincomb_round_trip() {
        let spec = free_ab();
        let e = parse_tree_lincomb(&spec, "V(|) + 3/2*V(|,x,|) - 2*V([a]V(|))").unwrap();
        assert_eq!(e.coeff(&Tree::unit()), int(1));
        assert_eq!(e.coeff(&Tree::corolla(["x"])), ratio(3, 2));
        assert_eq!(parse_tree_lincomb(&spec, &format_lincomb(&e)).unwrap(), e);
        assert!(parse_tree_lincomb(&spec, "0").unwrap().is_zero());
        let neg = parse_tree_lincomb(&spec, "-V(|)").unwrap();
        assert_eq!(neg.coeff(&Tree::unit()), int(-1));

        let words = parse_word_lincomb(&spec, "[x]_a [y]_b - 1/2*x y").unwrap();
        assert_eq!(words.len(), 2);
        assert_eq!(parse_word_lincomb(&spec, &format_lincomb(&words)).unwrap(), words);
    }

    #[test]
    fn dot_rendering() {
        let unit = render_dot(&LinComb::basis(Tree::unit()));
        assert!(unit.starts_with("digraph"));
        assert_eq!(unit.matches("subgraph").count(), 1);
        assert_eq!(unit.matches("->").count(), 2);
        let empty = render_dot(&LinComb::zero());
        assert!(empty.contains("label=\"0\""));
        assert!(!empty.contains("subgraph"));
        assert_eq!(unit, render_dot(&LinComb::basis(Tree::unit())));
    }

    #[test]
    fn ascii_rendering() {
        let t = parse_tree(&free_ab(), "V(|,x,[a]V(|,y,|))").unwrap();
        let text = render_ascii(&t);
        assert!(text.contains("[a]─o"));
        assert!(text.contains("│ x"));
    }
}
