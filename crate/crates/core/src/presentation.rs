//! Textual front-end: quivers with relations, module definitions over a
//! presentation or over an enveloping grid, and string words.
//!
//! Composition convention, used everywhere: paths compose right to left,
//! so in `a*b` the arrow `b` acts first. Internally paths are stored in
//! application order (`b` before `a`).

use crate::field::{Coeff, FieldSpec};
use crate::rewrite::{Path, Quiver};
use num::bigint::BigInt;
use std::collections::BTreeMap;
use std::fmt::Write as _;

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum ParseError {
    #[error("syntax error at {line}:{col}: expected {expected}, found `{found}`")]
    Syntax { line: usize, col: usize, expected: String, found: String },
    #[error("undeclared name `{name}` at {line}:{col}")]
    UndeclaredName { name: String, line: usize, col: usize },
    #[error("non-composable path in relation: {detail}")]
    NonComposablePath { detail: String },
    #[error("non-admissible relation: {detail}")]
    NonAdmissibleRelation { detail: String },
    #[error("matrix for arrow `{arrow}` has shape {given_rows}x{given_cols}, expected {want_rows}x{want_cols}")]
    ShapeMismatch {
        arrow: String,
        want_rows: usize,
        want_cols: usize,
        given_rows: usize,
        given_cols: usize,
    },
    #[error("unknown arrow `{name}`")]
    UnknownArrow { name: String },
    #[error("walk breaks at letter {index}: consecutive letters do not compose")]
    NonComposableWalk { index: usize },
    #[error("letter {index} is immediately followed by its own inverse")]
    ImmediateInverse { index: usize },
    #[error("F_{p} is not a prime field")]
    NotPrime { p: u64 },
    #[error("duplicate name `{name}`")]
    DuplicateName { name: String },
}

// ── tokens ──────────────────────────────────────────────────────────

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Number(String),
    Punct(&'static str),
    Eof,
}

impl Tok {
    fn text(&self) -> String {
        match self {
            Tok::Ident(s) | Tok::Number(s) => s.clone(),
            Tok::Punct(p) => p.to_string(),
            Tok::Eof => "<eof>".into(),
        }
    }
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

fn ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

fn lex(text: &str) -> Result<Vec<(Tok, usize, usize)>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut it = text.chars().peekable();
    while let Some(&c) = it.peek() {
        let (tl, tc) = (line, col);
        let bump = |it: &mut std::iter::Peekable<std::str::Chars>, line: &mut usize, col: &mut usize| {
            let c = it.next().unwrap();
            if c == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
            c
        };
        if c == '#' {
            while let Some(&c2) = it.peek() {
                if c2 == '\n' {
                    break;
                }
                bump(&mut it, &mut line, &mut col);
            }
            continue;
        }
        if c.is_whitespace() {
            bump(&mut it, &mut line, &mut col);
            continue;
        }
        if ident_char(c) {
            let mut s = String::new();
            let mut all_digits = true;
            while let Some(&c2) = it.peek() {
                if ident_char(c2) {
                    all_digits &= c2.is_ascii_digit();
                    s.push(bump(&mut it, &mut line, &mut col));
                } else {
                    break;
                }
            }
            out.push((if all_digits { Tok::Number(s) } else { Tok::Ident(s) }, tl, tc));
            continue;
        }
        match c {
            '-' => {
                bump(&mut it, &mut line, &mut col);
                if it.peek() == Some(&'>') {
                    bump(&mut it, &mut line, &mut col);
                    out.push((Tok::Punct("->"), tl, tc));
                } else {
                    out.push((Tok::Punct("-"), tl, tc));
                }
            }
            '^' => {
                bump(&mut it, &mut line, &mut col);
                if it.peek() == Some(&'-') {
                    bump(&mut it, &mut line, &mut col);
                    if it.peek() == Some(&'1') {
                        bump(&mut it, &mut line, &mut col);
                        out.push((Tok::Punct("^-1"), tl, tc));
                        continue;
                    }
                }
                return Err(ParseError::Syntax {
                    line: tl,
                    col: tc,
                    expected: "^-1".into(),
                    found: "^".into(),
                });
            }
            '{' | '}' | ';' | ',' | ':' | '=' | '[' | ']' | '*' | '+' | '/' | '(' | ')' => {
                bump(&mut it, &mut line, &mut col);
                let p: &'static str = match c {
                    '{' => "{",
                    '}' => "}",
                    ';' => ";",
                    ',' => ",",
                    ':' => ":",
                    '=' => "=",
                    '[' => "[",
                    ']' => "]",
                    '*' => "*",
                    '+' => "+",
                    '/' => "/",
                    '(' => "(",
                    _ => ")",
                };
                out.push((Tok::Punct(p), tl, tc));
            }
            other => {
                return Err(ParseError::Syntax {
                    line: tl,
                    col: tc,
                    expected: "token".into(),
                    found: other.to_string(),
                })
            }
        }
    }
    out.push((Tok::Eof, line, col));
    Ok(out)
}

impl Lexer {
    fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Lexer { toks: lex(text)?, pos: 0 })
    }
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }
    fn loc(&self) -> (usize, usize) {
        (self.toks[self.pos].1, self.toks[self.pos].2)
    }
    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }
    fn err(&self, expected: &str) -> ParseError {
        let (line, col) = self.loc();
        ParseError::Syntax { line, col, expected: expected.into(), found: self.peek().text() }
    }
    fn expect_punct(&mut self, p: &str) -> Result<(), ParseError> {
        match self.peek() {
            Tok::Punct(q) if *q == p => {
                self.next();
                Ok(())
            }
            _ => Err(self.err(&format!("`{p}`")),
        )}
    }
    fn expect_kw(&mut self, kw: &str) -> Result<(), ParseError> {
        match self.peek() {
            Tok::Ident(s) if s == kw => {
                self.next();
                Ok(())
            }
            _ => Err(self.err(&format!("keyword `{kw}`"))),
        }
    }
    fn at_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }
    fn name(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) | Tok::Number(s) => {
                self.next();
                Ok(s)
            }
            _ => Err(self.err("name")),
        }
    }
    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.next();
                Ok(s)
            }
            _ => Err(self.err("identifier")),
        }
    }
    fn integer(&mut self) -> Result<BigInt, ParseError> {
        match self.peek().clone() {
            Tok::Number(s) => {
                self.next();
                Ok(s.parse().unwrap())
            }
            _ => Err(self.err("integer")),
        }
    }
}

// ── surface types ───────────────────────────────────────────────────

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowDecl {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// One summand of a relation: `coeff * path`, path in application order.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationTerm {
    pub coeff: Coeff,
    pub path: Path,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuiverPresentation {
    pub name: String,
    pub field_spec: FieldSpec,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowDecl>,
    pub relations: Vec<Vec<RelationTerm>>,
    pub length_bound: Option<usize>,
}

impl QuiverPresentation {
    pub fn quiver(&self) -> Quiver {
        Quiver {
            n_vertices: self.vertices.len(),
            arrows: self.arrows.iter().map(|a| (a.source, a.target)).collect(),
        }
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Renders the canonical serialized form (tokens joined by single
    /// spaces); reparsing yields a structurally equal presentation.
    pub fn serialize(&self) -> String {
        let mut s = String::new();
        write!(s, "algebra {} {{ field ", self.name).unwrap();
        match self.field_spec {
            FieldSpec::Rationals => s.push('Q'),
            FieldSpec::Prime(p) => write!(s, "F{p}").unwrap(),
        }
        s.push_str(" ; vertices ");
        s.push_str(&self.vertices.join(" , "));
        s.push_str(" ;");
        if !self.arrows.is_empty() {
            s.push_str(" arrows ");
            let arrows: Vec<String> = self
                .arrows
                .iter()
                .map(|a| {
                    format!("{} : {} -> {}", a.name, self.vertices[a.source], self.vertices[a.target])
                })
                .collect();
            s.push_str(&arrows.join(" , "));
            s.push_str(" ;");
        }
        if !self.relations.is_empty() {
            s.push_str(" relations ");
            let rels: Vec<String> = self.relations.iter().map(|r| self.render_relation(r)).collect();
            s.push_str(&rels.join(" ; "));
            s.push_str(" ;");
        }
        if let Some(b) = self.length_bound {
            write!(s, " lenbound {b} ;").unwrap();
        }
        s.push_str(" }");
        s
    }

    fn render_relation(&self, rel: &[RelationTerm]) -> String {
        let mut parts = Vec::new();
        for (k, term) in rel.iter().enumerate() {
            // textual path order is the reverse of application order
            let path: Vec<&str> =
                term.path.seq.iter().rev().map(|&a| self.arrows[a].name.as_str()).collect();
            let path = path.join(" * ");
            let coeff = term.coeff.to_string();
            let (sign, mag) = if let Some(stripped) = coeff.strip_prefix('-') {
                ("-", stripped.to_string())
            } else {
                ("+", coeff)
            };
            let body = if mag == "1" { path } else { format!("{mag} * {path}") };
            if k == 0 {
                if sign == "-" {
                    parts.push(format!("- {body}"));
                } else {
                    parts.push(body);
                }
            } else {
                parts.push(format!("{sign} {body}"));
            }
        }
        parts.join(" ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OverClause {
    Algebra(String),
    /// `env(A, B)`: module over A tensor B-opposite, i.e. an (A,B)-bimodule.
    Env(String, String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModuleSpec {
    pub name: String,
    pub over: OverClause,
    /// dimension per vertex name (grid vertex `i_j` for env modules)
    pub dims: BTreeMap<String, usize>,
    /// row-major matrix per arrow/generator name; zero matrices may be omitted
    pub arrow_matrices: BTreeMap<String, Vec<Vec<Coeff>>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Direct,
    Inverse,
}

/// A walk word, letters in textual order: the rightmost letter is the
/// first step of the walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StringWord {
    pub name: String,
    pub algebra: String,
    pub letters: Vec<(usize, Direction)>,
}

impl StringWord {
    /// Source/target vertex of letter `k` as a formal morphism.
    pub fn letter_endpoints(&self, q: &Quiver, k: usize) -> (usize, usize) {
        let (a, d) = self.letters[k];
        match d {
            Direction::Direct => (q.source(a), q.target(a)),
            Direction::Inverse => (q.target(a), q.source(a)),
        }
    }
}

/// A parsed file: any number of algebra, module, and string declarations.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Document {
    pub algebras: Vec<QuiverPresentation>,
    pub modules: Vec<ModuleSpec>,
    pub strings: Vec<StringWord>,
}

impl Document {
    pub fn algebra(&self, name: &str) -> Option<&QuiverPresentation> {
        self.algebras.iter().find(|a| a.name == name)
    }
}

// ── parsing ─────────────────────────────────────────────────────────

pub fn parse_document(text: &str) -> Result<Document, ParseError> {
    let mut lx = Lexer::new(text)?;
    let mut doc = Document::default();
    loop {
        if matches!(lx.peek(), Tok::Eof) {
            break;
        }
        if lx.at_kw("algebra") {
            let p = parse_algebra_decl(&mut lx)?;
            if doc.algebra(&p.name).is_some() {
                return Err(ParseError::DuplicateName { name: p.name });
            }
            doc.algebras.push(p);
        } else if lx.at_kw("module") {
            let (m_raw, over) = parse_module_decl(&mut lx)?;
            let spec = match &over {
                OverClause::Algebra(name) => {
                    let Some(p) = doc.algebra(name) else {
                        let (line, col) = lx.loc();
                        return Err(ParseError::UndeclaredName { name: name.clone(), line, col });
                    };
                    validate_module_spec(m_raw, p)?
                }
                OverClause::Env(a, b) => {
                    let (Some(pa), Some(pb)) = (doc.algebra(a), doc.algebra(b)) else {
                        let (line, col) = lx.loc();
                        return Err(ParseError::UndeclaredName { name: format!("env({a},{b})"), line, col });
                    };
                    let grid = env_grid_presentation(pa, pb);
                    validate_module_spec(m_raw, &grid)?
                }
            };
            doc.modules.push(spec);
        } else if lx.at_kw("string") {
            let s_raw = parse_string_decl(&mut lx)?;
            let Some(p) = doc.algebra(&s_raw.algebra) else {
                let (line, col) = lx.loc();
                return Err(ParseError::UndeclaredName { name: s_raw.algebra, line, col });
            };
            let validated = validate_string_word(s_raw, p)?;
            doc.strings.push(validated);
        } else {
            return Err(lx.err("`algebra`, `module`, or `string`"));
        }
    }
    Ok(doc)
}

/// Parses a single `algebra` declaration and validates its invariants.
pub fn parse_presentation(text: &str) -> Result<QuiverPresentation, ParseError> {
    let doc = parse_document(text)?;
    doc.algebras.into_iter().next().ok_or(ParseError::Syntax {
        line: 1,
        col: 1,
        expected: "algebra declaration".into(),
        found: "none".into(),
    })
}

/// Parses a single `module` declaration against an already-validated
/// presentation.
pub fn parse_module_def(text: &str, p: &QuiverPresentation) -> Result<ModuleSpec, ParseError> {
    let mut lx = Lexer::new(text)?;
    let (raw, over) = parse_module_decl(&mut lx)?;
    match &over {
        OverClause::Algebra(name) if *name == p.name => validate_module_spec(raw, p),
        OverClause::Algebra(name) => Err(ParseError::UndeclaredName {
            name: name.clone(),
            line: 1,
            col: 1,
        }),
        OverClause::Env(..) => Err(ParseError::Syntax {
            line: 1,
            col: 1,
            expected: format!("module over `{}`", p.name),
            found: "module over env(..)".into(),
        }),
    }
}

/// Parses a single `string` declaration against a presentation.
pub fn parse_string_word(text: &str, p: &QuiverPresentation) -> Result<StringWord, ParseError> {
    let mut lx = Lexer::new(text)?;
    let raw = parse_string_decl(&mut lx)?;
    if raw.algebra != p.name {
        return Err(ParseError::UndeclaredName { name: raw.algebra, line: 1, col: 1 });
    }
    validate_string_word(raw, p)
}

fn parse_algebra_decl(lx: &mut Lexer) -> Result<QuiverPresentation, ParseError> {
    lx.expect_kw("algebra")?;
    let name = lx.ident()?;
    lx.expect_punct("{")?;
    lx.expect_kw("field")?;
    let field_spec = {
        let (line, col) = lx.loc();
        let id = lx.ident()?;
        if id == "Q" {
            FieldSpec::Rationals
        } else if let Some(ptext) = id.strip_prefix('F') {
            let p: u64 = ptext.parse().map_err(|_| ParseError::Syntax {
                line,
                col,
                expected: "Q or F<p>".into(),
                found: id.clone(),
            })?;
            if !crate::field::is_prime(p) {
                return Err(ParseError::NotPrime { p });
            }
            FieldSpec::Prime(p)
        } else {
            return Err(ParseError::Syntax { line, col, expected: "Q or F<p>".into(), found: id });
        }
    };
    lx.expect_punct(";")?;

    lx.expect_kw("vertices")?;
    let mut vertices = Vec::new();
    loop {
        let v = lx.name()?;
        if vertices.contains(&v) {
            return Err(ParseError::DuplicateName { name: v });
        }
        vertices.push(v);
        if matches!(lx.peek(), Tok::Punct(",")) {
            lx.next();
        } else {
            break;
        }
    }
    lx.expect_punct(";")?;

    let mut arrows: Vec<ArrowDecl> = Vec::new();
    if lx.at_kw("arrows") {
        lx.next();
        parse_arrow_list(lx, &vertices, &mut arrows)?;
        lx.expect_punct(";")?;
    }
    let mut relations = Vec::new();
    if lx.at_kw("relations") {
        lx.next();
        loop {
            relations.push(parse_relation(lx, &vertices, &arrows, field_spec)?);
            if matches!(lx.peek(), Tok::Punct(";")) {
                lx.next();
            } else {
                break;
            }
            if lx.at_kw("lenbound") || matches!(lx.peek(), Tok::Punct("}")) {
                break;
            }
        }
    }

    let mut length_bound = None;
    if lx.at_kw("lenbound") {
        lx.next();
        let b = lx.integer()?;
        length_bound = Some(b.to_string().parse::<usize>().unwrap_or(usize::MAX));
        lx.expect_punct(";")?;
    }
    lx.expect_punct("}")?;

    let p = QuiverPresentation { name, field_spec, vertices, arrows, relations, length_bound };
    validate_presentation(&p)?;
    Ok(p)
}

fn parse_arrow_list(
    lx: &mut Lexer,
    vertices: &[String],
    arrows: &mut Vec<ArrowDecl>,
) -> Result<(), ParseError> {
    loop {
        let aname = lx.ident()?;
        if arrows.iter().any(|a| a.name == aname) || vertices.contains(&aname) {
            return Err(ParseError::DuplicateName { name: aname });
        }
        lx.expect_punct(":")?;
        let (sl, sc) = lx.loc();
        let sname = lx.name()?;
        lx.expect_punct("->")?;
        let (tl, tc) = lx.loc();
        let tname = lx.name()?;
        let source = vertices.iter().position(|v| *v == sname).ok_or(ParseError::UndeclaredName {
            name: sname,
            line: sl,
            col: sc,
        })?;
        let target = vertices.iter().position(|v| *v == tname).ok_or(ParseError::UndeclaredName {
            name: tname,
            line: tl,
            col: tc,
        })?;
        arrows.push(ArrowDecl { name: aname, source, target });
        if matches!(lx.peek(), Tok::Punct(",")) {
            lx.next();
        } else {
            break;
        }
    }
    Ok(())
}

fn parse_relation(
    lx: &mut Lexer,
    _vertices: &[String],
    arrows: &[ArrowDecl],
    field: FieldSpec,
) -> Result<Vec<RelationTerm>, ParseError> {
    let mut terms = Vec::new();
    let mut sign = 1i64;
    if matches!(lx.peek(), Tok::Punct("-")) {
        lx.next();
        sign = -1;
    }
    loop {
        let term = parse_term(lx, arrows, field, sign)?;
        terms.push(term);
        match lx.peek() {
            Tok::Punct("+") => {
                lx.next();
                sign = 1;
            }
            Tok::Punct("-") => {
                lx.next();
                sign = -1;
            }
            _ => break,
        }
    }
    Ok(terms)
}

fn parse_term(
    lx: &mut Lexer,
    arrows: &[ArrowDecl],
    field: FieldSpec,
    sign: i64,
) -> Result<RelationTerm, ParseError> {
    // optional coefficient: NUMBER [ "/" NUMBER ] "*"
    let mut coeff = field.from_i64(sign);
    if let Tok::Number(_) = lx.peek() {
        let n = lx.integer()?;
        let mut d = BigInt::from(1);
        if matches!(lx.peek(), Tok::Punct("/")) {
            lx.next();
            d = lx.integer()?;
        }
        coeff = field.mul(&coeff, &field.fraction(&n, &d));
        lx.expect_punct("*")?;
    }
    // path: ID ("*" ID)*, textual order; application order is reversed
    let mut textual = Vec::new();
    loop {
        let (line, col) = lx.loc();
        let id = lx.ident()?;
        let a = arrows
            .iter()
            .position(|x| x.name == id)
            .ok_or(ParseError::UndeclaredName { name: id, line, col })?;
        textual.push(a);
        if matches!(lx.peek(), Tok::Punct("*")) {
            lx.next();
        } else {
            break;
        }
    }
    let seq: Vec<usize> = textual.into_iter().rev().collect();
    let src = arrows[seq[0]].source;
    Ok(RelationTerm { coeff, path: Path { src, seq } })
}

fn validate_presentation(p: &QuiverPresentation) -> Result<(), ParseError> {
    let q = p.quiver();
    for rel in &p.relations {
        let mut endpoints: Option<(usize, usize)> = None;
        for term in rel {
            if term.path.len() < 2 {
                return Err(ParseError::NonAdmissibleRelation {
                    detail: format!(
                        "path of length {} (relations need length >= 2)",
                        term.path.len()
                    ),
                });
            }
            if !term.path.is_composable(&q) {
                return Err(ParseError::NonComposablePath {
                    detail: render_path(p, &term.path),
                });
            }
            let ends = (term.path.src, term.path.target(&q));
            match endpoints {
                None => endpoints = Some(ends),
                Some(e) if e != ends => {
                    return Err(ParseError::NonComposablePath {
                        detail: format!(
                            "terms of one relation have different endpoints: {} vs {}",
                            render_path(p, &term.path),
                            "earlier term"
                        ),
                    })
                }
                _ => {}
            }
        }
    }
    Ok(())
}

fn render_path(p: &QuiverPresentation, path: &Path) -> String {
    if path.seq.is_empty() {
        return format!("e_{}", p.vertices[path.src]);
    }
    let names: Vec<&str> = path.seq.iter().rev().map(|&a| p.arrows[a].name.as_str()).collect();
    names.join("*")
}

fn parse_module_decl(lx: &mut Lexer) -> Result<(ModuleSpec, OverClause), ParseError> {
    lx.expect_kw("module")?;
    let name = lx.ident()?;
    lx.expect_kw("over")?;
    let over = parse_over(lx)?;
    lx.expect_punct("{")?;
    lx.expect_kw("dims")?;
    lx.expect_punct("{")?;
    let mut dims = BTreeMap::new();
    if !matches!(lx.peek(), Tok::Punct("}")) {
        loop {
            let v = lx.name()?;
            lx.expect_punct(":")?;
            let d = lx.integer()?;
            dims.insert(v, d.to_string().parse::<usize>().unwrap_or(0));
            if matches!(lx.peek(), Tok::Punct(",")) {
                lx.next();
            } else {
                break;
            }
        }
    }
    lx.expect_punct("}")?;
    lx.expect_punct(";")?;
    let mut arrow_matrices = BTreeMap::new();
    while lx.at_kw("arrow") {
        lx.next();
        let a = lx.ident()?;
        lx.expect_punct("=")?;
        let m = parse_matrix(lx)?;
        lx.expect_punct(";")?;
        if arrow_matrices.insert(a.clone(), m).is_some() {
            return Err(ParseError::DuplicateName { name: a });
        }
    }
    lx.expect_punct("}")?;
    Ok((ModuleSpec { name, over: over.clone(), dims, arrow_matrices }, over))
}

fn parse_over(lx: &mut Lexer) -> Result<OverClause, ParseError> {
    let id = lx.ident()?;
    if id == "env" && matches!(lx.peek(), Tok::Punct("(")) {
        lx.next();
        let a = lx.ident()?;
        lx.expect_punct(",")?;
        let b = lx.ident()?;
        lx.expect_punct(")")?;
        Ok(OverClause::Env(a, b))
    } else {
        Ok(OverClause::Algebra(id))
    }
}

fn parse_matrix(lx: &mut Lexer) -> Result<Vec<Vec<Coeff>>, ParseError> {
    lx.expect_punct("[")?;
    let mut rows = Vec::new();
    if !matches!(lx.peek(), Tok::Punct("]")) {
        loop {
            rows.push(parse_row(lx)?);
            if matches!(lx.peek(), Tok::Punct(",")) {
                lx.next();
            } else {
                break;
            }
        }
    }
    lx.expect_punct("]")?;
    Ok(rows)
}

fn parse_row(lx: &mut Lexer) -> Result<Vec<Coeff>, ParseError> {
    lx.expect_punct("[")?;
    let mut row = Vec::new();
    if !matches!(lx.peek(), Tok::Punct("]")) {
        loop {
            row.push(parse_rat(lx)?);
            if matches!(lx.peek(), Tok::Punct(",")) {
                lx.next();
            } else {
                break;
            }
        }
    }
    lx.expect_punct("]")?;
    Ok(row)
}

fn parse_rat(lx: &mut Lexer) -> Result<Coeff, ParseError> {
    // entries are exact rationals; fields are resolved at realization,
    // so parse over Q here and convert later if needed
    let mut sign = BigInt::from(1);
    if matches!(lx.peek(), Tok::Punct("-")) {
        lx.next();
        sign = BigInt::from(-1);
    }
    let n = lx.integer()?;
    let mut d = BigInt::from(1);
    if matches!(lx.peek(), Tok::Punct("/")) {
        lx.next();
        d = lx.integer()?;
    }
    Ok(FieldSpec::Rationals.fraction(&(sign * n), &d))
}

/// Re-expresses a parsed rational in the target field.
pub fn coeff_in_field(c: &Coeff, field: FieldSpec) -> Coeff {
    match (c, field) {
        (Coeff::Rat(_), FieldSpec::Rationals) => c.clone(),
        (Coeff::Rat(x), FieldSpec::Prime(_)) => field.fraction(x.numer(), x.denom()),
        (Coeff::Mod(_), FieldSpec::Prime(_)) => c.clone(),
        (Coeff::Mod(_), FieldSpec::Rationals) => panic!("cannot widen F_p value to Q"),
    }
}

fn validate_module_spec(raw: ModuleSpec, p: &QuiverPresentation) -> Result<ModuleSpec, ParseError> {
    let mut spec = raw;
    for v in spec.dims.keys() {
        if p.vertex_index(v).is_none() {
            return Err(ParseError::UndeclaredName { name: v.clone(), line: 0, col: 0 });
        }
    }
    let dim_of = |v: usize| *spec.dims.get(&p.vertices[v]).unwrap_or(&0);
    for (aname, m) in &spec.arrow_matrices {
        let Some(ai) = p.arrow_index(aname) else {
            return Err(ParseError::UnknownArrow { name: aname.clone() });
        };
        let a = &p.arrows[ai];
        let want_rows = dim_of(a.target);
        let want_cols = dim_of(a.source);
        let given_rows = m.len();
        let given_cols = m.first().map_or(0, |r| r.len());
        if m.iter().any(|r| r.len() != given_cols) {
            return Err(ParseError::ShapeMismatch {
                arrow: aname.clone(),
                want_rows,
                want_cols,
                given_rows,
                given_cols,
            });
        }
        let shape_ok = (given_rows == want_rows && given_cols == want_cols)
            || (want_rows == 0 && given_rows == 0)
            || (want_cols == 0 && given_rows == want_rows && given_cols == 0)
            || (want_cols == 0 && given_rows == 0);
        if !shape_ok {
            return Err(ParseError::ShapeMismatch {
                arrow: aname.clone(),
                want_rows,
                want_cols,
                given_rows,
                given_cols,
            });
        }
    }
    // omitted arrows get zero matrices of the required shape
    for a in &p.arrows {
        spec.arrow_matrices.entry(a.name.clone()).or_insert_with(|| {
            let r = dim_of(a.target);
            let c = dim_of(a.source);
            vec![vec![FieldSpec::Rationals.from_i64(0); c]; r]
        });
    }
    Ok(spec)
}

fn parse_string_decl(lx: &mut Lexer) -> Result<StringWordRaw, ParseError> {
    lx.expect_kw("string")?;
    let name = lx.ident()?;
    lx.expect_kw("over")?;
    let algebra = lx.ident()?;
    lx.expect_punct("=")?;
    let mut letters = Vec::new();
    loop {
        let (line, col) = lx.loc();
        let id = lx.ident()?;
        let dir = if matches!(lx.peek(), Tok::Punct("^-1")) {
            lx.next();
            Direction::Inverse
        } else {
            Direction::Direct
        };
        letters.push((id, dir, line, col));
        if matches!(lx.peek(), Tok::Punct("*")) {
            lx.next();
        } else {
            break;
        }
    }
    lx.expect_punct(";")?;
    Ok(StringWordRaw { name, algebra, letters })
}

struct StringWordRaw {
    name: String,
    algebra: String,
    letters: Vec<(String, Direction, usize, usize)>,
}

fn validate_string_word(raw: StringWordRaw, p: &QuiverPresentation) -> Result<StringWord, ParseError> {
    let q = p.quiver();
    let mut letters = Vec::new();
    for (id, dir, line, col) in raw.letters {
        let a = p
            .arrow_index(&id)
            .ok_or(ParseError::UndeclaredName { name: id, line, col })?;
        letters.push((a, dir));
    }
    let w = StringWord { name: raw.name, algebra: raw.algebra, letters };
    for k in 0..w.letters.len().saturating_sub(1) {
        let (a, d) = w.letters[k];
        let (b, e) = w.letters[k + 1];
        if a == b && d != e {
            return Err(ParseError::ImmediateInverse { index: k });
        }
        let (s_k, _) = w.letter_endpoints(&q, k);
        let (_, t_next) = w.letter_endpoints(&q, k + 1);
        if s_k != t_next {
            return Err(ParseError::NonComposableWalk { index: k });
        }
    }
    Ok(w)
}

/// The pseudo-presentation of an enveloping grid: vertices `i_j`, plus
/// left generators `a_L_j` and right generators `b_R_i`. Matrix shapes
/// for bimodule definitions are checked against it.
pub fn env_grid_presentation(
    pa: &QuiverPresentation,
    pb: &QuiverPresentation,
) -> QuiverPresentation {
    let mut vertices = Vec::new();
    for i in &pa.vertices {
        for j in &pb.vertices {
            vertices.push(format!("{i}_{j}"));
        }
    }
    let nb = pb.vertices.len();
    let mut arrows = Vec::new();
    for a in &pa.arrows {
        for (j, jn) in pb.vertices.iter().enumerate() {
            arrows.push(ArrowDecl {
                name: format!("{}_L_{jn}", a.name),
                source: a.source * nb + j,
                target: a.target * nb + j,
            });
        }
    }
    for (i, iname) in pa.vertices.iter().enumerate() {
        for b in &pb.arrows {
            // right action of b moves the second coordinate from t(b) to s(b)
            arrows.push(ArrowDecl {
                name: format!("{}_R_{iname}", b.name),
                source: i * nb + b.target,
                target: i * nb + b.source,
            });
        }
    }
    QuiverPresentation {
        name: format!("env({},{})", pa.name, pb.name),
        field_spec: pa.field_spec,
        vertices,
        arrows,
        relations: Vec::new(),
        length_bound: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub const LOOP_SQ: &str = "algebra A { field Q ; vertices v ; arrows x : v -> v ; relations x*x ; }";

    #[test]
    fn smallest_local_algebra_parses() {
        let p = parse_presentation(LOOP_SQ).unwrap();
        assert_eq!(p.vertices, vec!["v"]);
        assert_eq!(p.arrows.len(), 1);
        assert_eq!(p.relations.len(), 1);
    }

    #[test]
    fn undeclared_target_vertex() {
        let t = "algebra A { field Q ; vertices v ; arrows x : v -> w ; }";
        let e = parse_presentation(t).unwrap_err();
        assert!(matches!(e, ParseError::UndeclaredName { .. }), "{e:?}");
    }

    #[test]
    fn length_one_relation_rejected() {
        let t = "algebra A { field Q ; vertices v ; arrows x : v -> v ; relations x ; }";
        let e = parse_presentation(t).unwrap_err();
        assert!(matches!(e, ParseError::NonAdmissibleRelation { .. }), "{e:?}");
    }

    #[test]
    fn non_composable_relation_path() {
        let t = "algebra A { field Q ; vertices u, w ; arrows a : u -> w, b : u -> w ; relations a*b ; }";
        let e = parse_presentation(t).unwrap_err();
        assert!(matches!(e, ParseError::NonComposablePath { .. }), "{e:?}");
    }

    #[test]
    fn roundtrip_serialization() {
        let t = "algebra A { field Q ; vertices 0, 1 ; arrows a : 0 -> 1, x : 0 -> 0 ; relations x*x ; lenbound 12 ; }";
        let p = parse_presentation(t).unwrap();
        let s = p.serialize();
        let p2 = parse_presentation(&s).unwrap();
        assert_eq!(p, p2);
        assert_eq!(s, p2.serialize());
    }

    #[test]
    fn module_shape_mismatch() {
        let doc = "algebra A { field Q ; vertices 0, 1 ; arrows b : 0 -> 1 ; }\nmodule M over A { dims { 0 : 1, 1 : 1 } ; arrow b = [[1], [0]] ; }";
        let e = parse_document(doc).unwrap_err();
        assert!(matches!(e, ParseError::ShapeMismatch { .. }), "{e:?}");
    }

    #[test]
    fn module_regular_of_dual_numbers() {
        let doc = format!("{LOOP_SQ}\nmodule R over A {{ dims {{ v : 2 }} ; arrow x = [[0, 0], [1, 0]] ; }}");
        let d = parse_document(&doc).unwrap();
        assert_eq!(d.modules.len(), 1);
        // x^2 acts as zero: checked at realization, shape checked here
        assert_eq!(d.modules[0].arrow_matrices["x"].len(), 2);
    }

    #[test]
    fn string_words() {
        let base = "algebra Z { field Q ; vertices 0, 1, 2 ; arrows g0 : 0 -> 2, g1 : 1 -> 0, g2 : 2 -> 1 ; relations g0*g1*g2*g0*g1*g2 ; }";
        let ok = format!("{base}\nstring W over Z = g2 * g0 ;");
        let d = parse_document(&ok).unwrap();
        assert_eq!(d.strings[0].letters.len(), 2);

        let bad = format!("{base}\nstring W over Z = g0 * g0 ;");
        let e = parse_document(&bad).unwrap_err();
        assert!(matches!(e, ParseError::NonComposableWalk { .. }), "{e:?}");

        let inv = format!("{base}\nstring W over Z = g0 * g0^-1 ;");
        let e = parse_document(&inv).unwrap_err();
        assert!(matches!(e, ParseError::ImmediateInverse { .. }), "{e:?}");
    }

    #[test]
    fn deterministic_diagnostics() {
        let bad = "algebra A { field Q ; vertices v ; arrows x : v -> w ; }";
        let e1 = format!("{:?}", parse_presentation(bad).unwrap_err());
        let e2 = format!("{:?}", parse_presentation(bad).unwrap_err());
        assert_eq!(e1, e2);
    }
}
