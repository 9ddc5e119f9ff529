//! Description files.
//!
//! ```text
//! # comment
//! openbook L3 { page genus=0 boundary=2; labels = 1 2; monodromy = "T(core)^3"; }
//! symbolic S4 { dim=4; page chi=1 "D^3"; binding chi_page=1 "S^2"; manifold "S^4"; }
//! sum L3.1 L3.2;
//! verify contact n=2 grid=10000;
//! ```

use std::collections::HashSet;
use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use obcalc_core::surface::CurveName;
use thiserror::Error;

/// Source position, 1-based. Positions never take part in equality.
#[derive(Clone, Copy, Debug, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl PartialEq for Pos {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
#[error("line {}, column {}: {msg}", pos.line, pos.col)]
pub struct ParseError {
    pub pos: Pos,
    pub msg: String,
}

fn err<T>(pos: Pos, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { pos, msg: msg.into() })
}

#[derive(Clone, Debug, PartialEq)]
pub struct BookDecl {
    pub name: String,
    pub genus: usize,
    pub labels: Vec<String>,
    pub word: Vec<(CurveName, i64)>,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymbolicDecl {
    pub name: String,
    pub dim: usize,
    pub page_chi: i64,
    pub page: String,
    pub binding_chi: i64,
    pub binding: String,
    pub manifold: Option<String>,
    pub monodromy: Option<String>,
    pub pos: Pos,
}

/// `name.label`; the label is absent for a bare name.
#[derive(Clone, Debug, PartialEq)]
pub struct Ref {
    pub name: String,
    pub label: Option<String>,
    pub pos: Pos,
}

impl fmt::Display for Ref {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.label {
            Some(l) => write!(f, "{}.{l}", self.name),
            None => write!(f, "{}", self.name),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyKind {
    Contact,
    Framing,
    F1,
}

impl VerifyKind {
    pub fn keyword(self) -> &'static str {
        match self {
            VerifyKind::Contact => "contact",
            VerifyKind::Framing => "framing",
            VerifyKind::F1 => "f1",
        }
    }
}

pub const VERIFY_KEYS: [&str; 8] = ["eps1", "eps2", "eps3", "c", "rmax", "n", "grid", "tol"];

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyDecl {
    pub kind: VerifyKind,
    pub params: Vec<(String, f64)>,
    pub pos: Pos,
}

impl VerifyDecl {
    pub fn get(&self, key: &str) -> Option<f64> {
        self.params.iter().rev().find(|(k, _)| k == key).map(|(_, v)| *v)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Item {
    Book(BookDecl),
    Symbolic(SymbolicDecl),
    Sum(Ref, Ref),
    Verify(VerifyDecl),
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Doc {
    pub items: Vec<Item>,
}

impl Doc {
    pub fn books(&self) -> impl Iterator<Item = &BookDecl> {
        self.items.iter().filter_map(|i| match i {
            Item::Book(b) => Some(b),
            _ => None,
        })
    }

    pub fn symbolic(&self) -> impl Iterator<Item = &SymbolicDecl> {
        self.items.iter().filter_map(|i| match i {
            Item::Symbolic(b) => Some(b),
            _ => None,
        })
    }

    pub fn sums(&self) -> impl Iterator<Item = (&Ref, &Ref)> {
        self.items.iter().filter_map(|i| match i {
            Item::Sum(a, b) => Some((a, b)),
            _ => None,
        })
    }

    pub fn verifies(&self) -> impl Iterator<Item = &VerifyDecl> {
        self.items.iter().filter_map(|i| match i {
            Item::Verify(v) => Some(v),
            _ => None,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Word(String),
    Str(String),
    Punct(char),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Word(w) => write!(f, "`{w}`"),
            Tok::Str(s) => write!(f, "\"{s}\""),
            Tok::Punct(c) => write!(f, "`{c}`"),
        }
    }
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '.' | '-' | '+')
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut j = 0;
        while j < chars.len() {
            let c = chars[j];
            let pos = Pos { line: i + 1, col: j + 1 };
            if c.is_whitespace() {
                j += 1;
            } else if c == '#' {
                break;
            } else if matches!(c, '{' | '}' | ';' | '=') {
                out.push((Tok::Punct(c), pos));
                j += 1;
            } else if c == '"' {
                let start = j + 1;
                j = start;
                while j < chars.len() && chars[j] != '"' {
                    j += 1;
                }
                if j == chars.len() {
                    return err(pos, "unterminated string");
                }
                out.push((Tok::Str(chars[start..j].iter().collect()), pos));
                j += 1;
            } else if is_word_char(c) {
                let start = j;
                while j < chars.len() && is_word_char(chars[j]) {
                    j += 1;
                }
                out.push((Tok::Word(chars[start..j].iter().collect()), pos));
            } else {
                return err(pos, format!("unexpected character `{c}`"));
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    end: Pos,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.0)
    }

    fn next(&mut self, what: &str) -> Result<(Tok, Pos), ParseError> {
        match self.toks.get(self.at) {
            Some(t) => {
                self.at += 1;
                Ok(t.clone())
            }
            None => err(self.end, format!("expected {what}, found end of input")),
        }
    }

    fn word(&mut self, what: &str) -> Result<(String, Pos), ParseError> {
        match self.next(what)? {
            (Tok::Word(w), p) => Ok((w, p)),
            (t, p) => err(p, format!("expected {what}, found {t}")),
        }
    }

    fn string(&mut self, what: &str) -> Result<(String, Pos), ParseError> {
        match self.next(what)? {
            (Tok::Str(s), p) => Ok((s, p)),
            (t, p) => err(p, format!("expected {what}, found {t}")),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<Pos, ParseError> {
        let (w, p) = self.word(&format!("`{kw}`"))?;
        if w != kw {
            return err(p, format!("expected `{kw}`, found `{w}`"));
        }
        Ok(p)
    }

    fn punct(&mut self, c: char) -> Result<Pos, ParseError> {
        match self.next(&format!("`{c}`"))? {
            (Tok::Punct(d), p) if d == c => Ok(p),
            (t, p) => err(p, format!("expected `{c}`, found {t}")),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Punct(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn int<T: std::str::FromStr>(&mut self, what: &str) -> Result<T, ParseError> {
        let (w, p) = self.word(what)?;
        w.parse().or_else(|_| err(p, format!("expected {what}, found `{w}`")))
    }

    fn key_int<T: std::str::FromStr>(&mut self, key: &str) -> Result<T, ParseError> {
        self.keyword(key)?;
        self.punct('=')?;
        self.int(&format!("integer for `{key}`"))
    }

    fn name(&mut self) -> Result<(String, Pos), ParseError> {
        let (w, p) = self.word("a name")?;
        if w.contains('.') || !w.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_') {
            return err(p, format!("invalid name `{w}`"));
        }
        Ok((w, p))
    }

    fn book(&mut self, pos: Pos) -> Result<BookDecl, ParseError> {
        let (name, _) = self.name()?;
        self.punct('{')?;
        let mut page: Option<(usize, usize, Pos)> = None;
        let mut labels: Option<(Vec<String>, Pos)> = None;
        let mut word: Option<Vec<(CurveName, i64)>> = None;
        while !self.eat('}') {
            let (kw, p) = self.word("`page`, `labels`, `monodromy` or `}`")?;
            match kw.as_str() {
                "page" => {
                    let g = self.key_int("genus")?;
                    let b = self.key_int("boundary")?;
                    page = Some((g, b, p));
                }
                "labels" => {
                    self.punct('=')?;
                    let mut ls = Vec::new();
                    while self.peek() != Some(&Tok::Punct(';')) {
                        let (l, lp) = self.word("a boundary label")?;
                        if ls.contains(&l) {
                            return err(lp, format!("duplicate boundary label `{l}`"));
                        }
                        ls.push(l);
                    }
                    labels = Some((ls, p));
                }
                "monodromy" => {
                    self.punct('=')?;
                    let (s, sp) = self.string("a quoted twist word")?;
                    word = Some(parse_word(&s, Pos { line: sp.line, col: sp.col + 1 })?);
                }
                _ => return err(p, format!("unexpected `{kw}` in open book")),
            }
            self.punct(';')?;
        }
        let Some((genus, boundary, pp)) = page else {
            return err(pos, format!("open book `{name}` has no page"));
        };
        if boundary == 0 {
            return err(pp, "a page needs at least one boundary circle");
        }
        let labels = match labels {
            Some((ls, lp)) => {
                if ls.len() != boundary {
                    return err(lp, format!("{} labels for {boundary} boundary circles", ls.len()));
                }
                ls
            }
            None => (1..=boundary).map(|i| i.to_string()).collect(),
        };
        Ok(BookDecl { name, genus, labels, word: word.unwrap_or_default(), pos })
    }

    fn symbolic(&mut self, pos: Pos) -> Result<SymbolicDecl, ParseError> {
        let (name, _) = self.name()?;
        self.punct('{')?;
        let mut dim = None;
        let mut page = None;
        let mut binding = None;
        let mut manifold = None;
        let mut monodromy = None;
        while !self.eat('}') {
            let (kw, p) = self.word("`dim`, `page`, `binding`, `manifold`, `monodromy` or `}`")?;
            match kw.as_str() {
                "dim" => {
                    self.punct('=')?;
                    dim = Some(self.int::<usize>("a dimension")?);
                }
                "page" => {
                    let chi = self.key_int::<i64>("chi")?;
                    page = Some((chi, self.string("a page descriptor")?.0));
                }
                "binding" => {
                    let chi = self.key_int::<i64>("chi_page")?;
                    binding = Some((chi, self.string("a binding descriptor")?.0));
                }
                "manifold" => {
                    self.eat('=');
                    manifold = Some(self.string("a manifold descriptor")?.0);
                }
                "monodromy" => {
                    self.eat('=');
                    monodromy = Some(self.string("a monodromy descriptor")?.0);
                }
                _ => return err(p, format!("unexpected `{kw}` in symbolic open book")),
            }
            self.punct(';')?;
        }
        let missing = |what: &str| ParseError { pos, msg: format!("symbolic book `{name}` has no {what}") };
        let dim = dim.ok_or_else(|| missing("dim"))?;
        if dim < 3 {
            return err(pos, format!("dimension {dim} is below 3"));
        }
        let (page_chi, page) = page.ok_or_else(|| missing("page"))?;
        let (binding_chi, binding) = binding.ok_or_else(|| missing("binding"))?;
        Ok(SymbolicDecl { name, dim, page_chi, page, binding_chi, binding, manifold, monodromy, pos })
    }

    fn reference(&mut self) -> Result<Ref, ParseError> {
        let (w, pos) = self.word("`name.label`")?;
        let (name, label) = match w.split_once('.') {
            Some((n, l)) if !l.is_empty() => (n.to_string(), Some(l.to_string())),
            Some(_) => return err(pos, format!("empty label in `{w}`")),
            None => (w, None),
        };
        Ok(Ref { name, label, pos })
    }

    fn verify(&mut self, pos: Pos) -> Result<VerifyDecl, ParseError> {
        let (k, kp) = self.word("`contact`, `framing` or `f1`")?;
        let kind = match k.as_str() {
            "contact" => VerifyKind::Contact,
            "framing" => VerifyKind::Framing,
            "f1" => VerifyKind::F1,
            _ => return err(kp, format!("unknown check `{k}`")),
        };
        let mut params = Vec::new();
        while !self.eat(';') {
            let (key, p) = self.word("`key=value` or `;`")?;
            if !VERIFY_KEYS.contains(&key.as_str()) {
                return err(p, format!("unknown parameter `{key}`"));
            }
            self.punct('=')?;
            let (v, vp) = self.word("a number")?;
            let v: f64 = v.parse().or_else(|_| err(vp, format!("expected a number, found `{v}`")))?;
            params.push((key, v));
        }
        Ok(VerifyDecl { kind, params, pos })
    }
}

/// Parses a twist word such as `T(a1)^2 T(d(1))^-1`. `pos` locates the first
/// character of the word in the source.
pub fn parse_word(s: &str, pos: Pos) -> Result<Vec<(CurveName, i64)>, ParseError> {
    let chars: Vec<char> = s.chars().collect();
    let at = |j: usize| Pos { line: pos.line, col: pos.col + j };
    let mut out = Vec::new();
    let mut j = 0;
    let skip_ws = |j: &mut usize| {
        while *j < chars.len() && chars[*j].is_whitespace() {
            *j += 1;
        }
    };
    loop {
        skip_ws(&mut j);
        if j == chars.len() {
            return Ok(out);
        }
        if chars[j] != 'T' || chars.get(j + 1) != Some(&'(') {
            return err(at(j), "expected `T(`");
        }
        j += 2;
        let start = j;
        let mut depth = 1;
        while j < chars.len() {
            match chars[j] {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        break;
                    }
                }
                _ => {}
            }
            j += 1;
        }
        if j == chars.len() {
            return err(at(start - 2), "unclosed `T(`");
        }
        let inner: String = chars[start..j].iter().collect();
        let curve = parse_curve(inner.trim()).map_err(|m| ParseError { pos: at(start), msg: m })?;
        j += 1;
        let power = if chars.get(j) == Some(&'^') {
            j += 1;
            let es = j;
            if j < chars.len() && matches!(chars[j], '+' | '-') {
                j += 1;
            }
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let e: String = chars[es..j].iter().collect();
            e.parse::<i64>().or_else(|_| err(at(es), "expected an integer exponent after `^`"))?
        } else {
            1
        };
        if j < chars.len() && !chars[j].is_whitespace() {
            return err(at(j), format!("unexpected `{}` after twist", chars[j]));
        }
        out.push((curve, power));
    }
}

/// Parses `a<i>`, `b<i>`, `d(<label>)`, `glue(<label>)`, `core` or
/// `vec[<ints>]`.
pub fn parse_curve(s: &str) -> Result<CurveName, String> {
    let index = |t: &str| t.parse::<usize>().ok().filter(|&i| i > 0);
    if s == "core" {
        return Ok(CurveName::Core);
    }
    if let Some(l) = s.strip_prefix("d(").and_then(|t| t.strip_suffix(')')) {
        return if l.is_empty() { Err("empty label in `d()`".into()) } else { Ok(CurveName::D(l.into())) };
    }
    if let Some(l) = s.strip_prefix("glue(").and_then(|t| t.strip_suffix(')')) {
        return if l.is_empty() { Err("empty label in `glue()`".into()) } else { Ok(CurveName::Glue(l.into())) };
    }
    if let Some(v) = s.strip_prefix("vec[").and_then(|t| t.strip_suffix(']')) {
        let entries: Result<Vec<BigInt>, _> = v.split(',').map(|x| x.trim().parse::<BigInt>()).collect();
        return entries.map(CurveName::Vec).map_err(|_| format!("bad vector `{s}`"));
    }
    if let Some(i) = s.strip_prefix('a').and_then(index) {
        return Ok(CurveName::A(i));
    }
    if let Some(i) = s.strip_prefix('b').and_then(index) {
        return Ok(CurveName::B(i));
    }
    Err(format!("unknown curve `{s}`"))
}

/// Parses a description file. Names must be unique, sum references must
/// name declared books, and 3-dimensional references must carry a label of
/// that book.
pub fn parse(text: &str) -> Result<Doc, ParseError> {
    let toks = lex(text)?;
    let end = Pos { line: text.lines().count().max(1), col: text.lines().last().map_or(1, |l| l.chars().count() + 1) };
    let mut p = Parser { toks, at: 0, end };
    let mut doc = Doc::default();
    let mut names = HashSet::new();
    while p.peek().is_some() {
        let (kw, pos) = p.word("`openbook`, `symbolic`, `sum` or `verify`")?;
        let item = match kw.as_str() {
            "openbook" => Item::Book(p.book(pos)?),
            "symbolic" => Item::Symbolic(p.symbolic(pos)?),
            "sum" => {
                let a = p.reference()?;
                let b = p.reference()?;
                p.punct(';')?;
                Item::Sum(a, b)
            }
            "verify" => Item::Verify(p.verify(pos)?),
            _ => return err(pos, format!("unexpected `{kw}`")),
        };
        if let Item::Book(BookDecl { name, .. }) | Item::Symbolic(SymbolicDecl { name, .. }) = &item {
            if !names.insert(name.clone()) {
                return err(pos, format!("duplicate name `{name}`"));
            }
        }
        doc.items.push(item);
    }
    check_refs(&doc)?;
    Ok(doc)
}

fn check_refs(doc: &Doc) -> Result<(), ParseError> {
    for (a, b) in doc.sums() {
        let mut sym = 0;
        for r in [a, b] {
            if let Some(book) = doc.books().find(|x| x.name == r.name) {
                match &r.label {
                    Some(l) if book.labels.contains(l) => {}
                    Some(l) => return err(r.pos, format!("`{}` has no boundary label `{l}`", r.name)),
                    None => return err(r.pos, format!("`{}` needs a boundary label", r.name)),
                }
            } else if doc.symbolic().any(|x| x.name == r.name) {
                sym += 1;
            } else {
                return err(r.pos, format!("unknown open book `{}`", r.name));
            }
        }
        if sym == 1 {
            return err(a.pos, "cannot sum a symbolic book with a combinatorial one");
        }
    }
    Ok(())
}

fn quote_free(s: &str) -> bool {
    !s.contains('"') && !s.contains('\n')
}

/// Canonical text of a twist word; exponents are always printed.
pub fn print_word(word: &[(CurveName, i64)]) -> String {
    word.iter().map(|(c, k)| format!("T({c})^{k}")).collect::<Vec<_>>().join(" ")
}

impl fmt::Display for BookDecl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "openbook {} {{", self.name)?;
        writeln!(f, "  page genus={} boundary={};", self.genus, self.labels.len())?;
        writeln!(f, "  labels = {};", self.labels.join(" "))?;
        writeln!(f, "  monodromy = \"{}\";", print_word(&self.word))?;
        write!(f, "}}")
    }
}

impl fmt::Display for SymbolicDecl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "symbolic {} {{", self.name)?;
        writeln!(f, "  dim={};", self.dim)?;
        writeln!(f, "  page chi={} \"{}\";", self.page_chi, self.page)?;
        writeln!(f, "  binding chi_page={} \"{}\";", self.binding_chi, self.binding)?;
        if let Some(m) = &self.manifold {
            writeln!(f, "  manifold \"{m}\";")?;
        }
        if let Some(m) = &self.monodromy {
            writeln!(f, "  monodromy \"{m}\";")?;
        }
        write!(f, "}}")
    }
}

/// Canonical printer. Descriptors containing quotes cannot be printed.
pub fn print(doc: &Doc) -> String {
    let mut out = String::new();
    for item in &doc.items {
        match item {
            Item::Book(b) => writeln!(out, "{b}"),
            Item::Symbolic(s) => {
                debug_assert!([&s.page, &s.binding].iter().all(|d| quote_free(d)));
                writeln!(out, "{s}")
            }
            Item::Sum(a, b) => writeln!(out, "sum {a} {b};"),
            Item::Verify(v) => {
                let mut line = format!("verify {}", v.kind.keyword());
                for (k, x) in &v.params {
                    let _ = write!(line, " {k}={x}");
                }
                writeln!(out, "{line};")
            }
        }
        .expect("writing to a String");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disc_book() {
        let doc = parse(r#"openbook S3 { page genus=0 boundary=1; monodromy = ""; }"#).unwrap();
        let b = doc.books().next().unwrap();
        assert_eq!((b.genus, b.labels.clone(), b.word.len()), (0, vec!["1".to_string()], 0));
    }

    #[test]
    fn word_tokens() {
        let w = parse_word("T(a1)^2 T(d(x.1))^-1 T(vec[1,-2]) T(glue(G1))^+3", Pos { line: 1, col: 1 }).unwrap();
        assert_eq!(
            w,
            vec![
                (CurveName::A(1), 2),
                (CurveName::D("x.1".into()), -1),
                (CurveName::Vec(vec![1.into(), (-2).into()]), 1),
                (CurveName::Glue("G1".into()), 3),
            ]
        );
    }

    #[test]
    fn malformed_exponent_is_located() {
        let e = parse("openbook X {\n  page genus=1 boundary=1;\n  monodromy = \"T(a1)^\";\n}").unwrap_err();
        assert_eq!((e.pos.line, e.pos.col), (3, 22));
    }

    #[test]
    fn unresolved_reference() {
        let e = parse("openbook A { page genus=0 boundary=1; }\nsum A.1 B.1;").unwrap_err();
        assert_eq!(e.pos.line, 2);
        assert!(e.msg.contains("unknown open book"));
        let e = parse("openbook A { page genus=0 boundary=1; }\nsum A.1 A.2;").unwrap_err();
        assert!(e.msg.contains("no boundary label"));
    }

    #[test]
    fn duplicate_name() {
        let e = parse("openbook A { page genus=0 boundary=1; }\nopenbook A { page genus=0 boundary=1; }").unwrap_err();
        assert!(e.msg.contains("duplicate name"));
    }
}
