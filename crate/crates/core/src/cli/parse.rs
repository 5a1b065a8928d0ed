//! Session scripts: tokenizer, statement parser and the bound objects.
//!
//! ```text
//! ring R = F32003[x,y] / (y^2 - x^3) domain;
//! ideal I = (x, y) over R;
//! module M = ideal I;
//! module N = coker [[-z,-y,x^2],[y,x,-z]] over S;
//! let f = [[x]] : M -> M;
//! trace M;
//! verify main M;
//! ```

use std::collections::HashMap;
use std::sync::Arc;

use crate::arith::{init_prime, Matrix};
use crate::arith::Polynomial;
use crate::error::{Error, Result};
use crate::fpmod::{direct_sum, dual, tensor, FPModule, ModuleHomomorphism};
use crate::ring::{AmbientRing, Ideal, ORDER};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    Sym(char),
    Arrow,
    Semi,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
    start: usize,
    end: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (start, l0, c0) = (i, line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            Tok::Int(s.parse().map_err(|_| syntax(l0, c0, "integer literal too large"))?)
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            i += 2;
            Tok::Arrow
        } else if c == ';' {
            i += 1;
            Tok::Semi
        } else if "=[](),+-*^/:".contains(c) {
            i += 1;
            Tok::Sym(c)
        } else {
            return Err(syntax(l0, c0, format!("unexpected character '{c}'")));
        };
        col += i - start;
        out.push(Token {
            tok,
            line: l0,
            column: c0,
            start,
            end: i,
        });
    }
    Ok(out)
}

/// A named object of a session.
#[derive(Clone, Debug)]
pub enum Object {
    Ring(Arc<AmbientRing>),
    Ideal(Ideal),
    Module(Arc<FPModule>),
    Hom(ModuleHomomorphism),
}

impl Object {
    fn kind(&self) -> &'static str {
        match self {
            Object::Ring(_) => "ring",
            Object::Ideal(_) => "ideal",
            Object::Module(_) => "module",
            Object::Hom(_) => "homomorphism",
        }
    }
}

/// A command statement, checked against the session when parsed.
#[derive(Clone, Debug)]
pub struct Command {
    pub verb: String,
    pub args: Vec<String>,
    pub line: usize,
}

impl Command {
    pub fn text(&self) -> String {
        let mut words = vec![self.verb.clone()];
        words.extend(self.args.iter().cloned());
        words.join(" ")
    }
}

#[derive(Default)]
pub struct Session {
    objects: HashMap<String, Object>,
    pub commands: Vec<Command>,
}

impl Session {
    pub fn get(&self, name: &str) -> Option<&Object> {
        self.objects.get(name)
    }

    pub fn ring(&self, name: &str) -> Option<&Arc<AmbientRing>> {
        match self.objects.get(name) {
            Some(Object::Ring(r)) => Some(r),
            _ => None,
        }
    }

    pub fn ideal(&self, name: &str) -> Option<&Ideal> {
        match self.objects.get(name) {
            Some(Object::Ideal(i)) => Some(i),
            _ => None,
        }
    }

    pub fn module(&self, name: &str) -> Option<&Arc<FPModule>> {
        match self.objects.get(name) {
            Some(Object::Module(m)) => Some(m),
            _ => None,
        }
    }

    pub fn hom(&self, name: &str) -> Option<&ModuleHomomorphism> {
        match self.objects.get(name) {
            Some(Object::Hom(f)) => Some(f),
            _ => None,
        }
    }
}

/// Argument shape of a command verb.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Arg {
    Ring,
    Ideal,
    Module,
    Count,
    RingOrModule,
    ModuleOrHom,
}

fn signature(verb: &str, args: &[String]) -> Option<Vec<Arg>> {
    use Arg::*;
    Some(match verb {
        "trace" | "dual" | "end" | "center" | "is-reflexive" | "is-rigid" | "is-balanced" | "has-free-summand" => {
            vec![Module]
        }
        "hom" => vec![Module, Module],
        "grade" => vec![Ideal],
        "depth" => vec![RingOrModule],
        "dim" | "gorenstein" => vec![Ring],
        "ext" => vec![Count, Module, Module],
        "resolve" => vec![Module, Count],
        "report" => vec![ModuleOrHom],
        "verify" => match args.first().map(String::as_str) {
            Some("main" | "main2" | "free-summand" | "rigidity") => vec![Count, Module],
            Some("trace-props") => vec![Count, Module, Module],
            Some("hw") => vec![Count, Ideal],
            _ => return None,
        },
        _ => return None,
    })
}

/// Verify tags accepted by `verify`.
pub const VERIFY_TAGS: [&str; 6] = ["main", "main2", "trace-props", "free-summand", "rigidity", "hw"];

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    session: &'a Session,
    // position of the statement terminator, for errors at the end
    end: (usize, usize),
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |t| (t.line, t.column))
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        let (l, c) = self.here();
        Err(syntax(l, c, message))
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!("expected '{c}'"))
        }
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.error("expected a name"),
        }
    }

    fn keyword(&mut self, k: &str) -> Result<()> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == k => {
                self.pos += 1;
                Ok(())
            }
            _ => self.error(format!("expected '{k}'")),
        }
    }

    fn int(&mut self) -> Result<u64> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = *n;
                self.pos += 1;
                Ok(n)
            }
            _ => self.error("expected an integer"),
        }
    }

    fn finish(&self) -> Result<()> {
        if self.pos < self.toks.len() {
            self.error("unexpected trailing input")
        } else {
            Ok(())
        }
    }

    fn lookup<T>(&mut self, kind: &str, get: impl Fn(&Session, &str) -> Option<T>) -> Result<T> {
        let (l, c) = self.here();
        let name = self.ident()?;
        match (get(self.session, &name), self.session.get(&name)) {
            (Some(v), _) => Ok(v),
            (None, Some(o)) => Err(syntax(l, c, format!("'{name}' is a {}, expected a {kind}", o.kind()))),
            (None, None) => Err(syntax(l, c, format!("unknown name '{name}'"))),
        }
    }

    fn ring_ref(&mut self) -> Result<Arc<AmbientRing>> {
        self.lookup("ring", |s, n| s.ring(n).cloned())
    }

    fn module_ref(&mut self) -> Result<Arc<FPModule>> {
        self.lookup("module", |s, n| s.module(n).cloned())
    }

    fn polynomial(&mut self, ring: &AmbientRing) -> Result<Polynomial> {
        let mut acc = self.product(ring)?;
        loop {
            if self.eat_sym('+') {
                acc = acc.add(&self.product(ring)?);
            } else if self.eat_sym('-') {
                acc = acc.sub(&self.product(ring)?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self, ring: &AmbientRing) -> Result<Polynomial> {
        let mut acc = self.unary(ring)?;
        while self.eat_sym('*') {
            acc = acc.mul(&self.unary(ring)?);
        }
        Ok(acc)
    }

    fn unary(&mut self, ring: &AmbientRing) -> Result<Polynomial> {
        if self.eat_sym('-') {
            return Ok(self.unary(ring)?.neg());
        }
        let base = self.atom(ring)?;
        if self.eat_sym('^') {
            let e = self.int()?;
            if e > u16::MAX as u64 {
                return self.error("exponent too large");
            }
            return Ok(base.pow(e as u32));
        }
        Ok(base)
    }

    fn atom(&mut self, ring: &AmbientRing) -> Result<Polynomial> {
        let (l, c) = self.here();
        match self.next() {
            Some(Tok::Int(n)) => Ok(ring.constant((n % crate::arith::prime() as u64) as i64)),
            Some(Tok::Ident(v)) => match ring.var_index(&v) {
                Some(i) => Ok(ring.var(i)),
                None => Err(syntax(l, c, format!("unknown variable '{v}'"))),
            },
            Some(Tok::Sym('(')) => {
                let p = self.polynomial(ring)?;
                self.expect_sym(')')?;
                Ok(p)
            }
            _ => Err(syntax(l, c, "expected a polynomial")),
        }
    }

    fn poly_list(&mut self, ring: &AmbientRing, open: char, close: char) -> Result<Vec<Polynomial>> {
        self.expect_sym(open)?;
        let mut out = Vec::new();
        if self.eat_sym(close) {
            return Ok(out);
        }
        loop {
            out.push(self.polynomial(ring)?);
            if self.eat_sym(close) {
                return Ok(out);
            }
            self.expect_sym(',')?;
        }
    }

    /// `[[a, b], [c, d]]` given as rows, parsed over `ring`.
    fn matrix(&mut self, ring: &AmbientRing) -> Result<Matrix> {
        let (l, c) = self.here();
        self.expect_sym('[')?;
        let mut rows = Vec::new();
        if !self.eat_sym(']') {
            loop {
                rows.push(self.poly_list(ring, '[', ']')?);
                if self.eat_sym(']') {
                    break;
                }
                self.expect_sym(',')?;
            }
        }
        if rows.iter().any(|r| r.len() != rows[0].len()) {
            return Err(syntax(l, c, "arity mismatch: rows of different lengths"));
        }
        Ok(ring.reduce_matrix(&Matrix::from_rows(rows, ring.nvars(), ORDER)))
    }

    fn ring_def(&mut self, seed: u64) -> Result<Arc<AmbientRing>> {
        let (l, c) = self.here();
        let field = self.ident()?;
        let p: u64 = field
            .strip_prefix('F')
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| syntax(l, c, "expected a prime field such as F32003"))?;
        let p = u32::try_from(p).map_err(|_| syntax(l, c, format!("invalid prime modulus {p}")))?;
        init_prime(p).map_err(|e| syntax(l, c, e.to_string()))?;
        self.expect_sym('[')?;
        let mut names = Vec::new();
        loop {
            let (l, c) = self.here();
            let v = self.ident()?;
            if names.contains(&v) {
                return Err(syntax(l, c, format!("duplicate variable '{v}'")));
            }
            names.push(v);
            if self.eat_sym(']') {
                break;
            }
            self.expect_sym(',')?;
        }
        let base = AmbientRing::new(names.clone(), Vec::new(), true).map_err(|e| syntax(l, c, e.to_string()))?;
        let relations = if self.eat_sym('/') {
            self.poly_list(&base, '(', ')')?
        } else {
            Vec::new()
        };
        let domain = match self.peek() {
            Some(Tok::Ident(s)) if s == "domain" => {
                self.pos += 1;
                true
            }
            _ => relations.is_empty(),
        };
        AmbientRing::with_seed(names, relations, domain, seed).map_err(|e| syntax(l, c, e.to_string()))
    }

    fn module_def(&mut self) -> Result<Arc<FPModule>> {
        let (l, c) = self.here();
        let form = self.ident()?;
        match form.as_str() {
            "coker" => {
                let save = self.pos;
                // the matrix is parsed after its ring is known
                let mut depth = 0usize;
                while let Some(t) = self.peek() {
                    match t {
                        Tok::Sym('[') => depth += 1,
                        Tok::Sym(']') => depth = depth.saturating_sub(1),
                        _ => {}
                    }
                    self.pos += 1;
                    if depth == 0 {
                        break;
                    }
                }
                self.keyword("over")?;
                let ring = self.ring_ref()?;
                let after = self.pos;
                self.pos = save;
                let a = self.matrix(&ring)?;
                self.pos = after;
                Ok(FPModule::new(&ring, a))
            }
            "ideal" => {
                let i = self.lookup("ideal", |s, n| s.ideal(n).cloned())?;
                Ok(FPModule::from_ideal(&i))
            }
            "free" => {
                let n = self.int()? as usize;
                self.keyword("over")?;
                let ring = self.ring_ref()?;
                Ok(FPModule::free(&ring, n))
            }
            "dual" => Ok(dual(&self.module_ref()?).module().clone()),
            "tensor" | "sum" => {
                let a = self.module_ref()?;
                let (l2, c2) = self.here();
                let b = self.module_ref()?;
                if !Arc::ptr_eq(a.ring(), b.ring()) {
                    return Err(syntax(l2, c2, "modules over different rings"));
                }
                Ok(if form == "sum" { direct_sum(&a, &b) } else { tensor(&a, &b) })
            }
            _ => Err(syntax(l, c, format!("unknown module form '{form}'"))),
        }
    }

    fn ideal_def(&mut self) -> Result<Ideal> {
        let save = self.pos;
        let mut depth = 0usize;
        while let Some(t) = self.peek() {
            match t {
                Tok::Sym('(') => depth += 1,
                Tok::Sym(')') => depth = depth.saturating_sub(1),
                _ => {}
            }
            self.pos += 1;
            if depth == 0 {
                break;
            }
        }
        self.keyword("over")?;
        let ring = self.ring_ref()?;
        let after = self.pos;
        self.pos = save;
        let gens = self.poly_list(&ring, '(', ')')?;
        self.pos = after;
        Ok(Ideal::new(&ring, gens))
    }

    fn hom_def(&mut self) -> Result<ModuleHomomorphism> {
        let save = self.pos;
        while !matches!(self.peek(), Some(Tok::Sym(':')) | None) {
            self.pos += 1;
        }
        self.expect_sym(':')?;
        let (l, c) = self.here();
        let src = self.module_ref()?;
        if self.next() != Some(Tok::Arrow) {
            self.pos -= 1;
            return self.error("expected '->'");
        }
        let tgt = self.module_ref()?;
        if !Arc::ptr_eq(src.ring(), tgt.ring()) {
            return Err(syntax(l, c, "modules over different rings"));
        }
        let after = self.pos;
        self.pos = save;
        let (lm, cm) = self.here();
        let a = self.matrix(src.ring())?;
        self.pos = after;
        if a.nrows() != tgt.ngens() || a.ncols() != src.ngens() {
            return Err(syntax(
                lm,
                cm,
                format!(
                    "arity mismatch: matrix is {}x{}, expected {}x{}",
                    a.nrows(),
                    a.ncols(),
                    tgt.ngens(),
                    src.ngens()
                ),
            ));
        }
        ModuleHomomorphism::new(&src, &tgt, a).map_err(|e| syntax(lm, cm, e.to_string()))
    }
}

/// Parses a script, binding every definition in order and checking every
/// command against the objects defined before it. Rings get `seed` for their
/// nonzerodivisor search.
pub fn parse_session(text: &str, seed: u64) -> Result<Session> {
    let tokens = tokenize(text)?;
    let mut session = Session::default();
    let mut stmt: Vec<Token> = Vec::new();
    for t in tokens {
        if t.tok == Tok::Semi {
            let end = (t.line, t.column);
            statement(&mut session, &std::mem::take(&mut stmt), end, seed)?;
        } else {
            stmt.push(t);
        }
    }
    if let Some(t) = stmt.first() {
        return Err(syntax(t.line, t.column, "statement is missing its ';'"));
    }
    Ok(session)
}

fn statement(session: &mut Session, toks: &[Token], end: (usize, usize), seed: u64) -> Result<()> {
    let Some(first) = toks.first() else {
        return Ok(());
    };
    let head = match &first.tok {
        Tok::Ident(s) => s.clone(),
        _ => return Err(syntax(first.line, first.column, "expected a statement")),
    };
    if !matches!(head.as_str(), "ring" | "ideal" | "module" | "let") {
        let cmd = command(session, toks)?;
        session.commands.push(cmd);
        return Ok(());
    }
    let mut p = Parser {
        toks,
        pos: 1,
        session,
        end,
    };
    let (l, c) = p.here();
    let name = p.ident()?;
    if session.objects.contains_key(&name) {
        return Err(syntax(l, c, format!("duplicate name '{name}'")));
    }
    p.expect_sym('=')?;
    let obj = match head.as_str() {
        "ring" => Object::Ring(p.ring_def(seed)?),
        "ideal" => Object::Ideal(p.ideal_def()?),
        "module" => Object::Module(p.module_def()?),
        _ => Object::Hom(p.hom_def()?),
    };
    p.finish()?;
    session.objects.insert(name, obj);
    Ok(())
}

/// Commands are read as whitespace-separated words, so verbs and tags may
/// contain hyphens.
fn command(session: &Session, toks: &[Token]) -> Result<Command> {
    let mut words: Vec<(String, usize, usize)> = Vec::new();
    let mut last_end = usize::MAX;
    for t in toks {
        let s = match &t.tok {
            Tok::Ident(s) => s.clone(),
            Tok::Int(n) => n.to_string(),
            Tok::Sym(c) => c.to_string(),
            Tok::Arrow => "->".into(),
            Tok::Semi => unreachable!(),
        };
        match words.last_mut() {
            Some(w) if t.start == last_end => w.0.push_str(&s),
            _ => words.push((s, t.line, t.column)),
        }
        last_end = t.end;
    }
    let (verb, line, column) = words.remove(0);
    let args: Vec<String> = words.iter().map(|w| w.0.clone()).collect();
    let sig = match signature(&verb, &args) {
        Some(s) => s,
        None if verb == "verify" => {
            let (l, c) = words.first().map_or((line, column), |w| (w.1, w.2));
            return Err(syntax(l, c, format!("unknown verify tag, expected one of {}", VERIFY_TAGS.join(", "))));
        }
        None => return Err(syntax(line, column, format!("unknown command '{verb}'"))),
    };
    if sig.len() != args.len() {
        return Err(syntax(
            line,
            column,
            format!("arity mismatch: '{verb}' takes {} arguments, got {}", sig.len(), args.len()),
        ));
    }
    let mut ring = None;
    for ((word, l, c), kind) in words.iter().zip(&sig) {
        let obj = session.get(word);
        let ok = match (kind, obj) {
            (Arg::Count, _) => verb == "verify" || word.parse::<usize>().is_ok(),
            (Arg::Ring | Arg::RingOrModule, Some(Object::Ring(_))) => true,
            (Arg::Ideal, Some(Object::Ideal(_))) => true,
            (Arg::Module | Arg::RingOrModule | Arg::ModuleOrHom, Some(Object::Module(_))) => true,
            (Arg::ModuleOrHom, Some(Object::Hom(_))) => true,
            (_, None) => return Err(syntax(*l, *c, format!("unknown name '{word}'"))),
            _ => false,
        };
        if !ok {
            let what = match kind {
                Arg::Count => "a nonnegative integer".to_string(),
                _ => format!("a different kind of object than the {}", obj.map_or("value", Object::kind)),
            };
            return Err(syntax(*l, *c, format!("'{word}': expected {what}")));
        }
        let r = match obj {
            Some(Object::Ring(r)) => Some(r.clone()),
            Some(Object::Ideal(i)) => Some(i.ring().clone()),
            Some(Object::Module(m)) => Some(m.ring().clone()),
            Some(Object::Hom(f)) => Some(f.ring().clone()),
            None => None,
        };
        if let Some(r) = r {
            match &ring {
                Some(prev) if !Arc::ptr_eq(prev, &r) => {
                    return Err(syntax(*l, *c, format!("'{word}' lives over a different ring")));
                }
                _ => ring = Some(r),
            }
        }
    }
    Ok(Command { verb, args, line })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SCRIPT: &str = "
# the node
ring R = F32003[x,y] / (x*y);
ideal I = (x, y) over R;
module M = coker [[x]] over R;
module MI = ideal I;
let f = [[y]] : M -> M;
ext 1 M M;
verify trace-props M MI;
";

    #[test]
    fn parses_a_session() {
        let s = parse_session(SCRIPT, 0).unwrap();
        assert_eq!(s.commands.len(), 2);
        assert_eq!(s.commands[1].text(), "verify trace-props M MI");
        let r = s.ring("R").unwrap();
        assert!(!r.is_domain());
        assert_eq!(s.module("MI").unwrap().ngens(), 2);
        assert_eq!(s.ideal("I").unwrap(), &r.maximal_ideal());
        assert!(s.hom("f").is_some());
    }

    #[test]
    fn polynomial_syntax() {
        let s = parse_session("ring R = F32003[x,y,z]; ideal I = (x^2*y + 3*z - 1, -(x - y)^2) over R;", 0).unwrap();
        let r = s.ring("R").unwrap();
        let (x, y, z) = (r.var(0), r.var(1), r.var(2));
        let a = x.pow(2).mul(&y).add(&z.scale(crate::arith::Fp::new(3))).sub(&r.one());
        let b = x.sub(&y).pow(2).neg();
        assert_eq!(s.ideal("I").unwrap(), &Ideal::new(r, vec![a, b]));
    }

    fn err(text: &str) -> (usize, usize, String) {
        match parse_session(text, 0) {
            Err(Error::Syntax { line, column, message }) => (line, column, message),
            other => panic!("expected a syntax error, got {:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn positioned_errors() {
        let (l, c, m) = err("ring R = F32003[x,y];\nideal I = (x, w) over R;");
        assert_eq!((l, c), (2, 15));
        assert!(m.contains("unknown variable 'w'"));

        let (l, c, m) = err("ring R = F32003[x];\nring R = F32003[y];");
        assert_eq!((l, c), (2, 6));
        assert!(m.contains("duplicate name"));

        let (l, _, m) = err("ring R = F32003[x];\nmodule M = free 1 over R;\next 1 M;");
        assert_eq!(l, 3);
        assert!(m.contains("arity mismatch"));

        let (_, _, m) = err("ring R = F32003[x];\ntrace N;");
        assert!(m.contains("unknown name 'N'"));

        let (_, _, m) = err("ring R = F32003[x,y];\nmodule M = coker [[x, y], [x]] over R;");
        assert!(m.contains("arity mismatch"));

        let (l, c, _) = err("ring R = F32003[x]");
        assert_eq!((l, c), (1, 1));
    }
}
