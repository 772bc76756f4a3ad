//! Recursive-descent parser; expressions are evaluated while parsing.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' (INT | atom))*
//! atom  := INT | IDENT | dIDENT | @IDENT | 'd' '(' expr ')' | '(' expr ')'
//! ```
//! `a ^ n` with an integer literal `n` is a power of a function; otherwise
//! `^` is the wedge product.

use std::collections::HashSet;

use super::document::{Command, CoverDecl, Document, LocalDecl, LocalKind, Object, Statement};
use super::lexer::{lex, Tok, Token};
use super::ParseError;
use crate::algebra::Rational;
use crate::cocycle::{Mode, OpenBox};
use crate::courant::GeneralizedSection;
use crate::exterior::{Chart, DifferentialForm, VectorField};

const KEYWORDS: &[&str] = &[
    "chart",
    "form",
    "func",
    "field",
    "point",
    "section",
    "structure",
    "cover",
    "local",
    "verify",
    "bracket",
    "jacobiator",
    "hamiltonian",
    "curvature",
    "preserves",
    "d",
    "for",
    "real",
    "circle",
];

#[derive(Clone, Debug)]
enum Value {
    Form(DifferentialForm),
    Field(VectorField),
}

impl Value {
    fn describe(&self) -> String {
        match self {
            Value::Form(a) if a.degree() == 0 => "a function".into(),
            Value::Form(a) => format!("a {}-form", a.degree()),
            Value::Field(_) => "a vector field".into(),
        }
    }
}

pub fn parse(src: &str) -> Result<Document, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        chart: None,
        statements: Vec::new(),
        names: HashSet::new(),
    };
    p.document()
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    chart: Option<Chart>,
    statements: Vec<Statement>,
    names: HashSet<String>,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err_at<T>(&self, t: &Token, msg: impl Into<String>) -> PResult<T> {
        Err(ParseError::new(t.line, t.col, msg))
    }

    fn expected<T>(&self, what: &str) -> PResult<T> {
        let t = self.peek().clone();
        self.err_at(&t, format!("expected {what}, found {}", t.tok))
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek().tok == Tok::Sym(c) {
            self.next();
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> PResult<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            self.expected(&format!("`{c}`"))
        }
    }

    fn ident(&mut self, what: &str) -> PResult<(String, Token)> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Ident(s) => {
                let s = s.clone();
                self.next();
                Ok((s, t))
            }
            _ => self.expected(what),
        }
    }

    /// A possibly hyphenated word such as `check-nplectic`; hyphens must be
    /// written without surrounding spaces.
    fn word(&mut self) -> PResult<(String, Token)> {
        let (mut w, start) = self.ident("a keyword")?;
        loop {
            let (dash, after) = (self.peek().clone(), self.toks[self.pos + 1].clone());
            let prev_end = start.col + w.len();
            let adjacent = dash.line == start.line && dash.col == prev_end && after.col == dash.col + 1;
            match (&dash.tok, &after.tok) {
                (Tok::Sym('-'), Tok::Ident(s)) if adjacent => {
                    w = format!("{w}-{s}");
                    self.next();
                    self.next();
                }
                _ => return Ok((w, start)),
            }
        }
    }

    fn end_of_line(&mut self) -> PResult<()> {
        match self.peek().tok {
            Tok::Newline => {
                self.next();
                Ok(())
            }
            Tok::Eof => Ok(()),
            _ => self.expected("end of line"),
        }
    }

    fn skip_blank(&mut self) {
        while self.peek().tok == Tok::Newline {
            self.next();
        }
    }

    fn chart(&self) -> &Chart {
        self.chart.as_ref().expect("chart parsed first")
    }

    fn document(&mut self) -> PResult<Document> {
        self.skip_blank();
        let (w, t) = self.ident("`chart`")?;
        if w != "chart" {
            return self.err_at(&t, "document must start with a chart declaration");
        }
        let (label, _) = self.ident("a chart label")?;
        self.expect_sym('(')?;
        let mut coords = Vec::new();
        loop {
            coords.push(self.ident("a coordinate name")?.0);
            if !self.eat_sym(',') {
                break;
            }
        }
        self.expect_sym(')')?;
        for c in &coords {
            if KEYWORDS.contains(&c.as_str()) {
                return self.err_at(&t, format!("`{c}` is reserved and cannot be a coordinate"));
            }
        }
        self.chart = Some(Chart::new(&label, &coords).map_err(|e| ParseError::new(t.line, t.col, e.to_string()))?);
        self.end_of_line()?;
        loop {
            self.skip_blank();
            if self.peek().tok == Tok::Eof {
                break;
            }
            let st = self.statement()?;
            self.statements.push(st);
            self.end_of_line()?;
        }
        Ok(Document {
            chart: self.chart.clone().unwrap(),
            statements: std::mem::take(&mut self.statements),
        })
    }

    fn statement(&mut self) -> PResult<Statement> {
        let (w, t) = self.word()?;
        match w.as_str() {
            "form" | "func" | "field" | "point" | "section" => self.let_stmt(&w),
            "structure" => {
                let (n, nt) = self.ident("a form name")?;
                match self.lookup(&n) {
                    Some(Object::Form(_)) => {}
                    Some(_) => return self.err_at(&nt, format!("`{n}` is not a form")),
                    None => return self.err_at(&nt, format!("unknown identifier `{n}`")),
                }
                if self.statements.iter().any(|s| matches!(s, Statement::Structure(_))) {
                    return self.err_at(&t, "structure already declared");
                }
                Ok(Statement::Structure(n))
            }
            "cover" => self.cover_stmt(),
            "local" => self.local_stmt(),
            "chart" => self.err_at(&t, "only one chart declaration is allowed"),
            _ => {
                self.pos -= w.split('-').count() * 2 - 1;
                Ok(Statement::Command(self.command()?))
            }
        }
    }

    fn declare(&mut self, t: &Token, name: &str) -> PResult<()> {
        let chart = self.chart();
        let shadows_basis = name.strip_prefix('d').is_some_and(|c| chart.index_of(c).is_some());
        if KEYWORDS.contains(&name) || chart.index_of(name).is_some() || shadows_basis {
            return self.err_at(t, format!("`{name}` is reserved"));
        }
        if !self.names.insert(name.to_string()) {
            return self.err_at(t, format!("`{name}` is already defined"));
        }
        Ok(())
    }

    fn let_stmt(&mut self, kw: &str) -> PResult<Statement> {
        let (name, nt) = self.ident("a name")?;
        self.declare(&nt, &name)?;
        self.expect_sym('=')?;
        let t = self.peek().clone();
        let object = match kw {
            "form" => Object::Form(self.form_expr()?),
            "func" => Object::Form(self.func_expr()?),
            "field" => Object::Field(self.field_expr()?),
            "point" => Object::Point(self.point()?),
            _ => {
                self.expect_sym('(')?;
                let v = self.field_expr()?;
                self.expect_sym(',')?;
                let a = self.form_expr()?;
                self.expect_sym(')')?;
                let a = match a.degree() {
                    1 => a,
                    0 if a.is_zero() => DifferentialForm::zero(self.chart(), 1),
                    k => return self.err_at(&t, format!("degree mismatch: section needs a 1-form, found a {k}-form")),
                };
                Object::Section(
                    GeneralizedSection::new(v, a).map_err(|e| ParseError::new(t.line, t.col, e.to_string()))?,
                )
            }
        };
        Ok(Statement::Let { name, object })
    }

    fn point(&mut self) -> PResult<Vec<Rational>> {
        let t = self.peek().clone();
        self.expect_sym('(')?;
        let mut out = Vec::new();
        loop {
            out.push(self.constant()?);
            if !self.eat_sym(',') {
                break;
            }
        }
        self.expect_sym(')')?;
        if out.len() != self.chart().dimension() {
            return self.err_at(
                &t,
                format!(
                    "point has {} coordinates, chart has {}",
                    out.len(),
                    self.chart().dimension()
                ),
            );
        }
        Ok(out)
    }

    fn constant(&mut self) -> PResult<Rational> {
        let t = self.peek().clone();
        let f = self.func_expr()?;
        match f.as_function().and_then(|g| g.as_constant()) {
            Some(c) => Ok(c),
            None => self.err_at(&t, "expected a rational constant"),
        }
    }

    fn cover_stmt(&mut self) -> PResult<Statement> {
        let (name, nt) = self.ident("a cover name")?;
        self.declare(&nt, &name)?;
        let (f, _) = self.ident("`for`")?;
        if f != "for" {
            return self.err_at(&nt, "expected `for FORM` after the cover name");
        }
        let (form, ft) = self.ident("a form name")?;
        if !matches!(self.lookup(&form), Some(Object::Form(_))) {
            return self.err_at(&ft, format!("unknown form `{form}`"));
        }
        let mode = match &self.peek().tok {
            Tok::Ident(m) if m == "circle" => {
                self.next();
                Mode::Circle
            }
            Tok::Ident(m) if m == "real" => {
                self.next();
                Mode::Real
            }
            _ => Mode::Real,
        };
        self.expect_sym('=')?;
        let mut boxes = Vec::new();
        loop {
            boxes.push(self.open_box()?);
            if !self.eat_sym(',') {
                break;
            }
        }
        Ok(Statement::Cover(CoverDecl {
            name,
            form,
            mode,
            boxes,
        }))
    }

    fn open_box(&mut self) -> PResult<OpenBox> {
        let t = self.peek().clone();
        let (mut lo, mut hi) = (Vec::new(), Vec::new());
        loop {
            self.expect_sym('(')?;
            lo.push(self.constant()?);
            self.expect_sym(',')?;
            hi.push(self.constant()?);
            self.expect_sym(')')?;
            match self.peek_at(0) {
                Tok::Ident(s) if s == "x" && *self.peek_at(1) == Tok::Sym('(') => {
                    self.next();
                }
                _ => break,
            }
        }
        if lo.len() != self.chart().dimension() {
            return self.err_at(
                &t,
                format!("box has {} sides, chart has {}", lo.len(), self.chart().dimension()),
            );
        }
        if lo.iter().zip(&hi).any(|(a, b)| a >= b) {
            return self.err_at(&t, "box is empty");
        }
        Ok(OpenBox::new(lo, hi))
    }

    fn local_stmt(&mut self) -> PResult<Statement> {
        let (cover, ct) = self.ident("a cover name")?;
        let nboxes = match self.statements.iter().find_map(|s| match s {
            Statement::Cover(c) if c.name == cover => Some(c.boxes.len()),
            _ => None,
        }) {
            Some(n) => n,
            None => return self.err_at(&ct, format!("unknown cover `{cover}`")),
        };
        let (word, wt) = self.ident("theta, h, B or A")?;
        let mut idx = Vec::new();
        while let Tok::Int(_) = self.peek().tok {
            let t = self.next();
            let Tok::Int(s) = &t.tok else { unreachable!() };
            let i: usize = s
                .parse()
                .map_err(|_| ParseError::new(t.line, t.col, "index too large"))?;
            if i == 0 || i > nboxes {
                return self.err_at(&t, format!("box index {i} out of range 1..{nboxes}"));
            }
            idx.push(i - 1);
        }
        if idx.windows(2).any(|w| w[0] >= w[1]) {
            return self.err_at(&wt, "indices must be strictly increasing");
        }
        let kind = match (word.as_str(), idx.as_slice()) {
            ("theta", &[i]) => LocalKind::Theta(i),
            ("B", &[i]) => LocalKind::B(i),
            ("h", &[i, j]) => LocalKind::H(i, j),
            ("A", &[i, j]) => LocalKind::A(i, j),
            ("h", &[i, j, k]) => LocalKind::HH(i, j, k),
            _ => return self.err_at(&wt, format!("`{word}` with {} indices is not local data", idx.len())),
        };
        self.expect_sym('=')?;
        let t = self.peek().clone();
        let value = self.form_expr()?;
        let value = if value.is_zero() {
            DifferentialForm::zero(self.chart(), kind.degree())
        } else {
            value
        };
        if value.degree() != kind.degree() {
            return self.err_at(
                &t,
                format!(
                    "degree mismatch: expected a {}-form, found a {}-form",
                    kind.degree(),
                    value.degree()
                ),
            );
        }
        Ok(Statement::Local(LocalDecl { cover, kind, value }))
    }

    fn command(&mut self) -> PResult<Command> {
        let (w, t) = self.word()?;
        let cmd = match w.as_str() {
            "check-nplectic" => Command::CheckNplectic(self.arg(Kind::Form(None))?),
            "hamiltonian" => Command::Hamiltonian(self.arg(Kind::Form(None))?),
            "bracket" => Command::Bracket(self.arg(Kind::ONE)?, self.arg(Kind::ONE)?),
            "jacobiator" => Command::Jacobiator(self.arg(Kind::ONE)?, self.arg(Kind::ONE)?, self.arg(Kind::ONE)?),
            "curvature" => Command::Curvature([self.arg(Kind::Field)?, self.arg(Kind::Field)?, self.arg(Kind::Field)?]),
            "preserves" => Command::Preserves(self.arg(Kind::SectionLike)?),
            "verify" => {
                let (sub, st) = self.word()?;
                match sub.as_str() {
                    "prop35" => {
                        Command::SemiBracketLaws(self.arg(Kind::ONE)?, self.arg(Kind::ONE)?, self.arg(Kind::ONE)?)
                    }
                    "lemmas" => Command::Lemmas(self.arg(Kind::ONE)?, self.arg(Kind::ONE)?, self.arg(Kind::ONE)?),
                    "courant-axioms" => Command::CourantAxioms(
                        [
                            self.arg(Kind::SectionLike)?,
                            self.arg(Kind::SectionLike)?,
                            self.arg(Kind::SectionLike)?,
                        ],
                        self.arg(Kind::FUNC)?,
                        self.arg(Kind::FUNC)?,
                    ),
                    "morphism" => {
                        let (m, mt) = self.ident("`main`")?;
                        if m != "main" {
                            return self.err_at(&mt, format!("unknown morphism `{m}`"));
                        }
                        Command::MorphismMain(self.arg(Kind::ONE)?, self.arg(Kind::ONE)?, self.arg(Kind::ONE)?)
                    }
                    "extension" => Command::Extension(
                        self.arg(Kind::Point)?,
                        self.arg(Kind::Point)?,
                        [self.arg(Kind::Field)?, self.arg(Kind::Field)?, self.arg(Kind::Field)?],
                    ),
                    "cocycle2" => Command::Cocycle2(self.arg(Kind::Cover)?),
                    "cocycle3" => Command::Cocycle3(self.arg(Kind::Cover)?),
                    "atiyah" => Command::Atiyah(self.arg(Kind::FUNC)?, self.arg(Kind::FUNC)?),
                    _ => return self.err_at(&st, format!("unknown verification `{sub}`")),
                }
            }
            _ => return self.err_at(&t, format!("unknown command `{w}`")),
        };
        Ok(cmd)
    }

    fn lookup(&self, name: &str) -> Option<&Object> {
        self.statements.iter().find_map(|s| match s {
            Statement::Let { name: n, object } if n == name => Some(object),
            _ => None,
        })
    }

    fn arg(&mut self, kind: Kind) -> PResult<String> {
        let (n, t) = self.ident(kind.describe())?;
        if kind == Kind::Cover {
            if self
                .statements
                .iter()
                .any(|s| matches!(s, Statement::Cover(c) if c.name == n))
            {
                return Ok(n);
            }
            return self.err_at(&t, format!("unknown cover `{n}`"));
        }
        let obj = match self.lookup(&n) {
            Some(o) => o,
            None => return self.err_at(&t, format!("unknown identifier `{n}`")),
        };
        let ok = match (kind, obj) {
            (Kind::Form(None), Object::Form(_)) => true,
            (Kind::Form(Some(k)), Object::Form(a)) => {
                if a.degree() != k {
                    return self.err_at(
                        &t,
                        format!("degree mismatch: `{n}` has degree {}, expected {k}", a.degree()),
                    );
                }
                true
            }
            (Kind::Field, Object::Field(_)) => true,
            (Kind::Point, Object::Point(_)) => true,
            (Kind::SectionLike, Object::Section(_) | Object::Field(_)) => true,
            (Kind::SectionLike, Object::Form(a)) => a.degree() == 1,
            _ => false,
        };
        if !ok {
            return self.err_at(&t, format!("`{n}` is not {}", kind.describe()));
        }
        Ok(n)
    }

    // Expressions.

    fn form_expr(&mut self) -> PResult<DifferentialForm> {
        let t = self.peek().clone();
        match self.expr()? {
            Value::Form(a) => Ok(a),
            v => self.err_at(&t, format!("expected a form, found {}", v.describe())),
        }
    }

    fn func_expr(&mut self) -> PResult<DifferentialForm> {
        let t = self.peek().clone();
        let a = self.form_expr()?;
        if a.degree() != 0 {
            return self.err_at(
                &t,
                format!("degree mismatch: expected a function, found a {}-form", a.degree()),
            );
        }
        Ok(a)
    }

    fn field_expr(&mut self) -> PResult<VectorField> {
        let t = self.peek().clone();
        match self.expr()? {
            Value::Field(v) => Ok(v),
            Value::Form(a) if a.degree() == 0 && a.is_zero() => Ok(VectorField::zero(self.chart())),
            v => self.err_at(&t, format!("expected a vector field, found {}", v.describe())),
        }
    }

    fn expr(&mut self) -> PResult<Value> {
        let mut acc = self.term()?;
        loop {
            let t = self.peek().clone();
            let neg = match t.tok {
                Tok::Sym('+') => false,
                Tok::Sym('-') => true,
                _ => return Ok(acc),
            };
            self.next();
            let rhs = self.term()?;
            acc = self.add(&t, acc, rhs, neg)?;
        }
    }

    fn add(&self, t: &Token, a: Value, b: Value, neg: bool) -> PResult<Value> {
        match (a, b) {
            (Value::Form(a), Value::Form(b)) => {
                let r = if neg { a.try_sub(&b) } else { a.try_add(&b) };
                match r {
                    Ok(s) => Ok(Value::Form(s)),
                    Err(_) if a.is_zero() && a.degree() == 0 => Ok(Value::Form(if neg { -&b } else { b })),
                    Err(_) if b.is_zero() && b.degree() == 0 => Ok(Value::Form(a)),
                    Err(_) => self.err_at(
                        t,
                        format!(
                            "degree mismatch: cannot add a {}-form and a {}-form",
                            a.degree(),
                            b.degree()
                        ),
                    ),
                }
            }
            (Value::Field(a), Value::Field(b)) => Ok(Value::Field(if neg { &a - &b } else { &a + &b })),
            (a, b) => self.err_at(t, format!("cannot add {} and {}", a.describe(), b.describe())),
        }
    }

    fn term(&mut self) -> PResult<Value> {
        let mut acc = self.unary()?;
        loop {
            let t = self.peek().clone();
            match t.tok {
                Tok::Sym('*') => {
                    self.next();
                    let rhs = self.unary()?;
                    acc = self.mul(&t, acc, rhs)?;
                }
                Tok::Sym('/') => {
                    self.next();
                    let rhs = self.unary()?;
                    acc = self.div(&t, acc, rhs)?;
                }
                Tok::Int(_) | Tok::Ident(_) | Tok::Field(_) | Tok::Sym('(') => {
                    return self.err_at(&t, "juxtaposition is not allowed; use `*`")
                }
                _ => return Ok(acc),
            }
        }
    }

    fn mul(&self, t: &Token, a: Value, b: Value) -> PResult<Value> {
        let scalar = |v: &Value| match v {
            Value::Form(f) if f.degree() == 0 => f.as_function(),
            _ => None,
        };
        match (scalar(&a), scalar(&b)) {
            (Some(f), _) => Ok(match b {
                Value::Form(x) => Value::Form(x.mul_fn(&f)),
                Value::Field(v) => Value::Field(v.mul_fn(&f)),
            }),
            (_, Some(g)) => Ok(match a {
                Value::Form(x) => Value::Form(x.mul_fn(&g)),
                Value::Field(v) => Value::Field(v.mul_fn(&g)),
            }),
            _ => self.err_at(
                t,
                format!(
                    "cannot multiply {} by {}; use `^` for the wedge product",
                    a.describe(),
                    b.describe()
                ),
            ),
        }
    }

    fn div(&self, t: &Token, a: Value, b: Value) -> PResult<Value> {
        let g = match &b {
            Value::Form(f) if f.degree() == 0 => f.as_function().unwrap(),
            _ => return self.err_at(t, format!("cannot divide by {}", b.describe())),
        };
        let inv = match g.recip() {
            Ok(r) => r,
            Err(_) => return self.err_at(t, "division by zero"),
        };
        Ok(match a {
            Value::Form(x) => Value::Form(x.mul_fn(&inv)),
            Value::Field(v) => Value::Field(v.mul_fn(&inv)),
        })
    }

    fn unary(&mut self) -> PResult<Value> {
        if self.eat_sym('-') {
            return Ok(match self.unary()? {
                Value::Form(a) => Value::Form(-&a),
                Value::Field(v) => Value::Field(-&v),
            });
        }
        self.power()
    }

    fn power(&mut self) -> PResult<Value> {
        let mut acc = self.atom()?;
        loop {
            let t = self.peek().clone();
            if t.tok != Tok::Sym('^') {
                return Ok(acc);
            }
            self.next();
            if let Tok::Int(s) = &self.peek().tok {
                let et = self.peek().clone();
                let e: u32 = s
                    .parse()
                    .map_err(|_| ParseError::new(et.line, et.col, "exponent too large"))?;
                self.next();
                acc = match acc {
                    Value::Form(a) if a.degree() == 0 => Value::Form(DifferentialForm::function(
                        self.chart(),
                        a.as_function().unwrap().pow(e),
                    )),
                    v => return self.err_at(&t, format!("cannot raise {} to a power", v.describe())),
                };
            } else {
                let rhs = self.atom()?;
                acc = match (acc, rhs) {
                    (Value::Form(a), Value::Form(b)) => Value::Form(a.wedge(&b).expect("same chart")),
                    (a, b) => return self.err_at(&t, format!("cannot wedge {} with {}", a.describe(), b.describe())),
                };
            }
        }
    }

    fn atom(&mut self) -> PResult<Value> {
        let t = self.next();
        let chart = self.chart().clone();
        match &t.tok {
            Tok::Int(s) => {
                let n: num_bigint::BigInt = s.parse().expect("digits");
                Ok(Value::Form(DifferentialForm::constant(
                    &chart,
                    Rational::from_integer(n),
                )))
            }
            Tok::Field(c) => match chart.index_of(c) {
                Some(i) => Ok(Value::Field(VectorField::basis(&chart, i))),
                None => self.err_at(&t, format!("unknown coordinate `{c}`")),
            },
            Tok::Sym('(') => {
                let v = self.expr()?;
                self.expect_sym(')')?;
                Ok(v)
            }
            Tok::Ident(s) if s == "d" && self.peek().tok == Tok::Sym('(') => {
                self.next();
                let a = self.form_expr()?;
                self.expect_sym(')')?;
                Ok(Value::Form(a.d()))
            }
            Tok::Ident(s) => {
                if let Some(i) = chart.index_of(s) {
                    return Ok(Value::Form(DifferentialForm::function(&chart, chart.coord(i))));
                }
                if let Some(i) = s.strip_prefix('d').and_then(|c| chart.index_of(c)) {
                    return Ok(Value::Form(DifferentialForm::basis(&chart, &[i])));
                }
                match self.lookup(s) {
                    Some(Object::Form(a)) => Ok(Value::Form(a.clone())),
                    Some(Object::Field(v)) => Ok(Value::Field(v.clone())),
                    Some(o) => self.err_at(&t, format!("a {} cannot appear in an expression", o.keyword())),
                    None => self.err_at(&t, format!("unknown identifier `{s}`")),
                }
            }
            _ => self.err_at(&t, format!("expected an expression, found {}", t.tok)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Form(Option<usize>),
    Field,
    Point,
    SectionLike,
    Cover,
}

impl Kind {
    const ONE: Kind = Kind::Form(Some(1));
    const FUNC: Kind = Kind::Form(Some(0));

    fn describe(&self) -> &'static str {
        match self {
            Kind::Form(None) => "a form",
            Kind::Form(Some(0)) => "a function",
            Kind::Form(Some(1)) => "a 1-form",
            Kind::Form(Some(_)) => "a form of the right degree",
            Kind::Field => "a vector field",
            Kind::Point => "a point",
            Kind::SectionLike => "a section, vector field or 1-form",
            Kind::Cover => "a cover",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    const HEAD: &str = "chart R3 (x, y, z)\n";

    fn doc(body: &str) -> Result<Document, ParseError> {
        parse(&format!("{HEAD}{body}"))
    }

    fn form(d: &Document, n: &str) -> DifferentialForm {
        match d.object(n) {
            Some(Object::Form(a)) => a.clone(),
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn documented_examples() {
        let d = doc("form omega = dx^dy^dz\nfield v = x*@y - y*@x\nform a = dx^dx").unwrap();
        let c = Chart::r3();
        assert_eq!(form(&d, "omega"), DifferentialForm::basis(&c, &[0, 1, 2]));
        let rot = &VectorField::basis(&c, 1).mul_fn(&c.coord(0)) - &VectorField::basis(&c, 0).mul_fn(&c.coord(1));
        assert_eq!(d.object("v"), Some(&Object::Field(rot)));
        let a = form(&d, "a");
        assert!(a.is_zero());
        assert_eq!(a.degree(), 2);
    }

    #[test]
    fn powers_rationals_and_d() {
        let d = doc("func f = 1/2*x^2*y - 3\nform g = d(f)\nform h = (x + y)^2*dz / (1 + z)").unwrap();
        let c = Chart::r3();
        let (x, y) = (c.coord(0), c.coord(1));
        let f = form(&d, "f");
        assert_eq!(
            f.as_function().unwrap().eval(&[int(2), int(3), int(0)]).unwrap(),
            int(3)
        );
        assert_eq!(form(&d, "g"), f.d());
        assert_eq!(form(&d, "h").degree(), 1);
        let _ = (x, y);
    }

    #[test]
    fn errors_are_located() {
        let e = doc("form a = 2x").unwrap_err();
        assert_eq!((e.line, e.col), (2, 11));
        assert!(e.msg.contains("juxtaposition"));
        let e = doc("form a = x*w").unwrap_err();
        assert!(e.msg.contains("unknown identifier"));
        let e = doc("form a = dx + dx^dy").unwrap_err();
        assert!(e.msg.contains("degree mismatch"));
        let e = doc("form a = dx\nform b = dx^dy\nbracket a b").unwrap_err();
        assert_eq!(e.line, 4);
        assert!(e.msg.contains("degree mismatch"));
        assert!(parse("form a = dx").is_err());
    }

    #[test]
    fn commands_and_covers() {
        let d = doc(
            "form w = dx^dy^dz\nstructure w\nform a = x*dy\ncheck-nplectic w\nverify prop35 a a a\n\
             cover U for w circle = (0, 1) x (0, 1) x (0, 1), (1/2, 2) x (0, 1) x (0, 1)\n\
             local U B 1 = x*dy^dz\nlocal U A 1 2 = 0\nverify cocycle3 U",
        )
        .unwrap();
        let cmds: Vec<_> = d.commands().cloned().collect();
        assert_eq!(cmds[0], Command::CheckNplectic("w".into()));
        assert_eq!(cmds[1], Command::SemiBracketLaws("a".into(), "a".into(), "a".into()));
        assert_eq!(cmds[2], Command::Cocycle3("U".into()));
        assert_eq!(d.cover("U").unwrap().boxes.len(), 2);
        assert_eq!(d.locals("U").count(), 2);
        assert_eq!(parse(&d.to_source()).unwrap(), d);
    }
}
