//! Parsed documents and their canonical printed form.

use std::fmt;

use crate::algebra::{fmt_rational, Rational};
use crate::cocycle::{Mode, OpenBox};
use crate::courant::GeneralizedSection;
use crate::exterior::{Chart, DifferentialForm, VectorField};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Object {
    /// Degree 0 forms are the `func` declarations.
    Form(DifferentialForm),
    Field(VectorField),
    Point(Vec<Rational>),
    Section(GeneralizedSection),
}

impl Object {
    pub fn keyword(&self) -> &'static str {
        match self {
            Object::Form(a) if a.degree() == 0 => "func",
            Object::Form(_) => "form",
            Object::Field(_) => "field",
            Object::Point(_) => "point",
            Object::Section(_) => "section",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverDecl {
    pub name: String,
    /// Name of the form being trivialized.
    pub form: String,
    pub mode: Mode,
    pub boxes: Vec<OpenBox>,
}

/// Indices are 0-based internally and printed 1-based.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum LocalKind {
    Theta(usize),
    H(usize, usize),
    B(usize),
    A(usize, usize),
    HH(usize, usize, usize),
}

impl LocalKind {
    pub fn indices(&self) -> Vec<usize> {
        match *self {
            LocalKind::Theta(i) | LocalKind::B(i) => vec![i],
            LocalKind::H(i, j) | LocalKind::A(i, j) => vec![i, j],
            LocalKind::HH(i, j, k) => vec![i, j, k],
        }
    }

    fn word(&self) -> &'static str {
        match self {
            LocalKind::Theta(_) => "theta",
            LocalKind::H(..) | LocalKind::HH(..) => "h",
            LocalKind::B(_) => "B",
            LocalKind::A(..) => "A",
        }
    }

    /// Degree of the value.
    pub fn degree(&self) -> usize {
        match self {
            LocalKind::Theta(_) | LocalKind::A(..) => 1,
            LocalKind::H(..) | LocalKind::HH(..) => 0,
            LocalKind::B(_) => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalDecl {
    pub cover: String,
    pub kind: LocalKind,
    pub value: DifferentialForm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    CheckNplectic(String),
    Hamiltonian(String),
    Bracket(String, String),
    Jacobiator(String, String, String),
    /// The semi-bracket laws (`verify prop35`).
    SemiBracketLaws(String, String, String),
    Lemmas(String, String, String),
    CourantAxioms([String; 3], String, String),
    Curvature([String; 3]),
    Preserves(String),
    MorphismMain(String, String, String),
    Extension(String, String, [String; 3]),
    Cocycle2(String),
    Cocycle3(String),
    Atiyah(String, String),
}

impl Command {
    /// Prefix for the check ids of this command.
    pub fn tag(&self) -> String {
        match self {
            Command::CheckNplectic(a) => format!("check-nplectic({a})"),
            Command::Hamiltonian(a) => format!("hamiltonian({a})"),
            Command::Bracket(a, b) => format!("bracket({a},{b})"),
            Command::Jacobiator(a, b, c) => format!("jacobiator({a},{b},{c})"),
            Command::SemiBracketLaws(a, b, c) => format!("prop35({a},{b},{c})"),
            Command::Lemmas(a, b, c) => format!("lemmas({a},{b},{c})"),
            Command::CourantAxioms([a, b, c], f, g) => format!("courant-axioms({a},{b},{c};{f},{g})"),
            Command::Curvature([a, b, c]) => format!("curvature({a},{b},{c})"),
            Command::Preserves(e) => format!("preserves({e})"),
            Command::MorphismMain(a, b, c) => format!("morphism-main({a},{b},{c})"),
            Command::Extension(x, y, [a, b, c]) => format!("extension({x},{y};{a},{b},{c})"),
            Command::Cocycle2(u) => format!("cocycle2({u})"),
            Command::Cocycle3(u) => format!("cocycle3({u})"),
            Command::Atiyah(f, g) => format!("atiyah({f},{g})"),
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Command::CheckNplectic(a) => write!(f, "check-nplectic {a}"),
            Command::Hamiltonian(a) => write!(f, "hamiltonian {a}"),
            Command::Bracket(a, b) => write!(f, "bracket {a} {b}"),
            Command::Jacobiator(a, b, c) => write!(f, "jacobiator {a} {b} {c}"),
            Command::SemiBracketLaws(a, b, c) => write!(f, "verify prop35 {a} {b} {c}"),
            Command::Lemmas(a, b, c) => write!(f, "verify lemmas {a} {b} {c}"),
            Command::CourantAxioms([a, b, c], p, q) => write!(f, "verify courant-axioms {a} {b} {c} {p} {q}"),
            Command::Curvature([a, b, c]) => write!(f, "curvature {a} {b} {c}"),
            Command::Preserves(e) => write!(f, "preserves {e}"),
            Command::MorphismMain(a, b, c) => write!(f, "verify morphism main {a} {b} {c}"),
            Command::Extension(x, y, [a, b, c]) => write!(f, "verify extension {x} {y} {a} {b} {c}"),
            Command::Cocycle2(u) => write!(f, "verify cocycle2 {u}"),
            Command::Cocycle3(u) => write!(f, "verify cocycle3 {u}"),
            Command::Atiyah(p, q) => write!(f, "verify atiyah {p} {q}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    Let {
        name: String,
        object: Object,
    },
    /// Selects the structure form used by the commands.
    Structure(String),
    Cover(CoverDecl),
    Local(LocalDecl),
    Command(Command),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub chart: Chart,
    pub statements: Vec<Statement>,
}

impl Document {
    pub fn object(&self, name: &str) -> Option<&Object> {
        self.statements.iter().find_map(|s| match s {
            Statement::Let { name: n, object } if n == name => Some(object),
            _ => None,
        })
    }

    pub fn structure_name(&self) -> Option<&str> {
        self.statements.iter().find_map(|s| match s {
            Statement::Structure(n) => Some(n.as_str()),
            _ => None,
        })
    }

    pub fn cover(&self, name: &str) -> Option<&CoverDecl> {
        self.statements.iter().find_map(|s| match s {
            Statement::Cover(c) if c.name == name => Some(c),
            _ => None,
        })
    }

    pub fn locals<'a>(&'a self, cover: &'a str) -> impl Iterator<Item = &'a LocalDecl> + 'a {
        self.statements.iter().filter_map(move |s| match s {
            Statement::Local(l) if l.cover == cover => Some(l),
            _ => None,
        })
    }

    pub fn commands(&self) -> impl Iterator<Item = &Command> {
        self.statements.iter().filter_map(|s| match s {
            Statement::Command(c) => Some(c),
            _ => None,
        })
    }

    /// Canonical source text; parsing it yields an equal document.
    pub fn to_source(&self) -> String {
        let mut s = format!("{}\n", self.chart);
        for st in &self.statements {
            s.push_str(&st.to_string());
            s.push('\n');
        }
        s
    }
}

/// Prints a form so that it re-parses with the same degree.
pub fn form_source(a: &DifferentialForm) -> String {
    if a.is_zero() && a.degree() > 0 {
        let coords = a.chart().coordinates();
        let basis: Vec<String> = coords[..a.degree()].iter().map(|c| format!("d{c}")).collect();
        return format!("0*{}", basis.join("^"));
    }
    a.to_string()
}

pub fn field_source(v: &VectorField) -> String {
    if v.is_zero() {
        return format!("0*@{}", v.chart().coordinates()[0]);
    }
    v.to_string()
}

pub fn point_source(p: &[Rational]) -> String {
    let parts: Vec<String> = p.iter().map(fmt_rational).collect();
    format!("({})", parts.join(", "))
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Let { name, object } => {
                let body = match object {
                    Object::Form(a) => form_source(a),
                    Object::Field(v) => field_source(v),
                    Object::Point(p) => point_source(p),
                    Object::Section(e) => format!("({}, {})", field_source(&e.v), form_source(&e.alpha)),
                };
                write!(f, "{} {name} = {body}", object.keyword())
            }
            Statement::Structure(n) => write!(f, "structure {n}"),
            Statement::Cover(c) => {
                let boxes: Vec<String> = c.boxes.iter().map(|b| b.to_string()).collect();
                write!(f, "cover {} for {} {} = {}", c.name, c.form, c.mode, boxes.join(", "))
            }
            Statement::Local(l) => {
                let idx: Vec<String> = l.kind.indices().iter().map(|i| (i + 1).to_string()).collect();
                write!(
                    f,
                    "local {} {} {} = {}",
                    l.cover,
                    l.kind.word(),
                    idx.join(" "),
                    form_source(&l.value)
                )
            }
            Statement::Command(c) => write!(f, "{c}"),
        }
    }
}
