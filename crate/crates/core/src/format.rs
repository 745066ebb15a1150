//! Line-oriented text format for algebras and the data attached to them.
//!
//! ```text
//! # comments run to the end of the line
//! field Q                      # or F5, F7, ...
//! algebra A
//! basis e1 e2
//! claims novikov
//! e1*e1 = e1
//! e2*e1 = e2
//! coalgebra D
//! over A                       # reuse the basis of A
//! delta e1 = 1/2 e2.e2
//! bilinear_form w
//! over A
//! form e1,e2 = 1
//! tensor2 r
//! over A
//! r = e1^e2 - e2^e1
//! pre_novikov P
//! basis e
//! e<e = e
//! e>e = 0
//! representation R
//! of A
//! module v1 v2
//! l(e1) v1 = v1
//! r(e2) v2 = -v1
//! matched_pair M
//! first A
//! second B
//! on_second R                  # representation of A on B
//! on_first S                   # representation of B on A
//! ```
//!
//! Lines before the first header form an implicit block named `main` that
//! accepts `basis`, product, `<`/`>`, `delta`, `form` and `r` lines; it yields
//! one object of each kind whose lines occur (an algebra whenever no `<`/`>`
//! lines occur). Basis names start with a letter or `_`, continue with
//! letters, digits, `_`, `@` or `'`, and may end in `*`s. In tensors `x.y`
//! and `x^y` both denote `x⊗y`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::algebra::{Algebra, Class, PreNovikovAlgebra};
use crate::bialgebra::Coalgebra;
use crate::doubling::MatchedPair;
use crate::linalg::{Basis, BilinearForm, Matrix, Ten3};
use crate::representation::Representation;
use crate::scalar::{Field, Scalar};
use crate::yangbaxter::RTensor;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Syntax,
    UnknownBasisName,
    FieldMismatch,
    DuplicateEntry,
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ErrorKind::Syntax => "syntax error",
            ErrorKind::UnknownBasisName => "unknown basis name",
            ErrorKind::FieldMismatch => "field mismatch",
            ErrorKind::DuplicateEntry => "duplicate entry",
        })
    }
}

/// First error of a parse, with 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{col}: {kind}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ErrorKind,
    pub message: String,
}

type PResult<T> = std::result::Result<T, ParseError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Algebra,
    Coalgebra,
    PreNovikov,
    Representation,
    BilinearForm,
    Tensor2,
    MatchedPair,
}

impl Kind {
    const ALL: [Kind; 7] = [
        Kind::Algebra,
        Kind::Coalgebra,
        Kind::PreNovikov,
        Kind::Representation,
        Kind::BilinearForm,
        Kind::Tensor2,
        Kind::MatchedPair,
    ];

    pub fn keyword(&self) -> &'static str {
        match self {
            Kind::Algebra => "algebra",
            Kind::Coalgebra => "coalgebra",
            Kind::PreNovikov => "pre_novikov",
            Kind::Representation => "representation",
            Kind::BilinearForm => "bilinear_form",
            Kind::Tensor2 => "tensor2",
            Kind::MatchedPair => "matched_pair",
        }
    }

    fn from_keyword(s: &str) -> Option<Kind> {
        Kind::ALL.into_iter().find(|k| k.keyword() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Object {
    Algebra(Algebra),
    Coalgebra(Coalgebra),
    PreNovikov(PreNovikovAlgebra),
    /// A representation together with the name of its algebra.
    Representation { of: String, rep: Representation },
    BilinearForm { basis: Basis, form: BilinearForm },
    Tensor2 { basis: Basis, r: RTensor },
    MatchedPair { names: [String; 4], pair: MatchedPair },
}

impl Object {
    pub fn kind(&self) -> Kind {
        match self {
            Object::Algebra(_) => Kind::Algebra,
            Object::Coalgebra(_) => Kind::Coalgebra,
            Object::PreNovikov(_) => Kind::PreNovikov,
            Object::Representation { .. } => Kind::Representation,
            Object::BilinearForm { .. } => Kind::BilinearForm,
            Object::Tensor2 { .. } => Kind::Tensor2,
            Object::MatchedPair { .. } => Kind::MatchedPair,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Named {
    pub name: String,
    pub object: Object,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraFile {
    pub field: Field,
    pub objects: Vec<Named>,
}

/// Why an object lookup failed.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LookupError {
    #[error("no {kind} named `{name}`")]
    Missing { kind: &'static str, name: String },
    #[error("no {0} in the input")]
    None(&'static str),
    #[error("several objects of kind {0}; choose one by name")]
    Ambiguous(&'static str),
}

impl AlgebraFile {
    pub fn get(&self, kind: Kind, name: &str) -> Option<&Object> {
        self.objects.iter().find(|o| o.name == name && o.object.kind() == kind).map(|o| &o.object)
    }

    pub fn names(&self, kind: Kind) -> Vec<&str> {
        self.objects.iter().filter(|o| o.object.kind() == kind).map(|o| o.name.as_str()).collect()
    }

    /// The object with the given name, or else the unique object of that
    /// kind, or else the one named `main`.
    pub fn select(&self, kind: Kind, name: Option<&str>) -> std::result::Result<&Object, LookupError> {
        if let Some(n) = name {
            return self.get(kind, n).ok_or(LookupError::Missing { kind: kind.keyword(), name: n.to_string() });
        }
        let names = self.names(kind);
        match names.len() {
            0 => Err(LookupError::None(kind.keyword())),
            1 => Ok(self.get(kind, names[0]).expect("listed")),
            _ => self.get(kind, "main").ok_or(LookupError::Ambiguous(kind.keyword())),
        }
    }

    pub fn algebra(&self, name: Option<&str>) -> std::result::Result<&Algebra, LookupError> {
        match self.select(Kind::Algebra, name)? {
            Object::Algebra(a) => Ok(a),
            _ => unreachable!(),
        }
    }

    pub fn coalgebra(&self, name: Option<&str>) -> std::result::Result<&Coalgebra, LookupError> {
        match self.select(Kind::Coalgebra, name)? {
            Object::Coalgebra(c) => Ok(c),
            _ => unreachable!(),
        }
    }

    pub fn pre_novikov(&self, name: Option<&str>) -> std::result::Result<&PreNovikovAlgebra, LookupError> {
        match self.select(Kind::PreNovikov, name)? {
            Object::PreNovikov(p) => Ok(p),
            _ => unreachable!(),
        }
    }

    pub fn representation(&self, name: Option<&str>) -> std::result::Result<&Representation, LookupError> {
        match self.select(Kind::Representation, name)? {
            Object::Representation { rep, .. } => Ok(rep),
            _ => unreachable!(),
        }
    }

    pub fn form(&self, name: Option<&str>) -> std::result::Result<(&Basis, &BilinearForm), LookupError> {
        match self.select(Kind::BilinearForm, name)? {
            Object::BilinearForm { basis, form } => Ok((basis, form)),
            _ => unreachable!(),
        }
    }

    pub fn tensor(&self, name: Option<&str>) -> std::result::Result<(&Basis, &RTensor), LookupError> {
        match self.select(Kind::Tensor2, name)? {
            Object::Tensor2 { basis, r } => Ok((basis, r)),
            _ => unreachable!(),
        }
    }

    pub fn matched_pair(&self, name: Option<&str>) -> std::result::Result<&MatchedPair, LookupError> {
        match self.select(Kind::MatchedPair, name)? {
            Object::MatchedPair { pair, .. } => Ok(pair),
            _ => unreachable!(),
        }
    }
}

// ---------------------------------------------------------------- lexing

struct Line<'a> {
    no: usize,
    text: &'a str,
}

impl Line<'_> {
    fn error(&self, byte: usize, kind: ErrorKind, message: impl Into<String>) -> ParseError {
        let col = self.text[..byte.min(self.text.len())].chars().count() + 1;
        ParseError { line: self.no, col, kind, message: message.into() }
    }

    /// Whitespace-separated words with their byte offsets.
    fn words(&self) -> Vec<(usize, &str)> {
        let mut out = Vec::new();
        let mut start = None;
        for (i, ch) in self.text.char_indices() {
            match (ch.is_whitespace(), start) {
                (true, Some(s)) => {
                    out.push((s, &self.text[s..i]));
                    start = None;
                }
                (false, None) => start = Some(i),
                _ => {}
            }
        }
        if let Some(s) = start {
            out.push((s, &self.text[s..]));
        }
        out
    }
}

fn is_name_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '@' | '\'')
}

pub fn is_valid_name(s: &str) -> bool {
    let body = s.trim_end_matches('*');
    let mut chars = body.chars();
    matches!(chars.next(), Some(c) if is_name_start(c)) && chars.all(is_name_char)
}

/// Cursor over a byte range of a line.
struct Cursor<'a, 'l> {
    line: &'l Line<'a>,
    pos: usize,
    end: usize,
}

impl<'a> Cursor<'a, '_> {
    fn peek(&self) -> Option<char> {
        self.line.text[self.pos..self.end].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.end
    }

    fn digits(&mut self) -> Option<(usize, &'a str)> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        (self.pos > start).then(|| (start, &self.line.text[start..self.pos]))
    }

    fn name(&mut self) -> Option<(usize, &'a str)> {
        let start = self.pos;
        if !matches!(self.peek(), Some(c) if is_name_start(c)) {
            return None;
        }
        while matches!(self.peek(), Some(c) if is_name_char(c)) {
            self.bump();
        }
        while self.peek() == Some('*') {
            self.bump();
        }
        Some((start, &self.line.text[start..self.pos]))
    }
}

/// Parse `[±] [num[/den]] [name (sep name)*]` terms separated by `+`/`-`.
/// `bases` gives the basis of each tensor slot; an empty list means plain
/// scalars. A lone `0` is the zero combination.
fn parse_combination(
    line: &Line<'_>,
    start: usize,
    end: usize,
    field: Field,
    bases: &[&Basis],
) -> PResult<Vec<(Vec<usize>, Scalar)>> {
    let mut cur = Cursor { line, pos: start, end };
    if cur.at_end() {
        return Err(line.error(cur.pos, ErrorKind::Syntax, "expected a value"));
    }
    let mut terms = Vec::new();
    let mut first = true;
    let mut lone_zero = false;
    loop {
        cur.skip_ws();
        let term_start = cur.pos;
        let mut negative = false;
        match cur.peek() {
            Some('+') => {
                cur.bump();
            }
            Some('-') => {
                cur.bump();
                negative = true;
            }
            _ if !first => return Err(line.error(cur.pos, ErrorKind::Syntax, "expected `+` or `-`")),
            _ => {}
        }
        cur.skip_ws();
        let num_at = cur.pos;
        let coef = match cur.digits() {
            Some((_, num)) => {
                let num: BigInt = num.parse().expect("digits");
                let den: BigInt = if cur.peek() == Some('/') {
                    cur.bump();
                    let (at, d) = cur
                        .digits()
                        .ok_or_else(|| line.error(cur.pos, ErrorKind::Syntax, "expected a denominator"))?;
                    let d: BigInt = d.parse().expect("digits");
                    if d == BigInt::from(0) {
                        return Err(line.error(at, ErrorKind::Syntax, "zero denominator"));
                    }
                    d
                } else {
                    BigInt::from(1)
                };
                Some(field.fraction(&num, &den).map_err(|_| {
                    line.error(num_at, ErrorKind::FieldMismatch, format!("denominator vanishes in {field}"))
                })?)
            }
            None => None,
        };
        cur.skip_ws();
        let mut idx = Vec::new();
        if !bases.is_empty() {
            for (slot, basis) in bases.iter().enumerate() {
                if slot > 0 {
                    match cur.peek() {
                        Some('.' | '^') => {
                            cur.bump();
                        }
                        _ => return Err(line.error(cur.pos, ErrorKind::Syntax, "expected `.` or `^` between tensor factors")),
                    }
                }
                match cur.name() {
                    Some((at, n)) => match basis.index_of(n) {
                        Some(i) => idx.push(i),
                        None => return Err(line.error(at, ErrorKind::UnknownBasisName, format!("`{n}` is not a basis element"))),
                    },
                    None if slot == 0 && coef.as_ref().is_some_and(Scalar::is_zero) && first => {
                        lone_zero = true;
                        break;
                    }
                    None => return Err(line.error(cur.pos, ErrorKind::Syntax, "expected a basis name")),
                }
            }
        } else if let Some((at, _)) = cur.name() {
            return Err(line.error(at, ErrorKind::Syntax, "expected a scalar"));
        }
        if coef.is_none() && idx.is_empty() {
            return Err(line.error(term_start, ErrorKind::Syntax, "expected a term"));
        }
        let mut c = coef.unwrap_or_else(|| field.one());
        if negative {
            c = -c;
        }
        if lone_zero {
            if !cur.at_end() {
                return Err(line.error(cur.pos, ErrorKind::Syntax, "a lone 0 must be the whole value"));
            }
            return Ok(Vec::new());
        }
        terms.push((idx, c));
        first = false;
        if cur.at_end() {
            break;
        }
    }
    Ok(terms)
}

// ---------------------------------------------------------------- blocks

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Key {
    Basis,
    Claims,
    Over,
    Of,
    Module,
    Product,
    Lt,
    Gt,
    Delta,
    Form,
    R,
    Action,
    First,
    Second,
    OnFirst,
    OnSecond,
}

impl Key {
    fn label(&self) -> &'static str {
        match self {
            Key::Basis => "basis",
            Key::Claims => "claims",
            Key::Over => "over",
            Key::Of => "of",
            Key::Module => "module",
            Key::Product => "product",
            Key::Lt => "`<` product",
            Key::Gt => "`>` product",
            Key::Delta => "delta",
            Key::Form => "form",
            Key::R => "r",
            Key::Action => "action",
            Key::First => "first",
            Key::Second => "second",
            Key::OnFirst => "on_first",
            Key::OnSecond => "on_second",
        }
    }
}

fn allowed(kind: Option<Kind>) -> &'static [Key] {
    match kind {
        None => &[Key::Basis, Key::Claims, Key::Product, Key::Lt, Key::Gt, Key::Delta, Key::Form, Key::R],
        Some(Kind::Algebra) => &[Key::Basis, Key::Claims, Key::Product],
        Some(Kind::Coalgebra) => &[Key::Basis, Key::Over, Key::Delta],
        Some(Kind::PreNovikov) => &[Key::Basis, Key::Lt, Key::Gt],
        Some(Kind::Representation) => &[Key::Of, Key::Module, Key::Action],
        Some(Kind::BilinearForm) => &[Key::Basis, Key::Over, Key::Form],
        Some(Kind::Tensor2) => &[Key::Basis, Key::Over, Key::R],
        Some(Kind::MatchedPair) => &[Key::First, Key::Second, Key::OnFirst, Key::OnSecond],
    }
}

struct Block {
    kind: Option<Kind>,
    name: String,
    line: usize,
    basis: Option<Basis>,
    claims: BTreeSet<Class>,
    of: Option<(String, Algebra)>,
    module: Option<Basis>,
    product: Option<Ten3>,
    lt: Option<Ten3>,
    gt: Option<Ten3>,
    delta: Option<Ten3>,
    form: Option<Matrix>,
    r: Option<Matrix>,
    left: Option<Vec<Matrix>>,
    right: Option<Vec<Matrix>>,
    refs: [Option<String>; 4],
    seen: BTreeSet<(Key, Vec<usize>)>,
}

impl Block {
    fn new(kind: Option<Kind>, name: String, line: usize) -> Block {
        Block {
            kind,
            name,
            line,
            basis: None,
            claims: BTreeSet::new(),
            of: None,
            module: None,
            product: None,
            lt: None,
            gt: None,
            delta: None,
            form: None,
            r: None,
            left: None,
            right: None,
            refs: Default::default(),
            seen: BTreeSet::new(),
        }
    }
}

struct Parser {
    field: Option<Field>,
    objects: Vec<Named>,
}

impl Parser {
    fn find_algebra(&self, name: &str) -> Option<&Algebra> {
        self.objects.iter().find_map(|o| match &o.object {
            Object::Algebra(a) if o.name == name => Some(a),
            _ => None,
        })
    }

    fn find_basis(&self, name: &str) -> Option<Basis> {
        self.objects.iter().find(|o| o.name == name).and_then(|o| match &o.object {
            Object::Algebra(a) => Some(a.basis().clone()),
            Object::Coalgebra(c) => Some(c.basis().clone()),
            Object::PreNovikov(p) => Some(p.basis().clone()),
            Object::BilinearForm { basis, .. } | Object::Tensor2 { basis, .. } => Some(basis.clone()),
            _ => None,
        })
    }

    fn find_representation(&self, name: &str) -> Option<&Representation> {
        self.objects.iter().find_map(|o| match &o.object {
            Object::Representation { rep, .. } if o.name == name => Some(rep),
            _ => None,
        })
    }

    fn push(&mut self, name: &str, object: Object, line: usize) -> PResult<()> {
        if self.objects.iter().any(|o| o.name == name && o.object.kind() == object.kind()) {
            return Err(ParseError {
                line,
                col: 1,
                kind: ErrorKind::DuplicateEntry,
                message: format!("{} `{name}` defined twice", object.kind().keyword()),
            });
        }
        self.objects.push(Named { name: name.to_string(), object });
        Ok(())
    }

    fn finish(&mut self, b: Block) -> PResult<()> {
        let f = self.field.expect("field precedes blocks");
        let err = |m: String| ParseError { line: b.line, col: 1, kind: ErrorKind::Syntax, message: m };
        let need_basis = || b.basis.clone().ok_or_else(|| err(format!("block `{}` declares no basis", b.name)));
        let zeros3 = |n: usize| Ten3::zeros(f, [n, n, n]);
        match b.kind {
            None => {
                if b.basis.is_none() {
                    return Ok(());
                }
                let basis = need_basis()?;
                let n = basis.dim();
                if b.lt.is_some() || b.gt.is_some() {
                    let p = PreNovikovAlgebra::new(basis.clone(), b.lt.clone().unwrap_or(zeros3(n)), b.gt.clone().unwrap_or(zeros3(n)))
                        .map_err(|e| err(e.to_string()))?;
                    self.push(&b.name, Object::PreNovikov(p), b.line)?;
                }
                if b.product.is_some() || (b.lt.is_none() && b.gt.is_none()) {
                    let mut a = Algebra::new(basis.clone(), b.product.clone().unwrap_or(zeros3(n))).map_err(|e| err(e.to_string()))?;
                    for c in &b.claims {
                        a = a.claim(*c);
                    }
                    self.push(&b.name, Object::Algebra(a), b.line)?;
                }
                if let Some(d) = b.delta {
                    let c = Coalgebra::new(basis.clone(), d).map_err(|e| err(e.to_string()))?;
                    self.push(&b.name, Object::Coalgebra(c), b.line)?;
                }
                if let Some(m) = b.form {
                    let form = BilinearForm::new(m).map_err(|e| err(e.to_string()))?;
                    self.push(&b.name, Object::BilinearForm { basis: basis.clone(), form }, b.line)?;
                }
                if let Some(m) = b.r {
                    self.push(&b.name, Object::Tensor2 { basis, r: RTensor::new(m) }, b.line)?;
                }
                Ok(())
            }
            Some(Kind::Algebra) => {
                let basis = need_basis()?;
                let n = basis.dim();
                let mut a = Algebra::new(basis, b.product.unwrap_or(zeros3(n))).map_err(|e| err(e.to_string()))?;
                for c in &b.claims {
                    a = a.claim(*c);
                }
                self.push(&b.name, Object::Algebra(a), b.line)
            }
            Some(Kind::Coalgebra) => {
                let basis = need_basis()?;
                let n = basis.dim();
                let c = Coalgebra::new(basis, b.delta.unwrap_or(zeros3(n))).map_err(|e| err(e.to_string()))?;
                self.push(&b.name, Object::Coalgebra(c), b.line)
            }
            Some(Kind::PreNovikov) => {
                let basis = need_basis()?;
                let n = basis.dim();
                let p = PreNovikovAlgebra::new(basis, b.lt.unwrap_or(zeros3(n)), b.gt.unwrap_or(zeros3(n)))
                    .map_err(|e| err(e.to_string()))?;
                self.push(&b.name, Object::PreNovikov(p), b.line)
            }
            Some(Kind::BilinearForm) => {
                let basis = need_basis()?;
                let n = basis.dim();
                let form = BilinearForm::new(b.form.unwrap_or(Matrix::zeros(f, n, n))).map_err(|e| err(e.to_string()))?;
                self.push(&b.name, Object::BilinearForm { basis, form }, b.line)
            }
            Some(Kind::Tensor2) => {
                let basis = need_basis()?;
                let n = basis.dim();
                let r = RTensor::new(b.r.unwrap_or(Matrix::zeros(f, n, n)));
                self.push(&b.name, Object::Tensor2 { basis, r }, b.line)
            }
            Some(Kind::Representation) => {
                let (of, algebra) = b.of.clone().ok_or_else(|| err(format!("representation `{}` lacks `of`", b.name)))?;
                let module = b.module.clone().ok_or_else(|| err(format!("representation `{}` lacks `module`", b.name)))?;
                let (n, m) = (algebra.dim(), module.dim());
                let zero = vec![Matrix::zeros(f, m, m); n];
                let rep = Representation::new(algebra, module, b.left.unwrap_or(zero.clone()), b.right.unwrap_or(zero))
                    .map_err(|e| err(e.to_string()))?;
                self.push(&b.name, Object::Representation { of, rep }, b.line)
            }
            Some(Kind::MatchedPair) => {
                let labels = ["first", "second", "on_first", "on_second"];
                let mut names: [String; 4] = Default::default();
                for (i, r) in b.refs.iter().enumerate() {
                    names[i] = r.clone().ok_or_else(|| err(format!("matched_pair `{}` lacks `{}`", b.name, labels[i])))?;
                }
                let a = self.find_algebra(&names[0]).cloned().ok_or_else(|| err(format!("no algebra `{}`", names[0])))?;
                let bb = self.find_algebra(&names[1]).cloned().ok_or_else(|| err(format!("no algebra `{}`", names[1])))?;
                let on_a = self
                    .find_representation(&names[2])
                    .cloned()
                    .ok_or_else(|| err(format!("no representation `{}`", names[2])))?;
                let on_b = self
                    .find_representation(&names[3])
                    .cloned()
                    .ok_or_else(|| err(format!("no representation `{}`", names[3])))?;
                let pair = MatchedPair::new(a, bb, on_b, on_a).map_err(|e| err(e.to_string()))?;
                self.push(&b.name, Object::MatchedPair { names, pair }, b.line)
            }
        }
    }

    fn line(&mut self, block: &mut Block, line: &Line<'_>) -> PResult<()> {
        let f = self.field.expect("field known");
        let words = line.words();
        let (w0_at, w0) = words[0];
        let key = classify(line, &words)?;
        if !allowed(block.kind).contains(&key) {
            let where_ = block.kind.map_or("the implicit block".to_string(), |k| format!("a {} block", k.keyword()));
            return Err(line.error(w0_at, ErrorKind::Syntax, format!("{} lines are not allowed in {where_}", key.label())));
        }
        let once = |block: &mut Block, key: Key, idx: Vec<usize>, what: String| -> PResult<()> {
            if block.seen.insert((key, idx)) {
                Ok(())
            } else {
                Err(line.error(w0_at, ErrorKind::DuplicateEntry, what))
            }
        };
        let basis_of = |block: &Block| -> PResult<Basis> {
            block.basis.clone().ok_or_else(|| line.error(w0_at, ErrorKind::Syntax, "declare `basis` before entries"))
        };
        match key {
            Key::Basis | Key::Module => {
                once(block, key, vec![], format!("second `{w0}` line"))?;
                if words.len() < 2 {
                    return Err(line.error(line.text.len(), ErrorKind::Syntax, "expected at least one basis name"));
                }
                let mut names: Vec<String> = Vec::new();
                for &(at, w) in &words[1..] {
                    if !is_valid_name(w) {
                        return Err(line.error(at, ErrorKind::Syntax, format!("`{w}` is not a valid basis name")));
                    }
                    if names.iter().any(|n| n == w) {
                        return Err(line.error(at, ErrorKind::DuplicateEntry, format!("basis name `{w}` repeated")));
                    }
                    names.push(w.to_string());
                }
                let basis = Basis::new(names).expect("validated");
                if key == Key::Basis {
                    block.basis = Some(basis);
                } else {
                    block.module = Some(basis);
                }
            }
            Key::Claims => {
                for &(at, w) in &words[1..] {
                    let c = Class::parse(w).ok_or_else(|| line.error(at, ErrorKind::Syntax, format!("unknown class `{w}`")))?;
                    if !block.claims.insert(c) {
                        return Err(line.error(at, ErrorKind::DuplicateEntry, format!("class `{w}` claimed twice")));
                    }
                }
            }
            Key::Over | Key::Of | Key::First | Key::Second | Key::OnFirst | Key::OnSecond => {
                once(block, key, vec![], format!("second `{w0}` line"))?;
                if words.len() != 2 {
                    return Err(line.error(w0_at, ErrorKind::Syntax, format!("expected `{w0} NAME`")));
                }
                let (at, target) = words[1];
                match key {
                    Key::Over => {
                        if block.basis.is_some() {
                            return Err(line.error(w0_at, ErrorKind::DuplicateEntry, "basis already declared"));
                        }
                        block.seen.insert((Key::Basis, vec![]));
                        let b = self
                            .find_basis(target)
                            .ok_or_else(|| line.error(at, ErrorKind::Syntax, format!("no earlier object `{target}`")))?;
                        block.basis = Some(b);
                    }
                    Key::Of => {
                        let a = self
                            .find_algebra(target)
                            .ok_or_else(|| line.error(at, ErrorKind::Syntax, format!("no earlier algebra `{target}`")))?;
                        block.of = Some((target.to_string(), a.clone()));
                    }
                    _ => {
                        let slot = match key {
                            Key::First => 0,
                            Key::Second => 1,
                            Key::OnFirst => 2,
                            _ => 3,
                        };
                        block.refs[slot] = Some(target.to_string());
                    }
                }
            }
            Key::Product | Key::Lt | Key::Gt => {
                let basis = basis_of(block)?;
                let eq = line.text.find('=').expect("classified");
                let (i, j) = split_pair(line, 0, eq, key, &basis)?;
                once(block, key, vec![i, j], format!("{} {}{}{} given twice", key.label(), basis.name(i), op_symbol(key), basis.name(j)))?;
                let n = basis.dim();
                let terms = parse_combination(line, eq + 1, line.text.len(), f, &[&basis])?;
                let t = match key {
                    Key::Product => &mut block.product,
                    Key::Lt => &mut block.lt,
                    _ => &mut block.gt,
                }
                .get_or_insert_with(|| Ten3::zeros(f, [n, n, n]));
                for (idx, c) in terms {
                    t.add_at(i, j, idx[0], &c);
                }
            }
            Key::Delta => {
                let basis = basis_of(block)?;
                let eq = line.text.find('=').ok_or_else(|| line.error(line.text.len(), ErrorKind::Syntax, "expected `=`"))?;
                let g = single_name(line, w0_at + 5, eq, &basis)?;
                once(block, key, vec![g], format!("delta {} given twice", basis.name(g)))?;
                let n = basis.dim();
                let terms = parse_combination(line, eq + 1, line.text.len(), f, &[&basis, &basis])?;
                let t = block.delta.get_or_insert_with(|| Ten3::zeros(f, [n, n, n]));
                for (idx, c) in terms {
                    t.add_at(g, idx[0], idx[1], &c);
                }
            }
            Key::Form => {
                let basis = basis_of(block)?;
                let eq = line.text.find('=').ok_or_else(|| line.error(line.text.len(), ErrorKind::Syntax, "expected `=`"))?;
                let comma = line.text[..eq]
                    .find(',')
                    .ok_or_else(|| line.error(w0_at + 4, ErrorKind::Syntax, "expected `form x,y = value`"))?;
                let i = single_name(line, w0_at + 4, comma, &basis)?;
                let j = single_name(line, comma + 1, eq, &basis)?;
                once(block, key, vec![i, j], format!("form {},{} given twice", basis.name(i), basis.name(j)))?;
                let n = basis.dim();
                let terms = parse_combination(line, eq + 1, line.text.len(), f, &[])?;
                let m = block.form.get_or_insert_with(|| Matrix::zeros(f, n, n));
                for (_, c) in terms {
                    m.add_at(i, j, &c);
                }
            }
            Key::R => {
                let basis = basis_of(block)?;
                once(block, key, vec![], "second `r` line".to_string())?;
                let eq = line.text.find('=').expect("classified");
                let n = basis.dim();
                let terms = parse_combination(line, eq + 1, line.text.len(), f, &[&basis, &basis])?;
                let mut m = Matrix::zeros(f, n, n);
                for (idx, c) in terms {
                    m.add_at(idx[0], idx[1], &c);
                }
                block.r = Some(m);
            }
            Key::Action => {
                let (_, algebra) = block
                    .of
                    .clone()
                    .ok_or_else(|| line.error(w0_at, ErrorKind::Syntax, "declare `of` before actions"))?;
                let module = block
                    .module
                    .clone()
                    .ok_or_else(|| line.error(w0_at, ErrorKind::Syntax, "declare `module` before actions"))?;
                let side_left = line.text[w0_at..].starts_with('l');
                let open = w0_at + 1;
                let close = line.text[open..]
                    .find(')')
                    .map(|p| open + p)
                    .ok_or_else(|| line.error(open, ErrorKind::Syntax, "expected `)`"))?;
                let eq = line.text.find('=').ok_or_else(|| line.error(line.text.len(), ErrorKind::Syntax, "expected `=`"))?;
                if eq < close {
                    return Err(line.error(eq, ErrorKind::Syntax, "expected `)` before `=`"));
                }
                let x = single_name(line, open + 1, close, algebra.basis())?;
                let v = single_name(line, close + 1, eq, &module)?;
                let side = if side_left { "l" } else { "r" };
                once(block, key, vec![usize::from(side_left), x, v], format!("{side}({}) {} given twice", algebra.basis().name(x), module.name(v)))?;
                let (n, m) = (algebra.dim(), module.dim());
                let terms = parse_combination(line, eq + 1, line.text.len(), f, &[&module])?;
                let mats = if side_left { &mut block.left } else { &mut block.right }
                    .get_or_insert_with(|| vec![Matrix::zeros(f, m, m); n]);
                for (idx, c) in terms {
                    mats[x].add_at(idx[0], v, &c);
                }
            }
        }
        Ok(())
    }
}

fn op_symbol(key: Key) -> &'static str {
    match key {
        Key::Lt => "<",
        Key::Gt => ">",
        _ => "*",
    }
}

fn classify(line: &Line<'_>, words: &[(usize, &str)]) -> PResult<Key> {
    let (at, w0) = words[0];
    let simple = match w0 {
        "basis" => Some(Key::Basis),
        "claims" => Some(Key::Claims),
        "over" => Some(Key::Over),
        "of" => Some(Key::Of),
        "module" => Some(Key::Module),
        "first" => Some(Key::First),
        "second" => Some(Key::Second),
        "on_first" => Some(Key::OnFirst),
        "on_second" => Some(Key::OnSecond),
        "delta" => Some(Key::Delta),
        "form" => Some(Key::Form),
        _ => None,
    };
    if let Some(k) = simple {
        return Ok(k);
    }
    let rest = &line.text[at..];
    if rest.starts_with("l(") || rest.starts_with("r(") {
        return Ok(Key::Action);
    }
    let Some(eq) = line.text.find('=') else {
        return Err(line.error(at, ErrorKind::Syntax, format!("unknown key `{w0}`")));
    };
    let lhs = line.text[at..eq].trim();
    if lhs == "r" {
        return Ok(Key::R);
    }
    if lhs.contains('<') {
        Ok(Key::Lt)
    } else if lhs.contains('>') {
        Ok(Key::Gt)
    } else if lhs.contains('*') {
        Ok(Key::Product)
    } else {
        Err(line.error(at, ErrorKind::Syntax, format!("unknown key `{lhs}`")))
    }
}

/// One basis name filling the byte range, surrounded by optional whitespace.
fn single_name(line: &Line<'_>, start: usize, end: usize, basis: &Basis) -> PResult<usize> {
    let mut cur = Cursor { line, pos: start, end };
    cur.skip_ws();
    let (at, n) = cur.name().ok_or_else(|| line.error(cur.pos, ErrorKind::Syntax, "expected a basis name"))?;
    if !cur.at_end() {
        return Err(line.error(cur.pos, ErrorKind::Syntax, "unexpected text after basis name"));
    }
    basis
        .index_of(n)
        .ok_or_else(|| line.error(at, ErrorKind::UnknownBasisName, format!("`{n}` is not a basis element")))
}

/// `x OP y` on the left of `=`. For `*` the names themselves may end in `*`,
/// so every split point is tried and exactly one must name two basis elements.
fn split_pair(line: &Line<'_>, start: usize, end: usize, key: Key, basis: &Basis) -> PResult<(usize, usize)> {
    let op = op_symbol(key).chars().next().expect("symbol");
    let text = &line.text[start..end];
    let first = text.find(|c: char| !c.is_whitespace()).map_or(start, |p| start + p);
    if key != Key::Product {
        let p = start + text.find(op).expect("classified");
        return Ok((single_name(line, start, p, basis)?, single_name(line, p + 1, end, basis)?));
    }
    let compact: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).map(|(i, c)| (start + i, c)).collect();
    let s: String = compact.iter().map(|(_, c)| c).collect();
    let mut found = Vec::new();
    for (k, ch) in s.char_indices() {
        if ch != '*' {
            continue;
        }
        if let (Some(i), Some(j)) = (basis.index_of(&s[..k]), basis.index_of(&s[k + 1..])) {
            found.push((i, j));
        }
    }
    match found.len() {
        1 => Ok(found[0]),
        0 => {
            // Point at the first name-like token that is not in the basis.
            let mut cur = Cursor { line, pos: start, end };
            loop {
                cur.skip_ws();
                match cur.name() {
                    Some((at, n)) => {
                        let stripped = n.trim_end_matches('*');
                        let known = (0..=n.len() - stripped.len()).any(|k| basis.index_of(&n[..stripped.len() + k]).is_some());
                        if !known {
                            return Err(line.error(at, ErrorKind::UnknownBasisName, format!("`{stripped}` is not a basis element")));
                        }
                    }
                    None => {
                        if cur.bump().is_none() {
                            break;
                        }
                    }
                }
            }
            Err(line.error(first, ErrorKind::Syntax, "expected `x*y = ...` with basis names x and y"))
        }
        _ => Err(line.error(first, ErrorKind::Syntax, "ambiguous product; separate the factors with spaces")),
    }
}

fn parse_field(line: &Line<'_>, at: usize, s: &str) -> PResult<Field> {
    if s == "Q" {
        return Ok(Field::Rational);
    }
    s.strip_prefix('F')
        .and_then(|p| p.parse::<u64>().ok())
        .and_then(|p| Field::prime(p).ok())
        .ok_or_else(|| line.error(at, ErrorKind::Syntax, format!("`{s}` is not `Q` or `F<prime>`")))
}

pub fn parse(text: &str) -> PResult<AlgebraFile> {
    let mut parser = Parser { field: None, objects: Vec::new() };
    let mut block: Option<Block> = None;
    let mut last_line = 0;
    for (no, raw) in text.lines().enumerate() {
        let text = raw.split('#').next().unwrap_or("");
        let line = Line { no: no + 1, text };
        last_line = no + 1;
        let words = line.words();
        let Some(&(at, w0)) = words.first() else {
            continue;
        };
        if w0 == "field" {
            if parser.field.is_some() {
                return Err(line.error(at, ErrorKind::DuplicateEntry, "second `field` line"));
            }
            if words.len() != 2 {
                return Err(line.error(at, ErrorKind::Syntax, "expected `field Q` or `field F<p>`"));
            }
            parser.field = Some(parse_field(&line, words[1].0, words[1].1)?);
            continue;
        }
        if parser.field.is_none() {
            return Err(line.error(at, ErrorKind::Syntax, "the first line must declare the field"));
        }
        if let Some(kind) = Kind::from_keyword(w0) {
            if words.len() != 2 || !is_valid_name(words[1].1) {
                return Err(line.error(at, ErrorKind::Syntax, format!("expected `{w0} NAME`")));
            }
            if let Some(b) = block.take() {
                parser.finish(b)?;
            }
            block = Some(Block::new(Some(kind), words[1].1.to_string(), no + 1));
            continue;
        }
        let b = block.get_or_insert_with(|| Block::new(None, "main".into(), no + 1));
        parser.line(b, &line)?;
    }
    if parser.field.is_none() {
        return Err(ParseError { line: last_line.max(1), col: 1, kind: ErrorKind::Syntax, message: "missing `field` line".into() });
    }
    if let Some(b) = block.take() {
        parser.finish(b)?;
    }
    Ok(AlgebraFile { field: parser.field.expect("checked"), objects: parser.objects })
}

/// A two-tensor written as a combination of `x^y` terms over a basis.
pub fn parse_tensor2(text: &str, field: Field, basis: &Basis) -> PResult<RTensor> {
    let line = Line { no: 1, text };
    let n = basis.dim();
    let mut m = Matrix::zeros(field, n, n);
    for (idx, c) in parse_combination(&line, 0, text.len(), field, &[basis, basis])? {
        m.add_at(idx[0], idx[1], &c);
    }
    Ok(RTensor::new(m))
}

/// A single exact scalar such as `-3/7`.
pub fn parse_scalar(text: &str, field: Field) -> PResult<Scalar> {
    let line = Line { no: 1, text };
    Ok(parse_combination(&line, 0, text.len(), field, &[])?
        .into_iter()
        .fold(field.zero(), |acc, (_, c)| &acc + &c))
}

/// `v1 = e1 + e2; v2 = 0`: a linear map given on a basis of the source,
/// as a matrix in the column convention.
pub fn parse_map(text: &str, field: Field, source: &Basis, target: &Basis) -> PResult<Matrix> {
    let line = Line { no: 1, text };
    let mut m = Matrix::zeros(field, target.dim(), source.dim());
    let mut seen = BTreeSet::new();
    let mut start = 0;
    for part in text.split(';') {
        let end = start + part.len();
        if !part.trim().is_empty() {
            let eq = part.find('=').map(|p| start + p).ok_or_else(|| line.error(start, ErrorKind::Syntax, "expected `name = value`"))?;
            let v = single_name(&line, start, eq, source)?;
            if !seen.insert(v) {
                return Err(line.error(start, ErrorKind::DuplicateEntry, format!("`{}` mapped twice", source.name(v))));
            }
            for (idx, c) in parse_combination(&line, eq + 1, end, field, &[target])? {
                m.add_at(idx[0], v, &c);
            }
        }
        start = end + 1;
    }
    Ok(m)
}

// ---------------------------------------------------------------- output

/// `1/2 e1 - e2`; `0` when empty. Coefficients of ±1 are omitted.
pub fn format_combination(terms: &[(String, Scalar)]) -> String {
    let mut s = String::new();
    for (label, c) in terms.iter().filter(|(_, c)| !c.is_zero()) {
        let neg = c.is_negative_literal();
        let abs = if neg { -c } else { c.clone() };
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if label.is_empty() {
            s.push_str(&abs.to_string());
        } else if abs.is_one() {
            s.push_str(label);
        } else {
            s.push_str(&format!("{abs} {label}"));
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

fn vector_terms(v: &[Scalar], basis: &Basis) -> Vec<(String, Scalar)> {
    v.iter().enumerate().map(|(i, c)| (basis.name(i).to_string(), c.clone())).collect()
}

fn matrix_terms(m: &Matrix, basis: &Basis, sep: &str) -> Vec<(String, Scalar)> {
    let mut out = Vec::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out.push((format!("{}{sep}{}", basis.name(i), basis.name(j)), m.get(i, j).clone()));
        }
    }
    out
}

/// Product lines `x * y = ...`, nonzero products only.
pub fn product_lines(c: &Ten3, basis: &Basis, op: &str) -> Vec<String> {
    let n = basis.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let v = c.fiber(i, j);
            if v.iter().any(|x| !x.is_zero()) {
                out.push(format!("{} {op} {} = {}", basis.name(i), basis.name(j), format_combination(&vector_terms(v, basis))));
            }
        }
    }
    out
}

pub fn coproduct_lines(c: &Coalgebra) -> Vec<String> {
    let basis = c.basis();
    (0..c.dim())
        .filter_map(|g| {
            let m = c.delta_basis(g);
            (!m.is_zero()).then(|| format!("delta {} = {}", basis.name(g), format_combination(&matrix_terms(&m, basis, "."))))
        })
        .collect()
}

pub fn tensor_line(r: &Matrix, basis: &Basis) -> String {
    format!("r = {}", format_combination(&matrix_terms(r, basis, "^")))
}

fn basis_line(key: &str, b: &Basis) -> String {
    format!("{key} {}", b.names().join(" "))
}

/// Canonical text: explicit headers, nonzero entries only, row-major order.
pub fn serialize(file: &AlgebraFile) -> String {
    let mut lines = vec![format!("field {}", file.field)];
    for Named { name, object } in &file.objects {
        lines.push(format!("{} {name}", object.kind().keyword()));
        match object {
            Object::Algebra(a) => {
                lines.push(basis_line("basis", a.basis()));
                if !a.claims().is_empty() {
                    let c: Vec<&str> = a.claims().iter().map(Class::name).collect();
                    lines.push(format!("claims {}", c.join(" ")));
                }
                lines.extend(product_lines(a.consts(), a.basis(), "*"));
            }
            Object::Coalgebra(c) => {
                lines.push(basis_line("basis", c.basis()));
                lines.extend(coproduct_lines(c));
            }
            Object::PreNovikov(p) => {
                lines.push(basis_line("basis", p.basis()));
                lines.extend(product_lines(p.left_consts(), p.basis(), "<"));
                lines.extend(product_lines(p.right_consts(), p.basis(), ">"));
            }
            Object::Representation { of, rep } => {
                lines.push(format!("of {of}"));
                lines.push(basis_line("module", rep.module()));
                let ab = rep.algebra().basis();
                for (side, mats) in [("l", rep.l_mats()), ("r", rep.r_mats())] {
                    for (x, mat) in mats.iter().enumerate() {
                        for v in 0..rep.module_dim() {
                            let col = mat.column(v);
                            if col.iter().any(|c| !c.is_zero()) {
                                lines.push(format!(
                                    "{side}({}) {} = {}",
                                    ab.name(x),
                                    rep.module().name(v),
                                    format_combination(&vector_terms(&col, rep.module()))
                                ));
                            }
                        }
                    }
                }
            }
            Object::BilinearForm { basis, form } => {
                lines.push(basis_line("basis", basis));
                for i in 0..basis.dim() {
                    for j in 0..basis.dim() {
                        let v = form.get(i, j);
                        if !v.is_zero() {
                            lines.push(format!("form {},{} = {v}", basis.name(i), basis.name(j)));
                        }
                    }
                }
            }
            Object::Tensor2 { basis, r } => {
                lines.push(basis_line("basis", basis));
                lines.push(tensor_line(r.matrix(), basis));
            }
            Object::MatchedPair { names, .. } => {
                for (k, n) in ["first", "second", "on_first", "on_second"].iter().zip(names) {
                    lines.push(format!("{k} {n}"));
                }
            }
        }
    }
    let mut s = lines.join("\n");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    const NOVIKOV_2D: &str = "field Q\nbasis e1 e2\ne1*e1 = e1\ne2*e1 = e2\ndelta e1 = -3/7 e2.e2\n";

    #[test]
    fn implicit_block() {
        let f = parse(NOVIKOV_2D).unwrap();
        assert_eq!(f.field, Field::Rational);
        assert_eq!(f.algebra(None).unwrap(), &novikov_2d(Field::Rational));
        let lambda = Field::Rational.fraction(&BigInt::from(-3), &BigInt::from(7)).unwrap();
        assert_eq!(f.coalgebra(None).unwrap(), &novikov_2d_coproduct(Field::Rational, &lambda));
    }

    #[test]
    fn empty_product_section_is_the_zero_algebra() {
        let f = parse("field F5\nalgebra A\nbasis x y\n").unwrap();
        let a = f.algebra(Some("A")).unwrap();
        assert_eq!(a, &Algebra::zero(Field::prime(5).unwrap(), Basis::new(["x", "y"]).unwrap()));
    }

    #[test]
    fn unknown_basis_name_has_position() {
        let e = parse("field Q\nbasis e1 e2\ne1*e3 = e1\n").unwrap_err();
        assert_eq!((e.line, e.col, e.kind), (3, 4, ErrorKind::UnknownBasisName));
        let e = parse("field Q\nbasis e1 e2\ne1*e2 = e1 + 2 e7\n").unwrap_err();
        assert_eq!((e.line, e.col, e.kind), (3, 16, ErrorKind::UnknownBasisName));
    }

    #[test]
    fn error_kinds() {
        let cases = [
            ("basis e\n", 1, ErrorKind::Syntax),
            ("field Q\nbasis e\ne*e = e\ne*e = 2 e\n", 4, ErrorKind::DuplicateEntry),
            ("field F5\nbasis e\ne*e = 1/5 e\n", 3, ErrorKind::FieldMismatch),
            ("field Q\nbasis e\nfoo = 1\n", 3, ErrorKind::Syntax),
            ("field Q\nalgebra A\nbasis e\ndelta e = e.e\n", 4, ErrorKind::Syntax),
            ("field Q\nbasis e e\n", 2, ErrorKind::DuplicateEntry),
            ("field Q\nbasis e\ne*e = e +\n", 3, ErrorKind::Syntax),
            ("field Q\nbasis e\ne*e = 2 e e\n", 3, ErrorKind::Syntax),
            ("field F4\n", 1, ErrorKind::Syntax),
            ("field Q\nalgebra A\nbasis e\nalgebra A\nbasis f\n", 4, ErrorKind::DuplicateEntry),
            ("field Q\nrepresentation R\nof A\n", 3, ErrorKind::Syntax),
        ];
        for (text, line, kind) in cases {
            let e = parse(text).unwrap_err();
            assert_eq!((e.line, e.kind), (line, kind), "{text:?}: {e}");
        }
    }

    #[test]
    fn starred_names_in_products() {
        let text = "field Q\nbasis e e*\ne*e = e\ne*e* = -e*\ne**e = e*\n";
        let f = parse(text).unwrap();
        let (a, _) = pre_novikov_lift_2d_with_r(Field::Rational);
        assert_eq!(f.algebra(None).unwrap(), &a);
        let e = parse("field Q\nbasis a a* *\n").unwrap_err();
        assert_eq!(e.kind, ErrorKind::Syntax);
    }

    #[test]
    fn every_kind_round_trips() {
        let text = "\
field Q
algebra A
basis e1 e2
claims novikov
e1 * e1 = e1
e2 * e1 = e2
coalgebra D
basis e1 e2
delta e1 = 1/2 e2.e2
pre_novikov P
basis e
e < e = e
representation R
of A
module v1 v2
l(e1) v1 = v1 - 2 v2
r(e2) v2 = 1/3 v1
bilinear_form w
basis e1 e2
form e1,e2 = 1
form e2,e1 = -1
tensor2 t
basis e1 e2
r = e1^e2 - e2^e1
algebra B
basis f
representation onB
of A
module f
representation onA
of B
module e1 e2
matched_pair M
first A
second B
on_first onA
on_second onB
";
        let f = parse(text).unwrap();
        assert_eq!(serialize(&f), text);
        assert_eq!(parse(&serialize(&f)).unwrap(), f);
        let rep = f.representation(Some("R")).unwrap();
        assert_eq!(rep.l_mats()[0].get(1, 0), &Field::Rational.from_i64(-2));
        let (_, r) = f.tensor(None).unwrap();
        assert!(r.is_skewsymmetric());
        assert!(f.matched_pair(None).is_ok());
    }

    #[test]
    fn over_reuses_a_basis() {
        let f = parse("field F7\nalgebra A\nbasis a b\ntensor2 r\nover A\nr = a^b - 3 b^a\n").unwrap();
        let (basis, r) = f.tensor(Some("r")).unwrap();
        assert_eq!(basis.names(), ["a", "b"]);
        assert_eq!(r.matrix().get(1, 0), &Field::prime(7).unwrap().from_i64(-3));
    }

    #[test]
    fn lookup_rules() {
        let f = parse("field Q\nalgebra A\nbasis a\nalgebra B\nbasis b\n").unwrap();
        assert_eq!(f.algebra(None), Err(LookupError::Ambiguous("algebra")));
        assert!(f.algebra(Some("B")).is_ok());
        assert!(matches!(f.coalgebra(None), Err(LookupError::None(_))));
    }

    #[test]
    fn tensor_and_map_strings() {
        let sv = schrodinger_virasoro_with_r(Field::Rational);
        let r = parse_tensor2("b^c - c^b", Field::Rational, sv.0.basis()).unwrap();
        assert_eq!(r, sv.1);
        let src = Basis::new(["v"]).unwrap();
        let m = parse_map("v = 2 b + c", Field::Rational, &src, sv.0.basis()).unwrap();
        assert_eq!(m.column(0), vec![Field::Rational.zero(), Field::Rational.from_i64(2), Field::Rational.one()]);
        assert!(parse_tensor2("0", Field::Rational, sv.0.basis()).unwrap().matrix().is_zero());
        assert!(parse_tensor2("b^d", Field::Rational, sv.0.basis()).is_err());
    }

    #[test]
    fn combination_formatting() {
        let q = Field::Rational;
        let half = q.fraction(&BigInt::from(1), &BigInt::from(2)).unwrap();
        let terms = vec![("e1".to_string(), -half.clone()), ("e2".into(), q.one()), ("e3".into(), q.from_i64(-1))];
        assert_eq!(format_combination(&terms), "-1/2 e1 + e2 - e3");
        assert_eq!(format_combination(&[]), "0");
    }

    mod props {
        use super::*;
        use crate::sampling::random_algebra;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(32))]
            #[test]
            fn algebras_round_trip(seed in 0u64..10_000, dim in 1usize..4, p in prop::sample::select(vec![0u64, 2, 5, 7])) {
                let f = if p == 0 { Field::Rational } else { Field::prime(p).unwrap() };
                let a = random_algebra(f, dim, seed, 0.4);
                let file = AlgebraFile { field: f, objects: vec![Named { name: "A".into(), object: Object::Algebra(a) }] };
                let text = serialize(&file);
                let back = parse(&text).unwrap();
                prop_assert_eq!(&back, &file);
                prop_assert_eq!(serialize(&back), text);
            }
        }
    }
}
