//! Line-oriented code files.
//!
//! ```text
//! # comment
//! field p=2 m=2 modulus=1,1,1
//! length 5
//! kind additive
//! rows:
//! 1,0 0,1 0,1 1,0 0,0
//! ```
//!
//! Additive rows are `n` space-separated `a,b` pairs, linear rows are `n`
//! integers. A linear file may give `poly: c0,c1,...` instead of rows to
//! describe the cyclic code generated by that polynomial. `kind fp-span`
//! holds words over the field that are only closed under F_p-linear
//! combinations.

use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::additive::{AdditiveCode, SymplecticVector};
use crate::error::CodeError;
use crate::field::{FieldError, FieldSpec};
use crate::linalg::{self, Matrix, PrimeField};
use crate::linear::LinearCode;
use crate::poly::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error("expected {0}")]
    Expected(&'static str),
    #[error("unknown kind `{0}`")]
    UnknownKind(String),
    #[error("malformed number `{0}`")]
    Number(String),
    #[error("symbol {value} out of range for q = {q}")]
    SymbolOutOfRange { value: u32, q: u32 },
    #[error("row has {found} entries, expected {expected}")]
    RowLength { expected: usize, found: usize },
    #[error("`poly:` is only allowed for linear codes without rows")]
    MisplacedPoly,
    #[error("unexpected end of file, expected {0}")]
    Eof(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Additive,
    Linear,
    FpSpan,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Additive => "additive",
            Kind::Linear => "linear",
            Kind::FpSpan => "fp-span",
        }
    }
}

/// F_p-span of words over `field`, stored row-reduced over F_p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpSpan {
    pub field: Arc<FieldSpec>,
    pub n: usize,
    pub rows: Matrix,
}

impl FpSpan {
    pub fn new(field: Arc<FieldSpec>, n: usize, rows: &[Vec<u32>]) -> Self {
        let m = field.degree() as usize;
        let mut digits: Matrix = rows.iter().map(|r| r.iter().flat_map(|&x| field.coefficients(x)).collect()).collect();
        linalg::rref(&PrimeField::new(field.characteristic()), &mut digits);
        let rows = digits.iter().map(|d| d.chunks(m).map(|c| field.from_coefficients(c)).collect()).collect();
        FpSpan { field, n, rows }
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodeFile {
    Additive(AdditiveCode),
    Linear(LinearCode),
    FpSpan(FpSpan),
}

impl CodeFile {
    pub fn kind(&self) -> Kind {
        match self {
            CodeFile::Additive(_) => Kind::Additive,
            CodeFile::Linear(_) => Kind::Linear,
            CodeFile::FpSpan(_) => Kind::FpSpan,
        }
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        match self {
            CodeFile::Additive(c) => c.field(),
            CodeFile::Linear(c) => c.field(),
            CodeFile::FpSpan(c) => &c.field,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            CodeFile::Additive(c) => c.len(),
            CodeFile::Linear(c) => c.len(),
            CodeFile::FpSpan(c) => c.n,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A parsed file with any non-fatal warnings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parsed {
    pub code: CodeFile,
    pub warnings: Vec<String>,
}

struct Lines<'a> {
    inner: std::iter::Peekable<Box<dyn Iterator<Item = (usize, &'a str)> + 'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let it: Box<dyn Iterator<Item = (usize, &'a str)> + 'a> = Box::new(
            text.lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
                .filter(|(_, l)| !l.is_empty()),
        );
        Lines { inner: it.peekable(), last: 0 }
    }

    fn next(&mut self, what: &'static str) -> Result<(usize, &'a str), ParseError> {
        match self.inner.next() {
            Some((n, l)) => {
                self.last = n;
                Ok((n, l))
            }
            None => Err(ParseError { line: self.last + 1, kind: ParseErrorKind::Eof(what) }),
        }
    }
}

fn err(line: usize, kind: impl Into<ParseErrorKind>) -> ParseError {
    ParseError { line, kind: kind.into() }
}

fn number(line: usize, s: &str, q: u32) -> Result<u32, ParseError> {
    let value: u32 = s.parse().map_err(|_| err(line, ParseErrorKind::Number(s.to_string())))?;
    if value >= q {
        return Err(err(line, ParseErrorKind::SymbolOutOfRange { value, q }));
    }
    Ok(value)
}

fn keyword<'a>(line: usize, text: &'a str, key: &'static str) -> Result<&'a str, ParseError> {
    text.strip_prefix(key)
        .filter(|rest| rest.starts_with(char::is_whitespace))
        .map(str::trim)
        .ok_or_else(|| err(line, ParseErrorKind::Expected(key)))
}

pub fn parse_code_file(text: &str) -> Result<Parsed, ParseError> {
    let mut lines = Lines::new(text);
    let (ln, header) = lines.next("field header")?;
    let field = FieldSpec::parse_header(header).map_err(|e| err(ln, e))?;
    let q = field.order();

    let (ln, l) = lines.next("length")?;
    let n_text = keyword(ln, l, "length")?;
    let n: usize = n_text.parse().map_err(|_| err(ln, ParseErrorKind::Number(n_text.to_string())))?;

    let (ln, l) = lines.next("kind")?;
    let kind = match keyword(ln, l, "kind")? {
        "additive" => Kind::Additive,
        "linear" => Kind::Linear,
        "fp-span" => Kind::FpSpan,
        other => return Err(err(ln, ParseErrorKind::UnknownKind(other.to_string()))),
    };

    let (ln, l) = lines.next("rows: or poly:")?;
    if let Some(rest) = l.strip_prefix("poly:") {
        if kind != Kind::Linear {
            return Err(err(ln, ParseErrorKind::MisplacedPoly));
        }
        let coeffs = rest.split(',').map(|c| number(ln, c.trim(), q)).collect::<Result<Vec<u32>, _>>()?;
        if let Some((extra, _)) = lines.inner.next() {
            return Err(err(extra, ParseErrorKind::MisplacedPoly));
        }
        let code = LinearCode::cyclic(field, &Polynomial::new(coeffs), n).map_err(|e| err(ln, e))?;
        return Ok(Parsed { code: CodeFile::Linear(code), warnings: Vec::new() });
    }
    if l != "rows:" {
        return Err(err(ln, ParseErrorKind::Expected("rows:")));
    }

    let mut rows: Vec<(usize, Vec<u32>, Vec<u32>)> = Vec::new();
    for (ln, l) in lines.inner.by_ref() {
        if l.starts_with("poly:") {
            return Err(err(ln, ParseErrorKind::MisplacedPoly));
        }
        let entries: Vec<&str> = l.split_whitespace().collect();
        if entries.len() != n {
            return Err(err(ln, ParseErrorKind::RowLength { expected: n, found: entries.len() }));
        }
        let (mut a, mut b) = (Vec::with_capacity(n), Vec::with_capacity(n));
        for e in entries {
            if kind == Kind::Additive {
                let (x, z) = e.split_once(',').ok_or_else(|| err(ln, ParseErrorKind::Expected("a,b pair")))?;
                a.push(number(ln, x, q)?);
                b.push(number(ln, z, q)?);
            } else {
                a.push(number(ln, e, q)?);
            }
        }
        rows.push((ln, a, b));
    }

    let given = rows.len();
    let mut warnings = Vec::new();
    let (code, rank) = match kind {
        Kind::Additive => {
            let gens = rows
                .into_iter()
                .map(|(ln, a, b)| SymplecticVector::new(a, b).map_err(|e| err(ln, e)))
                .collect::<Result<Vec<_>, _>>()?;
            let code = AdditiveCode::new(field, n, &gens).map_err(|e| err(ln, e))?;
            let rank = code.kappa();
            (CodeFile::Additive(code), rank)
        }
        Kind::Linear => {
            let code = LinearCode::new(field, n, rows.into_iter().map(|r| r.1).collect()).map_err(|e| err(ln, e))?;
            let rank = code.dimension();
            (CodeFile::Linear(code), rank)
        }
        Kind::FpSpan => {
            let words: Matrix = rows.into_iter().map(|r| r.1).collect();
            let span = FpSpan::new(field, n, &words);
            let rank = span.dimension();
            (CodeFile::FpSpan(span), rank)
        }
    };
    if rank < given {
        warnings.push(format!("{} dependent rows dropped: {given} given, rank {rank}", given - rank));
    }
    Ok(Parsed { code, warnings })
}

pub fn emit_additive(code: &AdditiveCode) -> String {
    let mut s = preamble(code.field(), code.len(), Kind::Additive);
    for g in code.generators() {
        let _ = writeln!(s, "{g}");
    }
    s
}

pub fn emit_linear(code: &LinearCode) -> String {
    emit_rows(code.field(), code.len(), Kind::Linear, code.generator_matrix())
}

pub fn emit_fp_span(span: &FpSpan) -> String {
    emit_rows(&span.field, span.n, Kind::FpSpan, &span.rows)
}

pub fn emit(code: &CodeFile) -> String {
    match code {
        CodeFile::Additive(c) => emit_additive(c),
        CodeFile::Linear(c) => emit_linear(c),
        CodeFile::FpSpan(c) => emit_fp_span(c),
    }
}

fn preamble(field: &FieldSpec, n: usize, kind: Kind) -> String {
    format!("{}\nlength {n}\nkind {}\nrows:\n", field.header(), kind.name())
}

fn emit_rows(field: &FieldSpec, n: usize, kind: Kind, rows: &Matrix) -> String {
    let mut s = preamble(field, n, kind);
    for r in rows {
        let line: Vec<String> = r.iter().map(u32::to_string).collect();
        let _ = writeln!(s, "{}", line.join(" "));
    }
    s
}
