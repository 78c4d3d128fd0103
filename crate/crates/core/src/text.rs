//! Text formats: polynomials, matrix files, cubic files, line arguments and cover graphs.
//!
//! Polynomial grammar, whitespace insignificant, `#` starts a comment running to the end of
//! the line:
//!
//! ```text
//! poly   := sign? term (('+' | '-') term)*
//! term   := coeff ('*' factor)* | factor ('*' factor)*
//! factor := var ('^' nat)?
//! coeff  := int ('/' posint)?
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::cover::CoverGraph;
use crate::determinantal::{SymmetricMatrixRep, ENTRY_LABELS};
use crate::error::{Error, ParseError, Result};
use crate::geometry::{ProjLine, ProjPoint};
use crate::poly::{Alphabet, Monomial, Poly};
use crate::scalar::{Domain, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number `{n}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
}

impl Lexer {
    fn new(src: &str, line0: usize, col0: usize) -> std::result::Result<Self, ParseError> {
        let mut toks = Vec::new();
        let mut line = line0;
        let mut col = col0;
        let chars: Vec<char> = src.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (l, cl) = (line, col);
            if c == '\n' {
                line += 1;
                col = 1;
                i += 1;
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
            if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                col += i - start;
                toks.push((Tok::Int(digits.parse().expect("ascii digits")), l, cl));
                continue;
            }
            if c.is_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                col += i - start;
                toks.push((Tok::Ident(chars[start..i].iter().collect()), l, cl));
                continue;
            }
            let tok = match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                _ => return Err(ParseError::new(l, cl, format!("unexpected character `{c}`"))),
            };
            toks.push((tok, l, cl));
            i += 1;
            col += 1;
        }
        toks.push((Tok::End, line, col));
        Ok(Lexer { toks })
    }
}

struct Parser<'a> {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    alphabet: &'a Alphabet,
    domain: &'a Domain,
}

type PResult<T> = std::result::Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn here(&self) -> (usize, usize) {
        let (_, l, c) = &self.toks[self.pos];
        (*l, *c)
    }

    fn error<T>(&self, message: impl Into<String>) -> PResult<T> {
        let (l, c) = self.here();
        Err(ParseError::new(l, c, message))
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn poly(&mut self) -> PResult<Poly> {
        let mut terms: Vec<(Monomial, Scalar)> = Vec::new();
        let mut negative = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        loop {
            let (m, c) = self.term()?;
            terms.push((m, if negative { c.neg() } else { c }));
            match self.peek() {
                Tok::Plus => negative = false,
                Tok::Minus => negative = true,
                Tok::End => break,
                t => return self.error(format!("expected `+`, `-` or end of input, found {}", t.describe())),
            }
            self.bump();
        }
        Ok(Poly::from_terms(self.alphabet, self.domain, terms).expect("terms built over the target"))
    }

    fn term(&mut self) -> PResult<(Monomial, Scalar)> {
        let mut exps = vec![0u32; self.alphabet.len()];
        let coeff = match self.peek() {
            Tok::Int(_) => {
                let c = self.coeff()?;
                if *self.peek() != Tok::Star {
                    return Ok((Monomial::new(exps), c));
                }
                self.bump();
                c
            }
            Tok::Ident(_) => self.domain.one(),
            t => return self.error(format!("expected a coefficient or variable, found {}", t.describe())),
        };
        loop {
            self.factor(&mut exps)?;
            if *self.peek() != Tok::Star {
                break;
            }
            self.bump();
        }
        Ok((Monomial::new(exps), coeff))
    }

    fn coeff(&mut self) -> PResult<Scalar> {
        let (l, c) = self.here();
        let Tok::Int(num) = self.bump() else { unreachable!("caller checked") };
        let mut value = BigRational::from_integer(num);
        if *self.peek() == Tok::Slash {
            self.bump();
            let (dl, dc) = self.here();
            match self.bump() {
                Tok::Int(d) if d.is_zero() => return Err(ParseError::new(dl, dc, "zero denominator")),
                Tok::Int(d) => value /= BigRational::from_integer(d),
                t => return Err(ParseError::new(dl, dc, format!("expected a denominator, found {}", t.describe()))),
            }
        }
        self.domain.from_rational(&value).map_err(|_| {
            ParseError::new(l, c, format!("coefficient {value} has a denominator not invertible in {}", self.domain))
        })
    }

    fn factor(&mut self, exps: &mut [u32]) -> PResult<()> {
        let (l, c) = self.here();
        let name = match self.bump() {
            Tok::Ident(name) => name,
            t => return Err(ParseError::new(l, c, format!("expected a variable, found {}", t.describe()))),
        };
        let idx = self
            .alphabet
            .index_of(&name)
            .map_err(|_| ParseError::new(l, c, format!("unknown variable `{name}` (alphabet {})", self.alphabet)))?;
        let mut e = 1u32;
        if *self.peek() == Tok::Caret {
            self.bump();
            let (el, ec) = self.here();
            match self.bump() {
                Tok::Int(n) => {
                    e = u32::try_from(&n).map_err(|_| ParseError::new(el, ec, "exponent too large"))?;
                }
                t => return Err(ParseError::new(el, ec, format!("expected an exponent, found {}", t.describe()))),
            }
        }
        exps[idx] = exps[idx]
            .checked_add(e)
            .ok_or_else(|| ParseError::new(l, c, "exponent too large"))?;
        Ok(())
    }
}

fn parse_poly_at(src: &str, alphabet: &Alphabet, domain: &Domain, line: usize, col: usize) -> PResult<Poly> {
    let lexer = Lexer::new(src, line, col)?;
    let mut parser = Parser { toks: lexer.toks, pos: 0, alphabet, domain };
    if *parser.peek() == Tok::End {
        return parser.error("empty polynomial");
    }
    parser.poly()
}

/// Parses a polynomial over `domain` in the variables of `alphabet`.
pub fn parse_poly(src: &str, alphabet: &Alphabet, domain: &Domain) -> Result<Poly> {
    Ok(parse_poly_at(src, alphabet, domain, 1, 1)?)
}

/// Parses a matrix file: six lines `l1:`, `l2:`, `l3:`, `q1:`, `q2:`, `f:`, each followed by a
/// form in `x, y, z` of degree 1, 1, 1, 2, 2, 3. Blank lines and `#` comments are ignored.
pub fn parse_matrix_file(src: &str, domain: &Domain) -> Result<SymmetricMatrixRep> {
    let alphabet = Alphabet::plane();
    let degrees = [1u32, 1, 1, 2, 2, 3];
    let mut entries: [Option<Poly>; 6] = Default::default();
    let mut last_line = 1;
    for (i, raw) in src.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let indent = content.len() - content.trim_start().len();
        let Some(colon) = content.find(':') else {
            return Err(ParseError::new(line, indent + 1, "expected `<label>: <polynomial>`").into());
        };
        let label = content[..colon].trim();
        let Some(slot) = ENTRY_LABELS.iter().position(|&l| l == label) else {
            return Err(ParseError::new(
                line,
                indent + 1,
                format!("unknown label `{label}` (expected one of l1, l2, l3, q1, q2, f)"),
            )
            .into());
        };
        if entries[slot].is_some() {
            return Err(ParseError::new(line, indent + 1, format!("duplicate entry `{label}`")).into());
        }
        let body = &content[colon + 1..];
        let body_col = raw[..colon + 1].chars().count() + 1;
        let first_col = body_col + body.chars().take_while(|c| c.is_whitespace()).count();
        let poly = parse_poly_at(body, &alphabet, domain, line, body_col)?;
        if !poly.is_homogeneous_of(degrees[slot]) {
            return Err(ParseError::new(
                line,
                first_col,
                format!("entry `{label}` must be a form of degree {}, found {poly}", degrees[slot]),
            )
            .into());
        }
        entries[slot] = Some(poly);
    }
    if let Some(missing) = entries.iter().position(Option::is_none) {
        return Err(ParseError::new(last_line, 1, format!("missing entry `{}`", ENTRY_LABELS[missing])).into());
    }
    let [l1, l2, l3, q1, q2, f] = entries.map(|e| e.expect("checked above"));
    SymmetricMatrixRep::new(l1, l2, l3, q1, q2, f)
}

/// Canonical matrix file text for `a`.
pub fn format_matrix(a: &SymmetricMatrixRep) -> String {
    a.labeled_entries().iter().map(|(label, p, _)| format!("{label}: {p}\n")).collect()
}

/// Parses a cubic form in `x, y, z, w, t`; the text may span several lines.
pub fn parse_cubic_file(src: &str, domain: &Domain) -> Result<Poly> {
    let poly = parse_poly(src, &Alphabet::p4(), domain)?;
    if !poly.is_zero() && !poly.is_homogeneous_of(3) {
        return Err(Error::WrongDegree { what: poly.to_string(), expected: 3 });
    }
    Ok(poly)
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

fn parse_coords(src: &str, n: usize, domain: &Domain, col0: usize) -> Result<ProjPoint> {
    let mut coords = Vec::new();
    let mut col = col0;
    for entry in src.split(',') {
        let start = col + entry.chars().take_while(|c| c.is_whitespace()).count();
        let r = parse_rational(entry)
            .ok_or_else(|| ParseError::new(1, start, format!("expected a number, found `{}`", entry.trim())))?;
        coords.push(
            domain
                .from_rational(&r)
                .map_err(|_| ParseError::new(1, start, format!("coordinate {r} is not defined over {domain}")))?,
        );
        col += entry.chars().count() + 1;
    }
    if coords.len() != n {
        return Err(ParseError::new(1, col0, format!("expected {n} coordinates, found {}", coords.len())).into());
    }
    if coords.iter().all(Scalar::is_zero) {
        return Err(ParseError::new(1, col0, "the zero vector is not a point").into());
    }
    ProjPoint::new(coords)
}

/// Parses comma-separated homogeneous coordinates `a0,...,an` of a point of `P^n`.
pub fn parse_point(src: &str, n: usize, domain: &Domain) -> Result<ProjPoint> {
    parse_coords(src, n + 1, domain, 1)
}

/// Parses `a0,...,a4;b0,...,b4`, the line in `P^4` spanned by two points.
pub fn parse_line_arg(src: &str, domain: &Domain) -> Result<ProjLine> {
    let parts: Vec<&str> = src.split(';').collect();
    if parts.len() != 2 {
        return Err(ParseError::new(1, 1, format!("expected two points separated by `;`, found {}", parts.len())).into());
    }
    let a = parse_coords(parts[0], 5, domain, 1)?;
    let b = parse_coords(parts[1], 5, domain, parts[0].chars().count() + 2)?;
    ProjLine::new(a, b)
}

/// Parses the JSON dual-graph format `{"components":[{"id":..,"genus":..}],"edges":[[i,j]]}`.
pub fn parse_cover_graph(src: &str) -> Result<CoverGraph> {
    serde_json::from_str(src).map_err(|e| ParseError::new(e.line(), e.column(), e.to_string()).into())
}

/// Parses `rational`, `QQ` or `fp:<p>`.
pub fn parse_field(src: &str) -> Result<Domain> {
    let s = src.trim();
    if s.eq_ignore_ascii_case("rational") || s == "QQ" {
        return Ok(Domain::Rational);
    }
    if let Some(p) = s.strip_prefix("fp:") {
        let p: u64 = p
            .parse()
            .map_err(|_| Error::InvalidField(format!("`{p}` is not a prime number")))?;
        return Domain::prime(p);
    }
    Err(Error::InvalidField(format!("`{s}`: expected `rational` or `fp:<p>`")))
}
