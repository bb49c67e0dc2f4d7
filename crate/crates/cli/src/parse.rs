//! Text syntax for classes, words, lagrangians, matrices and extended
//! elements.
//!
//! Words are sequences of items separated by optional whitespace. An item is
//! an atom with an optional power suffix `^k`:
//!
//! - `m1`..`mg`, `l1`..`lg`: standard basis classes
//! - `[a1,..,ag;b1,..,bg]`: the class Σ aᵢmᵢ + Σ bᵢℓᵢ
//! - `0`: the zero class
//! - `( word )`: a parenthesised subword
//!
//! `x^k` repeats `x` k times and `x^-k` repeats its inverse. The printed form
//! of a [`TwistWord`] only uses single letters and `^-1`, and parses back to
//! the same word.

use std::sync::Arc;

use extmcg::exact::IntMatrix;
use extmcg::extension::{ExtendedElement, ExtensionContext, ExtensionError};
use extmcg::mcg::{CurveClass, MappingClass, McgError, TwistWord};
use extmcg::symplectic::{Lagrangian, SymplecticError, SymplecticSpace};
use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected {found}, expected {expected}")]
    Unexpected { found: String, expected: &'static str },
    #[error("index {index} is outside 1..={genus}")]
    IndexOutOfRange { index: usize, genus: usize },
    #[error("class has {found} coordinates on one side, genus is {genus}")]
    WrongLength { found: usize, genus: usize },
    #[error("matrix row has {found} entries, expected {expected}")]
    WrongRowLength { found: usize, expected: usize },
    #[error("matrix has {found} rows, expected {expected}")]
    WrongRowCount { found: usize, expected: usize },
    #[error("number out of range")]
    NumberOutOfRange,
    #[error(transparent)]
    Mcg(#[from] McgError),
    #[error(transparent)]
    Symplectic(#[from] SymplecticError),
    #[error(transparent)]
    Extension(#[from] ExtensionError),
}

/// A syntax or validation error at a character offset of the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at position {position}: {kind}")]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

/// Reads characters; positions are character offsets, not bytes.
struct Cursor {
    chars: Vec<char>,
    at: usize,
}

impl Cursor {
    fn new(text: &str) -> Self {
        Cursor {
            chars: text.chars().collect(),
            at: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.at += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).copied()
    }

    fn position(&self) -> usize {
        self.at
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.at += 1;
        }
        c
    }

    fn error_at(&self, position: usize, kind: impl Into<ParseErrorKind>) -> ParseError {
        ParseError {
            position,
            kind: kind.into(),
        }
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        let found = match self.peek() {
            Some(c) => format!("{c:?}"),
            None => "end of input".to_string(),
        };
        self.error_at(self.position(), ParseErrorKind::Unexpected { found, expected })
    }

    fn expect(&mut self, c: char, expected: &'static str) -> Result<(), ParseError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.at += 1;
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.at += 1;
        }
        s
    }

    fn signed_integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let negative = match self.peek() {
            Some('-') => {
                self.at += 1;
                true
            }
            Some('+') => {
                self.at += 1;
                false
            }
            _ => false,
        };
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.unexpected("an integer"));
        }
        let n: BigInt = digits.parse().expect("ascii digits");
        Ok(if negative { -n } else { n })
    }

    fn small_integer(&mut self) -> Result<i64, ParseError> {
        let start = self.position();
        let n = self.signed_integer()?;
        i64::try_from(n).map_err(|_| self.error_at(start, ParseErrorKind::NumberOutOfRange))
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.peek().is_none()
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }
}

/// Parses a class atom: `mK`, `lK`, `0` or a bracketed coordinate vector.
fn class_atom(cur: &mut Cursor, space: SymplecticSpace, permissive: bool) -> Result<CurveClass, ParseError> {
    cur.skip_ws();
    let start = cur.position();
    let g = space.genus();
    match cur.peek() {
        Some(side @ ('m' | 'l')) => {
            cur.bump();
            let digits = cur.digits();
            if digits.is_empty() {
                return Err(cur.unexpected("a curve index"));
            }
            let index: usize = digits
                .parse()
                .map_err(|_| cur.error_at(start, ParseErrorKind::NumberOutOfRange))?;
            if index == 0 || index > g {
                return Err(cur.error_at(start, ParseErrorKind::IndexOutOfRange { index, genus: g }));
            }
            Ok(if side == 'm' {
                CurveClass::meridian(space, index)
            } else {
                CurveClass::longitude(space, index)
            })
        }
        Some('0') => {
            cur.bump();
            if cur.peek().is_some_and(|c| c.is_ascii_digit()) {
                return Err(cur.unexpected("a separator after 0"));
            }
            Ok(CurveClass::zero(space))
        }
        Some('[') => {
            cur.bump();
            let a = integer_list(cur)?;
            cur.expect(';', "';'")?;
            let b = integer_list(cur)?;
            cur.expect(']', "']'")?;
            for side in [&a, &b] {
                if side.len() != g {
                    return Err(cur.error_at(
                        start,
                        ParseErrorKind::WrongLength {
                            found: side.len(),
                            genus: g,
                        },
                    ));
                }
            }
            let coords = a.into_iter().chain(b).collect();
            CurveClass::new(space, coords, permissive).map_err(|e| cur.error_at(start, e))
        }
        _ => Err(cur.unexpected("a class (mK, lK, 0 or [..;..])")),
    }
}

/// Comma separated integers; stops before the first other character.
fn integer_list(cur: &mut Cursor) -> Result<Vec<BigInt>, ParseError> {
    let mut out = vec![cur.signed_integer()?];
    loop {
        cur.skip_ws();
        if cur.peek() != Some(',') {
            return Ok(out);
        }
        cur.bump();
        out.push(cur.signed_integer()?);
    }
}

fn power_suffix(cur: &mut Cursor) -> Result<i64, ParseError> {
    cur.skip_ws();
    if cur.peek() != Some('^') {
        return Ok(1);
    }
    cur.bump();
    cur.small_integer()
}

/// Parses items until end of input or a closing parenthesis.
fn word_items(
    cur: &mut Cursor,
    space: SymplecticSpace,
    permissive: bool,
    depth: usize,
) -> Result<TwistWord, ParseError> {
    let mut word = TwistWord::empty(space);
    loop {
        cur.skip_ws();
        let start = cur.position();
        let item = match cur.peek() {
            None => break,
            Some(')') if depth > 0 => break,
            Some('(') => {
                cur.bump();
                let inner = word_items(cur, space, permissive, depth + 1)?;
                cur.expect(')', "')'")?;
                inner
            }
            Some(_) => {
                let class = class_atom(cur, space, permissive)?;
                TwistWord::positive(space, &[class]).map_err(|e| cur.error_at(start, e))?
            }
        };
        let k = power_suffix(cur)?;
        word = word.concat(&item.power(k)).map_err(|e| cur.error_at(start, e))?;
    }
    Ok(word)
}

/// Parses a twist word on a surface of the given genus.
///
/// Non-primitive nonzero classes are rejected unless `permissive` is set.
pub fn parse_word(text: &str, space: SymplecticSpace, permissive: bool) -> Result<TwistWord, ParseError> {
    let mut cur = Cursor::new(text);
    let word = word_items(&mut cur, space, permissive, 0)?;
    cur.finish()?;
    Ok(word)
}

/// Parses a single class atom.
pub fn parse_class(text: &str, space: SymplecticSpace, permissive: bool) -> Result<CurveClass, ParseError> {
    let mut cur = Cursor::new(text);
    let class = class_atom(&mut cur, space, permissive)?;
    cur.finish()?;
    Ok(class)
}

/// `std` for ⟨m₁..m_g⟩, otherwise a whitespace separated list of class
/// atoms spanning a lagrangian. The vectors need not be primitive.
pub fn parse_lagrangian(text: &str, space: SymplecticSpace) -> Result<Lagrangian, ParseError> {
    if text.trim() == "std" {
        return Ok(space.standard_lagrangian());
    }
    let mut cur = Cursor::new(text);
    let mut vectors = Vec::new();
    while !cur.at_end() {
        vectors.push(class_atom(&mut cur, space, true)?.coords().to_vec());
        cur.skip_ws();
        if cur.peek() == Some(',') {
            cur.bump();
        }
    }
    Lagrangian::from_integer_vectors(space, &vectors).map_err(|e| cur.error_at(0, e))
}

/// A 2g × 2g integer matrix written row by row: `1,1;0,1`.
pub fn parse_matrix(text: &str, space: SymplecticSpace) -> Result<MappingClass, ParseError> {
    let mut cur = Cursor::new(text);
    let n = space.dim();
    let mut rows = Vec::new();
    loop {
        cur.skip_ws();
        let start = cur.position();
        let row = integer_list(&mut cur)?;
        if row.len() != n {
            return Err(cur.error_at(
                start,
                ParseErrorKind::WrongRowLength {
                    found: row.len(),
                    expected: n,
                },
            ));
        }
        rows.push(row);
        if cur.at_end() {
            break;
        }
        cur.expect(';', "';' or the end of the matrix")?;
    }
    if rows.len() != n {
        return Err(cur.error_at(
            0,
            ParseErrorKind::WrongRowCount {
                found: rows.len(),
                expected: n,
            },
        ));
    }
    let m = IntMatrix::from_fn(n, n, |i, j| rows[i][j].clone());
    MappingClass::new(space, m).map_err(|e| cur.error_at(0, e))
}

/// Either a word, lifted letter by letter, or `word @ n` for the pair
/// (D(word), n).
pub fn parse_element(
    text: &str,
    context: &Arc<ExtensionContext>,
    permissive: bool,
) -> Result<ExtendedElement, ParseError> {
    let space = *context.space();
    match text.find('@') {
        None => {
            let w = parse_word(text, space, permissive)?;
            context.word_lift(&w).map_err(|e| ParseError {
                position: 0,
                kind: e.into(),
            })
        }
        Some(at) => {
            let w = parse_word(&text[..at], space, permissive)?;
            let offset = text[..=at].chars().count();
            let mut cur = Cursor::new(&text[at + 1..]);
            let n = cur.small_integer().map_err(|e| shifted(e, offset))?;
            cur.finish().map_err(|e| shifted(e, offset))?;
            context
                .element(MappingClass::word_action(&w), n)
                .map_err(|e| ParseError {
                    position: 0,
                    kind: e.into(),
                })
        }
    }
}

fn shifted(e: ParseError, offset: usize) -> ParseError {
    ParseError {
        position: e.position + offset,
        ..e
    }
}
