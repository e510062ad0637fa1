//! Tropical polynomials: parsing, evaluation, hypersurface membership, and
//! the streamed minors of a matrix of indeterminates.
//!
//! Grammar: `(+)` is tropical addition, `*` (or juxtaposition) tropical
//! multiplication, `^` tropical exponentiation by a nonnegative integer.
//! Variables are single letters (`X`, `Y`) or matrix-entry indeterminates
//! `X_{i,j}`; rational constants use the same forms as the matrix format.
//! A polynomial evaluates to the minimum over its monomials of
//! `coeff + sum(exponent * binding)`.

use std::collections::BTreeMap;
use std::fmt;
use std::rc::Rc;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::io::{format_rational, parse_rational};
use crate::matrix::{SubIndex, TropMatrix};
use crate::scalar::Scalar;
use crate::Mode;

/// A polynomial variable: a plain name or a matrix-entry indeterminate.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    Named(String),
    /// `X_{i,j}`, 1-based.
    Entry(usize, usize),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Named(s) => write!(f, "{s}"),
            Var::Entry(i, j) => write!(f, "X_{{{i},{j}}}"),
        }
    }
}

/// One tropical monomial: an additive coefficient and exponent map.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Monomial<S> {
    pub coeff: S,
    pub exponents: BTreeMap<Var, u32>,
}

impl<S: Scalar> Monomial<S> {
    pub fn constant(coeff: S) -> Self {
        Monomial { coeff, exponents: BTreeMap::new() }
    }

    fn value_at(&self, point: &Point<S>) -> Result<S> {
        let mut total = self.coeff.clone();
        for (var, &exp) in &self.exponents {
            let bound = point
                .get(var)
                .ok_or_else(|| Error::MissingVariable(var.to_string()))?;
            total = total + S::from_int(i64::from(exp)) * bound.clone();
        }
        Ok(total)
    }
}

impl<S: Scalar> fmt::Display for Monomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return write!(f, "{}", format_rational(&self.coeff));
        }
        let mut parts = Vec::new();
        if !self.coeff.is_zero() {
            parts.push(format_rational(&self.coeff));
        }
        for (var, &exp) in &self.exponents {
            if exp == 1 {
                parts.push(var.to_string());
            } else {
                parts.push(format!("{var}^{exp}"));
            }
        }
        write!(f, "{}", parts.join("*"))
    }
}

/// A tropical polynomial in canonical form: monomials sorted by exponent map,
/// duplicate exponent maps min-merged, at least one monomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TropPoly<S> {
    monomials: Vec<Monomial<S>>,
}

impl<S: Scalar> TropPoly<S> {
    pub fn new(monomials: Vec<Monomial<S>>) -> Result<Self> {
        if monomials.is_empty() {
            return Err(Error::EmptySelection);
        }
        let mut merged: BTreeMap<BTreeMap<Var, u32>, S> = BTreeMap::new();
        for m in monomials {
            merged
                .entry(m.exponents)
                .and_modify(|c| {
                    if m.coeff < *c {
                        *c = m.coeff.clone();
                    }
                })
                .or_insert(m.coeff);
        }
        Ok(TropPoly {
            monomials: merged
                .into_iter()
                .map(|(exponents, coeff)| Monomial { coeff, exponents })
                .collect(),
        })
    }

    pub fn monomials(&self) -> &[Monomial<S>] {
        &self.monomials
    }

    /// Minimum value over monomials together with all attaining indices.
    pub fn eval(&self, point: &Point<S>) -> Result<(S, Vec<usize>)> {
        let mut best: Option<S> = None;
        let mut argmin: Vec<usize> = Vec::new();
        for (k, m) in self.monomials.iter().enumerate() {
            let v = m.value_at(point)?;
            match &best {
                Some(b) if v > *b => {}
                Some(b) if v == *b => argmin.push(k),
                _ => {
                    best = Some(v);
                    argmin = vec![k];
                }
            }
        }
        Ok((best.expect("polynomials are nonempty"), argmin))
    }

    /// Whether `point` lies on the double-min locus: at least two monomials
    /// are minimal there.
    pub fn in_hypersurface(&self, point: &Point<S>) -> Result<bool> {
        Ok(self.eval(point)?.1.len() >= 2)
    }
}

impl<S: Scalar> fmt::Display for TropPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.monomials.iter().map(|m| m.to_string()).collect();
        write!(f, "{}", parts.join(" (+) "))
    }
}

/// A point binding variables to exact values.
#[derive(Clone, Debug, Default)]
pub struct Point<S> {
    bindings: BTreeMap<Var, S>,
}

impl<S: Scalar> Point<S> {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, S)>) -> Self {
        Point { bindings: pairs.into_iter().collect() }
    }

    /// Binds the plane coordinates `X` and `Y`.
    pub fn xy(x: S, y: S) -> Self {
        Self::from_pairs([
            (Var::Named("X".into()), x),
            (Var::Named("Y".into()), y),
        ])
    }

    /// Binds every entry indeterminate of `a`: `X_{i,j} -> a(i,j)`.
    pub fn from_matrix(a: &TropMatrix<S>) -> Self {
        Point {
            bindings: a
                .indexed_entries()
                .map(|(i, j, v)| (Var::Entry(i, j), v.clone()))
                .collect(),
        }
    }

    pub fn get(&self, var: &Var) -> Option<&S> {
        self.bindings.get(var)
    }
}

// ---------------------------------------------------------------------------
// Parsing

#[derive(Debug, PartialEq)]
enum Token {
    Plus,
    Star,
    Caret,
    Number(String),
    Var(Var),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let bytes: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut pos = 0;
    let syntax = |pos: usize, message: String| Error::Parse {
        line: 1,
        message: format!("at position {}: {message}", pos + 1),
    };
    while pos < bytes.len() {
        let c = bytes[pos];
        if c.is_whitespace() {
            pos += 1;
        } else if c == '(' {
            if bytes.get(pos + 1) == Some(&'+') && bytes.get(pos + 2) == Some(&')') {
                tokens.push((pos, Token::Plus));
                pos += 3;
            } else {
                return Err(syntax(pos, "expected `(+)`".into()));
            }
        } else if c == '*' {
            tokens.push((pos, Token::Star));
            pos += 1;
        } else if c == '^' {
            tokens.push((pos, Token::Caret));
            pos += 1;
        } else if c.is_ascii_digit() || c == '-' {
            let start = pos;
            pos += 1;
            while pos < bytes.len()
                && (bytes[pos].is_ascii_digit() || bytes[pos] == '/' || bytes[pos] == '.')
            {
                pos += 1;
            }
            let literal: String = bytes[start..pos].iter().collect();
            tokens.push((start, Token::Number(literal)));
        } else if c.is_ascii_alphabetic() {
            let start = pos;
            pos += 1;
            if bytes.get(pos) == Some(&'_') {
                if bytes.get(pos + 1) != Some(&'{') {
                    return Err(syntax(pos, "expected `{` after `_`".into()));
                }
                pos += 2;
                let read_int = |pos: &mut usize| -> Result<usize> {
                    let s = *pos;
                    while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                        *pos += 1;
                    }
                    bytes[s..*pos]
                        .iter()
                        .collect::<String>()
                        .parse::<usize>()
                        .ok()
                        .filter(|&v| v >= 1)
                        .ok_or_else(|| syntax(s, "expected a positive index".into()))
                };
                let i = read_int(&mut pos)?;
                if bytes.get(pos) != Some(&',') {
                    return Err(syntax(pos, "expected `,` in subscript".into()));
                }
                pos += 1;
                let j = read_int(&mut pos)?;
                if bytes.get(pos) != Some(&'}') {
                    return Err(syntax(pos, "expected `}` closing subscript".into()));
                }
                pos += 1;
                if c != 'X' {
                    return Err(syntax(start, "entry variables are written X_{i,j}".into()));
                }
                tokens.push((start, Token::Var(Var::Entry(i, j))));
            } else {
                tokens.push((start, Token::Var(Var::Named(c.to_string()))));
            }
        } else {
            return Err(syntax(pos, format!("unexpected character `{c}`")));
        }
    }
    Ok(tokens)
}

/// Parses the polynomial grammar.
pub fn parse_poly<S: Scalar>(text: &str) -> Result<TropPoly<S>> {
    let tokens = tokenize(text)?;
    let syntax = |pos: usize, message: &str| Error::Parse {
        line: 1,
        message: format!("at position {}: {message}", pos + 1),
    };
    let mut monomials = Vec::new();
    for group in tokens.split(|(_, t)| *t == Token::Plus) {
        let last_pos = group.last().map_or(0, |(p, _)| *p);
        let mut coeff = S::zero();
        let mut exponents: BTreeMap<Var, u32> = BTreeMap::new();
        let mut saw_factor = false;
        let mut k = 0;
        while k < group.len() {
            match &group[k] {
                (_, Token::Star) => {
                    if !saw_factor {
                        return Err(syntax(group[k].0, "`*` needs a left factor"));
                    }
                    k += 1;
                }
                (pos, Token::Number(lit)) => {
                    let r = parse_rational(lit)
                        .ok_or_else(|| syntax(*pos, "bad rational literal"))?;
                    let v = S::from_big_rational(&r)
                        .ok_or_else(|| syntax(*pos, "literal does not fit the scalar"))?;
                    coeff = coeff + v;
                    saw_factor = true;
                    k += 1;
                }
                (pos, Token::Var(var)) => {
                    let mut exp = 1u32;
                    if matches!(group.get(k + 1), Some((_, Token::Caret))) {
                        match group.get(k + 2) {
                            Some((p, Token::Number(lit))) => {
                                exp = lit.parse::<u32>().map_err(|_| {
                                    syntax(*p, "exponents are nonnegative integers")
                                })?;
                                k += 2;
                            }
                            _ => return Err(syntax(*pos, "`^` needs an integer exponent")),
                        }
                    }
                    if exp > 0 {
                        *exponents.entry(var.clone()).or_insert(0) += exp;
                    }
                    saw_factor = true;
                    k += 1;
                }
                (pos, Token::Caret) => return Err(syntax(*pos, "`^` must follow a variable")),
                (pos, Token::Plus) => return Err(syntax(*pos, "unexpected `(+)`")),
            }
        }
        if !saw_factor {
            return Err(syntax(last_pos, "empty monomial"));
        }
        monomials.push(Monomial { coeff, exponents });
    }
    TropPoly::new(monomials)
}

// ---------------------------------------------------------------------------
// Minors of a matrix of indeterminates

fn minor_poly<S: Scalar>(rows: &[usize], cols: &[usize], mode: Mode) -> TropPoly<S> {
    let r = rows.len();
    let monomials = (0..r)
        .permutations(r)
        .map(|perm| {
            let mut exponents: BTreeMap<Var, u32> = BTreeMap::new();
            for (t, &p) in perm.iter().enumerate() {
                let (mut i, mut j) = (rows[t], cols[p]);
                if mode == Mode::Symmetric && i > j {
                    std::mem::swap(&mut i, &mut j);
                }
                *exponents.entry(Var::Entry(i, j)).or_insert(0) += 1;
            }
            Monomial { coeff: S::zero(), exponents }
        })
        .collect();
    TropPoly::new(monomials).expect("r >= 1 yields at least one monomial")
}

/// Streams the `r x r` minors of an `m x n` matrix of indeterminates in
/// lexicographic (row set, then column set) order. Symmetric mode requires
/// `m == n` and quotients monomials by `X_{i,j} = X_{j,i}`.
///
/// The stream is lazy; nothing is materialized beyond one polynomial.
pub fn generate_minors<S: Scalar>(
    m: usize,
    n: usize,
    r: usize,
    mode: Mode,
) -> Result<impl Iterator<Item = (SubIndex, TropPoly<S>)>> {
    if r < 1 || r > m.min(n) {
        return Err(Error::InvalidMinorSize { r, max: m.min(n) });
    }
    if mode == Mode::Symmetric && m != n {
        return Err(Error::NotSquare { rows: m, cols: n });
    }
    let col_sets: Rc<Vec<Vec<usize>>> = Rc::new((1..=n).combinations(r).collect());
    Ok((1..=m).combinations(r).flat_map(move |rows| {
        let col_sets = Rc::clone(&col_sets);
        (0..col_sets.len()).map(move |k| {
            let cols = col_sets[k].clone();
            let poly = minor_poly(&rows, &cols, mode);
            let s = SubIndex::new(rows.clone(), cols).expect("combinations are valid");
            (s, poly)
        })
    }))
}

/// The first `r x r` minor whose hypersurface misses `a`, in stream order, or
/// `None` when `a` lies on every one.
pub fn first_failing_minor<S: Scalar>(
    a: &TropMatrix<S>,
    r: usize,
    mode: Mode,
) -> Result<Option<SubIndex>> {
    if mode == Mode::Symmetric {
        a.ensure_symmetric()?;
    }
    let point = Point::from_matrix(a);
    for (s, poly) in generate_minors::<S>(a.rows(), a.cols(), r, mode)? {
        if !poly.in_hypersurface(&point)? {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// Prevariety membership decided through the minor polynomials themselves;
/// an independent cross-check of [`crate::rank::in_prevariety`].
pub fn membership_via_minors<S: Scalar>(
    a: &TropMatrix<S>,
    r: usize,
    mode: Mode,
) -> Result<bool> {
    Ok(first_failing_minor(a, r, mode)?.is_none())
}
