//! Textual syntax for polynomial-coefficient forms.
//!
//! The grammar (whitespace-insensitive between tokens):
//!
//! ```text
//! form   := term (('+'|'-') term)*
//! term   := coef basis? | basis
//! coef   := factor ('*' factor)*
//! factor := RATIONAL | VAR ('^' UINT)?
//! basis  := 'dx' UINT ('^' 'dx' UINT)*
//! VAR    := 'x' UINT          RATIONAL := INT ('/' UINT)?
//! ```
//!
//! `"3/2*x1^2*x2 dx1^dx3"` is (3/2)·x₁²x₂·dx₁∧dx₃. A bare coefficient is a
//! 0-form; repeated basis indices contribute zero; out-of-order indices are
//! sign-normalized. All terms of one expression must share a degree — graded
//! sums are not a `Form` (they live in the bar module).
//!
//! [`format_form`] prints the canonical text: terms in lexicographic basis
//! order, monomials in exponent order, coefficients in lowest terms. Parsing
//! the canonical text reproduces the form exactly. A zero form of positive
//! degree p ≤ n prints as `"0 dx1^…^dxp"` so that even zero forms round-trip
//! with their degree intact.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::forms::{Form, Polynomial, Rational};

/// Syntax or validation error, with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    fn at(offset: usize, message: impl Into<String>) -> Self {
        ParseError { offset, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.offset, self.message)
    }
}

impl core::error::Error for ParseError {}

/// Parse a form expression over ℝⁿ.
pub fn parse_form(text: &str, n: usize) -> Result<Form, ParseError> {
    if n == 0 {
        return Err(ParseError::at(0, "dimension must be at least 1"));
    }
    let mut s = Scanner { bytes: text.as_bytes(), pos: 0 };
    s.skip_ws();
    let mut form: Option<Form> = None;
    let mut negate = false;
    loop {
        let term_start = s.pos;
        let (coeff, indices) = parse_term(&mut s, n)?;
        let degree = indices.len();
        if degree > n {
            return Err(ParseError::at(
                term_start,
                format!("term degree {degree} exceeds dimension {n}"),
            ));
        }
        let acc = match form.take() {
            None => Form::zero(n, degree),
            Some(f) if f.degree() != degree => {
                return Err(ParseError::at(
                    term_start,
                    format!(
                        "mixed degrees: earlier terms have degree {}, this term has degree {degree}",
                        f.degree()
                    ),
                ));
            }
            Some(f) => f,
        };
        let signed = if negate { coeff.neg() } else { coeff };
        form = Some(
            acc.with_term(&indices, signed)
                .expect("indices and dimension validated during parsing"),
        );
        s.skip_ws();
        match s.peek() {
            None => break,
            Some(b'+') => {
                s.pos += 1;
                negate = false;
            }
            Some(b'-') => {
                s.pos += 1;
                negate = true;
            }
            Some(_) => return Err(s.err("expected '+', '-', or end of input")),
        }
        s.skip_ws();
    }
    Ok(form.expect("loop parses at least one term"))
}

struct Scanner<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError::at(self.pos, message)
    }

    /// True when the upcoming token is a basis factor `dx…`.
    fn at_basis(&self) -> bool {
        self.peek() == Some(b'd')
    }

    fn eat_str(&mut self, s: &str) -> bool {
        if self.bytes[self.pos..].starts_with(s.as_bytes()) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    /// Unsigned integer literal at the current position (no leading-ws skip).
    fn uint(&mut self) -> Result<(u64, usize), ParseError> {
        let start = self.pos;
        let mut value: u64 = 0;
        let mut any = false;
        while let Some(b @ b'0'..=b'9') = self.peek() {
            any = true;
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add((b - b'0') as u64))
                .ok_or_else(|| ParseError::at(start, "number too large"))?;
            self.pos += 1;
        }
        if !any {
            return Err(self.err("expected a number"));
        }
        Ok((value, start))
    }
}

fn parse_term(s: &mut Scanner, n: usize) -> Result<(Polynomial, Vec<usize>), ParseError> {
    let coeff = if s.at_basis() {
        Polynomial::constant(n, Rational::one())
    } else {
        parse_coef(s, n)?
    };
    let save = s.pos;
    s.skip_ws();
    let indices = if s.at_basis() {
        parse_basis(s, n)?
    } else {
        s.pos = save;
        Vec::new()
    };
    Ok((coeff, indices))
}

fn parse_coef(s: &mut Scanner, n: usize) -> Result<Polynomial, ParseError> {
    let mut acc = parse_factor(s, n)?;
    loop {
        let save = s.pos;
        s.skip_ws();
        if s.peek() == Some(b'*') {
            s.pos += 1;
            s.skip_ws();
            acc = acc.mul(&parse_factor(s, n)?);
        } else {
            s.pos = save;
            return Ok(acc);
        }
    }
}

fn parse_factor(s: &mut Scanner, n: usize) -> Result<Polynomial, ParseError> {
    match s.peek() {
        Some(b'-') | Some(b'0'..=b'9') => parse_rational(s).map(|c| Polynomial::constant(n, c)),
        Some(b'x') => parse_variable_power(s, n),
        _ => Err(s.err("expected a coefficient factor (rational or x<i>)")),
    }
}

fn parse_rational(s: &mut Scanner) -> Result<Rational, ParseError> {
    let negative = s.eat_str("-");
    let (numer, _) = s.uint()?;
    let mut denom: u64 = 1;
    // a fraction slash binds tightly: no whitespace inside the literal
    if s.peek() == Some(b'/') {
        s.pos += 1;
        let (d, d_start) = s.uint()?;
        if d == 0 {
            return Err(ParseError::at(d_start, "denominator must be nonzero"));
        }
        denom = d;
    }
    let mut num = BigInt::from(numer);
    if negative {
        num = -num;
    }
    Ok(Rational::new(num, BigInt::from(denom)))
}

fn parse_variable_power(s: &mut Scanner, n: usize) -> Result<Polynomial, ParseError> {
    debug_assert_eq!(s.peek(), Some(b'x'));
    s.pos += 1;
    let idx = parse_index(s, n)?;
    let save = s.pos;
    s.skip_ws();
    let exp: u32 = if s.peek() == Some(b'^') {
        s.pos += 1;
        s.skip_ws();
        let (e, e_start) = s.uint()?;
        u32::try_from(e).map_err(|_| ParseError::at(e_start, "exponent too large"))?
    } else {
        s.pos = save;
        1
    };
    let mut exps = Vec::new();
    exps.resize(n, 0u32);
    exps[idx - 1] = exp;
    Ok(Polynomial::monomial(n, exps, Rational::one()))
}

fn parse_basis(s: &mut Scanner, n: usize) -> Result<Vec<usize>, ParseError> {
    let mut indices = Vec::new();
    indices.push(parse_basis_factor(s, n)?);
    loop {
        let save = s.pos;
        s.skip_ws();
        if s.peek() == Some(b'^') {
            s.pos += 1;
            s.skip_ws();
            indices.push(parse_basis_factor(s, n)?);
        } else {
            s.pos = save;
            return Ok(indices);
        }
    }
}

fn parse_basis_factor(s: &mut Scanner, n: usize) -> Result<usize, ParseError> {
    if !s.eat_str("dx") {
        return Err(s.err("expected 'dx'"));
    }
    parse_index(s, n)
}

/// 1-based coordinate index with range validation.
fn parse_index(s: &mut Scanner, n: usize) -> Result<usize, ParseError> {
    let (idx, start) = s.uint()?;
    if idx == 0 {
        return Err(ParseError::at(start, "coordinate index must be at least 1"));
    }
    if idx > n as u64 {
        return Err(ParseError::at(
            start,
            format!("coordinate index {idx} out of range 1..={n}"),
        ));
    }
    Ok(idx as usize)
}

// ---------------------------------------------------------------------------
// Canonical printer
// ---------------------------------------------------------------------------

/// Print the canonical text for a form; `parse_form(format_form(ω), n) == ω`.
pub fn format_form(form: &Form) -> String {
    if form.is_zero() {
        let p = form.degree();
        if p == 0 || p > form.dimension() {
            return String::from("0");
        }
        // encode the degree so the zero p-form round-trips as a p-form
        let mut out = String::from("0 ");
        push_basis(&mut out, &(1..=p).collect::<Vec<_>>());
        return out;
    }
    let mut out = String::new();
    let mut first = true;
    for (key, poly) in form.terms() {
        for (exps, coeff) in poly.terms() {
            push_monomial(&mut out, first, coeff, exps, key);
            first = false;
        }
    }
    out
}

fn push_monomial(out: &mut String, first: bool, coeff: &Rational, exps: &[u32], key: &[usize]) {
    let negative = coeff.is_negative();
    let magnitude = coeff.abs();
    if first {
        if negative {
            out.push('-');
        }
    } else if negative {
        out.push_str(" - ");
    } else {
        out.push_str(" + ");
    }

    let mut vars = String::new();
    for (i, &e) in exps.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !vars.is_empty() {
            vars.push('*');
        }
        vars.push_str(&format!("x{}", i + 1));
        if e > 1 {
            vars.push_str(&format!("^{e}"));
        }
    }

    let unit = magnitude.is_one();
    match (vars.is_empty(), key.is_empty()) {
        (true, true) => out.push_str(&format!("{magnitude}")),
        (true, false) => {
            if unit {
                // a leading '-' cannot attach to a bare basis term; spell the 1
                if first && negative {
                    out.push_str("1 ");
                }
            } else {
                out.push_str(&format!("{magnitude} "));
            }
            push_basis(out, key);
        }
        (false, _) => {
            if unit {
                if first && negative {
                    out.push_str("1*");
                }
            } else {
                out.push_str(&format!("{magnitude}*"));
            }
            out.push_str(&vars);
            if !key.is_empty() {
                out.push(' ');
                push_basis(out, key);
            }
        }
    }
}

fn push_basis(out: &mut String, key: &[usize]) {
    for (a, &k) in key.iter().enumerate() {
        if a > 0 {
            out.push('^');
        }
        out.push_str(&format!("dx{k}"));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::FormsError;
    use alloc::vec;

    fn int(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn parses_bare_basis() {
        let f = parse_form("dx1", 2).unwrap();
        assert_eq!(f, Form::basis(2, &[1]).unwrap());
    }

    #[test]
    fn parses_coefficient_and_wedge() {
        let f = parse_form("3/2*x1^2*x2 dx1^dx3", 3).unwrap();
        let coeff = Polynomial::monomial(3, vec![2, 1, 0], Rational::new(3.into(), 2.into()));
        assert_eq!(f, Form::zero(3, 2).with_term(&[1, 3], coeff).unwrap());
    }

    #[test]
    fn sign_normalizes_out_of_order_indices() {
        let f = parse_form("dx2^dx1", 2).unwrap();
        assert_eq!(f, Form::basis(2, &[1, 2]).unwrap().neg());
    }

    #[test]
    fn repeated_index_is_zero() {
        let f = parse_form("dx1^dx1", 2).unwrap();
        assert!(f.is_zero());
        assert_eq!(f.degree(), 2);
    }

    #[test]
    fn bare_coefficient_is_a_function() {
        let f = parse_form("2*x2 - 1/3", 2).unwrap();
        let expected = Form::from_polynomial(
            Polynomial::monomial(2, vec![0, 1], int(2))
                .add(&Polynomial::constant(2, Rational::new((-1).into(), 3.into()))),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn sums_accumulate_per_key() {
        let f = parse_form("dx1 + 2 dx1 - dx2", 2).unwrap();
        let expected = Form::zero(2, 1)
            .with_term(&[1], Polynomial::constant(2, int(3)))
            .unwrap()
            .with_term(&[2], Polynomial::constant(2, int(-1)))
            .unwrap();
        assert_eq!(f, expected);
    }

    #[test]
    fn rejects_mixed_degrees_with_offset() {
        let err = parse_form("x1*x2 dx1^dx3 - 2 dx2", 3).unwrap_err();
        assert!(err.message.contains("mixed degrees"), "{}", err.message);
        assert_eq!(err.offset, 16); // start of the offending term "2 dx2"
    }

    #[test]
    fn rejects_out_of_range_index_with_offset() {
        let err = parse_form("dx5", 3).unwrap_err();
        assert_eq!(err.offset, 2);
        assert!(err.message.contains("out of range"));
        let err = parse_form("x0 dx1", 3).unwrap_err();
        assert_eq!(err.offset, 1);
    }

    #[test]
    fn rejects_trailing_operator() {
        let err = parse_form("x1 +", 2).unwrap_err();
        assert_eq!(err.offset, 4);
    }

    #[test]
    fn rejects_degree_above_dimension() {
        let err = parse_form("dx1^dx1^dx1", 2).unwrap_err();
        assert!(err.message.contains("degree"), "{}", err.message);
    }

    #[test]
    fn rejects_zero_denominator() {
        let err = parse_form("1/0 dx1", 2).unwrap_err();
        assert_eq!(err.offset, 2);
        assert!(err.message.contains("denominator"));
    }

    #[test]
    fn rejects_garbage_between_terms() {
        let err = parse_form("x1 x2", 2).unwrap_err();
        assert_eq!(err.offset, 3);
        assert!(err.message.contains("expected '+'"));
    }

    #[test]
    fn format_examples() {
        assert_eq!(format_form(&Form::basis(2, &[1, 2]).unwrap().neg()), "-1 dx1^dx2");
        assert_eq!(format_form(&Form::zero(2, 0)), "0");
        let f = Form::zero(2, 1)
            .with_term(&[2], Polynomial::monomial(2, vec![1, 0], int(1)))
            .unwrap();
        assert_eq!(format_form(&f), "x1 dx2");
    }

    #[test]
    fn format_zero_form_keeps_degree() {
        let z = Form::zero(3, 2);
        assert_eq!(format_form(&z), "0 dx1^dx2");
        assert_eq!(parse_form(&format_form(&z), 3).unwrap(), z);
    }

    #[test]
    fn canonical_text_round_trips_exactly() {
        let f = parse_form("-1*x1 dx1^dx2 + 5/4 dx2^dx3 - x3^2*x1 dx1^dx3", 3).unwrap();
        let text = format_form(&f);
        assert_eq!(parse_form(&text, 3).unwrap(), f);
        // and the canonical text is a fixed point of parse∘format
        assert_eq!(format_form(&parse_form(&text, 3).unwrap()), text);
    }

    #[test]
    fn with_term_rejects_what_parser_rejects() {
        // the parser leans on Form::with_term for normalization; spot-check
        // that its validation matches the parser's own
        assert_eq!(
            Form::zero(2, 1).with_term(&[5], Polynomial::constant(2, int(1))),
            Err(FormsError::IndexOutOfRange { index: 5, dimension: 2 })
        );
    }
}
