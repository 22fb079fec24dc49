use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exterior::Monomial;
use crate::linalg::Rational;

/// One term `c·f∂ⱼ` of a vector-field combination; `j` is 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldTerm {
    pub coeff: Rational,
    pub mono: Monomial,
    pub j: usize,
}

/// Human-readable identity of a basis vector.
///
/// Text forms: `x1x2*d3`, `d3`, `x1*d1 - x2*d2`, `2*x1*d1 + d4`, `H(x1x2)`,
/// `-H(x1x3)`, `C`, `[z]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BasisDesc {
    /// `f∂ⱼ`.
    VectorField { mono: Monomial, j: usize },
    /// Linear combination of vector fields, e.g. a divergence-free element.
    Combination(Vec<FieldTerm>),
    /// `±D_H(f)`.
    Ham { mono: Monomial, negated: bool },
    /// The grading operator `𝒞 = Σ xᵢ∂ᵢ`.
    GradingElement,
    /// Abstract element with no vector-field realization.
    Symbol(String),
}

impl BasisDesc {
    pub fn field(mono: Monomial, j: usize) -> Self {
        BasisDesc::VectorField { mono, j }
    }

    /// Terms as a list, or `None` for descriptors that are not written as
    /// explicit vector-field combinations.
    pub fn field_terms(&self) -> Option<Vec<FieldTerm>> {
        match self {
            BasisDesc::VectorField { mono, j } => Some(vec![FieldTerm { coeff: Rational::one(), mono: *mono, j: *j }]),
            BasisDesc::Combination(t) => Some(t.clone()),
            _ => None,
        }
    }

    /// Collapses one-term unit combinations to `VectorField`.
    pub fn from_terms(terms: Vec<FieldTerm>) -> Self {
        if let [t] = terms.as_slice() {
            if t.coeff.is_one() {
                return BasisDesc::field(t.mono, t.j);
            }
        }
        BasisDesc::Combination(terms)
    }
}

fn write_field(f: &mut fmt::Formatter<'_>, mono: Monomial, j: usize) -> fmt::Result {
    if mono == Monomial::ONE {
        write!(f, "d{j}")
    } else {
        write!(f, "{mono}*d{j}")
    }
}

impl fmt::Display for BasisDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisDesc::VectorField { mono, j } => write_field(f, *mono, *j),
            BasisDesc::Combination(terms) => {
                if terms.is_empty() {
                    return f.write_str("0");
                }
                for (k, t) in terms.iter().enumerate() {
                    let neg = t.coeff.is_negative();
                    match (k, neg) {
                        (0, true) => f.write_str("-")?,
                        (0, false) => {}
                        (_, true) => f.write_str(" - ")?,
                        (_, false) => f.write_str(" + ")?,
                    }
                    let a = t.coeff.abs();
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    write_field(f, t.mono, t.j)?;
                }
                Ok(())
            }
            BasisDesc::Ham { mono, negated } => {
                write!(f, "{}H({mono})", if *negated { "-" } else { "" })
            }
            BasisDesc::GradingElement => f.write_str("C"),
            BasisDesc::Symbol(s) => write!(f, "[{s}]"),
        }
    }
}

fn parse_field(s: &str) -> Result<(Monomial, usize)> {
    let bad = || Error::Parse(format!("bad vector field `{s}`"));
    let (mono, d) = match s.rsplit_once('*') {
        Some((m, d)) => (m.parse::<Monomial>()?, d),
        None => (Monomial::ONE, s),
    };
    let j: usize = d.strip_prefix('d').ok_or_else(bad)?.parse().map_err(|_| bad())?;
    if j == 0 {
        return Err(bad());
    }
    Ok((mono, j))
}

fn parse_term(s: &str, negative: bool) -> Result<FieldTerm> {
    // Optional leading rational coefficient: `2*x1*d1`, `1/2*d3`.
    let (coeff, rest) = match s.split_once('*') {
        Some((c, rest)) if c.starts_with(|ch: char| ch.is_ascii_digit()) => (c.parse::<Rational>()?, rest),
        _ => (Rational::one(), s),
    };
    let (mono, j) = parse_field(rest)?;
    Ok(FieldTerm { coeff: if negative { -coeff } else { coeff }, mono, j })
}

impl FromStr for BasisDesc {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "C" {
            return Ok(BasisDesc::GradingElement);
        }
        if let Some(name) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            return Ok(BasisDesc::Symbol(name.to_string()));
        }
        let (negated, body) = match s.strip_prefix('-') {
            Some(r) => (true, r),
            None => (false, s),
        };
        if let Some(inner) = body.strip_prefix("H(").and_then(|r| r.strip_suffix(')')) {
            return Ok(BasisDesc::Ham { mono: inner.parse()?, negated });
        }
        if !s.contains(' ') && !negated {
            if let Ok((mono, j)) = parse_field(s) {
                return Ok(BasisDesc::field(mono, j));
            }
        }
        let mut terms = Vec::new();
        let mut neg = negated;
        let mut tokens = body.split(' ');
        loop {
            let tok = tokens.next().ok_or_else(|| Error::Parse(format!("bad descriptor `{s}`")))?;
            terms.push(parse_term(tok, neg)?);
            match tokens.next() {
                None => break,
                Some("+") => neg = false,
                Some("-") => neg = true,
                Some(other) => return Err(Error::Parse(format!("unexpected `{other}` in `{s}`"))),
            }
        }
        Ok(BasisDesc::Combination(terms))
    }
}
