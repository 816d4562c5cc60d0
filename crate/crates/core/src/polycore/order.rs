use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use super::Monomial;
use crate::error::Error;

/// Monomial order. Variable precedence is always `x1 > x2 > ... > xk`
/// in the order the variables are declared.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub enum TermOrder {
    #[default]
    Grevlex,
    Lex,
    /// Weighted degree first, ties broken by grevlex.
    Weighted(Vec<u32>),
}

impl TermOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            TermOrder::Lex => lex(a, b),
            TermOrder::Grevlex => a.degree().cmp(&b.degree()).then_with(|| revlex(a, b)),
            TermOrder::Weighted(w) => a
                .weighted_degree(w)
                .cmp(&b.weighted_degree(w))
                .then_with(|| a.degree().cmp(&b.degree()))
                .then_with(|| revlex(a, b)),
        }
    }

    /// Checks the order can be used with `arity` variables.
    pub fn validate(&self, arity: usize) -> Result<(), Error> {
        if let TermOrder::Weighted(w) = self {
            if w.len() != arity {
                return Err(Error::DimensionMismatch {
                    expected: arity,
                    found: w.len(),
                });
            }
            if w.contains(&0) {
                return Err(Error::Input("order weights must be positive".into()));
            }
        }
        Ok(())
    }
}

fn lex(a: &Monomial, b: &Monomial) -> Ordering {
    a.exponents().cmp(b.exponents())
}

// Among equal-degree monomials, the one with the smaller exponent in the
// last differing variable is larger.
fn revlex(a: &Monomial, b: &Monomial) -> Ordering {
    for (x, y) in a.exponents().iter().zip(b.exponents()).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

impl fmt::Display for TermOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermOrder::Grevlex => f.write_str("grevlex"),
            TermOrder::Lex => f.write_str("lex"),
            TermOrder::Weighted(w) => {
                let parts: Vec<String> = w.iter().map(|x| x.to_string()).collect();
                write!(f, "weighted:{}", parts.join(","))
            }
        }
    }
}

impl FromStr for TermOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        match s {
            "grevlex" => Ok(TermOrder::Grevlex),
            "lex" => Ok(TermOrder::Lex),
            _ => {
                let Some(rest) = s.strip_prefix("weighted:") else {
                    return Err(Error::Input(format!("unknown term order `{s}`")));
                };
                let w = rest
                    .split(',')
                    .map(|p| p.trim().parse::<u32>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| Error::Input(format!("bad weight list `{rest}`: {e}")))?;
                if w.is_empty() || w.contains(&0) {
                    return Err(Error::Input("order weights must be positive".into()));
                }
                Ok(TermOrder::Weighted(w))
            }
        }
    }
}
