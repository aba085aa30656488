//! Coefficient-wise recovery of exact polynomials from approximate ones.
//!
//! File format, one item per line:
//!
//! ```text
//! # comment
//! vars: x y z
//! 1.0000        1 0 0
//! .6250000000067 0 1 0
//! ```
//!
//! Each term line is a coefficient followed by one exponent per variable.
//! Coefficients are decimals or `p/q` fractions.

use std::cmp::Reverse;
use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{parse_decimal, render, BoundedTarget};
use crate::recovery::recover;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxTerm {
    pub coefficient: String,
    pub exponents: Vec<u32>,
    /// Source line when read from a file.
    pub line: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialApprox {
    variables: Vec<String>,
    terms: Vec<ApproxTerm>,
}

impl PolynomialApprox {
    pub fn new(variables: Vec<String>, terms: Vec<ApproxTerm>) -> Result<Self> {
        let mut seen = HashSet::new();
        for (i, term) in terms.iter().enumerate() {
            let line = term.line.unwrap_or(i + 1);
            if term.exponents.len() != variables.len() {
                return Err(Error::Polynomial {
                    line,
                    message: format!(
                        "expected {} exponents, found {}",
                        variables.len(),
                        term.exponents.len()
                    ),
                });
            }
            if !seen.insert(&term.exponents) {
                return Err(Error::Polynomial {
                    line,
                    message: "duplicate monomial".into(),
                });
            }
        }
        Ok(PolynomialApprox { variables, terms })
    }

    /// Convenience constructor from `(coefficient, exponents)` pairs.
    pub fn from_pairs<S: Into<String>>(
        variables: &[&str],
        terms: impl IntoIterator<Item = (S, Vec<u32>)>,
    ) -> Result<Self> {
        let terms = terms
            .into_iter()
            .map(|(c, e)| ApproxTerm {
                coefficient: c.into(),
                exponents: e,
                line: None,
            })
            .collect();
        Self::new(variables.iter().map(|v| v.to_string()).collect(), terms)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut variables: Option<Vec<String>> = None;
        let mut terms = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap().trim();
            if content.is_empty() {
                continue;
            }
            let Some(vars) = &variables else {
                let names = content
                    .strip_prefix("vars:")
                    .ok_or_else(|| Error::Polynomial {
                        line,
                        message: "expected header `vars: <names>`".into(),
                    })?;
                variables = Some(names.split_whitespace().map(str::to_owned).collect());
                continue;
            };
            let mut fields = content.split_whitespace();
            let coefficient = fields.next().unwrap().to_owned();
            let exponents = fields
                .map(|f| {
                    f.parse::<u32>().map_err(|_| Error::Polynomial {
                        line,
                        message: format!("invalid exponent {f:?}"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            if exponents.len() != vars.len() {
                return Err(Error::Polynomial {
                    line,
                    message: format!(
                        "expected {} exponents, found {}",
                        vars.len(),
                        exponents.len()
                    ),
                });
            }
            terms.push(ApproxTerm {
                coefficient,
                exponents,
                line: Some(line),
            });
        }
        let variables = variables.ok_or(Error::Polynomial {
            line: 0,
            message: "missing `vars:` header".into(),
        })?;
        Self::new(variables, terms)
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn terms(&self) -> &[ApproxTerm] {
        &self.terms
    }
}

/// Polynomial with exact, nonzero coefficients keyed by exponent vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactPolynomial {
    variables: Vec<String>,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl ExactPolynomial {
    pub fn zero(variables: Vec<String>) -> Self {
        ExactPolynomial {
            variables,
            terms: BTreeMap::new(),
        }
    }

    /// Builds a polynomial, summing repeated monomials and dropping zeros.
    pub fn from_terms(
        variables: &[&str],
        terms: impl IntoIterator<Item = (BigRational, Vec<u32>)>,
    ) -> Result<Self> {
        let mut poly = Self::zero(variables.iter().map(|v| v.to_string()).collect());
        for (coefficient, exponents) in terms {
            poly.add_term(coefficient, exponents)?;
        }
        Ok(poly)
    }

    pub fn add_term(&mut self, coefficient: BigRational, exponents: Vec<u32>) -> Result<()> {
        if exponents.len() != self.variables.len() {
            return Err(Error::Precondition(format!(
                "monomial has {} exponents for {} variables",
                exponents.len(),
                self.variables.len()
            )));
        }
        let slot = self
            .terms
            .entry(exponents)
            .or_insert_with(BigRational::zero);
        *slot += coefficient;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
        Ok(())
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn coefficient(&self, exponents: &[u32]) -> BigRational {
        self.terms
            .get(exponents)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in graded descending order (highest total degree first).
    pub fn terms(&self) -> Vec<(&Vec<u32>, &BigRational)> {
        let mut out: Vec<_> = self.terms.iter().collect();
        out.sort_by_key(|(e, _)| (Reverse(e.iter().sum::<u32>()), Reverse(*e)));
        out
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        let mut out = Self::zero(self.variables.clone());
        if !factor.is_zero() {
            for (e, c) in &self.terms {
                out.terms.insert(e.clone(), c * factor);
            }
        }
        out
    }

    /// Exact product; both operands must use the same variable list.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.variables != other.variables {
            return Err(Error::Precondition(
                "cannot multiply polynomials over different variables".into(),
            ));
        }
        let mut out = Self::zero(self.variables.clone());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(c1 * c2, e)?;
            }
        }
        Ok(out)
    }

    /// Renders in the line-oriented file format with `p/q` coefficients.
    pub fn to_file_format(&self) -> String {
        let mut out = format!("vars: {}\n", self.variables.join(" "));
        for (e, c) in self.terms() {
            out.push_str(&render(c));
            for x in e {
                out.push(' ');
                out.push_str(&x.to_string());
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for ExactPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().into_iter().enumerate() {
            let magnitude = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let monomial: Vec<String> = self
                .variables
                .iter()
                .zip(e)
                .filter(|(_, &x)| x > 0)
                .map(|(v, &x)| {
                    if x == 1 {
                        v.clone()
                    } else {
                        format!("{v}^{x}")
                    }
                })
                .collect();
            if monomial.is_empty() {
                write!(f, "{}", render(&magnitude))?;
            } else {
                if !magnitude.is_one() {
                    write!(f, "{}*", render(&magnitude))?;
                }
                f.write_str(&monomial.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecoveredPolynomial {
    pub polynomial: ExactPolynomial,
    /// Every coefficient passed the uniqueness check.
    pub certified: bool,
    /// Exponent vectors of coefficients that failed it.
    pub uncertified_terms: Vec<Vec<u32>>,
}

/// Recovers each coefficient independently with the same bound.
pub fn recover_polynomial(
    p: &PolynomialApprox,
    bound: BoundedTarget,
) -> Result<RecoveredPolynomial> {
    let mut polynomial = ExactPolynomial::zero(p.variables.clone());
    let mut uncertified_terms = Vec::new();
    for (i, term) in p.terms.iter().enumerate() {
        let approx = parse_decimal(&term.coefficient).map_err(|e| Error::Polynomial {
            line: term.line.unwrap_or(i + 1),
            message: format!("coefficient {:?}: {e}", term.coefficient),
        })?;
        let result = recover(&approx, bound);
        if !result.certified {
            uncertified_terms.push(term.exponents.clone());
        }
        polynomial.add_term(result.recovered, term.exponents.clone())?;
    }
    Ok(RecoveredPolynomial {
        certified: uncertified_terms.is_empty(),
        polynomial,
        uncertified_terms,
    })
}

/// Denominator bound for monic factors whose coefficient denominators divide
/// `denominator_lcm`: `max(lcm + 1, 2)`.
pub fn suggest_bound(denominator_lcm: u64) -> Result<BoundedTarget> {
    if denominator_lcm < 1 {
        return Err(Error::Domain("denominator lcm must be at least 1".into()));
    }
    BoundedTarget::new(denominator_lcm.saturating_add(1).max(2))
}
