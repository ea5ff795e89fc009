//! Text form of polynomials.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! poly   := '0' | term ('+' term)*
//! term   := coeff | [coeff '*'] factor ('*' factor)*
//! factor := var ['^' int]
//! var    := ('X' | 'x') [index]
//! ```
//!
//! A bare `X` means `X1`. A coefficient `k` stands for `k` repeated terms.

use super::{Exponent, ExponentVector, PolyError, SparsePoly, DEFAULT_EXPONENT_CAP};

/// Limits enforced while parsing untrusted text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParseOptions {
    pub exponent_cap: Exponent,
    /// Upper bound on the total term count (sum of coefficients).
    pub max_terms: usize,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions {
            exponent_cap: DEFAULT_EXPONENT_CAP,
            max_terms: 1 << 20,
        }
    }
}

/// Parses with the variable count inferred from the largest index used.
pub fn parse(text: &str) -> Result<SparsePoly, PolyError> {
    parse_with(text, None, &ParseOptions::default())
}

/// Parses into a ring with exactly `vars` variables.
pub fn parse_with_vars(text: &str, vars: usize) -> Result<SparsePoly, PolyError> {
    parse_with(text, Some(vars), &ParseOptions::default())
}

pub fn parse_with(
    text: &str,
    vars: Option<usize>,
    options: &ParseOptions,
) -> Result<SparsePoly, PolyError> {
    let mut parser = Parser {
        bytes: text.as_bytes(),
        pos: 0,
        options,
        fixed_vars: vars,
    };
    let raw = parser.poly()?;
    let width = vars.unwrap_or_else(|| {
        raw.iter()
            .flat_map(|(_, factors)| factors.iter().map(|&(v, _)| v + 1))
            .max()
            .unwrap_or(1)
    });
    let mut terms = Vec::new();
    for (coeff, factors) in raw {
        let mut exps = vec![0 as Exponent; width];
        for (var, e) in factors {
            exps[var] = exps[var]
                .checked_add(e)
                .filter(|&sum| sum <= options.exponent_cap)
                .ok_or(PolyError::ExponentCap {
                    position: text.len(),
                    cap: options.exponent_cap,
                })?;
        }
        let monomial = ExponentVector::new(exps);
        for _ in 0..coeff {
            terms.push(monomial.clone());
        }
    }
    Ok(SparsePoly::new(width, terms)?.into_normalized())
}

type RawTerm = (usize, Vec<(usize, Exponent)>);

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    options: &'a ParseOptions,
    fixed_vars: Option<usize>,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Syntax {
            position: self.pos,
            message: message.into(),
        })
    }

    fn poly(&mut self) -> Result<Vec<RawTerm>, PolyError> {
        let mut terms = Vec::new();
        let mut total: usize = 0;
        if self.peek().is_none() {
            return self.syntax("empty input");
        }
        loop {
            let (coeff, factors) = self.term()?;
            total = total
                .checked_add(coeff)
                .filter(|&n| n <= self.options.max_terms)
                .ok_or(PolyError::TooManyTerms {
                    cap: self.options.max_terms,
                })?;
            if coeff > 0 {
                terms.push((coeff, factors));
            }
            match self.peek() {
                None => break,
                Some(b'+') => self.pos += 1,
                Some(b'-') => return Err(PolyError::NegativeCoefficient { position: self.pos }),
                Some(c) => return self.syntax(format!("unexpected '{}'", c as char)),
            }
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<RawTerm, PolyError> {
        let coeff = match self.peek() {
            Some(b'-') => return Err(PolyError::NegativeCoefficient { position: self.pos }),
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let value = self.number()?;
                let coeff = usize::try_from(value)
                    .ok()
                    .filter(|&c| c <= self.options.max_terms)
                    .ok_or(PolyError::TooManyTerms {
                        cap: self.options.max_terms,
                    })?;
                match self.peek() {
                    Some(b'*') => self.pos += 1,
                    None | Some(b'+') | Some(b'-') => return Ok((coeff, Vec::new())),
                    Some(_) => {
                        self.pos = start;
                        return self.syntax("expected '*' after coefficient");
                    }
                }
                coeff
            }
            _ => 1,
        };
        let mut factors = vec![self.factor()?];
        while self.peek() == Some(b'*') {
            self.pos += 1;
            factors.push(self.factor()?);
        }
        Ok((coeff, factors))
    }

    fn factor(&mut self) -> Result<(usize, Exponent), PolyError> {
        match self.peek() {
            Some(b'X') | Some(b'x') => self.pos += 1,
            Some(b'-') => return Err(PolyError::NegativeCoefficient { position: self.pos }),
            _ => return self.syntax("expected variable"),
        }
        let index_pos = self.pos;
        let index = if self.bytes.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            let idx = self.number()?;
            if idx == 0 {
                self.pos = index_pos;
                return self.syntax("variable indices start at 1");
            }
            idx as usize
        } else {
            1
        };
        if let Some(vars) = self.fixed_vars {
            if index > vars {
                return Err(PolyError::IndexOutOfRange { index, vars });
            }
        }
        let mut exponent: Exponent = 1;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            match self.peek() {
                Some(b'-') => return Err(PolyError::NegativeExponent { position: self.pos }),
                Some(c) if c.is_ascii_digit() => {}
                _ => return self.syntax("expected exponent"),
            }
            let at = self.pos;
            let value = self.number()?;
            if value > self.options.exponent_cap as u128 {
                return Err(PolyError::ExponentCap {
                    position: at,
                    cap: self.options.exponent_cap,
                });
            }
            exponent = value as Exponent;
        }
        Ok((index - 1, exponent))
    }

    fn number(&mut self) -> Result<u128, PolyError> {
        let start = self.pos;
        let mut value: u128 = 0;
        while let Some(&c) = self.bytes.get(self.pos) {
            if !c.is_ascii_digit() {
                break;
            }
            value = match value.checked_mul(10).and_then(|v| v.checked_add((c - b'0') as u128)) {
                Some(v) => v,
                None => {
                    self.pos = start;
                    return self.syntax("number too large");
                }
            };
            self.pos += 1;
        }
        Ok(value)
    }
}

/// Canonical text: sorted terms with collected coefficients, `0` when empty.
pub fn format(p: &SparsePoly) -> String {
    let sorted = p.normalize();
    let terms = sorted.terms();
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    let mut k = 0;
    while k < terms.len() {
        let mut run = 1;
        while k + run < terms.len() && terms[k + run] == terms[k] {
            run += 1;
        }
        parts.push(monomial_text(&terms[k], run, p.vars()));
        k += run;
    }
    parts.join(" + ")
}

fn monomial_text(exps: &ExponentVector, coeff: usize, vars: usize) -> String {
    let powers: Vec<String> = exps
        .as_slice()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(j, &e)| {
            let name = if vars == 1 {
                "X".to_string()
            } else {
                format!("X{}", j + 1)
            };
            if e == 1 {
                name
            } else {
                format!("{name}^{e}")
            }
        })
        .collect();
    match (powers.is_empty(), coeff) {
        (true, c) => c.to_string(),
        (false, 1) => powers.join("*"),
        (false, c) => format!("{c}*{}", powers.join("*")),
    }
}
