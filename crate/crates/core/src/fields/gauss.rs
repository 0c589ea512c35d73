//! Gauss extensions of p-adic valuations to polynomials and rational
//! functions over `Q`.
//!
//! Expression syntax:
//!
//! ```text
//! expr  := ["+" | "-"] term { ("+" | "-") term }
//! term  := power { ["*" | "/"] power }        juxtaposition multiplies
//! power := atom [ "^" integer ]
//! atom  := integer | variable | "(" expr ")"
//! variable := letter { digit }
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::galois::is_prime;
use super::FieldError;

/// Variable name to exponent; absent variables have exponent 0.
pub type Monomial = BTreeMap<String, u32>;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Polynomial::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::new(), c);
        }
        p
    }

    pub fn integer(c: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn var(name: &str) -> Self {
        Self::monomial(BigRational::one(), [(name.to_string(), 1)].into_iter().collect())
    }

    pub fn monomial(c: BigRational, m: Monomial) -> Self {
        let m: Monomial = m.into_iter().filter(|&(_, e)| e > 0).collect();
        let mut p = Polynomial::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Polynomial::integer(1), |acc, _| &acc * self)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            let entry = out.terms.entry(m.clone()).or_insert_with(BigRational::zero);
            *entry += c;
            if entry.is_zero() {
                out.terms.remove(m);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let mut m = m1.clone();
                for (v, e) in m2 {
                    *m.entry(v.clone()).or_insert(0) += e;
                }
                out = &out + &Polynomial::monomial(c1 * c2, m);
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let a = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let vars: Vec<String> =
                m.iter().map(|(v, &e)| if e == 1 { v.clone() } else { format!("{v}^{e}") }).collect();
            if vars.is_empty() || !a.is_one() {
                if a.is_integer() {
                    write!(f, "{}", a.numer())?;
                } else {
                    write!(f, "({}/{})", a.numer(), a.denom())?;
                }
            }
            write!(f, "{}", vars.join(""))?;
        }
        Ok(())
    }
}

/// A quotient `num / den` with `den ≠ 0`, not necessarily reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    pub num: Polynomial,
    pub den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::ZeroDenominator);
        }
        Ok(RationalFunction { num, den })
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction { num: p, den: Polynomial::integer(1) }
    }

    fn add(&self, o: &Self) -> Self {
        RationalFunction { num: &(&self.num * &o.den) + &(&o.num * &self.den), den: &self.den * &o.den }
    }

    fn neg(&self) -> Self {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }

    fn mul(&self, o: &Self) -> Self {
        RationalFunction { num: &self.num * &o.num, den: &self.den * &o.den }
    }

    fn div(&self, o: &Self) -> Result<Self, FieldError> {
        RationalFunction::new(&self.num * &o.den, &self.den * &o.num)
    }
}

/// The Gauss extension of the p-adic valuation on `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GaussValuation {
    p: u64,
}

impl GaussValuation {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if is_prime(p) {
            Ok(GaussValuation { p })
        } else {
            Err(FieldError::NotPrime(p))
        }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// p-adic valuation of a nonzero rational.
    pub fn of_rational(&self, r: &BigRational) -> i64 {
        assert!(!r.is_zero(), "valuation of zero");
        let p = BigInt::from(self.p);
        let count = |x: &BigInt| {
            let mut x = x.clone();
            let mut v = 0i64;
            while (&x % &p).is_zero() {
                x /= &p;
                v += 1;
            }
            v
        };
        count(r.numer()) - count(r.denom())
    }

    /// Minimum coefficient valuation; `None` stands for `∞` (the zero polynomial).
    pub fn of_polynomial(&self, f: &Polynomial) -> Option<i64> {
        f.terms().map(|(_, c)| self.of_rational(c)).min()
    }

    pub fn of_rational_function(&self, f: &RationalFunction) -> Option<i64> {
        let den = self.of_polynomial(&f.den).expect("denominator is nonzero");
        self.of_polynomial(&f.num).map(|n| n - den)
    }
}

/// Parse an expression and evaluate its Gauss valuation at `p`.
pub fn gauss_extend(p: u64, expr: &str) -> Result<Option<i64>, FieldError> {
    let v = GaussValuation::new(p)?;
    Ok(v.of_rational_function(&parse_expression(expr)?))
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>, FieldError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Tok::Num(text.parse().expect("digits")));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            i += 1;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Tok::Var(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(FieldError::Parse(format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RationalFunction, FieldError> {
        let negate = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.add(&self.term()?.neg());
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction, FieldError> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.power()?);
            } else if self.eat('/') {
                acc = acc.div(&self.power()?)?;
            } else if matches!(self.peek(), Some(Tok::Num(_) | Tok::Var(_) | Tok::Op('('))) {
                acc = acc.mul(&self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<RationalFunction, FieldError> {
        let base = self.atom()?;
        if self.eat('^') {
            let Some(Tok::Num(n)) = self.peek().cloned() else {
                return Err(FieldError::Parse("exponent must be a nonnegative integer".into()));
            };
            self.pos += 1;
            let e: u32 = n.try_into().map_err(|_| FieldError::Parse("exponent too large".into()))?;
            if e > 64 {
                return Err(FieldError::Parse("exponent too large".into()));
            }
            return Ok(RationalFunction { num: base.num.pow(e), den: base.den.pow(e) });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RationalFunction, FieldError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(RationalFunction::from_poly(Polynomial::constant(BigRational::from_integer(n))))
            }
            Some(Tok::Var(v)) => {
                self.pos += 1;
                Ok(RationalFunction::from_poly(Polynomial::var(&v)))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(FieldError::Parse("missing ')'".into()));
                }
                Ok(inner)
            }
            Some(t) => Err(FieldError::Parse(format!("unexpected token {t:?}"))),
            None => Err(FieldError::Parse("unexpected end of input".into())),
        }
    }
}

pub fn parse_expression(s: &str) -> Result<RationalFunction, FieldError> {
    let mut p = Parser { toks: tokenize(s)?, pos: 0 };
    let f = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(FieldError::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(f)
}

pub fn parse_polynomial(s: &str) -> Result<Polynomial, FieldError> {
    let f = parse_expression(s)?;
    let mut den = f.den.terms();
    let scale = match (den.next(), den.next()) {
        (Some((m, c)), None) if m.is_empty() => Polynomial::constant(BigRational::one() / c),
        _ => return Err(FieldError::Parse("not a polynomial".into())),
    };
    Ok(&f.num * &scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn min_formula_examples() {
        assert_eq!(gauss_extend(3, "3x^2 + 9x + 1").unwrap(), Some(0));
        assert_eq!(gauss_extend(3, "3x + 6").unwrap(), Some(1));
        assert_eq!(gauss_extend(3, "(3x+6)/(x+1)").unwrap(), Some(1));
        assert_eq!(gauss_extend(5, "x - x").unwrap(), None);
        assert_eq!(gauss_extend(2, "x1*x2/4 + 1/2").unwrap(), Some(-2));
    }

    #[test]
    fn zero_denominator_is_an_error() {
        assert!(matches!(gauss_extend(3, "x/(y - y)"), Err(FieldError::ZeroDenominator)));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_expression("3x +"), Err(FieldError::Parse(_))));
        assert!(matches!(parse_expression("(x"), Err(FieldError::Parse(_))));
        assert!(matches!(parse_expression("x ^ y"), Err(FieldError::Parse(_))));
    }

    #[test]
    fn polynomial_arithmetic() {
        let f = parse_polynomial("(x + 1)^2").unwrap();
        assert_eq!(f, parse_polynomial("x^2 + 2x + 1").unwrap());
        assert_eq!(f.to_string(), "1 + 2x + x^2");
    }
}
