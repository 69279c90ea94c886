//! Exact arithmetic in the field Q(q) of rational functions.
//!
//! Elements are quotients of Laurent polynomials in `q` with arbitrary-precision
//! rational coefficients. Every value is kept in a unique canonical form
//! (monic denominator that is an ordinary polynomial with nonzero constant term,
//! numerator and denominator coprime), so equality is structural comparison.
//! There is no floating point anywhere: every identity checked downstream is exact.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

pub type Rat = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero in Q(q)")]
    DivisionByZero,
    #[error("pole at q = {0}")]
    Pole(String),
    #[error("cannot parse scalar: {0}")]
    Parse(String),
}

/// A Laurent polynomial in `q`: a finite map from integer exponents to
/// nonzero rational coefficients. The zero polynomial is the empty map.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, Rat>,
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0, Rat::one())
    }

    /// The variable `q` itself.
    pub fn var() -> Self {
        LaurentPoly::monomial(1, Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        LaurentPoly::monomial(0, c)
    }

    pub fn monomial(exp: i64, coeff: Rat) -> Self {
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(exp, coeff);
        }
        LaurentPoly { coeffs }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rat)>>(terms: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exp: i64, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(Rat::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &Rat)> {
        self.coeffs.iter()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Degree of an ordinary polynomial (panics on the zero polynomial).
    fn degree(&self) -> i64 {
        self.max_exp().expect("degree of zero polynomial")
    }

    fn leading_coeff(&self) -> Rat {
        self.coeffs
            .values()
            .next_back()
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn coeff(&self, exp: i64) -> Rat {
        self.coeffs.get(&exp).cloned().unwrap_or_else(Rat::zero)
    }

    /// Multiply by q^k.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (e + k, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, k)| (*e, k * c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &other.coeffs {
            r.add_term(*e, c.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut r = LaurentPoly::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                r.add_term(e1 + e2, c1 * c2);
            }
        }
        r
    }

    /// Evaluate at a rational point. Negative exponents require q0 != 0.
    pub fn eval(&self, q0: &Rat) -> Result<Rat, ScalarError> {
        let mut acc = Rat::zero();
        for (e, c) in &self.coeffs {
            if *e < 0 && q0.is_zero() {
                return Err(ScalarError::Pole(q0.to_string()));
            }
            acc += c * rat_pow(q0, *e);
        }
        Ok(acc)
    }

    /// Returns Some((exp, coeff)) when the polynomial is a single monomial.
    pub fn as_monomial(&self) -> Option<(i64, &Rat)> {
        if self.coeffs.len() == 1 {
            self.coeffs.iter().next().map(|(e, c)| (*e, c))
        } else {
            None
        }
    }

    /// Long division of ordinary polynomials (nonnegative exponents only).
    fn divrem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        debug_assert!(self.min_exp().unwrap_or(0) >= 0 && divisor.min_exp().unwrap_or(0) >= 0);
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        let dd = divisor.degree();
        let dl = divisor.leading_coeff();
        while !rem.is_zero() && rem.degree() >= dd {
            let shift = rem.degree() - dd;
            let factor = rem.leading_coeff() / dl.clone();
            quot.add_term(shift, factor.clone());
            rem = rem.sub(&divisor.shift(shift).scale(&factor));
        }
        (quot, rem)
    }

    /// Monic gcd of ordinary polynomials via the Euclidean algorithm.
    /// Remainders are rescaled to monic at each step to limit coefficient growth.
    fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, mut r) = a.divrem(&b);
            if !r.is_zero() {
                let lc = r.leading_coeff();
                r = r.scale(&lc.recip());
            }
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lc = a.leading_coeff();
        a.scale(&lc.recip())
    }
}

fn rat_pow(base: &Rat, exp: i64) -> Rat {
    if exp == 0 {
        return Rat::one();
    }
    let mut acc = Rat::one();
    let b = if exp > 0 {
        base.clone()
    } else {
        base.clone().recip()
    };
    for _ in 0..exp.unsigned_abs() {
        acc *= &b;
    }
    acc
}

/// An element of Q(q) in canonical form: `num / den` where `den` is a monic
/// ordinary polynomial with nonzero constant term, and the polynomial parts of
/// `num` and `den` are coprime. Laurent monomial factors live in the numerator,
/// so e.g. the inverse of q^3 is the (denominator-free) numerator q^-3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scalar {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Scalar {
    /// Build `num/den` and reduce to canonical form.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: LaurentPoly, den: LaurentPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Scalar {
                num: LaurentPoly::zero(),
                den: LaurentPoly::one(),
            };
        }
        let a = num.min_exp().unwrap();
        let b = den.min_exp().unwrap();
        let n0 = num.shift(-a);
        let d0 = den.shift(-b);
        let g = n0.gcd(&d0);
        let (n1, r1) = n0.divrem(&g);
        debug_assert!(r1.is_zero());
        let (d1, r2) = d0.divrem(&g);
        debug_assert!(r2.is_zero());
        let lc = d1.leading_coeff();
        let n2 = n1.scale(&lc.recip());
        let d2 = d1.scale(&lc.recip());
        Scalar {
            num: n2.shift(a - b),
            den: d2,
        }
    }

    pub fn zero() -> Self {
        Scalar {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Scalar {
            num: LaurentPoly::one(),
            den: LaurentPoly::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar {
            num: LaurentPoly::constant(rat(n)),
            den: LaurentPoly::one(),
        }
    }

    pub fn from_rat(r: Rat) -> Self {
        Scalar {
            num: LaurentPoly::constant(r),
            den: LaurentPoly::one(),
        }
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Scalar {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    /// The variable q.
    pub fn q() -> Self {
        Scalar::from_poly(LaurentPoly::var())
    }

    pub fn q_pow(k: i64) -> Self {
        Scalar::from_poly(LaurentPoly::monomial(k, Rat::one()))
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.as_monomial().map(|(e, c)| e == 0 && c.is_one()) == Some(true)
            && self.den.as_monomial().map(|(e, c)| e == 0 && c.is_one()) == Some(true)
    }

    /// Returns Some(c) when the value is a constant (degree-0) element of Q.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        match (self.num.as_monomial(), self.den.as_monomial()) {
            (Some((0, c)), Some((0, d))) => Some(c / d),
            _ => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Scalar::canonical(num, den)
    }

    pub fn neg(&self) -> Self {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Scalar::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        Scalar::canonical(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn invert(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self.mul(&other.invert()?))
    }

    pub fn pow(&self, k: i64) -> Result<Self, ScalarError> {
        let base = if k < 0 { self.invert()? } else { self.clone() };
        let mut acc = Scalar::one();
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Value at q = q0. Fails when the denominator vanishes there, or when a
    /// negative numerator exponent meets q0 = 0.
    pub fn specialize(&self, q0: &Rat) -> Result<Rat, ScalarError> {
        let d = self.den.eval(q0)?;
        if d.is_zero() {
            return Err(ScalarError::Pole(q0.to_string()));
        }
        Ok(self.num.eval(q0)? / d)
    }

    /// A rough size measure (term count + degree span) used for pivot selection.
    pub fn complexity(&self) -> u64 {
        let span = |p: &LaurentPoly| -> u64 {
            match (p.min_exp(), p.max_exp()) {
                (Some(a), Some(b)) => (b - a) as u64 + p.coeffs.len() as u64,
                _ => 0,
            }
        };
        span(&self.num) + 2 * span(&self.den)
    }
}

fn fmt_rat(c: &Rat) -> String {
    c.to_string()
}

fn fmt_term(exp: i64, coeff: &Rat, first: bool) -> String {
    let neg = coeff.is_negative();
    let mag = coeff.abs();
    let body = if exp == 0 {
        fmt_rat(&mag)
    } else {
        let var = if exp == 1 {
            "q".to_string()
        } else {
            format!("q^{}", exp)
        };
        if mag.is_one() {
            var
        } else {
            format!("{}*{}", fmt_rat(&mag), var)
        }
    };
    match (first, neg) {
        (true, false) => body,
        (true, true) => format!("-{}", body),
        (false, false) => format!(" + {}", body),
        (false, true) => format!(" - {}", body),
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().rev() {
            write!(f, "{}", fmt_term(*e, c, first))?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.as_monomial().map(|(e, c)| e == 0 && c.is_one()) == Some(true) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

// ---------------------------------------------------------------------------
// Parsing. Grammar:
//   scalar := '(' poly ')' '/' '(' poly ')' | poly
//   poly   := term (('+'|'-') term)*
//   term   := coeff ['*' mono] | mono
//   coeff  := int ['/' int]
//   mono   := 'q' ['^' ['-'] int]
// Round-trips exactly with Display.
// ---------------------------------------------------------------------------

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Q,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl<'a> Lexer<'a> {
    fn tokenize(s: &'a str) -> Result<Vec<Tok>, ScalarError> {
        let mut lx = Lexer {
            chars: s.chars().peekable(),
        };
        let mut toks = Vec::new();
        while let Some(&c) = lx.chars.peek() {
            match c {
                ' ' | '\t' => {
                    lx.chars.next();
                }
                '0'..='9' => {
                    let mut digits = String::new();
                    while let Some(&d) = lx.chars.peek() {
                        if d.is_ascii_digit() {
                            digits.push(d);
                            lx.chars.next();
                        } else {
                            break;
                        }
                    }
                    let v =
                        BigInt::from_str(&digits).map_err(|e| ScalarError::Parse(e.to_string()))?;
                    toks.push(Tok::Int(v));
                }
                'q' => {
                    lx.chars.next();
                    toks.push(Tok::Q);
                }
                '+' => {
                    lx.chars.next();
                    toks.push(Tok::Plus);
                }
                '-' => {
                    lx.chars.next();
                    toks.push(Tok::Minus);
                }
                '*' => {
                    lx.chars.next();
                    toks.push(Tok::Star);
                }
                '/' => {
                    lx.chars.next();
                    toks.push(Tok::Slash);
                }
                '^' => {
                    lx.chars.next();
                    toks.push(Tok::Caret);
                }
                '(' => {
                    lx.chars.next();
                    toks.push(Tok::LParen);
                }
                ')' => {
                    lx.chars.next();
                    toks.push(Tok::RParen);
                }
                other => {
                    return Err(ScalarError::Parse(format!(
                        "unexpected character '{}'",
                        other
                    )))
                }
            }
        }
        Ok(toks)
    }
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok) -> Result<(), ScalarError> {
        match self.next() {
            Some(ref got) if *got == t => Ok(()),
            got => Err(ScalarError::Parse(format!(
                "expected {:?}, got {:?}",
                t, got
            ))),
        }
    }

    fn parse_int(&mut self) -> Result<BigInt, ScalarError> {
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.next();
            true
        } else {
            false
        };
        match self.next() {
            Some(Tok::Int(v)) => Ok(if neg { -v } else { v }),
            got => Err(ScalarError::Parse(format!(
                "expected integer, got {:?}",
                got
            ))),
        }
    }

    fn parse_term(&mut self) -> Result<(i64, Rat), ScalarError> {
        // term := coeff ['*' mono] | mono
        match self.peek() {
            Some(Tok::Q) => {
                let exp = self.parse_mono()?;
                Ok((exp, Rat::one()))
            }
            Some(Tok::Int(_)) => {
                let numer = self.parse_int()?;
                let mut coeff = Rat::from_integer(numer);
                if self.peek() == Some(&Tok::Slash) {
                    // Lookahead: a coefficient denominator is a bare integer.
                    if let Some(Tok::Int(_)) = self.toks.get(self.pos + 1) {
                        self.next();
                        let d = self.parse_int()?;
                        if d.is_zero() {
                            return Err(ScalarError::Parse("zero denominator".into()));
                        }
                        coeff /= Rat::from_integer(d);
                    }
                }
                if self.peek() == Some(&Tok::Star) {
                    self.next();
                    let exp = self.parse_mono()?;
                    Ok((exp, coeff))
                } else {
                    Ok((0, coeff))
                }
            }
            got => Err(ScalarError::Parse(format!("expected term, got {:?}", got))),
        }
    }

    fn parse_mono(&mut self) -> Result<i64, ScalarError> {
        self.expect(Tok::Q)?;
        if self.peek() == Some(&Tok::Caret) {
            self.next();
            let e = self.parse_int()?;
            i64::try_from(e).map_err(|_| ScalarError::Parse("exponent too large".into()))
        } else {
            Ok(1)
        }
    }

    fn parse_poly(&mut self) -> Result<LaurentPoly, ScalarError> {
        let mut p = LaurentPoly::zero();
        let mut sign = Rat::one();
        if self.peek() == Some(&Tok::Minus) {
            self.next();
            sign = -sign;
        }
        loop {
            let (e, c) = self.parse_term()?;
            p.add_term(e, c * &sign);
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    sign = Rat::one();
                }
                Some(Tok::Minus) => {
                    self.next();
                    sign = -Rat::one();
                }
                _ => break,
            }
        }
        Ok(p)
    }
}

impl FromStr for Scalar {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let toks = Lexer::tokenize(s)?;
        let mut p = Parser { toks, pos: 0 };
        // Quotient form: '(' poly ')' '/' '(' poly ')'
        if p.peek() == Some(&Tok::LParen) {
            let save = p.pos;
            p.next();
            if let Ok(num) = p.parse_poly() {
                if p.peek() == Some(&Tok::RParen) {
                    p.next();
                    if p.peek() == Some(&Tok::Slash) {
                        p.next();
                        p.expect(Tok::LParen)?;
                        let den = p.parse_poly()?;
                        p.expect(Tok::RParen)?;
                        if p.pos != p.toks.len() {
                            return Err(ScalarError::Parse("trailing tokens".into()));
                        }
                        return Scalar::new(num, den);
                    } else if p.pos == p.toks.len() {
                        return Scalar::new(num, LaurentPoly::one());
                    }
                }
            }
            p.pos = save;
        }
        let poly = p.parse_poly()?;
        if p.pos != p.toks.len() {
            return Err(ScalarError::Parse("trailing tokens".into()));
        }
        Scalar::new(poly, LaurentPoly::one())
    }
}
