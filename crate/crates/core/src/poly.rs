//! Exact homogeneous polynomials in `x, y, z` over the rationals.
//!
//! A [`HomogeneousPolynomial`] always carries its degree explicitly, so the
//! zero form of degree 3 and the zero form of degree 5 are different values.
//! Terms are kept in a `BTreeMap` keyed by exponent triple; printing walks the
//! map backwards, which gives graded-lex order with `x > y > z`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational coefficient, always in lowest terms with positive denominator.
pub type Scalar = BigRational;

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Var {
    X,
    Y,
    Z,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    pub fn index(self) -> usize {
        match self {
            Var::X => 0,
            Var::Y => 1,
            Var::Z => 2,
        }
    }

    pub fn name(self) -> char {
        ['x', 'y', 'z'][self.index()]
    }
}

/// Exponents `(i, j, k)` of the monomial `x^i y^j z^k`.
///
/// The derived ordering is lexicographic on `(i, j, k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentTriple(pub [u32; 3]);

impl ExponentTriple {
    pub const fn new(i: u32, j: u32, k: u32) -> Self {
        ExponentTriple([i, j, k])
    }

    pub fn i(self) -> u32 {
        self.0[0]
    }

    pub fn j(self) -> u32 {
        self.0[1]
    }

    pub fn k(self) -> u32 {
        self.0[2]
    }

    pub fn degree(self) -> u32 {
        self.0.iter().sum()
    }

    pub fn get(self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn as_i64(self) -> [i64; 3] {
        self.0.map(i64::from)
    }

    /// All exponent triples of total degree `d`, in ascending lexicographic order.
    pub fn all_of_degree(d: u32) -> Vec<ExponentTriple> {
        let mut out = Vec::with_capacity(monomial_count(d as i64));
        for i in 0..=d {
            for j in 0..=d - i {
                out.push(ExponentTriple::new(i, j, d - i - j));
            }
        }
        out
    }

    fn checked_sub(self, other: ExponentTriple) -> Option<ExponentTriple> {
        Some(ExponentTriple([
            self.0[0].checked_sub(other.0[0])?,
            self.0[1].checked_sub(other.0[1])?,
            self.0[2].checked_sub(other.0[2])?,
        ]))
    }
}

impl Add for ExponentTriple {
    type Output = ExponentTriple;
    fn add(self, o: ExponentTriple) -> ExponentTriple {
        ExponentTriple([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl fmt::Display for ExponentTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in Var::ALL {
            let e = self.get(v);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", v.name())?;
            } else {
                write!(f, "{}^{}", v.name(), e)?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// `dim R_d = (d+1)(d+2)/2`, zero for negative `d`.
pub fn monomial_count(d: i64) -> usize {
    if d < 0 {
        0
    } else {
        ((d + 1) * (d + 2) / 2) as usize
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HomogeneousPolynomial {
    degree: u32,
    terms: BTreeMap<ExponentTriple, Scalar>,
}

impl HomogeneousPolynomial {
    pub fn zero(degree: u32) -> Self {
        HomogeneousPolynomial {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(ExponentTriple::new(0, 0, 0), c)
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 3];
        e[v.index()] = 1;
        Self::monomial(ExponentTriple(e), Scalar::one())
    }

    pub fn x() -> Self {
        Self::var(Var::X)
    }

    pub fn y() -> Self {
        Self::var(Var::Y)
    }

    pub fn z() -> Self {
        Self::var(Var::Z)
    }

    pub fn monomial(exp: ExponentTriple, coeff: Scalar) -> Self {
        let mut p = Self::zero(exp.degree());
        if !coeff.is_zero() {
            p.terms.insert(exp, coeff);
        }
        p
    }

    /// Builds a form from terms, summing repeated exponents and dropping zeros.
    pub fn from_terms<I>(degree: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentTriple, Scalar)>,
    {
        let mut p = Self::zero(degree);
        for (e, c) in terms {
            if e.degree() != degree {
                return Err(Error::InhomogeneousTerm {
                    term: e.to_string(),
                    found: e.degree(),
                    expected: degree,
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Linear form `a x + b y + c z`.
    pub fn linear(coeffs: [Scalar; 3]) -> Self {
        let [a, b, c] = coeffs;
        Self::from_terms(
            1,
            [
                (ExponentTriple::new(1, 0, 0), a),
                (ExponentTriple::new(0, 1, 0), b),
                (ExponentTriple::new(0, 0, 1), c),
            ],
        )
        .expect("linear terms have degree 1")
    }

    fn add_term(&mut self, e: ExponentTriple, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: ExponentTriple) -> Scalar {
        self.terms.get(&e).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Terms in ascending lexicographic order of exponents.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentTriple, &Scalar)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = ExponentTriple> + '_ {
        self.terms.keys().copied()
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero(self.degree);
        }
        HomogeneousPolynomial {
            degree: self.degree,
            terms: self.terms.iter().map(|(e, c)| (*e, c * s)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative; a constant differentiates to the zero form of degree 0.
    pub fn partial(&self, v: Var) -> Self {
        let idx = v.index();
        let mut out = Self::zero(self.degree.saturating_sub(1));
        for (e, c) in &self.terms {
            let p = e.0[idx];
            if p == 0 {
                continue;
            }
            let mut ne = e.0;
            ne[idx] -= 1;
            out.add_term(ExponentTriple(ne), c * Scalar::from_integer(BigInt::from(p)));
        }
        out
    }

    pub fn gradient(&self) -> [Self; 3] {
        Var::ALL.map(|v| self.partial(v))
    }

    pub fn evaluate(&self, pt: &[Scalar; 3]) -> Scalar {
        let mut acc = Scalar::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, base) in pt.iter().enumerate() {
                for _ in 0..e.0[v] {
                    t *= base;
                }
            }
            acc += t;
        }
        acc
    }

    /// `g(N · (x, y, z)^T)`: variable `s` is replaced by the linear form in row `s` of `n`.
    pub fn substitute_linear(&self, n: &[[Scalar; 3]; 3]) -> Self {
        let forms: Vec<Self> = n.iter().map(|row| Self::linear(row.clone())).collect();
        let mut powers: Vec<Vec<Self>> = Vec::with_capacity(3);
        for f in &forms {
            let mut p = vec![Self::one()];
            for e in 1..=self.degree as usize {
                let next = &p[e - 1] * f;
                p.push(next);
            }
            powers.push(p);
        }
        let mut out = Self::zero(self.degree);
        for (e, c) in &self.terms {
            let t = &(&powers[0][e.0[0] as usize] * &powers[1][e.0[1] as usize])
                * &powers[2][e.0[2] as usize];
            out = &out + &t.scale(c);
        }
        out
    }

    /// Exact division by a monomial; `None` if some term is not divisible.
    pub fn div_monomial(&self, m: ExponentTriple) -> Option<Self> {
        let mut out = Self::zero(self.degree.checked_sub(m.degree())?);
        for (e, c) in &self.terms {
            out.terms.insert(e.checked_sub(m)?, c.clone());
        }
        Some(out)
    }

    /// Componentwise minimum exponent over the support, i.e. the monomial gcd.
    pub fn monomial_gcd(&self) -> Option<ExponentTriple> {
        let mut it = self.terms.keys();
        let first = *it.next()?;
        Some(it.fold(first, |acc, e| {
            ExponentTriple([acc.0[0].min(e.0[0]), acc.0[1].min(e.0[1]), acc.0[2].min(e.0[2])])
        }))
    }

    /// Integer multiple with content 1 and positive leading (graded-lex) coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
            num_gcd = num_gcd.gcd(c.numer());
        }
        let lead = self.terms.values().next_back().expect("nonzero");
        let sign = if lead.is_negative() { -BigInt::one() } else { BigInt::one() };
        self.scale(&Scalar::new(den_lcm * sign, num_gcd))
    }

    /// `x ∂_x p + y ∂_y p + z ∂_z p`, which equals `deg(p) · p` for homogeneous `p`.
    pub fn euler(&self) -> Self {
        let mut out = Self::zero(self.degree);
        for v in Var::ALL {
            out = &out + &(&Self::var(v) * &self.partial(v));
        }
        out
    }

    /// Whether this is `λ · other` for some scalar `λ` (the zero form is a multiple of anything).
    pub fn is_multiple_of(&self, other: &Self) -> bool {
        if self.is_zero() {
            return true;
        }
        if other.is_zero() || self.degree != other.degree || self.len() != other.len() {
            return false;
        }
        let (e0, c0) = other.terms.iter().next().expect("nonzero");
        let lambda = self.coeff(*e0) / c0;
        &other.scale(&lambda) == self
    }
}

impl fmt::Debug for HomogeneousPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [deg {}]", self, self.degree)
    }
}

impl fmt::Display for HomogeneousPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let is_const = e.degree() == 0;
            if is_const {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                write!(f, "{}", e)?;
            } else {
                write!(f, "{}*{}", abs, e)?;
            }
        }
        Ok(())
    }
}

impl Add for &HomogeneousPolynomial {
    type Output = HomogeneousPolynomial;

    /// Panics on a degree mismatch; use [`HomogeneousPolynomial::try_add`] for fallible addition.
    fn add(self, other: &HomogeneousPolynomial) -> HomogeneousPolynomial {
        self.try_add(other).expect("adding forms of different degrees")
    }
}

impl Sub for &HomogeneousPolynomial {
    type Output = HomogeneousPolynomial;

    fn sub(self, other: &HomogeneousPolynomial) -> HomogeneousPolynomial {
        self.try_sub(other).expect("subtracting forms of different degrees")
    }
}

impl Neg for &HomogeneousPolynomial {
    type Output = HomogeneousPolynomial;
    fn neg(self) -> HomogeneousPolynomial {
        HomogeneousPolynomial {
            degree: self.degree,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &HomogeneousPolynomial {
    type Output = HomogeneousPolynomial;
    fn mul(self, other: &HomogeneousPolynomial) -> HomogeneousPolynomial {
        let mut out = HomogeneousPolynomial::zero(self.degree + other.degree);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(*e1 + *e2, c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for HomogeneousPolynomial {
            type Output = HomogeneousPolynomial;
            fn $m(self, other: HomogeneousPolynomial) -> HomogeneousPolynomial {
                (&self).$m(&other)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for HomogeneousPolynomial {
    type Output = HomogeneousPolynomial;
    fn neg(self) -> HomogeneousPolynomial {
        -&self
    }
}

// Parsing -----------------------------------------------------------------

impl FromStr for HomogeneousPolynomial {
    type Err = Error;

    /// Parses `c*x^i*y^j*z^k` sums; `"0"` parses as the zero form of degree 0.
    fn from_str(s: &str) -> Result<Self> {
        let terms = parse_terms(s)?;
        let degree = terms.first().map(|(e, _)| e.degree()).unwrap_or(0);
        Self::from_terms(degree, terms)
    }
}

impl HomogeneousPolynomial {
    /// Parses with a declared degree, so that `"0"` can denote the zero form of any degree.
    pub fn parse_with_degree(s: &str, degree: u32) -> Result<Self> {
        let terms = parse_terms(s)?;
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero());
        Self::from_terms(degree, terms)
    }
}

impl Serialize for HomogeneousPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for HomogeneousPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Serde helpers writing rationals as `"p/q"` strings.
pub mod scalar_text {
    use super::Scalar;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Scalar, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Scalar, D::Error> {
        let s = String::deserialize(d)?;
        s.trim().parse().map_err(serde::de::Error::custom)
    }

    pub mod triple {
        use super::Scalar;
        use serde::{Deserialize, Deserializer, Serialize, Serializer};

        pub fn serialize<S: Serializer>(v: &[Scalar; 3], s: S) -> Result<S::Ok, S::Error> {
            v.iter().map(|c| c.to_string()).collect::<Vec<_>>().serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[Scalar; 3], D::Error> {
            let v = <[String; 3]>::deserialize(d)?;
            let mut out = [(); 3].map(|_| Scalar::default());
            for (o, s) in out.iter_mut().zip(&v) {
                *o = s.trim().parse().map_err(serde::de::Error::custom)?;
            }
            Ok(out)
        }
    }

    pub mod pairs {
        use super::Scalar;
        use serde::{Deserialize, Deserializer, Serialize, Serializer};

        pub fn serialize<S: Serializer>(v: &[(Scalar, Scalar)], s: S) -> Result<S::Ok, S::Error> {
            v.iter()
                .map(|(a, b)| [a.to_string(), b.to_string()])
                .collect::<Vec<_>>()
                .serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<(Scalar, Scalar)>, D::Error> {
            let v = Vec::<[String; 2]>::deserialize(d)?;
            v.iter()
                .map(|[a, b]| {
                    let a = a.trim().parse().map_err(serde::de::Error::custom)?;
                    let b = b.trim().parse().map_err(serde::de::Error::custom)?;
                    Ok((a, b))
                })
                .collect()
        }
    }
}

fn parse_terms(s: &str) -> Result<Vec<(ExponentTriple, Scalar)>> {
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(Error::Parse("empty input".into()));
    }
    let mut pos = 0;
    let mut out = Vec::new();
    while pos < chars.len() {
        let mut sign = Scalar::one();
        if chars[pos] == '+' || chars[pos] == '-' {
            if chars[pos] == '-' {
                sign = -sign;
            }
            pos += 1;
        } else if !out.is_empty() {
            return Err(Error::Parse(format!("expected '+' or '-' at offset {pos}")));
        }
        let (exp, coeff) = parse_term(&chars, &mut pos)?;
        out.push((exp, coeff * sign));
    }
    Ok(out)
}

fn parse_uint(chars: &[char], pos: &mut usize) -> Option<BigInt> {
    let start = *pos;
    while *pos < chars.len() && chars[*pos].is_ascii_digit() {
        *pos += 1;
    }
    if start == *pos {
        return None;
    }
    chars[start..*pos].iter().collect::<String>().parse().ok()
}

fn parse_term(chars: &[char], pos: &mut usize) -> Result<(ExponentTriple, Scalar)> {
    let mut coeff = Scalar::one();
    let mut exp = [0u32; 3];
    let mut expect_factor = true;
    let mut seen_any = false;
    while *pos < chars.len() && expect_factor {
        let c = chars[*pos];
        if c.is_ascii_digit() {
            let num = parse_uint(chars, pos).ok_or_else(|| Error::Parse("bad integer".into()))?;
            let mut value = Scalar::from_integer(num);
            if *pos < chars.len() && chars[*pos] == '/' {
                *pos += 1;
                let den = parse_uint(chars, pos)
                    .ok_or_else(|| Error::Parse("bad denominator".into()))?;
                if den.is_zero() {
                    return Err(Error::Parse("zero denominator".into()));
                }
                value /= Scalar::from_integer(den);
            }
            coeff *= value;
        } else if let Some(v) = ['x', 'y', 'z'].iter().position(|&n| n == c) {
            *pos += 1;
            let mut e = 1u32;
            if *pos < chars.len() && chars[*pos] == '^' {
                *pos += 1;
                let n = parse_uint(chars, pos).ok_or_else(|| Error::Parse("bad exponent".into()))?;
                e = u32::try_from(n).map_err(|_| Error::Parse("exponent too large".into()))?;
            }
            exp[v] += e;
        } else {
            return Err(Error::Parse(format!("unexpected character '{c}'")));
        }
        seen_any = true;
        expect_factor = *pos < chars.len() && chars[*pos] == '*';
        if expect_factor {
            *pos += 1;
        }
    }
    if !seen_any || expect_factor {
        return Err(Error::Parse("dangling operator".into()));
    }
    Ok((ExponentTriple(exp), coeff))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> HomogeneousPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn additive_inverse_keeps_degree() {
        let a = p("x^2*y");
        let s = &a + &(-&a);
        assert!(s.is_zero());
        assert_eq!(s.degree(), 3);
    }

    #[test]
    fn square_of_osculating_conic() {
        let q = p("y^2 - 2*x*z");
        assert_eq!(&q * &q, p("y^4 - 4*x*y^2*z + 4*x^2*z^2"));
    }

    #[test]
    fn scaling() {
        let q = p("y^2 - 2*x*z");
        let s = q.scale(&ratio(3, 2));
        assert_eq!(s, p("3/2*y^2 - 3*x*z"));
        assert_eq!(s.to_string(), "-3*x*z + 3/2*y^2");
    }

    #[test]
    fn add_rejects_degree_mismatch() {
        assert_eq!(p("x").try_add(&p("x^2")), Err(Error::DegreeMismatch(1, 2)));
    }

    #[test]
    fn derivatives() {
        assert_eq!(p("x^3*z").partial(Var::X), p("3*x^2*z"));
        let d = p("5*y^2").partial(Var::Y);
        assert_eq!(d, p("10*y"));
        let c = p("7*x").partial(Var::X);
        assert_eq!(c.degree(), 0);
        assert_eq!(c, HomogeneousPolynomial::constant(int(7)));
        assert_eq!(c.partial(Var::Y), HomogeneousPolynomial::zero(0));
    }

    #[test]
    fn euler_identity_fermat() {
        let g = p("x^4 + y^4 + z^4");
        assert_eq!(g.euler(), g.scale(&int(4)));
    }

    #[test]
    fn evaluation() {
        let q = p("y^2 - 2*x*z");
        assert_eq!(q.evaluate(&[int(1), int(0), int(0)]), int(0));
        assert_eq!(q.evaluate(&[int(1), int(2), int(1)]), int(2));
        let g = p("x^3*z - y^3*z");
        assert_eq!(g.evaluate(&[int(1), int(1), int(5)]), int(0));
    }

    #[test]
    fn printing_is_graded_lex() {
        let g = p("z^4 + x*y*z^2 - y^3*z + 2*x^4 - 1/3*x^2*y^2");
        assert_eq!(g.to_string(), "2*x^4 - 1/3*x^2*y^2 + x*y*z^2 - y^3*z + z^4");
        assert_eq!(HomogeneousPolynomial::zero(3).to_string(), "0");
        assert_eq!(HomogeneousPolynomial::constant(ratio(-3, 2)).to_string(), "-3/2");
    }

    #[test]
    fn parse_errors() {
        assert!("x^2 + y".parse::<HomogeneousPolynomial>().is_err());
        assert!("x^2 + ".parse::<HomogeneousPolynomial>().is_err());
        assert!("2*w".parse::<HomogeneousPolynomial>().is_err());
        assert!("1/0*x".parse::<HomogeneousPolynomial>().is_err());
        assert_eq!(
            HomogeneousPolynomial::parse_with_degree("0", 4).unwrap(),
            HomogeneousPolynomial::zero(4)
        );
    }

    #[test]
    fn parse_accepts_whitespace_and_repeated_vars() {
        assert_eq!(p(" 3 * x * x * y - x^2*y "), p("2*x^2*y"));
    }

    #[test]
    fn substitution_identity_and_swap() {
        let g = p("x^3*z - y^3*z + x*y*z^2");
        let id = [[int(1), int(0), int(0)], [int(0), int(1), int(0)], [int(0), int(0), int(1)]];
        assert_eq!(g.substitute_linear(&id), g);
        let swap = [[int(0), int(1), int(0)], [int(1), int(0), int(0)], [int(0), int(0), int(1)]];
        assert_eq!(g.substitute_linear(&swap), p("y^3*z - x^3*z + x*y*z^2"));
    }

    #[test]
    fn primitive_part_clears_denominators() {
        let g = p("1/2*x^2 - 3/4*y*z");
        assert_eq!(g.primitive_part(), p("2*x^2 - 3*y*z"));
        assert_eq!(p("-2*x + 4*y").primitive_part(), p("x - 2*y"));
    }
}
