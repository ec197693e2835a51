//! Exact scalars: arbitrary-precision rationals and Gaussian rationals `a + b·i`,
//! together with the field involution and its positive cone.
//!
//! Text syntax (used by every front end): `a`, `a/b`, `i`, `a/b*i`, `a + c/d*i`,
//! `a - c/d*i`, each with an optional leading `-`. Printing round-trips.

use alloc::string::{String, ToString};
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalar parse error at {position}: {message}")]
    Parse { position: usize, message: String },
}

/// A rational number in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: BigInt, denom: BigInt) -> Result<Self, ScalarError> {
        if denom.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer, denom)))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(numer: i64, denom: i64) -> Self {
        Self::new(BigInt::from(numer), BigInt::from(denom)).expect("nonzero denominator")
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ScalarError> {
        if other.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Rational(&self.0 / &other.0))
    }

    pub fn floor(&self) -> Self {
        Rational(self.0.floor())
    }

    pub fn ceil(&self) -> Self {
        Rational(self.0.ceil())
    }

    /// Greatest common divisor of two rationals, i.e. the largest `g` with
    /// `a/g` and `b/g` both integers. Zero when both inputs are zero.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.abs();
        }
        if other.is_zero() {
            return self.abs();
        }
        let numer = self.numer().gcd(other.numer());
        let denom = self.denom().lcm(other.denom());
        Rational(BigRational::new(numer, denom))
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational(BigRational::one())
    }
}

impl Default for Rational {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

macro_rules! forward_binop {
    ($ty:ident, $trait:ident, $method:ident, $impl_fn:ident) => {
        impl $trait<&$ty> for &$ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                $impl_fn(self, rhs)
            }
        }
        impl $trait<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                $impl_fn(&self, &rhs)
            }
        }
        impl $trait<&$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                $impl_fn(&self, rhs)
            }
        }
        impl $trait<$ty> for &$ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                $impl_fn(self, &rhs)
            }
        }
    };
}

fn rat_add(a: &Rational, b: &Rational) -> Rational {
    Rational(&a.0 + &b.0)
}
fn rat_sub(a: &Rational, b: &Rational) -> Rational {
    Rational(&a.0 - &b.0)
}
fn rat_mul(a: &Rational, b: &Rational) -> Rational {
    Rational(&a.0 * &b.0)
}

forward_binop!(Rational, Add, add, rat_add);
forward_binop!(Rational, Sub, sub, rat_sub);
forward_binop!(Rational, Mul, mul, rat_mul);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let value: Scalar = s.parse()?;
        if !value.im.is_zero() {
            return Err(ScalarError::Parse {
                position: 0,
                message: "expected a rational number".to_string(),
            });
        }
        Ok(value.re)
    }
}

/// An element of the Gaussian rationals ℚ(i). `im == 0` encodes the subfield ℚ.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    pub re: Rational,
    pub im: Rational,
}

impl Scalar {
    pub fn new(re: Rational, im: Rational) -> Self {
        Scalar { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Scalar { re, im: Rational::zero() }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::real(Rational::from_integer(n))
    }

    pub fn from_ratio(numer: i64, denom: i64) -> Self {
        Self::real(Rational::from_ratio(numer, denom))
    }

    pub fn i() -> Self {
        Scalar { re: Rational::zero(), im: Rational::one() }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Complex conjugate `re - im·i`.
    pub fn conj(&self) -> Self {
        Scalar { re: self.re.clone(), im: -&self.im }
    }

    /// The norm `a·conj(a) = re² + im²`.
    pub fn norm(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let c = self.conj();
        Ok(Scalar { re: c.re.checked_div(&n)?, im: c.im.checked_div(&n)? })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self * &other.inv()?)
    }

    /// Integer power; negative exponents need a nonzero base.
    pub fn pow(&self, exp: i64) -> Result<Self, ScalarError> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Scalar::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::real(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_integer(n)
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::real(Rational::one())
    }
}

fn sc_add(a: &Scalar, b: &Scalar) -> Scalar {
    Scalar { re: &a.re + &b.re, im: &a.im + &b.im }
}
fn sc_sub(a: &Scalar, b: &Scalar) -> Scalar {
    Scalar { re: &a.re - &b.re, im: &a.im - &b.im }
}
fn sc_mul(a: &Scalar, b: &Scalar) -> Scalar {
    if a.im.is_zero() && b.im.is_zero() {
        return Scalar::real(&a.re * &b.re);
    }
    Scalar {
        re: &a.re * &b.re - &a.im * &b.im,
        im: &a.re * &b.im + &a.im * &b.re,
    }
}

forward_binop!(Scalar, Add, add, sc_add);
forward_binop!(Scalar, Sub, sub, sc_sub);
forward_binop!(Scalar, Mul, mul, sc_mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -self.re, im: -self.im }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -&self.re, im: -&self.im }
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn imag(f: &mut fmt::Formatter<'_>, im: &Rational) -> fmt::Result {
            if im.is_one() {
                write!(f, "i")
            } else {
                write!(f, "{}*i", im)
            }
        }
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => {
                if self.im.is_negative() {
                    write!(f, "-")?;
                }
                imag(f, &self.im.abs())
            }
            (false, false) => {
                write!(f, "{}", self.re)?;
                write!(f, " {} ", if self.im.is_negative() { '-' } else { '+' })?;
                imag(f, &self.im.abs())
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

struct ScalarParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl ScalarParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error(&self, message: &str) -> ScalarError {
        ScalarError::Parse { position: self.pos, message: message.to_string() }
    }

    fn integer(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let digits = core::str::from_utf8(&self.src[start..self.pos]).ok()?;
        digits.parse().ok()
    }

    // term := number ('/' number)? ('*'? 'i')? | 'i'
    fn term(&mut self) -> Result<Scalar, ScalarError> {
        let mut value: Option<Rational> = None;
        if let Some(n) = self.integer() {
            let mut r = Rational(BigRational::from_integer(n));
            if self.peek() == Some(b'/') {
                self.pos += 1;
                let d = self.integer().ok_or_else(|| self.error("expected denominator"))?;
                r = Rational::new(r.0.to_integer(), d).map_err(|_| self.error("zero denominator"))?;
            }
            value = Some(r);
        }
        let mut imaginary = false;
        if value.is_some() && self.peek() == Some(b'*') {
            self.pos += 1;
            if self.peek() != Some(b'i') {
                return Err(self.error("expected 'i' after '*'"));
            }
        }
        if self.peek() == Some(b'i') {
            self.pos += 1;
            imaginary = true;
        }
        match (value, imaginary) {
            (None, false) => Err(self.error("expected a number or 'i'")),
            (v, true) => Ok(Scalar { re: Rational::zero(), im: v.unwrap_or_else(Rational::one) }),
            (Some(v), false) => Ok(Scalar::real(v)),
        }
    }

    fn expr(&mut self) -> Result<Scalar, ScalarError> {
        let mut negate = false;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            negate = true;
        }
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                None => return Ok(acc),
                Some(_) => return Err(self.error("unexpected character")),
            }
        }
    }
}

impl FromStr for Scalar {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ScalarParser { src: s.as_bytes(), pos: 0 }.expr()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Involution {
    Identity,
    Conjugation,
}

/// The coefficient field (ℚ or ℚ(i)) together with its involution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldConfig {
    pub involution: Involution,
    /// When set, every scalar must be real.
    pub rationals_only: bool,
}

impl FieldConfig {
    /// ℚ with the identity involution.
    pub const RATIONALS: FieldConfig =
        FieldConfig { involution: Involution::Identity, rationals_only: true };
    /// ℚ(i) with complex conjugation.
    pub const GAUSSIAN_CONJ: FieldConfig =
        FieldConfig { involution: Involution::Conjugation, rationals_only: false };
    /// ℚ(i) with the identity involution; not positive definite.
    pub const GAUSSIAN_IDENTITY: FieldConfig =
        FieldConfig { involution: Involution::Identity, rationals_only: false };

    pub fn admits(&self, a: &Scalar) -> bool {
        !self.rationals_only || a.is_real()
    }

    pub fn star(&self, a: &Scalar) -> Scalar {
        match self.involution {
            Involution::Identity => a.clone(),
            Involution::Conjugation => a.conj(),
        }
    }

    /// Membership in the cone of finite sums `Σ x·x*`.
    ///
    /// Over ℚ these are the nonnegative rationals (four-square theorem); sums of
    /// norms in ℚ(i) are the nonnegative rationals as well; with the identity
    /// involution on ℚ(i) the cone is the whole field because `i·i* = -1`.
    pub fn in_positive_cone(&self, a: &Scalar) -> bool {
        if !self.admits(a) {
            return false;
        }
        if !self.rationals_only && self.involution == Involution::Identity {
            return true;
        }
        a.is_real() && !a.re.is_negative()
    }

    /// `Σ x_k x_k* = 0` forces every `x_k = 0`.
    pub fn is_positive_definite(&self) -> bool {
        self.rationals_only || self.involution == Involution::Conjugation
    }

    /// Whether `a ≥ b` in the order induced by the positive cone.
    pub fn geq(&self, a: &Scalar, b: &Scalar) -> bool {
        self.in_positive_cone(&(a - b))
    }
}

impl Default for FieldConfig {
    fn default() -> Self {
        FieldConfig::GAUSSIAN_CONJ
    }
}
