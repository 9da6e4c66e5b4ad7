//! Arithmetic in GF(3) and GF(9) = GF(3)[w]/(w^2 - w - 1).
//!
//! Elements of GF(9) are stored as a coefficient pair `c0 + c1*w` over GF(3).
//! The textual token of an element is the integer `c0 + 3*c1`, so `"3"` is
//! `w`, `"4"` is `w + 1` and `"7"` is `2w + 1`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("power {0} out of range 0..=7")]
    PowerOutOfRange(u32),
    #[error("vector length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("invalid element token {0:?}")]
    BadToken(String),
}

/// Element of GF(3), always reduced to `0..=2`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct F3(u8);

impl F3 {
    pub const ZERO: F3 = F3(0);
    pub const ONE: F3 = F3(1);
    pub const TWO: F3 = F3(2);
    pub const ALL: [F3; 3] = [F3(0), F3(1), F3(2)];

    pub fn new(value: u8) -> Self {
        F3(value % 3)
    }

    pub fn from_i64(value: i64) -> Self {
        F3(value.rem_euclid(3) as u8)
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for F3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for F3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for F3 {
    type Output = F3;
    fn add(self, rhs: F3) -> F3 {
        F3((self.0 + rhs.0) % 3)
    }
}

impl AddAssign for F3 {
    fn add_assign(&mut self, rhs: F3) {
        *self = *self + rhs;
    }
}

impl Sub for F3 {
    type Output = F3;
    fn sub(self, rhs: F3) -> F3 {
        F3((self.0 + 3 - rhs.0) % 3)
    }
}

impl Neg for F3 {
    type Output = F3;
    fn neg(self) -> F3 {
        F3((3 - self.0) % 3)
    }
}

impl Mul for F3 {
    type Output = F3;
    fn mul(self, rhs: F3) -> F3 {
        F3((self.0 * rhs.0) % 3)
    }
}

/// Element `c0 + c1*w` of GF(9), where `w^2 = w + 1`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct F9 {
    pub c0: F3,
    pub c1: F3,
}

impl F9 {
    pub const ZERO: F9 = F9 { c0: F3(0), c1: F3(0) };
    pub const ONE: F9 = F9 { c0: F3(1), c1: F3(0) };
    pub const OMEGA: F9 = F9 { c0: F3(0), c1: F3(1) };

    pub fn new(c0: F3, c1: F3) -> Self {
        F9 { c0, c1 }
    }

    /// All nine elements in token order.
    pub fn all() -> impl Iterator<Item = F9> {
        (0..9u8).map(|e| F9::from_token_value(e).expect("token in range"))
    }

    pub fn embed(x: F3) -> Self {
        F9 { c0: x, c1: F3::ZERO }
    }

    pub fn is_zero(self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }

    /// `w^k` for `0 <= k <= 7`.
    pub fn from_power(k: u32) -> Result<F9, FieldError> {
        if k > 7 {
            return Err(FieldError::PowerOutOfRange(k));
        }
        Ok((0..k).fold(F9::ONE, |acc, _| acc * F9::OMEGA))
    }

    /// Frobenius conjugate `x^3`.
    pub fn conj(self) -> F9 {
        self * self * self
    }

    pub fn token_value(self) -> u8 {
        self.c0.0 + 3 * self.c1.0
    }

    pub fn from_token_value(e: u8) -> Option<F9> {
        (e < 9).then_some(F9 { c0: F3(e % 3), c1: F3(e / 3) })
    }

    pub fn parse_token(tok: &str) -> Result<F9, FieldError> {
        tok.parse::<u8>()
            .ok()
            .and_then(F9::from_token_value)
            .filter(|_| tok.len() == 1)
            .ok_or_else(|| FieldError::BadToken(tok.to_string()))
    }

    /// Action of the scalar field GF(3).
    pub fn scale(self, a: F3) -> F9 {
        F9 { c0: self.c0 * a, c1: self.c1 * a }
    }
}

impl fmt::Debug for F9 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.c0.0, self.c1.0) {
            (c0, 0) => write!(f, "{c0}"),
            (0, 1) => write!(f, "w"),
            (0, c1) => write!(f, "{c1}w"),
            (c0, 1) => write!(f, "w+{c0}"),
            (c0, c1) => write!(f, "{c1}w+{c0}"),
        }
    }
}

impl fmt::Display for F9 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.token_value())
    }
}

impl Add for F9 {
    type Output = F9;
    fn add(self, rhs: F9) -> F9 {
        F9 { c0: self.c0 + rhs.c0, c1: self.c1 + rhs.c1 }
    }
}

impl AddAssign for F9 {
    fn add_assign(&mut self, rhs: F9) {
        *self = *self + rhs;
    }
}

impl Sub for F9 {
    type Output = F9;
    fn sub(self, rhs: F9) -> F9 {
        F9 { c0: self.c0 - rhs.c0, c1: self.c1 - rhs.c1 }
    }
}

impl Neg for F9 {
    type Output = F9;
    fn neg(self) -> F9 {
        F9 { c0: -self.c0, c1: -self.c1 }
    }
}

impl Mul for F9 {
    type Output = F9;
    fn mul(self, rhs: F9) -> F9 {
        // (a + bw)(c + dw) = ac + (ad + bc)w + bd(w + 1)
        let (a, b, c, d) = (self.c0, self.c1, rhs.c0, rhs.c1);
        let bd = b * d;
        F9 { c0: a * c + bd, c1: a * d + b * c + bd }
    }
}

/// Trace-Hermitian form `w^2 (x conj(y) - conj(x) y)`, which always lands in GF(3).
pub fn trace_hermitian(x: F9, y: F9) -> F3 {
    let omega_sq = F9::OMEGA * F9::OMEGA;
    let z = omega_sq * (x * y.conj() - x.conj() * y);
    debug_assert!(z.c1.is_zero(), "trace-Hermitian value left GF(3)");
    z.c0
}

/// Vector over GF(9) with fixed length.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct F9Vector(Vec<F9>);

impl F9Vector {
    pub fn new(entries: Vec<F9>) -> Self {
        F9Vector(entries)
    }

    pub fn zeros(n: usize) -> Self {
        F9Vector(vec![F9::ZERO; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[F9] {
        &self.0
    }

    pub fn get(&self, i: usize) -> F9 {
        self.0[i]
    }

    pub fn weight(&self) -> usize {
        self.0.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn scale(&self, a: F3) -> F9Vector {
        F9Vector(self.0.iter().map(|x| x.scale(a)).collect())
    }

    pub fn add(&self, other: &F9Vector) -> Result<F9Vector, FieldError> {
        check_len(self.len(), other.len())?;
        Ok(F9Vector(self.0.iter().zip(&other.0).map(|(&x, &y)| x + y).collect()))
    }
}

impl fmt::Debug for F9Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.0).finish()
    }
}

impl From<Vec<F9>> for F9Vector {
    fn from(v: Vec<F9>) -> Self {
        F9Vector(v)
    }
}

/// Coefficient vector over GF(3).
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct F3Vector(Vec<F3>);

impl F3Vector {
    pub fn new(entries: Vec<F3>) -> Self {
        F3Vector(entries)
    }

    pub fn zeros(n: usize) -> Self {
        F3Vector(vec![F3::ZERO; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![F3::ZERO; n];
        v[i] = F3::ONE;
        F3Vector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[F3] {
        &self.0
    }
}

impl From<Vec<F3>> for F3Vector {
    fn from(v: Vec<F3>) -> Self {
        F3Vector(v)
    }
}

fn check_len(left: usize, right: usize) -> Result<(), FieldError> {
    if left == right {
        Ok(())
    } else {
        Err(FieldError::LengthMismatch { left, right })
    }
}

pub fn trace_hermitian_vec(u: &F9Vector, v: &F9Vector) -> Result<F3, FieldError> {
    check_len(u.len(), v.len())?;
    Ok(u.0.iter().zip(&v.0).fold(F3::ZERO, |acc, (&x, &y)| acc + trace_hermitian(x, y)))
}

pub fn weight(v: &F9Vector) -> usize {
    v.weight()
}
