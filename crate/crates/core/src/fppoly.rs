//! Dense univariate polynomials over a prime field `F_p`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::intnum::is_prime;
use crate::{Error, Result};

/// The prime field `Z_p`. Residues are `u64` values in `[0, p)`.
///
/// The modulus is kept below `2^32` so that products of two residues fit in
/// a `u64` without widening.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 32 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn modulus(self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce(self, c: u64) -> u64 {
        c % self.p
    }

    pub fn from_i64(self, c: i64) -> u64 {
        c.rem_euclid(self.p as i64) as u64
    }

    pub fn from_i128(self, c: i128) -> u64 {
        c.rem_euclid(self.p as i128) as u64
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "zero has no inverse in F_{}", self.p);
        self.pow(a, self.p - 2)
    }

    /// Signed representative in `(-p/2, p/2]`, used only for display.
    pub fn signed(self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

/// An element of `F_p[t]`, lowest degree first, with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    field: PrimeField,
    coeffs: Vec<u64>,
}

impl UniPoly {
    /// Builds a polynomial from arbitrary `u64` coefficients (reduced mod p).
    pub fn new(field: PrimeField, coeffs: Vec<u64>) -> Self {
        let mut coeffs = coeffs;
        for c in coeffs.iter_mut() {
            *c = field.reduce(*c);
        }
        Self::from_canonical_parts(field, coeffs)
    }

    pub fn from_signed(field: PrimeField, coeffs: &[i64]) -> Self {
        Self::from_canonical_parts(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    fn from_canonical_parts(field: PrimeField, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn zero(field: PrimeField) -> Self {
        UniPoly { field, coeffs: Vec::new() }
    }

    pub fn one(field: PrimeField) -> Self {
        Self::constant(field, 1)
    }

    pub fn constant(field: PrimeField, c: u64) -> Self {
        Self::new(field, vec![c])
    }

    /// `c * t^deg`.
    pub fn monomial(field: PrimeField, c: u64, deg: usize) -> Self {
        let mut coeffs = vec![0; deg + 1];
        coeffs[deg] = c;
        Self::new(field, coeffs)
    }

    /// The indeterminate `t`.
    pub fn t(field: PrimeField) -> Self {
        Self::monomial(field, 1, 1)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient, zero for the zero polynomial.
    pub fn lead(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == 1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.field.inv(self.lead()))
    }

    pub fn scale(&self, c: u64) -> Self {
        let f = self.field;
        let c = f.reduce(c);
        Self::from_canonical_parts(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// `self * t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        UniPoly { field: self.field, coeffs }
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Ok(Self::from_canonical_parts(f, coeffs))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect();
        Ok(Self::from_canonical_parts(f, coeffs))
    }

    /// Schoolbook product.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.field));
        }
        let f = self.field;
        let p = f.modulus();
        let mut acc = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a * b) % p;
            }
        }
        Ok(Self::from_canonical_parts(f, acc))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Division with remainder: `self = q * g + r`, `deg r < deg g`.
    pub fn divrem(&self, g: &Self) -> Result<(Self, Self)> {
        self.check_field(g)?;
        let Some(dg) = g.degree() else {
            return Err(Error::DivisionByZeroPoly);
        };
        let f = self.field;
        let Some(df) = self.degree() else {
            return Ok((Self::zero(f), Self::zero(f)));
        };
        if df < dg {
            return Ok((Self::zero(f), self.clone()));
        }
        let inv_lead = f.inv(g.lead());
        let mut r = self.coeffs.clone();
        let mut q = vec![0u64; df - dg + 1];
        for k in (0..=df - dg).rev() {
            let c = f.mul(r[k + dg], inv_lead);
            if c == 0 {
                continue;
            }
            q[k] = c;
            for (j, &gj) in g.coeffs.iter().enumerate() {
                r[k + j] = f.sub(r[k + j], f.mul(c, gj));
            }
        }
        r.truncate(dg);
        Ok((Self::from_canonical_parts(f, q), Self::from_canonical_parts(f, r)))
    }

    pub fn rem(&self, g: &Self) -> Result<Self> {
        Ok(self.divrem(g)?.1)
    }

    /// Exact quotient; panics if `g` does not divide `self`.
    pub(crate) fn div_exact(&self, g: &Self) -> Self {
        let (q, r) = self.divrem(g).expect("nonzero divisor over the same field");
        assert!(r.is_zero(), "inexact division");
        q
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::DegenerateInput("gcd(0, 0) is undefined"));
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn derivative(&self) -> Self {
        let f = self.field;
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| f.mul(c, f.reduce(i as u64))).collect();
        Self::from_canonical_parts(f, coeffs)
    }

    /// `gcd(f, f') = 1`; over the perfect field `F_p` this is squarefreeness.
    pub fn is_separable(&self) -> Result<bool> {
        match self.degree() {
            Some(d) if d >= 1 => Ok(self.gcd(&self.derivative())?.is_one()),
            _ => Err(Error::DegenerateInput("separability needs degree at least 1")),
        }
    }

    /// The polynomial `g` with `g^p = self`, defined when only exponents
    /// divisible by `p` occur (equivalently `self' = 0`).
    pub fn pth_root(&self) -> Result<Self> {
        let p = self.field.modulus() as usize;
        if self.coeffs.iter().enumerate().any(|(i, &c)| c != 0 && i % p != 0) {
            return Err(Error::NotAPthPower);
        }
        // a^p = a in F_p, so the coefficients carry over unchanged.
        let coeffs = self.coeffs.iter().step_by(p).copied().collect();
        Ok(Self::from_canonical_parts(self.field, coeffs))
    }

    /// `self^e mod m` by square-and-multiply.
    pub fn powmod(&self, mut e: u64, m: &Self) -> Result<Self> {
        self.check_field(m)?;
        match m.degree() {
            Some(d) if d >= 1 => {}
            _ => return Err(Error::InvalidModulus),
        }
        let mut base = self.rem(m)?;
        let mut acc = Self::one(self.field).rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(m)?;
            }
            e >>= 1;
            if e > 0 {
                base = (&base * &base).rem(m)?;
            }
        }
        Ok(acc)
    }

    /// Horner evaluation.
    pub fn eval(&self, c: u64) -> u64 {
        let f = self.field;
        let c = f.reduce(c);
        self.coeffs.iter().rev().fold(0, |acc, &a| f.add(f.mul(acc, c), a))
    }

    /// Canonical factor order: by degree, then coefficients from the top down.
    pub fn canonical_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }

    /// Renders with a custom variable name (`t` by default in `Display`).
    pub fn display_in(&self, var: &str) -> String {
        let terms: Vec<(u64, usize)> =
            self.coeffs.iter().enumerate().rev().filter(|(_, &c)| c != 0).map(|(i, &c)| (c, i)).collect();
        format_terms(terms.iter().map(|&(c, i)| (c, monomial_text(&[(var, i)], false))), false)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("t"))
    }
}

/// `x^2*y` style text for a monomial; empty string for the unit monomial.
/// In compact mode factors are juxtaposed (`x^2y`).
pub(crate) fn monomial_text(vars: &[(&str, usize)], compact: bool) -> String {
    let parts: Vec<String> = vars
        .iter()
        .filter(|(_, e)| *e > 0)
        .map(|&(v, e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect();
    parts.join(if compact { "" } else { "*" })
}

/// Joins `(coefficient, monomial)` pairs into `c*m + c*m + c` text.
pub(crate) fn format_terms(terms: impl Iterator<Item = (u64, String)>, compact: bool) -> String {
    let (sep, mul) = if compact { ("+", "") } else { (" + ", "*") };
    let rendered: Vec<String> = terms
        .map(|(c, m)| match (c, m.is_empty()) {
            (_, true) => c.to_string(),
            (1, false) => m,
            (_, false) => format!("{c}{mul}{m}"),
        })
        .collect();
    if rendered.is_empty() {
        "0".to_string()
    } else {
        rendered.join(sep)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl $tr<&UniPoly> for &UniPoly {
            type Output = UniPoly;
            fn $method(self, rhs: &UniPoly) -> UniPoly {
                self.$try(rhs).expect("operands over the same field")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        let f = self.field;
        UniPoly { field: f, coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect() }
    }
}
