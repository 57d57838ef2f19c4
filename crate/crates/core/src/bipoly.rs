//! Sparse bivariate polynomials over `F_p` and the structural predicates used
//! by the separability decision: homogeneity, unitarity per variable,
//! dehomogenization `f(t, 1)` and homogeneous factorization.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::fpfactor;
use crate::fppoly::{format_terms, monomial_text, PrimeField, UniPoly};
use crate::{Error, Result};

/// `x^x * y^y`. Ordered graded-lexicographically: total degree first, then
/// x-degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub x: u32,
    pub y: u32,
}

impl Monomial {
    pub const fn new(x: u32, y: u32) -> Self {
        Monomial { x, y }
    }

    pub fn total(self) -> u32 {
        self.x + self.y
    }

    pub fn is_unit(self) -> bool {
        self.x == 0 && self.y == 0
    }

    pub fn mul(self, other: Monomial) -> Monomial {
        Monomial { x: self.x + other.x, y: self.y + other.y }
    }

    pub fn degree_in(self, var: Var) -> u32 {
        match var {
            Var::X => self.x,
            Var::Y => self.y,
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total().cmp(&other.total()).then(self.x.cmp(&other.x))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
}

impl Var {
    pub fn other(self) -> Var {
        match self {
            Var::X => Var::Y,
            Var::Y => Var::X,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BiPoly {
    field: PrimeField,
    terms: BTreeMap<Monomial, u64>,
}

impl BiPoly {
    pub fn zero(field: PrimeField) -> Self {
        BiPoly { field, terms: BTreeMap::new() }
    }

    pub fn constant(field: PrimeField, c: u64) -> Self {
        Self::monomial(field, c, Monomial::new(0, 0))
    }

    pub fn monomial(field: PrimeField, c: u64, m: Monomial) -> Self {
        let mut out = Self::zero(field);
        out.add_term(m, c);
        out
    }

    pub fn x(field: PrimeField) -> Self {
        Self::monomial(field, 1, Monomial::new(1, 0))
    }

    pub fn y(field: PrimeField) -> Self {
        Self::monomial(field, 1, Monomial::new(0, 1))
    }

    /// From `((x, y), coefficient)` pairs with signed coefficients; repeated
    /// monomials are summed.
    pub fn from_terms(field: PrimeField, terms: &[((u32, u32), i64)]) -> Self {
        let mut out = Self::zero(field);
        for &((x, y), c) in terms {
            out.add_term(Monomial::new(x, y), field.from_i64(c));
        }
        out
    }

    /// Adds `c * m` in place.
    pub fn add_term(&mut self, m: Monomial, c: u64) {
        let f = self.field;
        let c = f.reduce(c);
        if c == 0 {
            return;
        }
        let e = self.terms.entry(m).or_insert(0);
        *e = f.add(*e, c);
        if *e == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: Monomial) -> u64 {
        self.terms.get(&m).copied().unwrap_or(0)
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (Monomial, u64)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn has_constant_term(&self) -> bool {
        self.terms.contains_key(&Monomial::new(0, 0))
    }

    pub fn degree_in(&self, var: Var) -> Option<u32> {
        self.terms.keys().map(|m| m.degree_in(var)).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total()).max()
    }

    /// Exchanges the roles of x and y.
    pub fn swap_vars(&self) -> Self {
        BiPoly { field: self.field, terms: self.terms.iter().map(|(m, &c)| (Monomial::new(m.y, m.x), c)).collect() }
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
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m, c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m, self.field.neg(c));
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let f = self.field;
        let mut out = Self::zero(f);
        for (ma, ca) in self.terms() {
            for (mb, cb) in other.terms() {
                out.add_term(ma.mul(mb), f.mul(ca, cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: u64) -> Self {
        let f = self.field;
        let c = f.reduce(c);
        if c == 0 {
            return Self::zero(f);
        }
        BiPoly { field: f, terms: self.terms.iter().map(|(&m, &a)| (m, f.mul(a, c))).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(self.field, 1);
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

    /// Multiplies by `x^m.x y^m.y`.
    pub fn shift(&self, m: Monomial) -> Self {
        BiPoly { field: self.field, terms: self.terms.iter().map(|(&k, &c)| (k.mul(m), c)).collect() }
    }

    /// Builds `sum_i c_i(other var) * var^i` from coefficient polynomials.
    pub fn from_coefficients_in(var: Var, coeffs: &[UniPoly], field: PrimeField) -> Self {
        let mut out = Self::zero(field);
        for (i, c) in coeffs.iter().enumerate() {
            for (j, &a) in c.coeffs().iter().enumerate() {
                let m = match var {
                    Var::X => Monomial::new(i as u32, j as u32),
                    Var::Y => Monomial::new(j as u32, i as u32),
                };
                out.add_term(m, a);
            }
        }
        out
    }

    /// Coefficient of `var^k`, a polynomial in the other variable.
    pub fn coefficient_in(&self, var: Var, k: u32) -> UniPoly {
        let other = var.other();
        let mut coeffs = Vec::new();
        for (m, c) in self.terms() {
            if m.degree_in(var) == k {
                let j = m.degree_in(other) as usize;
                if coeffs.len() <= j {
                    coeffs.resize(j + 1, 0);
                }
                coeffs[j] = c;
            }
        }
        UniPoly::new(self.field, coeffs)
    }

    /// Viewed as a polynomial in `var`: coefficient polynomials indexed by
    /// the `var`-degree.
    pub fn coefficients_in(&self, var: Var) -> Vec<UniPoly> {
        let Some(d) = self.degree_in(var) else {
            return Vec::new();
        };
        (0..=d).map(|k| self.coefficient_in(var, k)).collect()
    }

    /// The total degree when every term has the same total degree.
    pub fn is_homogeneous(&self) -> Result<u32> {
        let mut degs = self.terms.keys().map(|m| m.total());
        let Some(first) = degs.next() else {
            return Err(Error::DegenerateInput("zero polynomial"));
        };
        if degs.all(|d| d == first) {
            Ok(first)
        } else {
            Err(Error::NotHomogeneous)
        }
    }

    /// True iff the leading coefficient in `var` is the constant 1.
    pub fn is_unitary_in(&self, var: Var) -> Result<bool> {
        match self.degree_in(var) {
            Some(d) if d >= 1 => Ok(self.coefficient_in(var, d).is_one()),
            _ => Err(Error::DegenerateInput("polynomial has degree zero in the variable")),
        }
    }

    /// Unitary in both x and y.
    pub fn is_unitary(&self) -> Result<bool> {
        Ok(self.is_unitary_in(Var::X)? && self.is_unitary_in(Var::Y)?)
    }

    /// Splits a homogeneous `f` as `x^e_x y^e_y H` and returns `H(t, 1)`.
    pub fn dehomogenize(&self) -> Result<Dehomogenized> {
        let deg = self.is_homogeneous().map_err(|e| match e {
            Error::DegenerateInput(_) => Error::NotHomogeneous,
            e => e,
        })?;
        if deg == 0 {
            return Err(Error::DegenerateInput("homogeneous polynomial of degree zero"));
        }
        let e_x = self.terms.keys().map(|m| m.x).min().expect("nonzero");
        let e_y = self.terms.keys().map(|m| m.y).min().expect("nonzero");
        let mut coeffs = Vec::new();
        for (m, c) in self.terms() {
            let i = (m.x - e_x) as usize;
            if coeffs.len() <= i {
                coeffs.resize(i + 1, 0);
            }
            coeffs[i] = c;
        }
        Ok(Dehomogenized { e_x, e_y, core: UniPoly::new(self.field, coeffs) })
    }

    /// `x^e_x y^e_y sum_i core_i x^i y^(deg core - i)`.
    pub fn homogenize(core: &UniPoly, e_x: u32, e_y: u32) -> Result<Self> {
        if core.eval(0) == 0 {
            return Err(Error::NotCore);
        }
        let d = core.degree().expect("nonzero") as u32;
        let mut out = Self::zero(core.field());
        for (i, &c) in core.coeffs().iter().enumerate() {
            out.add_term(Monomial::new(e_x + i as u32, e_y + d - i as u32), c);
        }
        Ok(out)
    }

    /// Separability of a homogeneous polynomial: no repeated `x` or `y`
    /// factor and a separable (or constant) core.
    pub fn homog_separable(&self) -> Result<bool> {
        let d = self.dehomogenize()?;
        if d.e_x > 1 || d.e_y > 1 {
            return Ok(false);
        }
        if d.core.degree() == Some(0) {
            return Ok(true);
        }
        d.core.is_separable()
    }

    /// Factors a homogeneous polynomial into `x`, `y` and homogenizations of
    /// the irreducible factors of its core.
    pub fn homog_factor(&self) -> Result<HomogFactorization> {
        let d = self.dehomogenize()?;
        let field = self.field;
        let mut factors = Vec::new();
        if d.e_x > 0 {
            factors.push((Self::x(field), d.e_x));
        }
        if d.e_y > 0 {
            factors.push((Self::y(field), d.e_y));
        }
        let unit = if d.core.degree() == Some(0) {
            d.core.lead()
        } else {
            let f = fpfactor::factor(&d.core)?;
            for (g, m) in f.factors() {
                factors.push((Self::homogenize(g, 0, 0)?, *m));
            }
            f.unit()
        };
        Ok(HomogFactorization { field, unit, factors })
    }

    /// Text in the given variable names, e.g. `("a", "b")`.
    pub fn display_with(&self, vars: (&str, &str), compact: bool) -> String {
        format_terms(
            self.terms()
                .rev()
                .map(|(m, c)| (c, monomial_text(&[(vars.0, m.x as usize), (vars.1, m.y as usize)], compact))),
            compact,
        )
    }
}

/// `f = x^e_x * y^e_y * H` with `core = H(t, 1)` and `core(0) != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dehomogenized {
    pub e_x: u32,
    pub e_y: u32,
    pub core: UniPoly,
}

/// `unit * prod factor_i^mult_i` with homogeneous irreducible factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogFactorization {
    field: PrimeField,
    unit: u64,
    factors: Vec<(BiPoly, u32)>,
}

impl HomogFactorization {
    pub fn unit(&self) -> u64 {
        self.unit
    }

    pub fn factors(&self) -> &[(BiPoly, u32)] {
        &self.factors
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, m)| *m == 1)
    }

    pub fn reconstruct(&self) -> BiPoly {
        self.factors.iter().fold(BiPoly::constant(self.field, self.unit), |acc, (g, m)| &acc * &g.pow(*m))
    }
}

impl fmt::Display for HomogFactorization {
    /// Compact product form such as `(x+y)(x+2y)` or `2x^2y`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.unit != 1 {
            write!(f, "{}", self.unit)?;
        }
        for (g, m) in &self.factors {
            let text = g.display_with(("x", "y"), true);
            if g.num_terms() == 1 {
                f.write_str(&text)?;
            } else {
                write!(f, "({text})")?;
            }
            if *m > 1 {
                write!(f, "^{m}")?;
            }
        }
        if self.factors.is_empty() && self.unit == 1 {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl fmt::Display for BiPoly {
    /// `x^2 + 2*y^2 + y`; the alternate flag (`{:#}`) gives `x^2+2y^2+y`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(("x", "y"), f.alternate()))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl $tr<&BiPoly> for &BiPoly {
            type Output = BiPoly;
            fn $method(self, rhs: &BiPoly) -> BiPoly {
                self.$try(rhs).expect("operands over the same field")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        self.scale(self.field.modulus() - 1)
    }
}
