use std::fmt;
use std::sync::Arc;

use super::{from_strata, to_strata, Rules};
use crate::bipoly::{BiPoly, Var};
use crate::fppoly::{PrimeField, UniPoly};
use crate::parse::parse_bipoly;
use crate::{Error, Result};

/// `Z_p<a, b | f(a, b) = 0>` with `f` unitary in `x` and without constant term.
#[derive(Clone, Debug)]
pub struct Presentation {
    relation: BiPoly,
    rules: Rules,
}

impl PartialEq for Presentation {
    fn eq(&self, other: &Self) -> bool {
        self.relation == other.relation
    }
}

impl Eq for Presentation {}

impl Presentation {
    pub fn new(relation: BiPoly) -> Result<Arc<Self>> {
        if relation.has_constant_term() {
            return Err(Error::RelationHasConstant);
        }
        let unitary_x = matches!(relation.is_unitary_in(Var::X), Ok(true));
        if !unitary_x {
            let hint = if matches!(relation.is_unitary_in(Var::Y), Ok(true)) {
                "; it is unitary in y, so swap the roles of x and y"
            } else {
                ""
            };
            return Err(Error::NotUnitaryInX { hint });
        }
        let n = relation.degree_in(Var::X).expect("unitary in x") as usize;
        let field = relation.field();
        let tail = (0..n).map(|k| -&relation.coefficient_in(Var::X, k as u32)).collect();
        Ok(Arc::new(Presentation { rules: Rules { field, n, tail, y_rule: None }, relation }))
    }

    /// Parses `p` and a relation written in `x, y`.
    pub fn parse(p: u64, relation: &str) -> Result<Arc<Self>> {
        let field = PrimeField::new(p)?;
        Self::new(parse_bipoly(relation, field, ('x', 'y'))?)
    }

    pub fn field(&self) -> PrimeField {
        self.rules.field
    }

    pub fn relation(&self) -> &BiPoly {
        &self.relation
    }

    /// `deg_x f`.
    pub fn n(&self) -> usize {
        self.rules.n
    }

    pub(crate) fn rules(&self) -> &Rules {
        &self.rules
    }

    pub(crate) fn quotient_rules(&self, s: usize, e: usize) -> Rules {
        Rules { y_rule: Some((s, e)), ..self.rules.clone() }
    }
}

/// Normal form of `raw` in the ring presented by `pres`.
pub fn reduce(raw: &BiPoly, pres: &Arc<Presentation>) -> Result<RingElement> {
    if raw.field() != pres.field() {
        return Err(Error::FieldMismatch);
    }
    if raw.has_constant_term() {
        return Err(Error::NotInNonUnitalRing);
    }
    let mut strata = to_strata(raw);
    pres.rules.reduce(&mut strata);
    Ok(RingElement { pres: Arc::clone(pres), poly: from_strata(pres.field(), &strata) })
}

/// An element of `K` in normal form: no `x^i` with `i >= n`, no constant term.
#[derive(Clone, Debug)]
pub struct RingElement {
    pres: Arc<Presentation>,
    poly: BiPoly,
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        same_presentation(&self.pres, &other.pres) && self.poly == other.poly
    }
}

impl Eq for RingElement {}

fn same_presentation(a: &Arc<Presentation>, b: &Arc<Presentation>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Presentation {
    pub fn zero(self: &Arc<Self>) -> RingElement {
        RingElement { pres: Arc::clone(self), poly: BiPoly::zero(self.field()) }
    }

    /// The generator `a` (the image of `x`).
    pub fn a(self: &Arc<Self>) -> RingElement {
        reduce(&BiPoly::x(self.field()), self).expect("x has no constant term")
    }

    /// The generator `b` (the image of `y`).
    pub fn b(self: &Arc<Self>) -> RingElement {
        reduce(&BiPoly::y(self.field()), self).expect("y has no constant term")
    }

    /// Evaluates an integer polynomial expression in `a, b`. The expression
    /// is expanded before the constant-term check, so `(2*(a-b)+1)*b` is a
    /// legal element.
    pub fn eval_expr(self: &Arc<Self>, text: &str) -> Result<RingElement> {
        reduce(&parse_bipoly(text, self.field(), ('a', 'b'))?, self)
    }
}

impl RingElement {
    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    /// The normal form as a polynomial in `x = a`, `y = b`.
    pub fn poly(&self) -> &BiPoly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_presentation(&self.pres, &other.pres) {
            Ok(())
        } else {
            Err(Error::PresentationMismatch)
        }
    }

    fn with_poly(&self, poly: BiPoly) -> RingElement {
        RingElement { pres: Arc::clone(&self.pres), poly }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with_poly(&self.poly + &other.poly))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with_poly(&self.poly - &other.poly))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let rules = self.pres.rules();
        let prod = rules.mul(&to_strata(&self.poly), &to_strata(&other.poly));
        Ok(self.with_poly(from_strata(self.pres.field(), &prod)))
    }

    pub fn neg(&self) -> Self {
        self.with_poly(-&self.poly)
    }

    pub fn scale(&self, c: u64) -> Self {
        self.with_poly(self.poly.scale(c))
    }

    /// `self^k` for `k >= 1`.
    pub fn pow(&self, k: u32) -> Self {
        assert!(k >= 1, "the ring has no identity, so u^0 is undefined");
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.mul(self).expect("same presentation");
        }
        acc
    }

    /// `g(self)` for `g` without constant term.
    pub fn compose(&self, g: &UniPoly) -> Result<Self> {
        if g.field() != self.pres.field() {
            return Err(Error::FieldMismatch);
        }
        if g.coeff(0) != 0 {
            return Err(Error::NotInNonUnitalRing);
        }
        // Horner with c*u in place of the constants: ((c_d u + c_{d-1} u) u + ...) + c_1 u
        let mut acc: Option<RingElement> = None;
        for &c in g.coeffs().iter().skip(1).rev() {
            let term = self.scale(c);
            acc = Some(match acc {
                None => term,
                Some(a) => a.mul(self)?.add(&term)?,
            });
        }
        Ok(acc.unwrap_or_else(|| self.pres.zero()))
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.poly.display_with(("a", "b"), f.alternate()))
    }
}
