use std::sync::Arc;

use super::{from_strata, to_strata, Presentation, RingElement, Rules};
use crate::bipoly::{BiPoly, Monomial};
use crate::fppoly::PrimeField;
use crate::linalg::EchelonSpan;
use crate::{Error, Result};

/// `K / (b^(s+e) - b^s)`, a finite ring of dimension `n(s+e) - 1` over `F_p`.
///
/// Coordinates are dense vectors over the monomials `x^i y^j` with
/// `i < n`, `j < s+e`, `(i, j) != (0, 0)`, ordered by `(i, j)`.
#[derive(Clone, Debug)]
pub struct FiniteQuotient {
    pres: Arc<Presentation>,
    s: u32,
    e: u32,
    rules: Rules,
}

impl FiniteQuotient {
    pub fn new(pres: &Arc<Presentation>, s: u32, e: u32, cap: usize) -> Result<Self> {
        if s == 0 || e == 0 {
            return Err(Error::DegenerateInput("quotient needs s >= 1 and e >= 1"));
        }
        let dim = pres.n() * (s + e) as usize - 1;
        if dim > cap {
            return Err(Error::QuotientTooLarge { dim, cap });
        }
        Ok(FiniteQuotient { pres: Arc::clone(pres), s, e, rules: pres.quotient_rules(s as usize, e as usize) })
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn field(&self) -> PrimeField {
        self.pres.field()
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    fn width(&self) -> usize {
        (self.s + self.e) as usize
    }

    pub fn dim(&self) -> usize {
        self.pres.n() * self.width() - 1
    }

    /// Basis monomials in coordinate order.
    pub fn basis(&self) -> Vec<Monomial> {
        let w = self.width() as u32;
        (0..self.pres.n() as u32)
            .flat_map(|i| (0..w).map(move |j| Monomial::new(i, j)))
            .filter(|m| !m.is_unit())
            .collect()
    }

    fn index(&self, i: usize, j: usize) -> usize {
        i * self.width() + j - 1
    }

    fn strata_to_coords(&self, strata: &[Vec<u64>]) -> Vec<u64> {
        let mut v = vec![0; self.dim()];
        for (i, row) in strata.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                if c != 0 {
                    v[self.index(i, j)] = c;
                }
            }
        }
        v
    }

    fn coords_to_strata(&self, v: &[u64]) -> Vec<Vec<u64>> {
        assert_eq!(v.len(), self.dim(), "coordinate vector length");
        let w = self.width();
        let mut strata: Vec<Vec<u64>> = (0..self.pres.n())
            .map(|i| (0..w).map(|j| if i == 0 && j == 0 { 0 } else { v[self.index(i, j)] }).collect())
            .collect();
        for row in strata.iter_mut() {
            while row.last() == Some(&0) {
                row.pop();
            }
        }
        while strata.last().is_some_and(|r| r.is_empty()) {
            strata.pop();
        }
        strata
    }

    /// Image of a raw polynomial without constant term.
    pub fn project_poly(&self, raw: &BiPoly) -> Result<Vec<u64>> {
        if raw.field() != self.field() {
            return Err(Error::FieldMismatch);
        }
        if raw.has_constant_term() {
            return Err(Error::NotInNonUnitalRing);
        }
        let mut strata = to_strata(raw);
        self.rules.reduce(&mut strata);
        Ok(self.strata_to_coords(&strata))
    }

    /// The quotient map `K -> K / (b^(s+e) - b^s)`.
    pub fn project(&self, u: &RingElement) -> Result<Vec<u64>> {
        if **u.presentation() != *self.pres {
            return Err(Error::PresentationMismatch);
        }
        self.project_poly(u.poly())
    }

    pub fn mul(&self, u: &[u64], v: &[u64]) -> Vec<u64> {
        let prod = self.rules.mul(&self.coords_to_strata(u), &self.coords_to_strata(v));
        self.strata_to_coords(&prod)
    }

    pub fn add(&self, u: &[u64], v: &[u64]) -> Vec<u64> {
        let f = self.field();
        u.iter().zip(v).map(|(&a, &b)| f.add(a, b)).collect()
    }

    pub fn to_poly(&self, v: &[u64]) -> BiPoly {
        from_strata(self.field(), &self.coords_to_strata(v))
    }

    /// Smallest subspace containing `gens` and closed under multiplication:
    /// the subring they generate.
    pub fn subring_closure(&self, gens: &[Vec<u64>]) -> EchelonSpan {
        let mut span = EchelonSpan::new(self.field(), self.dim());
        let mut basis: Vec<Vec<u64>> = Vec::new();
        for g in gens {
            if span.insert(g) {
                basis.push(g.clone());
            }
        }
        let mut i = 0;
        while i < basis.len() {
            for j in 0..=i {
                let prod = self.mul(&basis[i], &basis[j]);
                if span.insert(&prod) {
                    basis.push(prod);
                }
            }
            i += 1;
        }
        span
    }
}
