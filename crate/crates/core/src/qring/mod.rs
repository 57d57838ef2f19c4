//! Normal-form arithmetic in the presented ring without identity
//! `K = Z_p<a, b | f(a, b) = 0>` where `f` is unitary in `x`.
//!
//! Elements are polynomials in `x = a`, `y = b` without constant term,
//! reduced modulo the relation. Because the relation is monic in `x`, the
//! reduced form has x-degree below `n = deg_x f` and is unique. Finite
//! quotients add the rule `y^(s+e) = y^s`; its leading monomial is coprime to
//! `x^n`, so the pair of rules is a Groebner basis and reduction stays
//! confluent.

mod element;
mod quotient;
mod search;

pub use element::{reduce, Presentation, RingElement};
pub use quotient::FiniteQuotient;
pub use search::{
    bounded_member, cells, scan_cell, separate, separate_with, CellReport, Membership, SeparateOptions,
    SeparationOutcome, SeparationWitness,
};

pub use crate::linalg::solve_linear;
pub(crate) use search::common_coordinates;

/// Default power bound for [`bounded_member`].
pub const DEFAULT_KMAX: usize = 8;
/// Default bound on `s + e` for [`separate`].
pub const DEFAULT_MAX_TOTAL: u32 = 8;
/// Default cap on the dimension of a finite quotient.
pub const DEFAULT_DIM_CAP: usize = 4096;

use crate::bipoly::{BiPoly, Monomial};
use crate::fppoly::{PrimeField, UniPoly};

/// Splits a polynomial into its x-strata: `strata[i]` is the coefficient of
/// `x^i`, a polynomial in `y`.
pub(crate) fn to_strata(poly: &BiPoly) -> Vec<Vec<u64>> {
    let mut strata: Vec<Vec<u64>> = Vec::new();
    for (m, c) in poly.terms() {
        let (i, j) = (m.x as usize, m.y as usize);
        if strata.len() <= i {
            strata.resize(i + 1, Vec::new());
        }
        let row = &mut strata[i];
        if row.len() <= j {
            row.resize(j + 1, 0);
        }
        row[j] = c;
    }
    strata
}

pub(crate) fn from_strata(field: PrimeField, strata: &[Vec<u64>]) -> BiPoly {
    let mut out = BiPoly::zero(field);
    for (i, row) in strata.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            if c != 0 {
                out.add_term(Monomial::new(i as u32, j as u32), c);
            }
        }
    }
    out
}

/// Rewriting rules `x^n -> sum_k tail_k(y) x^k` and optionally
/// `y^(s+e) -> y^s`, applied to strata in place.
#[derive(Clone, Debug)]
pub(crate) struct Rules {
    field: PrimeField,
    n: usize,
    tail: Vec<UniPoly>,
    y_rule: Option<(usize, usize)>,
}

impl Rules {
    pub(crate) fn reduce(&self, strata: &mut Vec<Vec<u64>>) {
        let f = self.field;
        let n = self.n;
        for i in (n..strata.len()).rev() {
            let c = std::mem::take(&mut strata[i]);
            if c.iter().all(|&v| v == 0) {
                continue;
            }
            for (k, t) in self.tail.iter().enumerate() {
                if t.is_zero() {
                    continue;
                }
                let target = &mut strata[i - n + k];
                let need = c.len() + t.coeffs().len() - 1;
                if target.len() < need {
                    target.resize(need, 0);
                }
                for (a, &ca) in c.iter().enumerate() {
                    if ca == 0 {
                        continue;
                    }
                    for (b, &tb) in t.coeffs().iter().enumerate() {
                        target[a + b] = f.add(target[a + b], f.mul(ca, tb));
                    }
                }
            }
        }
        strata.truncate(n);
        if let Some((s, e)) = self.y_rule {
            for row in strata.iter_mut() {
                for j in (s + e..row.len()).rev() {
                    let c = std::mem::replace(&mut row[j], 0);
                    row[j - e] = f.add(row[j - e], c);
                }
                row.truncate(s + e);
            }
        }
        for row in strata.iter_mut() {
            while row.last() == Some(&0) {
                row.pop();
            }
        }
        while strata.last().is_some_and(|r| r.is_empty()) {
            strata.pop();
        }
    }

    /// Product of two strata vectors followed by reduction.
    pub(crate) fn mul(&self, a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let f = self.field;
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out: Vec<Vec<u64>> = vec![Vec::new(); a.len() + b.len() - 1];
        for (i, ra) in a.iter().enumerate() {
            for (k, rb) in b.iter().enumerate() {
                if ra.is_empty() || rb.is_empty() {
                    continue;
                }
                let row = &mut out[i + k];
                let need = ra.len() + rb.len() - 1;
                if row.len() < need {
                    row.resize(need, 0);
                }
                for (u, &cu) in ra.iter().enumerate() {
                    if cu == 0 {
                        continue;
                    }
                    for (v, &cv) in rb.iter().enumerate() {
                        row[u + v] = f.add(row[u + v], f.mul(cu, cv));
                    }
                }
            }
        }
        self.reduce(&mut out);
        out
    }
}
