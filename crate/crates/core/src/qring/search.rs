use std::collections::BTreeSet;

use super::{FiniteQuotient, RingElement, DEFAULT_DIM_CAP, DEFAULT_MAX_TOTAL};
use crate::bipoly::Monomial;
use crate::exec::Strategy;
use crate::fppoly::{PrimeField, UniPoly};
use crate::linalg::{solve_linear, EchelonSpan, Matrix};
use crate::{Error, Result};

/// A finite quotient in which the target escapes the generated subring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationWitness {
    pub s: u32,
    pub e: u32,
    /// Quotient coordinates of the target.
    pub target: Vec<u64>,
    /// Reduced basis of the closure of the projected generators.
    pub closure: Vec<Vec<u64>>,
}

impl SeparationWitness {
    /// Re-checks `target not in span(closure)` from scratch.
    pub fn verify(&self, field: PrimeField) -> bool {
        let mut span = EchelonSpan::new(field, self.target.len());
        for v in &self.closure {
            if v.len() != self.target.len() {
                return false;
            }
            span.insert(v);
        }
        !span.contains(&self.target)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeparationOutcome {
    Witness(SeparationWitness),
    /// No quotient with `s + e <= max_total` separates.
    NotFound {
        max_total: u32,
        cells_scanned: usize,
    },
}

#[derive(Clone, Copy, Debug)]
pub struct SeparateOptions {
    pub max_total: u32,
    pub dim_cap: usize,
    pub strategy: Strategy,
}

impl Default for SeparateOptions {
    fn default() -> Self {
        SeparateOptions { max_total: DEFAULT_MAX_TOTAL, dim_cap: DEFAULT_DIM_CAP, strategy: Strategy::default() }
    }
}

/// What one quotient says about the target and the generated subring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellReport {
    pub s: u32,
    pub e: u32,
    pub dim: usize,
    pub closure_dim: usize,
    pub target_in_closure: bool,
}

fn check_same(target: &RingElement, gens: &[RingElement]) -> Result<()> {
    if gens.iter().any(|g| **g.presentation() != **target.presentation()) {
        return Err(Error::PresentationMismatch);
    }
    Ok(())
}

fn cell(
    target: &RingElement,
    gens: &[RingElement],
    s: u32,
    e: u32,
    cap: usize,
) -> Result<(CellReport, Option<SeparationWitness>)> {
    let q = FiniteQuotient::new(target.presentation(), s, e, cap)?;
    let t = q.project(target)?;
    let projected: Vec<Vec<u64>> = gens.iter().map(|g| q.project(g)).collect::<Result<_>>()?;
    let span = q.subring_closure(&projected);
    let inside = span.contains(&t);
    let report = CellReport { s, e, dim: q.dim(), closure_dim: span.len(), target_in_closure: inside };
    let witness =
        (!inside).then(|| SeparationWitness { s, e, target: t, closure: span.basis().map(<[u64]>::to_vec).collect() });
    Ok((report, witness))
}

/// Evaluates a single quotient `(s, e)`.
pub fn scan_cell(target: &RingElement, gens: &[RingElement], s: u32, e: u32, cap: usize) -> Result<CellReport> {
    check_same(target, gens)?;
    Ok(cell(target, gens, s, e, cap)?.0)
}

/// Cells `(s, e)` with `2 <= s + e <= max_total`, ordered by `(s + e, s)`.
pub fn cells(max_total: u32) -> Vec<(u32, u32)> {
    (2..=max_total).flat_map(|total| (1..total).map(move |s| (s, total - s))).collect()
}

/// Searches the quotients `K / (b^(s+e) - b^s)` for one in which `target`
/// is not in the subring generated by `gens`.
///
/// A witness proves that this target is separated from this subring. An
/// exhausted scan proves nothing beyond the bound.
pub fn separate(target: &RingElement, gens: &[RingElement], max_total: u32) -> Result<SeparationOutcome> {
    separate_with(target, gens, &SeparateOptions { max_total, ..SeparateOptions::default() })
}

pub fn separate_with(target: &RingElement, gens: &[RingElement], opts: &SeparateOptions) -> Result<SeparationOutcome> {
    check_same(target, gens)?;
    let grid = cells(opts.max_total);
    let hit = opts.strategy.find_map_first(&grid, |&(s, e)| match cell(target, gens, s, e, opts.dim_cap) {
        Ok((_, Some(w))) => Some(Ok(w)),
        Ok((_, None)) => None,
        Err(err) => Some(Err(err)),
    });
    match hit {
        Some(w) => Ok(SeparationOutcome::Witness(w?)),
        None => Ok(SeparationOutcome::NotFound { max_total: opts.max_total, cells_scanned: grid.len() }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// `g` without constant term with `g(c) = u`, verified by evaluation.
    Certificate(UniPoly),
    /// No certificate of degree at most `kmax`.
    Unknown { kmax: usize },
}

/// Coordinates of several elements over the union of their supports.
pub(crate) fn common_coordinates(elems: &[&RingElement]) -> Vec<Vec<u64>> {
    let support: BTreeSet<Monomial> = elems.iter().flat_map(|u| u.poly().terms().map(|(m, _)| m)).collect();
    let support: Vec<Monomial> = support.into_iter().collect();
    elems.iter().map(|u| support.iter().map(|&m| u.poly().coeff(m)).collect()).collect()
}

/// Looks for `g(t) = sum_{k=1..kmax} l_k t^k` with `g(c) = u`.
pub fn bounded_member(u: &RingElement, c: &RingElement, kmax: usize) -> Result<Membership> {
    if **u.presentation() != **c.presentation() {
        return Err(Error::PresentationMismatch);
    }
    if kmax == 0 {
        return Err(Error::DegenerateInput("kmax must be at least 1"));
    }
    let field = u.presentation().field();
    let mut powers = vec![c.clone()];
    for _ in 1..kmax {
        let next = powers.last().expect("nonempty").mul(c)?;
        powers.push(next);
    }
    let mut all: Vec<&RingElement> = powers.iter().collect();
    all.push(u);
    let mut coords = common_coordinates(&all);
    let rhs = coords.pop().expect("u is present");
    let a = Matrix::from_columns(field, rhs.len(), &coords)?;
    let Some(lambda) = solve_linear(&a, &rhs)? else {
        return Ok(Membership::Unknown { kmax });
    };
    let mut g = vec![0];
    g.extend(lambda);
    let g = UniPoly::new(field, g);
    if c.compose(&g)? != *u {
        return Ok(Membership::Unknown { kmax });
    }
    Ok(Membership::Certificate(g))
}
