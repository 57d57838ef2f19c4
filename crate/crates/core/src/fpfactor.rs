//! Factorization over `F_p`: squarefree decomposition (with the `p`-th root
//! step for characteristic `p`), distinct-degree splitting and
//! equal-degree splitting.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exec::Strategy;
use crate::fppoly::{PrimeField, UniPoly};
use crate::{Error, Result};

/// Default seed for the equal-degree splitting PRNG.
pub const DEFAULT_SEED: u64 = 0x5eed_f00d;

/// Equal-degree splitting enumerates candidate factors instead of sampling
/// when `p^d` is at most this many.
const ENUMERATION_LIMIT: u64 = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactorOptions {
    pub seed: u64,
}

impl Default for FactorOptions {
    fn default() -> Self {
        FactorOptions { seed: DEFAULT_SEED }
    }
}

/// `unit * prod factor_i^mult_i`, factors monic irreducible and sorted by
/// (degree, coefficients from the top down).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    field: PrimeField,
    unit: u64,
    factors: Vec<(UniPoly, u32)>,
}

impl Factorization {
    pub fn unit(&self) -> u64 {
        self.unit
    }

    pub fn factors(&self) -> &[(UniPoly, u32)] {
        &self.factors
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, m)| *m == 1)
    }

    /// Multiplies the factorization back out.
    pub fn reconstruct(&self) -> UniPoly {
        self.factors.iter().fold(UniPoly::constant(self.field, self.unit), |acc, (g, m)| &acc * &g.pow(*m as u64))
    }
}

fn sort_canonical(factors: &mut [(UniPoly, u32)]) {
    factors.sort_by(|(a, ma), (b, mb)| a.canonical_cmp(b).then(ma.cmp(mb)));
}

fn require_nonconstant(f: &UniPoly) -> Result<()> {
    match f.degree() {
        Some(d) if d >= 1 => Ok(()),
        _ => Err(Error::DegenerateInput("polynomial must have degree at least 1")),
    }
}

/// Splits `f` into pairwise coprime squarefree parts with multiplicities.
/// The parts are monic; the leading coefficient of `f` is dropped.
/// Output is sorted by multiplicity, then canonically.
pub fn squarefree_decomposition(f: &UniPoly) -> Result<Vec<(UniPoly, u32)>> {
    require_nonconstant(f)?;
    let mut parts = squarefree_parts(&f.monic(), 1);
    parts.sort_by(|(a, ma), (b, mb)| ma.cmp(mb).then_with(|| a.canonical_cmp(b)));
    Ok(parts)
}

fn squarefree_parts(f: &UniPoly, scale: u32) -> Vec<(UniPoly, u32)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let mut c = f.gcd(&f.derivative()).expect("f is nonzero");
    let mut w = f.div_exact(&c);
    let mut i = 1u32;
    // w collects the factors whose multiplicity is not a multiple of p; each
    // round peels off those of multiplicity exactly i.
    while w.degree().unwrap_or(0) > 0 {
        let y = w.gcd(&c).expect("w is nonzero");
        let part = w.div_exact(&y);
        if part.degree().unwrap_or(0) > 0 {
            out.push((part, i * scale));
        }
        c = c.div_exact(&y);
        w = y;
        i += 1;
    }
    if c.degree().unwrap_or(0) > 0 {
        let root = c.pth_root().expect("remaining cofactor is a p-th power");
        let p = f.field().modulus() as u32;
        out.extend(squarefree_parts(&root, scale * p));
    }
    out
}

/// Distinct-degree splitting of a monic squarefree `f`: pairs `(g, d)` where
/// `g` is the product of all irreducible factors of degree `d`.
pub fn distinct_degree(f: &UniPoly) -> Vec<(UniPoly, usize)> {
    let field = f.field();
    let p = field.modulus();
    let t = UniPoly::t(field);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut frob = t.clone();
    let mut d = 0usize;
    while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        frob = frob.powmod(p, &rest).expect("rest has positive degree");
        let g = rest.gcd(&(&frob - &t)).expect("rest is nonzero");
        if !g.is_one() {
            rest = rest.div_exact(&g);
            frob = frob.rem(&rest).expect("rest is nonzero");
            out.push((g, d));
        }
    }
    if let Some(dr) = rest.degree().filter(|&dr| dr > 0) {
        out.push((rest, dr));
    }
    out
}

/// Splits a monic squarefree `f` whose irreducible factors all have degree
/// `d` into those factors.
pub fn equal_degree(f: &UniPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<UniPoly> {
    let n = f.degree().expect("nonzero");
    if n == d {
        return vec![f.clone()];
    }
    let p = f.field().modulus();
    let small = (d as u32) < 64 && p.checked_pow(d as u32).is_some_and(|q| q <= ENUMERATION_LIMIT);
    if small {
        return enumerate_factors(f, d);
    }
    loop {
        let a = random_poly(f, rng);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let g = f.gcd(&a).expect("f is nonzero");
        let split = if !g.is_one() { g } else { f.gcd(&splitting_element(&a, f, d)).expect("f is nonzero") };
        if !split.is_one() && split.degree() != f.degree() {
            let other = f.div_exact(&split);
            let mut out = equal_degree(&split, d, rng);
            out.extend(equal_degree(&other, d, rng));
            return out;
        }
    }
}

fn random_poly(f: &UniPoly, rng: &mut ChaCha8Rng) -> UniPoly {
    let n = f.degree().expect("nonzero");
    let p = f.field().modulus();
    UniPoly::new(f.field(), (0..n).map(|_| rng.random_range(0..p)).collect())
}

/// `a^((p^d - 1)/2) - 1` for odd `p`; the trace `sum_{i<d} a^(2^i)` for `p = 2`.
fn splitting_element(a: &UniPoly, f: &UniPoly, d: usize) -> UniPoly {
    let field = f.field();
    let p = field.modulus();
    if p == 2 {
        let mut term = a.clone();
        let mut trace = a.clone();
        for _ in 1..d {
            term = (&term * &term).rem(f).expect("f is nonzero");
            trace = &trace + &term;
        }
        return trace;
    }
    // a^(1 + p + ... + p^(d-1)) = a^((p^d - 1)/(p - 1)), then ^((p - 1)/2)
    let mut frob = a.clone();
    let mut norm = a.clone();
    for _ in 1..d {
        frob = frob.powmod(p, f).expect("f has positive degree");
        norm = (&norm * &frob).rem(f).expect("f is nonzero");
    }
    let b = norm.powmod((p - 1) / 2, f).expect("f has positive degree");
    &b - &UniPoly::one(field)
}

fn enumerate_factors(f: &UniPoly, d: usize) -> Vec<UniPoly> {
    let field = f.field();
    let p = field.modulus();
    let mut rest = f.clone();
    let mut out = Vec::new();
    let count = p.pow(d as u32);
    for n in 0..count {
        if rest.degree() == Some(d) {
            out.push(rest);
            return out;
        }
        let mut coeffs = Vec::with_capacity(d + 1);
        let mut k = n;
        for _ in 0..d {
            coeffs.push(k % p);
            k /= p;
        }
        coeffs.push(1);
        let cand = UniPoly::new(field, coeffs);
        // every degree-d divisor of rest is one of its irreducible factors
        let (q, r) = rest.divrem(&cand).expect("candidate is monic");
        if r.is_zero() {
            out.push(cand);
            rest = q;
        }
    }
    debug_assert!(rest.is_one());
    out
}

/// Complete factorization into monic irreducibles with the default seed.
pub fn factor(f: &UniPoly) -> Result<Factorization> {
    factor_with(f, &FactorOptions::default())
}

pub fn factor_with(f: &UniPoly, opts: &FactorOptions) -> Result<Factorization> {
    require_nonconstant(f)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut factors = Vec::new();
    for (part, mult) in squarefree_decomposition(f)? {
        for (block, d) in distinct_degree(&part) {
            for irr in equal_degree(&block, d, &mut rng) {
                factors.push((irr, mult));
            }
        }
    }
    sort_canonical(&mut factors);
    Ok(Factorization { field: f.field(), unit: f.lead(), factors })
}

/// Factors a batch; order of results matches the input.
pub fn factor_all(polys: &[UniPoly], strategy: Strategy) -> Vec<Result<Factorization>> {
    strategy.map(polys, factor)
}

/// Ben-Or test: `f` of degree `n` is irreducible iff
/// `gcd(t^(p^i) - t, f) = 1` for every `1 <= i <= n/2`.
pub fn is_irreducible(f: &UniPoly) -> Result<bool> {
    require_nonconstant(f)?;
    let f = f.monic();
    let n = f.degree().expect("nonzero");
    let field = f.field();
    let t = UniPoly::t(field);
    let mut frob = t.clone();
    for _ in 1..=n / 2 {
        frob = frob.powmod(field.modulus(), &f)?;
        if !f.gcd(&(&frob - &t))?.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}
