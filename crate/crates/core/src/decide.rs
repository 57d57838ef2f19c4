//! Decisions and bounded searches on presented rings: the homogeneous
//! separability criterion, integral elements, integral dependence of the
//! generators and the algebraic degree of `a` over `b`.
//!
//! Every positive answer carries a witness that has been re-verified by
//! direct evaluation before it is returned. Bounded searches that find
//! nothing say so as `Unknown`; they never claim a negative.

use std::fmt;
use std::sync::Arc;

use crate::bipoly::{BiPoly, HomogFactorization, Monomial};
use crate::exec::Strategy;
use crate::fppoly::{PrimeField, UniPoly};
use crate::linalg::{solve_linear, Matrix};
use crate::qring::{common_coordinates, reduce, FiniteQuotient, Presentation, RingElement};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Separable,
    NotSeparable,
    NotApplicable(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub verdict: Verdict,
    /// Factorization of the relation when it is homogeneous.
    pub evidence: Option<HomogFactorization>,
}

/// A homogeneous relation `f` presents a finitely separable ring iff `f` is
/// separable: no repeated irreducible factor, `x` and `y` included.
pub fn decide_homogeneous(f: &BiPoly) -> Decision {
    let not_applicable = |why: &str| Decision { verdict: Verdict::NotApplicable(why.to_string()), evidence: None };
    let deg = match f.is_homogeneous() {
        Ok(d) => d,
        Err(Error::NotHomogeneous) => return not_applicable("not homogeneous"),
        Err(_) => return not_applicable("zero polynomial"),
    };
    if deg == 0 {
        return not_applicable("constant polynomial");
    }
    let (Ok(separable), Ok(evidence)) = (f.homog_separable(), f.homog_factor()) else {
        return not_applicable("factorization failed");
    };
    let verdict = if separable { Verdict::Separable } else { Verdict::NotSeparable };
    Decision { verdict, evidence: Some(evidence) }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Integrality {
    /// Monic `g` without constant term and `g(u) = 0`, of minimal degree.
    Annihilator(UniPoly),
    /// No annihilator of degree at most `mmax`.
    Unknown { mmax: usize },
}

/// Looks for the least `m <= mmax` with `u^m` in `span(u, ..., u^(m-1))`.
/// Zero is integral with `g = t`.
pub fn integral_test(u: &RingElement, mmax: usize) -> Result<Integrality> {
    if mmax == 0 {
        return Err(Error::DegenerateInput("mmax must be at least 1"));
    }
    let mut powers = vec![u.clone()];
    for _ in 1..mmax {
        let next = powers.last().expect("nonempty").mul(u)?;
        powers.push(next);
    }
    let refs: Vec<&RingElement> = powers.iter().collect();
    let coords = common_coordinates(&refs);
    let field = u.presentation().field();
    let found = minimal_annihilator(field, &coords)?;
    Ok(match found {
        Some(g) if u.compose(&g)?.is_zero() => Integrality::Annihilator(g),
        _ => Integrality::Unknown { mmax },
    })
}

/// The same test for an element of a finite quotient, given in coordinates.
pub fn integral_test_in(q: &FiniteQuotient, u: &[u64], mmax: usize) -> Result<Integrality> {
    if mmax == 0 {
        return Err(Error::DegenerateInput("mmax must be at least 1"));
    }
    if u.len() != q.dim() {
        return Err(Error::DimensionMismatch { expected: q.dim(), found: u.len() });
    }
    let mut powers = vec![u.to_vec()];
    for _ in 1..mmax {
        let next = q.mul(powers.last().expect("nonempty"), u);
        powers.push(next);
    }
    let field = q.field();
    let found = minimal_annihilator(field, &powers)?;
    Ok(match found {
        Some(g) if eval_in(q, &g, u).iter().all(|&c| c == 0) => Integrality::Annihilator(g),
        _ => Integrality::Unknown { mmax },
    })
}

fn eval_in(q: &FiniteQuotient, g: &UniPoly, u: &[u64]) -> Vec<u64> {
    let f = q.field();
    let mut acc = vec![0; u.len()];
    let mut power = u.to_vec();
    for (k, &c) in g.coeffs().iter().enumerate().skip(1) {
        if k > 1 {
            power = q.mul(&power, u);
        }
        for (a, &p) in acc.iter_mut().zip(&power) {
            *a = f.add(*a, f.mul(c, p));
        }
    }
    acc
}

/// `powers[k]` holds the coordinates of `u^(k+1)`.
fn minimal_annihilator(field: PrimeField, powers: &[Vec<u64>]) -> Result<Option<UniPoly>> {
    let rows = powers.first().map_or(0, Vec::len);
    for m in 1..=powers.len() {
        let a = Matrix::from_columns(field, rows, &powers[..m - 1])?;
        if let Some(lambda) = solve_linear(&a, &powers[m - 1])? {
            let mut g = vec![0];
            g.extend(lambda.iter().map(|&l| field.neg(l)));
            g.push(1);
            return Ok(Some(UniPoly::new(field, g)));
        }
    }
    Ok(None)
}

/// `g(a, b) = 0` with `g` unitary in both variables and without constant term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitaryWitness {
    pub g: BiPoly,
    pub dx: u32,
    pub dy: u32,
}

impl UnitaryWitness {
    pub fn verify(&self, pres: &Arc<Presentation>) -> bool {
        matches!(self.g.is_unitary(), Ok(true))
            && !self.g.has_constant_term()
            && self.g.degree_in(crate::bipoly::Var::X) == Some(self.dx)
            && self.g.degree_in(crate::bipoly::Var::Y) == Some(self.dy)
            && reduce(&self.g, pres).is_ok_and(|r| r.is_zero())
    }
}

impl fmt::Display for UnitaryWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.g.display_with(("x", "y"), f.alternate()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntDep {
    Witness(UnitaryWitness),
    Unknown { dx: u32, dy: u32 },
}

/// Normal forms of `x^i y^j` for `i <= dx`, `j <= dy`, as coordinates over a
/// common support. Entry `(0, 0)` is left empty.
struct MonomialTable {
    field: PrimeField,
    width: usize,
    rows: usize,
    coords: Vec<Vec<u64>>,
}

impl MonomialTable {
    fn new(pres: &Arc<Presentation>, dx: u32, dy: u32) -> Result<Self> {
        let field = pres.field();
        let mut elems = Vec::new();
        for i in 0..=dx {
            for j in 0..=dy {
                let e = if (i, j) == (0, 0) {
                    pres.zero()
                } else {
                    reduce(&BiPoly::monomial(field, 1, Monomial::new(i, j)), pres)?
                };
                elems.push(e);
            }
        }
        let refs: Vec<&RingElement> = elems.iter().collect();
        let coords = common_coordinates(&refs);
        let rows = coords.first().map_or(0, Vec::len);
        Ok(MonomialTable { field, width: dy as usize + 1, rows, coords })
    }

    fn get(&self, i: u32, j: u32) -> &[u64] {
        &self.coords[i as usize * self.width + j as usize]
    }
}

/// Searches for `g = x^X + y^Y + sum l_ij x^i y^j` (`i < X`, `j < Y`) with
/// `g(a, b) = 0`, over exact degrees `1 <= X <= dx`, `1 <= Y <= dy` ordered
/// by `(X + Y, X)`. These are exactly the polynomials unitary in both
/// variables with those degrees, so a hit at some bounds persists at all
/// larger ones.
pub fn intdep_search(pres: &Arc<Presentation>, dx: u32, dy: u32) -> Result<IntDep> {
    intdep_search_with(pres, dx, dy, Strategy::default())
}

pub fn intdep_search_with(pres: &Arc<Presentation>, dx: u32, dy: u32, strategy: Strategy) -> Result<IntDep> {
    if dx == 0 || dy == 0 {
        return Err(Error::DegenerateInput("degree bounds must be at least 1"));
    }
    let table = MonomialTable::new(pres, dx, dy)?;
    let mut grid = Vec::new();
    for total in 2..=dx + dy {
        for x in 1..total {
            let y = total - x;
            if x <= dx && y <= dy {
                grid.push((x, y));
            }
        }
    }
    let hit = strategy.find_map_first(&grid, |&(x, y)| intdep_cell(pres, &table, x, y).transpose());
    match hit {
        Some(w) => Ok(IntDep::Witness(w?)),
        None => Ok(IntDep::Unknown { dx, dy }),
    }
}

fn intdep_cell(pres: &Arc<Presentation>, table: &MonomialTable, x: u32, y: u32) -> Result<Option<UnitaryWitness>> {
    let f = table.field;
    let unknowns: Vec<(u32, u32)> = (0..x).flat_map(|i| (0..y).map(move |j| (i, j))).filter(|&m| m != (0, 0)).collect();
    let columns: Vec<Vec<u64>> = unknowns.iter().map(|&(i, j)| table.get(i, j).to_vec()).collect();
    let rhs: Vec<u64> = table.get(x, 0).iter().zip(table.get(0, y)).map(|(&u, &v)| f.neg(f.add(u, v))).collect();
    let a = Matrix::from_columns(f, table.rows, &columns)?;
    let Some(lambda) = solve_linear(&a, &rhs)? else {
        return Ok(None);
    };
    let mut g = BiPoly::monomial(f, 1, Monomial::new(x, 0));
    g.add_term(Monomial::new(0, y), 1);
    for (&(i, j), &l) in unknowns.iter().zip(&lambda) {
        g.add_term(Monomial::new(i, j), l);
    }
    let w = UnitaryWitness { g, dx: x, dy: y };
    Ok(w.verify(pres).then_some(w))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraicDegree {
    /// `sum_i coefficients[i](b) a^(degree - i) = 0` with `coefficients[0] != 0`.
    Exact { degree: usize, coefficients: Vec<UniPoly> },
    /// No relation of degree at most `n_bound` under the coefficient bound.
    LowerBoundOnly(usize),
}

/// Least `n` admitting `f_0(b) a^n + ... + f_(n-1)(b) a = 0` with `f_0 != 0`,
/// every `f_i` without constant term and of degree at most `coeff_deg_bound`.
pub fn algebraic_degree(pres: &Arc<Presentation>, coeff_deg_bound: u32, n_bound: usize) -> Result<AlgebraicDegree> {
    algebraic_degree_with(pres, coeff_deg_bound, n_bound, Strategy::default())
}

pub fn algebraic_degree_with(
    pres: &Arc<Presentation>,
    coeff_deg_bound: u32,
    n_bound: usize,
    strategy: Strategy,
) -> Result<AlgebraicDegree> {
    if coeff_deg_bound == 0 || n_bound == 0 {
        return Err(Error::DegenerateInput("bounds must be at least 1"));
    }
    let table = MonomialTable::new(pres, n_bound as u32, coeff_deg_bound)?;
    let ns: Vec<usize> = (1..=n_bound).collect();
    let hit = strategy.find_map_first(&ns, |&n| degree_cell(pres, &table, n, coeff_deg_bound).transpose());
    match hit {
        Some(r) => {
            let coefficients = r?;
            Ok(AlgebraicDegree::Exact { degree: coefficients.len(), coefficients })
        }
        None => Ok(AlgebraicDegree::LowerBoundOnly(n_bound)),
    }
}

/// The witness coefficients for degree exactly `n`, or `None` when the
/// linear systems for every choice of leading term of `f_0` are inconsistent.
pub fn degree_feasible(pres: &Arc<Presentation>, n: usize, coeff_deg_bound: u32) -> Result<Option<Vec<UniPoly>>> {
    if n == 0 || coeff_deg_bound == 0 {
        return Err(Error::DegenerateInput("bounds must be at least 1"));
    }
    let table = MonomialTable::new(pres, n as u32, coeff_deg_bound)?;
    degree_cell(pres, &table, n, coeff_deg_bound)
}

fn degree_cell(pres: &Arc<Presentation>, table: &MonomialTable, n: usize, cdb: u32) -> Result<Option<Vec<UniPoly>>> {
    let f = table.field;
    // the first nonzero coefficient of f_0 sits at b^j0 and is normalized to 1
    for j0 in 1..=cdb {
        let mut unknowns: Vec<(usize, u32)> = ((j0 + 1)..=cdb).map(|j| (0, j)).collect();
        unknowns.extend((1..n).flat_map(|i| (1..=cdb).map(move |j| (i, j))));
        let columns: Vec<Vec<u64>> = unknowns.iter().map(|&(i, j)| table.get((n - i) as u32, j).to_vec()).collect();
        let rhs: Vec<u64> = table.get(n as u32, j0).iter().map(|&v| f.neg(v)).collect();
        let a = Matrix::from_columns(f, table.rows, &columns)?;
        let Some(lambda) = solve_linear(&a, &rhs)? else {
            continue;
        };
        let mut coeffs = vec![vec![0u64; cdb as usize + 1]; n];
        coeffs[0][j0 as usize] = 1;
        for (&(i, j), &l) in unknowns.iter().zip(&lambda) {
            coeffs[i][j as usize] = l;
        }
        let polys: Vec<UniPoly> = coeffs.into_iter().map(|c| UniPoly::new(f, c)).collect();
        if verify_degree_relation(pres, &polys)? {
            return Ok(Some(polys));
        }
    }
    Ok(None)
}

/// Checks `f_0 != 0`, no constant terms, and `sum f_i(b) a^(n-i) = 0`.
pub fn verify_degree_relation(pres: &Arc<Presentation>, coefficients: &[UniPoly]) -> Result<bool> {
    let n = coefficients.len();
    if n == 0 || coefficients[0].is_zero() || coefficients.iter().any(|c| c.coeff(0) != 0) {
        return Ok(false);
    }
    let mut g = BiPoly::zero(pres.field());
    for (i, c) in coefficients.iter().enumerate() {
        for (j, &v) in c.coeffs().iter().enumerate() {
            g.add_term(Monomial::new((n - i) as u32, j as u32), v);
        }
    }
    Ok(reduce(&g, pres)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipoly::Var;
    use crate::exec::Strategy;
    use crate::qring::DEFAULT_DIM_CAP;
    use proptest::prelude::*;
    use proptest::strategy::Strategy as _;

    fn example1() -> Arc<Presentation> {
        Presentation::parse(3, "x^2 + y - y^2").unwrap()
    }

    fn example2() -> Arc<Presentation> {
        Presentation::parse(2, "x^2 + y - y^2").unwrap()
    }

    fn parse(p: u64, s: &str) -> BiPoly {
        crate::parse::parse_bipoly(s, PrimeField::new(p).unwrap(), ('x', 'y')).unwrap()
    }

    #[test]
    fn decide_examples() {
        let d = decide_homogeneous(&parse(3, "x^2 - y^2"));
        assert_eq!(d.verdict, Verdict::Separable);
        assert_eq!(format!("{}", d.evidence.unwrap()), "(x+y)(x+2y)");
        let d = decide_homogeneous(&parse(3, "x^2 + 2*x*y + y^2"));
        assert_eq!(d.verdict, Verdict::NotSeparable);
        assert_eq!(d.evidence.unwrap().factors(), &[(parse(3, "x + y"), 2)]);
        assert!(matches!(decide_homogeneous(&parse(3, "x^2 + y - y^2")).verdict, Verdict::NotApplicable(_)));
        assert!(matches!(decide_homogeneous(&parse(3, "0")).verdict, Verdict::NotApplicable(_)));
        assert!(matches!(decide_homogeneous(&parse(3, "2")).verdict, Verdict::NotApplicable(_)));
        for p in [2, 3, 5] {
            assert_eq!(decide_homogeneous(&parse(p, "x*y")).verdict, Verdict::Separable);
            assert_eq!(decide_homogeneous(&parse(p, "x^2*y")).verdict, Verdict::NotSeparable);
        }
    }

    // every homogeneous polynomial of degree 1..=4 over F_2 and F_3
    #[test]
    fn decide_matches_multiplicities_exhaustively() {
        for p in [2u64, 3] {
            let field = PrimeField::new(p).unwrap();
            for d in 1..=4u32 {
                let count = p.pow(d + 1);
                for code in 1..count {
                    let mut f = BiPoly::zero(field);
                    let mut c = code;
                    for i in 0..=d {
                        f.add_term(Monomial::new(i, d - i), c % p);
                        c /= p;
                    }
                    let dec = decide_homogeneous(&f);
                    let ev = dec.evidence.expect("homogeneous");
                    assert_eq!(ev.reconstruct(), f);
                    let want = if ev.is_squarefree() { Verdict::Separable } else { Verdict::NotSeparable };
                    assert_eq!(dec.verdict, want, "{f}");
                }
            }
        }
    }

    #[test]
    fn integral_examples() {
        let k = example1();
        let t = UniPoly::t(k.field());
        assert_eq!(integral_test(&k.zero(), 3).unwrap(), Integrality::Annihilator(t));
        assert_eq!(integral_test(&k.a(), 6).unwrap(), Integrality::Unknown { mmax: 6 });
        assert!(integral_test(&k.a(), 0).is_err());

        let k2 = example2();
        let q = FiniteQuotient::new(&k2, 1, 1, DEFAULT_DIM_CAP).unwrap();
        let b = q.project(&k2.b()).unwrap();
        let f2 = k2.field();
        assert_eq!(integral_test_in(&q, &b, 4).unwrap(), Integrality::Annihilator(UniPoly::new(f2, vec![0, 1, 1])));
    }

    #[test]
    fn integral_in_quotients_always_found() {
        // a finite ring of dimension d: every element satisfies a relation of degree <= d + 1
        let k = example1();
        let q = FiniteQuotient::new(&k, 1, 2, DEFAULT_DIM_CAP).unwrap();
        for u in ["a", "b", "a + b", "a*b + b^2"] {
            let v = q.project(&k.eval_expr(u).unwrap()).unwrap();
            match integral_test_in(&q, &v, q.dim() + 1).unwrap() {
                Integrality::Annihilator(g) => {
                    assert!(g.is_monic());
                    assert_eq!(g.coeff(0), 0);
                }
                other => panic!("{u}: {other:?}"),
            }
        }
    }

    #[test]
    fn intdep_examples() {
        let k1 = example1();
        let IntDep::Witness(w) = intdep_search(&k1, 4, 4).unwrap() else { panic!("expected witness") };
        assert!(w.verify(&k1));
        let IntDep::Witness(w) = intdep_search(&k1, 4, 3).unwrap() else { panic!("expected witness") };
        assert!(w.verify(&k1));
        assert_eq!(intdep_search(&k1, 1, 1).unwrap(), IntDep::Unknown { dx: 1, dy: 1 });

        let k2 = example2();
        let IntDep::Witness(w) = intdep_search(&k2, 2, 2).unwrap() else { panic!("expected witness") };
        assert_eq!(&w.g, k2.relation());
    }

    #[test]
    fn quartic_multiple_of_relation_is_a_witness() {
        let k1 = example1();
        let g = parse(3, "x^4 - x^2*y^2 + y^3 - y^2");
        assert_eq!(g, &parse(3, "x^2 + y - y^2") * &parse(3, "x^2 - y"));
        assert!(UnitaryWitness { g, dx: 4, dy: 3 }.verify(&k1));
    }

    #[test]
    fn intdep_is_monotone() {
        let k1 = example1();
        let mut first = None;
        for dx in 1..=5 {
            for dy in 1..=5 {
                let found = matches!(intdep_search(&k1, dx, dy).unwrap(), IntDep::Witness(_));
                if found && first.is_none() {
                    first = Some((dx, dy));
                }
                if let Some((fx, fy)) = first {
                    if dx >= fx && dy >= fy {
                        assert!(found, "lost witness at ({dx}, {dy})");
                    }
                }
            }
        }
        assert!(first.is_some());
    }

    #[test]
    fn algebraic_degree_examples() {
        for k in [example1(), example2(), Presentation::parse(3, "x^2 - y").unwrap()] {
            match algebraic_degree(&k, 4, 4).unwrap() {
                AlgebraicDegree::Exact { degree, coefficients } => {
                    assert_eq!(degree, 3);
                    assert!(verify_degree_relation(&k, &coefficients).unwrap());
                }
                other => panic!("{other:?}"),
            }
            assert_eq!(degree_feasible(&k, 1, 4).unwrap(), None);
            assert_eq!(degree_feasible(&k, 2, 4).unwrap(), None);
            assert_eq!(algebraic_degree(&k, 4, 2).unwrap(), AlgebraicDegree::LowerBoundOnly(2));
        }
    }

    #[test]
    fn documented_degree_relations_verify() {
        let t = |p: u64, c: Vec<u64>| UniPoly::new(PrimeField::new(p).unwrap(), c);
        let k1 = example1();
        // b a^3 + (b^2 - b^3) a
        assert!(verify_degree_relation(&k1, &[t(3, vec![0, 1]), t(3, vec![]), t(3, vec![0, 0, 1, 2])]).unwrap());
        let k2 = example2();
        assert!(verify_degree_relation(&k2, &[t(2, vec![0, 1]), t(2, vec![]), t(2, vec![0, 0, 1, 1])]).unwrap());
        let k3 = Presentation::parse(3, "x^2 - y").unwrap();
        assert!(verify_degree_relation(&k3, &[t(3, vec![0, 1]), t(3, vec![]), t(3, vec![0, 0, 2])]).unwrap());
        // a constant coefficient is rejected
        assert!(!verify_degree_relation(&k3, &[t(3, vec![1]), t(3, vec![]), t(3, vec![0, 2])]).unwrap());
    }

    #[test]
    fn strategies_agree() {
        let k1 = example1();
        assert_eq!(intdep_search_with(&k1, 4, 4, Strategy::Sequential).unwrap(), intdep_search(&k1, 4, 4).unwrap());
        assert_eq!(
            algebraic_degree_with(&k1, 4, 4, Strategy::Sequential).unwrap(),
            algebraic_degree(&k1, 4, 4).unwrap()
        );
    }

    fn arb_relation() -> impl proptest::strategy::Strategy<Value = Arc<Presentation>> {
        (
            prop_oneof![Just(2u64), Just(3), Just(5)],
            1u32..=3,
            prop::collection::vec(((0u32..3, 0u32..4), 0i64..5), 0..5),
        )
            .prop_filter_map("relation must be unitary in x", |(p, n, tail)| {
                let field = PrimeField::new(p).unwrap();
                let mut f = BiPoly::monomial(field, 1, Monomial::new(n, 0));
                for ((i, j), c) in tail {
                    if i < n && (i, j) != (0, 0) {
                        f.add_term(Monomial::new(i, j), field.from_i64(c));
                    }
                }
                Presentation::new(f).ok()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn witnesses_reverify(k in arb_relation()) {
            if let IntDep::Witness(w) = intdep_search(&k, 3, 3).unwrap() {
                prop_assert!(w.verify(&k));
                prop_assert_eq!(w.g.degree_in(Var::X), Some(w.dx));
            }
            if let AlgebraicDegree::Exact { degree, coefficients } = algebraic_degree(&k, 2, 3).unwrap() {
                prop_assert!(verify_degree_relation(&k, &coefficients).unwrap());
                for n in 1..degree {
                    prop_assert_eq!(degree_feasible(&k, n, 2).unwrap(), None);
                }
                // monotone in both bounds
                let wider = match algebraic_degree(&k, 3, 4).unwrap() {
                    AlgebraicDegree::Exact { degree: d, .. } => d,
                    AlgebraicDegree::LowerBoundOnly(_) => usize::MAX,
                };
                prop_assert!(wider <= degree);
            }
            let a = k.a();
            if let Integrality::Annihilator(g) = integral_test(&a, 4).unwrap() {
                prop_assert!(a.compose(&g).unwrap().is_zero());
            }
        }
    }
}
