//! Torsion ideals `I_k = {u : k u = 0}` of finite commutative rings and
//! their split into ideals of distinct prime characteristic when `k` is
//! squarefree.
//!
//! With `k = p_1 ... p_n` and a Bezout certificate
//! `z_1 (k/p_1) + ... + z_n (k/p_n) = 1`, every `u` in `I_k` is
//! `sum_i z_i (k/p_i) u`, and the i-th summand is killed by `p_i`.

use std::collections::BTreeSet;
use std::fmt;

use crate::intnum::{gcd, multi_bezout, squarefree_factor};
use crate::{Error, Result};

/// Largest ring order accepted; every element is enumerated somewhere.
pub const MAX_ORDER: u64 = 1 << 20;

/// A finite commutative ring on `Z_m1 x ... x Z_mr` with multiplication
/// given by the products `e_i e_j` of the standard generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCommRing {
    moduli: Vec<u64>,
    /// `table[i][j] = e_i e_j` in additive coordinates.
    table: Vec<Vec<Vec<u64>>>,
}

impl FiniteCommRing {
    /// Checks that the table is well defined on the cyclic components,
    /// commutative and associative. By bilinearity it suffices to check the
    /// generators.
    pub fn new(moduli: Vec<u64>, table: Vec<Vec<Vec<u64>>>) -> Result<Self> {
        let r = moduli.len();
        if r == 0 || moduli.iter().any(|&m| m < 2) {
            return Err(Error::InvalidRing("every cyclic component needs modulus at least 2".into()));
        }
        let order = moduli.iter().try_fold(1u64, |acc, &m| acc.checked_mul(m).filter(|&o| o <= MAX_ORDER));
        if order.is_none() {
            return Err(Error::InvalidRing(format!("order exceeds {MAX_ORDER}")));
        }
        if table.len() != r || table.iter().any(|row| row.len() != r || row.iter().any(|v| v.len() != r)) {
            return Err(Error::InvalidRing("structure table must be r x r x r".into()));
        }
        let mut ring = FiniteCommRing { moduli, table };
        for row in ring.table.iter_mut() {
            for v in row.iter_mut() {
                for (c, &m) in v.iter_mut().zip(&ring.moduli) {
                    *c %= m;
                }
            }
        }
        for i in 0..r {
            for j in 0..r {
                let g = gcd(ring.moduli[i], ring.moduli[j]);
                if !ring.scale(&ring.table[i][j], g as i128).iter().all(|&c| c == 0) {
                    return Err(Error::InvalidRing(format!("e{i} e{j} is not killed by gcd of the orders")));
                }
                if ring.table[i][j] != ring.table[j][i] {
                    return Err(Error::InvalidRing("multiplication is not commutative".into()));
                }
            }
        }
        let basis: Vec<Vec<u64>> = (0..r).map(|i| ring.generator(i)).collect();
        for x in &basis {
            for y in &basis {
                for z in &basis {
                    if ring.mul(&ring.mul(x, y), z) != ring.mul(x, &ring.mul(y, z)) {
                        return Err(Error::InvalidRing("multiplication is not associative".into()));
                    }
                }
            }
        }
        Ok(ring)
    }

    /// `Z_k`.
    pub fn zn(k: u64) -> Result<Self> {
        Self::new(vec![k], vec![vec![vec![1]]])
    }

    /// The direct product, with componentwise multiplication.
    pub fn product(&self, other: &Self) -> Result<Self> {
        let (r1, r2) = (self.rank(), other.rank());
        let r = r1 + r2;
        let mut moduli = self.moduli.clone();
        moduli.extend(&other.moduli);
        let mut table = vec![vec![vec![0; r]; r]; r];
        for i in 0..r1 {
            for j in 0..r1 {
                table[i][j][..r1].copy_from_slice(&self.table[i][j]);
            }
        }
        for i in 0..r2 {
            for j in 0..r2 {
                table[r1 + i][r1 + j][r1..].copy_from_slice(&other.table[i][j]);
            }
        }
        Self::new(moduli, table)
    }

    /// Parses descriptors like `Z6`, `Z12`, `Z6xZ10`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut ring: Option<Self> = None;
        for part in text.split(['x', 'X', '*']) {
            let part = part.trim();
            let digits =
                part.strip_prefix('Z').ok_or_else(|| Error::InvalidRing(format!("expected Z<n>, got {part:?}")))?;
            let k: u64 = digits.parse().map_err(|_| Error::InvalidRing(format!("bad modulus {digits:?}")))?;
            let factor = Self::zn(k)?;
            ring = Some(match ring {
                None => factor,
                Some(r) => r.product(&factor)?,
            });
        }
        ring.ok_or_else(|| Error::InvalidRing("empty descriptor".into()))
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> u64 {
        self.moduli.iter().product()
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.rank()]
    }

    pub fn generator(&self, i: usize) -> Vec<u64> {
        let mut v = self.zero();
        v[i] = 1;
        v
    }

    pub fn add(&self, u: &[u64], v: &[u64]) -> Vec<u64> {
        u.iter().zip(v).zip(&self.moduli).map(|((&a, &b), &m)| (a + b) % m).collect()
    }

    /// `n u` for an integer `n`.
    pub fn scale(&self, u: &[u64], n: i128) -> Vec<u64> {
        u.iter().zip(&self.moduli).map(|(&a, &m)| n.rem_euclid(m as i128) as u64 * a % m).collect()
    }

    pub fn mul(&self, u: &[u64], v: &[u64]) -> Vec<u64> {
        let mut out = self.zero();
        for (i, &a) in u.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in v.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                out = self.add(&out, &self.scale(&self.table[i][j], (a * b) as i128));
            }
        }
        out
    }

    /// Additive order of `u`.
    pub fn additive_order(&self, u: &[u64]) -> u64 {
        u.iter().zip(&self.moduli).fold(1, |acc, (&a, &m)| {
            let o = m / gcd(a, m);
            acc / gcd(acc, o) * o
        })
    }

    /// All elements in lexicographic order of coordinates.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        span(self, &(0..self.rank()).map(|i| self.generator(i)).collect::<Vec<_>>())
    }
}

impl fmt::Display for FiniteCommRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.moduli.iter().map(|m| format!("Z{m}")).collect();
        f.write_str(&parts.join("x"))
    }
}

/// The additive subgroup generated by `gens`, sorted.
fn span(ring: &FiniteCommRing, gens: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    seen.insert(ring.zero());
    let mut frontier = vec![ring.zero()];
    while let Some(u) = frontier.pop() {
        for g in gens {
            let v = ring.add(&u, g);
            if seen.insert(v.clone()) {
                frontier.push(v);
            }
        }
    }
    seen.into_iter().collect()
}

/// `I_k` together with its elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionIdeal {
    ring: FiniteCommRing,
    k: u64,
    generators: Vec<Vec<u64>>,
    elements: Vec<Vec<u64>>,
}

impl TorsionIdeal {
    pub fn ring(&self) -> &FiniteCommRing {
        &self.ring
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn generators(&self) -> &[Vec<u64>] {
        &self.generators
    }

    pub fn elements(&self) -> &[Vec<u64>] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, u: &[u64]) -> bool {
        self.elements.binary_search_by(|e| e.as_slice().cmp(u)).is_ok()
    }

    /// Closed under addition and under multiplication by the ring.
    pub fn is_ideal(&self) -> bool {
        let r = &self.ring;
        let gens: Vec<Vec<u64>> = (0..r.rank()).map(|i| r.generator(i)).collect();
        self.generators.iter().all(|g| {
            self.elements.iter().all(|u| self.contains(&r.add(u, g)))
                && gens.iter().all(|e| self.contains(&r.mul(g, e)))
        })
    }
}

/// `I_k`: on the cyclic component `Z_m` it is generated by `m / gcd(m, k)`.
pub fn torsion_ideal(ring: &FiniteCommRing, k: u64) -> Result<TorsionIdeal> {
    if k == 0 {
        return Err(Error::DegenerateInput("k must be positive"));
    }
    let generators: Vec<Vec<u64>> = ring
        .moduli()
        .iter()
        .enumerate()
        .filter_map(|(i, &m)| {
            let step = m / gcd(m, k);
            (step < m).then(|| ring.scale(&ring.generator(i), step as i128))
        })
        .collect();
    let elements = span(ring, &generators);
    Ok(TorsionIdeal { ring: ring.clone(), k, generators, elements })
}

/// One summand of the split: an ideal of characteristic `prime`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub prime: u64,
    pub generators: Vec<Vec<u64>>,
    pub elements: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrtSplit {
    pub components: Vec<Component>,
    /// `z_i` with `sum_i z_i (k / p_i) = 1`.
    pub certificate: Vec<i128>,
}

impl CrtSplit {
    /// The summands `z_i (k/p_i) u` of `u`.
    pub fn decompose(&self, ideal: &TorsionIdeal, u: &[u64]) -> Vec<Vec<u64>> {
        let k = ideal.k() as i128;
        self.components
            .iter()
            .zip(&self.certificate)
            .map(|(c, &z)| ideal.ring().scale(u, z * (k / c.prime as i128)))
            .collect()
    }
}

/// Splits `I_k` for squarefree `k` using the certificate from
/// [`multi_bezout`].
pub fn crt_split(ideal: &TorsionIdeal) -> Result<CrtSplit> {
    let sf = squarefree_factor(ideal.k())?;
    if sf.primes().is_empty() {
        return Ok(CrtSplit { components: Vec::new(), certificate: Vec::new() });
    }
    let z = multi_bezout(&sf.cofactors())?;
    crt_split_with_certificate(ideal, &z)
}

/// As [`crt_split`] with a caller-supplied certificate, which is checked.
pub fn crt_split_with_certificate(ideal: &TorsionIdeal, z: &[i128]) -> Result<CrtSplit> {
    let k = ideal.k();
    let sf = squarefree_factor(k)?;
    let primes = sf.primes();
    if z.len() != primes.len() {
        return Err(Error::DimensionMismatch { expected: primes.len(), found: z.len() });
    }
    let cof = sf.cofactors();
    let total: i128 = z.iter().zip(&cof).map(|(&zi, &c)| zi * c as i128).sum();
    if total != 1 {
        return Err(Error::NoBezoutCertificate(k));
    }
    let ring = ideal.ring();
    let components = primes
        .iter()
        .zip(z)
        .zip(&cof)
        .map(|((&p, &zi), &c)| {
            let generators: Vec<Vec<u64>> = ideal.generators().iter().map(|g| ring.scale(g, zi * c as i128)).collect();
            let elements = span(ring, &generators);
            Component { prime: p, generators, elements }
        })
        .collect();
    Ok(CrtSplit { components, certificate: z.to_vec() })
}

/// True iff summing one element from each component is a bijection from
/// the product of the components onto `ideal`.
pub fn verify_direct_sum(components: &[Component], ideal: &TorsionIdeal) -> bool {
    let ring = ideal.ring();
    let size = components.iter().try_fold(1usize, |acc, c| acc.checked_mul(c.elements.len()));
    if size != Some(ideal.len()) {
        return false;
    }
    let mut sums: BTreeSet<Vec<u64>> = BTreeSet::new();
    sums.insert(ring.zero());
    for c in components {
        let mut next = BTreeSet::new();
        for s in &sums {
            for u in &c.elements {
                next.insert(ring.add(s, u));
            }
        }
        sums = next;
    }
    sums.len() == ideal.len() && sums.iter().all(|s| ideal.contains(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intnum::lcm_list;
    use proptest::prelude::*;

    fn set(v: &[u64]) -> Vec<Vec<u64>> {
        v.iter().map(|&x| vec![x]).collect()
    }

    #[test]
    fn torsion_examples() {
        let z6 = FiniteCommRing::zn(6).unwrap();
        assert_eq!(torsion_ideal(&z6, 6).unwrap().elements(), z6.elements().as_slice());
        let z12 = FiniteCommRing::zn(12).unwrap();
        assert_eq!(torsion_ideal(&z12, 6).unwrap().elements(), set(&[0, 2, 4, 6, 8, 10]).as_slice());
        let z5 = FiniteCommRing::zn(5).unwrap();
        assert_eq!(torsion_ideal(&z5, 2).unwrap().elements(), set(&[0]).as_slice());
        assert!(torsion_ideal(&z5, 0).is_err());
    }

    #[test]
    fn split_examples() {
        let z6 = FiniteCommRing::zn(6).unwrap();
        let i = torsion_ideal(&z6, 6).unwrap();
        let split = crt_split(&i).unwrap();
        assert_eq!(split.certificate, vec![1, -1]);
        assert_eq!(split.components[0].prime, 2);
        assert_eq!(split.components[0].elements, set(&[0, 3]));
        assert_eq!(split.components[1].prime, 3);
        assert_eq!(split.components[1].elements, set(&[0, 2, 4]));
        assert!(verify_direct_sum(&split.components, &i));

        let z30 = FiniteCommRing::zn(30).unwrap();
        let i = torsion_ideal(&z30, 30).unwrap();
        let split = crt_split(&i).unwrap();
        let sizes: Vec<usize> = split.components.iter().map(|c| c.elements.len()).collect();
        assert_eq!(sizes, vec![2, 3, 5]);
        assert!(verify_direct_sum(&split.components, &i));

        let i = torsion_ideal(&z30, 1).unwrap();
        assert_eq!(i.elements(), set(&[0]).as_slice());
        let split = crt_split(&i).unwrap();
        assert!(split.components.is_empty());
        assert!(verify_direct_sum(&split.components, &i));

        let i = torsion_ideal(&z30, 5).unwrap();
        let split = crt_split(&i).unwrap();
        assert_eq!(split.components.len(), 1);
        assert!(verify_direct_sum(&split.components, &i));

        assert_eq!(crt_split(&torsion_ideal(&z30, 12).unwrap()), Err(Error::NotSquarefree { k: 12, p: 2 }));
    }

    #[test]
    fn overlapping_components_fail() {
        let z6 = FiniteCommRing::zn(6).unwrap();
        let i = torsion_ideal(&z6, 6).unwrap();
        let c = Component { prime: 2, generators: set(&[3]), elements: set(&[0, 3]) };
        let d = Component { prime: 3, generators: set(&[3]), elements: set(&[0, 3]) };
        assert!(!verify_direct_sum(&[c.clone(), d], &i));
        let big = Component { prime: 3, generators: set(&[1]), elements: z6.elements() };
        assert!(!verify_direct_sum(&[c, big], &i));
    }

    #[test]
    fn parse_and_display() {
        let r = FiniteCommRing::parse("Z6xZ10").unwrap();
        assert_eq!(r.moduli(), &[6, 10]);
        assert_eq!(r.order(), 60);
        assert_eq!(r.to_string(), "Z6xZ10");
        assert_eq!(r.mul(&[5, 3], &[5, 7]), vec![1, 1]);
        assert!(FiniteCommRing::parse("Q6").is_err());
        assert!(FiniteCommRing::parse("Z1").is_err());
        assert!(FiniteCommRing::parse("Z").is_err());
    }

    #[test]
    fn table_checks() {
        // e0 e0 = e0 on Z_2 x Z_3 with e0 e1 = e1 is not well defined: 2 e1 != 0
        let bad = FiniteCommRing::new(vec![2, 3], vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![0, 1]]]);
        assert!(bad.is_err());
        // non-associative on Z_2 x Z_2: e0 e0 = e1, others zero except e1 e1 = e0
        let bad = FiniteCommRing::new(vec![2, 2], vec![vec![vec![0, 1], vec![0, 0]], vec![vec![0, 0], vec![1, 0]]]);
        assert!(bad.is_err());
        // zero multiplication is fine
        assert!(FiniteCommRing::new(vec![4], vec![vec![vec![0]]]).is_ok());
    }

    // independent oracle: filter every element by k u = 0
    fn brute_torsion(r: &FiniteCommRing, k: u64) -> Vec<Vec<u64>> {
        r.elements().into_iter().filter(|u| r.scale(u, k as i128).iter().all(|&c| c == 0)).collect()
    }

    #[test]
    fn torsion_matches_brute_force() {
        for desc in ["Z12", "Z6xZ10", "Z4xZ6", "Z30", "Z8xZ9"] {
            let r = FiniteCommRing::parse(desc).unwrap();
            for k in 1..=40 {
                let i = torsion_ideal(&r, k).unwrap();
                assert_eq!(i.elements(), brute_torsion(&r, k).as_slice(), "{desc} k={k}");
                assert!(i.is_ideal());
            }
            let orders: Vec<u64> = r.elements().iter().map(|u| r.additive_order(u)).collect();
            let l = lcm_list(&orders).unwrap();
            assert_eq!(torsion_ideal(&r, l).unwrap().elements(), r.elements().as_slice());
        }
    }

    fn check_split(r: &FiniteCommRing, k: u64) {
        let i = torsion_ideal(r, k).unwrap();
        let split = crt_split(&i).unwrap();
        let primes: Vec<u64> = split.components.iter().map(|c| c.prime).collect();
        assert_eq!(primes, squarefree_factor(k).unwrap().primes());
        for c in &split.components {
            assert!(c.elements.iter().all(|u| r.scale(u, c.prime as i128).iter().all(|&v| v == 0)));
        }
        for (a, c) in split.components.iter().enumerate() {
            for d in &split.components[a + 1..] {
                for u in &c.elements {
                    for v in &d.elements {
                        assert_eq!(r.mul(u, v), r.zero());
                    }
                }
            }
        }
        assert!(verify_direct_sum(&split.components, &i));
        for u in i.elements() {
            let parts = split.decompose(&i, u);
            let sum = parts.iter().fold(r.zero(), |acc, p| r.add(&acc, p));
            assert_eq!(&sum, u);
            for (p, c) in parts.iter().zip(&split.components) {
                assert!(c.elements.binary_search(p).is_ok());
            }
        }
    }

    #[test]
    fn split_all_small_squarefree() {
        for k in (2..=100u64).filter(|&k| squarefree_factor(k).is_ok()) {
            check_split(&FiniteCommRing::zn(k).unwrap(), k);
        }
        let r = FiniteCommRing::parse("Z6xZ10").unwrap();
        for k in [1, 2, 3, 5, 6, 10, 15, 30] {
            check_split(&r, k);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn split_of_products(k1 in 2u64..=20, k2 in 2u64..=20) {
            let r = FiniteCommRing::zn(k1).unwrap().product(&FiniteCommRing::zn(k2).unwrap()).unwrap();
            for k in (2..=100u64).filter(|&k| squarefree_factor(k).is_ok()) {
                check_split(&r, k);
            }
        }

        #[test]
        fn split_is_certificate_independent(k1 in 2u64..=30, k2 in 2u64..=30, t in -5i128..=5) {
            let r = FiniteCommRing::zn(k1).unwrap().product(&FiniteCommRing::zn(k2).unwrap()).unwrap();
            for k in (2..=30u64).filter(|&k| squarefree_factor(k).is_ok_and(|s| s.primes().len() >= 2)) {
                let i = torsion_ideal(&r, k).unwrap();
                let a = crt_split(&i).unwrap();
                let ps = squarefree_factor(k).unwrap();
                let cof = ps.cofactors();
                let mut z = a.certificate.clone();
                z[0] += t * cof[1] as i128;
                z[1] -= t * cof[0] as i128;
                let b = crt_split_with_certificate(&i, &z).unwrap();
                for (x, y) in a.components.iter().zip(&b.components) {
                    prop_assert_eq!(&x.elements, &y.elements);
                }
                prop_assert!(verify_direct_sum(&b.components, &i));
            }
        }
    }
}
