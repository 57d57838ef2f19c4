//! Integer utilities behind the torsion split: extended gcd, Bezout
//! certificates over several parts, squarefree factorization and lcm.

use crate::{Error, Result};

/// Distinct-prime factorization of a squarefree positive integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeFactorization {
    k: u64,
    primes: Vec<u64>,
}

impl SquarefreeFactorization {
    pub fn k(&self) -> u64 {
        self.k
    }

    /// Strictly increasing; empty for `k = 1`.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// The cofactors `k / p_i`, in prime order.
    pub fn cofactors(&self) -> Vec<u64> {
        self.primes.iter().map(|p| self.k / p).collect()
    }
}

/// Returns `(g, u, v)` with `g = gcd(|a|, |b|)` and `u*a + v*b = g`.
pub fn ext_gcd(a: i64, b: i64) -> Result<(u64, i64, i64)> {
    if a == 0 && b == 0 {
        return Err(Error::DegenerateInput("gcd(0, 0) is undefined"));
    }
    let (g, u, v) = ext_gcd_i128(a as i128, b as i128);
    Ok((g as u64, u as i64, v as i64))
}

fn ext_gcd_i128(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Coefficients `z` with `sum z_i * parts_i = 1`.
///
/// Folds [`ext_gcd`] left to right and scales the accumulated coefficients
/// by each step's cofactor. Intermediate coefficients are reduced modulo the
/// next part so they stay small.
pub fn multi_bezout(parts: &[u64]) -> Result<Vec<i128>> {
    let Some((&first, rest)) = parts.split_first() else {
        return Err(Error::DegenerateInput("no parts"));
    };
    if parts.contains(&0) {
        return Err(Error::DegenerateInput("parts must be positive"));
    }
    let mut g = first as i128;
    let mut z: Vec<i128> = vec![1];
    for &m in rest {
        let m = m as i128;
        let (g2, u, v) = ext_gcd_i128(g, m);
        // u*g + v*m = g2, and g = sum z_i parts_i
        for zi in z.iter_mut() {
            *zi *= u;
        }
        z.push(v);
        g = g2;
        normalize(&mut z, parts);
    }
    if g != 1 {
        return Err(Error::NoBezoutCertificate(g as u64));
    }
    Ok(z)
}

// Shifts coefficient mass so that z_i for i < last lies in [0, parts_last / g),
// keeping sum z_i parts_i fixed.
fn normalize(z: &mut [i128], parts: &[u64]) {
    let last = z.len() - 1;
    let pl = parts[last] as i128;
    for i in 0..last {
        let pi = parts[i] as i128;
        let (h, _, _) = ext_gcd_i128(pi, pl);
        // z_i * p_i + z_l * p_l is unchanged by z_i -= k*(p_l/h), z_l += k*(p_i/h)
        let step = pl / h;
        let k = z[i].div_euclid(step);
        z[i] -= k * step;
        z[last] += k * (pi / h);
    }
}

/// Factors `k` into distinct primes, failing on the smallest square divisor.
pub fn squarefree_factor(k: u64) -> Result<SquarefreeFactorization> {
    if k == 0 {
        return Err(Error::DegenerateInput("k must be positive"));
    }
    let mut primes = Vec::new();
    let mut rest = k;
    let mut d = 2u64;
    while d.saturating_mul(d) <= rest {
        if rest.is_multiple_of(d) {
            rest /= d;
            if rest.is_multiple_of(d) {
                return Err(Error::NotSquarefree { k, p: d });
            }
            primes.push(d);
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        primes.push(rest);
    }
    Ok(SquarefreeFactorization { k, primes })
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm_list(ks: &[u64]) -> Result<u64> {
    if ks.is_empty() {
        return Err(Error::DegenerateInput("lcm of an empty list"));
    }
    Ok(ks.iter().fold(1u64, |acc, &k| acc / gcd(acc, k) * k))
}
