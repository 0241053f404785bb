//! Independent oracles shared by the integration tests. Nothing here calls
//! into the SNF or the automorphism-matrix code.
#![allow(dead_code)]

use abext::{ExtensionData, IntMatrix, PGroupType};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub fn t(parts: &[u32]) -> PGroupType {
    PGroupType::new(parts.to_vec()).unwrap()
}

pub fn ext(p: u64, lambda: &[u32], mu: &[u32], a: &[&[i64]]) -> ExtensionData {
    ExtensionData::from_i64(p, lambda, mu, a).unwrap()
}

/// The parameter sets of the exhaustive theorem check.
pub fn desk_params() -> Vec<(u64, PGroupType, PGroupType)> {
    let types = [t(&[1]), t(&[2]), t(&[1, 1])];
    let mut out = Vec::new();
    for l in &types {
        for m in &types {
            out.push((2, l.clone(), m.clone()));
        }
    }
    out.push((3, t(&[1]), t(&[1])));
    out
}

/// Cofactor expansion along the first row.
pub fn laplace_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut acc = BigInt::zero();
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != c)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][c] * laplace_det(&minor);
        if c % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Determinantal divisors: `D_k` = gcd of all `k x k` minors, for
/// `k = 1..=min(rows, cols)`.
pub fn determinantal_divisors(m: &IntMatrix) -> Vec<BigInt> {
    let rows = m.to_rows();
    let kmax = m.rows().min(m.cols());
    (1..=kmax)
        .map(|k| {
            let mut g = BigInt::zero();
            for rs in subsets(m.rows(), k) {
                for cs in subsets(m.cols(), k) {
                    let sub: Vec<Vec<BigInt>> = rs
                        .iter()
                        .map(|&r| cs.iter().map(|&c| rows[r][c].clone()).collect())
                        .collect();
                    g = g.gcd(&laplace_det(&sub));
                }
            }
            g
        })
        .collect()
}

/// Invariant factors from determinantal divisors: `d_k = D_k / D_{k-1}`,
/// zero once `D_k` vanishes.
pub fn invariant_factors_from_minors(m: &IntMatrix) -> Vec<BigInt> {
    let divs = determinantal_divisors(m);
    let mut prev = BigInt::one();
    divs.iter()
        .map(|d| {
            if d.is_zero() {
                BigInt::zero()
            } else {
                let q = d / &prev;
                prev = d.clone();
                q
            }
        })
        .collect()
}

/// Prime-power divisors `p^k || n` by trial division.
pub fn prime_power_parts(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut q = 1;
        while n % d == 0 {
            n /= d;
            q *= d;
        }
        if q > 1 {
            out.push(q);
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn abs(x: &BigInt) -> BigInt {
    x.abs()
}
