//! Matrices of automorphisms of `Z/p^{tau_1} + ... + Z/p^{tau_t}`.
//!
//! Column `j` holds the image of generator `j`, so entry `(i, j)` is a
//! residue modulo `p^{tau_i}`. An integer matrix describes an endomorphism
//! exactly when `p^{max(0, tau_i - tau_j)}` divides entry `(i, j)`, and an
//! automorphism when in addition its determinant is prime to `p`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::abelian::PGroupType;
use crate::error::{Error, Result};
use crate::exactmat::{pow, IntMatrix};

/// A canonical automorphism matrix for `(p, tau)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AutMatrix {
    p: u64,
    tau: PGroupType,
    m: IntMatrix,
}

impl AutMatrix {
    /// Validates `m` and reduces it to canonical residues.
    pub fn new(m: IntMatrix, p: u64, tau: PGroupType) -> Result<Self> {
        if !is_valid_aut(&m, p, &tau)? {
            return Err(Error::InvariantViolation(format!(
                "matrix {m:?} is not an automorphism of type {tau}"
            )));
        }
        Ok(AutMatrix {
            m: reduce_rows(&m, p, &tau),
            p,
            tau,
        })
    }

    pub fn identity(p: u64, tau: PGroupType) -> Self {
        AutMatrix {
            m: IntMatrix::identity(tau.len()),
            p,
            tau,
        }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.m
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn tau(&self) -> &PGroupType {
        &self.tau
    }

    pub fn is_identity(&self) -> bool {
        self.m == IntMatrix::identity(self.tau.len())
    }

    /// Composition `self o other`, reduced.
    pub fn compose(&self, other: &AutMatrix) -> Result<AutMatrix> {
        if self.p != other.p || self.tau != other.tau {
            return Err(Error::MismatchedParameters);
        }
        Ok(AutMatrix {
            m: reduce_rows(&(&self.m * &other.m), self.p, &self.tau),
            p: self.p,
            tau: self.tau.clone(),
        })
    }
}

/// Reduces row `i` modulo `p^{tau_i}`.
pub fn reduce_rows(m: &IntMatrix, p: u64, tau: &PGroupType) -> IntMatrix {
    let mut out = m.clone();
    for (i, &ti) in tau.parts().iter().enumerate() {
        let q = pow(p, ti);
        for j in 0..m.cols() {
            out[(i, j)] = m[(i, j)].mod_floor(&q);
        }
    }
    out
}

fn check_square(m: &IntMatrix, tau: &PGroupType) -> Result<()> {
    let t = tau.len();
    if m.rows() != t || m.cols() != t {
        return Err(Error::shape(
            format!("{t}x{t}"),
            format!("{}x{}", m.rows(), m.cols()),
        ));
    }
    Ok(())
}

/// Determinant modulo a prime, by Gaussian elimination over `F_p`.
fn det_mod_prime(entries: &[u64], n: usize, p: u64) -> u64 {
    let mut a: Vec<u64> = entries.iter().map(|x| x % p).collect();
    let mut det = 1u64;
    let mulmod = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    for k in 0..n {
        let Some(piv) = (k..n).find(|&r| a[r * n + k] != 0) else {
            return 0;
        };
        if piv != k {
            for c in 0..n {
                a.swap(k * n + c, piv * n + c);
            }
            det = (p - det) % p;
        }
        let pv = a[k * n + k];
        det = mulmod(det, pv);
        let inv = mod_pow(pv, p - 2, p);
        for r in k + 1..n {
            let f = mulmod(a[r * n + k], inv);
            if f == 0 {
                continue;
            }
            for c in k..n {
                let sub = mulmod(f, a[k * n + c]);
                a[r * n + c] = (a[r * n + c] + p - sub) % p;
            }
        }
    }
    det
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Whether `m` satisfies the divisibility pattern and has determinant
/// prime to `p`.
pub fn is_valid_aut(m: &IntMatrix, p: u64, tau: &PGroupType) -> Result<bool> {
    check_square(m, tau)?;
    let parts = tau.parts();
    for (i, &ti) in parts.iter().enumerate() {
        for (j, &tj) in parts.iter().enumerate() {
            if ti > tj && !m[(i, j)].is_multiple_of(&pow(p, ti - tj)) {
                return Ok(false);
            }
        }
    }
    let pb = BigInt::from(p);
    let residues: Vec<u64> = m
        .entries()
        .iter()
        .map(|x| x.mod_floor(&pb).to_u64().expect("residue below p"))
        .collect();
    Ok(det_mod_prime(&residues, parts.len(), p) != 0)
}

/// Per-entry `(step, count)`: entry `(i, j)` ranges over
/// `step * k` for `k < count`, covering residues mod `p^{tau_i}` that
/// satisfy the divisibility pattern.
fn entry_ranges(p: u64, tau: &PGroupType) -> Result<Vec<(u64, u64)>> {
    let parts = tau.parts();
    let mut out = Vec::with_capacity(parts.len() * parts.len());
    for &ti in parts {
        for &tj in parts {
            let step = p.checked_pow(ti.saturating_sub(tj));
            let count = p.checked_pow(ti.min(tj));
            match (step, count) {
                (Some(s), Some(c)) if s.checked_mul(c).is_some() => out.push((s, c)),
                _ => return Err(Error::Overflow(format!("{p}^{ti}"))),
            }
        }
    }
    Ok(out)
}

/// Number of matrices [`enumerate_auts`] has to examine.
pub fn candidate_count(p: u64, tau: &PGroupType) -> Option<u64> {
    let e: u32 = tau
        .parts()
        .iter()
        .flat_map(|&ti| tau.parts().iter().map(move |&tj| ti.min(tj)))
        .sum();
    p.checked_pow(e)
}

/// Iterator over canonical automorphism matrices in lexicographic order of
/// their row-major entries.
#[derive(Debug, Clone)]
pub struct AutEnumerator {
    p: u64,
    tau: PGroupType,
    ranges: Vec<(u64, u64)>,
    digits: Vec<u64>,
    done: bool,
}

impl AutEnumerator {
    fn advance(&mut self) {
        for k in (0..self.digits.len()).rev() {
            self.digits[k] += 1;
            if self.digits[k] < self.ranges[k].1 {
                return;
            }
            self.digits[k] = 0;
        }
        self.done = true;
    }

    fn current(&self) -> Vec<u64> {
        self.digits
            .iter()
            .zip(&self.ranges)
            .map(|(d, (step, _))| d * step)
            .collect()
    }
}

impl Iterator for AutEnumerator {
    type Item = AutMatrix;

    fn next(&mut self) -> Option<AutMatrix> {
        let t = self.tau.len();
        while !self.done {
            let entries = self.current();
            self.advance();
            if det_mod_prime(&entries, t, self.p) != 0 {
                let m = IntMatrix::from_vec(t, t, entries.into_iter().map(BigInt::from).collect())
                    .expect("t*t entries");
                return Some(AutMatrix {
                    p: self.p,
                    tau: self.tau.clone(),
                    m,
                });
            }
        }
        None
    }
}

/// Streams every automorphism matrix of `(p, tau)`, rejecting search spaces
/// larger than `limit` candidates.
pub fn enumerate_auts(p: u64, tau: &PGroupType, limit: u64) -> Result<AutEnumerator> {
    match candidate_count(p, tau) {
        Some(n) if n <= limit => {}
        Some(n) => return Err(Error::bound("automorphism candidates", n, limit)),
        None => return Err(Error::bound("automorphism candidates", "more than 2^64", limit)),
    }
    let ranges = entry_ranges(p, tau)?;
    Ok(AutEnumerator {
        p,
        tau: tau.clone(),
        digits: vec![0; ranges.len()],
        ranges,
        done: false,
    })
}

/// `p^{-mu} G p^{mu}`: entry `(k, j)` becomes `p^{mu_j - mu_k} G[k][j]`.
///
/// Entries with `mu_k > mu_j` are divided exactly; a non-divisible entry
/// means `g` is not an endomorphism matrix.
pub fn conjugate_by_p_powers(g: &IntMatrix, p: u64, mu: &PGroupType) -> Result<IntMatrix> {
    check_square(g, mu)?;
    let parts = mu.parts();
    let mut out = IntMatrix::zeros(g.rows(), g.cols());
    for (k, &mk) in parts.iter().enumerate() {
        for (j, &mj) in parts.iter().enumerate() {
            let x = &g[(k, j)];
            out[(k, j)] = if mj >= mk {
                x * pow(p, mj - mk)
            } else {
                let d = pow(p, mk - mj);
                let (q, r) = x.div_rem(&d);
                if !r.is_zero() {
                    return Err(Error::NotDivisible {
                        row: k,
                        col: j,
                        value: x.to_string(),
                        divisor: d.to_string(),
                    });
                }
                q
            };
        }
    }
    Ok(out)
}
