//! Finite abelian groups: p-group types, primary decomposition, and
//! explicit groups realized as products of cyclic factors.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactmat::{snf, IntMatrix};

/// The type `(lambda_1 >= ... >= lambda_l > 0)` of the p-group
/// `Z/p^{lambda_1} + ... + Z/p^{lambda_l}`. The empty type is the trivial group.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PGroupType(Vec<u32>);

impl PGroupType {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        let ok = parts.iter().all(|&x| x > 0) && parts.windows(2).all(|w| w[0] >= w[1]);
        if !ok {
            return Err(Error::InvalidPartition(parts));
        }
        Ok(PGroupType(parts))
    }

    /// Sorts the parts into decreasing order, dropping zeros.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        PGroupType(parts)
    }

    pub fn trivial() -> Self {
        PGroupType(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of cyclic factors.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|lambda|`, the base-p logarithm of the group order.
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Largest part, 0 for the trivial group.
    pub fn exponent(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    /// Parts of both types, merged into decreasing order.
    pub fn concat(&self, other: &PGroupType) -> PGroupType {
        PGroupType::from_unsorted(self.0.iter().chain(&other.0).copied().collect())
    }
}

impl fmt::Display for PGroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization by trial division, primes increasing.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            let mut k = 0;
            while n % d == 0 {
                n /= d;
                k += 1;
            }
            out.push((d, k));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Splits `Z/o_1 + ... + Z/o_k` into its Sylow subgroups, returning the
/// type of each p-part.
pub fn primary_decompose(orders: &[u64]) -> Result<BTreeMap<u64, PGroupType>> {
    let mut parts: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for &o in orders {
        if o <= 1 {
            return Err(Error::InvariantViolation(format!(
                "cyclic factor order must exceed 1, got {o}"
            )));
        }
        for (p, k) in factorize(o) {
            parts.entry(p).or_default().push(k);
        }
    }
    Ok(parts
        .into_iter()
        .map(|(p, ks)| (p, PGroupType::from_unsorted(ks)))
        .collect())
}

/// An element of an [`ExplicitGroup`]: one coordinate per cyclic factor.
pub type Element = Vec<u64>;

/// `Z/d_1 + ... + Z/d_r` with `d_i > 1`, optionally remembering where the
/// generators of some presentation went.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitGroup {
    factor_orders: Vec<u64>,
    generator_images: Option<Vec<Element>>,
}

impl ExplicitGroup {
    pub fn new(factor_orders: Vec<u64>) -> Result<Self> {
        if let Some(&bad) = factor_orders.iter().find(|&&d| d <= 1) {
            return Err(Error::InvariantViolation(format!(
                "cyclic factor order must exceed 1, got {bad}"
            )));
        }
        Ok(ExplicitGroup {
            factor_orders,
            generator_images: None,
        })
    }

    pub fn factor_orders(&self) -> &[u64] {
        &self.factor_orders
    }

    pub fn generator_images(&self) -> Option<&[Element]> {
        self.generator_images.as_deref()
    }

    pub fn rank(&self) -> usize {
        self.factor_orders.len()
    }

    /// Group order, or `None` if it overflows.
    pub fn order(&self) -> Option<u64> {
        self.factor_orders
            .iter()
            .try_fold(1u64, |acc, &d| acc.checked_mul(d))
    }

    /// Group order, rejected when above `limit`.
    pub fn bounded_order(&self, limit: u64) -> Result<u64> {
        match self.order() {
            Some(n) if n <= limit => Ok(n),
            Some(n) => Err(Error::bound("group order", n, limit)),
            None => Err(Error::bound("group order", "more than 2^64", limit)),
        }
    }

    pub fn identity(&self) -> Element {
        vec![0; self.rank()]
    }

    pub fn check(&self, x: &[u64]) -> Result<()> {
        if x.len() != self.rank() || x.iter().zip(&self.factor_orders).any(|(a, d)| a >= d) {
            return Err(Error::InvalidElement(x.to_vec()));
        }
        Ok(())
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Element {
        x.iter()
            .zip(y)
            .zip(&self.factor_orders)
            .map(|((a, b), d)| ((*a as u128 + *b as u128) % *d as u128) as u64)
            .collect()
    }

    pub fn neg(&self, x: &[u64]) -> Element {
        x.iter()
            .zip(&self.factor_orders)
            .map(|(a, d)| (d - a) % d)
            .collect()
    }

    /// `n * x` for any integer `n`; negative `n` gives `-(|n| x)`.
    pub fn module_action(&self, n: &BigInt, x: &[u64]) -> Result<Element> {
        self.check(x)?;
        Ok(x.iter()
            .zip(&self.factor_orders)
            .map(|(a, d)| {
                let d = BigInt::from(*d);
                let r = (n * BigInt::from(*a)).mod_floor(&d);
                r.to_u64().expect("residue below a u64 modulus")
            })
            .collect())
    }

    /// Additive order of `x`.
    pub fn element_order(&self, x: &[u64]) -> u64 {
        x.iter()
            .zip(&self.factor_orders)
            .fold(1u64, |acc, (a, d)| acc.lcm(&(d / a.gcd(d))))
    }

    /// Mixed-radix position of `x`, first coordinate most significant.
    pub fn index_of(&self, x: &[u64]) -> usize {
        x.iter()
            .zip(&self.factor_orders)
            .fold(0usize, |acc, (a, d)| acc * *d as usize + *a as usize)
    }

    pub fn element_at(&self, mut idx: usize) -> Element {
        let mut out = vec![0; self.rank()];
        for k in (0..self.rank()).rev() {
            let d = self.factor_orders[k] as usize;
            out[k] = (idx % d) as u64;
            idx /= d;
        }
        out
    }

    /// All elements in index order; caller is responsible for size bounds.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        let n = self.order().expect("enumerated group fits in u64") as usize;
        (0..n).map(move |i| self.element_at(i))
    }

    /// Closure of `gens` under addition (and hence negation).
    pub fn subgroup_generated(&self, gens: &[Element], limit: u64) -> Result<Vec<Element>> {
        let n = self.bounded_order(limit)? as usize;
        for g in gens {
            self.check(g)?;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![self.identity()];
        seen[0] = true;
        let mut members = Vec::new();
        while let Some(x) = stack.pop() {
            for g in gens {
                let y = self.add(&x, g);
                let i = self.index_of(&y);
                if !seen[i] {
                    seen[i] = true;
                    stack.push(y);
                }
            }
            members.push(x);
        }
        members.sort_unstable();
        Ok(members)
    }

    /// Primary type of a subgroup given by its full element list, computed
    /// from the sizes of its `p^k`-torsion layers.
    pub fn subgroup_primary_type(&self, members: &[Element]) -> BTreeMap<u64, PGroupType> {
        let mut out = BTreeMap::new();
        let order = members.len() as u64;
        for (p, _) in factorize(order) {
            // logs[k] = log_p #{x : p^k x = 0} = sum_i min(part_i, k)
            let mut logs = vec![0u32];
            let mut pk = 1u64;
            loop {
                pk *= p;
                let c = members
                    .iter()
                    .filter(|x| pk % self.element_order(x) == 0)
                    .count() as u64;
                let e = factorize(c).first().map_or(0, |&(_, e)| e);
                if e == *logs.last().unwrap() {
                    break;
                }
                logs.push(e);
            }
            let mut parts = Vec::new();
            for k in 1..logs.len() {
                let at_least = logs[k] - logs[k - 1];
                let at_least_next = if k + 1 < logs.len() {
                    logs[k + 1] - logs[k]
                } else {
                    0
                };
                parts.extend(std::iter::repeat(k as u32).take((at_least - at_least_next) as usize));
            }
            out.insert(p, PGroupType::from_unsorted(parts));
        }
        out
    }
}

/// The group `Z^n / (row lattice of R)` presented by relations `R x = 0`,
/// as canonical cyclic factors with the image of each generator.
pub fn cokernel_group(relations: &IntMatrix, n_generators: usize) -> Result<ExplicitGroup> {
    if relations.cols() != n_generators {
        return Err(Error::shape(
            format!("{n_generators} columns"),
            format!("{} columns", relations.cols()),
        ));
    }
    if relations.rows() < n_generators {
        return Err(Error::InfiniteCokernel);
    }
    let res = snf(relations);
    let diag = res.invariant_factors();
    if diag.iter().any(Zero::is_zero) {
        return Err(Error::InfiniteCokernel);
    }
    // Z^n / rows(R) ~ Z^n / rows(D) via c -> c V, so generator k maps to row k of V.
    let kept: Vec<usize> = (0..n_generators).filter(|&t| !diag[t].is_one()).collect();
    let mut orders = Vec::with_capacity(kept.len());
    for &t in &kept {
        orders.push(
            diag[t]
                .to_u64()
                .ok_or_else(|| Error::Overflow(diag[t].to_string()))?,
        );
    }
    let images = (0..n_generators)
        .map(|k| {
            kept.iter()
                .map(|&t| {
                    res.v[(k, t)]
                        .mod_floor(&diag[t])
                        .to_u64()
                        .expect("residue below a u64 modulus")
                })
                .collect()
        })
        .collect();
    let mut g = ExplicitGroup::new(orders)?;
    g.generator_images = Some(images);
    Ok(g)
}
