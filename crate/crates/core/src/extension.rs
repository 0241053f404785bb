//! Extension data `(p, lambda, mu, A)` and the presentation of the middle
//! group it determines.
//!
//! Row `j` of `A` holds the coefficients of `p^{mu_j} x~_j` in terms of the
//! subgroup generators `y_1..y_l`, so `A` is `m x l`. Entry `(j, i)` only
//! matters modulo `p^{min(lambda_i, mu_j)}`: adding `p^{lambda_i}` reflects
//! the order of `y_i`, adding `p^{mu_j}` reflects a different choice of lift.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::abelian::{is_prime, PGroupType};
use crate::error::{Error, Result};
use crate::exactmat::{p_valuation, pow, snf, IntMatrix};

/// An extension of `G_mu` by `G_lambda` over the prime `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtensionData {
    pub p: u64,
    pub lambda: PGroupType,
    pub mu: PGroupType,
    /// `m x l` coefficient matrix, rows indexed by the quotient generators.
    pub a: IntMatrix,
}

impl ExtensionData {
    /// Builds and validates extension data from raw parts.
    pub fn new(p: u64, lambda: Vec<u32>, mu: Vec<u32>, a: IntMatrix) -> Result<Self> {
        let ext = ExtensionData {
            p,
            lambda: PGroupType::new(lambda)?,
            mu: PGroupType::new(mu)?,
            a,
        };
        ext.validate()?;
        Ok(ext)
    }

    /// Shorthand for tests and examples: entries given as `i64` rows.
    pub fn from_i64(p: u64, lambda: &[u32], mu: &[u32], a: &[&[i64]]) -> Result<Self> {
        let rows: Vec<Vec<i64>> = a.iter().map(|r| r.to_vec()).collect();
        let a = IntMatrix::from_rows(lambda.len(), &rows)?;
        Self::new(p, lambda.to_vec(), mu.to_vec(), a)
    }

    /// The split extension `A = 0`.
    pub fn split(p: u64, lambda: PGroupType, mu: PGroupType) -> Result<Self> {
        let a = IntMatrix::zeros(mu.len(), lambda.len());
        let ext = ExtensionData { p, lambda, mu, a };
        ext.validate()?;
        Ok(ext)
    }

    pub fn l(&self) -> usize {
        self.lambda.len()
    }

    pub fn m(&self) -> usize {
        self.mu.len()
    }

    /// Checks that `p` is prime and `A` is `m x l`. Partitions are checked
    /// when the [`PGroupType`]s are built.
    pub fn validate(&self) -> Result<()> {
        if !is_prime(self.p) {
            return Err(Error::NotPrime(self.p));
        }
        if self.a.rows() != self.m() || self.a.cols() != self.l() {
            return Err(Error::shape(
                format!("{}x{}", self.m(), self.l()),
                format!("{}x{}", self.a.rows(), self.a.cols()),
            ));
        }
        Ok(())
    }

    /// Whether every entry already lies in `[0, p^{min(lambda_i, mu_j)})`.
    pub fn is_normalized(&self) -> bool {
        let moduli = modulus_matrix(self.p, &self.lambda, &self.mu);
        self.a
            .entries()
            .iter()
            .zip(moduli.entries())
            .all(|(x, q)| *x >= BigInt::ZERO && x < q)
    }

    pub fn same_parameters(&self, other: &ExtensionData) -> bool {
        self.p == other.p && self.lambda == other.lambda && self.mu == other.mu
    }
}

/// `m x l` matrix with entry `(j, i) = p^{min(lambda_i, mu_j)}`.
pub type ModulusMatrix = IntMatrix;

pub fn modulus_matrix(p: u64, lambda: &PGroupType, mu: &PGroupType) -> ModulusMatrix {
    let mut out = IntMatrix::zeros(mu.len(), lambda.len());
    for (j, &mj) in mu.parts().iter().enumerate() {
        for (i, &li) in lambda.parts().iter().enumerate() {
            out[(j, i)] = pow(p, li.min(mj));
        }
    }
    out
}

/// Exponents `min(lambda_i, mu_j)` in row-major `m x l` order.
pub fn modulus_exponents(lambda: &PGroupType, mu: &PGroupType) -> Vec<u32> {
    mu.parts()
        .iter()
        .flat_map(|&mj| lambda.parts().iter().map(move |&li| li.min(mj)))
        .collect()
}

/// Reduces each entry to its least non-negative residue.
pub fn normalize(ext: &ExtensionData) -> ExtensionData {
    let moduli = modulus_matrix(ext.p, &ext.lambda, &ext.mu);
    let data = ext
        .a
        .entries()
        .iter()
        .zip(moduli.entries())
        .map(|(x, q)| x.mod_floor(q))
        .collect();
    ExtensionData {
        a: IntMatrix::from_vec(ext.m(), ext.l(), data).expect("same shape"),
        ..ext.clone()
    }
}

/// The `(l+m) x (l+m)` relation matrix `[[diag(p^lambda), 0], [A, diag(p^mu)]]`
/// acting on the generator column `(y_1..y_l, x~_1..x~_m)`.
pub fn presentation_matrix(ext: &ExtensionData) -> IntMatrix {
    let (l, m) = (ext.l(), ext.m());
    let mut r = IntMatrix::zeros(l + m, l + m);
    for (i, &li) in ext.lambda.parts().iter().enumerate() {
        r[(i, i)] = pow(ext.p, li);
    }
    for (j, &mj) in ext.mu.parts().iter().enumerate() {
        for i in 0..l {
            r[(l + j, i)] = ext.a[(j, i)].clone();
        }
        r[(l + j, l + j)] = pow(ext.p, mj);
    }
    r
}

/// Type of the middle group `E`, read from the Smith normal form of the
/// presentation matrix.
pub fn middle_type(ext: &ExtensionData) -> Result<PGroupType> {
    ext.validate()?;
    let res = snf(&presentation_matrix(ext));
    let mut parts = Vec::new();
    for d in res.invariant_factors() {
        if d.is_one() {
            continue;
        }
        let k = p_valuation(&d, ext.p).map_err(|_| {
            Error::InvariantViolation("zero invariant factor in a finite presentation".into())
        })?;
        if d != pow(ext.p, k) {
            return Err(Error::InvariantViolation(format!(
                "invariant factor {d} is not a power of {}",
                ext.p
            )));
        }
        parts.push(k);
    }
    let ty = PGroupType::from_unsorted(parts);
    if ty.size() != ext.lambda.size() + ext.mu.size() {
        return Err(Error::InvariantViolation(format!(
            "middle type {ty} does not have size |lambda| + |mu|"
        )));
    }
    Ok(ty)
}

/// Re-chooses the lifts `x~_j -> x~_j + sum_i C[j][i] y_i`, which shifts row
/// `j` of `A` by `p^{mu_j} C[j]`. The result is not normalized.
pub fn change_lift(ext: &ExtensionData, c: &IntMatrix) -> Result<ExtensionData> {
    if c.rows() != ext.m() || c.cols() != ext.l() {
        return Err(Error::shape(
            format!("{}x{}", ext.m(), ext.l()),
            format!("{}x{}", c.rows(), c.cols()),
        ));
    }
    let mut a = ext.a.clone();
    for (j, &mj) in ext.mu.parts().iter().enumerate() {
        let q = pow(ext.p, mj);
        for i in 0..ext.l() {
            a[(j, i)] += &q * &c[(j, i)];
        }
    }
    Ok(ExtensionData { a, ..ext.clone() })
}

/// Number of normalized coefficient matrices, `prod p^{min(lambda_i, mu_j)}`,
/// or `None` when it overflows `u64`.
pub fn normalized_count(p: u64, lambda: &PGroupType, mu: &PGroupType) -> Option<u64> {
    let e: u32 = modulus_exponents(lambda, mu).iter().sum();
    p.checked_pow(e)
}

/// Every normalized coefficient matrix for `(p, lambda, mu)`, in
/// lexicographic order of the row-major entries.
pub fn all_normalized(
    p: u64,
    lambda: &PGroupType,
    mu: &PGroupType,
    limit: u64,
) -> Result<Vec<ExtensionData>> {
    let total = normalized_count(p, lambda, mu)
        .filter(|&n| n <= limit)
        .ok_or_else(|| {
            let e: u32 = modulus_exponents(lambda, mu).iter().sum();
            Error::bound("coefficient matrices", format!("{p}^{e}"), limit)
        })?;
    let radix: Vec<u64> = modulus_exponents(lambda, mu)
        .iter()
        .map(|&e| p.pow(e))
        .collect();
    let (m, l) = (mu.len(), lambda.len());
    let mut out = Vec::with_capacity(total as usize);
    for idx in 0..total {
        let digits = mixed_radix_digits(idx, &radix);
        let data = digits.into_iter().map(BigInt::from).collect();
        out.push(ExtensionData {
            p,
            lambda: lambda.clone(),
            mu: mu.clone(),
            a: IntMatrix::from_vec(m, l, data)?,
        });
    }
    Ok(out)
}

/// Digits of `idx` in the mixed radix `radix`, most significant first.
pub(crate) fn mixed_radix_digits(mut idx: u64, radix: &[u64]) -> Vec<u64> {
    let mut digits = vec![0; radix.len()];
    for k in (0..radix.len()).rev() {
        digits[k] = idx % radix[k];
        idx /= radix[k];
    }
    digits
}

/// Inverse of [`mixed_radix_digits`].
pub(crate) fn mixed_radix_index(digits: &[u64], radix: &[u64]) -> u64 {
    digits
        .iter()
        .zip(radix)
        .fold(0, |acc, (d, r)| acc * r + d)
}

/// Converts normalized entries to machine words.
pub(crate) fn residues_u64(ext: &ExtensionData) -> Result<Vec<u64>> {
    ext.a
        .entries()
        .iter()
        .map(|x| x.to_u64().ok_or_else(|| Error::Overflow(x.to_string())))
        .collect()
}
