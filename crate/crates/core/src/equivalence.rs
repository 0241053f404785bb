//! Equivalence of extensions via automorphism matrices.
//!
//! Two normalized coefficient matrices `A1`, `A2` (same `p`, `lambda`, `mu`)
//! describe equivalent extensions iff some automorphism matrices `F` of
//! `G_lambda` and `G` of `G_mu` satisfy
//!
//! ```text
//! F A1^T = A2^T G^    (entry (i, j) modulo p^{min(lambda_i, mu_j)})
//! ```
//!
//! with `G^ = p^{-mu} G p^{mu}`. Read as a map, `A^T -> F A^T G^` is an
//! action of `Aut(lambda) x Aut(mu)` on normalized matrices whose orbits are
//! the equivalence classes.

use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::abelian::PGroupType;
use crate::autgroup::{conjugate_by_p_powers, enumerate_auts, AutMatrix};
use crate::error::{Error, Result};
use crate::exactmat::IntMatrix;
use crate::extension::{
    middle_type, mixed_radix_digits, mixed_radix_index, modulus_exponents, modulus_matrix,
    normalize, normalized_count, residues_u64, ExtensionData,
};
use crate::limits::Limits;
use crate::parallel::{map_range, Execution};

/// A pair `(F, G)` certifying that two extensions are equivalent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub f: AutMatrix,
    pub g: AutMatrix,
}

impl Witness {
    /// Checks `F A1^T = A2^T G^` entrywise modulo `p^{min(lambda_i, mu_j)}`
    /// with exact integer arithmetic.
    pub fn holds(&self, e1: &ExtensionData, e2: &ExtensionData) -> Result<bool> {
        if !e1.same_parameters(e2)
            || self.f.p() != e1.p
            || self.f.tau() != &e1.lambda
            || self.g.tau() != &e1.mu
        {
            return Err(Error::MismatchedParameters);
        }
        let g_hat = conjugate_by_p_powers(self.g.matrix(), e1.p, &e1.mu)?;
        let lhs = self.f.matrix() * &e1.a.transpose();
        let rhs = &e2.a.transpose() * &g_hat;
        let moduli = modulus_matrix(e1.p, &e1.lambda, &e1.mu).transpose();
        Ok(lhs
            .entries()
            .iter()
            .zip(rhs.entries())
            .zip(moduli.entries())
            .all(|((x, y), q)| (x - y).is_multiple_of(q)))
    }
}

/// Moves `ext` along the action: the result has `A'^T = F A^T G^`, normalized.
pub fn apply_witness(ext: &ExtensionData, f: &AutMatrix, g: &AutMatrix) -> Result<ExtensionData> {
    if f.p() != ext.p || g.p() != ext.p || f.tau() != &ext.lambda || g.tau() != &ext.mu {
        return Err(Error::MismatchedParameters);
    }
    let g_hat = conjugate_by_p_powers(g.matrix(), ext.p, &ext.mu)?;
    let moved = &(f.matrix() * &ext.a.transpose()) * &g_hat;
    Ok(normalize(&ExtensionData {
        a: moved.transpose(),
        ..ext.clone()
    }))
}

/// Result of [`classify_all`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitClassification {
    pub p: u64,
    pub lambda: PGroupType,
    pub mu: PGroupType,
    /// Lexicographically least member of each orbit, in increasing order.
    pub representatives: Vec<ExtensionData>,
    pub orbit_sizes: Vec<u64>,
    pub middle_types: Vec<PGroupType>,
    pub total: u64,
}

/// The action of `Aut(lambda) x Aut(mu)` on normalized coefficient matrices
/// for fixed `(p, lambda, mu)`, on machine-word residues.
#[derive(Debug, Clone)]
pub struct ExtensionAction {
    p: u64,
    lambda: PGroupType,
    mu: PGroupType,
    /// `p^{lambda_i}`
    lambda_pow: Vec<u64>,
    /// row-major `m x l`, `p^{min(lambda_i, mu_j)}`
    moduli: Vec<u64>,
    f_auts: Vec<AutMatrix>,
    f_words: Vec<Vec<u64>>,
    g_auts: Vec<AutMatrix>,
    g_hat_words: Vec<Vec<u64>>,
}

fn to_words(m: &IntMatrix) -> Result<Vec<u64>> {
    m.entries()
        .iter()
        .map(|x| x.to_u64().ok_or_else(|| Error::Overflow(x.to_string())))
        .collect()
}

fn mulmod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

impl ExtensionAction {
    pub fn new(p: u64, lambda: &PGroupType, mu: &PGroupType, limits: &Limits) -> Result<Self> {
        ExtensionData::split(p, lambda.clone(), mu.clone())?;
        let lambda_pow = lambda
            .parts()
            .iter()
            .map(|&e| p.checked_pow(e).ok_or_else(|| Error::Overflow(format!("{p}^{e}"))))
            .collect::<Result<Vec<_>>>()?;
        let moduli = modulus_exponents(lambda, mu)
            .iter()
            .map(|&e| p.pow(e))
            .collect();

        let f_auts: Vec<AutMatrix> = enumerate_auts(p, lambda, limits.max_witnesses)?.collect();
        let f_words = f_auts
            .iter()
            .map(|f| to_words(f.matrix()))
            .collect::<Result<_>>()?;
        let g_auts: Vec<AutMatrix> = enumerate_auts(p, mu, limits.max_witnesses)?.collect();
        let g_hat_words = g_auts
            .iter()
            .map(|g| to_words(&conjugate_by_p_powers(g.matrix(), p, mu)?))
            .collect::<Result<_>>()?;

        Ok(ExtensionAction {
            p,
            lambda: lambda.clone(),
            mu: mu.clone(),
            lambda_pow,
            moduli,
            f_auts,
            f_words,
            g_auts,
            g_hat_words,
        })
    }

    pub fn for_extension(ext: &ExtensionData, limits: &Limits) -> Result<Self> {
        Self::new(ext.p, &ext.lambda, &ext.mu, limits)
    }

    pub fn lambda_auts(&self) -> &[AutMatrix] {
        &self.f_auts
    }

    pub fn mu_auts(&self) -> &[AutMatrix] {
        &self.g_auts
    }

    /// Number of normalized coefficient matrices.
    pub fn total(&self) -> u64 {
        self.moduli.iter().product()
    }

    fn l(&self) -> usize {
        self.lambda.len()
    }

    fn m(&self) -> usize {
        self.mu.len()
    }

    fn words_of(&self, ext: &ExtensionData) -> Result<Vec<u64>> {
        if ext.p != self.p || ext.lambda != self.lambda || ext.mu != self.mu {
            return Err(Error::MismatchedParameters);
        }
        ext.validate()?;
        residues_u64(&normalize(ext))
    }

    fn ext_of(&self, words: &[u64]) -> ExtensionData {
        let data = words.iter().map(|&x| BigInt::from(x)).collect();
        ExtensionData {
            p: self.p,
            lambda: self.lambda.clone(),
            mu: self.mu.clone(),
            a: IntMatrix::from_vec(self.m(), self.l(), data).expect("m*l entries"),
        }
    }

    /// `A'^T = F A^T G^` on normalized residues (`None` means identity).
    fn transform(&self, a: &[u64], f: Option<&[u64]>, g_hat: Option<&[u64]>) -> Vec<u64> {
        let (l, m) = (self.l(), self.m());
        // b = F A^T, l x m, row i mod p^{lambda_i}
        let mut b = vec![0u64; l * m];
        for i in 0..l {
            let qi = self.lambda_pow[i];
            for q in 0..m {
                b[i * m + q] = match f {
                    None => a[q * l + i],
                    Some(f) => (0..l).fold(0u64, |acc, k| {
                        (acc + mulmod(f[i * l + k], a[q * l + k], qi)) % qi
                    }),
                };
            }
        }
        let mut out = vec![0u64; m * l];
        for j in 0..m {
            for i in 0..l {
                let modulus = self.moduli[j * l + i];
                out[j * l + i] = match g_hat {
                    None => b[i * m + j] % modulus,
                    Some(g) => (0..m).fold(0u64, |acc, q| {
                        (acc + mulmod(b[i * m + q], g[q * m + j], modulus)) % modulus
                    }),
                };
            }
        }
        out
    }

    fn neighbours(&self, a: &[u64]) -> impl Iterator<Item = Vec<u64>> + '_ {
        let a = a.to_vec();
        let a2 = a.clone();
        self.f_words
            .iter()
            .map(move |f| self.transform(&a, Some(f), None))
            .chain(
                self.g_hat_words
                    .iter()
                    .map(move |g| self.transform(&a2, None, Some(g))),
            )
    }

    /// Searches for a witness. The identity pair is tried first; after that
    /// `G` runs over `Aut(mu)` in enumeration order and, for each `G`, the
    /// first matching `F` is returned.
    pub fn witness(&self, e1: &ExtensionData, e2: &ExtensionData) -> Result<Option<Witness>> {
        let a1 = self.words_of(e1)?;
        let a2 = self.words_of(e2)?;
        if a1 == a2 {
            return Ok(Some(Witness {
                f: AutMatrix::identity(self.p, self.lambda.clone()),
                g: AutMatrix::identity(self.p, self.mu.clone()),
            }));
        }
        let mut lhs: HashMap<Vec<u64>, usize> = HashMap::with_capacity(self.f_words.len());
        for (idx, f) in self.f_words.iter().enumerate() {
            lhs.entry(self.transform(&a1, Some(f), None)).or_insert(idx);
        }
        for (gi, g) in self.g_hat_words.iter().enumerate() {
            if let Some(&fi) = lhs.get(&self.transform(&a2, None, Some(g))) {
                return Ok(Some(Witness {
                    f: self.f_auts[fi].clone(),
                    g: self.g_auts[gi].clone(),
                }));
            }
        }
        Ok(None)
    }

    /// All members of the orbit of `ext`, sorted lexicographically.
    pub fn orbit(&self, ext: &ExtensionData, limit: u64) -> Result<Vec<ExtensionData>> {
        let start = self.words_of(ext)?;
        let mut seen: HashSet<Vec<u64>> = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(a) = queue.pop_front() {
            for b in self.neighbours(&a) {
                if seen.insert(b.clone()) {
                    if seen.len() as u64 > limit {
                        return Err(Error::bound("orbit size", seen.len(), limit));
                    }
                    queue.push_back(b);
                }
            }
        }
        let mut members: Vec<Vec<u64>> = seen.into_iter().collect();
        members.sort_unstable();
        Ok(members.iter().map(|w| self.ext_of(w)).collect())
    }

    /// Lexicographically least member of the orbit.
    pub fn canonical_form(&self, ext: &ExtensionData, limit: u64) -> Result<ExtensionData> {
        Ok(self
            .orbit(ext, limit)?
            .into_iter()
            .next()
            .expect("orbit contains its starting point"))
    }

    /// Partitions every normalized matrix into orbits. Neighbour lists are
    /// computed per matrix (in parallel when requested) and merged with a
    /// union-find that keeps the smallest index as root, so the output does
    /// not depend on the execution mode.
    pub fn classify(&self, limit: u64, exec: Execution) -> Result<OrbitClassification> {
        let total = self.total();
        if total > limit {
            return Err(Error::bound("coefficient matrices", total, limit));
        }
        let n = total as usize;
        let edges: Vec<Vec<u64>> = map_range(exec, n, |idx| {
            let a = mixed_radix_digits(idx as u64, &self.moduli);
            self.neighbours(&a)
                .map(|b| mixed_radix_index(&b, &self.moduli))
                .collect()
        });

        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (a, targets) in edges.iter().enumerate() {
            for &b in targets {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b as usize));
                if ra != rb {
                    let (lo, hi) = (ra.min(rb), ra.max(rb));
                    parent[hi] = lo;
                }
            }
        }
        let mut sizes: Vec<u64> = vec![0; n];
        for x in 0..n {
            let r = find(&mut parent, x);
            sizes[r] += 1;
        }

        let roots: Vec<usize> = (0..n).filter(|&x| parent[x] == x).collect();
        let representatives: Vec<ExtensionData> = roots
            .iter()
            .map(|&r| self.ext_of(&mixed_radix_digits(r as u64, &self.moduli)))
            .collect();
        let middle_types = representatives
            .iter()
            .map(middle_type)
            .collect::<Result<Vec<_>>>()?;
        Ok(OrbitClassification {
            p: self.p,
            lambda: self.lambda.clone(),
            mu: self.mu.clone(),
            orbit_sizes: roots.iter().map(|&r| sizes[r]).collect(),
            representatives,
            middle_types,
            total,
        })
    }
}

/// Decides equivalence with default limits; see [`are_equivalent_with`].
pub fn are_equivalent(e1: &ExtensionData, e2: &ExtensionData) -> Result<Option<Witness>> {
    are_equivalent_with(e1, e2, &Limits::default())
}

/// Returns a witness `(F, G)` iff the two extensions are equivalent.
///
/// Differing middle types rule out equivalence. Release builds stop there;
/// debug builds still run the exhaustive search and assert it agrees.
pub fn are_equivalent_with(
    e1: &ExtensionData,
    e2: &ExtensionData,
    limits: &Limits,
) -> Result<Option<Witness>> {
    if !e1.same_parameters(e2) {
        return Err(Error::MismatchedParameters);
    }
    e1.validate()?;
    e2.validate()?;
    let types_differ = middle_type(e1)? != middle_type(e2)?;
    if types_differ && !cfg!(debug_assertions) {
        return Ok(None);
    }
    let action = ExtensionAction::for_extension(e1, limits)?;
    let found = action.witness(e1, e2)?;
    debug_assert!(
        !(types_differ && found.is_some()),
        "witness found for extensions with different middle types"
    );
    Ok(found)
}

/// Lexicographically least normalized matrix equivalent to `ext`.
pub fn canonical_form(ext: &ExtensionData, limits: &Limits) -> Result<ExtensionData> {
    ExtensionAction::for_extension(ext, limits)?.canonical_form(ext, limits.max_matrices)
}

/// Classifies every extension of `G_mu` by `G_lambda` up to equivalence.
pub fn classify_all(
    p: u64,
    lambda: &PGroupType,
    mu: &PGroupType,
    limits: &Limits,
) -> Result<OrbitClassification> {
    classify_all_with(p, lambda, mu, limits, Execution::default())
}

pub fn classify_all_with(
    p: u64,
    lambda: &PGroupType,
    mu: &PGroupType,
    limits: &Limits,
    exec: Execution,
) -> Result<OrbitClassification> {
    ExtensionData::split(p, lambda.clone(), mu.clone())?;
    match normalized_count(p, lambda, mu) {
        Some(n) if n <= limits.max_matrices => {}
        Some(n) => return Err(Error::bound("coefficient matrices", n, limits.max_matrices)),
        None => {
            return Err(Error::bound(
                "coefficient matrices",
                "more than 2^64",
                limits.max_matrices,
            ))
        }
    }
    ExtensionAction::new(p, lambda, mu, limits)?.classify(limits.max_matrices, exec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ext(p: u64, lambda: &[u32], mu: &[u32], a: &[&[i64]]) -> ExtensionData {
        ExtensionData::from_i64(p, lambda, mu, a).unwrap()
    }

    fn t(parts: &[u32]) -> PGroupType {
        PGroupType::new(parts.to_vec()).unwrap()
    }

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        IntMatrix::from_rows(cols, &rows).unwrap()
    }

    #[test]
    fn reflexive_identity_witness() {
        let e = ext(2, &[2, 1], &[1], &[&[1, 1]]);
        let w = are_equivalent(&e, &e).unwrap().unwrap();
        assert!(w.f.is_identity() && w.g.is_identity());
        assert!(w.holds(&e, &e).unwrap());
    }

    #[test]
    fn equivalence_examples() {
        let split = ext(2, &[1], &[1], &[&[0]]);
        let cyclic = ext(2, &[1], &[1], &[&[1]]);
        assert_eq!(are_equivalent(&split, &cyclic).unwrap(), None);

        let a1 = ext(3, &[1], &[1], &[&[1]]);
        let a2 = ext(3, &[1], &[1], &[&[2]]);
        let w = are_equivalent(&a1, &a2).unwrap().unwrap();
        assert_eq!(w.f.matrix(), &mat(&[&[2]]));
        assert_eq!(w.g.matrix(), &mat(&[&[1]]));
        assert!(w.holds(&a1, &a2).unwrap());

        let b1 = ext(2, &[2], &[1], &[&[1]]);
        let b2 = ext(2, &[2], &[1], &[&[3]]);
        let w = are_equivalent(&b1, &b2).unwrap().unwrap();
        assert!(w.f.is_identity() && w.g.is_identity());
    }

    #[test]
    fn mismatched_parameters() {
        let a = ext(2, &[1], &[1], &[&[0]]);
        let b = ext(2, &[2], &[1], &[&[0]]);
        assert_eq!(are_equivalent(&a, &b), Err(Error::MismatchedParameters));
    }

    #[test]
    fn canonical_examples() {
        let lim = Limits::default();
        assert_eq!(canonical_form(&ext(2, &[1], &[1], &[&[0]]), &lim).unwrap().a, mat(&[&[0]]));
        assert_eq!(canonical_form(&ext(3, &[1], &[1], &[&[2]]), &lim).unwrap().a, mat(&[&[1]]));
        assert_eq!(canonical_form(&ext(2, &[2], &[2], &[&[3]]), &lim).unwrap().a, mat(&[&[1]]));
    }

    fn summary(c: &OrbitClassification) -> Vec<(Vec<BigInt>, u64, Vec<u32>)> {
        c.representatives
            .iter()
            .zip(&c.orbit_sizes)
            .zip(&c.middle_types)
            .map(|((r, s), ty)| (r.a.entries().to_vec(), *s, ty.parts().to_vec()))
            .collect()
    }

    #[test]
    fn classify_examples() {
        let lim = Limits::default();
        let c = classify_all(2, &t(&[1]), &t(&[1]), &lim).unwrap();
        assert_eq!(c.total, 2);
        assert_eq!(
            summary(&c),
            vec![(vec![0.into()], 1, vec![1, 1]), (vec![1.into()], 1, vec![2])]
        );

        let c = classify_all(2, &t(&[1, 1]), &t(&[1]), &lim).unwrap();
        assert_eq!(c.representatives.len(), 2);
        assert_eq!(c.orbit_sizes, vec![1, 3]);
        assert_eq!(c.middle_types, vec![t(&[1, 1, 1]), t(&[2, 1])]);

        let c = classify_all(2, &t(&[2]), &t(&[2]), &lim).unwrap();
        assert_eq!(
            summary(&c),
            vec![
                (vec![0.into()], 1, vec![2, 2]),
                (vec![1.into()], 2, vec![4]),
                (vec![2.into()], 1, vec![3, 1]),
            ]
        );
    }

    #[test]
    fn classify_same_in_both_modes() {
        let lim = Limits::default();
        let (lambda, mu) = (t(&[2, 1]), t(&[2, 1]));
        let seq = classify_all_with(2, &lambda, &mu, &lim, Execution::Sequential).unwrap();
        let par = classify_all_with(2, &lambda, &mu, &lim, Execution::Parallel).unwrap();
        assert_eq!(seq, par);
        assert_eq!(seq.orbit_sizes.iter().sum::<u64>(), seq.total);
    }

    #[test]
    fn classify_bound() {
        let lim = Limits {
            max_matrices: 3,
            ..Limits::default()
        };
        assert!(matches!(
            classify_all(2, &t(&[2]), &t(&[2]), &lim),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn apply_witness_stays_in_class() {
        let e = ext(2, &[2, 1], &[2], &[&[1, 1]]);
        let action = ExtensionAction::for_extension(&e, &Limits::default()).unwrap();
        let ty = middle_type(&e).unwrap();
        let canon = action.canonical_form(&e, 1000).unwrap();
        for f in action.lambda_auts() {
            for g in action.mu_auts() {
                let moved = apply_witness(&e, f, g).unwrap();
                assert!(are_equivalent(&e, &moved).unwrap().is_some());
                assert_eq!(middle_type(&moved).unwrap(), ty);
                assert_eq!(action.canonical_form(&moved, 1000).unwrap(), canon);
            }
        }
    }
}
