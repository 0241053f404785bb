//! Exhaustive pairwise comparison of the matrix criterion against the
//! brute-force oracle for one parameter set `(p, lambda, mu)`.

use crate::abelian::PGroupType;
use crate::equivalence::ExtensionAction;
use crate::error::Result;
use crate::extension::{all_normalized, ExtensionData};
use crate::limits::Limits;
use crate::oracle::{diagram_equivalent, realize_extension, ExplicitExtension};
use crate::parallel::{map_range, map_slice, Execution};

/// Outcome of [`theorem_sweep`]. Relations are stored row-major as
/// `n x n` boolean tables over [`SweepReport::extensions`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub extensions: Vec<ExtensionData>,
    /// `criterion[i * n + j]`: a witness `(F, G)` exists for `(i, j)`.
    pub criterion: Vec<bool>,
    /// `oracle[i * n + j]`: the realized extensions are diagram-equivalent.
    pub oracle: Vec<bool>,
    /// Pairs where a witness was returned but failed the exact re-check.
    pub bad_witnesses: Vec<(usize, usize)>,
}

impl SweepReport {
    pub fn len(&self) -> usize {
        self.extensions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.extensions.is_empty()
    }

    pub fn pairs(&self) -> usize {
        self.criterion.len()
    }

    pub fn disagreements(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n * n)
            .filter(|&k| self.criterion[k] != self.oracle[k])
            .map(|k| (k / n, k % n))
            .collect()
    }

    pub fn agrees(&self) -> bool {
        self.bad_witnesses.is_empty() && self.criterion == self.oracle
    }
}

/// Decides every ordered pair of normalized extensions both ways.
pub fn theorem_sweep(
    p: u64,
    lambda: &PGroupType,
    mu: &PGroupType,
    limits: &Limits,
    exec: Execution,
) -> Result<SweepReport> {
    let extensions = all_normalized(p, lambda, mu, limits.max_matrices)?;
    let action = ExtensionAction::new(p, lambda, mu, limits)?;
    let realized: Vec<ExplicitExtension> = map_slice(exec, &extensions, |e| {
        realize_extension(e, limits)
    })
    .into_iter()
    .collect::<Result<_>>()?;

    let n = extensions.len();
    let results: Vec<(bool, bool, bool)> = map_range(exec, n * n, |k| {
        let (i, j) = (k / n, k % n);
        let witness = action.witness(&extensions[i], &extensions[j])?;
        let verified = match &witness {
            Some(w) => w.holds(&extensions[i], &extensions[j])?,
            None => true,
        };
        let oracle = diagram_equivalent(&realized[i], &realized[j], limits)?;
        Ok((witness.is_some(), oracle, verified))
    })
    .into_iter()
    .collect::<Result<_>>()?;

    Ok(SweepReport {
        criterion: results.iter().map(|r| r.0).collect(),
        oracle: results.iter().map(|r| r.1).collect(),
        bad_witnesses: results
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.2)
            .map(|(k, _)| (k / n, k % n))
            .collect(),
        extensions,
    })
}
