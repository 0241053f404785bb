/// Resource bounds for the brute-force parts of the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest explicit group (number of elements) we will enumerate.
    pub max_order: u64,
    /// Largest number of candidate automorphism matrices per enumeration.
    pub max_witnesses: u64,
    /// Largest number of coefficient matrices swept by a classification.
    pub max_matrices: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: 4096,
            max_witnesses: 1_000_000,
            max_matrices: 100_000,
        }
    }
}
