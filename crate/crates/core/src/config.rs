use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

/// Reorders a list of branch indices. Results are merged back into canonical
/// order, so any permutation must leave every output unchanged.
pub type BranchOrder = Arc<dyn Fn(&mut [usize]) + Send + Sync>;

#[derive(Clone)]
pub struct Config {
    /// Desk-scale bound on n for the full pipeline and the smoothness check.
    pub max_n: u32,
    /// Bound on n for the appendix recursions.
    pub max_classify_n: u32,
    /// Bound on live kernel parameters in a lift.
    pub max_params: usize,
    /// Number of projection changes tried by the smoothness check.
    pub max_shears: u32,
    pub branch_order: Option<BranchOrder>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_n: 6,
            max_classify_n: 8,
            max_params: 4,
            max_shears: 8,
            branch_order: None,
        }
    }
}

impl Config {
    /// Overrides both n bounds.
    pub fn with_max_n(mut self, n: u32) -> Self {
        self.max_n = n;
        self.max_classify_n = n;
        self
    }

    pub fn order(&self, len: usize) -> Vec<usize> {
        let mut v: Vec<usize> = (0..len).collect();
        if let Some(f) = &self.branch_order {
            f(&mut v);
        }
        v
    }
}

impl fmt::Debug for Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Config")
            .field("max_n", &self.max_n)
            .field("max_classify_n", &self.max_classify_n)
            .field("max_params", &self.max_params)
            .field("max_shears", &self.max_shears)
            .field("branch_order", &self.branch_order.is_some())
            .finish()
    }
}
