use crate::config::{Segment, VerticalConfig};
use crate::dp::GapChoice;
use crate::model::EdgeMultiset;

/// An optimal tour subgraph together with how a solver found it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub cost: u64,
    pub edges: EdgeMultiset,
    /// Per aisle (index `i - 1`), the segments and the configuration placed on each.
    pub vertical_choices: Vec<Vec<(Segment, VerticalConfig)>>,
    /// Per gap (index `g - 1`), the horizontal count at each cross-aisle.
    pub horizontal_choices: Vec<GapChoice>,
    /// Closed walk from the depot back to the depot, as `(aisle, position)`.
    pub walk: Vec<(usize, u64)>,
    pub stages: usize,
    /// State-transition evaluations performed.
    pub expansions: u64,
    /// Largest number of states stored after any stage.
    pub peak_states: usize,
}

impl Solution {
    pub fn configs(&self) -> impl Iterator<Item = &VerticalConfig> + '_ {
        self.vertical_choices.iter().flatten().map(|(_, c)| c)
    }

    pub fn uses_double_pass(&self) -> bool {
        self.configs().any(|c| *c == VerticalConfig::DoublePass)
    }
}
