use serde::{Deserialize, Serialize};

/// Size limits for the exponential procedures.
///
/// Every procedure that hits a limit reports it instead of truncating.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest order for minimal-local-set enumeration and vertex types.
    pub mls_max_n: usize,
    /// Largest order accepted by the r-incidence test.
    pub incidence_max_n: usize,
    pub incidence_max_r: u32,
    /// Budget on the number of sets `K` the incidence test may visit.
    pub incidence_max_subsets: u64,
    /// How many violations an incidence report keeps.
    pub max_violations: usize,
    pub inclusion_exclusion_max_k: usize,
    /// Largest order for LC-orbit exploration.
    pub orbit_max_n: usize,
    pub orbit_max_size: usize,
    /// Witness search is limited to `|support| * r <= witness_bits`.
    pub witness_bits: u32,
    /// Limit on distinct partial states in r-LC outcome enumeration.
    pub outcome_max_states: usize,
    pub oracle_max_n: usize,
    /// Largest vertex count for generated family graphs.
    pub family_max_vertices: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            mls_max_n: 20,
            incidence_max_n: 64,
            incidence_max_r: 8,
            incidence_max_subsets: 20_000_000,
            max_violations: 64,
            inclusion_exclusion_max_k: 12,
            orbit_max_n: 12,
            orbit_max_size: 1_000_000,
            witness_bits: 24,
            outcome_max_states: 1_000_000,
            oracle_max_n: 14,
            family_max_vertices: 1 << 16,
        }
    }
}

impl Caps {
    /// Defaults with the incidence order limit lifted, for family graphs whose
    /// order is far above the default but whose incidence pool is small.
    pub fn for_families() -> Self {
        Caps {
            incidence_max_n: usize::MAX,
            ..Caps::default()
        }
    }
}
