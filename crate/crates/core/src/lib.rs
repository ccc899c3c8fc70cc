//! Half-arc-transitive graphs: construction, symmetry analysis and coverings.

pub mod autgroup;
pub mod coverings;
pub mod error;
pub mod families;
pub mod graph;
pub mod group;
pub mod io;
pub mod perm;
pub mod symmetry;
pub mod verify;
mod util;

pub use autgroup::{are_isomorphic, automorphism_group, automorphism_group_colored, refine, OrderedPartition};
pub use coverings::{derived_graph, quotient_graph, spanning_tree, t_reduce, SpanningTree, VoltageAssignment};
pub use error::{Error, Result};
pub use families::{FamilySpec, FiniteAbelianGroup, GroupElement};
pub use graph::{Arc, Graph};
pub use group::{action_on_arcs, PermGroup};
pub use perm::Permutation;
pub use symmetry::{analyze, is_half_arc_transitive, transitivity_profile, Analysis, TransitivityProfile};
