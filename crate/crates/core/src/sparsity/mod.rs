//! Graded sparsity on colored graphs.
//!
//! The count function `f(E') = n' + rk' - c'` is the rank function of a
//! matroid on the edges (the `(1,1,k)` matroid). The `(2,2,k)` matroid is the
//! union of two copies of it, and the colored-Laman matroid is obtained from
//! the latter by lowering every bound by one. Independence in each is decided
//! here:
//!
//! * `M_f`: one union-find scan ([`is_f_independent`]);
//! * `M_{2f}`: matroid partition with augmenting paths ([`union_independent`]);
//! * colored-Laman: a set `E` is colored-Laman-sparse iff `E` plus a parallel
//!   copy of any one of its edges stays `M_{2f}`-independent
//!   ([`is_colored_laman_sparse`]).
//!
//! [`brute_force_sparsity`] enumerates subsets and is the reference oracle for
//! all of them.

mod brute;
mod counts;
mod families;
mod structure;
mod union;

pub use brute::{brute_force_sparsity, brute_union_rank, BruteVerdict, Family, BRUTE_FORCE_LIMIT};
pub use counts::{count_report, f_value, is_f_independent, CountReport};
pub use families::{
    decompose_two_11k, find_laman_circuit, is_222_graph, is_222_sparse, is_colored_laman,
    is_colored_laman_sparse, is_laman_sparse_subset, is_ross, laman_rank, max_laman_sparse_subset, LamanGrowth,
    union_independent, union_rank, CircuitReport, Decomposition, RossVerdict, ROSS_LOOPS,
};
pub use structure::{classify_11k_shape, is_11k, ElevenShape, ShapeReport};
pub use union::MatroidPartition;
