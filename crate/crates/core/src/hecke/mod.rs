//! The mod-p Hecke algebra of type A_{n-1}.
//!
//! Products use the normal form `T_s T_w = T_{sw}` when `l(sw) > l(w)` and
//! `T_s T_w = p T_{sw} + (p - 1) T_w` otherwise, with p reduced to 0. The
//! convention is pinned by agreement with the double-coset operators on
//! `F_p[B\GL_n]` (see [`CosetModule`]).
//!
//! Generators: `e(i) = -T_i`, `ê(i) = 1 + T_i`. Inside H_{k+n}, `e_k` lives on the
//! first k strands and `ê_n` on the last n.

mod algebra;
mod idempotents;
mod repr;

pub use algebra::{integral_relations, IntegralLiftReport, product, HeckeAlgebra, HeckeElement, WeylTables, MAX_RANK};
pub use idempotents::{
    absorption_solution_dim, corner_summands, ds_elements, e_block, e_hat_block, ek_recursion_check,
    key_identity, longest_hat_idempotent, longest_idempotent, longest_word, multiplication_matrix,
    verify_presentation, DsPair, KeyIdentityReport, NodeIdempotents, PresentationReport,
    RecursionReport,
};
pub use repr::{
    corner_invertible, node_operator, restricted_rank, CornerVerdict, CosetModule, HeckeModule,
    RegularModule, Representation,
};
