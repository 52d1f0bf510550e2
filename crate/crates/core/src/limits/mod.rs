//! Finite approximations of generic limits: the subdivided tree for `g`, a
//! greedy chain builder for any class, and the order-reduct apparatus.

mod chain;
mod order;
mod tree;

pub use chain::{age_spot_check, generic_chain, generic_chain_with, Action, ChainConfig, ChainState, LogEntry, Obligation};
pub use order::{
    add_point_above, derived_order, functoriality_check, not_cofinal_check, order_of_member, order_substructure,
    pzk_age_check, r_from_order, swap_embedding, uniformity_check, weak_hom_check, weak_hom_witness, LinOrder,
    AGE_CHECK_CAP, ORDER_CHECK_CAP,
};
pub use tree::subdivided_tree;
