//! Free amalgams, the exhaustive amalgam oracle, and the witness and gadget
//! constructions for each class.

mod certify;
mod free;
mod gadgets;
mod oracle;
mod slow;
mod span;
mod witness;

pub use free::free_amalgam;
pub(crate) use free::glue;
pub use span::{AmalgamSolution, AmalgamSpan, Over};
pub use oracle::{amalgam_exists, wap_amalgam_exists, wap_amalgam_exists_with_hint, OracleConfig};
pub use slow::{slow_amalgam_exists, slow_amalgam_exists_in, slow_bound};
pub use gadgets::cap_counterexample;
pub use witness::{adjoin_path, tame_extension, wap_witness, WapWitness};
pub use certify::{
    cap_eligible, certify_free_cycle_or_leaf, certify_jep, certify_key_path, certify_new_cycle, certify_not_cap,
    certify_tame, certify_undetermined, certify_wap_sample, extensions_over, key_path_holds, random_member_span,
    CertifyConfig,
};
