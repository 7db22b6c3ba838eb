//! Kloosterman-type sums: classical, incomplete, A_k(n) and the nine modified families.

mod cyclo;
mod families;
mod rewrite;

pub use cyclo::{cyclotomic_poly, is_zero_mod_cyclotomic, CycloSum};
pub use families::{
    a_k, a_terms, bound_ratio, classical_k, classical_terms, complete_term_count, evaluate, incomplete_k,
    modified_k, modified_summand, modified_terms, modified_terms_shifted, report_row, sum_terms, Family,
    KloostermanSpec, ReportRow, SumValue, EXACT_LIMIT, SUM_PREC,
};
pub use rewrite::{classical_form, rewritten_classical_form, rewritten_terms, ClassicalForm};
