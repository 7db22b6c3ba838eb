//! Mordell integrals, their principal parts, the Bessel integrals 𝓘 and the L_k residue pair.

mod mordell;
mod residue;
mod script;

pub use mordell::{
    check_pole_floor, cosh_lower_bound, cosh_offset, gap_denominator, gap_report, j_star, j_wrapped, mordell_i,
    principal_gap, GapReport, GapRow,
};
pub use residue::{l_closed, l_contour};
pub use script::{script_i, IntegralRow, ScriptI};
