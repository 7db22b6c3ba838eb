//! Numerical checks of the modular transformation laws at concrete (h, k, z).

mod evaluate;
mod laws;

pub use evaluate::{evaluate_at, INITIAL_ORDER, MAX_DOUBLINGS};
pub use laws::{
    check_law, check_law_r, check_law_with, mordell_table, standard_points, sweep, LawCheck, LawId, LawRow, SWEEP_POWERS,
};
