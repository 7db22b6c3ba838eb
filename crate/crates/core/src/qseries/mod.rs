//! Exact truncated q-series, the named series, and the enumeration oracle.

pub mod named;
pub mod overpartition;
pub mod series;

pub use named::{
    a_coeffs, check_decomposition, check_ramanujan_relation, check_ramanujan_relation_with, export_series,
    g1_series, g1bar_series, little_g1, little_g2, mock_f, mock_omega, mock_phi, named_series, named_series_int,
    overpartition_series, partition_series, r_coeffs, xi_series, RelationCheck, SeriesExport, SeriesName,
};
pub use overpartition::{enumerate_p1bar, enumerate_p1bar_with_ceiling, for_each_p1bar, Overpartition, DEFAULT_CEILING};
pub use series::{pochhammer_fin, pochhammer_inf, rational_to_decimal, series_arith, Coeff, SeriesOp, TruncatedSeries};
