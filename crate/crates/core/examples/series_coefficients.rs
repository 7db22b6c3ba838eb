//! Prints the first coefficients of every named series and checks Ramanujan's relation.

use circleforge::qseries::{check_decomposition, check_ramanujan_relation, export_series, named_series, SeriesName};

fn main() {
    for name in SeriesName::ALL {
        let e = export_series(name.tag(), &named_series(name, 12));
        println!("{:>10}: {}", name.tag(), e.coeffs.join(" "));
    }
    println!("2phi(-q) - f(q) relation to order 300: {:?}", check_ramanujan_relation(300));
    println!("G1bar = g1 + g2 to order 300: {:?}", check_decomposition(300));
}
