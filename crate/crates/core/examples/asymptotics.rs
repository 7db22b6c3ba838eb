//! Exact coefficients against the leading asymptotic and the dominant k = 2 term.

use circleforge::qseries::g1_series;
use circleforge::rademacher::{asymptotic_ratio, p1bar_dominant};

fn main() -> circleforge::Result<()> {
    let s = g1_series(2000);
    for n in [10u64, 100, 500, 1000, 2000] {
        let c = s.coeff(n as usize);
        print!("n={n:>4}  coeff/asymptotic = {:.6}", asymptotic_ratio(&c, n)?);
        if n <= 500 {
            print!("  dominant term = {}", p1bar_dominant(n, 1e-12, 256)?.to_sci(12));
        }
        println!("  coeff = {c}");
    }
    Ok(())
}
