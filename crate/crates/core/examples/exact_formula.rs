//! Evaluates the truncated exact formula for p̄₁(n) and compares it with the q-series coefficient.

use circleforge::qseries::g1_series;
use circleforge::rademacher::p1bar_exact_default;

fn main() -> circleforge::Result<()> {
    let ns = [1u64, 4, 10, 25, 50];
    let oracle = g1_series(50);
    for n in ns {
        let r = p1bar_exact_default(n, 15, 1e-12)?;
        println!(
            "n={n:>3}  value={}  rounded={}  oracle={}  dist={}",
            r.value.to_fixed(6),
            r.rounded,
            oracle.coeff(n as usize),
            r.distance_to_integer.to_sci(3)
        );
    }
    Ok(())
}
