//! Rademacher's series for p(n) against the exact partition numbers.

use circleforge::hpnum::default_precision;
use circleforge::qseries::partition_series;
use circleforge::rademacher::{default_kmax, p_rademacher};

fn main() -> circleforge::Result<()> {
    let oracle = partition_series(500);
    for n in [1u64, 5, 50, 100, 200, 500] {
        let r = p_rademacher(n, default_kmax(n), default_precision(n))?;
        println!("p({n}) = {}  (series {}, distance {})", r.rounded, oracle.coeff(n as usize), r.distance_to_integer.to_sci(3));
    }
    Ok(())
}
