//! Lists the lower 1-run overpartitions of 4 and compares counts with the generating function.

use circleforge::qseries::{enumerate_p1bar, for_each_p1bar, g1_series};

fn main() -> circleforge::Result<()> {
    for_each_p1bar(4, |o| println!("{o:?}"));
    let s = g1_series(25);
    for n in 0..=25 {
        println!("n={n:>2}  enumerated={:>6}  series={:>6}", enumerate_p1bar(n)?, s.coeff(n));
    }
    Ok(())
}
