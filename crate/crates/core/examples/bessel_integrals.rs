//! The Bessel-weighted integrals of the exact formula and the residue identity for L_k.

use num_rational::Rational64;

use circleforge::hpnum::Real;
use circleforge::integrals::{l_closed, l_contour, script_i};

fn main() -> circleforge::Result<()> {
    let p = 128;
    let tol = Real::pow2(-70, p);
    for (b, k, nu) in [(Rational64::new(5, 12), 2, 0), (Rational64::new(5, 12), 2, 1), (Rational64::new(1, 24), 3, 2)] {
        for n in [1u64, 4, 25] {
            let r = script_i(b, k, nu, n, &tol)?;
            println!("I[{b}, k={k}, nu={nu}]({n}) = {}", r.value.to_sci(15));
        }
    }
    let y = Real::from_ratio(5, 24, 96);
    for big_n in [4, 8, 16] {
        let c = l_contour(2, 5, &y, big_n, &Real::pow2(-50, 96))?;
        println!("N={big_n:>2}: contour {}  closed {}", c.value.re.to_sci(15), l_closed(2, 5, &y)?.to_sci(15));
    }
    Ok(())
}
