//! Checks each transformation law at a few (h, k) along z = 4/5 + i/5.

use circleforge::hpnum::{ComplexHP, Real};
use circleforge::transform::{check_law, check_law_r, LawId};

fn main() -> circleforge::Result<()> {
    let p = 128;
    let tol = Real::pow2(-36, p);
    let z = ComplexHP::new(Real::from_ratio(4, 5, p), Real::from_ratio(1, 5, p));
    for law in LawId::ALL {
        for k in 1..=8 {
            if !law.applies_to(k) {
                continue;
            }
            let h = if k == 1 { 0 } else { 1 };
            let c = check_law(law, h, k, &z, &tol)?;
            println!("{:>8} h={h} k={k}  |ratio-1|={}  passed={}", law.tag(), c.deviation().to_sci(3), c.passed);
            break;
        }
    }
    for r in [2, 3, 4, 6] {
        let c = check_law_r(1, 6, r, &z, &tol)?;
        println!("Pr_law r={r} k=6  zeta={:?}  modulus defect {}", c.zeta, c.modulus_defect.to_sci(3));
    }
    Ok(())
}
