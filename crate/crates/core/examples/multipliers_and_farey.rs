//! Eta multipliers, strengthened inverses and the Farey arcs of order 6.

use circleforge::modular::{branch_agreement, farey_neighbors, farey_sequence, omega_canonical, strengthened_inverse};

fn main() -> circleforge::Result<()> {
    for (h, k) in [(0, 1), (1, 2), (1, 3), (2, 5), (5, 12)] {
        let s = strengthened_inverse(h, k)?;
        println!("h={h} k={k}  h'={} (mod {})  omega={}", s.hprime, s.modulus, omega_canonical(h, k)?);
    }
    let b = branch_agreement(41);
    println!("both branch formulas agree on {} odd pairs ({} disagreements)", b.checked, b.disagreements.len());
    for (h, k) in farey_sequence(6) {
        let a = farey_neighbors(h, k, 6)?;
        println!("{h}/{k}: neighbours {}/{} and {}/{}, arc [-{}, {}]", a.h1, a.k1, a.h2, a.k2, a.theta_left, a.theta_right);
    }
    Ok(())
}
