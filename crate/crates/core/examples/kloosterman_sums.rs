//! Modified Kloosterman sums: values, the classical rewrite, and the k = 2 evaluations.

use circleforge::kloosterman::{modified_terms, report_row, rewritten_classical_form, rewritten_terms, KloostermanSpec};

fn main() -> circleforge::Result<()> {
    for k in [5, 6, 8, 10] {
        for j in 1..=3 {
            let nu = if j == 2 { Some(1) } else { None };
            let s = KloostermanSpec::modified(j, k, nu, 3, 1);
            let row = report_row(&s)?;
            let same = modified_terms(&s)?.exact_eq(&rewritten_terms(&s)?);
            println!("k={k:>2} j={j} value=({:+.6}, {:+.6}) rewrite agrees: {same}", row.re, row.im);
        }
    }
    println!("classical form of K[21]_6(3,1): {:?}", rewritten_classical_form(&KloostermanSpec::modified(1, 6, None, 3, 1))?);
    for n in 0..6 {
        let a = report_row(&KloostermanSpec::modified(2, 2, Some(0), n, 0))?;
        let b = report_row(&KloostermanSpec::modified(2, 2, Some(1), n, 0))?;
        println!("K2(0,{n}) = {:+}  K2(1,{n}) = {:+}", a.re, b.re);
    }
    Ok(())
}
