//! Closed-form matrix counts by rank and trace class against enumeration,
//! and the q-Pochhammer rank-sum identity.

use twisted_jacquet::counting::{identity_check, mat_count, y_count, Method, TraceClass};
use twisted_jacquet::ffield::make_tower;
use twisted_jacquet::matq::Mat;

fn main() -> twisted_jacquet::Result<()> {
    let tower = make_tower(3, 1, 1)?;
    let n = 2;
    let a = Mat::unit(n, 0, 0, 1);
    for r in 0..=n {
        let total = mat_count(n, n, r as i64, 3);
        let zero = y_count(&tower, &a, r, TraceClass::Zero, Method::Closed)?;
        let one = y_count(&tower, &a, r, TraceClass::Nonzero, Method::Closed)?;
        let zero_enum = y_count(&tower, &a, r, TraceClass::Zero, Method::Oracle(&tower))?;
        println!("rank {r}: |M| = {total}, tr = 0: {zero} (enumerated {zero_enum}), tr = 1: {one}");
    }
    for (n, a, q) in [(2, 5, 7), (3, 9, 2), (6, 18, 5)] {
        let r = identity_check(n, a, q)?;
        println!(
            "n={n} a={a} q={q}: holds = {} ({} digits)",
            r.holds,
            r.lhs.len()
        );
    }
    Ok(())
}
