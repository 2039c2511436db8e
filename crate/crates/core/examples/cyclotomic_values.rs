//! Exact arithmetic in Q(ζ_L): sums of roots of unity collapse to integers.

use twisted_jacquet::cyclo::{zeta, CycNum};

fn main() -> twisted_jacquet::Result<()> {
    let l = 12;
    let mut sum = CycNum::zero(l)?;
    for k in 0..l as i64 {
        sum = &sum + &zeta(l, k)?;
    }
    println!("Σ ζ_12^k = {sum}");

    let gauss = &zeta(l, 1)? + &zeta(l, 11)?;
    println!("ζ + ζ^-1 = {gauss}, squared = {}", &gauss * &gauss);

    let z5 = zeta(5, 1)?;
    println!("|ζ_5|² = {}", z5.norm_sq());
    println!(
        "json: {}",
        serde_json::to_string(&(&z5 - &zeta(5, 2)?)).unwrap()
    );
    Ok(())
}
