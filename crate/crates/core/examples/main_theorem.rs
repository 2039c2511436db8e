//! Compares the twisted Jacquet character with θ|_{F^×} ⊗ Ind_{U_A}^{H_A} μ
//! on every element of M_{ψ_A}, for every cuspidal representation of GL(4, F_3).

use twisted_jacquet::cuspidal::regular_characters;
use twisted_jacquet::ffield::make_tower;
use twisted_jacquet::jacquet::TwistSpec;
use twisted_jacquet::modelrep::main_theorem_check;

fn main() -> twisted_jacquet::Result<()> {
    let tower = make_tower(3, 1, 4)?;
    let thetas = regular_characters(&tower, 4)?;
    for twist in [TwistSpec::corner(2), TwistSpec::e11(2)] {
        let report = main_theorem_check(&tower, &thetas, &twist, true)?;
        println!(
            "A = {}: {} orbits x {} elements, dimension {}, holds = {}",
            report.twist,
            report.orbits.len(),
            report.elements,
            report.expected_dimension,
            report.holds
        );
        let first = &report.orbits[0];
        for row in first.table.as_ref().unwrap().iter().take(4) {
            println!(
                "  m = {:<16} jacquet = {:<24} model = {}",
                row.element,
                row.jacquet.to_string(),
                row.model
            );
        }
    }
    Ok(())
}
