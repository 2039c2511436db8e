//! Builds the tower F_4 ⊂ F_16 and shows generators, embeddings and Frobenius.

use twisted_jacquet::ffield::make_tower;

fn main() -> twisted_jacquet::Result<()> {
    let tower = make_tower(2, 2, 2)?;
    println!(
        "q = {}, levels = {:?}",
        tower.q(),
        tower.levels().collect::<Vec<_>>()
    );
    for d in tower.levels() {
        let level = tower.level(d)?;
        println!(
            "F_(q^{d}): modulus {:?} over F_{}, generator code {}",
            level.modulus(),
            tower.p(),
            level.generator()
        );
    }
    let g1 = tower.generator(1)?;
    let up = tower.embed(g1, 2)?;
    println!("γ_1 embeds as γ_2^{}", tower.dlog(up)?);
    let g2 = tower.generator(2)?;
    let mut x = g2;
    for i in 0..3 {
        println!("Frob^{i}(γ_2) = γ_2^{}", tower.dlog(x)?);
        x = tower.frobenius(x)?;
    }
    Ok(())
}
