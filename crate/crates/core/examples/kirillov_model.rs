//! The Kirillov representation of the mirabolic subgroup, the model ρ and
//! its extensions, checked through exact character inner products.

use twisted_jacquet::cuspidal::regular_characters;
use twisted_jacquet::ffield::make_tower;
use twisted_jacquet::jacquet::TwistSpec;
use twisted_jacquet::modelrep::{decomposition_check, kirillov_irreducibility_check, ModelChar};

fn main() -> twisted_jacquet::Result<()> {
    for (p, n) in [(2u32, 2usize), (3, 2), (2, 3)] {
        let tower = make_tower(p, 1, 1)?;
        println!(
            "Kirillov P_{n}(F_{p}) irreducible: {}",
            kirillov_irreducibility_check(&tower, n)?
        );
    }
    let tower = make_tower(3, 1, 4)?;
    let model = ModelChar::new(&tower, TwistSpec::corner(2))?;
    let theta = regular_characters(&tower, 4)?[0];
    println!("deg ρ = {}", model.degree());
    println!("⟨ρ, ρ⟩ = {}", model.rho_self_pairing(&theta)?);
    println!("⟨ρ̃, ρ̃⟩ = {}", model.rho_tilde_self_pairing(&theta)?);
    println!("{:?}", decomposition_check(&model)?);
    for j in 0..model.chi_count() {
        println!(
            "dim Hom(π, σ_χ{j}) = {} (θ restricts to χ{})",
            model.hom_pairing(&theta, j)?,
            theta.restriction_index()
        );
    }
    Ok(())
}
