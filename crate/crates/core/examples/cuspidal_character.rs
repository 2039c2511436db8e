//! Character table of the cuspidal representations of GL(2, F_3) on a few
//! class representatives, plus the inner product ⟨Θ, Θ⟩.

use num_bigint::BigInt;
use twisted_jacquet::cuspidal::{regular_characters, ClassFunctionTable, CuspidalEvaluator};
use twisted_jacquet::cyclo::CycNum;
use twisted_jacquet::ffield::make_tower;
use twisted_jacquet::matq::{GroupSpec, Mat};

fn main() -> twisted_jacquet::Result<()> {
    let tower = make_tower(3, 1, 2)?;
    let reps = [
        "1,0;0,1", "2,0;0,2", "1,1;0,1", "0,1;1,1", "0,2;1,0", "1,0;0,2",
    ];
    let evaluator = CuspidalEvaluator::new(&tower, 2)?;
    let gl = GroupSpec::GL(2).elements(&tower)?;
    for theta in regular_characters(&tower, 2)? {
        let table = ClassFunctionTable::new(&evaluator, theta)?;
        print!("θ index {}:", theta.index());
        for r in reps {
            print!("  [{r}] → {}", table.eval(&Mat::parse(r, &tower, 1)?)?);
        }
        let mut norm = CycNum::zero(tower.cyclotomic_modulus())?;
        for g in &gl {
            norm = &norm + &table.eval(g)?.norm_sq();
        }
        println!("  ⟨Θ,Θ⟩ = {}", norm.div_int(&BigInt::from(gl.len())));
    }
    Ok(())
}
