//! Dimensions of twisted Jacquet modules, by direct averaging over N and by
//! the rank-stratified formula, for several twists.

use twisted_jacquet::cuspidal::regular_characters;
use twisted_jacquet::ffield::make_tower;
use twisted_jacquet::jacquet::{expected_dim, stratified_dim, JacquetEngine, Strategy, TwistSpec};
use twisted_jacquet::matq::DEFAULT_ENUM_CAP;

fn main() -> twisted_jacquet::Result<()> {
    for (p, n) in [(2u32, 1usize), (3, 1), (2, 2), (3, 2), (2, 3)] {
        let tower = make_tower(p, 1, 2 * n as u32)?;
        let thetas = regular_characters(&tower, 2 * n as u32)?;
        let q = tower.q();
        for twist in [TwistSpec::corner(n), TwistSpec::e11(n), TwistSpec::zero(n)] {
            let engine = JacquetEngine::new(&tower, twist.clone(), DEFAULT_ENUM_CAP)?;
            let dims = thetas
                .iter()
                .map(|t| engine.dim(t, Strategy::Direct))
                .collect::<twisted_jacquet::Result<Vec<_>>>()?;
            let stratified = stratified_dim(q, &twist)
                .map(|d| d.to_string())
                .unwrap_or("-".into());
            let predicted = if twist.rank() == 1 {
                expected_dim(q, n)
            } else {
                0.into()
            };
            println!(
                "q={q} n={n} A={:<18} direct {:?} stratified {stratified} predicted {predicted}",
                twist.matrix().to_text(),
                dims.iter()
                    .map(|d| d.to_string())
                    .collect::<std::collections::BTreeSet<_>>(),
            );
        }
    }
    Ok(())
}
