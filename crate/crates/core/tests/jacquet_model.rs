mod common;

use common::{random_rank_one, tower};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twisted_jacquet::cuspidal::{cuspidal_char, regular_characters, theta_eval};
use twisted_jacquet::cyclo::CycNum;
use twisted_jacquet::ffield::FFElem;
use twisted_jacquet::jacquet::{m_psi_subgroup, JacquetEngine, Strategy, TwistSpec};
use twisted_jacquet::matq::{self, GroupSpec, Mat};
use twisted_jacquet::modelrep::{
    induced_char, mu_eval, psi_factorization_check, InducedCharacter, ModelChar,
};

const CAP: u128 = 1 << 24;

/// `q^{-n²} Σ_X Θ(m n_X) conj(ψ_A(n_X))`, one cuspidal evaluation per term.
fn jacquet_oracle(
    t: &twisted_jacquet::ffield::FieldTower,
    th: &twisted_jacquet::cuspidal::RegularCharacter,
    twist: &TwistSpec,
    m: &Mat,
) -> CycNum {
    let f = t.base();
    let n = twist.n();
    let xs = matq::all_matrices(t, n, n, 1, CAP).unwrap();
    let mut acc = CycNum::zero(t.cyclotomic_modulus()).unwrap();
    for x in &xs {
        let g = m.mul(&Mat::unipotent_block(x), f);
        acc = &acc + &(&cuspidal_char(t, th, &g).unwrap() * &twist.psi(t, x).unwrap().conj());
    }
    acc.div_int(&BigInt::from(xs.len()))
}

#[test]
fn engine_matches_term_by_term_sum() {
    for (p, n) in [(2u32, 2usize), (3, 2)] {
        let t = tower(p, 1, 2 * n as u32);
        let twist = TwistSpec::corner(n);
        let engine = JacquetEngine::new(t, twist.clone(), CAP).unwrap();
        let ms = m_psi_subgroup(t, &twist, CAP).unwrap();
        for th in regular_characters(t, 2 * n as u32).unwrap().iter().take(4) {
            for m in ms.iter().step_by(5) {
                assert_eq!(
                    engine.jacquet_char(th, m).unwrap(),
                    jacquet_oracle(t, th, &twist, m)
                );
            }
        }
    }
}

#[test]
fn center_factorization() {
    let t = tower(3, 1, 4);
    let f = t.base();
    let twist = TwistSpec::corner(2);
    let engine = JacquetEngine::new(t, twist.clone(), CAP).unwrap();
    let ms = m_psi_subgroup(t, &twist, CAP).unwrap();
    let hs: Vec<&Mat> = ms.iter().filter(|m| m.get(1, 1) == 1).collect();
    assert_eq!(hs.len(), ms.len() / 2);
    for th in regular_characters(t, 4).unwrap() {
        for h in &hs {
            let base = engine.jacquet_char(&th, h).unwrap();
            for z in 1..3 {
                let zh = h.scale(z, f);
                let tz = theta_eval(t, &th, FFElem::new(1, z)).unwrap();
                assert_eq!(engine.jacquet_char(&th, &zh).unwrap(), &tz * &base);
            }
        }
    }
}

#[test]
fn dimension_is_the_same_for_every_rank_one_twist() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (p, n, want) in [(2u32, 2usize, 1), (3, 2, 4), (2, 3, 9)] {
        let t = tower(p, 1, 2 * n as u32);
        let thetas = regular_characters(t, 2 * n as u32).unwrap();
        for _ in 0..4 {
            let a = random_rank_one(&mut rng, t, n);
            let twist = TwistSpec::from_matrix(t, a).unwrap();
            assert_eq!(twist.rank(), 1);
            let engine = JacquetEngine::new(t, twist, CAP).unwrap();
            for th in thetas.iter().take(3) {
                assert_eq!(
                    engine.dim(th, Strategy::Direct).unwrap(),
                    BigInt::from(want)
                );
            }
        }
    }
}

#[test]
fn squared_additive_character_gives_the_same_module_size() {
    // ψ_0(2x) is ψ_0 squared; ψ_{2A} uses it in place of ψ_0
    let t = tower(3, 1, 4);
    let f = t.base();
    let doubled = TwistSpec::from_matrix(t, Mat::unit(2, 0, 1, 1).scale(2, f)).unwrap();
    let engine = JacquetEngine::new(t, doubled, CAP).unwrap();
    for th in regular_characters(t, 4).unwrap() {
        assert_eq!(engine.dim(&th, Strategy::Direct).unwrap(), BigInt::from(4));
    }
}

#[test]
fn higher_rank_twists_are_computable() {
    let t = tower(2, 1, 4);
    let twist = TwistSpec::from_matrix(t, Mat::identity(2, 1)).unwrap();
    let th = regular_characters(t, 4).unwrap()[0];
    let engine = JacquetEngine::new(t, twist.clone(), CAP).unwrap();
    let d = engine.dim(&th, Strategy::Direct).unwrap();
    assert!(d >= BigInt::from(0));
    assert!(engine.dim(&th, Strategy::Stratified).is_err());
}

#[test]
fn induced_characters_agree_on_h_a() {
    let t = tower(3, 1, 4);
    let ha = GroupSpec::HA(2).elements(t).unwrap();
    let ua = GroupSpec::UA(2).elements(t).unwrap();
    let mu = |u: &Mat| mu_eval(t, u);
    let ind = InducedCharacter::new(t, &ha, &ua, mu).unwrap();
    assert_eq!(ind.degree(), 4);
    let model = ModelChar::new(t, TwistSpec::corner(2)).unwrap();
    let th = regular_characters(t, 4).unwrap()[0];
    for h in ha.iter().step_by(3) {
        let fast = ind.eval(h).unwrap();
        assert_eq!(fast, induced_char(t, &ha, &ua, &mu, h).unwrap());
        assert_eq!(fast, model.rho_char(&th, h).unwrap());
    }
}

#[test]
fn model_lemmas_at_q3() {
    let t = tower(3, 1, 4);
    let model = ModelChar::new(t, TwistSpec::corner(2)).unwrap();
    assert!(psi_factorization_check(t, 2).unwrap());
    assert!(model.sigma_distinct_check().unwrap());
    for th in regular_characters(t, 4).unwrap().iter().step_by(5) {
        assert!(model.restriction_check(th).unwrap());
        assert!(model.central_character_check(th).unwrap());
    }
}

#[test]
fn transported_model_on_e11() {
    let t = tower(3, 1, 4);
    let model = ModelChar::new(t, TwistSpec::e11(2)).unwrap();
    let th = regular_characters(t, 4).unwrap()[3];
    assert!(
        model.rho_self_pairing(&th).unwrap() == num_rational::BigRational::from_integer(1.into())
    );
    let ms = m_psi_subgroup(t, &TwistSpec::e11(2), CAP).unwrap();
    assert_eq!(ms.len(), 72);
    let engine = JacquetEngine::new(t, TwistSpec::e11(2), CAP).unwrap();
    for m in &ms {
        assert_eq!(
            model.rho_char(&th, m).unwrap(),
            engine.jacquet_char(&th, m).unwrap()
        );
    }
}
