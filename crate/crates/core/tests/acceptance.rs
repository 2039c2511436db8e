//! Acceptance suite: one PASS/FAIL line per criterion, exact equality
//! everywhere, wall-clock limits pinned below.

mod common;

use std::time::{Duration, Instant};

use common::{random_gl, random_primary, random_theta, tower};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twisted_jacquet::counting::{
    identity_check, mat_count_with, y_count, y_diff, Method, TraceClass,
};
use twisted_jacquet::cuspidal::{
    cuspidal_char, regular_characters, unipotent_block_char, CuspidalEvaluator,
};
use twisted_jacquet::cyclo::CycNum;
use twisted_jacquet::jacquet::{
    conjugation_relation_check, expected_dim, JacquetEngine, Strategy, TwistSpec,
};
use twisted_jacquet::matq::{self, GroupSpec, Mat};
use twisted_jacquet::modelrep::{
    decomposition_check, kirillov_irreducibility_check, main_theorem_check, ModelChar,
};

const CAP: u128 = 1 << 26;

const DIRECT_LIMIT: Duration = Duration::from_secs(10);
const STRATIFIED_LIMIT: Duration = Duration::from_millis(100);
const MAIN_SINGLE_LIMIT: Duration = Duration::from_secs(600);
const MAIN_PARALLEL_LIMIT: Duration = Duration::from_secs(120);
const COUNTING_LIMIT: Duration = Duration::from_secs(30);
const IDENTITY_LIMIT: Duration = Duration::from_secs(5);
const UNIPOTENT_LIMIT: Duration = Duration::from_secs(60);
const PROPERTY_SAMPLES: usize = 1000;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(label: &str, elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || {
        format!("{label} took {elapsed:?}, limit {limit:?}")
    })
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn dimensions() -> Outcome {
    let cases = [(2u32, 1usize), (3, 1), (5, 1), (2, 2), (3, 2), (2, 3)];
    let mut values = Vec::new();
    let mut slowest = Duration::ZERO;
    for (p, n) in cases {
        let t = tower(p, 1, 2 * n as u32);
        let q = t.q();
        let want = expected_dim(q, n);
        let twist = TwistSpec::corner(n);
        for th in regular_characters(t, 2 * n as u32).map_err(err)? {
            let start = Instant::now();
            let engine = JacquetEngine::new(t, twist.clone(), CAP).map_err(err)?;
            let direct = engine.dim(&th, Strategy::Direct).map_err(err)?;
            let elapsed = start.elapsed();
            within(&format!("direct ({q},{n})"), elapsed, DIRECT_LIMIT)?;
            slowest = slowest.max(elapsed);
            let start = Instant::now();
            let strat = engine.dim(&th, Strategy::Stratified).map_err(err)?;
            within(
                &format!("stratified ({q},{n})"),
                start.elapsed(),
                STRATIFIED_LIMIT,
            )?;
            ensure(direct == want && strat == want, || {
                format!(
                    "({q},{n}) θ={}: direct {direct}, stratified {strat}, want {want}",
                    th.index()
                )
            })?;
        }
        values.push(want.to_string());
    }
    Ok(format!(
        "dims {} for every orbit; slowest direct {slowest:?}",
        values.join(",")
    ))
}

fn main_theorem_on(jobs: usize) -> Result<Duration, String> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(err)?;
    pool.install(|| {
        let start = Instant::now();
        for (p, n, orbits, elems) in [(2u32, 2usize, 3, 4), (3, 2, 18, 72), (2, 3, 9, 576)] {
            let t = tower(p, 1, 2 * n as u32);
            let thetas = regular_characters(t, 2 * n as u32).map_err(err)?;
            let r = main_theorem_check(t, &thetas, &TwistSpec::corner(n), false).map_err(err)?;
            ensure(r.orbits.len() == orbits && r.elements == elems, || {
                format!(
                    "({p},{n}): {} orbits x {} elements",
                    r.orbits.len(),
                    r.elements
                )
            })?;
            ensure(r.holds, || {
                format!(
                    "({p},{n}) mismatch: {:?}",
                    r.orbits.iter().find(|o| o.mismatches > 0)
                )
            })?;
        }
        Ok(start.elapsed())
    })
}

fn main_theorem() -> Outcome {
    let single = main_theorem_on(1)?;
    within("single worker", single, MAIN_SINGLE_LIMIT)?;
    let parallel = main_theorem_on(8)?;
    within("8 workers", parallel, MAIN_PARALLEL_LIMIT)?;
    Ok(format!(
        "3x4, 18x72, 9x576 exact; 1 worker {single:?}, 8 workers {parallel:?}"
    ))
}

fn counting_lemmas() -> Outcome {
    let start = Instant::now();
    let mut checks = 0;
    for (p, n) in [
        (2u32, 1usize),
        (2, 2),
        (2, 3),
        (3, 1),
        (3, 2),
        (3, 3),
        (2, 4),
    ] {
        let t = tower(p, 1, 1);
        let q = t.q();
        for cols in 1..=n {
            for r in 0..=cols as i64 {
                let closed = mat_count_with(n, cols, r, q, Method::Closed).map_err(err)?;
                let oracle = mat_count_with(n, cols, r, q, Method::Oracle(t)).map_err(err)?;
                ensure(closed == oracle, || {
                    format!("|M({n},{cols},{r})| at q={q}: {closed} vs {oracle}")
                })?;
                checks += 1;
            }
        }
        for a in [Mat::unit(n, 0, 0, 1), Mat::unit(n, 0, n - 1, 1)] {
            for r in 0..=n {
                let mut pair = Vec::new();
                for class in [TraceClass::Zero, TraceClass::Nonzero] {
                    let closed = y_count(t, &a, r, class, Method::Closed).map_err(err)?;
                    let oracle = y_count(t, &a, r, class, Method::Oracle(t)).map_err(err)?;
                    ensure(closed == oracle, || {
                        format!("Y q={q} n={n} r={r} {class:?}: {closed} vs {oracle}")
                    })?;
                    pair.push(oracle);
                    checks += 1;
                }
                let d = y_diff(n, r, q).map_err(err)?;
                ensure(d == &pair[0] - &pair[1], || {
                    format!("difference q={q} n={n} r={r}")
                })?;
                checks += 1;
            }
        }
    }
    within("counting", start.elapsed(), COUNTING_LIMIT)?;
    Ok(format!(
        "{checks} closed forms equal enumeration in {:?}",
        start.elapsed()
    ))
}

fn identity() -> Outcome {
    let start = Instant::now();
    let mut checks = 0;
    for n in 0..=6 {
        for a in 2 * n..=2 * n + 6 {
            for q in [2u64, 3, 4, 5, 7] {
                let r = identity_check(n, a, q).map_err(err)?;
                ensure(r.holds, || {
                    format!("n={n} a={a} q={q}: {} vs {}", r.lhs, r.rhs)
                })?;
                checks += 1;
            }
        }
    }
    within("identity", start.elapsed(), IDENTITY_LIMIT)?;
    Ok(format!("{checks} cases exact in {:?}", start.elapsed()))
}

fn unipotent_fast_path() -> Outcome {
    let start = Instant::now();
    let mut checks = 0;
    for (p, n) in [(2u32, 2usize), (3, 2), (2, 3)] {
        let t = tower(p, 1, 2 * n as u32);
        let ev = CuspidalEvaluator::new(t, 2 * n as u32).map_err(err)?;
        let xs = matq::all_matrices(t, n, n, 1, CAP).map_err(err)?;
        for th in regular_characters(t, 2 * n as u32).map_err(err)? {
            for x in &xs {
                let fast = unipotent_block_char(t, &th, x).map_err(err)?;
                let slow = ev
                    .cuspidal_char(&th, &Mat::unipotent_block(x))
                    .map_err(err)?;
                ensure(fast == slow, || {
                    format!("q={p} X={}: {fast} vs {slow}", x.to_text())
                })?;
                checks += 1;
            }
        }
    }
    within("unipotent", start.elapsed(), UNIPOTENT_LIMIT)?;
    Ok(format!(
        "{checks} (θ, X) pairs exact in {:?}",
        start.elapsed()
    ))
}

fn cuspidality() -> Outcome {
    for (p, n) in [(2u32, 2usize), (3, 2), (2, 3)] {
        let t = tower(p, 1, 2 * n as u32);
        let engine = JacquetEngine::new(t, TwistSpec::zero(n), CAP).map_err(err)?;
        for th in regular_characters(t, 2 * n as u32).map_err(err)? {
            let d = engine.dim(&th, Strategy::Direct).map_err(err)?;
            ensure(d == BigInt::from(0), || {
                format!("({p},{n}) θ={}: {d}", th.index())
            })?;
        }
    }
    Ok("A = 0 gives 0 at (2,2), (3,2), (2,3)".into())
}

fn irreducibility() -> Outcome {
    for (p, n) in [(2u32, 2usize), (3, 2), (2, 3)] {
        let ok = kirillov_irreducibility_check(tower(p, 1, 1), n).map_err(err)?;
        ensure(ok, || format!("Kirillov P_{n}(F_{p})"))?;
    }
    for p in [2u32, 3] {
        let t = tower(p, 1, 4);
        let model = ModelChar::new(t, TwistSpec::corner(2)).map_err(err)?;
        for th in regular_characters(t, 4).map_err(err)? {
            let r = model.rho_self_pairing(&th).map_err(err)?;
            let rt = model.rho_tilde_self_pairing(&th).map_err(err)?;
            ensure(r.is_one() && rt.is_one(), || {
                format!("q={p} θ={}: ⟨ρ,ρ⟩={r}, ⟨ρ̃,ρ̃⟩={rt}", th.index())
            })?;
        }
    }
    Ok("Kirillov P_2(F_2), P_2(F_3), P_3(F_2); ρ and ρ̃ at (2,2), (3,2)".into())
}

fn decomposition() -> Outcome {
    let mut sizes = Vec::new();
    for p in [2u32, 3] {
        let t = tower(p, 1, 4);
        let model = ModelChar::new(t, TwistSpec::corner(2)).map_err(err)?;
        let d = decomposition_check(&model).map_err(err)?;
        ensure(d.holds, || format!("q={p}: {d:?}"))?;
        sizes.push(d.elements.to_string());
    }
    let t = tower(3, 1, 4);
    let model = ModelChar::new(t, TwistSpec::corner(2)).map_err(err)?;
    let mut pairings = 0;
    for th in regular_characters(t, 4).map_err(err)? {
        for j in 0..model.chi_count() {
            let v = model.hom_pairing(&th, j).map_err(err)?;
            let want = BigInt::from(u8::from(j == th.restriction_index()));
            ensure(v == want, || {
                format!("θ={} χ_{j}: {v}, want {want}", th.index())
            })?;
            pairings += 1;
        }
    }
    Ok(format!(
        "pointwise on {} elements; {pairings} Hom pairings at q=3",
        sizes.join(" and ")
    ))
}

fn cuspidal_properties() -> Outcome {
    for p in [2u32, 3] {
        let t = tower(p, 1, 2);
        let ev = CuspidalEvaluator::new(t, 2).map_err(err)?;
        let gl = GroupSpec::GL(2).elements(t).map_err(err)?;
        for th in regular_characters(t, 2).map_err(err)? {
            let mut acc = CycNum::zero(t.cyclotomic_modulus()).map_err(err)?;
            for g in &gl {
                acc = &acc + &ev.cuspidal_char(&th, g).map_err(err)?.norm_sq();
            }
            let v = acc.div_int(&BigInt::from(gl.len())).as_rational();
            ensure(v == Some(BigRational::one()), || {
                format!("GL(2,{p}) θ={}: {v:?}", th.index())
            })?;
        }
    }
    let shapes = [
        (2u32, 2u32),
        (3, 2),
        (5, 2),
        (2, 3),
        (3, 3),
        (2, 4),
        (3, 4),
        (2, 6),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for i in 0..PROPERTY_SAMPLES {
        let (p, m) = shapes[i % shapes.len()];
        let t = tower(p, 1, m);
        let f = t.base();
        let ev = CuspidalEvaluator::new(t, m).map_err(err)?;
        let th = random_theta(&mut rng, t, m);
        let g = if rng.gen_bool(0.5) {
            random_gl(&mut rng, t, m as usize)
        } else {
            random_primary(&mut rng, t, m as usize)
        };
        let v = ev.cuspidal_char(&th, &g).map_err(err)?;
        ensure(
            ev.cuspidal_char(&th.galois_companion(1), &g).map_err(err)? == v,
            || format!("Galois sample {i}"),
        )?;
        let x = random_gl(&mut rng, t, m as usize);
        let conj = x.mul(&g, f).mul(&x.inverse(f).unwrap(), f);
        ensure(cuspidal_char(t, &th, &conj).map_err(err)? == v, || {
            format!("class-function sample {i}")
        })?;
        let h = random_primary(&mut rng, t, m as usize);
        let want = ev.cuspidal_char(&th, &h).map_err(err)?;
        let c = matq::charpoly(t, &h).map_err(err)?;
        let (irr, _) = matq::primary_decomposition(t, &c)
            .map_err(err)?
            .ok_or("not primary")?;
        let mut z = t.find_root(&irr).map_err(err)?;
        for _ in 0..irr.degree().unwrap() {
            let k = matq::kernel_dim(t, &h, z).map_err(err)? as u32;
            ensure(ev.formula_value(&th, z, k).map_err(err)? == want, || {
                format!("root-choice sample {i}")
            })?;
            z = t.frobenius(z).map_err(err)?;
        }
    }
    Ok(format!(
        "⟨Θ,Θ⟩ = 1 on GL(2,F_2), GL(2,F_3); {PROPERTY_SAMPLES} samples each for Galois, class-function, root choice"
    ))
}

fn conjugate_twists() -> Outcome {
    for p in [2u32, 3] {
        let t = tower(p, 1, 4);
        let thetas = regular_characters(t, 4).map_err(err)?;
        let r = conjugation_relation_check(t, &thetas, 2, CAP).map_err(err)?;
        ensure(r.holds, || format!("q={p}: {r:?}"))?;
    }
    Ok("E_11 vs E_1n: dims and characters agree at (2,2), (3,2)".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("twisted Jacquet dimensions", dimensions),
        ("main theorem, pointwise on M_psiA", main_theorem),
        ("rank and trace-class counting", counting_lemmas),
        ("q-Pochhammer rank-sum identity", identity),
        ("unipotent block fast path", unipotent_fast_path),
        ("ordinary Jacquet module vanishes", cuspidality),
        ("Kirillov, rho and rho-tilde irreducible", irreducibility),
        ("induced decomposition and Hom vanishing", decomposition),
        ("cuspidal character properties", cuspidal_properties),
        ("E_11 and E_1n twists are conjugate", conjugate_twists),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        match outcome {
            Ok(msg) => println!("PASS  {:>2}  {name}: {msg} [{elapsed:.2?}]", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL  {:>2}  {name}: {msg} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
