#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use rand::Rng;
use twisted_jacquet::cuspidal::{regular_characters, RegularCharacter};
use twisted_jacquet::ffield::{make_tower, FieldLevel, FieldTower, Poly};
use twisted_jacquet::matq::Mat;

type TowerCache = Mutex<HashMap<(u32, u32, u32), &'static FieldTower>>;

/// A tower built once per process and shared by every test in the binary.
pub fn tower(p: u32, e: u32, m: u32) -> &'static FieldTower {
    static CACHE: OnceLock<TowerCache> = OnceLock::new();
    let mut map = CACHE.get_or_init(Default::default).lock().unwrap();
    map.entry((p, e, m))
        .or_insert_with(|| Box::leak(Box::new(make_tower(p, e, m).unwrap())))
}

pub fn random_mat(rng: &mut impl Rng, t: &FieldTower, rows: usize, cols: usize) -> Mat {
    let size = t.base().size();
    let data = (0..rows * cols).map(|_| rng.gen_range(0..size)).collect();
    Mat::from_vec(rows, cols, 1, data).unwrap()
}

pub fn random_gl(rng: &mut impl Rng, t: &FieldTower, k: usize) -> Mat {
    loop {
        let g = random_mat(rng, t, k, k);
        if g.rank(t.base()) == k {
            return g;
        }
    }
}

/// `u v^T` for random nonzero column vectors.
pub fn random_rank_one(rng: &mut impl Rng, t: &FieldTower, n: usize) -> Mat {
    let f = t.base();
    loop {
        let u = random_mat(rng, t, n, 1);
        let v = random_mat(rng, t, 1, n);
        let a = u.mul(&v, f);
        if a.rank(f) == 1 {
            return a;
        }
    }
}

fn companion(f: &Poly, level: &FieldLevel) -> Mat {
    let d = f.degree().unwrap();
    let mut c = Mat::zeros(d, d, 1);
    for i in 1..d {
        c.set(i, i - 1, 1);
    }
    for i in 0..d {
        c.set(i, d - 1, level.neg(f.coeffs()[i]));
    }
    c
}

/// A conjugate of a block upper triangular matrix whose diagonal blocks are
/// all the companion matrix of one irreducible polynomial.
pub fn random_primary(rng: &mut impl Rng, t: &FieldTower, m: usize) -> Mat {
    let f = t.base();
    let divisors: Vec<usize> = (1..=m).filter(|d| m.is_multiple_of(*d)).collect();
    let d = divisors[rng.gen_range(0..divisors.len())];
    let poly = loop {
        let mut c: Vec<u32> = (0..d).map(|_| rng.gen_range(0..f.size())).collect();
        c.push(1);
        let p = Poly::new(c);
        if p.coeffs()[0] != 0 && p.is_irreducible(f) {
            break p;
        }
    };
    let comp = companion(&poly, f);
    let k = m / d;
    let mut g = Mat::zeros(m, m, 1);
    for bi in 0..k {
        for bj in bi..k {
            let block = if bi == bj {
                comp.clone()
            } else if rng.gen_bool(0.5) {
                random_mat(rng, t, d, d)
            } else {
                Mat::zeros(d, d, 1)
            };
            for i in 0..d {
                for j in 0..d {
                    g.set(bi * d + i, bj * d + j, block.get(i, j));
                }
            }
        }
    }
    let x = random_gl(rng, t, m);
    x.mul(&g, f).mul(&x.inverse(f).unwrap(), f)
}

/// A uniformly chosen orbit, then a uniformly chosen member of it.
pub fn random_theta(rng: &mut impl Rng, t: &FieldTower, m: u32) -> RegularCharacter {
    let reps = regular_characters(t, m).unwrap();
    let r = reps[rng.gen_range(0..reps.len())];
    r.galois_companion(rng.gen_range(0..m))
}
