//! Finite fields F_{q^d}, `q = p^e`, for every divisor `d` of a top degree `m`,
//! with norm-compatible generators, embeddings, Frobenius and discrete logs.
//!
//! Each level has its own polynomial basis over F_p (the least irreducible
//! polynomial of degree `d·e`). The top generator is the least primitive
//! element of the top level; every lower generator `γ_d` is the least root of
//! the minimal polynomial of `γ_m^{(q^m-1)/(q^d-1)}`, so the embedding
//! `γ_d^k ↦ γ_{d'}^{k (q^{d'}-1)/(q^d-1)}` is a field homomorphism.

mod level;
mod poly;

use std::collections::BTreeMap;

use num_integer::Integer;

pub use level::{least_irreducible, FieldLevel};
pub use poly::Poly;

use crate::error::{Error, Result};
use level::{fp, is_prime, prime_factors};

/// Default cap on the number of discrete-log table entries at the top level.
pub const DEFAULT_TABLE_CAP: u64 = 1 << 24;

/// An element of one level of a [`FieldTower`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FFElem {
    pub level: u32,
    pub code: u32,
}

impl FFElem {
    pub fn new(level: u32, code: u32) -> Self {
        FFElem { level, code }
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }
}

/// The lattice of fields F_{q^d}, `d | m`.
#[derive(Debug, Clone)]
pub struct FieldTower {
    p: u32,
    e: u32,
    m: u32,
    q: u64,
    levels: BTreeMap<u32, FieldLevel>,
    abs_trace: Vec<u32>,
}

/// Builds the tower for `q = p^e` up to degree `m` with the default table cap.
pub fn make_tower(p: u32, e: u32, m: u32) -> Result<FieldTower> {
    FieldTower::with_cap(p, e, m, DEFAULT_TABLE_CAP)
}

fn divisors(m: u32) -> Vec<u32> {
    (1..=m).filter(|d| m.is_multiple_of(*d)).collect()
}

fn bootstrap_primitive(p: u32, modulus: &[u32]) -> u32 {
    let deg = modulus.len() - 1;
    let size = (p as u64).pow(deg as u32);
    let order = size - 1;
    let factors = prime_factors(order);
    (1..size as u32)
        .find(|&c| {
            let g = level::digits(c, p, deg);
            factors
                .iter()
                .all(|&r| fp::powmod(&g, (order / r) as u128, modulus, p) != [1])
        })
        .expect("multiplicative group of a finite field is cyclic")
}

impl FieldTower {
    pub fn with_cap(p: u32, e: u32, m: u32, cap: u64) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if e == 0 || m == 0 {
            return Err(Error::InvalidArgument("e and m must be positive".into()));
        }
        let q = (p as u128).pow(e);
        let top_size = q.checked_pow(m).unwrap_or(u128::MAX);
        if top_size - 1 > cap as u128 || top_size > u32::MAX as u128 {
            return Err(Error::CapExceeded {
                what: "discrete-log table",
                size: top_size - 1,
                cap: cap as u128,
            });
        }
        let q = q as u64;

        let top_mod = least_irreducible(p, (m * e) as usize);
        let top_gen = bootstrap_primitive(p, &top_mod);
        let top = FieldLevel::build(m, p, top_mod, top_gen)?;
        let top_order = top.order() as u64;

        let mut levels = BTreeMap::new();
        for d in divisors(m).into_iter().filter(|&d| d < m) {
            let sub_order = q.pow(d) - 1;
            let beta = top.exp(top_order / sub_order);
            let deg = (d * e) as usize;
            // minimal polynomial of beta over F_p, from its p-power conjugates
            let mut minpoly = Poly::one();
            let mut conj = beta;
            for _ in 0..deg {
                minpoly = minpoly.mul(&Poly::linear(conj, &top), &top);
                conj = top.pow(conj, p as u64);
            }
            debug_assert_eq!(conj, beta);
            let coeffs: Vec<u32> = minpoly.coeffs().to_vec();
            debug_assert!(coeffs.iter().all(|&c| c < p));

            let modulus = least_irreducible(p, deg);
            let size = (p as u64).pow(deg as u32) as u32;
            let gen = (1..size)
                .find(|&c| {
                    let x = level::digits(c, p, deg);
                    let val = coeffs.iter().rev().fold(Vec::new(), |acc, &ci| {
                        let shifted = fp::mulmod(&acc, &x, &modulus, p);
                        let mut s = shifted;
                        if s.is_empty() {
                            s.push(0);
                        }
                        s[0] = (s[0] + ci) % p;
                        fp::trim(s)
                    });
                    val.is_empty()
                })
                .expect("subfield contains the conjugates of beta");
            levels.insert(d, FieldLevel::build(d, p, modulus, gen)?);
        }
        levels.insert(m, top);

        let base = &levels[&1];
        let abs_trace = (0..base.size())
            .map(|x| {
                let mut acc = 0;
                let mut y = x;
                for _ in 0..e {
                    acc = base.add(acc, y);
                    y = base.pow(y, p as u64);
                }
                acc
            })
            .collect();

        Ok(FieldTower {
            p,
            e,
            m,
            q,
            levels,
            abs_trace,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Top degree.
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn levels(&self) -> impl Iterator<Item = u32> + '_ {
        self.levels.keys().copied()
    }

    pub fn level(&self, d: u32) -> Result<&FieldLevel> {
        self.levels.get(&d).ok_or(Error::MissingLevel(d))
    }

    /// The base field F_q.
    pub fn base(&self) -> &FieldLevel {
        &self.levels[&1]
    }

    pub fn top(&self) -> &FieldLevel {
        &self.levels[&self.m]
    }

    /// `q^d - 1`.
    pub fn group_order(&self, d: u32) -> u64 {
        self.q.pow(d) - 1
    }

    /// Working modulus `lcm(p, q^m - 1)` for character values.
    pub fn cyclotomic_modulus(&self) -> u64 {
        (self.p as u64).lcm(&self.group_order(self.m))
    }

    pub fn elem(&self, d: u32, code: u32) -> Result<FFElem> {
        let lvl = self.level(d)?;
        if code >= lvl.size() {
            return Err(Error::BadCode {
                code: code as u64,
                size: lvl.size() as u64,
            });
        }
        Ok(FFElem::new(d, code))
    }

    pub fn zero(&self, d: u32) -> FFElem {
        FFElem::new(d, 0)
    }

    pub fn one(&self, d: u32) -> FFElem {
        FFElem::new(d, 1)
    }

    pub fn generator(&self, d: u32) -> Result<FFElem> {
        Ok(FFElem::new(d, self.level(d)?.generator()))
    }

    fn same_level(&self, x: FFElem, y: FFElem) -> Result<&FieldLevel> {
        if x.level != y.level {
            return Err(Error::LevelMismatch(x.level, y.level));
        }
        self.level(x.level)
    }

    pub fn add(&self, x: FFElem, y: FFElem) -> Result<FFElem> {
        let f = self.same_level(x, y)?;
        Ok(FFElem::new(x.level, f.add(x.code, y.code)))
    }

    pub fn mul(&self, x: FFElem, y: FFElem) -> Result<FFElem> {
        let f = self.same_level(x, y)?;
        Ok(FFElem::new(x.level, f.mul(x.code, y.code)))
    }

    pub fn pow(&self, x: FFElem, k: u64) -> Result<FFElem> {
        Ok(FFElem::new(x.level, self.level(x.level)?.pow(x.code, k)))
    }

    /// `x ↦ x^q`.
    pub fn frobenius(&self, x: FFElem) -> Result<FFElem> {
        self.pow(x, self.q)
    }

    /// Discrete logarithm of a nonzero element to its level generator.
    pub fn dlog(&self, x: FFElem) -> Result<u64> {
        let f = self.level(x.level)?;
        if x.code >= f.size() {
            return Err(Error::BadCode {
                code: x.code as u64,
                size: f.size() as u64,
            });
        }
        f.log(x.code).map(u64::from).ok_or(Error::ZeroElement)
    }

    /// Embeds `x` into level `target`, which must be a multiple of its level.
    pub fn embed(&self, x: FFElem, target: u32) -> Result<FFElem> {
        if !target.is_multiple_of(x.level) {
            return Err(Error::NotDivisible {
                from: x.level,
                to: target,
            });
        }
        let src = self.level(x.level)?;
        let dst = self.level(target)?;
        Ok(FFElem::new(target, self.embed_code(src, dst, x.code)))
    }

    #[inline]
    pub(crate) fn embed_code(&self, src: &FieldLevel, dst: &FieldLevel, code: u32) -> u32 {
        if src.level() == dst.level() {
            return code;
        }
        match src.log(code) {
            None => 0,
            Some(k) => {
                let step = dst.order() as u64 / src.order() as u64;
                dst.exp(k as u64 * step)
            }
        }
    }

    /// Absolute trace F_q → F_p of a base-field code; the result is below `p`.
    #[inline]
    pub fn abs_trace(&self, code: u32) -> u32 {
        self.abs_trace[code as usize]
    }

    /// A root in level `deg f` of a monic irreducible polynomial over F_q.
    /// The returned root is the one with the least discrete log.
    pub fn find_root(&self, f: &Poly) -> Result<FFElem> {
        let base = self.base();
        if !f.is_monic() || f.degree().unwrap_or(0) == 0 {
            return Err(Error::NotMonic);
        }
        let d = f.degree().unwrap() as u32;
        if !self.m.is_multiple_of(d) {
            return Err(Error::NotDivisible {
                from: d,
                to: self.m,
            });
        }
        if !f.is_irreducible(base) {
            return Err(Error::Reducible);
        }
        let lvl = self.level(d)?;
        let lifted = Poly::new(
            f.coeffs()
                .iter()
                .map(|&c| self.embed_code(base, lvl, c))
                .collect(),
        );
        (0..lvl.order() as u64)
            .map(|k| lvl.exp(k))
            .find(|&x| lifted.eval(x, lvl) == 0)
            .map(|x| FFElem::new(d, x))
            .ok_or(Error::Reducible)
    }
}
