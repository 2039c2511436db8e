//! Regular characters of F_{q^m}^× and the character of the associated
//! cuspidal representation of GL(m, F_q).
//!
//! For `g` with characteristic polynomial `f^k`, `f` irreducible of degree
//! `d`, root `z` of `f` in F_{q^d} and `t = dim ker(g - z)`:
//!
//! ```text
//! Θ_θ(g) = (-1)^{m-1} [Σ_{α<d} θ(z^{q^α})] ∏_{i=1}^{t-1} (1 - q^{d i})
//! ```
//!
//! and `Θ_θ(g) = 0` when the characteristic polynomial is not primary.

use dashmap::DashMap;
use num_bigint::BigInt;
use serde::Serialize;

use crate::counting::pochhammer;
use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::ffield::{FFElem, FieldTower, Poly};
use crate::matq::{self, Mat};

/// A character `γ_m^j ↦ ζ_{q^m-1}^{k j}` of F_{q^m}^× whose Frobenius orbit
/// has exactly `m` members.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct RegularCharacter {
    m: u32,
    q: u64,
    k: u64,
}

fn orbit_of(k: u64, q: u64, order: u64) -> Vec<u64> {
    let mut out = vec![k % order];
    let mut cur = (k as u128 * q as u128 % order as u128) as u64;
    while cur != out[0] {
        out.push(cur);
        cur = (cur as u128 * q as u128 % order as u128) as u64;
    }
    out
}

impl RegularCharacter {
    /// Rejects indices whose Frobenius orbit is shorter than `m`.
    pub fn new(tower: &FieldTower, m: u32, k: u64) -> Result<Self> {
        tower.level(m)?;
        let q = tower.q();
        let order = q.pow(m) - 1;
        let k = k % order;
        if orbit_of(k, q, order).len() != m as usize {
            return Err(Error::NotRegular(k));
        }
        Ok(RegularCharacter { m, q, k })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn index(&self) -> u64 {
        self.k
    }

    /// `q^m - 1`.
    pub fn order(&self) -> u64 {
        self.q.pow(self.m) - 1
    }

    /// Frobenius orbit `{k, kq, kq², …}` of the index.
    pub fn orbit(&self) -> Vec<u64> {
        orbit_of(self.k, self.q, self.order())
    }

    /// `θ^{q^α}`.
    pub fn galois_companion(&self, alpha: u32) -> RegularCharacter {
        let mut k = self.k;
        for _ in 0..alpha {
            k = (k as u128 * self.q as u128 % self.order() as u128) as u64;
        }
        RegularCharacter { k, ..*self }
    }

    /// Index `j` with `θ|_{F^×} = χ_j`, `χ_j(γ_1^i) = ζ_{q-1}^{ij}`.
    pub fn restriction_index(&self) -> u64 {
        if self.q == 2 {
            0
        } else {
            self.k % (self.q - 1)
        }
    }
}

/// One representative (the least index) per regular Frobenius orbit.
pub fn regular_characters(tower: &FieldTower, m: u32) -> Result<Vec<RegularCharacter>> {
    tower.level(m)?;
    let q = tower.q();
    let order = q.pow(m) - 1;
    let mut seen = vec![false; order as usize];
    let mut out = Vec::new();
    for k in 0..order {
        if seen[k as usize] {
            continue;
        }
        let orbit = orbit_of(k, q, order);
        for &j in &orbit {
            seen[j as usize] = true;
        }
        if orbit.len() == m as usize {
            out.push(RegularCharacter { m, q, k });
        }
    }
    Ok(out)
}

/// `θ(x)` for nonzero `x` at a level dividing `m`.
pub fn theta_eval(tower: &FieldTower, theta: &RegularCharacter, x: FFElem) -> Result<CycNum> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    let y = tower.embed(x, theta.m)?;
    let e = tower.dlog(y)?;
    let l = tower.cyclotomic_modulus();
    let order = theta.order();
    let exp = (theta.k as u128 * e as u128 % order as u128) as u64 * (l / order);
    crate::cyclo::zeta(l, exp as i64)
}

/// θ-independent data that determines `Θ_θ(g)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ClassDatum {
    /// Characteristic polynomial is not a power of an irreducible.
    Vanishing,
    /// `d = deg f`, `t = dim ker(g - z)`, and `z_exp` the least discrete log
    /// (at level m) over the Frobenius conjugates of `z`.
    Primary { d: u32, t: u32, z_exp: u64 },
}

/// Memo key: characteristic polynomial coefficients and `t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassKey {
    pub charpoly: Vec<u32>,
    pub t: u32,
}

#[derive(Debug, Clone)]
struct PrimaryData {
    z: FFElem,
    d: u32,
    z_exp: u64,
}

/// Evaluates cuspidal characters of GL(m, F_q), caching the primary
/// decomposition of every characteristic polynomial it meets.
pub struct CuspidalEvaluator<'t> {
    tower: &'t FieldTower,
    m: u32,
    primary: DashMap<Poly, Option<PrimaryData>>,
}

impl<'t> CuspidalEvaluator<'t> {
    pub fn new(tower: &'t FieldTower, m: u32) -> Result<Self> {
        tower.level(m)?;
        Ok(CuspidalEvaluator {
            tower,
            m,
            primary: DashMap::new(),
        })
    }

    pub fn tower(&self) -> &'t FieldTower {
        self.tower
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    fn check_theta(&self, theta: &RegularCharacter) -> Result<()> {
        if theta.m != self.m {
            return Err(Error::InvalidArgument(format!(
                "character of F_(q^{})^x used on GL({})",
                theta.m, self.m
            )));
        }
        Ok(())
    }

    fn primary_data(&self, c: &Poly) -> Result<Option<PrimaryData>> {
        if let Some(v) = self.primary.get(c) {
            return Ok(v.clone());
        }
        let data = match matq::primary_decomposition(self.tower, c)? {
            None => None,
            Some((f, _)) => {
                let z = self.tower.find_root(&f)?;
                Some(PrimaryData {
                    z,
                    d: z.level,
                    z_exp: self.orbit_min_exp(z)?,
                })
            }
        };
        self.primary.insert(c.clone(), data.clone());
        Ok(data)
    }

    fn orbit_min_exp(&self, z: FFElem) -> Result<u64> {
        let e = self.tower.dlog(self.tower.embed(z, self.m)?)?;
        let order = self.tower.group_order(self.m);
        Ok(*orbit_of(e, self.tower.q(), order).iter().min().unwrap())
    }

    /// Degree of `z` over F_q: the length of its Frobenius orbit.
    pub fn degree_of(&self, z: FFElem) -> Result<u32> {
        let mut d = 1;
        let mut y = self.tower.frobenius(z)?;
        while y != z {
            y = self.tower.frobenius(y)?;
            d += 1;
        }
        Ok(d)
    }

    /// Memo key and class datum of an invertible `g` in GL(m, F_q).
    pub fn classify_keyed(&self, g: &Mat) -> Result<(ClassKey, ClassDatum)> {
        if g.rows() != self.m as usize || !g.is_square() || g.level() != 1 {
            return Err(Error::Shape(format!(
                "expected an element of GL({}, F_q), got {}x{} at level {}",
                self.m,
                g.rows(),
                g.cols(),
                g.level()
            )));
        }
        let c = g.charpoly_in(self.tower.base())?;
        if c.coeffs().first().copied().unwrap_or(0) == 0 {
            return Err(Error::Singular);
        }
        match self.primary_data(&c)? {
            None => Ok((
                ClassKey {
                    charpoly: c.coeffs().to_vec(),
                    t: 0,
                },
                ClassDatum::Vanishing,
            )),
            Some(pd) => {
                let t = matq::kernel_dim(self.tower, g, pd.z)? as u32;
                Ok((
                    ClassKey {
                        charpoly: c.coeffs().to_vec(),
                        t,
                    },
                    ClassDatum::Primary {
                        d: pd.d,
                        t,
                        z_exp: pd.z_exp,
                    },
                ))
            }
        }
    }

    pub fn classify(&self, g: &Mat) -> Result<ClassDatum> {
        Ok(self.classify_keyed(g)?.1)
    }

    /// Integer factor `(-1)^{m-1} ∏_{i=1}^{t-1} (1 - q^{d i})`.
    pub fn scalar_factor(&self, d: u32, t: u32) -> i128 {
        let qd = (self.tower.q() as i128).pow(d);
        let mut acc: i128 = if self.m % 2 == 1 { 1 } else { -1 };
        for i in 1..t {
            acc *= 1 - qd.pow(i);
        }
        acc
    }

    /// Adds `weight · Θ_θ(datum)` into exponent counts indexed mod
    /// `tower.cyclotomic_modulus()`, each count shifted by `shift`.
    pub fn accumulate(
        &self,
        theta: &RegularCharacter,
        datum: &ClassDatum,
        weight: i128,
        shift: u64,
        counts: &mut [i128],
    ) {
        let ClassDatum::Primary { d, t, z_exp } = *datum else {
            return;
        };
        let l = counts.len() as u64;
        let order = theta.order();
        let step = l / order;
        let c = self.scalar_factor(d, t) * weight;
        let mut e = z_exp;
        for _ in 0..d {
            let exp = (theta.k as u128 * e as u128 % order as u128) as u64 * step;
            counts[((exp + shift) % l) as usize] += c;
            e = (e as u128 * self.tower.q() as u128 % order as u128) as u64;
        }
    }

    /// `Θ_θ` on a class datum.
    pub fn value(&self, theta: &RegularCharacter, datum: &ClassDatum) -> CycNum {
        let l = self.tower.cyclotomic_modulus();
        let mut counts = vec![0i128; l as usize];
        self.accumulate(theta, datum, 1, 0, &mut counts);
        CycNum::from_exponent_counts(l, &counts).expect("positive modulus")
    }

    /// The formula branch evaluated at an explicit eigenvalue `z` and kernel
    /// dimension `t`.
    pub fn formula_value(&self, theta: &RegularCharacter, z: FFElem, t: u32) -> Result<CycNum> {
        self.check_theta(theta)?;
        let d = self.degree_of(z)?;
        let l = self.tower.cyclotomic_modulus();
        let mut sum = CycNum::zero(l)?;
        let mut y = z;
        for _ in 0..d {
            sum = &sum + &theta_eval(self.tower, theta, y)?;
            y = self.tower.frobenius(y)?;
        }
        Ok(sum.scale_int(&BigInt::from(self.scalar_factor(d, t))))
    }

    /// `Θ_θ(g)` for `g` in GL(m, F_q).
    pub fn cuspidal_char(&self, theta: &RegularCharacter, g: &Mat) -> Result<CycNum> {
        self.check_theta(theta)?;
        let datum = self.classify(g)?;
        Ok(self.value(theta, &datum))
    }
}

/// Memoized `Θ_θ` keyed by (characteristic polynomial, t).
pub struct ClassFunctionTable<'e, 't> {
    evaluator: &'e CuspidalEvaluator<'t>,
    theta: RegularCharacter,
    values: DashMap<ClassKey, CycNum>,
}

impl<'e, 't> ClassFunctionTable<'e, 't> {
    pub fn new(evaluator: &'e CuspidalEvaluator<'t>, theta: RegularCharacter) -> Result<Self> {
        evaluator.check_theta(&theta)?;
        Ok(ClassFunctionTable {
            evaluator,
            theta,
            values: DashMap::new(),
        })
    }

    pub fn theta(&self) -> &RegularCharacter {
        &self.theta
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn eval(&self, g: &Mat) -> Result<CycNum> {
        let (key, datum) = self.evaluator.classify_keyed(g)?;
        if let Some(v) = self.values.get(&key) {
            return Ok(v.clone());
        }
        let v = self.evaluator.value(&self.theta, &datum);
        self.values.insert(key, v.clone());
        Ok(v)
    }
}

/// `Θ_θ(g)` without a shared cache.
pub fn cuspidal_char(tower: &FieldTower, theta: &RegularCharacter, g: &Mat) -> Result<CycNum> {
    CuspidalEvaluator::new(tower, theta.m)?.cuspidal_char(theta, g)
}

/// `Θ_θ([[1, X], [0, 1]]) = -(q;q)_{2n-1-r}`, `r = rank X`, as an integer.
pub fn unipotent_block_value(q: u64, n: usize, r: usize) -> Result<BigInt> {
    if r > n {
        return Err(Error::InvalidArgument(format!("rank {r} exceeds {n}")));
    }
    Ok(-pochhammer(q, (2 * n - 1 - r) as i64)?)
}

/// `Θ_θ([[1, X], [0, 1]])` from the rank of `X` alone.
pub fn unipotent_block_char(
    tower: &FieldTower,
    theta: &RegularCharacter,
    x: &Mat,
) -> Result<CycNum> {
    let n = x.rows();
    if !x.is_square() || theta.m as usize != 2 * n {
        return Err(Error::Shape(format!(
            "X must be n x n with 2n = {}",
            theta.m
        )));
    }
    let r = x.rank(tower.base());
    CycNum::from_integer(
        tower.cyclotomic_modulus(),
        unipotent_block_value(tower.q(), n, r)?,
    )
}
