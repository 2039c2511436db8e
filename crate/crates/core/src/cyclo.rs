//! Exact arithmetic in cyclotomic fields Q(ζ_L).
//!
//! A [`CycNum`] is stored in the power basis `1, ζ, …, ζ^{φ(L)-1}` as integer
//! numerators over one positive common denominator, always reduced modulo the
//! L-th cyclotomic polynomial and with `gcd(numerators, den) = 1`. Two values
//! with the same modulus are equal iff their stored forms are identical.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The ring Z[x]/(Φ_L) together with Φ_L.
#[derive(Debug)]
pub struct CycloRing {
    modulus: u64,
    /// Φ_L, low degree first, monic.
    phi: Vec<i64>,
}

fn ring_cache() -> &'static Mutex<HashMap<u64, Arc<CycloRing>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CycloRing>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Exact quotient of integer polynomials by a monic divisor.
fn div_exact(num: &[i128], den: &[i64]) -> Vec<i128> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i128; num.len() - dd];
    for top in (dd..rem.len()).rev() {
        let c = rem[top];
        if c == 0 {
            continue;
        }
        quot[top - dd] = c;
        for (i, &di) in den.iter().enumerate() {
            rem[top - dd + i] -= c * di as i128;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

impl CycloRing {
    /// Shared ring for modulus `l`, computing Φ_l on first use.
    pub fn get(l: u64) -> Result<Arc<CycloRing>> {
        if l == 0 {
            return Err(Error::InvalidArgument(
                "cyclotomic modulus must be positive".into(),
            ));
        }
        if let Some(r) = ring_cache().lock().unwrap().get(&l) {
            return Ok(r.clone());
        }
        // x^l - 1 divided by Φ_d for every proper divisor d
        let mut poly = vec![0i128; l as usize + 1];
        poly[0] = -1;
        poly[l as usize] = 1;
        for d in (1..l).filter(|d| l.is_multiple_of(*d)) {
            let sub = CycloRing::get(d)?;
            poly = div_exact(&poly, &sub.phi);
        }
        let phi = poly
            .into_iter()
            .map(|c| i64::try_from(c).expect("cyclotomic coefficient fits in i64"))
            .collect();
        let ring = Arc::new(CycloRing { modulus: l, phi });
        ring_cache().lock().unwrap().insert(l, ring.clone());
        Ok(ring)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// φ(L), the dimension of the power basis.
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    /// Φ_L, low degree first.
    pub fn cyclotomic_polynomial(&self) -> &[i64] {
        &self.phi
    }

    /// Remainder of an arbitrary integer polynomial modulo Φ_L, padded to
    /// length φ(L).
    pub fn reduce(&self, coeffs: &[BigInt]) -> Vec<BigInt> {
        let deg = self.degree();
        let mut v: Vec<BigInt> = coeffs.to_vec();
        if v.len() < deg {
            v.resize(deg, BigInt::zero());
        }
        for top in (deg..v.len()).rev() {
            if v[top].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut v[top]);
            for (j, &pj) in self.phi[..deg].iter().enumerate() {
                if pj != 0 {
                    v[top - deg + j] -= &c * pj;
                }
            }
        }
        v.truncate(deg);
        v
    }

    /// Reduction of small coefficient vectors, staying in `i128`.
    fn reduce_small(&self, coeffs: &mut Vec<i128>) {
        let deg = self.degree();
        if coeffs.len() < deg {
            coeffs.resize(deg, 0);
        }
        for top in (deg..coeffs.len()).rev() {
            let c = coeffs[top];
            if c == 0 {
                continue;
            }
            coeffs[top] = 0;
            for (j, &pj) in self.phi[..deg].iter().enumerate() {
                if pj != 0 {
                    let idx = top - deg + j;
                    coeffs[idx] = c
                        .checked_mul(pj as i128)
                        .and_then(|t| coeffs[idx].checked_sub(t))
                        .expect("cyclotomic reduction overflowed i128");
                }
            }
        }
        coeffs.truncate(deg);
    }
}

/// Exact element of Q(ζ_L).
#[derive(Clone)]
pub struct CycNum {
    ring: Arc<CycloRing>,
    num: Vec<BigInt>,
    den: BigInt,
}

/// `ζ_L^k`.
pub fn zeta(l: u64, k: i64) -> Result<CycNum> {
    let ring = CycloRing::get(l)?;
    let mut counts = vec![0i128; l as usize];
    counts[k.rem_euclid(l as i64) as usize] = 1;
    Ok(CycNum::from_counts_in(ring, counts))
}

impl CycNum {
    fn normalized(ring: Arc<CycloRing>, mut num: Vec<BigInt>, mut den: BigInt) -> CycNum {
        debug_assert_eq!(num.len(), ring.degree());
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -&*c;
            }
        }
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if num.iter().all(Zero::is_zero) {
            den = BigInt::one();
        } else if !g.is_one() {
            for c in num.iter_mut() {
                *c = &*c / &g;
            }
            den /= &g;
        }
        CycNum { ring, num, den }
    }

    fn from_counts_in(ring: Arc<CycloRing>, mut counts: Vec<i128>) -> CycNum {
        ring.reduce_small(&mut counts);
        let num = counts.into_iter().map(BigInt::from).collect();
        CycNum::normalized(ring, num, BigInt::one())
    }

    /// `Σ_k counts[k] ζ_L^k` for a vector indexed by exponents mod L.
    pub fn from_exponent_counts(l: u64, counts: &[i128]) -> Result<CycNum> {
        let ring = CycloRing::get(l)?;
        let mut v = vec![0i128; l as usize];
        for (k, &c) in counts.iter().enumerate() {
            v[k % l as usize] += c;
        }
        Ok(CycNum::from_counts_in(ring, v))
    }

    pub fn zero(l: u64) -> Result<CycNum> {
        let ring = CycloRing::get(l)?;
        let num = vec![BigInt::zero(); ring.degree()];
        Ok(CycNum::normalized(ring, num, BigInt::one()))
    }

    pub fn one(l: u64) -> Result<CycNum> {
        CycNum::from_integer(l, 1)
    }

    pub fn from_integer(l: u64, v: impl Into<BigInt>) -> Result<CycNum> {
        CycNum::from_rational(l, BigRational::from_integer(v.into()))
    }

    pub fn from_rational(l: u64, v: BigRational) -> Result<CycNum> {
        let ring = CycloRing::get(l)?;
        let mut num = vec![BigInt::zero(); ring.degree()];
        num[0] = v.numer().clone();
        Ok(CycNum::normalized(ring, num, v.denom().clone()))
    }

    pub fn modulus(&self) -> u64 {
        self.ring.modulus
    }

    pub fn ring(&self) -> &Arc<CycloRing> {
        &self.ring
    }

    /// Power-basis coordinates as exact rationals.
    pub fn coefficients(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    /// Nonzero power-basis terms `(k, c)` meaning `c ζ_L^k`.
    pub fn terms(&self) -> Vec<(usize, BigRational)> {
        self.num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, BigRational::new(c.clone(), self.den.clone())))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    /// The value as an exact rational, when it is one.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num.iter().skip(1).all(Zero::is_zero) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// The value as an exact integer, when it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|r| r.is_integer())
            .map(|r| r.to_integer())
    }

    pub fn as_i64(&self) -> Option<i64> {
        self.as_integer().and_then(|v| v.to_i64())
    }

    /// Image in Q(ζ_{L'}) for a multiple `L'` of the current modulus.
    pub fn lift(&self, target: u64) -> Result<CycNum> {
        let l = self.modulus();
        if !target.is_multiple_of(l) {
            return Err(Error::InvalidArgument(format!(
                "cannot lift modulus {l} to {target}"
            )));
        }
        if target == l {
            return Ok(self.clone());
        }
        let ring = CycloRing::get(target)?;
        let c = (target / l) as usize;
        let mut v = vec![BigInt::zero(); (self.num.len().max(1) - 1) * c + 1];
        for (k, a) in self.num.iter().enumerate() {
            v[k * c] = a.clone();
        }
        let num = ring.reduce(&v);
        Ok(CycNum::normalized(ring, num, self.den.clone()))
    }

    fn unify(&self, other: &CycNum) -> (CycNum, CycNum) {
        if self.modulus() == other.modulus() {
            return (self.clone(), other.clone());
        }
        let l = self.modulus().lcm(&other.modulus());
        (self.lift(l).unwrap(), other.lift(l).unwrap())
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> CycNum {
        let l = self.modulus() as usize;
        let mut v = vec![BigInt::zero(); l];
        for (k, a) in self.num.iter().enumerate() {
            if !a.is_zero() {
                v[(l - k) % l] += a;
            }
        }
        let num = self.ring.reduce(&v);
        CycNum::normalized(self.ring.clone(), num, self.den.clone())
    }

    pub fn scale(&self, r: &BigRational) -> CycNum {
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        CycNum::normalized(self.ring.clone(), num, &self.den * r.denom())
    }

    pub fn scale_int(&self, k: &BigInt) -> CycNum {
        self.scale(&BigRational::from_integer(k.clone()))
    }

    /// `self / k` for a nonzero integer `k`.
    pub fn div_int(&self, k: &BigInt) -> CycNum {
        assert!(!k.is_zero(), "division by zero");
        self.scale(&BigRational::new(BigInt::one(), k.clone()))
    }

    /// `|a|^2 = a · conj(a)`.
    pub fn norm_sq(&self) -> CycNum {
        self * &self.conj()
    }

    fn add_impl(&self, other: &CycNum, negate: bool) -> CycNum {
        let (a, b) = self.unify(other);
        let den = &a.den * &b.den;
        let num = a
            .num
            .iter()
            .zip(&b.num)
            .map(|(x, y)| {
                let rhs = y * &a.den;
                if negate {
                    x * &b.den - rhs
                } else {
                    x * &b.den + rhs
                }
            })
            .collect();
        CycNum::normalized(a.ring.clone(), num, den)
    }

    fn mul_impl(&self, other: &CycNum) -> CycNum {
        let (a, b) = self.unify(other);
        let deg = a.ring.degree();
        let small = a.num.iter().chain(&b.num).all(|c| c.bits() < 40);
        let num = if small {
            let xs: Vec<i128> = a.num.iter().map(|c| c.to_i128().unwrap()).collect();
            let ys: Vec<i128> = b.num.iter().map(|c| c.to_i128().unwrap()).collect();
            let mut prod = vec![0i128; 2 * deg.max(1) - 1];
            for (i, &x) in xs.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in ys.iter().enumerate() {
                    prod[i + j] += x * y;
                }
            }
            a.ring.reduce_small(&mut prod);
            prod.into_iter().map(BigInt::from).collect()
        } else {
            let mut prod = vec![BigInt::zero(); 2 * deg.max(1) - 1];
            for (i, x) in a.num.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in b.num.iter().enumerate() {
                    if !y.is_zero() {
                        prod[i + j] += x * y;
                    }
                }
            }
            a.ring.reduce(&prod)
        };
        CycNum::normalized(a.ring.clone(), num, &a.den * &b.den)
    }
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.modulus() == other.modulus() {
            self.num == other.num && self.den == other.den
        } else {
            let (a, b) = self.unify(other);
            a.num == b.num && a.den == b.den
        }
    }
}

impl Eq for CycNum {}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        self.add_impl(rhs, false)
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        self.add_impl(rhs, true)
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        self.mul_impl(rhs)
    }
}

impl Add for CycNum {
    type Output = CycNum;
    fn add(self, rhs: CycNum) -> CycNum {
        &self + &rhs
    }
}

impl Sub for CycNum {
    type Output = CycNum;
    fn sub(self, rhs: CycNum) -> CycNum {
        &self - &rhs
    }
}

impl Mul for CycNum {
    type Output = CycNum;
    fn mul(self, rhs: CycNum) -> CycNum {
        &self * &rhs
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        let num = self.num.iter().map(|c| -c).collect();
        CycNum::normalized(self.ring.clone(), num, self.den.clone())
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let l = self.modulus();
        for (i, (k, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            match (*k, abs.is_one()) {
                (0, _) => write!(f, "{}", fmt_rational(&abs))?,
                (k, true) => write!(f, "z{l}^{k}")?,
                (k, false) => write!(f, "{}*z{l}^{k}", fmt_rational(&abs))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum(L={}: {})", self.modulus(), self)
    }
}

#[derive(Serialize, Deserialize)]
struct CycNumRepr {
    modulus: u64,
    terms: BTreeMap<u64, String>,
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycNumRepr {
            modulus: self.modulus(),
            terms: self
                .terms()
                .into_iter()
                .map(|(k, c)| (k as u64, fmt_rational(&c)))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = CycNumRepr::deserialize(d)?;
        let ring = CycloRing::get(repr.modulus).map_err(de::Error::custom)?;
        let mut acc = CycNum::zero(repr.modulus).map_err(de::Error::custom)?;
        for (k, c) in repr.terms {
            if k as usize >= ring.degree() {
                return Err(de::Error::custom(format!(
                    "exponent {k} outside power basis"
                )));
            }
            let r: BigRational = c.parse().map_err(de::Error::custom)?;
            let term = zeta(repr.modulus, k as i64).map_err(de::Error::custom)?;
            acc = &acc + &term.scale(&r);
        }
        Ok(acc)
    }
}
