//! Closed forms and brute-force oracles for counting matrices by rank and by
//! trace class, and the q-Pochhammer identity that evaluates the rank sum.
//!
//! The closed forms treat `q` as an abstract integer `≥ 2`; only the oracles
//! need an actual field.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffield::FieldTower;
use crate::matq::{self, Mat};

/// Exact count. Intermediate values may be rational; every public count is
/// checked to be integral before it is returned.
pub type QInt = BigInt;

/// How a count is obtained.
#[derive(Debug, Clone, Copy)]
pub enum Method<'a> {
    Closed,
    /// Enumerate matrices over the base field of the tower.
    Oracle(&'a FieldTower),
}

/// Trace classes `tr(AX) = 0` and `tr(AX) = α ≠ 0` (all nonzero α have the
/// same count).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TraceClass {
    Zero,
    Nonzero,
}

fn big(q: u64) -> BigInt {
    BigInt::from(q)
}

fn q_pow(q: u64, k: i64) -> BigRational {
    let b = big(q).pow(k.unsigned_abs() as u32);
    if k >= 0 {
        BigRational::from_integer(b)
    } else {
        BigRational::new(BigInt::one(), b)
    }
}

fn to_integer(r: BigRational, what: &str) -> Result<QInt> {
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(Error::Verification(format!(
            "{what} is not an integer: {r}"
        )))
    }
}

/// `(q;q)_n = ∏_{i=0}^{n-1} (1 - q^{i+1})`.
pub fn pochhammer(q: u64, n: i64) -> Result<QInt> {
    if n < 0 {
        return Err(Error::InvalidArgument(format!(
            "(q;q)_n needs n >= 0, got {n}"
        )));
    }
    Ok((1..=n as u32).fold(BigInt::one(), |acc, i| {
        acc * (BigInt::one() - big(q).pow(i))
    }))
}

/// `|M(n, m, r, q)|` in closed form; zero for `r < 0` or `r > min(n, m)`.
pub fn mat_count(n: usize, m: usize, r: i64, q: u64) -> QInt {
    if r < 0 || r as usize > n.min(m) {
        return BigInt::zero();
    }
    let r = r as u32;
    let qp = |k: u32| big(q).pow(k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..r {
        num *= (qp(n as u32) - qp(j)) * (qp(m as u32) - qp(j));
        den *= qp(r) - qp(j);
    }
    num / den
}

fn rank_histogram(tower: &FieldTower, n: usize, m: usize, cap: u128) -> Result<Vec<u128>> {
    let f = tower.base();
    let mut hist = vec![0u128; n.min(m) + 1];
    for x in matq::all_matrices(tower, n, m, 1, cap)? {
        hist[x.rank(f)] += 1;
    }
    Ok(hist)
}

/// `|M(n, m, r, q)|` by the requested method.
pub fn mat_count_with(n: usize, m: usize, r: i64, q: u64, method: Method<'_>) -> Result<QInt> {
    match method {
        Method::Closed => Ok(mat_count(n, m, r, q)),
        Method::Oracle(tower) => {
            check_q(tower, q)?;
            if r < 0 || r as usize > n.min(m) {
                return Ok(BigInt::zero());
            }
            let hist = rank_histogram(tower, n, m, matq::DEFAULT_ENUM_CAP)?;
            Ok(BigInt::from(hist[r as usize]))
        }
    }
}

fn check_q(tower: &FieldTower, q: u64) -> Result<()> {
    if tower.q() != q {
        return Err(Error::InvalidArgument(format!(
            "oracle tower has q = {}, asked for q = {q}",
            tower.q()
        )));
    }
    Ok(())
}

/// Histogram of `(rank X, tr(AX))` over all of M(n, F_q).
pub fn trace_rank_histogram(
    tower: &FieldTower,
    a: &Mat,
    cap: u128,
) -> Result<HashMap<(usize, u32), u128>> {
    let f = tower.base();
    let n = a.rows();
    let mut hist = HashMap::new();
    for x in matq::all_matrices(tower, n, n, 1, cap)? {
        let t = a.mul(&x, f).trace(f);
        *hist.entry((x.rank(f), t)).or_insert(0) += 1;
    }
    Ok(hist)
}

/// `|Y^0_{n,r}|` or `|Y^1_{n,r}|` for a rank-one `A`, in closed form.
pub fn y_count_closed(n: usize, r: usize, q: u64, class: TraceClass) -> Result<QInt> {
    if n == 0 || r > n {
        return Err(Error::InvalidArgument(format!(
            "need 0 <= r <= n and n >= 1, got n = {n}, r = {r}"
        )));
    }
    let r = r as i64;
    let big_m = |a: usize, rr: i64| BigRational::from_integer(mat_count(a, a, rr, q));
    let full = big_m(n, r) * q_pow(q, -1);
    let value = match class {
        TraceClass::Zero => {
            full + (q_pow(q, r) - q_pow(q, r - 1)) * big_m(n - 1, r)
                + (q_pow(q, r - 2) - q_pow(q, r - 1)) * big_m(n - 1, r - 1)
        }
        TraceClass::Nonzero => {
            full - q_pow(q, r - 1) * big_m(n - 1, r) + q_pow(q, r - 2) * big_m(n - 1, r - 1)
        }
    };
    to_integer(value, "trace-class count")
}

/// `|{X : rank X = r, tr(AX) = α}|` for α in the class (α = 1 for the
/// nonzero class).
pub fn y_count(
    tower: &FieldTower,
    a: &Mat,
    r: usize,
    class: TraceClass,
    method: Method<'_>,
) -> Result<QInt> {
    match method {
        Method::Closed => {
            let rank = a.rank(tower.base());
            if rank != 1 {
                return Err(Error::RankNotOne(rank));
            }
            y_count_closed(a.rows(), r, tower.q(), class)
        }
        Method::Oracle(oracle) => {
            let alpha = match class {
                TraceClass::Zero => 0,
                TraceClass::Nonzero => 1,
            };
            let hist = trace_rank_histogram(oracle, a, matq::DEFAULT_ENUM_CAP)?;
            Ok(BigInt::from(hist.get(&(r, alpha)).copied().unwrap_or(0)))
        }
    }
}

/// `|Y^0_{n,r}| - |Y^1_{n,r}| = q^r |M(n-1,n-1,r)| - q^{r-1} |M(n-1,n-1,r-1)|`.
pub fn y_diff(n: usize, r: usize, q: u64) -> Result<QInt> {
    if n == 0 || r > n {
        return Err(Error::InvalidArgument(format!(
            "need 0 <= r <= n and n >= 1, got n = {n}, r = {r}"
        )));
    }
    let r = r as i64;
    let v = q_pow(q, r) * BigRational::from_integer(mat_count(n - 1, n - 1, r, q))
        - q_pow(q, r - 1) * BigRational::from_integer(mat_count(n - 1, n - 1, r - 1, q));
    to_integer(v, "trace-class difference")
}

/// Both sides of the rank-sum identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub n: usize,
    pub a: usize,
    pub q: u64,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

/// `Σ_r |M(n,n,r,q)| (q;q)_{a-r} = q^{n²} (q;q)_{a-n}² / (q;q)_{a-2n}` for `a ≥ 2n`.
pub fn identity_check(n: usize, a: usize, q: u64) -> Result<IdentityReport> {
    if a < 2 * n {
        return Err(Error::InvalidArgument(format!(
            "identity needs a >= 2n, got a = {a}, n = {n}"
        )));
    }
    let mut lhs = BigInt::zero();
    for r in 0..=n {
        lhs += mat_count(n, n, r as i64, q) * pochhammer(q, (a - r) as i64)?;
    }
    let num = big(q).pow((n * n) as u32) * pochhammer(q, (a - n) as i64)?.pow(2);
    let den = pochhammer(q, (a - 2 * n) as i64)?;
    let rhs = to_integer(BigRational::new(num, den), "identity right-hand side")?;
    Ok(IdentityReport {
        n,
        a,
        q,
        holds: lhs == rhs,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    })
}

/// `|M(n,n,r)| = q^r |M(n,n-1,r)| + (q^n - q^{r-1}) |M(n,n-1,r-1)|`, `1 ≤ r ≤ n`.
pub fn rank_recurrence_check(n: usize, r: usize, q: u64) -> Result<bool> {
    if r == 0 || r > n {
        return Err(Error::InvalidArgument(format!(
            "recurrence needs 1 <= r <= n, got n = {n}, r = {r}"
        )));
    }
    let ri = r as i64;
    let lhs = BigRational::from_integer(mat_count(n, n, ri, q));
    let rhs = q_pow(q, ri) * BigRational::from_integer(mat_count(n, n - 1, ri, q))
        + (q_pow(q, n as i64) - q_pow(q, ri - 1))
            * BigRational::from_integer(mat_count(n, n - 1, ri - 1, q));
    Ok(lhs == rhs)
}
