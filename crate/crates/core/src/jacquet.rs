//! Twisted Jacquet modules of cuspidal representations of GL(2n, F_q) with
//! respect to `P = MN` and the character `ψ_A([[1, X], [0, 1]]) = ψ_0(tr(AX))`.
//!
//! The character of `π_{N,ψ_A}` on `m ∈ M_{ψ_A}` is the average
//!
//! ```text
//! Θ_{N,ψ_A}(m) = q^{-n²} Σ_{X} Θ_π(m n_X) conj(ψ_A(n_X)).
//! ```
//!
//! The sum over X only depends on the class data of `m n_X` and the trace
//! exponent of `ψ_A(n_X)`, so [`JacquetEngine`] first reduces it to a
//! θ-independent [`Profile`] and then evaluates any number of characters.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::counting::{pochhammer, y_diff};
use crate::cuspidal::{ClassDatum, CuspidalEvaluator, RegularCharacter};
use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::ffield::{FFElem, FieldTower};
use crate::matq::{self, GroupSpec, Mat};

/// The additive character `x ↦ ζ_p^{Tr(x)}` of F_q.
pub fn psi0(tower: &FieldTower, x: FFElem) -> Result<CycNum> {
    if x.level != 1 {
        return Err(Error::LevelMismatch(x.level, 1));
    }
    let l = tower.cyclotomic_modulus();
    let p = tower.p() as u64;
    let t = tower.abs_trace(tower.elem(1, x.code)?.code) as u64;
    crate::cyclo::zeta(l, (t * (l / p)) as i64)
}

/// An `n × n` matrix `A` over F_q together with its rank.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwistSpec {
    #[serde(serialize_with = "ser_mat")]
    a: Mat,
    rank: usize,
}

fn ser_mat<S: serde::Serializer>(m: &Mat, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&m.to_text())
}

impl TwistSpec {
    pub fn from_matrix(tower: &FieldTower, a: Mat) -> Result<Self> {
        if !a.is_square() || a.rows() == 0 {
            return Err(Error::NotSquare {
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        if a.level() != 1 {
            return Err(Error::LevelMismatch(a.level(), 1));
        }
        let rank = a.rank(tower.base());
        Ok(TwistSpec { a, rank })
    }

    /// `A = E_{11}`.
    pub fn e11(n: usize) -> Self {
        TwistSpec {
            a: Mat::unit(n, 0, 0, 1),
            rank: 1,
        }
    }

    /// `A = E_{1n}`.
    pub fn corner(n: usize) -> Self {
        TwistSpec {
            a: Mat::unit(n, 0, n - 1, 1),
            rank: 1,
        }
    }

    /// `A = 0`: the ordinary Jacquet module.
    pub fn zero(n: usize) -> Self {
        TwistSpec {
            a: Mat::zeros(n, n, 1),
            rank: 0,
        }
    }

    pub fn matrix(&self) -> &Mat {
        &self.a
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_corner(&self) -> bool {
        matq::is_corner(&self.a)
    }

    /// Exponent `s` with `ψ_A(n_X) = ζ_p^s`.
    pub fn psi_exponent(&self, tower: &FieldTower, x: &Mat) -> u32 {
        matq::psi_a_exponent(tower, &self.a, x)
    }

    /// `ψ_A(n_X)`.
    pub fn psi(&self, tower: &FieldTower, x: &Mat) -> Result<CycNum> {
        let l = tower.cyclotomic_modulus();
        let s = self.psi_exponent(tower, x) as u64;
        crate::cyclo::zeta(l, (s * (l / tower.p() as u64)) as i64)
    }

    /// Whether a `2n × 2n` matrix lies in `M_{ψ_A}`.
    pub fn stabilizer_contains(&self, tower: &FieldTower, m: &Mat) -> bool {
        let n = self.n();
        if m.rows() != 2 * n || !m.is_square() || m.level() != 1 {
            return false;
        }
        let f = tower.base();
        if !m.block(0, n, n, n).is_zero() || !m.block(n, 0, n, n).is_zero() {
            return false;
        }
        let (m1, m2) = m.diag_blocks();
        match (m1.inverse(f), m2.inverse(f)) {
            (Some(_), Some(m2_inv)) => matq::stabilizes_psi_a(tower, &self.a, &m1, &m2_inv),
            _ => false,
        }
    }
}

/// `M_{ψ_A}` as a list of block-diagonal matrices.
pub fn m_psi_subgroup(tower: &FieldTower, twist: &TwistSpec, cap: u128) -> Result<Vec<Mat>> {
    matq::enumerate(tower, &GroupSpec::MPsiA(twist.a.clone()), cap)
}

/// Multiset of `(class datum of m n_X, ψ_A exponent of n_X)` over all X.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Profile {
    entries: Vec<(ClassDatum, u32, i64)>,
}

impl Profile {
    pub fn entries(&self) -> &[(ClassDatum, u32, i64)] {
        &self.entries
    }

    /// Whether every term has a vanishing cuspidal character value.
    pub fn is_vanishing(&self) -> bool {
        self.entries
            .iter()
            .all(|(d, _, _)| *d == ClassDatum::Vanishing)
    }
}

type Tally = BTreeMap<(ClassDatum, u32), i64>;

fn merge(mut a: Tally, b: Tally) -> Tally {
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    a
}

/// Dimension strategies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// Average over all of N.
    Direct,
    /// Closed form grouped by rank and trace class of X (rank-one A only).
    Stratified,
}

/// Shared state for evaluating `Θ_{N,ψ_A}` for a fixed `(q, n, A)`.
pub struct JacquetEngine<'t> {
    tower: &'t FieldTower,
    evaluator: CuspidalEvaluator<'t>,
    twist: TwistSpec,
    xs: Vec<Mat>,
    psi_exps: Vec<u32>,
}

impl<'t> JacquetEngine<'t> {
    pub fn new(tower: &'t FieldTower, twist: TwistSpec, cap: u128) -> Result<Self> {
        let n = twist.n();
        let evaluator = CuspidalEvaluator::new(tower, 2 * n as u32)?;
        let xs = matq::all_matrices(tower, n, n, 1, cap)?;
        let psi_exps = xs.iter().map(|x| twist.psi_exponent(tower, x)).collect();
        Ok(JacquetEngine {
            tower,
            evaluator,
            twist,
            xs,
            psi_exps,
        })
    }

    pub fn tower(&self) -> &'t FieldTower {
        self.tower
    }

    pub fn twist(&self) -> &TwistSpec {
        &self.twist
    }

    pub fn evaluator(&self) -> &CuspidalEvaluator<'t> {
        &self.evaluator
    }

    /// `|N| = q^{n²}`.
    pub fn n_order(&self) -> usize {
        self.xs.len()
    }

    /// Profile of any `m = diag(m1, m2)` in M, without checking `m ∈ M_{ψ_A}`.
    pub fn profile_unchecked(&self, m: &Mat) -> Result<Profile> {
        let n = self.twist.n();
        let f = self.tower.base();
        let (m1, m2) = m.diag_blocks();
        let tally = self
            .xs
            .par_iter()
            .zip(self.psi_exps.par_iter())
            .try_fold(Tally::new, |mut acc, (x, &s)| -> Result<Tally> {
                let g = Mat::block_upper(&m1, &m1.mul(x, f), &m2);
                debug_assert_eq!(g.rows(), 2 * n);
                let datum = self.evaluator.classify(&g)?;
                *acc.entry((datum, s)).or_insert(0) += 1;
                Ok(acc)
            })
            .try_reduce(Tally::new, |a, b| Ok(merge(a, b)))?;
        Ok(Profile {
            entries: tally.into_iter().map(|((d, s), c)| (d, s, c)).collect(),
        })
    }

    /// Profile of `m`, which must lie in `M_{ψ_A}`.
    pub fn profile(&self, m: &Mat) -> Result<Profile> {
        if !self.twist.stabilizer_contains(self.tower, m) {
            return Err(Error::NotInGroup("M_psiA"));
        }
        self.profile_unchecked(m)
    }

    /// `Θ_{N,ψ_A}` evaluated from a profile.
    pub fn char_from_profile(&self, theta: &RegularCharacter, profile: &Profile) -> CycNum {
        let l = self.tower.cyclotomic_modulus();
        let step = l / self.tower.p() as u64;
        let p = self.tower.p() as u64;
        let mut counts = vec![0i128; l as usize];
        for (datum, s, c) in &profile.entries {
            // conj(ζ_p^s) = ζ_p^{p - s}
            let shift = ((p - *s as u64) % p) * step;
            self.evaluator
                .accumulate(theta, datum, *c as i128, shift, &mut counts);
        }
        CycNum::from_exponent_counts(l, &counts)
            .expect("positive modulus")
            .div_int(&BigInt::from(self.n_order()))
    }

    /// `Θ_{N,ψ_A}(m)`.
    pub fn jacquet_char(&self, theta: &RegularCharacter, m: &Mat) -> Result<CycNum> {
        Ok(self.char_from_profile(theta, &self.profile(m)?))
    }

    /// `Θ_{N,ψ_A}(m)` for several characters at once.
    pub fn jacquet_chars(&self, thetas: &[RegularCharacter], m: &Mat) -> Result<Vec<CycNum>> {
        let profile = self.profile(m)?;
        Ok(thetas
            .iter()
            .map(|t| self.char_from_profile(t, &profile))
            .collect())
    }

    /// Rows indexed by the elements `ms`, columns by `thetas`.
    pub fn table(&self, thetas: &[RegularCharacter], ms: &[Mat]) -> Result<Vec<Vec<CycNum>>> {
        ms.par_iter()
            .map(|m| self.jacquet_chars(thetas, m))
            .collect()
    }

    /// `dim π_{N,ψ_A}`.
    pub fn dim(&self, theta: &RegularCharacter, strategy: Strategy) -> Result<BigInt> {
        match strategy {
            Strategy::Direct => {
                let id = Mat::identity(2 * self.twist.n(), 1);
                let v = self.jacquet_char(theta, &id)?;
                match v.as_integer() {
                    Some(d) if !d.is_negative() => Ok(d),
                    _ => Err(Error::Verification(format!(
                        "averaged sum at the identity is not a nonnegative integer: {v}"
                    ))),
                }
            }
            Strategy::Stratified => stratified_dim(self.tower.q(), &self.twist),
        }
    }
}

/// `q^{-n²} Σ_r -(q;q)_{2n-1-r} (|Y⁰_{n,r}| - |Y¹_{n,r}|)`, valid for rank-one A.
pub fn stratified_dim(q: u64, twist: &TwistSpec) -> Result<BigInt> {
    if twist.rank != 1 {
        return Err(Error::RankNotOne(twist.rank));
    }
    let n = twist.n();
    let mut total = BigInt::zero();
    for r in 0..=n {
        total -= pochhammer(q, (2 * n - 1 - r) as i64)? * y_diff(n, r, q)?;
    }
    let order = BigInt::from(q).pow((n * n) as u32);
    if !(&total % &order).is_zero() || total.is_negative() {
        return Err(Error::Verification(format!(
            "stratified sum {total} is not a nonnegative multiple of {order}"
        )));
    }
    Ok(total / order)
}

/// `∏_{i=1}^{n-1} (q^i - 1)²`.
pub fn expected_dim(q: u64, n: usize) -> BigInt {
    (1..n as u32)
        .map(|i| {
            let v = BigInt::from(q).pow(i) - 1;
            &v * &v
        })
        .product()
}

/// `Θ_{N,ψ_A}(m)` with a fresh engine.
pub fn jacquet_char(
    tower: &FieldTower,
    theta: &RegularCharacter,
    twist: &TwistSpec,
    m: &Mat,
) -> Result<CycNum> {
    JacquetEngine::new(tower, twist.clone(), matq::DEFAULT_ENUM_CAP)?.jacquet_char(theta, m)
}

/// `dim π_{N,ψ_A}` with a fresh engine.
pub fn jacquet_dim(
    tower: &FieldTower,
    theta: &RegularCharacter,
    twist: &TwistSpec,
    strategy: Strategy,
) -> Result<BigInt> {
    match strategy {
        Strategy::Stratified => stratified_dim(tower.q(), twist),
        Strategy::Direct => {
            JacquetEngine::new(tower, twist.clone(), matq::DEFAULT_ENUM_CAP)?.dim(theta, strategy)
        }
    }
}

/// Result of comparing `A = E_{11}` with `B = A w_0 = E_{1n}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugationReport {
    pub elements: usize,
    pub dim_a: String,
    pub dim_b: String,
    pub mismatches: usize,
    pub holds: bool,
}

/// Checks `Θ_{N,ψ_A}(diag(m1, m2)) = Θ_{N,ψ_B}(diag(w0 m1 w0, m2))` for every
/// element of `M_{ψ_A}`, with `A = E_{11}`, `B = E_{1n}`.
pub fn conjugation_relation_check(
    tower: &FieldTower,
    thetas: &[RegularCharacter],
    n: usize,
    cap: u128,
) -> Result<ConjugationReport> {
    let f = tower.base();
    let a = TwistSpec::e11(n);
    let b = TwistSpec::from_matrix(tower, a.a.mul(&Mat::w0(n, 1), f))?;
    let ea = JacquetEngine::new(tower, a.clone(), cap)?;
    let eb = JacquetEngine::new(tower, b, cap)?;
    let w = Mat::w0(n, 1);
    let ms = m_psi_subgroup(tower, &a, cap)?;
    let mismatches: usize = ms
        .par_iter()
        .map(|m| -> Result<usize> {
            let (m1, m2) = m.diag_blocks();
            let mb = Mat::block_diag(&w.mul(&m1, f).mul(&w, f), &m2);
            let va = ea.jacquet_chars(thetas, m)?;
            let vb = eb.jacquet_chars(thetas, &mb)?;
            Ok(va.iter().zip(&vb).filter(|(x, y)| x != y).count())
        })
        .try_reduce(|| 0, |x, y| Ok(x + y))?;
    let (dim_a, dim_b) = match thetas.first() {
        Some(t) => (
            ea.dim(t, Strategy::Direct)?.to_string(),
            eb.dim(t, Strategy::Direct)?.to_string(),
        ),
        None => (String::new(), String::new()),
    };
    Ok(ConjugationReport {
        elements: ms.len(),
        holds: mismatches == 0 && dim_a == dim_b,
        dim_a,
        dim_b,
        mismatches,
    })
}
