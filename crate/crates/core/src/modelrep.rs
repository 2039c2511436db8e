//! The predicted module `ρ = θ|_{F^×} ⊗ Ind_{U_A}^{H_A} μ` of `M_{ψ_A}`, its
//! extensions `ρ̃` and `σ_χ` to `P_{ψ_A} = M_{ψ_A} N`, and exact character
//! identities relating them to the twisted Jacquet module.
//!
//! Everything is computed for `A = E_{1n}`. For `A = E_{11}` inputs are moved
//! to the corner by conjugating with `diag(w_0, 1)`, which carries `ψ_{E_{11}}`
//! to `ψ_{E_{1n}}`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::cuspidal::{theta_eval, ClassDatum, CuspidalEvaluator, RegularCharacter};
use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::ffield::{FFElem, FieldTower};
use crate::jacquet::{expected_dim, m_psi_subgroup, psi0, JacquetEngine, TwistSpec};
use crate::matq::{self, GroupSpec, Mat};

/// `ψ_0` of the sum of the superdiagonal entries of a square matrix.
pub fn psi_standard(tower: &FieldTower, u: &Mat) -> Result<CycNum> {
    let f = tower.base();
    let s = (0..u.rows().saturating_sub(1)).fold(0, |acc, i| f.add(acc, u.get(i, i + 1)));
    psi0(tower, FFElem::new(1, s))
}

fn is_unitriangular(u: &Mat) -> bool {
    let n = u.rows();
    (0..n).all(|i| u.get(i, i) == 1 && (0..i).all(|j| u.get(i, j) == 0))
}

/// `μ(u) = μ_1(u_1) μ_2(u_2)` on `U_A = U(n) × U(n)`.
pub fn mu_eval(tower: &FieldTower, u: &Mat) -> Result<CycNum> {
    let n = u.rows() / 2;
    if !u.is_square() || !u.rows().is_multiple_of(2) {
        return Err(Error::NotInGroup("U_A"));
    }
    if !u.block(0, n, n, n).is_zero() || !u.block(n, 0, n, n).is_zero() {
        return Err(Error::NotInGroup("U_A"));
    }
    let (u1, u2) = u.diag_blocks();
    if !is_unitriangular(&u1) || !is_unitriangular(&u2) {
        return Err(Error::NotInGroup("U_A"));
    }
    Ok(&psi_standard(tower, &u1)? * &psi_standard(tower, &u2)?)
}

/// `χ_j(γ_1^i) = ζ_{q-1}^{ij}` on F_q^×.
pub fn multiplicative_char(tower: &FieldTower, j: u64, a: FFElem) -> Result<CycNum> {
    let l = tower.cyclotomic_modulus();
    let order = tower.q() - 1;
    let e = tower.dlog(a)? % order;
    crate::cyclo::zeta(l, ((j % order) * e * (l / order)) as i64)
}

/// `(1/|H|) Σ_{x ∈ G} σ̇(x g x^{-1})`, with `σ̇ = 0` off H.
pub fn induced_char(
    tower: &FieldTower,
    group: &[Mat],
    subgroup: &[Mat],
    sigma: &(dyn Fn(&Mat) -> Result<CycNum> + Sync),
    g: &Mat,
) -> Result<CycNum> {
    let f = tower.base();
    let members: HashSet<&Mat> = subgroup.iter().collect();
    let l = tower.cyclotomic_modulus();
    let mut acc = CycNum::zero(l)?;
    for x in group {
        let xi = x.inverse(f).ok_or(Error::Singular)?;
        let c = x.mul(g, f).mul(&xi, f);
        if members.contains(&c) {
            acc = &acc + &sigma(&c)?;
        }
    }
    Ok(acc.div_int(&BigInt::from(subgroup.len())))
}

/// `Ind_H^G σ` for a degree-one σ, evaluated through left coset
/// representatives: `χ(g) = Σ_r σ̇(r^{-1} g r)`.
pub struct InducedCharacter<'t> {
    tower: &'t FieldTower,
    reps: Vec<(Mat, Mat)>,
    sigma: HashMap<Mat, CycNum>,
}

impl<'t> InducedCharacter<'t> {
    pub fn new(
        tower: &'t FieldTower,
        group: &[Mat],
        subgroup: &[Mat],
        sigma: impl Fn(&Mat) -> Result<CycNum>,
    ) -> Result<Self> {
        let f = tower.base();
        let sigma = subgroup
            .iter()
            .map(|h| Ok((h.clone(), sigma(h)?)))
            .collect::<Result<HashMap<_, _>>>()?;
        let mut covered: HashSet<Mat> = HashSet::with_capacity(group.len());
        let mut reps = Vec::new();
        for x in group {
            if covered.contains(x) {
                continue;
            }
            for h in subgroup {
                covered.insert(x.mul(h, f));
            }
            reps.push((x.clone(), x.inverse(f).ok_or(Error::Singular)?));
        }
        if covered.len() != group.len() || reps.len() * subgroup.len() != group.len() {
            return Err(Error::InvalidArgument(
                "subgroup does not tile the group by cosets".into(),
            ));
        }
        Ok(InducedCharacter { tower, reps, sigma })
    }

    /// `[G : H]`.
    pub fn degree(&self) -> usize {
        self.reps.len()
    }

    pub fn eval(&self, g: &Mat) -> Result<CycNum> {
        let f = self.tower.base();
        let mut acc = CycNum::zero(self.tower.cyclotomic_modulus())?;
        for (r, ri) in &self.reps {
            if let Some(v) = self.sigma.get(&ri.mul(g, f).mul(r, f)) {
                acc = &acc + v;
            }
        }
        Ok(acc)
    }

    /// Values on every element of a list.
    pub fn table(&self, elems: &[Mat]) -> Result<HashMap<Mat, CycNum>> {
        elems
            .par_iter()
            .map(|g| Ok((g.clone(), self.eval(g)?)))
            .collect()
    }
}

/// `(1/|G|) Σ |χ(g)|²` as an exact rational.
pub fn self_pairing<'a>(
    values: impl Iterator<Item = &'a CycNum>,
    order: usize,
) -> Result<BigRational> {
    let mut acc: Option<CycNum> = None;
    for v in values {
        let s = v.norm_sq();
        acc = Some(match acc {
            None => s,
            Some(a) => &a + &s,
        });
    }
    let total = match acc {
        None => return Ok(BigRational::zero()),
        Some(a) => a,
    };
    let r = total
        .as_rational()
        .ok_or_else(|| Error::Verification(format!("Σ|χ|² is not rational: {total}")))?;
    Ok(r / BigRational::from_integer(BigInt::from(order)))
}

/// `⟨χ, χ⟩ = 1` for `Ind_{U(n)}^{P_n} ψ`.
pub fn kirillov_irreducibility_check(tower: &FieldTower, n: usize) -> Result<bool> {
    let g = GroupSpec::Mirabolic(n).elements(tower)?;
    let h = GroupSpec::U(n).elements(tower)?;
    let ind = InducedCharacter::new(tower, &g, &h, |u| psi_standard(tower, u))?;
    let values = g.iter().map(|x| ind.eval(x)).collect::<Result<Vec<_>>>()?;
    Ok(self_pairing(values.iter(), g.len())?.is_one())
}

/// θ-independent data on `P_{ψ_A}`, computed once.
struct PData {
    elems: Vec<Mat>,
    scalar: Vec<FFElem>,
    core: Vec<CycNum>,
    datum: Vec<ClassDatum>,
}

/// Character-level model of `ρ`, `ρ̃` and `σ_χ`.
pub struct ModelChar<'t> {
    tower: &'t FieldTower,
    n: usize,
    twist: TwistSpec,
    transport: bool,
    chi1: HashMap<Mat, CycNum>,
    chi2: HashMap<Mat, CycNum>,
    corner: TwistSpec,
    pdata: OnceLock<PData>,
}

impl<'t> ModelChar<'t> {
    /// Accepts `A = E_{1n}` or `A = E_{11}`.
    pub fn new(tower: &'t FieldTower, twist: TwistSpec) -> Result<Self> {
        let n = twist.n();
        let transport = if twist.is_corner() {
            false
        } else if *twist.matrix() == Mat::unit(n, 0, 0, 1) {
            true
        } else {
            return Err(Error::InvalidArgument(format!(
                "the model is built for A = E_11 or E_1n, got {}",
                twist.matrix().to_text()
            )));
        };
        let u = GroupSpec::U(n).elements(tower)?;
        let m1 = GroupSpec::Mirabolic(n).elements(tower)?;
        let m2 = GroupSpec::MirabolicConj(n).elements(tower)?;
        let mu = |x: &Mat| psi_standard(tower, x);
        let chi1 = InducedCharacter::new(tower, &m1, &u, mu)?.table(&m1)?;
        let chi2 = InducedCharacter::new(tower, &m2, &u, mu)?.table(&m2)?;
        Ok(ModelChar {
            tower,
            n,
            twist,
            transport,
            chi1,
            chi2,
            corner: TwistSpec::corner(n),
            pdata: OnceLock::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn twist(&self) -> &TwistSpec {
        &self.twist
    }

    /// `n = 1`: `H_A` is trivial and `ρ = θ|_{F^×}`.
    pub fn is_degenerate(&self) -> bool {
        self.n == 1
    }

    /// `deg ρ = ∏_{i<n} (q^i - 1)²`.
    pub fn degree(&self) -> BigInt {
        expected_dim(self.tower.q(), self.n)
    }

    /// `p ↦ diag(w0, 1) p diag(w0, 1)^{-1}` when the twist is `E_{11}`.
    fn to_corner(&self, p: &Mat) -> Mat {
        if !self.transport {
            return p.clone();
        }
        let f = self.tower.base();
        let n = self.n;
        let d = Mat::block_diag(&Mat::w0(n, 1), &Mat::identity(n, 1));
        d.mul(p, f).mul(&d, f)
    }

    fn split_corner(&self, p: &Mat) -> Result<(FFElem, Mat)> {
        let f = self.tower.base();
        let n = self.n;
        if p.rows() != 2 * n || !p.is_square() || !p.block(n, 0, n, n).is_zero() {
            return Err(Error::NotInGroup("P_psiA"));
        }
        let a = p.get(n - 1, n - 1);
        let ai = f.inv(a).ok_or(Error::NotInGroup("P_psiA"))?;
        Ok((FFElem::new(1, a), p.scale(ai, f)))
    }

    /// `χ_ρ` on `h ∈ H_A`, zero-free lookups into the induced tables.
    fn rho_h(&self, h: &Mat) -> Result<CycNum> {
        let (h1, h2) = h.diag_blocks();
        match (self.chi1.get(&h1), self.chi2.get(&h2)) {
            (Some(a), Some(b)) => Ok(a * b),
            _ => Err(Error::NotInGroup("H_A")),
        }
    }

    /// `χ_ρ̃` on `hn ∈ H_A N`; independent of θ.
    fn core(&self, p: &Mat) -> Result<CycNum> {
        let f = self.tower.base();
        let n = self.n;
        let (m1, m2) = p.diag_blocks();
        let m2i = m2.inverse(f).ok_or(Error::NotInGroup("P_psiA"))?;
        let x = p.block(0, n, n, n).mul(&m2i, f);
        let h = Mat::block_diag(&m1, &m2);
        Ok(&self.corner.psi(self.tower, &x)? * &self.rho_h(&h)?)
    }

    fn check_m(&self, m: &Mat) -> Result<Mat> {
        let mc = self.to_corner(m);
        if !self.corner.stabilizer_contains(self.tower, &mc) {
            return Err(Error::NotInGroup("M_psiA"));
        }
        Ok(mc)
    }

    fn check_p(&self, p: &Mat) -> Result<Mat> {
        let pc = self.to_corner(p);
        let n = self.n;
        if pc.rows() != 2 * n || !pc.is_square() || !pc.block(n, 0, n, n).is_zero() {
            return Err(Error::NotInGroup("P_psiA"));
        }
        let (m1, m2) = pc.diag_blocks();
        let m = Mat::block_diag(&m1, &m2);
        if !self.corner.stabilizer_contains(self.tower, &m) {
            return Err(Error::NotInGroup("P_psiA"));
        }
        Ok(pc)
    }

    /// `χ_ρ(z h) = θ(z) χ_{Ind μ}(h)` on `M_{ψ_A}`.
    pub fn rho_char(&self, theta: &RegularCharacter, m: &Mat) -> Result<CycNum> {
        let mc = self.check_m(m)?;
        let (a, h) = self.split_corner(&mc)?;
        let t = theta_eval(self.tower, theta, a)?;
        if self.is_degenerate() {
            return Ok(t);
        }
        Ok(&t * &self.rho_h(&h)?)
    }

    /// `χ_ρ̃(m n) = ψ_A(m n m^{-1}) χ_ρ(m)` on `P_{ψ_A}`.
    pub fn rho_tilde(&self, theta: &RegularCharacter, p: &Mat) -> Result<CycNum> {
        let pc = self.check_p(p)?;
        let (a, h) = self.split_corner(&pc)?;
        Ok(&theta_eval(self.tower, theta, a)? * &self.core(&h)?)
    }

    /// `χ_{σ_χ}(z h n) = χ(z) χ_ρ̃(h n)` for `χ = χ_j`.
    pub fn sigma_chi(&self, j: u64, p: &Mat) -> Result<CycNum> {
        let pc = self.check_p(p)?;
        let (a, h) = self.split_corner(&pc)?;
        Ok(&multiplicative_char(self.tower, j, a)? * &self.core(&h)?)
    }

    /// Number of characters of F_q^×.
    pub fn chi_count(&self) -> u64 {
        self.tower.q() - 1
    }

    fn pdata(&self) -> Result<&PData> {
        if let Some(d) = self.pdata.get() {
            return Ok(d);
        }
        let elems = GroupSpec::PPsiA(self.corner.matrix().clone()).elements(self.tower)?;
        let ev = CuspidalEvaluator::new(self.tower, 2 * self.n as u32)?;
        let rows = elems
            .par_iter()
            .map(|p| {
                let (a, h) = self.split_corner(p)?;
                Ok((a, self.core(&h)?, ev.classify(p)?))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut scalar = Vec::with_capacity(rows.len());
        let mut core = Vec::with_capacity(rows.len());
        let mut datum = Vec::with_capacity(rows.len());
        for (a, c, d) in rows {
            scalar.push(a);
            core.push(c);
            datum.push(d);
        }
        let _ = self.pdata.set(PData {
            elems,
            scalar,
            core,
            datum,
        });
        Ok(self.pdata.get().unwrap())
    }

    /// `(1/|P_{ψ_A}|) Σ_p Θ_θ(p) conj(χ_{σ_χ}(p))` for `χ = χ_j`.
    pub fn hom_pairing(&self, theta: &RegularCharacter, j: u64) -> Result<BigInt> {
        let pd = self.pdata()?;
        let ev = CuspidalEvaluator::new(self.tower, 2 * self.n as u32)?;
        let l = self.tower.cyclotomic_modulus();
        // Σ over elements sharing (datum, z) of conj(core)
        let mut groups: BTreeMap<(ClassDatum, FFElem), CycNum> = BTreeMap::new();
        for i in 0..pd.elems.len() {
            if pd.datum[i] == ClassDatum::Vanishing {
                continue;
            }
            let e = groups
                .entry((pd.datum[i], pd.scalar[i]))
                .or_insert_with(|| CycNum::zero(l).unwrap());
            *e = &*e + &pd.core[i].conj();
        }
        let mut total = CycNum::zero(l)?;
        for ((d, a), s) in &groups {
            let w = &ev.value(theta, d) * &multiplicative_char(self.tower, j, *a)?.conj();
            total = &total + &(&w * s);
        }
        let v = total.div_int(&BigInt::from(pd.elems.len()));
        match v.as_integer() {
            Some(k) if !k.is_negative() => Ok(k),
            _ => Err(Error::Verification(format!(
                "Hom pairing is not a nonnegative integer: {v}"
            ))),
        }
    }

    /// `⟨χ_ρ, χ_ρ⟩` over `M_{ψ_A}`.
    pub fn rho_self_pairing(&self, theta: &RegularCharacter) -> Result<BigRational> {
        let ms = m_psi_subgroup(self.tower, &self.corner, matq::DEFAULT_ENUM_CAP)?;
        let vals = ms
            .par_iter()
            .map(|m| self.rho_char(theta, &self.to_corner(m)))
            .collect::<Result<Vec<_>>>()?;
        self_pairing(vals.iter(), ms.len())
    }

    /// `⟨χ_ρ̃, χ_ρ̃⟩` over `P_{ψ_A}`.
    pub fn rho_tilde_self_pairing(&self, theta: &RegularCharacter) -> Result<BigRational> {
        let pd = self.pdata()?;
        let vals = pd
            .scalar
            .par_iter()
            .zip(pd.core.par_iter())
            .map(|(a, c)| Ok(&theta_eval(self.tower, theta, *a)? * c))
            .collect::<Result<Vec<_>>>()?;
        self_pairing(vals.iter(), pd.elems.len())
    }

    /// `χ_ρ̃(z) = θ(z) deg ρ` for every scalar z.
    pub fn central_character_check(&self, theta: &RegularCharacter) -> Result<bool> {
        let f = self.tower.base();
        let id = Mat::identity(2 * self.n, 1);
        let deg = self.degree();
        for z in 1..f.size() {
            let v = self.rho_tilde(theta, &self.to_corner(&id.scale(z, f)))?;
            let want = theta_eval(self.tower, theta, FFElem::new(1, z))?.scale_int(&deg);
            if v != want {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `χ_ρ̃(x n) = ψ_A(n) χ_ρ(x)` for `x ∈ U_A`, `n ∈ N`.
    pub fn restriction_check(&self, theta: &RegularCharacter) -> Result<bool> {
        let f = self.tower.base();
        let n = self.n;
        let ua = GroupSpec::UA(n).elements(self.tower)?;
        let xs = matq::all_matrices(self.tower, n, n, 1, matq::DEFAULT_ENUM_CAP)?;
        for x in &ua {
            let rx = self.rho_char(theta, x)?;
            for y in &xs {
                let p = x.mul(&Mat::unipotent_block(y), f);
                let lhs = self.rho_tilde(theta, &self.to_corner(&p))?;
                if lhs != &self.corner.psi(self.tower, y)? * &rx {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `σ_{χ_i}` and `σ_{χ_j}` differ on some scalar for every `i ≠ j`.
    pub fn sigma_distinct_check(&self) -> Result<bool> {
        let f = self.tower.base();
        let id = Mat::identity(2 * self.n, 1);
        let k = self.chi_count();
        let cols = (0..k)
            .map(|j| {
                (1..f.size())
                    .map(|z| self.sigma_chi(j, &self.to_corner(&id.scale(z, f))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        for i in 0..cols.len() {
            for j in i + 1..cols.len() {
                if cols[i] == cols[j] {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// `ψ(x n) = μ(x) ψ_A(n)` for `x ∈ U_A`, `n ∈ N`, `A = E_{1n}`.
pub fn psi_factorization_check(tower: &FieldTower, n: usize) -> Result<bool> {
    let f = tower.base();
    let corner = TwistSpec::corner(n);
    let ua = GroupSpec::UA(n).elements(tower)?;
    let xs = matq::all_matrices(tower, n, n, 1, matq::DEFAULT_ENUM_CAP)?;
    for x in &ua {
        let mx = mu_eval(tower, x)?;
        for y in &xs {
            let u = x.mul(&Mat::unipotent_block(y), f);
            if psi_standard(tower, &u)? != &mx * &corner.psi(tower, y)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Outcome of comparing `Ind_U^{P_{ψ_A}} ψ` with `⊕_χ σ_χ` pointwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub elements: usize,
    pub index: usize,
    pub expected_index: String,
    pub mismatches: usize,
    pub holds: bool,
}

/// `χ_{Ind_U^{P_{ψ_A}} ψ}(p) = Σ_χ χ_{σ_χ}(p)` on all of `P_{ψ_A}`.
pub fn decomposition_check(model: &ModelChar<'_>) -> Result<DecompositionReport> {
    let tower = model.tower;
    let pd = model.pdata()?;
    let u = GroupSpec::U(2 * model.n).elements(tower)?;
    let ind = InducedCharacter::new(tower, &pd.elems, &u, |x| psi_standard(tower, x))?;
    let k = model.chi_count();
    let mismatches: usize = (0..pd.elems.len())
        .into_par_iter()
        .map(|i| -> Result<usize> {
            let lhs = ind.eval(&pd.elems[i])?;
            let mut rhs = CycNum::zero(tower.cyclotomic_modulus())?;
            for j in 0..k {
                rhs = &rhs + &multiplicative_char(tower, j, pd.scalar[i])?;
            }
            Ok(usize::from(lhs != &rhs * &pd.core[i]))
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    let expected = BigInt::from(k) * model.degree();
    Ok(DecompositionReport {
        elements: pd.elems.len(),
        index: ind.degree(),
        holds: mismatches == 0 && BigInt::from(ind.degree()) == expected,
        expected_index: expected.to_string(),
        mismatches,
    })
}

/// One row of the main comparison: an element and both character values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharRow {
    pub element: String,
    pub jacquet: CycNum,
    pub model: CycNum,
}

/// Per-orbit outcome of the main comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitResult {
    pub theta: u64,
    pub dimension: String,
    pub mismatches: usize,
    pub first_mismatch: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<CharRow>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MainTheoremReport {
    pub q: u64,
    pub n: usize,
    pub twist: String,
    pub elements: usize,
    pub expected_dimension: String,
    pub degenerate: bool,
    pub orbits: Vec<OrbitResult>,
    pub holds: bool,
}

/// `Θ_{N,ψ_A}(m) = χ_ρ(m)` for every `m ∈ M_{ψ_A}` and every given θ.
pub fn main_theorem_check(
    tower: &FieldTower,
    thetas: &[RegularCharacter],
    twist: &TwistSpec,
    with_tables: bool,
) -> Result<MainTheoremReport> {
    let cap = matq::DEFAULT_ENUM_CAP;
    let model = ModelChar::new(tower, twist.clone())?;
    let engine = JacquetEngine::new(tower, twist.clone(), cap)?;
    let ms = m_psi_subgroup(tower, twist, cap)?;
    let jac = engine.table(thetas, &ms)?;
    let deg = model.degree();
    let mut orbits = Vec::with_capacity(thetas.len());
    let id_pos = ms.iter().position(Mat::is_identity);
    for (t, theta) in thetas.iter().enumerate() {
        let model_vals = ms
            .par_iter()
            .map(|m| model.rho_char(theta, m))
            .collect::<Result<Vec<_>>>()?;
        let mut mismatches = 0;
        let mut first = None;
        for (i, m) in ms.iter().enumerate() {
            if jac[i][t] != model_vals[i] {
                mismatches += 1;
                first.get_or_insert_with(|| m.to_text());
            }
        }
        let dimension = id_pos.map(|i| jac[i][t].to_string()).unwrap_or_default();
        let table = with_tables.then(|| {
            ms.iter()
                .enumerate()
                .map(|(i, m)| CharRow {
                    element: m.to_text(),
                    jacquet: jac[i][t].clone(),
                    model: model_vals[i].clone(),
                })
                .collect()
        });
        orbits.push(OrbitResult {
            theta: theta.index(),
            dimension,
            mismatches,
            first_mismatch: first,
            table,
        });
    }
    let holds = orbits
        .iter()
        .all(|o| o.mismatches == 0 && o.dimension == deg.to_string());
    Ok(MainTheoremReport {
        q: tower.q(),
        n: twist.n(),
        twist: twist.matrix().to_text(),
        elements: ms.len(),
        expected_dimension: deg.to_string(),
        degenerate: model.is_degenerate(),
        orbits,
        holds,
    })
}
