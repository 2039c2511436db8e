//! Matrices over a tower level and enumeration of the finite groups the
//! verification quantifies over.
//!
//! Every matrix carries the level of its entries. Block groups living inside
//! GL(2n) (N, U_A, H_A, M_{ψ_A}, P_{ψ_A}) are enumerated as full 2n×2n matrices.

use std::fmt;

use crate::error::{Error, Result};
use crate::ffield::{FFElem, FieldLevel, FieldTower, Poly};

/// Default cap on the number of candidates an enumeration may scan.
pub const DEFAULT_ENUM_CAP: u128 = 1 << 26;

/// Dense row-major matrix with entries in one tower level.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    rows: usize,
    cols: usize,
    level: u32,
    data: Vec<u32>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat[L{}]({})", self.level, self.to_text())
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize, level: u32) -> Mat {
        Mat {
            rows,
            cols,
            level,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, level: u32) -> Mat {
        let mut m = Mat::zeros(n, n, level);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Matrix unit `E_{ij}` (0-based indices).
    pub fn unit(n: usize, i: usize, j: usize, level: u32) -> Mat {
        let mut m = Mat::zeros(n, n, level);
        m.data[i * n + j] = 1;
        m
    }

    /// The antidiagonal permutation matrix.
    pub fn w0(n: usize, level: u32) -> Mat {
        let mut m = Mat::zeros(n, n, level);
        for i in 0..n {
            m.data[i * n + (n - 1 - i)] = 1;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, level: u32, data: Vec<u32>) -> Result<Mat> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Mat {
            rows,
            cols,
            level,
            data,
        })
    }

    pub fn from_rows(level: u32, rows: &[Vec<u32>]) -> Result<Mat> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Mat::from_vec(r, c, level, rows.concat())
    }

    /// Parses the text format `a,b;c,d` (rows split by `;`, entries by `,`),
    /// each entry the integer code of a field element of the given level.
    pub fn parse(text: &str, tower: &FieldTower, level: u32) -> Result<Mat> {
        let size = tower.level(level)?.size();
        let mut rows = Vec::new();
        for row in text.trim().split(';') {
            let mut entries = Vec::new();
            for tok in row.split(',') {
                let tok = tok.trim();
                let v: u32 = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad matrix entry {tok:?}")))?;
                if v >= size {
                    return Err(Error::Parse(format!(
                        "entry {v} is not an element of a field with {size} elements"
                    )));
                }
                entries.push(v);
            }
            rows.push(entries);
        }
        Mat::from_rows(level, &rows).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_text(&self) -> String {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(u32::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn elem(&self, i: usize, j: usize) -> FFElem {
        FFElem::new(self.level, self.get(i, j))
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Row-major entry list with `0` for zero and `1 + dlog` otherwise.
    pub fn key(&self, f: &FieldLevel) -> Vec<u32> {
        self.data
            .iter()
            .map(|&c| f.log(c).map_or(0, |l| l + 1))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&c| c == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u32::from(i == j)))
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows, self.level);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat, f: &FieldLevel) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Mat::zeros(self.rows, other.cols, self.level);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let idx = i * out.cols + j;
                        out.data[idx] = f.add(out.data[idx], f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Mat, f: &FieldLevel) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Mat {
            data,
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &Mat, f: &FieldLevel) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Mat {
            data,
            ..self.clone()
        }
    }

    pub fn scale(&self, c: u32, f: &FieldLevel) -> Mat {
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        Mat {
            data,
            ..self.clone()
        }
    }

    pub fn trace(&self, f: &FieldLevel) -> u32 {
        (0..self.rows.min(self.cols)).fold(0, |acc, i| f.add(acc, self.get(i, i)))
    }

    /// Row-echelon rank.
    pub fn rank(&self, f: &FieldLevel) -> usize {
        let mut a = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(piv) = (rank..rows).find(|&r| a[r * cols + col] != 0) else {
                continue;
            };
            if piv != rank {
                for c in 0..cols {
                    a.swap(piv * cols + c, rank * cols + c);
                }
            }
            let inv = f.inv(a[rank * cols + col]).unwrap();
            for r in rank + 1..rows {
                let u = f.mul(a[r * cols + col], inv);
                if u == 0 {
                    continue;
                }
                for c in col..cols {
                    a[r * cols + c] = f.sub(a[r * cols + c], f.mul(u, a[rank * cols + c]));
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn inverse(&self, f: &FieldLevel) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut inv = Mat::identity(n, self.level).data;
        for col in 0..n {
            let piv = (col..n).find(|&r| a[r * n + col] != 0)?;
            if piv != col {
                for c in 0..n {
                    a.swap(piv * n + c, col * n + c);
                    inv.swap(piv * n + c, col * n + c);
                }
            }
            let pinv = f.inv(a[col * n + col]).unwrap();
            for c in 0..n {
                a[col * n + c] = f.mul(a[col * n + c], pinv);
                inv[col * n + c] = f.mul(inv[col * n + c], pinv);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let u = a[r * n + col];
                if u == 0 {
                    continue;
                }
                for c in 0..n {
                    a[r * n + c] = f.sub(a[r * n + c], f.mul(u, a[col * n + c]));
                    inv[r * n + c] = f.sub(inv[r * n + c], f.mul(u, inv[col * n + c]));
                }
            }
        }
        Some(Mat {
            rows: n,
            cols: n,
            level: self.level,
            data: inv,
        })
    }

    /// Characteristic polynomial `det(x I - g)` by reduction to Hessenberg
    /// form.
    pub fn charpoly_in(&self, f: &FieldLevel) -> Result<Poly> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut h = self.data.clone();
        for j in 0..n.saturating_sub(2) {
            let Some(i) = (j + 1..n).find(|&i| h[i * n + j] != 0) else {
                continue;
            };
            if i != j + 1 {
                for c in 0..n {
                    h.swap(i * n + c, (j + 1) * n + c);
                }
                for r in 0..n {
                    h.swap(r * n + i, r * n + j + 1);
                }
            }
            let inv = f.inv(h[(j + 1) * n + j]).unwrap();
            for k in j + 2..n {
                let u = f.mul(h[k * n + j], inv);
                if u == 0 {
                    continue;
                }
                for c in 0..n {
                    h[k * n + c] = f.sub(h[k * n + c], f.mul(u, h[(j + 1) * n + c]));
                }
                for r in 0..n {
                    h[r * n + j + 1] = f.add(h[r * n + j + 1], f.mul(u, h[r * n + k]));
                }
            }
        }
        // p_m = (x - h_mm) p_{m-1} - Σ_i h_im (Π_{j=i+1..m} h_{j,j-1}) p_{i-1}
        let at = |i: usize, j: usize| h[(i - 1) * n + (j - 1)];
        let mut ps: Vec<Poly> = vec![Poly::one()];
        for m in 1..=n {
            let mut pm = Poly::linear(at(m, m), f).mul(&ps[m - 1], f);
            let mut t = 1u32;
            for i in (1..m).rev() {
                t = f.mul(t, at(i + 1, i));
                let c = f.mul(at(i, m), t);
                if c != 0 {
                    pm = pm.sub(&ps[i - 1].scale(c, f), f);
                }
            }
            ps.push(pm);
        }
        Ok(ps.pop().unwrap())
    }

    /// Entrywise image in a higher level.
    pub fn lift(&self, tower: &FieldTower, target: u32) -> Result<Mat> {
        if !target.is_multiple_of(self.level) {
            return Err(Error::NotDivisible {
                from: self.level,
                to: target,
            });
        }
        let src = tower.level(self.level)?;
        let dst = tower.level(target)?;
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            level: target,
            data: self
                .data
                .iter()
                .map(|&c| tower.embed_code(src, dst, c))
                .collect(),
        })
    }

    /// Sub-block `[r0, r0+h) × [c0, c0+w)`.
    pub fn block(&self, r0: usize, c0: usize, h: usize, w: usize) -> Mat {
        let mut out = Mat::zeros(h, w, self.level);
        for i in 0..h {
            for j in 0..w {
                out.set(i, j, self.get(r0 + i, c0 + j));
            }
        }
        out
    }

    fn paste(&mut self, r0: usize, c0: usize, b: &Mat) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j));
            }
        }
    }

    /// `[[a, b], [0, c]]`.
    pub fn block_upper(a: &Mat, b: &Mat, c: &Mat) -> Mat {
        let n1 = a.rows;
        let n2 = c.rows;
        let mut out = Mat::zeros(n1 + n2, n1 + n2, a.level);
        out.paste(0, 0, a);
        out.paste(0, n1, b);
        out.paste(n1, n1, c);
        out
    }

    /// `[[a, 0], [0, b]]`.
    pub fn block_diag(a: &Mat, b: &Mat) -> Mat {
        Mat::block_upper(a, &Mat::zeros(a.rows, b.cols, a.level), b)
    }

    /// `[[1, x], [0, 1]]` in GL(2n) for `x` in M(n).
    pub fn unipotent_block(x: &Mat) -> Mat {
        let n = x.rows;
        Mat::block_upper(&Mat::identity(n, x.level), x, &Mat::identity(n, x.level))
    }

    /// Diagonal blocks of a 2n×2n matrix.
    pub fn diag_blocks(&self) -> (Mat, Mat) {
        let n = self.rows / 2;
        (self.block(0, 0, n, n), self.block(n, n, n, n))
    }
}

/// Row-echelon rank over the entry field.
pub fn rank(tower: &FieldTower, x: &Mat) -> Result<usize> {
    Ok(x.rank(tower.level(x.level)?))
}

/// Characteristic polynomial over the entry field.
pub fn charpoly(tower: &FieldTower, g: &Mat) -> Result<Poly> {
    g.charpoly_in(tower.level(g.level)?)
}

/// Decides whether a monic `c` over F_q is `f^k` with `f` irreducible.
///
/// With `d` the least degree of an irreducible factor, `gcd(x^{q^d} - x, c)`
/// is the product of the distinct degree-`d` factors; `c` is primary iff that
/// product is a single irreducible whose `deg c / d`-th power is `c`.
pub fn primary_decomposition(tower: &FieldTower, c: &Poly) -> Result<Option<(Poly, usize)>> {
    let f = tower.base();
    let deg = match c.degree() {
        Some(d) if d >= 1 && c.is_monic() => d,
        _ => return Err(Error::NotMonic),
    };
    let x = Poly::x();
    let mut xq = x.rem(c, f);
    for d in 1..=deg {
        xq = xq.pow_mod(f.size() as u128, c, f);
        let g = c.gcd(&xq.sub(&x, f), f);
        let gd = g.degree().unwrap_or(0);
        if gd == 0 {
            continue;
        }
        if gd != d || deg % d != 0 {
            return Ok(None);
        }
        let k = deg / d;
        if g.pow(k as u64, f) != *c {
            return Ok(None);
        }
        debug_assert!(g.is_irreducible(f));
        return Ok(Some((g, k)));
    }
    unreachable!("every polynomial of positive degree has an irreducible factor")
}

/// Dimension over the level of `z` of `ker(g - z I)`, with `g` over F_q.
pub fn kernel_dim(tower: &FieldTower, g: &Mat, z: FFElem) -> Result<usize> {
    if !g.is_square() {
        return Err(Error::NotSquare {
            rows: g.rows,
            cols: g.cols,
        });
    }
    let lifted = g.lift(tower, z.level)?;
    let f = tower.level(z.level)?;
    let shifted = lifted.sub(&Mat::identity(g.rows, z.level).scale(z.code, f), f);
    let nullity = g.rows - shifted.rank(f);
    if nullity == 0 {
        return Err(Error::NotEigenvalue);
    }
    Ok(nullity)
}

/// The groups enumerated by [`enumerate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    /// All of M(n, F_q).
    FullMatrixSpace(usize),
    GL(usize),
    /// Upper unitriangular matrices in GL(k).
    U(usize),
    /// `[[1, X], [0, 1]]` in GL(2n).
    N(usize),
    /// Last row `(0, …, 0, 1)` in GL(n).
    Mirabolic(usize),
    /// `w_0 M_1^T w_0^{-1}`: first column `e_1` in GL(n).
    MirabolicConj(usize),
    /// `U(n) × U(n)` block diagonal in GL(2n).
    UA(usize),
    /// `M_1 × M_2` block diagonal in GL(2n).
    HA(usize),
    /// Stabilizer in M = GL(n) × GL(n) of ψ_A.
    MPsiA(Mat),
    /// `M_{ψ_A} N`.
    PPsiA(Mat),
}

fn pow_u128(q: u64, k: usize) -> u128 {
    (q as u128).pow(k as u32)
}

pub fn gl_order(q: u64, k: usize) -> u128 {
    (0..k).map(|j| pow_u128(q, k) - pow_u128(q, j)).product()
}

pub fn mirabolic_order(q: u64, n: usize) -> u128 {
    if n == 0 {
        return 1;
    }
    pow_u128(q, n - 1) * gl_order(q, n - 1)
}

impl GroupSpec {
    /// Closed-form order, where one is known.
    pub fn order(&self, q: u64) -> Option<u128> {
        Some(match self {
            GroupSpec::FullMatrixSpace(n) | GroupSpec::N(n) => pow_u128(q, n * n),
            GroupSpec::GL(k) => gl_order(q, *k),
            GroupSpec::U(k) => pow_u128(q, k * k.saturating_sub(1) / 2),
            GroupSpec::Mirabolic(n) | GroupSpec::MirabolicConj(n) => mirabolic_order(q, *n),
            GroupSpec::UA(n) => pow_u128(q, n * n.saturating_sub(1)),
            GroupSpec::HA(n) => mirabolic_order(q, *n).pow(2),
            GroupSpec::MPsiA(a) => m_psi_closed_order(a, q)?,
            GroupSpec::PPsiA(a) => m_psi_closed_order(a, q)? * pow_u128(q, a.rows * a.rows),
        })
    }

    /// Enumerates the group with the default cap.
    pub fn elements(&self, tower: &FieldTower) -> Result<Vec<Mat>> {
        enumerate(tower, self, DEFAULT_ENUM_CAP)
    }
}

fn m_psi_closed_order(a: &Mat, q: u64) -> Option<u128> {
    let n = a.rows;
    if a.is_zero() {
        Some(gl_order(q, n).pow(2))
    } else if is_corner(a) {
        Some((q as u128 - 1) * gl_order(q, n - 1).pow(2) * pow_u128(q, 2 * (n - 1)))
    } else {
        None
    }
}

/// Whether `a` is `E_{1n}`.
pub fn is_corner(a: &Mat) -> bool {
    a.is_square() && a.rows > 0 && *a == Mat::unit(a.rows, 0, a.rows - 1, a.level)
}

fn check_cap(what: &'static str, size: u128, cap: u128) -> Result<()> {
    if size > cap {
        Err(Error::CapExceeded { what, size, cap })
    } else {
        Ok(())
    }
}

/// All `rows × cols` matrices over a level, in index order.
pub fn all_matrices(
    tower: &FieldTower,
    rows: usize,
    cols: usize,
    level: u32,
    cap: u128,
) -> Result<Vec<Mat>> {
    let size = tower.level(level)?.size() as u128;
    let count = size.checked_pow((rows * cols) as u32).unwrap_or(u128::MAX);
    check_cap("matrix space", count, cap)?;
    let mut out = Vec::with_capacity(count as usize);
    let mut data = vec![0u32; rows * cols];
    for _ in 0..count {
        out.push(Mat {
            rows,
            cols,
            level,
            data: data.clone(),
        });
        for d in data.iter_mut() {
            *d += 1;
            if *d as u128 == size {
                *d = 0;
            } else {
                break;
            }
        }
    }
    Ok(out)
}

fn gl_elements(tower: &FieldTower, k: usize, cap: u128) -> Result<Vec<Mat>> {
    let f = tower.base();
    Ok(all_matrices(tower, k, k, 1, cap)?
        .into_iter()
        .filter(|g| g.rank(f) == k)
        .collect())
}

fn mirabolic_elements(tower: &FieldTower, n: usize, cap: u128) -> Result<Vec<Mat>> {
    if n == 0 {
        return Ok(vec![Mat::zeros(0, 0, 1)]);
    }
    let gls = gl_elements(tower, n - 1, cap)?;
    let vs = all_matrices(tower, n - 1, 1, 1, cap)?;
    let mut out = Vec::with_capacity(gls.len() * vs.len());
    for g in &gls {
        for v in &vs {
            out.push(Mat::block_upper(g, v, &Mat::identity(1, 1)));
        }
    }
    Ok(out)
}

/// Absolute trace of `tr(A X)`, the exponent of `ψ_A` on `[[1, X], [0, 1]]`.
pub fn psi_a_exponent(tower: &FieldTower, a: &Mat, x: &Mat) -> u32 {
    let f = tower.base();
    let n = a.rows;
    let mut t = 0;
    for i in 0..n {
        for k in 0..n {
            t = f.add(t, f.mul(a.get(i, k), x.get(k, i)));
        }
    }
    tower.abs_trace(t)
}

/// Whether `diag(m1, m2)` fixes `ψ_A`, i.e. `ψ_A(m n m^{-1}) = ψ_A(n)` for
/// every `n ∈ N`. Both sides are characters of N, so the test runs over the
/// generating set `{c E_ij : c ∈ F_q}`.
pub fn stabilizes_psi_a(tower: &FieldTower, a: &Mat, m1: &Mat, m2_inv: &Mat) -> bool {
    let f = tower.base();
    let n = a.rows;
    // ψ_A(m n m^{-1}) = ψ_0(tr(A m1 X m2^{-1})) = ψ_0(tr(B X)), B = m2^{-1} A m1
    let b = m2_inv.mul(a, f).mul(m1, f);
    for i in 0..n {
        for j in 0..n {
            for c in 1..f.size() {
                let mut x = Mat::zeros(n, n, 1);
                x.set(i, j, c);
                if psi_a_exponent(tower, &b, &x) != psi_a_exponent(tower, a, &x) {
                    return false;
                }
            }
        }
    }
    true
}

/// `M_{ψ_A}` by filtering all of `GL(n) × GL(n)`.
pub fn m_psi_brute_force(tower: &FieldTower, a: &Mat, cap: u128) -> Result<Vec<Mat>> {
    let n = a.rows;
    let f = tower.base();
    let gls = gl_elements(tower, n, cap)?;
    check_cap("GL(n) x GL(n)", (gls.len() as u128).pow(2), cap)?;
    let invs: Vec<Mat> = gls.iter().map(|g| g.inverse(f).unwrap()).collect();
    let mut out = Vec::new();
    for m1 in &gls {
        for (m2, m2_inv) in gls.iter().zip(&invs) {
            if stabilizes_psi_a(tower, a, m1, m2_inv) {
                out.push(Mat::block_diag(m1, m2));
            }
        }
    }
    Ok(out)
}

/// `M_{ψ_A}` for `A = E_{1n}`: `g1 = [[C, x], [0, a]]`, `g2 = [[a, y], [0, D]]`.
pub fn m_psi_corner(tower: &FieldTower, n: usize, cap: u128) -> Result<Vec<Mat>> {
    let q = tower.q();
    let order = m_psi_closed_order(&Mat::unit(n, 0, n - 1, 1), q).unwrap();
    check_cap("M_psiA", order, cap)?;
    let gls = gl_elements(tower, n - 1, cap)?;
    let vs = all_matrices(tower, n - 1, 1, 1, cap)?;
    let ws = all_matrices(tower, 1, n - 1, 1, cap)?;
    let mut out = Vec::with_capacity(order as usize);
    for a in 1..tower.base().size() {
        let scalar = Mat::from_vec(1, 1, 1, vec![a]).unwrap();
        for c in &gls {
            for x in &vs {
                let g1 = Mat::block_upper(c, x, &scalar);
                for d in &gls {
                    for y in &ws {
                        let g2 = Mat::block_upper(&scalar, y, d);
                        out.push(Mat::block_diag(&g1, &g2));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Exact, duplicate-free enumeration of a group, refusing anything whose
/// search space exceeds `cap`.
pub fn enumerate(tower: &FieldTower, spec: &GroupSpec, cap: u128) -> Result<Vec<Mat>> {
    let q = tower.q();
    if let Some(order) = spec.order(q) {
        check_cap("group", order, cap)?;
    }
    match spec {
        GroupSpec::FullMatrixSpace(n) => all_matrices(tower, *n, *n, 1, cap),
        GroupSpec::GL(k) => gl_elements(tower, *k, cap),
        GroupSpec::U(k) => {
            let k = *k;
            let free = k * k.saturating_sub(1) / 2;
            let vals = all_matrices(tower, 1, free, 1, cap)?;
            Ok(vals
                .into_iter()
                .map(|v| {
                    let mut u = Mat::identity(k, 1);
                    let mut idx = 0;
                    for i in 0..k {
                        for j in i + 1..k {
                            u.set(i, j, v.data[idx]);
                            idx += 1;
                        }
                    }
                    u
                })
                .collect())
        }
        GroupSpec::N(n) => Ok(all_matrices(tower, *n, *n, 1, cap)?
            .iter()
            .map(Mat::unipotent_block)
            .collect()),
        GroupSpec::Mirabolic(n) => mirabolic_elements(tower, *n, cap),
        GroupSpec::MirabolicConj(n) => {
            let w = Mat::w0(*n, 1);
            let f = tower.base();
            Ok(mirabolic_elements(tower, *n, cap)?
                .iter()
                .map(|m| w.mul(&m.transpose(), f).mul(&w, f))
                .collect())
        }
        GroupSpec::UA(n) => {
            let us = enumerate(tower, &GroupSpec::U(*n), cap)?;
            Ok(us
                .iter()
                .flat_map(|u1| us.iter().map(move |u2| Mat::block_diag(u1, u2)))
                .collect())
        }
        GroupSpec::HA(n) => {
            let m1 = enumerate(tower, &GroupSpec::Mirabolic(*n), cap)?;
            let m2 = enumerate(tower, &GroupSpec::MirabolicConj(*n), cap)?;
            Ok(m1
                .iter()
                .flat_map(|a| m2.iter().map(move |b| Mat::block_diag(a, b)))
                .collect())
        }
        GroupSpec::MPsiA(a) => {
            if is_corner(a) {
                m_psi_corner(tower, a.rows, cap)
            } else {
                m_psi_brute_force(tower, a, cap)
            }
        }
        GroupSpec::PPsiA(a) => {
            let ms = enumerate(tower, &GroupSpec::MPsiA(a.clone()), cap)?;
            let ns = enumerate(tower, &GroupSpec::N(a.rows), cap)?;
            check_cap("P_psiA", ms.len() as u128 * ns.len() as u128, cap)?;
            let f = tower.base();
            Ok(ms
                .iter()
                .flat_map(|m| ns.iter().map(move |n| m.mul(n, f)))
                .collect())
        }
    }
}
