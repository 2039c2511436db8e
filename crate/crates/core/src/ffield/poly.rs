//! Polynomials with coefficients in one level of a tower.

use std::fmt;

use super::level::FieldLevel;

/// Polynomial with coefficients given as field codes, low degree first.
/// The zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    coeffs: Vec<u32>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![1] }
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Poly { coeffs: vec![0, 1] }
    }

    /// `x - c`.
    pub fn linear(c: u32, f: &FieldLevel) -> Self {
        Poly::new(vec![f.neg(c), 1])
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn add(&self, other: &Poly, f: &FieldLevel) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            (0..n)
                .map(|i| {
                    f.add(
                        self.coeffs.get(i).copied().unwrap_or(0),
                        other.coeffs.get(i).copied().unwrap_or(0),
                    )
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &Poly, f: &FieldLevel) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            (0..n)
                .map(|i| {
                    f.sub(
                        self.coeffs.get(i).copied().unwrap_or(0),
                        other.coeffs.get(i).copied().unwrap_or(0),
                    )
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &Poly, f: &FieldLevel) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: u32, f: &FieldLevel) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn div_rem(&self, divisor: &Poly, f: &FieldLevel) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = f
            .inv(divisor.leading())
            .expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), Poly::new(rem));
        }
        let mut quot = vec![0u32; rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let c = f.mul(rem[top], lead_inv);
            if c == 0 {
                continue;
            }
            quot[top - dd] = c;
            for (i, &di) in divisor.coeffs.iter().enumerate() {
                let idx = top - dd + i;
                rem[idx] = f.sub(rem[idx], f.mul(c, di));
            }
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn rem(&self, divisor: &Poly, f: &FieldLevel) -> Poly {
        self.div_rem(divisor, f).1
    }

    /// Monic version (zero stays zero).
    pub fn monic(&self, f: &FieldLevel) -> Poly {
        match f.inv(self.leading()) {
            Some(inv) => self.scale(inv, f),
            None => Poly::zero(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly, f: &FieldLevel) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b, f);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn pow(&self, mut k: u64, f: &FieldLevel) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base, f);
            }
            base = base.mul(&base, f);
            k >>= 1;
        }
        result
    }

    pub fn pow_mod(&self, mut k: u128, modulus: &Poly, f: &FieldLevel) -> Poly {
        let mut result = Poly::one().rem(modulus, f);
        let mut base = self.rem(modulus, f);
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base, f).rem(modulus, f);
            }
            base = base.mul(&base, f).rem(modulus, f);
            k >>= 1;
        }
        result
    }

    /// Horner evaluation at a point of the same level.
    pub fn eval(&self, x: u32, f: &FieldLevel) -> u32 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Irreducibility over the coefficient field F_Q, `Q = |f|`: checks
    /// `x^{Q^D} ≡ x (mod g)` and `gcd(x^{Q^i} - x, g) = 1` for `1 ≤ i < D`.
    pub fn is_irreducible(&self, f: &FieldLevel) -> bool {
        let d = match self.degree() {
            Some(d) if d >= 1 => d,
            _ => return false,
        };
        let g = self.monic(f);
        let x = Poly::x();
        let mut xq = x.rem(&g, f);
        for i in 1..=d {
            xq = xq.pow_mod(f.size() as u128, &g, f);
            let h = xq.sub(&x, f);
            if i < d {
                if g.gcd(&h, f).degree() != Some(0) {
                    return false;
                }
            } else if !h.rem(&g, f).is_zero() {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(out, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(out, "{c}")?,
                (1, 1) => write!(out, "x")?,
                (1, c) => write!(out, "{c}*x")?,
                (i, 1) => write!(out, "x^{i}")?,
                (i, c) => write!(out, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }
}
