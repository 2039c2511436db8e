//! A single field F_{p^D} in the tower, stored as a polynomial basis over F_p
//! with log/antilog tables.
//!
//! Elements are encoded as integers `Σ c_i p^i` where `c_i` is the coefficient
//! of `x^i` in the polynomial basis. Zero is code 0, one is code 1, and the
//! prime subfield is exactly the codes below `p`.

use crate::error::{Error, Result};

/// Dense polynomials over F_p, low degree first, used to bootstrap a level
/// before its tables exist.
pub(crate) mod fp {
    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        trim(out.into_iter().map(|c| c as u32).collect())
    }

    pub fn inv_mod(a: u32, p: u32) -> u32 {
        let mut r = 1u64;
        let mut b = a as u64 % p as u64;
        let mut k = p - 2;
        while k > 0 {
            if k & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            k >>= 1;
        }
        r as u32
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut a = trim(a.to_vec());
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p);
        while a.len() > dm {
            let top = a.len() - 1;
            let c = (a[top] as u64 * lead_inv as u64 % p as u64) as u32;
            if c != 0 {
                for (i, &mi) in m.iter().enumerate() {
                    let idx = top - dm + i;
                    a[idx] = ((a[idx] as u64 + (p - c) as u64 * mi as u64) % p as u64) as u32;
                }
            }
            a = trim(a);
        }
        a
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(out)
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    pub fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        rem(&mul(a, b, p), m, p)
    }

    pub fn powmod(base: &[u32], mut k: u128, m: &[u32], p: u32) -> Vec<u32> {
        let mut result = vec![1];
        let mut b = rem(base, m, p);
        while k > 0 {
            if k & 1 == 1 {
                result = mulmod(&result, &b, m, p);
            }
            b = mulmod(&b, &b, m, p);
            k >>= 1;
        }
        result
    }

    /// Rabin's test for a monic polynomial of degree `d` over F_p.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let d = f.len() - 1;
        if d == 0 {
            return false;
        }
        if d == 1 {
            return true;
        }
        let x = vec![0, 1];
        let xq = |k: usize| powmod(&x, (p as u128).pow(k as u32), f, p);
        if sub(&xq(d), &x, p) != Vec::<u32>::new() {
            return false;
        }
        for r in super::prime_factors(d as u64) {
            let h = sub(&xq(d / r as usize), &x, p);
            if gcd(f, &h, p).len() != 1 {
                return false;
            }
        }
        true
    }
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut f = 2;
    while f * f <= n {
        if n.is_multiple_of(f) {
            out.push(f);
            while n.is_multiple_of(f) {
                n /= f;
            }
        }
        f += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2 && prime_factors(n) == [n]
}

pub(crate) fn digits(mut code: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(code % p);
        code /= p;
    }
    fp::trim(out)
}

pub(crate) fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// The lexicographically least monic irreducible polynomial of degree `deg`
/// over F_p, ordering candidates by the integer `Σ c_i p^i` of their lower
/// coefficients.
pub fn least_irreducible(p: u32, deg: usize) -> Vec<u32> {
    let count = (p as u64).pow(deg as u32);
    for c in 0..count {
        let mut f = digits(c as u32, p, deg);
        f.resize(deg, 0);
        f.push(1);
        if fp::is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// One field F_{q^d} = F_{p^{d e}} with tables relative to a fixed generator.
#[derive(Debug, Clone)]
pub struct FieldLevel {
    pub(crate) d: u32,
    pub(crate) p: u32,
    pub(crate) degree: usize,
    pub(crate) size: u32,
    pub(crate) modulus: Vec<u32>,
    pub(crate) generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    add_table: Option<Vec<u32>>,
    neg_table: Vec<u32>,
}

const ADD_TABLE_LIMIT: u32 = 1024;

impl FieldLevel {
    /// Bootstraps a level from its modulus and chosen generator code.
    pub(crate) fn build(d: u32, p: u32, modulus: Vec<u32>, generator: u32) -> Result<Self> {
        let degree = modulus.len() - 1;
        let size = (p as u64).pow(degree as u32);
        let size = u32::try_from(size).map_err(|_| Error::CapExceeded {
            what: "field level",
            size: size as u128,
            cap: u32::MAX as u128,
        })?;
        let order = size - 1;
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![u32::MAX; size as usize];
        let g = digits(generator, p, degree);
        let mut cur = vec![1u32];
        for k in 0..order {
            let code = undigits(&cur, p);
            if log[code as usize] != u32::MAX {
                return Err(Error::InvalidArgument(format!(
                    "generator {generator} has order {k} < {order}"
                )));
            }
            log[code as usize] = k;
            exp.push(code);
            cur = fp::mulmod(&cur, &g, &modulus, p);
        }
        let neg_table = (0..size)
            .map(|c| {
                let ds: Vec<u32> = digits(c, p, degree).iter().map(|&x| (p - x) % p).collect();
                undigits(&ds, p)
            })
            .collect();
        let mut level = FieldLevel {
            d,
            p,
            degree,
            size,
            modulus,
            generator,
            exp,
            log,
            add_table: None,
            neg_table,
        };
        if p != 2 && size <= ADD_TABLE_LIMIT {
            let mut t = vec![0; (size * size) as usize];
            for a in 0..size {
                for b in 0..size {
                    t[(a * size + b) as usize] = level.add_digits(a, b);
                }
            }
            level.add_table = Some(t);
        }
        Ok(level)
    }

    /// Level index d (the field is F_{q^d}).
    pub fn level(&self) -> u32 {
        self.d
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Number of elements.
    pub fn size(&self) -> u32 {
        self.size
    }

    /// Order of the multiplicative group.
    pub fn order(&self) -> u32 {
        self.size - 1
    }

    /// Defining polynomial over F_p, low degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> u32 {
        self.generator
    }

    fn add_digits(&self, mut a: u32, mut b: u32) -> u32 {
        let p = self.p;
        let mut out = 0;
        let mut pw = 1;
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * pw;
            a /= p;
            b /= p;
            pw *= p;
        }
        out
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            a ^ b
        } else if let Some(t) = &self.add_table {
            t[(a * self.size + b) as usize]
        } else {
            self.add_digits(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg_table[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let order = self.size - 1;
        let s = self.log[a as usize] as u64 + self.log[b as usize] as u64;
        self.exp[(s % order as u64) as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let order = self.size - 1;
        let l = self.log[a as usize];
        Some(self.exp[((order - l) % order) as usize])
    }

    pub fn pow(&self, a: u32, k: u64) -> u32 {
        if k == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let order = (self.size - 1) as u64;
        let l = self.log[a as usize] as u64;
        self.exp[((l as u128 * k as u128) % order as u128) as usize]
    }

    /// Discrete logarithm to the level generator.
    #[inline]
    pub fn log(&self, a: u32) -> Option<u32> {
        if a == 0 || a >= self.size {
            None
        } else {
            Some(self.log[a as usize])
        }
    }

    /// `generator^k`.
    #[inline]
    pub fn exp(&self, k: u64) -> u32 {
        self.exp[(k % (self.size - 1) as u64) as usize]
    }

    /// Integer multiple `c · a` for `c` in F_p.
    pub fn scalar(&self, c: u32, a: u32) -> u32 {
        self.mul(c % self.p, a)
    }
}
