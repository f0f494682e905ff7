use std::fmt;
use std::sync::Arc;

use super::{factor, GaloisField};

/// A univariate polynomial over a [`GaloisField`], little-endian, with
/// trailing zeros stripped (the zero polynomial has no coefficients).
#[derive(Clone)]
pub struct FqPolynomial {
    field: Arc<GaloisField>,
    coeffs: Vec<u32>,
}

impl PartialEq for FqPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && *self.field == *other.field
    }
}

impl Eq for FqPolynomial {}

impl fmt::Debug for FqPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FqPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coeff = if self.field.degree() == 1 {
                c.to_string()
            } else {
                format!("{:?}", self.field.coeffs(c))
            };
            match (i, c) {
                (0, _) => write!(f, "{coeff}")?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "{coeff}*t")?,
                (_, 1) => write!(f, "t^{i}")?,
                _ => write!(f, "{coeff}*t^{i}")?,
            }
        }
        Ok(())
    }
}

impl FqPolynomial {
    pub fn new(field: &Arc<GaloisField>, mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FqPolynomial {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &Arc<GaloisField>) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn one(field: &Arc<GaloisField>) -> Self {
        Self::new(field, vec![1])
    }

    /// The monomial `t`.
    pub fn t(field: &Arc<GaloisField>) -> Self {
        Self::new(field, vec![0, 1])
    }

    pub fn constant(field: &Arc<GaloisField>, c: u32) -> Self {
        Self::new(field, vec![c])
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial (degree −∞).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Self::new(f, c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect();
        Self::new(f, c)
    }

    pub fn scale(&self, s: u32) -> Self {
        let f = &self.field;
        Self::new(f, self.coeffs.iter().map(|&c| f.mul(c, s)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Self::new(f, out)
    }

    /// Euclidean division; panics on division by zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let f = &self.field;
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = f.inv(divisor.leading()).expect("leading coefficient is nonzero");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(f), self.clone());
        }
        let mut quot = vec![0u32; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = f.mul(rem[k], lead_inv);
            if c == 0 {
                continue;
            }
            quot[k - dd] = c;
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + i] = f.sub(rem[k - dd + i], f.mul(c, d));
            }
        }
        rem.truncate(dd);
        (Self::new(f, quot), Self::new(f, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    pub fn make_monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.leading()).unwrap();
        self.scale(inv)
    }

    /// Monic gcd (zero when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
            .collect();
        Self::new(f, c)
    }

    pub fn eval(&self, x: u32) -> u32 {
        self.field.horner(&self.coeffs, x)
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, mut e: u64, modulus: &Self) -> Self {
        let mut base = self.rem(modulus);
        let mut acc = Self::one(&self.field).rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            e >>= 1;
        }
        acc
    }

    /// Composition `self(t + a)` (Taylor shift).
    pub fn shift(&self, a: u32) -> Self {
        let f = &self.field;
        let lin = Self::new(f, vec![a, 1]);
        let mut acc = Self::zero(f);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&Self::constant(f, c));
        }
        acc
    }

    /// Rabin's test: `t^{Q^d} ≡ t (mod f)` and `gcd(t^{Q^{d/r}} − t, f) = 1`
    /// for every prime `r | d`, where `Q` is the size of the coefficient field.
    pub fn is_irreducible(&self) -> bool {
        let Some(d) = self.degree() else {
            return false;
        };
        if d == 0 {
            return false;
        }
        if d == 1 {
            return true;
        }
        let f = self.make_monic();
        let field = &self.field;
        let q = field.order();
        let t = Self::t(field);
        // frob[k] = t^{Q^k} mod f
        let mut frob = vec![t.rem(&f)];
        for k in 1..=d {
            let next = frob[k - 1].pow_mod(q, &f);
            frob.push(next);
        }
        if frob[d] != t.rem(&f) {
            return false;
        }
        let primes = factor(d as u64).expect("small degree");
        primes.iter().all(|&(r, _)| {
            let g = frob[d / r as usize].sub(&t).gcd(&f);
            g.degree() == Some(0)
        })
    }

    /// Number of distinct roots in the coefficient field: `deg gcd(f, t^Q − t)`.
    pub fn count_distinct_roots(&self) -> usize {
        match self.degree() {
            None => self.field.order() as usize,
            Some(0) => 0,
            Some(_) => {
                let t = Self::t(&self.field);
                let frob = t.pow_mod(self.field.order(), self);
                frob.sub(&t).gcd(self).degree().unwrap_or(0)
            }
        }
    }
}

/// The lexicographically least monic irreducible polynomial of degree `d`
/// over `field` (coefficient tuples compared from `c_{d-1}` down to `c_0`).
pub fn irreducible_poly(field: &Arc<GaloisField>, d: usize) -> FqPolynomial {
    assert!(d >= 1, "degree must be positive");
    if d == 1 {
        return FqPolynomial::t(field);
    }
    let q = field.order();
    let mut index: u64 = 0;
    loop {
        let mut coeffs = Vec::with_capacity(d + 1);
        let mut v = index;
        for _ in 0..d {
            coeffs.push((v % q) as u32);
            v /= q;
        }
        coeffs.push(1);
        if coeffs[0] != 0 {
            let cand = FqPolynomial::new(field, coeffs);
            if cand.is_irreducible() {
                return cand;
            }
        }
        index += 1;
    }
}

/// True iff `gcd(f, f')` is constant.
pub fn factor_squarefree_check(f: &FqPolynomial) -> bool {
    assert!(!f.is_zero(), "squarefree check of the zero polynomial");
    f.gcd(&f.derivative()).degree() == Some(0)
}
