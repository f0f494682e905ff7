use std::fmt;
use std::sync::Arc;

use crate::error::{bail, Result};

use super::{factor, is_prime, irreducible_poly};

/// Largest field for which exp/log tables are built.
const TABLE_LIMIT: u64 = 1 << 20;

/// Largest field order supported at all (elements are packed in `u32`).
pub const MAX_FIELD_ORDER: u64 = 1 << 30;

/// The finite field `F_{p^m} = F_p[t]/(modulus)`.
///
/// Elements are packed into a `u32`: the coefficient vector
/// `(c_0, ..., c_{m-1})` is stored as `Σ c_i p^i`. The modulus is the
/// lexicographically least monic irreducible of degree `m`, comparing
/// coefficient tuples from the top (`c_{m-1}` first), so every run and every
/// consumer agrees on the packed encoding.
pub struct GaloisField {
    p: u64,
    degree: u32,
    order: u64,
    /// Monic modulus, little-endian, length `degree + 1`.
    modulus: Vec<u64>,
    /// `Tr(t^j)` for the power basis; the trace is `F_p`-linear.
    trace_basis: Vec<u64>,
    tables: Option<Tables>,
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GaloisField")
            .field("p", &self.p)
            .field("degree", &self.degree)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

impl Eq for GaloisField {}

impl GaloisField {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Arc<Self>> {
        if !is_prime(p) {
            bail!(Domain, "{p} is not prime");
        }
        if p >= MAX_FIELD_ORDER {
            bail!(Size, "prime {p} too large for packed field elements");
        }
        Ok(Arc::new(Self::build(p, vec![0, 1])))
    }

    /// `F_{p^m}` with the canonical modulus.
    pub fn new(p: u64, m: u32) -> Result<Arc<Self>> {
        if m == 0 {
            bail!(Domain, "field degree must be positive");
        }
        let base = Self::prime(p)?;
        if m == 1 {
            return Ok(base);
        }
        match p.checked_pow(m) {
            Some(q) if q <= MAX_FIELD_ORDER => {}
            _ => bail!(Size, "F_{{{p}^{m}}} exceeds the supported field size"),
        }
        let modulus = irreducible_poly(&base, m as usize);
        let coeffs = modulus.coeffs().iter().map(|&c| c as u64).collect();
        Ok(Arc::new(Self::build(p, coeffs)))
    }

    /// `F_p[t]/(modulus)` for a caller-chosen monic irreducible modulus.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Arc<Self>> {
        let base = Self::prime(p)?;
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            bail!(Domain, "modulus must be monic of degree >= 1");
        }
        if modulus.iter().any(|&c| c >= p) {
            bail!(Domain, "modulus coefficients must lie in [0, {p})");
        }
        let poly = super::FqPolynomial::new(&base, modulus.iter().map(|&c| c as u32).collect());
        if !poly.is_irreducible() {
            bail!(Domain, "modulus is reducible over F_{p}");
        }
        Ok(Arc::new(Self::build(p, modulus)))
    }

    fn build(p: u64, modulus: Vec<u64>) -> Self {
        let degree = (modulus.len() - 1) as u32;
        let order = p.pow(degree);
        let mut field = GaloisField {
            p,
            degree,
            order,
            modulus,
            trace_basis: Vec::new(),
            tables: None,
        };
        if order <= TABLE_LIMIT && order > 2 {
            let g = field.primitive_element();
            let mut exp = Vec::with_capacity(order as usize - 1);
            let mut log = vec![0u32; order as usize];
            let mut x = 1u32;
            for k in 0..order - 1 {
                exp.push(x);
                log[x as usize] = k as u32;
                x = field.mul(x, g);
            }
            field.tables = Some(Tables { exp, log });
        }
        let mut basis = Vec::with_capacity(degree as usize);
        let mut t_pow = 1u32;
        for _ in 0..degree {
            basis.push(field.trace_slow(t_pow) as u64);
            t_pow = field.mul(t_pow, if degree == 1 { 1 } else { p as u32 });
        }
        field.trace_basis = basis;
        field
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    /// Extension degree `m` over the prime field.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Number of elements `p^m`.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> u32 {
        0
    }

    pub fn one(&self) -> u32 {
        1
    }

    /// Iterates over all elements in packed order.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.order as u32
    }

    /// Packs a little-endian coefficient vector; shorter vectors are zero-padded.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<u32> {
        if coeffs.len() > self.degree as usize {
            bail!(
                Input,
                "coefficient vector of length {} exceeds field degree {}",
                coeffs.len(),
                self.degree
            );
        }
        let mut v = 0u64;
        for &c in coeffs.iter().rev() {
            if c >= self.p {
                bail!(Input, "coefficient {c} not reduced modulo {}", self.p);
            }
            v = v * self.p + c;
        }
        Ok(v as u32)
    }

    /// Unpacks into exactly `degree` coefficients.
    pub fn coeffs(&self, mut a: u32) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.degree as usize);
        for _ in 0..self.degree {
            out.push(a as u64 % self.p);
            a /= self.p as u32;
        }
        out
    }

    /// The image of an integer under `Z -> F_p ⊂ F_q`.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.degree == 1 {
            let s = a as u64 + b as u64;
            return (if s >= self.p { s - self.p } else { s }) as u32;
        }
        let p = self.p as u32;
        let (mut a, mut b) = (a, b);
        let (mut out, mut w) = (0u32, 1u32);
        while a > 0 || b > 0 {
            let mut d = a % p + b % p;
            if d >= p {
                d -= p;
            }
            out += d * w;
            a /= p;
            b /= p;
            w = w.wrapping_mul(p);
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        if self.degree == 1 {
            return if a == 0 { 0 } else { (self.p - a as u64) as u32 };
        }
        let p = self.p as u32;
        let mut a = a;
        let (mut out, mut w) = (0u32, 1u32);
        while a > 0 {
            let d = a % p;
            if d != 0 {
                out += (p - d) * w;
            }
            a /= p;
            w = w.wrapping_mul(p);
        }
        out
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
        if let Some(t) = &self.tables {
            let n = self.order as usize - 1;
            let mut k = t.log[a as usize] as usize + t.log[b as usize] as usize;
            if k >= n {
                k -= n;
            }
            return t.exp[k];
        }
        if self.degree == 1 {
            return ((a as u64 * b as u64) % self.p) as u32;
        }
        if self.p == 2 {
            return self.mul_binary(a, b);
        }
        self.mul_schoolbook(a, b)
    }

    fn mul_binary(&self, a: u32, b: u32) -> u32 {
        let mut prod = 0u64;
        let (a, mut b) = (a as u64, b as u64);
        let mut shift = 0;
        while b > 0 {
            if b & 1 == 1 {
                prod ^= a << shift;
            }
            b >>= 1;
            shift += 1;
        }
        let m = self.degree;
        let mut modbits = 0u64;
        for (i, &c) in self.modulus.iter().enumerate() {
            modbits |= c << i;
        }
        for bit in (m..2 * m).rev() {
            if prod >> bit & 1 == 1 {
                prod ^= modbits << (bit - m);
            }
        }
        prod as u32
    }

    fn mul_schoolbook(&self, a: u32, b: u32) -> u32 {
        let m = self.degree as usize;
        let p = self.p;
        let da = self.coeffs(a);
        let db = self.coeffs(b);
        let mut prod = [0u64; 64];
        for i in 0..m {
            if da[i] == 0 {
                continue;
            }
            for j in 0..m {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            }
        }
        for k in (m..2 * m - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for i in 0..m {
                prod[k - m + i] = (prod[k - m + i] + (p - c) * self.modulus[i]) % p;
            }
            prod[k] = 0;
        }
        let mut v = 0u64;
        for i in (0..m).rev() {
            v = v * p + prod[i];
        }
        v as u32
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        if let Some(t) = &self.tables {
            if a == 0 {
                return if e == 0 { 1 } else { 0 };
            }
            let n = self.order - 1;
            let k = (t.log[a as usize] as u64 * (e % n)) % n;
            return t.exp[k as usize];
        }
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            bail!(Domain, "zero has no inverse");
        }
        if let Some(t) = &self.tables {
            let n = self.order as usize - 1;
            let k = (n - t.log[a as usize] as usize) % n;
            return Ok(t.exp[k]);
        }
        Ok(self.pow(a, self.order - 2))
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Quadratic character for odd characteristic: 1, -1, or 0.
    pub fn legendre(&self, a: u32) -> i32 {
        if a == 0 {
            return 0;
        }
        if self.p == 2 {
            return 1;
        }
        if self.pow(a, (self.order - 1) / 2) == 1 {
            1
        } else {
            -1
        }
    }

    pub fn is_square(&self, a: u32) -> bool {
        self.legendre(a) >= 0
    }

    /// Square root in characteristic 2 (always exists and is unique).
    pub fn sqrt_char2(&self, a: u32) -> u32 {
        debug_assert_eq!(self.p, 2);
        self.pow(a, self.order / 2)
    }

    /// Absolute trace `Σ a^{p^k}`, an element of the prime field.
    pub fn trace(&self, a: u32) -> u32 {
        if self.p == 2 {
            let mut mask = 0u32;
            for (j, &t) in self.trace_basis.iter().enumerate() {
                mask |= (t as u32) << j;
            }
            return (a & mask).count_ones() & 1;
        }
        let mut acc = 0u64;
        let mut x = a as u64;
        for &t in &self.trace_basis {
            acc += (x % self.p) * t;
            x /= self.p;
        }
        (acc % self.p) as u32
    }

    fn trace_slow(&self, a: u32) -> u32 {
        let mut acc = 0u32;
        let mut x = a;
        for _ in 0..self.degree {
            acc = self.add(acc, x);
            x = self.pow(x, self.p);
        }
        acc
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: u32) -> Result<u64> {
        if a == 0 {
            bail!(Domain, "zero has no multiplicative order");
        }
        let mut ord = self.order - 1;
        for (r, _) in factor(self.order - 1)? {
            while ord % r == 0 && self.pow(a, ord / r) == 1 {
                ord /= r;
            }
        }
        Ok(ord)
    }

    /// Least (in packed order) generator of the unit group.
    pub fn primitive_element(&self) -> u32 {
        if self.order == 2 {
            return 1;
        }
        let primes: Vec<u64> = factor(self.order - 1)
            .expect("field orders are far below the factoring bound")
            .into_iter()
            .map(|(r, _)| r)
            .collect();
        (1..self.order as u32)
            .find(|&g| primes.iter().all(|&r| self.pow(g, (self.order - 1) / r) != 1))
            .expect("the unit group of a finite field is cyclic")
    }

    /// A root of `poly` (little-endian packed coefficients over `self`) found
    /// by exhaustive evaluation; least in packed order.
    pub fn find_root(&self, poly: &[u32]) -> Option<u32> {
        self.elements().find(|&x| self.horner(poly, x) == 0)
    }

    #[inline]
    pub fn horner(&self, poly: &[u32], x: u32) -> u32 {
        poly.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }
}

/// An element of a finite field together with its field.
#[derive(Clone)]
pub struct FqElement {
    field: Arc<GaloisField>,
    value: u32,
}

impl FqElement {
    pub fn new(field: &Arc<GaloisField>, coeffs: &[u64]) -> Result<Self> {
        Ok(FqElement {
            value: field.from_coeffs(coeffs)?,
            field: field.clone(),
        })
    }

    pub fn from_packed(field: &Arc<GaloisField>, value: u32) -> Result<Self> {
        if value as u64 >= field.order() {
            bail!(Input, "packed value {value} outside F_{}", field.order());
        }
        Ok(FqElement {
            field: field.clone(),
            value,
        })
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }

    pub fn packed(&self) -> u32 {
        self.value
    }

    pub fn coeffs(&self) -> Vec<u64> {
        self.field.coeffs(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same_field(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field,
            "mixing elements of different fields"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_field(other);
        self.with(self.field.add(self.value, other.value))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.same_field(other);
        self.with(self.field.sub(self.value, other.value))
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_field(other);
        self.with(self.field.mul(self.value, other.value))
    }

    pub fn pow(&self, e: u64) -> Self {
        self.with(self.field.pow(self.value, e))
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(self.with(self.field.inv(self.value)?))
    }

    fn with(&self, value: u32) -> Self {
        FqElement {
            field: self.field.clone(),
            value,
        }
    }
}

impl PartialEq for FqElement {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && *self.field == *other.field
    }
}

impl Eq for FqElement {}

impl fmt::Debug for FqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs())
    }
}
