//! Exact integer arithmetic: primality, valuations, multiplicative orders,
//! and the finite fields and polynomial rings built on top of them.

mod field;
mod poly;

pub use field::{FqElement, GaloisField};
pub use poly::{factor_squarefree_check, irreducible_poly, FqPolynomial};

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{bail, Result};

/// Trial division bound used by [`factor`].
pub const TRIAL_DIVISION_BOUND: u64 = 1_000_000;

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin. The twelve prime witnesses below are exact for
/// every 64-bit input, which includes the desk-scale range below `3.3·10^14`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n % w == 0 {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &w in &WITNESSES {
        let mut x = pow_mod(w, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// All primes `<= bound`, ascending.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(k, &is_p)| is_p.then_some(k as u64))
        .collect()
}

/// Factors `n` by trial division up to [`TRIAL_DIVISION_BOUND`]. A cofactor
/// left over after the bound is accepted only when it is prime.
pub fn factor(mut n: u64) -> Result<Vec<(u64, u32)>> {
    if n == 0 {
        bail!(Domain, "cannot factor zero");
    }
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n && d <= TRIAL_DIVISION_BOUND {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        if d * d <= n && !is_prime(n) {
            bail!(
                Size,
                "cofactor {n} is composite with no factor below {TRIAL_DIVISION_BOUND}"
            );
        }
        out.push((n, 1));
    }
    Ok(out)
}

/// `l`-adic valuation of a nonzero integer.
pub fn ord_l(l: u64, a: &BigInt) -> Result<u64> {
    if !is_prime(l) {
        bail!(Domain, "valuation base {l} is not prime");
    }
    if a.is_zero() {
        bail!(Domain, "valuation of zero undefined");
    }
    let l = BigInt::from(l);
    let mut v = 0;
    let mut x = a.abs();
    loop {
        let (q, r) = x.div_rem(&l);
        if !r.is_zero() {
            return Ok(v);
        }
        x = q;
        v += 1;
    }
}

/// Convenience wrapper of [`ord_l`] for machine integers.
pub fn ord_l_i128(l: u64, a: i128) -> Result<u64> {
    ord_l(l, &BigInt::from(a))
}

/// `l`-adic valuation of a nonzero rational: `ord(num) - ord(den)`.
pub fn ord_l_rational(l: u64, a: &BigRational) -> Result<i64> {
    if a.is_zero() {
        bail!(Domain, "valuation of zero undefined");
    }
    let num = ord_l(l, a.numer())? as i64;
    let den = ord_l(l, a.denom())? as i64;
    Ok(num - den)
}

/// Euler's totient from a factorization.
fn totient(factors: &[(u64, u32)]) -> u64 {
    factors
        .iter()
        .map(|&(p, e)| (p - 1) * p.pow(e - 1))
        .product()
}

/// Least `e >= 1` with `a^e ≡ 1 (mod m)`.
pub fn multiplicative_order(a: i64, m: u64) -> Result<u64> {
    if m < 2 {
        bail!(Domain, "modulus must be at least 2, got {m}");
    }
    let a = a.rem_euclid(m as i64) as u64;
    if a.gcd(&m) != 1 {
        bail!(Domain, "{a} is not a unit modulo {m}");
    }
    let phi = totient(&factor(m)?);
    let mut order = phi;
    for (r, _) in factor(phi)? {
        while order % r == 0 && pow_mod(a, order / r, m) == 1 {
            order /= r;
        }
    }
    Ok(order)
}

/// One lifting-the-exponent step: given `ord_l(a - 1) = n >= 1`, returns
/// `ord_l(a^l - 1)`, which equals `n + 1`. The case `l = 2, n = 1` is
/// excluded (e.g. `a = 3`: `ord_2(2) = 1` but `ord_2(8) = 3`).
pub fn lte_step(a: &BigInt, l: u64) -> Result<u64> {
    if !is_prime(l) {
        bail!(Domain, "lte_step needs a prime, got {l}");
    }
    let a_minus_one = a - BigInt::one();
    if a_minus_one.is_zero() {
        bail!(Domain, "lte_step needs a != 1 (ord_l(0) undefined)");
    }
    let n = ord_l(l, &a_minus_one)?;
    if n == 0 {
        bail!(Domain, "lte_step needs ord_{l}(a - 1) >= 1, got 0");
    }
    if l == 2 && n == 1 {
        bail!(
            Domain,
            "excluded case l = 2 with ord_2(a - 1) = 1: the step does not add exactly one"
        );
    }
    let power = num_traits::pow(a.clone(), l as usize);
    ord_l(l, &(power - BigInt::one()))
}

/// A prime power `q = p^n`, the size of a constant field `F_q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "PrimePowerRepr", into = "PrimePowerRepr")]
pub struct PrimePower {
    p: u64,
    n: u32,
    q: u64,
}

#[derive(Serialize, Deserialize)]
struct PrimePowerRepr {
    p: u64,
    n: u32,
}

impl TryFrom<PrimePowerRepr> for PrimePower {
    type Error = crate::Error;

    fn try_from(r: PrimePowerRepr) -> Result<Self> {
        PrimePower::new(r.p, r.n)
    }
}

impl From<PrimePower> for PrimePowerRepr {
    fn from(q: PrimePower) -> Self {
        PrimePowerRepr { p: q.p, n: q.n }
    }
}

impl PrimePower {
    pub fn new(p: u64, n: u32) -> Result<Self> {
        if !is_prime(p) {
            bail!(Domain, "{p} is not prime");
        }
        if n == 0 {
            bail!(Domain, "exponent must be positive");
        }
        let Some(q) = p.checked_pow(n) else {
            bail!(Size, "{p}^{n} does not fit in 64 bits");
        };
        Ok(PrimePower { p, n, q })
    }

    /// Recognizes `q` as a prime power.
    pub fn from_q(q: u64) -> Result<Self> {
        if q < 2 {
            bail!(Domain, "{q} is not a prime power");
        }
        let f = factor(q)?;
        if f.len() != 1 {
            bail!(Domain, "{q} is not a prime power");
        }
        PrimePower::new(f[0].0, f[0].1)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `q^e` as an arbitrary-precision integer.
    pub fn q_pow(&self, e: u32) -> BigUint {
        num_traits::pow(BigUint::from(self.q), e as usize)
    }

    /// The prime power `q^i`, i.e. the field `F_{q^i}`.
    pub fn extend(&self, i: u32) -> Result<Self> {
        PrimePower::new(self.p, self.n * i)
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}^{}", self.p, self.n)
        }
    }
}
