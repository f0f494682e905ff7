//! Invariants of the torsion group `T_q` and of `G^ab_K`.
//!
//! `T_q ≅ Π_{l,m} (Z/l^m)^{a_{l,m}}` where every multiplicity `a_{l,m}` is
//! either zero or countably infinite. For a prime `l ≠ p` the infinite ones
//! are exactly `m >= N_q(l)`, plus the isolated `m = 1` when `l = 2` and
//! `q ≡ 3 (mod 4)`. Everything here works with those thresholds; the groups
//! themselves are never built.
//!
//! The full invariant of `G^ab_K` is `(p, d_K, CL⁰_{non-p}(K))`. The factors
//! `Z_p^∞` and `Ẑ` occurring in `G^ab_K` are the same for every function field
//! of characteristic `p` and carry no data.

use std::collections::BTreeMap;
use std::sync::RwLock;

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::abgroups::FiniteAbelianGroup;
use crate::arith::{is_prime, ord_l, ord_l_i128, primes_up_to, PrimePower};
use crate::error::{bail, Result};

/// Largest `j` tried when searching `q^{l-1} ≡ 1 (mod l^j)`.
pub const MAX_LIFT: u64 = 64;

/// The prime-to-`p` part of `n`, where `q = p^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DInvariant(u64);

impl DInvariant {
    pub fn new(d: u64, p: u64) -> Result<Self> {
        if d == 0 || d % p == 0 {
            bail!(Domain, "d = {d} must be positive and coprime to p = {p}");
        }
        Ok(DInvariant(d))
    }

    pub fn value(self) -> u64 {
        self.0
    }
}

/// `p★ = (−1)^{(p−1)/2} p` for odd `p`, and `2` for `p = 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PStar(i64);

impl PStar {
    pub fn of(p: u64) -> Self {
        if p % 4 == 3 {
            PStar(-(p as i64))
        } else {
            PStar(p as i64)
        }
    }

    pub fn value(self) -> i64 {
        self.0
    }
}

pub fn d_of(q: PrimePower) -> DInvariant {
    let mut n = q.n() as u64;
    while n % q.p() == 0 {
        n /= q.p();
    }
    DInvariant(n)
}

pub fn p_star(q: PrimePower) -> PStar {
    PStar::of(q.p())
}

/// Largest `N` with `base ≡ 1 (mod l^N)`, given `base ≡ 1 (mod l)`; the
/// power `base^e` is only ever reduced modulo `l^{j+1}`.
fn lift_depth(base: u64, e: u64, l: u64) -> Result<u64> {
    let l_big = BigUint::from(l);
    let base = BigUint::from(base);
    let e = BigUint::from(e);
    let mut modulus = l_big.clone();
    for j in 1..=MAX_LIFT {
        modulus *= &l_big;
        if base.modpow(&e, &modulus) != BigUint::one() {
            return Ok(j);
        }
    }
    bail!(
        Internal,
        "q^e ≡ 1 modulo {l}^{} — lifting depth cap exceeded",
        MAX_LIFT + 1
    )
}

/// `N_q(l) = ord_l(q^{l−1} − 1)` for an odd prime `l ≠ p`.
pub fn n_of_l(q: PrimePower, l: u64) -> Result<u64> {
    if !is_prime(l) {
        bail!(Domain, "{l} is not prime");
    }
    if l == 2 {
        bail!(Domain, "l = 2 has its own threshold rule; use n_of_2");
    }
    if l == q.p() {
        bail!(Domain, "l = p = {l}: all a_{{p,m}} vanish, no threshold");
    }
    lift_depth(q.q(), l - 1, l)
}

/// Threshold for `l = 2` with `p` odd: `(N(2), extra_m1)`.
///
/// `q ≡ 1 (mod 4)` gives `N = ord_2(q − 1)` and no extra level;
/// `q ≡ 3 (mod 4)` gives `N = ord_2(q² − 1)` and `a_{2,1}` infinite as well.
pub fn n_of_2(q: PrimePower) -> Result<(u64, bool)> {
    if q.p() == 2 {
        bail!(Domain, "p = 2: every a_{{2,m}} vanishes");
    }
    let qq = q.q() as i128;
    if qq % 4 == 1 {
        Ok((ord_l_i128(2, qq - 1)?, false))
    } else {
        Ok((ord_l_i128(2, qq * qq - 1)?, true))
    }
}

/// `N(l) = ord_l(p^{l−1} − 1) + ord_l(d)` for an odd prime `l ≠ p`.
pub fn n_of_l_via_formula(p: u64, d: DInvariant, l: u64) -> Result<u64> {
    if l == 2 || l == p || !is_prime(l) {
        bail!(Domain, "formula needs an odd prime l ≠ p, got l = {l}, p = {p}");
    }
    Ok(lift_depth(p, l - 1, l)? + ord_l_i128(l, d.value() as i128)?)
}

/// Per-prime slice of a [`TqProfile`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LProfile {
    /// `None` encodes the `l = p` sentinel (no infinite multiplicities).
    pub threshold: Option<u64>,
    pub extra_m1: bool,
}

impl LProfile {
    pub fn is_infinite(&self, m: u64) -> bool {
        match self.threshold {
            None => false,
            Some(n) => m >= n || (self.extra_m1 && m == 1),
        }
    }

    /// Least `m` with `a_{l,m}` infinite.
    pub fn least_level(&self) -> Option<u64> {
        let n = self.threshold?;
        Some(if self.extra_m1 { 1 } else { n })
    }
}

/// The multiplicity pattern of `T_q`, evaluated lazily per prime.
#[derive(Debug)]
pub struct TqProfile {
    q: PrimePower,
    cache: RwLock<BTreeMap<u64, LProfile>>,
}

impl Clone for TqProfile {
    fn clone(&self) -> Self {
        TqProfile {
            q: self.q,
            cache: RwLock::new(self.cache.read().unwrap().clone()),
        }
    }
}

impl TqProfile {
    pub fn new(q: PrimePower) -> Self {
        TqProfile {
            q,
            cache: RwLock::new(BTreeMap::new()),
        }
    }

    pub fn q(&self) -> PrimePower {
        self.q
    }

    pub fn at(&self, l: u64) -> Result<LProfile> {
        if let Some(hit) = self.cache.read().unwrap().get(&l) {
            return Ok(*hit);
        }
        if !is_prime(l) {
            bail!(Domain, "{l} is not prime");
        }
        let prof = if l == self.q.p() {
            LProfile {
                threshold: None,
                extra_m1: false,
            }
        } else if l == 2 {
            let (n, extra) = n_of_2(self.q)?;
            LProfile {
                threshold: Some(n),
                extra_m1: extra,
            }
        } else {
            LProfile {
                threshold: Some(n_of_l(self.q, l)?),
                extra_m1: false,
            }
        };
        self.cache.write().unwrap().insert(l, prof);
        Ok(prof)
    }

    /// Whether `a_{l,m}` is (countably) infinite; otherwise it is zero.
    pub fn a_lm_infinite(&self, l: u64, m: u64) -> Result<bool> {
        if m == 0 {
            bail!(Domain, "level m must be positive");
        }
        Ok(self.at(l)?.is_infinite(m))
    }

    /// Least `m` such that `Z/l^m` is a direct summand.
    pub fn s_l(&self, l: u64) -> Result<u64> {
        if l == self.q.p() {
            bail!(Domain, "s_l undefined for l = p = {l}");
        }
        Ok(self.at(l)?.least_level().expect("l ≠ p has a threshold"))
    }

    /// Recovers `p` as the only prime `<= bound` whose slice is empty.
    pub fn recover_characteristic(&self, bound: u64) -> Option<u64> {
        primes_up_to(bound)
            .into_iter()
            .find(|&l| matches!(self.at(l), Ok(LProfile { threshold: None, .. })))
    }
}

/// `ord_l(d)` recovered from `s_l`:
/// `0` when `l = 2` and `s_2 = 1`, otherwise `s_l − ord_l((p★)^{l−1} − 1)`.
pub fn recover_ord_l_d(s: u64, l: u64, p: u64) -> Result<u64> {
    if l == p {
        bail!(Domain, "l must differ from p = {p}");
    }
    if l == 2 && s == 1 {
        return Ok(0);
    }
    let pstar = BigInt::from(PStar::of(p).value());
    let shifted = num_traits::pow(pstar, (l - 1) as usize) - BigInt::one();
    let offset = ord_l(l, &shifted)?;
    match s.checked_sub(offset) {
        Some(v) => Ok(v),
        None => bail!(
            Internal,
            "s_{l} = {s} is below ord_{l}((p★)^(l−1) − 1) = {offset}; corrupted profile"
        ),
    }
}

/// `T_{q1} ≅ T_{q2}` iff the characteristics agree and `d_{q1} = d_{q2}`.
pub fn tq_isomorphic(q1: PrimePower, q2: PrimePower) -> bool {
    q1.p() == q2.p() && d_of(q1) == d_of(q2)
}

/// Primes `l <= l_max`, `l ≠ p`, with `N_q(l) > 1`. The prime 2 is reported
/// only when `q ≡ 1 (mod 4)`; the `q ≡ 3 (mod 4)` case has `s_2 = 1`.
pub fn exceptional_scan(q: PrimePower, l_max: u64) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for l in primes_up_to(l_max) {
        if l == q.p() {
            continue;
        }
        let exceptional = if l == 2 {
            let (n, extra) = n_of_2(q)?;
            !extra && n > 1
        } else {
            n_of_l(q, l)? > 1
        };
        if exceptional {
            out.push(l);
        }
    }
    Ok(out)
}

/// Complete isomorphism invariant of `G^ab_K`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GabInvariant {
    p: u64,
    d: DInvariant,
    cl_non_p: FiniteAbelianGroup,
}

impl GabInvariant {
    /// From the constant field and the full degree-zero class group; the
    /// `p`-part of the class group is discarded.
    pub fn new(q: PrimePower, class_group: &FiniteAbelianGroup) -> Self {
        GabInvariant {
            p: q.p(),
            d: d_of(q),
            cl_non_p: class_group.non_p_part(q.p()),
        }
    }

    pub fn from_parts(p: u64, d: DInvariant, cl_non_p: FiniteAbelianGroup) -> Result<Self> {
        if !is_prime(p) {
            bail!(Domain, "{p} is not prime");
        }
        if d.value() % p == 0 {
            bail!(Domain, "d must be coprime to p");
        }
        if cl_non_p.order_big() % p == BigUint::from(0u32) {
            bail!(Domain, "class group part must have order coprime to p = {p}");
        }
        Ok(GabInvariant { p, d, cl_non_p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn d(&self) -> DInvariant {
        self.d
    }

    /// The quotient `(G^ab / closure of torsion)[tor]`, which at the level of
    /// invariants is the stored non-`p` class group itself.
    pub fn recover_cl_non_p(&self) -> &FiniteAbelianGroup {
        &self.cl_non_p
    }
}

/// Which of the three conditions hold between two invariants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GabComparison {
    pub same_characteristic: bool,
    pub same_d: bool,
    pub same_cl_non_p: bool,
}

impl GabComparison {
    pub fn isomorphic(&self) -> bool {
        self.same_characteristic && self.same_d && self.same_cl_non_p
    }
}

pub fn gab_compare(a: &GabInvariant, b: &GabInvariant) -> GabComparison {
    GabComparison {
        same_characteristic: a.p == b.p,
        same_d: a.d == b.d,
        same_cl_non_p: a.cl_non_p == b.cl_non_p,
    }
}

pub fn gab_isomorphic(a: &GabInvariant, b: &GabInvariant) -> bool {
    gab_compare(a, b).isomorphic()
}

/// Per-prime line of a reconstruction report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecoveredValuation {
    pub l: u64,
    pub s_l: u64,
    pub ord_l_d: u64,
    pub expected: u64,
}

/// Reads `(p, d, CL⁰_{non-p})` back off the profile and the invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reconstruction {
    pub p: u64,
    pub valuations: Vec<RecoveredValuation>,
    /// `Π l^{ord_l(d)}` over the scanned primes.
    pub d_recovered: u64,
    pub cl_non_p: FiniteAbelianGroup,
}

impl Reconstruction {
    pub fn consistent(&self, inv: &GabInvariant) -> bool {
        self.p == inv.p
            && self.d_recovered == inv.d.value()
            && self.valuations.iter().all(|v| v.ord_l_d == v.expected)
            && self.cl_non_p == inv.cl_non_p
    }
}

pub fn reconstruct(q: PrimePower, inv: &GabInvariant, l_max: u64) -> Result<Reconstruction> {
    let profile = TqProfile::new(q);
    let p = profile
        .recover_characteristic(l_max.max(q.p()))
        .ok_or_else(|| crate::Error::Internal("no prime with empty profile".into()))?;
    let mut valuations = Vec::new();
    let mut d_recovered = 1u64;
    for l in primes_up_to(l_max) {
        if l == p {
            continue;
        }
        let s = profile.s_l(l)?;
        let v = recover_ord_l_d(s, l, p)?;
        d_recovered = d_recovered
            .saturating_mul(l.checked_pow(v as u32).unwrap_or(u64::MAX));
        valuations.push(RecoveredValuation {
            l,
            s_l: s,
            ord_l_d: v,
            expected: ord_l_i128(l, inv.d.value() as i128)?,
        });
    }
    Ok(Reconstruction {
        p,
        valuations,
        d_recovered,
        cl_non_p: inv.recover_cl_non_p().clone(),
    })
}
