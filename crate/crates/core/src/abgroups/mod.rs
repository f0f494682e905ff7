//! Finite abelian groups in primary-decomposition form.

mod snf;
mod structure;
mod table;

pub use snf::{smith_normal_form, RelationPresentation, SmithForm};
pub use structure::structure_from_elements;
pub use table::{subgroups, subgroups_of, Subgroup, TableGroup, MAX_SUBGROUP_ENUMERATION};

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::factor;
use crate::error::{bail, Result};

/// Splits a prime power into `(prime, exponent)`.
pub fn prime_power_parts(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        bail!(Input, "{q} is not a prime power >= 2");
    }
    match factor(q)?.as_slice() {
        [(p, e)] => Ok((*p, *e)),
        _ => bail!(Input, "{q} is not a prime power"),
    }
}

/// A finite abelian group stored as its multiset of prime-power cyclic
/// factors, sorted by `(prime, exponent)`. Two values are equal exactly when
/// the groups are isomorphic.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct FiniteAbelianGroup {
    factors: Vec<u64>,
}

impl TryFrom<Vec<u64>> for FiniteAbelianGroup {
    type Error = crate::Error;

    fn try_from(v: Vec<u64>) -> Result<Self> {
        FiniteAbelianGroup::from_factors(v)
    }
}

impl From<FiniteAbelianGroup> for Vec<u64> {
    fn from(g: FiniteAbelianGroup) -> Self {
        g.factors
    }
}

impl fmt::Debug for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.factors.iter().map(|k| format!("Z/{k}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// The comma-separated literal form, e.g. `2,2,9`; empty for the trivial group.
impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(u64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    /// From prime-power cyclic orders, in any order.
    pub fn from_factors(factors: Vec<u64>) -> Result<Self> {
        let mut keyed = Vec::with_capacity(factors.len());
        for k in factors {
            let (p, e) = prime_power_parts(k)?;
            keyed.push((p, e, k));
        }
        keyed.sort_unstable();
        Ok(FiniteAbelianGroup {
            factors: keyed.into_iter().map(|(_, _, k)| k).collect(),
        })
    }

    /// From arbitrary cyclic orders (invariant factors or not); orders equal
    /// to 1 are dropped, 0 is rejected.
    pub fn from_cyclic_orders(orders: &[u64]) -> Result<Self> {
        let mut factors = Vec::new();
        for &d in orders {
            if d == 0 {
                bail!(Structure, "infinite cyclic factor in a finite group");
            }
            for (p, e) in factor(d)? {
                factors.push(p.pow(e));
            }
        }
        Self::from_factors(factors)
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::from_cyclic_orders(&[n])
    }

    /// Direct product.
    pub fn product(&self, other: &Self) -> Self {
        let mut f = self.factors.clone();
        f.extend_from_slice(&other.factors);
        Self::from_factors(f).expect("factors are already prime powers")
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn order_big(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, &k| acc * BigUint::from(k))
    }

    /// Order as a machine integer, when it fits.
    pub fn order(&self) -> Option<u64> {
        self.factors.iter().try_fold(1u64, |acc, &k| acc.checked_mul(k))
    }

    fn prime_of(k: u64) -> u64 {
        prime_power_parts(k).expect("stored factors are prime powers").0
    }

    /// The `l`-primary component.
    pub fn l_part(&self, l: u64) -> Self {
        FiniteAbelianGroup {
            factors: self
                .factors
                .iter()
                .copied()
                .filter(|&k| Self::prime_of(k) == l)
                .collect(),
        }
    }

    /// Everything except the `p`-primary component.
    pub fn non_p_part(&self, p: u64) -> Self {
        FiniteAbelianGroup {
            factors: self
                .factors
                .iter()
                .copied()
                .filter(|&k| Self::prime_of(k) != p)
                .collect(),
        }
    }

    /// Primes dividing the order, ascending.
    pub fn primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self.factors.iter().map(|&k| Self::prime_of(k)).collect();
        ps.dedup();
        ps
    }

    /// Number of cyclic factors of `l`-power order, i.e. `dim_{F_l} G[l]`.
    pub fn rank_at(&self, l: u64) -> usize {
        self.l_part(l).factors.len()
    }

    pub fn two_rank(&self) -> usize {
        self.rank_at(2)
    }

    /// Least common multiple of the factors.
    pub fn exponent(&self) -> u64 {
        let mut e = 1u64;
        for p in self.primes() {
            e *= self.l_part(p).factors.iter().copied().max().unwrap_or(1);
        }
        e
    }

    /// `|G[l^k]| = Π l^{min(k, e_i)}` over the `l`-power factors.
    pub fn torsion_count(&self, l: u64, k: u32) -> BigUint {
        self.l_part(l).factors.iter().fold(BigUint::one(), |acc, &q| {
            let e = prime_power_parts(q).unwrap().1;
            acc * BigUint::from(l).pow(e.min(k))
        })
    }

    /// Invariant factors `d_1 | d_2 | ... | d_r`, ascending; empty when trivial.
    pub fn invariant_factors(&self) -> Vec<u64> {
        let parts: Vec<Vec<u64>> = self
            .primes()
            .into_iter()
            .map(|p| self.l_part(p).factors)
            .collect();
        let r = parts.iter().map(Vec::len).max().unwrap_or(0);
        let mut out = vec![1u64; r];
        for part in parts {
            // ascending within the prime, so align to the top
            let offset = r - part.len();
            for (i, k) in part.into_iter().enumerate() {
                out[offset + i] *= k;
            }
        }
        out
    }

    /// Rebuilds the `l`-part from `log_l |G[l^k]|` for `k = 1, 2, ...`
    /// (the sequence must be nondecreasing and eventually constant).
    pub fn from_torsion_logs(l: u64, logs: &[u32]) -> Result<Self> {
        let mut at_least = Vec::with_capacity(logs.len() + 1);
        let mut prev = 0u32;
        for &c in logs {
            if c < prev {
                bail!(Structure, "torsion counts must be nondecreasing");
            }
            at_least.push(c - prev);
            prev = c;
        }
        at_least.push(0);
        let mut factors = Vec::new();
        for k in 0..logs.len() {
            if at_least[k + 1] > at_least[k] {
                bail!(Structure, "torsion counts are not those of an abelian l-group");
            }
            let exactly = at_least[k] - at_least[k + 1];
            for _ in 0..exactly {
                factors.push(l.pow(k as u32 + 1));
            }
        }
        Self::from_factors(factors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(f: &[u64]) -> FiniteAbelianGroup {
        FiniteAbelianGroup::from_factors(f.to_vec()).unwrap()
    }

    #[test]
    fn canonical_ordering() {
        assert_eq!(g(&[9, 2, 4, 2]).factors(), &[2, 2, 4, 9]);
        assert_eq!(g(&[9, 2, 4]), g(&[4, 9, 2]));
        assert!(FiniteAbelianGroup::from_factors(vec![6]).is_err());
        assert!(FiniteAbelianGroup::from_factors(vec![1]).is_err());
        assert_eq!(FiniteAbelianGroup::cyclic(12).unwrap(), g(&[4, 3]));
    }

    #[test]
    fn primary_parts() {
        let z12 = FiniteAbelianGroup::cyclic(12).unwrap();
        assert_eq!(z12.l_part(2), g(&[4]));
        assert_eq!(FiniteAbelianGroup::trivial().l_part(5), FiniteAbelianGroup::trivial());
        assert_eq!(g(&[2, 4, 9]).l_part(3), g(&[9]));
        assert_eq!(g(&[2, 4, 9]).non_p_part(2), g(&[9]));
    }

    #[test]
    fn two_rank_examples() {
        assert_eq!(g(&[2, 4]).two_rank(), 2);
        assert_eq!(g(&[9]).two_rank(), 0);
        assert_eq!(g(&[2, 2, 8]).two_rank(), 3);
    }

    #[test]
    fn invariant_factor_conversion() {
        let grp = g(&[2, 4, 3, 9, 5]);
        assert_eq!(grp.invariant_factors(), vec![6, 180]);
        let back = FiniteAbelianGroup::from_cyclic_orders(&grp.invariant_factors()).unwrap();
        assert_eq!(back, grp);
        assert_eq!(FiniteAbelianGroup::trivial().invariant_factors(), Vec::<u64>::new());
        assert_eq!(grp.exponent(), 180);
    }

    #[test]
    fn torsion_round_trip() {
        let grp = g(&[2, 8, 8, 32]);
        let logs: Vec<u32> = (1..=6)
            .map(|k| grp.torsion_count(2, k).bits() as u32 - 1)
            .collect();
        assert_eq!(FiniteAbelianGroup::from_torsion_logs(2, &logs).unwrap(), grp);
    }

    #[test]
    fn l_part_orders_multiply_to_l_power() {
        let grp = g(&[2, 4, 3, 27, 25, 7]);
        for l in [2u64, 3, 5, 7, 11] {
            let part = grp.l_part(l).order().unwrap();
            let mut n = grp.order().unwrap();
            let mut expect = 1;
            while n % l == 0 {
                n /= l;
                expect *= l;
            }
            assert_eq!(part, expect);
        }
    }

    #[test]
    fn display_literal() {
        assert_eq!(g(&[9, 2, 2]).to_string(), "2,2,9");
        assert_eq!(FiniteAbelianGroup::trivial().to_string(), "");
        let json = serde_json::to_string(&g(&[4, 2])).unwrap();
        assert_eq!(json, "[2,4]");
        assert!(serde_json::from_str::<FiniteAbelianGroup>("[6]").is_err());
    }
}
