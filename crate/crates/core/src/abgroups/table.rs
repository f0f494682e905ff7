//! Concrete element-table realizations `Z/m_1 × ... × Z/m_r` and brute-force
//! subgroup machinery for toy-sized groups.

use std::collections::{HashSet, VecDeque};

use super::FiniteAbelianGroup;
use crate::error::{bail, Result};

/// Hard cap for [`subgroups`].
pub const MAX_SUBGROUP_ENUMERATION: u64 = 128;

/// Hard cap for any element table.
pub const MAX_TABLE_ORDER: u64 = 1 << 20;

/// `Z/m_1 × ... × Z/m_r` with elements indexed by mixed radix
/// (first coordinate least significant).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableGroup {
    moduli: Vec<u64>,
    order: u64,
}

/// A subgroup of a [`TableGroup`]: sorted member indices plus the
/// generating set it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    pub generators: Vec<u32>,
    pub elements: Vec<u32>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }
}

impl TableGroup {
    pub fn new(moduli: Vec<u64>) -> Result<Self> {
        if moduli.contains(&0) {
            bail!(Structure, "cyclic factor of order zero");
        }
        let moduli: Vec<u64> = moduli.into_iter().filter(|&m| m > 1).collect();
        let mut order = 1u64;
        for &m in &moduli {
            order = match order.checked_mul(m) {
                Some(o) if o <= MAX_TABLE_ORDER => o,
                _ => bail!(Size, "element table larger than {MAX_TABLE_ORDER}"),
            };
        }
        Ok(TableGroup { moduli, order })
    }

    /// Realizes a group on its primary factors.
    pub fn realize(g: &FiniteAbelianGroup) -> Result<Self> {
        Self::new(g.factors().to_vec())
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn zero(&self) -> u32 {
        0
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.order as u32
    }

    pub fn coords(&self, mut x: u32) -> Vec<u64> {
        self.moduli
            .iter()
            .map(|&m| {
                let c = x as u64 % m;
                x /= m as u32;
                c
            })
            .collect()
    }

    /// Index of a coordinate vector; coordinates are reduced first.
    pub fn index(&self, coords: &[u64]) -> u32 {
        let mut v = 0u64;
        for (&c, &m) in coords.iter().zip(&self.moduli).rev() {
            v = v * m + c % m;
        }
        v as u32
    }

    pub fn index_signed(&self, coords: &[i64]) -> u32 {
        let reduced: Vec<u64> = coords
            .iter()
            .zip(&self.moduli)
            .map(|(&c, &m)| c.rem_euclid(m as i64) as u64)
            .collect();
        self.index(&reduced)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let (mut a, mut b) = (a as u64, b as u64);
        let (mut out, mut w) = (0u64, 1u64);
        for &m in &self.moduli {
            let s = (a % m + b % m) % m;
            out += s * w;
            w *= m;
            a /= m;
            b /= m;
        }
        out as u32
    }

    pub fn neg(&self, a: u32) -> u32 {
        let c: Vec<u64> = self
            .coords(a)
            .iter()
            .zip(&self.moduli)
            .map(|(&x, &m)| (m - x) % m)
            .collect();
        self.index(&c)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn scalar(&self, k: u64, a: u32) -> u32 {
        let c: Vec<u64> = self
            .coords(a)
            .iter()
            .zip(&self.moduli)
            .map(|(&x, &m)| ((x as u128 * k as u128) % m as u128) as u64)
            .collect();
        self.index(&c)
    }

    pub fn element_order(&self, a: u32) -> u64 {
        self.coords(a)
            .iter()
            .zip(&self.moduli)
            .fold(1u64, |acc, (&x, &m)| {
                let o = m / num_integer::gcd(x, m);
                num_integer::lcm(acc, o)
            })
    }

    /// Subgroup generated by `gens`.
    pub fn closure(&self, gens: &[u32]) -> Subgroup {
        let mut seen = vec![false; self.order as usize];
        seen[0] = true;
        let mut members = vec![0u32];
        let mut queue = VecDeque::from([0u32]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.add(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
        members.sort_unstable();
        Subgroup {
            generators: gens.to_vec(),
            elements: members,
        }
    }

    /// `k·H` for a subgroup `H`.
    pub fn multiple(&self, k: u64, h: &Subgroup) -> Subgroup {
        let gens: Vec<u32> = h.generators.iter().map(|&g| self.scalar(k, g)).collect();
        self.closure(&gens)
    }

    pub fn whole(&self) -> Subgroup {
        let gens: Vec<u32> = (0..self.moduli.len())
            .map(|i| {
                let mut c = vec![0u64; self.moduli.len()];
                c[i] = 1;
                self.index(&c)
            })
            .collect();
        self.closure(&gens)
    }

    pub fn intersect(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let elements: Vec<u32> = a.elements.iter().copied().filter(|&x| b.contains(x)).collect();
        Subgroup {
            generators: elements.clone(),
            elements,
        }
    }

    /// Isomorphism type of a subgroup, read off its torsion counts.
    pub fn subgroup_structure(&self, h: &Subgroup) -> Result<FiniteAbelianGroup> {
        self.quotient_structure_of(h, &self.closure(&[]))
    }

    /// Isomorphism type of `H / K` for subgroups `K ⊆ H`.
    pub fn quotient_structure_of(&self, h: &Subgroup, k: &Subgroup) -> Result<FiniteAbelianGroup> {
        if h.order() % k.order() != 0 || !k.elements.iter().all(|&x| h.contains(x)) {
            bail!(Structure, "quotient by a non-subgroup");
        }
        let index = (h.order() / k.order()) as u64;
        let mut factors = Vec::new();
        for (l, e) in crate::arith::factor(index)? {
            let mut logs = Vec::new();
            let mut lk = 1u64;
            loop {
                lk *= l;
                // |(H/K)[l^k]| = #{h : l^k h ∈ K} / |K|
                let count = h
                    .elements
                    .iter()
                    .filter(|&&x| k.contains(self.scalar(lk, x)))
                    .count()
                    / k.order();
                let log = (count as f64).log(l as f64).round() as u32;
                if l.pow(log) as usize != count {
                    bail!(Internal, "torsion count {count} is not a power of {l}");
                }
                logs.push(log);
                if log == e {
                    break;
                }
            }
            factors.extend_from_slice(FiniteAbelianGroup::from_torsion_logs(l, &logs)?.factors());
        }
        FiniteAbelianGroup::from_factors(factors)
    }

    /// Isomorphism type of `G / K`.
    pub fn quotient_structure(&self, k: &Subgroup) -> Result<FiniteAbelianGroup> {
        self.quotient_structure_of(&self.whole(), k)
    }
}

/// Enumerates every subgroup of `g` (`|g| <= 128`) inside the table
/// realization of `g`. Subgroups are grown one generator at a time from the
/// trivial subgroup; each distinct member set is kept once, with the first
/// generating set that reached it. Sorted by order, then by member set.
pub fn subgroups(g: &FiniteAbelianGroup) -> Result<(TableGroup, Vec<Subgroup>)> {
    let order = g.order().unwrap_or(u64::MAX);
    if order > MAX_SUBGROUP_ENUMERATION {
        bail!(
            Size,
            "subgroup enumeration capped at order {MAX_SUBGROUP_ENUMERATION}, got {order}"
        );
    }
    let table = TableGroup::realize(g)?;
    Ok((table.clone(), subgroups_of(&table, &table.whole())))
}

/// All subgroups of `h` (a subgroup of a table group of order `<= 128`).
pub fn subgroups_of(table: &TableGroup, h: &Subgroup) -> Vec<Subgroup> {
    assert!(table.order() <= MAX_SUBGROUP_ENUMERATION);
    let n = table.order() as usize;
    let add: Vec<Vec<u32>> = (0..n as u32)
        .map(|a| (0..n as u32).map(|b| table.add(a, b)).collect())
        .collect();
    let translate = |set: u128, by: u32| -> u128 {
        let mut out = 0u128;
        let mut rest = set;
        while rest != 0 {
            let x = rest.trailing_zeros();
            rest &= rest - 1;
            out |= 1u128 << add[x as usize][by as usize];
        }
        out
    };
    // ⟨H, x⟩ as the union of the cosets H + jx
    let join = |members: u128, x: u32| -> u128 {
        let mut out = members;
        let mut step = x;
        while out >> step & 1 == 0 {
            out |= translate(members, step);
            step = add[step as usize][x as usize];
        }
        out
    };
    let mut seen: HashSet<u128> = HashSet::from([1u128]);
    let mut found: Vec<(u128, Vec<u32>)> = vec![(1u128, Vec::new())];
    let mut cursor = 0;
    while cursor < found.len() {
        let (members, gens) = found[cursor].clone();
        cursor += 1;
        let mut covered = members;
        for &x in &h.elements {
            if covered >> x & 1 == 1 {
                continue;
            }
            // every element of the coset H + x generates the same join
            covered |= translate(members, x);
            let next = join(members, x);
            if seen.insert(next) {
                let mut g = gens.clone();
                g.push(x);
                found.push((next, g));
            }
        }
    }
    let mut out: Vec<Subgroup> = found
        .into_iter()
        .map(|(bits, generators)| Subgroup {
            generators,
            elements: (0..n as u32).filter(|&x| bits >> x & 1 == 1).collect(),
        })
        .collect();
    out.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.elements.cmp(&b.elements))
    });
    out
}
