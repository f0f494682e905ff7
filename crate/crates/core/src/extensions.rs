//! Finite truncations of the extension `0 → A → B → ⊕ C_i → 0` in which
//! `A` is the divisible core of `B`.
//!
//! `B` is presented by `A` together with generators `X_m` and relations
//! `k_m X_m = a_m`, where `C_m = Z/k_m` and the assignment `a_m ∈ A` walks
//! through the generators of `A` along indices of growing order: for
//! `i = 1, 2, ...`, the index `j_i` is the smallest unused `m` with
//! `k_m ≥ l^i`, and `a_{j_i} = α_{i mod n}`; every other `a_m` is zero.
//!
//! The *level* of index `m` is `ord_l(k_m)`. An assignment generates at
//! level `i` when `{a_m : level(m) ≥ i}` generates `A`; the covered level
//! `n₀` is the largest `i` at which it does. At truncation the divisibility
//! condition `A = ∩ nB` becomes `A ⊆ l^n B` for `n ≤ n₀`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::abgroups::{
    subgroups_of, FiniteAbelianGroup, RelationPresentation, Subgroup, TableGroup,
    MAX_SUBGROUP_ENUMERATION,
};
use crate::arith::is_prime;
use crate::error::{bail, Result};

/// Cap on element tables built from a spec.
pub const MAX_REALIZED_ORDER: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedExtensionSpec {
    l: u64,
    a: FiniteAbelianGroup,
    generators: Vec<Vec<u64>>,
    orders: Vec<u64>,
    assignment: Vec<Vec<u64>>,
}

fn level_of(l: u64, mut k: u64) -> Option<u32> {
    let mut v = 0;
    while k % l == 0 {
        k /= l;
        v += 1;
    }
    (k == 1 && v > 0).then_some(v)
}

impl TruncatedExtensionSpec {
    /// Standard generators (the cyclic factors of `A`) and the standard assignment.
    pub fn new(l: u64, a: FiniteAbelianGroup, orders: Vec<u64>) -> Result<Self> {
        let generators = (0..a.factors().len())
            .map(|i| (0..a.factors().len()).map(|j| (i == j) as u64).collect())
            .collect();
        Self::with_generators(l, a, generators, orders)
    }

    /// A caller-chosen generator list `α_0, ..., α_{n−1}` (coordinate vectors
    /// over the cyclic factors of `A`), which must generate `A`.
    pub fn with_generators(
        l: u64,
        a: FiniteAbelianGroup,
        generators: Vec<Vec<u64>>,
        orders: Vec<u64>,
    ) -> Result<Self> {
        if !is_prime(l) {
            bail!(Spec, "{l} is not prime");
        }
        if a.primes().iter().any(|&r| r != l) {
            bail!(Spec, "A = {a:?} is not an {l}-group");
        }
        if orders.is_empty() {
            bail!(Spec, "need at least one quotient order");
        }
        if let Some(&k) = orders.iter().find(|&&k| level_of(l, k).is_none()) {
            bail!(Spec, "order {k} is not a positive power of {l}");
        }
        let mut spec = TruncatedExtensionSpec {
            l,
            a,
            generators: Vec::new(),
            orders,
            assignment: Vec::new(),
        };
        for g in &generators {
            spec.check_element(g)?;
        }
        if !spec.generate(&generators) {
            bail!(Spec, "the chosen generators do not generate A");
        }
        spec.generators = generators;
        spec.assignment = spec.standard_assignment();
        Ok(spec)
    }

    /// The same `(l, A, generators, orders)` with a different assignment.
    pub fn with_assignment(&self, assignment: Vec<Vec<u64>>) -> Result<Self> {
        if assignment.len() != self.orders.len() {
            bail!(
                Spec,
                "assignment has {} entries for {} orders",
                assignment.len(),
                self.orders.len()
            );
        }
        for x in &assignment {
            self.check_element(x)?;
        }
        Ok(TruncatedExtensionSpec {
            assignment,
            ..self.clone()
        })
    }

    /// All `a_m = 0`: the split extension `A ⊕ (⊕ C_m)`.
    pub fn split(&self) -> Self {
        TruncatedExtensionSpec {
            assignment: vec![self.zero(); self.orders.len()],
            ..self.clone()
        }
    }

    fn zero(&self) -> Vec<u64> {
        vec![0; self.a.factors().len()]
    }

    fn check_element(&self, x: &[u64]) -> Result<()> {
        let e = self.a.factors();
        if x.len() != e.len() || x.iter().zip(e).any(|(&c, &m)| c >= m) {
            bail!(Spec, "{x:?} is not a reduced element of A = {:?}", self.a);
        }
        Ok(())
    }

    pub fn l(&self) -> u64 {
        self.l
    }

    pub fn a(&self) -> &FiniteAbelianGroup {
        &self.a
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn generators(&self) -> &[Vec<u64>] {
        &self.generators
    }

    pub fn assignment(&self) -> &[Vec<u64>] {
        &self.assignment
    }

    pub fn levels(&self) -> Vec<u32> {
        self.orders
            .iter()
            .map(|&k| level_of(self.l, k).expect("validated"))
            .collect()
    }

    /// `j_1, j_2, ...`: for each `i`, the smallest unused index with `k ≥ l^i`.
    pub fn hit_indices(&self) -> Vec<usize> {
        let levels = self.levels();
        let mut used = vec![false; levels.len()];
        let mut hits = Vec::new();
        for i in 1.. {
            match (0..levels.len()).find(|&m| !used[m] && levels[m] >= i) {
                Some(m) => {
                    used[m] = true;
                    hits.push(m);
                }
                None => break,
            }
        }
        hits
    }

    fn standard_assignment(&self) -> Vec<Vec<u64>> {
        let mut out = vec![self.zero(); self.orders.len()];
        let n = self.generators.len();
        if n == 0 {
            return out;
        }
        for (i, m) in self.hit_indices().into_iter().enumerate() {
            out[m] = self.generators[(i + 1) % n].clone();
        }
        out
    }

    /// Whether `xs` generates `A`, decided in the element table of `A`.
    fn generate(&self, xs: &[Vec<u64>]) -> bool {
        let table = TableGroup::realize(&self.a).expect("A is small");
        let gens: Vec<u32> = xs.iter().map(|x| table.index(x)).collect();
        table.closure(&gens).order() as u64 == table.order()
    }

    /// Whether `{a_m : level(m) ≥ i}` generates `A`.
    pub fn generates_at(&self, i: u32) -> bool {
        let levels = self.levels();
        let xs: Vec<Vec<u64>> = self
            .assignment
            .iter()
            .zip(&levels)
            .filter(|(_, &v)| v >= i)
            .map(|(x, _)| x.clone())
            .collect();
        self.generate(&xs)
    }

    /// `n₀`: the largest level at which the assignment generates `A`.
    pub fn covered_level(&self) -> u32 {
        let top = self.levels().into_iter().max().unwrap_or(0);
        (0..=top).rev().find(|&i| self.generates_at(i)).unwrap_or(0)
    }

    /// Valid specs hit every generator at least once (`n₀ ≥ 1`).
    pub fn is_valid(&self) -> bool {
        self.a.is_trivial() || self.covered_level() >= 1
    }

    /// Generators `g_1..g_r` of `A`, then `X_1..X_M`.
    pub fn presentation(&self) -> RelationPresentation {
        let r = self.a.factors().len();
        let total = r + self.orders.len();
        let mut rels = Vec::with_capacity(total);
        for (j, &e) in self.a.factors().iter().enumerate() {
            let mut row = vec![0i64; total];
            row[j] = e as i64;
            rels.push(row);
        }
        for (m, (&k, a)) in self.orders.iter().zip(&self.assignment).enumerate() {
            let mut row = vec![0i64; total];
            row[r + m] = k as i64;
            for (j, &c) in a.iter().enumerate() {
                row[j] = -(c as i64);
            }
            rels.push(row);
        }
        RelationPresentation::new(total, rels).expect("rows have the right length")
    }

    /// A different assignment giving the same `B`, built from moves that are
    /// Tietze transformations of the presentation: shuffling entries among
    /// indices of equal level, `a_m += c·a_j` for `j ≠ m` with
    /// `level(j) ≥ level(m)`, and `a_m += k_m·x` for `x ∈ A`. Only indices at
    /// or below the covered level move, and each move keeps level-wise
    /// generation intact.
    pub fn reordered(&self, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let levels = self.levels();
        let n0 = self.covered_level();
        let e = self.a.factors().to_vec();
        let mut a = self.assignment.clone();
        let movable: Vec<usize> = (0..a.len()).filter(|&m| levels[m] <= n0).collect();
        for lvl in 1..=n0 {
            let same: Vec<usize> = movable.iter().copied().filter(|&m| levels[m] == lvl).collect();
            let mut entries: Vec<Vec<u64>> = same.iter().map(|&m| a[m].clone()).collect();
            entries.shuffle(&mut rng);
            for (m, x) in same.into_iter().zip(entries) {
                a[m] = x;
            }
        }
        if !e.is_empty() && !movable.is_empty() {
            let exp = self.a.exponent();
            for _ in 0..3 * a.len() {
                let m = movable[rng.gen_range(0..movable.len())];
                let partners: Vec<usize> =
                    (0..a.len()).filter(|&j| j != m && levels[j] >= levels[m]).collect();
                if !partners.is_empty() && rng.gen_bool(0.7) {
                    let j = partners[rng.gen_range(0..partners.len())];
                    let c = rng.gen_range(0..exp);
                    for t in 0..e.len() {
                        a[m][t] = (a[m][t] + c * a[j][t]) % e[t];
                    }
                } else {
                    let k = self.orders[m];
                    for t in 0..e.len() {
                        let x = rng.gen_range(0..e[t]);
                        a[m][t] = (a[m][t] + (k % e[t]) * x) % e[t];
                    }
                }
            }
        }
        self.with_assignment(a).expect("moves keep entries reduced")
    }
}

/// The isomorphism class of the truncated `B`.
pub fn construct_b(spec: &TruncatedExtensionSpec) -> Result<FiniteAbelianGroup> {
    spec.presentation().smith().group()
}

/// `B` as an element table, with `A` inside it.
#[derive(Debug, Clone)]
pub struct RealizedExtension {
    pub table: TableGroup,
    pub a: Subgroup,
}

pub fn realize(spec: &TruncatedExtensionSpec) -> Result<RealizedExtension> {
    let smith = spec.presentation().smith();
    let b = smith.group()?;
    let order = b.order().unwrap_or(u64::MAX);
    if order > MAX_REALIZED_ORDER {
        bail!(Size, "|B| = {order} exceeds the table cap {MAX_REALIZED_ORDER}");
    }
    let table = TableGroup::new(smith.nontrivial_orders())?;
    let r = spec.a.factors().len();
    let total = r + spec.orders.len();
    let gens: Vec<u32> = (0..r)
        .map(|j| {
            let mut x = vec![0i64; total];
            x[j] = 1;
            table.index(&smith.reduce(&x))
        })
        .collect();
    let a = table.closure(&gens);
    Ok(RealizedExtension { table, a })
}

impl RealizedExtension {
    /// `B/A` in canonical form.
    pub fn quotient(&self) -> Result<FiniteAbelianGroup> {
        self.table.quotient_structure(&self.a)
    }

    /// The dual sequence `0 → C^∨ → B^∨ → A^∨ → 0`, realized on the same
    /// table through the perfect pairing `⟨x, y⟩ = Σ x_i y_i / d_i` on
    /// `⊕ Z/d_i`: `B^∨ ≅ B`, and `C^∨ = (B/A)^∨` is the annihilator of `A`.
    pub fn dual(&self) -> (TableGroup, Subgroup) {
        let d = self.table.moduli().to_vec();
        let big = d.iter().fold(1u64, |acc, &x| num_integer::lcm(acc, x));
        let a_gens: Vec<Vec<u64>> = self.a.generators.iter().map(|&g| self.table.coords(g)).collect();
        let elements: Vec<u32> = self
            .table
            .elements()
            .filter(|&y| {
                let yc = self.table.coords(y);
                a_gens.iter().all(|x| {
                    let s: u128 = (0..d.len())
                        .map(|i| x[i] as u128 * yc[i] as u128 * (big / d[i]) as u128)
                        .sum();
                    s % big as u128 == 0
                })
            })
            .collect();
        let ann = Subgroup {
            generators: elements.clone(),
            elements,
        };
        (self.table.clone(), ann)
    }

    /// Totally non-split check applied to the dual sequence; see [`RealizedExtension::dual`].
    pub fn dual_is_totally_non_split(&self) -> Result<bool> {
        let (table, ann) = self.dual();
        is_totally_non_split(&table, &ann)
    }
}

fn mask(s: &Subgroup) -> u128 {
    s.elements.iter().fold(0u128, |acc, &x| acc | 1u128 << x)
}

/// Whether `0 → A → B → B/A → 0` admits no splitting over any nontrivial
/// subgroup `S` of `B/A`: for every `H` with `A ⊊ H ≤ B` (the preimage of
/// `S`), no `T ≤ H` has `T ∩ A = 0` and `T + A = H`.
pub fn is_totally_non_split(b: &TableGroup, a: &Subgroup) -> Result<bool> {
    if b.order() > MAX_SUBGROUP_ENUMERATION {
        bail!(
            Size,
            "|B| = {} exceeds the subgroup enumeration cap {MAX_SUBGROUP_ENUMERATION}",
            b.order()
        );
    }
    let subs: Vec<u128> = subgroups_of(b, &b.whole()).iter().map(mask).collect();
    let am = mask(a);
    let a_order = am.count_ones();
    for &h in subs.iter().filter(|&&h| h & am == am && h != am) {
        let want = h.count_ones() / a_order;
        let splits = subs
            .iter()
            .any(|&t| t & !h == 0 && t & am == 1 && t.count_ones() == want);
        if splits {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Equivalent criterion: the sequence is totally non-split exactly when every
/// element of prime order of `B` already lies in `A` (a splitting over `S`
/// restricts to one over any prime-order subgroup of `S`, and one over
/// `⟨c⟩`, `c` of prime order `r`, is a lift of `c` killed by `r`).
pub fn socle_in_subgroup(b: &TableGroup, a: &Subgroup) -> bool {
    b.elements().all(|x| {
        let o = b.element_order(x);
        o == 1 || !is_prime(o) || a.contains(x)
    })
}

/// `∩_{n=1}^{l^depth} nB`. Since `nB` depends only on `gcd(n, exp B)`,
/// `n` runs up to `min(l^depth, exp B)`.
pub fn divisible_core(b: &TableGroup, l: u64, depth: u32) -> Result<Subgroup> {
    if b.order() > MAX_REALIZED_ORDER {
        bail!(Size, "|B| = {} exceeds the table cap {MAX_REALIZED_ORDER}", b.order());
    }
    let whole = b.whole();
    let exp = b.moduli().iter().fold(1u64, |acc, &m| num_integer::lcm(acc, m));
    let top = l.checked_pow(depth).map_or(exp, |x| x.min(exp));
    let mut core = whole.clone();
    for n in 1..=top {
        core = b.intersect(&core, &b.multiple(n, &whole));
        if core.is_trivial() {
            break;
        }
    }
    Ok(core)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniquenessDemo {
    pub b: FiniteAbelianGroup,
    pub b_alt: FiniteAbelianGroup,
    pub covered_level: u32,
    pub isomorphic: bool,
}

/// Builds `B` and `B'` from two assignments over the same `(l, A, orders)`
/// and compares them. Both assignments must generate `A` at every level
/// `1..=n₀` (`n₀` the covered level of `spec`) and must agree at indices
/// above `n₀`.
pub fn uniqueness_demo(
    spec: &TruncatedExtensionSpec,
    alt: &TruncatedExtensionSpec,
) -> Result<UniquenessDemo> {
    if spec.l != alt.l || spec.a != alt.a || spec.orders != alt.orders {
        bail!(Spec, "the two specs must share l, A and the orders");
    }
    let n0 = spec.covered_level();
    for i in 1..=n0 {
        if !spec.generates_at(i) {
            bail!(Spec, "first assignment does not generate A at level {i}");
        }
        if !alt.generates_at(i) {
            bail!(Spec, "second assignment does not generate A at level {i}");
        }
    }
    for (m, v) in spec.levels().into_iter().enumerate() {
        if v > n0 && spec.assignment[m] != alt.assignment[m] {
            bail!(
                Spec,
                "assignments differ at index {m} of level {v}, above the covered level {n0}"
            );
        }
    }
    let b = construct_b(spec)?;
    let b_alt = construct_b(alt)?;
    Ok(UniquenessDemo {
        isomorphic: b == b_alt,
        b,
        b_alt,
        covered_level: n0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(f: &[u64]) -> FiniteAbelianGroup {
        FiniteAbelianGroup::from_factors(f.to_vec()).unwrap()
    }

    #[test]
    fn hits_follow_growing_levels() {
        let spec = TruncatedExtensionSpec::new(2, g(&[2]), vec![2, 4, 8]).unwrap();
        assert_eq!(spec.hit_indices(), vec![0, 1, 2]);
        assert_eq!(spec.assignment(), &[vec![1], vec![1], vec![1]]);
        let spec = TruncatedExtensionSpec::new(2, g(&[2, 2]), vec![8, 2, 4]).unwrap();
        // i = 1: index 0 (8 ≥ 2); i = 2: index 2 (4 ≥ 4); i = 3: nothing left with k ≥ 8
        assert_eq!(spec.hit_indices(), vec![0, 2]);
        assert_eq!(spec.assignment(), &[vec![0, 1], vec![0, 0], vec![1, 0]]);
        assert_eq!(spec.covered_level(), 2);
    }

    #[test]
    fn construct_examples() {
        let spec = TruncatedExtensionSpec::new(2, g(&[]), vec![2, 4]).unwrap();
        assert_eq!(construct_b(&spec).unwrap(), g(&[2, 4]));
        let spec = TruncatedExtensionSpec::new(2, g(&[2]), vec![2, 4, 8]).unwrap();
        // 2X1 = 4X2 = 8X3 = α: Z/16 ⊕ Z/2 ⊕ Z/4
        assert_eq!(construct_b(&spec).unwrap(), g(&[2, 4, 16]));
        assert_eq!(construct_b(&spec.split()).unwrap(), g(&[2, 2, 4, 8]));
    }

    #[test]
    fn spec_validation() {
        assert!(TruncatedExtensionSpec::new(2, g(&[3]), vec![2]).is_err());
        assert!(TruncatedExtensionSpec::new(2, g(&[2]), vec![6]).is_err());
        assert!(TruncatedExtensionSpec::new(2, g(&[2]), vec![1]).is_err());
        assert!(TruncatedExtensionSpec::new(4, g(&[2]), vec![4]).is_err());
        let spec = TruncatedExtensionSpec::new(2, g(&[2]), vec![2]).unwrap();
        assert!(spec.with_assignment(vec![vec![2]]).is_err());
        assert!(spec.with_assignment(vec![]).is_err());
    }

    #[test]
    fn non_split_examples() {
        let z4 = TableGroup::new(vec![4]).unwrap();
        let two = z4.closure(&[2]);
        assert!(is_totally_non_split(&z4, &two).unwrap());
        let v4 = TableGroup::new(vec![2, 2]).unwrap();
        let first = v4.closure(&[v4.index(&[1, 0])]);
        assert!(!is_totally_non_split(&v4, &first).unwrap());
        let z8 = TableGroup::new(vec![8]).unwrap();
        assert!(is_totally_non_split(&z8, &z8.closure(&[2])).unwrap());
    }

    #[test]
    fn direct_sequence_of_a_truncation_can_split() {
        // X1 − 2X2 has order 2 and lies outside A
        let spec = TruncatedExtensionSpec::new(2, g(&[2]), vec![2, 4]).unwrap();
        let r = realize(&spec).unwrap();
        assert!(!is_totally_non_split(&r.table, &r.a).unwrap());
        assert!(r.dual_is_totally_non_split().unwrap());
        let s = realize(&spec.split()).unwrap();
        assert!(!s.dual_is_totally_non_split().unwrap());
    }

    #[test]
    fn quotient_and_order() {
        let spec = TruncatedExtensionSpec::new(3, g(&[3, 9]), vec![3, 9, 3]).unwrap();
        let r = realize(&spec).unwrap();
        assert_eq!(r.table.order(), 27 * 3 * 9 * 3);
        assert_eq!(r.quotient().unwrap(), g(&[3, 3, 9]));
    }

    #[test]
    fn divisible_core_examples() {
        let spec = TruncatedExtensionSpec::new(2, g(&[2]), vec![2, 4, 8]).unwrap();
        let r = realize(&spec).unwrap();
        let n0 = spec.covered_level();
        assert_eq!(n0, 3);
        let core = divisible_core(&r.table, 2, n0).unwrap();
        assert!(r.a.elements.iter().all(|&x| core.contains(x)));
        // split: finite groups have trivial core at full depth
        let s = realize(&spec.split()).unwrap();
        assert!(divisible_core(&s.table, 2, 10).unwrap().is_trivial());
        let t = realize(&TruncatedExtensionSpec::new(2, g(&[]), vec![2, 4]).unwrap()).unwrap();
        assert!(divisible_core(&t.table, 2, 2).unwrap().is_trivial());
    }

    #[test]
    fn uniqueness_examples() {
        let spec = TruncatedExtensionSpec::new(2, g(&[2]), vec![2, 4, 8, 16]).unwrap();
        assert!(uniqueness_demo(&spec, &spec).unwrap().isomorphic);
        let alternate = spec
            .with_assignment(vec![vec![0], vec![1], vec![0], vec![1]])
            .unwrap();
        assert!(uniqueness_demo(&spec, &alternate).unwrap().isomorphic);
        // Z/4 with generators (α, 2α)
        let spec = TruncatedExtensionSpec::with_generators(
            2,
            g(&[4]),
            vec![vec![1], vec![2]],
            vec![2, 4, 8, 16],
        )
        .unwrap();
        for seed in 0..10 {
            assert!(uniqueness_demo(&spec, &spec.reordered(seed)).unwrap().isomorphic);
        }
        let bad = spec.with_assignment(vec![vec![0]; 4]).unwrap();
        let err = uniqueness_demo(&spec, &bad).unwrap_err();
        assert!(matches!(err, crate::Error::Spec(ref m) if m.contains("level")));
    }

    #[test]
    fn socle_criterion_matches_brute_force() {
        for moduli in [vec![2, 4], vec![8], vec![2, 2, 2], vec![3, 9], vec![4, 4]] {
            let table = TableGroup::new(moduli).unwrap();
            for h in subgroups_of(&table, &table.whole()) {
                assert_eq!(
                    is_totally_non_split(&table, &h).unwrap(),
                    socle_in_subgroup(&table, &h),
                    "{:?} {:?}",
                    table.moduli(),
                    h.elements
                );
            }
        }
    }

    fn arb_spec() -> impl Strategy<Value = TruncatedExtensionSpec> {
        (
            prop_oneof![Just(2u64), Just(3)],
            proptest::collection::vec(1u32..=2, 0..=2),
            proptest::collection::vec(1u32..=4, 1..=4),
        )
            .prop_filter_map("needs a valid spec", |(l, a_exps, levels)| {
                let a = g(&a_exps.iter().map(|&e| l.pow(e)).collect::<Vec<_>>());
                let orders = levels.iter().map(|&v| l.pow(v)).collect();
                let spec = TruncatedExtensionSpec::new(l, a, orders).ok()?;
                spec.is_valid().then_some(spec)
            })
    }

    proptest! {
        #[test]
        fn order_and_quotient(spec in arb_spec()) {
            let b = construct_b(&spec).unwrap();
            let expect = spec.a().order().unwrap() * spec.orders().iter().product::<u64>();
            prop_assert_eq!(b.order().unwrap(), expect);
            if expect <= MAX_REALIZED_ORDER {
                let r = realize(&spec).unwrap();
                let c = FiniteAbelianGroup::from_cyclic_orders(spec.orders()).unwrap();
                prop_assert_eq!(r.quotient().unwrap(), c);
                let core = divisible_core(&r.table, spec.l(), spec.covered_level()).unwrap();
                prop_assert!(r.a.elements.iter().all(|&x| core.contains(x)));
            }
        }

        #[test]
        fn reordering_preserves_b(spec in arb_spec(), seed in any::<u64>()) {
            let alt = spec.reordered(seed);
            prop_assert!(uniqueness_demo(&spec, &alt).unwrap().isomorphic);
        }
    }
}
