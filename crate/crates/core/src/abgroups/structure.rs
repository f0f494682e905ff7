use std::collections::HashMap;
use std::hash::Hash;

use super::FiniteAbelianGroup;
use crate::arith::factor;
use crate::error::{bail, Result};

/// Largest element list accepted by [`structure_from_elements`].
pub const MAX_ELEMENTS: usize = 1_000_000;

/// Below this size closure and commutativity are checked on all pairs;
/// above it, against a fixed sample of right operands.
const FULL_CHECK_LIMIT: usize = 4096;
const SAMPLE: usize = 64;

fn scalar_mul<T: Clone, F: Fn(&T, &T) -> T>(a: &T, mut k: u64, op: &F, identity: &T) -> T {
    let mut acc = identity.clone();
    let mut base = a.clone();
    while k > 0 {
        if k & 1 == 1 {
            acc = op(&acc, &base);
        }
        k >>= 1;
        if k > 0 {
            base = op(&base, &base);
        }
    }
    acc
}

/// Primary decomposition of a finite abelian group given by its full element
/// list and group law. For each prime `l | n` the sizes `|G[l^k]|` are
/// measured directly and turned into exponent multiplicities.
pub fn structure_from_elements<T, F>(elements: &[T], op: F, identity: &T) -> Result<FiniteAbelianGroup>
where
    T: Eq + Hash + Clone,
    F: Fn(&T, &T) -> T,
{
    let n = elements.len();
    if n == 0 {
        bail!(Input, "empty element list");
    }
    if n > MAX_ELEMENTS {
        bail!(Size, "{n} elements exceed the cap of {MAX_ELEMENTS}");
    }
    let index: HashMap<&T, usize> = elements.iter().enumerate().map(|(i, x)| (x, i)).collect();
    if index.len() != n {
        bail!(Input, "element list contains duplicates");
    }
    if !index.contains_key(identity) {
        bail!(Input, "identity is not among the elements");
    }
    let right: Vec<&T> = if n <= FULL_CHECK_LIMIT {
        elements.iter().collect()
    } else {
        (0..SAMPLE).map(|i| &elements[i * n / SAMPLE]).collect()
    };
    for a in elements {
        for &b in &right {
            let ab = op(a, b);
            if !index.contains_key(&ab) {
                bail!(Input, "element list is not closed under the operation");
            }
            if ab != op(b, a) {
                bail!(Input, "operation is not commutative");
            }
        }
    }

    let mut factors = Vec::new();
    for (l, v) in factor(n as u64)? {
        let cofactor = n as u64 / l.pow(v);
        // hist[k] = #{a : the l-part of ord(a) is l^k}
        let mut hist = vec![0usize; v as usize + 1];
        for a in elements {
            let mut b = scalar_mul(a, cofactor, &op, identity);
            let mut k = 0usize;
            while b != *identity {
                if k == v as usize {
                    bail!(Input, "element order does not divide the group order {n}");
                }
                b = scalar_mul(&b, l, &op, identity);
                k += 1;
            }
            hist[k] += 1;
        }
        let mut logs = Vec::with_capacity(v as usize);
        let mut count = 0usize;
        for (k, &h) in hist.iter().enumerate() {
            count += h;
            if k == 0 {
                continue;
            }
            // every element of G[l^k] appears `cofactor` times above
            let size = count / cofactor as usize;
            let mut log = 0u32;
            let mut c = size;
            while c % l as usize == 0 {
                c /= l as usize;
                log += 1;
            }
            if c != 1 {
                bail!(Input, "|G[{l}^{k}]| = {size} is not a power of {l}; not a group");
            }
            logs.push(log);
        }
        if logs.last() != Some(&v) {
            bail!(Input, "inconsistent {l}-torsion counts");
        }
        factors.extend_from_slice(FiniteAbelianGroup::from_torsion_logs(l, &logs)?.factors());
    }
    FiniteAbelianGroup::from_factors(factors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(f: &[u64]) -> FiniteAbelianGroup {
        FiniteAbelianGroup::from_factors(f.to_vec()).unwrap()
    }

    #[test]
    fn cyclic_six() {
        let elems: Vec<u32> = (0..6).collect();
        let s = structure_from_elements(&elems, |a, b| (a + b) % 6, &0).unwrap();
        assert_eq!(s, g(&[2, 3]));
    }

    #[test]
    fn klein_four() {
        let elems: Vec<u8> = (0..4).collect();
        let s = structure_from_elements(&elems, |a, b| a ^ b, &0).unwrap();
        assert_eq!(s, g(&[2, 2]));
    }

    #[test]
    fn units_mod_m() {
        // (Z/15)^× ≅ Z/2 × Z/4,  (Z/16)^× ≅ Z/2 × Z/4
        for m in [15u64, 16] {
            let elems: Vec<u64> = (1..m).filter(|&x| num_integer::gcd(x, m) == 1).collect();
            let s = structure_from_elements(&elems, |a, b| a * b % m, &1).unwrap();
            assert_eq!(s, g(&[2, 4]));
        }
    }

    #[test]
    fn rejects_non_closed() {
        let elems: Vec<u32> = (0..5).collect();
        let err = structure_from_elements(&elems, |a, b| a + b, &0).unwrap_err();
        assert!(matches!(err, crate::Error::Input(_)));
    }
}
