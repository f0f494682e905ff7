//! Slow reference implementations for the test suites. Nothing here shares
//! an algorithm with the code it checks.

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::abgroups::FiniteAbelianGroup;
use crate::arith::{GaloisField, PrimePower};
use crate::curves::{CurveModel, Family};

/// Row Hermite normal form of an integer lattice of full rank, or `None`.
fn hermite(cols: usize, rows: &[Vec<i64>]) -> Option<Vec<Vec<BigInt>>> {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut out = Vec::with_capacity(cols);
    for c in 0..cols {
        // gcd-reduce column c among the remaining rows
        loop {
            let nonzero: Vec<usize> = (0..m.len()).filter(|&i| !m[i][c].is_zero()).collect();
            if nonzero.len() <= 1 {
                break;
            }
            let piv = *nonzero.iter().min_by_key(|&&i| m[i][c].abs()).unwrap();
            for &i in &nonzero {
                if i != piv {
                    let q = m[i][c].div_floor(&m[piv][c]);
                    let prow = m[piv].clone();
                    for (x, y) in m[i].iter_mut().zip(&prow) {
                        *x -= &q * y;
                    }
                }
            }
        }
        let piv = (0..m.len()).find(|&i| !m[i][c].is_zero())?;
        let mut row = m.swap_remove(piv);
        if row[c].is_negative() {
            row.iter_mut().for_each(|x| *x = -x.clone());
        }
        out.push(row);
    }
    // reduce entries above each pivot into [0, pivot)
    for c in 0..cols {
        for r in 0..c {
            let q = out[r][c].div_floor(&out[c][c]);
            let prow = out[c].clone();
            for (x, y) in out[r].iter_mut().zip(&prow) {
                *x -= &q * y;
            }
        }
    }
    Some(out)
}

/// Reduce `x` to its canonical coset representative `0 ≤ x_c < h_cc`.
fn reduce(h: &[Vec<BigInt>], x: &mut [BigInt]) {
    for c in 0..h.len() {
        let q = x[c].div_floor(&h[c][c]);
        for (xi, hi) in x.iter_mut().zip(&h[c]) {
            *xi -= &q * hi;
        }
    }
}

/// Structure of `Z^cols / ⟨rows⟩` by listing every coset and measuring
/// `|G[l^k]|` directly. `None` when infinite or above `max_order`.
pub fn group_by_enumeration(
    cols: usize,
    rows: &[Vec<i64>],
    max_order: u64,
) -> Option<FiniteAbelianGroup> {
    let h = hermite(cols, rows)?;
    let diag: Vec<u64> = (0..cols).map(|c| u64::try_from(&h[c][c]).unwrap()).collect();
    let order = diag.iter().try_fold(1u64, |a, &d| a.checked_mul(d))?;
    if order > max_order {
        return None;
    }
    let mut elements: Vec<Vec<BigInt>> = Vec::with_capacity(order as usize);
    let mut cur = vec![0u64; cols];
    loop {
        elements.push(cur.iter().map(|&x| BigInt::from(x)).collect());
        let mut i = 0;
        while i < cols {
            cur[i] += 1;
            if cur[i] < diag[i] {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
        if i == cols {
            break;
        }
    }
    let times = |k: u64, x: &[BigInt]| {
        let mut y: Vec<BigInt> = x.iter().map(|v| v * k).collect();
        reduce(&h, &mut y);
        y
    };
    let is_zero = |x: &[BigInt]| x.iter().all(|v| v.is_zero());
    let mut factors = Vec::new();
    let mut n = order;
    let mut l = 2;
    while n > 1 {
        if n % l != 0 {
            l += 1;
            continue;
        }
        while n % l == 0 {
            n /= l;
        }
        // |G[l^k]| for k = 0, 1, ...
        let mut sizes = vec![1u64];
        let mut k = 1u32;
        loop {
            let lk = l.pow(k);
            let size = elements.iter().filter(|x| is_zero(&times(lk, x))).count() as u64;
            if size == *sizes.last().unwrap() {
                break;
            }
            sizes.push(size);
            k += 1;
        }
        // number of cyclic factors of order ≥ l^k is log_l(|G[l^k]| / |G[l^{k−1}]|)
        let log = |mut x: u64| {
            let mut e = 0;
            while x > 1 {
                x /= l;
                e += 1;
            }
            e
        };
        let at_least: Vec<u32> = (1..sizes.len()).map(|k| log(sizes[k] / sizes[k - 1])).collect();
        for k in 0..at_least.len() {
            let next = at_least.get(k + 1).copied().unwrap_or(0);
            for _ in 0..at_least[k] - next {
                factors.push(l.pow(k as u32 + 1));
            }
        }
    }
    Some(FiniteAbelianGroup::from_factors(factors).unwrap())
}

/// `ord_l(q^{l−1} − 1)` by repeated division of the full integer.
pub fn threshold_by_division(q: u64, l: u64) -> u64 {
    let mut x = num_traits::pow(BigUint::from(q), (l - 1) as usize) - BigUint::one();
    let lb = BigUint::from(l);
    let mut v = 0;
    while !x.is_zero() && (&x % &lb).is_zero() {
        x /= &lb;
        v += 1;
    }
    v
}

/// `F_q` inside `F_{q^i}`, found by trying every element as a root of the
/// base modulus.
fn embedding(base: &Arc<GaloisField>, i: u32) -> (Arc<GaloisField>, impl Fn(u32) -> u32) {
    let p = base.characteristic();
    let big = GaloisField::new(p, base.degree() * i).unwrap();
    let modulus: Vec<u32> = base.modulus().iter().map(|&c| c as u32).collect();
    let t = big
        .elements()
        .find(|&r| big.horner(&modulus, r) == 0)
        .expect("the base modulus splits in the extension");
    let base = base.clone();
    let b2 = big.clone();
    let embed = move |c: u32| {
        let mut acc = 0;
        let mut tp = 1;
        for cj in base.coeffs(c) {
            acc = b2.add(acc, b2.mul(b2.from_int(cj as i64), tp));
            tp = b2.mul(tp, t);
        }
        acc
    };
    (big, embed)
}

fn poly_at(f: &GaloisField, coeffs: &[u32], x: u32) -> u32 {
    let mut acc = 0;
    let mut xp = 1;
    for &c in coeffs {
        acc = f.add(acc, f.mul(c, xp));
        xp = f.mul(xp, x);
    }
    acc
}

/// `N_i` by running over every affine pair (or every projective point of a
/// plane model). Artin–Schreier curves are handled when every pole over
/// `F_{q^i}` is simple and infinity is either regular or an odd pole, so
/// each pole carries exactly one place. `None` for unsupported inputs.
pub fn naive_count(curve: &CurveModel, i: u32) -> Option<u64> {
    let base = curve.base_field().ok()?;
    let (big, embed) = embedding(&base, i);
    let el = |c: &Vec<u64>| embed(base.from_coeffs(c).unwrap());
    let poly = |cs: &[Vec<u64>]| {
        let mut v: Vec<u32> = cs.iter().map(el).collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    };
    let f = &*big;
    let all: Vec<u32> = f.elements().collect();
    match curve.family() {
        Family::WeierstrassOdd(w) | Family::WeierstrassChar2(w) => {
            let [a1, a2, a3, a4, a6] = [&w.a1, &w.a2, &w.a3, &w.a4, &w.a6].map(el);
            let mut n = 1;
            for &x in &all {
                let x2 = f.mul(x, x);
                let rhs = [f.mul(x2, x), f.mul(a2, x2), f.mul(a4, x), a6]
                    .into_iter()
                    .fold(0, |a, b| f.add(a, b));
                for &y in &all {
                    let lhs = f.add(f.mul(y, y), f.add(f.mul(a1, f.mul(x, y)), f.mul(a3, y)));
                    n += (lhs == rhs) as u64;
                }
            }
            Some(n)
        }
        Family::HyperellipticOdd { f: coeffs } => {
            let h = poly(coeffs);
            let mut n = 0;
            for &x in &all {
                let v = poly_at(f, &h, x);
                n += all.iter().filter(|&&y| f.mul(y, y) == v).count() as u64;
            }
            let lead = *h.last()?;
            n += if (h.len() - 1) % 2 == 1 {
                1
            } else if all.iter().any(|&y| f.mul(y, y) == lead) {
                2
            } else {
                0
            };
            Some(n)
        }
        Family::ArtinSchreierChar2 { num, den } => {
            let (num, den) = (poly(num), poly(den));
            let deriv: Vec<u32> = den
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| if k % 2 == 1 { c } else { 0 })
                .collect();
            let solutions = |v: u32| all.iter().filter(|&&y| f.add(f.mul(y, y), y) == v).count() as u64;
            let mut n = 0;
            for &x in &all {
                let d = poly_at(f, &den, x);
                if d != 0 {
                    n += solutions(f.div(poly_at(f, &num, x), d).unwrap());
                } else if poly_at(f, &num, x) != 0 && poly_at(f, &deriv, x) != 0 {
                    // simple pole: ramified, one place
                    n += 1;
                } else {
                    return None;
                }
            }
            let (dn, dd) = (num.len() as i64 - 1, den.len() as i64 - 1);
            n += match dn - dd {
                e if e < 0 => solutions(0),
                0 => solutions(f.div(*num.last()?, *den.last()?).unwrap()),
                e if e % 2 == 1 => 1,
                _ => return None,
            };
            Some(n)
        }
        Family::PlaneProjective { terms, .. } => {
            let terms: Vec<([u32; 3], u32)> = terms.iter().map(|t| (t.exp, el(&t.c))).collect();
            let eval = |pt: [u32; 3]| {
                terms.iter().fold(0, |acc, (e, c)| {
                    let m = (0..3).fold(*c, |m, k| f.mul(m, f.pow(pt[k], e[k] as u64)));
                    f.add(acc, m)
                })
            };
            let mut n = 0;
            for &x in &all {
                for &y in &all {
                    n += (eval([x, y, 1]) == 0) as u64;
                }
                n += (eval([x, 1, 0]) == 0) as u64;
            }
            n += (eval([1, 0, 0]) == 0) as u64;
            Some(n)
        }
    }
}

/// Class number as `P(1)` where `P` is rebuilt from `N_1..N_g` by expanding
/// `Z(T) = P(T)/((1−T)(1−qT))` as a power series: `log Z = Σ N_j T^j / j`.
pub fn class_number_by_series(q: PrimePower, genus: u32, counts: &[u64]) -> BigInt {
    use num_rational::BigRational;
    let g = genus as usize;
    // Z = exp(Σ N_j T^j / j) up to T^g
    let log: Vec<BigRational> = (0..=g)
        .map(|j| {
            if j == 0 {
                BigRational::zero()
            } else {
                BigRational::new(BigInt::from(counts[j - 1]), BigInt::from(j))
            }
        })
        .collect();
    let mut z = vec![BigRational::zero(); g + 1];
    z[0] = BigRational::one();
    // z' = log' z
    for k in 1..=g {
        let mut acc = BigRational::zero();
        for j in 1..=k {
            acc += BigRational::from_integer(BigInt::from(j)) * &log[j] * &z[k - j];
        }
        z[k] = acc / BigRational::from_integer(BigInt::from(k));
    }
    // P = Z (1 − T)(1 − qT) up to T^g
    let qq = BigInt::from(q.q());
    let mut p = vec![BigInt::zero(); g + 1];
    for k in 0..=g {
        let mut v = z[k].clone();
        if k >= 1 {
            v -= &z[k - 1] * BigRational::from_integer(&qq + 1);
        }
        if k >= 2 {
            v += &z[k - 2] * BigRational::from_integer(qq.clone());
        }
        assert!(v.is_integer(), "series coefficient {v} is not integral");
        p[k] = v.to_integer();
    }
    let mut h: BigInt = p.iter().sum();
    for (k, pk) in p.iter().enumerate().take(g) {
        h += num_traits::pow(qq.clone(), g - k) * pk;
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_examples() {
        let g = group_by_enumeration(2, &[vec![2, 0], vec![0, 4]], 100).unwrap();
        assert_eq!(g.factors(), &[2, 4]);
        let g = group_by_enumeration(2, &[vec![2, 4], vec![6, 8]], 100).unwrap();
        assert_eq!(g.factors(), &[2, 4]);
        assert!(group_by_enumeration(2, &[vec![2, 0]], 100).is_none());
    }

    #[test]
    fn threshold_examples() {
        assert_eq!(threshold_by_division(2, 1093), 2);
        assert_eq!(threshold_by_division(7, 5), 2);
        assert_eq!(threshold_by_division(2, 3), 1);
    }
}
