//! Smith normal form over the integers, exact arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::FiniteAbelianGroup;
use crate::error::{bail, Result};

/// `Z^n / ⟨relations⟩`: each relation `c` reads `Σ c_i g_i = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationPresentation {
    pub num_generators: usize,
    pub relations: Vec<Vec<i64>>,
}

/// Diagonal form `U·R·V = D` of a relation matrix `R`.
///
/// `diagonal[i]` is the order of the `i`-th new generator (`0` = free,
/// `1` = trivial). A generator-coordinate row vector `x` maps to the new
/// coordinates `x·V`, reduced modulo the diagonal.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub transform: Vec<Vec<BigInt>>,
}

impl RelationPresentation {
    pub fn new(num_generators: usize, relations: Vec<Vec<i64>>) -> Result<Self> {
        if let Some(bad) = relations.iter().find(|r| r.len() != num_generators) {
            bail!(
                Input,
                "relation of length {} for {num_generators} generators",
                bad.len()
            );
        }
        Ok(RelationPresentation {
            num_generators,
            relations,
        })
    }

    pub fn smith(&self) -> SmithForm {
        let rows = self.relations.len();
        let cols = self.num_generators;
        let mut a: Vec<Vec<BigInt>> = self
            .relations
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let mut v: Vec<Vec<BigInt>> = (0..cols)
            .map(|i| (0..cols).map(|j| BigInt::from((i == j) as i32)).collect())
            .collect();
        let mut diagonal = vec![BigInt::zero(); cols];

        for t in 0..rows.min(cols) {
            loop {
                // pivot: entry of least absolute value in the trailing block
                let mut best: Option<(usize, usize)> = None;
                for i in t..rows {
                    for j in t..cols {
                        if a[i][j].is_zero() {
                            continue;
                        }
                        if best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                            best = Some((i, j));
                        }
                    }
                }
                let Some((pi, pj)) = best else {
                    return self.finish(diagonal, v);
                };
                a.swap(t, pi);
                swap_cols(&mut a, t, pj);
                swap_cols(&mut v, t, pj);

                let pivot = a[t][t].clone();
                let mut dirty = false;
                for i in t + 1..rows {
                    if a[i][t].is_zero() {
                        continue;
                    }
                    let q = a[i][t].div_floor(&pivot);
                    let (head, tail) = a.split_at_mut(i);
                    for (x, y) in tail[0].iter_mut().zip(&head[t]).skip(t) {
                        *x -= &q * y;
                    }
                    dirty |= !a[i][t].is_zero();
                }
                for j in t + 1..cols {
                    if a[t][j].is_zero() {
                        continue;
                    }
                    let q = a[t][j].div_floor(&pivot);
                    add_col_multiple(&mut a, j, t, &-&q);
                    add_col_multiple(&mut v, j, t, &-&q);
                    dirty |= !a[t][j].is_zero();
                }
                if dirty {
                    continue;
                }
                // divisibility: pivot must divide the whole trailing block
                let offender = (t + 1..rows).find(|&i| {
                    (t + 1..cols).any(|j| !(&a[i][j] % &pivot).is_zero())
                });
                match offender {
                    Some(i) => {
                        let (head, tail) = a.split_at_mut(i);
                        for (x, y) in head[t].iter_mut().zip(&tail[0]).skip(t) {
                            *x += y;
                        }
                    }
                    None => break,
                }
            }
            diagonal[t] = a[t][t].abs();
        }
        self.finish(diagonal, v)
    }

    fn finish(&self, diagonal: Vec<BigInt>, transform: Vec<Vec<BigInt>>) -> SmithForm {
        SmithForm {
            diagonal,
            transform,
        }
    }
}

fn swap_cols(m: &mut [Vec<BigInt>], a: usize, b: usize) {
    if a != b {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
    }
}

/// `col[dst] += k · col[src]`
fn add_col_multiple(m: &mut [Vec<BigInt>], dst: usize, src: usize, k: &BigInt) {
    for row in m.iter_mut() {
        let delta = &row[src] * k;
        row[dst] += delta;
    }
}

impl SmithForm {
    pub fn is_finite(&self) -> bool {
        self.diagonal.iter().all(|d| !d.is_zero())
    }

    /// Orders of the nontrivial cyclic factors, in diagonal order.
    pub fn nontrivial_orders(&self) -> Vec<u64> {
        self.diagonal
            .iter()
            .filter(|d| !d.is_one())
            .map(|d| d.to_u64().unwrap_or(0))
            .collect()
    }

    /// Coordinates of a generator-space vector in `⊕ Z/d_i` (trivial
    /// factors dropped), matching [`SmithForm::nontrivial_orders`].
    pub fn reduce(&self, x: &[i64]) -> Vec<u64> {
        let n = self.diagonal.len();
        let mut out = Vec::new();
        for j in 0..n {
            let d = &self.diagonal[j];
            if d.is_one() {
                continue;
            }
            let mut y = BigInt::zero();
            for (i, &xi) in x.iter().enumerate() {
                y += BigInt::from(xi) * &self.transform[i][j];
            }
            let r = if d.is_zero() { y } else { y.mod_floor(d) };
            out.push(r.to_u64().unwrap_or(0));
        }
        out
    }

    pub fn group(&self) -> Result<FiniteAbelianGroup> {
        if !self.is_finite() {
            bail!(Structure, "presented group is infinite (zero invariant factor)");
        }
        FiniteAbelianGroup::from_cyclic_orders(&self.nontrivial_orders())
    }
}

/// Primary decomposition of the group presented by `rel`.
pub fn smith_normal_form(rel: &RelationPresentation) -> Result<FiniteAbelianGroup> {
    rel.smith().group()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(f: &[u64]) -> FiniteAbelianGroup {
        FiniteAbelianGroup::from_factors(f.to_vec()).unwrap()
    }

    #[test]
    fn small_presentations() {
        let r = RelationPresentation::new(1, vec![vec![4]]).unwrap();
        assert_eq!(smith_normal_form(&r).unwrap(), g(&[4]));
        let r = RelationPresentation::new(2, vec![vec![2, 0], vec![0, 2]]).unwrap();
        assert_eq!(smith_normal_form(&r).unwrap(), g(&[2, 2]));
        let r = RelationPresentation::new(2, vec![vec![2, 4], vec![6, 8]]).unwrap();
        assert_eq!(smith_normal_form(&r).unwrap(), g(&[2, 4]));
    }

    #[test]
    fn infinite_cokernel_is_rejected() {
        let r = RelationPresentation::new(2, vec![vec![3, 0]]).unwrap();
        assert!(matches!(smith_normal_form(&r), Err(crate::Error::Structure(_))));
        let r = RelationPresentation::new(2, vec![vec![1, 1], vec![2, 2]]).unwrap();
        assert!(smith_normal_form(&r).is_err());
    }

    #[test]
    fn divisor_chain_and_transform() {
        let r = RelationPresentation::new(3, vec![vec![6, 4, 0], vec![2, 0, 8], vec![0, 2, 2]])
            .unwrap();
        let s = r.smith();
        let d: Vec<u64> = s.diagonal.iter().map(|x| x.to_u64().unwrap()).collect();
        for w in d.windows(2) {
            assert_eq!(w[1] % w[0], 0, "{d:?}");
        }
        // every relation maps to zero in the new coordinates
        for rel in &r.relations {
            assert!(s.reduce(rel).iter().all(|&c| c == 0));
        }
    }
}
