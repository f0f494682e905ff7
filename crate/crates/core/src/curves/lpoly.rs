//! The numerator `P(T)` of the zeta function and the class number `P(1)`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{CurveModel, PointCounter, MAX_COUNT_ORDER};
use crate::arith::PrimePower;
use crate::error::{bail, Result};

/// `P(T) = Σ b_i T^i`, `b_0 = 1`, of degree `2g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LPolynomial {
    q: PrimePower,
    genus: u32,
    coeffs: Vec<BigInt>,
}

impl LPolynomial {
    /// Recovers `P` from `N_1, ..., N_g` with Newton's identities on the
    /// power sums `S_j = q^j + 1 − N_j` of the inverse roots, then fills the
    /// upper half from the functional equation.
    pub fn from_counts(q: PrimePower, genus: u32, counts: &[u64]) -> Result<Self> {
        let g = genus as usize;
        if counts.len() < g {
            bail!(Domain, "need {g} point counts, got {}", counts.len());
        }
        let s: Vec<BigInt> = (1..=g)
            .map(|j| BigInt::from(q.q_pow(j as u32)) + 1 - BigInt::from(counts[j - 1]))
            .collect();
        let mut b = vec![BigInt::one()];
        for j in 1..=g {
            let mut acc = s[j - 1].clone();
            for i in 1..j {
                acc += &s[i - 1] * &b[j - i];
            }
            let (quot, rem) = (-acc).div_rem(&BigInt::from(j));
            if !rem.is_zero() {
                bail!(
                    Internal,
                    "Newton step {j} is not integral; the point counts are inconsistent"
                );
            }
            b.push(quot);
        }
        for i in (0..g).rev() {
            let upper = BigInt::from(q.q_pow((g - i) as u32)) * &b[i];
            b.push(upper);
        }
        Ok(LPolynomial {
            q,
            genus,
            coeffs: b,
        })
    }

    pub fn q(&self) -> PrimePower {
        self.q
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `h = P(1)`.
    pub fn class_number(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// `b_{2g−i} = q^{g−i} b_i` for `0 ≤ i ≤ g`.
    pub fn functional_equation_holds(&self) -> bool {
        let g = self.genus as usize;
        self.coeffs.len() == 2 * g + 1
            && (0..=g).all(|i| {
                self.coeffs[2 * g - i] == BigInt::from(self.q.q_pow((g - i) as u32)) * &self.coeffs[i]
            })
    }

    /// `(√q − 1)^{2g} ≤ h ≤ (√q + 1)^{2g}`, decided exactly: writing
    /// `(√q ± 1)^{2g} = A ± B√q`, compare `h − A` against `±B√q` by squaring.
    pub fn weil_bound_holds(&self) -> bool {
        let h = self.class_number();
        if h.is_negative() {
            return false;
        }
        let q = BigInt::from(self.q.q());
        // (√q + 1)^k = a + b√q
        let (mut a, mut b) = (BigInt::one(), BigInt::zero());
        for _ in 0..2 * self.genus {
            let na = &a + &b * &q;
            let nb = &a + &b;
            a = na;
            b = nb;
        }
        // lower: a − b√q ≤ h  ⇔  a − h ≤ b√q
        // upper: h ≤ a + b√q  ⇔  h − a ≤ b√q
        let le_b_sqrt_q = |x: &BigInt| !x.is_positive() || x * x <= &b * &b * &q;
        le_b_sqrt_q(&(&a - &h)) && le_b_sqrt_q(&(&h - &a))
    }

    /// Power sum `S_j` of the inverse roots, for any `j ≥ 1`.
    pub fn power_sum(&self, j: usize) -> BigInt {
        let b = |k: usize| self.coeffs.get(k).cloned().unwrap_or_default();
        let mut s: Vec<BigInt> = Vec::with_capacity(j);
        for k in 1..=j {
            let mut acc = BigInt::from(k) * b(k);
            for i in 1..k {
                acc += &s[i - 1] * b(k - i);
            }
            s.push(-acc);
        }
        s.pop().unwrap_or_default()
    }

    /// `N_j = q^j + 1 − S_j` as predicted by `P`.
    pub fn predicted_count(&self, j: u32) -> BigInt {
        BigInt::from(self.q.q_pow(j)) + 1 - self.power_sum(j as usize)
    }
}

pub fn l_polynomial(curve: &CurveModel) -> Result<LPolynomial> {
    let counter = PointCounter::new(curve)?;
    let counts = (1..=curve.genus())
        .map(|i| counter.count(i))
        .collect::<Result<Vec<_>>>()?;
    LPolynomial::from_counts(curve.field(), curve.genus(), &counts)
}

pub fn class_number(curve: &CurveModel) -> Result<BigUint> {
    let h = l_polynomial(curve)?.class_number();
    h.to_biguint()
        .filter(|h| !h.is_zero())
        .ok_or_else(|| crate::Error::Internal(format!("class number {h} is not positive")))
}

/// The predicted versus enumerated count over `F_{q^{g+1}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtraCheck {
    pub degree: u32,
    pub predicted: i64,
    pub counted: u64,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaReport {
    pub counts: Vec<u64>,
    pub l_polynomial: LPolynomial,
    pub class_number: BigInt,
    pub functional_equation: bool,
    pub weil_bound: bool,
    /// `None` when not requested, or when `q^{g+1}` exceeds the counting cap.
    pub extra: Option<ExtraCheck>,
}

/// Everything `zeta` reports about a curve; `check_extra` adds the
/// overdetermination check over `F_{q^{g+1}}` when it is within the cap.
pub fn zeta_report(curve: &CurveModel, check_extra: bool) -> Result<ZetaReport> {
    let counter = PointCounter::new(curve)?;
    let g = curve.genus();
    let counts = (1..=g).map(|i| counter.count(i)).collect::<Result<Vec<_>>>()?;
    let lp = LPolynomial::from_counts(curve.field(), g, &counts)?;
    let extra = if check_extra && curve.field().q_pow(g + 1) <= BigUint::from(MAX_COUNT_ORDER) {
        let counted = counter.count(g + 1)?;
        let predicted = lp.predicted_count(g + 1);
        Some(ExtraCheck {
            degree: g + 1,
            ok: predicted == BigInt::from(counted),
            predicted: predicted.to_i64().unwrap_or(i64::MIN),
            counted,
        })
    } else {
        None
    };
    Ok(ZetaReport {
        counts,
        class_number: lp.class_number(),
        functional_equation: lp.functional_equation_holds(),
        weil_bound: lp.weil_bound_holds(),
        l_polynomial: lp,
        extra,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn elliptic_from_one_count() {
        // y^2 + y = x^3 + x + 1 over F_2 has N_1 = 1
        let lp = LPolynomial::from_counts(PrimePower::new(2, 1).unwrap(), 1, &[1]).unwrap();
        assert_eq!(lp.coeffs(), ints(&[1, -2, 2]).as_slice());
        assert_eq!(lp.class_number(), BigInt::one());
        assert!(lp.functional_equation_holds());
        assert!(lp.weil_bound_holds());
        // N_2 = 4 + 1 − (S_1² − 2q) = 5 − (4 − 4) = 5
        assert_eq!(lp.predicted_count(2), BigInt::from(5));
    }

    #[test]
    fn genus_zero() {
        let lp = LPolynomial::from_counts(PrimePower::new(2, 2).unwrap(), 0, &[]).unwrap();
        assert_eq!(lp.coeffs(), ints(&[1]).as_slice());
        assert_eq!(lp.class_number(), BigInt::one());
        assert_eq!(lp.predicted_count(1), BigInt::from(5));
    }

    #[test]
    fn inconsistent_counts_are_caught() {
        // N_1 = 3, N_2 = 2 over F_2 gives b_2 = (S_1² − S_2)/2 with S_1 = 0, S_2 = 3
        let err = LPolynomial::from_counts(PrimePower::new(2, 1).unwrap(), 2, &[3, 2]).unwrap_err();
        assert!(matches!(err, crate::Error::Internal(_)));
    }

    #[test]
    fn weil_bound_edges() {
        let q = PrimePower::new(2, 2).unwrap();
        // P = (1 − 2T)^2 = 1 − 4T + 4T^2: h = 1 = (√4 − 1)^2, on the boundary
        let lp = LPolynomial {
            q,
            genus: 1,
            coeffs: ints(&[1, -4, 4]),
        };
        assert!(lp.weil_bound_holds());
        let lp = LPolynomial {
            q,
            genus: 1,
            coeffs: ints(&[1, 4, 4]),
        };
        assert!(lp.weil_bound_holds()); // h = 9 = (2 + 1)^2
        let lp = LPolynomial {
            q,
            genus: 1,
            coeffs: ints(&[1, 5, 4]),
        };
        assert!(!lp.weil_bound_holds());
    }

    proptest! {
        /// For a product of factors `1 − a T + q T²` with `a² ≤ 4q` (a
        /// genuine Weil polynomial), counts derived from it reproduce it.
        #[test]
        fn newton_round_trip(traces in proptest::collection::vec(-4i64..=4, 1..4)) {
            let q = PrimePower::new(5, 1).unwrap();
            let mut coeffs = ints(&[1]);
            for &a in &traces {
                let f = ints(&[1, -a, 5]);
                let mut next = vec![BigInt::zero(); coeffs.len() + 2];
                for (i, x) in coeffs.iter().enumerate() {
                    for (j, y) in f.iter().enumerate() {
                        next[i + j] += x * y;
                    }
                }
                coeffs = next;
            }
            let g = traces.len() as u32;
            let lp = LPolynomial { q, genus: g, coeffs: coeffs.clone() };
            let counts: Vec<Option<u64>> = (1..=g).map(|j| lp.predicted_count(j).to_u64()).collect();
            // some Weil polynomials predict negative counts
            prop_assume!(counts.iter().all(Option::is_some));
            let counts: Vec<u64> = counts.into_iter().flatten().collect();
            let back = LPolynomial::from_counts(q, g, &counts).unwrap();
            prop_assert_eq!(back.coeffs(), coeffs.as_slice());
            prop_assert!(back.functional_equation_holds());
            prop_assert!(back.weil_bound_holds());
        }
    }
}
