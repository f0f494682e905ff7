//! `C_m : y² = D_1(x)···D_m(x)` with `D_i` irreducible of degree `i + 2`.
//!
//! The `2`-torsion of the Jacobian contains the classes of the differences
//! of the ramification points, so its `2`-rank over `F_q` is at least
//! `m − 2`; at the level of orders, `2^{m−2}` divides `h`.

use num_bigint::BigUint;
use num_traits::Zero;

use super::{class_number, CurveModel, Family};
use crate::arith::{irreducible_poly, FqPolynomial, GaloisField, PrimePower};
use crate::error::{bail, Result};

/// Largest genus built by [`two_rank_family`].
pub const MAX_FAMILY_GENUS: u32 = 8;

#[derive(Debug, Clone)]
pub struct TwoRankFamily {
    pub curve: CurveModel,
    /// `deg D_i`, in order.
    pub degrees: Vec<u32>,
    pub class_number: BigUint,
    /// `2^{max(m − 2, 0)}`.
    pub divisor: u64,
    pub check: bool,
}

fn genus_for(m: u32) -> u32 {
    // Σ (i + 2) for i = 1..m
    let total = m * (m + 1) / 2 + 2 * m;
    (total - 1) / 2
}

pub fn two_rank_family(q: PrimePower, m: u32) -> Result<TwoRankFamily> {
    if q.p() == 2 {
        bail!(Domain, "the family y^2 = D_1···D_m needs odd characteristic");
    }
    if m == 0 {
        bail!(Domain, "m must be at least 1");
    }
    let genus = genus_for(m.min(64));
    if genus > MAX_FAMILY_GENUS {
        bail!(
            Size,
            "m = {m} gives genus {genus}, above the cap {MAX_FAMILY_GENUS}"
        );
    }
    let field = GaloisField::new(q.p(), q.n())?;
    let mut product = FqPolynomial::one(&field);
    let mut degrees = Vec::with_capacity(m as usize);
    for i in 1..=m {
        let d = i + 2;
        product = product.mul(&irreducible_poly(&field, d as usize));
        degrees.push(d);
    }
    let f = product
        .coeffs()
        .iter()
        .map(|&c| {
            let mut v = field.coeffs(c);
            while v.last() == Some(&0) {
                v.pop();
            }
            v
        })
        .collect();
    let curve = CurveModel::new(q, Family::HyperellipticOdd { f }, genus)?;
    let h = class_number(&curve)?;
    let divisor = 1u64 << m.saturating_sub(2);
    let check = (&h % BigUint::from(divisor)).is_zero();
    Ok(TwoRankFamily {
        curve,
        degrees,
        class_number: h,
        divisor,
        check,
    })
}
