//! Elliptic curves in general Weierstrass form: the chord-tangent law,
//! exhaustive point enumeration, and the search for curves with `q` points.

use std::sync::Arc;

use num_integer::Integer;

use super::{CurveModel, Family, Packed, PointCounter, WeierstrassData};
use crate::abgroups::{structure_from_elements, FiniteAbelianGroup};
use crate::arith::{GaloisField, PrimePower};
use crate::error::{bail, Result};

/// Largest `q` for which the group of points is enumerated.
pub const MAX_STRUCTURE_ORDER: u64 = 1 << 14;

/// Largest `q` accepted by [`waterhouse_search`].
pub const MAX_WATERHOUSE_ORDER: u64 = 64;

/// `Δ` of `y² + a1 xy + a3 y = x³ + a2 x² + a4 x + a6`, via the usual
/// `b`-quantities.
pub(crate) fn discriminant(f: &GaloisField, a: &[u32; 5]) -> u32 {
    let [a1, a2, a3, a4, a6] = *a;
    let k = |n: i64| f.from_int(n);
    let m = |x: u32, y: u32| f.mul(x, y);
    let b2 = f.add(m(a1, a1), m(k(4), a2));
    let b4 = f.add(m(k(2), a4), m(a1, a3));
    let b6 = f.add(m(a3, a3), m(k(4), a6));
    let b8 = [
        m(m(a1, a1), a6),
        m(k(4), m(a2, a6)),
        f.neg(m(m(a1, a3), a4)),
        m(a2, m(a3, a3)),
        f.neg(m(a4, a4)),
    ]
    .into_iter()
    .fold(0, |acc, x| f.add(acc, x));
    [
        f.neg(m(m(b2, b2), b8)),
        f.neg(m(k(8), m(b4, m(b4, b4)))),
        f.neg(m(k(27), m(b6, b6))),
        m(k(9), m(b2, m(b4, b6))),
    ]
    .into_iter()
    .fold(0, |acc, x| f.add(acc, x))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Point {
    Infinity,
    Affine(u32, u32),
}

/// A smooth Weierstrass cubic over `F_q` with packed coefficients.
#[derive(Debug, Clone)]
pub struct EllipticCurve {
    field: Arc<GaloisField>,
    a: [u32; 5],
}

impl EllipticCurve {
    pub fn from_model(curve: &CurveModel) -> Result<Self> {
        let field = curve.base_field()?;
        match curve.pack(&field)? {
            Packed::Weierstrass(a) => Ok(EllipticCurve { field, a }),
            _ => bail!(Domain, "{} is not a Weierstrass family", curve.family().name()),
        }
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }

    pub fn contains(&self, pt: Point) -> bool {
        let Point::Affine(x, y) = pt else {
            return true;
        };
        let f = &self.field;
        let [a1, a2, a3, a4, a6] = self.a;
        let lhs = f.add(f.mul(y, y), f.mul(y, f.add(f.mul(a1, x), a3)));
        let rhs = f.add(f.mul(f.add(f.mul(f.add(x, a2), x), a4), x), a6);
        lhs == rhs
    }

    pub fn neg(&self, pt: Point) -> Point {
        match pt {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                let f = &self.field;
                let [a1, _, a3, _, _] = self.a;
                Point::Affine(x, f.sub(f.neg(y), f.add(f.mul(a1, x), a3)))
            }
        }
    }

    pub fn add(&self, p1: Point, p2: Point) -> Point {
        let (x1, y1, x2, y2) = match (p1, p2) {
            (Point::Infinity, q) | (q, Point::Infinity) => return q,
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let f = &self.field;
        let [a1, a2, a3, a4, _] = self.a;
        if p2 == self.neg(p1) {
            return Point::Infinity;
        }
        let lambda = if x1 != x2 {
            f.div(f.sub(y2, y1), f.sub(x2, x1)).expect("x1 ≠ x2")
        } else {
            // tangent: (3x² + 2a2 x + a4 − a1 y) / (2y + a1 x + a3)
            let num = [
                f.mul(f.from_int(3), f.mul(x1, x1)),
                f.mul(f.from_int(2), f.mul(a2, x1)),
                a4,
                f.neg(f.mul(a1, y1)),
            ]
            .into_iter()
            .fold(0, |acc, t| f.add(acc, t));
            let den = f.add(f.add(f.mul(f.from_int(2), y1), f.mul(a1, x1)), a3);
            f.div(num, den).expect("2-torsion handled above")
        };
        let nu = f.sub(y1, f.mul(lambda, x1));
        let x3 = [f.mul(lambda, lambda), f.mul(a1, lambda), f.neg(a2), f.neg(x1), f.neg(x2)]
            .into_iter()
            .fold(0, |acc, t| f.add(acc, t));
        let y3 = f.sub(f.neg(f.mul(f.add(lambda, a1), x3)), f.add(nu, a3));
        Point::Affine(x3, y3)
    }

    /// All rational points, the point at infinity first.
    pub fn points(&self) -> Result<Vec<Point>> {
        let f = &self.field;
        if f.order() > MAX_STRUCTURE_ORDER {
            bail!(
                Size,
                "point enumeration is limited to q <= {MAX_STRUCTURE_ORDER}, got {}",
                f.order()
            );
        }
        let [a1, a2, a3, a4, a6] = self.a;
        // solve y² + A y = B for each x through a table of one preimage per
        // value of z ↦ z² (odd p) or w ↦ w² + w (p = 2)
        let char2 = f.characteristic() == 2;
        let mut preimage = vec![u32::MAX; f.order() as usize];
        for z in f.elements() {
            let v = if char2 { f.add(f.mul(z, z), z) } else { f.mul(z, z) };
            preimage[v as usize] = z;
        }
        let half = if char2 { 0 } else { f.inv(f.from_int(2)).expect("odd p") };
        let mut out = vec![Point::Infinity];
        for x in f.elements() {
            let lin = f.add(f.mul(a1, x), a3);
            let rhs = f.add(f.mul(f.add(f.mul(f.add(x, a2), x), a4), x), a6);
            let mut ys: Vec<u32> = Vec::with_capacity(2);
            if !char2 {
                let z = preimage[f.add(f.mul(lin, lin), f.mul(f.from_int(4), rhs)) as usize];
                if z != u32::MAX {
                    ys.push(f.mul(f.sub(z, lin), half));
                    ys.push(f.mul(f.sub(f.neg(z), lin), half));
                }
            } else if lin == 0 {
                ys.push(f.sqrt_char2(rhs));
            } else {
                let t = f.div(rhs, f.mul(lin, lin)).expect("nonzero");
                let w = preimage[t as usize];
                if w != u32::MAX {
                    ys.push(f.mul(lin, w));
                    ys.push(f.mul(lin, f.add(w, 1)));
                }
            }
            ys.sort_unstable();
            ys.dedup();
            out.extend(ys.into_iter().map(|y| Point::Affine(x, y)));
        }
        debug_assert!(out.iter().all(|&pt| self.contains(pt)));
        Ok(out)
    }

    /// `E(F_q)` as an abstract group.
    pub fn group_structure(&self) -> Result<FiniteAbelianGroup> {
        let pts = self.points()?;
        structure_from_elements(&pts, |a, b| self.add(*a, *b), &Point::Infinity)
    }
}

pub fn elliptic_group_structure(curve: &CurveModel) -> Result<FiniteAbelianGroup> {
    EllipticCurve::from_model(curve)?.group_structure()
}

/// The sufficient condition for a trace `N` to occur: `N² ≤ 4q` and
/// `gcd(p, N) = 1`. Admissible traces outside it exist; this predicate does
/// not claim to find them.
pub fn waterhouse_admissible(q: PrimePower, trace: i64) -> bool {
    let t = trace.unsigned_abs() as u128;
    t * t <= 4 * q.q() as u128 && (trace.unsigned_abs()).gcd(&q.p()) == 1
}

fn model_from(q: PrimePower, field: &GaloisField, a: [u32; 5]) -> Result<CurveModel> {
    let c = |x: u32| {
        let mut v = field.coeffs(x);
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    };
    let data = WeierstrassData {
        a1: c(a[0]),
        a2: c(a[1]),
        a3: c(a[2]),
        a4: c(a[3]),
        a6: c(a[4]),
    };
    let family = if q.p() == 2 {
        Family::WeierstrassChar2(data)
    } else {
        Family::WeierstrassOdd(data)
    };
    CurveModel::new(q, family, 1)
}

/// Candidate coefficient tuples in scan order.
fn candidates(field: &GaloisField) -> Vec<[u32; 5]> {
    let q = field.order() as u32;
    let mut out = Vec::new();
    if field.characteristic() == 2 {
        // y² + xy = x³ + a x² + b, then y² + c y = x³ + a x + b
        for a in 0..q {
            for b in 0..q {
                out.push([1, a, 0, 0, b]);
            }
        }
        for c in 0..q {
            for a in 0..q {
                for b in 0..q {
                    out.push([0, 0, c, a, b]);
                }
            }
        }
    } else {
        // y² = x³ + a2 x² + a4 x + a6; the x² term is needed in
        // characteristic 3, where x³ + a x + b always has trace ≡ 0 mod 3
        for a2 in 0..q {
            for a4 in 0..q {
                for a6 in 0..q {
                    out.push([0, a2, 0, a4, a6]);
                }
            }
        }
    }
    out
}

/// The first smooth curve, in scan order, with exactly `q` rational points.
pub fn waterhouse_search(q: PrimePower) -> Result<CurveModel> {
    if q.q() > MAX_WATERHOUSE_ORDER {
        bail!(Size, "search is limited to q <= {MAX_WATERHOUSE_ORDER}, got {}", q.q());
    }
    let field = GaloisField::new(q.p(), q.n())?;
    for a in candidates(&field) {
        if discriminant(&field, &a) == 0 {
            continue;
        }
        let model = model_from(q, &field, a)?;
        if PointCounter::new(&model)?.count(1)? == q.q() {
            return Ok(model);
        }
    }
    bail!(
        Internal,
        "no curve with {} points over F_{}; existence is guaranteed, so this is a bug",
        q.q(),
        q.q()
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(json: &str) -> CurveModel {
        serde_json::from_str(json).unwrap()
    }

    #[test]
    fn supersingular_f2_curve_is_trivial() {
        let c = model(
            r#"{"field":{"p":2,"n":1},"family":"weierstrass_char2","genus":1,
                "data":{"a3":[1],"a4":[1],"a6":[1]}}"#,
        );
        assert!(elliptic_group_structure(&c).unwrap().is_trivial());
    }

    #[test]
    fn f4_corpus_curve_is_trivial() {
        // y^2 + y = x^3 + μ
        let c = model(
            r#"{"field":{"p":2,"n":2},"family":"weierstrass_char2","genus":1,
                "data":{"a3":[1],"a6":[0,1]}}"#,
        );
        assert!(elliptic_group_structure(&c).unwrap().is_trivial());
    }

    #[test]
    fn group_law_axioms_on_small_curves() {
        for (p, n, a) in [(5u64, 1u32, [0, 0, 0, 1, 1]), (2, 3, [1, 0, 0, 0, 1]), (3, 2, [0, 1, 0, 0, 1])] {
            let field = GaloisField::new(p, n).unwrap();
            let e = EllipticCurve { field, a };
            let pts = e.points().unwrap();
            for &x in &pts {
                assert_eq!(e.add(x, e.neg(x)), Point::Infinity);
                for &y in &pts {
                    let s = e.add(x, y);
                    assert!(e.contains(s));
                    assert_eq!(s, e.add(y, x));
                    for &z in pts.iter().take(7) {
                        assert_eq!(e.add(s, z), e.add(x, e.add(y, z)));
                    }
                }
            }
        }
    }

    #[test]
    fn structure_matches_count_and_divisibility() {
        for (p, n) in [(5u64, 1u32), (7, 1), (2, 3), (3, 2), (11, 1)] {
            let field = GaloisField::new(p, n).unwrap();
            let q = PrimePower::new(p, n).unwrap();
            for a in candidates(&field).into_iter().step_by(7).take(30) {
                if discriminant(&field, &a) == 0 {
                    continue;
                }
                let m = model_from(q, &field, a).unwrap();
                let g = elliptic_group_structure(&m).unwrap();
                assert_eq!(g.order().unwrap(), PointCounter::new(&m).unwrap().count(1).unwrap());
                let inv = g.invariant_factors();
                if inv.len() == 2 {
                    assert_eq!(inv[1] % inv[0], 0);
                    assert_eq!((q.q() - 1) % inv[0], 0);
                }
                assert!(inv.len() <= 2);
            }
        }
    }

    #[test]
    fn admissibility_examples() {
        let q5 = PrimePower::new(5, 1).unwrap();
        assert!(waterhouse_admissible(q5, 1));
        assert!(!waterhouse_admissible(PrimePower::new(2, 2).unwrap(), 2));
        assert!(!waterhouse_admissible(q5, 5));
    }

    #[test]
    fn search_finds_q_points() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let q = PrimePower::from_q(q).unwrap();
            let c = waterhouse_search(q).unwrap();
            assert_eq!(PointCounter::new(&c).unwrap().count(1).unwrap(), q.q());
        }
        assert!(matches!(
            waterhouse_search(PrimePower::from_q(128).unwrap()),
            Err(crate::Error::Size(_))
        ));
    }
}
