//! Curves over finite fields: models, point counts, L-polynomials, class
//! numbers, and the elliptic and hyperelliptic constructions built on them.
//!
//! A curve file is a JSON object
//!
//! ```json
//! {"field": {"p": 2, "n": 1}, "family": "artin_schreier_char2", "genus": 2,
//!  "data": {"num": [[1], [0], [0], [1], [0], [1]], "den": [[1]]}}
//! ```
//!
//! where every field element is a little-endian coefficient vector over
//! `F_p` (with respect to the canonical modulus of `F_q`) and polynomials are
//! little-endian lists of such vectors. Family payloads:
//!
//! * `weierstrass_odd`, `weierstrass_char2`: `{"a1", "a2", "a3", "a4", "a6"}`
//!   (missing entries are zero) for `y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6`;
//! * `hyperelliptic_odd`: `{"f": [...]}` for `y² = f(x)`;
//! * `artin_schreier_char2`: `{"num": [...], "den": [...]}` for `y² + y = num/den`
//!   (`den` defaults to `1`);
//! * `plane_projective`: `{"degree": d, "terms": [{"exp": [i, j, k], "c": [...]}]}`
//!   for `Σ c·x^i y^j z^k = 0`.

mod count;
mod elliptic;
mod family;
mod lpoly;

pub use count::{count_points, PointCounter, MAX_COUNT_ORDER};
pub use elliptic::{
    elliptic_group_structure, waterhouse_admissible, waterhouse_search, EllipticCurve, Point,
    MAX_STRUCTURE_ORDER, MAX_WATERHOUSE_ORDER,
};
pub use family::{two_rank_family, TwoRankFamily, MAX_FAMILY_GENUS};
pub use lpoly::{class_number, l_polynomial, zeta_report, LPolynomial, ZetaReport};

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::{factor_squarefree_check, FqPolynomial, GaloisField, PrimePower};
use crate::error::{bail, Result};

/// A field element as a little-endian coefficient vector over `F_p`.
pub type Coeff = Vec<u64>;

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeierstrassData {
    #[serde(default)]
    pub a1: Coeff,
    #[serde(default)]
    pub a2: Coeff,
    #[serde(default)]
    pub a3: Coeff,
    #[serde(default)]
    pub a4: Coeff,
    #[serde(default)]
    pub a6: Coeff,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlaneTerm {
    pub exp: [u32; 3],
    pub c: Coeff,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    WeierstrassOdd(WeierstrassData),
    WeierstrassChar2(WeierstrassData),
    HyperellipticOdd { f: Vec<Coeff> },
    ArtinSchreierChar2 { num: Vec<Coeff>, den: Vec<Coeff> },
    PlaneProjective { degree: u32, terms: Vec<PlaneTerm> },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::WeierstrassOdd(_) => "weierstrass_odd",
            Family::WeierstrassChar2(_) => "weierstrass_char2",
            Family::HyperellipticOdd { .. } => "hyperelliptic_odd",
            Family::ArtinSchreierChar2 { .. } => "artin_schreier_char2",
            Family::PlaneProjective { .. } => "plane_projective",
        }
    }
}

/// A smooth projective curve over `F_q`, given by a model in one of the
/// supported families. Construct through [`CurveModel::new`] or
/// deserialization; both validate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CurveFile", into = "CurveFile")]
pub struct CurveModel {
    field: PrimePower,
    family: Family,
    genus: u32,
}

/// The on-disk shape of a curve.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveFile {
    pub field: PrimePower,
    pub family: String,
    pub genus: u32,
    pub data: serde_json::Value,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HyperellipticData {
    f: Vec<Coeff>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ArtinSchreierData {
    num: Vec<Coeff>,
    #[serde(default = "unit_poly")]
    den: Vec<Coeff>,
}

fn unit_poly() -> Vec<Coeff> {
    vec![vec![1]]
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PlaneData {
    degree: u32,
    terms: Vec<PlaneTerm>,
}

fn payload<T: serde::de::DeserializeOwned>(family: &str, data: serde_json::Value) -> Result<T> {
    serde_json::from_value(data)
        .map_err(|e| crate::Error::Input(format!("bad {family} data: {e}")))
}

impl TryFrom<CurveFile> for CurveModel {
    type Error = crate::Error;

    fn try_from(file: CurveFile) -> Result<Self> {
        let family = match file.family.as_str() {
            "weierstrass_odd" => Family::WeierstrassOdd(payload(&file.family, file.data)?),
            "weierstrass_char2" => Family::WeierstrassChar2(payload(&file.family, file.data)?),
            "hyperelliptic_odd" => {
                let d: HyperellipticData = payload(&file.family, file.data)?;
                Family::HyperellipticOdd { f: d.f }
            }
            "artin_schreier_char2" => {
                let d: ArtinSchreierData = payload(&file.family, file.data)?;
                Family::ArtinSchreierChar2 {
                    num: d.num,
                    den: d.den,
                }
            }
            "plane_projective" => {
                let d: PlaneData = payload(&file.family, file.data)?;
                Family::PlaneProjective {
                    degree: d.degree,
                    terms: d.terms,
                }
            }
            other => bail!(Input, "unknown curve family {other:?}"),
        };
        CurveModel::new(file.field, family, file.genus)
    }
}

impl From<CurveModel> for CurveFile {
    fn from(c: CurveModel) -> Self {
        let family = c.family.name().to_string();
        let data = match c.family {
            Family::WeierstrassOdd(w) | Family::WeierstrassChar2(w) => {
                serde_json::to_value(w).expect("plain data")
            }
            Family::HyperellipticOdd { f } => serde_json::json!({ "f": f }),
            Family::ArtinSchreierChar2 { num, den } => {
                serde_json::json!({ "num": num, "den": den })
            }
            Family::PlaneProjective { degree, terms } => {
                serde_json::json!({ "degree": degree, "terms": terms })
            }
        };
        CurveFile {
            field: c.field,
            family,
            genus: c.genus,
            data,
        }
    }
}

/// Coefficients packed into the base field, ready for counting.
#[derive(Debug, Clone)]
pub(crate) enum Packed {
    Weierstrass([u32; 5]),
    Hyperelliptic(Vec<u32>),
    ArtinSchreier { num: Vec<u32>, den: Vec<u32> },
    Plane(Vec<([u32; 3], u32)>),
}

impl CurveModel {
    /// Validates the model: characteristic matches the family, coefficients
    /// are reduced, the model is smooth, and `genus` agrees with it.
    pub fn new(field: PrimePower, family: Family, genus: u32) -> Result<Self> {
        let curve = CurveModel {
            field,
            family,
            genus,
        };
        let base = curve.base_field()?;
        let packed = curve.pack(&base)?;
        let expected = match &packed {
            Packed::Weierstrass(a) => {
                if elliptic::discriminant(&base, a) == 0 {
                    bail!(Structure, "Weierstrass discriminant vanishes; the curve is singular");
                }
                1
            }
            Packed::Hyperelliptic(f) => {
                let poly = FqPolynomial::new(&base, f.clone());
                let Some(deg) = poly.degree().filter(|&d| d >= 1) else {
                    bail!(Structure, "y^2 = f needs a nonconstant f");
                };
                if !factor_squarefree_check(&poly) {
                    bail!(Structure, "f is not squarefree; the affine model is singular");
                }
                (deg as u32 - 1) / 2
            }
            Packed::ArtinSchreier { num, den } => count::artin_schreier_genus(&base, num, den)?,
            Packed::Plane(terms) => {
                let Family::PlaneProjective { degree, .. } = &curve.family else {
                    unreachable!()
                };
                count::check_plane_smooth(&curve, &base, *degree, terms)?;
                (degree - 1) * (degree.saturating_sub(2)) / 2
            }
        };
        if expected != genus {
            bail!(
                Input,
                "declared genus {genus} but a {} model of this shape has genus {expected}",
                curve.family.name()
            );
        }
        Ok(curve)
    }

    pub fn field(&self) -> PrimePower {
        self.field
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn base_field(&self) -> Result<Arc<GaloisField>> {
        GaloisField::new(self.field.p(), self.field.n())
    }

    pub(crate) fn pack(&self, base: &Arc<GaloisField>) -> Result<Packed> {
        let p = self.field.p();
        let el = |c: &Coeff| base.from_coeffs(c);
        let poly = |cs: &[Coeff]| cs.iter().map(el).collect::<Result<Vec<u32>>>();
        let trim = |mut v: Vec<u32>| {
            while v.last() == Some(&0) {
                v.pop();
            }
            v
        };
        Ok(match &self.family {
            Family::WeierstrassOdd(w) | Family::WeierstrassChar2(w) => {
                let odd = matches!(self.family, Family::WeierstrassOdd(_));
                if odd == (p == 2) {
                    bail!(
                        Input,
                        "family {} does not match characteristic {p}",
                        self.family.name()
                    );
                }
                Packed::Weierstrass([el(&w.a1)?, el(&w.a2)?, el(&w.a3)?, el(&w.a4)?, el(&w.a6)?])
            }
            Family::HyperellipticOdd { f } => {
                if p == 2 {
                    bail!(Input, "hyperelliptic_odd needs odd characteristic");
                }
                Packed::Hyperelliptic(trim(poly(f)?))
            }
            Family::ArtinSchreierChar2 { num, den } => {
                if p != 2 {
                    bail!(Input, "artin_schreier_char2 needs characteristic 2");
                }
                let num = trim(poly(num)?);
                let den = trim(poly(den)?);
                if den.is_empty() {
                    bail!(Input, "zero denominator");
                }
                Packed::ArtinSchreier { num, den }
            }
            Family::PlaneProjective { degree, terms } => {
                if *degree == 0 {
                    bail!(Input, "plane curve of degree 0");
                }
                let mut packed: Vec<([u32; 3], u32)> = Vec::new();
                for t in terms {
                    if t.exp.iter().sum::<u32>() != *degree {
                        bail!(Input, "term {:?} is not of degree {degree}", t.exp);
                    }
                    let c = el(&t.c)?;
                    match packed.iter_mut().find(|(e, _)| *e == t.exp) {
                        Some((_, acc)) => *acc = base.add(*acc, c),
                        None => packed.push((t.exp, c)),
                    }
                }
                packed.retain(|&(_, c)| c != 0);
                if packed.is_empty() {
                    bail!(Input, "plane curve equation is identically zero");
                }
                Packed::Plane(packed)
            }
        })
    }
}

/// One entry of a corpus file: a curve plus its expected class number.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub expected_h: u64,
    #[serde(flatten)]
    pub curve: CurveModel,
}

pub fn parse_corpus(json: &str) -> Result<Vec<CorpusEntry>> {
    serde_json::from_str(json).map_err(|e| crate::Error::Input(format!("bad corpus: {e}")))
}

/// The shipped corpus of function fields of characteristic two with trivial
/// degree-zero class group.
pub const TRIVIAL_CLASS_GROUP_CORPUS: &str = include_str!("../../data/trivial_class_group.json");

pub fn trivial_class_group_corpus() -> Vec<CorpusEntry> {
    parse_corpus(TRIVIAL_CLASS_GROUP_CORPUS).expect("shipped corpus is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(json: &str) -> Result<CurveModel> {
        serde_json::from_str::<CurveModel>(json).map_err(|e| crate::Error::Input(e.to_string()))
    }

    #[test]
    fn round_trip_json() {
        let src = r#"{"field":{"p":2,"n":1},"family":"artin_schreier_char2","genus":2,
                      "data":{"num":[[1],[0],[0],[1],[0],[1]],"den":[[1]]}}"#;
        let c = curve(src).unwrap();
        let back: CurveModel = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn genus_mismatch_rejected() {
        let src = r#"{"field":{"p":2,"n":1},"family":"artin_schreier_char2","genus":1,
                      "data":{"num":[[1],[0],[0],[1],[0],[1]]}}"#;
        assert!(matches!(curve(src), Err(crate::Error::Input(_))));
    }

    #[test]
    fn family_characteristic_mismatch() {
        let src = r#"{"field":{"p":3,"n":1},"family":"weierstrass_char2","genus":1,
                      "data":{"a6":[1]}}"#;
        assert!(curve(src).is_err());
    }

    #[test]
    fn singular_models_rejected() {
        // y^2 = x^3 over F_5
        let src = r#"{"field":{"p":5,"n":1},"family":"weierstrass_odd","genus":1,"data":{}}"#;
        assert!(matches!(curve(src), Err(crate::Error::Input(_)) | Err(crate::Error::Structure(_))));
        // y^2 = x^2 (x + 1) is not squarefree... x^3 + x^2 is x^2 (x + 1)
        let src = r#"{"field":{"p":3,"n":1},"family":"hyperelliptic_odd","genus":1,
                      "data":{"f":[[0],[0],[1],[1]]}}"#;
        assert!(curve(src).is_err());
        // nodal cubic y^2 z = x^3 + x^2 z
        let src = r#"{"field":{"p":5,"n":1},"family":"plane_projective","genus":1,
                      "data":{"degree":3,"terms":[{"exp":[0,2,1],"c":[1]},{"exp":[3,0,0],"c":[4]},{"exp":[2,0,1],"c":[4]}]}}"#;
        assert!(matches!(curve(src), Err(crate::Error::Input(m)) if m.contains("singular")));
    }

    #[test]
    fn shipped_corpus_parses() {
        let corpus = trivial_class_group_corpus();
        assert_eq!(corpus.len(), 8);
        assert!(corpus.iter().all(|e| e.expected_h == 1));
    }
}
