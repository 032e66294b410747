//! JSON input formats and result reports.
//!
//! All numbers that are not small integers are written as exact fraction
//! strings `"p/q"`; Gaussian rationals as `{"re": "p/q", "im": "r/s"}`.
//! Reports are plain serde structures whose field order is fixed, so equal
//! inputs produce byte-identical output.
//!
//! Input formats:
//!
//! * fan: `{"dim": 2, "rays": [[1,0],[0,1],[-1,-1]], "cones": [[0,1],[1,2],[0,2]]}`;
//! * divisor: `{"coefficients": [1, 1, 1]}`;
//! * polynomial: `{"degree": {"coefficients": […]}, "terms": [{"exponents":
//!   […], "coeff": {"re": "1/1", "im": "0/1"}}]}`, or a generator
//!   `{"generator": "fermat" | "random", "degree": {…}, "seed": 7, "range": 5}`
//!   where a missing degree means the anticanonical class.

use serde::{Deserialize, Serialize};

use crate::chiral::{BasisTag, ChiralRing, Element};
use crate::cohomology::{HodgeDecomposition, SigmaCone};
use crate::coxring::{CoxRing, Monomial, Polynomial};
use crate::divisors::SemiampleAnalysis;
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::jacobian::Witness;
use crate::scalar::{format_rational, parse_rational, GaussianRational};

/// Failure to read an input document.
#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Math(#[from] Error),
    #[error("invalid input: {0}")]
    Invalid(String),
}

/// JSON form of a fan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanSpec {
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub cones: Vec<Vec<usize>>,
}

impl FanSpec {
    pub fn from_fan(fan: &Fan) -> Self {
        FanSpec {
            dim: fan.dim(),
            rays: fan.rays().to_vec(),
            cones: fan.max_cones().to_vec(),
        }
    }

    /// # Errors
    /// Fan construction errors.
    pub fn to_fan(&self) -> Result<Fan> {
        Fan::new(self.dim, self.rays.clone(), self.cones.clone())
    }
}

/// JSON form of a torus-invariant divisor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorSpec {
    pub coefficients: Vec<i64>,
}

/// JSON form of a Gaussian rational.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffSpec {
    pub re: String,
    pub im: String,
}

impl CoeffSpec {
    pub fn from_value(c: &GaussianRational) -> Self {
        CoeffSpec {
            re: format_rational(&c.re),
            im: format_rational(&c.im),
        }
    }

    /// # Errors
    /// [`InputError::Invalid`] for malformed fractions.
    pub fn to_value(&self) -> std::result::Result<GaussianRational, InputError> {
        let p = |s: &str| parse_rational(s).ok_or_else(|| InputError::Invalid(format!("bad fraction {s:?}")));
        Ok(GaussianRational::new(p(&self.re)?, p(&self.im)?))
    }
}

/// One polynomial term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermSpec {
    pub exponents: Vec<u32>,
    pub coeff: CoeffSpec,
}

/// JSON form of a polynomial: explicit terms or a generator request.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PolySpec {
    Explicit {
        degree: DivisorSpec,
        terms: Vec<TermSpec>,
    },
    Generator {
        generator: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        degree: Option<DivisorSpec>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        seed: Option<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        range: Option<i64>,
    },
}

impl PolySpec {
    pub fn from_polynomial(p: &Polynomial) -> Self {
        PolySpec::Explicit {
            degree: DivisorSpec {
                coefficients: p.degree().representative.clone(),
            },
            terms: p
                .terms()
                .iter()
                .map(|(m, c)| TermSpec {
                    exponents: m.0.clone(),
                    coeff: CoeffSpec::from_value(c),
                })
                .collect(),
        }
    }

    /// Builds the polynomial. `seed_override` replaces the seed of a random
    /// generator.
    ///
    /// # Errors
    /// [`InputError`] for unknown generators, malformed terms, or
    /// inhomogeneous input.
    pub fn to_polynomial(
        &self,
        ring: &CoxRing,
        seed_override: Option<u64>,
    ) -> std::result::Result<Polynomial, InputError> {
        match self {
            PolySpec::Explicit { degree, terms } => {
                let deg = ring.class(&degree.coefficients)?;
                let terms = terms
                    .iter()
                    .map(|t| Ok((Monomial(t.exponents.clone()), t.coeff.to_value()?)))
                    .collect::<std::result::Result<Vec<_>, InputError>>()?;
                Ok(Polynomial::from_terms(ring, deg, terms)?)
            }
            PolySpec::Generator {
                generator,
                degree,
                seed,
                range,
            } => {
                let deg = match degree {
                    Some(d) => ring.class(&d.coefficients)?,
                    None => ring.chow().anticanonical(),
                };
                match generator.as_str() {
                    "fermat" => Ok(Polynomial::fermat(ring, &deg)),
                    "random" => Ok(Polynomial::random(
                        ring,
                        &deg,
                        seed_override.or(*seed).unwrap_or(0),
                        range.unwrap_or(10),
                    )),
                    other => Err(InputError::Invalid(format!("unknown generator {other:?}"))),
                }
            }
        }
    }

    /// The seed a random generator will use, if any.
    pub fn seed(&self, seed_override: Option<u64>) -> Option<u64> {
        match self {
            PolySpec::Generator { generator, seed, .. } if generator == "random" => {
                Some(seed_override.or(*seed).unwrap_or(0))
            }
            _ => None,
        }
    }
}

/// Parses a fan document.
///
/// # Errors
/// [`InputError`].
pub fn parse_fan(text: &str) -> std::result::Result<Fan, InputError> {
    let spec: FanSpec = serde_json::from_str(text)?;
    Ok(spec.to_fan()?)
}

/// Parses a divisor document.
///
/// # Errors
/// [`InputError::Json`].
pub fn parse_divisor(text: &str) -> std::result::Result<DivisorSpec, InputError> {
    Ok(serde_json::from_str(text)?)
}

/// Parses a polynomial document.
///
/// # Errors
/// [`InputError::Json`].
pub fn parse_poly_spec(text: &str) -> std::result::Result<PolySpec, InputError> {
    Ok(serde_json::from_str(text)?)
}

/// Provenance attached to every report.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub tool: String,
    pub version: String,
    /// `(name, sha256)` of every input file.
    pub inputs: Vec<InputHash>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputHash {
    pub name: String,
    pub sha256: String,
}

impl Metadata {
    pub fn new(inputs: Vec<InputHash>) -> Self {
        Metadata {
            tool: "toric-chiral".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            inputs,
            seed: None,
            notes: Vec::new(),
        }
    }
}

/// Conventions that fix bases and signs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conventions {
    pub pivot_rule: String,
    pub orientation: String,
    pub sigma_orderings: Vec<OrderingReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderingReport {
    /// `l_0, …, l_{n+1}`.
    pub rays: Vec<usize>,
    pub interior: Vec<usize>,
    /// `mult(cone(l_j, l_{j+1}))`.
    pub mults: Vec<i64>,
    pub cone_mult: i64,
    pub reversed: bool,
}

impl OrderingReport {
    pub fn from_cone(c: &SigmaCone) -> Self {
        OrderingReport {
            rays: c.ordering.rays.clone(),
            interior: c.interior().to_vec(),
            mults: c.ordering.mults.clone(),
            cone_mult: c.ordering.cone_mult,
            reversed: c.ordering.reversed,
        }
    }
}

fn conventions(cones: &[SigmaCone]) -> Conventions {
    Conventions {
        pivot_rule: "quotient bases are the non-pivot monomials when lex-largest monomials are pivoted first".into(),
        orientation: "l_0 chosen with det(K; e_l0; e_l(n+1)) > 0, K the Hermite basis of M ∩ σ^⊥".into(),
        sigma_orderings: cones.iter().map(OrderingReport::from_cone).collect(),
    }
}

/// Output of `analyze`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub dim: usize,
    pub num_rays: usize,
    pub num_max_cones: usize,
    pub simplicial: bool,
    pub complete: bool,
    /// Every maximal cone has multiplicity one.
    pub smooth: bool,
    pub chow_rank: usize,
    pub chow_torsion: Vec<i64>,
    /// `dim H^{2k}(P_Σ)` (complete simplicial fans only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub betti: Option<Vec<usize>>,
    pub metadata: Metadata,
}

/// Builds the `analyze` report.
///
/// # Errors
/// Fan validation errors.
pub fn analyze_report(fan: &Fan, metadata: Metadata) -> Result<AnalyzeReport> {
    let v = fan.validate()?;
    let chow = crate::divisors::ChowGroup::new(fan);
    let betti = if v.complete && v.simplicial {
        Some(crate::cohomology::toric_cohomology_dims(fan, fan.dim())?)
    } else {
        None
    };
    Ok(AnalyzeReport {
        dim: fan.dim(),
        num_rays: fan.num_rays(),
        num_max_cones: fan.max_cones().len(),
        simplicial: v.simplicial,
        complete: v.complete,
        smooth: v.simplicial && fan.max_cones().iter().all(|c| fan.mult(c) == 1),
        chow_rank: chow.rank,
        chow_torsion: chow.torsion.clone(),
        betti,
        metadata,
    })
}

/// Output of `semiample`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemiampleReport {
    pub representative: Vec<i64>,
    pub m_sigma: Vec<Vec<i64>>,
    pub vertices: Vec<Vec<i64>>,
    pub kappa: usize,
    pub big: bool,
    pub n_prime: Vec<Vec<i64>>,
    pub m_d_basis: Vec<Vec<i64>>,
    pub quotient_fan: FanSpec,
    pub quotient_divisor: Vec<i64>,
    pub ray_status: Vec<bool>,
    pub ray_image: Vec<Option<usize>>,
    pub cone_map: Vec<ConeImage>,
    pub gluing_matches_normal_fan: bool,
    pub metadata: Metadata,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeImage {
    pub cone: Vec<usize>,
    pub image: Vec<usize>,
}

pub fn semiample_report(a: &SemiampleAnalysis, metadata: Metadata) -> SemiampleReport {
    let rows = |m: &crate::lattice::IntMatrix| (0..m.rows()).map(|i| m.row_i64(i)).collect();
    SemiampleReport {
        representative: a.representative.clone(),
        m_sigma: a.m_sigma.clone(),
        vertices: a.vertices.clone(),
        kappa: a.kappa,
        big: a.is_big(),
        n_prime: rows(&a.n_prime),
        m_d_basis: rows(&a.m_d_basis),
        quotient_fan: FanSpec::from_fan(&a.quotient_fan),
        quotient_divisor: a.quotient_divisor.clone(),
        ray_status: a.ray_status.clone(),
        ray_image: a.ray_image.clone(),
        cone_map: a
            .cone_map
            .iter()
            .map(|(c, i)| ConeImage {
                cone: c.clone(),
                image: i.clone(),
            })
            .collect(),
        gluing_matches_normal_fan: a.gluing_matches_normal_fan,
        metadata,
    }
}

/// Output of `hodge`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeReport {
    pub d: usize,
    pub hodge: Vec<HodgeEntryReport>,
    /// `dim H^{2k}_toric(X)`.
    pub toric: Vec<usize>,
    pub symmetric: bool,
    pub conventions: Conventions,
    pub metadata: Metadata,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeEntryReport {
    pub p: usize,
    pub q: usize,
    /// `null` when a summand is unknown.
    pub total: Option<usize>,
    pub summands: Vec<SummandReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandReport {
    pub label: String,
    pub dim: Option<usize>,
}

pub fn hodge_report(h: &HodgeDecomposition, mut metadata: Metadata) -> HodgeReport {
    metadata.notes.push("regularity of f assumed".into());
    if !h.is_complete() {
        metadata
            .notes
            .push("stratum summands for 2 <= q <= d-3 are not determined (null)".into());
    }
    HodgeReport {
        d: h.d,
        hodge: h
            .entries
            .iter()
            .map(|e| HodgeEntryReport {
                p: e.p,
                q: e.q,
                total: e.total(),
                summands: e
                    .summands
                    .iter()
                    .map(|s| SummandReport {
                        label: s.label.name(),
                        dim: s.dim,
                    })
                    .collect(),
            })
            .collect(),
        toric: h.toric.clone(),
        symmetric: h.is_symmetric(),
        conventions: conventions(&h.sigma_cones),
        metadata,
    }
}

/// Output of `chiral`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChiralReport {
    pub d: usize,
    pub grade_dims: Vec<usize>,
    pub basis: Vec<BasisReport>,
    /// Nonzero structure constants `u · v = Σ c w`, `u ≤ v`.
    pub constants: Vec<ConstantReport>,
    /// `trace(u · v)` for `u` in grade `p ≤ (d−1)/2`.
    pub pairings: Vec<PairingReport>,
    pub undetermined: Vec<[usize; 2]>,
    pub conventions: Conventions,
    pub metadata: Metadata,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisReport {
    pub index: usize,
    pub grade: usize,
    pub label: String,
    pub sector: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ray: Option<usize>,
    pub monomial: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantReport {
    pub u: usize,
    pub v: usize,
    pub w: usize,
    pub c: CoeffSpec,
    pub inferred: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingReport {
    pub p: usize,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub matrix: Vec<Vec<CoeffSpec>>,
}

pub fn basis_report(cr: &ChiralRing) -> Vec<BasisReport> {
    cr.basis()
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let (sector, sigma, ray) = match &b.tag {
                BasisTag::Gamma => ("polynomial".to_string(), None, None),
                BasisTag::GammaSigma { sigma, ray } => {
                    ("sigma".to_string(), Some(cr.sigma_cones()[*sigma].rays()), Some(*ray))
                }
            };
            BasisReport {
                index: i,
                grade: b.grade,
                label: cr.label(i),
                sector,
                sigma,
                ray,
                monomial: b.monomial.0.clone(),
            }
        })
        .collect()
}

/// Builds the `chiral` report.
///
/// # Errors
/// Propagates product-computation failures.
pub fn chiral_report(cr: &ChiralRing, complete: bool, mut metadata: Metadata) -> Result<ChiralReport> {
    let d = cr.dim();
    let sc = cr.structure_constants(complete)?;
    let mut constants = Vec::new();
    for e in &sc.entries {
        for (w, c) in &e.value {
            constants.push(ConstantReport {
                u: e.u,
                v: e.v,
                w: *w,
                c: CoeffSpec::from_value(c),
                inferred: e.inferred,
            });
        }
    }
    let mut pairings = Vec::new();
    for p in 0..d {
        if 2 * p > d - 1 {
            break;
        }
        let m = cr.pairing_matrix(p)?;
        pairings.push(PairingReport {
            p,
            rows: cr.grade_range(p).collect(),
            cols: cr.grade_range(d - 1 - p).collect(),
            matrix: m
                .iter()
                .map(|r| r.iter().map(CoeffSpec::from_value).collect())
                .collect(),
        });
    }
    metadata.notes.push("regularity of f assumed".into());
    if d > 4 {
        metadata.notes.push("subring only: polynomial and sigma sectors".into());
    }
    if complete {
        metadata
            .notes
            .push("entries marked inferred were recovered from triple products via the pairing".into());
    }
    Ok(ChiralReport {
        d,
        grade_dims: cr.grade_dims(),
        basis: basis_report(cr),
        constants,
        pairings,
        undetermined: sc.undetermined.iter().map(|&(u, v)| [u, v]).collect(),
        conventions: conventions(cr.sigma_cones()),
        metadata,
    })
}

/// Output of `products`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProductsReport {
    pub results: Vec<QueryResult>,
    pub metadata: Metadata,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryResult {
    pub factors: Vec<usize>,
    pub labels: Vec<String>,
    /// `"product"`, `"triple"`, or `"undetermined"`.
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<Vec<TermReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scalar: Option<CoeffSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermReport {
    pub w: usize,
    pub label: String,
    pub c: CoeffSpec,
}

fn element_report(cr: &ChiralRing, e: &Element) -> Vec<TermReport> {
    e.iter()
        .map(|(w, c)| TermReport {
            w: *w,
            label: cr.label(*w),
            c: CoeffSpec::from_value(c),
        })
        .collect()
}

/// Answers product (`[u, v]`) and triple-product (`[u, v, w]`) queries.
///
/// # Errors
/// [`Error::InvalidInput`] for malformed queries; product failures.
pub fn products_report(
    cr: &ChiralRing,
    queries: &[Vec<usize>],
    complete: bool,
    metadata: Metadata,
) -> Result<ProductsReport> {
    let n = cr.basis().len();
    let mut results = Vec::new();
    for q in queries {
        if q.iter().any(|&i| i >= n) || !(2..=3).contains(&q.len()) {
            return Err(Error::InvalidInput(format!(
                "query {q:?}: expected 2 or 3 basis indices below {n}"
            )));
        }
        let labels = q.iter().map(|&i| cr.label(i)).collect();
        let r = if q.len() == 3 {
            let s = cr.triple(q[0], q[1], q[2]).map_err(|e| match e {
                Error::DegreeMismatch(m) => Error::InvalidInput(format!("query {q:?}: {m}")),
                other => other,
            })?;
            QueryResult {
                factors: q.clone(),
                labels,
                kind: "triple".into(),
                value: None,
                scalar: Some(CoeffSpec::from_value(&s)),
            }
        } else {
            let p = if complete {
                Some(cr.product_completed(q[0], q[1])?)
            } else {
                match cr.product(q[0], q[1])? {
                    crate::chiral::Product::Determined(e) => Some(e),
                    crate::chiral::Product::Undetermined => None,
                }
            };
            match p {
                Some(e) => QueryResult {
                    factors: q.clone(),
                    labels,
                    kind: "product".into(),
                    value: Some(element_report(cr, &e)),
                    scalar: None,
                },
                None => QueryResult {
                    factors: q.clone(),
                    labels,
                    kind: "undetermined".into(),
                    value: None,
                    scalar: None,
                },
            }
        };
        results.push(r);
    }
    Ok(ProductsReport { results, metadata })
}

/// Output of `witness`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    /// `"quasismooth"` (partials) or `"regular"` (`x_i` times partials).
    pub variant: String,
    pub status: String,
    pub k: Option<usize>,
    pub k_max: usize,
    pub metadata: Metadata,
}

pub fn witness_report(w: &Witness, regular: bool, k_max: usize, metadata: Metadata) -> WitnessReport {
    WitnessReport {
        variant: if regular { "regular" } else { "quasismooth" }.into(),
        status: if w.certified { "certified" } else { "inconclusive" }.into(),
        k: w.k,
        k_max,
        metadata,
    }
}

/// Serializes a report as pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports are serializable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::examples::*;

    #[test]
    fn fan_round_trip() {
        let fan = resolved_octic();
        let text = to_json(&FanSpec::from_fan(&fan));
        let back = parse_fan(&text).unwrap();
        assert_eq!(back.rays(), fan.rays());
        assert_eq!(back.max_cones(), fan.max_cones());
    }

    #[test]
    fn polynomial_round_trip_is_exact() {
        let ring = CoxRing::new(projective_space(2)).unwrap();
        let f = Polynomial::random(&ring, &ring.chow().anticanonical(), 3, 7).scale(&GaussianRational::new(
            crate::scalar::ratio(2, 3),
            crate::scalar::ratio(-1, 5),
        ));
        let text = to_json(&PolySpec::from_polynomial(&f));
        let g = parse_poly_spec(&text).unwrap().to_polynomial(&ring, None).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn generator_specs() {
        let ring = CoxRing::new(projective_space(4)).unwrap();
        let spec = parse_poly_spec(r#"{"generator": "fermat"}"#).unwrap();
        assert_eq!(spec.to_polynomial(&ring, None).unwrap().num_terms(), 5);
        let spec = parse_poly_spec(r#"{"generator": "random", "seed": 4, "range": 2}"#).unwrap();
        assert_eq!(spec.seed(None), Some(4));
        assert_eq!(spec.seed(Some(9)), Some(9));
        let a = spec.to_polynomial(&ring, None).unwrap();
        assert_eq!(a, spec.to_polynomial(&ring, Some(4)).unwrap());
        assert!(matches!(
            parse_poly_spec(r#"{"generator": "nope"}"#)
                .unwrap()
                .to_polynomial(&ring, None),
            Err(InputError::Invalid(_))
        ));
    }

    #[test]
    fn malformed_json_reports_position() {
        let err = parse_fan("{\"dim\": 2,\n \"rays\": [[1,0],}").unwrap_err();
        assert!(matches!(err, InputError::Json(_)));
        assert!(err.to_string().contains("line 2"));
    }
}
