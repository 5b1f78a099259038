use crate::element::Element;
use crate::error::{input, Result};
use crate::linalg::{element_vec, Echelon};
use crate::maps::ArrowMap;
use crate::params::Parameters;
use crate::quiver::Path;
use crate::rewrite::term_order;
use crate::scalar::Scalar;

/// A graded map sending each arrow to a scalar multiple of an arrow.
pub type DiagonalMapSpec = ArrowMap;

fn require_nonzero_beta(params: &Parameters) -> Result<()> {
    match params.first_zero_beta() {
        Some(i) => input(format!("beta_{i} = 0")),
        None => Ok(()),
    }
}

/// `u_i -> -beta_{i-1}^{-1} u_i`, `d_i -> -beta_{i-1}^{-1} d_i`.
pub fn lagged_mu(params: &Parameters) -> Result<DiagonalMapSpec> {
    require_nonzero_beta(params)?;
    let s: Vec<Scalar> = (0..params.n()).map(|i| -params.beta_at(i as i64 - 1).inv().expect("nonzero")).collect();
    ArrowMap::diagonal(s.clone(), s)
}

/// `u_i -> -beta_i^{-1} u_i`, `d_i -> -beta_i d_i`.
pub fn candidate_mu(params: &Parameters) -> Result<DiagonalMapSpec> {
    require_nonzero_beta(params)?;
    ArrowMap::diagonal(
        params.beta.iter().map(|b| -b.inv().expect("nonzero")).collect(),
        params.beta.iter().map(|b| -b).collect(),
    )
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct RelationImage {
    pub relation: Element,
    pub image: Element,
    /// The image lies in the span of the target relations.
    pub in_span: bool,
    /// Target relation containing the image of the leading word.
    pub matched: Option<Element>,
    /// `image = scalar * matched` on the leading word.
    pub scalar: Option<Scalar>,
    /// Per word of `matched`: image coefficient over `scalar * matched` coefficient.
    /// Entries other than 1 locate the defect.
    pub ratios: Vec<(String, Option<Scalar>)>,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct MapCheckReport {
    pub map: String,
    pub bijective: bool,
    pub relations: Vec<RelationImage>,
    pub passed: bool,
}

impl MapCheckReport {
    /// Distinct ratios different from 1 across all relations.
    pub fn defect_ratios(&self) -> Vec<Scalar> {
        let mut out: Vec<Scalar> = self
            .relations
            .iter()
            .flat_map(|r| r.ratios.iter().filter_map(|(_, x)| x.clone()))
            .filter(|x| !x.is_one())
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

fn leading_word(e: &Element) -> Option<&Path> {
    e.support().max_by(|a, b| term_order(a, b))
}

/// Applies `map` to every relation of `src` and tests membership of the image in the
/// span of the relations of `tgt` (exact linear algebra; with `gamma != 0` the relations
/// are inhomogeneous and the span is taken in the filtered degree-3 part).
pub fn check_diagonal_map(map: &DiagonalMapSpec, src: &Parameters, tgt: &Parameters) -> Result<MapCheckReport> {
    let n = src.n();
    if tgt.n() != n || map.n() != n {
        return input("map and parameters disagree on n");
    }
    let tgt_rels = tgt.relations();
    let mut span = Echelon::new();
    for r in &tgt_rels {
        span.insert(element_vec(r));
    }
    let mut relations = Vec::new();
    for rel in src.relations() {
        let image = map.apply(&rel);
        let in_span = span.contains(&element_vec(&image));
        let lead = leading_word(&rel).map(|p| map.apply_path(p));
        let lead_word = lead.as_ref().and_then(|e| e.support().next().cloned());
        let matched = lead_word.as_ref().and_then(|w| tgt_rels.iter().find(|t| !t.coeff(w).is_zero())).cloned();
        let scalar = match (&matched, &lead_word) {
            (Some(t), Some(w)) => Some(&image.coeff(w) / &t.coeff(w)),
            _ => None,
        };
        let ratios = match (&matched, &scalar) {
            (Some(t), Some(c)) if !c.is_zero() => {
                t.terms().map(|(w, tc)| (w.to_string(), Some(&image.coeff(w) / &(c * tc)))).collect()
            }
            _ => Vec::new(),
        };
        relations.push(RelationImage { relation: rel, image, in_span, matched, scalar, ratios });
    }
    let bijective = map.is_bijective();
    let passed = bijective && relations.iter().all(|r| r.in_span);
    Ok(MapCheckReport { map: map.to_string(), bijective, relations, passed })
}
