use crate::element::Element;
use crate::error::{input, Result};
use crate::linalg::{element_vec, rank_of, Echelon};
use crate::params::Parameters;
use crate::quiver::{wrap, Arrow, Family, Path};
use crate::scalar::Scalar;

/// Named choices of diagonal twist `eta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeightScheme {
    /// `eta(u_i) = beta_{i-1} u_i`, `eta(d_i) = beta_{i-1} d_i`.
    Lagged,
    /// `eta(u_i) = beta_i u_i`, `eta(d_i) = beta_i^{-1} d_i`.
    Balanced,
    /// `eta(u_i) = beta_{i-1} u_i`, `eta(d_i) = beta_{i-1}^{-1} d_i`.
    LaggedBalanced,
}

impl WeightScheme {
    pub const ALL: [WeightScheme; 3] = [WeightScheme::Lagged, WeightScheme::Balanced, WeightScheme::LaggedBalanced];
}

/// The diagonal automorphism `a -> w_a a`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct TwistWeights {
    pub u: Vec<Scalar>,
    pub d: Vec<Scalar>,
}

impl TwistWeights {
    pub fn new(u: Vec<Scalar>, d: Vec<Scalar>) -> Result<TwistWeights> {
        if u.is_empty() || u.len() != d.len() {
            return input("twist weights must have length n >= 1");
        }
        if u.iter().chain(&d).any(Scalar::is_zero) {
            return input("twist weights must be nonzero");
        }
        Ok(TwistWeights { u, d })
    }

    pub fn from_scheme(scheme: WeightScheme, params: &Parameters) -> Result<TwistWeights> {
        let n = params.n();
        let lag = |i: usize| params.beta_at(i as i64 - 1).clone();
        let (u, d): (Vec<Scalar>, Vec<Scalar>) = match scheme {
            WeightScheme::Lagged => ((0..n).map(lag).collect(), (0..n).map(lag).collect()),
            WeightScheme::Balanced => {
                if !params.all_beta_nonzero() {
                    return input("balanced weights need every beta nonzero");
                }
                (params.beta.clone(), params.beta.iter().map(|b| b.inv().expect("nonzero")).collect())
            }
            WeightScheme::LaggedBalanced => {
                if !params.all_beta_nonzero() {
                    return input("balanced weights need every beta nonzero");
                }
                ((0..n).map(lag).collect(), (0..n).map(|i| lag(i).inv().expect("nonzero")).collect())
            }
        };
        TwistWeights::new(u, d)
    }

    pub fn n(&self) -> usize {
        self.u.len()
    }

    pub fn weight(&self, a: Arrow) -> &Scalar {
        match a.family {
            Family::U => &self.u[a.index],
            Family::D => &self.d[a.index],
        }
    }
}

/// `a_1 ... a_d -> (-1)^{d+1} eta(a_d) a_1 ... a_{d-1}`; `None` unless the path is a
/// nontrivial cycle.
pub fn twist(p: &Path, w: &TwistWeights) -> Option<Element> {
    if p.is_trivial() || p.source() != p.target() {
        return None;
    }
    let arrows = p.arrows();
    let last = arrows[arrows.len() - 1];
    let mut rotated = vec![last];
    rotated.extend_from_slice(&arrows[..arrows.len() - 1]);
    let mut c = w.weight(last).clone();
    if arrows.len() % 2 == 0 {
        c = -c;
    }
    Some(Element::term(c, Path::word(p.n(), &rotated)))
}

fn twist_element(e: &Element, w: &TwistWeights) -> Result<Element> {
    let mut out = Element::zero(e.n());
    for (p, c) in e.terms() {
        match twist(p, w) {
            Some(t) => out = &out + &t.scale(c),
            None => return input(format!("{p} is not a cycle")),
        }
    }
    Ok(out)
}

/// Smallest positive rotation of the arrow word that returns it to itself.
fn period(p: &Path) -> usize {
    let a = p.arrows();
    (1..=a.len()).find(|&r| (0..a.len()).all(|k| a[k] == a[(k + a.len() - r) % a.len()])).unwrap_or(a.len())
}

/// One compact-form summand `coefficient * [word]`.
#[derive(Clone, Debug, serde::Serialize)]
pub struct CompactTerm {
    pub word: String,
    pub coefficient: Scalar,
    /// Number of distinct twists summed.
    pub period: usize,
    /// `twist^period(word) = closure * word`; the compact form is twist invariant iff this is 1.
    pub closure: Scalar,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct Superpotential {
    pub omega: Element,
    pub terms: Vec<CompactTerm>,
}

impl Superpotential {
    pub fn closure_defects(&self) -> impl Iterator<Item = &CompactTerm> {
        self.terms.iter().filter(|t| !t.closure.is_one())
    }
}

/// Sums the distinct twists of `p` (one period's worth) and returns the closure scalar.
fn compact_form(p: &Path, w: &TwistWeights) -> Result<(Element, usize, Scalar)> {
    let per = period(p);
    let mut current = Element::from_path(p.clone());
    let mut sum = Element::zero(p.n());
    for _ in 0..per {
        sum = &sum + &current;
        current = twist_element(&current, w)?;
    }
    let closure = current.coeff(p);
    debug_assert_eq!(current.num_terms(), 1);
    Ok((sum, per, closure))
}

/// `Omega = sum_i [d_i d_{i-1} u_{i-1} u_i] - alpha_i [d_i u_i d_i u_i]`.
pub fn build_superpotential(params: &Parameters, weights: &TwistWeights) -> Result<Superpotential> {
    let n = params.n();
    if weights.n() != n {
        return input("weights and parameters disagree on n");
    }
    let mut omega = Element::zero(n);
    let mut terms = Vec::new();
    for i in 0..n {
        let im = wrap(i as i64 - 1, n);
        let summands = [
            (Path::word(n, &[Arrow::d(i), Arrow::d(im), Arrow::u(im), Arrow::u(i)]), Scalar::one()),
            (Path::word(n, &[Arrow::d(i), Arrow::u(i), Arrow::d(i), Arrow::u(i)]), -&params.alpha[i]),
        ];
        for (p, coefficient) in summands {
            let (sum, period, closure) = compact_form(&p, weights)?;
            omega = &omega + &sum.scale(&coefficient);
            terms.push(CompactTerm { word: p.to_string(), coefficient, period, closure });
        }
    }
    Ok(Superpotential { omega, terms })
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct TwistReport {
    pub invariant: bool,
    /// `twist(omega) - omega`.
    pub defect: Element,
}

pub fn check_twist_invariance(omega: &Element, weights: &TwistWeights) -> Result<TwistReport> {
    if omega.homogeneous_components().keys().map(|k| k.0).collect::<std::collections::BTreeSet<_>>().len() > 1 {
        return input("superpotential must be homogeneous");
    }
    let defect = &twist_element(omega, weights)? - omega;
    Ok(TwistReport { invariant: defect.is_zero(), defect })
}

/// Deletes a leading `a` from each term; terms starting otherwise vanish.
pub fn cyclic_derivative(omega: &Element, a: Arrow) -> Element {
    let mut out = Element::zero(omega.n());
    for (p, c) in omega.terms() {
        if p.arrows().first() == Some(&a) {
            out.add_term(p.slice(1, p.len()), c.clone());
        }
    }
    out
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct DerivationReport {
    pub derivatives: Vec<(String, Element)>,
    pub derivative_rank: usize,
    pub relation_rank: usize,
    pub joint_rank: usize,
    /// Relations outside the span of the derivatives.
    pub unmatched_relations: Vec<String>,
    pub equal: bool,
}

/// Compares `span{d_a Omega}` with the span of the defining relations.
pub fn check_derivation_quotient(omega: &Element, params: &Parameters) -> DerivationReport {
    let n = params.n();
    let derivatives: Vec<(String, Element)> =
        Arrow::all(n).into_iter().map(|a| (a.to_string(), cyclic_derivative(omega, a))).collect();
    let ds: Vec<Element> = derivatives.iter().map(|(_, e)| e.clone()).collect();
    let rels = params.relations();
    let mut ech = Echelon::new();
    for d in &ds {
        ech.insert(element_vec(d));
    }
    let unmatched_relations = rels.iter().filter(|r| !ech.contains(&element_vec(r))).map(ToString::to_string).collect();
    let derivative_rank = rank_of(&ds);
    let relation_rank = rank_of(&rels);
    let joint_rank = rank_of(&[ds, rels].concat());
    DerivationReport {
        derivatives,
        derivative_rank,
        relation_rank,
        joint_rank,
        unmatched_relations,
        equal: derivative_rank == relation_rank && joint_rank == relation_rank,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn constant_beta(b: i64) -> Parameters {
        Parameters::from_ints(&[2, -1, 3], &[b, b, b], &[0, 0, 0]).unwrap()
    }

    #[test]
    fn first_twist_example() {
        let p = constant_beta(-1);
        let w = TwistWeights::from_scheme(WeightScheme::Lagged, &p).unwrap();
        let word = Path::word(3, &[Arrow::d(0), Arrow::d(2), Arrow::u(2), Arrow::u(0)]);
        let t = twist(&word, &w).unwrap();
        let expected = Element::word(3, &[Arrow::u(0), Arrow::d(0), Arrow::d(2), Arrow::u(2)]).scale(&-&p.beta[2]);
        assert_eq!(t, expected);
    }

    #[test]
    fn closure_scalars() {
        let p = Parameters::from_ints(&[0, 0, 0], &[1, 2, 3], &[0, 0, 0]).unwrap();
        let lagged = build_superpotential(&p, &TwistWeights::from_scheme(WeightScheme::Lagged, &p).unwrap()).unwrap();
        // [d_0 d_2 u_2 u_0]: beta_2^2 beta_1^2 = 9 * 4
        assert_eq!(lagged.terms[0].closure, Scalar::from_int(36));
        assert_eq!(lagged.terms[0].period, 4);
        assert_eq!(lagged.terms[1].period, 2);
        let balanced =
            build_superpotential(&p, &TwistWeights::from_scheme(WeightScheme::Balanced, &p).unwrap()).unwrap();
        assert_eq!(balanced.closure_defects().count(), 0);
        assert!(
            check_twist_invariance(&balanced.omega, &TwistWeights::from_scheme(WeightScheme::Balanced, &p).unwrap())
                .unwrap()
                .invariant
        );
    }

    #[test]
    fn derivatives() {
        let n = 3;
        let w = Element::word(n, &[Arrow::d(0), Arrow::d(2), Arrow::u(2), Arrow::u(0)]);
        assert_eq!(cyclic_derivative(&w, Arrow::d(0)), Element::word(n, &[Arrow::d(2), Arrow::u(2), Arrow::u(0)]));
        assert!(cyclic_derivative(&w, Arrow::u(0)).is_zero());
    }

    #[test]
    fn constant_beta_superpotentials() {
        for b in [-1, 1] {
            let p = constant_beta(b);
            let w = TwistWeights::from_scheme(WeightScheme::Lagged, &p).unwrap();
            let s = build_superpotential(&p, &w).unwrap();
            assert!(check_twist_invariance(&s.omega, &w).unwrap().invariant);
            assert!(check_derivation_quotient(&s.omega, &p).equal);
        }
        let zero = Element::zero(3);
        let w = TwistWeights::from_scheme(WeightScheme::Lagged, &constant_beta(1)).unwrap();
        assert!(check_twist_invariance(&zero, &w).unwrap().invariant);
    }

    #[test]
    fn generic_beta_weight_schemes() {
        let p = Parameters::from_ints(&[1, 0, -2], &[1, 2, 3], &[0, 0, 0]).unwrap();
        let outcome = |s: WeightScheme| {
            let w = TwistWeights::from_scheme(s, &p).unwrap();
            let sp = build_superpotential(&p, &w).unwrap();
            (check_twist_invariance(&sp.omega, &w).unwrap().invariant, check_derivation_quotient(&sp.omega, &p).equal)
        };
        assert_eq!(outcome(WeightScheme::Lagged), (false, false));
        assert_eq!(outcome(WeightScheme::Balanced), (true, false));
        assert_eq!(outcome(WeightScheme::LaggedBalanced), (true, true));
    }
}
