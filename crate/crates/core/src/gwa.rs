//! The generalized Weyl algebra `T = R(sigma, x)` over `R = (+)_i k[x_i, y_i]`
//! and the maps between `T` and the quiver down-up algebra.
//!
//! A path from `s` to `t` corresponds to an element of `e_s T e_t`; under this
//! convention `u_i -> e_i X^-` and `d_i -> e_{i+1} X^+`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::params::{random_scalar, Parameters};
use crate::quiver::{wrap, Arrow, Family};
use crate::rewrite::{build_system, Preset, ReductionSystem};
use crate::scalar::Scalar;

/// Bivariate polynomial keyed by exponents `(a, b)` of `x^a y^b`.
type Poly = BTreeMap<(u32, u32), Scalar>;

fn poly_add_term(p: &mut Poly, key: (u32, u32), c: Scalar) {
    if c.is_zero() {
        return;
    }
    let slot = p.entry(key).or_insert_with(Scalar::zero);
    *slot += &c;
    if slot.is_zero() {
        p.remove(&key);
    }
}

fn poly_mul(p: &Poly, q: &Poly) -> Poly {
    let mut out = Poly::new();
    for ((a, b), c) in p {
        for ((a2, b2), c2) in q {
            poly_add_term(&mut out, (a + a2, b + b2), c * c2);
        }
    }
    out
}

fn poly_pow(p: &Poly, e: u32) -> Poly {
    let mut out: Poly = [((0, 0), Scalar::one())].into();
    for _ in 0..e {
        out = poly_mul(&out, p);
    }
    out
}

/// `sum_i p_i(x_i, y_i) e_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseElement {
    n: usize,
    comps: BTreeMap<usize, Poly>,
}

impl BaseElement {
    pub fn zero(n: usize) -> BaseElement {
        BaseElement { n, comps: BTreeMap::new() }
    }

    pub fn monomial(n: usize, vertex: usize, a: u32, b: u32, c: Scalar) -> BaseElement {
        let mut r = BaseElement::zero(n);
        r.add_term(vertex, (a, b), c);
        r
    }

    pub fn e(n: usize, i: usize) -> BaseElement {
        BaseElement::monomial(n, i, 0, 0, Scalar::one())
    }

    pub fn one(n: usize) -> BaseElement {
        (0..n).fold(BaseElement::zero(n), |acc, i| acc.add(&BaseElement::e(n, i)))
    }

    pub fn x(n: usize, i: usize) -> BaseElement {
        BaseElement::monomial(n, i, 1, 0, Scalar::one())
    }

    pub fn y(n: usize, i: usize) -> BaseElement {
        BaseElement::monomial(n, i, 0, 1, Scalar::one())
    }

    /// `x = sum_i x_i`.
    pub fn x_sum(n: usize) -> BaseElement {
        (0..n).fold(BaseElement::zero(n), |acc, i| acc.add(&BaseElement::x(n, i)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Vertices carrying a nonzero component.
    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.comps.keys().copied()
    }

    fn add_term(&mut self, vertex: usize, key: (u32, u32), c: Scalar) {
        let p = self.comps.entry(vertex).or_default();
        poly_add_term(p, key, c);
        if p.is_empty() {
            self.comps.remove(&vertex);
        }
    }

    fn set_component(&mut self, vertex: usize, p: Poly) {
        if p.is_empty() {
            self.comps.remove(&vertex);
        } else {
            self.comps.insert(vertex, p);
        }
    }

    pub fn add(&self, other: &BaseElement) -> BaseElement {
        let mut r = self.clone();
        for (v, p) in &other.comps {
            for (k, c) in p {
                r.add_term(*v, *k, c.clone());
            }
        }
        r
    }

    pub fn sub(&self, other: &BaseElement) -> BaseElement {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> BaseElement {
        let mut r = BaseElement::zero(self.n);
        for (v, p) in &self.comps {
            r.set_component(
                *v,
                p.iter()
                    .filter_map(|(k, x)| {
                        let y = x * c;
                        (!y.is_zero()).then_some((*k, y))
                    })
                    .collect(),
            );
        }
        r
    }

    /// Componentwise product; the `e_i` are orthogonal.
    pub fn mul(&self, other: &BaseElement) -> BaseElement {
        let mut r = BaseElement::zero(self.n);
        for (v, p) in &self.comps {
            if let Some(q) = other.comps.get(v) {
                r.set_component(*v, poly_mul(p, q));
            }
        }
        r
    }

    /// `e_i r`.
    pub fn restrict(&self, i: usize) -> BaseElement {
        let mut r = BaseElement::zero(self.n);
        if let Some(p) = self.comps.get(&i) {
            r.set_component(i, p.clone());
        }
        r
    }

    /// Largest total degree among the terms.
    pub fn degree(&self) -> Option<u32> {
        self.comps.values().flat_map(|p| p.keys().map(|(a, b)| a + b)).max()
    }

    /// Random polynomial supported at `vertex` with total degree at most `max_degree`.
    pub fn random<R: Rng>(rng: &mut R, n: usize, vertex: usize, max_degree: u32) -> BaseElement {
        let mut r = BaseElement::zero(n);
        let terms = rng.gen_range(1..=3);
        for _ in 0..terms {
            let a = rng.gen_range(0..=max_degree);
            let b = rng.gen_range(0..=max_degree - a);
            r.add_term(vertex, (a, b), random_scalar(rng, true));
        }
        r
    }
}

impl fmt::Display for BaseElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (v, p) in &self.comps {
            for ((a, b), c) in p.iter().rev() {
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                write!(f, "{c}")?;
                for (name, e) in [("x", a), ("y", b)] {
                    match e {
                        0 => {}
                        1 => write!(f, "*{name}{v}")?,
                        _ => write!(f, "*{name}{v}^{e}")?,
                    }
                }
                write!(f, "*e{v}")?;
            }
        }
        Ok(())
    }
}

impl serde::Serialize for BaseElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `sum_m r_m X^m` with each coefficient written on the left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GwaElement {
    n: usize,
    terms: BTreeMap<i64, BaseElement>,
}

impl GwaElement {
    pub fn zero(n: usize) -> GwaElement {
        GwaElement { n, terms: BTreeMap::new() }
    }

    pub fn term(r: BaseElement, m: i64) -> GwaElement {
        let mut g = GwaElement::zero(r.n());
        g.add_term(m, &r);
        g
    }

    pub fn base(r: BaseElement) -> GwaElement {
        GwaElement::term(r, 0)
    }

    /// `X_i^+ = e_{i+1} X^+`, the image of `d_i`.
    pub fn x_plus(n: usize, i: usize) -> GwaElement {
        GwaElement::term(BaseElement::e(n, (i + 1) % n), 1)
    }

    /// `X_i^- = e_i X^-`, the image of `u_i`.
    pub fn x_minus(n: usize, i: usize) -> GwaElement {
        GwaElement::term(BaseElement::e(n, i), -1)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BaseElement)> {
        self.terms.iter().map(|(m, r)| (*m, r))
    }

    pub fn coeff(&self, m: i64) -> BaseElement {
        self.terms.get(&m).cloned().unwrap_or_else(|| BaseElement::zero(self.n))
    }

    /// Smallest and largest X-degree present.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        Some((*self.terms.keys().next()?, *self.terms.keys().next_back()?))
    }

    fn add_term(&mut self, m: i64, r: &BaseElement) {
        let sum = self.coeff(m).add(r);
        if sum.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, sum);
        }
    }

    pub fn add(&self, other: &GwaElement) -> GwaElement {
        let mut g = self.clone();
        for (m, r) in &other.terms {
            g.add_term(*m, r);
        }
        g
    }

    pub fn sub(&self, other: &GwaElement) -> GwaElement {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> GwaElement {
        let mut g = GwaElement::zero(self.n);
        for (m, r) in &self.terms {
            g.add_term(*m, &r.scale(c));
        }
        g
    }

    /// Left multiplication by `e_i`.
    pub fn left_restrict(&self, i: usize) -> GwaElement {
        let mut g = GwaElement::zero(self.n);
        for (m, r) in &self.terms {
            g.add_term(*m, &r.restrict(i));
        }
        g
    }
}

impl fmt::Display for GwaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, r)| format!("({r}) X^{m}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl serde::Serialize for GwaElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `sigma`, the image of each monomial under the substitution
/// `e_i -> e_{i+1}, x_i -> y_{i+1}, y_i -> alpha_i y_{i+1} + beta_i x_{i+1} + gamma_i e_{i+1}`.
pub fn sigma(params: &Parameters, b: &BaseElement) -> BaseElement {
    let n = params.n();
    let mut out = BaseElement::zero(n);
    for (i, p) in &b.comps {
        let x_img: Poly = [((0, 1), Scalar::one())].into();
        let mut y_img = Poly::new();
        poly_add_term(&mut y_img, (0, 1), params.alpha[*i].clone());
        poly_add_term(&mut y_img, (1, 0), params.beta[*i].clone());
        poly_add_term(&mut y_img, (0, 0), params.gamma[*i].clone());
        let j = (i + 1) % n;
        for ((a, e), c) in p {
            let img = poly_mul(&poly_pow(&x_img, *a), &poly_pow(&y_img, *e));
            for (k, v) in img {
                out.add_term(j, k, &v * c);
            }
        }
    }
    out
}

/// `sigma^{-1}`: `x_{i+1} -> beta_i^{-1}(y_i - alpha_i x_i - gamma_i e_i)`, `y_{i+1} -> x_i`.
pub fn sigma_inverse(params: &Parameters, b: &BaseElement) -> Result<BaseElement> {
    let n = params.n();
    if let Some(i) = params.first_zero_beta() {
        return Err(Error::NotInvertible(format!("beta_{i} = 0")));
    }
    let mut out = BaseElement::zero(n);
    for (j, p) in &b.comps {
        let i = wrap(*j as i64 - 1, n);
        let binv = params.beta[i].inv()?;
        let mut x_img = Poly::new();
        poly_add_term(&mut x_img, (0, 1), binv.clone());
        poly_add_term(&mut x_img, (1, 0), -(&binv * &params.alpha[i]));
        poly_add_term(&mut x_img, (0, 0), -(&binv * &params.gamma[i]));
        let y_img: Poly = [((1, 0), Scalar::one())].into();
        for ((a, e), c) in p {
            let img = poly_mul(&poly_pow(&x_img, *a), &poly_pow(&y_img, *e));
            for (k, v) in img {
                out.add_term(i, k, &v * c);
            }
        }
    }
    Ok(out)
}

/// Arithmetic context for `T`; requires every `beta_i` nonzero.
#[derive(Clone, Debug)]
pub struct Gwa {
    params: Parameters,
}

impl Gwa {
    pub fn new(params: &Parameters) -> Result<Gwa> {
        if let Some(i) = params.first_zero_beta() {
            return Err(Error::Unsupported(format!("beta_{i} = 0: sigma is not an automorphism")));
        }
        Ok(Gwa { params: params.clone() })
    }

    pub fn params(&self) -> &Parameters {
        &self.params
    }

    pub fn n(&self) -> usize {
        self.params.n()
    }

    pub fn sigma_pow(&self, b: &BaseElement, m: i64) -> BaseElement {
        let mut r = b.clone();
        for _ in 0..m.unsigned_abs() {
            r = if m > 0 {
                sigma(&self.params, &r)
            } else {
                sigma_inverse(&self.params, &r).expect("beta checked nonzero")
            };
        }
        r
    }

    /// The coefficient `c` with `X^m X^l = c X^{m+l}`.
    fn contraction(&self, m: i64, l: i64, cache: &mut HashMap<i64, BaseElement>) -> BaseElement {
        let n = self.n();
        let mut c = BaseElement::one(n);
        let mut shifted_x =
            |k: i64| cache.entry(k).or_insert_with(|| self.sigma_pow(&BaseElement::x_sum(n), k)).clone();
        if m > 0 && l < 0 {
            for t in 0..m.min(-l) {
                c = c.mul(&shifted_x(m - t));
            }
        } else if m < 0 && l > 0 {
            let q = -m;
            for t in 1..=q.min(l) {
                c = c.mul(&shifted_x(-(q - t)));
            }
        }
        c
    }

    pub fn mul(&self, a: &GwaElement, b: &GwaElement) -> GwaElement {
        assert_eq!(a.n(), b.n(), "elements over different quivers");
        let mut out = GwaElement::zero(a.n());
        let mut cache = HashMap::new();
        for (m, r) in &a.terms {
            for (l, s) in &b.terms {
                let coeff = r.mul(&self.sigma_pow(s, *m));
                if coeff.is_zero() {
                    continue;
                }
                let c = self.contraction(*m, *l, &mut cache);
                out.add_term(m + l, &coeff.mul(&c));
            }
        }
        out
    }

    /// `theta` on a single path: the ordered product of arrow images.
    pub fn theta_path(&self, p: &crate::quiver::Path) -> GwaElement {
        let n = self.n();
        let mut g = GwaElement::base(BaseElement::e(n, p.source()));
        for a in p.arrows() {
            g = self.mul(&g, &self.theta_arrow(*a));
        }
        g
    }

    pub fn theta_arrow(&self, a: Arrow) -> GwaElement {
        let n = self.n();
        match a.family {
            Family::U => GwaElement::x_minus(n, a.index),
            Family::D => GwaElement::x_plus(n, a.index),
        }
    }

    pub fn theta(&self, a: &Element) -> GwaElement {
        let mut out = GwaElement::zero(a.n());
        for (p, c) in a.terms() {
            out = out.add(&self.theta_path(p).scale(c));
        }
        out
    }

    /// `theta'`, unreduced: `x_i -> u_i d_i`, `y_i -> d_{i-1} u_{i-1}`, `X^+ -> sum d`,
    /// `X^- -> sum u`.
    pub fn theta_prime_raw(&self, t: &GwaElement) -> Element {
        let n = self.n();
        let d_sum = (0..n).fold(Element::zero(n), |acc, i| &acc + &Element::word(n, &[Arrow::d(i)]));
        let u_sum = (0..n).fold(Element::zero(n), |acc, i| &acc + &Element::word(n, &[Arrow::u(i)]));
        let mut out = Element::zero(n);
        for (m, r) in &t.terms {
            let shift = if *m >= 0 { d_sum.pow(*m as usize) } else { u_sum.pow(m.unsigned_abs() as usize) };
            let mut base = Element::zero(n);
            for (i, p) in &r.comps {
                let im = wrap(*i as i64 - 1, n);
                let xi = Element::word(n, &[Arrow::u(*i), Arrow::d(*i)]);
                let yi = Element::word(n, &[Arrow::d(im), Arrow::u(im)]);
                for ((a, b), c) in p {
                    let mono = &(&Element::vertex(n, *i) * &xi.pow(*a as usize)) * &yi.pow(*b as usize);
                    base = &base + &mono.scale(c);
                }
            }
            out = &out + &(&base * &shift);
        }
        out
    }

    pub fn theta_prime(&self, sys: &ReductionSystem, t: &GwaElement) -> Element {
        sys.normal_form(&self.theta_prime_raw(t))
    }
}

pub fn gwa_multiply(params: &Parameters, a: &GwaElement, b: &GwaElement) -> Result<GwaElement> {
    Ok(Gwa::new(params)?.mul(a, b))
}

pub fn theta(params: &Parameters, a: &Element) -> Result<GwaElement> {
    Ok(Gwa::new(params)?.theta(a))
}

/// `theta'` reduced to normal form in the quiver down-up algebra.
pub fn theta_prime(params: &Parameters, t: &GwaElement) -> Result<Element> {
    let gwa = Gwa::new(params)?;
    let sys = build_system(Preset::QuiverDownUp { params: params.clone() })?;
    Ok(gwa.theta_prime(&sys, t))
}

/// Results of the relation, round-trip and generator checks for `theta`, `theta'`.
#[derive(Clone, Debug, serde::Serialize)]
pub struct IsomorphismReport {
    /// Relations whose image under `theta` is nonzero.
    pub surviving_relations: Vec<String>,
    /// Generators `g` of the path algebra with `theta'(theta(g)) != g`.
    pub path_round_trip_failures: Vec<String>,
    /// Generators `x_i, y_i, X_i^+, X_i^-` of `T` with `theta(theta'(g)) != g`.
    pub gwa_round_trip_failures: Vec<String>,
    pub passed: bool,
}

pub fn check_isomorphism(params: &Parameters) -> Result<IsomorphismReport> {
    let gwa = Gwa::new(params)?;
    let sys = build_system(Preset::QuiverDownUp { params: params.clone() })?;
    let n = params.n();
    let surviving_relations: Vec<String> =
        params.relations().iter().filter(|r| !gwa.theta(r).is_zero()).map(ToString::to_string).collect();
    let mut path_round_trip_failures = Vec::new();
    let generators =
        (0..n).map(|i| Element::vertex(n, i)).chain(Arrow::all(n).into_iter().map(|a| Element::word(n, &[a])));
    for g in generators {
        if gwa.theta_prime(&sys, &gwa.theta(&g)) != g {
            path_round_trip_failures.push(g.to_string());
        }
    }
    let mut gwa_round_trip_failures = Vec::new();
    for i in 0..n {
        let gens = [
            GwaElement::base(BaseElement::x(n, i)),
            GwaElement::base(BaseElement::y(n, i)),
            GwaElement::x_plus(n, i),
            GwaElement::x_minus(n, i),
            GwaElement::base(BaseElement::e(n, i)),
        ];
        for g in gens {
            if gwa.theta(&gwa.theta_prime(&sys, &g)) != g {
                gwa_round_trip_failures.push(g.to_string());
            }
        }
    }
    let passed =
        surviving_relations.is_empty() && path_round_trip_failures.is_empty() && gwa_round_trip_failures.is_empty();
    Ok(IsomorphismReport { surviving_relations, path_round_trip_failures, gwa_round_trip_failures, passed })
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct PwdReport {
    pub trials: usize,
    pub seed: u64,
    /// Sampled pairs whose product vanished.
    pub zero_products: Vec<(String, String)>,
    /// Pairs whose product's extreme X-degrees are not the sums of the factors'.
    pub degree_failures: Vec<(String, String)>,
    pub passed: bool,
}

/// Random element of `e_i T e_k` with X-degrees in `-max_shift..=max_shift`.
fn random_sandwich<R: Rng>(rng: &mut R, n: usize, i: usize, k: usize, max_shift: i64, poly_degree: u32) -> GwaElement {
    let shifts: Vec<i64> = (-max_shift..=max_shift).filter(|m| wrap(k as i64 + m, n) == i).collect();
    let mut g = GwaElement::zero(n);
    let count = rng.gen_range(1..=2.min(shifts.len()));
    for _ in 0..count {
        let m = shifts[rng.gen_range(0..shifts.len())];
        g.add_term(m, &BaseElement::random(rng, n, i, poly_degree));
    }
    if g.is_zero() {
        g.add_term(shifts[0], &BaseElement::e(n, i));
    }
    g
}

/// Samples `a in e_i T e_k`, `b in e_k T e_j` and checks `ab != 0` with additive extreme
/// X-degrees. `max_shift` bounds the X-degree, `poly_degree` the coefficient degree.
pub fn pwd_probe_gwa(
    params: &Parameters,
    max_shift: i64,
    poly_degree: u32,
    trials: usize,
    seed: u64,
) -> Result<PwdReport> {
    let gwa = Gwa::new(params)?;
    let n = params.n();
    let max_shift = max_shift.max(n as i64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut zero_products = Vec::new();
    let mut degree_failures = Vec::new();
    for _ in 0..trials {
        let (i, k, j) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
        let a = random_sandwich(&mut rng, n, i, k, max_shift, poly_degree);
        let b = random_sandwich(&mut rng, n, k, j, max_shift, poly_degree);
        let ab = gwa.mul(&a, &b);
        let pair = (a.to_string(), b.to_string());
        match (a.degree_range(), b.degree_range(), ab.degree_range()) {
            (Some((alo, ahi)), Some((blo, bhi)), Some((lo, hi))) => {
                if lo != alo + blo || hi != ahi + bhi {
                    degree_failures.push(pair);
                }
            }
            _ => zero_products.push(pair),
        }
    }
    let passed = zero_products.is_empty() && degree_failures.is_empty();
    Ok(PwdReport { trials, seed, zero_products, degree_failures, passed })
}
