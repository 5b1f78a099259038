//! The smash product `R # kG` of the graded down-up algebra
//! `R = k<u, d | d^2 u + u d^2, d u^2 + u^2 d>` with the cyclic group of order `n`
//! acting by `g(u) = z u`, `g(d) = z^{-1} d`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::cyclotomic::{CycField, CycScalar};
use crate::element::Element;
use crate::error::{input, Error, Result};
use crate::hilbert::IntMatrix;
use crate::linalg::{Echelon, Field};
use crate::params::Parameters;
use crate::quiver::{Arrow, Family, Path};
use crate::rewrite::{build_system, Preset, ReductionSystem};
use crate::scalar::Scalar;

/// `sum c * (r # g^j)` with `r` a normal word of `R`.
#[derive(Clone, PartialEq, Eq)]
pub struct SmashElement {
    terms: BTreeMap<(Path, usize), CycScalar>,
}

impl SmashElement {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, usize, &CycScalar)> {
        self.terms.iter().map(|((p, j), c)| (p, *j, c))
    }

    fn add_term(&mut self, key: (Path, usize), c: CycScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(x) => {
                *x = x.add(&c);
                if x.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn add(&self, other: &SmashElement) -> SmashElement {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SmashElement) -> SmashElement {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, c: &CycScalar) -> SmashElement {
        let mut out = SmashElement { terms: BTreeMap::new() };
        for (k, x) in &self.terms {
            out.add_term(k.clone(), x.mul(c));
        }
        out
    }

    fn vector(&self) -> BTreeMap<(Path, usize), CycScalar> {
        self.terms.clone()
    }
}

impl fmt::Display for SmashElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((p, j), c)| {
                let word = if p.is_trivial() { "1".to_string() } else { p.to_string() };
                format!("({c}) {word} # g^{j}")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for SmashElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl serde::Serialize for SmashElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Arithmetic context for `R # kG` with `|G| = n`.
#[derive(Clone, Debug)]
pub struct SmashAlgebra {
    n: usize,
    field: Arc<CycField>,
    sys: ReductionSystem,
}

/// The `n` idempotents `f_i = (1/n) sum_j z^{ij} # g^j`.
#[derive(Clone, Debug, serde::Serialize)]
pub struct IdempotentSet {
    pub f: Vec<SmashElement>,
    /// `f_i f_j = delta_ij f_i` for all pairs.
    pub orthogonal: bool,
    /// `sum_i f_i = 1 # e`.
    pub complete: bool,
}

impl SmashAlgebra {
    pub fn new(n: usize) -> Result<SmashAlgebra> {
        if n < 2 {
            return input("the group order must be at least 2");
        }
        let field = CycField::new(n)?;
        let sys = build_system(Preset::GradedDownUp)?.verify().map_err(|_| Error::Unverified)?;
        Ok(SmashAlgebra { n, field, sys })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn zero(&self) -> SmashElement {
        SmashElement { terms: BTreeMap::new() }
    }

    pub fn zeta_pow(&self, k: i64) -> CycScalar {
        CycScalar::zeta_pow(&self.field, k)
    }

    pub fn rational(&self, c: Scalar) -> CycScalar {
        CycScalar::from_scalar(&self.field, c)
    }

    /// `r # g^j` for an element `r` of `R`, reduced to normal form.
    pub fn embed(&self, r: &Element, j: usize) -> SmashElement {
        let mut out = self.zero();
        for (p, c) in self.sys.normal_form(r).terms() {
            out.add_term((p.clone(), j % self.n), self.rational(c.clone()));
        }
        out
    }

    pub fn one(&self) -> SmashElement {
        self.embed(&Element::one(1), 0)
    }

    pub fn group(&self, j: usize) -> SmashElement {
        self.embed(&Element::one(1), j)
    }

    pub fn u(&self) -> SmashElement {
        self.embed(&Element::word(1, &[Arrow::u(0)]), 0)
    }

    pub fn d(&self) -> SmashElement {
        self.embed(&Element::word(1, &[Arrow::d(0)]), 0)
    }

    /// `g^j` acts on a word with `p` letters `u` and `q` letters `d` by `z^{j(p - q)}`.
    fn character(&self, word: &Path, j: usize) -> CycScalar {
        let weight: i64 = word.arrows().iter().map(|a| if a.family == Family::U { 1 } else { -1 }).sum();
        self.zeta_pow(weight * j as i64)
    }

    /// `(r # g^j)(s # g^l) = r g^j(s) # g^{j+l}`.
    pub fn mul(&self, a: &SmashElement, b: &SmashElement) -> SmashElement {
        let mut out = self.zero();
        for ((r, j), c) in &a.terms {
            for ((s, l), c2) in &b.terms {
                let coeff = c.mul(c2).mul(&self.character(s, *j));
                let prod = r.concat(s).expect("single vertex");
                for (p, x) in self.sys.normal_form(&Element::from_path(prod)).terms() {
                    out.add_term((p.clone(), (j + l) % self.n), coeff.scale(x));
                }
            }
        }
        out
    }

    pub fn product(&self, factors: &[&SmashElement]) -> SmashElement {
        factors.iter().fold(self.one(), |acc, f| self.mul(&acc, f))
    }

    /// `g^j(r) = (1 # g^j)(r # e)(1 # g^{-j})`.
    pub fn act(&self, j: usize, r: &SmashElement) -> SmashElement {
        let back = (self.n - j % self.n) % self.n;
        self.product(&[&self.group(j), r, &self.group(back)])
    }

    pub fn f(&self, i: usize) -> SmashElement {
        let inv_n = self.rational(Scalar::new(1, self.n as i64));
        (0..self.n).fold(self.zero(), |acc, j| {
            let c = self.zeta_pow((i * j) as i64).mul(&inv_n);
            acc.add(&self.group(j).scale(&c))
        })
    }

    pub fn build_idempotents(&self) -> IdempotentSet {
        let f: Vec<SmashElement> = (0..self.n).map(|i| self.f(i)).collect();
        let orthogonal = (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let p = self.mul(&f[i], &f[j]);
                if i == j {
                    p == f[i]
                } else {
                    p.is_zero()
                }
            })
        });
        let complete = f.iter().fold(self.zero(), |acc, x| acc.add(x)) == self.one();
        IdempotentSet { f, orthogonal, complete }
    }

    /// `U_i = f_i (u # e)` and `D_i = (d # e) f_i`, each with its second expression.
    pub fn cap_generators(&self) -> CapGenerators {
        let n = self.n;
        let (u, d) = (self.u(), self.d());
        let u_left: Vec<SmashElement> = (0..n).map(|i| self.mul(&self.f(i), &u)).collect();
        let u_right: Vec<SmashElement> = (0..n).map(|i| self.mul(&u, &self.f((i + 1) % n))).collect();
        let d_right: Vec<SmashElement> = (0..n).map(|i| self.mul(&d, &self.f(i))).collect();
        let d_left: Vec<SmashElement> = (0..n).map(|i| self.mul(&self.f((i + 1) % n), &d)).collect();
        let agree = u_left == u_right && d_right == d_left;
        CapGenerators { u: u_left, d: d_right, agree }
    }

    /// The image of a path of the `n`-vertex quiver under `e_i -> f_i`, `u_i -> U_i`, `d_i -> D_i`.
    pub fn image_path(&self, gens: &CapGenerators, p: &Path) -> SmashElement {
        let mut out = self.f(p.source());
        for a in p.arrows() {
            let g = match a.family {
                Family::U => &gens.u[a.index],
                Family::D => &gens.d[a.index],
            };
            out = self.mul(&out, g);
        }
        out
    }

    pub fn image(&self, gens: &CapGenerators, e: &Element) -> SmashElement {
        let mut out = self.zero();
        for (p, c) in e.terms() {
            out = out.add(&self.image_path(gens, p).scale(&self.rational(c.clone())));
        }
        out
    }

    /// `dim (f_i (R # kG) f_j)_k` for all `i, j`, by exact rank over the cyclotomic field.
    pub fn sandwich_dimensions(&self, k: usize) -> IntMatrix {
        let n = self.n;
        let words = self.sys.enumerate_basis(k);
        let fs: Vec<SmashElement> = (0..n).map(|i| self.f(i)).collect();
        let mut out = IntMatrix::zero(n);
        for i in 0..n {
            let left: Vec<SmashElement> = words
                .iter()
                .flat_map(|w| (0..n).map(move |l| (w, l)))
                .map(|(w, l)| self.mul(&fs[i], &self.embed(&Element::from_path(w.clone()), l)))
                .collect();
            for j in 0..n {
                let mut ech: Echelon<(Path, usize), CycScalar> = Echelon::new();
                for x in &left {
                    ech.insert(self.mul(x, &fs[j]).vector());
                }
                out.add_at(i, j, &ech.rank().into());
            }
        }
        out
    }
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct CapGenerators {
    pub u: Vec<SmashElement>,
    pub d: Vec<SmashElement>,
    /// `f_i (u # e) = (u # e) f_{i+1}` and `(d # e) f_i = f_{i+1} (d # e)` for all `i`.
    pub agree: bool,
}

pub fn build_idempotents(n: usize) -> Result<IdempotentSet> {
    Ok(SmashAlgebra::new(n)?.build_idempotents())
}

pub fn smash_multiply(alg: &SmashAlgebra, a: &SmashElement, b: &SmashElement) -> SmashElement {
    alg.mul(a, b)
}

pub fn cap_generators(n: usize) -> Result<CapGenerators> {
    Ok(SmashAlgebra::new(n)?.cap_generators())
}

/// Whether `u_i -> U_i`, `d_i -> D_i` kills every relation of `H(0, beta, 0)`.
#[derive(Clone, Debug, serde::Serialize)]
pub struct RelationTest {
    pub beta: Vec<Scalar>,
    pub kills_relations: bool,
    /// Relations with nonzero image.
    pub surviving: Vec<String>,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct SkewGroupReport {
    pub n: usize,
    pub idempotents_orthogonal: bool,
    pub idempotents_complete: bool,
    pub generators_agree: bool,
    /// The two sums `D U U + U U D` and `D D U + U D D` at each vertex.
    pub identities: Vec<(String, bool)>,
    pub constant_beta: Vec<RelationTest>,
    pub supplied: RelationTest,
    pub max_degree: usize,
    pub sandwich_dimensions: Vec<IntMatrix>,
    pub expected_dimensions: Vec<IntMatrix>,
    pub dimensions_match: bool,
    /// The constant value of `beta` that makes the assignment a homomorphism, if any.
    pub matching_beta: Option<Scalar>,
    pub passed: bool,
}

fn relation_test(alg: &SmashAlgebra, gens: &CapGenerators, params: &Parameters) -> RelationTest {
    let surviving: Vec<String> =
        params.relations().iter().filter(|r| !alg.image(gens, r).is_zero()).map(ToString::to_string).collect();
    RelationTest { beta: params.beta.clone(), kills_relations: surviving.is_empty(), surviving }
}

/// Checks the idempotents, the generator identities, which constant `beta` the generator
/// assignment respects, and the degreewise dimensions of `f_i (R # kG) f_j` against the
/// Hilbert series of the quiver down-up algebra `params` (which must have `alpha = gamma = 0`).
pub fn verify_quotient_match(n: usize, params: &Parameters, max_degree: usize) -> Result<SkewGroupReport> {
    if params.n() != n {
        return input("parameters must live on the n-cycle");
    }
    if !params.alpha.iter().chain(&params.gamma).all(Scalar::is_zero) {
        return input("alpha and gamma must vanish");
    }
    let alg = SmashAlgebra::new(n)?;
    let idem = alg.build_idempotents();
    let gens = alg.cap_generators();
    let (u, d) = (&gens.u, &gens.d);
    let mut identities = Vec::new();
    for i in 0..n {
        let (im, ip) = ((i + n - 1) % n, (i + 1) % n);
        let first = alg.product(&[&d[im], &u[im], &u[i]]).add(&alg.product(&[&u[i], &u[ip], &d[ip]]));
        let second = alg.product(&[&d[i], &d[im], &u[im]]).add(&alg.product(&[&u[ip], &d[ip], &d[i]]));
        identities.push((format!("D{im} U{im} U{i} + U{i} U{ip} D{ip}"), first.is_zero()));
        identities.push((format!("D{i} D{im} U{im} + U{ip} D{ip} D{i}"), second.is_zero()));
    }
    let constant_beta: Vec<RelationTest> = [1, -1]
        .iter()
        .map(|&b| {
            let p = Parameters::from_ints(&vec![0; n], &vec![b; n], &vec![0; n]).expect("lengths agree");
            relation_test(&alg, &gens, &p)
        })
        .collect();
    let matching_beta = constant_beta.iter().find(|t| t.kills_relations).map(|t| t.beta[0].clone());
    let supplied = relation_test(&alg, &gens, params);
    let sys = build_system(Preset::QuiverDownUp { params: params.clone() })?;
    let expected_dimensions = sys.dimension_matrices(max_degree);
    let sandwich_dimensions: Vec<IntMatrix> = (0..=max_degree).map(|k| alg.sandwich_dimensions(k)).collect();
    let dimensions_match = sandwich_dimensions == expected_dimensions;
    let passed = idem.orthogonal
        && idem.complete
        && gens.agree
        && identities.iter().all(|(_, ok)| *ok)
        && matching_beta.is_some()
        && dimensions_match;
    Ok(SkewGroupReport {
        n,
        idempotents_orthogonal: idem.orthogonal,
        idempotents_complete: idem.complete,
        generators_agree: gens.agree,
        identities,
        constant_beta,
        supplied,
        max_degree,
        sandwich_dimensions,
        expected_dimensions,
        dimensions_match,
        matching_beta,
        passed,
    })
}
