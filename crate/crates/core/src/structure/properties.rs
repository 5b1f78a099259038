use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::linalg::rank_of;
use crate::params::{random_scalar, Parameters};
use crate::quiver::{wrap, Arrow, Path};
use crate::rewrite::{build_system, Preset, ReductionSystem};

pub(crate) fn verified_system(params: &Parameters) -> Result<ReductionSystem> {
    build_system(Preset::QuiverDownUp { params: params.clone() })?.verify().map_err(|_| Error::Unverified)
}

/// The zero divisors available when `beta_i = 0`.
#[derive(Clone, Debug, serde::Serialize)]
pub struct ZeroBetaWitness {
    pub vertex: usize,
    /// `d_{i-1} u_{i-1} - alpha_i u_i d_i - gamma_i e_i`.
    pub a: Element,
    /// `u_i`.
    pub b: Element,
    /// `a b = 0`.
    pub right_kill: bool,
    /// `d_i a = 0`.
    pub left_kill: bool,
    /// `a u_i d_i = 0`, a polynomial dependence between `u_i d_i` and `d_{i-1} u_{i-1}`.
    pub dependence: bool,
}

impl ZeroBetaWitness {
    pub fn holds(&self) -> bool {
        self.right_kill && self.left_kill && self.dependence
    }
}

fn witness(params: &Parameters, sys: &ReductionSystem, i: usize) -> Result<ZeroBetaWitness> {
    let n = params.n();
    let im = wrap(i as i64 - 1, n);
    let a = &(&Element::word(n, &[Arrow::d(im), Arrow::u(im)])
        - &Element::word(n, &[Arrow::u(i), Arrow::d(i)]).scale(&params.alpha[i]))
        - &Element::vertex(n, i).scale(&params.gamma[i]);
    let b = Element::word(n, &[Arrow::u(i)]);
    let di = Element::word(n, &[Arrow::d(i)]);
    let right_kill = sys.is_zero_in_quotient(&(&a * &b))?;
    let left_kill = sys.is_zero_in_quotient(&(&di * &a))?;
    let dependence = sys.is_zero_in_quotient(&(&(&a * &b) * &di))?;
    Ok(ZeroBetaWitness { vertex: i, a, b, right_kill, left_kill, dependence })
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct PropertyReport {
    pub all_beta_nonzero: bool,
    pub noetherian: bool,
    pub piecewise_domain: bool,
    pub polynomial_subalgebra: bool,
    /// Per vertex, the rank of `{x_i^a y_i^b : a + b <= 4}` after normal form, where
    /// `x_i = u_i d_i` and `y_i = d_{i-1} u_{i-1}`; 15 means independent.
    pub independence_ranks: Vec<usize>,
    pub witness: Option<ZeroBetaWitness>,
    /// Every internal check agrees with the flags.
    pub verified: bool,
}

/// The noetherian / piecewise-domain / polynomial-subalgebra flags, all decided by
/// whether some `beta_i` vanishes, together with checks backing them.
pub fn property_report(params: &Parameters) -> Result<PropertyReport> {
    let n = params.n();
    let sys = verified_system(params)?;
    let independence_ranks: Vec<usize> = (0..n)
        .map(|i| {
            let im = wrap(i as i64 - 1, n);
            let x = Element::word(n, &[Arrow::u(i), Arrow::d(i)]);
            let y = Element::word(n, &[Arrow::d(im), Arrow::u(im)]);
            let monomials: Vec<Element> = (0..=4usize)
                .flat_map(|a| (0..=4 - a).map(move |b| (a, b)))
                .map(|(a, b)| {
                    let mono = &(&Element::vertex(n, i) * &x.pow(a)) * &y.pow(b);
                    sys.normal_form(&mono)
                })
                .collect();
            rank_of(&monomials)
        })
        .collect();
    let nonzero = params.all_beta_nonzero();
    let (witness, verified) = match params.first_zero_beta() {
        None => (None, independence_ranks.iter().all(|&r| r == 15)),
        Some(i) => {
            let w = witness(params, &sys, i)?;
            let ok = w.holds() && independence_ranks[i] < 15;
            (Some(w), ok)
        }
    };
    Ok(PropertyReport {
        all_beta_nonzero: nonzero,
        noetherian: nonzero,
        piecewise_domain: nonzero,
        polynomial_subalgebra: nonzero,
        independence_ranks,
        witness,
        verified,
    })
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct HPwdReport {
    pub trials: usize,
    pub seed: u64,
    pub max_degree: usize,
    pub zero_products: Vec<(String, String)>,
    pub counterexample: Option<ZeroBetaWitness>,
    pub passed: bool,
}

/// Normal words grouped by `(source, target)`, lengths `0..=max_degree`.
fn basis_by_endpoints(sys: &ReductionSystem, max_degree: usize) -> BTreeMap<(usize, usize), Vec<Path>> {
    let mut out: BTreeMap<(usize, usize), Vec<Path>> = BTreeMap::new();
    for k in 0..=max_degree {
        for p in sys.enumerate_basis(k) {
            out.entry((p.source(), p.target())).or_default().push(p);
        }
    }
    out
}

fn random_sandwich<R: Rng>(rng: &mut R, n: usize, words: &[Path]) -> Element {
    let mut e = Element::zero(n);
    while e.is_zero() {
        for _ in 0..rng.gen_range(1..=3) {
            let w = &words[rng.gen_range(0..words.len())];
            e = &e + &Element::term(random_scalar(rng, true), w.clone());
        }
    }
    e
}

/// Random nonzero `a in e_i H e_k`, `b in e_k H e_j` built from normal words of length
/// at most `max_degree`. With every `beta_i` nonzero all products must be nonzero;
/// otherwise the documented zero-divisor pair must multiply to zero.
pub fn pwd_probe_h(params: &Parameters, max_degree: usize, trials: usize, seed: u64) -> Result<HPwdReport> {
    let n = params.n();
    let sys = verified_system(params)?;
    let basis = basis_by_endpoints(&sys, max_degree);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut zero_products = Vec::new();
    for _ in 0..trials {
        let (i, k, j) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
        let a = random_sandwich(&mut rng, n, &basis[&(i, k)]);
        let b = random_sandwich(&mut rng, n, &basis[&(k, j)]);
        if sys.normal_form(&(&a * &b)).is_zero() {
            zero_products.push((a.to_string(), b.to_string()));
        }
    }
    let counterexample = match params.first_zero_beta() {
        Some(i) => Some(witness(params, &sys, i)?),
        None => None,
    };
    let passed = match &counterexample {
        None => zero_products.is_empty(),
        Some(w) => w.right_kill && w.left_kill,
    };
    Ok(HPwdReport { trials, seed, max_degree, zero_products, counterexample, passed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nonzero_beta_properties() {
        let p = Parameters::from_ints(&[2, 0, -1], &[1, 1, 1], &[0, 1, 0]).unwrap();
        let r = property_report(&p).unwrap();
        assert!(r.noetherian && r.piecewise_domain && r.polynomial_subalgebra && r.verified);
        assert_eq!(r.independence_ranks, vec![15; 3]);
        let classical = Parameters::from_ints(&[3], &[1], &[0]).unwrap();
        assert!(property_report(&classical).unwrap().polynomial_subalgebra);
    }

    #[test]
    fn zero_beta_witness() {
        let p = Parameters::from_ints(&[2, 1, -1], &[0, 1, 1], &[3, 0, 1]).unwrap();
        let r = property_report(&p).unwrap();
        assert!(!r.noetherian && r.verified);
        let w = r.witness.unwrap();
        assert_eq!(w.vertex, 0);
        assert_eq!(w.a.to_string(), "-3 @0 + -2 * u0.d0 @0 + 1 * d2.u2 @0");
        assert_eq!(w.b.to_string(), "1 * u0 @0");
    }

    #[test]
    fn probe_h() {
        let p = Parameters::from_ints(&[2, 0, -1], &[1, -3, 2], &[0, 1, 0]).unwrap();
        let r = pwd_probe_h(&p, 3, 20, 1).unwrap();
        assert!(r.passed, "{:?}", r.zero_products);
        let z = Parameters::from_ints(&[2, 0, -1], &[0, -3, 2], &[0, 1, 0]).unwrap();
        let r = pwd_probe_h(&z, 3, 5, 1).unwrap();
        assert!(r.passed && r.counterexample.is_some());
    }
}
