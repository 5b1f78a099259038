//! Parameter triples `(alpha, beta, gamma)` and the defining relations.

use rand::Rng;

use crate::element::Element;
use crate::error::{input, Result};
use crate::quiver::{wrap, Arrow};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Parameters {
    n: usize,
    pub alpha: Vec<Scalar>,
    pub beta: Vec<Scalar>,
    pub gamma: Vec<Scalar>,
}

impl Parameters {
    pub fn new(alpha: Vec<Scalar>, beta: Vec<Scalar>, gamma: Vec<Scalar>) -> Result<Parameters> {
        let n = alpha.len();
        if n == 0 {
            return input("n must be positive");
        }
        if beta.len() != n || gamma.len() != n {
            return input(format!("length mismatch: alpha {}, beta {}, gamma {}", n, beta.len(), gamma.len()));
        }
        Ok(Parameters { n, alpha, beta, gamma })
    }

    /// Integer-valued parameters; convenient in tests.
    pub fn from_ints(alpha: &[i64], beta: &[i64], gamma: &[i64]) -> Result<Parameters> {
        let conv = |v: &[i64]| v.iter().map(|&x| Scalar::from_int(x)).collect();
        Parameters::new(conv(alpha), conv(beta), conv(gamma))
    }

    /// Graded parameters `(alpha, beta, 0)`.
    pub fn graded(alpha: Vec<Scalar>, beta: Vec<Scalar>) -> Result<Parameters> {
        let n = alpha.len();
        Parameters::new(alpha, beta, vec![Scalar::zero(); n])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha_at(&self, i: i64) -> &Scalar {
        &self.alpha[wrap(i, self.n)]
    }

    pub fn beta_at(&self, i: i64) -> &Scalar {
        &self.beta[wrap(i, self.n)]
    }

    pub fn gamma_at(&self, i: i64) -> &Scalar {
        &self.gamma[wrap(i, self.n)]
    }

    pub fn all_beta_nonzero(&self) -> bool {
        self.beta.iter().all(|b| !b.is_zero())
    }

    pub fn first_zero_beta(&self) -> Option<usize> {
        self.beta.iter().position(Scalar::is_zero)
    }

    pub fn is_graded(&self) -> bool {
        self.gamma.iter().all(Scalar::is_zero)
    }

    /// `d_{i-1} u_{i-1} u_i - alpha_i u_i d_i u_i - beta_i u_i u_{i+1} d_{i+1} - gamma_i u_i`.
    pub fn up_relation(&self, i: usize) -> Element {
        let n = self.n;
        let (im, ip) = (wrap(i as i64 - 1, n), wrap(i as i64 + 1, n));
        let mut r = Element::word(n, &[Arrow::d(im), Arrow::u(im), Arrow::u(i)]);
        r = &r - &Element::word(n, &[Arrow::u(i), Arrow::d(i), Arrow::u(i)]).scale(&self.alpha[i]);
        r = &r - &Element::word(n, &[Arrow::u(i), Arrow::u(ip), Arrow::d(ip)]).scale(&self.beta[i]);
        &r - &Element::word(n, &[Arrow::u(i)]).scale(&self.gamma[i])
    }

    /// `d_i d_{i-1} u_{i-1} - alpha_i d_i u_i d_i - beta_i u_{i+1} d_{i+1} d_i - gamma_i d_i`.
    pub fn down_relation(&self, i: usize) -> Element {
        let n = self.n;
        let (im, ip) = (wrap(i as i64 - 1, n), wrap(i as i64 + 1, n));
        let mut r = Element::word(n, &[Arrow::d(i), Arrow::d(im), Arrow::u(im)]);
        r = &r - &Element::word(n, &[Arrow::d(i), Arrow::u(i), Arrow::d(i)]).scale(&self.alpha[i]);
        r = &r - &Element::word(n, &[Arrow::u(ip), Arrow::d(ip), Arrow::d(i)]).scale(&self.beta[i]);
        &r - &Element::word(n, &[Arrow::d(i)]).scale(&self.gamma[i])
    }

    /// All `2n` defining relations: up relations `0..n`, then down relations `0..n`.
    pub fn relations(&self) -> Vec<Element> {
        (0..self.n).map(|i| self.up_relation(i)).chain((0..self.n).map(|i| self.down_relation(i))).collect()
    }

    /// Random small rationals; `beta` entries are nonzero when `nonzero_beta`.
    pub fn random<R: Rng>(rng: &mut R, n: usize, nonzero_beta: bool, graded: bool) -> Parameters {
        let alpha = (0..n).map(|_| random_scalar(rng, false)).collect();
        let beta = (0..n).map(|_| random_scalar(rng, nonzero_beta)).collect();
        let gamma = (0..n).map(|_| if graded { Scalar::zero() } else { random_scalar(rng, false) }).collect();
        Parameters::new(alpha, beta, gamma).expect("consistent lengths")
    }
}

/// A rational `p/q` with `|p| <= 9`, `1 <= q <= 5`.
pub fn random_scalar<R: Rng>(rng: &mut R, nonzero: bool) -> Scalar {
    loop {
        let s = Scalar::new(rng.gen_range(-9..=9), rng.gen_range(1..=5));
        if !(nonzero && s.is_zero()) {
            return s;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations_are_homogeneous_paths() {
        let p = Parameters::from_ints(&[1, 2, 3], &[4, 5, 6], &[0, 0, 0]).unwrap();
        for r in p.relations() {
            let comps = r.homogeneous_components();
            assert_eq!(comps.len(), 1, "{r}");
        }
        assert_eq!(p.down_relation(0).to_string(), "-4 * u1.d1.d0 @1 + -1 * d0.u0.d0 @1 + 1 * d0.d2.u2 @1");
    }

    #[test]
    fn length_mismatch() {
        assert!(Parameters::from_ints(&[0, 0, 0], &[1, 1], &[0, 0, 0]).is_err());
        assert!(Parameters::from_ints(&[], &[], &[]).is_err());
    }
}
