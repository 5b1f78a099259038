//! The cyclotomic field `Q[z]/Phi_n(z)` with exact rational coefficients.

use std::fmt;
use std::sync::Arc;

use crate::error::{input, Result};
use crate::linalg::Field;
use crate::scalar::Scalar;

/// Largest supported order.
pub const MAX_ORDER: usize = 12;

/// Dense rational polynomial, lowest degree first, no trailing zeros.
type Poly = Vec<Scalar>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Scalar::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[Scalar], b: &[Scalar]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Scalar::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += &(x * y);
        }
    }
    trim(out)
}

fn poly_sub(a: &[Scalar], b: &[Scalar]) -> Poly {
    let mut out = vec![Scalar::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

/// Quotient and remainder; `b` must be nonzero.
fn poly_divrem(a: &[Scalar], b: &[Scalar]) -> (Poly, Poly) {
    let b = trim(b.to_vec());
    let lead = b.last().expect("division by zero polynomial").clone();
    let mut rem = trim(a.to_vec());
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Scalar::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().expect("nonempty") / &lead;
        for (i, y) in b.iter().enumerate() {
            rem[shift + i] -= &(&c * y);
        }
        quot[shift] = c;
        rem = trim(rem);
    }
    (trim(quot), rem)
}

/// `Phi_n`, from `x^n - 1 = prod_{d | n} Phi_d`.
pub fn cyclotomic_polynomial(n: usize) -> Result<Vec<Scalar>> {
    if n == 0 {
        return input("cyclotomic order must be positive");
    }
    let mut p = vec![Scalar::zero(); n + 1];
    p[0] = -Scalar::one();
    p[n] = Scalar::one();
    for d in (1..n).filter(|d| n % d == 0) {
        let (q, r) = poly_divrem(&p, &cyclotomic_polynomial(d)?);
        debug_assert!(r.is_empty());
        p = q;
    }
    Ok(p)
}

#[derive(Debug, PartialEq, Eq)]
pub struct CycField {
    n: usize,
    modulus: Poly,
}

impl CycField {
    pub fn new(n: usize) -> Result<Arc<CycField>> {
        if n == 0 || n > MAX_ORDER {
            return input(format!("cyclotomic order must be in 1..={MAX_ORDER}"));
        }
        Ok(Arc::new(CycField { n, modulus: cyclotomic_polynomial(n)? }))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// `phi(n)`, the dimension over the rationals.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }
}

/// An element of `Q[z]/Phi_n`, stored as its reduced representative.
#[derive(Clone)]
pub struct CycScalar {
    field: Arc<CycField>,
    coeffs: Poly,
}

impl CycScalar {
    fn reduce(field: &Arc<CycField>, p: Poly) -> CycScalar {
        let (_, r) = poly_divrem(&p, &field.modulus);
        CycScalar { field: field.clone(), coeffs: r }
    }

    pub fn from_scalar(field: &Arc<CycField>, c: Scalar) -> CycScalar {
        CycScalar::reduce(field, trim(vec![c]))
    }

    pub fn zero(field: &Arc<CycField>) -> CycScalar {
        CycScalar { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Arc<CycField>) -> CycScalar {
        CycScalar::from_scalar(field, Scalar::one())
    }

    /// `z^k` for any integer `k`, `z` a primitive `n`-th root of unity.
    pub fn zeta_pow(field: &Arc<CycField>, k: i64) -> CycScalar {
        let e = k.rem_euclid(field.n as i64) as usize;
        let mut p = vec![Scalar::zero(); e + 1];
        p[e] = Scalar::one();
        CycScalar::reduce(field, p)
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn scale(&self, c: &Scalar) -> CycScalar {
        CycScalar { field: self.field.clone(), coeffs: trim(self.coeffs.iter().map(|x| x * c).collect()) }
    }

    /// Inverse via the extended Euclidean algorithm against `Phi_n`.
    pub fn try_inv(&self) -> Option<CycScalar> {
        if self.coeffs.is_empty() {
            return None;
        }
        // invariant: r_k = s_k * self (mod Phi_n)
        let (mut r0, mut r1) = (self.field.modulus.clone(), self.coeffs.clone());
        let (mut s0, mut s1): (Poly, Poly) = (Vec::new(), vec![Scalar::one()]);
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r0 is a nonzero constant because Phi_n is irreducible.
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].inv().ok()?;
        Some(CycScalar::reduce(&self.field, s0).scale(&c))
    }
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        self.field.n == other.field.n && self.coeffs == other.coeffs
    }
}

impl Eq for CycScalar {}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => c.to_string(),
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{k}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl serde::Serialize for CycScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Field for CycScalar {
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = vec![Scalar::zero(); self.coeffs.len().max(other.coeffs.len())];
        for (i, x) in self.coeffs.iter().enumerate() {
            out[i] += x;
        }
        for (i, y) in other.coeffs.iter().enumerate() {
            out[i] += y;
        }
        CycScalar { field: self.field.clone(), coeffs: trim(out) }
    }
    fn sub(&self, other: &Self) -> Self {
        CycScalar { field: self.field.clone(), coeffs: poly_sub(&self.coeffs, &other.coeffs) }
    }
    fn mul(&self, other: &Self) -> Self {
        CycScalar::reduce(&self.field, poly_mul(&self.coeffs, &other.coeffs))
    }
    fn neg(&self) -> Self {
        self.scale(&-Scalar::one())
    }
    fn inv(&self) -> Self {
        self.try_inv().expect("inverse of zero")
    }
    fn zero_like(&self) -> Self {
        CycScalar::zero(&self.field)
    }
    fn one_like(&self) -> Self {
        CycScalar::one(&self.field)
    }
}
