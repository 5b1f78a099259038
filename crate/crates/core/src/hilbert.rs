//! Matrix-valued Hilbert series with big-integer coefficients.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{input, Result};
use crate::params::Parameters;
use crate::quiver::adjacency_matrix;
use crate::rewrite::{build_system, Preset, ReductionSystem};

/// Square matrix of big integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(n: usize) -> IntMatrix {
        IntMatrix { n, entries: vec![BigInt::zero(); n * n] }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> IntMatrix {
        let n = rows.len();
        let mut m = IntMatrix::zero(n);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), n, "matrix must be square");
            for (j, x) in r.iter().enumerate() {
                m.entries[i * n + j] = BigInt::from(*x);
            }
        }
        m
    }

    /// Adjacency matrix of the doubled `n`-cycle.
    pub fn adjacency(n: usize) -> Result<IntMatrix> {
        Ok(IntMatrix::from_rows(&adjacency_matrix(n)?))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &BigInt) {
        self.entries[i * self.n + j] += v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|x| !x.is_negative())
    }

    pub fn total(&self) -> BigInt {
        self.entries.iter().sum()
    }

    pub fn transpose(&self) -> IntMatrix {
        let n = self.n;
        let mut m = IntMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                m.entries[j * n + i] = self.get(i, j).clone();
            }
        }
        m
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n);
        IntMatrix { n: self.n, entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, c: &BigInt) -> IntMatrix {
        IntMatrix { n: self.n, entries: self.entries.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut m = IntMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    m.entries[i * n + j] += a * other.get(k, j);
                }
            }
        }
        m
    }

    pub fn pow(&self, e: u32) -> IntMatrix {
        (0..e).fold(IntMatrix::identity(self.n), |acc, _| acc.mul(self))
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.entries.chunks(self.n.max(1)).map(<[BigInt]>::to_vec).collect()
    }
}

impl serde::Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> =
            self.rows().into_iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
        rows.serialize(s)
    }
}

/// Polynomial in `t` with matrix coefficients; zero coefficients are not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixPoly {
    n: usize,
    coeffs: BTreeMap<usize, IntMatrix>,
}

impl MatrixPoly {
    pub fn zero(n: usize) -> MatrixPoly {
        MatrixPoly { n, coeffs: BTreeMap::new() }
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (usize, IntMatrix)>) -> MatrixPoly {
        let mut p = MatrixPoly::zero(n);
        for (d, m) in terms {
            p.add_term(d, &m);
        }
        p
    }

    /// `f(t) I` for a scalar polynomial given by its coefficients.
    pub fn scalar(n: usize, coeffs: &[i64]) -> MatrixPoly {
        MatrixPoly::from_terms(
            n,
            coeffs.iter().enumerate().map(|(d, c)| (d, IntMatrix::identity(n).scale(&BigInt::from(*c)))),
        )
    }

    /// `I - M t + M t^3 - I t^4`.
    pub fn down_up_denominator(n: usize) -> Result<MatrixPoly> {
        let m = IntMatrix::adjacency(n)?;
        let id = IntMatrix::identity(n);
        Ok(MatrixPoly::from_terms(
            n,
            [(0, id.clone()), (1, m.scale(&BigInt::from(-1))), (3, m), (4, id.scale(&BigInt::from(-1)))],
        ))
    }

    /// `I - M t + I t^2`.
    pub fn preprojective_denominator(n: usize) -> Result<MatrixPoly> {
        let m = IntMatrix::adjacency(n)?;
        let id = IntMatrix::identity(n);
        Ok(MatrixPoly::from_terms(n, [(0, id.clone()), (1, m.scale(&BigInt::from(-1))), (2, id)]))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, d: usize) -> IntMatrix {
        self.coeffs.get(&d).cloned().unwrap_or_else(|| IntMatrix::zero(self.n))
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    fn add_term(&mut self, d: usize, m: &IntMatrix) {
        let sum = self.coeff(d).add(m);
        if sum.is_zero() {
            self.coeffs.remove(&d);
        } else {
            self.coeffs.insert(d, sum);
        }
    }

    pub fn add(&self, other: &MatrixPoly) -> MatrixPoly {
        let mut p = self.clone();
        for (d, m) in &other.coeffs {
            p.add_term(*d, m);
        }
        p
    }

    pub fn sub(&self, other: &MatrixPoly) -> MatrixPoly {
        let mut p = self.clone();
        for (d, m) in &other.coeffs {
            p.add_term(*d, &m.scale(&BigInt::from(-1)));
        }
        p
    }

    pub fn mul(&self, other: &MatrixPoly) -> MatrixPoly {
        let mut p = MatrixPoly::zero(self.n);
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                p.add_term(a + b, &x.mul(y));
            }
        }
        p
    }
}

/// Coefficients `H_0, ..., H_N` of a truncated series.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct MatrixSeries {
    pub order: usize,
    pub coeffs: Vec<IntMatrix>,
}

impl MatrixSeries {
    pub fn truncate(&self, order: usize) -> MatrixSeries {
        let order = order.min(self.order);
        MatrixSeries { order, coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(IntMatrix::is_nonnegative)
    }
}

/// The series `h` with `p h = I` up to `t^order`.
pub fn invert_series(p: &MatrixPoly, order: usize) -> Result<MatrixSeries> {
    let n = p.n();
    if p.coeff(0) != IntMatrix::identity(n) {
        return input("constant term must be the identity matrix");
    }
    let mut coeffs: Vec<IntMatrix> = vec![IntMatrix::identity(n)];
    for k in 1..=order {
        let mut h = IntMatrix::zero(n);
        for (j, pj) in &p.coeffs {
            if *j >= 1 && *j <= k {
                h = h.sub(&pj.mul(&coeffs[k - j]));
            }
        }
        coeffs.push(h);
    }
    Ok(MatrixSeries { order, coeffs })
}

/// Entry sums per degree.
pub fn total_series(ms: &MatrixSeries) -> Vec<BigInt> {
    ms.coeffs.iter().map(IntMatrix::total).collect()
}

/// `(1 - t^4) I - (t - t^3) M == (1 - t^2)(I - M t + I t^2)`, coefficient by coefficient.
pub fn factorization_identity(n: usize) -> Result<bool> {
    let m = IntMatrix::adjacency(n)?;
    let lhs = MatrixPoly::scalar(n, &[1, 0, 0, 0, -1])
        .sub(&MatrixPoly::from_terms(n, [(1, m.clone()), (3, m.scale(&BigInt::from(-1)))]));
    let rhs = MatrixPoly::scalar(n, &[1, 0, -1]).mul(&MatrixPoly::preprojective_denominator(n)?);
    Ok(lhs == rhs)
}

/// First disagreement between enumeration and a series.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Mismatch {
    pub degree: usize,
    pub row: usize,
    pub col: usize,
    pub enumerated: String,
    pub series: String,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct PresetComparison {
    pub preset: String,
    pub enumerated: Vec<IntMatrix>,
    pub totals: Vec<String>,
    pub series_nonnegative: bool,
    pub mismatch: Option<Mismatch>,
}

impl PresetComparison {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none() && self.series_nonnegative
    }
}

/// How the enumerated preprojective totals compare with candidate closed forms.
#[derive(Clone, Debug, serde::Serialize)]
pub struct TotalsNote {
    pub enumerated: Vec<String>,
    /// `n (1-t)^{-2}`.
    pub matches_inverse_square: bool,
    /// `n (1-t)^2`.
    pub matches_square: bool,
    /// `n (1-t^2)^{-1}`.
    pub matches_inverse_even: bool,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct ClosedFormReport {
    pub n: usize,
    pub max_degree: usize,
    pub down_up: PresetComparison,
    pub preprojective: PresetComparison,
    pub preprojective_totals: TotalsNote,
}

impl ClosedFormReport {
    pub fn passed(&self) -> bool {
        self.down_up.passed() && self.preprojective.passed()
    }
}

/// Enumerated dimension matrices (ground truth) against a series (claim under test).
pub fn compare_with_series(sys: &ReductionSystem, series: &MatrixSeries, label: &str) -> PresetComparison {
    let enumerated = sys.dimension_matrices(series.order);
    let mut mismatch = None;
    'outer: for (k, (e, h)) in enumerated.iter().zip(&series.coeffs).enumerate() {
        for i in 0..e.n() {
            for j in 0..e.n() {
                if e.get(i, j) != h.get(i, j) {
                    mismatch = Some(Mismatch {
                        degree: k,
                        row: i,
                        col: j,
                        enumerated: e.get(i, j).to_string(),
                        series: h.get(i, j).to_string(),
                    });
                    break 'outer;
                }
            }
        }
    }
    PresetComparison {
        preset: label.to_string(),
        totals: enumerated.iter().map(|m| m.total().to_string()).collect(),
        enumerated,
        series_nonnegative: series.is_nonnegative(),
        mismatch,
    }
}

/// Checks both closed forms against enumeration through degree `max_degree`.
pub fn closed_form_check(params: &Parameters, max_degree: usize) -> Result<ClosedFormReport> {
    let n = params.n();
    let qdu = build_system(Preset::QuiverDownUp { params: params.clone() })?;
    let down_up =
        compare_with_series(&qdu, &invert_series(&MatrixPoly::down_up_denominator(n)?, max_degree)?, "quiver-down-up");
    let pre = build_system(Preset::Preprojective { n })?;
    let preprojective = compare_with_series(
        &pre,
        &invert_series(&MatrixPoly::preprojective_denominator(n)?, max_degree)?,
        "preprojective",
    );
    let totals: Vec<i64> =
        pre.dimension_matrices(max_degree).iter().map(|m| i64::try_from(m.total()).expect("small totals")).collect();
    let nn = n as i64;
    let square = [nn, -2 * nn, nn];
    let preprojective_totals = TotalsNote {
        enumerated: totals.iter().map(ToString::to_string).collect(),
        matches_inverse_square: totals.iter().enumerate().all(|(k, t)| *t == nn * (k as i64 + 1)),
        matches_square: totals.iter().enumerate().all(|(k, t)| *t == square.get(k).copied().unwrap_or(0)),
        matches_inverse_even: totals.iter().enumerate().all(|(k, t)| *t == if k % 2 == 0 { nn } else { 0 }),
    };
    Ok(ClosedFormReport { n, max_degree, down_up, preprojective, preprojective_totals })
}

/// `n * floor((k+2)^2 / 4)`.
pub fn down_up_total(n: usize, k: usize) -> BigInt {
    BigInt::from(n) * BigInt::from((k + 2) * (k + 2) / 4)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_coefficients_n3() {
        let m = IntMatrix::adjacency(3).unwrap();
        let id = IntMatrix::identity(3);
        let h = invert_series(&MatrixPoly::down_up_denominator(3).unwrap(), 6).unwrap();
        assert_eq!(h.coeffs[1], m);
        assert_eq!(h.coeffs[2], m.pow(2));
        assert_eq!(h.coeffs[3], m.pow(3).sub(&m));
        assert_eq!(h.coeffs[4], m.pow(4).sub(&m.pow(2).scale(&BigInt::from(2))).add(&id));
        let pre = invert_series(&MatrixPoly::preprojective_denominator(3).unwrap(), 3).unwrap();
        assert_eq!(pre.coeffs[2], m.pow(2).sub(&id));
    }

    #[test]
    fn identity_inverse_is_trivial() {
        let h = invert_series(&MatrixPoly::scalar(2, &[1]), 4).unwrap();
        assert_eq!(h.coeffs[0], IntMatrix::identity(2));
        assert!(h.coeffs[1..].iter().all(IntMatrix::is_zero));
        assert!(invert_series(&MatrixPoly::scalar(2, &[2]), 4).is_err());
    }

    #[test]
    fn totals() {
        let h = invert_series(&MatrixPoly::down_up_denominator(1).unwrap(), 8).unwrap();
        let t: Vec<BigInt> = total_series(&h);
        let expect: Vec<BigInt> = [1, 2, 4, 6, 9, 12, 16, 20, 25].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(t, expect);
        let h3 = invert_series(&MatrixPoly::down_up_denominator(3).unwrap(), 5).unwrap();
        let expect3: Vec<BigInt> = [3, 6, 12, 18, 27, 36].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(total_series(&h3), expect3);
        let p2 = invert_series(&MatrixPoly::preprojective_denominator(2).unwrap(), 3).unwrap();
        let expect_p: Vec<BigInt> = [2, 4, 6, 8].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(total_series(&p2), expect_p);
        let zero = MatrixSeries { order: 2, coeffs: vec![IntMatrix::zero(2); 3] };
        assert!(total_series(&zero).iter().all(Zero::is_zero));
    }

    #[test]
    fn factorization() {
        for n in [1, 3, 5] {
            assert!(factorization_identity(n).unwrap());
        }
    }

    #[test]
    fn closed_forms_agree_with_enumeration() {
        let p = Parameters::from_ints(&[1, -2, 0], &[3, 1, -1], &[0, 2, 0]).unwrap();
        let r = closed_form_check(&p, 8).unwrap();
        assert!(r.passed(), "{:?} {:?}", r.down_up.mismatch, r.preprojective.mismatch);
        assert!(r.preprojective_totals.matches_inverse_square);
        assert!(!r.preprojective_totals.matches_square);
        assert!(!r.preprojective_totals.matches_inverse_even);
    }
}
