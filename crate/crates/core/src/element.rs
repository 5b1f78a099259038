//! Finite linear combinations of paths: elements of the free path algebra.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{input, Error, Result};
use crate::quiver::{Arrow, Family, Path};
use crate::scalar::Scalar;

/// A scalar-weighted sum of paths. Zero coefficients are never stored, so
/// structural equality is algebraic equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Element {
    n: usize,
    terms: BTreeMap<Path, Scalar>,
}

/// `compose(p, q)`: the concatenation if it exists, otherwise zero.
pub fn compose(p: &Path, q: &Path) -> Result<Element> {
    if p.n() != q.n() {
        return input(format!("paths over n = {} and n = {}", p.n(), q.n()));
    }
    Ok(match p.concat(q) {
        Some(pq) => Element::from_path(pq),
        None => Element::zero(p.n()),
    })
}

impl Element {
    pub fn zero(n: usize) -> Element {
        Element { n, terms: BTreeMap::new() }
    }

    pub fn from_path(p: Path) -> Element {
        Element::term(Scalar::one(), p)
    }

    pub fn term(c: Scalar, p: Path) -> Element {
        let mut e = Element::zero(p.n());
        e.add_term(p, c);
        e
    }

    pub fn vertex(n: usize, v: usize) -> Element {
        Element::from_path(Path::trivial(n, v))
    }

    /// The identity `e_0 + ... + e_{n-1}`.
    pub fn one(n: usize) -> Element {
        let mut e = Element::zero(n);
        for v in 0..n {
            e.add_term(Path::trivial(n, v), Scalar::one());
        }
        e
    }

    /// Product of single arrows; panics if they do not compose.
    pub fn word(n: usize, arrows: &[Arrow]) -> Element {
        Element::from_path(Path::word(n, arrows))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, p: &Path) -> Scalar {
        self.terms.get(p).cloned().unwrap_or_default()
    }

    pub fn support(&self) -> impl Iterator<Item = &Path> {
        self.terms.keys()
    }

    pub fn into_terms(self) -> BTreeMap<Path, Scalar> {
        self.terms
    }

    pub fn add_term(&mut self, p: Path, c: Scalar) {
        assert_eq!(p.n(), self.n, "path over a different quiver");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(p) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element::zero(self.n);
        }
        Element { n: self.n, terms: self.terms.iter().map(|(p, v)| (p.clone(), v * c)).collect() }
    }

    pub fn checked_add(&self, other: &Element) -> Result<Element> {
        self.same_n(other)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        Ok(out)
    }

    /// Bilinear extension of [`compose`].
    pub fn checked_mul(&self, other: &Element) -> Result<Element> {
        self.same_n(other)?;
        let mut out = Element::zero(self.n);
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                if let Some(pq) = p.concat(q) {
                    out.add_term(pq, a * b);
                }
            }
        }
        Ok(out)
    }

    fn same_n(&self, other: &Element) -> Result<()> {
        if self.n != other.n {
            return input(format!("elements over n = {} and n = {}", self.n, other.n));
        }
        Ok(())
    }

    pub fn pow(&self, e: usize) -> Element {
        let mut acc = Element::one(self.n);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Maximum path length in the support (`None` for zero).
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Path::len).max()
    }

    /// The part of `self` spanned by paths of the given length, source and target.
    pub fn component(&self, len: usize, source: usize, target: usize) -> Element {
        Element {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(p, _)| p.len() == len && p.source() == source && p.target() == target)
                .map(|(p, c)| (p.clone(), c.clone()))
                .collect(),
        }
    }

    /// Decomposition into nonzero homogeneous components keyed by `(length, source, target)`.
    pub fn homogeneous_components(&self) -> BTreeMap<(usize, usize, usize), Element> {
        let mut out: BTreeMap<(usize, usize, usize), Element> = BTreeMap::new();
        for (p, c) in &self.terms {
            out.entry((p.len(), p.source(), p.target()))
                .or_insert_with(|| Element::zero(self.n))
                .add_term(p.clone(), c.clone());
        }
        out
    }

    /// `e_i * self * e_j`.
    pub fn sandwich(&self, i: usize, j: usize) -> Element {
        Element {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(p, _)| p.source() == i && p.target() == j)
                .map(|(p, c)| (p.clone(), c.clone()))
                .collect(),
        }
    }

    /// Parses the text format produced by `Display`, e.g.
    /// `2 * u0.d0 @0 + -1/3 * d2 @0 + 1 @1`.
    pub fn parse(text: &str, n: usize) -> Result<Element> {
        if n == 0 {
            return input("n must be positive");
        }
        let mut out = Element::zero(n);
        let t = text.trim();
        if t == "0" || t.is_empty() {
            return Ok(out);
        }
        for (sign, body) in split_terms(t)? {
            let (coeff, path) = parse_term(body, n)?;
            let c = if sign { -coeff } else { coeff };
            out.add_term(path, c);
        }
        Ok(out)
    }
}

/// Splits at top-level `+`/`-` separators (those preceded by whitespace), returning
/// `(negated, term text)`.
fn split_terms(t: &str) -> Result<Vec<(bool, &str)>> {
    let bytes = t.as_bytes();
    let mut out = Vec::new();
    let mut start = 0;
    let mut negate = false;
    let mut k = 0;
    while k < bytes.len() {
        let b = bytes[k];
        if (b == b'+' || b == b'-') && k > 0 && bytes[k - 1] == b' ' && k + 1 < bytes.len() && bytes[k + 1] == b' ' {
            let body = t[start..k].trim();
            if body.is_empty() {
                return input(format!("empty term in `{t}`"));
            }
            out.push((negate, body));
            negate = b == b'-';
            start = k + 1;
        }
        k += 1;
    }
    let body = t[start..].trim();
    if body.is_empty() {
        return input(format!("empty term in `{t}`"));
    }
    out.push((negate, body));
    Ok(out)
}

fn parse_term(body: &str, n: usize) -> Result<(Scalar, Path)> {
    let (main, vertex) = match body.rsplit_once('@') {
        Some((m, v)) => {
            let v: usize = v.trim().parse().map_err(|_| Error::Input(format!("bad vertex in term `{body}`")))?;
            if v >= n {
                return input(format!("vertex {v} out of range in `{body}`"));
            }
            (m.trim(), Some(v))
        }
        None => (body, None),
    };
    let (coeff, word) = match main.split_once('*') {
        Some((c, w)) => (c.trim().parse::<Scalar>()?, Some(w.trim())),
        None => {
            // Either a bare coefficient (trivial path) or a bare word.
            if main.starts_with(['u', 'd', 'e']) {
                (Scalar::one(), Some(main))
            } else if main.starts_with('-') && main[1..].trim_start().starts_with(['u', 'd', 'e']) {
                (-Scalar::one(), Some(main[1..].trim()))
            } else {
                (main.parse::<Scalar>()?, None)
            }
        }
    };
    let path = match word {
        None => {
            let Some(v) = vertex else {
                return input(format!("trivial path needs `@v` in `{body}`"));
            };
            Path::trivial(n, v)
        }
        Some(w) if w.starts_with('e') => {
            let v: usize = w[1..].parse().map_err(|_| Error::Input(format!("bad idempotent `{w}`")))?;
            if v >= n || vertex.is_some_and(|x| x != v) {
                return input(format!("inconsistent idempotent in `{body}`"));
            }
            Path::trivial(n, v)
        }
        Some(w) => {
            let arrows = w.split('.').map(|a| parse_arrow(a.trim())).collect::<Result<Vec<_>>>()?;
            let p = Path::new(n, arrows)?;
            if vertex.is_some_and(|v| v != p.source()) {
                return input(format!("source annotation does not match word in `{body}`"));
            }
            p
        }
    };
    Ok((coeff, path))
}

fn parse_arrow(a: &str) -> Result<Arrow> {
    let (family, idx) = match a.as_bytes().first() {
        Some(b'u') => (Family::U, &a[1..]),
        Some(b'd') => (Family::D, &a[1..]),
        _ => return input(format!("bad arrow `{a}`")),
    };
    let index = idx.parse().map_err(|_| Error::Input(format!("bad arrow `{a}`")))?;
    Ok(Arrow { family, index })
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (p, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if p.is_trivial() {
                write!(f, "{c} @{}", p.source())?;
            } else {
                write!(f, "{c} * {p} @{}", p.source())?;
            }
        }
        Ok(())
    }
}

impl serde::Serialize for Element {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        self.checked_add(rhs).expect("element addition")
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self.checked_add(&-rhs).expect("element subtraction")
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&-Scalar::one())
    }
}

/// Panics when the operands live over different quivers; use
/// [`Element::checked_mul`] to get an error instead.
impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        self.checked_mul(rhs).expect("element multiplication")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Arrow as A;

    #[test]
    fn compose_examples() {
        let n = 3;
        let e0 = Path::trivial(n, 0);
        let u0 = Path::word(n, &[A::u(0)]);
        assert_eq!(compose(&e0, &u0).unwrap(), Element::from_path(u0.clone()));
        assert!(compose(&u0, &e0).unwrap().is_zero());
        let dd = compose(&Path::word(n, &[A::d(0)]), &Path::word(n, &[A::d(2)])).unwrap();
        let (p, _) = dd.terms().next().unwrap();
        assert_eq!((p.source(), p.target(), p.len()), (1, 2, 2));
        assert!(compose(&e0, &Path::trivial(4, 0)).is_err());
    }

    #[test]
    fn multiply_examples() {
        let n = 3;
        let a = &Element::word(n, &[A::u(0)]) + &Element::word(n, &[A::d(2)]);
        assert_eq!(&a * &Element::vertex(n, 1), Element::word(n, &[A::u(0)]));
        assert_eq!(&Element::one(n) * &a, a);
        let lhs = &Element::word(n, &[A::u(0)]).scale(&Scalar::from_int(2))
            * &Element::word(n, &[A::u(1)]).scale(&Scalar::from_int(3));
        assert_eq!(lhs, Element::word(n, &[A::u(0), A::u(1)]).scale(&Scalar::from_int(6)));
        assert!(Element::one(3).checked_mul(&Element::one(2)).is_err());
    }

    #[test]
    fn text_format() {
        let n = 3;
        let e = Element::parse("2 * u0.d0 @0 + -1/3 * d2 + 1 @1 - u1", n).unwrap();
        assert_eq!(e.num_terms(), 4);
        assert_eq!(e.coeff(&Path::word(n, &[A::u(1)])), -Scalar::one());
        let printed = e.to_string();
        assert_eq!(Element::parse(&printed, n).unwrap(), e);
        assert_eq!(Element::parse(&printed, n).unwrap().to_string(), printed);
        assert_eq!(Element::parse("0", n).unwrap(), Element::zero(n));
        assert!(Element::parse("1 * u0.u2 @0", n).is_err());
        assert!(Element::parse("1 * u0 @1", n).is_err());
        assert!(Element::parse("3", n).is_err());
        assert!(Element::parse("1/0 * u0", n).is_err());
        assert_eq!(Element::parse("1 @2", n).unwrap(), Element::vertex(n, 2));
    }
}
