//! Graded maps of the path algebra that send each arrow to a scalar multiple of
//! an arrow, covering a rotation or reflection of the cycle.

use std::collections::BTreeSet;
use std::fmt;

use crate::element::Element;
use crate::error::{input, Result};
use crate::quiver::{wrap, Arrow, Family, Path};
use crate::scalar::Scalar;

/// A symmetry of the `n`-cycle: `Rotation(k)` is `i -> i + k`, `Reflection(k)` is
/// `i -> k - i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(tag = "kind", content = "k", rename_all = "kebab-case")]
pub enum VertexMap {
    Rotation(usize),
    Reflection(usize),
}

impl VertexMap {
    pub const IDENTITY: VertexMap = VertexMap::Rotation(0);

    pub fn vertex(&self, i: usize, n: usize) -> usize {
        match *self {
            VertexMap::Rotation(k) => (i + k) % n,
            VertexMap::Reflection(k) => wrap(k as i64 - i as i64, n),
        }
    }

    /// The arrow between the image vertices: under a reflection `u_i` and `d_{k-i-1}`
    /// swap roles.
    pub fn arrow(&self, a: Arrow, n: usize) -> Arrow {
        match *self {
            VertexMap::Rotation(k) => Arrow { family: a.family, index: (a.index + k) % n },
            VertexMap::Reflection(k) => {
                let index = wrap(k as i64 - a.index as i64 - 1, n);
                match a.family {
                    Family::U => Arrow::d(index),
                    Family::D => Arrow::u(index),
                }
            }
        }
    }

    /// `other` after `self`.
    pub fn then(&self, other: &VertexMap, n: usize) -> VertexMap {
        use VertexMap::*;
        let w = |x: i64| wrap(x, n);
        match (*self, *other) {
            (Rotation(a), Rotation(b)) => Rotation(w(a as i64 + b as i64)),
            (Rotation(a), Reflection(b)) => Reflection(w(b as i64 - a as i64)),
            (Reflection(a), Rotation(b)) => Reflection(w(a as i64 + b as i64)),
            (Reflection(a), Reflection(b)) => Rotation(w(b as i64 - a as i64)),
        }
    }

    pub fn inverse(&self, n: usize) -> VertexMap {
        match *self {
            VertexMap::Rotation(k) => VertexMap::Rotation(wrap(-(k as i64), n)),
            r @ VertexMap::Reflection(_) => r,
        }
    }
}

/// `u_i -> u[i] * vertex_map(u_i)`, `d_i -> d[i] * vertex_map(d_i)`, extended multiplicatively.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ArrowMap {
    n: usize,
    pub vertex_map: VertexMap,
    pub u: Vec<Scalar>,
    pub d: Vec<Scalar>,
}

impl ArrowMap {
    pub fn new(vertex_map: VertexMap, u: Vec<Scalar>, d: Vec<Scalar>) -> Result<ArrowMap> {
        let n = u.len();
        if n == 0 || d.len() != n {
            return input("arrow scalars must have length n >= 1");
        }
        if u.iter().chain(&d).any(Scalar::is_zero) {
            return input("arrow scalars must be nonzero");
        }
        Ok(ArrowMap { n, vertex_map, u, d })
    }

    pub fn diagonal(u: Vec<Scalar>, d: Vec<Scalar>) -> Result<ArrowMap> {
        ArrowMap::new(VertexMap::IDENTITY, u, d)
    }

    pub fn identity(n: usize) -> ArrowMap {
        ArrowMap::pure(n, VertexMap::IDENTITY)
    }

    /// The relabelling induced by `vertex_map` with all scalars 1.
    pub fn pure(n: usize, vertex_map: VertexMap) -> ArrowMap {
        ArrowMap { n, vertex_map, u: vec![Scalar::one(); n], d: vec![Scalar::one(); n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn scalar(&self, a: Arrow) -> &Scalar {
        match a.family {
            Family::U => &self.u[a.index],
            Family::D => &self.d[a.index],
        }
    }

    pub fn image(&self, a: Arrow) -> (Scalar, Arrow) {
        (self.scalar(a).clone(), self.vertex_map.arrow(a, self.n))
    }

    pub fn apply_path(&self, p: &Path) -> Element {
        let n = self.n;
        if p.is_trivial() {
            return Element::vertex(n, self.vertex_map.vertex(p.source(), n));
        }
        let mut c = Scalar::one();
        let mut arrows = Vec::with_capacity(p.len());
        for a in p.arrows() {
            let (s, b) = self.image(*a);
            c = &c * &s;
            arrows.push(b);
        }
        Element::term(c, Path::word(n, &arrows))
    }

    pub fn apply(&self, a: &Element) -> Element {
        assert_eq!(a.n(), self.n, "element over a different quiver");
        let mut out = Element::zero(self.n);
        for (p, c) in a.terms() {
            out = &out + &self.apply_path(p).scale(c);
        }
        out
    }

    /// `other` after `self`.
    pub fn then(&self, other: &ArrowMap) -> ArrowMap {
        assert_eq!(self.n, other.n);
        let compose = |a: Arrow| {
            let (s, b) = self.image(a);
            &s * other.scalar(b)
        };
        ArrowMap {
            n: self.n,
            vertex_map: self.vertex_map.then(&other.vertex_map, self.n),
            u: (0..self.n).map(|i| compose(Arrow::u(i))).collect(),
            d: (0..self.n).map(|i| compose(Arrow::d(i))).collect(),
        }
    }

    pub fn inverse(&self) -> ArrowMap {
        let n = self.n;
        let vinv = self.vertex_map.inverse(n);
        let mut inv = ArrowMap::pure(n, vinv);
        for a in Arrow::all(n) {
            let (s, b) = self.image(a);
            let slot = match b.family {
                Family::U => &mut inv.u[b.index],
                Family::D => &mut inv.d[b.index],
            };
            *slot = s.inv().expect("scalars are nonzero");
        }
        inv
    }

    /// Arrow and vertex images are permutations and every arrow keeps its endpoints
    /// consistent with the vertex map.
    pub fn is_bijective(&self) -> bool {
        let n = self.n;
        let vertices: BTreeSet<usize> = (0..n).map(|i| self.vertex_map.vertex(i, n)).collect();
        let arrows: BTreeSet<Arrow> = Arrow::all(n).into_iter().map(|a| self.vertex_map.arrow(a, n)).collect();
        let endpoints_ok = Arrow::all(n).into_iter().all(|a| {
            let b = self.vertex_map.arrow(a, n);
            b.source(n) == self.vertex_map.vertex(a.source(n), n)
                && b.target(n) == self.vertex_map.vertex(a.target(n), n)
        });
        vertices.len() == n
            && arrows.len() == 2 * n
            && endpoints_ok
            && self.u.iter().chain(&self.d).all(|s| !s.is_zero())
    }
}

impl fmt::Display for ArrowMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = Arrow::all(self.n)
            .into_iter()
            .map(|a| {
                let (s, b) = self.image(a);
                format!("{a} -> {s}*{b}")
            })
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reflection_swaps_families() {
        let r = VertexMap::Reflection(0);
        assert_eq!(r.arrow(Arrow::u(0), 3), Arrow::d(2));
        assert_eq!(r.arrow(Arrow::d(1), 3), Arrow::u(1));
        assert_eq!(r.vertex(1, 3), 2);
        assert!(ArrowMap::pure(3, r).is_bijective());
        assert!(ArrowMap::pure(2, VertexMap::Reflection(1)).is_bijective());
    }

    #[test]
    fn composition_matches_application() {
        let n = 4;
        let f = ArrowMap::new(
            VertexMap::Reflection(1),
            (1..=4).map(Scalar::from_int).collect(),
            (5..=8).map(Scalar::from_int).collect(),
        )
        .unwrap();
        let g = ArrowMap::new(
            VertexMap::Rotation(3),
            (1..=4).map(|k| Scalar::new(1, k)).collect(),
            (1..=4).map(|k| Scalar::new(-2, k)).collect(),
        )
        .unwrap();
        let w = Element::word(n, &[Arrow::u(0), Arrow::u(1), Arrow::d(1), Arrow::d(0)]);
        assert_eq!(f.then(&g).apply(&w), g.apply(&f.apply(&w)));
        assert_eq!(f.then(&f.inverse()), ArrowMap::identity(n));
        assert_eq!(g.inverse().then(&g), ArrowMap::identity(n));
    }
}
