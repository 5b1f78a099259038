//! The doubled cyclic quiver on `n` vertices and its paths.
//!
//! Vertices are residues `0..n`. For each vertex `i` there is an up arrow
//! `u_i: i -> i+1` and a down arrow `d_i: i+1 -> i` (indices mod `n`). For
//! `n = 1` both arrows are loops; for `n = 2` the arrows `u_0, d_1` are parallel.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{input, Result};

/// Reduces a possibly negative index modulo `n`.
pub fn wrap(i: i64, n: usize) -> usize {
    i.rem_euclid(n as i64) as usize
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum Family {
    U,
    D,
}

/// An arrow `u_index` or `d_index`. The derived order puts every `U` below every `D`
/// and orders by index within a family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrow {
    pub family: Family,
    pub index: usize,
}

impl Arrow {
    pub fn u(index: usize) -> Arrow {
        Arrow { family: Family::U, index }
    }

    pub fn d(index: usize) -> Arrow {
        Arrow { family: Family::D, index }
    }

    pub fn source(&self, n: usize) -> usize {
        match self.family {
            Family::U => self.index % n,
            Family::D => (self.index + 1) % n,
        }
    }

    pub fn target(&self, n: usize) -> usize {
        match self.family {
            Family::U => (self.index + 1) % n,
            Family::D => self.index % n,
        }
    }

    /// All `2n` arrows, `u_0..u_{n-1}` then `d_0..d_{n-1}`.
    pub fn all(n: usize) -> Vec<Arrow> {
        (0..n).map(Arrow::u).chain((0..n).map(Arrow::d)).collect()
    }
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::U => write!(f, "u{}", self.index),
            Family::D => write!(f, "d{}", self.index),
        }
    }
}

/// A path, stored as its source vertex and arrow sequence. The empty sequence is
/// the trivial path `e_source`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Path {
    n: usize,
    source: usize,
    arrows: Vec<Arrow>,
}

impl Path {
    pub fn trivial(n: usize, vertex: usize) -> Path {
        assert!(n >= 1);
        Path { n, source: vertex % n, arrows: Vec::new() }
    }

    /// Builds a path from arrows, checking indices and composability.
    pub fn new(n: usize, arrows: Vec<Arrow>) -> Result<Path> {
        if n == 0 {
            return input("quiver must have at least one vertex");
        }
        let Some(first) = arrows.first() else {
            return input("use Path::trivial for the empty path");
        };
        for a in &arrows {
            if a.index >= n {
                return input(format!("arrow {a} out of range for n = {n}"));
            }
        }
        for w in arrows.windows(2) {
            if w[0].target(n) != w[1].source(n) {
                return input(format!("arrows {} and {} do not compose", w[0], w[1]));
            }
        }
        Ok(Path { n, source: first.source(n), arrows })
    }

    /// Unchecked construction for internal callers that already know the
    /// arrows compose.
    pub(crate) fn from_parts(n: usize, source: usize, arrows: Vec<Arrow>) -> Path {
        debug_assert!(arrows.first().map_or(true, |a| a.source(n) == source));
        Path { n, source, arrows }
    }

    /// Convenience for tests and examples; panics on invalid input.
    pub fn word(n: usize, arrows: &[Arrow]) -> Path {
        Path::new(n, arrows.to_vec()).expect("invalid path")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.arrows.last().map_or(self.source, |a| a.target(self.n))
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    /// `#u - #d`, the degree for the grading `deg u = 1`, `deg d = -1`.
    pub fn weight(&self) -> i64 {
        self.arrows.iter().map(|a| if a.family == Family::U { 1 } else { -1 }).sum()
    }

    /// Concatenation when `target(self) == source(other)`.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        assert_eq!(self.n, other.n, "paths over different quivers");
        if self.target() != other.source {
            return None;
        }
        let mut arrows = Vec::with_capacity(self.len() + other.len());
        arrows.extend_from_slice(&self.arrows);
        arrows.extend_from_slice(&other.arrows);
        Some(Path { n: self.n, source: self.source, arrows })
    }

    /// The factor `arrows[start..end]` as a path (trivial at the right vertex if empty).
    pub fn slice(&self, start: usize, end: usize) -> Path {
        let source = if start < self.len() {
            self.arrows[start].source(self.n)
        } else if start == 0 {
            self.source
        } else {
            self.arrows[start - 1].target(self.n)
        };
        Path { n: self.n, source, arrows: self.arrows[start..end].to_vec() }
    }
}

/// Deterministic order used for term maps: length, source, then arrows
/// lexicographically (`D` above `U`, higher index above lower).
impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then(self.arrows.len().cmp(&other.arrows.len()))
            .then(self.source.cmp(&other.source))
            .then_with(|| self.arrows.cmp(&other.arrows))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arrows.is_empty() {
            return write!(f, "e{}", self.source);
        }
        for (k, a) in self.arrows.iter().enumerate() {
            if k > 0 {
                f.write_str(".")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// `M[i][j]` = number of arrows `i -> j`.
pub fn adjacency_matrix(n: usize) -> Result<Vec<Vec<i64>>> {
    if n == 0 {
        return input("adjacency matrix needs n >= 1");
    }
    let mut m = vec![vec![0i64; n]; n];
    for a in Arrow::all(n) {
        m[a.source(n)][a.target(n)] += 1;
    }
    Ok(m)
}
