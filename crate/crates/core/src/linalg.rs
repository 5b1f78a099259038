//! Exact sparse linear algebra over a field: incremental echelon bases with
//! optional tracking of how each pivot row was built from the inputs.

use std::collections::BTreeMap;
use std::fmt::Debug;

use crate::element::Element;
use crate::quiver::Path;
use crate::scalar::Scalar;

pub trait Field: Clone + PartialEq + Debug {
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; only called on nonzero values.
    fn inv(&self) -> Self;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
}

impl Field for Scalar {
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        Scalar::inv(self).expect("inverse of zero")
    }
    fn zero_like(&self) -> Self {
        Scalar::zero()
    }
    fn one_like(&self) -> Self {
        Scalar::one()
    }
}

pub type SparseVec<K, F> = BTreeMap<K, F>;

/// `v -= c * w`, dropping entries that cancel.
fn axpy<K: Ord + Clone, F: Field>(v: &mut SparseVec<K, F>, c: &F, w: &SparseVec<K, F>) {
    for (k, x) in w {
        let delta = c.mul(x);
        match v.get_mut(k) {
            Some(y) => {
                *y = y.sub(&delta);
                if y.is_zero() {
                    v.remove(k);
                }
            }
            None => {
                v.insert(k.clone(), delta.neg());
            }
        }
    }
}

#[derive(Clone, Debug)]
struct Row<K, F> {
    vec: SparseVec<K, F>,
    /// Coefficients expressing `vec` in terms of the inserted generators.
    combo: SparseVec<usize, F>,
}

/// Rows are kept reduced against each other's pivots (pivot = largest key), so
/// reduction of a new vector is a single pass in decreasing key order.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone, F: Field> {
    rows: BTreeMap<K, Row<K, F>>,
    inserted: usize,
}

impl<K: Ord + Clone, F: Field> Default for Echelon<K, F> {
    fn default() -> Self {
        Echelon { rows: BTreeMap::new(), inserted: 0 }
    }
}

impl<K: Ord + Clone, F: Field> Echelon<K, F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis, returning the remainder and the combination of
    /// generators that was subtracted.
    fn reduce_tracked(&self, mut v: SparseVec<K, F>) -> (SparseVec<K, F>, SparseVec<usize, F>) {
        let mut used: SparseVec<usize, F> = BTreeMap::new();
        let mut bound: Option<K> = None;
        loop {
            let next = match &bound {
                None => v.keys().next_back().cloned(),
                Some(b) => v.range(..b.clone()).next_back().map(|(k, _)| k.clone()),
            };
            let Some(k) = next else { break };
            if let Some(row) = self.rows.get(&k) {
                let c = v[&k].mul(&row.vec[&k].inv());
                axpy(&mut v, &c, &row.vec);
                for (g, x) in &row.combo {
                    let add = c.mul(x);
                    let e = used.entry(*g).or_insert_with(|| add.zero_like());
                    *e = e.add(&add);
                }
                used.retain(|_, x| !x.is_zero());
            }
            bound = Some(k);
        }
        (v, used)
    }

    pub fn reduce(&self, v: &SparseVec<K, F>) -> SparseVec<K, F> {
        self.reduce_tracked(v.clone()).0
    }

    pub fn contains(&self, v: &SparseVec<K, F>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Expresses `v` as a combination of the inserted generators, if possible.
    pub fn express(&self, v: &SparseVec<K, F>) -> Option<SparseVec<usize, F>> {
        let (rem, used) = self.reduce_tracked(v.clone());
        rem.is_empty().then_some(used)
    }

    /// Inserts generator number `self.inserted`; returns whether it increased the rank.
    pub fn insert(&mut self, v: SparseVec<K, F>) -> bool {
        let id = self.inserted;
        self.inserted += 1;
        let (rem, used) = self.reduce_tracked(v);
        let Some((pivot, lead)) = rem.iter().next_back().map(|(k, x)| (k.clone(), x.clone())) else {
            return false;
        };
        // combo(rem) = generator id - used
        let mut combo: SparseVec<usize, F> = used.into_iter().map(|(g, x)| (g, x.neg())).collect();
        combo.insert(id, lead.one_like());
        // Clear the new pivot from existing rows to keep the basis fully reduced.
        let new_row = Row { vec: rem, combo };
        for row in self.rows.values_mut() {
            if let Some(x) = row.vec.get(&pivot).cloned() {
                let c = x.mul(&lead.inv());
                axpy(&mut row.vec, &c, &new_row.vec);
                for (g, y) in &new_row.combo {
                    let delta = c.mul(y);
                    match row.combo.get_mut(g) {
                        Some(z) => *z = z.sub(&delta),
                        None => {
                            row.combo.insert(*g, delta.neg());
                        }
                    }
                }
                row.combo.retain(|_, x| !x.is_zero());
            }
        }
        self.rows.insert(pivot, new_row);
        true
    }
}

pub fn element_vec(e: &Element) -> SparseVec<Path, Scalar> {
    e.terms().map(|(p, c)| (p.clone(), c.clone())).collect()
}

/// Rank of a family of elements viewed as vectors in the free path algebra.
pub fn rank_of(elements: &[Element]) -> usize {
    let mut ech = Echelon::new();
    for e in elements {
        ech.insert(element_vec(e));
    }
    ech.rank()
}

/// Whether two families of elements span the same subspace.
pub fn same_span(a: &[Element], b: &[Element]) -> bool {
    let ra = rank_of(a);
    let rb = rank_of(b);
    let both: Vec<Element> = a.iter().chain(b.iter()).cloned().collect();
    ra == rb && rank_of(&both) == ra
}
