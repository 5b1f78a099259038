//! The scaling, rotation and reflection isomorphisms between quiver down-up algebras,
//! and the graded isomorphism decision for `n >= 3`.

use std::collections::{BTreeMap, VecDeque};

use rand::Rng;

use crate::error::{input, Error, Result};
use crate::maps::{ArrowMap, VertexMap};
use crate::params::{random_scalar, Parameters};
use crate::quiver::wrap;
use crate::rewrite::{build_system, Preset};
use crate::scalar::Scalar;

/// One of the three basic isomorphisms `H(p) -> H(transform(p))`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "op", content = "lambda", rename_all = "kebab-case")]
pub enum Constructor {
    /// `u_i -> lambda_i u_i`, `d_i -> d_i`.
    Scale(Vec<Scalar>),
    /// `u_i -> u_{i+1}`, `d_i -> d_{i+1}`.
    Rotate,
    /// `u_i -> d_{n-i-1}`, `d_i -> u_{n-i-1}`.
    Reflect,
}

impl Constructor {
    /// The arrow map of this constructor on the `n`-cycle.
    pub fn map(&self, n: usize) -> Result<ArrowMap> {
        match self {
            Constructor::Scale(lambda) => {
                if lambda.len() != n {
                    return input("lambda must have length n");
                }
                ArrowMap::diagonal(lambda.clone(), vec![Scalar::one(); n])
            }
            Constructor::Rotate => Ok(ArrowMap::pure(n, VertexMap::Rotation(1 % n))),
            Constructor::Reflect => Ok(ArrowMap::pure(n, VertexMap::Reflection(0))),
        }
    }
}

/// The parameters of the target of `op` applied to `H(p)`.
pub fn transform_params(op: &Constructor, p: &Parameters) -> Result<Parameters> {
    let n = p.n();
    let at = |v: &[Scalar], i: i64| v[wrap(i, n)].clone();
    match op {
        Constructor::Scale(lambda) => {
            if lambda.len() != n {
                return input("lambda must have length n");
            }
            if lambda.iter().any(Scalar::is_zero) {
                return input("lambda entries must be nonzero");
            }
            let inv = |i: i64| at(lambda, i).inv().expect("nonzero");
            let mut alpha = Vec::with_capacity(n);
            let mut beta = Vec::with_capacity(n);
            let mut gamma = Vec::with_capacity(n);
            for i in 0..n as i64 {
                let k = i as usize;
                alpha.push(&(&at(lambda, i) * &inv(i - 1)) * &p.alpha[k]);
                beta.push(&(&at(lambda, i + 1) * &inv(i - 1)) * &p.beta[k]);
                gamma.push(&inv(i - 1) * &p.gamma[k]);
            }
            Parameters::new(alpha, beta, gamma)
        }
        Constructor::Rotate => {
            let shift = |v: &[Scalar]| (0..n as i64).map(|i| at(v, i - 1)).collect();
            Parameters::new(shift(&p.alpha), shift(&p.beta), shift(&p.gamma))
        }
        Constructor::Reflect => {
            if let Some(i) = p.first_zero_beta() {
                return input(format!("reflection needs beta_{i} != 0"));
            }
            let mut alpha = Vec::with_capacity(n);
            let mut beta = Vec::with_capacity(n);
            let mut gamma = Vec::with_capacity(n);
            for i in 0..n {
                let j = n - i - 1;
                let binv = p.beta[j].inv().expect("nonzero");
                alpha.push(-&(&binv * &p.alpha[j]));
                gamma.push(-&(&binv * &p.gamma[j]));
                beta.push(binv);
            }
            Parameters::new(alpha, beta, gamma)
        }
    }
}

/// Applies `ops` left to right, returning the final parameters and the composite map
/// `H(p) -> H(result)`.
pub fn transform_composite(ops: &[Constructor], p: &Parameters) -> Result<(Parameters, ArrowMap)> {
    let n = p.n();
    let mut params = p.clone();
    let mut map = ArrowMap::identity(n);
    for op in ops {
        params = transform_params(op, &params)?;
        map = map.then(&op.map(n)?);
    }
    Ok((params, map))
}

/// A random word of `len` constructors with random nonzero scalings.
pub fn random_composite<R: Rng>(rng: &mut R, n: usize, len: usize) -> Vec<Constructor> {
    (0..len)
        .map(|_| match rng.gen_range(0..3) {
            0 => Constructor::Scale((0..n).map(|_| random_scalar(rng, true)).collect()),
            1 => Constructor::Rotate,
            _ => Constructor::Reflect,
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    Rotation,
    Reflection,
}

/// `psi^k`, preceded by `pi` for a reflection, preceded by `phi_lambda`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct IsoWitness {
    pub orientation: Orientation,
    pub shift: usize,
    pub lambda: Vec<Scalar>,
    pub map: ArrowMap,
}

impl IsoWitness {
    pub fn new(orientation: Orientation, shift: usize, lambda: Vec<Scalar>) -> Result<IsoWitness> {
        let map = witness_map(orientation, shift, &lambda)?;
        Ok(IsoWitness { orientation, shift, lambda, map })
    }

    /// The constructor word realising this witness.
    pub fn constructors(&self) -> Vec<Constructor> {
        let mut ops = vec![Constructor::Scale(self.lambda.clone())];
        if self.orientation == Orientation::Reflection {
            ops.push(Constructor::Reflect);
        }
        ops.extend(std::iter::repeat_n(Constructor::Rotate, self.shift));
        ops
    }
}

fn witness_map(orientation: Orientation, shift: usize, lambda: &[Scalar]) -> Result<ArrowMap> {
    let n = lambda.len();
    let mut map = Constructor::Scale(lambda.to_vec()).map(n)?;
    if orientation == Orientation::Reflection {
        map = map.then(&Constructor::Reflect.map(n)?);
    }
    Ok(map.then(&ArrowMap::pure(n, VertexMap::Rotation(shift % n))))
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct WitnessCheck {
    pub bijective: bool,
    /// The stored map is the one built from orientation, shift and lambda.
    pub consistent: bool,
    /// Images of source relations that are nonzero in the target.
    pub defects: Vec<String>,
    pub passed: bool,
}

/// Applies the witness map to every relation of `H(src)` and tests the image for zero
/// in `H(tgt)` by normal form.
pub fn verify_witness(w: &IsoWitness, src: &Parameters, tgt: &Parameters) -> WitnessCheck {
    let n = src.n();
    let consistent = tgt.n() == n
        && w.map.n() == n
        && w.lambda.len() == n
        && witness_map(w.orientation, w.shift, &w.lambda).is_ok_and(|m| m == w.map);
    let bijective = w.map.n() == n && w.map.is_bijective();
    let mut defects = Vec::new();
    let mut ok = consistent && bijective;
    if ok {
        match build_system(Preset::QuiverDownUp { params: tgt.clone() }).map(|s| s.verify()) {
            Ok(Ok(sys)) => {
                for r in src.relations() {
                    let image = w.map.apply(&r);
                    if !sys.is_zero_in_quotient(&image).unwrap_or(false) {
                        defects.push(sys.normal_form(&image).to_string());
                    }
                }
            }
            _ => ok = false,
        }
    }
    let passed = ok && defects.is_empty();
    WitnessCheck { bijective, consistent, defects, passed }
}

/// `lambda_a = c * lambda_b`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct RatioConstraint {
    pub a: usize,
    pub b: usize,
    pub c: Scalar,
}

impl RatioConstraint {
    pub fn new(a: usize, b: usize, c: Scalar) -> Result<RatioConstraint> {
        if c.is_zero() {
            return input("ratio must be nonzero");
        }
        Ok(RatioConstraint { a, b, c })
    }
}

/// A cycle of constraints whose ratios multiply to `ratio != 1`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Inconsistency {
    pub cycle: Vec<RatioConstraint>,
    pub ratio: Scalar,
}

struct RatioForest {
    parent: Vec<usize>,
    /// `lambda_x = ratio[x] * lambda_parent[x]`.
    ratio: Vec<Scalar>,
}

impl RatioForest {
    fn new(n: usize) -> RatioForest {
        RatioForest { parent: (0..n).collect(), ratio: vec![Scalar::one(); n] }
    }

    /// `(root, r)` with `lambda_x = r * lambda_root`.
    fn find(&mut self, x: usize) -> (usize, Scalar) {
        let p = self.parent[x];
        if p == x {
            return (x, Scalar::one());
        }
        let (root, r) = self.find(p);
        self.parent[x] = root;
        self.ratio[x] = &self.ratio[x] * &r;
        (root, self.ratio[x].clone())
    }
}

/// Tree path of accepted constraints from `from` to `to`.
fn tree_path(accepted: &[RatioConstraint], from: usize, to: usize) -> Vec<RatioConstraint> {
    let mut prev: BTreeMap<usize, usize> = BTreeMap::new();
    let mut queue = VecDeque::from([from]);
    prev.insert(from, usize::MAX);
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for (k, c) in accepted.iter().enumerate() {
            let next = if c.a == v {
                c.b
            } else if c.b == v {
                c.a
            } else {
                continue;
            };
            if !prev.contains_key(&next) {
                prev.insert(next, k);
                queue.push_back(next);
            }
        }
    }
    let mut out = Vec::new();
    let mut v = to;
    while v != from {
        let c = &accepted[prev[&v]];
        out.push(c.clone());
        v = if c.a == v { c.b } else { c.a };
    }
    out.reverse();
    out
}

/// Weighted union-find over `lambda_a = c lambda_b`. Each free component is normalised
/// so that its root is 1.
pub fn solve_ratio_system(
    constraints: &[RatioConstraint],
    n: usize,
) -> Result<std::result::Result<Vec<Scalar>, Inconsistency>> {
    if let Some(c) = constraints.iter().find(|c| c.a >= n || c.b >= n) {
        return input(format!("constraint on vertex {} out of range", c.a.max(c.b)));
    }
    let mut forest = RatioForest::new(n);
    let mut accepted = Vec::new();
    for con in constraints {
        let (ra, x) = forest.find(con.a);
        let (rb, y) = forest.find(con.b);
        // lambda_ra = (c y / x) lambda_rb
        let rel = &(&con.c * &y) / &x;
        if ra == rb {
            if !rel.is_one() {
                let mut cycle = tree_path(&accepted, con.b, con.a);
                cycle.push(con.clone());
                return Ok(Err(Inconsistency { cycle, ratio: rel }));
            }
        } else {
            forest.parent[ra] = rb;
            forest.ratio[ra] = rel;
            accepted.push(con.clone());
        }
    }
    Ok(Ok((0..n).map(|i| forest.find(i).1).collect()))
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Obstruction {
    /// `alpha_vertex` and its required image disagree on being zero.
    ZeroPattern {
        vertex: usize,
    },
    Inconsistent(Inconsistency),
    /// A solution was found but the witness failed verification.
    WitnessRejected {
        defects: Vec<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CaseFailure {
    pub orientation: Orientation,
    pub shift: usize,
    pub obstruction: Obstruction,
}

#[derive(Clone, Debug, serde::Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum IsoVerdict {
    Isomorphic { witness: IsoWitness },
    NotIsomorphic { cases: Vec<CaseFailure> },
    Unsupported { reason: String },
}

impl IsoVerdict {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoVerdict::Isomorphic { .. })
    }
}

/// The parameters `r` with `psi^k (pi?) (r) = q`, so that the case reduces to
/// `scale_lambda(p) = r`.
fn pulled_back_target(q: &Parameters, orientation: Orientation, shift: usize) -> Result<Parameters> {
    let n = q.n();
    let mut r = q.clone();
    for _ in 0..(n - shift % n) % n {
        r = transform_params(&Constructor::Rotate, &r)?;
    }
    if orientation == Orientation::Reflection {
        r = transform_params(&Constructor::Reflect, &r)?;
    }
    Ok(r)
}

/// Constraints on `lambda` for `scale_lambda(p) = r`, or the first zero-pattern clash.
fn scale_constraints(p: &Parameters, r: &Parameters) -> std::result::Result<Vec<RatioConstraint>, usize> {
    let n = p.n();
    let mut out = Vec::new();
    for i in 0..n {
        let c = &r.beta[i] / &p.beta[i];
        out.push(RatioConstraint { a: (i + 1) % n, b: wrap(i as i64 - 1, n), c });
    }
    for i in 0..n {
        match (p.alpha[i].is_zero(), r.alpha[i].is_zero()) {
            (true, true) => {}
            (false, false) => {
                let c = &r.alpha[i] / &p.alpha[i];
                out.push(RatioConstraint { a: i, b: wrap(i as i64 - 1, n), c });
            }
            _ => return Err(i),
        }
    }
    Ok(out)
}

fn unsupported(p: &Parameters) -> Option<String> {
    if p.n() < 3 {
        Some("the decision procedure needs n >= 3".into())
    } else if !p.is_graded() {
        Some("gamma must vanish".into())
    } else {
        p.first_zero_beta().map(|i| format!("beta_{i} = 0"))
    }
}

/// Searches the `2n` rotation/reflection cases, solving for `lambda` in each.
pub fn decide_graded_iso(p: &Parameters, q: &Parameters) -> Result<IsoVerdict> {
    if p.n() != q.n() {
        return input("parameters live on cycles of different lengths");
    }
    if let Some(reason) = unsupported(p).or_else(|| unsupported(q)) {
        return Ok(IsoVerdict::Unsupported { reason });
    }
    let n = p.n();
    let mut cases = Vec::new();
    for orientation in [Orientation::Rotation, Orientation::Reflection] {
        for shift in 0..n {
            let r = pulled_back_target(q, orientation, shift)?;
            let obstruction = match scale_constraints(p, &r) {
                Err(vertex) => Obstruction::ZeroPattern { vertex },
                Ok(cons) => match solve_ratio_system(&cons, n)? {
                    Err(inc) => Obstruction::Inconsistent(inc),
                    Ok(lambda) => {
                        let witness = IsoWitness::new(orientation, shift, lambda)?;
                        let check = verify_witness(&witness, p, q);
                        if check.passed {
                            return Ok(IsoVerdict::Isomorphic { witness });
                        }
                        Obstruction::WitnessRejected { defects: check.defects }
                    }
                },
            };
            cases.push(CaseFailure { orientation, shift, obstruction });
        }
    }
    Ok(IsoVerdict::NotIsomorphic { cases })
}

/// `beta'_i` of `psi^k pi phi_lambda (p)` from the composite formula
/// `lambda_{n-i+k}^{-1} lambda_{n-i+k-2} beta_{n-i+k-1}^{-1}`.
pub fn reflection_beta_formula(p: &Parameters, lambda: &[Scalar], shift: usize, i: usize) -> Result<Scalar> {
    let n = p.n();
    let idx = |off: i64| wrap(n as i64 - i as i64 + shift as i64 + off, n);
    let b = p.beta[idx(-1)].inv().map_err(|_| Error::Input("beta must be nonzero".into()))?;
    let l0 = lambda[idx(0)].inv()?;
    Ok(&(&l0 * &lambda[idx(-2)]) * &b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    fn graded(alpha: &[i64], beta: &[i64]) -> Parameters {
        Parameters::graded(ints(alpha), ints(beta)).unwrap()
    }

    #[test]
    fn constructor_examples() {
        let p = graded(&[0, 0, 0], &[1, 1, 1]);
        let s = transform_params(&Constructor::Scale(ints(&[1, 2, 1])), &p).unwrap();
        assert_eq!(s.beta, vec![Scalar::from_int(2), Scalar::one(), Scalar::new(1, 2)]);
        let r = transform_params(&Constructor::Rotate, &graded(&[5, 6, 7], &[1, 1, 1])).unwrap();
        assert_eq!(r.alpha, ints(&[7, 5, 6]));
        let f = transform_params(&Constructor::Reflect, &graded(&[0, 0, 0], &[1, 2, 4])).unwrap();
        assert_eq!(f.beta, vec![Scalar::new(1, 4), Scalar::new(1, 2), Scalar::one()]);
        assert!(transform_params(&Constructor::Reflect, &graded(&[0, 0, 0], &[1, 0, 4])).is_err());
    }

    #[test]
    fn each_constructor_respects_relations() {
        let p = Parameters::from_ints(&[2, -1, 3, 1], &[1, 5, -2, 3], &[1, 0, 2, -1]).unwrap();
        for op in [Constructor::Scale(ints(&[2, -1, 3, 5])), Constructor::Rotate, Constructor::Reflect] {
            let q = transform_params(&op, &p).unwrap();
            let sys = build_system(Preset::QuiverDownUp { params: q }).unwrap().verify().unwrap();
            let map = op.map(4).unwrap();
            for r in p.relations() {
                assert!(sys.is_zero_in_quotient(&map.apply(&r)).unwrap(), "{op:?} {r}");
            }
        }
    }

    #[test]
    fn ratio_solver_examples() {
        let c = |a, b, x| RatioConstraint::new(a, b, Scalar::from_int(x)).unwrap();
        assert_eq!(solve_ratio_system(&[c(1, 0, 2), c(2, 1, 3)], 3).unwrap(), Ok(ints(&[1, 2, 6])));
        let bad = solve_ratio_system(&[c(0, 0, 2)], 3).unwrap().unwrap_err();
        assert_eq!(bad.ratio, Scalar::from_int(2));
        assert_eq!(bad.cycle.len(), 1);
        assert_eq!(solve_ratio_system(&[], 3).unwrap(), Ok(ints(&[1, 1, 1])));
        let tri = solve_ratio_system(&[c(1, 0, 2), c(2, 1, 2), c(0, 2, 2)], 3).unwrap().unwrap_err();
        assert_eq!(tri.cycle.len(), 3);
        assert_eq!(tri.ratio, Scalar::from_int(8));
        assert!(RatioConstraint::new(0, 1, Scalar::zero()).is_err());
    }

    #[test]
    fn decision_examples() {
        let ones = graded(&[0, 0, 0], &[1, 1, 1]);
        match decide_graded_iso(&ones, &ones).unwrap() {
            IsoVerdict::Isomorphic { witness } => {
                assert_eq!(witness.orientation, Orientation::Rotation);
                assert_eq!(witness.shift, 0);
                assert_eq!(witness.lambda, ints(&[1, 1, 1]));
            }
            v => panic!("{v:?}"),
        }
        let other = graded(&[0, 0, 0], &[1, 1, 2]);
        match decide_graded_iso(&ones, &other).unwrap() {
            IsoVerdict::NotIsomorphic { cases } => {
                assert_eq!(cases.len(), 6);
                assert!(cases.iter().all(|c| matches!(
                    &c.obstruction,
                    Obstruction::Inconsistent(inc) if inc.ratio == Scalar::from_int(2) || inc.ratio == Scalar::new(1, 2)
                )));
            }
            v => panic!("{v:?}"),
        }
        let q =
            Parameters::graded(ints(&[0, 0, 0]), vec![Scalar::from_int(2), Scalar::one(), Scalar::new(1, 2)]).unwrap();
        match decide_graded_iso(&ones, &q).unwrap() {
            IsoVerdict::Isomorphic { witness } => {
                assert_eq!((witness.orientation, witness.shift), (Orientation::Rotation, 0));
                assert_eq!(witness.lambda, ints(&[1, 2, 1]));
            }
            v => panic!("{v:?}"),
        }
        let small = graded(&[0, 0], &[1, 1]);
        assert!(matches!(decide_graded_iso(&small, &small).unwrap(), IsoVerdict::Unsupported { .. }));
    }

    #[test]
    fn witness_checks() {
        let p = graded(&[1, 2, 0], &[1, 3, 2]);
        let ops = [Constructor::Scale(ints(&[1, 2, -1])), Constructor::Rotate];
        let (q, _) = transform_composite(&ops, &p).unwrap();
        let w = IsoWitness::new(Orientation::Rotation, 1, ints(&[1, 2, -1])).unwrap();
        assert!(verify_witness(&w, &p, &q).passed);
        let identity = IsoWitness::new(Orientation::Rotation, 0, ints(&[1, 1, 1])).unwrap();
        assert!(verify_witness(&identity, &p, &p).passed);
        let bad = IsoWitness::new(Orientation::Rotation, 1, ints(&[1, 3, -1])).unwrap();
        let check = verify_witness(&bad, &p, &q);
        assert!(!check.passed && !check.defects.is_empty());
    }

    #[test]
    fn composite_reflection_formula() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 3..=5 {
            let p = Parameters::random(&mut rng, n, true, true);
            let lambda: Vec<Scalar> = (0..n).map(|_| random_scalar(&mut rng, true)).collect();
            for k in 0..n {
                let w = IsoWitness::new(Orientation::Reflection, k, lambda.clone()).unwrap();
                let (q, map) = transform_composite(&w.constructors(), &p).unwrap();
                assert_eq!(map, w.map);
                for i in 0..n {
                    assert_eq!(q.beta[i], reflection_beta_formula(&p, &lambda, k, i).unwrap());
                }
            }
        }
    }

    #[test]
    fn random_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let n = rng.gen_range(3..=5);
            let p = Parameters::random(&mut rng, n, true, true);
            let len = rng.gen_range(1..=4);
            let ops = random_composite(&mut rng, n, len);
            let (q, _) = transform_composite(&ops, &p).unwrap();
            let v = decide_graded_iso(&p, &q).unwrap();
            assert!(v.is_isomorphic(), "{ops:?}");
            assert!(decide_graded_iso(&q, &p).unwrap().is_isomorphic());
        }
    }
}
