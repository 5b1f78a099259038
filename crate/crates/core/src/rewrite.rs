//! Oriented reduction systems on the doubled cyclic quiver.
//!
//! Words are compared degree-first, then lexicographically with
//! `d_0 > d_1 > ... > d_{n-1} > u_0 > ... > u_{n-1}`. Every rule rewrites its
//! leading word into strictly smaller words, so reduction terminates.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::element::Element;
use crate::error::{input, Error, Result};
use crate::hilbert::IntMatrix;
use crate::params::{random_scalar, Parameters};
use crate::quiver::{wrap, Arrow, Family, Path};
use crate::scalar::Scalar;

/// Position of an arrow in the rewriting order; larger means bigger.
fn rank(a: &Arrow, n: usize) -> usize {
    match a.family {
        Family::D => 2 * n - 1 - a.index,
        Family::U => n - 1 - a.index,
    }
}

/// Degree-first lexicographic comparison in the rewriting order, ties broken by source.
pub fn term_order(p: &Path, q: &Path) -> Ordering {
    let n = p.n();
    p.len()
        .cmp(&q.len())
        .then_with(|| p.arrows().iter().map(|a| rank(a, n)).cmp(q.arrows().iter().map(|a| rank(a, n))))
        .then(p.source().cmp(&q.source()))
}

/// Path wrapper ordered by [`term_order`].
#[derive(Clone, PartialEq, Eq)]
struct Ranked(Path);

impl Ord for Ranked {
    fn cmp(&self, other: &Self) -> Ordering {
        term_order(&self.0, &other.0)
    }
}

impl PartialOrd for Ranked {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Preset {
    QuiverDownUp {
        params: Parameters,
    },
    Preprojective {
        n: usize,
    },
    /// The single-vertex graded down-up algebra with relations `d^2u + ud^2`, `du^2 + u^2d`.
    GradedDownUp,
}

/// Which family a rule came from, with the vertex index it is attached to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
pub struct RuleLabel {
    pub family: RuleFamily,
    pub vertex: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuleFamily {
    /// Leading word `d_{i-1} u_{i-1} u_i`.
    DownUpUp,
    /// Leading word `d_i d_{i-1} u_{i-1}`.
    DownDownUp,
    Preprojective,
    Graded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub lhs: Path,
    pub rhs: Element,
    pub label: RuleLabel,
}

impl RewriteRule {
    fn new(lhs: Path, rhs: Element, label: RuleLabel) -> RewriteRule {
        for (p, _) in rhs.terms() {
            assert!(p.source() == lhs.source() && p.target() == lhs.target(), "rule {lhs} -> {rhs} changes endpoints");
            assert_eq!(term_order(p, &lhs), Ordering::Less, "rule {lhs} -> {rhs} is not oriented");
        }
        RewriteRule { lhs, rhs, label }
    }
}

#[derive(Clone, Debug)]
pub struct ReductionSystem {
    n: usize,
    preset: Preset,
    rules: Vec<RewriteRule>,
    by_word: HashMap<Vec<Arrow>, usize>,
    lhs_lengths: Vec<usize>,
    verified: bool,
}

/// One overlap or inclusion ambiguity and how it resolved.
#[derive(Clone, Debug, serde::Serialize)]
pub struct OverlapReport {
    pub left: RuleLabel,
    pub right: RuleLabel,
    /// The ambiguous word.
    pub word: String,
    pub via_left: Element,
    pub via_right: Element,
    pub difference: Element,
    pub resolved: bool,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct ConfluenceReport {
    pub overlaps: Vec<OverlapReport>,
    pub confluent: bool,
}

/// Builds the reduction system for a preset. `params` is only used by the
/// quiver down-up preset.
pub fn build_system(preset: Preset) -> Result<ReductionSystem> {
    let (n, rules) = match &preset {
        Preset::QuiverDownUp { params } => (params.n(), down_up_rules(params)),
        Preset::Preprojective { n } => {
            if *n == 0 {
                return input("preprojective preset needs n >= 1");
            }
            (*n, preprojective_rules(*n))
        }
        Preset::GradedDownUp => (1, graded_rules()),
    };
    let mut by_word = HashMap::new();
    for (k, r) in rules.iter().enumerate() {
        if by_word.insert(r.lhs.arrows().to_vec(), k).is_some() {
            return input(format!("duplicate leading word {}", r.lhs));
        }
    }
    let lhs_lengths: BTreeSet<usize> = rules.iter().map(|r| r.lhs.len()).collect();
    Ok(ReductionSystem { n, preset, rules, by_word, lhs_lengths: lhs_lengths.into_iter().collect(), verified: false })
}

fn down_up_rules(p: &Parameters) -> Vec<RewriteRule> {
    let n = p.n();
    let mut rules = Vec::with_capacity(2 * n);
    for i in 0..n {
        let (im, ip) = (wrap(i as i64 - 1, n), wrap(i as i64 + 1, n));
        let lhs = Path::word(n, &[Arrow::d(im), Arrow::u(im), Arrow::u(i)]);
        let mut rhs = Element::word(n, &[Arrow::u(i), Arrow::d(i), Arrow::u(i)]).scale(&p.alpha[i]);
        rhs = &rhs + &Element::word(n, &[Arrow::u(i), Arrow::u(ip), Arrow::d(ip)]).scale(&p.beta[i]);
        rhs = &rhs + &Element::word(n, &[Arrow::u(i)]).scale(&p.gamma[i]);
        rules.push(RewriteRule::new(lhs, rhs, RuleLabel { family: RuleFamily::DownUpUp, vertex: i }));
    }
    for i in 0..n {
        let (im, ip) = (wrap(i as i64 - 1, n), wrap(i as i64 + 1, n));
        let lhs = Path::word(n, &[Arrow::d(i), Arrow::d(im), Arrow::u(im)]);
        let mut rhs = Element::word(n, &[Arrow::d(i), Arrow::u(i), Arrow::d(i)]).scale(&p.alpha[i]);
        rhs = &rhs + &Element::word(n, &[Arrow::u(ip), Arrow::d(ip), Arrow::d(i)]).scale(&p.beta[i]);
        rhs = &rhs + &Element::word(n, &[Arrow::d(i)]).scale(&p.gamma[i]);
        rules.push(RewriteRule::new(lhs, rhs, RuleLabel { family: RuleFamily::DownDownUp, vertex: i }));
    }
    rules
}

fn preprojective_rules(n: usize) -> Vec<RewriteRule> {
    (0..n)
        .map(|i| {
            let ip = wrap(i as i64 + 1, n);
            RewriteRule::new(
                Path::word(n, &[Arrow::d(i), Arrow::u(i)]),
                Element::word(n, &[Arrow::u(ip), Arrow::d(ip)]),
                RuleLabel { family: RuleFamily::Preprojective, vertex: i },
            )
        })
        .collect()
}

fn graded_rules() -> Vec<RewriteRule> {
    let (u, d) = (Arrow::u(0), Arrow::d(0));
    let minus = -Scalar::one();
    vec![
        RewriteRule::new(
            Path::word(1, &[d, d, u]),
            Element::word(1, &[u, d, d]).scale(&minus),
            RuleLabel { family: RuleFamily::Graded, vertex: 0 },
        ),
        RewriteRule::new(
            Path::word(1, &[d, u, u]),
            Element::word(1, &[u, u, d]).scale(&minus),
            RuleLabel { family: RuleFamily::Graded, vertex: 0 },
        ),
    ]
}

impl ReductionSystem {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn preset(&self) -> &Preset {
        &self.preset
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    /// Runs [`Self::check_confluence`] and, if every ambiguity resolves, returns the
    /// system marked as verified.
    pub fn verify(mut self) -> std::result::Result<ReductionSystem, ConfluenceReport> {
        let report = self.check_confluence();
        if report.confluent {
            self.verified = true;
            Ok(self)
        } else {
            Err(report)
        }
    }

    /// Leftmost occurrence of a leading word: `(start, rule index)`.
    fn find_redex(&self, arrows: &[Arrow]) -> Option<(usize, usize)> {
        for start in 0..arrows.len() {
            for &len in &self.lhs_lengths {
                if start + len > arrows.len() {
                    break;
                }
                if let Some(&r) = self.by_word.get(&arrows[start..start + len]) {
                    return Some((start, r));
                }
            }
        }
        None
    }

    pub fn is_normal_word(&self, p: &Path) -> bool {
        self.find_redex(p.arrows()).is_none()
    }

    pub fn normal_form(&self, a: &Element) -> Element {
        self.normal_form_traced(a, None)
    }

    /// Normal form, recording the labels of every rule applied into `trace`.
    pub fn normal_form_traced(&self, a: &Element, mut trace: Option<&mut BTreeSet<RuleLabel>>) -> Element {
        assert_eq!(a.n(), self.n, "element over a different quiver");
        // Processing terms from the largest down means every contribution to a
        // word has arrived before that word is rewritten.
        let mut pending: BTreeMap<Ranked, Scalar> = BTreeMap::new();
        for (p, c) in a.terms() {
            accumulate(&mut pending, p.clone(), c.clone());
        }
        let mut out = Element::zero(self.n);
        while let Some((Ranked(p), c)) = pending.pop_last() {
            match self.find_redex(p.arrows()) {
                None => out.add_term(p, c),
                Some((start, r)) => {
                    let rule = &self.rules[r];
                    if let Some(t) = trace.as_deref_mut() {
                        t.insert(rule.label);
                    }
                    let arrows = p.arrows();
                    let end = start + rule.lhs.len();
                    for (q, k) in rule.rhs.terms() {
                        let mut w = Vec::with_capacity(arrows.len() - rule.lhs.len() + q.len());
                        w.extend_from_slice(&arrows[..start]);
                        w.extend_from_slice(q.arrows());
                        w.extend_from_slice(&arrows[end..]);
                        accumulate(&mut pending, Path::from_parts(self.n, p.source(), w), &c * k);
                    }
                }
            }
        }
        out
    }

    /// Applies one rule at one position; used to resolve ambiguities both ways.
    fn rewrite_at(&self, p: &Path, start: usize, rule: usize) -> Element {
        let rule = &self.rules[rule];
        let arrows = p.arrows();
        let end = start + rule.lhs.len();
        debug_assert_eq!(&arrows[start..end], rule.lhs.arrows());
        let mut out = Element::zero(self.n);
        for (q, k) in rule.rhs.terms() {
            let mut w = arrows[..start].to_vec();
            w.extend_from_slice(q.arrows());
            w.extend_from_slice(&arrows[end..]);
            out.add_term(Path::from_parts(self.n, p.source(), w), k.clone());
        }
        out
    }

    /// All overlap ambiguities (a proper suffix of one leading word equals a proper
    /// prefix of another) and inclusion ambiguities, as `(word, left rule, left
    /// start, right rule, right start)`.
    fn ambiguities(&self) -> Vec<(Path, usize, usize, usize, usize)> {
        let mut out = Vec::new();
        for (a, ra) in self.rules.iter().enumerate() {
            let wa = ra.lhs.arrows();
            for (b, rb) in self.rules.iter().enumerate() {
                let wb = rb.lhs.arrows();
                for k in 1..wa.len().min(wb.len()) {
                    if wa[wa.len() - k..] == wb[..k] {
                        let mut w = wa.to_vec();
                        w.extend_from_slice(&wb[k..]);
                        let word = Path::from_parts(self.n, ra.lhs.source(), w);
                        out.push((word, a, 0, b, wa.len() - k));
                    }
                }
                if a != b && wb.len() < wa.len() {
                    for s in 0..=wa.len() - wb.len() {
                        if wa[s..s + wb.len()] == *wb {
                            out.push((ra.lhs.clone(), a, 0, b, s));
                        }
                    }
                }
            }
        }
        out
    }

    /// Reduces every ambiguity both ways and reports whether the results agree.
    pub fn check_confluence(&self) -> ConfluenceReport {
        let overlaps: Vec<OverlapReport> = self
            .ambiguities()
            .into_iter()
            .map(|(word, a, sa, b, sb)| {
                let via_left = self.normal_form(&self.rewrite_at(&word, sa, a));
                let via_right = self.normal_form(&self.rewrite_at(&word, sb, b));
                let difference = &via_left - &via_right;
                OverlapReport {
                    left: self.rules[a].label,
                    right: self.rules[b].label,
                    word: word.to_string(),
                    resolved: difference.is_zero(),
                    via_left,
                    via_right,
                    difference,
                }
            })
            .collect();
        let confluent = overlaps.iter().all(|o| o.resolved);
        ConfluenceReport { overlaps, confluent }
    }

    /// True iff `a` reduces to zero. Only meaningful once confluence is verified.
    pub fn is_zero_in_quotient(&self, a: &Element) -> Result<bool> {
        if !self.verified {
            return Err(Error::Unverified);
        }
        Ok(self.normal_form(a).is_zero())
    }

    fn max_lhs(&self) -> usize {
        self.lhs_lengths.last().copied().unwrap_or(1)
    }

    /// Does appending `next` to a word ending in `tail` create a leading word as a suffix?
    fn completes_redex(&self, tail: &[Arrow], next: Arrow) -> bool {
        let mut w: Vec<Arrow> = tail.to_vec();
        w.push(next);
        self.lhs_lengths.iter().any(|&l| l <= w.len() && self.by_word.contains_key(&w[w.len() - l..]))
    }

    /// All normal words of length `k`, in canonical path order.
    pub fn enumerate_basis(&self, k: usize) -> Vec<Path> {
        let n = self.n;
        let mut out = Vec::new();
        for s in 0..n {
            let mut stack: Vec<Vec<Arrow>> = vec![Vec::new()];
            while let Some(w) = stack.pop() {
                if w.len() == k {
                    out.push(if w.is_empty() { Path::trivial(n, s) } else { Path::from_parts(n, s, w) });
                    continue;
                }
                let here = w.last().map_or(s, |a| a.target(n));
                for next in outgoing(n, here) {
                    let tail_from = w.len().saturating_sub(self.max_lhs() - 1);
                    if !self.completes_redex(&w[tail_from..], next) {
                        let mut w2 = w.clone();
                        w2.push(next);
                        stack.push(w2);
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// `(H_k)_{ij}` = number of normal words of length `k` from `i` to `j`, by
    /// transfer-matrix iteration over the last `max_lhs - 1` arrows.
    pub fn dimension_matrix(&self, k: usize) -> IntMatrix {
        self.dimension_matrices(k).pop().expect("at least degree 0")
    }

    /// Dimension matrices for every degree `0..=max_degree`.
    pub fn dimension_matrices(&self, max_degree: usize) -> Vec<IntMatrix> {
        let n = self.n;
        let keep = self.max_lhs().saturating_sub(1);
        // state: (source, current vertex, recent arrows)
        let mut states: BTreeMap<(usize, usize, Vec<Arrow>), BigInt> = BTreeMap::new();
        for s in 0..n {
            states.insert((s, s, Vec::new()), BigInt::from(1));
        }
        let mut out = Vec::with_capacity(max_degree + 1);
        for degree in 0..=max_degree {
            let mut h = IntMatrix::zero(n);
            for ((s, v, _), c) in &states {
                h.add_at(*s, *v, c);
            }
            out.push(h);
            if degree == max_degree {
                break;
            }
            let mut next: BTreeMap<(usize, usize, Vec<Arrow>), BigInt> = BTreeMap::new();
            for ((s, v, tail), c) in &states {
                for a in outgoing(n, *v) {
                    if self.completes_redex(tail, a) {
                        continue;
                    }
                    let mut t = tail.clone();
                    t.push(a);
                    if t.len() > keep {
                        t.remove(0);
                    }
                    *next.entry((*s, a.target(n), t)).or_default() += c;
                }
            }
            states = next;
        }
        out
    }
}

fn accumulate(pending: &mut BTreeMap<Ranked, Scalar>, p: Path, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let key = Ranked(p);
    match pending.get_mut(&key) {
        Some(v) => {
            *v += &c;
            if v.is_zero() {
                pending.remove(&key);
            }
        }
        None => {
            pending.insert(key, c);
        }
    }
}

/// The two arrows leaving vertex `v`: `u_v` and `d_{v-1}`.
fn outgoing(n: usize, v: usize) -> [Arrow; 2] {
    [Arrow::u(v), Arrow::d(wrap(v as i64 - 1, n))]
}

/// Normal words of the quiver down-up algebra of length `k`, generated directly
/// as `u...u (du)^j d...d`.
pub fn closed_shape_basis(n: usize, k: usize) -> Vec<Path> {
    let mut out = Vec::new();
    for s in 0..n {
        for ups in 0..=k {
            for j in 0..=(k - ups) / 2 {
                let downs = k - ups - 2 * j;
                let mut w = Vec::with_capacity(k);
                let mut v = s;
                for _ in 0..ups {
                    w.push(Arrow::u(v));
                    v = (v + 1) % n;
                }
                let below = wrap(v as i64 - 1, n);
                for _ in 0..j {
                    w.push(Arrow::d(below));
                    w.push(Arrow::u(below));
                }
                for _ in 0..downs {
                    let b = wrap(v as i64 - 1, n);
                    w.push(Arrow::d(b));
                    v = b;
                }
                out.push(if w.is_empty() { Path::trivial(n, s) } else { Path::from_parts(n, s, w) });
            }
        }
    }
    out.sort();
    out
}

/// Compares the automaton enumeration with the closed shape for every degree up to
/// `max_degree`; quiver down-up preset only.
pub fn cross_check_closed_shape(sys: &ReductionSystem, max_degree: usize) -> Result<()> {
    if !matches!(sys.preset(), Preset::QuiverDownUp { .. }) {
        return input("closed-shape cross-check applies to the quiver down-up preset");
    }
    let dims = sys.dimension_matrices(max_degree);
    for (k, dim) in dims.iter().enumerate() {
        let listed = sys.enumerate_basis(k);
        let shaped = closed_shape_basis(sys.n(), k);
        if listed != shaped {
            return input(format!("basis mismatch in degree {k}"));
        }
        if dim.total() != BigInt::from(listed.len()) {
            return input(format!("transfer-matrix count mismatch in degree {k}"));
        }
    }
    Ok(())
}

/// Outcome of certifying confluence over a grid of parameter values.
#[derive(Clone, Debug, serde::Serialize)]
pub struct GridCertificate {
    pub n: usize,
    pub grid: Vec<Scalar>,
    /// Overlap words with the vertices whose parameters they depend on.
    pub overlaps: Vec<(String, Vec<usize>)>,
    pub evaluations: usize,
    pub failures: Vec<String>,
    pub certified: bool,
}

/// Certifies that every overlap of the quiver down-up system resolves for all
/// parameter values.
///
/// Each overlap difference is a polynomial of degree at most 2 in each parameter.
/// The parameters it involves are those of the rules fired while resolving it; the
/// difference is evaluated on the full product of `grid` (3 distinct values) over
/// those parameters, with all other parameters held at a random point. A rule
/// outside the recorded set firing at any grid point is reported as a failure.
pub fn certify_confluence_grid(n: usize, grid: &[Scalar; 3], seed: u64) -> Result<GridCertificate> {
    if n == 0 {
        return input("n must be positive");
    }
    let distinct: BTreeSet<&Scalar> = grid.iter().collect();
    if distinct.len() != 3 {
        return input("grid values must be distinct");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = Parameters::random(&mut rng, n, true, false);
    let sys = build_system(Preset::QuiverDownUp { params: base.clone() })?;
    let mut cert = GridCertificate {
        n,
        grid: grid.to_vec(),
        overlaps: Vec::new(),
        evaluations: 0,
        failures: Vec::new(),
        certified: true,
    };
    for (word, a, sa, b, sb) in sys.ambiguities() {
        let mut fired = BTreeSet::new();
        fired.insert(sys.rules[a].label);
        fired.insert(sys.rules[b].label);
        sys.normal_form_traced(&sys.rewrite_at(&word, sa, a), Some(&mut fired));
        sys.normal_form_traced(&sys.rewrite_at(&word, sb, b), Some(&mut fired));
        let vertices: Vec<usize> = fired.iter().map(|l| l.vertex).collect::<BTreeSet<_>>().into_iter().collect();
        let vars = 3 * vertices.len();
        for code in 0..3usize.pow(vars as u32) {
            let mut p = base.clone();
            let mut c = code;
            for &v in &vertices {
                for slot in [&mut p.alpha[v], &mut p.beta[v], &mut p.gamma[v]] {
                    *slot = grid[c % 3].clone();
                    c /= 3;
                }
            }
            let s = build_system(Preset::QuiverDownUp { params: p })?;
            let mut seen = BTreeSet::new();
            let left = s.normal_form_traced(&s.rewrite_at(&word, sa, a), Some(&mut seen));
            let right = s.normal_form_traced(&s.rewrite_at(&word, sb, b), Some(&mut seen));
            cert.evaluations += 1;
            if !seen.iter().all(|l| vertices.contains(&l.vertex)) {
                cert.failures.push(format!("{word}: rule outside the parameter support at grid point {code}"));
            }
            if left != right {
                cert.failures.push(format!("{word}: nonzero difference at grid point {code}"));
            }
        }
        cert.overlaps.push((word.to_string(), vertices));
    }
    cert.certified = cert.failures.is_empty();
    Ok(cert)
}

/// Random parameter instance used by the randomized confluence check; the
/// `beta` entry at `zero_beta` (if any) is forced to zero.
pub fn random_instance(n: usize, seed: u64, zero_beta: Option<usize>) -> Parameters {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p = Parameters::random(&mut rng, n, true, false);
    if let Some(i) = zero_beta {
        p.beta[i % n] = Scalar::zero();
    }
    if p.gamma.iter().all(Scalar::is_zero) {
        p.gamma[0] = random_scalar(&mut rng, true);
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Arrow as A;

    fn sample(n: usize) -> Parameters {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        Parameters::random(&mut rng, n, true, false)
    }

    #[test]
    fn order_puts_d0_on_top() {
        let n = 3;
        let w = |a: &[Arrow]| Path::word(n, a);
        assert_eq!(term_order(&w(&[A::d(0)]), &w(&[A::d(1)])), Ordering::Greater);
        assert_eq!(term_order(&w(&[A::d(2)]), &w(&[A::u(0)])), Ordering::Greater);
        assert_eq!(term_order(&w(&[A::u(0)]), &w(&[A::u(1)])), Ordering::Greater);
        assert_eq!(term_order(&w(&[A::u(2)]), &w(&[A::d(0), A::u(0)])), Ordering::Less);
    }

    #[test]
    fn quiver_down_up_rules() {
        let p = sample(3);
        let sys = build_system(Preset::QuiverDownUp { params: p.clone() }).unwrap();
        let rule = sys.rules().iter().find(|r| r.lhs == Path::word(3, &[A::d(0), A::d(2), A::u(2)])).unwrap();
        let expected = &(&Element::word(3, &[A::d(0), A::u(0), A::d(0)]).scale(&p.alpha[0])
            + &Element::word(3, &[A::u(1), A::d(1), A::d(0)]).scale(&p.beta[0]))
            + &Element::word(3, &[A::d(0)]).scale(&p.gamma[0]);
        assert_eq!(&rule.rhs, &expected);
    }

    #[test]
    fn preprojective_and_graded_rules() {
        let sys = build_system(Preset::Preprojective { n: 3 }).unwrap();
        assert_eq!(sys.rules()[0].lhs.to_string(), "d0.u0");
        assert_eq!(sys.rules()[0].rhs.to_string(), "1 * u1.d1 @1");
        let g = build_system(Preset::GradedDownUp).unwrap();
        assert_eq!(g.rules()[0].lhs.to_string(), "d0.d0.u0");
        assert_eq!(g.rules()[0].rhs.to_string(), "-1 * u0.d0.d0 @0");
    }

    #[test]
    fn normal_form_examples() {
        let p = sample(3);
        let sys = build_system(Preset::QuiverDownUp { params: p.clone() }).unwrap();
        let a = Element::word(3, &[A::d(0), A::d(2), A::u(2)]);
        let r = sys.normal_form(&a);
        assert_eq!(r, sys.rules()[3].rhs);
        let normal = Element::word(3, &[A::u(0), A::u(1), A::d(1)]);
        assert_eq!(sys.normal_form(&normal), normal);
        // The overlap word reduces to one answer whichever redex goes first.
        let word = Path::word(3, &[A::d(1), A::d(0), A::u(0), A::u(1)]);
        let prefix_first = sys.normal_form(&sys.rewrite_at(&word, 0, 3 + 1));
        let suffix_first = sys.normal_form(&sys.rewrite_at(&word, 1, 1));
        assert_eq!(prefix_first, suffix_first);
        assert_eq!(prefix_first, sys.normal_form(&Element::from_path(word)));
    }

    #[test]
    fn confluence_examples() {
        let sys = build_system(Preset::QuiverDownUp { params: sample(3) }).unwrap();
        let rep = sys.check_confluence();
        assert!(rep.confluent);
        assert_eq!(rep.overlaps.len(), 3);
        let pre = build_system(Preset::Preprojective { n: 3 }).unwrap().check_confluence();
        assert!(pre.confluent);
        assert!(pre.overlaps.is_empty());
        let g = build_system(Preset::GradedDownUp).unwrap().check_confluence();
        assert!(g.confluent);
        assert_eq!(g.overlaps.len(), 1);
        assert_eq!(g.overlaps[0].word, "d0.d0.u0.u0");
        assert_eq!(g.overlaps[0].via_left.to_string(), "1 * u0.u0.d0.d0 @0");
    }

    #[test]
    fn membership_needs_verification() {
        let p = sample(3);
        let sys = build_system(Preset::QuiverDownUp { params: p.clone() }).unwrap();
        assert_eq!(sys.is_zero_in_quotient(&Element::zero(3)), Err(Error::Unverified));
        let sys = sys.verify().unwrap();
        assert!(sys.is_zero_in_quotient(&p.down_relation(0)).unwrap());
        assert!(!sys.is_zero_in_quotient(&Element::word(3, &[A::u(0)])).unwrap());
    }

    #[test]
    fn zero_beta_witness_is_zero() {
        let mut p = sample(3);
        p.beta[0] = Scalar::zero();
        let sys = build_system(Preset::QuiverDownUp { params: p.clone() }).unwrap().verify().unwrap();
        let a = &(&Element::word(3, &[A::d(2), A::u(2)]) - &Element::word(3, &[A::u(0), A::d(0)]).scale(&p.alpha[0]))
            - &Element::vertex(3, 0).scale(&p.gamma[0]);
        let prod = &a * &Element::word(3, &[A::u(0)]);
        assert!(sys.is_zero_in_quotient(&prod).unwrap());
    }

    #[test]
    fn basis_counts() {
        let sys = build_system(Preset::QuiverDownUp { params: sample(3) }).unwrap();
        let h2 = sys.dimension_matrix(2);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(h2.get(i, j), &BigInt::from(if i == j { 2 } else { 1 }));
            }
        }
        assert_eq!(sys.enumerate_basis(2).len(), 12);
        assert_eq!(sys.enumerate_basis(3).len(), 18);
        assert_eq!(sys.dimension_matrix(0), IntMatrix::identity(3));
        cross_check_closed_shape(&sys, 7).unwrap();
        for n in [1, 2, 4] {
            let s = build_system(Preset::QuiverDownUp { params: sample(n) }).unwrap();
            cross_check_closed_shape(&s, 6).unwrap();
        }
    }

    #[test]
    fn grid_certificate_small() {
        let grid = [Scalar::from_int(0), Scalar::from_int(1), Scalar::new(-3, 2)];
        let cert = certify_confluence_grid(1, &grid, 3).unwrap();
        assert!(cert.certified, "{:?}", cert.failures);
        assert_eq!(cert.evaluations, 27);
    }
}
