use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qdu::gwa::{sigma, sigma_inverse, BaseElement, Gwa, GwaElement};
use qdu::hilbert::{invert_series, MatrixPoly};
use qdu::iso::{decide_graded_iso, random_composite, transform_composite};
use qdu::params::random_scalar;
use qdu::skewgroup::SmashAlgebra;
use qdu::{build_system, Arrow, Element, Parameters, Path, Preset, ReductionSystem, Scalar};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_path<R: Rng>(rng: &mut R, n: usize, source: usize, len: usize) -> Path {
    let mut v = source;
    let mut arrows = Vec::with_capacity(len);
    for _ in 0..len {
        if rng.gen_bool(0.5) {
            arrows.push(Arrow::u(v));
            v = (v + 1) % n;
        } else {
            v = (v + n - 1) % n;
            arrows.push(Arrow::d(v));
        }
    }
    if arrows.is_empty() {
        Path::trivial(n, source)
    } else {
        Path::new(n, arrows).expect("walk along the quiver")
    }
}

fn random_element<R: Rng>(rng: &mut R, n: usize, max_len: usize) -> Element {
    let mut e = Element::zero(n);
    for _ in 0..rng.gen_range(1..=3) {
        let len = rng.gen_range(0..=max_len);
        let source = rng.gen_range(0..n);
        e = &e + &Element::term(random_scalar(rng, true), random_path(rng, n, source, len));
    }
    e
}

fn random_gwa<R: Rng>(rng: &mut R, n: usize) -> GwaElement {
    let mut g = GwaElement::zero(n);
    for _ in 0..rng.gen_range(1..=2) {
        let v = rng.gen_range(0..n);
        g = g.add(&GwaElement::term(BaseElement::random(rng, n, v, 2), rng.gen_range(-3..=3)));
    }
    g
}

fn system(p: &Parameters) -> ReductionSystem {
    build_system(Preset::QuiverDownUp { params: p.clone() }).unwrap().verify().unwrap()
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (-50i64..=50, 1i64..=20).prop_map(|(p, q)| Scalar::new(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn scalar_field_laws(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a - &a, Scalar::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), Scalar::one());
        }
        prop_assert_eq!(a.to_string().parse::<Scalar>().unwrap(), a);
    }

    #[test]
    fn element_text_round_trip(seed in any::<u64>(), n in 1usize..=5) {
        let a = random_element(&mut rng(seed), n, 5);
        prop_assert_eq!(Element::parse(&a.to_string(), n).unwrap(), a);
    }

    #[test]
    fn path_multiplication_is_associative(seed in any::<u64>(), n in 1usize..=4) {
        let mut r = rng(seed);
        let (a, b, c) = (random_element(&mut r, n, 3), random_element(&mut r, n, 3), random_element(&mut r, n, 3));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn normal_form_laws(seed in any::<u64>(), n in 1usize..=4, zero_beta in any::<bool>()) {
        let mut r = rng(seed);
        let mut p = Parameters::random(&mut r, n, true, false);
        if zero_beta {
            p.beta[0] = Scalar::zero();
        }
        let sys = system(&p);
        let a = random_element(&mut r, n, 5);
        let b = random_element(&mut r, n, 4);
        let c = random_scalar(&mut r, false);
        let na = sys.normal_form(&a);
        prop_assert_eq!(sys.normal_form(&na), na.clone());
        prop_assert!(na.support().all(|w| sys.is_normal_word(w)));
        prop_assert_eq!(sys.normal_form(&(&a + &b.scale(&c))), &na + &sys.normal_form(&b).scale(&c));
        prop_assert_eq!(sys.normal_form(&(&a * &b)), sys.normal_form(&(&na * &sys.normal_form(&b))));
    }

    #[test]
    fn basis_words_are_normal_and_independent(seed in any::<u64>(), n in 1usize..=4, k in 0usize..=5) {
        let p = Parameters::random(&mut rng(seed), n, false, false);
        let sys = system(&p);
        let words = sys.enumerate_basis(k);
        prop_assert_eq!(words.len(), n * ((k + 2) * (k + 2) / 4));
        for w in &words {
            prop_assert!(sys.is_normal_word(w));
            prop_assert_eq!(sys.normal_form(&Element::from_path(w.clone())), Element::from_path(w.clone()));
        }
    }

    #[test]
    fn series_truncation_is_consistent(n in 1usize..=5, m in 0usize..=6, extra in 0usize..=4) {
        let den = MatrixPoly::down_up_denominator(n).unwrap();
        let short = invert_series(&den, m).unwrap();
        let long = invert_series(&den, m + extra).unwrap();
        prop_assert_eq!(&long.truncate(m).coeffs, &short.coeffs);
        let product = den.mul(&MatrixPoly::from_terms(n, short.coeffs.iter().cloned().enumerate()));
        for k in 0..=m {
            let c = product.coeff(k);
            if k == 0 {
                prop_assert!(c == qdu::hilbert::IntMatrix::identity(n));
            } else {
                prop_assert!(c.is_zero());
            }
        }
    }

    #[test]
    fn sigma_is_an_automorphism(seed in any::<u64>(), n in 1usize..=4) {
        let mut r = rng(seed);
        let p = Parameters::random(&mut r, n, true, false);
        let (i, j) = (r.gen_range(0..n), r.gen_range(0..n));
        let a = BaseElement::random(&mut r, n, i, 3);
        let b = BaseElement::random(&mut r, n, j, 3).add(&BaseElement::random(&mut r, n, i, 2));
        prop_assert_eq!(sigma(&p, &a.mul(&b)), sigma(&p, &a).mul(&sigma(&p, &b)));
        prop_assert_eq!(sigma(&p, &a.add(&b)), sigma(&p, &a).add(&sigma(&p, &b)));
        prop_assert_eq!(sigma_inverse(&p, &sigma(&p, &a)).unwrap(), a);
    }

    #[test]
    fn gwa_multiplication_is_associative(seed in any::<u64>(), n in 1usize..=4) {
        let mut r = rng(seed);
        let gwa = Gwa::new(&Parameters::random(&mut r, n, true, false)).unwrap();
        let (a, b, c) = (random_gwa(&mut r, n), random_gwa(&mut r, n), random_gwa(&mut r, n));
        prop_assert_eq!(gwa.mul(&gwa.mul(&a, &b), &c), gwa.mul(&a, &gwa.mul(&b, &c)));
    }

    #[test]
    fn theta_round_trips(seed in any::<u64>(), n in 1usize..=4) {
        let mut r = rng(seed);
        let p = Parameters::random(&mut r, n, true, false);
        let gwa = Gwa::new(&p).unwrap();
        let sys = system(&p);
        let a = random_element(&mut r, n, 4);
        let b = random_element(&mut r, n, 3);
        let ta = gwa.theta(&a);
        prop_assert_eq!(gwa.theta(&(&a * &b)), gwa.mul(&ta, &gwa.theta(&b)));
        prop_assert_eq!(gwa.theta(&sys.normal_form(&a)), ta.clone());
        prop_assert_eq!(gwa.theta_prime(&sys, &ta), sys.normal_form(&a));
        let t = random_gwa(&mut r, n);
        prop_assert_eq!(gwa.theta(&gwa.theta_prime(&sys, &t)), t);
    }

    #[test]
    fn map_composition_matches_application(seed in any::<u64>(), n in 3usize..=5) {
        let mut r = rng(seed);
        let p = Parameters::random(&mut r, n, true, false);
        let f = transform_composite(&random_composite(&mut r, n, 3), &p).unwrap().1;
        let g = transform_composite(&random_composite(&mut r, n, 2), &p).unwrap().1;
        let a = random_element(&mut r, n, 4);
        prop_assert_eq!(f.then(&g).apply(&a), g.apply(&f.apply(&a)));
        prop_assert_eq!(f.inverse().apply(&f.apply(&a)), a);
    }

    #[test]
    fn composites_respect_relations(seed in any::<u64>(), n in 1usize..=5, len in 1usize..=4) {
        let mut r = rng(seed);
        let p = Parameters::random(&mut r, n, true, false);
        let (q, map) = transform_composite(&random_composite(&mut r, n, len), &p).unwrap();
        let sys = system(&q);
        prop_assert!(map.is_bijective());
        for rel in p.relations() {
            prop_assert!(sys.is_zero_in_quotient(&map.apply(&rel)).unwrap());
        }
    }

    #[test]
    fn iso_decision_is_symmetric_and_complete(seed in any::<u64>(), n in 3usize..=5, related in any::<bool>()) {
        let mut r = rng(seed);
        let p = Parameters::random(&mut r, n, true, true);
        let q = if related {
            let len = r.gen_range(1..=4);
            transform_composite(&random_composite(&mut r, n, len), &p).unwrap().0
        } else {
            Parameters::random(&mut r, n, true, true)
        };
        let forward = decide_graded_iso(&p, &q).unwrap().is_isomorphic();
        let backward = decide_graded_iso(&q, &p).unwrap().is_isomorphic();
        prop_assert_eq!(forward, backward);
        if related {
            prop_assert!(forward);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn smash_product_is_associative(seed in any::<u64>(), n in 2usize..=3) {
        let mut r = rng(seed);
        let alg = SmashAlgebra::new(n).unwrap();
        let pick = |r: &mut ChaCha8Rng| {
            let e = random_element(r, 1, 3);
            alg.embed(&e, r.gen_range(0..n)).scale(&alg.zeta_pow(r.gen_range(0..n as i64)))
        };
        let (a, b, c) = (pick(&mut r), pick(&mut r), pick(&mut r));
        prop_assert_eq!(alg.mul(&alg.mul(&a, &b), &c), alg.mul(&a, &alg.mul(&b, &c)));
    }
}
