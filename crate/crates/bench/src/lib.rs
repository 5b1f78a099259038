//! Fixed workloads shared by the benchmarks.

use qdu::{Arrow, Element, Parameters, Scalar};

/// Deterministic parameters with every `beta` nonzero.
pub fn sample_params(n: usize) -> Parameters {
    let s = |k: usize, off: i64| Scalar::new((k as i64 % 5) - 2 + off, 1 + (k as i64 % 3));
    let alpha = (0..n).map(|k| s(k, 0)).collect();
    let beta = (0..n).map(|k| s(k, 1)).map(|b| if b.is_zero() { Scalar::from_int(3) } else { b }).collect();
    let gamma = (0..n).map(|k| s(k + 1, 0)).collect();
    Parameters::new(alpha, beta, gamma).expect("lengths agree")
}

/// All `d` arrows around the cycle followed by all `u`, repeated; a word with many redexes.
pub fn long_word(n: usize, reps: usize) -> Element {
    let mut arrows = Vec::new();
    for _ in 0..reps {
        arrows.extend((0..n).rev().map(Arrow::d));
        arrows.extend((0..n).map(Arrow::u));
    }
    Element::word(n, &arrows)
}
