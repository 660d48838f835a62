//! The facet-hardness construction is built from nested slices that are
//! each facet-defining in their own dimension: the pure sequence prefix,
//! that prefix plus the bridge coordinate, and then plus the encoded items.
//! These tests pin the slices down with both engines before the full
//! construction is exercised elsewhere.

use num_bigint::BigInt;

use kpfacets::knapsack::{Inequality, KnapsackInstance};
use kpfacets::oracle::{CssInstance, Oracle};
use kpfacets::recognizer::check_facet;
use kpfacets::reductions::{css_to_facets, gu_sequence};

fn bi(v: i64) -> BigInt {
    BigInt::from(v)
}

/// Sequence-prefix slice in dimension 2s+1, scaled by `t`: the inequality
/// Σ f_i x_i ≤ Σ_{i≤2s} f_i over capacity t·(that sum).
fn sequence_slice(s: usize, t: i64) -> (KnapsackInstance, Inequality) {
    let f = gu_sequence(2 * s + 1).unwrap();
    let alpha: Vec<BigInt> = f.terms().to_vec();
    let a: Vec<BigInt> = f.terms().iter().map(|v| v * t).collect();
    let beta = f.prefix_sum(2 * s).clone();
    let b = &beta * t;
    (
        KnapsackInstance::new(a, b).unwrap(),
        Inequality::new(alpha, beta).unwrap(),
    )
}

#[test]
fn sequence_prefix_slices_are_facets() {
    let oracle = Oracle::default();
    for s in 1..=3 {
        for t in [1i64, 2, 5] {
            let (instance, ineq) = sequence_slice(s, t);
            let verdict = check_facet(&instance, &ineq).unwrap();
            assert!(verdict.is_facet, "slice s={s}, t={t} must be a facet");
            let report = oracle.brute_analyze(&instance, &ineq).unwrap();
            assert!(report.is_facet, "oracle disagrees at s={s}, t={t}");
        }
    }
    // Recognizer-only at sizes the oracle would enumerate slowly.
    for s in 4..=6 {
        let (instance, ineq) = sequence_slice(s, 3);
        assert!(check_facet(&instance, &ineq).unwrap().is_facet);
    }
}

#[test]
fn bridge_and_item_slices_are_facets() {
    // Slices of the real construction for a yes-instance: take the emitted
    // coefficients up to the bridge coordinate (2r+2) and up to the item
    // coordinates (2r+n+2), with the capacity both slices share.
    let css = CssInstance::new(vec![bi(1), bi(2)], bi(4)).unwrap();
    let out = css_to_facets(&css).unwrap();
    let r = out.params.r;
    let n = 2;
    let f = gu_sequence(2 * r + 1).unwrap();
    let t = bi(4);
    let cap = f.prefix_sum(2 * r) * &t;
    let rhs = f.prefix_sum(2 * r).clone();

    let oracle = Oracle::default();
    for keep in [2 * r + 2, 2 * r + n + 2] {
        let a: Vec<BigInt> = out.instance.weights()[..keep].to_vec();
        let alpha: Vec<BigInt> = out.inequality.coeffs()[..keep].to_vec();
        let instance = KnapsackInstance::new(a, cap.clone()).unwrap();
        let ineq = Inequality::new(alpha, rhs.clone()).unwrap();
        let verdict = check_facet(&instance, &ineq).unwrap();
        assert!(verdict.is_facet, "slice of width {keep} must be a facet");
        let report = oracle.brute_analyze(&instance, &ineq).unwrap();
        assert!(report.is_facet, "oracle disagrees at width {keep}");
    }
}
