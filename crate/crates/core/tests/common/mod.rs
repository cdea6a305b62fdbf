#![allow(dead_code)]

use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use rankmetric::{build_tower, Fe, FieldTower, LinearizedPoly};

pub fn f81() -> Arc<FieldTower> {
    static T: OnceLock<Arc<FieldTower>> = OnceLock::new();
    T.get_or_init(|| build_tower(3, 1, 2, Some(&[2, 0, 0, 2, 1])).unwrap()).clone()
}

pub fn elem() -> impl Strategy<Value = Fe> {
    (0u32..81).prop_map(|c| f81().element(c).unwrap())
}

pub fn nonzero() -> impl Strategy<Value = Fe> {
    (0i64..80).prop_map(|i| f81().power_of_omega(i))
}

pub fn poly() -> impl Strategy<Value = LinearizedPoly> {
    prop::collection::vec(elem(), 4).prop_map(|c| LinearizedPoly::new(&f81(), c).unwrap())
}

/// Odd powers of ω: exactly the γ with non-square norm over F_3.
pub fn gamma() -> impl Strategy<Value = Fe> {
    (0i64..40).prop_map(|i| f81().power_of_omega(2 * i + 1))
}
