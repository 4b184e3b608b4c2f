#![allow(dead_code)]

use proptest::prelude::*;
use proptest::sample::subsequence;
use spinor_torsion::monomial::MonomialMatrix;
use spinor_torsion::perm::Permutation;
use spinor_torsion::torsion::TorsionPoint;
use spinor_torsion::unit::Unit;

pub fn permutation(len: usize) -> impl Strategy<Value = Permutation> {
    Just((0..len as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

pub fn monomial(dim: usize) -> impl Strategy<Value = MonomialMatrix> {
    (permutation(dim), prop::collection::vec(0u8..4, dim)).prop_map(|(p, e)| {
        MonomialMatrix::new(p, e.into_iter().map(Unit::from_exponent).collect()).unwrap()
    })
}

/// Power-of-two dimension `1..=max`.
pub fn dim(max_log: u32) -> impl Strategy<Value = usize> {
    (0..=max_log).prop_map(|a| 1usize << a)
}

pub fn point(k: u32, n: u32) -> impl Strategy<Value = TorsionPoint> {
    prop::collection::vec(0..n as u16, 2usize << k)
        .prop_map(move |v| TorsionPoint::new(k, n, v).unwrap())
}

/// An increasing index subset of `1..=2k`.
pub fn indices(k: u32) -> impl Strategy<Value = Vec<u32>> {
    let all: Vec<u32> = (1..=2 * k).collect();
    subsequence(all, 0..=(2 * k) as usize)
}
