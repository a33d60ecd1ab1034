//! Exact coefficient rings: Z[F_n] (noncommutative), Z[H] (Laurent), K_H
//! (fractions), with the bar involution, trivializer and abelianization.

mod fraction;
mod free;
mod laurent;

pub use fraction::{parse_fraction, LaurentFraction};
pub use free::{parse_free_ring, FreeRingElement};
pub use laurent::{parse_laurent, Expo, LaurentPolynomial};

/// Common surface shared by matrix entries.
pub trait RingElem: Clone + PartialEq + core::fmt::Debug {
    fn rank(&self) -> u16;
    fn zero(rank: u16) -> Self;
    fn one(rank: u16) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
}

pub(crate) fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
