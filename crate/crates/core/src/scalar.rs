//! Exact unsigned scalars for orders, degrees, and counts.
//!
//! Every counting formula in this crate is plain integer arithmetic, so the
//! functions are generic over the scalar used to carry the results. `u64` or
//! `u128` are fine while the caller knows the group is small; [`crate::Nat`]
//! (an arbitrary-precision unsigned integer) never overflows and is the
//! default everywhere results can outgrow a machine word.

use std::fmt::{Debug, Display};

use num_traits::Num;

/// An exact unsigned integer scalar: `u64`, `u128`, or `num_bigint::BigUint`.
pub trait Count: Num + Ord + Clone + Debug + Display + From<u64> {}

impl<T> Count for T where T: Num + Ord + Clone + Debug + Display + From<u64> {}

/// `base^exp` by binary exponentiation.
pub fn pow<C: Count>(base: u64, exp: u32) -> C {
    let mut result = C::one();
    let mut square = C::from(base);
    let mut exp = exp;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * square.clone();
        }
        exp >>= 1;
        if exp > 0 {
            square = square.clone() * square;
        }
    }
    result
}
