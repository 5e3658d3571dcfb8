//! Power graphs of finite abelian groups.
//!
//! The power graph of a finite group has the group's elements as vertices,
//! with distinct `u`, `v` adjacent iff one is a power of the other. For
//! abelian groups the degree of every vertex has a closed form in terms of
//! the group's canonical shape and the element's order type; this crate
//! implements those formulas, plus a brute-force oracle graph to check them
//! against.
//!
//! Counting arithmetic is generic over an exact unsigned scalar (see
//! [`Count`]); [`Nat`] is the arbitrary-precision default, while `u64` or
//! `u128` work when the caller knows the group is small.
//!
//! ```
//! use powergraph_core::{canonicalize, parse_group_spec, undirected_degree, Nat};
//!
//! let (group, map) = canonicalize(&parse_group_spec("Z4xZ2").unwrap());
//! let g = map.map_element(&[2, 0]).unwrap();
//! assert_eq!(undirected_degree::<Nat>(&group, &g), Nat::from(5u32));
//! ```

pub mod arith;
pub mod classify;
pub mod degree;
pub mod export;
pub mod group;
pub mod oracle;
pub mod scalar;

pub use degree::{
    compose_coprime, compose_triples, degree_histogram, degree_triple, degree_triple_of_type,
    edge_count, in_degree_identity, in_degree_p_component, is_complete, undirected_degree,
    DegreeHistogram, DegreeTriple,
};
pub use group::{
    canonicalize, direct_product_element, order_exponent, parse_group_spec, phi_prime_power,
    BudgetError, CanonicalAbelianGroup, CoordinateMap, Element, ElementError, GroupError,
    OrderType, ParseError, PrimePower, UserGroupSpec,
};
pub use oracle::{build_directed, verify, DirectedPowerGraph, PowerGraph, VerifyReport};
pub use scalar::Count;

/// Arbitrary-precision unsigned integer: the default scalar for orders,
/// degrees, and counts.
pub type Nat = num_bigint::BigUint;
