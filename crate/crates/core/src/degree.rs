//! Closed-form vertex degrees in the power graph of a finite abelian group.
//!
//! For a p-group the in-degree of a non-identity element depends only on the
//! group shape and the element's order type; across coprime components the
//! directed quantities compose multiplicatively. Everything else (undirected
//! degree, histograms, edge counts) is derived from those two facts, so no
//! function here ever enumerates group elements.

use std::collections::BTreeMap;
use std::fmt;

use crate::group::{phi_prime_power, CanonicalAbelianGroup, Element, OrderType};
use crate::scalar::{pow, Count};

/// Out-degree, in-degree, and bidirectional-edge count of one vertex in the
/// directed power graph.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DegreeTriple<C> {
    pub out_deg: C,
    pub in_deg: C,
    pub bidir: C,
}

impl<C: Count> DegreeTriple<C> {
    /// # Panics
    ///
    /// Panics unless `bidir <= min(out_deg, in_deg)`.
    pub fn new(out_deg: C, in_deg: C, bidir: C) -> Self {
        assert!(
            bidir <= out_deg && bidir <= in_deg,
            "bidirectional count exceeds a directed degree"
        );
        Self {
            out_deg,
            in_deg,
            bidir,
        }
    }

    /// Undirected degree: `out + in - bidir`.
    pub fn undirected(&self) -> C {
        self.out_deg.clone() + self.in_deg.clone() - self.bidir.clone()
    }
}

impl<C: Count> fmt::Display for DegreeTriple<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(out={} in={} bidir={})",
            self.out_deg, self.in_deg, self.bidir
        )
    }
}

/// In-degree of a non-identity element of an abelian p-group, from the group
/// shape (`exponents`, ascending) and the element's order type `t` alone.
///
/// With `w` maximizing `t`, `k` the first position where `t` is nonzero, and
/// `B = min over j >= k of (m_j - t_j)`, the count is
/// `-1 + phi(p^t_w) * sum for beta in 0..=B of p^(sum_j min(m_j, beta))`.
///
/// # Panics
///
/// Panics if `t` is all zero (the identity is the caller's case), if the
/// slices disagree in length, if `exponents` is not ascending, or if any
/// `t_j > m_j`.
pub fn in_degree_p_component<C: Count>(p: u64, exponents: &[u32], t: &[u32]) -> C {
    assert_eq!(
        exponents.len(),
        t.len(),
        "order type and exponent list differ in length"
    );
    assert!(
        exponents.windows(2).all(|w| w[0] <= w[1]),
        "exponents must be ascending"
    );
    assert!(
        t.iter().zip(exponents).all(|(&ti, &mi)| ti <= mi),
        "order exponent above modulus"
    );

    let first_nonzero = t
        .iter()
        .position(|&ti| ti != 0)
        .expect("identity component: in-degree formula undefined");
    let t_max = *t.iter().max().expect("nonempty");

    // every m_j - t_j with j >= first_nonzero is nonnegative, so the sum has
    // at least the beta = 0 term
    let bound = exponents[first_nonzero..]
        .iter()
        .zip(&t[first_nonzero..])
        .map(|(&m, &ti)| m - ti)
        .min()
        .expect("nonempty");

    let mut sum = C::zero();
    for beta in 0..=bound {
        let inner: u64 = exponents.iter().map(|&m| m.min(beta) as u64).sum();
        sum = sum + pow::<C>(p, u32::try_from(inner).expect("exponent fits u32"));
    }
    phi_prime_power::<C>(p, t_max) * sum - C::one()
}

/// In-degree of the group identity: `|G| - 1` (the identity is a power of
/// every element).
pub fn in_degree_identity<C: Count>(group: &CanonicalAbelianGroup) -> C {
    group.order::<C>() - C::one()
}

/// Composes per-component directed degrees across coprime components:
/// `(product of (d_i + 1)) - 1`. Applies identically to out-degrees,
/// in-degrees, and bidirectional counts.
///
/// # Panics
///
/// Panics on an empty list.
pub fn compose_coprime<C: Count>(parts: &[C]) -> C {
    assert!(!parts.is_empty(), "composition over no components");
    parts
        .iter()
        .fold(C::one(), |acc, d| acc * (d.clone() + C::one()))
        - C::one()
}

/// Composes whole triples fieldwise via [`compose_coprime`].
pub fn compose_triples<C: Count>(parts: &[DegreeTriple<C>]) -> DegreeTriple<C> {
    let field = |f: fn(&DegreeTriple<C>) -> &C| {
        compose_coprime(&parts.iter().map(|t| f(t).clone()).collect::<Vec<C>>())
    };
    DegreeTriple::new(
        field(|t| &t.out_deg),
        field(|t| &t.in_deg),
        field(|t| &t.bidir),
    )
}

/// Degree triple of the vertex with order type `t`, by composing the
/// per-prime component triples.
///
/// A component where `t` vanishes is the identity of that p-component: it
/// contributes out-degree 0, bidirectional count 0, and in-degree
/// `|G(p)| - 1`. The group identity falls out of the same rule.
pub fn degree_triple_of_type<C: Count>(
    group: &CanonicalAbelianGroup,
    t: &OrderType,
) -> DegreeTriple<C> {
    assert_eq!(
        group.components().len(),
        t.per_prime().len(),
        "order type shape mismatch"
    );
    let parts: Vec<DegreeTriple<C>> = group
        .components()
        .iter()
        .zip(t.per_prime())
        .map(|((&p, exps), ts)| {
            assert_eq!(exps.len(), ts.len(), "order type shape mismatch");
            if ts.iter().all(|&x| x == 0) {
                DegreeTriple::new(
                    C::zero(),
                    group.component_order::<C>(p) - C::one(),
                    C::zero(),
                )
            } else {
                let t_max = *ts.iter().max().expect("nonempty");
                DegreeTriple::new(
                    pow::<C>(p, t_max) - C::one(),
                    in_degree_p_component(p, exps, ts),
                    phi_prime_power::<C>(p, t_max) - C::one(),
                )
            }
        })
        .collect();
    compose_triples(&parts)
}

/// Degree triple of `g` in the directed power graph.
pub fn degree_triple<C: Count>(group: &CanonicalAbelianGroup, g: &Element) -> DegreeTriple<C> {
    degree_triple_of_type(group, &group.order_type(g))
}

/// Degree of `g` in the undirected power graph: `|g| - phi(|g|) + d_in(g)`
/// for non-identity `g`, and `|G| - 1` for the identity.
pub fn undirected_degree<C: Count>(group: &CanonicalAbelianGroup, g: &Element) -> C {
    degree_triple::<C>(group, g).undirected()
}

/// Exact histogram of undirected degrees over all group elements.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct DegreeHistogram<C: Count> {
    counts: BTreeMap<C, C>,
}

impl<C: Count> DegreeHistogram<C> {
    /// degree -> number of elements with that degree, ascending by degree
    pub fn counts(&self) -> &BTreeMap<C, C> {
        &self.counts
    }

    /// Tallies one degree observation per item.
    pub fn from_degrees<I: IntoIterator<Item = C>>(degrees: I) -> Self {
        let mut h = Self {
            counts: BTreeMap::new(),
        };
        for d in degrees {
            h.add(d, C::one());
        }
        h
    }

    fn add(&mut self, degree: C, count: C) {
        let slot = self.counts.entry(degree).or_insert_with(C::zero);
        *slot = slot.clone() + count;
    }

    /// Total number of elements tallied.
    pub fn total(&self) -> C {
        self.counts
            .values()
            .fold(C::zero(), |acc, c| acc + c.clone())
    }

    /// Sum of degree * count over the histogram.
    pub fn degree_sum(&self) -> C {
        self.counts
            .iter()
            .fold(C::zero(), |acc, (d, c)| acc + d.clone() * c.clone())
    }
}

/// Degree histogram computed without enumerating elements: iterate the
/// per-coordinate order-exponent ranges (a mixed-radix counter of size
/// `product of (m + 1)`), weight each order type by the number of elements
/// realizing it, and evaluate the composed degree once per order type.
pub fn degree_histogram<C: Count>(group: &CanonicalAbelianGroup) -> DegreeHistogram<C> {
    let coords: Vec<(u64, u32)> = group
        .components()
        .iter()
        .flat_map(|(&p, exps)| exps.iter().map(move |&m| (p, m)))
        .collect();
    let row_lens: Vec<usize> = group.components().values().map(Vec::len).collect();

    let mut histogram = DegreeHistogram {
        counts: BTreeMap::new(),
    };
    let mut t = vec![0u32; coords.len()];
    loop {
        // elements with this order type: product of phi(p^t) per coordinate
        let weight = t.iter().zip(&coords).fold(C::one(), |acc, (&ti, &(p, _))| {
            acc * phi_prime_power::<C>(p, ti)
        });

        let mut rows = Vec::with_capacity(row_lens.len());
        let mut offset = 0;
        for &len in &row_lens {
            rows.push(t[offset..offset + len].to_vec());
            offset += len;
        }
        let order_type = OrderType::from_rows(rows);
        let degree = degree_triple_of_type::<C>(group, &order_type).undirected();
        histogram.add(degree, weight);

        // advance the mixed-radix counter, last coordinate fastest
        let mut i = coords.len();
        loop {
            if i == 0 {
                return histogram;
            }
            i -= 1;
            if t[i] < coords[i].1 {
                t[i] += 1;
                break;
            }
            t[i] = 0;
        }
    }
}

/// Number of edges in the undirected power graph, by handshake summation
/// over the degree histogram.
///
/// # Panics
///
/// Panics if the degree sum is odd, which would mean the degree formulas are
/// broken (handshake lemma).
pub fn edge_count<C: Count>(group: &CanonicalAbelianGroup) -> C {
    let sum = degree_histogram::<C>(group).degree_sum();
    let two = C::from(2);
    assert!(
        (sum.clone() % two.clone()).is_zero(),
        "handshake parity violated: degree sum {sum} is odd"
    );
    sum / two
}

/// True iff the power graph is complete, i.e. the group is cyclic of
/// prime-power order (one prime, one exponent).
pub fn is_complete(group: &CanonicalAbelianGroup) -> bool {
    group.components().len() == 1
        && group.components().values().next().expect("nonempty").len() == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{canonicalize, parse_group_spec, CoordinateMap};
    use crate::Nat;

    fn group_of(spec: &str) -> (CanonicalAbelianGroup, CoordinateMap) {
        canonicalize(&parse_group_spec(spec).unwrap())
    }

    #[test]
    fn in_degree_p_component_examples() {
        // Z2 x Z2: no h != g has g as a power
        assert_eq!(in_degree_p_component::<u64>(2, &[1, 1], &[1, 0]), 0);
        // Z2 x Z4: the four order-4 elements contain (0,2) in their cyclic subgroups
        assert_eq!(in_degree_p_component::<u64>(2, &[1, 2], &[0, 1]), 4);
        // Z2 x Z4: only (1,3) generates a cyclic subgroup containing (1,1) besides itself
        assert_eq!(in_degree_p_component::<u64>(2, &[1, 2], &[1, 2]), 1);
    }

    #[test]
    fn in_degree_cyclic_p_group_closed_form() {
        // single-coordinate case collapses to p^m - p^(k-1) - 1
        for &p in &[2u64, 3, 5, 7] {
            for m in 1..=6u32 {
                if crate::arith::checked_pow(p, m).is_none_or(|v| v > 2048) {
                    continue;
                }
                for k in 1..=m {
                    let expected = crate::arith::checked_pow(p, m).unwrap()
                        - crate::arith::checked_pow(p, k - 1).unwrap()
                        - 1;
                    assert_eq!(in_degree_p_component::<u64>(p, &[m], &[k]), expected);
                }
            }
        }
    }

    #[test]
    #[should_panic(expected = "identity component")]
    fn in_degree_rejects_identity_type() {
        in_degree_p_component::<u64>(2, &[1, 2], &[0, 0]);
    }

    #[test]
    fn in_degree_identity_examples() {
        assert_eq!(in_degree_identity::<u64>(&group_of("Z2").0), 1);
        assert_eq!(in_degree_identity::<u64>(&group_of("Z4xZ2").0), 7);
        assert_eq!(in_degree_identity::<u64>(&group_of("Z12").0), 11);
    }

    #[test]
    fn compose_coprime_examples() {
        assert_eq!(compose_coprime::<u64>(&[0, 2]), 2);
        assert_eq!(compose_coprime::<u64>(&[5]), 5);
        assert_eq!(compose_coprime::<u64>(&[1, 1, 1]), 7);
    }

    #[test]
    fn degree_triple_examples() {
        let (g, map) = group_of("Z4");
        let t = degree_triple::<u64>(&g, &map.map_element(&[2]).unwrap());
        assert_eq!(t, DegreeTriple::new(1, 2, 0));

        let (g, map) = group_of("Z6");
        let t = degree_triple::<u64>(&g, &map.map_element(&[3]).unwrap());
        assert_eq!(t, DegreeTriple::new(1, 2, 0));

        for n in [4u64, 6, 9, 30] {
            let (g, _) = group_of(&format!("Z{n}"));
            let t = degree_triple::<u64>(&g, &g.identity());
            assert_eq!(t, DegreeTriple::new(0, n - 1, 0));
        }
    }

    #[test]
    fn undirected_degree_examples() {
        let (g, map) = group_of("Z4");
        for r in 0..4 {
            assert_eq!(
                undirected_degree::<u64>(&g, &map.map_element(&[r]).unwrap()),
                3
            );
        }

        let (g, map) = group_of("Z6");
        assert_eq!(
            undirected_degree::<u64>(&g, &map.map_element(&[3]).unwrap()),
            3
        );

        let (g, map) = group_of("Z4xZ2");
        assert_eq!(
            undirected_degree::<u64>(&g, &map.map_element(&[2, 0]).unwrap()),
            5
        );
    }

    #[test]
    fn histogram_examples() {
        let hist = |spec: &str| {
            degree_histogram::<u64>(&group_of(spec).0)
                .counts()
                .iter()
                .map(|(&d, &c)| (d, c))
                .collect::<Vec<_>>()
        };
        assert_eq!(hist("Z4"), vec![(3, 4)]);
        assert_eq!(hist("Z2xZ2"), vec![(1, 3), (3, 1)]);
        // Z6 by brute force: 1 and 5 see everything; 2 and 4 miss only 3
        // (they generate each other); 3 is adjacent to 0, 1, 5 alone.
        assert_eq!(hist("Z6"), vec![(3, 1), (4, 2), (5, 3)]);
    }

    #[test]
    fn histogram_totals_match_order() {
        for spec in ["Z4", "Z2xZ2", "Z6", "Z8xZ9", "Z30"] {
            let (g, _) = group_of(spec);
            assert_eq!(
                degree_histogram::<u64>(&g).total(),
                g.order::<u64>(),
                "{spec}"
            );
        }
    }

    #[test]
    fn histogram_scales_without_enumeration() {
        let g = CanonicalAbelianGroup::from_components([(2u64, vec![8, 8, 8]), (3, vec![5, 5])])
            .unwrap();
        let h = degree_histogram::<Nat>(&g);
        assert_eq!(h.total(), g.order::<Nat>());
        assert_eq!(g.order::<Nat>(), Nat::from(990_677_827_584u64));
    }

    #[test]
    fn edge_count_examples() {
        assert_eq!(edge_count::<u64>(&group_of("Z4").0), 6); // K4
        assert_eq!(edge_count::<u64>(&group_of("Z2xZ2").0), 3); // star
        assert_eq!(edge_count::<u64>(&group_of("Z6").0), 13);
        assert_eq!(edge_count::<u64>(&group_of("Z8").0), 28); // K8
    }

    #[test]
    fn is_complete_examples() {
        assert!(is_complete(&group_of("Z8").0));
        assert!(!is_complete(&group_of("Z2xZ2").0));
        assert!(!is_complete(&group_of("Z12").0));
        assert!(is_complete(&group_of("Z7").0));
    }

    #[test]
    fn complete_groups_have_constant_histogram() {
        for spec in ["Z8", "Z7", "Z9", "Z16"] {
            let (g, _) = group_of(spec);
            let n = g.order::<u64>();
            let h = degree_histogram::<u64>(&g);
            assert_eq!(h.counts().iter().collect::<Vec<_>>(), vec![(&(n - 1), &n)]);
        }
    }

    #[test]
    fn triple_works_at_any_scalar() {
        let (g, map) = group_of("Z4xZ2");
        let e = map.map_element(&[2, 0]).unwrap();
        let small = degree_triple::<u64>(&g, &e);
        let big = degree_triple::<Nat>(&g, &e);
        assert_eq!(Nat::from(small.out_deg), big.out_deg);
        assert_eq!(Nat::from(small.in_deg), big.in_deg);
        assert_eq!(Nat::from(small.bidir), big.bidir);
    }

    #[test]
    #[should_panic(expected = "composition over no components")]
    fn compose_rejects_empty() {
        compose_coprime::<u64>(&[]);
    }

    #[test]
    fn undirected_satisfies_the_order_phi_identity() {
        // d(g) = |g| - phi(|g|) + d_in(g) for non-identity g, with
        // d_out(g) = |g| - 1 and bidir(g) = phi(|g|) - 1
        for spec in ["Z6", "Z4xZ2", "Z8xZ9", "Z30"] {
            let (g, _) = group_of(spec);
            for e in g
                .enumerate_elements(512)
                .unwrap()
                .filter(|e| !e.is_identity())
            {
                let triple = degree_triple::<u64>(&g, &e);
                let order = g.element_order::<u64>(&e);
                let phi: u64 = g
                    .primes()
                    .zip(g.order_type(&e).per_prime())
                    .map(|(p, ts)| phi_prime_power::<u64>(p, *ts.iter().max().unwrap()))
                    .product();
                assert_eq!(triple.undirected(), order - phi + triple.in_deg);
                assert_eq!(triple.out_deg, order - 1);
                assert_eq!(triple.bidir, phi - 1);
            }
        }
    }
}
