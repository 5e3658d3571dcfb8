//! Acceptance suite: exhaustive correctness gates for the degree formulas.
//!
//! Each test prints one `criterion N ... PASS` line (visible with
//! `cargo test --test acceptance -- --nocapture`); a failed assertion marks
//! the criterion FAIL.

use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use powergraph_core::{
    arith, build_directed, canonicalize, compose_triples, degree_histogram, degree_triple,
    direct_product_element, is_complete, parse_group_spec, phi_prime_power, undirected_degree,
    verify, CanonicalAbelianGroup, Nat,
};

const SWEEP_MAX_ORDER: u64 = 512;

fn sweep() -> Vec<CanonicalAbelianGroup> {
    powergraph_core::classify::abelian_groups_up_to(SWEEP_MAX_ORDER)
}

/// Every prime power p^m <= 2048: each vertex of Z_{p^m} has formula degree
/// p^m - 1 and the brute-force graph is complete. Exact equality.
#[test]
fn criterion_1_prime_power_completeness() {
    let mut prime_powers = Vec::new();
    for p in (2u64..=2048).filter(|&p| arith::is_prime(p)) {
        let mut m = 1u32;
        while let Some(value) = arith::checked_pow(p, m).filter(|&v| v <= 2048) {
            prime_powers.push((p, m, value));
            m += 1;
        }
    }
    assert!(prime_powers.iter().any(|&(p, m, _)| p == 2 && m == 11)); // 2048 itself

    for &(p, m, n) in &prime_powers {
        let group = CanonicalAbelianGroup::from_components([(p, vec![m])]).unwrap();
        let expected = Nat::from(n - 1);
        for element in group.enumerate_elements(2048).unwrap() {
            assert_eq!(
                undirected_degree::<Nat>(&group, &element),
                expected,
                "formula degree in Z_{p}^{m}"
            );
        }
        let oracle = build_directed(&group, 2048).unwrap().to_undirected();
        assert!(
            oracle.is_complete(),
            "oracle graph of Z_{n} is not complete"
        );
    }
    println!(
        "criterion 1 (prime-power completeness, {} groups): PASS",
        prime_powers.len()
    );
}

/// Every abelian group of order <= 512, every element: formula triple and
/// undirected degree equal the brute-force oracle. Zero mismatches.
#[test]
fn criterion_2_oracle_equivalence_sweep() {
    let groups = sweep();
    let mut elements = 0u64;
    for group in &groups {
        let report = verify::<Nat>(group, SWEEP_MAX_ORDER).unwrap();
        elements += report.order;
        assert_eq!(
            report.mismatches(),
            0,
            "mismatches in {}",
            group.canonical_name()
        );
        assert!(
            report.is_ok(),
            "aggregate mismatch in {}",
            group.canonical_name()
        );
    }
    println!(
        "criterion 2 (oracle equivalence, {} groups, {elements} elements): PASS",
        groups.len()
    );
}

/// Across the sweep, the oracle graph is complete exactly for cyclic groups
/// of prime-power order. Zero exceptions.
#[test]
fn criterion_3_completeness_iff() {
    let groups = sweep();
    let mut complete = 0usize;
    for group in &groups {
        let oracle = build_directed(group, SWEEP_MAX_ORDER)
            .unwrap()
            .to_undirected();
        assert_eq!(
            oracle.is_complete(),
            is_complete(group),
            "completeness disagreement for {}",
            group.canonical_name()
        );
        complete += usize::from(oracle.is_complete());
    }
    println!(
        "criterion 3 (completeness iff cyclic prime power, {complete}/{} complete): PASS",
        groups.len()
    );
}

/// 200 random coprime pairs (A, B) with |A|*|B| <= 512: per-element triples
/// on A x B equal the composition of the component triples. Zero mismatches.
#[test]
fn criterion_4_composition_coherence() {
    let groups = sweep();
    let mut candidates = Vec::new();
    for (i, a) in groups.iter().enumerate() {
        for (j, b) in groups.iter().enumerate() {
            let (na, nb) = (a.order_u64().unwrap(), b.order_u64().unwrap());
            if na * nb <= 512 && arith::gcd(na, nb) == 1 {
                candidates.push((i, j));
            }
        }
    }
    assert!(
        candidates.len() >= 200,
        "need enough coprime pairs to sample"
    );

    let mut rng = StdRng::seed_from_u64(0x5EED_CA7A);
    let mut checked_elements = 0u64;
    for _ in 0..200 {
        let (i, j) = candidates[rng.random_range(0..candidates.len())];
        let (a, b) = (&groups[i], &groups[j]);
        let product = a.direct_product(b).unwrap();
        for ea in a.enumerate_elements(512).unwrap() {
            let ta = degree_triple::<Nat>(a, &ea);
            for eb in b.enumerate_elements(512).unwrap() {
                let tb = degree_triple::<Nat>(b, &eb);
                let combined = direct_product_element(a, &ea, b, &eb);
                assert_eq!(
                    degree_triple::<Nat>(&product, &combined),
                    compose_triples(&[ta.clone(), tb]),
                    "composition mismatch on {} x {}",
                    a.canonical_name(),
                    b.canonical_name()
                );
                checked_elements += 1;
            }
        }
    }
    println!("criterion 4 (composition coherence, 200 pairs, {checked_elements} elements): PASS");
}

/// On the sweep, measured out-degree = |u| - 1 for all u and measured
/// bidirectional count = phi(|u|) - 1 for u != identity. Zero exceptions.
#[test]
fn criterion_5_directed_graph_laws() {
    let groups = sweep();
    let mut elements = 0u64;
    for group in &groups {
        let directed = build_directed(group, SWEEP_MAX_ORDER).unwrap();
        for (u, triple) in directed.all_triples::<Nat>().into_iter().enumerate() {
            let element = directed.vertex(u);
            let order = group.element_order::<Nat>(element);
            assert_eq!(
                triple.out_deg,
                order.clone() - Nat::from(1u32),
                "out-degree law at vertex {u} of {}",
                group.canonical_name()
            );
            if !element.is_identity() {
                let phi = group
                    .primes()
                    .zip(group.order_type(element).per_prime())
                    .fold(Nat::from(1u32), |acc, (p, ts)| {
                        acc * phi_prime_power::<Nat>(p, *ts.iter().max().unwrap())
                    });
                assert_eq!(
                    triple.bidir,
                    phi - Nat::from(1u32),
                    "bidirectional law at vertex {u} of {}",
                    group.canonical_name()
                );
            }
            elements += 1;
        }
    }
    println!("criterion 5 (directed-graph laws, {elements} vertices): PASS");
}

/// The histogram of (Z_{2^8})^3 x (Z_{3^5})^2 (order ~9.9e11) finishes in
/// under 5 seconds, its counts sum to the group order, and the degree sum is
/// even (handshake parity).
#[test]
fn criterion_6_histogram_scalability() {
    let group =
        CanonicalAbelianGroup::from_components([(2u64, vec![8, 8, 8]), (3, vec![5, 5])]).unwrap();
    let started = Instant::now();
    let histogram = degree_histogram::<Nat>(&group);
    let elapsed = started.elapsed();

    assert_eq!(histogram.total(), group.order::<Nat>());
    assert_eq!(group.order::<Nat>(), Nat::from(990_677_827_584u64));
    assert_eq!(
        histogram.degree_sum() % Nat::from(2u32),
        Nat::from(0u32),
        "handshake parity violated"
    );
    assert!(
        elapsed.as_secs_f64() < 5.0,
        "histogram took {elapsed:?}, budget 5s"
    );
    println!(
        "criterion 6 (histogram at order {} in {elapsed:?}, {} distinct degrees): PASS",
        group.order::<Nat>(),
        histogram.counts().len()
    );
}

/// Hand-checked fixtures, each confirmed by the oracle graph and by formula.
#[test]
fn criterion_7_hand_checked_fixtures() {
    // (spec, element residues, expected undirected degree)
    let fixtures: [(&str, &[u64], u64); 3] = [
        ("Z6", &[3], 3),
        ("Z4xZ2", &[2, 0], 5),
        ("Z2xZ2", &[1, 0], 1),
    ];

    for (spec, residues, expected) in fixtures {
        let (group, map) = canonicalize(&parse_group_spec(spec).unwrap());
        let element = map.map_element(residues).unwrap();
        assert_eq!(
            undirected_degree::<Nat>(&group, &element),
            Nat::from(expected),
            "formula fixture {spec} {residues:?}"
        );
        let directed = build_directed(&group, 64).unwrap();
        let index = directed.index_of(&element).unwrap();
        assert_eq!(
            directed.to_undirected().degree(index),
            expected,
            "oracle fixture {spec} {residues:?}"
        );
    }
    // every non-identity vertex of the Klein four-group has degree 1
    let (group, _) = canonicalize(&parse_group_spec("Z2xZ2").unwrap());
    for element in group
        .enumerate_elements(64)
        .unwrap()
        .filter(|e| !e.is_identity())
    {
        assert_eq!(undirected_degree::<Nat>(&group, &element), Nat::from(1u32));
    }
    println!("criterion 7 (hand-checked fixtures): PASS");
}
