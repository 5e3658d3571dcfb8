//! Brute-force power graphs, built from the group axioms alone.
//!
//! Successor sets come from iterating powers of each element until the cycle
//! closes, so every quantity measured here is independent of the closed-form
//! degree machinery it is used to check.

use std::collections::VecDeque;

use crate::degree::{degree_histogram, degree_triple, edge_count, DegreeHistogram, DegreeTriple};
use crate::group::{BudgetError, CanonicalAbelianGroup, Element};
use crate::scalar::Count;
use crate::Nat;

/// Directed power graph: edge `u -> v` iff `v` is a power of `u`, `v != u`.
#[derive(Clone, Debug)]
pub struct DirectedPowerGraph {
    group: CanonicalAbelianGroup,
    moduli: Vec<u64>,
    strides: Vec<u64>,
    vertices: Vec<Element>,
    /// per vertex, ascending indices of its successors
    successors: Vec<Vec<u32>>,
}

/// Builds the directed power graph of `group` by iterating each element's
/// powers until the identity recurs. Vertex indices follow the group's
/// element enumeration order.
pub fn build_directed(
    group: &CanonicalAbelianGroup,
    budget: u64,
) -> Result<DirectedPowerGraph, BudgetError> {
    // vertex indices are u32
    let budget = budget.min(u32::MAX as u64);
    let order = match group.order_u64() {
        Some(order) if order <= budget => order,
        _ => {
            return Err(BudgetError {
                order: group.order::<Nat>().to_string(),
                budget,
            })
        }
    };
    let n = order as usize;
    let moduli = group.flat_moduli();
    let dim = moduli.len();
    let mut strides = vec![1u64; dim];
    for i in (0..dim.saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * moduli[i + 1];
    }

    let vertices: Vec<Element> = group
        .enumerate_elements(budget)
        .expect("budget already checked")
        .collect();
    debug_assert_eq!(vertices.len(), n);

    let mut successors: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut base = vec![0u64; dim];
    for (u, succ) in successors.iter_mut().enumerate() {
        // decode the vertex index into flat coordinates
        let mut rem = u as u64;
        for i in 0..dim {
            base[i] = rem / strides[i];
            rem %= strides[i];
        }
        if base.iter().all(|&c| c == 0) {
            continue; // identity has no successors
        }
        // walk 2g, 3g, ... until the cycle returns to g itself
        let mut power = base.clone();
        loop {
            let mut index = 0u64;
            for i in 0..dim {
                power[i] = ((power[i] as u128 + base[i] as u128) % moduli[i] as u128) as u64;
                index += power[i] * strides[i];
            }
            if index == u as u64 {
                break;
            }
            succ.push(index as u32);
        }
        succ.sort_unstable();
    }

    Ok(DirectedPowerGraph {
        group: group.clone(),
        moduli,
        strides,
        vertices,
        successors,
    })
}

impl DirectedPowerGraph {
    pub fn group(&self) -> &CanonicalAbelianGroup {
        &self.group
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex(&self, index: usize) -> &Element {
        &self.vertices[index]
    }

    pub fn vertices(&self) -> &[Element] {
        &self.vertices
    }

    pub fn successors(&self, index: usize) -> &[u32] {
        &self.successors[index]
    }

    /// Index of an element under the enumeration order, if it has this
    /// group's shape.
    pub fn index_of(&self, element: &Element) -> Option<usize> {
        let flat: Vec<u64> = element.coords().iter().flatten().copied().collect();
        if flat.len() != self.moduli.len() || flat.iter().zip(&self.moduli).any(|(&c, &m)| c >= m) {
            return None;
        }
        Some(
            flat.iter()
                .zip(&self.strides)
                .map(|(&c, &s)| c * s)
                .sum::<u64>() as usize,
        )
    }

    /// Measured (out-degree, in-degree, bidirectional) of one vertex.
    pub fn triple<C: Count>(&self, index: usize) -> DegreeTriple<C> {
        let target = index as u32;
        let mut in_deg = 0u64;
        let mut bidir = 0u64;
        for (w, succ) in self.successors.iter().enumerate() {
            if w != index && succ.binary_search(&target).is_ok() {
                in_deg += 1;
                if self.successors[index].binary_search(&(w as u32)).is_ok() {
                    bidir += 1;
                }
            }
        }
        DegreeTriple::new(
            C::from(self.successors[index].len() as u64),
            C::from(in_deg),
            C::from(bidir),
        )
    }

    /// Measured triples for every vertex in one pass.
    pub fn all_triples<C: Count>(&self) -> Vec<DegreeTriple<C>> {
        let n = self.vertices.len();
        let mut in_deg = vec![0u64; n];
        let mut bidir = vec![0u64; n];
        for (u, succ) in self.successors.iter().enumerate() {
            for &v in succ {
                in_deg[v as usize] += 1;
                // count each bidirectional pair once, from its lower endpoint
                if (v as usize) > u
                    && self.successors[v as usize]
                        .binary_search(&(u as u32))
                        .is_ok()
                {
                    bidir[u] += 1;
                    bidir[v as usize] += 1;
                }
            }
        }
        (0..n)
            .map(|u| {
                DegreeTriple::new(
                    C::from(self.successors[u].len() as u64),
                    C::from(in_deg[u]),
                    C::from(bidir[u]),
                )
            })
            .collect()
    }

    /// Forgets directions: edge `{u, v}` iff `u -> v` or `v -> u`.
    pub fn to_undirected(&self) -> PowerGraph {
        let n = self.vertices.len();
        // built in ascending u order, so each predecessor list stays sorted
        let mut predecessors: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (u, succ) in self.successors.iter().enumerate() {
            for &v in succ {
                predecessors[v as usize].push(u as u32);
            }
        }
        let mut degrees = vec![0u64; n];
        let mut edges: Vec<(u32, u32)> = Vec::new();
        for u in 0..n {
            // deduplicating merge of the two sorted neighbor lists
            let succ = &self.successors[u];
            let pred = &predecessors[u];
            let (mut i, mut j) = (0, 0);
            while i < succ.len() || j < pred.len() {
                let w = match (succ.get(i), pred.get(j)) {
                    (Some(&a), Some(&b)) if a == b => {
                        i += 1;
                        j += 1;
                        a
                    }
                    (Some(&a), Some(&b)) if a < b => {
                        i += 1;
                        a
                    }
                    (Some(_) | None, Some(&b)) => {
                        j += 1;
                        b
                    }
                    (Some(&a), None) => {
                        i += 1;
                        a
                    }
                    (None, None) => unreachable!(),
                };
                degrees[u] += 1;
                if w as usize > u {
                    edges.push((u as u32, w));
                }
            }
        }
        PowerGraph { degrees, edges }
    }
}

/// Undirected power graph as an explicit simple edge set.
#[derive(Clone, Debug)]
pub struct PowerGraph {
    degrees: Vec<u64>,
    /// sorted, `u < v` per edge
    edges: Vec<(u32, u32)>,
}

impl PowerGraph {
    pub fn vertex_count(&self) -> usize {
        self.degrees.len()
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn edge_count(&self) -> u64 {
        self.edges.len() as u64
    }

    pub fn degree(&self, index: usize) -> u64 {
        self.degrees[index]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn is_complete(&self) -> bool {
        let n = self.degrees.len() as u64;
        self.edge_count() == n * (n - 1) / 2
    }

    pub fn is_connected(&self) -> bool {
        let n = self.degrees.len();
        if n <= 1 {
            return true;
        }
        let mut adjacency: Vec<Vec<u32>> = vec![Vec::new(); n];
        for &(u, v) in &self.edges {
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0u32]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &adjacency[u as usize] {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    reached += 1;
                    queue.push_back(v);
                }
            }
        }
        reached == n
    }
}

/// One element's formula-versus-oracle comparison.
#[derive(Clone, Debug)]
pub struct ElementCheck<C: Count> {
    pub index: usize,
    pub element: Element,
    pub formula: DegreeTriple<C>,
    pub oracle: DegreeTriple<C>,
    pub formula_degree: C,
    pub oracle_degree: C,
}

impl<C: Count> ElementCheck<C> {
    pub fn matches(&self) -> bool {
        self.formula == self.oracle && self.formula_degree == self.oracle_degree
    }
}

/// Full formula-versus-oracle report for one group.
#[derive(Clone, Debug)]
pub struct VerifyReport<C: Count> {
    pub group_name: String,
    pub order: u64,
    pub checks: Vec<ElementCheck<C>>,
    pub formula_edge_count: C,
    pub oracle_edge_count: C,
    pub formula_histogram: DegreeHistogram<C>,
    pub oracle_histogram: DegreeHistogram<C>,
}

impl<C: Count> VerifyReport<C> {
    pub fn mismatches(&self) -> usize {
        self.checks.iter().filter(|c| !c.matches()).count()
    }

    /// Success iff zero element mismatches and the aggregate edge count and
    /// histogram comparisons agree.
    pub fn is_ok(&self) -> bool {
        self.mismatches() == 0
            && self.formula_edge_count == self.oracle_edge_count
            && self.formula_histogram == self.oracle_histogram
    }
}

/// Checks every element's formula triple and undirected degree against the
/// brute-force graph, plus the aggregate edge count and degree histogram.
pub fn verify<C: Count>(
    group: &CanonicalAbelianGroup,
    budget: u64,
) -> Result<VerifyReport<C>, BudgetError> {
    let directed = build_directed(group, budget)?;
    let undirected = directed.to_undirected();
    let oracle_triples = directed.all_triples::<C>();

    let checks: Vec<ElementCheck<C>> = oracle_triples
        .into_iter()
        .enumerate()
        .map(|(index, oracle)| {
            let element = directed.vertex(index).clone();
            let formula = degree_triple::<C>(group, &element);
            let formula_degree = formula.undirected();
            let oracle_degree = C::from(undirected.degree(index));
            ElementCheck {
                index,
                element,
                formula,
                oracle,
                formula_degree,
                oracle_degree,
            }
        })
        .collect();

    Ok(VerifyReport {
        group_name: group.canonical_name(),
        order: directed.vertex_count() as u64,
        checks,
        formula_edge_count: edge_count::<C>(group),
        oracle_edge_count: C::from(undirected.edge_count()),
        formula_histogram: degree_histogram::<C>(group),
        oracle_histogram: DegreeHistogram::from_degrees(
            undirected.degrees().iter().map(|&d| C::from(d)),
        ),
    })
}
