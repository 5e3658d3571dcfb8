//! Finite abelian groups in canonical form.
//!
//! A user-supplied factor list (`Z4xZ2`, `12,3`, ...) is split factor by
//! factor into prime-power cyclic parts, the parts are grouped by prime with
//! exponents sorted ascending, and elements live in those canonical
//! coordinates. The [`CoordinateMap`] remembers the bijection back to the
//! user's factors.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::arith::{self, checked_pow, factorize, inv_mod, is_prime};
use crate::scalar::{pow, Count};

/// A prime together with a positive exponent.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PrimePower {
    pub prime: u64,
    pub exponent: u32,
}

impl PrimePower {
    pub fn new(prime: u64, exponent: u32) -> Result<Self, GroupError> {
        if !is_prime(prime) {
            return Err(GroupError::NotPrime(prime));
        }
        if exponent == 0 {
            return Err(GroupError::ZeroExponent(prime));
        }
        Ok(Self { prime, exponent })
    }

    /// The value `p^e`, which is required to fit in a `u64`.
    pub fn value(&self) -> u64 {
        checked_pow(self.prime, self.exponent).expect("prime power exceeds 64 bits")
    }
}

/// An ordered list of cyclic factor moduli exactly as the user wrote them.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UserGroupSpec {
    factors: Vec<u64>,
}

impl UserGroupSpec {
    /// Builds a spec from raw moduli, rejecting trivial factors.
    pub fn new(factors: Vec<u64>) -> Result<Self, ParseError> {
        if factors.is_empty() {
            return Err(ParseError::Empty);
        }
        for (i, &f) in factors.iter().enumerate() {
            if f < 2 {
                return Err(ParseError::TrivialFactor {
                    factor: f,
                    position: i,
                });
            }
        }
        Ok(Self { factors })
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }
}

/// Errors from [`parse_group_spec`]. Positions are byte offsets into the input.
#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum ParseError {
    #[error("empty group spec")]
    Empty,
    #[error("syntax error at offset {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("trivial factor {factor} at offset {position}: factors must be at least 2")]
    TrivialFactor { factor: u64, position: usize },
    #[error("factor at offset {position} exceeds 64 bits")]
    FactorTooLarge { position: usize },
}

/// Errors constructing groups or interpreting elements.
#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum GroupError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} has a zero exponent")]
    ZeroExponent(u64),
    #[error("exponent list for prime {0} is not ascending")]
    NotAscending(u64),
    #[error("prime {0} appears in both operands of a coprime product")]
    SharedPrime(u64),
    #[error("duplicate prime {0} in component list")]
    DuplicatePrime(u64),
    #[error("coordinate modulus {prime}^{exponent} exceeds 64 bits")]
    CoordinateOverflow { prime: u64, exponent: u32 },
    #[error("trivial group: at least one non-trivial component is required")]
    Trivial,
}

/// Errors mapping user residues onto canonical coordinates.
#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum ElementError {
    #[error("expected {expected} residues (one per factor), got {actual}")]
    ResidueCountMismatch { expected: usize, actual: usize },
    #[error("residue {index} is not a nonnegative integer: {text:?}")]
    InvalidResidue { index: usize, text: String },
    #[error("coordinate shape does not match this group")]
    ShapeMismatch,
    #[error("coordinate {position} for prime {prime} is {value}, outside its modulus {modulus}")]
    ResidueOutOfRange {
        prime: u64,
        position: usize,
        value: u64,
        modulus: u64,
    },
}

/// Raised when a group is too large for exhaustive enumeration.
#[derive(Clone, PartialEq, Eq, Debug, Error)]
#[error("group order {order} exceeds the enumeration budget {budget}")]
pub struct BudgetError {
    /// Decimal group order (may exceed u64, hence a string).
    pub order: String,
    pub budget: u64,
}

/// Parses the group-spec grammar.
///
/// `spec := factor ("x" factor)*` with `factor := ("Z"|"z")? digits`, or a
/// comma-separated list of plain digit runs. Whitespace between tokens is
/// ignored; `x`/`X` separate factors.
pub fn parse_group_spec(text: &str) -> Result<UserGroupSpec, ParseError> {
    let comma_form = text.contains(',');
    let mut factors: Vec<(u64, usize)> = Vec::new();
    let mut chars = text.char_indices().peekable();

    loop {
        // skip whitespace before a factor
        while matches!(chars.peek(), Some(&(_, c)) if c.is_whitespace()) {
            chars.next();
        }
        let &(start, first) = match chars.peek() {
            Some(pc) => pc,
            None if factors.is_empty() => return Err(ParseError::Empty),
            None => {
                return Err(ParseError::Syntax {
                    position: text.len(),
                    message: "expected a factor after separator".into(),
                })
            }
        };

        if matches!(first, 'Z' | 'z') {
            if comma_form {
                return Err(ParseError::Syntax {
                    position: start,
                    message: "'Z' prefix is not allowed in the comma-separated form".into(),
                });
            }
            chars.next();
        }

        // digit run
        let digit_start = match chars.peek() {
            Some(&(pos, c)) if c.is_ascii_digit() => pos,
            Some(&(pos, c)) => {
                return Err(ParseError::Syntax {
                    position: pos,
                    message: format!("expected digits, found {c:?}"),
                })
            }
            None => {
                return Err(ParseError::Syntax {
                    position: text.len(),
                    message: "expected digits at end of input".into(),
                })
            }
        };
        let mut value: u64 = 0;
        let mut overflowed = false;
        while let Some(&(_, c)) = chars.peek() {
            let Some(d) = c.to_digit(10) else { break };
            value = match value.checked_mul(10).and_then(|v| v.checked_add(d as u64)) {
                Some(v) => v,
                None => {
                    overflowed = true;
                    0
                }
            };
            chars.next();
        }
        if overflowed {
            return Err(ParseError::FactorTooLarge {
                position: digit_start,
            });
        }
        if value < 2 {
            return Err(ParseError::TrivialFactor {
                factor: value,
                position: start,
            });
        }
        factors.push((value, start));

        // skip whitespace before a separator
        while matches!(chars.peek(), Some(&(_, c)) if c.is_whitespace()) {
            chars.next();
        }
        match chars.next() {
            None => break,
            Some((_, c)) if (comma_form && c == ',') || (!comma_form && matches!(c, 'x' | 'X')) => {
            }
            Some((pos, c)) => {
                let sep = if comma_form { "','" } else { "'x'" };
                return Err(ParseError::Syntax {
                    position: pos,
                    message: format!("expected separator {sep}, found {c:?}"),
                });
            }
        }
    }

    UserGroupSpec::new(factors.into_iter().map(|(v, _)| v).collect())
}

/// A finite abelian group as, per prime, an ascending list of prime-power
/// exponents. This form identifies the group up to isomorphism.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CanonicalAbelianGroup {
    /// prime -> ascending exponents m_1 <= ... <= m_n, each >= 1
    components: BTreeMap<u64, Vec<u32>>,
}

impl CanonicalAbelianGroup {
    /// Builds a group from per-prime exponent lists, validating every invariant.
    pub fn from_components<I>(components: I) -> Result<Self, GroupError>
    where
        I: IntoIterator<Item = (u64, Vec<u32>)>,
    {
        let mut map = BTreeMap::new();
        for (p, exps) in components {
            if !is_prime(p) {
                return Err(GroupError::NotPrime(p));
            }
            if exps.is_empty() || exps.contains(&0) {
                return Err(GroupError::ZeroExponent(p));
            }
            if exps.windows(2).any(|w| w[0] > w[1]) {
                return Err(GroupError::NotAscending(p));
            }
            for &e in &exps {
                if checked_pow(p, e).is_none() {
                    return Err(GroupError::CoordinateOverflow {
                        prime: p,
                        exponent: e,
                    });
                }
            }
            if map.insert(p, exps).is_some() {
                return Err(GroupError::DuplicatePrime(p));
            }
        }
        if map.is_empty() {
            return Err(GroupError::Trivial);
        }
        Ok(Self { components: map })
    }

    pub fn components(&self) -> &BTreeMap<u64, Vec<u32>> {
        &self.components
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.components.keys().copied()
    }

    pub fn exponents(&self, prime: u64) -> Option<&[u32]> {
        self.components.get(&prime).map(|v| v.as_slice())
    }

    /// The canonical cyclic factors, primes ascending then exponents
    /// ascending; one per coordinate.
    pub fn prime_power_factors(&self) -> Vec<PrimePower> {
        self.components
            .iter()
            .flat_map(|(&prime, exps)| {
                exps.iter()
                    .map(move |&exponent| PrimePower { prime, exponent })
            })
            .collect()
    }

    /// Group order as any exact scalar.
    pub fn order<C: Count>(&self) -> C {
        self.components.iter().fold(C::one(), |acc, (&p, exps)| {
            acc * pow::<C>(p, exps.iter().sum())
        })
    }

    /// Group order if it fits in a `u64`.
    pub fn order_u64(&self) -> Option<u64> {
        self.components.iter().try_fold(1u64, |acc, (&p, exps)| {
            exps.iter()
                .try_fold(acc, |a, &e| a.checked_mul(checked_pow(p, e)?))
        })
    }

    /// Order of the component subgroup for `prime` (`p^(sum of exponents)`).
    pub fn component_order<C: Count>(&self, prime: u64) -> C {
        match self.components.get(&prime) {
            Some(exps) => pow(prime, exps.iter().sum()),
            None => C::one(),
        }
    }

    /// Moduli `p^m` of every canonical coordinate, grouped per prime.
    pub fn coordinate_moduli(&self) -> Vec<Vec<u64>> {
        self.components
            .iter()
            .map(|(&p, exps)| {
                exps.iter()
                    .map(|&e| checked_pow(p, e).expect("validated"))
                    .collect()
            })
            .collect()
    }

    /// Coordinate moduli in flat enumeration order (primes ascending, then
    /// positions ascending). The last coordinate varies fastest.
    pub(crate) fn flat_moduli(&self) -> Vec<u64> {
        self.coordinate_moduli().into_iter().flatten().collect()
    }

    /// Canonical display name, e.g. `Z2xZ4xZ3` for {2: [1, 2], 3: [1]}.
    pub fn canonical_name(&self) -> String {
        let parts: Vec<String> = self
            .prime_power_factors()
            .iter()
            .map(|pp| format!("Z{}", pp.value()))
            .collect();
        parts.join("x")
    }

    pub fn identity(&self) -> Element {
        Element {
            coords: self
                .components
                .values()
                .map(|exps| vec![0u64; exps.len()])
                .collect(),
        }
    }

    /// Wraps raw canonical coordinates, checking shape and ranges.
    pub fn element_from_coords(&self, coords: Vec<Vec<u64>>) -> Result<Element, ElementError> {
        let moduli = self.coordinate_moduli();
        if coords.len() != moduli.len() {
            return Err(ElementError::ShapeMismatch);
        }
        for (((&prime, _), row), mods) in self.components.iter().zip(&coords).zip(&moduli) {
            if row.len() != mods.len() {
                return Err(ElementError::ShapeMismatch);
            }
            for (position, (&value, &modulus)) in row.iter().zip(mods).enumerate() {
                if value >= modulus {
                    return Err(ElementError::ResidueOutOfRange {
                        prime,
                        position,
                        value,
                        modulus,
                    });
                }
            }
        }
        Ok(Element { coords })
    }

    /// Componentwise sum of two elements.
    pub fn add(&self, a: &Element, b: &Element) -> Element {
        let coords = self
            .coordinate_moduli()
            .iter()
            .zip(a.coords.iter().zip(&b.coords))
            .map(|(mods, (ra, rb))| {
                mods.iter()
                    .zip(ra.iter().zip(rb))
                    .map(|(&m, (&x, &y))| ((x as u128 + y as u128) % m as u128) as u64)
                    .collect()
            })
            .collect();
        Element { coords }
    }

    /// Per-coordinate order exponents of `g`.
    ///
    /// # Panics
    ///
    /// Panics if `g` does not have this group's coordinate shape.
    pub fn order_type(&self, g: &Element) -> OrderType {
        assert_eq!(
            g.coords.len(),
            self.components.len(),
            "element/group shape mismatch"
        );
        let exponents = self
            .components
            .iter()
            .zip(&g.coords)
            .map(|((&p, exps), row)| {
                assert_eq!(row.len(), exps.len(), "element/group shape mismatch");
                exps.iter()
                    .zip(row)
                    .map(|(&m, &i)| order_exponent(p, m, i))
                    .collect()
            })
            .collect();
        OrderType { exponents }
    }

    /// Order of `g`: the product over primes of `p^(max t)`.
    pub fn element_order<C: Count>(&self, g: &Element) -> C {
        let t = self.order_type(g);
        self.primes()
            .zip(t.per_prime())
            .fold(C::one(), |acc, (p, ts)| {
                acc * pow::<C>(p, ts.iter().copied().max().unwrap_or(0))
            })
    }

    /// Streams every element exactly once, identity first, in lexicographic
    /// coordinate order. Fails if the group order exceeds `budget`.
    pub fn enumerate_elements(&self, budget: u64) -> Result<Elements<'_>, BudgetError> {
        match self.order_u64() {
            Some(order) if order <= budget => {
                let moduli = self.flat_moduli();
                let start = vec![0u64; moduli.len()];
                Ok(Elements {
                    group: self,
                    moduli,
                    next: Some(start),
                })
            }
            _ => Err(BudgetError {
                order: self.order::<crate::Nat>().to_string(),
                budget,
            }),
        }
    }

    /// Direct product with a group over disjoint primes.
    pub fn direct_product(&self, other: &Self) -> Result<Self, GroupError> {
        let mut components = self.components.clone();
        for (&p, exps) in &other.components {
            if components.insert(p, exps.clone()).is_some() {
                return Err(GroupError::SharedPrime(p));
            }
        }
        Ok(Self { components })
    }

    pub(crate) fn element_from_flat(&self, flat: &[u64]) -> Element {
        let mut coords = Vec::with_capacity(self.components.len());
        let mut offset = 0;
        for exps in self.components.values() {
            coords.push(flat[offset..offset + exps.len()].to_vec());
            offset += exps.len();
        }
        Element { coords }
    }
}

/// Combines elements of two coprime groups into an element of their direct
/// product (componentwise, primes merged in ascending order).
pub fn direct_product_element(
    a: &CanonicalAbelianGroup,
    ea: &Element,
    b: &CanonicalAbelianGroup,
    eb: &Element,
) -> Element {
    let mut rows: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for (p, row) in a.primes().zip(&ea.coords) {
        rows.insert(p, row.clone());
    }
    for (p, row) in b.primes().zip(&eb.coords) {
        rows.insert(p, row.clone());
    }
    Element {
        coords: rows.into_values().collect(),
    }
}

/// Iterator over all elements of a group in lexicographic coordinate order.
#[derive(Debug)]
pub struct Elements<'a> {
    group: &'a CanonicalAbelianGroup,
    moduli: Vec<u64>,
    next: Option<Vec<u64>>,
}

impl Iterator for Elements<'_> {
    type Item = Element;

    fn next(&mut self) -> Option<Element> {
        let current = self.next.take()?;
        let element = self.group.element_from_flat(&current);
        // increment the last coordinate first
        let mut succ = current;
        for (i, &m) in self.moduli.iter().enumerate().rev() {
            succ[i] += 1;
            if succ[i] < m {
                self.next = Some(succ);
                return Some(element);
            }
            succ[i] = 0;
        }
        Some(element) // counter wrapped: this was the final element
    }
}

/// A group element as residue vectors in canonical coordinates, aligned with
/// the group's per-prime exponent lists (primes ascending).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Element {
    coords: Vec<Vec<u64>>,
}

impl Element {
    pub fn coords(&self) -> &[Vec<u64>] {
        &self.coords
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(|row| row.iter().all(|&r| r == 0))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .coords
            .iter()
            .map(|row| row.iter().map(u64::to_string).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "({})", rows.join(";"))
    }
}

/// Per-prime vectors of order exponents `t` (coordinate order = `p^t`).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct OrderType {
    exponents: Vec<Vec<u32>>,
}

impl OrderType {
    pub fn per_prime(&self) -> &[Vec<u32>] {
        &self.exponents
    }

    pub fn is_identity(&self) -> bool {
        self.exponents.iter().all(|row| row.iter().all(|&t| t == 0))
    }

    pub(crate) fn from_rows(exponents: Vec<Vec<u32>>) -> Self {
        Self { exponents }
    }
}

/// Order exponent of residue `i` in the cyclic group of order `p^m`:
/// the `t` with `p^t = p^m / gcd(p^m, i)`, taking `i = 0` to `t = 0`.
pub fn order_exponent(p: u64, m: u32, residue: u64) -> u32 {
    if residue == 0 {
        return 0;
    }
    let mut v = 0;
    let mut r = residue;
    while r.is_multiple_of(p) {
        r /= p;
        v += 1;
    }
    m - v.min(m)
}

/// Euler's totient of a prime power: `phi(p^t)`, with `phi(1) = 1`.
pub fn phi_prime_power<C: Count>(p: u64, t: u32) -> C {
    if t == 0 {
        C::one()
    } else {
        pow::<C>(p, t) - pow::<C>(p, t - 1)
    }
}

/// CRT bridge between a user's factor coordinates and canonical coordinates.
#[derive(Clone, Debug)]
pub struct CoordinateMap {
    group: CanonicalAbelianGroup,
    factors: Vec<u64>,
    /// per user factor: its prime-power CRT parts
    splits: Vec<Vec<FactorPart>>,
}

#[derive(Clone, Copy, Debug)]
struct FactorPart {
    prime: u64,
    modulus: u64,
    /// index of the prime in the canonical (ascending) prime order
    prime_index: usize,
    /// position within that prime's exponent list
    position: usize,
}

impl CoordinateMap {
    pub fn group(&self) -> &CanonicalAbelianGroup {
        &self.group
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    /// Maps user residues (one per factor, reduced automatically) onto
    /// canonical coordinates.
    pub fn map_element(&self, residues: &[u64]) -> Result<Element, ElementError> {
        if residues.len() != self.factors.len() {
            return Err(ElementError::ResidueCountMismatch {
                expected: self.factors.len(),
                actual: residues.len(),
            });
        }
        let mut element = self.group.identity();
        for (parts, &r) in self.splits.iter().zip(residues) {
            for part in parts {
                element.coords[part.prime_index][part.position] = r % part.modulus;
            }
        }
        Ok(element)
    }

    /// Inverse of [`CoordinateMap::map_element`]: recovers the user residues
    /// (each reduced modulo its factor) by CRT recombination.
    pub fn unmap_element(&self, element: &Element) -> Result<Vec<u64>, ElementError> {
        if element.coords.len() != self.group.components.len()
            || element
                .coords
                .iter()
                .zip(self.group.components.values())
                .any(|(row, exps)| row.len() != exps.len())
        {
            return Err(ElementError::ShapeMismatch);
        }
        let mut residues = Vec::with_capacity(self.factors.len());
        for parts in &self.splits {
            let mut x: u64 = 0;
            let mut modulus: u64 = 1;
            for part in parts {
                let r = element.coords[part.prime_index][part.position];
                // lift x from `modulus` to `modulus * part.modulus`
                let delta = ((r as u128 + part.modulus as u128 - (x % part.modulus) as u128)
                    % part.modulus as u128) as u64;
                let step = arith::mul_mod(
                    delta,
                    inv_mod(modulus % part.modulus, part.modulus),
                    part.modulus,
                );
                x += modulus * step; // < modulus * part.modulus <= factor <= u64::MAX
                modulus *= part.modulus;
            }
            residues.push(x);
        }
        Ok(residues)
    }
}

/// Splits each user factor into prime-power cyclic parts (CRT), groups the
/// parts by prime with exponents ascending, and records the coordinate
/// bijection. The group order is preserved.
pub fn canonicalize(spec: &UserGroupSpec) -> (CanonicalAbelianGroup, CoordinateMap) {
    // (prime, exponent, factor index, part index within that factor)
    let mut parts: Vec<(u64, u32, usize, usize)> = Vec::new();
    let mut factor_parts: Vec<Vec<(u64, u32)>> = Vec::new();
    for (j, &n) in spec.factors.iter().enumerate() {
        let split = factorize(n);
        for (k, &(p, e)) in split.iter().enumerate() {
            parts.push((p, e, j, k));
        }
        factor_parts.push(split);
    }

    let mut components: BTreeMap<u64, Vec<(u32, usize, usize)>> = BTreeMap::new();
    for (p, e, j, k) in parts {
        components.entry(p).or_default().push((e, j, k));
    }
    // ascending exponents per prime; ties keep user factor order
    for list in components.values_mut() {
        list.sort_by_key(|&(e, j, _)| (e, j));
    }

    let group = CanonicalAbelianGroup::from_components(
        components
            .iter()
            .map(|(&p, list)| (p, list.iter().map(|&(e, _, _)| e).collect::<Vec<u32>>())),
    )
    .expect("factorization yields valid components");

    // invert: for each factor part, find its canonical position
    let mut splits: Vec<Vec<FactorPart>> = factor_parts
        .iter()
        .map(|split| Vec::with_capacity(split.len()))
        .collect();
    for (prime_index, (&p, list)) in components.iter().enumerate() {
        for (position, &(e, j, k)) in list.iter().enumerate() {
            debug_assert_eq!(factor_parts[j][k], (p, e));
            splits[j].push(FactorPart {
                prime: p,
                modulus: checked_pow(p, e).expect("factor parts fit u64"),
                prime_index,
                position,
            });
        }
    }
    // keep each factor's parts in factorization order (ascending primes)
    for parts in &mut splits {
        parts.sort_by_key(|part| part.prime);
    }

    let map = CoordinateMap {
        group: group.clone(),
        factors: spec.factors.clone(),
        splits,
    };
    (group, map)
}
