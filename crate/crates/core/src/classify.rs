//! Enumeration of all finite abelian groups of a given order.
//!
//! By the classification of finite abelian groups, the groups of order
//! `p1^e1 * ... * pk^ek` correspond to choices of one partition per prime
//! exponent. Partitions are emitted as ascending part lists to match the
//! canonical form directly.

use crate::arith::factorize;
use crate::group::CanonicalAbelianGroup;

/// All partitions of `total` as ascending part lists, in lexicographic order.
pub fn partitions(total: u32) -> Vec<Vec<u32>> {
    fn extend(remaining: u32, min_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in min_part..=remaining {
            prefix.push(part);
            extend(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(total, 1, &mut Vec::new(), &mut out);
    out
}

/// All abelian groups of order exactly `n` (empty for `n < 2`), in a
/// deterministic order.
pub fn abelian_groups_of_order(n: u64) -> Vec<CanonicalAbelianGroup> {
    if n < 2 {
        return Vec::new();
    }
    let factors = factorize(n);
    let choices: Vec<Vec<Vec<u32>>> = factors.iter().map(|&(_, e)| partitions(e)).collect();

    let mut groups = Vec::new();
    let mut pick = vec![0usize; factors.len()];
    loop {
        let components: Vec<(u64, Vec<u32>)> = factors
            .iter()
            .enumerate()
            .map(|(idx, &(p, _))| (p, choices[idx][pick[idx]].clone()))
            .collect();
        groups.push(
            CanonicalAbelianGroup::from_components(components)
                .expect("partition choices are valid components"),
        );

        // advance the per-prime partition counter
        let mut i = pick.len();
        loop {
            if i == 0 {
                return groups;
            }
            i -= 1;
            pick[i] += 1;
            if pick[i] < choices[i].len() {
                break;
            }
            pick[i] = 0;
        }
    }
}

/// All abelian groups of order `2..=max`, ascending by order.
pub fn abelian_groups_up_to(max: u64) -> Vec<CanonicalAbelianGroup> {
    (2..=max).flat_map(abelian_groups_of_order).collect()
}
