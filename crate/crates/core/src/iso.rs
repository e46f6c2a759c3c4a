//! Brute-force isomorphism search between small groupoids.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groupoid::Groupoid;

/// Largest order accepted by [`find_isomorphism`] (9! candidate bijections).
pub const MAX_ISO_ORDER: usize = 9;

/// A product-preserving bijection `g1 → g2`, or `g1 → dual(g2)` when `dual`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Isomorphism {
    pub map: Vec<usize>,
    pub dual: bool,
}

/// Searches for an isomorphism `g1 → g2`; with `allow_dual`, falls back to an
/// isomorphism onto the dual of `g2`.
pub fn find_isomorphism(
    g1: &Groupoid,
    g2: &Groupoid,
    allow_dual: bool,
) -> Result<Option<Isomorphism>> {
    for g in [g1, g2] {
        if g.order() > MAX_ISO_ORDER {
            return Err(Error::guard(
                "isomorphism search order",
                MAX_ISO_ORDER as u64,
                g.order() as u64,
            ));
        }
    }
    if g1.order() != g2.order() {
        return Ok(None);
    }
    if let Some(map) = search(g1, g2) {
        return Ok(Some(Isomorphism { map, dual: false }));
    }
    if allow_dual {
        if let Some(map) = search(g1, &g2.dual()) {
            return Ok(Some(Isomorphism { map, dual: true }));
        }
    }
    Ok(None)
}

pub fn are_isomorphic(g1: &Groupoid, g2: &Groupoid) -> Result<bool> {
    Ok(find_isomorphism(g1, g2, false)?.is_some())
}

/// Checks that `map` is a bijection preserving products from `g1` to `g2`.
pub fn is_isomorphism(g1: &Groupoid, g2: &Groupoid, map: &[usize]) -> bool {
    let n = g1.order();
    if g2.order() != n || map.len() != n {
        return false;
    }
    let mut hit = vec![false; n];
    for &m in map {
        if m >= n || std::mem::replace(&mut hit[m], true) {
            return false;
        }
    }
    (0..n).all(|x| (0..n).all(|y| map[g1.mul(x, y)] == g2.mul(map[x], map[y])))
}

fn search(g1: &Groupoid, g2: &Groupoid) -> Option<Vec<usize>> {
    let n = g1.order();
    // Idempotents must go to idempotents; cheap pruning for the typical inputs.
    let idem1: Vec<bool> = (0..n).map(|x| g1.mul(x, x) == x).collect();
    let idem2: Vec<bool> = (0..n).map(|x| g2.mul(x, x) == x).collect();
    if idem1.iter().filter(|&&b| b).count() != idem2.iter().filter(|&&b| b).count() {
        return None;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(g1, g2, &idem1, &idem2, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

fn extend(
    g1: &Groupoid,
    g2: &Groupoid,
    idem1: &[bool],
    idem2: &[bool],
    x: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let n = g1.order();
    if x == n {
        return true;
    }
    for y in 0..n {
        if used[y] || idem1[x] != idem2[y] {
            continue;
        }
        map[x] = y;
        used[y] = true;
        if consistent(g1, g2, x, map) && extend(g1, g2, idem1, idem2, x + 1, map, used) {
            return true;
        }
        used[y] = false;
        map[x] = usize::MAX;
    }
    false
}

/// Checks every product among `0..=x` whose value is already mapped.
fn consistent(g1: &Groupoid, g2: &Groupoid, x: usize, map: &[usize]) -> bool {
    for a in 0..=x {
        for (p, q) in [(a, x), (x, a)] {
            let prod = g1.mul(p, q);
            if prod <= x && map[prod] != g2.mul(map[p], map[q]) {
                return false;
            }
        }
    }
    // Products landing outside the mapped range are checked once their
    // value gets mapped; re-check the pairs whose product is `x` itself.
    for a in 0..x {
        for b in 0..x {
            if g1.mul(a, b) == x && map[x] != g2.mul(map[a], map[b]) {
                return false;
            }
        }
    }
    true
}
