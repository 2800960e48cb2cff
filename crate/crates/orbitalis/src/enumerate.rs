//! Exhaustive enumeration of small posets and their (partial) automorphisms.
//!
//! Two generation strategies are kept deliberately independent so they can
//! cross-check each other:
//!
//! * `for_each_labeled_filter` walks every assignment of {below, above,
//!   incomparable} to the unordered pairs and keeps the transitive ones;
//! * `for_each_labeled_grow` builds posets one point at a time, choosing a
//!   down-closed set and an up-closed set for each new point.
//!
//! The grow strategy visits every labeled poset exactly once: restricting a
//! poset on {0..n} to {0..n-1} is a poset, and the data removed is exactly
//! such a pair of closed sets.

use std::collections::BTreeSet;

use crate::poset::{Elem, FinPoset};

pub const MAX_N: usize = 7;

/// Dense matrix poset on elements 0..n, n <= 8. `rows[i]` bit j says i < j.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SmallPoset {
    pub n: usize,
    rows: [u8; 8],
}

impl SmallPoset {
    pub fn empty(n: usize) -> Self {
        assert!(n <= 8);
        SmallPoset { n, rows: [0; 8] }
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.rows[i] & (1 << j) != 0
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        i == j || self.lt(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        i == j || self.lt(i, j) || self.lt(j, i)
    }

    fn set_lt(&mut self, i: usize, j: usize) {
        self.rows[i] |= 1 << j;
    }

    /// Bitmask of elements strictly below j.
    pub fn below_mask(&self, j: usize) -> u8 {
        let mut m = 0u8;
        for i in 0..self.n {
            if self.lt(i, j) {
                m |= 1 << i;
            }
        }
        m
    }

    /// Bitmask of elements strictly above i.
    pub fn above_mask(&self, i: usize) -> u8 {
        self.rows[i] & ((1u16 << self.n) as u8).wrapping_sub(1)
    }

    pub fn is_transitive(&self) -> bool {
        for i in 0..self.n {
            for j in 0..self.n {
                if self.lt(i, j) {
                    // everything above j must be above i
                    if self.rows[j] & !self.rows[i] != 0 {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Row-major encoding, stable under n-padding; used for dedup keys.
    pub fn code(&self) -> u64 {
        let mut c = 0u64;
        for i in 0..self.n {
            c |= (self.rows[i] as u64) << (8 * i);
        }
        c
    }

    pub fn apply_perm(&self, perm: &[usize]) -> SmallPoset {
        let mut q = SmallPoset::empty(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                if self.lt(perm[i], perm[j]) {
                    q.set_lt(i, j);
                }
            }
        }
        q
    }

    /// Lexicographically least relabeling; equal codes mean isomorphic.
    pub fn canonical_code(&self) -> u64 {
        let mut best = u64::MAX;
        for perm in permutations(self.n) {
            let c = self.apply_perm(&perm).code();
            if c < best {
                best = c;
            }
        }
        best
    }

    pub fn from_code(n: usize, code: u64) -> SmallPoset {
        let mut p = SmallPoset::empty(n);
        for i in 0..n {
            p.rows[i] = ((code >> (8 * i)) & 0xff) as u8;
        }
        p
    }

    pub fn to_fin_poset(&self) -> FinPoset {
        let mut p = FinPoset::new();
        for _ in 0..self.n {
            p.alloc();
        }
        for i in 0..self.n {
            for j in 0..self.n {
                if self.lt(i, j) {
                    p.insert_edge(Elem(i as u32), Elem(j as u32)).unwrap();
                }
            }
        }
        p
    }

    pub fn from_fin_poset(p: &FinPoset) -> SmallPoset {
        let ids: Vec<Elem> = p.elems().collect();
        assert!(ids.len() <= 8);
        let mut sp = SmallPoset::empty(ids.len());
        for (i, &x) in ids.iter().enumerate() {
            for (j, &y) in ids.iter().enumerate() {
                if p.lt(x, y) {
                    sp.set_lt(i, j);
                }
            }
        }
        sp
    }
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    fn heap(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, cur, out);
            if k % 2 == 0 {
                cur.swap(i, k - 1);
            } else {
                cur.swap(0, k - 1);
            }
        }
    }
    if n == 0 {
        out.push(Vec::new());
    } else {
        heap(n, &mut cur, &mut out);
    }
    out
}

/// Strategy one: assign one of three states to each unordered pair and
/// filter by transitivity. Exhaustive and obviously complete; capped at
/// n <= 5 where the state space is still tiny.
pub fn for_each_labeled_filter(n: usize, mut f: impl FnMut(&SmallPoset)) {
    assert!(n <= 5, "pair-state filter is for small n only");
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let total = 3u32.pow(pairs.len() as u32);
    for mut code in 0..total {
        let mut p = SmallPoset::empty(n);
        for &(i, j) in &pairs {
            match code % 3 {
                1 => p.set_lt(i, j),
                2 => p.set_lt(j, i),
                _ => {}
            }
            code /= 3;
        }
        if p.is_transitive() {
            f(&p);
        }
    }
}

/// Strategy two: grow point by point. The new point k gets a down-closed
/// set D and an up-closed set U with D x U inside the existing order; the
/// result needs no further closure.
pub fn for_each_labeled_grow(n: usize, mut f: impl FnMut(&SmallPoset)) {
    assert!(n <= MAX_N);
    let mut cur = SmallPoset::empty(0);
    grow_rec(&mut cur, n, &mut f);
}

fn grow_rec(cur: &mut SmallPoset, n: usize, f: &mut impl FnMut(&SmallPoset)) {
    if cur.n == n {
        f(cur);
        return;
    }
    let k = cur.n;
    let full: u8 = if k == 0 { 0 } else { ((1u16 << k) - 1) as u8 };
    for d in 0..=full {
        if !down_closed(cur, d) {
            continue;
        }
        for u in 0..=full {
            if d & u != 0 || !up_closed(cur, u) || !all_lt(cur, d, u) {
                continue;
            }
            let saved = *cur;
            cur.n = k + 1;
            for i in 0..k {
                if d & (1 << i) != 0 {
                    cur.set_lt(i, k);
                }
            }
            cur.rows[k] = u;
            grow_rec(cur, n, f);
            *cur = saved;
        }
        if k == 0 {
            break;
        }
    }
}

fn down_closed(p: &SmallPoset, mask: u8) -> bool {
    for d in 0..p.n {
        if mask & (1 << d) != 0 && p.below_mask(d) & !mask != 0 {
            return false;
        }
    }
    true
}

fn up_closed(p: &SmallPoset, mask: u8) -> bool {
    for u in 0..p.n {
        if mask & (1 << u) != 0 && p.above_mask(u) & !mask != 0 {
            return false;
        }
    }
    true
}

fn all_lt(p: &SmallPoset, d: u8, u: u8) -> bool {
    for i in 0..p.n {
        if d & (1 << i) == 0 {
            continue;
        }
        for j in 0..p.n {
            if u & (1 << j) != 0 && !p.lt(i, j) {
                return false;
            }
        }
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenStrategy {
    Filter,
    Grow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenMode {
    Labeled,
    UpToIso,
}

pub fn count_labeled(n: usize, strategy: GenStrategy) -> u64 {
    let mut c = 0u64;
    match strategy {
        GenStrategy::Filter => for_each_labeled_filter(n, |_| c += 1),
        GenStrategy::Grow => for_each_labeled_grow(n, |_| c += 1),
    }
    c
}

/// All posets on n points in the requested mode. Labeled uses the grow
/// strategy; iso mode dedups by canonical code and returns the canonical
/// representative of each class.
pub fn for_each_poset(n: usize, mode: GenMode, mut f: impl FnMut(&SmallPoset)) {
    match mode {
        GenMode::Labeled => for_each_labeled_grow(n, |p| f(p)),
        GenMode::UpToIso => {
            let mut seen: BTreeSet<u64> = BTreeSet::new();
            for_each_labeled_grow(n, |p| {
                let c = p.canonical_code();
                if seen.insert(c) {
                    // re-visit later in deterministic order
                }
            });
            for c in seen {
                f(&SmallPoset::from_code(n, c));
            }
        }
    }
}

pub fn count_posets(n: usize, mode: GenMode) -> u64 {
    let mut c = 0;
    for_each_poset(n, mode, |_| c += 1);
    c
}

/// Isomorphism-class representatives as `FinPoset`s, ids 0..n-1.
pub fn posets_up_to_iso(n: usize) -> Vec<FinPoset> {
    let mut out = Vec::new();
    for_each_poset(n, GenMode::UpToIso, |p| out.push(p.to_fin_poset()));
    out
}

/// Total automorphisms: permutations preserving the relation both ways.
pub fn automorphisms(p: &SmallPoset) -> Vec<Vec<usize>> {
    permutations(p.n)
        .into_iter()
        .filter(|perm| {
            (0..p.n).all(|i| {
                (0..p.n).all(|j| p.lt(i, j) == p.lt(perm[i], perm[j]))
            })
        })
        .collect()
}

/// Partial map on 0..n: `map[i]` is the image, or NONE for undefined.
pub type SmallMap = [i8; 8];
pub const NONE: i8 = -1;

/// Enumerates every partial automorphism: injective partial maps that
/// preserve and reflect the relation on their domain. The empty map and
/// all total automorphisms are included.
pub fn for_each_partial_auto(p: &SmallPoset, mut f: impl FnMut(&SmallMap)) {
    let mut map: SmallMap = [NONE; 8];
    let mut used = [false; 8];
    fn rec(
        p: &SmallPoset,
        i: usize,
        map: &mut SmallMap,
        used: &mut [bool; 8],
        f: &mut impl FnMut(&SmallMap),
    ) {
        if i == p.n {
            f(map);
            return;
        }
        rec(p, i + 1, map, used, f);
        'target: for t in 0..p.n {
            if used[t] {
                continue;
            }
            for j in 0..i {
                if map[j] == NONE {
                    continue;
                }
                let tj = map[j] as usize;
                if p.lt(i, j) != p.lt(t, tj) || p.lt(j, i) != p.lt(tj, t) {
                    continue 'target;
                }
            }
            map[i] = t as i8;
            used[t] = true;
            rec(p, i + 1, map, used, f);
            used[t] = false;
            map[i] = NONE;
        }
    }
    rec(p, 0, &mut map, &mut used, &mut f);
}

/// f^k(x) under a partial map, None when the orbit leaves the domain.
pub fn small_apply_pow(map: &SmallMap, x: usize, k: i64) -> Option<usize> {
    let mut cur = x;
    if k >= 0 {
        for _ in 0..k {
            let next = map[cur];
            if next == NONE {
                return None;
            }
            cur = next as usize;
        }
    } else {
        for _ in 0..(-k) {
            let mut pre = None;
            for (i, &m) in map.iter().enumerate() {
                if m == cur as i8 {
                    pre = Some(i);
                    break;
                }
            }
            cur = pre?;
        }
    }
    Some(cur)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labeled_counts_match_known_values() {
        // number of labeled posets on n points, n = 0..5
        let expect = [1u64, 1, 3, 19, 219, 4231];
        for (n, &want) in expect.iter().enumerate() {
            assert_eq!(count_labeled(n, GenStrategy::Grow), want, "grow n={n}");
            assert_eq!(count_labeled(n, GenStrategy::Filter), want, "filter n={n}");
        }
    }

    #[test]
    fn iso_counts_match_known_values() {
        let expect = [1u64, 1, 2, 5, 16, 63];
        for (n, &want) in expect.iter().enumerate() {
            assert_eq!(count_posets(n, GenMode::UpToIso), want, "iso n={n}");
        }
    }

    #[test]
    fn strategies_agree_pointwise() {
        for n in 0..=4 {
            let mut a: BTreeSet<u64> = BTreeSet::new();
            let mut b: BTreeSet<u64> = BTreeSet::new();
            for_each_labeled_filter(n, |p| {
                a.insert(p.code());
            });
            for_each_labeled_grow(n, |p| {
                b.insert(p.code());
            });
            assert_eq!(a, b, "n={n}");
        }
    }

    #[test]
    fn grow_emits_valid_transitive_posets() {
        for_each_labeled_grow(4, |p| {
            assert!(p.is_transitive());
            for i in 0..p.n {
                assert!(!p.lt(i, i));
                for j in 0..p.n {
                    assert!(!(p.lt(i, j) && p.lt(j, i)));
                }
            }
        });
    }

    #[test]
    fn automorphism_counts_on_landmarks() {
        // antichain: full symmetric group
        let a3 = SmallPoset::from_fin_poset(&FinPoset::antichain(3));
        assert_eq!(automorphisms(&a3).len(), 6);
        // chain: rigid
        let c3 = SmallPoset::from_fin_poset(&FinPoset::chain(3));
        assert_eq!(automorphisms(&c3).len(), 1);
        // diamond: swap the two middle points
        let mut d = FinPoset::new();
        let bot = d.alloc();
        let l = d.alloc();
        let r = d.alloc();
        let top = d.alloc();
        for m in [l, r] {
            d.insert_edge(bot, m).unwrap();
            d.insert_edge(m, top).unwrap();
        }
        let sd = SmallPoset::from_fin_poset(&d);
        assert_eq!(automorphisms(&sd).len(), 2);
    }

    #[test]
    fn partial_auto_counts_on_landmarks() {
        // two-chain: empty, four singletons, identity
        let c2 = SmallPoset::from_fin_poset(&FinPoset::chain(2));
        let mut c = 0;
        for_each_partial_auto(&c2, |_| c += 1);
        assert_eq!(c, 6);
        // two-antichain: the swap is also allowed
        let a2 = SmallPoset::from_fin_poset(&FinPoset::antichain(2));
        let mut c = 0;
        for_each_partial_auto(&a2, |_| c += 1);
        assert_eq!(c, 7);
    }

    #[test]
    fn partial_autos_preserve_and_reflect() {
        for_each_labeled_grow(3, |p| {
            for_each_partial_auto(p, |m| {
                for i in 0..p.n {
                    for j in 0..p.n {
                        if m[i] == NONE || m[j] == NONE {
                            continue;
                        }
                        assert_eq!(p.lt(i, j), p.lt(m[i] as usize, m[j] as usize));
                    }
                }
            });
        });
    }

    #[test]
    fn small_pow_walks_and_reverses() {
        // map 0 -> 1 -> 2 on a 3-chain
        let mut m: SmallMap = [NONE; 8];
        m[0] = 1;
        m[1] = 2;
        assert_eq!(small_apply_pow(&m, 0, 2), Some(2));
        assert_eq!(small_apply_pow(&m, 2, -2), Some(0));
        assert_eq!(small_apply_pow(&m, 2, 1), None);
        assert_eq!(small_apply_pow(&m, 0, -1), None);
    }

    #[test]
    fn canonical_code_identifies_isomorphic_relabelings() {
        let c3 = SmallPoset::from_fin_poset(&FinPoset::chain(3));
        for perm in permutations(3) {
            assert_eq!(c3.apply_perm(&perm).canonical_code(), c3.canonical_code());
        }
        let a3 = SmallPoset::from_fin_poset(&FinPoset::antichain(3));
        assert_ne!(a3.canonical_code(), c3.canonical_code());
    }
}
