//! Finite strict partial orders with transitively closed storage.
//!
//! Every `FinPoset` keeps the full strict relation `<` closed under
//! transitivity at all times, so comparability queries are single lookups
//! and insertion pays the closure cost up front. Element ids are
//! allocation-ordered and never reused within one poset (or within one
//! growing fragment built on top of it).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Opaque element id. Ordered by allocation; all iteration in this crate
/// is id-ascending, which keeps every construction deterministic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(pub u32);

impl std::fmt::Display for Elem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Outcome of comparing two elements of a poset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Cmp {
    Lt,
    Gt,
    Eq,
    Inc,
}

impl Cmp {
    /// Comparability in the order-theoretic sense: anything but `Inc`.
    pub fn comparable(self) -> bool {
        !matches!(self, Cmp::Inc)
    }
}

/// Relation of a point to one type parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rel {
    Below,
    Above,
    Incomparable,
}

/// Quantifier-free type of a point over an ordered parameter list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QfType {
    pub over: Vec<Elem>,
    pub rel: Vec<Rel>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("element {0} is not in the poset")]
    UnknownElem(Elem),
    #[error("inserting {0} < {1} would violate antisymmetry")]
    CycleViolation(Elem, Elem),
    #[error("sandwich requires {0} < {1} but the relation does not hold")]
    SandwichViolation(Elem, Elem),
    #[error("map is not an order embedding: {0}")]
    NotEmbedding(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type PResult<T> = Result<T, PosetError>;

/// Injective order-preserving and order-reflecting partial map between posets.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Embedding {
    map: BTreeMap<Elem, Elem>,
}

impl Embedding {
    pub fn new() -> Self {
        Embedding { map: BTreeMap::new() }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Elem, Elem)>) -> Self {
        Embedding { map: pairs.into_iter().collect() }
    }

    pub fn insert(&mut self, from: Elem, to: Elem) {
        self.map.insert(from, to);
    }

    pub fn get(&self, from: Elem) -> Option<Elem> {
        self.map.get(&from).copied()
    }

    pub fn dom(&self) -> impl Iterator<Item = Elem> + '_ {
        self.map.keys().copied()
    }

    pub fn ran(&self) -> impl Iterator<Item = Elem> + '_ {
        self.map.values().copied()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Elem, Elem)> + '_ {
        self.map.iter().map(|(a, b)| (*a, *b))
    }

    pub fn is_injective(&self) -> bool {
        let ran: BTreeSet<Elem> = self.map.values().copied().collect();
        ran.len() == self.map.len()
    }

    /// Checks that this map, restricted to `sub`'s elements, is an order
    /// embedding of `sub` into `target`: total on `sub`, injective, and
    /// relation-preserving in both directions.
    pub fn check_embedding(&self, sub: &FinPoset, target: &FinPoset) -> PResult<()> {
        for x in sub.elems() {
            let y = self
                .get(x)
                .ok_or_else(|| PosetError::NotEmbedding(format!("{x} has no image")))?;
            if !target.contains(y) {
                return Err(PosetError::NotEmbedding(format!("image {y} not in target")));
            }
        }
        if !self.is_injective() {
            return Err(PosetError::NotEmbedding("map is not injective".into()));
        }
        for x in sub.elems() {
            for y in sub.elems() {
                if x >= y {
                    continue;
                }
                let here = sub.compare(x, y)?;
                let there = target.compare(self.get(x).unwrap(), self.get(y).unwrap())?;
                if here != there {
                    return Err(PosetError::NotEmbedding(format!(
                        "relation of ({x},{y}) is {here:?} but images compare as {there:?}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Finite strict partial order, stored transitively closed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FinPoset {
    elems: BTreeSet<Elem>,
    up: BTreeMap<Elem, BTreeSet<Elem>>,
    down: BTreeMap<Elem, BTreeSet<Elem>>,
    next_id: u32,
}

impl FinPoset {
    pub fn new() -> Self {
        FinPoset::default()
    }

    /// Antichain on `n` fresh elements.
    pub fn antichain(n: usize) -> Self {
        let mut p = FinPoset::new();
        for _ in 0..n {
            p.alloc();
        }
        p
    }

    /// Chain e0 < e1 < ... on `n` fresh elements.
    pub fn chain(n: usize) -> Self {
        let mut p = FinPoset::new();
        let ids: Vec<Elem> = (0..n).map(|_| p.alloc()).collect();
        for w in ids.windows(2) {
            p.insert_edge(w[0], w[1]).unwrap();
        }
        p
    }

    pub fn alloc(&mut self) -> Elem {
        let e = Elem(self.next_id);
        self.next_id += 1;
        self.elems.insert(e);
        self.up.insert(e, BTreeSet::new());
        self.down.insert(e, BTreeSet::new());
        e
    }

    /// Inserts a specific id, used by loaders. The id must be unused.
    pub fn insert_elem(&mut self, e: Elem) -> PResult<()> {
        if self.elems.contains(&e) {
            return Err(PosetError::InvalidArgument(format!("duplicate element {e}")));
        }
        self.elems.insert(e);
        self.up.insert(e, BTreeSet::new());
        self.down.insert(e, BTreeSet::new());
        self.next_id = self.next_id.max(e.0 + 1);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.elems.contains(&e)
    }

    pub fn elems(&self) -> impl Iterator<Item = Elem> + '_ {
        self.elems.iter().copied()
    }

    pub fn elem_set(&self) -> &BTreeSet<Elem> {
        &self.elems
    }

    pub fn next_id(&self) -> u32 {
        self.next_id
    }

    /// Strictly-above set. Empty set for unknown elements.
    pub fn above(&self, e: Elem) -> &BTreeSet<Elem> {
        static EMPTY: std::sync::OnceLock<BTreeSet<Elem>> = std::sync::OnceLock::new();
        self.up.get(&e).unwrap_or_else(|| EMPTY.get_or_init(BTreeSet::new))
    }

    /// Strictly-below set.
    pub fn below(&self, e: Elem) -> &BTreeSet<Elem> {
        static EMPTY: std::sync::OnceLock<BTreeSet<Elem>> = std::sync::OnceLock::new();
        self.down.get(&e).unwrap_or_else(|| EMPTY.get_or_init(BTreeSet::new))
    }

    pub fn lt(&self, x: Elem, y: Elem) -> bool {
        self.up.get(&x).map_or(false, |s| s.contains(&y))
    }

    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        x == y || self.lt(x, y)
    }

    /// Number of strict pairs in the closed relation.
    pub fn relation_size(&self) -> usize {
        self.up.values().map(|s| s.len()).sum()
    }

    pub fn lt_pairs(&self) -> impl Iterator<Item = (Elem, Elem)> + '_ {
        self.up.iter().flat_map(|(x, s)| s.iter().map(move |y| (*x, *y)))
    }

    pub fn compare(&self, x: Elem, y: Elem) -> PResult<Cmp> {
        if !self.contains(x) {
            return Err(PosetError::UnknownElem(x));
        }
        if !self.contains(y) {
            return Err(PosetError::UnknownElem(y));
        }
        Ok(if x == y {
            Cmp::Eq
        } else if self.lt(x, y) {
            Cmp::Lt
        } else if self.lt(y, x) {
            Cmp::Gt
        } else {
            Cmp::Inc
        })
    }

    fn link(&mut self, a: Elem, b: Elem) {
        self.up.get_mut(&a).unwrap().insert(b);
        self.down.get_mut(&b).unwrap().insert(a);
    }

    /// Adds x < y together with every pair forced by transitivity.
    /// No relation between pre-existing comparable pairs is ever removed.
    pub fn insert_edge(&mut self, x: Elem, y: Elem) -> PResult<()> {
        if !self.contains(x) {
            return Err(PosetError::UnknownElem(x));
        }
        if !self.contains(y) {
            return Err(PosetError::UnknownElem(y));
        }
        if x == y || self.lt(y, x) {
            return Err(PosetError::CycleViolation(x, y));
        }
        if self.lt(x, y) {
            return Ok(());
        }
        let mut los: Vec<Elem> = vec![x];
        los.extend(self.down[&x].iter().copied());
        let mut his: Vec<Elem> = vec![y];
        his.extend(self.up[&y].iter().copied());
        for &a in &los {
            for &b in &his {
                self.link(a, b);
            }
        }
        Ok(())
    }

    /// Inserts a fresh point z with below < z < above and nothing else:
    /// z acquires exactly the relations forced by transitivity. Requires
    /// a < b for every a in below, b in above, so no relation between
    /// pre-existing elements is created.
    pub fn sandwich_insert(
        &mut self,
        below: &BTreeSet<Elem>,
        above: &BTreeSet<Elem>,
    ) -> PResult<Elem> {
        for &a in below {
            if !self.contains(a) {
                return Err(PosetError::UnknownElem(a));
            }
        }
        for &b in above {
            if !self.contains(b) {
                return Err(PosetError::UnknownElem(b));
            }
        }
        for &a in below {
            for &b in above {
                if !self.lt(a, b) {
                    return Err(PosetError::SandwichViolation(a, b));
                }
            }
        }
        let z = self.alloc();
        let mut lo: BTreeSet<Elem> = below.clone();
        for &a in below {
            lo.extend(self.down[&a].iter().copied());
        }
        let mut hi: BTreeSet<Elem> = above.clone();
        for &b in above {
            hi.extend(self.up[&b].iter().copied());
        }
        for &a in &lo {
            self.link(a, z);
        }
        for &b in &hi {
            self.link(z, b);
        }
        Ok(z)
    }

    /// Quantifier-free type of x over the ordered parameter list.
    pub fn qftp(&self, x: Elem, over: &[Elem]) -> PResult<QfType> {
        if !self.contains(x) {
            return Err(PosetError::UnknownElem(x));
        }
        let mut rel = Vec::with_capacity(over.len());
        for &p in over {
            match self.compare(x, p)? {
                Cmp::Lt => rel.push(Rel::Below),
                Cmp::Gt => rel.push(Rel::Above),
                Cmp::Inc => rel.push(Rel::Incomparable),
                Cmp::Eq => {
                    return Err(PosetError::InvalidArgument(format!(
                        "type point {x} occurs in the parameter list"
                    )))
                }
            }
        }
        Ok(QfType { over: over.to_vec(), rel })
    }

    /// Full invariant check: irreflexive, antisymmetric, transitive,
    /// and the up/down indices agree.
    pub fn validate(&self) -> PResult<()> {
        for (&x, ups) in &self.up {
            for &y in ups {
                if x == y {
                    return Err(PosetError::InvalidArgument(format!("{x} < {x}")));
                }
                if self.lt(y, x) {
                    return Err(PosetError::CycleViolation(x, y));
                }
                if !self.down[&y].contains(&x) {
                    return Err(PosetError::InvalidArgument(format!(
                        "index mismatch on ({x},{y})"
                    )));
                }
                for &z in &self.up[&y] {
                    if !self.lt(x, z) {
                        return Err(PosetError::InvalidArgument(format!(
                            "transitivity fails: {x} < {y} < {z} but not {x} < {z}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Restriction to a subset of the elements (ids kept).
    pub fn restrict(&self, keep: &BTreeSet<Elem>) -> FinPoset {
        let mut p = FinPoset::new();
        for &e in keep {
            p.insert_elem(e).expect("restrict over distinct ids");
        }
        for &e in keep {
            let ups: BTreeSet<Elem> =
                self.above(e).iter().copied().filter(|u| keep.contains(u)).collect();
            for u in ups {
                p.link(e, u);
            }
        }
        p
    }

    /// Searches for an embedding of `small` into `self` by backtracking.
    pub fn find_embedding(&self, small: &FinPoset) -> Option<Embedding> {
        let targets: Vec<Elem> = self.elems().collect();
        let sources: Vec<Elem> = small.elems().collect();
        let mut used: BTreeSet<Elem> = BTreeSet::new();
        let mut img: Vec<Elem> = Vec::with_capacity(sources.len());

        fn go(
            big: &FinPoset,
            small: &FinPoset,
            sources: &[Elem],
            targets: &[Elem],
            used: &mut BTreeSet<Elem>,
            img: &mut Vec<Elem>,
        ) -> bool {
            if img.len() == sources.len() {
                return true;
            }
            let s = sources[img.len()];
            'cand: for &t in targets {
                if used.contains(&t) {
                    continue;
                }
                for (i, &placed) in img.iter().enumerate() {
                    let want = small.compare(sources[i], s).unwrap();
                    let got = big.compare(placed, t).unwrap();
                    if want != got {
                        continue 'cand;
                    }
                }
                used.insert(t);
                img.push(t);
                if go(big, small, sources, targets, used, img) {
                    return true;
                }
                img.pop();
                used.remove(&t);
            }
            false
        }

        if go(self, small, &sources, &targets, &mut used, &mut img) {
            Some(Embedding::from_pairs(sources.into_iter().zip(img)))
        } else {
            None
        }
    }

    /// True when every poset on at most n points (up to isomorphism)
    /// embeds into this one. n is capped small; the check is exhaustive.
    pub fn embeds_all_small(&self, n: usize) -> bool {
        assert!(n <= 5, "embeds_all_small is a desk-scale check");
        for k in 1..=n {
            for small in crate::enumerate::posets_up_to_iso(k) {
                if self.find_embedding(&small).is_none() {
                    return false;
                }
            }
        }
        true
    }

    /// Hasse cover pairs: x < y with nothing strictly between.
    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for (x, y) in self.lt_pairs() {
            let between = self.above(x).iter().any(|&z| z != y && self.lt(z, y));
            if !between {
                out.push((x, y));
            }
        }
        out
    }

    /// DOT rendering of the Hasse reduction, edges pointing upward.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph poset {\n  rankdir=BT;\n");
        for e in self.elems() {
            let _ = writeln!(s, "  n{e} [label=\"{e}\"];");
        }
        for (x, y) in self.covers() {
            let _ = writeln!(s, "  n{x} -> n{y};");
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            elems: self.elems().map(|e| e.0).collect(),
            lt: self.lt_pairs().map(|(a, b)| (a.0, b.0)).collect(),
        }
    }

    /// Loads from the interchange form. `lt` may be any generating set;
    /// it is closed transitively and validated.
    pub fn from_json(j: &PosetJson) -> PResult<FinPoset> {
        let mut p = FinPoset::new();
        for &e in &j.elems {
            p.insert_elem(Elem(e))?;
        }
        for &(a, b) in &j.lt {
            p.insert_edge(Elem(a), Elem(b))?;
        }
        Ok(p)
    }
}

/// JSON interchange form: `{"elems":[...],"lt":[[a,b],...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PosetJson {
    pub elems: Vec<u32>,
    pub lt: Vec<(u32, u32)>,
}

/// Amalgamates P2 onto P1 over the common part A.
///
/// f1 and f2 must embed A into P1 and P2. The result Q contains P1 with
/// its ids unchanged (g1 is the identity embedding) while the elements of
/// P2 outside ran(f2) receive fresh ids beyond P1's counter. Cross
/// relations are exactly those forced through the common part: g1(x) is
/// below g2(y) precisely when some a in A has x <= f1(a) and f2(a) <= y.
pub fn amalgamate(
    p1: &FinPoset,
    p2: &FinPoset,
    a: &FinPoset,
    f1: &Embedding,
    f2: &Embedding,
) -> PResult<(FinPoset, Embedding, Embedding)> {
    f1.check_embedding(a, p1)?;
    f2.check_embedding(a, p2)?;

    let mut q = FinPoset::new();
    for x in p1.elems() {
        q.insert_elem(x)?;
    }
    for (x, y) in p1.lt_pairs() {
        q.link(x, y);
    }

    let g1 = Embedding::from_pairs(p1.elems().map(|x| (x, x)));

    let ran_f2: BTreeMap<Elem, Elem> = a.elems().map(|z| (f2.get(z).unwrap(), z)).collect();
    let mut g2 = Embedding::new();
    for y in p2.elems() {
        match ran_f2.get(&y) {
            Some(&z) => g2.insert(y, f1.get(z).unwrap()),
            None => {
                let fresh = q.alloc();
                g2.insert(y, fresh);
            }
        }
    }

    for y in p2.elems() {
        for y2 in p2.elems() {
            if p2.lt(y, y2) {
                let (gy, gy2) = (g2.get(y).unwrap(), g2.get(y2).unwrap());
                if !q.lt(gy, gy2) {
                    q.link(gy, gy2);
                }
            }
        }
    }

    for x in p1.elems() {
        for y in p2.elems() {
            if ran_f2.contains_key(&y) {
                continue;
            }
            let gy = g2.get(y).unwrap();
            let mut below = false;
            let mut above = false;
            for z in a.elems() {
                let fz1 = f1.get(z).unwrap();
                let fz2 = f2.get(z).unwrap();
                if p1.leq(x, fz1) && p2.lt(fz2, y) {
                    below = true;
                }
                if p2.lt(y, fz2) && p1.leq(fz1, x) {
                    above = true;
                }
            }
            if below {
                q.link(x, gy);
            }
            if above {
                q.link(gy, x);
            }
        }
    }

    debug_assert!(q.validate().is_ok(), "amalgamation must produce a poset");
    Ok((q, g1, g2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[Elem]) -> BTreeSet<Elem> {
        v.iter().copied().collect()
    }

    #[test]
    fn insert_edge_closes_transitively() {
        let mut p = FinPoset::antichain(3);
        let e: Vec<Elem> = p.elems().collect();
        p.insert_edge(e[0], e[1]).unwrap();
        p.insert_edge(e[1], e[2]).unwrap();
        assert!(p.lt(e[0], e[2]));
        assert_eq!(p.compare(e[2], e[0]).unwrap(), Cmp::Gt);
        p.validate().unwrap();
    }

    #[test]
    fn insert_edge_rejects_cycles_and_self() {
        let mut p = FinPoset::chain(2);
        let e: Vec<Elem> = p.elems().collect();
        assert_eq!(p.insert_edge(e[1], e[0]), Err(PosetError::CycleViolation(e[1], e[0])));
        assert_eq!(p.insert_edge(e[0], e[0]), Err(PosetError::CycleViolation(e[0], e[0])));
    }

    #[test]
    fn sandwich_between_chain_ends() {
        let mut p = FinPoset::chain(2);
        let e: Vec<Elem> = p.elems().collect();
        let z = p.sandwich_insert(&set(&[e[0]]), &set(&[e[1]])).unwrap();
        assert_eq!(p.compare(e[0], z).unwrap(), Cmp::Lt);
        assert_eq!(p.compare(z, e[1]).unwrap(), Cmp::Lt);
        p.validate().unwrap();
    }

    #[test]
    fn sandwich_rejects_unordered_sides() {
        let mut p = FinPoset::antichain(2);
        let e: Vec<Elem> = p.elems().collect();
        let err = p.sandwich_insert(&set(&[e[0]]), &set(&[e[1]])).unwrap_err();
        assert_eq!(err, PosetError::SandwichViolation(e[0], e[1]));
    }

    #[test]
    fn sandwich_adds_no_relation_between_old_points() {
        let mut p = FinPoset::new();
        let a = p.alloc();
        let b = p.alloc();
        let c = p.alloc();
        p.insert_edge(a, b).unwrap();
        // c incomparable to both.
        let before: Vec<(Elem, Elem)> = p.lt_pairs().collect();
        let z = p.sandwich_insert(&set(&[a]), &set(&[b])).unwrap();
        let after: Vec<(Elem, Elem)> = p.lt_pairs().filter(|&(x, y)| x != z && y != z).collect();
        assert_eq!(before, after);
        assert_eq!(p.compare(z, c).unwrap(), Cmp::Inc);
    }

    #[test]
    fn qftp_three_chain_midpoint() {
        let p = FinPoset::chain(3);
        let e: Vec<Elem> = p.elems().collect();
        let t = p.qftp(e[1], &[e[0], e[2]]).unwrap();
        assert_eq!(t.rel, vec![Rel::Above, Rel::Below]);
    }

    #[test]
    fn embedding_search_finds_chain_in_diamond() {
        let mut p = FinPoset::new();
        let bot = p.alloc();
        let l = p.alloc();
        let r = p.alloc();
        let top = p.alloc();
        for &m in &[l, r] {
            p.insert_edge(bot, m).unwrap();
            p.insert_edge(m, top).unwrap();
        }
        let c3 = FinPoset::chain(3);
        let emb = p.find_embedding(&c3).expect("chain embeds");
        emb.check_embedding(&c3, &p).unwrap();
        let a4 = FinPoset::antichain(4);
        assert!(p.find_embedding(&a4).is_none());
    }

    #[test]
    fn json_roundtrip_closes_generators() {
        let j = PosetJson { elems: vec![0, 1, 2], lt: vec![(0, 1), (1, 2)] };
        let p = FinPoset::from_json(&j).unwrap();
        assert!(p.lt(Elem(0), Elem(2)));
        let out = p.to_json();
        assert_eq!(out.lt.len(), 3);
    }

    #[test]
    fn json_rejects_cyclic_generators() {
        let j = PosetJson { elems: vec![0, 1], lt: vec![(0, 1), (1, 0)] };
        assert!(FinPoset::from_json(&j).is_err());
    }

    #[test]
    fn dot_is_hasse_reduced() {
        let p = FinPoset::chain(3);
        let dot = p.to_dot();
        assert!(dot.contains("n0 -> n1"));
        assert!(dot.contains("n1 -> n2"));
        assert!(!dot.contains("n0 -> n2"));
    }

    #[test]
    fn amalgamate_two_chains_over_midpoint() {
        // P1: a1 < m1, P2: m2 < b2, A = single point mapped to m1 / m2.
        let mut p1 = FinPoset::new();
        let a1 = p1.alloc();
        let m1 = p1.alloc();
        p1.insert_edge(a1, m1).unwrap();
        let mut p2 = FinPoset::new();
        let m2 = p2.alloc();
        let b2 = p2.alloc();
        p2.insert_edge(m2, b2).unwrap();
        let mut a = FinPoset::new();
        let z = a.alloc();
        let f1 = Embedding::from_pairs([(z, m1)]);
        let f2 = Embedding::from_pairs([(z, m2)]);
        let (q, g1, g2) = amalgamate(&p1, &p2, &a, &f1, &f2).unwrap();
        q.validate().unwrap();
        // Glued point identified, chain a1 < m < b flows through it.
        assert_eq!(g2.get(m2), Some(m1));
        let gb = g2.get(b2).unwrap();
        assert!(q.lt(g1.get(a1).unwrap(), gb));
        assert_eq!(q.len(), 3);
    }

    #[test]
    fn amalgamate_rejects_non_embedding() {
        let p1 = FinPoset::chain(2);
        let p2 = FinPoset::antichain(2);
        let a = FinPoset::chain(2);
        let e: Vec<Elem> = a.elems().collect();
        let f1 = Embedding::from_pairs([(e[0], Elem(0)), (e[1], Elem(1))]);
        let f2 = Embedding::from_pairs([(e[0], Elem(0)), (e[1], Elem(1))]);
        let err = amalgamate(&p1, &p2, &a, &f1, &f2).unwrap_err();
        assert!(matches!(err, PosetError::NotEmbedding(_)));
    }
}
