//! Finite partial automorphisms of a growing fragment.
//!
//! A `PartialAuto` is a finite injective order-isomorphism between two
//! subsets of the fragment. Values are immutable snapshots: operations
//! that grow a map return a new one, so callers can keep old stages of a
//! tower. The fragment itself only grows (see `fraisse`), so a map that
//! validated once stays valid forever.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fraisse::LazyPoset;
use crate::poset::{Elem, FinPoset, PosetError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AutoError {
    /// The pair named breaks "u <= v iff p(u) <= p(v)".
    #[error("order violation on pair ({0}, {1})")]
    OrderViolation(Elem, Elem),
    #[error("element {0} is not on any materialized orbit of the map")]
    OrbitUnavailable(Elem),
    #[error("configuration conflicts with existing relations: {0}")]
    ConfigConflict(String),
    #[error("separator placement blocked: {0}")]
    SeparatorBlocked(String),
    #[error("incomparability witness blocked: {0}")]
    WitnessBlocked(String),
    #[error("horizon exceeded: {0}")]
    HorizonExceeded(String),
    #[error("spiral status of {0} is unresolved at this horizon")]
    UnresolvedSpiral(Elem),
    #[error("pair ({0}, {1}) has no certified relation data")]
    UnresolvedPair(Elem, Elem),
    #[error("hypothesis violation: {0}")]
    HypothesisViolation(String),
    #[error("element {0} has parity zero")]
    ParityZero(Elem),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

pub type AResult<T> = Result<T, AutoError>;

/// Finite injective partial map preserving and reflecting order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialAuto {
    fwd: BTreeMap<Elem, Elem>,
    bwd: BTreeMap<Elem, Elem>,
}

impl PartialAuto {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.fwd.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fwd.is_empty()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Elem, Elem)> + '_ {
        self.fwd.iter().map(|(a, b)| (*a, *b))
    }

    pub fn dom(&self) -> impl Iterator<Item = Elem> + '_ {
        self.fwd.keys().copied()
    }

    pub fn ran(&self) -> impl Iterator<Item = Elem> + '_ {
        self.bwd.keys().copied()
    }

    /// dom united with ran.
    pub fn dur(&self) -> BTreeSet<Elem> {
        self.fwd.keys().chain(self.bwd.keys()).copied().collect()
    }

    pub fn in_dom(&self, x: Elem) -> bool {
        self.fwd.contains_key(&x)
    }

    pub fn in_ran(&self, x: Elem) -> bool {
        self.bwd.contains_key(&x)
    }

    pub fn apply(&self, x: Elem) -> Option<Elem> {
        self.fwd.get(&x).copied()
    }

    pub fn apply_inv(&self, x: Elem) -> Option<Elem> {
        self.bwd.get(&x).copied()
    }

    /// k-fold application; every intermediate step must be defined.
    /// Finite cycles are reduced, so huge |k| stays cheap.
    pub fn apply_pow(&self, x: Elem, k: i64) -> Option<Elem> {
        if k == 0 {
            return Some(x);
        }
        let step = |e: Elem| if k > 0 { self.apply(e) } else { self.apply_inv(e) };
        let mut cur = x;
        let mut remaining = k.unsigned_abs();
        let mut walked: u64 = 0;
        while remaining > 0 {
            match step(cur) {
                None => return None,
                Some(next) => {
                    cur = next;
                    walked += 1;
                    remaining -= 1;
                    if cur == x {
                        // Cycle of length `walked`; reduce what is left.
                        remaining %= walked;
                    }
                }
            }
        }
        Some(cur)
    }

    /// Checks one candidate pair against every pair already present.
    fn check_pair_against(
        &self,
        poset: &FinPoset,
        x: Elem,
        y: Elem,
    ) -> AResult<()> {
        for (&u, &v) in &self.fwd {
            if poset.leq(u, x) != poset.leq(v, y) {
                return Err(AutoError::OrderViolation(u, x));
            }
            if poset.leq(x, u) != poset.leq(y, v) {
                return Err(AutoError::OrderViolation(x, u));
            }
        }
        Ok(())
    }

    /// Adds the pair x -> y, rejecting anything that breaks order
    /// preservation or reflection (injectivity failures surface as order
    /// violations through antisymmetry). Re-inserting an existing pair
    /// is a no-op.
    pub fn insert(&mut self, poset: &FinPoset, x: Elem, y: Elem) -> AResult<()> {
        if !poset.contains(x) || !poset.contains(y) {
            return Err(AutoError::InvalidArgument(format!(
                "pair ({x}, {y}) mentions elements outside the fragment"
            )));
        }
        if let Some(old) = self.apply(x) {
            if old == y {
                return Ok(());
            }
            return Err(AutoError::ConfigConflict(format!(
                "{x} is already mapped to {old}"
            )));
        }
        if let Some(pre) = self.apply_inv(y) {
            return Err(AutoError::ConfigConflict(format!(
                "{y} is already the image of {pre}"
            )));
        }
        self.check_pair_against(poset, x, y)?;
        if poset.leq(x, x) != poset.leq(y, y) {
            unreachable!("reflexivity");
        }
        self.fwd.insert(x, y);
        self.bwd.insert(y, x);
        Ok(())
    }

    /// Full re-check of the defining property over dom x dom.
    pub fn validate(&self, poset: &FinPoset) -> AResult<()> {
        for (&x, &y) in &self.fwd {
            if !poset.contains(x) || !poset.contains(y) {
                return Err(AutoError::InvalidArgument(format!(
                    "pair ({x}, {y}) mentions elements outside the fragment"
                )));
            }
            if self.bwd.get(&y) != Some(&x) {
                return Err(AutoError::InvalidArgument(format!(
                    "index out of sync at ({x}, {y})"
                )));
            }
            for (&u, &v) in &self.fwd {
                if poset.leq(u, x) != poset.leq(v, y) {
                    return Err(AutoError::OrderViolation(u, x));
                }
            }
        }
        if self.bwd.len() != self.fwd.len() {
            return Err(AutoError::InvalidArgument("index out of sync".into()));
        }
        Ok(())
    }

    /// True when every pair of `other` is a pair of `self`.
    pub fn extends(&self, other: &PartialAuto) -> bool {
        other.pairs().all(|(a, b)| self.apply(a) == Some(b))
    }

    /// The materialized orbit segment through x: elements in map order,
    /// the index of x within them, and whether the orbit is a finite
    /// cycle. Errors if x is not in dom or ran.
    pub fn orbit_segment(&self, x: Elem) -> AResult<OrbitSegment> {
        if !self.in_dom(x) && !self.in_ran(x) {
            return Err(AutoError::OrbitUnavailable(x));
        }
        // Walk backward to the start, watching for a cycle.
        let mut start = x;
        let mut back = 0i64;
        loop {
            match self.apply_inv(start) {
                Some(prev) => {
                    if prev == x {
                        // Cycle; collect it from x.
                        let mut elems = vec![x];
                        let mut cur = self.apply(x).expect("cycle is closed");
                        while cur != x {
                            elems.push(cur);
                            cur = self.apply(cur).expect("cycle is closed");
                        }
                        return Ok(OrbitSegment { elems, index_of_base: 0, cycle: true });
                    }
                    start = prev;
                    back += 1;
                }
                None => break,
            }
        }
        let mut elems = vec![start];
        let mut cur = start;
        while let Some(next) = self.apply(cur) {
            elems.push(next);
            cur = next;
        }
        Ok(OrbitSegment { elems, index_of_base: back, cycle: false })
    }

    pub fn to_json(&self) -> Vec<(u32, u32)> {
        self.fwd.iter().map(|(a, b)| (a.0, b.0)).collect()
    }

    pub fn from_json(poset: &FinPoset, pairs: &[(u32, u32)]) -> AResult<PartialAuto> {
        let mut p = PartialAuto::new();
        for &(a, b) in pairs {
            p.insert(poset, Elem(a), Elem(b))?;
        }
        Ok(p)
    }
}

/// Materialized orbit segment; `elems[index_of_base]` is the query point
/// unless the orbit is a cycle, in which case the query point is first
/// and indices wrap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitSegment {
    pub elems: Vec<Elem>,
    pub index_of_base: i64,
    pub cycle: bool,
}

impl OrbitSegment {
    /// Orbit element at signed offset `i` from the base point, if
    /// materialized.
    pub fn at(&self, i: i64) -> Option<Elem> {
        let n = self.elems.len() as i64;
        if self.cycle {
            let idx = ((i % n) + n) % n;
            return Some(self.elems[idx as usize]);
        }
        let idx = self.index_of_base + i;
        if idx < 0 || idx >= n {
            None
        } else {
            Some(self.elems[idx as usize])
        }
    }

    /// Signed offsets materialized ahead of and behind the base point.
    pub fn reach(&self) -> (i64, i64) {
        if self.cycle {
            (i64::MIN / 2, i64::MAX / 2)
        } else {
            (
                -self.index_of_base,
                self.elems.len() as i64 - 1 - self.index_of_base,
            )
        }
    }
}

/// The comparability sequence b_i(x, y) = [x <= p^i(y)] for |i| <= h;
/// an entry is None when p^i(y) is not materialized.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BWindow {
    pub x: Elem,
    pub y: Elem,
    pub h: i64,
    bits: Vec<Option<bool>>,
}

impl BWindow {
    pub fn bit(&self, i: i64) -> Option<bool> {
        if i < -self.h || i > self.h {
            return None;
        }
        self.bits[(i + self.h) as usize]
    }

    pub fn defined(&self) -> impl Iterator<Item = (i64, bool)> + '_ {
        let h = self.h;
        self.bits
            .iter()
            .enumerate()
            .filter_map(move |(k, b)| b.map(|v| (k as i64 - h, v)))
    }

    /// Render as e.g. "??01 [1] 1100" with index 0 bracketed.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for i in -self.h..=self.h {
            if i == 0 {
                s.push('[');
            }
            s.push(match self.bit(i) {
                Some(true) => '1',
                Some(false) => '0',
                None => '?',
            });
            if i == 0 {
                s.push(']');
            }
        }
        s
    }
}

/// Computes the window of b(x, y) over the materialized orbit of y.
pub fn b_window(poset: &FinPoset, p: &PartialAuto, x: Elem, y: Elem, h: i64) -> BWindow {
    let mut bits = Vec::with_capacity((2 * h + 1) as usize);
    for i in -h..=h {
        bits.push(p.apply_pow(y, i).map(|yi| poset.leq(x, yi)));
    }
    BWindow { x, y, h, bits }
}

/// Extends the orbit through `x` by `steps` fresh points (forward when
/// positive, backward when negative). Each fresh point carries the
/// mirror of the relations the map already dictates, plus whatever the
/// hook adds; the hook receives the signed orbit offset of the fresh
/// point relative to `x`. Finite cycles are already total, so they are
/// returned unchanged.
pub fn extend_orbit_with(
    host: &mut LazyPoset,
    p: &PartialAuto,
    x: Elem,
    steps: i64,
    hook: &mut dyn FnMut(i64, &mut BTreeSet<Elem>, &mut BTreeSet<Elem>),
) -> AResult<PartialAuto> {
    if steps == 0 {
        return Ok(p.clone());
    }
    let seg = p.orbit_segment(x)?;
    if seg.cycle {
        return Ok(p.clone());
    }
    let mut q = p.clone();
    if steps > 0 {
        let (_, mut hi) = seg.reach();
        let mut end = seg.at(hi).expect("end is materialized");
        for _ in 0..steps {
            let mut below: BTreeSet<Elem> = BTreeSet::new();
            let mut above: BTreeSet<Elem> = BTreeSet::new();
            for (u, v) in q.pairs() {
                if host.fragment().lt(u, end) {
                    below.insert(v);
                } else if host.fragment().lt(end, u) {
                    above.insert(v);
                }
            }
            hook(hi + 1, &mut below, &mut above);
            let z = host.sandwich(&below, &above)?;
            q.insert(host.fragment(), end, z)?;
            debug_assert!(q.validate(host.fragment()).is_ok());
            end = z;
            hi += 1;
        }
    } else {
        let (mut lo, _) = seg.reach();
        let mut start = seg.at(lo).expect("start is materialized");
        for _ in 0..(-steps) {
            let mut below: BTreeSet<Elem> = BTreeSet::new();
            let mut above: BTreeSet<Elem> = BTreeSet::new();
            for (u, v) in q.pairs() {
                if host.fragment().lt(v, start) {
                    below.insert(u);
                } else if host.fragment().lt(start, v) {
                    above.insert(u);
                }
            }
            hook(lo - 1, &mut below, &mut above);
            let w = host.sandwich(&below, &above)?;
            q.insert(host.fragment(), w, start)?;
            debug_assert!(q.validate(host.fragment()).is_ok());
            start = w;
            lo -= 1;
        }
    }
    Ok(q)
}

/// One back-and-forth step: extends the map to cover `x` (not in dom) by
/// sandwiching a fresh image point that mirrors the required relations.
/// Always succeeds on a valid map.
pub fn one_point_extend(
    host: &mut LazyPoset,
    p: &PartialAuto,
    x: Elem,
) -> AResult<(PartialAuto, Elem)> {
    if p.in_dom(x) {
        return Err(AutoError::InvalidArgument(format!("{x} is already in dom")));
    }
    let mut below: BTreeSet<Elem> = BTreeSet::new();
    let mut above: BTreeSet<Elem> = BTreeSet::new();
    for (u, v) in p.pairs() {
        if host.fragment().lt(u, x) {
            below.insert(v);
        } else if host.fragment().lt(x, u) {
            above.insert(v);
        }
    }
    let y = host.sandwich(&below, &above)?;
    let mut q = p.clone();
    q.insert(host.fragment(), x, y)?;
    debug_assert!(q.validate(host.fragment()).is_ok());
    Ok((q, y))
}
