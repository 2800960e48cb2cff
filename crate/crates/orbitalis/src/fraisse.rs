//! A lazily grown fragment of the countable homogeneous poset.
//!
//! The fragment only ever grows, and it grows exclusively by sandwich
//! insertions: a new point acquires exactly the relations forced by its
//! chosen predecessor and successor sets. Relations between pre-existing
//! elements therefore never change, which is what makes finite witness
//! configurations permanent ("certificates" elsewhere in this crate).
//!
//! Every growth step is recorded in an event log; replaying the log from
//! an empty fragment reproduces the fragment exactly, ids included.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::poset::{Elem, Embedding, FinPoset, PResult, PosetError};

/// One growth step. Ids are implicit: every `Sandwich` allocates the next
/// free id, so replay is unambiguous.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Event {
    Sandwich { below: Vec<u32>, above: Vec<u32> },
}

/// Monotone fragment with a replayable construction log.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LazyPoset {
    fragment: FinPoset,
    seed: u64,
    log: Vec<Event>,
}

impl LazyPoset {
    pub fn new(seed: u64) -> Self {
        LazyPoset { fragment: FinPoset::new(), seed, log: Vec::new() }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn fragment(&self) -> &FinPoset {
        &self.fragment
    }

    /// Immutable copy of the current fragment.
    pub fn snapshot(&self) -> FinPoset {
        self.fragment.clone()
    }

    pub fn log(&self) -> &[Event] {
        &self.log
    }

    pub fn len(&self) -> usize {
        self.fragment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fragment.is_empty()
    }

    /// Single growth primitive; see `FinPoset::sandwich_insert`.
    pub fn sandwich(&mut self, below: &BTreeSet<Elem>, above: &BTreeSet<Elem>) -> PResult<Elem> {
        let z = self.fragment.sandwich_insert(below, above)?;
        self.log.push(Event::Sandwich {
            below: below.iter().map(|e| e.0).collect(),
            above: above.iter().map(|e| e.0).collect(),
        });
        Ok(z)
    }

    /// Fresh point incomparable to everything.
    pub fn alloc_isolated(&mut self) -> Elem {
        self.sandwich(&BTreeSet::new(), &BTreeSet::new())
            .expect("empty sandwich cannot fail")
    }

    /// Realizes all of `b` inside the fragment, keeping the already
    /// present part fixed. `anchor` maps the part of `b` that is already
    /// realized onto fragment elements and must be an order embedding of
    /// that part; the image set is exactly the `a` parameter. Remaining
    /// points of `b` are placed one at a time, in ascending id order, by
    /// sandwiching between the images of their already-placed neighbors.
    /// Placed points carry exactly the relations of `b` among themselves
    /// and against `a`, and only transitive consequences elsewhere.
    pub fn realize_extension(
        &mut self,
        a: &BTreeSet<Elem>,
        b: &FinPoset,
        anchor: &Embedding,
    ) -> PResult<Embedding> {
        let anchored: BTreeSet<Elem> = anchor.dom().collect();
        for e in &anchored {
            if !b.contains(*e) {
                return Err(PosetError::NotEmbedding(format!(
                    "anchor source {e} is not in the extension poset"
                )));
            }
        }
        let image: BTreeSet<Elem> = anchor.ran().collect();
        if &image != a {
            return Err(PosetError::NotEmbedding(
                "anchor image does not equal the designated base set".into(),
            ));
        }
        let base = b.restrict(&anchored);
        anchor.check_embedding(&base, &self.fragment)?;

        let mut img = anchor.clone();
        for e in b.elems() {
            if anchored.contains(&e) {
                continue;
            }
            let mut below: BTreeSet<Elem> = BTreeSet::new();
            let mut above: BTreeSet<Elem> = BTreeSet::new();
            for other in b.elems() {
                if other == e {
                    continue;
                }
                if let Some(t) = img.get(other) {
                    if b.lt(other, e) {
                        below.insert(t);
                    } else if b.lt(e, other) {
                        above.insert(t);
                    }
                }
            }
            let z = self.sandwich(&below, &above)?;
            img.insert(e, z);
        }
        debug_assert!(img.check_embedding(b, &self.fragment).is_ok());
        Ok(img)
    }

    /// One-point extension pass. Two phases:
    ///
    /// * every isomorphism class of posets on up to `min(k, 5)` points
    ///   (at least one point) gets a fresh disjoint copy, so the age of
    ///   the fragment afterwards contains every poset of that size;
    /// * for every pair of disjoint subsets (D, U) of the fragment as it
    ///   was on entry, with |D|+|U| <= k and d < u for all d in D, u in
    ///   U, the fragment ends up holding a witness z with exactly the
    ///   down-closure of D below it, exactly the up-closure of U above
    ///   it, and no relation to any other entry-time element. Existing
    ///   witnesses are reused; missing ones are sandwiched in, iterating
    ///   (D, U) in ascending id order.
    pub fn genericity_sweep(&mut self, k: usize) -> PResult<usize> {
        let snapshot: Vec<Elem> = self.fragment.elems().collect();
        let snapset: BTreeSet<Elem> = snapshot.iter().copied().collect();
        let mut added = 0usize;

        for n in 1..=k.clamp(1, 5) {
            for small in crate::enumerate::posets_up_to_iso(n) {
                self.realize_extension(&BTreeSet::new(), &small, &Embedding::new())?;
                added += small.len();
            }
        }

        let mut downs: Vec<BTreeSet<Elem>> = Vec::new();
        let mut ups: Vec<BTreeSet<Elem>> = Vec::new();
        for_each_split(&snapshot, k, &mut |d, u| {
            let mut ok = true;
            for &x in d {
                for &y in u {
                    if !self.fragment.lt(x, y) {
                        ok = false;
                    }
                }
            }
            if !ok {
                return;
            }
            let mut dn: BTreeSet<Elem> = d.iter().copied().collect();
            for &x in d {
                dn.extend(self.fragment.below(x).iter().copied().filter(|e| snapset.contains(e)));
            }
            let mut up: BTreeSet<Elem> = u.iter().copied().collect();
            for &y in u {
                up.extend(self.fragment.above(y).iter().copied().filter(|e| snapset.contains(e)));
            }
            downs.push(dn);
            ups.push(up);
        });

        for (dn, up) in downs.iter().zip(&ups) {
            let mut found = false;
            for z in self.fragment.elems() {
                if snapset.contains(&z) && (dn.contains(&z) || up.contains(&z)) {
                    continue;
                }
                let below_in_snap: BTreeSet<Elem> = self
                    .fragment
                    .below(z)
                    .iter()
                    .copied()
                    .filter(|e| snapset.contains(e) && *e != z)
                    .collect();
                let above_in_snap: BTreeSet<Elem> = self
                    .fragment
                    .above(z)
                    .iter()
                    .copied()
                    .filter(|e| snapset.contains(e) && *e != z)
                    .collect();
                if below_in_snap == *dn && above_in_snap == *up {
                    found = true;
                    break;
                }
            }
            if !found {
                self.sandwich(dn, up)?;
                added += 1;
            }
        }
        Ok(added)
    }

    /// Event log in line-delimited JSON.
    pub fn log_json_lines(&self) -> String {
        let mut s = String::new();
        for ev in &self.log {
            s.push_str(&serde_json::to_string(ev).expect("events serialize"));
            s.push('\n');
        }
        s
    }

    /// Rebuilds a fragment by replaying a log dump.
    pub fn replay(seed: u64, log_lines: &str) -> PResult<LazyPoset> {
        let mut lazy = LazyPoset::new(seed);
        for line in log_lines.lines() {
            if line.trim().is_empty() {
                continue;
            }
            let ev: Event = serde_json::from_str(line).map_err(|e| {
                PosetError::InvalidArgument(format!("bad log line: {e}"))
            })?;
            match ev {
                Event::Sandwich { below, above } => {
                    let b: BTreeSet<Elem> = below.into_iter().map(Elem).collect();
                    let a: BTreeSet<Elem> = above.into_iter().map(Elem).collect();
                    lazy.sandwich(&b, &a)?;
                }
            }
        }
        Ok(lazy)
    }
}

/// Calls `f` for every ordered pair of disjoint sub-slices (D, U) of
/// `elems` with |D|+|U| <= k, in ascending lexicographic id order.
fn for_each_split(elems: &[Elem], k: usize, f: &mut impl FnMut(&[Elem], &[Elem])) {
    let mut d: Vec<Elem> = Vec::new();
    let mut u: Vec<Elem> = Vec::new();
    fn pick_u(
        elems: &[Elem],
        from: usize,
        k: usize,
        d: &Vec<Elem>,
        u: &mut Vec<Elem>,
        f: &mut impl FnMut(&[Elem], &[Elem]),
    ) {
        f(d, u);
        if d.len() + u.len() == k {
            return;
        }
        for i in from..elems.len() {
            if d.contains(&elems[i]) {
                continue;
            }
            u.push(elems[i]);
            pick_u(elems, i + 1, k, d, u, f);
            u.pop();
        }
    }
    fn pick_d(
        elems: &[Elem],
        from: usize,
        k: usize,
        d: &mut Vec<Elem>,
        u: &mut Vec<Elem>,
        f: &mut impl FnMut(&[Elem], &[Elem]),
    ) {
        pick_u(elems, 0, k, d, u, f);
        if d.len() == k {
            return;
        }
        for i in from..elems.len() {
            d.push(elems[i]);
            pick_d(elems, i + 1, k, d, u, f);
            d.pop();
        }
    }
    pick_d(elems, 0, k, &mut d, &mut u, f);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::Cmp;

    fn set(v: &[Elem]) -> BTreeSet<Elem> {
        v.iter().copied().collect()
    }

    #[test]
    fn realize_extension_identity_case() {
        let mut lazy = LazyPoset::new(0);
        let a = lazy.alloc_isolated();
        let mut b = FinPoset::new();
        let ba = b.alloc();
        let anchor = Embedding::from_pairs([(ba, a)]);
        let img = lazy.realize_extension(&set(&[a]), &b, &anchor).unwrap();
        assert_eq!(img.len(), 1);
        assert_eq!(img.get(ba), Some(a));
        assert_eq!(lazy.len(), 1);
    }

    #[test]
    fn realize_extension_places_exact_relations() {
        // Fragment: chain a < b. Extension adds z with a < z < b and an
        // isolated w; both must land with exactly those relations.
        let mut lazy = LazyPoset::new(0);
        let a = lazy.alloc_isolated();
        let b = lazy.sandwich(&set(&[a]), &BTreeSet::new()).unwrap();

        let mut ext = FinPoset::new();
        let ea = ext.alloc();
        let eb = ext.alloc();
        let ez = ext.alloc();
        let ew = ext.alloc();
        ext.insert_edge(ea, eb).unwrap();
        ext.insert_edge(ea, ez).unwrap();
        ext.insert_edge(ez, eb).unwrap();
        let _ = ew;

        let anchor = Embedding::from_pairs([(ea, a), (eb, b)]);
        let img = lazy.realize_extension(&set(&[a, b]), &ext, &anchor).unwrap();
        let z = img.get(ez).unwrap();
        let w = img.get(ew).unwrap();
        let frag = lazy.fragment();
        assert_eq!(frag.compare(a, z).unwrap(), Cmp::Lt);
        assert_eq!(frag.compare(z, b).unwrap(), Cmp::Lt);
        for other in [a, b, z] {
            assert_eq!(frag.compare(w, other).unwrap(), Cmp::Inc);
        }
        frag.validate().unwrap();
    }

    #[test]
    fn realize_extension_rejects_bad_anchor() {
        let mut lazy = LazyPoset::new(0);
        let a = lazy.alloc_isolated();
        let b = lazy.alloc_isolated();
        // Extension poset believes its two anchor points are comparable.
        let mut ext = FinPoset::new();
        let ea = ext.alloc();
        let eb = ext.alloc();
        ext.insert_edge(ea, eb).unwrap();
        let anchor = Embedding::from_pairs([(ea, a), (eb, b)]);
        let err = lazy.realize_extension(&set(&[a, b]), &ext, &anchor).unwrap_err();
        assert!(matches!(err, PosetError::NotEmbedding(_)));
    }

    #[test]
    fn sweep_zero_leaves_an_isolated_point() {
        let mut lazy = LazyPoset::new(0);
        lazy.genericity_sweep(0).unwrap();
        let frag = lazy.fragment();
        assert!(frag
            .elems()
            .any(|e| frag.above(e).is_empty() && frag.below(e).is_empty()));
    }

    #[test]
    fn sweep_two_on_chain_gives_midpoint() {
        let mut lazy = LazyPoset::new(0);
        let a = lazy.alloc_isolated();
        let b = lazy.sandwich(&set(&[a]), &BTreeSet::new()).unwrap();
        lazy.genericity_sweep(2).unwrap();
        let frag = lazy.fragment();
        assert!(frag.elems().any(|z| z != a && z != b && frag.lt(a, z) && frag.lt(z, b)));
        frag.validate().unwrap();
    }

    #[test]
    fn sweep_three_on_antichain_embeds_all_small() {
        let mut lazy = LazyPoset::new(0);
        for _ in 0..3 {
            lazy.alloc_isolated();
        }
        lazy.genericity_sweep(2).unwrap();
        assert!(lazy.fragment().embeds_all_small(3));
    }

    #[test]
    fn sweep_witnesses_are_exact_over_snapshot() {
        let mut lazy = LazyPoset::new(0);
        let a = lazy.alloc_isolated();
        let b = lazy.sandwich(&set(&[a]), &BTreeSet::new()).unwrap();
        let c = lazy.alloc_isolated();
        let snap = set(&[a, b, c]);
        lazy.genericity_sweep(2).unwrap();
        let frag = lazy.fragment();
        // Witness for D={a}, U={b}: below exactly {a}, above exactly {b},
        // incomparable to c.
        assert!(frag.elems().any(|z| {
            let below: BTreeSet<Elem> =
                frag.below(z).iter().copied().filter(|e| snap.contains(e)).collect();
            let above: BTreeSet<Elem> =
                frag.above(z).iter().copied().filter(|e| snap.contains(e)).collect();
            below == set(&[a]) && above == set(&[b])
        }));
    }

    #[test]
    fn log_replay_reproduces_fragment() {
        let mut lazy = LazyPoset::new(7);
        let a = lazy.alloc_isolated();
        let b = lazy.sandwich(&set(&[a]), &BTreeSet::new()).unwrap();
        lazy.sandwich(&set(&[a]), &set(&[b])).unwrap();
        lazy.genericity_sweep(2).unwrap();
        let dump = lazy.log_json_lines();
        let replayed = LazyPoset::replay(7, &dump).unwrap();
        assert_eq!(replayed, lazy);
        assert_eq!(
            serde_json::to_string(&replayed.fragment().to_json()).unwrap(),
            serde_json::to_string(&lazy.fragment().to_json()).unwrap()
        );
    }

    #[test]
    fn equal_call_sequences_build_identical_fragments() {
        let build = || {
            let mut lazy = LazyPoset::new(3);
            let a = lazy.alloc_isolated();
            let b = lazy.sandwich(&set(&[a]), &BTreeSet::new()).unwrap();
            lazy.sandwich(&set(&[a]), &set(&[b])).unwrap();
            lazy.genericity_sweep(3).unwrap();
            lazy
        };
        let one = build();
        let two = build();
        assert_eq!(one, two);
    }

    #[test]
    fn monotone_growth_preserves_old_relations() {
        let mut lazy = LazyPoset::new(0);
        let a = lazy.alloc_isolated();
        let b = lazy.sandwich(&set(&[a]), &BTreeSet::new()).unwrap();
        let before = lazy.snapshot();
        lazy.genericity_sweep(3).unwrap();
        let keep = set(&[a, b]);
        assert_eq!(lazy.fragment().restrict(&keep), before.restrict(&keep));
    }
}
