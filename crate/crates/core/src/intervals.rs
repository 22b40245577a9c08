//! Intervals of a lattice and the closure hierarchy of interval sets:
//! abstract ⊆ basic ⊆ congruence ⊆ division.
//!
//! The interval universe of a lattice is every pair `lo <= hi`, enumerated
//! lexicographically by index. An [`IntervalSet`] is a bitset over that
//! universe. [`Intervals`] borrows the host lattice and carries the
//! precomputed similarity pairs.

use std::fmt;

use bitvec::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inflator::Inflator;
use crate::lattice::{Digest, Elem, FiniteLattice};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Interval {
    pub lo: Elem,
    pub hi: Elem,
}

impl Interval {
    pub fn new(lo: Elem, hi: Elem) -> Self {
        Interval { lo, hi }
    }

    pub fn is_trivial(&self) -> bool {
        self.lo == self.hi
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Raw,
    Abstract,
    Basic,
    Congruence,
    Division,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Level::Raw => "raw",
            Level::Abstract => "abstract",
            Level::Basic => "basic",
            Level::Congruence => "congruence",
            Level::Division => "division",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Level> {
        Ok(match s {
            "raw" => Level::Raw,
            "abstract" => Level::Abstract,
            "basic" => Level::Basic,
            "congruence" => Level::Congruence,
            "division" => Level::Division,
            other => return Err(Error::Malformed(format!("unknown level `{other}`"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalSet {
    host: Digest,
    members: BitVec,
    level: Level,
}

impl IntervalSet {
    pub fn host(&self) -> Digest {
        self.host
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn contains_index(&self, i: usize) -> bool {
        self.members[i]
    }

    pub fn len(&self) -> usize {
        self.members.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.members.not_any()
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter_ones()
    }

    pub fn is_subset(&self, other: &IntervalSet) -> bool {
        self.members.iter_ones().all(|i| other.members[i])
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        IntervalSet {
            host: self.host,
            members: self.members.clone() | other.members.clone(),
            level: Level::Raw,
        }
    }

    pub fn intersection(&self, other: &IntervalSet) -> IntervalSet {
        IntervalSet {
            host: self.host,
            members: self.members.clone() & other.members.clone(),
            level: Level::Raw,
        }
    }

    pub fn same_members(&self, other: &IntervalSet) -> bool {
        self.members == other.members
    }
}

/// Per-interval classification.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IntervalFlags {
    pub simple: bool,
    pub complemented: bool,
    pub atomic: bool,
    pub strongly_atomic: bool,
    pub uniform: bool,
    pub b_simple: bool,
    pub b_complemented: bool,
    pub b_critical: bool,
}

pub struct Intervals<'a> {
    lat: &'a FiniteLattice,
    list: Vec<Interval>,
    index: Vec<Option<usize>>,
    similar: Vec<(usize, usize)>,
}

impl<'a> Intervals<'a> {
    pub fn new(lat: &'a FiniteLattice) -> Self {
        let n = lat.len();
        let mut list = Vec::new();
        let mut index = vec![None; n * n];
        for lo in 0..n {
            for hi in 0..n {
                if lat.leq(lo, hi) {
                    index[lo * n + hi] = Some(list.len());
                    list.push(Interval::new(lo, hi));
                }
            }
        }
        let mut similar = Vec::with_capacity(n * n);
        for l in 0..n {
            for r in 0..n {
                let left = index[l * n + lat.join(l, r)].expect("l <= l∨r");
                let right = index[lat.meet(l, r) * n + r].expect("l∧r <= r");
                if left != right {
                    similar.push((left, right));
                }
            }
        }
        similar.sort_unstable();
        similar.dedup();
        Intervals {
            lat,
            list,
            index,
            similar,
        }
    }

    pub fn lattice(&self) -> &FiniteLattice {
        self.lat
    }

    /// The full universe in canonical order.
    pub fn all_intervals(&self) -> &[Interval] {
        &self.list
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn get(&self, i: usize) -> Interval {
        self.list[i]
    }

    pub fn index_of(&self, iv: Interval) -> Option<usize> {
        let n = self.lat.len();
        if iv.lo >= n || iv.hi >= n {
            return None;
        }
        self.index[iv.lo * n + iv.hi]
    }

    fn idx(&self, lo: Elem, hi: Elem) -> usize {
        self.index[lo * self.lat.len() + hi].expect("endpoints are ordered")
    }

    fn check_host(&self, s: &IntervalSet) -> Result<()> {
        if s.host != self.lat.digest() || s.members.len() != self.list.len() {
            return Err(Error::HostMismatch(
                s.host.to_hex(),
                self.lat.digest().to_hex(),
            ));
        }
        Ok(())
    }

    pub fn empty(&self) -> IntervalSet {
        IntervalSet {
            host: self.lat.digest(),
            members: bitvec![0; self.list.len()],
            level: Level::Raw,
        }
    }

    pub fn from_intervals<I: IntoIterator<Item = Interval>>(&self, ivs: I) -> Result<IntervalSet> {
        let mut s = self.empty();
        for iv in ivs {
            let i = self.index_of(iv).ok_or_else(|| {
                Error::BadParameter(format!("[{}, {}] is not an interval", iv.lo, iv.hi))
            })?;
            s.members.set(i, true);
        }
        Ok(s)
    }

    fn from_predicate<F: Fn(Interval) -> bool>(&self, level: Level, f: F) -> IntervalSet {
        let mut s = self.empty();
        for (i, &iv) in self.list.iter().enumerate() {
            if f(iv) {
                s.members.set(i, true);
            }
        }
        s.level = level;
        s
    }

    /// 𝓞: the trivial intervals.
    pub fn trivial(&self) -> IntervalSet {
        self.from_predicate(Level::Division, |iv| iv.is_trivial())
    }

    pub fn everything(&self) -> IntervalSet {
        self.from_predicate(Level::Division, |_| true)
    }

    pub fn intervals_of(&self, s: &IntervalSet) -> Vec<Interval> {
        s.indices().map(|i| self.list[i]).collect()
    }

    /// `I ~ J` iff `{I, J} = {[l, l∨r], [l∧r, r]}` for some `l, r`. Returns
    /// the first witness `(l, r)` in index order.
    pub fn are_similar(&self, i: Interval, j: Interval) -> Option<(Elem, Elem)> {
        let lat = self.lat;
        for l in lat.elements() {
            for r in lat.elements() {
                let left = Interval::new(l, lat.join(l, r));
                let right = Interval::new(lat.meet(l, r), r);
                if (left == i && right == j) || (left == j && right == i) {
                    return Some((l, r));
                }
            }
        }
        None
    }

    /// Least set at `target` containing `s`, by iterating the generating
    /// rules to a fixpoint.
    pub fn close(&self, s: &IntervalSet, target: Level) -> Result<IntervalSet> {
        self.check_host(s)?;
        let lat = self.lat;
        let n = lat.len();
        let mut m = s.members.clone();
        if target == Level::Raw {
            return Ok(IntervalSet {
                level: Level::Raw,
                ..s.clone()
            });
        }
        if target >= Level::Basic {
            for x in 0..n {
                m.set(self.idx(x, x), true);
            }
        }
        loop {
            let mut changed = false;
            for &(a, b) in &self.similar {
                if m[a] != m[b] {
                    m.set(a, true);
                    m.set(b, true);
                    changed = true;
                }
            }
            if target >= Level::Basic {
                let current: Vec<usize> = m.iter_ones().collect();
                for i in current {
                    let Interval { lo, hi } = self.list[i];
                    for c in lat.between(lo, hi) {
                        for d in lat.between(c, hi) {
                            let k = self.idx(c, d);
                            if !m[k] {
                                m.set(k, true);
                                changed = true;
                            }
                        }
                    }
                }
            }
            if target >= Level::Congruence {
                let current: Vec<usize> = m.iter_ones().collect();
                for &i in &current {
                    let Interval { lo: a, hi: b } = self.list[i];
                    for c in lat.elements() {
                        if lat.leq(b, c) && m[self.idx(b, c)] {
                            let k = self.idx(a, c);
                            if !m[k] {
                                m.set(k, true);
                                changed = true;
                            }
                        }
                    }
                }
            }
            if target >= Level::Division {
                for a in 0..n {
                    let sup = lat.join_all(
                        lat.elements()
                            .filter(|&x| lat.leq(a, x) && m[self.idx(a, x)]),
                    );
                    let k = self.idx(a, sup);
                    if !m[k] {
                        m.set(k, true);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        if target == Level::Abstract && m.not_any() {
            return Err(Error::BadParameter(
                "an abstract set must be non-empty".into(),
            ));
        }
        Ok(IntervalSet {
            host: lat.digest(),
            members: m,
            level: target,
        })
    }

    pub fn is_closed_under_similarity(&self, s: &IntervalSet) -> bool {
        self.similar
            .iter()
            .all(|&(a, b)| s.members[a] == s.members[b])
    }

    pub fn is_closed_under_subintervals(&self, s: &IntervalSet) -> bool {
        let lat = self.lat;
        s.indices().all(|i| {
            let Interval { lo, hi } = self.list[i];
            lat.between(lo, hi)
                .all(|c| lat.between(c, hi).all(|d| s.members[self.idx(c, d)]))
        })
    }

    pub fn is_closed_under_abutting(&self, s: &IntervalSet) -> bool {
        let lat = self.lat;
        s.indices().all(|i| {
            let Interval { lo: a, hi: b } = self.list[i];
            lat.elements()
                .filter(|&c| lat.leq(b, c) && s.members[self.idx(b, c)])
                .all(|c| s.members[self.idx(a, c)])
        })
    }

    pub fn is_predivision(&self, s: &IntervalSet) -> bool {
        let lat = self.lat;
        lat.elements().all(|a| {
            let sup = lat.join_all(
                lat.elements()
                    .filter(|&x| lat.leq(a, x) && s.members[self.idx(a, x)]),
            );
            s.members[self.idx(a, sup)]
        })
    }

    /// Highest level whose closure conditions `s` satisfies.
    pub fn level_of(&self, s: &IntervalSet) -> Level {
        if s.is_empty() || !self.is_closed_under_similarity(s) {
            return Level::Raw;
        }
        if !self.is_closed_under_subintervals(s) {
            return Level::Abstract;
        }
        if !self.is_closed_under_abutting(s) {
            return Level::Basic;
        }
        if !self.is_predivision(s) {
            return Level::Congruence;
        }
        Level::Division
    }

    /// Returns `s` tagged with the level it actually satisfies.
    pub fn validate(&self, s: &IntervalSet) -> Result<IntervalSet> {
        self.check_host(s)?;
        Ok(IntervalSet {
            level: self.level_of(s),
            ..s.clone()
        })
    }

    fn require_basic(&self, b: &IntervalSet) -> Result<()> {
        self.check_host(b)?;
        if self.level_of(b) < Level::Basic {
            return Err(Error::NotBasic);
        }
        Ok(())
    }

    pub fn is_simple(&self, iv: Interval) -> bool {
        let lat = self.lat;
        !lat.elements().any(|x| lat.lt(iv.lo, x) && lat.lt(x, iv.hi))
    }

    pub fn is_complemented(&self, iv: Interval) -> bool {
        let lat = self.lat;
        lat.between(iv.lo, iv.hi).all(|x| {
            lat.between(iv.lo, iv.hi)
                .any(|y| lat.meet(x, y) == iv.lo && lat.join(x, y) == iv.hi)
        })
    }

    pub fn is_atomic(&self, iv: Interval) -> bool {
        let lat = self.lat;
        lat.between(iv.lo, iv.hi).filter(|&d| d != iv.lo).all(|d| {
            lat.between(iv.lo, d)
                .any(|z| z != iv.lo && self.is_simple(Interval::new(iv.lo, z)))
        })
    }

    pub fn is_strongly_atomic(&self, iv: Interval) -> bool {
        let lat = self.lat;
        lat.between(iv.lo, iv.hi).all(|c| {
            lat.between(c, iv.hi).filter(|&d| d != c).all(|d| {
                lat.between(c, d)
                    .any(|z| z != c && self.is_simple(Interval::new(c, z)))
            })
        })
    }

    pub fn is_uniform(&self, iv: Interval) -> bool {
        let lat = self.lat;
        !iv.is_trivial()
            && lat.between(iv.lo, iv.hi).all(|x| {
                lat.between(iv.lo, iv.hi)
                    .all(|y| lat.meet(x, y) != iv.lo || x == iv.lo || y == iv.lo)
            })
    }

    fn in_set(&self, b: &IntervalSet, lo: Elem, hi: Elem) -> bool {
        b.members[self.idx(lo, hi)]
    }

    /// `[a,b]` is `B`-simple: each `x` in it has `[a,x] ∈ B` or `[x,b] ∈ B`.
    pub fn is_b_simple(&self, b: &IntervalSet, iv: Interval) -> bool {
        self.lat
            .between(iv.lo, iv.hi)
            .all(|x| self.in_set(b, iv.lo, x) || self.in_set(b, x, iv.hi))
    }

    pub fn is_b_complemented(&self, b: &IntervalSet, iv: Interval) -> bool {
        let lat = self.lat;
        lat.between(iv.lo, iv.hi).all(|x| {
            lat.between(iv.lo, iv.hi).any(|y| {
                self.in_set(b, iv.lo, lat.meet(x, y)) && self.in_set(b, lat.join(x, y), iv.hi)
            })
        })
    }

    /// `[a,b]` is `B`-critical: each `x` in it has `x = a` or `[x,b] ∈ B`.
    pub fn is_b_critical(&self, b: &IntervalSet, iv: Interval) -> bool {
        self.lat
            .between(iv.lo, iv.hi)
            .all(|x| x == iv.lo || self.in_set(b, x, iv.hi))
    }

    /// Flag table over the universe. With `b = None` the relative flags are
    /// taken against 𝓞.
    pub fn classify(&self, b: Option<&IntervalSet>) -> Result<Vec<IntervalFlags>> {
        let owned;
        let b = match b {
            Some(b) => {
                self.require_basic(b)?;
                b
            }
            None => {
                owned = self.trivial();
                &owned
            }
        };
        Ok(self
            .list
            .iter()
            .map(|&iv| IntervalFlags {
                simple: self.is_simple(iv),
                complemented: self.is_complemented(iv),
                atomic: self.is_atomic(iv),
                strongly_atomic: self.is_strongly_atomic(iv),
                uniform: self.is_uniform(iv),
                b_simple: self.is_b_simple(b, iv),
                b_complemented: self.is_b_complemented(b, iv),
                b_critical: self.is_b_critical(b, iv),
            })
            .collect())
    }

    /// Smp: the simple intervals (trivial ones included).
    pub fn simple_set(&self) -> IntervalSet {
        self.from_predicate(Level::Raw, |iv| self.is_simple(iv))
    }

    /// Cmp: the complemented intervals.
    pub fn complemented_set(&self) -> IntervalSet {
        self.from_predicate(Level::Raw, |iv| self.is_complemented(iv))
    }

    pub fn strongly_atomic_set(&self) -> IntervalSet {
        self.from_predicate(Level::Raw, |iv| self.is_strongly_atomic(iv))
    }

    pub fn b_simple_set(&self, b: &IntervalSet) -> Result<IntervalSet> {
        self.require_basic(b)?;
        Ok(self.from_predicate(Level::Raw, |iv| self.is_b_simple(b, iv)))
    }

    pub fn b_complemented_set(&self, b: &IntervalSet) -> Result<IntervalSet> {
        self.require_basic(b)?;
        Ok(self.from_predicate(Level::Raw, |iv| self.is_b_complemented(b, iv)))
    }

    /// Crt(B).
    pub fn critical_set(&self, b: &IntervalSet) -> Result<IntervalSet> {
        self.require_basic(b)?;
        Ok(self.from_predicate(Level::Raw, |iv| self.is_b_critical(b, iv)))
    }

    /// `|B|(a) = ⋁{x : [a,x] ∈ B}`.
    pub fn associated_inflator(&self, b: &IntervalSet) -> Result<Inflator> {
        self.require_basic(b)?;
        let lat = self.lat;
        let values = lat
            .elements()
            .map(|a| {
                lat.join_all(
                    lat.elements()
                        .filter(|&x| lat.leq(a, x) && self.in_set(b, a, x)),
                )
            })
            .collect();
        Inflator::new(lat, values)
    }

    /// `D_j = {[a,b] : j(a) = j(b)}`.
    pub fn division_set_of(&self, j: &Inflator) -> Result<IntervalSet> {
        if j.host() != self.lat.digest() {
            return Err(Error::HostMismatch(
                j.host().to_hex(),
                self.lat.digest().to_hex(),
            ));
        }
        if !j.is_nucleus() {
            return Err(Error::NotANucleus);
        }
        Ok(self.from_predicate(Level::Division, |iv| j.at(iv.lo) == j.at(iv.hi)))
    }

    /// `soc = |Smp|`. Smp is closed to a basic set first; on modular lattices
    /// that closure changes nothing.
    pub fn soc(&self) -> Result<Inflator> {
        let b = self.close(&self.simple_set(), Level::Basic)?;
        self.associated_inflator(&b)
    }

    /// `cbd = |Cmp|`, with the same basic closure as [`Self::soc`].
    pub fn cbd(&self) -> Result<Inflator> {
        let b = self.close(&self.complemented_set(), Level::Basic)?;
        self.associated_inflator(&b)
    }

    /// `|close({[a,b]}, division)|`: the least nucleus collapsing `[a,b]`.
    pub fn xi_via_division(&self, a: Elem, b: Elem) -> Result<Inflator> {
        let seed = self.from_intervals([Interval::new(a, b)])?;
        let d = self.close(&seed, Level::Division)?;
        self.associated_inflator(&d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inflator;
    use crate::lattice::{generate, Family};

    fn c3() -> FiniteLattice {
        generate(Family::Chain(3)).unwrap()
    }

    fn iv(l: &FiniteLattice, a: &str, b: &str) -> Interval {
        Interval::new(l.elem(a).unwrap(), l.elem(b).unwrap())
    }

    #[test]
    fn universe_sizes() {
        let c2 = generate(Family::Chain(2)).unwrap();
        let u = Intervals::new(&c2);
        assert_eq!(
            u.all_intervals(),
            [
                Interval::new(0, 0),
                Interval::new(0, 1),
                Interval::new(1, 1)
            ]
        );
        assert_eq!(Intervals::new(&c3()).len(), 6);
        assert_eq!(
            Intervals::new(&generate(Family::Boolean(2)).unwrap()).len(),
            9
        );
    }

    #[test]
    fn similarity() {
        let b2 = generate(Family::Boolean(2)).unwrap();
        let u = Intervals::new(&b2);
        let w = u.are_similar(iv(&b2, "0", "b"), iv(&b2, "a", "1")).unwrap();
        let (l, r) = w;
        assert_eq!(Interval::new(l, b2.join(l, r)), iv(&b2, "a", "1"));
        assert_eq!(Interval::new(b2.meet(l, r), r), iv(&b2, "0", "b"));
        for &i in u.all_intervals() {
            assert!(u.are_similar(i, i).is_some());
        }
        let l = c3();
        let u = Intervals::new(&l);
        assert!(u.are_similar(iv(&l, "0", "m"), iv(&l, "m", "1")).is_none());
    }

    #[test]
    fn closures_on_chain3() {
        let l = c3();
        let u = Intervals::new(&l);
        let triv = u.close(&u.empty(), Level::Division).unwrap();
        assert!(triv.same_members(&u.trivial()));

        let seed = u.from_intervals([iv(&l, "0", "m")]).unwrap();
        let d = u.close(&seed, Level::Division).unwrap();
        let got = u.intervals_of(&d);
        assert!(got.contains(&iv(&l, "0", "m")));
        assert!(!got.contains(&iv(&l, "m", "1")));
        assert!(!got.contains(&iv(&l, "0", "1")));
        assert_eq!(u.level_of(&d), Level::Division);

        let seed = u
            .from_intervals([iv(&l, "0", "m"), iv(&l, "m", "1")])
            .unwrap();
        let c = u.close(&seed, Level::Congruence).unwrap();
        assert!(u.intervals_of(&c).contains(&iv(&l, "0", "1")));
    }

    #[test]
    fn classification_examples() {
        let l = c3();
        let u = Intervals::new(&l);
        let flags = u.classify(None).unwrap();
        let f = flags[u.index_of(iv(&l, "0", "m")).unwrap()];
        assert!(f.simple && f.complemented && f.atomic && f.strongly_atomic && f.uniform);
        let f = flags[u.index_of(iv(&l, "0", "1")).unwrap()];
        assert!(!f.simple && !f.complemented && f.atomic && f.strongly_atomic && f.uniform);
        for f in &flags {
            assert_eq!(f.b_simple, f.simple);
            assert_eq!(f.b_critical, f.simple);
        }

        let b2 = generate(Family::Boolean(2)).unwrap();
        let u = Intervals::new(&b2);
        let flags = u.classify(None).unwrap();
        let f = flags[u.index_of(iv(&b2, "0", "1")).unwrap()];
        assert!(!f.simple && f.complemented && f.atomic && f.strongly_atomic && !f.uniform);
    }

    #[test]
    fn classify_rejects_non_basic() {
        let l = c3();
        let u = Intervals::new(&l);
        let raw = u.from_intervals([iv(&l, "0", "1")]).unwrap();
        assert!(matches!(u.classify(Some(&raw)), Err(Error::NotBasic)));
        assert!(matches!(u.associated_inflator(&raw), Err(Error::NotBasic)));
    }

    #[test]
    fn associated_inflators() {
        let l = c3();
        let u = Intervals::new(&l);
        assert_eq!(
            u.associated_inflator(&u.trivial()).unwrap(),
            inflator::identity(&l)
        );
        let soc = u.soc().unwrap();
        assert_eq!(soc.values(), [1, 2, 2]);

        let b2 = generate(Family::Boolean(2)).unwrap();
        let ub = Intervals::new(&b2);
        let cbd = ub.cbd().unwrap();
        assert_eq!(cbd.at(b2.bottom()), b2.top());
    }

    #[test]
    fn division_sets_of_nuclei() {
        let l = c3();
        let u = Intervals::new(&l);
        assert!(u
            .division_set_of(&inflator::identity(&l))
            .unwrap()
            .same_members(&u.trivial()));
        assert!(u
            .division_set_of(&inflator::top(&l))
            .unwrap()
            .same_members(&u.everything()));
        let um = inflator::named(&l, inflator::Named::U(1));
        let d = u.division_set_of(&um).unwrap();
        let mut expected = u.intervals_of(&u.trivial());
        expected.push(iv(&l, "0", "m"));
        expected.sort();
        assert_eq!(u.intervals_of(&d), expected);
        assert_eq!(u.associated_inflator(&d).unwrap(), um);

        let not_nucleus = Inflator::new(&l, vec![1, 2, 2]).unwrap();
        assert!(matches!(
            u.division_set_of(&not_nucleus),
            Err(Error::NotANucleus)
        ));
    }

    #[test]
    fn xi_by_division_closure() {
        let l = c3();
        let u = Intervals::new(&l);
        assert_eq!(
            u.xi_via_division(0, 1).unwrap(),
            inflator::named(&l, inflator::Named::U(1))
        );
        assert_eq!(u.xi_via_division(1, 2).unwrap().values(), [0, 2, 2]);
        assert_eq!(u.xi_via_division(1, 1).unwrap(), inflator::identity(&l));
    }

    #[test]
    fn basic_sets_form_a_frame_on_chain3() {
        // every subset of the 6-interval universe: unions and intersections of
        // basic sets are basic
        let l = c3();
        let u = Intervals::new(&l);
        let mut basics = Vec::new();
        for mask in 0u32..(1 << u.len()) {
            let s = u
                .from_intervals(
                    (0..u.len())
                        .filter(|i| mask & (1 << i) != 0)
                        .map(|i| u.get(i)),
                )
                .unwrap();
            if u.level_of(&s) >= Level::Basic {
                basics.push(s);
            }
        }
        assert!(!basics.is_empty());
        for a in &basics {
            for b in &basics {
                assert!(u.level_of(&a.union(b)) >= Level::Basic);
                assert!(u.level_of(&a.intersection(b)) >= Level::Basic);
            }
        }
    }
}
