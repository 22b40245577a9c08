//! Enumerated families of inflators (all, stable, prenuclei, closure
//! operators, nuclei) reified as finite lattices, so that they can host a
//! second round of computation.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inflator::{self, Inflator};
use crate::lattice::{Digest, Elem, FiniteLattice};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    All,
    Stable,
    Prenucleus,
    /// Idempotent inflators.
    Closure,
    Nucleus,
}

impl FamilyKind {
    pub fn admits(self, d: &Inflator) -> bool {
        match self {
            FamilyKind::All => true,
            FamilyKind::Stable => d.is_stable(),
            FamilyKind::Prenucleus => d.is_prenucleus(),
            FamilyKind::Closure => d.is_idempotent(),
            FamilyKind::Nucleus => d.is_nucleus(),
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FamilyKind::All => "all",
            FamilyKind::Stable => "stable",
            FamilyKind::Prenucleus => "prenucleus",
            FamilyKind::Closure => "closure",
            FamilyKind::Nucleus => "nucleus",
        };
        f.write_str(s)
    }
}

/// Enumerated inflators of one kind, in lexicographic order of their tables.
#[derive(Debug)]
pub struct OperatorLattice {
    host: FiniteLattice,
    kind: FamilyKind,
    members: Vec<Inflator>,
    index: HashMap<Vec<Elem>, usize>,
    as_lattice: OnceLock<FiniteLattice>,
}

impl Clone for OperatorLattice {
    fn clone(&self) -> Self {
        OperatorLattice {
            host: self.host.clone(),
            kind: self.kind,
            members: self.members.clone(),
            index: self.index.clone(),
            as_lattice: self.as_lattice.clone(),
        }
    }
}

/// Depth-first enumeration of every monotone inflationary self-map, visiting
/// elements in a linear extension so that each value only has to dominate the
/// element itself and the values already chosen for its lower covers.
pub fn for_each_inflator<F>(lat: &FiniteLattice, bound: usize, mut visit: F) -> Result<usize>
where
    F: FnMut(&[Elem]),
{
    let order = lat.linear_extension();
    let lower: Vec<Vec<Elem>> = lat.elements().map(|x| lat.lower_covers(x)).collect();
    let mut values = vec![usize::MAX; lat.len()];
    let mut count = 0usize;

    fn rec<F: FnMut(&[Elem])>(
        lat: &FiniteLattice,
        order: &[Elem],
        lower: &[Vec<Elem>],
        pos: usize,
        values: &mut Vec<Elem>,
        count: &mut usize,
        bound: usize,
        visit: &mut F,
    ) -> bool {
        if pos == order.len() {
            *count += 1;
            if *count > bound {
                return false;
            }
            visit(values);
            return true;
        }
        let x = order[pos];
        for v in lat.elements() {
            if !lat.leq(x, v) || !lower[x].iter().all(|&p| lat.leq(values[p], v)) {
                continue;
            }
            values[x] = v;
            if !rec(lat, order, lower, pos + 1, values, count, bound, visit) {
                return false;
            }
        }
        values[x] = usize::MAX;
        true
    }

    if !rec(
        lat,
        &order,
        &lower,
        0,
        &mut values,
        &mut count,
        bound,
        &mut visit,
    ) {
        return Err(Error::EnumerationBoundExceeded {
            bound,
            reached: count,
            what: format!("inflators on {}", lat.name()),
        });
    }
    Ok(count)
}

impl OperatorLattice {
    pub fn enumerate(
        lat: &FiniteLattice,
        kind: FamilyKind,
        bound: usize,
    ) -> Result<OperatorLattice> {
        let mut tables: Vec<Vec<Elem>> = Vec::new();
        for_each_inflator(lat, bound, |v| tables.push(v.to_vec()))?;
        tables.sort();
        let members: Vec<Inflator> = tables
            .into_iter()
            .map(|t| Inflator::trusted(lat, t))
            .filter(|d| kind.admits(d))
            .collect();
        Ok(Self::from_members(lat, kind, members))
    }

    /// Wraps an explicit member list; it is sorted into canonical order.
    pub fn from_members(lat: &FiniteLattice, kind: FamilyKind, mut members: Vec<Inflator>) -> Self {
        members.sort_by(|a, b| a.values().cmp(b.values()));
        members.dedup();
        let index = members
            .iter()
            .enumerate()
            .map(|(i, d)| (d.values().to_vec(), i))
            .collect();
        OperatorLattice {
            host: lat.clone(),
            kind,
            members,
            index,
            as_lattice: OnceLock::new(),
        }
    }

    pub fn host(&self) -> &FiniteLattice {
        &self.host
    }

    pub fn host_digest(&self) -> Digest {
        self.host.digest()
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Inflator] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &Inflator {
        &self.members[i]
    }

    pub fn find(&self, d: &Inflator) -> Option<usize> {
        if d.host() != self.host.digest() {
            return None;
        }
        self.index.get(d.values()).copied()
    }

    pub fn find_values(&self, values: &[Elem]) -> Option<usize> {
        self.index.get(values).copied()
    }

    pub fn require(&self, d: &Inflator) -> Result<usize> {
        self.find(d).ok_or(Error::MemberNotInFamily)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.members[i].le(&self.host, &self.members[j])
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    /// The identity, which every family contains.
    pub fn bottom(&self) -> usize {
        self.find(&inflator::identity(&self.host))
            .expect("identity belongs to every family")
    }

    /// The constant-top inflator, which every family contains.
    pub fn top(&self) -> usize {
        self.find(&inflator::top(&self.host))
            .expect("constant top belongs to every family")
    }

    /// Meet inside the family. Every supported family is closed under
    /// pointwise meets.
    pub fn meet(&self, i: usize, j: usize) -> usize {
        let m = inflator::meet2(&self.host, &self.members[i], &self.members[j]);
        self.find(&m)
            .expect("families are closed under pointwise meets")
    }

    /// Least upper bound inside the family: the pointwise meet of every member
    /// above both arguments.
    pub fn join(&self, i: usize, j: usize) -> usize {
        let pointwise = inflator::join2(&self.host, &self.members[i], &self.members[j]);
        if let Some(k) = self.find(&pointwise) {
            return k;
        }
        self.least_upper_bound(&[i, j])
    }

    pub fn least_upper_bound(&self, xs: &[usize]) -> usize {
        let n = self.host.len();
        let mut acc = vec![self.host.top(); n];
        for (k, d) in self.members.iter().enumerate() {
            if xs.iter().all(|&x| self.leq(x, k)) {
                for a in 0..n {
                    acc[a] = self.host.meet(acc[a], d.at(a));
                }
            }
        }
        self.find_values(&acc)
            .expect("families are closed under pointwise meets")
    }

    pub fn join_all<I: IntoIterator<Item = usize>>(&self, xs: I) -> usize {
        xs.into_iter()
            .fold(self.bottom(), |acc, x| self.join(acc, x))
    }

    pub fn meet_all<I: IntoIterator<Item = usize>>(&self, xs: I) -> usize {
        xs.into_iter().fold(self.top(), |acc, x| self.meet(acc, x))
    }

    /// The family as a lattice over member indices (labels `d0`, `d1`, ...).
    pub fn as_lattice(&self) -> &FiniteLattice {
        self.as_lattice.get_or_init(|| {
            let m = self.len();
            let labels: Vec<String> = (0..m).map(|i| format!("d{i}")).collect();
            let mut leq = vec![false; m * m];
            for i in 0..m {
                for j in 0..m {
                    leq[i * m + j] = self.leq(i, j);
                }
            }
            FiniteLattice::from_order(&format!("{}({})", self.kind, self.host.name()), labels, leq)
                .expect("an operator family is a complete lattice")
        })
    }

    pub fn upper_covers(&self, i: usize) -> Vec<usize> {
        let above: Vec<usize> = (0..self.len()).filter(|&j| self.lt(i, j)).collect();
        above
            .iter()
            .copied()
            .filter(|&j| !above.iter().any(|&k| self.lt(k, j)))
            .collect()
    }

    /// `¬s`: the join of every member whose meet with `s` is the bottom.
    /// `valid` reports whether that join still meets `s` at the bottom.
    pub fn pseudocomplement(&self, s: usize) -> (usize, bool) {
        let bottom = self.bottom();
        let disjoint: Vec<usize> = (0..self.len())
            .filter(|&z| self.meet(z, s) == bottom)
            .collect();
        let neg = self.join_all(disjoint);
        (neg, self.meet(neg, s) == bottom)
    }

    pub fn pseudocomplement_of(&self, s: &Inflator) -> Result<(usize, bool)> {
        Ok(self.pseudocomplement(self.require(s)?))
    }

    /// Unique upper cover; excludes the top.
    pub fn is_meet_irreducible(&self, d: usize) -> bool {
        d != self.top() && self.upper_covers(d).len() == 1
    }

    /// `d ≠ top`, and `k ∧ l = d` forces `k = d` or `l = d`.
    pub fn is_meet_prime(&self, d: usize) -> bool {
        if d == self.top() {
            return false;
        }
        for k in 0..self.len() {
            if !self.leq(d, k) {
                continue;
            }
            for l in 0..self.len() {
                if self.leq(d, l) && self.meet(k, l) == d && k != d && l != d {
                    return false;
                }
            }
        }
        true
    }

    /// Order-theoretic primeness: `d ≠ top`, and `k ∧ l <= d` forces `k <= d`
    /// or `l <= d`.
    pub fn is_meet_prime_strong(&self, d: usize) -> bool {
        if d == self.top() {
            return false;
        }
        for k in 0..self.len() {
            if self.leq(k, d) {
                continue;
            }
            for l in 0..self.len() {
                if !self.leq(l, d) && self.leq(self.meet(k, l), d) {
                    return false;
                }
            }
        }
        true
    }

    /// `e` is essential in `[lo, hi]`: every `y` in the interval with
    /// `e ∧ y = lo` equals `lo`. Members of the interval are taken from the
    /// family; `lo` itself need not be a member.
    pub fn is_essential(&self, e: usize, lo: &Inflator, hi: &Inflator) -> bool {
        let lat = &self.host;
        (0..self.len()).all(|y| {
            let m = &self.members[y];
            if !(lo.le(lat, m) && m.le(lat, hi)) {
                return true;
            }
            let met = inflator::meet2(lat, &self.members[e], m);
            met != *lo || m == lo
        })
    }

    pub fn predicates(
        &self,
        d: usize,
        interval: Option<(&Inflator, &Inflator)>,
    ) -> OrderPredicates {
        OrderPredicates {
            meet_prime: self.is_meet_prime(d),
            meet_irreducible: self.is_meet_irreducible(d),
            meet_prime_strong: self.is_meet_prime_strong(d),
            essential: interval.map(|(lo, hi)| self.is_essential(d, lo, hi)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OrderPredicates {
    pub meet_prime: bool,
    pub meet_irreducible: bool,
    pub meet_prime_strong: bool,
    pub essential: Option<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extremum {
    /// `⋀{z : z∘d = top}`
    Totalizer,
    /// `⋁{z : z∘d = d}`
    Equalizer,
}

/// Brute-force extremum over an enumerated family. This is the oracle for the
/// closed forms in [`Inflator::totalizer`] and [`Inflator::equalizer`], and
/// the definition of the partial totalizers on restricted families.
pub fn brute_extremum(family: &OperatorLattice, d: &Inflator, which: Extremum) -> Result<Inflator> {
    let lat = family.host();
    if d.host() != lat.digest() {
        return Err(Error::HostMismatch(
            d.host().to_hex(),
            lat.digest().to_hex(),
        ));
    }
    let n = lat.len();
    let top = lat.top();
    let qualifies = |z: &Inflator| -> bool {
        (0..n).all(|a| {
            let za = z.at(d.at(a));
            match which {
                Extremum::Totalizer => za == top,
                Extremum::Equalizer => za == d.at(a),
            }
        })
    };
    let hits: Vec<usize> = (0..family.len())
        .filter(|&i| qualifies(family.member(i)))
        .collect();
    let idx = match which {
        Extremum::Totalizer => family.meet_all(hits),
        Extremum::Equalizer => family.join_all(hits),
    };
    Ok(family.member(idx).clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inflator::{named, Named};
    use crate::lattice::{generate, Family};

    fn c3() -> FiniteLattice {
        generate(Family::Chain(3)).unwrap()
    }

    fn inf(l: &FiniteLattice, t: &[&str]) -> Inflator {
        let pairs: Vec<(&str, &str)> = l
            .labels()
            .iter()
            .map(|s| s.as_str())
            .zip(t.iter().copied())
            .collect();
        Inflator::from_labels(l, &pairs).unwrap()
    }

    #[test]
    fn counts_on_small_chains() {
        let c2 = generate(Family::Chain(2)).unwrap();
        assert_eq!(
            OperatorLattice::enumerate(&c2, FamilyKind::All, 100)
                .unwrap()
                .len(),
            2
        );
        let l = c3();
        let all = OperatorLattice::enumerate(&l, FamilyKind::All, 100).unwrap();
        assert_eq!(all.len(), 5);
        let nuc = OperatorLattice::enumerate(&l, FamilyKind::Nucleus, 100).unwrap();
        let expected = [
            inflator::identity(&l),
            inf(&l, &["m", "m", "1"]),
            inf(&l, &["0", "1", "1"]),
            inflator::top(&l),
        ];
        assert_eq!(nuc.len(), 4);
        for e in &expected {
            assert!(nuc.find(e).is_some());
        }
    }

    #[test]
    fn enumeration_is_sorted_and_bounded() {
        let l = generate(Family::Chain(4)).unwrap();
        let all = OperatorLattice::enumerate(&l, FamilyKind::All, 1000).unwrap();
        assert_eq!(all.len(), 14);
        assert!(all
            .members()
            .windows(2)
            .all(|w| w[0].values() < w[1].values()));
        match OperatorLattice::enumerate(&l, FamilyKind::All, 10) {
            Err(Error::EnumerationBoundExceeded { bound: 10, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn brute_totalizer_and_equalizer_on_chain3() {
        let l = c3();
        let all = OperatorLattice::enumerate(&l, FamilyKind::All, 100).unwrap();
        let um = inf(&l, &["m", "m", "1"]);
        assert_eq!(
            brute_extremum(&all, &um, Extremum::Totalizer).unwrap(),
            named(&l, Named::O(1))
        );
        assert_eq!(brute_extremum(&all, &um, Extremum::Equalizer).unwrap(), um);
        let d = inf(&l, &["m", "1", "1"]);
        assert_eq!(brute_extremum(&all, &d, Extremum::Equalizer).unwrap(), um);
    }

    #[test]
    fn two_chain_extrema_are_trivial() {
        let l = generate(Family::Chain(2)).unwrap();
        let all = OperatorLattice::enumerate(&l, FamilyKind::All, 100).unwrap();
        for d in all.members() {
            assert_eq!(brute_extremum(&all, d, Extremum::Equalizer).unwrap(), *d);
            let t = brute_extremum(&all, d, Extremum::Totalizer).unwrap();
            assert!(t == inflator::top(&l) || t == inflator::identity(&l));
        }
    }

    #[test]
    fn nuclei_of_chain3_form_a_boolean_square() {
        let l = c3();
        let nuc = OperatorLattice::enumerate(&l, FamilyKind::Nucleus, 100).unwrap();
        let as_lat = nuc.as_lattice();
        assert_eq!(
            as_lat.digest(),
            generate(Family::Boolean(2)).unwrap().digest()
        );
        let um = nuc.find(&inf(&l, &["m", "m", "1"])).unwrap();
        let other = nuc.find(&inf(&l, &["0", "1", "1"])).unwrap();
        assert_eq!(nuc.pseudocomplement(um), (other, true));
        assert_eq!(nuc.pseudocomplement(other), (um, true));
        assert_eq!(nuc.pseudocomplement(nuc.bottom()), (nuc.top(), true));
        assert_eq!(nuc.pseudocomplement(nuc.top()), (nuc.bottom(), true));
        // join of the two atoms is the top even though the pointwise join is not a nucleus
        assert_eq!(nuc.join(um, other), nuc.top());
    }

    #[test]
    fn order_predicates_on_chain3() {
        let l = c3();
        let all = OperatorLattice::enumerate(&l, FamilyKind::All, 100).unwrap();
        let top = all.top();
        assert!(!all.is_meet_prime(top));
        assert!(!all.is_meet_irreducible(top));
        for d in 0..all.len() {
            if all.is_meet_irreducible(d) {
                assert!(all.is_meet_prime(d));
            }
        }
        assert!(matches!(
            all.pseudocomplement_of(&inflator::identity(&generate(Family::Chain(4)).unwrap())),
            Err(Error::MemberNotInFamily)
        ));
    }

    #[test]
    fn strong_primeness_fails_in_m3_family() {
        // ι_a is meet-irreducible in I(M3) but ι_b ∧ ι_c = ι_0 <= ι_a
        let m3 = generate(Family::DiamondM3).unwrap();
        let all = OperatorLattice::enumerate(&m3, FamilyKind::All, 1000).unwrap();
        let ia = all.find(&named(&m3, Named::Iota(1))).unwrap();
        assert!(all.is_meet_irreducible(ia));
        assert!(all.is_meet_prime(ia));
        assert!(!all.is_meet_prime_strong(ia));
    }
}
