//! Inflators: monotone, inflationary self-maps of a finite lattice.
//!
//! Composition follows the usual right-to-left convention: `d.compose(lat, k)`
//! is the map `a ↦ d(k(a))`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Digest, Elem, FiniteLattice};

/// Classification flags, computed once at construction.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Flags {
    pub stable: bool,
    pub prenucleus: bool,
    pub idempotent: bool,
    pub nucleus: bool,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Inflator {
    host: Digest,
    values: Vec<Elem>,
    flags: Flags,
}

impl fmt::Debug for Inflator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Inflator{:?}", self.values)
    }
}

impl Inflator {
    /// Validates `values` as an inflator on `lat`.
    pub fn new(lat: &FiniteLattice, values: Vec<Elem>) -> Result<Inflator> {
        if values.len() != lat.len() {
            let missing = lat.len().min(values.len());
            return Err(Error::NotTotal(
                lat.labels().get(missing).cloned().unwrap_or_default(),
            ));
        }
        if let Some(&bad) = values.iter().find(|&&v| v >= lat.len()) {
            return Err(Error::Malformed(format!("image index {bad} out of range")));
        }
        for x in lat.elements() {
            if !lat.leq(x, values[x]) {
                return Err(Error::NotInflationary(lat.label(x).to_string()));
            }
        }
        for x in lat.elements() {
            for y in lat.elements() {
                if lat.leq(x, y) && !lat.leq(values[x], values[y]) {
                    return Err(Error::NotMonotone(
                        lat.label(x).to_string(),
                        lat.label(y).to_string(),
                    ));
                }
            }
        }
        Ok(Self::trusted(lat, values))
    }

    /// Builds from a label-to-label table.
    pub fn from_labels<S: AsRef<str>>(lat: &FiniteLattice, map: &[(S, S)]) -> Result<Inflator> {
        let mut values: Vec<Option<Elem>> = vec![None; lat.len()];
        for (a, b) in map {
            let x = lat.elem(a.as_ref())?;
            values[x] = Some(lat.elem(b.as_ref())?);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(x, v)| v.ok_or_else(|| Error::NotTotal(lat.label(x).to_string())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(lat, values)
    }

    /// Skips validation; callers guarantee monotone and inflationary.
    pub(crate) fn trusted(lat: &FiniteLattice, values: Vec<Elem>) -> Inflator {
        debug_assert!(lat.elements().all(|x| lat.leq(x, values[x])));
        let flags = compute_flags(lat, &values);
        Inflator {
            host: lat.digest(),
            values,
            flags,
        }
    }

    pub fn host(&self) -> Digest {
        self.host
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    #[inline]
    pub fn at(&self, x: Elem) -> Elem {
        self.values[x]
    }

    pub fn flags(&self) -> Flags {
        self.flags
    }

    pub fn is_stable(&self) -> bool {
        self.flags.stable
    }

    pub fn is_prenucleus(&self) -> bool {
        self.flags.prenucleus
    }

    pub fn is_idempotent(&self) -> bool {
        self.flags.idempotent
    }

    pub fn is_nucleus(&self) -> bool {
        self.flags.nucleus
    }

    /// Pointwise order.
    pub fn le(&self, lat: &FiniteLattice, other: &Inflator) -> bool {
        self.values
            .iter()
            .zip(&other.values)
            .all(|(&a, &b)| lat.leq(a, b))
    }

    fn same_host(&self, other: &Inflator) -> Result<()> {
        if self.host != other.host {
            return Err(Error::HostMismatch(self.host.to_hex(), other.host.to_hex()));
        }
        Ok(())
    }

    /// `a ↦ self(inner(a))`.
    pub fn compose(&self, lat: &FiniteLattice, inner: &Inflator) -> Result<Inflator> {
        self.same_host(inner)?;
        let values = inner.values.iter().map(|&v| self.values[v]).collect();
        Ok(Self::trusted(lat, values))
    }

    /// Least `k >= 1` with `d^k = d^(k+1)`, together with `d^k`.
    pub fn infty(&self, lat: &FiniteLattice) -> (Inflator, usize) {
        let mut cur = self.values.clone();
        let mut steps = 1;
        loop {
            let next: Vec<Elem> = cur.iter().map(|&v| self.values[v]).collect();
            if next == cur {
                return (Self::trusted(lat, cur), steps);
            }
            cur = next;
            steps += 1;
        }
    }

    /// The closed-form totalizer `O_{d(0)}`.
    pub fn totalizer(&self, lat: &FiniteLattice) -> Inflator {
        named(lat, Named::O(self.values[lat.bottom()]))
    }

    /// The largest inflator fixing `image(d)` pointwise: each `a` goes to the
    /// meet of the image points above it.
    pub fn equalizer(&self, lat: &FiniteLattice) -> Inflator {
        let mut image: Vec<Elem> = self.values.clone();
        image.sort_unstable();
        image.dedup();
        let values = lat
            .elements()
            .map(|a| lat.meet_all(image.iter().copied().filter(|&b| lat.leq(a, b))))
            .collect();
        Self::trusted(lat, values)
    }

    /// `(u_{d(0)}, ι_{d(0)})`: the bounds of the totalizer class of `d`.
    pub fn tot_class(&self, lat: &FiniteLattice) -> (Inflator, Inflator) {
        let z = self.values[lat.bottom()];
        (named(lat, Named::U(z)), named(lat, Named::Iota(z)))
    }

    /// Label table, handy for display and JSON.
    pub fn label_map(&self, lat: &FiniteLattice) -> BTreeMap<String, String> {
        lat.elements()
            .map(|x| {
                (
                    lat.label(x).to_string(),
                    lat.label(self.values[x]).to_string(),
                )
            })
            .collect()
    }

    pub fn display(&self, lat: &FiniteLattice) -> String {
        let parts: Vec<String> = lat
            .elements()
            .map(|x| format!("{}↦{}", lat.label(x), lat.label(self.values[x])))
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

fn compute_flags(lat: &FiniteLattice, d: &[Elem]) -> Flags {
    let mut stable = true;
    let mut prenucleus = true;
    'outer: for x in lat.elements() {
        for y in lat.elements() {
            let m = lat.meet(x, y);
            if prenucleus && d[m] != lat.meet(d[x], d[y]) {
                prenucleus = false;
            }
            if stable && !lat.leq(lat.meet(d[x], y), d[m]) {
                stable = false;
            }
            if !stable && !prenucleus {
                break 'outer;
            }
        }
    }
    let idempotent = d.iter().all(|&v| d[v] == v);
    Flags {
        stable,
        prenucleus,
        idempotent,
        nucleus: prenucleus && idempotent,
    }
}

/// The named inflator families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Named {
    Identity,
    Top,
    /// `O_b(a) = 1` if `a >= b`, else `a`.
    O(Elem),
    /// `u_a(b) = a ∨ b`.
    U(Elem),
    /// `ι_a(b) = a` if `b = 0`, else `1`.
    Iota(Elem),
}

pub fn named(lat: &FiniteLattice, kind: Named) -> Inflator {
    let values = lat
        .elements()
        .map(|x| match kind {
            Named::Identity => x,
            Named::Top => lat.top(),
            Named::O(b) => {
                if lat.leq(b, x) {
                    lat.top()
                } else {
                    x
                }
            }
            Named::U(a) => lat.join(a, x),
            Named::Iota(a) => {
                if x == lat.bottom() {
                    a
                } else {
                    lat.top()
                }
            }
        })
        .collect();
    Inflator::trusted(lat, values)
}

pub fn identity(lat: &FiniteLattice) -> Inflator {
    named(lat, Named::Identity)
}

pub fn top(lat: &FiniteLattice) -> Inflator {
    named(lat, Named::Top)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Meet,
    Join,
}

/// Pointwise meet or join of a family, with a record of whether the family
/// was directed.
#[derive(Clone, Debug)]
pub struct Combined {
    pub inflator: Inflator,
    pub directed: bool,
}

pub fn lattice_ops(lat: &FiniteLattice, ds: &[Inflator], mode: Mode) -> Result<Combined> {
    let first = ds.first().ok_or(Error::EmptyFamily)?;
    for d in ds {
        first.same_host(d)?;
    }
    let values = lat
        .elements()
        .map(|x| {
            let vals = ds.iter().map(|d| d.values[x]);
            match mode {
                Mode::Meet => lat.meet_all(vals),
                Mode::Join => lat.join_all(vals),
            }
        })
        .collect();
    Ok(Combined {
        inflator: Inflator::trusted(lat, values),
        directed: is_directed(lat, ds),
    })
}

/// Every pair has an upper bound inside the family.
pub fn is_directed(lat: &FiniteLattice, ds: &[Inflator]) -> bool {
    ds.iter().all(|a| {
        ds.iter()
            .all(|b| ds.iter().any(|z| a.le(lat, z) && b.le(lat, z)))
    })
}

pub fn meet2(lat: &FiniteLattice, a: &Inflator, b: &Inflator) -> Inflator {
    let values = lat
        .elements()
        .map(|x| lat.meet(a.values[x], b.values[x]))
        .collect();
    Inflator::trusted(lat, values)
}

pub fn join2(lat: &FiniteLattice, a: &Inflator, b: &Inflator) -> Inflator {
    let values = lat
        .elements()
        .map(|x| lat.join(a.values[x], b.values[x]))
        .collect();
    Inflator::trusted(lat, values)
}

/// `{O_a : a ∈ L}` in element order, i.e. all closed-form totalizers.
pub fn tot_poset(lat: &FiniteLattice) -> Vec<Inflator> {
    lat.elements().map(|a| named(lat, Named::O(a))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
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
    fn identity_and_top_are_nuclei() {
        let l = c3();
        assert!(identity(&l).is_nucleus());
        assert!(top(&l).is_nucleus());
    }

    #[test]
    fn u_m_on_chain() {
        let l = c3();
        let d = inf(&l, &["m", "m", "1"]);
        assert!(d.is_idempotent() && d.is_prenucleus() && d.is_nucleus());
    }

    #[test]
    fn validation_errors() {
        let l = c3();
        assert!(matches!(
            Inflator::from_labels(&l, &[("0", "0"), ("m", "0"), ("1", "1")]),
            Err(Error::NotInflationary(x)) if x == "m"
        ));
        let b2 = generate(Family::Boolean(2)).unwrap();
        // a ↦ 1, b ↦ b, 0 ↦ a, 1 ↦ 1 : monotone? 0<=b but a !<= b
        assert!(matches!(
            Inflator::from_labels(&b2, &[("0", "a"), ("a", "a"), ("b", "b"), ("1", "1")]),
            Err(Error::NotMonotone(..))
        ));
        assert!(matches!(
            Inflator::from_labels(&l, &[("0", "0")]),
            Err(Error::NotTotal(_))
        ));
    }

    #[test]
    fn composition_examples() {
        let l = c3();
        let d = inf(&l, &["m", "m", "1"]);
        let k = inf(&l, &["0", "1", "1"]);
        let id = identity(&l);
        assert_eq!(d.compose(&l, &id).unwrap(), d);
        assert_eq!(id.compose(&l, &d).unwrap(), d);
        assert_eq!(top(&l).compose(&l, &d).unwrap(), top(&l));
        assert_eq!(d.compose(&l, &k).unwrap(), inf(&l, &["m", "1", "1"]));
        assert_eq!(k.compose(&l, &d).unwrap(), inf(&l, &["1", "1", "1"]));
        let other = generate(Family::Chain(4)).unwrap();
        assert!(matches!(
            d.compose(&l, &identity(&other)),
            Err(Error::HostMismatch(..))
        ));
    }

    #[test]
    fn pointwise_join_of_nuclei_need_not_be_idempotent() {
        let l = c3();
        let um = inf(&l, &["m", "m", "1"]);
        let j = inf(&l, &["0", "1", "1"]);
        let joined = lattice_ops(&l, &[um.clone(), j.clone()], Mode::Join).unwrap();
        assert_eq!(joined.inflator, inf(&l, &["m", "1", "1"]));
        assert!(!joined.inflator.is_idempotent());
        assert!(!joined.directed);
        let met = lattice_ops(&l, &[um.clone(), top(&l)], Mode::Meet).unwrap();
        assert_eq!(met.inflator, um);
        assert!(met.directed);
        assert!(matches!(
            lattice_ops(&l, &[], Mode::Join),
            Err(Error::EmptyFamily)
        ));
    }

    #[test]
    fn infty_examples() {
        let l = c3();
        assert_eq!(identity(&l).infty(&l), (identity(&l), 1));
        let d = inf(&l, &["m", "1", "1"]);
        assert_eq!(d.infty(&l), (top(&l), 2));
        let um = inf(&l, &["m", "m", "1"]);
        assert_eq!(um.infty(&l), (um.clone(), 1));
    }

    #[test]
    fn named_examples() {
        let l = c3();
        assert_eq!(named(&l, Named::O(l.bottom())), top(&l));
        assert_eq!(named(&l, Named::O(1)), inf(&l, &["0", "1", "1"]));
        assert_eq!(named(&l, Named::Iota(1)), inf(&l, &["m", "1", "1"]));
        assert_eq!(named(&l, Named::U(1)), inf(&l, &["m", "m", "1"]));
        assert!(!generate(Family::DiamondM3)
            .map(|m3| named(&m3, Named::U(1)).is_nucleus())
            .unwrap());
    }

    #[test]
    fn totalizer_and_equalizer_examples() {
        let l = c3();
        assert_eq!(identity(&l).totalizer(&l), top(&l));
        assert_eq!(top(&l).totalizer(&l), identity(&l));
        let um = inf(&l, &["m", "m", "1"]);
        assert_eq!(um.totalizer(&l), inf(&l, &["0", "1", "1"]));
        let d = inf(&l, &["m", "1", "1"]);
        assert_eq!(d.equalizer(&l), um);
        assert_eq!(top(&l).equalizer(&l), top(&l));
        assert_eq!(um.equalizer(&l), um);
    }

    #[test]
    fn tot_class_bounds() {
        let l = c3();
        let (lo, hi) = top(&l).tot_class(&l);
        assert_eq!(lo, top(&l));
        assert_eq!(hi, top(&l));
        let (lo, hi) = inf(&l, &["m", "m", "1"]).tot_class(&l);
        assert_eq!(lo, inf(&l, &["m", "m", "1"]));
        assert_eq!(hi, inf(&l, &["m", "1", "1"]));
    }

    #[test]
    fn tot_poset_is_reversed_chain() {
        let l = c3();
        let t = tot_poset(&l);
        assert_eq!(t[0], top(&l));
        assert_eq!(t[2], identity(&l));
        assert!(t[2].le(&l, &t[1]) && t[1].le(&l, &t[0]));
    }
}
