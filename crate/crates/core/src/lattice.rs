//! Finite lattices presented by their order relation.
//!
//! A [`FiniteLattice`] is immutable once built. Elements are plain indices
//! (`Elem`); labels are only used for presentation and parsing. Meet and join
//! are tabulated up front, and the modular and distributive laws are decided
//! exhaustively at construction time.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest as _, Sha256};

use crate::error::{Error, Result};

/// Index of an element inside its host lattice.
pub type Elem = usize;

/// Content hash of a lattice's order relation under a canonical ordering of
/// its elements. Labels do not take part in it.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Digest([u8; 16]);

impl Digest {
    pub fn to_hex(self) -> String {
        hex::encode(self.0)
    }

    pub fn from_hex(s: &str) -> Result<Digest> {
        let bytes = hex::decode(s).map_err(|e| Error::Malformed(format!("digest: {e}")))?;
        let arr: [u8; 16] = bytes
            .try_into()
            .map_err(|_| Error::Malformed(format!("digest `{s}` is not 16 bytes")))?;
        Ok(Digest(arr))
    }
}

impl fmt::Display for Digest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl fmt::Debug for Digest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digest({})", self.to_hex())
    }
}

impl Serialize for Digest {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for Digest {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Digest::from_hex(&s).map_err(serde::de::Error::custom)
    }
}

/// Outcome of an exhaustive law check over triples of elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails([Elem; 3]),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<[Elem; 3]> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(*w),
        }
    }
}

#[derive(Clone, Debug)]
pub struct FiniteLattice {
    name: String,
    labels: Vec<String>,
    index: HashMap<String, Elem>,
    n: usize,
    leq: Vec<bool>,
    meet: Vec<Elem>,
    join: Vec<Elem>,
    bottom: Elem,
    top: Elem,
    height: Vec<usize>,
    digest: Digest,
    modular: Verdict,
    distributive: Verdict,
}

impl PartialEq for FiniteLattice {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.leq == other.leq
    }
}

impl Eq for FiniteLattice {}

impl FiniteLattice {
    /// Builds a lattice whose order is the reflexive-transitive closure of
    /// `covers`.
    pub fn build<S: AsRef<str>>(
        name: &str,
        labels: &[S],
        covers: &[(S, S)],
    ) -> Result<FiniteLattice> {
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
        let index = label_index(&labels)?;
        let n = labels.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        let mut seen = HashSet::new();
        for (a, b) in covers {
            let (a, b) = (a.as_ref(), b.as_ref());
            let ia = *index
                .get(a)
                .ok_or_else(|| Error::UnknownLabel(a.to_string()))?;
            let ib = *index
                .get(b)
                .ok_or_else(|| Error::UnknownLabel(b.to_string()))?;
            if !seen.insert((ia, ib)) {
                return Err(Error::DuplicateCover(a.to_string(), b.to_string()));
            }
            if ia == ib {
                return Err(Error::NotAPoset(a.to_string(), b.to_string()));
            }
            leq[ia * n + ib] = true;
        }
        // Warshall closure
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        Self::from_order(name, labels, leq)
    }

    /// Builds a lattice from a full order table (`leq[i * n + j]` is `i <= j`).
    pub fn from_order(name: &str, labels: Vec<String>, leq: Vec<bool>) -> Result<FiniteLattice> {
        let index = label_index(&labels)?;
        let n = labels.len();
        if leq.len() != n * n {
            return Err(Error::Malformed(format!(
                "order table has {} entries, expected {}",
                leq.len(),
                n * n
            )));
        }
        let le = |a: usize, b: usize| leq[a * n + b];
        for a in 0..n {
            if !le(a, a) {
                return Err(Error::Malformed(format!(
                    "order is not reflexive at `{}`",
                    labels[a]
                )));
            }
            for b in 0..n {
                if a != b && le(a, b) && le(b, a) {
                    return Err(Error::NotAPoset(labels[a].clone(), labels[b].clone()));
                }
                if le(a, b) {
                    for c in 0..n {
                        if le(b, c) && !le(a, c) {
                            return Err(Error::Malformed("order is not transitive".into()));
                        }
                    }
                }
            }
        }
        let bottom = (0..n)
            .find(|&x| (0..n).all(|y| le(x, y)))
            .ok_or(Error::NoBounds("bottom"))?;
        let top = (0..n)
            .find(|&x| (0..n).all(|y| le(y, x)))
            .ok_or(Error::NoBounds("top"))?;

        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let lower: Vec<usize> = (0..n).filter(|&x| le(x, a) && le(x, b)).collect();
                let glb = lower
                    .iter()
                    .copied()
                    .find(|&g| lower.iter().all(|&x| le(x, g)))
                    .ok_or_else(|| Error::NotALattice {
                        a: labels[a].clone(),
                        b: labels[b].clone(),
                        missing: "greatest lower bound",
                    })?;
                let upper: Vec<usize> = (0..n).filter(|&x| le(a, x) && le(b, x)).collect();
                let lub = upper
                    .iter()
                    .copied()
                    .find(|&g| upper.iter().all(|&x| le(g, x)))
                    .ok_or_else(|| Error::NotALattice {
                        a: labels[a].clone(),
                        b: labels[b].clone(),
                        missing: "least upper bound",
                    })?;
                meet[a * n + b] = glb;
                meet[b * n + a] = glb;
                join[a * n + b] = lub;
                join[b * n + a] = lub;
            }
        }

        let height = heights(n, &leq);
        let mut lat = FiniteLattice {
            name: name.to_string(),
            labels,
            index,
            n,
            leq,
            meet,
            join,
            bottom,
            top,
            height,
            digest: Digest([0; 16]),
            modular: Verdict::Holds,
            distributive: Verdict::Holds,
        };
        lat.digest = canonical_digest(&lat);
        lat.modular = lat.scan_modular();
        lat.distributive = lat.scan_distributive();
        Ok(lat)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.n
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: Elem) -> &str {
        &self.labels[x]
    }

    pub fn elem(&self, label: &str) -> Result<Elem> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a * self.n + b]
    }

    #[inline]
    pub fn lt(&self, a: Elem, b: Elem) -> bool {
        a != b && self.leq(a, b)
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a * self.n + b]
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a * self.n + b]
    }

    /// Join of an arbitrary set; the empty join is the bottom.
    pub fn join_all<I: IntoIterator<Item = Elem>>(&self, xs: I) -> Elem {
        xs.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Meet of an arbitrary set; the empty meet is the top.
    pub fn meet_all<I: IntoIterator<Item = Elem>>(&self, xs: I) -> Elem {
        xs.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    /// Length of the longest chain from the bottom up to `x`.
    pub fn height(&self, x: Elem) -> usize {
        self.height[x]
    }

    pub fn digest(&self) -> Digest {
        self.digest
    }

    pub fn order_table(&self) -> &[bool] {
        &self.leq
    }

    pub fn check_modular(&self) -> Verdict {
        self.modular
    }

    pub fn check_distributive(&self) -> Verdict {
        self.distributive
    }

    pub fn is_modular(&self) -> bool {
        self.modular.holds()
    }

    pub fn is_distributive(&self) -> bool {
        self.distributive.holds()
    }

    /// `b` covers `a`: `a < b` with nothing strictly between.
    pub fn covers(&self, a: Elem, b: Elem) -> bool {
        self.lt(a, b) && !(0..self.n).any(|x| self.lt(a, x) && self.lt(x, b))
    }

    /// Hasse diagram as (lower, upper) pairs in index order.
    pub fn cover_pairs(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if self.covers(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn lower_covers(&self, x: Elem) -> Vec<Elem> {
        (0..self.n).filter(|&y| self.covers(y, x)).collect()
    }

    pub fn upper_covers(&self, x: Elem) -> Vec<Elem> {
        (0..self.n).filter(|&y| self.covers(x, y)).collect()
    }

    /// Elements of the interval `[lo, hi]`, in index order.
    pub fn between(&self, lo: Elem, hi: Elem) -> impl Iterator<Item = Elem> + '_ {
        (0..self.n).filter(move |&x| self.leq(lo, x) && self.leq(x, hi))
    }

    /// A linear extension: by height, then index.
    pub fn linear_extension(&self) -> Vec<Elem> {
        let mut order: Vec<Elem> = (0..self.n).collect();
        order.sort_by_key(|&x| (self.height[x], x));
        order
    }

    fn scan_modular(&self) -> Verdict {
        for a in 0..self.n {
            for b in 0..self.n {
                if !self.leq(a, b) {
                    continue;
                }
                for c in 0..self.n {
                    if self.meet(self.join(a, c), b) != self.join(a, self.meet(c, b)) {
                        return Verdict::Fails([a, b, c]);
                    }
                }
            }
        }
        Verdict::Holds
    }

    fn scan_distributive(&self) -> Verdict {
        for a in 0..self.n {
            for b in 0..self.n {
                for c in 0..self.n {
                    if self.meet(a, self.join(b, c)) != self.join(self.meet(a, b), self.meet(a, c))
                    {
                        return Verdict::Fails([a, b, c]);
                    }
                }
            }
        }
        Verdict::Holds
    }

    /// Checks the stored tables against bounds recomputed from the order.
    pub fn tables_consistent(&self) -> bool {
        for a in 0..self.n {
            for b in 0..self.n {
                let m = self.meet(a, b);
                let j = self.join(a, b);
                if !(self.leq(m, a) && self.leq(m, b) && self.leq(a, j) && self.leq(b, j)) {
                    return false;
                }
                for x in 0..self.n {
                    if self.leq(x, a) && self.leq(x, b) && !self.leq(x, m) {
                        return false;
                    }
                    if self.leq(a, x) && self.leq(b, x) && !self.leq(j, x) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn label_index(labels: &[String]) -> Result<HashMap<String, Elem>> {
    if labels.is_empty() {
        return Err(Error::BadParameter(
            "a lattice needs at least one element".into(),
        ));
    }
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.clone(), i).is_some() {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(index)
}

fn heights(n: usize, leq: &[bool]) -> Vec<usize> {
    // process by size of down-set, which is a linear extension
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (0..n).filter(|&y| leq[y * n + x]).count());
    let mut h = vec![0usize; n];
    for (pos, &x) in order.iter().enumerate() {
        for &y in &order[..pos] {
            if y != x && leq[y * n + x] {
                h[x] = h[x].max(h[y] + 1);
            }
        }
    }
    h
}

/// Canonical ordering of the elements: height first, then a colour obtained by
/// iterated refinement over the Hasse diagram, then index.
fn canonical_order(lat: &FiniteLattice) -> Vec<Elem> {
    let n = lat.n;
    let down: Vec<usize> = (0..n)
        .map(|x| (0..n).filter(|&y| lat.leq(y, x)).count())
        .collect();
    let up: Vec<usize> = (0..n)
        .map(|x| (0..n).filter(|&y| lat.leq(x, y)).count())
        .collect();
    let lower: Vec<Vec<Elem>> = (0..n).map(|x| lat.lower_covers(x)).collect();
    let upper: Vec<Vec<Elem>> = (0..n).map(|x| lat.upper_covers(x)).collect();
    let mut colour: Vec<usize> = {
        let keys: Vec<_> = (0..n)
            .map(|x| {
                (
                    lat.height[x],
                    down[x],
                    up[x],
                    lower[x].len(),
                    upper[x].len(),
                )
            })
            .collect();
        compress(&keys)
    };
    for _ in 0..n {
        let keys: Vec<_> = (0..n)
            .map(|x| {
                let mut lo: Vec<usize> = lower[x].iter().map(|&y| colour[y]).collect();
                let mut hi: Vec<usize> = upper[x].iter().map(|&y| colour[y]).collect();
                lo.sort_unstable();
                hi.sort_unstable();
                (colour[x], lo, hi)
            })
            .collect();
        let next = compress(&keys);
        let stable = next.iter().collect::<HashSet<_>>().len()
            == colour.iter().collect::<HashSet<_>>().len();
        colour = next;
        if stable {
            break;
        }
    }
    let mut order: Vec<Elem> = (0..n).collect();
    order.sort_by_key(|&x| (lat.height[x], colour[x], x));
    order
}

fn compress<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).expect("key present"))
        .collect()
}

fn canonical_digest(lat: &FiniteLattice) -> Digest {
    let order = canonical_order(lat);
    let mut h = Sha256::new();
    h.update((lat.n as u64).to_le_bytes());
    for &a in &order {
        let row: Vec<u8> = order.iter().map(|&b| lat.leq(a, b) as u8).collect();
        h.update(&row);
    }
    let full = h.finalize();
    let mut out = [0u8; 16];
    out.copy_from_slice(&full[..16]);
    Digest(out)
}

/// Named lattice families.
#[derive(Clone, Debug)]
pub enum Family<'a> {
    Chain(usize),
    Boolean(usize),
    /// `M_k`: bottom, `k` pairwise incomparable atoms, top.
    Diamond(usize),
    DiamondM3,
    PentagonN5,
    Product(&'a FiniteLattice, &'a FiniteLattice),
    IntervalSublattice(&'a FiniteLattice, Elem, Elem),
}

const ATOM_NAMES: &[&str] = &["a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l"];

pub fn generate(family: Family<'_>) -> Result<FiniteLattice> {
    match family {
        Family::Chain(n) => chain(n),
        Family::Boolean(n) => boolean(n),
        Family::Diamond(k) => diamond(k),
        Family::DiamondM3 => diamond(3).map(|l| l.with_name("m3")),
        Family::PentagonN5 => FiniteLattice::build(
            "n5",
            &["0", "x", "y", "z", "1"],
            &[("0", "x"), ("x", "z"), ("z", "1"), ("0", "y"), ("y", "1")],
        ),
        Family::Product(l, r) => product(l, r),
        Family::IntervalSublattice(l, a, b) => interval_sublattice(l, a, b),
    }
}

fn chain(n: usize) -> Result<FiniteLattice> {
    if n == 0 {
        return Err(Error::BadParameter(
            "chain length must be at least 1".into(),
        ));
    }
    let labels: Vec<String> = match n {
        1 => vec!["0".into()],
        2 => vec!["0".into(), "1".into()],
        3 => vec!["0".into(), "m".into(), "1".into()],
        _ => std::iter::once("0".to_string())
            .chain((1..n - 1).map(|i| format!("m{i}")))
            .chain(std::iter::once("1".to_string()))
            .collect(),
    };
    let covers: Vec<(String, String)> = labels
        .windows(2)
        .map(|w| (w[0].clone(), w[1].clone()))
        .collect();
    FiniteLattice::build(&format!("chain{n}"), &labels, &covers)
}

fn boolean(n: usize) -> Result<FiniteLattice> {
    if n == 0 || n > ATOM_NAMES.len() {
        return Err(Error::BadParameter(format!(
            "boolean rank must be between 1 and {}",
            ATOM_NAMES.len()
        )));
    }
    let size = 1usize << n;
    let label = |mask: usize| -> String {
        if mask == 0 {
            "0".into()
        } else if mask == size - 1 {
            "1".into()
        } else {
            (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| ATOM_NAMES[i])
                .collect()
        }
    };
    let labels: Vec<String> = (0..size).map(label).collect();
    let mut leq = vec![false; size * size];
    for a in 0..size {
        for b in 0..size {
            leq[a * size + b] = a & b == a;
        }
    }
    FiniteLattice::from_order(&format!("boolean{n}"), labels, leq)
}

fn diamond(k: usize) -> Result<FiniteLattice> {
    if k == 0 || k > ATOM_NAMES.len() {
        return Err(Error::BadParameter(format!(
            "diamond needs between 1 and {} atoms",
            ATOM_NAMES.len()
        )));
    }
    let mut labels = vec!["0".to_string()];
    labels.extend(ATOM_NAMES[..k].iter().map(|s| s.to_string()));
    labels.push("1".into());
    let mut covers = Vec::new();
    for a in &ATOM_NAMES[..k] {
        covers.push(("0".to_string(), a.to_string()));
        covers.push((a.to_string(), "1".to_string()));
    }
    FiniteLattice::build(&format!("m{k}"), &labels, &covers)
}

fn product(l: &FiniteLattice, r: &FiniteLattice) -> Result<FiniteLattice> {
    let (nl, nr) = (l.len(), r.len());
    let n = nl * nr;
    let labels: Vec<String> = (0..n)
        .map(|i| format!("({},{})", l.label(i / nr), r.label(i % nr)))
        .collect();
    let mut leq = vec![false; n * n];
    for a in 0..n {
        for b in 0..n {
            leq[a * n + b] = l.leq(a / nr, b / nr) && r.leq(a % nr, b % nr);
        }
    }
    FiniteLattice::from_order(&format!("{}x{}", l.name(), r.name()), labels, leq)
}

fn interval_sublattice(l: &FiniteLattice, a: Elem, b: Elem) -> Result<FiniteLattice> {
    if a >= l.len() || b >= l.len() || !l.leq(a, b) {
        return Err(Error::BadParameter(format!(
            "interval endpoints must satisfy lo <= hi (got {a}, {b})"
        )));
    }
    let members: Vec<Elem> = l.between(a, b).collect();
    let m = members.len();
    let labels: Vec<String> = members.iter().map(|&x| l.label(x).to_string()).collect();
    let mut leq = vec![false; m * m];
    for (i, &x) in members.iter().enumerate() {
        for (j, &y) in members.iter().enumerate() {
            leq[i * m + j] = l.leq(x, y);
        }
    }
    FiniteLattice::from_order(
        &format!("{}[{},{}]", l.name(), l.label(a), l.label(b)),
        labels,
        leq,
    )
}

/// Ordinal sum gluing the top of `lower` to the bottom of `upper`.
pub fn glue(lower: &FiniteLattice, upper: &FiniteLattice) -> Result<FiniteLattice> {
    let (nl, nu) = (lower.len(), upper.len());
    let n = nl + nu - 1;
    // upper element u (except its bottom) sits at nl + rank among non-bottom
    let mut upos = vec![0usize; nu];
    let mut next = nl;
    for u in 0..nu {
        if u == upper.bottom() {
            upos[u] = lower.top();
        } else {
            upos[u] = next;
            next += 1;
        }
    }
    let mut labels: Vec<String> = lower.labels().iter().map(|s| format!("l{s}")).collect();
    labels.resize(n, String::new());
    for u in 0..nu {
        if u != upper.bottom() {
            labels[upos[u]] = format!("u{}", upper.label(u));
        }
    }
    let mut leq = vec![false; n * n];
    for a in 0..nl {
        for b in 0..nl {
            leq[a * n + b] = lower.leq(a, b);
        }
        for u in 0..nu {
            leq[a * n + upos[u]] = true;
        }
    }
    for u in 0..nu {
        for v in 0..nu {
            if upper.leq(u, v) {
                leq[upos[u] * n + upos[v]] = true;
            }
        }
    }
    FiniteLattice::from_order(&format!("{}+{}", lower.name(), upper.name()), labels, leq)
}

/// Seeded random modular lattice with at most `max_size` elements (at least 3
/// is sensible). Mixes structured constructions with rejection sampling of
/// random Hasse diagrams.
pub fn random_modular(seed: u64, max_size: usize) -> Result<FiniteLattice> {
    if max_size < 2 {
        return Err(Error::BadParameter(
            "random lattices need at least 2 elements".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let pick = rng.gen_range(0..6);
        let candidate = match pick {
            0 => chain(rng.gen_range(2..=max_size)),
            1 => {
                let p = rng.gen_range(2..=(max_size / 2).max(2));
                let q = rng.gen_range(2..=(max_size / p).max(2));
                product(&chain(p)?, &chain(q)?)
            }
            2 if max_size >= 5 => diamond(rng.gen_range(3..=(max_size - 2).min(6))),
            3 if max_size >= 4 => {
                let rank = if max_size >= 8 {
                    rng.gen_range(2..=3)
                } else {
                    2
                };
                boolean(rank)
            }
            4 => {
                let a = small_modular(&mut rng, max_size)?;
                let room = max_size + 1 - a.len();
                if room < 2 {
                    Ok(a)
                } else {
                    let b = small_modular(&mut rng, room)?;
                    glue(&a, &b)
                }
            }
            _ => random_hasse(&mut rng, max_size),
        };
        if let Ok(l) = candidate {
            if l.len() <= max_size && l.is_modular() {
                return Ok(l.with_name(&format!("random-{seed}")));
            }
        }
    }
}

fn small_modular(rng: &mut ChaCha8Rng, max_size: usize) -> Result<FiniteLattice> {
    if max_size >= 5 && rng.gen_bool(0.4) {
        diamond(rng.gen_range(3..=(max_size - 2).min(4)))
    } else if max_size >= 4 && rng.gen_bool(0.3) {
        boolean(2)
    } else {
        chain(rng.gen_range(2..=max_size.min(4)))
    }
}

fn random_hasse(rng: &mut ChaCha8Rng, max_size: usize) -> Result<FiniteLattice> {
    let n = rng.gen_range(3..=max_size.max(3));
    let labels: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let mut covers = Vec::new();
    // 0 is bottom, n-1 is top; edges only go up in index order
    for j in 1..n - 1 {
        let parent = rng.gen_range(0..j);
        covers.push((labels[parent].clone(), labels[j].clone()));
        covers.push((labels[j].clone(), labels[n - 1].clone()));
    }
    let extra = rng.gen_range(0..n);
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    pairs.shuffle(rng);
    for (i, j) in pairs.into_iter().take(extra) {
        covers.push((labels[i].clone(), labels[j].clone()));
    }
    if n == 3 {
        covers.push((labels[0].clone(), labels[1].clone()));
    }
    let mut dedup = BTreeMap::new();
    for (a, b) in covers {
        dedup.insert((a.clone(), b.clone()), ());
    }
    let covers: Vec<(String, String)> = dedup.into_keys().collect();
    FiniteLattice::build("random", &labels, &covers)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b2() -> FiniteLattice {
        FiniteLattice::build(
            "b2",
            &["0", "a", "b", "1"],
            &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")],
        )
        .unwrap()
    }

    #[test]
    fn two_chain() {
        let l = FiniteLattice::build("c2", &["0", "1"], &[("0", "1")]).unwrap();
        assert_eq!(l.label(l.bottom()), "0");
        assert_eq!(l.label(l.top()), "1");
        assert!(l.is_distributive());
    }

    #[test]
    fn diamond_b2_meets_and_joins() {
        let l = b2();
        let (a, b) = (l.elem("a").unwrap(), l.elem("b").unwrap());
        assert_eq!(l.label(l.meet(a, b)), "0");
        assert_eq!(l.label(l.join(a, b)), "1");
        assert!(l.tables_consistent());
    }

    #[test]
    fn pentagon_witness() {
        let l = generate(Family::PentagonN5).unwrap();
        let w = l.check_modular().witness().unwrap();
        let names: Vec<&str> = w.iter().map(|&x| l.label(x)).collect();
        assert_eq!(names, ["x", "z", "y"]);
    }

    #[test]
    fn m3_is_modular_not_distributive() {
        let l = generate(Family::DiamondM3).unwrap();
        assert!(l.is_modular());
        let w = l.check_distributive().witness().unwrap();
        let names: Vec<&str> = w.iter().map(|&x| l.label(x)).collect();
        assert_eq!(names, ["a", "b", "c"]);
    }

    #[test]
    fn boolean_families() {
        assert!(generate(Family::Boolean(3)).unwrap().is_distributive());
        let b = generate(Family::Boolean(2)).unwrap();
        assert_eq!(b.digest(), b2().digest());
        assert!(generate(Family::Chain(6)).unwrap().is_distributive());
    }

    #[test]
    fn chain3_labels() {
        let c = generate(Family::Chain(3)).unwrap();
        assert_eq!(c.labels(), ["0", "m", "1"]);
        assert!(c.lt(c.elem("0").unwrap(), c.elem("m").unwrap()));
    }

    #[test]
    fn interval_of_chain_is_chain() {
        let c5 = generate(Family::Chain(5)).unwrap();
        let sub = generate(Family::IntervalSublattice(&c5, 1, 3)).unwrap();
        assert_eq!(sub.len(), 3);
        assert_eq!(sub.digest(), generate(Family::Chain(3)).unwrap().digest());
    }

    #[test]
    fn products_of_chains_are_distributive() {
        for m in 1..=4 {
            for n in 1..=4 {
                let p = generate(Family::Product(
                    &generate(Family::Chain(m)).unwrap(),
                    &generate(Family::Chain(n)).unwrap(),
                ))
                .unwrap();
                assert!(p.is_modular() && p.is_distributive(), "{m}x{n}");
            }
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(
            FiniteLattice::build("c", &["a", "b"], &[("a", "b"), ("b", "a")]),
            Err(Error::NotAPoset(..))
        ));
        assert!(matches!(
            FiniteLattice::build("c", &["a", "b"], &[]),
            Err(Error::NoBounds(_))
        ));
        // bowtie: 0 < a,b < c,d < 1 ; a,b have two minimal upper bounds
        let bowtie = FiniteLattice::build(
            "bowtie",
            &["0", "a", "b", "c", "d", "1"],
            &[
                ("0", "a"),
                ("0", "b"),
                ("a", "c"),
                ("a", "d"),
                ("b", "c"),
                ("b", "d"),
                ("c", "1"),
                ("d", "1"),
            ],
        );
        match bowtie {
            Err(Error::NotALattice { a, b, .. }) => {
                assert_eq!((a.as_str(), b.as_str()), ("a", "b"))
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            generate(Family::Chain(0)),
            Err(Error::BadParameter(_))
        ));
        let c3 = generate(Family::Chain(3)).unwrap();
        assert!(matches!(
            generate(Family::IntervalSublattice(&c3, 2, 0)),
            Err(Error::BadParameter(_))
        ));
        assert!(matches!(
            FiniteLattice::build("d", &["a", "a"], &[]),
            Err(Error::DuplicateLabel(_))
        ));
        assert!(matches!(
            FiniteLattice::build("d", &["a", "b"], &[("a", "b"), ("a", "b")]),
            Err(Error::DuplicateCover(..))
        ));
    }

    #[test]
    fn digest_ignores_labels_and_order() {
        let l1 = b2();
        let l2 = FiniteLattice::build(
            "other",
            &["top", "q", "p", "bot"],
            &[("bot", "p"), ("bot", "q"), ("q", "top"), ("p", "top")],
        )
        .unwrap();
        assert_eq!(l1.digest(), l2.digest());
        assert_ne!(l1.digest(), generate(Family::Chain(4)).unwrap().digest());
    }

    #[test]
    fn random_modular_lattices_are_small_and_modular() {
        for seed in 0..40 {
            let l = random_modular(seed, 8).unwrap();
            assert!(
                l.len() <= 8 && l.is_modular() && l.tables_consistent(),
                "seed {seed}"
            );
        }
        assert_eq!(random_modular(7, 8).unwrap(), random_modular(7, 8).unwrap());
    }

    #[test]
    fn glue_two_chains() {
        let g = glue(
            &generate(Family::Chain(2)).unwrap(),
            &generate(Family::Chain(3)).unwrap(),
        )
        .unwrap();
        assert_eq!(g.len(), 4);
        assert_eq!(g.digest(), generate(Family::Chain(4)).unwrap().digest());
    }
}
