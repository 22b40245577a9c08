//! The frame `N(A)` of nuclei and the operators living on it.
//!
//! Members are indexed as in the underlying [`OperatorLattice`]; a self-map
//! on `N(A)` is an [`Inflator`] on [`NucleusLattice::as_lattice`], whose
//! element `i` is member `i`.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::family::{FamilyKind, OperatorLattice};
use crate::inflator::{self, Inflator};
use crate::intervals::{Interval, Intervals};
use crate::lattice::{Elem, FiniteLattice};

#[derive(Clone, Debug)]
pub struct NucleusLattice {
    family: OperatorLattice,
    join_table: Vec<usize>,
}

impl NucleusLattice {
    /// Enumerates `N(L)`, builds the join table through composition closure
    /// and checks the frame law.
    pub fn new(lat: &FiniteLattice, bound: usize) -> Result<NucleusLattice> {
        let family = OperatorLattice::enumerate(lat, FamilyKind::Nucleus, bound)?;
        let m = family.len();
        let mut join_table = vec![0; m * m];
        for i in 0..m {
            for j in i..m {
                let k = closure_join(&family, i, j)?;
                let lub = family.least_upper_bound(&[i, j]);
                if k != lub {
                    return Err(Error::RouteDisagreement(format!(
                        "join of nuclei {i} and {j}: composition closure gives {k}, least upper bound {lub}"
                    )));
                }
                join_table[i * m + j] = k;
                join_table[j * m + i] = k;
            }
        }
        let nl = NucleusLattice { family, join_table };
        if let Some([a, b, c]) = nl.as_lattice().check_distributive().witness() {
            return Err(Error::FrameViolation(a, b, c));
        }
        Ok(nl)
    }

    pub fn family(&self) -> &OperatorLattice {
        &self.family
    }

    pub fn host(&self) -> &FiniteLattice {
        self.family.host()
    }

    pub fn len(&self) -> usize {
        self.family.len()
    }

    pub fn is_empty(&self) -> bool {
        self.family.is_empty()
    }

    pub fn member(&self, i: usize) -> &Inflator {
        self.family.member(i)
    }

    pub fn members(&self) -> &[Inflator] {
        self.family.members()
    }

    pub fn find(&self, j: &Inflator) -> Option<usize> {
        self.family.find(j)
    }

    pub fn require(&self, j: &Inflator) -> Result<usize> {
        if !j.is_nucleus() {
            return Err(Error::NotANucleus);
        }
        self.family.require(j)
    }

    pub fn as_lattice(&self) -> &FiniteLattice {
        self.family.as_lattice()
    }

    /// Always true once construction succeeded.
    pub fn is_frame(&self) -> bool {
        self.as_lattice().is_distributive()
    }

    pub fn bottom(&self) -> usize {
        self.family.bottom()
    }

    pub fn top(&self) -> usize {
        self.family.top()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.family.leq(i, j)
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.family.meet(i, j)
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join_table[i * self.len() + j]
    }

    pub fn join_all<I: IntoIterator<Item = usize>>(&self, xs: I) -> usize {
        xs.into_iter()
            .fold(self.bottom(), |acc, x| self.join(acc, x))
    }

    pub fn meet_all<I: IntoIterator<Item = usize>>(&self, xs: I) -> usize {
        self.family.meet_all(xs)
    }

    /// `χ(a,b)`: the largest nucleus `j` with `j(a) ∧ b = a`.
    pub fn chi(&self, a: Elem, b: Elem) -> Result<usize> {
        let lat = self.host();
        check_interval(lat, a, b)?;
        let good = |j: usize| lat.meet(self.member(j).at(a), b) == a;
        let qualifying: Vec<usize> = (0..self.len()).filter(|&j| good(j)).collect();
        let joined = self.join_all(qualifying);
        if !good(joined) {
            return Err(Error::ConditionLostAtJoin(
                lat.label(a).to_string(),
                lat.label(b).to_string(),
            ));
        }
        Ok(joined)
    }

    /// `ξ(a,b)`: the least nucleus `k` with `b <= k(a)`, computed as a meet in
    /// `N(A)` and as the nucleus of the division set generated by `[a,b]`.
    pub fn xi(&self, a: Elem, b: Elem) -> Result<usize> {
        let lat = self.host();
        check_interval(lat, a, b)?;
        let by_meet = self.meet_all((0..self.len()).filter(|&k| lat.leq(b, self.member(k).at(a))));
        let by_division = Intervals::new(lat).xi_via_division(a, b)?;
        if self.member(by_meet) != &by_division {
            return Err(Error::RouteDisagreement(format!(
                "xi({}, {}): meet gives {}, division closure gives {}",
                lat.label(a),
                lat.label(b),
                self.member(by_meet).display(lat),
                by_division.display(lat)
            )));
        }
        Ok(by_meet)
    }

    /// `Gab(j)`: `j` joined with `ξ(a,b)` over the `D_j`-critical intervals,
    /// cross-checked against `|Dvs(Crt(D_j))|`.
    pub fn gab(&self, j: usize) -> Result<GabValue> {
        let lat = self.host();
        let u = Intervals::new(lat);
        let dj = u.division_set_of(self.member(j))?;
        let crit = u.critical_set(&dj)?;
        let mut xis = BTreeSet::new();
        for iv in u.intervals_of(&crit) {
            xis.insert(self.xi(iv.lo, iv.hi)?);
        }
        let raw = self.join_all(xis.iter().copied());
        let value = self.join(raw, j);
        let via_base =
            u.associated_inflator(&u.close(&crit, crate::intervals::Level::Division)?)?;
        if self.member(value) != &via_base {
            return Err(Error::RouteDisagreement(format!(
                "gab of nucleus {j}: xi join gives {}, base frame gives {}",
                self.member(value).display(lat),
                via_base.display(lat)
            )));
        }
        Ok(GabValue {
            value,
            raw_dominates: self.leq(j, raw),
        })
    }

    /// Gab as a self-map of `N(A)`.
    pub fn gab_map(&self) -> Result<Inflator> {
        let values = (0..self.len())
            .map(|j| self.gab(j).map(|g| g.value))
            .collect::<Result<Vec<_>>>()?;
        Inflator::new(self.as_lattice(), values)
            .map_err(|e| Error::NotAnInflatorOnNl(e.to_string()))
    }

    /// Members with a unique upper cover.
    pub fn points(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&p| self.family.is_meet_irreducible(p))
            .collect()
    }

    /// Points `π` with `π < Gab(π)`.
    pub fn g_points(&self, gab: &Inflator) -> Vec<usize> {
        self.points()
            .into_iter()
            .filter(|&p| gab.at(p) != p)
            .collect()
    }

    /// `{χ(a,b) : [a,b]` a non-trivial simple interval`}`.
    pub fn simple_chis(&self) -> Result<Vec<usize>> {
        let mut out = BTreeSet::new();
        for (a, b) in self.host().cover_pairs() {
            out.insert(self.chi(a, b)?);
        }
        Ok(out.into_iter().collect())
    }

    /// `[a,b]` is inert: `χ(a,x) = χ(a,b)` for every `a < x <= b`.
    pub fn is_inert(&self, iv: Interval) -> Result<bool> {
        let lat = self.host();
        if iv.is_trivial() {
            return Err(Error::BadParameter(
                "inertness needs a non-trivial interval".into(),
            ));
        }
        let whole = self.chi(iv.lo, iv.hi)?;
        for x in lat.between(iv.lo, iv.hi) {
            if x != iv.lo && self.chi(iv.lo, x)? != whole {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Soc or Cbd of the lattice `N(A)` as a self-map of `N(A)`.
    pub fn lift_derivative(&self, which: Derivative) -> Result<Inflator> {
        let u = Intervals::new(self.as_lattice());
        match which {
            Derivative::Soc => u.soc(),
            Derivative::Cbd => u.cbd(),
        }
    }

    /// The quotient `A_j` with its projection and embedding.
    pub fn quotient(&self, j: usize) -> Result<Quotient> {
        quotient(self.host(), self.member(j))
    }
}

fn check_interval(lat: &FiniteLattice, a: Elem, b: Elem) -> Result<()> {
    if a >= lat.len() || b >= lat.len() || !lat.leq(a, b) {
        return Err(Error::BadParameter(format!(
            "[{a}, {b}] is not an interval"
        )));
    }
    Ok(())
}

/// Join of two nuclei: close `{i, j}` under composition, take the pointwise
/// join of the closure, then iterate to idempotence.
fn closure_join(family: &OperatorLattice, i: usize, j: usize) -> Result<usize> {
    let lat = family.host();
    let gens = [family.member(i).clone(), family.member(j).clone()];
    let mut seen: HashSet<Vec<Elem>> = gens.iter().map(|g| g.values().to_vec()).collect();
    let mut frontier: Vec<Inflator> = gens.to_vec();
    let mut all = frontier.clone();
    while let Some(d) = frontier.pop() {
        for g in &gens {
            for next in [g.compose(lat, &d)?, d.compose(lat, g)?] {
                if seen.insert(next.values().to_vec()) {
                    all.push(next.clone());
                    frontier.push(next);
                }
            }
        }
    }
    let joined = inflator::lattice_ops(lat, &all, inflator::Mode::Join)?;
    let (closed, _) = joined.inflator.infty(lat);
    family.find(&closed).ok_or_else(|| {
        Error::RouteDisagreement(format!(
            "join of nuclei {i} and {j} left the family: {}",
            closed.display(lat)
        ))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GabValue {
    pub value: usize,
    /// Whether the join of the `ξ` terms already lies above `j`.
    pub raw_dominates: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Derivative {
    Soc,
    Cbd,
}

impl std::str::FromStr for Derivative {
    type Err = Error;

    fn from_str(s: &str) -> Result<Derivative> {
        match s {
            "soc" => Ok(Derivative::Soc),
            "cbd" => Ok(Derivative::Cbd),
            other => Err(Error::BadParameter(format!("unknown derivative `{other}`"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Quotient {
    pub lattice: FiniteLattice,
    /// Quotient element `q` is host element `embedding[q]`.
    pub embedding: Vec<Elem>,
    /// Host element `a` projects to quotient element `projection[a]`.
    pub projection: Vec<Elem>,
}

impl Quotient {
    /// Pulls an inflator on the quotient back to `j_* d j^*` on the host.
    pub fn pull_back(&self, host: &FiniteLattice, d: &Inflator) -> Result<Inflator> {
        let values = host
            .elements()
            .map(|a| self.embedding[d.at(self.projection[a])])
            .collect();
        Inflator::new(host, values)
    }
}

/// `A_j`: the fixed points of `j` with the induced order.
pub fn quotient(lat: &FiniteLattice, j: &Inflator) -> Result<Quotient> {
    if j.host() != lat.digest() {
        return Err(Error::HostMismatch(
            j.host().to_hex(),
            lat.digest().to_hex(),
        ));
    }
    if !j.is_nucleus() {
        return Err(Error::NotANucleus);
    }
    let embedding: Vec<Elem> = lat.elements().filter(|&x| j.at(x) == x).collect();
    let mut position = vec![usize::MAX; lat.len()];
    for (q, &x) in embedding.iter().enumerate() {
        position[x] = q;
    }
    let projection = lat.elements().map(|a| position[j.at(a)]).collect();
    let labels = embedding
        .iter()
        .map(|&x| lat.label(x).to_string())
        .collect();
    let k = embedding.len();
    let mut leq = vec![false; k * k];
    for p in 0..k {
        for q in 0..k {
            leq[p * k + q] = lat.leq(embedding[p], embedding[q]);
        }
    }
    let lattice = FiniteLattice::from_order(&format!("{}/j", lat.name()), labels, leq)?;
    Ok(Quotient {
        lattice,
        embedding,
        projection,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inflator::{named, Named};
    use crate::lattice::{generate, Family};

    const BOUND: usize = 100_000;

    fn c3() -> FiniteLattice {
        generate(Family::Chain(3)).unwrap()
    }

    /// `{0↦0, m↦1, 1↦1}` on the 3-chain.
    fn o_m(l: &FiniteLattice) -> Inflator {
        named(l, Named::O(1))
    }

    #[test]
    fn small_frames() {
        let c2 = generate(Family::Chain(2)).unwrap();
        let nl = NucleusLattice::new(&c2, BOUND).unwrap();
        assert_eq!(nl.len(), 2);

        let l = c3();
        let nl = NucleusLattice::new(&l, BOUND).unwrap();
        assert_eq!(nl.len(), 4);
        assert!(nl.is_frame());
        assert_eq!(
            nl.as_lattice().digest(),
            generate(Family::Boolean(2)).unwrap().digest()
        );
        let um = nl.find(&named(&l, Named::U(1))).unwrap();
        let om = nl.find(&o_m(&l)).unwrap();
        assert_eq!(nl.join(um, om), nl.top());
        assert_eq!(nl.meet(um, om), nl.bottom());

        let b2 = generate(Family::Boolean(2)).unwrap();
        assert!(NucleusLattice::new(&b2, BOUND).unwrap().is_frame());
        let m3 = generate(Family::DiamondM3).unwrap();
        assert_eq!(NucleusLattice::new(&m3, BOUND).unwrap().len(), 2);
    }

    #[test]
    fn chi_and_xi_on_chain3() {
        let l = c3();
        let nl = NucleusLattice::new(&l, BOUND).unwrap();
        let om = nl.find(&o_m(&l)).unwrap();
        let um = nl.find(&named(&l, Named::U(1))).unwrap();
        assert_eq!(nl.chi(0, 1).unwrap(), om);
        assert_eq!(nl.chi(0, 2).unwrap(), om);
        for a in l.elements() {
            assert_eq!(nl.chi(a, a).unwrap(), nl.top());
            assert_eq!(nl.xi(a, a).unwrap(), nl.bottom());
        }
        assert_eq!(nl.xi(0, 1).unwrap(), um);
        assert_eq!(nl.xi(1, 2).unwrap(), om);
        assert!(nl.is_inert(Interval::new(0, 2)).unwrap());
    }

    #[test]
    fn gab_reaches_top() {
        for l in [c3(), generate(Family::Boolean(2)).unwrap()] {
            let nl = NucleusLattice::new(&l, BOUND).unwrap();
            let g = nl.gab(nl.bottom()).unwrap();
            assert_eq!(g.value, nl.top());
            assert!(g.raw_dominates);
            assert_eq!(nl.gab(nl.top()).unwrap().value, nl.top());
        }
    }

    #[test]
    fn points_of_chain3() {
        let l = c3();
        let nl = NucleusLattice::new(&l, BOUND).unwrap();
        let mut expected = vec![
            nl.find(&named(&l, Named::U(1))).unwrap(),
            nl.find(&o_m(&l)).unwrap(),
        ];
        expected.sort();
        assert_eq!(nl.points(), expected);
        let gab = nl.gab_map().unwrap();
        assert_eq!(nl.g_points(&gab), expected);
        assert!(!nl.g_points(&gab).contains(&nl.top()));
        assert_eq!(nl.simple_chis().unwrap(), expected);
    }

    #[test]
    fn lifted_derivatives() {
        let c2 = generate(Family::Chain(2)).unwrap();
        let nl = NucleusLattice::new(&c2, BOUND).unwrap();
        let soc = nl.lift_derivative(Derivative::Soc).unwrap();
        assert_eq!(soc.at(nl.bottom()), nl.top());

        let nl = NucleusLattice::new(&c3(), BOUND).unwrap();
        for which in [Derivative::Soc, Derivative::Cbd] {
            let d = nl.lift_derivative(which).unwrap();
            assert_eq!(d.at(nl.bottom()), nl.top());
        }
    }

    #[test]
    fn quotients() {
        let l = c3();
        let q = quotient(&l, &inflator::identity(&l)).unwrap();
        assert_eq!(q.lattice.len(), 3);
        assert_eq!(q.projection, [0, 1, 2]);
        assert_eq!(quotient(&l, &inflator::top(&l)).unwrap().lattice.len(), 1);

        let q = quotient(&l, &named(&l, Named::U(1))).unwrap();
        assert_eq!(q.lattice.labels(), ["m", "1"]);
        assert_eq!(q.embedding[q.projection[0]], 1);

        let not_nucleus = Inflator::new(&l, vec![1, 2, 2]).unwrap();
        assert!(matches!(
            quotient(&l, &not_nucleus),
            Err(Error::NotANucleus)
        ));
    }
}
