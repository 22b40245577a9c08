//! Lengths and dimensions: `d`-length, strong atomicity, `St`-dimension on
//! `N(A)`, and the second-level operator `μ^k(d) = d∘k`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::OperatorLattice;
use crate::inflator::{self, Inflator};
use crate::intervals::{Interval, Intervals};
use crate::lattice::{Digest, Elem, FiniteLattice};
use crate::nuclei::NucleusLattice;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Notion {
    DLength,
    StDimension,
    GabDimension,
    StronglyAtomic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionReport {
    pub lattice: Digest,
    pub notion: Notion,
    pub verdict: bool,
    /// Number of strict increases before the orbit stabilised.
    pub steps: usize,
    /// The orbit, starting point included.
    pub trace: Vec<Elem>,
    /// Strong atomicity only: definition scan, `soc^∞(0) = 1`,
    /// `t(soc^∞) = id`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sub_verdicts: Option<[bool; 3]>,
    /// `d`-length only: whether `t(d^∞) = id` agrees with the verdict.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub totalizer_form_agrees: Option<bool>,
}

fn orbit(start: Elem, f: impl Fn(Elem) -> Elem) -> Vec<Elem> {
    let mut trace = vec![start];
    loop {
        let cur = *trace.last().expect("non-empty");
        let next = f(cur);
        if next == cur {
            return trace;
        }
        trace.push(next);
    }
}

/// Iterates `d` from the bottom.
pub fn d_length(lat: &FiniteLattice, d: &Inflator) -> Result<DimensionReport> {
    if d.host() != lat.digest() {
        return Err(Error::HostMismatch(
            d.host().to_hex(),
            lat.digest().to_hex(),
        ));
    }
    let trace = orbit(lat.bottom(), |x| d.at(x));
    let verdict = *trace.last().expect("non-empty") == lat.top();
    let (closed, _) = d.infty(lat);
    let restated = closed.totalizer(lat) == inflator::identity(lat);
    Ok(DimensionReport {
        lattice: lat.digest(),
        notion: Notion::DLength,
        verdict,
        steps: trace.len() - 1,
        trace,
        sub_verdicts: None,
        totalizer_form_agrees: Some(restated == verdict),
    })
}

/// The three characterisations of strong atomicity.
pub fn strongly_atomic(lat: &FiniteLattice) -> Result<DimensionReport> {
    let u = Intervals::new(lat);
    let by_definition = u.is_strongly_atomic(Interval::new(lat.bottom(), lat.top()));
    let soc = u.soc()?;
    let trace = orbit(lat.bottom(), |x| soc.at(x));
    let by_socle = *trace.last().expect("non-empty") == lat.top();
    let (closed, _) = soc.infty(lat);
    let by_totalizer = closed.totalizer(lat) == inflator::identity(lat);
    let subs = [by_definition, by_socle, by_totalizer];
    Ok(DimensionReport {
        lattice: lat.digest(),
        notion: Notion::StronglyAtomic,
        verdict: subs.iter().all(|&v| v),
        steps: trace.len() - 1,
        trace,
        sub_verdicts: Some(subs),
        totalizer_form_agrees: None,
    })
}

/// Iterates the self-map `st` of `N(A)` from nucleus `j`.
pub fn st_dimension(nl: &NucleusLattice, st: &[usize], j: usize) -> Result<DimensionReport> {
    let st = Inflator::new(nl.as_lattice(), st.to_vec())
        .map_err(|e| Error::NotAnInflatorOnNl(e.to_string()))?;
    Ok(st_report(nl, &st, j, Notion::StDimension))
}

fn st_report(nl: &NucleusLattice, st: &Inflator, j: usize, notion: Notion) -> DimensionReport {
    let trace = orbit(j, |x| st.at(x));
    DimensionReport {
        lattice: nl.host().digest(),
        notion,
        verdict: *trace.last().expect("non-empty") == nl.top(),
        steps: trace.len() - 1,
        trace,
        sub_verdicts: None,
        totalizer_form_agrees: None,
    }
}

/// `Gab` iterated from the identity nucleus.
pub fn gab_dimension(nl: &NucleusLattice) -> Result<DimensionReport> {
    let gab = nl.gab_map()?;
    Ok(st_report(nl, &gab, nl.bottom(), Notion::GabDimension))
}

/// `μ^k(d) = d∘k` as an inflator on `F.as_lattice()`.
pub fn mu_operator(f: &OperatorLattice, k: usize) -> Result<Inflator> {
    let lat = f.host();
    let kk = f.member(k);
    let values = f
        .members()
        .iter()
        .map(|d| {
            let dk = d.compose(lat, kk)?;
            f.find(&dk).ok_or(Error::NotClosedUnderComposition)
        })
        .collect::<Result<Vec<_>>>()?;
    Inflator::new(f.as_lattice(), values)
}

/// The partial totalizer `⋀{z ∈ F : z∘d = top}` inside the family.
pub fn partial_totalizer(f: &OperatorLattice, d: &Inflator) -> Result<Inflator> {
    crate::family::brute_extremum(f, d, crate::family::Extremum::Totalizer)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::FamilyKind;
    use crate::inflator::{named, Named};
    use crate::lattice::{generate, Family};

    const BOUND: usize = 100_000;

    #[test]
    fn d_length_examples() {
        let l = generate(Family::Chain(3)).unwrap();
        let r = d_length(&l, &inflator::top(&l)).unwrap();
        assert!(r.verdict);
        assert_eq!(r.steps, 1);
        let r = d_length(&l, &inflator::identity(&l)).unwrap();
        assert!(!r.verdict);
        assert_eq!(r.steps, 0);
        let soc = Intervals::new(&l).soc().unwrap();
        let r = d_length(&l, &soc).unwrap();
        assert!(r.verdict);
        assert_eq!(r.trace, [0, 1, 2]);
        assert_eq!(r.totalizer_form_agrees, Some(true));
    }

    #[test]
    fn strongly_atomic_chains() {
        for (n, steps) in [(2, 1), (4, 3)] {
            let l = generate(Family::Chain(n)).unwrap();
            let r = strongly_atomic(&l).unwrap();
            assert_eq!(r.sub_verdicts, Some([true, true, true]));
            assert_eq!(r.steps, steps);
        }
    }

    #[test]
    fn st_dimension_examples() {
        let l = generate(Family::Chain(3)).unwrap();
        let nl = NucleusLattice::new(&l, BOUND).unwrap();
        let id: Vec<usize> = (0..nl.len()).collect();
        assert!(st_dimension(&nl, &id, nl.top()).unwrap().verdict);
        assert_eq!(st_dimension(&nl, &id, nl.top()).unwrap().steps, 0);
        assert!(!st_dimension(&nl, &id, nl.bottom()).unwrap().verdict);
        let g = gab_dimension(&nl).unwrap();
        assert!(g.verdict);
        assert_eq!(g.steps, 1);

        let mut bad = id.clone();
        bad[nl.top()] = nl.bottom();
        assert!(matches!(
            st_dimension(&nl, &bad, 0),
            Err(Error::NotAnInflatorOnNl(_))
        ));
    }

    #[test]
    fn mu_examples() {
        let l = generate(Family::Chain(3)).unwrap();
        let f = OperatorLattice::enumerate(&l, FamilyKind::All, BOUND).unwrap();
        let id = mu_operator(&f, f.bottom()).unwrap();
        assert_eq!(id, inflator::identity(f.as_lattice()));
        let top = mu_operator(&f, f.top()).unwrap();
        assert_eq!(top, inflator::top(f.as_lattice()));
        let um = f.find(&named(&l, Named::U(1))).unwrap();
        let mu = mu_operator(&f, um).unwrap();
        assert!(mu.is_prenucleus());
        assert!(mu.is_nucleus());
        for d in 0..f.len() {
            let expected = f.member(d).compose(&l, f.member(um)).unwrap();
            assert_eq!(f.member(mu.at(d)), &expected);
        }
    }
}
