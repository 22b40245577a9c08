//! The twelve acceptance criteria. Runs without the libtest harness so every
//! criterion prints exactly one PASS or FAIL line; the process exits nonzero
//! if any criterion fails.

use std::process::{Command, ExitCode, Stdio};
use std::time::Instant;

use idiomlab::config::RunConfig;
use idiomlab::inflator::{self, join2, meet2, named};
use idiomlab::lattice::random_modular;
use idiomlab::nuclei::NucleusLattice;
use idiomlab::suite::{self, Status};
use idiomlab::{
    dimensions, generate, Family, FamilyKind, FiniteLattice, Inflator, Intervals, Named,
    OperatorLattice,
};

const BOUND: usize = 100_000;

type Verdict = Result<String, String>;

fn lat(f: Family) -> FiniteLattice {
    generate(f).expect("suite lattice")
}

fn suite_lattices() -> Vec<FiniteLattice> {
    let c2 = lat(Family::Chain(2));
    let c3 = lat(Family::Chain(3));
    vec![
        c2.clone(),
        c3.clone(),
        lat(Family::Chain(4)),
        lat(Family::Chain(5)),
        lat(Family::Boolean(2)),
        lat(Family::Boolean(3)),
        lat(Family::DiamondM3),
        lat(Family::Product(&c2, &c3)),
    ]
}

fn all(l: &FiniteLattice) -> OperatorLattice {
    OperatorLattice::enumerate(l, FamilyKind::All, BOUND).expect("enumerable")
}

fn stable(l: &FiniteLattice) -> OperatorLattice {
    OperatorLattice::enumerate(l, FamilyKind::Stable, BOUND).expect("enumerable")
}

/// The least (or greatest) element of `zs`, found by pairwise comparison.
fn extreme(l: &FiniteLattice, zs: &[&Inflator], least: bool) -> Option<Inflator> {
    zs.iter()
        .find(|z| {
            zs.iter()
                .all(|w| if least { z.le(l, w) } else { w.le(l, z) })
        })
        .map(|z| (*z).clone())
}

fn c1_totalizer_oracle() -> Verdict {
    let mut count = 0;
    for l in suite_lattices() {
        let f = all(&l);
        let top = inflator::top(&l);
        for d in f.members() {
            let zs: Vec<&Inflator> = f
                .members()
                .iter()
                .filter(|z| z.compose(&l, d).unwrap() == top)
                .collect();
            let brute =
                extreme(&l, &zs, true).ok_or(format!("{}: no least annihilator", l.name()))?;
            let closed = named(&l, Named::O(d.at(l.bottom())));
            if brute != closed || d.totalizer(&l) != closed {
                return Err(format!("{}: d = {}", l.name(), d.display(&l)));
            }
            count += 1;
        }
    }
    Ok(format!("{count} inflators"))
}

fn c2_equalizer_oracle() -> Verdict {
    let mut count = 0;
    for l in suite_lattices() {
        let f = all(&l);
        for d in f.members() {
            let zs: Vec<&Inflator> = f
                .members()
                .iter()
                .filter(|z| z.compose(&l, d).unwrap() == *d)
                .collect();
            let joined = zs
                .iter()
                .fold(inflator::identity(&l), |acc, z| join2(&l, &acc, z));
            if joined != d.equalizer(&l) || extreme(&l, &zs, false).as_ref() != Some(&joined) {
                return Err(format!("{}: d = {}", l.name(), d.display(&l)));
            }
            count += 1;
        }
    }
    Ok(format!("{count} inflators"))
}

fn c3_totalizer_equalizer_laws() -> Verdict {
    let lats = [
        lat(Family::Chain(2)),
        lat(Family::Chain(3)),
        lat(Family::Chain(4)),
        lat(Family::Boolean(2)),
        lat(Family::DiamondM3),
    ];
    for l in &lats {
        let f = all(l);
        let t = |d: &Inflator| d.totalizer(l);
        for d in f.members() {
            let e = d.equalizer(l);
            if !(e.is_idempotent() && e.le(l, d) && ((e == *d) == d.is_idempotent())) {
                return Err(format!("{}: equalizer laws at {}", l.name(), d.display(l)));
            }
            for dp in f.members() {
                let ok = (!d.le(l, dp) || t(dp).le(l, &t(d)))
                    && t(&join2(l, d, dp)).le(l, &meet2(l, &t(d), &t(dp)))
                    && join2(l, &t(d), &t(dp)).le(l, &t(&meet2(l, d, dp)));
                if !ok {
                    return Err(format!(
                        "{}: totalizer laws at {}, {}",
                        l.name(),
                        d.display(l),
                        dp.display(l)
                    ));
                }
            }
        }
    }
    Ok("chain 2-4, boolean 2, m3".into())
}

fn c4_class_intervals() -> Verdict {
    for l in [lat(Family::Chain(3)), lat(Family::Boolean(2))] {
        let f = all(&l);
        let mut classes = std::collections::BTreeSet::new();
        for d in f.members() {
            let class: Vec<&Inflator> = f
                .members()
                .iter()
                .filter(|k| k.totalizer(&l) == d.totalizer(&l))
                .collect();
            let z = d.at(l.bottom());
            let (lo, hi) = (named(&l, Named::U(z)), named(&l, Named::Iota(z)));
            let interval: Vec<&Inflator> = f
                .members()
                .iter()
                .filter(|k| lo.le(&l, k) && k.le(&l, &hi))
                .collect();
            if class != interval {
                return Err(format!("{}: class of {}", l.name(), d.display(&l)));
            }
            classes.insert(z);
        }
        if classes.len() != inflator::tot_poset(&l).len() {
            return Err(format!(
                "{}: {} classes vs {} totalizers",
                l.name(),
                classes.len(),
                l.len()
            ));
        }
    }
    Ok("chain 3, boolean 2".into())
}

fn c5_nuclei_frame() -> Verdict {
    let mut sizes = Vec::new();
    for l in suite_lattices() {
        let nl = NucleusLattice::new(&l, BOUND).map_err(|e| e.to_string())?;
        if !nl.as_lattice().is_distributive() {
            return Err(format!("{}: N(A) not distributive", l.name()));
        }
        sizes.push(format!("{}:{}", l.name(), nl.len()));
    }
    let c3 = lat(Family::Chain(3));
    let nl = NucleusLattice::new(&c3, BOUND).unwrap();
    let b2 = lat(Family::Boolean(2));
    if nl.len() != 4 || nl.as_lattice().digest() != b2.digest() {
        return Err("N(chain 3) is not the four-element diamond".into());
    }
    Ok(sizes.join(" "))
}

fn c6_strongly_atomic() -> Verdict {
    let mut lats = suite_lattices();
    for seed in 0..100 {
        lats.push(random_modular(seed, 8).map_err(|e| e.to_string())?);
    }
    for l in &lats {
        let r = dimensions::strongly_atomic(l).map_err(|e| e.to_string())?;
        if r.sub_verdicts != Some([true, true, true]) || !r.verdict {
            return Err(format!("{}: {:?}", l.name(), r.sub_verdicts));
        }
    }
    Ok(format!("{} lattices", lats.len()))
}

fn c7_negation_below_totalizer() -> Verdict {
    let lats = [
        lat(Family::Chain(2)),
        lat(Family::Chain(3)),
        lat(Family::Chain(4)),
        lat(Family::Boolean(2)),
    ];
    let mut failures = Vec::new();
    for l in &lats {
        let f = stable(l);
        for (i, s) in f.members().iter().enumerate() {
            let (neg, valid) = f.pseudocomplement(i);
            let neg = f.member(neg);
            if !valid || meet2(l, neg, s) != inflator::identity(l) {
                return Err(format!(
                    "{}: no pseudocomplement for {}",
                    l.name(),
                    s.display(l)
                ));
            }
            if !neg.le(l, &s.totalizer(l)) {
                failures.push(format!(
                    "{}: s = {}, ¬s = {}, t(s) = {}",
                    l.name(),
                    s.display(l),
                    neg.display(l),
                    s.totalizer(l).display(l)
                ));
            }
        }
    }
    match failures.first() {
        None => Ok("chain 2-4, boolean 2".into()),
        Some(first) => Err(format!(
            "{} counterexample(s), first {first}",
            failures.len()
        )),
    }
}

fn statuses(l: &FiniteLattice, ids: &[&str]) -> Result<(), String> {
    let r = suite::run_ids(l, &RunConfig::default(), ids);
    for id in ids {
        let c = r.get(id).ok_or(format!("missing check {id}"))?;
        if c.status != Status::Pass {
            return Err(format!(
                "{}: {id} {:?} {:?} {:?}",
                l.name(),
                c.status,
                c.witness,
                c.note
            ));
        }
    }
    Ok(())
}

fn c8_second_level() -> Verdict {
    let ids = [
        "mu-prenucleus",
        "negation-mu-bound",
        "negation-mu-idempotent",
        "partial-totalizer-negation",
        "boolean-negation",
        "st-closure-bound",
        "dimension-equivalence",
    ];
    for n in [2, 3] {
        let l = lat(Family::Chain(n));
        let expected = [2, 5][n - 2];
        if all(&l).len() != expected {
            return Err(format!("|I(chain {n})| != {expected}"));
        }
        statuses(&l, &ids)?;
    }
    Ok("chain 2, chain 3".into())
}

fn c9_gab() -> Verdict {
    for l in [lat(Family::Chain(3)), lat(Family::Boolean(2))] {
        let nl = NucleusLattice::new(&l, BOUND).unwrap();
        let r = dimensions::gab_dimension(&nl).map_err(|e| e.to_string())?;
        if r.trace != [nl.bottom(), nl.top()] {
            return Err(format!("{}: trace {:?}", l.name(), r.trace));
        }
        let u = Intervals::new(&l);
        for j in 0..nl.len() {
            let d = u.division_set_of(nl.member(j)).unwrap();
            let crt = u.critical_set(&d).unwrap();
            let via_base = u
                .associated_inflator(&u.close(&crt, idiomlab::Level::Division).unwrap())
                .unwrap();
            let via_nl = nl.member(nl.gab(j).unwrap().value);
            let joined = join2(&l, &via_base, nl.member(j)).infty(&l).0;
            if joined != *via_nl {
                return Err(format!(
                    "{}: routes differ at {}",
                    l.name(),
                    nl.member(j).display(&l)
                ));
            }
        }
    }
    for l in suite_lattices() {
        statuses(&l, &["gab-routes", "gab-three-way", "gab-points"])?;
    }
    Ok("chain 3, boolean 2; three-way agreement on all suite lattices".into())
}

fn c10_comparison_chains() -> Verdict {
    for l in suite_lattices() {
        statuses(&l, &["comparison-chains"])?;
        let r = suite::run_ids(&l, &RunConfig::default(), &["comparison-boy"]);
        if r.checks[0].status != Status::Skip {
            return Err(format!("{}: Boy comparison not skipped", l.name()));
        }
    }
    Ok("items 1, 2, 4 hold; item 3 skipped".into())
}

fn c11_order_predicates() -> Verdict {
    let mut notes = Vec::new();
    for l in suite_lattices() {
        statuses(&l, &["order-predicates", "essential-stable"])?;
        let r = suite::run_ids(&l, &RunConfig::default(), &["infinity-meet"]);
        if r.checks[0].status != Status::Pass {
            return Err(format!("{}: infinity-meet {:?}", l.name(), r.checks[0]));
        }
        if let Some(n) = &r.checks[0].note {
            if n.contains('≠') {
                notes.push(l.name().to_string());
            }
        }
    }
    Ok(if notes.is_empty() {
        "no (d ∧ k)^∞ counterexample".into()
    } else {
        format!("(d ∧ k)^∞ findings on {}", notes.join(", "))
    })
}

fn c12_determinism() -> Verdict {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let bin = env!("CARGO_BIN_EXE_idiomlab");
    let file = dir.path().join("b2.json");
    let status = Command::new(bin)
        .args(["gen", "boolean", "2", "-o"])
        .arg(&file)
        .env_remove("IDIOMLAB_CACHE_DIR")
        .stdout(Stdio::null())
        .status()
        .map_err(|e| e.to_string())?;
    if !status.success() {
        return Err("gen failed".into());
    }
    let run = || {
        Command::new(bin)
            .arg("verify")
            .arg(&file)
            .args(["--suite", "all", "--format", "json"])
            .env_remove("IDIOMLAB_CACHE_DIR")
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    if a.stdout.is_empty() || a.stdout != b.stdout {
        return Err("verify output differs between runs".into());
    }
    Ok(format!("{} identical bytes", a.stdout.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 12] = [
        ("totalizer oracle", c1_totalizer_oracle),
        ("equalizer closed form", c2_equalizer_oracle),
        ("totalizer and equalizer laws", c3_totalizer_equalizer_laws),
        ("totalizer class intervals", c4_class_intervals),
        ("nuclei form a frame", c5_nuclei_frame),
        ("strong atomicity agreement", c6_strongly_atomic),
        ("negation below totalizer", c7_negation_below_totalizer),
        ("second-level suite", c8_second_level),
        ("gab pipeline", c9_gab),
        ("comparison chains", c10_comparison_chains),
        ("order predicates", c11_order_predicates),
        ("verify determinism", c12_determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = f();
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("PASS criterion {:>2} {name} ({secs:.2}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {:>2} {name} ({secs:.2}s): {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
