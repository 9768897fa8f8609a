//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the test fails if any criterion does.

mod common;

use std::time::{Duration, Instant};

use posetrep_core::conditions::{check_d2bar, check_lmd, completely_representable, is_lattice, lattice_profile};
use posetrep_core::families;
use posetrep_core::filters::{complement_is_ideal, enumerate_filters, extend_to_filter, is_filter, FilterPolicy, ViolationKind};
use posetrep_core::representation::{decide_representable, point_filters, verify_representation, DecisionMethod};
use posetrep_core::search::{enumerate_small_posets, find_counterexample, Predicate, DEFAULT_CAP};
use posetrep_core::spectrum::spectrum;
use posetrep_core::{Arity, Budget, ElementSet, Poset, Signature};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn sig(a: Arity, b: Arity) -> Signature {
    Signature::new(a, b)
}

fn fin(k: usize) -> Arity {
    Arity::Finite(k)
}

fn decide(p: &Poset, s: Signature) -> bool {
    decide_representable(p, s, DecisionMethod::PerPair, Budget::default())
        .unwrap()
        .verdict
}

fn random_sig(rng: &mut ChaCha8Rng, n: usize) -> Signature {
    let ladder: Vec<Arity> = Arity::ladder(n.max(2)).collect();
    sig(ladder[rng.random_range(0..ladder.len())], ladder[rng.random_range(0..ladder.len())])
}

fn random_poset(rng: &mut ChaCha8Rng) -> Poset {
    let n = rng.random_range(1..=8);
    let prob = rng.random_range(0.15..0.7);
    families::random(n, prob, rng.random()).unwrap()
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> (Outcome, Duration) {
    let start = Instant::now();
    let mut out = f();
    let took = start.elapsed();
    if out.is_ok() && took > limit {
        out = Err(format!("took {took:?}, limit {limit:?}"));
    }
    (out, took)
}

fn pn_family() -> Outcome {
    for n in 4..=6 {
        let (out, took) = timed(Duration::from_secs(10), || {
            let p = families::pn(n).unwrap();
            for m in 3..n {
                ensure!(decide(&p, sig(fin(m), fin(m))), "pn({n}) at ({m},{m}) should hold");
            }
            ensure!(!decide(&p, sig(fin(n), fin(n))), "pn({n}) at ({n},{n}) should fail");
            for a in Arity::ladder(p.len()).skip(1) {
                ensure!(!decide(&p, sig(a, fin(n))), "pn({n}) at ({a},{n}) should fail");
            }
            ensure!(decide(&p, sig(Arity::All, fin(n - 1))), "pn({n}) at (ALL,{}) should hold", n - 1);
            Ok(())
        });
        println!("    pn({n}): {took:?}");
        out?;
    }
    Ok(())
}

fn express_fixture() -> Outcome {
    let p = families::express();
    let lmd = check_lmd(&p);
    ensure!(!lmd.holds, "lmd should fail");
    let w = lmd.counterexample.unwrap();
    let pi = p.index_of("p").unwrap();
    ensure!([w.x, w.y, w.z].contains(&pi), "witness triple should contain p");
    ensure!(decide(&p, Signature::complete()), "should be completely representable");
    let h = families::express_representation();
    let violations = verify_representation(&p, &h).unwrap();
    ensure!(violations.is_empty(), "representation violations: {violations:?}");
    let pfs = point_filters(&p, &h).unwrap();
    ensure!(pfs.len() == 4, "expected 4 point filters");
    for (point, f) in pfs {
        ensure!(is_filter(&p, f.members, Signature::complete()).is_ok(), "point filter {point} rejected");
    }
    Ok(())
}

fn d2_fixture() -> Outcome {
    let p = families::d2poset();
    ensure!(check_d2bar(&p).holds, "d2bar should hold");
    let s33 = Signature::finite(3, 3).unwrap();
    let r = decide_representable(&p, s33, DecisionMethod::PerPair, Budget::default()).unwrap();
    ensure!(!r.verdict, "(3,3) should fail");
    let (pi, qi) = (p.index_of("p").unwrap(), p.index_of("q").unwrap());
    let failing: Vec<_> = r.failing_pairs().collect();
    ensure!(failing.contains(&(pi, qi)), "failing pairs {failing:?} lack (p,q)");
    let all = enumerate_filters(&p, s33, FilterPolicy::All, Budget::default()).unwrap();
    ensure!(
        all.iter().all(|f| !f.members.contains(pi) || f.members.contains(qi)),
        "some filter separates p from q"
    );
    Ok(())
}

fn prime_ideal_fixture() -> Outcome {
    let p = families::prime_ideal();
    let h = families::prime_ideal_identity();
    let violations = verify_representation(&p, &h).unwrap();
    ensure!(violations.is_empty(), "identity violations: {violations:?}");
    let (gamma, forbidden) = families::prime_ideal_gamma();
    let g = p.set_of(&gamma).unwrap();
    let s33 = Signature::finite(3, 3).unwrap();
    match is_filter(&p, g, s33) {
        Err(v) => ensure!(v.kind == ViolationKind::JoinNotPrime, "gamma fails with {:?}", v.kind),
        Ok(()) => return Err("gamma accepted as a filter".into()),
    }
    let fi = p.index_of(forbidden).unwrap();
    let blocked = extend_to_filter(&p, g, Some(fi), s33, Budget::default()).unwrap();
    ensure!(blocked.is_none(), "extension avoiding {forbidden} found");
    let free = extend_to_filter(&p, g, None, s33, Budget::default()).unwrap();
    ensure!(free.is_some_and(|f| f.members.contains(fi)), "free extension should contain {forbidden}");
    Ok(())
}

fn lattice_correspondence() -> Outcome {
    let s33 = Signature::finite(3, 3).unwrap();
    let mut lattices = 0;
    for n in 1..=6 {
        for p in enumerate_small_posets(n, DEFAULT_CAP).unwrap() {
            if !is_lattice(&p) {
                continue;
            }
            lattices += 1;
            let rep = decide(&p, s33);
            let dist = lattice_profile(&p).lattice.unwrap().is_distributive;
            let complete = completely_representable(&p, Budget::default()).unwrap().verdict;
            ensure!(rep == dist && dist == complete, "disagreement on {:?}", p.order_pairs());
        }
    }
    println!("    lattices checked: {lattices}");
    Ok(())
}

fn classic_lattices() -> Outcome {
    for n in 0..=4 {
        let p = families::boolean(n);
        ensure!(completely_representable(&p, Budget::default()).unwrap().verdict, "boolean({n})");
    }
    let s33 = Signature::finite(3, 3).unwrap();
    ensure!(!decide(&families::m3(), s33), "m3 at (3,3)");
    ensure!(!decide(&families::n5(), s33), "n5 at (3,3)");
    Ok(())
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for case in 0..300 {
        let p = random_poset(&mut rng);
        let s = ElementSet::from_bits(rng.random::<u128>()) & p.all();
        let sg = random_sig(&mut rng, p.len());
        let fast = is_filter(&p, s, sg).is_ok();
        let slow = common::is_filter_brute(&p, s, sg);
        ensure!(fast == slow, "is_filter case {case}: {fast} vs {slow}");
        // random subsets are rarely filters; also test an up-closed one
        let u = p.up_closure(s);
        ensure!(
            is_filter(&p, u, sg).is_ok() == common::is_filter_brute(&p, u, sg),
            "is_filter up-closed case {case}"
        );
    }
    for case in 0..150 {
        let p = random_poset(&mut rng);
        let sg = random_sig(&mut rng, p.len());
        let per_pair = decide(&p, sg);
        let enumerated = decide_representable(&p, sg, DecisionMethod::Enumerate, Budget::default())
            .unwrap()
            .verdict;
        let brute = common::representable_brute(&p, sg);
        ensure!(
            per_pair == enumerated && enumerated == brute,
            "decision case {case} at {sg}: {per_pair} {enumerated} {brute}"
        );
    }
    Ok(())
}

fn duality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for case in 0..120 {
        let p = random_poset(&mut rng);
        let sg = random_sig(&mut rng, p.len());
        ensure!(decide(&p, sg) == decide(&p.dual(), sg.swapped()), "duality case {case} at {sg}");
        for f in enumerate_filters(&p, sg, FilterPolicy::All, Budget::default()).unwrap() {
            ensure!(complement_is_ideal(&p, &f), "complement case {case}");
        }
    }
    Ok(())
}

fn corpus() -> Vec<Poset> {
    let mut out = vec![
        families::pn(4).unwrap(),
        families::pn(5).unwrap(),
        families::express(),
        families::d2poset(),
        families::prime_ideal(),
        families::m3(),
        families::n5(),
        families::chain(5),
        families::antichain(4),
    ];
    out.extend((0..=4).map(families::boolean));
    out.extend((0..10).map(|s| families::random(7, 0.35, s).unwrap()));
    out
}

fn spectrum_monotone() -> Outcome {
    for p in corpus() {
        let s = spectrum(&p, Budget::default()).unwrap();
        ensure!(s.is_downward_closed(), "not downward closed: {:?}", p.labels());
    }
    let s = spectrum(&families::pn(5).unwrap(), Budget::default()).unwrap();
    ensure!(s.frontier == [sig(Arity::All, fin(4))], "pn(5) frontier {:?}", s.frontier);
    Ok(())
}

fn search_probes() -> Outcome {
    let counts: Vec<usize> = (1..=4)
        .map(|n| enumerate_small_posets(n, DEFAULT_CAP).unwrap().len())
        .collect();
    let brute: Vec<usize> = (1..=4).map(common::count_classes_brute).collect();
    ensure!(counts == [1, 2, 5, 16] && counts == brute, "counts {counts:?}, brute {brute:?}");
    let rep33 = Predicate::Representable(Signature::finite(3, 3).unwrap());
    let found = find_counterexample(&Predicate::D2Bar, &rep33, 7, DEFAULT_CAP, u64::MAX).unwrap();
    let Some(found) = found else {
        return Err("no witness on at most 7 elements".into());
    };
    let w = &found.poset;
    println!("    witness on {} elements, covers {:?}, after {} posets", w.len(), w.cover_pairs(), found.evaluated);
    ensure!(common::d2bar_brute(w), "witness fails d2bar");
    ensure!(!common::representable_brute(w, Signature::finite(3, 3).unwrap()), "witness is (3,3)-representable");
    ensure!(w.len() == 7, "first witness has {} elements, not 7", w.len());
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("1 pn family", 30, pn_family),
        ("2 lmd failure, complete representation", 1, express_fixture),
        ("3 d2bar without (3,3)", 1, d2_fixture),
        ("4 gamma and prime ideal extension", 1, prime_ideal_fixture),
        ("5 lattices: (3,3) iff distributive iff complete", 60, lattice_correspondence),
        ("6 boolean, m3, n5", 5, classic_lattices),
        ("7 oracle equivalence", 600, oracle_equivalence),
        ("8 duality and complements", 600, duality),
        ("9 spectrum monotonicity", 600, spectrum_monotone),
        ("10 search probes", 120, search_probes),
    ];
    let mut failed = Vec::new();
    for (name, secs, run) in criteria {
        let (out, took) = timed(Duration::from_secs(secs), run);
        match out {
            Ok(()) => println!("PASS criterion {name} ({took:.2?})"),
            Err(e) => {
                println!("FAIL criterion {name} ({took:.2?}): {e}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed: {failed:?}");
}

