//! Acceptance suite. Runs without the libtest harness so that every criterion
//! prints its own PASS/FAIL line; exits non-zero if any criterion fails.

use std::time::{Duration, Instant};

use picomm::catalog::{make_psl2, seed_catalog, CatalogEntry, GroupSpec, Provenance};
use picomm::harness::{sweep, PiPolicy, SweepConfig, SweepOutcome, TheoremId, Verdict};
use picomm::invariants::{pr_pi, pr_pi_naive, threshold};
use picomm::{ExactRatio, PrimeSet};

type Check = std::result::Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

fn r(n: u128, d: u128) -> ExactRatio {
    ExactRatio::new(n, d)
}

fn pi(ps: &[u64]) -> PrimeSet {
    PrimeSet::new(ps.iter().copied()).unwrap()
}

fn ensure(cond: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit: Duration) -> std::result::Result<(), String> {
    ensure(
        elapsed <= limit,
        format!("took {elapsed:.2?}, limit {limit:?}"),
    )
}

fn run_sweep(catalog: &[CatalogEntry], theorems: &str, max_order: Option<u64>) -> SweepOutcome {
    let config = SweepConfig {
        theorems: TheoremId::parse_list(theorems).unwrap(),
        max_order,
        ..Default::default()
    };
    sweep(catalog, &config).expect("sweep runs")
}

fn no_failures(out: &SweepOutcome, what: &str) -> std::result::Result<(), String> {
    let fails: Vec<String> = out
        .failures()
        .map(|f| format!("{} {} pi={}", f.theorem, f.group_id, f.pi))
        .collect();
    ensure(
        fails.is_empty(),
        format!("{what}: failing reports {fails:?}"),
    )
}

fn report_value(
    out: &SweepOutcome,
    t: TheoremId,
    group: &str,
    p: &PrimeSet,
) -> std::result::Result<ExactRatio, String> {
    let rep = out
        .find(t, group, p)
        .ok_or_else(|| format!("no {t} report for {group} pi={p}"))?;
    rep.max_witness()
        .map(|w| w.value)
        .ok_or_else(|| format!("{t} report for {group} pi={p} has no witness"))
}

fn pr_pi_sharpness() -> Check {
    let start = Instant::now();
    for (p, expected) in [(5, r(29, 125)), (7, r(55, 343)), (11, r(131, 1331))] {
        let g = make_psl2(p).unwrap().build().unwrap();
        let value = pr_pi(&g, &pi(&[p])).unwrap();
        ensure(
            value == expected,
            format!("psl2:{p} gives {value}, want {expected}"),
        )?;
        ensure(
            value == threshold(p).unwrap(),
            format!("psl2:{p} not at the threshold"),
        )?;
    }
    within(start.elapsed(), Duration::from_secs(5))?;
    Ok(format!(
        "29/125, 55/343, 131/1331 in {:.2?}",
        start.elapsed()
    ))
}

fn centralizer_fraction_sweep(seed: &[CatalogEntry]) -> Check {
    let start = Instant::now();
    let out = run_sweep(seed, "A", Some(500));
    within(start.elapsed(), Duration::from_secs(120))?;
    no_failures(&out, "A")?;
    let sup = out
        .supremum_where(TheoremId::A, |rep| rep.pi.contains(2))
        .ok_or("no witnesses with 2 in pi")?;
    ensure(
        sup.value == r(1, 2),
        format!("supremum for 2 in pi is {}", sup.value),
    )?;
    let s3 = report_value(&out, TheoremId::A, "sym:3", &pi(&[2]))?;
    ensure(s3 == r(1, 2), format!("sym:3 pi={{2}} gives {s3}"))?;
    Ok(format!(
        "{} reports, 0 fail, sup 1/2 at sym:3 pi={{2}}, {:.2?}",
        out.summary.reports,
        start.elapsed()
    ))
}

fn threshold_iff_sweep(seed: &[CatalogEntry]) -> Check {
    let out = run_sweep(seed, "C", Some(500));
    no_failures(&out, "C")?;
    for (group, p) in [("sym:3", 2u64), ("psl2:5", 5)] {
        let rep = out
            .find(TheoremId::CForward, group, &pi(&[p]))
            .ok_or(format!("missing {group}"))?;
        let w = rep
            .witnesses
            .first()
            .ok_or(format!("{group}: no witness"))?;
        ensure(
            w.value == threshold(p).unwrap() && w.bound == threshold(p).unwrap(),
            format!("{group}: Pr_pi {} vs threshold {}", w.value, w.bound),
        )?;
        ensure(
            rep.has_flag("no-normal-hall"),
            format!("{group}: normal Hall found"),
        )?;
        ensure(
            rep.verdict == Verdict::Pass,
            format!("{group}: {:?}", rep.verdict),
        )?;
    }
    // Over the whole catalog, the largest Pr_p without a normal abelian Hall
    // subgroup is exactly the threshold and is reached by PSL(2, p).
    let full = run_sweep(seed, "C", None);
    no_failures(&full, "C, full catalog")?;
    for p in [5u64, 7, 11] {
        let sup = full
            .supremum_where(TheoremId::CForward, |rep| rep.pi == pi(&[p]))
            .ok_or(format!("no reports for pi={{{p}}}"))?;
        ensure(
            sup.value == threshold(p).unwrap(),
            format!("pi={{{p}}}: supremum {} at {}", sup.value, sup.group_id),
        )?;
        let at_psl = report_value(&full, TheoremId::CForward, &format!("psl2:{p}"), &pi(&[p]))?;
        ensure(
            at_psl == sup.value,
            format!("psl2:{p} does not attain the supremum"),
        )?;
    }
    Ok(format!(
        "{} reports, 0 fail, boundary at sym:3/{{2}} and psl2:5/{{5}}, sup = threshold for p = 5, 7, 11",
        out.summary.reports
    ))
}

fn fitting_hypothesis_sweep(seed: &[CatalogEntry]) -> Check {
    let start = Instant::now();
    let out = run_sweep(seed, "B", None);
    within(start.elapsed(), Duration::from_secs(60))?;
    no_failures(&out, "B")?;
    let s4 = report_value(&out, TheoremId::B, "sym:4", &pi(&[3]))?;
    ensure(s4 == r(1, 3), format!("sym:4 pi={{3}} gives {s4}"))?;
    let mut frobenius = 0;
    for e in seed {
        if let Provenance::Constructor(GroupSpec::Frobenius(_, rr)) = e.provenance {
            let rep = out
                .find(TheoremId::B, &e.id, &pi(&[rr]))
                .ok_or(format!("missing {}", e.id))?;
            ensure(
                rep.verdict == Verdict::Pass,
                format!("{}: {:?}", e.id, rep.verdict),
            )?;
            frobenius += 1;
        }
    }
    let checked = out
        .of(TheoremId::B)
        .filter(|r| r.verdict == Verdict::Pass)
        .count();
    Ok(format!(
        "{checked} checked reports ({frobenius} Frobenius), 0 fail, 1/3 at sym:4 pi={{3}}, {:.2?}",
        start.elapsed()
    ))
}

fn quotient_sweep(seed: &[CatalogEntry]) -> Check {
    let out = run_sweep(seed, "L2.1", Some(500));
    no_failures(&out, "L2.1")?;
    let rep = out
        .find(TheoremId::QuotientGlobal, "sym:4", &pi(&[2]))
        .ok_or("missing sym:4")?;
    let v4 = rep
        .witnesses
        .iter()
        .find(|w| w.subject.starts_with("N order 4"))
        .ok_or("no witness for N = V4")?;
    ensure(
        v4.bound == r(5, 8) && v4.value <= r(5, 8),
        format!("Pr_2(S4) = {} vs Pr_2(S4/V4) = {}", v4.value, v4.bound),
    )?;
    let instances: usize = out
        .of(TheoremId::QuotientGlobal)
        .map(|r| r.witnesses.len())
        .sum();
    Ok(format!(
        "{instances} (group, pi, N) instances, 0 violations, Pr_2(S4) = {} <= 5/8",
        v4.value
    ))
}

fn small_lemmas_sweep(seed: &[CatalogEntry]) -> Check {
    let out = run_sweep(seed, "C2.5,L3.4,L5.2,P5.1,GUSTAFSON", Some(500));
    no_failures(&out, "C2.5/L3.4/L5.2/P5.1/GUSTAFSON")?;
    let min_of = |t: TheoremId, g: &str, p: &PrimeSet| -> std::result::Result<ExactRatio, String> {
        out.find(t, g, p)
            .and_then(|rep| rep.min_witness())
            .map(|w| w.value)
            .ok_or(format!("{t} {g} pi={p}: no witness"))
    };
    let d_s3 = min_of(TheoremId::GeneratorConjugates, "sym:3", &pi(&[2]))?;
    ensure(d_s3 == r(3, 1), format!("|D| in S3 is {d_s3}"))?;
    let d_a5 = min_of(TheoremId::GeneratorConjugates, "alt:5", &pi(&[5]))?;
    ensure(d_a5 == r(24, 1), format!("|D| in A5 is {d_a5}"))?;
    let g2 = min_of(TheoremId::PiElementCount, "sym:3", &pi(&[2]))?;
    ensure(g2 == r(4, 1), format!("|G_2| in S3 is {g2}"))?;
    let d4 = report_value(&out, TheoremId::PrBound, "dih:4", &PrimeSet::empty())?;
    ensure(d4 == r(5, 8), format!("Pr(D4) is {d4}"))?;
    let gus = out
        .of(TheoremId::Gustafson)
        .filter(|r| r.verdict == Verdict::Pass)
        .count();
    ensure(
        gus == out.summary.groups,
        "Gustafson identity not checked on every group",
    )?;
    Ok(format!(
        "{} reports, 0 violations; |D| = 3, 24; |G_2| = 4; Pr(D4) = 5/8; identity on {gus} groups",
        out.summary.reports
    ))
}

fn symmetric_sweep(seed: &[CatalogEntry]) -> Check {
    let start = Instant::now();
    let entries: Vec<CatalogEntry> = seed
        .iter()
        .filter(|e| e.symmetric_degree().is_some_and(|n| (5..=8).contains(&n)))
        .cloned()
        .collect();
    ensure(entries.len() == 4, "expected sym:5 .. sym:8")?;
    let config = SweepConfig {
        theorems: TheoremId::parse_list("P4").unwrap(),
        pi_policy: PiPolicy::AllSubsets,
        ..Default::default()
    };
    let out = sweep(&entries, &config).unwrap();
    within(start.elapsed(), Duration::from_secs(180))?;
    no_failures(&out, "P4")?;
    let rep = out
        .find(TheoremId::SymmetricNonTransposition, "sym:5", &pi(&[3]))
        .ok_or("missing sym:5 pi={3}")?;
    let w = rep
        .witnesses
        .iter()
        .find(|w| w.counts == Some((3, 21)))
        .ok_or("3/21 not reproduced")?;
    ensure(
        w.value < r(1, 3) && w.bound == r(1, 3),
        "3/21 < 1/3 not confirmed",
    )?;
    Ok(format!(
        "{} reports over n = 5..8, 0 violations, 3/21 < 1/3 for {}, {:.2?}",
        out.summary.reports,
        w.subject,
        start.elapsed()
    ))
}

fn oracle_equivalence(seed: &[CatalogEntry]) -> Check {
    let mut pairs = 0;
    for e in seed
        .iter()
        .filter(|e| e.expected_order.is_some_and(|o| o <= 200))
    {
        let g = e.build().unwrap();
        let mut sets = PiPolicy::AllSubsets.sets_for(g.order());
        sets.push(PrimeSet::empty());
        for p in sets {
            let fast = pr_pi(&g, &p).unwrap();
            let naive = pr_pi_naive(&g, &p).unwrap();
            ensure(fast == naive, format!("{} pi={p}: {fast} vs {naive}", e.id))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} (group, pi) pairs agree exactly"))
}

fn open_question_explorer(seed: &[CatalogEntry]) -> Check {
    let config = |threads| SweepConfig {
        theorems: vec![TheoremId::OpenQuestion, TheoremId::A],
        threads: Some(threads),
        ..Default::default()
    };
    let first = sweep(seed, &config(1)).unwrap();
    let second = sweep(seed, &config(4)).unwrap();
    ensure(
        first.reports == second.reports,
        "explorer output depends on scheduling",
    )?;
    no_failures(&first, "A alongside the explorer")?;
    let candidates: Vec<_> = first
        .of(TheoremId::OpenQuestion)
        .filter(|r| r.verdict == Verdict::CounterexampleCandidate)
        .collect();
    for c in candidates.iter().filter(|c| c.group_order <= 500) {
        ensure(
            !c.has_flag("exceeds-smallest-prime-bound"),
            format!("{} pi={}: candidate above 1/p", c.group_id, c.pi),
        )?;
        let a = first
            .find(TheoremId::A, &c.group_id, &c.pi)
            .ok_or(format!("{} pi={}: no A report", c.group_id, c.pi))?;
        ensure(
            a.verdict == Verdict::Pass,
            format!("{} pi={}: A {:?}", c.group_id, c.pi, a.verdict),
        )?;
    }
    let explored = first.of(TheoremId::OpenQuestion).count();
    Ok(format!(
        "{explored} reports, deterministic, {} candidates, none violating the smallest-prime bound",
        candidates.len()
    ))
}

fn main() {
    let seed = seed_catalog();
    let criteria: Vec<Criterion<'_>> = vec![
        (
            "Pr_p(PSL(2,p)) equals the threshold",
            Box::new(pr_pi_sharpness),
        ),
        (
            "centralizer fraction bound 1/p",
            Box::new(|| centralizer_fraction_sweep(&seed)),
        ),
        (
            "threshold iff normal abelian Hall",
            Box::new(|| threshold_iff_sweep(&seed)),
        ),
        (
            "bound 1/q with pi' generalized Fitting",
            Box::new(|| fitting_hypothesis_sweep(&seed)),
        ),
        ("quotient inequalities", Box::new(|| quotient_sweep(&seed))),
        (
            "coset classes, |D|, |G_pi|, Pr bound, k(G)/|G|",
            Box::new(|| small_lemmas_sweep(&seed)),
        ),
        (
            "symmetric groups n = 5..8",
            Box::new(|| symmetric_sweep(&seed)),
        ),
        (
            "class-based Pr_pi equals double loop",
            Box::new(|| oracle_equivalence(&seed)),
        ),
        (
            "open-question explorer",
            Box::new(|| open_question_explorer(&seed)),
        ),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail} [{took:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why} [{took:.2?}]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
