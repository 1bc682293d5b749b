use std::time::Instant;

use rayon::prelude::*;

use crate::catalog::CatalogEntry;
use crate::error::{Error, Result};
use crate::group::{PermGroup, DEFAULT_ENUMERATION_LIMIT};
use crate::primes::PrimeSet;
use crate::ratio::ExactRatio;

use super::theorems::*;
use super::{TheoremId, TheoremReport, Verdict};

/// Which prime sets to try for each group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PiPolicy {
    /// Nonempty subsets of the primes dividing `|G|` with at most this many primes.
    Subsets { max_primes: usize },
    /// Every nonempty subset of the primes dividing `|G|`.
    AllSubsets,
    /// Only the full set of primes dividing `|G|`.
    Maximal,
    /// The same fixed list for every group.
    Explicit(Vec<PrimeSet>),
}

impl Default for PiPolicy {
    fn default() -> Self {
        PiPolicy::Subsets { max_primes: 3 }
    }
}

impl PiPolicy {
    pub fn sets_for(&self, order: u64) -> Vec<PrimeSet> {
        let support = PrimeSet::of(order);
        let mut sets = match self {
            PiPolicy::Subsets { max_primes } => support.subsets(*max_primes),
            PiPolicy::AllSubsets => support.subsets(support.len()),
            PiPolicy::Maximal => vec![support],
            PiPolicy::Explicit(list) => list.clone(),
        };
        sets.retain(|s| !s.is_empty());
        sets
    }
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub theorems: Vec<TheoremId>,
    pub pi_policy: PiPolicy,
    /// Groups of larger order are left out of the sweep.
    pub max_order: Option<u64>,
    pub enumeration_limit: u64,
    /// Symmetric-group checks run for `S_n` with `5 ≤ n ≤ symmetric_max_n`.
    pub symmetric_max_n: usize,
    /// Record wall time per report.
    pub timing: bool,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            theorems: TheoremId::ALL.to_vec(),
            pi_policy: PiPolicy::default(),
            max_order: None,
            enumeration_limit: DEFAULT_ENUMERATION_LIMIT,
            symmetric_max_n: DEFAULT_SYMMETRIC_MAX_N,
            timing: false,
            threads: None,
        }
    }
}

/// Largest witness value seen for one theorem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Supremum {
    pub theorem: TheoremId,
    pub value: ExactRatio,
    pub group_id: String,
    pub pi: PrimeSet,
    pub subject: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepSummary {
    pub groups: usize,
    pub reports: usize,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub no_counterexample: usize,
    pub candidates: usize,
    pub suprema: Vec<Supremum>,
}

#[derive(Clone, Debug)]
pub struct SweepOutcome {
    pub reports: Vec<TheoremReport>,
    pub summary: SweepSummary,
}

impl SweepOutcome {
    pub fn failures(&self) -> impl Iterator<Item = &TheoremReport> {
        self.reports.iter().filter(|r| r.is_fail())
    }

    pub fn of(&self, theorem: TheoremId) -> impl Iterator<Item = &TheoremReport> {
        self.reports.iter().filter(move |r| r.theorem == theorem)
    }

    pub fn find(
        &self,
        theorem: TheoremId,
        group_id: &str,
        pi: &PrimeSet,
    ) -> Option<&TheoremReport> {
        self.reports
            .iter()
            .find(|r| r.theorem == theorem && r.group_id == group_id && &r.pi == pi)
    }

    /// Largest witness value over the reports of `theorem` accepted by `keep`.
    pub fn supremum_where(
        &self,
        theorem: TheoremId,
        keep: impl Fn(&TheoremReport) -> bool,
    ) -> Option<Supremum> {
        supremum(self.of(theorem).filter(|r| keep(r)), theorem)
    }
}

fn supremum<'a>(
    reports: impl Iterator<Item = &'a TheoremReport>,
    theorem: TheoremId,
) -> Option<Supremum> {
    let mut best: Option<Supremum> = None;
    for r in reports.filter(|r| !r.verdict.is_skipped()) {
        if let Some(w) = r.max_witness() {
            if best.as_ref().is_none_or(|b| w.value > b.value) {
                best = Some(Supremum {
                    theorem,
                    value: w.value,
                    group_id: r.group_id.clone(),
                    pi: r.pi.clone(),
                    subject: w.subject.clone(),
                });
            }
        }
    }
    best
}

/// Verifiers that produce one or more reports per call.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Task {
    A,
    B,
    C,
    Quotient,
    Coset,
    DLemma,
    Symmetric(usize),
    PrBound,
    PiElem,
    Gustafson,
    OpenQ,
}

impl Task {
    fn for_theorem(t: TheoremId) -> Task {
        match t {
            TheoremId::A => Task::A,
            TheoremId::B => Task::B,
            TheoremId::CForward | TheoremId::CConverse => Task::C,
            TheoremId::QuotientPointwise | TheoremId::QuotientGlobal => Task::Quotient,
            TheoremId::CosetClasses => Task::Coset,
            TheoremId::GeneratorConjugates => Task::DLemma,
            TheoremId::SymmetricNonTransposition | TheoremId::SymmetricTransposition => {
                Task::Symmetric(0)
            }
            TheoremId::PrBound => Task::PrBound,
            TheoremId::PiElementCount => Task::PiElem,
            TheoremId::Gustafson => Task::Gustafson,
            TheoremId::OpenQuestion => Task::OpenQ,
        }
    }

    fn run(self, id: &str, g: &PermGroup, pi: &PrimeSet) -> Vec<TheoremReport> {
        match self {
            Task::A => vec![verify_theorem_a(id, g, pi)],
            Task::B => vec![verify_theorem_b(id, g, pi)],
            Task::C => verify_theorem_c(id, g, pi),
            Task::Quotient => verify_quotient_lemma(id, g, pi),
            Task::Coset => vec![verify_coset_corollary(id, g, pi)],
            Task::DLemma => vec![verify_d_lemma(id, g, pi)],
            Task::Symmetric(n) => verify_symmetric_props_in(id, g, n, pi),
            Task::PrBound => vec![verify_pr_bound(id, g)],
            Task::PiElem => vec![verify_pielem_lemma(id, g, pi)],
            Task::Gustafson => vec![verify_gustafson(id, g)],
            Task::OpenQ => vec![explore_open_question(id, g, pi)],
        }
    }
}

/// Runs the selected verifiers over every (group, π) pair. Reports are sorted
/// by group id, π and theorem, independent of scheduling.
pub fn sweep(catalog: &[CatalogEntry], config: &SweepConfig) -> Result<SweepOutcome> {
    let mut groups: Vec<(&CatalogEntry, PermGroup)> = Vec::new();
    for entry in catalog {
        if let (Some(max), Some(expected)) = (config.max_order, entry.expected_order) {
            if expected > max {
                continue;
            }
        }
        let g = entry
            .build()?
            .with_enumeration_limit(config.enumeration_limit);
        if config.max_order.is_some_and(|max| g.order() > max) {
            continue;
        }
        groups.push((entry, g));
    }

    let mut kinds: Vec<Task> = Vec::new();
    for kind in config.theorems.iter().map(|&t| Task::for_theorem(t)) {
        if !kinds.contains(&kind) {
            kinds.push(kind);
        }
    }
    let mut tasks: Vec<(usize, PrimeSet, Task)> = Vec::new();
    for (gi, (entry, g)) in groups.iter().enumerate() {
        let pis = config.pi_policy.sets_for(g.order());
        for &kind in &kinds {
            match kind {
                Task::PrBound | Task::Gustafson => tasks.push((gi, PrimeSet::empty(), kind)),
                Task::Symmetric(_) => {
                    if let Some(n) = entry.symmetric_degree() {
                        if (5..=config.symmetric_max_n).contains(&n) {
                            tasks.extend(pis.iter().map(|pi| (gi, pi.clone(), Task::Symmetric(n))));
                        }
                    }
                }
                _ => tasks.extend(pis.iter().map(|pi| (gi, pi.clone(), kind))),
            }
        }
    }

    let execute = || -> Vec<TheoremReport> {
        tasks
            .par_iter()
            .flat_map_iter(|(gi, pi, kind)| {
                let (entry, g) = &groups[*gi];
                let start = Instant::now();
                let mut reports = kind.run(&entry.id, g, pi);
                if config.timing {
                    let ms = start.elapsed().as_millis() as u64;
                    for r in &mut reports {
                        r.timing_ms = Some(ms);
                    }
                }
                reports
            })
            .collect()
    };
    let mut reports = match config.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?
            .install(execute),
        None => execute(),
    };
    reports.retain(|r| config.theorems.contains(&r.theorem));
    reports.sort_by(|a, b| (&a.group_id, &a.pi, a.theorem).cmp(&(&b.group_id, &b.pi, b.theorem)));

    let mut summary = SweepSummary {
        groups: groups.len(),
        reports: reports.len(),
        ..Default::default()
    };
    for r in &reports {
        match r.verdict {
            Verdict::Pass => summary.pass += 1,
            Verdict::Fail => summary.fail += 1,
            Verdict::Skipped(_) => summary.skipped += 1,
            Verdict::NoCounterexample => summary.no_counterexample += 1,
            Verdict::CounterexampleCandidate => summary.candidates += 1,
        }
    }
    let mut theorems = config.theorems.clone();
    theorems.sort();
    theorems.dedup();
    summary.suprema = theorems
        .into_iter()
        .filter_map(|t| supremum(reports.iter().filter(|r| r.theorem == t), t))
        .collect();
    Ok(SweepOutcome { reports, summary })
}
