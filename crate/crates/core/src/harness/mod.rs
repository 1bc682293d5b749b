//! Verifiers that check the bounds on commuting probabilities and centralizer
//! fractions against concrete groups, plus catalog sweeps.
//!
//! Every verdict rests on exact arithmetic. A failing comparison is recomputed
//! with a naive oracle before it is reported; the witness records whether the
//! oracle agreed.

mod sweep;
mod theorems;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::primes::PrimeSet;
use crate::ratio::ExactRatio;

pub use sweep::{sweep, PiPolicy, Supremum, SweepConfig, SweepOutcome, SweepSummary};
pub use theorems::{
    explore_open_question, verify_coset_corollary, verify_d_lemma, verify_gustafson,
    verify_pielem_lemma, verify_pr_bound, verify_quotient_lemma, verify_symmetric_props,
    verify_symmetric_props_in, verify_theorem_a, verify_theorem_b, verify_theorem_c,
    DEFAULT_ORACLE_LIMIT, DEFAULT_SYMMETRIC_MAX_N,
};

/// The checked statements, in report sort order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    /// Centralizer π-fraction of a π-element outside the π-core is at most `1/p`.
    A,
    /// With a π'-group as generalized Fitting subgroup, the fraction is at most `1/q`.
    B,
    /// `Pr_π > threshold(p)` implies a normal abelian Hall π-subgroup.
    CForward,
    /// A normal abelian Hall π-subgroup implies `Pr_π > threshold(p)`.
    CConverse,
    /// Centralizer fractions do not drop when passing to `G/N`, `N` a normal π-subgroup.
    QuotientPointwise,
    /// `Pr_π(G) ≤ Pr_π(G/N)`.
    QuotientGlobal,
    /// `y^K = (Ky)_π` for a π'-subgroup `K` normalized by a π-element `y`.
    CosetClasses,
    /// `|D| ≥ p² − 1` for the elements generating conjugates of `⟨x⟩`.
    GeneratorConjugates,
    /// Symmetric groups, `x` of prime order not a transposition.
    SymmetricNonTransposition,
    /// Symmetric groups, `x` a transposition.
    SymmetricTransposition,
    /// `Pr(G) ≤ threshold(p)` for non-abelian `G`.
    PrBound,
    /// `|G_π| ≥ p²` without a normal Hall π-subgroup.
    PiElementCount,
    /// `Pr(G) = k(G)/|G|`.
    Gustafson,
    /// Fraction at most `1/q`, `q` the largest prime of `o(x)`, with no
    /// hypothesis on the generalized Fitting subgroup. Informational only.
    OpenQuestion,
}

impl TheoremId {
    pub const ALL: [TheoremId; 14] = [
        TheoremId::A,
        TheoremId::B,
        TheoremId::CForward,
        TheoremId::CConverse,
        TheoremId::QuotientPointwise,
        TheoremId::QuotientGlobal,
        TheoremId::CosetClasses,
        TheoremId::GeneratorConjugates,
        TheoremId::SymmetricNonTransposition,
        TheoremId::SymmetricTransposition,
        TheoremId::PrBound,
        TheoremId::PiElementCount,
        TheoremId::Gustafson,
        TheoremId::OpenQuestion,
    ];

    pub fn code(self) -> &'static str {
        match self {
            TheoremId::A => "A",
            TheoremId::B => "B",
            TheoremId::CForward => "C-forward",
            TheoremId::CConverse => "C-converse",
            TheoremId::QuotientPointwise => "L2.1i",
            TheoremId::QuotientGlobal => "L2.1ii",
            TheoremId::CosetClasses => "C2.5",
            TheoremId::GeneratorConjugates => "L3.4",
            TheoremId::SymmetricNonTransposition => "P4.4",
            TheoremId::SymmetricTransposition => "P4.5",
            TheoremId::PrBound => "P5.1",
            TheoremId::PiElementCount => "L5.2",
            TheoremId::Gustafson => "GUSTAFSON",
            TheoremId::OpenQuestion => "OPEN-Q",
        }
    }

    /// Whether the report depends on a prime set.
    pub fn uses_pi(self) -> bool {
        !matches!(self, TheoremId::PrBound | TheoremId::Gustafson)
    }

    /// Parses a comma-separated list of codes. `C`, `L2.1` and `P4` select both
    /// halves of the paired statements; `all` selects everything.
    pub fn parse_list(text: &str) -> Result<Vec<TheoremId>> {
        let mut out = Vec::new();
        for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let ids: Vec<TheoremId> = match part.to_ascii_uppercase().as_str() {
                "ALL" => TheoremId::ALL.to_vec(),
                "C" => vec![TheoremId::CForward, TheoremId::CConverse],
                "L2.1" => vec![TheoremId::QuotientPointwise, TheoremId::QuotientGlobal],
                "P4" => vec![
                    TheoremId::SymmetricNonTransposition,
                    TheoremId::SymmetricTransposition,
                ],
                _ => vec![part.parse()?],
            };
            out.extend(ids);
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .iter()
            .copied()
            .find(|t| t.code().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown theorem id '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SkipReason {
    EmptyPi,
    /// The statement's hypothesis does not hold for this group and π.
    HypothesisUnmet(String),
    SizeLimit,
    LatticeLimit,
    /// A structural computation needed for the hypothesis failed.
    ComputationFailed(String),
}

impl SkipReason {
    pub fn code(&self) -> &'static str {
        match self {
            SkipReason::EmptyPi => "empty-pi",
            SkipReason::HypothesisUnmet(_) => "hypothesis-unmet",
            SkipReason::SizeLimit => "size-limit",
            SkipReason::LatticeLimit => "lattice-limit",
            SkipReason::ComputationFailed(_) => "computation-failed",
        }
    }

    pub fn detail(&self) -> Option<&str> {
        match self {
            SkipReason::HypothesisUnmet(s) | SkipReason::ComputationFailed(s) => Some(s),
            _ => None,
        }
    }
}

impl From<Error> for SkipReason {
    fn from(e: Error) -> Self {
        match e {
            Error::TooLargeToEnumerate { .. } => SkipReason::SizeLimit,
            Error::NormalLatticeTooLarge { .. } => SkipReason::LatticeLimit,
            other => SkipReason::ComputationFailed(other.to_string()),
        }
    }
}

impl fmt::Display for SkipReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.detail() {
            Some(d) => write!(f, "{}: {d}", self.code()),
            None => f.write_str(self.code()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Skipped(SkipReason),
    /// Open-question exploration found nothing.
    NoCounterexample,
    /// Open-question exploration found an element exceeding the conjectured bound.
    CounterexampleCandidate,
}

impl Verdict {
    pub fn code(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Skipped(_) => "skipped",
            Verdict::NoCounterexample => "no-counterexample",
            Verdict::CounterexampleCandidate => "counterexample-candidate",
        }
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail)
    }

    pub fn is_skipped(&self) -> bool {
        matches!(self, Verdict::Skipped(_))
    }
}

/// Required relation between a witness value and its bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Lt,
    Ge,
    Gt,
    Eq,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Lt => "<",
            Relation::Ge => ">=",
            Relation::Gt => ">",
            Relation::Eq => "=",
        }
    }

    pub fn holds(self, value: ExactRatio, bound: ExactRatio) -> bool {
        match self {
            Relation::Le => value <= bound,
            Relation::Lt => value < bound,
            Relation::Ge => value >= bound,
            Relation::Gt => value > bound,
            Relation::Eq => value == bound,
        }
    }
}

/// One checked instance: `value relation bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// Element in cycle notation or a subgroup descriptor.
    pub subject: String,
    pub value: ExactRatio,
    pub bound: ExactRatio,
    pub relation: Relation,
    pub holds: bool,
    /// Unreduced numerator and denominator when the value is a count ratio.
    pub counts: Option<(u64, u64)>,
    /// For violations: whether the naive recomputation reproduced the value.
    /// `None` when the oracle was not run (group above the oracle limit).
    pub oracle_confirmed: Option<bool>,
}

impl Witness {
    pub fn new(
        subject: impl Into<String>,
        value: ExactRatio,
        relation: Relation,
        bound: ExactRatio,
    ) -> Self {
        Witness {
            subject: subject.into(),
            value,
            bound,
            relation,
            holds: relation.holds(value, bound),
            counts: None,
            oracle_confirmed: None,
        }
    }

    /// How close the value is to the bound; larger is tighter.
    fn tightness(&self) -> ExactRatio {
        let (v, b) = (self.value, self.bound);
        match self.relation {
            Relation::Le | Relation::Lt if b.numerator() > 0 => ExactRatio::new(
                v.numerator() * b.denominator(),
                v.denominator() * b.numerator(),
            ),
            Relation::Ge | Relation::Gt if v.numerator() > 0 => ExactRatio::new(
                b.numerator() * v.denominator(),
                b.denominator() * v.numerator(),
            ),
            _ => ExactRatio::zero(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremReport {
    pub theorem: TheoremId,
    pub group_id: String,
    pub group_order: u64,
    pub pi: PrimeSet,
    pub verdict: Verdict,
    /// Violations first, then the tightest holding instance.
    pub witnesses: Vec<Witness>,
    /// Machine-readable remarks, e.g. `vacuous`.
    pub flags: Vec<String>,
    /// Wall time, only when requested; omitted so that reports are reproducible.
    pub timing_ms: Option<u64>,
}

impl TheoremReport {
    pub(crate) fn new(theorem: TheoremId, group_id: &str, group_order: u64, pi: &PrimeSet) -> Self {
        TheoremReport {
            theorem,
            group_id: group_id.to_string(),
            group_order,
            pi: pi.clone(),
            verdict: Verdict::Pass,
            witnesses: Vec::new(),
            flags: Vec::new(),
            timing_ms: None,
        }
    }

    pub(crate) fn skipped(mut self, reason: impl Into<SkipReason>) -> Self {
        self.verdict = Verdict::Skipped(reason.into());
        self
    }

    pub fn is_fail(&self) -> bool {
        self.verdict.is_fail()
    }

    /// The witness with the largest value.
    pub fn max_witness(&self) -> Option<&Witness> {
        self.witnesses.iter().max_by(|a, b| a.value.cmp(&b.value))
    }

    /// The witness with the smallest value.
    pub fn min_witness(&self) -> Option<&Witness> {
        self.witnesses.iter().min_by(|a, b| a.value.cmp(&b.value))
    }

    pub fn has_flag(&self, flag: &str) -> bool {
        self.flags.iter().any(|f| f == flag)
    }
}

/// Keeps every violation and the tightest holding witness.
#[derive(Default)]
pub(crate) struct Collector {
    violations: Vec<Witness>,
    tightest: Option<Witness>,
    checked: usize,
    /// Holding witnesses kept in full, for checks with few instances.
    all: Option<Vec<Witness>>,
}

impl Collector {
    pub fn keeping_all() -> Self {
        Collector {
            all: Some(Vec::new()),
            ..Default::default()
        }
    }

    pub fn push(&mut self, w: Witness) {
        self.checked += 1;
        if let (Some(all), true) = (&mut self.all, w.holds) {
            all.push(w);
        } else if !w.holds {
            self.violations.push(w);
        } else if self
            .tightest
            .as_ref()
            .is_none_or(|t| w.tightness() > t.tightness())
        {
            self.tightest = Some(w);
        }
    }

    pub fn has_violations(&self) -> bool {
        !self.violations.is_empty()
    }

    /// Re-runs `oracle` on each violation and records whether it agrees.
    pub fn confirm(&mut self, mut oracle: impl FnMut(&Witness) -> Option<bool>) {
        for w in &mut self.violations {
            w.oracle_confirmed = oracle(w);
        }
    }

    /// Fills witnesses and sets `Fail` when any instance was violated.
    pub fn finish_into(self, report: &mut TheoremReport) {
        if self.checked == 0 {
            report.flags.push("vacuous".into());
        }
        if !self.violations.is_empty() {
            report.verdict = Verdict::Fail;
        }
        report.witnesses = self.violations;
        report.witnesses.extend(self.tightest);
        report.witnesses.extend(self.all.into_iter().flatten());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem_codes_round_trip() {
        for t in TheoremId::ALL {
            assert_eq!(t.code().parse::<TheoremId>().unwrap(), t);
        }
        assert_eq!(
            TheoremId::parse_list("A, C").unwrap(),
            vec![TheoremId::A, TheoremId::CForward, TheoremId::CConverse]
        );
        assert_eq!(TheoremId::parse_list("all").unwrap().len(), 14);
        assert!(TheoremId::parse_list("Z").is_err());
    }

    #[test]
    fn collector_keeps_violations_and_tightest() {
        let r = |n, d| ExactRatio::new(n, d);
        let mut c = Collector::default();
        c.push(Witness::new("a", r(1, 4), Relation::Le, r(1, 2)));
        c.push(Witness::new("b", r(1, 2), Relation::Le, r(1, 2)));
        c.push(Witness::new("c", r(3, 4), Relation::Le, r(1, 2)));
        let mut rep = TheoremReport::new(TheoremId::A, "g", 6, &PrimeSet::of(2));
        c.finish_into(&mut rep);
        assert_eq!(rep.verdict, Verdict::Fail);
        let subjects: Vec<&str> = rep.witnesses.iter().map(|w| w.subject.as_str()).collect();
        assert_eq!(subjects, ["c", "b"]);
        assert!(!rep.witnesses[0].holds);
    }
}
