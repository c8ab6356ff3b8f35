//! The built-in corpus and the batch runner that checks it.
//!
//! [`run_corpus`] builds every entry, decides the cut property twice (fast
//! path and brute-force oracle), runs every characterization, and checks a
//! set of corpus-wide facts:
//!
//! * expectation tags match the computed results;
//! * solvable cut groups have `π(G) ⊆ {2,3,5,7,13}`, odd-order cut groups
//!   have `π(G) ⊆ {3,7}`, rational solvable groups have `π(G) ⊆ {2,3,5}`;
//! * quotients and centers of cut groups have the cut property;
//! * an abelian group has the cut property iff its exponent divides 4 or 6;
//! * for pairs of cut 2-groups, the two-group-sum criterion predicts the
//!   cut verdict of their direct sum;
//! * direct sums of same-prime cut `p`-groups of class at most 2 keep the
//!   cut property.

use std::collections::BTreeSet;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{is_power_of, prime_divisors};
use crate::characterizations::{
    remark_two_group_sum_with, verify_equivalences_in, Analysis, TheoremReport, VerifyConfig,
};
use crate::constructors::{construct_with, normal_form_index, GroupSpec};
use crate::cut::{classify_with, decide_cut, decide_cut_bruteforce, Classification};
use crate::error::Error;
use crate::group::{FiniteGroup, Limits};
use crate::structure::ProfileSummary;

/// Center-subgroup cap used for corpus runs; large enough for every abelian
/// corpus group of order at most 64.
pub const CORPUS_MAX_CENTER_SUBGROUPS: usize = 16_384;

/// Largest direct sum built for the pairwise checks.
pub const PAIR_PRODUCT_LIMIT: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tag {
    PaperExample,
    OddOrder,
    Eppo,
    Nilpotent,
    #[serde(rename = "2-group")]
    TwoGroup,
    #[serde(rename = "3-group")]
    ThreeGroup,
    Abelian,
    RationalExpected,
    CutExpected,
    NoncutExpected,
}

impl Tag {
    pub const ALL: [Tag; 10] = [
        Tag::PaperExample,
        Tag::OddOrder,
        Tag::Eppo,
        Tag::Nilpotent,
        Tag::TwoGroup,
        Tag::ThreeGroup,
        Tag::Abelian,
        Tag::RationalExpected,
        Tag::CutExpected,
        Tag::NoncutExpected,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Tag::PaperExample => "paper-example",
            Tag::OddOrder => "odd-order",
            Tag::Eppo => "eppo",
            Tag::Nilpotent => "nilpotent",
            Tag::TwoGroup => "2-group",
            Tag::ThreeGroup => "3-group",
            Tag::Abelian => "abelian",
            Tag::RationalExpected => "rational-expected",
            Tag::CutExpected => "cut-expected",
            Tag::NoncutExpected => "noncut-expected",
        }
    }

    pub fn parse(s: &str) -> Option<Tag> {
        Tag::ALL.into_iter().find(|t| t.name() == s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub id: String,
    pub spec: GroupSpec,
    pub tags: BTreeSet<Tag>,
}

impl CorpusEntry {
    pub fn new(id: impl Into<String>, spec: GroupSpec, tags: &[Tag]) -> Self {
        CorpusEntry {
            id: id.into(),
            spec,
            tags: tags.iter().copied().collect(),
        }
    }

    pub fn has(&self, tag: Tag) -> bool {
        self.tags.contains(&tag)
    }
}

/// Invariant-factor lists `d₁ | d₂ | … | d_k` (all `dᵢ > 1`) with product `n`.
pub fn invariant_factor_lists(n: u64) -> Vec<Vec<u64>> {
    fn go(rest: u64, prev: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rest == 1 {
            out.push(acc.clone());
            return;
        }
        for d in 2..=rest {
            // Later factors are multiples of d, so what remains must be too.
            if rest.is_multiple_of(d)
                && d.is_multiple_of(prev)
                && (rest == d || (rest / d).is_multiple_of(d))
            {
                acc.push(d);
                go(rest / d, d, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(n, 1, &mut Vec::new(), &mut out);
    out
}

fn abelian_tags(factors: &[u64]) -> Vec<Tag> {
    let order: u64 = factors.iter().product();
    let exponent = factors.last().copied().unwrap_or(1);
    let mut tags = vec![Tag::Abelian, Tag::Nilpotent];
    if order % 2 == 1 {
        tags.push(Tag::OddOrder);
    }
    let primes = prime_divisors(order);
    if primes.len() <= 1 {
        tags.push(Tag::Eppo);
    }
    if order > 1 && is_power_of(order, 2) {
        tags.push(Tag::TwoGroup);
    }
    if order > 1 && is_power_of(order, 3) {
        tags.push(Tag::ThreeGroup);
    }
    let cut = 4 % exponent == 0 || 6 % exponent == 0;
    tags.push(if cut {
        Tag::CutExpected
    } else {
        Tag::NoncutExpected
    });
    // Abelian groups are real only when every element is an involution.
    if exponent <= 2 {
        tags.push(Tag::RationalExpected);
    }
    tags
}

/// The built-in corpus, sorted by id.
pub fn builtin_corpus() -> Vec<CorpusEntry> {
    use Tag::*;
    let mut out = Vec::new();
    for n in 1..=36u64 {
        let factors = if n == 1 { vec![] } else { vec![n] };
        out.push(CorpusEntry::new(
            format!("cyclic-{n:03}"),
            GroupSpec::cyclic(n),
            &abelian_tags(&factors),
        ));
    }
    for n in 1..=64u64 {
        for factors in invariant_factor_lists(n) {
            if factors.len() <= 1 && n <= 36 {
                continue;
            }
            let name = factors
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join("x");
            out.push(CorpusEntry::new(
                format!("abelian-{n:03}-{name}"),
                GroupSpec::abelian(&factors),
                &abelian_tags(&factors),
            ));
        }
    }
    let entries = [
        (
            "example-cut-24",
            GroupSpec::metacyclic(12, 2, 5),
            vec![PaperExample, CutExpected],
        ),
        (
            "example-noncut-81",
            GroupSpec::metacyclic(9, 9, 4),
            vec![
                PaperExample,
                NoncutExpected,
                OddOrder,
                Eppo,
                Nilpotent,
                ThreeGroup,
            ],
        ),
        (
            "metacyclic-003-2-2",
            GroupSpec::metacyclic(3, 2, 2),
            vec![CutExpected, Eppo, RationalExpected],
        ),
        (
            "metacyclic-004-2-3",
            GroupSpec::metacyclic(4, 2, 3),
            vec![CutExpected, Eppo, Nilpotent, TwoGroup, RationalExpected],
        ),
        (
            "metacyclic-005-4-2",
            GroupSpec::metacyclic(5, 4, 2),
            vec![CutExpected, Eppo],
        ),
        (
            "metacyclic-007-3-2",
            GroupSpec::metacyclic(7, 3, 2),
            vec![CutExpected, Eppo, OddOrder],
        ),
        (
            "metacyclic-008-2-3",
            GroupSpec::metacyclic(8, 2, 3),
            vec![CutExpected, Eppo, Nilpotent, TwoGroup],
        ),
        (
            "metacyclic-008-2-5",
            GroupSpec::metacyclic(8, 2, 5),
            vec![CutExpected, Eppo, Nilpotent, TwoGroup],
        ),
        (
            "dicyclic-2",
            GroupSpec::dicyclic(2),
            vec![CutExpected, Eppo, Nilpotent, TwoGroup, RationalExpected],
        ),
        (
            "dicyclic-4",
            GroupSpec::dicyclic(4),
            vec![NoncutExpected, Eppo, Nilpotent, TwoGroup],
        ),
        (
            "heisenberg-3",
            GroupSpec::heisenberg(3),
            vec![CutExpected, Eppo, Nilpotent, ThreeGroup, OddOrder],
        ),
        (
            "heisenberg-5",
            GroupSpec::heisenberg(5),
            vec![NoncutExpected, Eppo, Nilpotent, OddOrder],
        ),
        (
            "heisenberg-7",
            GroupSpec::heisenberg(7),
            vec![NoncutExpected, Eppo, Nilpotent, OddOrder],
        ),
        (
            "symmetric-3",
            GroupSpec::symmetric(3),
            vec![CutExpected, Eppo, RationalExpected],
        ),
        (
            "symmetric-4",
            GroupSpec::symmetric(4),
            vec![CutExpected, Eppo, RationalExpected],
        ),
        (
            "product-q8-c3",
            GroupSpec::product(vec![GroupSpec::dicyclic(2), GroupSpec::cyclic(3)]),
            vec![CutExpected, Nilpotent],
        ),
        (
            "product-d8-c3",
            GroupSpec::product(vec![GroupSpec::metacyclic(4, 2, 3), GroupSpec::cyclic(3)]),
            vec![CutExpected, Nilpotent],
        ),
        (
            "product-c4-c4",
            GroupSpec::product(vec![GroupSpec::cyclic(4), GroupSpec::cyclic(4)]),
            vec![CutExpected, Abelian, Eppo, Nilpotent, TwoGroup],
        ),
        (
            "product-sd16-m16",
            GroupSpec::product(vec![
                GroupSpec::metacyclic(8, 2, 3),
                GroupSpec::metacyclic(8, 2, 5),
            ]),
            vec![NoncutExpected, Eppo, Nilpotent, TwoGroup],
        ),
        (
            "product-h3-h3",
            GroupSpec::product(vec![GroupSpec::heisenberg(3), GroupSpec::heisenberg(3)]),
            vec![CutExpected, Eppo, Nilpotent, ThreeGroup, OddOrder],
        ),
        (
            // Modulo Z(G) = ⟨a³, b³⟩.
            "quotient-81-by-center",
            GroupSpec::quotient(
                GroupSpec::metacyclic(9, 9, 4),
                vec![normal_form_index(9, 3, 0), normal_form_index(9, 0, 3)],
            ),
            vec![CutExpected, Abelian, Eppo, Nilpotent, ThreeGroup, OddOrder],
        ),
        (
            "quotient-24-by-a6",
            GroupSpec::quotient(
                GroupSpec::metacyclic(12, 2, 5),
                vec![normal_form_index(12, 6, 0)],
            ),
            vec![CutExpected, RationalExpected],
        ),
        (
            "quotient-24-by-a4",
            GroupSpec::quotient(
                GroupSpec::metacyclic(12, 2, 5),
                vec![normal_form_index(12, 4, 0)],
            ),
            vec![CutExpected, Abelian, Eppo, Nilpotent, TwoGroup],
        ),
        (
            "quotient-q16-by-center",
            GroupSpec::quotient(GroupSpec::dicyclic(4), vec![normal_form_index(8, 4, 0)]),
            vec![CutExpected, Eppo, Nilpotent, TwoGroup, RationalExpected],
        ),
        (
            "quotient-h3-by-center",
            GroupSpec::quotient(GroupSpec::heisenberg(3), vec![9]),
            vec![CutExpected, Abelian, Eppo, Nilpotent, ThreeGroup, OddOrder],
        ),
        (
            "quotient-h5-by-center",
            GroupSpec::quotient(GroupSpec::heisenberg(5), vec![25]),
            vec![NoncutExpected, Abelian, Eppo, Nilpotent, OddOrder],
        ),
        (
            "quotient-s4-by-v4",
            GroupSpec::quotient(GroupSpec::symmetric(4), klein_four_in_s4()),
            vec![CutExpected, Eppo, RationalExpected],
        ),
    ];
    for (id, spec, tags) in entries {
        out.push(CorpusEntry::new(id, spec, &tags));
    }
    out.sort_by(|a, b| a.id.cmp(&b.id));
    out
}

/// Indices of `(0 1)(2 3)` and `(0 2)(1 3)` in the symmetric group of
/// degree 4 as built by the constructors.
fn klein_four_in_s4() -> Vec<usize> {
    let s4 = crate::construct(&GroupSpec::symmetric(4)).expect("S4 builds");
    [[1, 0, 3, 2], [2, 3, 0, 1]]
        .iter()
        .map(|p| s4.element_from_permutation(p).expect("S4 contains V4"))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunConfig {
    pub limits: Limits,
    /// Worker threads; `0` lets the runtime decide.
    pub parallelism: usize,
    pub max_center_subgroups: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            limits: Limits::default(),
            parallelism: 0,
            max_center_subgroups: CORPUS_MAX_CENTER_SUBGROUPS,
        }
    }
}

/// One characterization outcome, without the per-class trace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremSummary {
    pub name: String,
    pub applicable: bool,
    pub predicted: Option<bool>,
    pub agrees: Option<bool>,
}

impl From<&TheoremReport> for TheoremSummary {
    fn from(r: &TheoremReport) -> Self {
        TheoremSummary {
            name: r.name.clone(),
            applicable: r.applicable,
            predicted: r.predicted,
            agrees: r.agrees_with_decider,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessLabel {
    pub element: String,
    pub exponent: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct EntryResult {
    pub id: String,
    pub spec: GroupSpec,
    pub tags: Vec<Tag>,
    pub order: Option<usize>,
    pub pi: Vec<u64>,
    pub structure: Option<ProfileSummary>,
    pub classification: Option<Classification>,
    pub witnesses: Vec<WitnessLabel>,
    pub oracle_agrees: Option<bool>,
    pub theorems: Vec<TheoremSummary>,
    pub expectation_mismatches: Vec<String>,
    pub invariant_violations: Vec<String>,
    pub skipped: bool,
    pub error: Option<String>,
    pub timing_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairResult {
    pub left: String,
    pub right: String,
    pub order: usize,
    pub predicted: bool,
    pub product_has_cut: bool,
    pub agrees: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Counters {
    pub groups_analyzed: usize,
    pub skipped: usize,
    pub errors: usize,
    pub order_cap_errors: usize,
    pub agreements: usize,
    pub disagreements: usize,
    pub oracle_disagreements: usize,
    pub expectation_mismatches: usize,
    pub invariant_violations: usize,
    pub two_group_pairs: usize,
    pub two_group_pair_disagreements: usize,
    pub class2_pairs: usize,
    pub class2_pair_failures: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusResult {
    pub entries: Vec<EntryResult>,
    pub two_group_pairs: Vec<PairResult>,
    pub class2_pairs: Vec<PairResult>,
    pub counters: Counters,
    pub timing_ms: f64,
}

impl CorpusResult {
    /// Whether any characterization, oracle, pairwise or corpus-level
    /// invariant check failed.
    pub fn has_disagreements(&self) -> bool {
        let c = &self.counters;
        c.disagreements
            + c.oracle_disagreements
            + c.invariant_violations
            + c.two_group_pair_disagreements
            + c.class2_pair_failures
            > 0
    }
}

struct Built {
    id: String,
    group: FiniteGroup,
    cut: bool,
    p_group: Option<u64>,
    class: Option<usize>,
}

fn subset(pi: &[u64], allowed: &[u64]) -> bool {
    pi.iter().all(|p| allowed.contains(p))
}

fn analyze_entry(entry: &CorpusEntry, config: &RunConfig) -> (EntryResult, Option<Built>) {
    let start = Instant::now();
    let mut result = EntryResult {
        id: entry.id.clone(),
        spec: entry.spec.clone(),
        tags: entry.tags.iter().copied().collect(),
        order: None,
        pi: Vec::new(),
        structure: None,
        classification: None,
        witnesses: Vec::new(),
        oracle_agrees: None,
        theorems: Vec::new(),
        expectation_mismatches: Vec::new(),
        invariant_violations: Vec::new(),
        skipped: false,
        error: None,
        timing_ms: 0.0,
    };
    let group = match construct_with(&entry.spec, &config.limits) {
        Ok(g) => g,
        Err(e) => {
            result.skipped = matches!(e, Error::OrderCapExceeded { .. });
            result.error = Some(e.to_string());
            result.timing_ms = start.elapsed().as_secs_f64() * 1e3;
            return (result, None);
        }
    };
    let a = Analysis::new(&group);
    let cls = classify_with(&group, &a.verdict);
    let p = &a.profile;
    result.order = Some(group.order());
    result.pi = p.pi.clone();
    result.structure = Some(p.summary());
    result.witnesses = a
        .verdict
        .witnesses
        .iter()
        .map(|w| WitnessLabel {
            element: group.label(w.element),
            exponent: w.exponent,
        })
        .collect();

    let oracle = decide_cut_bruteforce(&group);
    result.oracle_agrees = Some(oracle.has_cut == cls.cut);

    let verify = VerifyConfig {
        max_center_subgroups: config.max_center_subgroups,
        limits: config.limits,
    };
    let reports = verify_equivalences_in(&a, &verify);
    result.theorems = reports.iter().map(TheoremSummary::from).collect();

    // Expectation tags.
    let mut expect = |tag: Tag, actual: bool| {
        if entry.has(tag) != actual {
            result
                .expectation_mismatches
                .push(format!("tag {} vs computed {actual}", tag.name()));
        }
    };
    if entry.has(Tag::CutExpected) {
        expect(Tag::CutExpected, cls.cut);
    }
    if entry.has(Tag::NoncutExpected) {
        expect(Tag::NoncutExpected, !cls.cut);
    }
    expect(Tag::RationalExpected, cls.rational);
    expect(Tag::Abelian, p.is_abelian);
    expect(Tag::Nilpotent, p.is_nilpotent);
    expect(Tag::Eppo, p.is_eppo);
    expect(Tag::OddOrder, group.order() % 2 == 1);
    expect(Tag::TwoGroup, p.p_group == Some(2));
    expect(Tag::ThreeGroup, p.p_group == Some(3));

    // Corpus-level invariants.
    let mut violations = Vec::new();
    if p.is_solvable && cls.cut && !subset(&p.pi, &[2, 3, 5, 7, 13]) {
        violations.push(format!("solvable cut group with π = {:?}", p.pi));
    }
    if group.order() % 2 == 1 && cls.cut && !subset(&p.pi, &[3, 7]) {
        violations.push(format!("odd-order cut group with π = {:?}", p.pi));
    }
    if p.is_solvable && cls.rational && !subset(&p.pi, &[2, 3, 5]) {
        violations.push(format!("rational solvable group with π = {:?}", p.pi));
    }
    if p.is_abelian {
        let e = p.exponent;
        if cls.cut != (4 % e == 0 || 6 % e == 0) {
            violations.push(format!(
                "abelian group of exponent {e} has cut = {}",
                cls.cut
            ));
        }
    }
    if cls.cut {
        let center = group.center();
        if !decide_cut(&center.to_group()).has_cut {
            violations.push("center lacks the cut property".into());
        }
        let derived = group.commutator_subgroup(&group.whole(), &group.whole());
        for (what, n) in [("center", &center), ("derived subgroup", &derived)] {
            match group.quotient(n) {
                Ok(q) if decide_cut(&q).has_cut => {}
                Ok(_) => violations.push(format!("quotient by the {what} lacks the cut property")),
                Err(e) => violations.push(format!("quotient by the {what}: {e}")),
            }
        }
    }
    match &entry.spec {
        // The quotient recipe's parent has cut ⇒ the quotient has cut.
        GroupSpec::Quotient { group: parent, .. } => {
            if let Ok(pg) = construct_with(parent, &config.limits) {
                if decide_cut(&pg).has_cut && !cls.cut {
                    violations.push("quotient of a cut group lacks the cut property".into());
                }
            }
        }
        // Each factor is a quotient of the product.
        GroupSpec::Product { factors } if cls.cut => {
            for f in factors {
                if let Ok(fg) = construct_with(f, &config.limits) {
                    if !decide_cut(&fg).has_cut {
                        violations.push("factor of a cut product lacks the cut property".into());
                    }
                }
            }
        }
        _ => {}
    }
    result.invariant_violations = violations;
    result.classification = Some(cls.clone());
    result.timing_ms = start.elapsed().as_secs_f64() * 1e3;
    let built = Built {
        id: entry.id.clone(),
        cut: cls.cut,
        p_group: p.p_group,
        class: p.nilpotency_class,
        group: group.clone(),
    };
    (result, Some(built))
}

fn pairwise_checks(built: &[Built], limits: &Limits) -> (Vec<PairResult>, Vec<PairResult>) {
    let cap = PAIR_PRODUCT_LIMIT.min(limits.max_order);
    let two_groups: Vec<&Built> = built
        .iter()
        .filter(|b| b.cut && b.p_group == Some(2))
        .collect();
    let mut pairs = Vec::new();
    for h in &two_groups {
        for k in &two_groups {
            if h.group.order() * k.group.order() <= cap {
                pairs.push((*h, *k));
            }
        }
    }
    let two = pairs
        .par_iter()
        .map(|(h, k)| {
            let r = remark_two_group_sum_with(&h.group, &k.group, limits)
                .expect("inputs are cut 2-groups");
            let predicted = r.predicted.expect("applicable");
            let agrees = r.agrees_with_decider == Some(true);
            PairResult {
                left: h.id.clone(),
                right: k.id.clone(),
                order: h.group.order() * k.group.order(),
                predicted,
                product_has_cut: if agrees { predicted } else { !predicted },
                agrees,
            }
        })
        .collect();

    let class2: Vec<&Built> = built
        .iter()
        .filter(|b| b.cut && b.p_group.is_some() && b.class.is_some_and(|c| c <= 2))
        .collect();
    let mut pairs = Vec::new();
    for (i, g1) in class2.iter().enumerate() {
        for g2 in &class2[i..] {
            if g1.p_group == g2.p_group && g1.group.order() * g2.group.order() <= cap {
                pairs.push((*g1, *g2));
            }
        }
    }
    let class2 = pairs
        .par_iter()
        .filter_map(|(g1, g2)| {
            let sum = FiniteGroup::direct_product(&g1.group, &g2.group, limits).ok()?;
            let has_cut = decide_cut(&sum).has_cut;
            Some(PairResult {
                left: g1.id.clone(),
                right: g2.id.clone(),
                order: sum.order(),
                predicted: true,
                product_has_cut: has_cut,
                agrees: has_cut,
            })
        })
        .collect();
    (two, class2)
}

/// Analyzes every entry and aggregates the results, sorted by entry id.
pub fn run_corpus(entries: &[CorpusEntry], config: &RunConfig) -> CorpusResult {
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.parallelism)
        .build()
        .expect("thread pool");
    let (mut entries, two_group_pairs, class2_pairs) = pool.install(|| {
        let analyzed: Vec<(EntryResult, Option<Built>)> = entries
            .par_iter()
            .map(|e| analyze_entry(e, config))
            .collect();
        let mut results = Vec::with_capacity(analyzed.len());
        let mut built = Vec::new();
        for (r, b) in analyzed {
            results.push(r);
            built.extend(b);
        }
        built.sort_by(|a, b| a.id.cmp(&b.id));
        let (two, class2) = pairwise_checks(&built, &config.limits);
        (results, two, class2)
    });
    entries.sort_by(|a, b| a.id.cmp(&b.id));

    let mut c = Counters::default();
    for e in &entries {
        if e.skipped {
            c.skipped += 1;
            continue;
        }
        if let Some(err) = &e.error {
            c.errors += 1;
            if err.contains("exceeds the configured maximum") {
                c.order_cap_errors += 1;
            }
            continue;
        }
        c.groups_analyzed += 1;
        for t in &e.theorems {
            match t.agrees {
                Some(true) => c.agreements += 1,
                Some(false) => c.disagreements += 1,
                None => {}
            }
        }
        if e.oracle_agrees == Some(false) {
            c.oracle_disagreements += 1;
        }
        c.expectation_mismatches += e.expectation_mismatches.len();
        c.invariant_violations += e.invariant_violations.len();
    }
    c.two_group_pairs = two_group_pairs.len();
    c.two_group_pair_disagreements = two_group_pairs.iter().filter(|p| !p.agrees).count();
    c.class2_pairs = class2_pairs.len();
    c.class2_pair_failures = class2_pairs.iter().filter(|p| !p.agrees).count();
    CorpusResult {
        entries,
        two_group_pairs,
        class2_pairs,
        counters: c,
        timing_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariant_factors() {
        assert_eq!(invariant_factor_lists(1), vec![Vec::<u64>::new()]);
        assert_eq!(
            invariant_factor_lists(8),
            vec![vec![2, 2, 2], vec![2, 4], vec![8]]
        );
        assert_eq!(invariant_factor_lists(12), vec![vec![2, 6], vec![12]]);
        assert_eq!(invariant_factor_lists(64).len(), 11);
        assert_eq!(invariant_factor_lists(36).len(), 4);
        let total: usize = (1..=64).map(|n| invariant_factor_lists(n).len()).sum();
        // Number of abelian groups of order at most 64.
        assert_eq!(total, 117);
    }

    #[test]
    fn corpus_ids_are_unique_and_sorted() {
        let c = builtin_corpus();
        let ids: Vec<&str> = c.iter().map(|e| e.id.as_str()).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(ids, sorted);
        assert!(c.len() >= 120, "{}", c.len());
        let by = |id: &str| c.iter().find(|e| e.id == id).unwrap();
        assert_eq!(by("example-cut-24").spec, GroupSpec::metacyclic(12, 2, 5));
        assert!(by("example-cut-24").has(Tag::CutExpected));
        assert_eq!(by("example-noncut-81").spec, GroupSpec::metacyclic(9, 9, 4));
        assert!(by("example-noncut-81").has(Tag::NoncutExpected));
        assert!(by("cyclic-001").has(Tag::CutExpected));
    }

    #[test]
    fn empty_run() {
        let r = run_corpus(&[], &RunConfig::default());
        assert!(r.entries.is_empty());
        assert_eq!(r.counters, Counters::default());
    }

    #[test]
    fn tags_round_trip() {
        for t in Tag::ALL {
            assert_eq!(Tag::parse(t.name()), Some(t));
            assert_eq!(
                serde_json::to_string(&t).unwrap(),
                format!("\"{}\"", t.name())
            );
        }
    }
}
