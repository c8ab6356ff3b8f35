//! Structural characterizations of the cut property.
//!
//! Each function here evaluates one closed-form criterion for the cut
//! property on a class of groups (odd order, solvable with all elements of
//! prime-power order, nilpotent, `p`-groups of class at most 2) without going
//! through [`decide_cut`]. The report records whether the hypotheses apply,
//! what the criterion predicts, a per-representative trace of which clause
//! held, and whether the prediction matches the decider.
//!
//! "For every `x ∈ G`" conditions are evaluated on class representatives:
//! all of them are invariant under conjugation.

use std::collections::HashSet;

use serde::Serialize;

use crate::arith::is_power_of;
use crate::constructors::{construct_with, GroupSpec};
use crate::cut::{decide_cut, CutVerdict};
use crate::error::{Error, Result};
use crate::group::{ClosureBuilder, FiniteGroup, Limits, Subgroup};
use crate::structure::{is_real_group, structural_profile, StructuralProfile};

pub const ODD_ORDER: &str = "odd_order";
pub const SOLVABLE_EPPO: &str = "solvable_eppo";
pub const NILPOTENT: &str = "nilpotent";
pub const CLASS2_POWER: &str = "class2_power_in_commutators";
pub const CLASS2_FACTOR_PER_ELEMENT: &str = "class2_factor_per_element";
pub const CLASS2_FACTOR_CENTRAL: &str = "class2_factor_central_subgroups";
pub const REAL_TWO_GROUP_SUMS: &str = "real_two_group_sums";
pub const TWO_GROUP_SUM: &str = "two_group_sum";

/// Default cap on the number of central subgroups enumerated.
pub const DEFAULT_MAX_CENTER_SUBGROUPS: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceEntry {
    pub element: usize,
    pub label: String,
    pub order: u64,
    pub clause: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub name: String,
    pub applicable: bool,
    /// Present iff `applicable`.
    pub predicted: Option<bool>,
    pub trace: Vec<TraceEntry>,
    /// Present iff `applicable`.
    pub agrees_with_decider: Option<bool>,
    pub notes: Vec<String>,
}

impl TheoremReport {
    fn not_applicable(name: &str, why: impl Into<String>) -> Self {
        TheoremReport {
            name: name.into(),
            applicable: false,
            predicted: None,
            trace: Vec::new(),
            agrees_with_decider: None,
            notes: vec![why.into()],
        }
    }

    fn applicable(name: &str, predicted: bool, decided: bool, trace: Vec<TraceEntry>) -> Self {
        TheoremReport {
            name: name.into(),
            applicable: true,
            predicted: Some(predicted),
            trace,
            agrees_with_decider: Some(predicted == decided),
            notes: Vec::new(),
        }
    }

    fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    /// For [`remark_two_group_sum`]: whether the criterion predicts that the
    /// sum loses the cut property.
    pub fn predicted_failure(&self) -> Option<bool> {
        self.predicted.map(|p| !p)
    }

    pub fn disagrees(&self) -> bool {
        self.agrees_with_decider == Some(false)
    }
}

/// A group together with the facts every characterization needs.
pub struct Analysis<'g> {
    pub group: &'g FiniteGroup,
    pub profile: StructuralProfile,
    pub verdict: CutVerdict,
}

impl<'g> Analysis<'g> {
    pub fn new(group: &'g FiniteGroup) -> Self {
        Analysis {
            group,
            profile: structural_profile(group),
            verdict: decide_cut(group),
        }
    }

    fn cut(&self) -> bool {
        self.verdict.has_cut
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    pub max_center_subgroups: usize,
    pub limits: Limits,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_center_subgroups: DEFAULT_MAX_CENTER_SUBGROUPS,
            limits: Limits::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorMode {
    PerElement,
    CentralSubgroups,
}

fn entry(g: &FiniteGroup, x: usize, clause: impl Into<String>, holds: bool) -> TraceEntry {
    TraceEntry {
        element: x,
        label: g.label(x),
        order: g.element_order(x),
        clause: clause.into(),
        holds,
    }
}

fn conj(g: &FiniteGroup, x: usize, k: i64, target: i64) -> bool {
    g.are_conjugate(g.power(x, k), g.power(x, target))
}

fn representatives(g: &FiniteGroup) -> impl Iterator<Item = usize> + '_ {
    g.conjugacy().representatives().iter().copied()
}

/// Odd order: cut iff every `x` has `x⁵ ∼ x⁻¹` and `o(x)` is 1, 7, or a
/// power of 3.
pub fn thm_odd(g: &FiniteGroup) -> TheoremReport {
    thm_odd_in(&Analysis::new(g))
}

pub fn thm_odd_in(a: &Analysis) -> TheoremReport {
    let g = a.group;
    if g.order().is_multiple_of(2) {
        return TheoremReport::not_applicable(ODD_ORDER, "group order is even");
    }
    let trace: Vec<TraceEntry> = representatives(g)
        .map(|x| {
            let o = g.element_order(x);
            let fifth = conj(g, x, 5, -1);
            let order_ok = o == 7 || is_power_of(o, 3);
            entry(
                g,
                x,
                "x^5 ~ x^-1 and o(x) in {7} ∪ {3^a}",
                fifth && order_ok,
            )
        })
        .collect();
    let predicted = trace.iter().all(|t| t.holds);
    TheoremReport::applicable(ODD_ORDER, predicted, a.cut(), trace)
}

/// Solvable groups whose elements all have prime-power order.
pub fn thm_solvable_eppo(g: &FiniteGroup) -> TheoremReport {
    thm_solvable_eppo_in(&Analysis::new(g))
}

pub fn thm_solvable_eppo_in(a: &Analysis) -> TheoremReport {
    let g = a.group;
    if !a.profile.is_solvable {
        return TheoremReport::not_applicable(SOLVABLE_EPPO, "group is not solvable");
    }
    if !a.profile.is_eppo {
        return TheoremReport::not_applicable(SOLVABLE_EPPO, "some element has mixed order");
    }
    let trace: Vec<TraceEntry> = representatives(g)
        .map(|x| {
            let o = g.element_order(x);
            let (clause, holds) = if is_power_of(o, 2) {
                (
                    "(i) o(x)=2^a and x^3 ~ x or x^-1",
                    conj(g, x, 3, 1) || conj(g, x, 3, -1),
                )
            } else if o == 7 || is_power_of(o, 3) {
                ("(ii) o(x)=7 or 3^b and x^5 ~ x^-1", conj(g, x, 5, -1))
            } else if o == 5 {
                ("(iii) o(x)=5 and x^3 ~ x^-1", conj(g, x, 3, -1))
            } else {
                ("no clause admits o(x)", false)
            };
            entry(g, x, clause, holds)
        })
        .collect();
    let predicted = trace.iter().all(|t| t.holds);
    TheoremReport::applicable(SOLVABLE_EPPO, predicted, a.cut(), trace)
}

/// Clause (i) of the nilpotent classification: `x³ ∼ x` or `x⁻¹` for all `x`.
fn two_group_clause(g: &FiniteGroup, trace: &mut Vec<TraceEntry>, prefix: &str) -> bool {
    let mut ok = true;
    for x in representatives(g) {
        let holds = conj(g, x, 3, 1) || conj(g, x, 3, -1);
        trace.push(entry(g, x, format!("{prefix}(i) x^3 ~ x or x^-1"), holds));
        ok &= holds;
    }
    ok
}

/// Clause (ii): `x² ∼ x⁻¹` for all `x`.
fn three_group_clause(g: &FiniteGroup, trace: &mut Vec<TraceEntry>, prefix: &str) -> bool {
    let mut ok = true;
    for x in representatives(g) {
        let holds = conj(g, x, 2, -1);
        trace.push(entry(g, x, format!("{prefix}(ii) x^2 ~ x^-1"), holds));
        ok &= holds;
    }
    ok
}

/// Nilpotent groups: a 2-group with `x³ ∼ x^{±1}`, a 3-group with
/// `x² ∼ x⁻¹`, or `H ⊕ K` with `H` such a 2-group that is also real and
/// `K` a nontrivial such 3-group.
pub fn thm_nilpotent(g: &FiniteGroup) -> TheoremReport {
    thm_nilpotent_in(&Analysis::new(g))
}

pub fn thm_nilpotent_in(a: &Analysis) -> TheoremReport {
    let g = a.group;
    if !a.profile.is_nilpotent {
        return TheoremReport::not_applicable(NILPOTENT, "group is not nilpotent");
    }
    let mut trace = Vec::new();
    let pi = a.profile.pi.as_slice();
    let predicted = match pi {
        [] => {
            trace.push(entry(g, 0, "trivial group", true));
            true
        }
        [2] => two_group_clause(g, &mut trace, ""),
        [3] => three_group_clause(g, &mut trace, ""),
        [2, 3] => {
            let h = a
                .profile
                .sylow(2)
                .expect("nilpotent group has a Sylow 2-subgroup");
            let k = a
                .profile
                .sylow(3)
                .expect("nilpotent group has a Sylow 3-subgroup");
            let (h, k) = (h.to_group(), k.to_group());
            let real = is_real_group(&h);
            trace.push(entry(&h, 0, "H: real group", real));
            let h_ok = two_group_clause(&h, &mut trace, "H: ");
            let k_ok = three_group_clause(&k, &mut trace, "K: ");
            real && h_ok && k_ok
        }
        _ => {
            trace.push(entry(g, 0, "π(G) is not contained in {2,3}", false));
            false
        }
    };
    TheoremReport::applicable(NILPOTENT, predicted, a.cut(), trace)
}

fn class2_applicability(a: &Analysis, name: &str) -> Option<TheoremReport> {
    if a.group.order() == 1 {
        return None;
    }
    if !a.profile.is_p_group() {
        return Some(TheoremReport::not_applicable(name, "not a p-group"));
    }
    match a.profile.nilpotency_class {
        Some(c) if c <= 2 => None,
        _ => Some(TheoremReport::not_applicable(
            name,
            "nilpotency class exceeds 2",
        )),
    }
}

fn class2_notes(a: &Analysis, report: TheoremReport) -> TheoremReport {
    if a.profile.is_abelian {
        report.note("abelian: evaluated with [x,G] = {1}")
    } else {
        report
    }
}

/// `p`-groups of class at most 2: cut iff `p = 2` and `x⁴ ∈ [x,G]` for all
/// `x`, or `p = 3` and `x³ ∈ [x,G]` for all `x`.
pub fn cor_class2(g: &FiniteGroup) -> TheoremReport {
    cor_class2_in(&Analysis::new(g))
}

pub fn cor_class2_in(a: &Analysis) -> TheoremReport {
    if let Some(r) = class2_applicability(a, CLASS2_POWER) {
        return r;
    }
    let g = a.group;
    let mut trace = Vec::new();
    let predicted = match a.profile.p_group {
        None => {
            trace.push(entry(g, 0, "trivial group", true));
            true
        }
        Some(p @ (2 | 3)) => {
            let k = if p == 2 { 4 } else { 3 };
            let mut ok = true;
            for x in representatives(g) {
                let (set, _) = g.commutator_of_element(x);
                let holds = set.binary_search(&g.power(x, k)).is_ok();
                trace.push(entry(g, x, format!("x^{k} in [x,G]"), holds));
                ok &= holds;
            }
            ok
        }
        Some(p) => {
            trace.push(entry(g, 0, format!("p = {p} is neither 2 nor 3"), false));
            false
        }
    };
    class2_notes(
        a,
        TheoremReport::applicable(CLASS2_POWER, predicted, a.cut(), trace),
    )
}

/// `p`-groups of class at most 2: cut iff both `N` and `G/N` have the cut
/// property, where `N` ranges over the subgroups `[x,G]`
/// ([`FactorMode::PerElement`]) or over all subgroups of the center
/// ([`FactorMode::CentralSubgroups`]).
pub fn prop_class2_factor(g: &FiniteGroup, mode: FactorMode) -> Result<TheoremReport> {
    prop_class2_factor_in(&Analysis::new(g), mode, DEFAULT_MAX_CENTER_SUBGROUPS)
}

pub fn prop_class2_factor_in(
    a: &Analysis,
    mode: FactorMode,
    max_center_subgroups: usize,
) -> Result<TheoremReport> {
    let name = match mode {
        FactorMode::PerElement => CLASS2_FACTOR_PER_ELEMENT,
        FactorMode::CentralSubgroups => CLASS2_FACTOR_CENTRAL,
    };
    if let Some(r) = class2_applicability(a, name) {
        return Ok(r);
    }
    let g = a.group;
    let mut trace = Vec::new();
    let mut predicted = true;
    let mut check = |n: &Subgroup, x: usize, what: &str| -> Result<()> {
        let sub_cut = decide_cut(&n.to_group()).has_cut;
        let quo_cut = decide_cut(&g.quotient(n)?).has_cut;
        let holds = sub_cut && quo_cut;
        trace.push(entry(
            g,
            x,
            format!(
                "{what} (|N|={}): N cut={sub_cut}, G/N cut={quo_cut}",
                n.order()
            ),
            holds,
        ));
        predicted &= holds;
        Ok(())
    };
    match mode {
        FactorMode::PerElement => {
            for x in representatives(g) {
                let (_, n) = g.commutator_of_element(x);
                check(&n, x, "N = [x,G]")?;
            }
        }
        FactorMode::CentralSubgroups => {
            let subgroups = abelian_subgroups(&g.center(), max_center_subgroups)?;
            for n in &subgroups {
                let x = n.generators().first().copied().unwrap_or(0);
                check(n, x, "N ≤ Z(G)")?;
            }
        }
    }
    Ok(class2_notes(
        a,
        TheoremReport::applicable(name, predicted, a.cut(), trace),
    ))
}

/// Every subgroup of an abelian subgroup `z`, ordered by (order, members).
///
/// Grows the lattice from the trivial subgroup by adjoining one element at a
/// time; fails once more than `cap` subgroups are found.
pub fn abelian_subgroups(z: &Subgroup, cap: usize) -> Result<Vec<Subgroup>> {
    let g = z.parent();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut found: Vec<Subgroup> = vec![g.trivial_subgroup()];
    seen.insert(vec![0]);
    let mut head = 0;
    while head < found.len() {
        let base = found[head].clone();
        for &x in z.members() {
            if base.contains(x) {
                continue;
            }
            let mut builder = ClosureBuilder::new(g);
            for &y in base.generators() {
                builder.add(y);
            }
            builder.add(x);
            let (members, _) = builder.finish();
            if seen.insert(members.clone()) {
                if found.len() >= cap {
                    return Err(Error::CenterTooLarge { limit: cap });
                }
                let mut gens = base.generators().to_vec();
                gens.push(x);
                found.push(g.subgroup_generated(&gens, false)?);
            }
        }
        head += 1;
    }
    found.sort_by(|a, b| (a.order(), a.members()).cmp(&(b.order(), b.members())));
    Ok(found)
}

fn two_group_with_cut(g: &FiniteGroup, which: &str) -> Result<()> {
    let n = g.order() as u64;
    if n < 2 || !is_power_of(n, 2) {
        return Err(Error::HypothesisViolated(format!(
            "{which} is not a nontrivial 2-group (order {n})"
        )));
    }
    if !decide_cut(g).has_cut {
        return Err(Error::HypothesisViolated(format!(
            "{which} does not have the cut property"
        )));
    }
    Ok(())
}

/// Sums of two 2-groups with the cut property: `H ⊕ K` loses the property
/// iff there are non-real `h ∈ H`, `k ∈ K` with `h³ ∼ h` and `k³ ∼ k⁻¹`,
/// or `h³ ∼ h⁻¹` and `k³ ∼ k`.
///
/// `predicted` is the predicted cut verdict of the sum, so
/// [`TheoremReport::predicted_failure`] is the existential condition above.
pub fn remark_two_group_sum(h: &FiniteGroup, k: &FiniteGroup) -> Result<TheoremReport> {
    remark_two_group_sum_with(h, k, &Limits::default())
}

pub fn remark_two_group_sum_with(
    h: &FiniteGroup,
    k: &FiniteGroup,
    limits: &Limits,
) -> Result<TheoremReport> {
    two_group_with_cut(h, "H")?;
    two_group_with_cut(k, "K")?;
    // Non-real representatives, split by whether x³ ∼ x or x³ ∼ x⁻¹.
    let kinds = |g: &FiniteGroup| {
        let mut fixing = Vec::new();
        let mut inverting = Vec::new();
        for x in representatives(g) {
            if g.are_conjugate(x, g.inv(x)) {
                continue;
            }
            if conj(g, x, 3, 1) {
                fixing.push(x);
            } else if conj(g, x, 3, -1) {
                inverting.push(x);
            }
        }
        (fixing, inverting)
    };
    let (h_fix, h_inv) = kinds(h);
    let (k_fix, k_inv) = kinds(k);
    let mut trace = Vec::new();
    if let (Some(&x), Some(&y)) = (h_fix.first(), k_inv.first()) {
        trace.push(entry(h, x, "H: non-real, h^3 ~ h", true));
        trace.push(entry(k, y, "K: non-real, k^3 ~ k^-1", true));
    }
    if let (Some(&x), Some(&y)) = (h_inv.first(), k_fix.first()) {
        trace.push(entry(h, x, "H: non-real, h^3 ~ h^-1", true));
        trace.push(entry(k, y, "K: non-real, k^3 ~ k", true));
    }
    let predicted_failure = !trace.is_empty();
    let sum = FiniteGroup::direct_product(h, k, limits)?;
    let decided = decide_cut(&sum).has_cut;
    Ok(TheoremReport::applicable(
        TWO_GROUP_SUM,
        !predicted_failure,
        decided,
        trace,
    ))
}

/// Real 2-groups with the cut property used to test that `G ⊕ R` keeps the
/// cut property for nilpotent cut groups `G`.
pub fn real_two_group_check_set() -> Vec<(&'static str, GroupSpec)> {
    vec![
        ("C2", GroupSpec::cyclic(2)),
        ("C2xC2", GroupSpec::abelian(&[2, 2])),
        ("D8", GroupSpec::metacyclic(4, 2, 3)),
        ("Q8", GroupSpec::dicyclic(2)),
    ]
}

pub fn real_two_group_sums_in(a: &Analysis, limits: &Limits) -> TheoremReport {
    if !a.profile.is_nilpotent || !a.cut() {
        return TheoremReport::not_applicable(
            REAL_TWO_GROUP_SUMS,
            "requires a nilpotent group with the cut property",
        );
    }
    let mut trace = Vec::new();
    let mut all = true;
    let mut notes = Vec::new();
    for (name, spec) in real_two_group_check_set() {
        let r = construct_with(&spec, limits).expect("check-set groups are valid");
        match FiniteGroup::direct_product(a.group, &r, limits) {
            Ok(sum) => {
                let holds = decide_cut(&sum).has_cut;
                trace.push(TraceEntry {
                    element: 0,
                    label: name.into(),
                    order: sum.order() as u64,
                    clause: format!("G ⊕ {name} has cut"),
                    holds,
                });
                all &= holds;
            }
            Err(e) => notes.push(format!("G ⊕ {name} skipped: {e}")),
        }
    }
    TheoremReport {
        name: REAL_TWO_GROUP_SUMS.into(),
        applicable: true,
        predicted: Some(true),
        trace,
        agrees_with_decider: Some(all),
        notes,
    }
}

/// Runs every characterization on `g` under default settings.
pub fn verify_equivalences(g: &FiniteGroup) -> Vec<TheoremReport> {
    verify_equivalences_in(&Analysis::new(g), &VerifyConfig::default())
}

/// Runs every characterization. Disagreements are reported, never raised.
///
/// If the center has too many subgroups to enumerate, the central-subgroup
/// report is marked not applicable with a note saying why.
pub fn verify_equivalences_in(a: &Analysis, config: &VerifyConfig) -> Vec<TheoremReport> {
    let mut reports = vec![
        thm_odd_in(a),
        thm_solvable_eppo_in(a),
        thm_nilpotent_in(a),
        cor_class2_in(a),
    ];
    for mode in [FactorMode::PerElement, FactorMode::CentralSubgroups] {
        reports.push(
            prop_class2_factor_in(a, mode, config.max_center_subgroups).unwrap_or_else(|e| {
                let name = match mode {
                    FactorMode::PerElement => CLASS2_FACTOR_PER_ELEMENT,
                    FactorMode::CentralSubgroups => CLASS2_FACTOR_CENTRAL,
                };
                TheoremReport::not_applicable(name, format!("not evaluated: {e}"))
            }),
        );
    }
    reports.push(real_two_group_sums_in(a, &config.limits));
    reports
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::construct;

    fn g(spec: GroupSpec) -> FiniteGroup {
        construct(&spec).unwrap()
    }

    fn check(r: &TheoremReport, predicted: bool) {
        assert!(r.applicable, "{} should apply", r.name);
        assert_eq!(r.predicted, Some(predicted), "{r:?}");
        assert_eq!(r.agrees_with_decider, Some(true), "{r:?}");
    }

    #[test]
    fn odd_order() {
        check(&thm_odd(&g(GroupSpec::cyclic(3))), true);
        check(&thm_odd(&g(GroupSpec::metacyclic(7, 3, 2))), true);
        check(&thm_odd(&g(GroupSpec::cyclic(9))), false);
        check(&thm_odd(&g(GroupSpec::cyclic(13))), false);
        assert!(!thm_odd(&g(GroupSpec::cyclic(4))).applicable);
    }

    #[test]
    fn solvable_eppo() {
        check(&thm_solvable_eppo(&g(GroupSpec::metacyclic(3, 2, 2))), true);
        check(&thm_solvable_eppo(&g(GroupSpec::metacyclic(5, 4, 2))), true);
        check(&thm_solvable_eppo(&g(GroupSpec::cyclic(13))), false);
        let r = thm_solvable_eppo(&g(GroupSpec::metacyclic(12, 2, 5)));
        assert!(!r.applicable && r.predicted.is_none() && r.agrees_with_decider.is_none());
    }

    #[test]
    fn nilpotent() {
        check(&thm_nilpotent(&g(GroupSpec::dicyclic(2))), true);
        check(&thm_nilpotent(&g(GroupSpec::cyclic(3))), true);
        check(
            &thm_nilpotent(&g(GroupSpec::product(vec![
                GroupSpec::dicyclic(2),
                GroupSpec::cyclic(3),
            ]))),
            true,
        );
        check(&thm_nilpotent(&g(GroupSpec::cyclic(12))), false);
        check(&thm_nilpotent(&g(GroupSpec::cyclic(5))), false);
        check(&thm_nilpotent(&g(GroupSpec::cyclic(1))), true);
        assert!(!thm_nilpotent(&g(GroupSpec::symmetric(3))).applicable);
    }

    #[test]
    fn class_two() {
        check(&cor_class2(&g(GroupSpec::cyclic(4))), true);
        check(&cor_class2(&g(GroupSpec::heisenberg(3))), true);
        check(&cor_class2(&g(GroupSpec::metacyclic(9, 9, 4))), false);
        assert!(!cor_class2(&g(GroupSpec::metacyclic(8, 2, 3))).applicable);
        let r = cor_class2(&g(GroupSpec::cyclic(4)));
        assert!(r.notes.iter().any(|n| n.starts_with("abelian")));
    }

    #[test]
    fn class_two_factors() {
        check(
            &prop_class2_factor(&g(GroupSpec::heisenberg(3)), FactorMode::PerElement).unwrap(),
            true,
        );
        let r =
            prop_class2_factor(&g(GroupSpec::metacyclic(9, 9, 4)), FactorMode::PerElement).unwrap();
        check(&r, false);
        let at_b = r.trace.iter().find(|t| t.label == "b").unwrap();
        assert!(at_b.clause.contains("|N|=3") && !at_b.holds);
        let r = prop_class2_factor(&g(GroupSpec::cyclic(4)), FactorMode::CentralSubgroups).unwrap();
        check(&r, true);
        assert_eq!(r.trace.len(), 3);
    }

    #[test]
    fn center_subgroup_cap() {
        let c2_4 = g(GroupSpec::abelian(&[2, 2, 2, 2]));
        // C2^4 has 67 subgroups.
        assert_eq!(abelian_subgroups(&c2_4.center(), 1000).unwrap().len(), 67);
        assert_eq!(
            abelian_subgroups(&c2_4.center(), 20).unwrap_err(),
            Error::CenterTooLarge { limit: 20 }
        );
    }

    #[test]
    fn two_group_sums() {
        let c4 = g(GroupSpec::cyclic(4));
        let r = remark_two_group_sum(&c4, &c4).unwrap();
        assert_eq!(r.predicted_failure(), Some(false));
        assert_eq!(r.agrees_with_decider, Some(true));
        let sd = g(GroupSpec::metacyclic(8, 2, 3));
        let md = g(GroupSpec::metacyclic(8, 2, 5));
        let r = remark_two_group_sum(&sd, &md).unwrap();
        assert_eq!(r.predicted_failure(), Some(true));
        assert_eq!(r.agrees_with_decider, Some(true));
        let d8 = g(GroupSpec::metacyclic(4, 2, 3));
        let q8 = g(GroupSpec::dicyclic(2));
        let r = remark_two_group_sum(&d8, &q8).unwrap();
        assert_eq!(r.predicted_failure(), Some(false));
        assert_eq!(r.agrees_with_decider, Some(true));
        assert!(matches!(
            remark_two_group_sum(&g(GroupSpec::cyclic(3)), &c4),
            Err(Error::HypothesisViolated(_))
        ));
        assert!(matches!(
            remark_two_group_sum(&g(GroupSpec::cyclic(8)), &c4),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn verify_all() {
        let reports = verify_equivalences(&g(GroupSpec::metacyclic(9, 9, 4)));
        let by = |n: &str| reports.iter().find(|r| r.name == n).unwrap().clone();
        check(&by(NILPOTENT), false);
        check(&by(CLASS2_POWER), false);
        assert!(!by(REAL_TWO_GROUP_SUMS).applicable);

        let reports = verify_equivalences(&g(GroupSpec::heisenberg(3)));
        assert!(reports.iter().all(|r| !r.disagrees()));
        let sums = reports
            .iter()
            .find(|r| r.name == REAL_TWO_GROUP_SUMS)
            .unwrap();
        assert_eq!(sums.trace.len(), 4);
        assert!(sums.trace.iter().all(|t| t.holds));

        let reports = verify_equivalences(&g(GroupSpec::metacyclic(3, 2, 2)));
        let by = |n: &str| reports.iter().find(|r| r.name == n).unwrap().clone();
        check(&by(SOLVABLE_EPPO), true);
        assert!(!by(ODD_ORDER).applicable);
        assert!(!by(NILPOTENT).applicable);
    }
}
