//! Derived and lower central series, and the structural summary built on them.

use serde::Serialize;

use crate::arith::{is_power_of, prime_divisors, prime_power_base};
use crate::group::{FiniteGroup, Subgroup};

/// `G ⊵ G' ⊵ G'' ⊵ …`, stopping at the first repeated term.
pub fn derived_series(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut series = vec![g.whole()];
    loop {
        let last = series.last().expect("series is nonempty");
        let next = g.commutator_subgroup(last, last);
        if next.order() == last.order() {
            return series;
        }
        series.push(next);
    }
}

/// `γ₁ = G, γ_{i+1} = [γ_i, G]`, stopping at the first repeated term.
pub fn lower_central_series(g: &FiniteGroup) -> Vec<Subgroup> {
    let whole = g.whole();
    let mut series = vec![whole.clone()];
    loop {
        let last = series.last().expect("series is nonempty");
        let next = g.commutator_subgroup(last, &whole);
        if next.order() == last.order() {
            return series;
        }
        series.push(next);
    }
}

/// Nilpotency class, or `None` if the group is not nilpotent.
pub fn nilpotency_class(g: &FiniteGroup) -> Option<usize> {
    let series = lower_central_series(g);
    series
        .last()
        .filter(|s| s.is_trivial())
        .map(|_| series.len() - 1)
}

pub fn is_solvable(g: &FiniteGroup) -> bool {
    derived_series(g).last().is_some_and(Subgroup::is_trivial)
}

/// Whether every element is conjugate to its inverse.
pub fn is_real_group(g: &FiniteGroup) -> bool {
    let c = g.conjugacy();
    (0..c.num_classes()).all(|k| c.inverse_class(k) == k)
}

/// Whether every element has prime-power order (the identity counts).
pub fn is_eppo(g: &FiniteGroup) -> bool {
    g.element_orders()
        .iter()
        .all(|&o| o == 1 || prime_power_base(o).is_some())
}

/// The elements whose order is a power of `p`, as a subgroup.
///
/// This set is a subgroup (the Sylow `p`-subgroup) exactly when the group is
/// nilpotent; for other groups the closure is returned and may be larger.
pub fn p_part(g: &FiniteGroup, p: u64) -> Subgroup {
    let elems: Vec<usize> = (0..g.order())
        .filter(|&x| is_power_of(g.element_order(x), p))
        .collect();
    g.subgroup_generated(&elems, false)
        .expect("elements are in range")
}

/// Summary of the structural facts the classifications depend on.
#[derive(Debug, Clone)]
pub struct StructuralProfile {
    pub order: usize,
    pub pi: Vec<u64>,
    pub exponent: u64,
    pub is_solvable: bool,
    pub is_nilpotent: bool,
    pub nilpotency_class: Option<usize>,
    /// The prime `p` when the group is a nontrivial `p`-group.
    pub p_group: Option<u64>,
    pub is_eppo: bool,
    pub is_real_group: bool,
    pub is_abelian: bool,
    /// One Sylow subgroup per prime of `pi`, for nilpotent groups only.
    pub sylow_subgroups: Vec<(u64, Subgroup)>,
}

/// Serializable part of a [`StructuralProfile`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProfileSummary {
    pub solvable: bool,
    pub nilpotent: bool,
    pub nilpotency_class: Option<usize>,
    pub eppo: bool,
    pub real_group: bool,
    pub exponent: u64,
}

impl StructuralProfile {
    pub fn is_p_group(&self) -> bool {
        self.p_group.is_some()
    }

    pub fn summary(&self) -> ProfileSummary {
        ProfileSummary {
            solvable: self.is_solvable,
            nilpotent: self.is_nilpotent,
            nilpotency_class: self.nilpotency_class,
            eppo: self.is_eppo,
            real_group: self.is_real_group,
            exponent: self.exponent,
        }
    }

    pub fn sylow(&self, p: u64) -> Option<&Subgroup> {
        self.sylow_subgroups
            .iter()
            .find(|(q, _)| *q == p)
            .map(|(_, s)| s)
    }
}

pub fn structural_profile(g: &FiniteGroup) -> StructuralProfile {
    let order = g.order();
    let pi = prime_divisors(order as u64);
    let nilpotency_class = nilpotency_class(g);
    let is_nilpotent = nilpotency_class.is_some();
    // Nilpotent groups are solvable; skip the derived series for them.
    let is_solvable = is_nilpotent || is_solvable(g);
    let sylow_subgroups = if is_nilpotent {
        pi.iter().map(|&p| (p, p_part(g, p))).collect()
    } else {
        Vec::new()
    };
    StructuralProfile {
        order,
        p_group: prime_power_base(order as u64),
        exponent: g.exponent(),
        is_solvable,
        is_nilpotent,
        nilpotency_class,
        is_eppo: is_eppo(g),
        is_real_group: is_real_group(g),
        is_abelian: g.is_abelian(),
        pi,
        sylow_subgroups,
    }
}
