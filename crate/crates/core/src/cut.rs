//! Deciding whether all central units of `Z[G]` are trivial.
//!
//! A finite group has this property (the *cut* property) exactly when every
//! element `x` and every `j` coprime to `o(x)` satisfy `x^j ∼ x` or
//! `x^j ∼ x⁻¹`. Since `x^j` depends only on `j mod o(x)` and conjugation
//! commutes with taking powers, it suffices to scan `j ∈ 1..o(x)` for one
//! representative per conjugacy class.
//!
//! [`decide_cut_bruteforce`] checks the same criterion along an independent
//! path and serves as the oracle for [`decide_cut`].

use serde::Serialize;

use crate::arith::{gcd, units_mod};
use crate::group::FiniteGroup;
use crate::structure::is_real_group;

/// Power-residue data for one class representative `x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassResidues {
    pub representative: usize,
    pub order: u64,
    /// `{ j mod o(x) : gcd(j, o(x)) = 1, x^j ∼ x }`, ascending.
    pub fixing: Vec<u64>,
    /// Smallest coprime `j` with `x^j ∼ x⁻¹`, if any.
    pub inverting: Option<u64>,
}

/// `(x, j)` with `x^j` conjugate to neither `x` nor `x⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub element: usize,
    pub exponent: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutVerdict {
    pub has_cut: bool,
    /// First failing exponent of each failing class representative, ordered
    /// by representative index. Empty iff `has_cut`.
    pub witnesses: Vec<Witness>,
    /// Filled only by [`analyze_cut`].
    pub per_class: Vec<ClassResidues>,
}

impl CutVerdict {
    pub fn first_witness(&self) -> Option<Witness> {
        self.witnesses.first().copied()
    }
}

/// Fast decision: stops scanning a representative at its first failure.
pub fn decide_cut(g: &FiniteGroup) -> CutVerdict {
    scan(g, false)
}

/// Like [`decide_cut`], but records the full residue data of every class.
pub fn analyze_cut(g: &FiniteGroup) -> CutVerdict {
    scan(g, true)
}

fn scan(g: &FiniteGroup, record: bool) -> CutVerdict {
    let conj = g.conjugacy();
    let mut witnesses = Vec::new();
    let mut per_class = Vec::new();
    for class in 0..conj.num_classes() {
        let x = conj.representative(class);
        let m = g.element_order(x);
        let own = class;
        let inverse = conj.inverse_class(class);
        let mut fixing = Vec::new();
        let mut inverting = None;
        let mut failed = false;
        // Walk the cyclic subgroup ⟨x⟩: `y = x^j`.
        let mut y = 0usize;
        for j in 1..m.max(2) {
            y = g.mul(y, x);
            if m > 1 && gcd(j, m) != 1 {
                continue;
            }
            let c = conj.class_of(y);
            if c == own {
                fixing.push(j % m);
            }
            if c == inverse && inverting.is_none() {
                inverting = Some(j % m);
            }
            if c != own && c != inverse && !failed {
                witnesses.push(Witness {
                    element: x,
                    exponent: j,
                });
                failed = true;
                if !record {
                    break;
                }
            }
        }
        if m == 1 {
            fixing = vec![0];
            inverting = Some(0);
        }
        if record {
            per_class.push(ClassResidues {
                representative: x,
                order: m,
                fixing,
                inverting,
            });
        }
    }
    CutVerdict {
        has_cut: witnesses.is_empty(),
        witnesses,
        per_class,
    }
}

/// Independent oracle for [`decide_cut`].
///
/// Every element is scanned, not just class representatives. Element orders,
/// powers and conjugacy classes are all recomputed here by direct
/// multiplication: each class is the full orbit `{ g⁻¹xg : g ∈ G }`, so
/// nothing is shared with the stored partition or cached orders. Witnesses
/// are the first failing exponent of each failing element.
pub fn decide_cut_bruteforce(g: &FiniteGroup) -> CutVerdict {
    let n = g.order();
    let mut witnesses = Vec::new();
    let mut in_class = vec![false; n];
    for x in 0..n {
        // Conjugacy class of x by conjugating with every element.
        in_class.iter_mut().for_each(|b| *b = false);
        for h in 0..n {
            in_class[g.conjugate(x, h)] = true;
        }
        // x^j ∼ x⁻¹ iff x^{-j} ∼ x, i.e. the inverse of x^j lies in class(x).
        let mut powers = vec![0usize];
        let mut y = x;
        while y != 0 {
            powers.push(y);
            y = g.mul(y, x);
        }
        let m = powers.len() as u64;
        for j in 1..m {
            if gcd(j, m) != 1 {
                continue;
            }
            let p = powers[j as usize];
            let p_inv = powers[(m - j) as usize];
            debug_assert_eq!(g.mul(p, p_inv), 0);
            let conj_to_x = in_class[p];
            let conj_to_inv = in_class[p_inv];
            if !conj_to_x && !conj_to_inv {
                witnesses.push(Witness {
                    element: x,
                    exponent: j,
                });
                break;
            }
        }
    }
    CutVerdict {
        has_cut: witnesses.is_empty(),
        witnesses,
        per_class: Vec::new(),
    }
}

/// Checks a class's residue data against the covering condition: the
/// fixing residues together with the coset `j₀·H` of an inverting `j₀`
/// cover all units modulo `o(x)`.
pub fn residues_cover_units(r: &ClassResidues) -> bool {
    let units = units_mod(r.order);
    let mut covered: Vec<u64> = r.fixing.clone();
    if let Some(j0) = r.inverting {
        covered.extend(r.fixing.iter().map(|&h| h * j0 % r.order.max(1)));
    }
    units.iter().all(|u| covered.contains(u))
}

/// Labels summarizing the cut decision and related rationality notions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub cut: bool,
    /// Same as `cut`: every `x^j` is conjugate to `x` or `x⁻¹`.
    pub inverse_semi_rational: bool,
    pub real_group: bool,
    /// `cut` and `real_group`.
    pub rational: bool,
    /// Odd-order groups only: `0` for cut groups containing an element of
    /// order 7, `1` otherwise. A label derived from the known dichotomy for
    /// the central height of the augmentation-one units; it is not computed
    /// from the group ring.
    pub central_height_label: Option<u8>,
}

pub fn classify(g: &FiniteGroup) -> Classification {
    classify_with(g, &decide_cut(g))
}

pub fn classify_with(g: &FiniteGroup, verdict: &CutVerdict) -> Classification {
    let cut = verdict.has_cut;
    let real_group = is_real_group(g);
    let central_height_label = (g.order() % 2 == 1).then(|| {
        let has_seven = g.element_orders().contains(&7);
        if cut && has_seven {
            0
        } else {
            1
        }
    });
    Classification {
        cut,
        inverse_semi_rational: cut,
        real_group,
        rational: cut && real_group,
        central_height_label,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{construct, GroupSpec};

    fn g(spec: GroupSpec) -> FiniteGroup {
        construct(&spec).unwrap()
    }

    #[test]
    fn order_24_and_81_examples() {
        let pos = g(GroupSpec::metacyclic(12, 2, 5));
        assert!(decide_cut(&pos).has_cut);
        let neg = g(GroupSpec::metacyclic(9, 9, 4));
        let v = decide_cut(&neg);
        assert!(!v.has_cut);
        assert_eq!(
            v.first_witness(),
            Some(Witness {
                element: 9,
                exponent: 2
            })
        );
        assert_eq!(neg.label(9), "b");
    }

    #[test]
    fn small_cases() {
        assert!(decide_cut(&g(GroupSpec::cyclic(1))).has_cut);
        let c5 = decide_cut(&g(GroupSpec::cyclic(5)));
        assert!(!c5.has_cut);
        assert_eq!(
            c5.first_witness(),
            Some(Witness {
                element: 1,
                exponent: 2
            })
        );
        assert_eq!(c5.witnesses.len(), 4);
        assert!(decide_cut(&g(GroupSpec::metacyclic(7, 3, 2))).has_cut);
        assert!(decide_cut(&g(GroupSpec::cyclic(6))).has_cut);
        assert!(decide_cut(&g(GroupSpec::dicyclic(2))).has_cut);
        let c12 = decide_cut(&g(GroupSpec::cyclic(12)));
        assert_eq!(
            c12.first_witness(),
            Some(Witness {
                element: 1,
                exponent: 5
            })
        );
    }

    #[test]
    fn oracle_agrees_on_witness_class() {
        let neg = g(GroupSpec::metacyclic(9, 9, 4));
        let v = decide_cut_bruteforce(&neg);
        assert!(!v.has_cut);
        let b = 9;
        assert!(v
            .witnesses
            .iter()
            .any(|w| neg.are_conjugate(w.element, b) && w.exponent == 2));
        assert!(decide_cut_bruteforce(&g(GroupSpec::cyclic(6))).has_cut);
        assert!(decide_cut_bruteforce(&g(GroupSpec::dicyclic(2))).has_cut);
    }

    #[test]
    fn residues_form_subgroups_and_cover() {
        for spec in [
            GroupSpec::metacyclic(9, 9, 4),
            GroupSpec::metacyclic(12, 2, 5),
            GroupSpec::metacyclic(8, 2, 3),
            GroupSpec::cyclic(7),
            GroupSpec::heisenberg(5),
        ] {
            let grp = g(spec);
            let v = analyze_cut(&grp);
            assert_eq!(v.per_class.len(), grp.conjugacy().num_classes());
            let mut all_cover = true;
            for r in &v.per_class {
                let m = r.order.max(1);
                assert!(r.fixing.contains(&(1 % m)));
                for &a in &r.fixing {
                    for &b in &r.fixing {
                        assert!(r.fixing.contains(&(a * b % m)));
                    }
                }
                all_cover &= residues_cover_units(r);
            }
            assert_eq!(all_cover, v.has_cut);
        }
    }

    #[test]
    fn classifications() {
        let s3 = classify(&g(GroupSpec::metacyclic(3, 2, 2)));
        assert!(s3.real_group && s3.cut && s3.rational);
        assert_eq!(s3.central_height_label, None);
        let f21 = classify(&g(GroupSpec::metacyclic(7, 3, 2)));
        assert!(f21.cut);
        assert_eq!(f21.central_height_label, Some(0));
        let c9 = classify(&g(GroupSpec::cyclic(9)));
        assert!(!c9.cut);
        assert_eq!(c9.central_height_label, Some(1));
        let h3 = classify(&g(GroupSpec::heisenberg(3)));
        assert!(h3.cut && !h3.real_group && !h3.rational);
        assert_eq!(h3.central_height_label, Some(1));
        assert_eq!(h3.inverse_semi_rational, h3.cut);
    }
}
