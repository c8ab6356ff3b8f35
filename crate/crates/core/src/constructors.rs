//! Declarative group recipes and the families built from them.
//!
//! Metacyclic groups `⟨a, b | a^m, b^n, b⁻¹ab = a^r⟩` are realized through
//! their normal form `a^i b^j`. Moving `b^j` past `a^k` gives
//! `b^j a^k = a^{k·t^j} b^j` with `t = r⁻¹ (mod m)`, so the product is
//!
//! ```text
//! (a^i b^j)(a^k b^l) = a^{i + k·t^j mod m} b^{(j + l) mod n}
//! ```
//!
//! and `a^i b^j` lives at index `i + m·j`: `a` is index 1 and `b` is index `m`.

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, inv_mod, is_prime, pow_mod};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Limits};

/// A recipe for a finite group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupSpec {
    Cyclic {
        n: u64,
    },
    /// Direct product of cyclic groups of the given orders.
    Abelian {
        factors: Vec<u64>,
    },
    Metacyclic {
        m: u64,
        n: u64,
        r: u64,
    },
    /// Order `4n`: `a^{2n} = 1`, `b² = a^n`, `b⁻¹ab = a⁻¹`.
    Dicyclic {
        n: u64,
    },
    /// Upper unitriangular 3×3 matrices over `Z/p`, `p` an odd prime.
    Heisenberg {
        p: u64,
    },
    Symmetric {
        degree: u64,
    },
    /// Closure of 0-based image arrays on `0..degree`.
    Permutation {
        degree: u64,
        generators: Vec<Vec<usize>>,
    },
    /// Row-major Cayley table.
    Table {
        order: u64,
        table: Vec<Vec<usize>>,
    },
    Product {
        factors: Vec<GroupSpec>,
    },
    /// Quotient of `group` by the subgroup generated by the given element
    /// indices, which must be normal.
    Quotient {
        group: Box<GroupSpec>,
        normal_generators: Vec<usize>,
    },
}

impl GroupSpec {
    pub fn cyclic(n: u64) -> Self {
        GroupSpec::Cyclic { n }
    }

    pub fn abelian(factors: &[u64]) -> Self {
        GroupSpec::Abelian {
            factors: factors.to_vec(),
        }
    }

    pub fn metacyclic(m: u64, n: u64, r: u64) -> Self {
        GroupSpec::Metacyclic { m, n, r }
    }

    pub fn dicyclic(n: u64) -> Self {
        GroupSpec::Dicyclic { n }
    }

    pub fn heisenberg(p: u64) -> Self {
        GroupSpec::Heisenberg { p }
    }

    pub fn symmetric(degree: u64) -> Self {
        GroupSpec::Symmetric { degree }
    }

    pub fn product(factors: Vec<GroupSpec>) -> Self {
        GroupSpec::Product { factors }
    }

    pub fn quotient(group: GroupSpec, normal_generators: Vec<usize>) -> Self {
        GroupSpec::Quotient {
            group: Box::new(group),
            normal_generators,
        }
    }

    /// Checks the parameter constraints of every recipe in the tree.
    ///
    /// This does not build anything, so constraints that depend on the built
    /// group (normality of a quotient's subgroup, group axioms of a table)
    /// are left to [`construct`].
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: u64| {
            if v == 0 {
                Err(Error::InvalidParameters(format!("{name} must be positive")))
            } else {
                Ok(())
            }
        };
        match self {
            GroupSpec::Cyclic { n } => positive("n", *n),
            GroupSpec::Abelian { factors } => factors
                .iter()
                .try_for_each(|&f| positive("every factor", f)),
            GroupSpec::Metacyclic { m, n, r } => check_metacyclic(*m, *n, *r),
            GroupSpec::Dicyclic { n } => positive("n", *n),
            GroupSpec::Heisenberg { p } => {
                if *p > 2 && is_prime(*p) {
                    Ok(())
                } else {
                    Err(Error::NotAPrime(*p))
                }
            }
            GroupSpec::Symmetric { degree } => positive("degree", *degree),
            GroupSpec::Permutation { degree, generators } => {
                positive("degree", *degree)?;
                for (g, image) in generators.iter().enumerate() {
                    let mut sorted = image.clone();
                    sorted.sort_unstable();
                    if sorted != (0..*degree as usize).collect::<Vec<_>>() {
                        return Err(Error::NotAPermutation {
                            generator: g,
                            degree: *degree as usize,
                        });
                    }
                }
                Ok(())
            }
            GroupSpec::Table { order, table } => {
                positive("order", *order)?;
                if table.len() as u64 != *order || table.iter().any(|r| r.len() as u64 != *order) {
                    return Err(Error::InvalidParameters(format!(
                        "table must be {order}×{order}"
                    )));
                }
                Ok(())
            }
            GroupSpec::Product { factors } => {
                if factors.is_empty() {
                    return Err(Error::InvalidParameters(
                        "product needs at least one factor".into(),
                    ));
                }
                factors.iter().try_for_each(GroupSpec::validate)
            }
            GroupSpec::Quotient { group, .. } => group.validate(),
        }
    }
}

fn check_metacyclic(m: u64, n: u64, r: u64) -> Result<()> {
    let invalid = |reason: String| Error::InvalidMetacyclicParameters { m, n, r, reason };
    if m == 0 || n == 0 || r == 0 {
        return Err(invalid("all parameters must be positive".into()));
    }
    let d = gcd(r, m);
    if d != 1 {
        return Err(invalid(format!("gcd(r, m) = {d}, expected 1")));
    }
    if m > 1 {
        let residue = pow_mod(r, n, m);
        if residue != 1 {
            return Err(invalid(format!("r^n ≡ {residue} (mod {m}), expected 1")));
        }
    }
    Ok(())
}

fn to_usize(v: u64, limits: &Limits) -> Result<usize> {
    usize::try_from(v).map_err(|_| Error::OrderCapExceeded {
        limit: limits.max_order,
    })
}

/// Builds a recipe under the default limits.
pub fn construct(spec: &GroupSpec) -> Result<FiniteGroup> {
    construct_with(spec, &Limits::default())
}

pub fn construct_with(spec: &GroupSpec, limits: &Limits) -> Result<FiniteGroup> {
    spec.validate()?;
    build(spec, limits)
}

fn build(spec: &GroupSpec, limits: &Limits) -> Result<FiniteGroup> {
    match spec {
        GroupSpec::Cyclic { n } => FiniteGroup::abelian(&[to_usize(*n, limits)?], limits),
        GroupSpec::Abelian { factors } => {
            let factors = factors
                .iter()
                .map(|&f| to_usize(f, limits))
                .collect::<Result<Vec<_>>>()?;
            FiniteGroup::abelian(&factors, limits)
        }
        GroupSpec::Metacyclic { m, n, r } => {
            let m = to_usize(*m, limits)?;
            FiniteGroup::metacyclic(m, to_usize(*n, limits)?, (*r % m as u64) as usize, limits)
        }
        GroupSpec::Dicyclic { n } => FiniteGroup::dicyclic(to_usize(*n, limits)?, limits),
        GroupSpec::Heisenberg { p } => FiniteGroup::heisenberg(to_usize(*p, limits)?, limits),
        GroupSpec::Symmetric { degree } => {
            let d = to_usize(*degree, limits)?;
            let transposition: Vec<usize> = (0..d)
                .map(|i| match i {
                    0 if d > 1 => 1,
                    1 => 0,
                    _ => i,
                })
                .collect();
            let cycle: Vec<usize> = (0..d).map(|i| (i + 1) % d).collect();
            FiniteGroup::from_permutations(d, &[transposition, cycle], limits)
        }
        GroupSpec::Permutation { degree, generators } => {
            FiniteGroup::from_permutations(to_usize(*degree, limits)?, generators, limits)
        }
        GroupSpec::Table { order, table } => {
            limits_check(*order, limits)?;
            FiniteGroup::from_table(table)
        }
        GroupSpec::Product { factors } => {
            let mut acc = build(&factors[0], limits)?;
            for f in &factors[1..] {
                let next = build(f, limits)?;
                acc = FiniteGroup::direct_product(&acc, &next, limits)?;
            }
            Ok(acc)
        }
        GroupSpec::Quotient {
            group,
            normal_generators,
        } => {
            let g = build(group, limits)?;
            let n = g.subgroup_generated(normal_generators, false)?;
            g.quotient(&n)
        }
    }
}

fn limits_check(order: u64, limits: &Limits) -> Result<()> {
    if order > limits.max_order as u64 {
        Err(Error::OrderCapExceeded {
            limit: limits.max_order,
        })
    } else {
        Ok(())
    }
}

/// Index of `a^i b^j` in a metacyclic or dicyclic group whose `a` has order
/// `a_order`.
pub fn normal_form_index(a_order: u64, i: u64, j: u64) -> usize {
    (i + a_order * j) as usize
}

/// `r⁻¹ mod m`, the twist used by the metacyclic normal form.
pub fn metacyclic_twist(m: u64, r: u64) -> Option<u64> {
    inv_mod(r, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    fn a_b(g: &FiniteGroup, m: u64) -> (usize, usize) {
        (1 % g.order(), normal_form_index(m, 0, 1))
    }

    #[test]
    fn metacyclic_relations_hold() {
        for &(m, n, r) in &[
            (12u64, 2u64, 5u64),
            (9, 9, 4),
            (3, 2, 2),
            (8, 2, 3),
            (8, 2, 5),
            (7, 3, 2),
            (5, 4, 2),
        ] {
            let g = construct(&GroupSpec::metacyclic(m, n, r)).unwrap();
            assert_eq!(g.order() as u64, m * n);
            let (a, b) = a_b(&g, m);
            assert_eq!(g.element_order(a), m);
            assert_eq!(g.element_order(b), n);
            let lhs = g.mul(g.mul(g.inv(b), a), b);
            assert_eq!(lhs, g.power(a, r as i64), "b⁻¹ab = a^r in ({m},{n},{r})");
            g.validate().unwrap();
        }
    }

    #[test]
    fn dicyclic_relations_hold() {
        for n in 1..6u64 {
            let g = construct(&GroupSpec::dicyclic(n)).unwrap();
            assert_eq!(g.order() as u64, 4 * n);
            let (a, b) = (1, normal_form_index(2 * n, 0, 1));
            assert_eq!(g.power(b, 2), g.power(a, n as i64));
            assert_eq!(g.mul(g.mul(g.inv(b), a), b), g.inv(a));
            g.validate().unwrap();
        }
        let q8 = construct(&GroupSpec::dicyclic(2)).unwrap();
        let involutions = (0..8).filter(|&x| q8.element_order(x) == 2).count();
        assert_eq!(involutions, 1);
    }

    #[test]
    fn semidihedral_and_modular_differ() {
        let sd = construct(&GroupSpec::metacyclic(8, 2, 3)).unwrap();
        let md = construct(&GroupSpec::metacyclic(8, 2, 5)).unwrap();
        assert_eq!(sd.conjugacy().num_classes(), 7);
        assert_eq!(md.conjugacy().num_classes(), 10);
    }

    #[test]
    fn parameter_errors() {
        let err = construct(&GroupSpec::metacyclic(9, 2, 4)).unwrap_err();
        match err {
            Error::InvalidMetacyclicParameters { reason, .. } => {
                assert!(reason.contains("≡ 7"), "{reason}")
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            construct(&GroupSpec::metacyclic(12, 2, 3)).unwrap_err(),
            Error::InvalidMetacyclicParameters { .. }
        ));
        assert_eq!(
            construct(&GroupSpec::heisenberg(9)).unwrap_err(),
            Error::NotAPrime(9)
        );
        assert_eq!(
            construct(&GroupSpec::heisenberg(2)).unwrap_err(),
            Error::NotAPrime(2)
        );
        assert!(matches!(
            construct(&GroupSpec::cyclic(0)).unwrap_err(),
            Error::InvalidParameters(_)
        ));
        assert_eq!(
            construct_with(&GroupSpec::cyclic(100), &Limits::new(50)).unwrap_err(),
            Error::OrderCapExceeded { limit: 50 }
        );
        assert_eq!(
            construct_with(&GroupSpec::symmetric(6), &Limits::new(100)).unwrap_err(),
            Error::OrderCapExceeded { limit: 100 }
        );
    }

    #[test]
    fn small_families() {
        assert_eq!(construct(&GroupSpec::cyclic(1)).unwrap().order(), 1);
        assert_eq!(construct(&GroupSpec::symmetric(1)).unwrap().order(), 1);
        assert_eq!(construct(&GroupSpec::symmetric(2)).unwrap().order(), 2);
        assert_eq!(construct(&GroupSpec::symmetric(4)).unwrap().order(), 24);
        let h = construct(&GroupSpec::heisenberg(3)).unwrap();
        assert_eq!(h.order(), 27);
        assert_eq!(h.exponent(), 3);
        let ab = construct(&GroupSpec::abelian(&[2, 4])).unwrap();
        assert_eq!(ab.exponent(), 4);
        assert!(ab.is_abelian());
    }

    #[test]
    fn quotient_by_non_normal_subgroup_fails() {
        // In S3 built from (0 1) and (0 1 2), index 1 is the transposition.
        let s3 = construct(&GroupSpec::symmetric(3)).unwrap();
        assert_eq!(s3.label(1), "(0 1)");
        let err = construct(&GroupSpec::quotient(GroupSpec::symmetric(3), vec![1])).unwrap_err();
        assert_eq!(err, Error::NotNormal);
    }
}
