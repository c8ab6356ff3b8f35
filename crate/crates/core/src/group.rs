//! Finite groups on indexed elements.
//!
//! A [`FiniteGroup`] has elements `0..order`, with `0` always the identity.
//! Multiplication is delegated to a backend: an explicit Cayley table, a set
//! of permutations, a closed-form normal form for the built-in families, or
//! a structural combination of other groups (direct product, quotient,
//! subgroup). Only the table backend stores `order²` entries, so products and
//! permutation groups of a few thousand elements stay cheap.
//!
//! Every group carries its conjugacy partition, computed when the group is
//! built. Groups are immutable and cheap to clone (the state lives behind an
//! `Arc`), so they can be shared freely across threads.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Default cap on the order of any group this crate will build.
pub const DEFAULT_MAX_ORDER: usize = 65_536;

/// Environment variable that overrides [`DEFAULT_MAX_ORDER`].
pub const MAX_ORDER_ENV: &str = "CUTLAB_MAX_ORDER";

const FULL_ASSOCIATIVITY_LIMIT: usize = 256;
const ASSOCIATIVITY_SAMPLES: usize = 10_000;
const ASSOCIATIVITY_SEED: u64 = 0xC07;

/// Resource limits applied while building groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_order: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: DEFAULT_MAX_ORDER,
        }
    }
}

impl Limits {
    pub fn new(max_order: usize) -> Self {
        Limits { max_order }
    }

    /// Default limits, with `CUTLAB_MAX_ORDER` applied when it parses.
    pub fn from_env() -> Self {
        std::env::var(MAX_ORDER_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(Limits::new)
            .unwrap_or_default()
    }

    fn check(&self, order: usize) -> Result<()> {
        if order > self.max_order {
            Err(Error::OrderCapExceeded {
                limit: self.max_order,
            })
        } else {
            Ok(())
        }
    }
}

/// Conjugacy classes of a group.
///
/// Class ids are assigned in increasing order of their smallest member, so
/// class `0` is always `{identity}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyPartition {
    class_of: Vec<usize>,
    representatives: Vec<usize>,
    class_members: Vec<Vec<usize>>,
    inverse_class: Vec<usize>,
}

impl ConjugacyPartition {
    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn num_classes(&self) -> usize {
        self.representatives.len()
    }

    /// Smallest element index of each class, indexed by class id.
    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    pub fn representative(&self, class: usize) -> usize {
        self.representatives[class]
    }

    /// Sorted members of a class.
    pub fn members(&self, class: usize) -> &[usize] {
        &self.class_members[class]
    }

    pub fn class_size(&self, class: usize) -> usize {
        self.class_members[class].len()
    }

    /// Class id holding the inverses of the members of `class`.
    pub fn inverse_class(&self, class: usize) -> usize {
        self.inverse_class[class]
    }
}

#[derive(Debug)]
enum Backend {
    Table {
        n: usize,
        flat: Vec<u32>,
    },
    Permutation {
        degree: usize,
        images: Vec<u32>,
        index: HashMap<Box<[u32]>, u32>,
    },
    /// Mixed radix over the factors, first factor least significant.
    Abelian {
        factors: Vec<usize>,
    },
    /// `a^i b^j` at index `i + m*j`; `twist[j] = t^j mod m` with `t = r⁻¹`.
    Metacyclic {
        m: usize,
        n: usize,
        twist: Vec<usize>,
    },
    /// `a^i b^j` at index `i + 2n*j`, `j ∈ {0,1}`.
    Dicyclic {
        n: usize,
    },
    /// `(x, y, z)` at index `x + p*y + p²*z`.
    Heisenberg {
        p: usize,
    },
    Product {
        left: FiniteGroup,
        right: FiniteGroup,
    },
    Quotient {
        parent: FiniteGroup,
        reps: Vec<usize>,
        coset_of: Vec<u32>,
    },
    Subgroup {
        parent: FiniteGroup,
        members: Vec<usize>,
        position: Vec<u32>,
    },
}

struct Inner {
    order: usize,
    backend: Backend,
    inverse: Vec<usize>,
    generators: Vec<usize>,
    conjugacy: ConjugacyPartition,
    orders: OnceLock<Vec<u64>>,
}

/// An immutable finite group with elements `0..order()`.
#[derive(Clone)]
pub struct FiniteGroup {
    inner: Arc<Inner>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order())
            .field("generators", &self.generators())
            .field("classes", &self.conjugacy().num_classes())
            .finish()
    }
}

impl FiniteGroup {
    fn assemble(order: usize, backend: Backend, generators: Vec<usize>) -> FiniteGroup {
        let inverse = compute_inverses(order, &backend);
        let conjugacy = orbit_partition(order, &backend, &inverse, &generators);
        FiniteGroup {
            inner: Arc::new(Inner {
                order,
                backend,
                inverse,
                generators,
                conjugacy,
                orders: OnceLock::new(),
            }),
        }
    }

    /// Builds a group from a full Cayley table.
    ///
    /// If the identity is not element 0 it is swapped into place first. The
    /// table is then checked for closure, the Latin-square property, the
    /// identity and inverses, and associativity (all triples up to order 256,
    /// a fixed-seed sample of 10,000 triples beyond that).
    pub fn from_table(table: &[Vec<usize>]) -> Result<FiniteGroup> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAGroup(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if let Some((j, &v)) = row.iter().enumerate().find(|(_, &v)| v >= n) {
                return Err(Error::NotAGroup(format!(
                    "entry ({i}, {j}) = {v} is out of range"
                )));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::NotAGroup("no two-sided identity".into()))?;
        // Relabel so that the identity sits at index 0.
        let swap = |x: usize| {
            if x == identity {
                0
            } else if x == 0 {
                identity
            } else {
                x
            }
        };
        let mut flat = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                flat[a * n + b] = swap(table[swap(a)][swap(b)]) as u32;
            }
        }
        check_latin(n, &flat)?;
        check_associative(n, |a, b| flat[a * n + b] as usize)?;
        let generators = greedy_generators(n, |a, b| flat[a * n + b] as usize);
        Ok(FiniteGroup::assemble(
            n,
            Backend::Table { n, flat },
            generators,
        ))
    }

    /// Closure of a set of permutations of `0..degree`.
    ///
    /// Elements are numbered in breadth-first discovery order starting from
    /// the identity. The product `x·y` applies `x` first, then `y`.
    pub fn from_permutations(
        degree: usize,
        gens: &[Vec<usize>],
        limits: &Limits,
    ) -> Result<FiniteGroup> {
        if degree == 0 {
            return Err(Error::InvalidParameters("degree must be positive".into()));
        }
        let mut perms: Vec<Vec<u32>> = Vec::with_capacity(gens.len());
        for (g, image) in gens.iter().enumerate() {
            let mut seen = vec![false; degree];
            let ok = image.len() == degree
                && image
                    .iter()
                    .all(|&v| v < degree && !std::mem::replace(&mut seen[v], true));
            if !ok {
                return Err(Error::NotAPermutation {
                    generator: g,
                    degree,
                });
            }
            perms.push(image.iter().map(|&v| v as u32).collect());
        }
        let identity: Vec<u32> = (0..degree as u32).collect();
        let mut images = identity.clone();
        let mut index: HashMap<Box<[u32]>, u32> = HashMap::new();
        index.insert(identity.into_boxed_slice(), 0);
        let mut count = 1usize;
        let mut head = 0usize;
        while head < count {
            for p in &perms {
                let cur = &images[head * degree..(head + 1) * degree];
                let next: Box<[u32]> = cur.iter().map(|&i| p[i as usize]).collect();
                if let Entry::Vacant(slot) = index.entry(next) {
                    limits.check(count + 1)?;
                    images.extend_from_slice(slot.key());
                    slot.insert(count as u32);
                    count += 1;
                }
            }
            head += 1;
        }
        let mut generators: Vec<usize> = Vec::new();
        for p in &perms {
            let g = index[p.as_slice()] as usize;
            if g != 0 && !generators.contains(&g) {
                generators.push(g);
            }
        }
        if generators.is_empty() {
            generators.push(0);
        }
        Ok(FiniteGroup::assemble(
            count,
            Backend::Permutation {
                degree,
                images,
                index,
            },
            generators,
        ))
    }

    /// Direct product of cyclic groups of the given orders.
    pub(crate) fn abelian(factors: &[usize], limits: &Limits) -> Result<FiniteGroup> {
        let mut order = 1usize;
        for &f in factors {
            if f == 0 {
                return Err(Error::InvalidParameters(
                    "cyclic factors must be positive".into(),
                ));
            }
            order = order.checked_mul(f).ok_or(Error::OrderCapExceeded {
                limit: limits.max_order,
            })?;
            limits.check(order)?;
        }
        let factors: Vec<usize> = factors.iter().copied().filter(|&f| f > 1).collect();
        let mut generators = Vec::new();
        let mut stride = 1;
        for &f in &factors {
            generators.push(stride);
            stride *= f;
        }
        if generators.is_empty() {
            generators.push(0);
        }
        Ok(FiniteGroup::assemble(
            order,
            Backend::Abelian { factors },
            generators,
        ))
    }

    /// `⟨a, b | a^m, b^n, b⁻¹ab = a^r⟩`; parameters are validated by the caller.
    pub(crate) fn metacyclic(m: usize, n: usize, r: usize, limits: &Limits) -> Result<FiniteGroup> {
        let order = m.checked_mul(n).ok_or(Error::OrderCapExceeded {
            limit: limits.max_order,
        })?;
        limits.check(order)?;
        let t = crate::arith::inv_mod(r as u64, m as u64).expect("r is a unit mod m") as usize;
        let mut twist = Vec::with_capacity(n);
        let mut acc = 1 % m;
        for _ in 0..n {
            twist.push(acc);
            acc = acc * t % m;
        }
        let mut generators = Vec::new();
        if m > 1 {
            generators.push(1);
        }
        if n > 1 {
            generators.push(m);
        }
        if generators.is_empty() {
            generators.push(0);
        }
        Ok(FiniteGroup::assemble(
            order,
            Backend::Metacyclic { m, n, twist },
            generators,
        ))
    }

    pub(crate) fn dicyclic(n: usize, limits: &Limits) -> Result<FiniteGroup> {
        let order = n.checked_mul(4).ok_or(Error::OrderCapExceeded {
            limit: limits.max_order,
        })?;
        limits.check(order)?;
        Ok(FiniteGroup::assemble(
            order,
            Backend::Dicyclic { n },
            vec![1, 2 * n],
        ))
    }

    pub(crate) fn heisenberg(p: usize, limits: &Limits) -> Result<FiniteGroup> {
        let order =
            p.checked_mul(p)
                .and_then(|q| q.checked_mul(p))
                .ok_or(Error::OrderCapExceeded {
                    limit: limits.max_order,
                })?;
        limits.check(order)?;
        Ok(FiniteGroup::assemble(
            order,
            Backend::Heisenberg { p },
            vec![1, p],
        ))
    }

    /// `G × H` with `(g, h)` at index `g·|H| + h`.
    pub fn direct_product(
        g: &FiniteGroup,
        h: &FiniteGroup,
        limits: &Limits,
    ) -> Result<FiniteGroup> {
        let order = g
            .order()
            .checked_mul(h.order())
            .ok_or(Error::OrderCapExceeded {
                limit: limits.max_order,
            })?;
        limits.check(order)?;
        let hn = h.order();
        let mut generators: Vec<usize> = g
            .generators()
            .iter()
            .filter(|&&x| x != 0)
            .map(|&x| x * hn)
            .chain(h.generators().iter().filter(|&&y| y != 0).copied())
            .collect();
        if generators.is_empty() {
            generators.push(0);
        }
        Ok(FiniteGroup::assemble(
            order,
            Backend::Product {
                left: g.clone(),
                right: h.clone(),
            },
            generators,
        ))
    }

    /// `G/N` for a normal subgroup `N` of this group.
    ///
    /// Cosets are numbered by increasing smallest member, which is kept as
    /// the coset representative.
    pub fn quotient(&self, normal: &Subgroup) -> Result<FiniteGroup> {
        if !normal.is_normal() || !Arc::ptr_eq(&normal.parent.inner, &self.inner) {
            return Err(Error::NotNormal);
        }
        let n = self.order();
        let mut coset_of = vec![u32::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n {
            if coset_of[x] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(x);
            for &m in normal.members() {
                coset_of[self.mul(x, m)] = id;
            }
        }
        let mut generators: Vec<usize> = Vec::new();
        for &g in self.generators() {
            let c = coset_of[g] as usize;
            if c != 0 && !generators.contains(&c) {
                generators.push(c);
            }
        }
        if generators.is_empty() {
            generators.push(0);
        }
        Ok(FiniteGroup::assemble(
            reps.len(),
            Backend::Quotient {
                parent: self.clone(),
                reps,
                coset_of,
            },
            generators,
        ))
    }

    pub fn order(&self) -> usize {
        self.inner.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn generators(&self) -> &[usize] {
        &self.inner.generators
    }

    pub fn conjugacy(&self) -> &ConjugacyPartition {
        &self.inner.conjugacy
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.inner.conjugacy.class_of(x)
    }

    pub fn are_conjugate(&self, x: usize, y: usize) -> bool {
        self.class_of(x) == self.class_of(y)
    }

    pub fn inv(&self, x: usize) -> usize {
        self.inner.inverse[x]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        backend_mul(&self.inner.backend, a, b)
    }

    /// `x^k` by square-and-multiply; negative `k` powers the inverse.
    pub fn power(&self, x: usize, k: i64) -> usize {
        let (mut base, mut e) = if k < 0 {
            (self.inv(x), k.unsigned_abs())
        } else {
            (x, k as u64)
        };
        let mut acc = 0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Least `k ≥ 1` with `x^k = 1`.
    pub fn element_order(&self, x: usize) -> u64 {
        self.element_orders()[x]
    }

    pub fn element_orders(&self) -> &[u64] {
        self.inner.orders.get_or_init(|| {
            (0..self.order())
                .map(|x| {
                    let mut k = 1u64;
                    let mut y = x;
                    while y != 0 {
                        y = self.mul(y, x);
                        k += 1;
                    }
                    k
                })
                .collect()
        })
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        self.element_orders()
            .iter()
            .fold(1, |acc, &o| acc / crate::arith::gcd(acc, o) * o)
    }

    /// `x·y·x⁻¹·y⁻¹`.
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        let xy = self.mul(x, y);
        let xyx = self.mul(xy, self.inv(x));
        self.mul(xyx, self.inv(y))
    }

    /// `g⁻¹·x·g`.
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Human-readable name of an element: normal forms for the built-in
    /// families, cycle notation for permutations, raw indices for tables.
    pub fn label(&self, x: usize) -> String {
        match &self.inner.backend {
            Backend::Table { .. } => x.to_string(),
            Backend::Permutation { degree, images, .. } => {
                cycle_notation(&images[x * degree..(x + 1) * degree])
            }
            Backend::Abelian { factors } => {
                let digits = mixed_radix(x, factors);
                match digits.len() {
                    0 => "1".into(),
                    1 => power_label("x", digits[0]),
                    _ => format!(
                        "({})",
                        digits
                            .iter()
                            .map(|d| d.to_string())
                            .collect::<Vec<_>>()
                            .join(",")
                    ),
                }
            }
            Backend::Metacyclic { m, .. } => ab_label(x % m, x / m),
            Backend::Dicyclic { n } => ab_label(x % (2 * n), x / (2 * n)),
            Backend::Heisenberg { p } => format!("({},{},{})", x % p, (x / p) % p, x / (p * p)),
            Backend::Product { left, right } => {
                let h = right.order();
                format!("({}, {})", left.label(x / h), right.label(x % h))
            }
            Backend::Quotient { parent, reps, .. } => format!("[{}]", parent.label(reps[x])),
            Backend::Subgroup {
                parent, members, ..
            } => parent.label(members[x]),
        }
    }

    /// Index of the element with the given image sequence, for permutation
    /// groups only.
    pub fn element_from_permutation(&self, image: &[usize]) -> Option<usize> {
        match &self.inner.backend {
            Backend::Permutation { index, .. } => {
                let key: Vec<u32> = image.iter().map(|&v| v as u32).collect();
                index.get(key.as_slice()).map(|&i| i as usize)
            }
            _ => None,
        }
    }

    /// Materializes the Cayley table (row-major, `table[a][b] = a·b`).
    pub fn cayley_table(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        (0..n)
            .map(|a| (0..n).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    /// Re-checks the group axioms on this group's multiplication.
    ///
    /// Associativity is checked on all triples up to order 256 and on a
    /// seeded sample of 10,000 triples beyond that.
    pub fn validate(&self) -> Result<()> {
        let n = self.order();
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return Err(Error::NotAGroup(format!("0 is not an identity for {a}")));
            }
            if self.mul(a, self.inv(a)) != 0 || self.mul(self.inv(a), a) != 0 {
                return Err(Error::NotAGroup(format!("{a} has no inverse")));
            }
        }
        let mut flat = Vec::new();
        if n <= 4096 {
            flat = (0..n * n).map(|i| self.mul(i / n, i % n) as u32).collect();
            check_latin(n, &flat)?;
        }
        if flat.is_empty() {
            check_associative(n, |a, b| self.mul(a, b))
        } else {
            check_associative(n, |a, b| flat[a * n + b] as usize)
        }?;
        let closure = closure_of(n, self.generators(), |a, b| self.mul(a, b));
        if closure.len() != n {
            return Err(Error::NotAGroup(format!(
                "generators span only {} of {n} elements",
                closure.len()
            )));
        }
        Ok(())
    }

    /// Center as a subgroup: the elements commuting with every generator.
    pub fn center(&self) -> Subgroup {
        let members: Vec<usize> = (0..self.order())
            .filter(|&z| {
                self.generators()
                    .iter()
                    .all(|&g| self.mul(z, g) == self.mul(g, z))
            })
            .collect();
        let gens = greedy_subset_generators(self, &members);
        Subgroup::from_members(self, members, gens, Some(true))
    }

    /// Subgroup generated by `elements`, or their normal closure when
    /// `normal_closure` is set.
    pub fn subgroup_generated(&self, elements: &[usize], normal_closure: bool) -> Result<Subgroup> {
        if let Some(&bad) = elements.iter().find(|&&x| x >= self.order()) {
            return Err(Error::ElementOutOfRange {
                index: bad,
                order: self.order(),
            });
        }
        let seeds: Vec<usize> = if normal_closure {
            let mut classes: Vec<usize> = elements.iter().map(|&x| self.class_of(x)).collect();
            classes.sort_unstable();
            classes.dedup();
            classes
                .iter()
                .flat_map(|&c| self.conjugacy().members(c).iter().copied())
                .collect()
        } else {
            elements.to_vec()
        };
        let mut builder = ClosureBuilder::new(self);
        for s in seeds {
            builder.add(s);
        }
        let (members, gens) = builder.finish();
        Ok(Subgroup::from_members(
            self,
            members,
            gens,
            if normal_closure { Some(true) } else { None },
        ))
    }

    /// The set `[x, G] = { x·g·x⁻¹·g⁻¹ : g ∈ G }` (sorted, deduplicated)
    /// together with the normal subgroup it generates.
    pub fn commutator_of_element(&self, x: usize) -> (Vec<usize>, Subgroup) {
        let mut seen = vec![false; self.order()];
        for g in 0..self.order() {
            seen[self.commutator(x, g)] = true;
        }
        let set: Vec<usize> = (0..self.order()).filter(|&c| seen[c]).collect();
        let sub = self
            .subgroup_generated(&set, true)
            .expect("commutators are in range");
        (set, sub)
    }

    /// Subgroup `[A, B]` for normal subgroups `A` and `B`.
    ///
    /// Computed as the normal closure of the commutators of the generators
    /// of `A` and `B`.
    pub fn commutator_subgroup(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut comms: Vec<usize> = Vec::new();
        for &x in a.generators() {
            for &y in b.generators() {
                comms.push(self.commutator(x, y));
            }
        }
        comms.sort_unstable();
        comms.dedup();
        self.subgroup_generated(&comms, true)
            .expect("commutators are in range")
    }

    /// The whole group as a subgroup of itself.
    pub fn whole(&self) -> Subgroup {
        Subgroup::from_members(
            self,
            (0..self.order()).collect(),
            self.generators().to_vec(),
            Some(true),
        )
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_members(self, vec![0], vec![], Some(true))
    }
}

/// A subgroup of a [`FiniteGroup`], stored as a sorted member list.
#[derive(Clone)]
pub struct Subgroup {
    parent: FiniteGroup,
    members: Vec<usize>,
    mask: Vec<bool>,
    gens: Vec<usize>,
    is_normal: bool,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup")
            .field("order", &self.order())
            .field("members", &self.members)
            .field("is_normal", &self.is_normal)
            .finish()
    }
}

impl Subgroup {
    fn from_members(
        parent: &FiniteGroup,
        members: Vec<usize>,
        gens: Vec<usize>,
        known_normal: Option<bool>,
    ) -> Subgroup {
        let mut mask = vec![false; parent.order()];
        for &m in &members {
            mask[m] = true;
        }
        let is_normal = known_normal.unwrap_or_else(|| {
            parent.generators().iter().all(|&g| {
                members
                    .iter()
                    .all(|&m| mask[parent.mul(parent.mul(g, m), parent.inv(g))])
            })
        });
        Subgroup {
            parent: parent.clone(),
            members,
            mask,
            gens,
            is_normal,
        }
    }

    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }

    pub fn is_normal(&self) -> bool {
        self.is_normal
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    /// A generating set (empty for the trivial subgroup).
    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    /// This subgroup as a group in its own right.
    ///
    /// Element `i` of the result is the `i`-th smallest member, so the
    /// identity stays at index 0.
    pub fn to_group(&self) -> FiniteGroup {
        let mut position = vec![u32::MAX; self.parent.order()];
        for (i, &m) in self.members.iter().enumerate() {
            position[m] = i as u32;
        }
        let mut generators: Vec<usize> = self.gens.iter().map(|&g| position[g] as usize).collect();
        if generators.is_empty() {
            generators.push(0);
        }
        FiniteGroup::assemble(
            self.members.len(),
            Backend::Subgroup {
                parent: self.parent.clone(),
                members: self.members.clone(),
                position,
            },
            generators,
        )
    }
}

/// Incremental closure under multiplication.
///
/// Adding an element outside the current subgroup extends the member list by
/// multiplying everything found so far by the enlarged generator set.
pub(crate) struct ClosureBuilder<'g> {
    group: &'g FiniteGroup,
    mask: Vec<bool>,
    members: Vec<usize>,
    gens: Vec<usize>,
}

impl<'g> ClosureBuilder<'g> {
    pub(crate) fn new(group: &'g FiniteGroup) -> Self {
        let mut mask = vec![false; group.order()];
        mask[0] = true;
        ClosureBuilder {
            group,
            mask,
            members: vec![0],
            gens: Vec::new(),
        }
    }

    /// Returns whether `x` was new.
    pub(crate) fn add(&mut self, x: usize) -> bool {
        if self.mask[x] {
            return false;
        }
        self.gens.push(x);
        let mut head = 0;
        while head < self.members.len() {
            let y = self.members[head];
            for &g in &self.gens {
                let z = self.group.mul(y, g);
                if !self.mask[z] {
                    self.mask[z] = true;
                    self.members.push(z);
                }
            }
            head += 1;
        }
        true
    }

    pub(crate) fn finish(mut self) -> (Vec<usize>, Vec<usize>) {
        self.members.sort_unstable();
        (self.members, self.gens)
    }
}

fn greedy_subset_generators(group: &FiniteGroup, members: &[usize]) -> Vec<usize> {
    let mut builder = ClosureBuilder::new(group);
    for &m in members {
        builder.add(m);
    }
    builder.finish().1
}

fn backend_mul(backend: &Backend, a: usize, b: usize) -> usize {
    match backend {
        Backend::Table { n, flat } => flat[a * n + b] as usize,
        Backend::Permutation {
            degree,
            images,
            index,
        } => {
            let d = *degree;
            let x = &images[a * d..(a + 1) * d];
            let y = &images[b * d..(b + 1) * d];
            let mut buf = [0u32; 32];
            if d <= buf.len() {
                for (slot, &i) in buf.iter_mut().zip(x) {
                    *slot = y[i as usize];
                }
                index[&buf[..d]] as usize
            } else {
                let composed: Vec<u32> = x.iter().map(|&i| y[i as usize]).collect();
                index[composed.as_slice()] as usize
            }
        }
        Backend::Abelian { factors } => {
            let mut out = 0;
            let mut stride = 1;
            let (mut a, mut b) = (a, b);
            for &f in factors {
                out += ((a % f + b % f) % f) * stride;
                a /= f;
                b /= f;
                stride *= f;
            }
            out
        }
        Backend::Metacyclic { m, n, twist } => {
            let (i, j) = (a % m, a / m);
            let (k, l) = (b % m, b / m);
            (i + k * twist[j]) % m + ((j + l) % n) * m
        }
        Backend::Dicyclic { n } => {
            let two_n = 2 * n;
            let (i, j) = (a % two_n, a / two_n);
            let (k, l) = (b % two_n, b / two_n);
            let k = if j == 1 { (two_n - k) % two_n } else { k };
            let mut e = i + k;
            let mut s = j + l;
            if s == 2 {
                e += n;
                s = 0;
            }
            e % two_n + s * two_n
        }
        Backend::Heisenberg { p } => {
            let p = *p;
            let (x, y, z) = (a % p, (a / p) % p, a / (p * p));
            let (x2, y2, z2) = (b % p, (b / p) % p, b / (p * p));
            (x + x2) % p + ((y + y2) % p) * p + ((z + z2 + x * y2) % p) * p * p
        }
        Backend::Product { left, right } => {
            let h = right.order();
            left.mul(a / h, b / h) * h + right.mul(a % h, b % h)
        }
        Backend::Quotient {
            parent,
            reps,
            coset_of,
        } => coset_of[parent.mul(reps[a], reps[b])] as usize,
        Backend::Subgroup {
            parent,
            members,
            position,
        } => position[parent.mul(members[a], members[b])] as usize,
    }
}

fn compute_inverses(order: usize, backend: &Backend) -> Vec<usize> {
    match backend {
        Backend::Table { flat, .. } => (0..order)
            .map(|a| {
                (0..order)
                    .find(|&b| flat[a * order + b] == 0)
                    .expect("Latin square has an inverse in every row")
            })
            .collect(),
        Backend::Product { left, right } => {
            let h = right.order();
            (0..order)
                .map(|x| left.inv(x / h) * h + right.inv(x % h))
                .collect()
        }
        Backend::Quotient {
            parent,
            reps,
            coset_of,
        } => reps
            .iter()
            .map(|&r| coset_of[parent.inv(r)] as usize)
            .collect(),
        Backend::Subgroup {
            parent,
            members,
            position,
        } => members
            .iter()
            .map(|&m| position[parent.inv(m)] as usize)
            .collect(),
        _ => (0..order)
            .map(|x| {
                // The last power before returning to the identity.
                let mut prev = 0;
                let mut y = x;
                while y != 0 {
                    prev = y;
                    y = backend_mul(backend, y, x);
                }
                prev
            })
            .collect(),
    }
}

/// Orbits of conjugation by the generators, found breadth-first.
fn orbit_partition(
    order: usize,
    backend: &Backend,
    inverse: &[usize],
    generators: &[usize],
) -> ConjugacyPartition {
    let mut class_of = vec![usize::MAX; order];
    let mut representatives = Vec::new();
    let mut class_members = Vec::new();
    let mut queue = VecDeque::new();
    for x in 0..order {
        if class_of[x] != usize::MAX {
            continue;
        }
        let id = representatives.len();
        representatives.push(x);
        class_of[x] = id;
        let mut members = vec![x];
        queue.push_back(x);
        while let Some(y) = queue.pop_front() {
            for &g in generators {
                let z = backend_mul(backend, backend_mul(backend, inverse[g], y), g);
                if class_of[z] == usize::MAX {
                    class_of[z] = id;
                    members.push(z);
                    queue.push_back(z);
                }
            }
        }
        members.sort_unstable();
        class_members.push(members);
    }
    let inverse_class = representatives
        .iter()
        .map(|&r| class_of[inverse[r]])
        .collect();
    ConjugacyPartition {
        class_of,
        representatives,
        class_members,
        inverse_class,
    }
}

fn check_latin(n: usize, flat: &[u32]) -> Result<()> {
    let mut seen = vec![usize::MAX; n];
    for a in 0..n {
        for b in 0..n {
            let v = flat[a * n + b] as usize;
            if seen[v] == a {
                return Err(Error::NotAGroup(format!(
                    "row {a} repeats value {v} (column {b})"
                )));
            }
            seen[v] = a;
        }
    }
    seen.iter_mut().for_each(|s| *s = usize::MAX);
    for b in 0..n {
        for a in 0..n {
            let v = flat[a * n + b] as usize;
            if seen[v] == b {
                return Err(Error::NotAGroup(format!(
                    "column {b} repeats value {v} (row {a})"
                )));
            }
            seen[v] = b;
        }
    }
    Ok(())
}

fn check_associative(n: usize, mul: impl Fn(usize, usize) -> usize) -> Result<()> {
    let fail = |a, b, c| {
        Err(Error::NotAGroup(format!(
            "associativity fails for ({a}, {b}, {c})"
        )))
    };
    if n <= FULL_ASSOCIATIVITY_LIMIT {
        for a in 0..n {
            for b in 0..n {
                let ab = mul(a, b);
                for c in 0..n {
                    if mul(ab, c) != mul(a, mul(b, c)) {
                        return fail(a, b, c);
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(ASSOCIATIVITY_SEED);
        for _ in 0..ASSOCIATIVITY_SAMPLES {
            let (a, b, c) = (
                rng.gen_range(0..n),
                rng.gen_range(0..n),
                rng.gen_range(0..n),
            );
            if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                return fail(a, b, c);
            }
        }
    }
    Ok(())
}

fn closure_of(n: usize, gens: &[usize], mul: impl Fn(usize, usize) -> usize) -> Vec<usize> {
    let mut mask = vec![false; n];
    mask[0] = true;
    let mut members = vec![0];
    let mut head = 0;
    while head < members.len() {
        let y = members[head];
        for &g in gens {
            let z = mul(y, g);
            if !mask[z] {
                mask[z] = true;
                members.push(z);
            }
        }
        head += 1;
    }
    members
}

/// Adds the smallest element outside the current closure until the whole
/// group is reached.
fn greedy_generators(n: usize, mul: impl Fn(usize, usize) -> usize) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut mask = vec![false; n];
    mask[0] = true;
    let mut members = vec![0];
    while members.len() < n {
        let next = (0..n).find(|&x| !mask[x]).expect("closure is incomplete");
        gens.push(next);
        let mut head = 0;
        while head < members.len() {
            let y = members[head];
            for &g in &gens {
                let z = mul(y, g);
                if !mask[z] {
                    mask[z] = true;
                    members.push(z);
                }
            }
            head += 1;
        }
    }
    if gens.is_empty() {
        gens.push(0);
    }
    gens
}

fn mixed_radix(mut x: usize, factors: &[usize]) -> Vec<usize> {
    factors
        .iter()
        .map(|&f| {
            let d = x % f;
            x /= f;
            d
        })
        .collect()
}

fn power_label(base: &str, e: usize) -> String {
    match e {
        0 => "1".into(),
        1 => base.into(),
        _ => format!("{base}^{e}"),
    }
}

fn ab_label(i: usize, j: usize) -> String {
    match (i, j) {
        (0, 0) => "1".into(),
        (_, 0) => power_label("a", i),
        (0, _) => power_label("b", j),
        _ => format!("{} {}", power_label("a", i), power_label("b", j)),
    }
}

fn cycle_notation(image: &[u32]) -> String {
    let mut seen = vec![false; image.len()];
    let mut out = String::new();
    for start in 0..image.len() {
        if seen[start] || image[start] as usize == start {
            continue;
        }
        out.push('(');
        let mut i = start;
        let mut first = true;
        while !seen[i] {
            seen[i] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&i.to_string());
            first = false;
            i = image[i] as usize;
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}
