//! Finite groups with fully enumerated elements.
//!
//! A [`Group`] is a Cayley table over the elements `0..order`, with `0` the
//! identity. Subgroups are bitsets of elements tagged with the id of their parent,
//! so a subgroup of one group never compares equal to a subgroup of another.

mod elemset;
mod iso;
mod section;
mod spec;
pub(crate) mod structure;

use std::collections::VecDeque;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

pub use elemset::ElemSet;
pub use iso::{find_isomorphism, homomorphisms, isomorphic, isomorphic_with, surjections, GroupInvariants};
pub use section::{is_normal_in, sections_up_to_conjugacy, Section};
pub use spec::{make_group, make_group_with};
pub use structure::{frattini, is_p_elementary, is_prime, o_p, p_group_prime, p_rank};

use crate::error::{Error, Result};
use crate::lattice::SubgroupLattice;

/// Element identifier: an index into the Cayley table.
pub type Elem = usize;

/// Size limits applied to construction and lattice enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub order_bound: usize,
    pub subgroup_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            order_bound: 256,
            subgroup_cap: 50_000,
        }
    }
}

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

struct GroupData {
    id: u64,
    name: String,
    order: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    elem_orders: Vec<u32>,
    limits: Limits,
    lattice: OnceLock<Result<SubgroupLattice>>,
}

/// A finite group. Cheap to clone; immutable after construction.
#[derive(Clone)]
pub struct Group(Arc<GroupData>);

impl Group {
    /// Builds a group from a row-major Cayley table. Element 0 must be the identity.
    pub fn from_table(name: impl Into<String>, order: usize, table: Vec<u32>, limits: Limits) -> Result<Group> {
        if order == 0 || table.len() != order * order {
            return Err(Error::Construction("Cayley table has the wrong size".into()));
        }
        if order > limits.order_bound {
            return Err(Error::Resource(format!(
                "group order {order} exceeds the order bound {}",
                limits.order_bound
            )));
        }
        let mut inv = vec![u32::MAX; order];
        for a in 0..order {
            if table[a] as usize != a || table[a * order] as usize != a {
                return Err(Error::Construction("element 0 is not the identity".into()));
            }
            for b in 0..order {
                if table[a * order + b] == 0 {
                    inv[a] = b as u32;
                    break;
                }
            }
            if inv[a] == u32::MAX {
                return Err(Error::Construction(format!("element {a} has no inverse")));
            }
        }
        let mut elem_orders = vec![0u32; order];
        for a in 0..order {
            let mut x = a;
            let mut k = 1;
            while x != 0 {
                x = table[x * order + a] as usize;
                k += 1;
                if k as usize > order {
                    return Err(Error::Construction(format!("element {a} has no finite order")));
                }
            }
            elem_orders[a] = k;
        }
        elem_orders[0] = 1;
        Ok(Group(Arc::new(GroupData {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            name: name.into(),
            order,
            table,
            inv,
            elem_orders,
            limits,
            lattice: OnceLock::new(),
        })))
    }

    pub fn trivial() -> Group {
        Group::from_table("C1", 1, vec![0], Limits::default()).expect("trivial group")
    }

    pub fn id(&self) -> u64 {
        self.0.id
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    /// Same group, new display name.
    pub fn renamed(&self, name: impl Into<String>) -> Group {
        Group::from_table(name, self.order(), self.0.table.clone(), self.0.limits).expect("valid table")
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    pub fn limits(&self) -> Limits {
        self.0.limits
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.0.order
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.0.table[a * self.0.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.0.inv[a] as usize
    }

    /// `g⁻¹·x·g`
    #[inline]
    pub fn conj(&self, x: Elem, g: Elem) -> Elem {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn elem_order(&self, a: Elem) -> usize {
        self.0.elem_orders[a] as usize
    }

    pub fn pow(&self, a: Elem, k: usize) -> Elem {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn table(&self) -> &[u32] {
        &self.0.table
    }

    /// Exhaustive check of closure, associativity, identity and inverses.
    pub fn verify_axioms(&self) -> bool {
        let n = self.order();
        let t = &self.0.table;
        if t.iter().any(|&x| x as usize >= n) {
            return false;
        }
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return false;
            }
            if self.mul(a, self.inv(a)) != 0 || self.mul(self.inv(a), a) != 0 {
                return false;
            }
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a + 1..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Order is a power of `p` (the trivial group counts for every `p`).
    pub fn is_p_group(&self, p: usize) -> bool {
        p_power_exponent(self.order(), p).is_some()
    }

    pub fn is_cyclic(&self) -> bool {
        let n = self.order();
        (0..n).any(|a| self.elem_order(a) == n)
    }

    /// Subgroup lattice, built on first use and cached.
    pub fn lattice(&self) -> Result<&SubgroupLattice> {
        self.0
            .lattice
            .get_or_init(|| SubgroupLattice::build(self))
            .as_ref()
            .map_err(|e| e.clone())
    }

    pub fn set(&self, elems: impl IntoIterator<Item = Elem>) -> ElemSet {
        ElemSet::from_elems(self.order(), elems)
    }

    /// The subgroup generated by `gens`.
    pub fn generate(&self, gens: &[Elem]) -> Subgroup {
        let mut start = ElemSet::empty(self.order());
        start.insert(0);
        self.subgroup_unchecked(self.close(start, gens))
    }

    /// Closure of a set that already contains the identity under right
    /// multiplication by `gens`.
    pub(crate) fn close(&self, mut set: ElemSet, gens: &[Elem]) -> ElemSet {
        let mut queue: VecDeque<Elem> = set.iter().collect();
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.mul(x, s);
                if set.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        set
    }

    /// Subgroup generated by a subgroup together with `g`.
    pub(crate) fn join_element(&self, base: &ElemSet, base_gens: &[Elem], g: Elem) -> ElemSet {
        let mut gens = base_gens.to_vec();
        gens.push(g);
        self.close(base.clone(), &gens)
    }

    /// Subgroup generated by two subgroups.
    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let gens: Vec<Elem> = b.members.iter().filter(|&x| !a.contains(x)).collect();
        let mut all = a.members.to_vec();
        all.extend(gens);
        let mut start = a.members.clone();
        start.insert(0);
        self.subgroup_unchecked(self.close(start, &all))
    }

    pub fn subgroup_unchecked(&self, members: ElemSet) -> Subgroup {
        Subgroup {
            group_id: self.id(),
            order: members.len(),
            members,
        }
    }

    /// Validates closure before wrapping `members` as a subgroup.
    pub fn subgroup(&self, members: ElemSet) -> Result<Subgroup> {
        if !members.contains(0) {
            return Err(Error::Precondition("subset lacks the identity".into()));
        }
        for a in members.iter() {
            for b in members.iter() {
                if !members.contains(self.mul(a, b)) {
                    return Err(Error::Precondition("subset is not closed".into()));
                }
            }
        }
        Ok(self.subgroup_unchecked(members))
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        self.subgroup_unchecked(self.set([0]))
    }

    pub fn whole(&self) -> Subgroup {
        self.subgroup_unchecked(ElemSet::full(self.order()))
    }

    pub fn owns(&self, h: &Subgroup) -> bool {
        h.group_id == self.id()
    }

    pub fn conjugate_set(&self, set: &ElemSet, g: Elem) -> ElemSet {
        let mut out = ElemSet::empty(self.order());
        for x in set.iter() {
            out.insert(self.conj(x, g));
        }
        out
    }

    pub fn conjugate(&self, h: &Subgroup, g: Elem) -> Subgroup {
        self.subgroup_unchecked(self.conjugate_set(&h.members, g))
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        let gens = self.generators_of(h);
        self.elements()
            .all(|g| gens.iter().all(|&x| h.contains(self.conj(x, g))))
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        let gens = self.generators_of(h);
        let members = self
            .elements()
            .filter(|&g| gens.iter().all(|&x| h.contains(self.conj(x, g))));
        self.subgroup_unchecked(self.set(members))
    }

    pub fn centralizer(&self, set: &ElemSet) -> Subgroup {
        let members = self
            .elements()
            .filter(|&g| set.iter().all(|x| self.mul(g, x) == self.mul(x, g)));
        self.subgroup_unchecked(self.set(members))
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer(&ElemSet::full(self.order()))
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let mut comms = Vec::new();
        let mut seen = ElemSet::empty(self.order());
        for a in self.elements() {
            for b in self.elements() {
                let c = self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b));
                if seen.insert(c) {
                    comms.push(c);
                }
            }
        }
        self.generate(&comms)
    }

    /// Set product `AB` of two subgroups, when it is a subgroup (e.g. one is normal).
    pub fn product(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut s = ElemSet::empty(self.order());
        for x in a.members.iter() {
            for y in b.members.iter() {
                s.insert(self.mul(x, y));
            }
        }
        self.subgroup_unchecked(s)
    }

    pub fn intersection(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        self.subgroup_unchecked(a.members.intersection(&b.members))
    }

    /// A small generating set: scans members by decreasing element order and keeps
    /// each one not already generated.
    pub fn generators_of(&self, h: &Subgroup) -> Vec<Elem> {
        let mut members = h.members.to_vec();
        members.sort_by_key(|&x| (std::cmp::Reverse(self.elem_order(x)), x));
        let mut gens = Vec::new();
        let mut cur = self.set([0]);
        for x in members {
            if cur.len() == h.order() {
                break;
            }
            if cur.contains(x) {
                continue;
            }
            cur = self.join_element(&cur, &gens, x);
            gens.push(x);
        }
        gens
    }

    pub fn generators(&self) -> Vec<Elem> {
        self.generators_of(&self.whole())
    }

    /// The subgroup as a group in its own right, plus the embedding
    /// (new element → old element). Members keep their relative order.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> (Group, Vec<Elem>) {
        let embed = h.members.to_vec();
        let mut back = vec![u32::MAX; self.order()];
        for (i, &x) in embed.iter().enumerate() {
            back[x] = i as u32;
        }
        let k = embed.len();
        let mut table = Vec::with_capacity(k * k);
        for &a in &embed {
            for &b in &embed {
                table.push(back[self.mul(a, b)]);
            }
        }
        let name = if h.order() == self.order() {
            self.name().to_string()
        } else {
            format!("{}<{}>", self.name(), h.order())
        };
        let g = Group::from_table(name, k, table, self.limits()).expect("subgroup table");
        (g, embed)
    }

    /// `G/N` and the canonical projection.
    pub fn quotient(&self, n: &Subgroup) -> Result<(Group, Homomorphism)> {
        if !self.owns(n) {
            return Err(Error::Precondition("subgroup of a different group".into()));
        }
        if !self.is_normal(n) {
            return Err(Error::NotNormal(format!("order-{} subgroup of {}", n.order(), self.name())));
        }
        let ord = self.order();
        let mut coset = vec![u32::MAX; ord];
        let mut reps = Vec::new();
        for g in self.elements() {
            if coset[g] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(g);
            for x in n.members.iter() {
                coset[self.mul(g, x)] = id;
            }
        }
        let k = reps.len();
        let mut table = Vec::with_capacity(k * k);
        for &a in &reps {
            for &b in &reps {
                table.push(coset[self.mul(a, b)]);
            }
        }
        let name = if n.order() == 1 {
            self.name().to_string()
        } else {
            format!("{}/{}", self.name(), n.order())
        };
        let q = Group::from_table(name, k, table, self.limits())?;
        let images = coset.iter().map(|&c| c as usize).collect();
        let proj = Homomorphism {
            source: self.clone(),
            target: q.clone(),
            images,
        };
        Ok((q, proj))
    }

    pub fn direct_product(&self, other: &Group) -> Result<Group> {
        let (m, n) = (self.order(), other.order());
        let ord = m * n;
        let limits = self.limits();
        if ord > limits.order_bound {
            return Err(Error::Resource(format!(
                "product order {ord} exceeds the order bound {}",
                limits.order_bound
            )));
        }
        let mut table = Vec::with_capacity(ord * ord);
        for a in 0..ord {
            let (a1, a2) = (a / n, a % n);
            for b in 0..ord {
                let (b1, b2) = (b / n, b % n);
                table.push((self.mul(a1, b1) * n + other.mul(a2, b2)) as u32);
            }
        }
        Group::from_table(format!("{}x{}", self.name(), other.name()), ord, table, limits)
    }
}

/// Identity of the underlying table: clones compare equal, separately
/// constructed copies do not.
impl PartialEq for Group {
    fn eq(&self, other: &Group) -> bool {
        self.id() == other.id()
    }
}

impl Eq for Group {}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({}, order {})", self.name(), self.order())
    }
}

/// `Some(k)` when `n = p^k`.
pub fn p_power_exponent(n: usize, p: usize) -> Option<u32> {
    if p < 2 || n == 0 {
        return None;
    }
    let mut n = n;
    let mut k = 0;
    while n.is_multiple_of(p) {
        n /= p;
        k += 1;
    }
    (n == 1).then_some(k)
}

/// A subgroup of the parent, contained in the image of `embed`, as a subgroup
/// of the embedded group `local` (see [`Group::subgroup_as_group`]).
pub fn pull_back(local: &Group, embed: &[Elem], s: &Subgroup) -> Subgroup {
    let members = embed.iter().enumerate().filter(|(_, &x)| s.contains(x)).map(|(i, _)| i);
    local.subgroup_unchecked(local.set(members))
}

/// A subgroup of the embedded group, as a subgroup of the parent.
pub fn push_forward(parent: &Group, embed: &[Elem], s: &Subgroup) -> Subgroup {
    parent.subgroup_unchecked(parent.set(s.members().iter().map(|i| embed[i])))
}

/// A subgroup, as a member set of a specific parent group.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    group_id: u64,
    order: usize,
    members: ElemSet,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(x)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.group_id == other.group_id && self.members.is_subset(&other.members)
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn parent_id(&self) -> u64 {
        self.group_id
    }
}

/// Order by size, then by the ascending member list.
impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.group_id, self.order, &self.members).cmp(&(other.group_id, other.order, &other.members))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {}, {:?})", self.order, self.members)
    }
}

/// A group homomorphism stored as its table of images.
#[derive(Clone, Debug)]
pub struct Homomorphism {
    pub source: Group,
    pub target: Group,
    pub images: Vec<Elem>,
}

impl Homomorphism {
    pub fn apply(&self, x: Elem) -> Elem {
        self.images[x]
    }

    pub fn is_homomorphism(&self) -> bool {
        let (s, t) = (&self.source, &self.target);
        s.elements()
            .all(|a| s.elements().all(|b| self.images[s.mul(a, b)] == t.mul(self.images[a], self.images[b])))
    }

    pub fn kernel(&self) -> Subgroup {
        let members = self.source.elements().filter(|&x| self.images[x] == 0);
        self.source.subgroup_unchecked(self.source.set(members))
    }

    pub fn image(&self) -> Subgroup {
        self.target
            .subgroup_unchecked(self.target.set(self.images.iter().copied()))
    }

    pub fn is_surjective(&self) -> bool {
        self.image().order() == self.target.order()
    }

    /// Image of a subgroup of the source.
    pub fn map_subgroup(&self, h: &Subgroup) -> Subgroup {
        self.target
            .subgroup_unchecked(self.target.set(h.members.iter().map(|x| self.images[x])))
    }

    /// Full preimage of a subgroup of the target.
    pub fn preimage(&self, h: &Subgroup) -> Subgroup {
        let members = self.source.elements().filter(|&x| h.contains(self.images[x]));
        self.source.subgroup_unchecked(self.source.set(members))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_orders() {
        let c6 = make_group("C6").unwrap();
        let c3 = c6.generate(&[2]);
        assert_eq!(c3.order(), 3);
        let (q, proj) = c6.quotient(&c3).unwrap();
        assert_eq!(q.order(), 2);
        assert!(proj.is_homomorphism());
        assert_eq!(proj.kernel(), c3);

        let s3 = make_group("S3").unwrap();
        let a3 = s3.derived_subgroup();
        assert_eq!(a3.order(), 3);
        assert_eq!(s3.quotient(&a3).unwrap().0.order(), 2);
    }

    #[test]
    fn quotient_rejects_non_normal() {
        let s3 = make_group("S3").unwrap();
        let c2 = s3
            .elements()
            .find(|&x| s3.elem_order(x) == 2)
            .map(|x| s3.generate(&[x]))
            .unwrap();
        assert!(matches!(s3.quotient(&c2), Err(Error::NotNormal(_))));
    }

    #[test]
    fn q8_mod_center_is_klein() {
        let q8 = make_group("Q8").unwrap();
        let z = q8.center();
        assert_eq!(z.order(), 2);
        let (q, _) = q8.quotient(&z).unwrap();
        assert_eq!(q.order(), 4);
        // brute force: no coset has order 4
        assert!(q.elements().all(|x| q.elem_order(x) <= 2));
        assert!(q.verify_axioms());
    }

    #[test]
    fn subgroups_of_different_groups_differ() {
        let a = make_group("C2").unwrap();
        let b = make_group("C2").unwrap();
        assert_ne!(a.whole(), b.whole());
        assert_eq!(a.whole(), a.generate(&[1]));
    }

    #[test]
    fn direct_product_and_generators() {
        let g = make_group("C2xC2xC3").unwrap();
        assert_eq!(g.order(), 12);
        assert!(g.is_abelian());
        assert!(g.verify_axioms());
        let gens = g.generators();
        assert_eq!(g.generate(&gens).order(), 12);
        assert!(gens.len() <= 2);
    }
}
