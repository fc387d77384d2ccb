//! Subgroup lattices and the Möbius functions of the subgroup poset and of the
//! normal-subgroup poset.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::group::{Elem, ElemSet, Group, Subgroup};

/// All subgroups of one group, sorted by (order, member list), with their
/// conjugacy classes.
pub struct SubgroupLattice {
    group_id: u64,
    subgroups: Vec<Subgroup>,
    index: HashMap<ElemSet, usize>,
    class_of: Vec<usize>,
    /// Each class is sorted; classes are ordered by their least member.
    classes: Vec<Vec<usize>>,
    normal: Vec<bool>,
    top_mobius: OnceLock<Vec<i64>>,
    interval_memo: Mutex<HashMap<(usize, usize), i64>>,
    marks: OnceLock<Vec<Vec<u64>>>,
}

impl SubgroupLattice {
    /// Enumerates subgroups as joins of cyclic subgroups. Fails once the count
    /// passes the group's subgroup cap.
    pub fn build(g: &Group) -> Result<SubgroupLattice> {
        let cap = g.limits().subgroup_cap;
        let n = g.order();
        // one generator per cyclic subgroup
        let mut cyclic_gens: Vec<Elem> = Vec::new();
        let mut found: HashMap<ElemSet, Vec<Elem>> = HashMap::new();
        for x in g.elements() {
            let c = g.generate(&[x]);
            if !found.contains_key(c.members()) {
                cyclic_gens.push(x);
                found.insert(c.members().clone(), if x == 0 { vec![] } else { vec![x] });
            }
        }
        let mut queue: Vec<ElemSet> = found.keys().cloned().collect();
        queue.sort();
        while let Some(h) = queue.pop() {
            if h.len() == n {
                continue;
            }
            let gens = found[&h].clone();
            for &x in &cyclic_gens {
                if h.contains(x) {
                    continue;
                }
                let j = g.join_element(&h, &gens, x);
                if !found.contains_key(&j) {
                    if found.len() >= cap {
                        return Err(Error::Resource(format!(
                            "{} has more than {cap} subgroups",
                            g.name()
                        )));
                    }
                    let mut jg = gens.clone();
                    jg.push(x);
                    found.insert(j.clone(), jg);
                    queue.push(j);
                }
            }
        }

        let mut subgroups: Vec<Subgroup> = found.into_keys().map(|m| g.subgroup_unchecked(m)).collect();
        subgroups.sort();
        let index: HashMap<ElemSet, usize> = subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| (s.members().clone(), i))
            .collect();

        let mut class_of = vec![usize::MAX; subgroups.len()];
        let mut classes = Vec::new();
        let abelian = g.is_abelian();
        for i in 0..subgroups.len() {
            if class_of[i] != usize::MAX {
                continue;
            }
            let cid = classes.len();
            let mut members = vec![i];
            class_of[i] = cid;
            if !abelian {
                for x in g.elements() {
                    let c = g.conjugate_set(subgroups[i].members(), x);
                    let j = index[&c];
                    if class_of[j] == usize::MAX {
                        class_of[j] = cid;
                        members.push(j);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        let normal = (0..subgroups.len()).map(|i| classes[class_of[i]].len() == 1).collect();

        Ok(SubgroupLattice {
            group_id: g.id(),
            subgroups,
            index,
            class_of,
            classes,
            normal,
            top_mobius: OnceLock::new(),
            interval_memo: Mutex::new(HashMap::new()),
            marks: OnceLock::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn get(&self, i: usize) -> &Subgroup {
        &self.subgroups[i]
    }

    pub fn index_of(&self, h: &Subgroup) -> Option<usize> {
        if h.parent_id() != self.group_id {
            return None;
        }
        self.index.get(h.members()).copied()
    }

    fn require(&self, h: &Subgroup) -> Result<usize> {
        self.index_of(h)
            .ok_or_else(|| Error::Precondition("subgroup belongs to a different group".into()))
    }

    pub fn top(&self) -> usize {
        self.subgroups.len() - 1
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    /// Least member of every class, in class order.
    pub fn class_reps(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c[0]).collect()
    }

    pub fn is_normal(&self, i: usize) -> bool {
        self.normal[i]
    }

    pub fn normal_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.normal[i]).collect()
    }

    /// Indices of subgroups contained in subgroup `i` (including `i`), ascending.
    pub fn below(&self, i: usize) -> Vec<usize> {
        let top = &self.subgroups[i];
        (0..=i)
            .filter(|&j| top.order().is_multiple_of(self.subgroups[j].order()) && self.subgroups[j].is_subgroup_of(top))
            .collect()
    }

    /// Indices of subgroups containing subgroup `i` (including `i`), ascending.
    pub fn above(&self, i: usize) -> Vec<usize> {
        let bot = &self.subgroups[i];
        (i..self.len())
            .filter(|&j| self.subgroups[j].order().is_multiple_of(bot.order()) && bot.is_subgroup_of(&self.subgroups[j]))
            .collect()
    }

    /// Maximal proper subgroups of the whole group.
    pub fn maximal_subgroups(&self) -> Vec<usize> {
        let top = self.top();
        let mut out: Vec<usize> = Vec::new();
        for i in (0..top).rev() {
            if !out.iter().any(|&j| self.subgroups[i].is_subgroup_of(&self.subgroups[j])) {
                out.push(i);
            }
        }
        out.sort_unstable();
        out
    }

    /// Storage for the table of marks, filled once by [`crate::burnside`].
    pub(crate) fn marks_cell(&self) -> &OnceLock<Vec<Vec<u64>>> {
        &self.marks
    }

    /// `μ(X, G)` for every subgroup `X`, by index.
    pub fn mobius_top(&self) -> &[i64] {
        self.top_mobius.get_or_init(|| {
            let n = self.len();
            let mut mu = vec![0i64; n];
            mu[n - 1] = 1;
            for i in (0..n - 1).rev() {
                let x = &self.subgroups[i];
                let mut s = 0;
                for j in i + 1..n {
                    let z = &self.subgroups[j];
                    if mu[j] != 0 && z.order().is_multiple_of(x.order()) && z.order() > x.order() && x.is_subgroup_of(z) {
                        s += mu[j];
                    }
                }
                mu[i] = -s;
            }
            mu
        })
    }

    /// `μ(X, Y)` in the subgroup poset.
    pub fn mobius(&self, x: &Subgroup, y: &Subgroup) -> Result<i64> {
        let (xi, yi) = (self.require(x)?, self.require(y)?);
        if !x.is_subgroup_of(y) {
            return Err(Error::Precondition("Möbius arguments are not comparable".into()));
        }
        Ok(self.mobius_idx(xi, yi))
    }

    pub fn mobius_idx(&self, xi: usize, yi: usize) -> i64 {
        if yi == self.top() {
            return self.mobius_top()[xi];
        }
        if let Some(&v) = self.interval_memo.lock().expect("memo lock").get(&(xi, yi)) {
            return v;
        }
        let y = &self.subgroups[yi];
        let chain: Vec<usize> = self
            .above(xi)
            .into_iter()
            .filter(|&z| z <= yi && self.subgroups[z].is_subgroup_of(y))
            .collect();
        let values = self.interval_from_bottom(&chain);
        let mut memo = self.interval_memo.lock().expect("memo lock");
        for (&z, &v) in chain.iter().zip(&values) {
            memo.insert((xi, z), v);
        }
        values[chain.len() - 1]
    }

    /// `μ(chain[0], z)` for every `z` of an interval listed in ascending order.
    fn interval_from_bottom(&self, chain: &[usize]) -> Vec<i64> {
        let mut mu = vec![0i64; chain.len()];
        mu[0] = 1;
        for k in 1..chain.len() {
            let z = &self.subgroups[chain[k]];
            let s: i64 = (0..k)
                .filter(|&w| self.subgroups[chain[w]].order() < z.order() && self.subgroups[chain[w]].is_subgroup_of(z))
                .map(|w| mu[w])
                .sum();
            mu[k] = -s;
        }
        mu
    }

    /// `μ_⊴(A, B)` in the poset of normal subgroups.
    pub fn mobius_normal(&self, a: &Subgroup, b: &Subgroup) -> Result<i64> {
        let (ai, bi) = (self.require(a)?, self.require(b)?);
        if !self.normal[ai] || !self.normal[bi] {
            return Err(Error::NotNormal("Möbius arguments of the normal poset".into()));
        }
        if !a.is_subgroup_of(b) {
            return Err(Error::Precondition("Möbius arguments are not comparable".into()));
        }
        let chain: Vec<usize> = self
            .above(ai)
            .into_iter()
            .filter(|&z| self.normal[z] && z <= bi && self.subgroups[z].is_subgroup_of(b))
            .collect();
        Ok(*self.interval_from_bottom(&chain).last().expect("nonempty interval"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_group;

    #[test]
    fn lattice_sizes() {
        for (spec, subs, classes) in [
            ("S3", 6, 4),
            ("C2xC2", 5, 5),
            ("C1", 1, 1),
            ("D8", 10, 8),
            ("Q8", 6, 6),
            ("A4", 10, 5),
            ("S4", 30, 11),
            ("Elem(2,3)", 16, 16),
            ("A5", 59, 9),
        ] {
            let g = make_group(spec).unwrap();
            let lat = g.lattice().unwrap();
            assert_eq!(lat.len(), subs, "{spec}");
            assert_eq!(lat.classes().len(), classes, "{spec}");
            assert!(lat.get(0).is_trivial());
            assert_eq!(lat.get(lat.top()).order(), g.order());
        }
    }

    #[test]
    fn subgroup_cap_is_a_resource_error() {
        let limits = crate::group::Limits { subgroup_cap: 10, ..Default::default() };
        let g = crate::group::make_group_with("Elem(2,3)", limits).unwrap();
        assert!(matches!(g.lattice(), Err(Error::Resource(_))));
    }

    #[test]
    fn mobius_examples() {
        let v4 = make_group("C2xC2").unwrap();
        let lat = v4.lattice().unwrap();
        let one = v4.trivial_subgroup();
        assert_eq!(lat.mobius(&one, &v4.whole()).unwrap(), 2);
        assert_eq!(lat.mobius(&v4.whole(), &v4.whole()).unwrap(), 1);
        let c2 = lat.get(1).clone();
        assert_eq!(lat.mobius(&one, &c2).unwrap(), -1);
        assert!(lat.mobius(&c2, &lat.get(2).clone()).is_err());

        // μ(1, S4) = -12, from an independent enumeration of the 30 subgroups
        let s4 = make_group("S4").unwrap();
        assert_eq!(s4.lattice().unwrap().mobius_top()[0], -12);
        // μ(1, A5) = -60
        let a5 = make_group("A5").unwrap();
        assert_eq!(a5.lattice().unwrap().mobius_top()[0], -60);
        // μ(1, Elem(2,3)) = -2^3
        let e = make_group("Elem(2,3)").unwrap();
        assert_eq!(e.lattice().unwrap().mobius_top()[0], -8);
    }

    #[test]
    fn normal_poset_mobius() {
        let q8 = make_group("Q8").unwrap();
        let lat = q8.lattice().unwrap();
        let z = q8.center();
        assert_eq!(lat.mobius_normal(&q8.trivial_subgroup(), &z).unwrap(), -1);
        assert_eq!(lat.mobius_normal(&z, &z).unwrap(), 1);
        // in Q8 every subgroup is normal, so the posets agree
        assert_eq!(
            lat.mobius_normal(&q8.trivial_subgroup(), &q8.whole()).unwrap(),
            lat.mobius(&q8.trivial_subgroup(), &q8.whole()).unwrap()
        );
        let s3 = make_group("S3").unwrap();
        let lat = s3.lattice().unwrap();
        let c2 = lat.get(1).clone();
        assert!(matches!(lat.mobius_normal(&s3.trivial_subgroup(), &c2), Err(Error::NotNormal(_))));
        // normal subgroups of S3 form the chain 1 < A3 < S3
        assert_eq!(lat.mobius_normal(&s3.trivial_subgroup(), &s3.whole()).unwrap(), 0);
    }

    #[test]
    fn interval_mobius_matches_recursion() {
        let g = make_group("D8").unwrap();
        let lat = g.lattice().unwrap();
        for x in 0..lat.len() {
            for y in lat.above(x) {
                let s: i64 = lat
                    .above(x)
                    .into_iter()
                    .filter(|&z| lat.get(z).is_subgroup_of(lat.get(y)))
                    .map(|z| lat.mobius_idx(x, z))
                    .sum();
                assert_eq!(s, i64::from(x == y));
            }
        }
    }
}
