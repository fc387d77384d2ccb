//! Dimensions of `S_{H,F}(G)` as ranks of bilinear forms on kernel sets.
//!
//! For a p-elementary `K` with `P = O_p(K)` and `R ◁ P` inside `Φ(P)` with
//! `P/R ≅ E × H`, the quotient `Q = P/R` carries a form on the span of its
//! admissible kernels. The dimension is the sum, over `G`-classes of such pairs
//! `(K, R)`, of the dimension of the fixed points of `N_G(K) ∩ N_G(R)` on the
//! radical quotient of that form.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::bgroup::m_number;
use crate::error::{Error, Result};
use crate::group::{
    frattini, isomorphic_with, make_group_with, o_p, p_group_prime, push_forward, Group, GroupInvariants, Subgroup,
};
use crate::linalg::rational_rank;
use crate::rational::BRational;
use crate::section_count::{check_prime_and_p_group, p_elementary_classes};

/// Normal subgroups `N ◁ Q` with `Q/N ≅ H` and `N ∩ Φ(Q) = 1`.
#[derive(Clone, Debug)]
pub struct KernelSet {
    pub ambient: Group,
    pub target_shape: Group,
    pub kernels: Vec<Subgroup>,
}

impl KernelSet {
    pub fn len(&self) -> usize {
        self.kernels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kernels.is_empty()
    }

    pub fn position(&self, n: &Subgroup) -> Option<usize> {
        self.kernels.iter().position(|k| k == n)
    }
}

fn common_prime(q: &Group, h: &Group) -> Result<Option<usize>> {
    match (p_group_prime(q), p_group_prime(h)) {
        (Some(a), Some(b)) if a != b => Err(Error::Precondition(format!(
            "{} and {} are groups for different primes",
            q.name(),
            h.name()
        ))),
        (Some(a), _) | (None, Some(a)) => Ok(Some(a)),
        (None, None) if q.order() == 1 && h.order() == 1 => Ok(None),
        _ => Err(Error::Precondition(format!("{} or {} is not a p-group", q.name(), h.name()))),
    }
}

pub fn kernel_set(q: &Group, h: &Group) -> Result<KernelSet> {
    common_prime(q, h)?;
    let mut kernels = Vec::new();
    if q.order().is_multiple_of(h.order()) {
        let lat = q.lattice()?;
        let phi = frattini(q)?;
        let hi = GroupInvariants::of(h);
        let target = q.order() / h.order();
        for ni in lat.normal_indices() {
            let n = lat.get(ni);
            if n.order() != target || n.members().intersection_len(phi.members()) != 1 {
                continue;
            }
            let (quot, _) = q.quotient(n)?;
            if isomorphic_with(&quot, &GroupInvariants::of(&quot), h, &hi) {
                kernels.push(n.clone());
            }
        }
    }
    Ok(KernelSet { ambient: q.clone(), target_shape: h.clone(), kernels })
}

/// Subgroups `Y ≤ K` with `YM = YN = K` and `Y ∩ M = Y ∩ N = M ∩ N`.
pub fn kbar(k: &Group, m: &Subgroup, n: &Subgroup) -> Result<Vec<Subgroup>> {
    if !k.owns(m) || !k.owns(n) {
        return Err(Error::Precondition("subgroups of a different group".into()));
    }
    if !k.is_normal(m) || !k.is_normal(n) {
        return Err(Error::NotNormal("kbar arguments".into()));
    }
    if m.order() != n.order() {
        return Err(Error::Precondition("|M| ≠ |N|".into()));
    }
    Ok(kbar_unchecked(k, m, n))
}

fn kbar_unchecked(k: &Group, m: &Subgroup, n: &Subgroup) -> Vec<Subgroup> {
    let lat = k.lattice().expect("lattice of a built group");
    let meet = m.members().intersection_len(n.members());
    // YM = K and Y ∩ M = M ∩ N force |Y| = |K : M| · |M ∩ N|
    let size = k.order() / m.order() * meet;
    lat.subgroups()
        .iter()
        .filter(|y| y.order() == size)
        .filter(|y| {
            let ym = y.members().intersection(m.members());
            let yn = y.members().intersection(n.members());
            ym.len() == meet && ym == yn && ym.is_subset(n.members())
        })
        .cloned()
        .collect()
}

/// The form `⟨M|N⟩ = m_{Q,M∩N} · μ(M∩N, M) / |M : M∩N| · |K̄(Q, M, N)|`.
pub fn n_form(q: &Group, h: &Group, m: &Subgroup, n: &Subgroup) -> Result<BRational> {
    let ks = kernel_set(q, h)?;
    if ks.position(m).is_none() || ks.position(n).is_none() {
        return Err(Error::Precondition("argument outside the kernel set".into()));
    }
    n_form_unchecked(q, m, n)
}

fn n_form_unchecked(q: &Group, m: &Subgroup, n: &Subgroup) -> Result<BRational> {
    let meet = q.intersection(m, n);
    let mq = m_number(q, &meet)?;
    if mq.is_zero() {
        return Ok(mq);
    }
    let lat = q.lattice()?;
    let mu = lat.mobius(&meet, m)?;
    if mu == 0 {
        return Ok(BRational::zero());
    }
    let count = kbar_unchecked(q, m, n).len() as i64;
    Ok(mq * BRational::new(mu * count, (m.order() / meet.order()) as i64))
}

/// The matrix of `⟨·|·⟩` on a kernel set, with the permutations by which the
/// generators of an acting group move the kernels.
#[derive(Clone, Debug, Serialize)]
pub struct GramForm {
    #[serde(skip)]
    pub index: KernelSet,
    pub entries: Vec<Vec<BRational>>,
    pub action: Vec<Vec<usize>>,
}

impl GramForm {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (0..i).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    pub fn is_invariant(&self) -> bool {
        let n = self.size();
        self.action
            .iter()
            .all(|g| (0..n).all(|i| (0..n).all(|j| self.entries[g[i]][g[j]] == self.entries[i][j])))
    }

    pub fn rank(&self) -> usize {
        rational_rank(&self.entries)
    }

    /// Orbits of the acting group on the index set, each sorted, ordered by
    /// least member.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits(self.size(), &self.action)
    }
}

fn orbits(n: usize, perms: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            head += 1;
            for g in perms {
                if !std::mem::replace(&mut seen[g[x]], true) {
                    orbit.push(g[x]);
                }
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// Assembles the full matrix over `index`; `action` holds one permutation of
/// `0..index.len()` per generator of the acting group.
pub fn gram(index: KernelSet, action: Vec<Vec<usize>>) -> Result<GramForm> {
    let n = index.len();
    for g in &action {
        let mut seen = vec![false; n];
        if g.len() != n || !g.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true)) {
            return Err(Error::Precondition("action is not a permutation of the kernel set".into()));
        }
    }
    let q = &index.ambient;
    let mut entries = vec![vec![BRational::zero(); n]; n];
    for (i, m) in index.kernels.iter().enumerate() {
        for (j, k) in index.kernels.iter().enumerate() {
            entries[i][j] = n_form_unchecked(q, m, k)?;
        }
    }
    Ok(GramForm { index, entries, action })
}

/// Dimension of the fixed points of the acting group on the radical quotient,
/// as the rank of the form restricted to orbit sums.
pub fn fixed_rank(form: &GramForm) -> Result<usize> {
    if !form.is_invariant() {
        return Err(Error::Inconsistent("Gram form is not invariant under its action".into()));
    }
    let orbits = form.orbits();
    let summed: Vec<Vec<BRational>> = orbits
        .iter()
        .map(|o| {
            orbits
                .iter()
                .map(|o2| o.iter().flat_map(|&i| o2.iter().map(move |&j| (i, j))).map(|(i, j)| form.entries[i][j].clone()).sum())
                .collect()
        })
        .collect();
    Ok(rational_rank(&summed))
}

/// [`fixed_rank`] by the averaging projector `E` over the whole permutation
/// group generated by the action: the rank of `A·E`.
pub fn fixed_rank_by_projector(form: &GramForm) -> usize {
    let n = form.size();
    let group = permutation_closure(n, &form.action);
    let weight = BRational::new(1, group.len() as i64);
    let mut proj = vec![vec![BRational::zero(); n]; n];
    for g in &group {
        for (i, &gi) in g.iter().enumerate() {
            proj[gi][i] += &weight;
        }
    }
    let product: Vec<Vec<BRational>> = (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| &form.entries[i][k] * &proj[k][j]).sum()).collect())
        .collect();
    rational_rank(&product)
}

fn permutation_closure(n: usize, gens: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let id: Vec<usize> = (0..n).collect();
    let mut seen = std::collections::HashSet::from([id.clone()]);
    let mut all = vec![id];
    let mut head = 0;
    while head < all.len() {
        let x = all[head].clone();
        head += 1;
        for g in gens {
            let y: Vec<usize> = x.iter().map(|&i| g[i]).collect();
            if seen.insert(y.clone()) {
                all.push(y);
            }
        }
    }
    all
}

fn elementary_times(p: usize, k: u32, h: &Group) -> Result<Group> {
    make_group_with(&format!("Elem({p},{k})"), h.limits())?.direct_product(h)
}

/// Normal `R ◁ P` contained in `Φ(P)` with `P/R ≅ E × H` for some elementary
/// abelian `E`, tried rank by rank.
pub fn eh_set(pg: &Group, h: &Group) -> Result<Vec<Subgroup>> {
    let p = match common_prime(pg, h)? {
        Some(p) => p,
        None => return Ok(vec![pg.trivial_subgroup()]),
    };
    let lat = pg.lattice()?;
    let phi = frattini(pg)?;
    let mut shapes: HashMap<u32, (Group, GroupInvariants)> = HashMap::new();
    let mut out = Vec::new();
    for ri in lat.normal_indices() {
        let r = lat.get(ri);
        if !r.is_subgroup_of(&phi) {
            continue;
        }
        let index = pg.order() / r.order();
        if !index.is_multiple_of(h.order()) {
            continue;
        }
        let Some(k) = crate::group::p_power_exponent(index / h.order(), p) else { continue };
        let (q, _) = pg.quotient(r)?;
        if !shapes.contains_key(&k) {
            let e = elementary_times(p, k, h)?;
            let ei = GroupInvariants::of(&e);
            shapes.insert(k, (e, ei));
        }
        let (e, ei) = &shapes[&k];
        if isomorphic_with(&q, &GroupInvariants::of(&q), e, ei) {
            out.push(r.clone());
        }
    }
    Ok(out)
}

/// A class of pairs `(K, R)`: `K` p-elementary in `G`, `R ∈ eh_set(O_p(K), H)`
/// as a subgroup of `G`, and `stabilizer = N_G(K) ∩ N_G(R)`.
#[derive(Clone, Debug)]
pub struct PairKR {
    pub k: Subgroup,
    pub r: Subgroup,
    pub op_k: Subgroup,
    pub stabilizer: Subgroup,
}

/// One representative per `G`-class of pairs, by p-elementary classes `K` and
/// then `N_G(K)`-orbits on the admissible `R`.
pub fn pairs_kr(g: &Group, h: &Group, p: usize) -> Result<Vec<PairKR>> {
    check_prime_and_p_group(h, p)?;
    let mut out = Vec::new();
    for k in p_elementary_classes(g, p)? {
        let (kg, kembed) = g.subgroup_as_group(&k);
        let op_k = push_forward(g, &kembed, &o_p(&kg, p));
        let (pg, embed) = g.subgroup_as_group(&op_k);
        let candidates: Vec<Subgroup> = eh_set(&pg, h)?.iter().map(|r| push_forward(g, &embed, r)).collect();
        let norm = g.normalizer(&k);
        for r in representatives_under(g, &norm, &candidates) {
            let stabilizer = g.intersection(&norm, &g.normalizer(&r));
            out.push(PairKR { k: k.clone(), r, op_k: op_k.clone(), stabilizer });
        }
    }
    Ok(out)
}

/// First member of each orbit of `acting` (by conjugation) on `items`, which
/// must be a union of orbits.
fn representatives_under(g: &Group, acting: &Subgroup, items: &[Subgroup]) -> Vec<Subgroup> {
    let gens = g.generators_of(acting);
    let mut claimed = vec![false; items.len()];
    let mut reps = Vec::new();
    for i in 0..items.len() {
        if claimed[i] {
            continue;
        }
        reps.push(items[i].clone());
        claimed[i] = true;
        let mut stack = vec![i];
        while let Some(j) = stack.pop() {
            for &x in &gens {
                let c = g.conjugate(&items[j], x);
                let pos = items.iter().position(|s| *s == c).expect("items closed under the action");
                if !std::mem::replace(&mut claimed[pos], true) {
                    stack.push(pos);
                }
            }
        }
    }
    reps
}

/// Contribution of one pair `(K, R)` to the rank route.
#[derive(Clone, Debug, Serialize)]
pub struct PairContribution {
    pub k_order: usize,
    pub r_order: usize,
    pub kernels: usize,
    pub orbits: usize,
    pub gram_rank: usize,
    pub fixed_rank: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RankReport {
    pub group: String,
    pub h_shape: String,
    pub p: usize,
    pub dim: usize,
    pub pairs: Vec<PairContribution>,
}

struct KernelCandidate {
    /// In `Q`.
    kernel: Subgroup,
    /// Preimage in `G`.
    lifted: Subgroup,
    quotient: Group,
    invariants: GroupInvariants,
}

struct QuotientEntry {
    /// In `G`.
    r: Subgroup,
    q: Group,
    q_invariants: GroupInvariants,
    kernels: Vec<KernelCandidate>,
}

struct KEntry {
    k: Subgroup,
    normalizer: Subgroup,
    quotients: Vec<QuotientEntry>,
}

/// Rank route for one `(G, p)`, reused across many `H`. Everything that does
/// not depend on `H` is computed once.
pub struct RankRoute {
    group: Group,
    p: usize,
    entries: Vec<KEntry>,
}

impl RankRoute {
    pub fn new(g: &Group, p: usize) -> Result<RankRoute> {
        if !crate::group::is_prime(p) {
            return Err(Error::Precondition(format!("{p} is not prime")));
        }
        let entries = p_elementary_classes(g, p)?
            .into_par_iter()
            .map(|k| k_entry(g, p, k))
            .collect::<Result<Vec<_>>>()?;
        Ok(RankRoute { group: g.clone(), p, entries })
    }

    pub fn dim(&self, h: &Group) -> Result<usize> {
        Ok(self.report(h)?.dim)
    }

    pub fn report(&self, h: &Group) -> Result<RankReport> {
        let pairs = self
            .forms(h)?
            .into_iter()
            .map(|(k_order, r_order, form)| {
                Ok(PairContribution {
                    k_order,
                    r_order,
                    kernels: form.size(),
                    orbits: form.orbits().len(),
                    gram_rank: form.rank(),
                    fixed_rank: fixed_rank(&form)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RankReport {
            group: self.group.name().to_string(),
            h_shape: h.name().to_string(),
            p: self.p,
            dim: pairs.iter().map(|c| c.fixed_rank).sum(),
            pairs,
        })
    }

    /// The Gram form of every pair `(K, R)`, with `|K|` and `|R|`.
    pub fn forms(&self, h: &Group) -> Result<Vec<(usize, usize, GramForm)>> {
        check_prime_and_p_group(h, self.p)?;
        let hi = GroupInvariants::of(h);
        let mut shapes: HashMap<usize, Option<(Group, GroupInvariants)>> = HashMap::new();
        for qe in self.entries.iter().flat_map(|e| &e.quotients) {
            let n = qe.q.order();
            if let std::collections::hash_map::Entry::Vacant(v) = shapes.entry(n) {
                let shape = match (n % h.order() == 0).then(|| crate::group::p_power_exponent(n / h.order(), self.p)) {
                    Some(Some(k)) => {
                        let e = elementary_times(self.p, k, h)?;
                        let ei = GroupInvariants::of(&e);
                        Some((e, ei))
                    }
                    _ => None,
                };
                v.insert(shape);
            }
        }
        let per_k = self
            .entries
            .par_iter()
            .map(|e| self.k_forms(e, h, &hi, &shapes))
            .collect::<Result<Vec<_>>>()?;
        Ok(per_k.into_iter().flatten().collect())
    }

    fn k_forms(
        &self,
        e: &KEntry,
        h: &Group,
        hi: &GroupInvariants,
        shapes: &HashMap<usize, Option<(Group, GroupInvariants)>>,
    ) -> Result<Vec<(usize, usize, GramForm)>> {
        let g = &self.group;
        let admissible: Vec<&QuotientEntry> = e
            .quotients
            .iter()
            .filter(|qe| match &shapes[&qe.q.order()] {
                Some((s, si)) => isomorphic_with(&qe.q, &qe.q_invariants, s, si),
                None => false,
            })
            .collect();
        let rs: Vec<Subgroup> = admissible.iter().map(|qe| qe.r.clone()).collect();
        let mut out = Vec::new();
        for r in representatives_under(g, &e.normalizer, &rs) {
            let qe = admissible.iter().find(|qe| qe.r == r).expect("representative among candidates");
            let stabilizer = g.intersection(&e.normalizer, &g.normalizer(&r));
            let chosen: Vec<&KernelCandidate> = qe
                .kernels
                .iter()
                .filter(|c| isomorphic_with(&c.quotient, &c.invariants, h, hi))
                .collect();
            let action = g
                .generators_of(&stabilizer)
                .into_iter()
                .map(|x| {
                    chosen
                        .iter()
                        .map(|c| {
                            let moved = g.conjugate(&c.lifted, x);
                            chosen.iter().position(|d| d.lifted == moved).expect("kernel set is stable")
                        })
                        .collect()
                })
                .collect();
            let index = KernelSet {
                ambient: qe.q.clone(),
                target_shape: h.clone(),
                kernels: chosen.iter().map(|c| c.kernel.clone()).collect(),
            };
            out.push((e.k.order(), r.order(), gram(index, action)?));
        }
        Ok(out)
    }
}

fn k_entry(g: &Group, p: usize, k: Subgroup) -> Result<KEntry> {
    let (kg, kembed) = g.subgroup_as_group(&k);
    let op_k = push_forward(g, &kembed, &o_p(&kg, p));
    let (pg, embed) = g.subgroup_as_group(&op_k);
    let plat = pg.lattice()?;
    let phi = frattini(&pg)?;
    let mut quotients = Vec::new();
    for ri in plat.normal_indices() {
        let r_local = plat.get(ri);
        if !r_local.is_subgroup_of(&phi) {
            continue;
        }
        let (q, proj) = pg.quotient(r_local)?;
        let qlat = q.lattice()?;
        let qphi = frattini(&q)?;
        let mut kernels = Vec::new();
        for ni in qlat.normal_indices() {
            let n = qlat.get(ni);
            if n.members().intersection_len(qphi.members()) != 1 {
                continue;
            }
            let (quotient, _) = q.quotient(n)?;
            let invariants = GroupInvariants::of(&quotient);
            kernels.push(KernelCandidate {
                kernel: n.clone(),
                lifted: push_forward(g, &embed, &proj.preimage(n)),
                quotient,
                invariants,
            });
        }
        quotients.push(QuotientEntry {
            r: push_forward(g, &embed, r_local),
            q_invariants: GroupInvariants::of(&q),
            q,
            kernels,
        });
    }
    let normalizer = g.normalizer(&k);
    Ok(KEntry { k, normalizer, quotients })
}

pub fn dim_simple_rank_route(g: &Group, h: &Group, p: usize) -> Result<usize> {
    RankRoute::new(g, p)?.dim(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complement::count_common_complements;
    use crate::group::{make_group, surjections};
    use crate::section_count::dim_simple_count_route;

    fn g(s: &str) -> Group {
        make_group(s).unwrap()
    }

    fn kernels_via_surjections(q: &Group, h: &Group) -> Vec<Subgroup> {
        let phi = frattini(q).unwrap();
        let mut out: Vec<Subgroup> = surjections(q, h)
            .iter()
            .map(|s| s.kernel())
            .filter(|n| n.members().intersection_len(phi.members()) == 1)
            .collect();
        out.sort();
        out.dedup();
        out
    }

    #[test]
    fn kernel_set_examples() {
        let c4 = g("C4");
        assert_eq!(kernel_set(&c4, &c4).unwrap().kernels, vec![c4.trivial_subgroup()]);
        assert!(kernel_set(&c4, &g("C2")).unwrap().is_empty());
        // Q = E × H with H cyclic has |E| kernels
        assert_eq!(kernel_set(&g("C2xC4"), &g("C4")).unwrap().len(), 2);
        assert_eq!(kernel_set(&g("C2xC2xC4"), &g("C4")).unwrap().len(), 4);
        assert_eq!(kernel_set(&g("C3xC9"), &g("C9")).unwrap().len(), 3);
        assert!(kernel_set(&c4, &g("C3")).is_err());
    }

    #[test]
    fn kernel_set_matches_surjection_kernels() {
        for (q, h) in [
            ("C2xC4", "C4"),
            ("C2xC2xC2", "C2xC2"),
            ("C2xD8", "D8"),
            ("C2xC2xC4", "C2xC4"),
            ("Q8xC2", "Q8"),
            ("C3xC3xC3", "C3"),
        ] {
            let (q, h) = (g(q), g(h));
            let mut ks = kernel_set(&q, &h).unwrap().kernels;
            ks.sort();
            assert_eq!(ks, kernels_via_surjections(&q, &h), "{} / {}", q.name(), h.name());
        }
    }

    #[test]
    fn kbar_examples() {
        let c4 = g("C4");
        let one = c4.trivial_subgroup();
        assert_eq!(kbar(&c4, &one, &one).unwrap(), vec![c4.whole()]);
        let c2 = c4.lattice().unwrap().get(1).clone();
        // with M = N the whole group always qualifies
        assert_eq!(kbar(&c4, &c2, &c2).unwrap(), vec![c4.whole()]);
        let c8 = g("C8");
        let lat = c8.lattice().unwrap();
        assert!(kbar(&c8, lat.get(1), lat.get(1)).unwrap() == vec![c8.whole()]);
        for p in [2usize, 3] {
            let e = g(&format!("C{p}xC{p}"));
            let lines: Vec<Subgroup> =
                e.lattice().unwrap().subgroups().iter().filter(|s| s.order() == p).cloned().collect();
            let ks = kbar(&e, &lines[0], &lines[1]).unwrap();
            assert_eq!(ks.len(), p - 1);
            assert_eq!(ks.len() as u128, count_common_complements(&e, &lines[0], &lines[1]).unwrap());
        }
    }

    #[test]
    fn kbar_nonempty_outside_complement_preconditions() {
        // C4 × C4 with M = ⟨a⟩, N = ⟨b⟩: both meet Φ, both quotients are C4,
        // and ⟨ab⟩, ⟨ab³⟩ are common complements
        let q = g("C4xC4");
        let m = q.generate(&[4]);
        let n = q.generate(&[1]);
        assert_eq!((m.order(), n.order(), q.intersection(&m, &n).order()), (4, 4, 1));
        assert!(count_common_complements(&q, &m, &n).is_err());
        let ks = kbar(&q, &m, &n).unwrap();
        assert_eq!(ks.len(), 2);
        assert!(ks.iter().all(|y| y.order() == 4 && q.subgroup_as_group(y).0.is_cyclic()));
    }

    #[test]
    fn n_form_examples() {
        for p in [2i64, 3, 5] {
            let c = g(&format!("C{p}"));
            let v = n_form(&c, &g("C1"), &c.whole(), &c.whole()).unwrap();
            assert_eq!(v, BRational::new(p - 1, p));
        }
        let v4 = g("C2xC2");
        assert!(n_form(&v4, &g("C1"), &v4.whole(), &v4.whole()).unwrap().is_zero());
        // H = C2 × C2: every entry is (1 − p^{n−2})⋯(1 − p) with n the rank of Q
        for (spec, expected) in [("C2xC2xC2", -1i64), ("Elem(2,4)", 3), ("Elem(3,3)", -2)] {
            let q = g(spec);
            let h = if spec.contains('3') { g("C3xC3") } else { g("C2xC2") };
            let ks = kernel_set(&q, &h).unwrap();
            assert!(!ks.is_empty());
            for m in &ks.kernels {
                for n in &ks.kernels {
                    assert_eq!(n_form(&q, &h, m, n).unwrap(), BRational::from(expected), "{spec}");
                }
            }
        }
        let c4 = g("C4");
        assert!(n_form(&c4, &g("C2"), &c4.trivial_subgroup(), &c4.trivial_subgroup()).is_err());
    }

    fn forms_for(spec: &str, p: usize, hs: &[&str]) -> Vec<GramForm> {
        let grp = g(spec);
        let mut out = Vec::new();
        for hspec in hs {
            let h = g(hspec);
            for pair in pairs_kr(&grp, &h, p).unwrap() {
                let (pg, embed) = grp.subgroup_as_group(&pair.op_k);
                let (q, proj) = pg.quotient(&crate::group::pull_back(&pg, &embed, &pair.r)).unwrap();
                let ks = kernel_set(&q, &h).unwrap();
                let lifted: Vec<Subgroup> =
                    ks.kernels.iter().map(|n| push_forward(&grp, &embed, &proj.preimage(n))).collect();
                let action = grp
                    .generators_of(&pair.stabilizer)
                    .into_iter()
                    .map(|x| {
                        lifted
                            .iter()
                            .map(|l| lifted.iter().position(|m| *m == grp.conjugate(l, x)).unwrap())
                            .collect()
                    })
                    .collect();
                out.push(gram(ks, action).unwrap());
            }
        }
        out
    }

    #[test]
    fn fixed_rank_matches_averaging_projector() {
        let cases: [(&str, usize, &[&str]); 5] = [
            ("D8", 2, &["C1", "C2", "C2xC2", "C4"]),
            ("C2xC2xC2", 2, &["C2", "C2xC2"]),
            ("S4", 2, &["C2", "C4", "C2xC2", "D8"]),
            ("C4xC4", 2, &["C4", "C2xC4"]),
            ("C3xS3", 3, &["C3", "C3xC3"]),
        ];
        let mut nontrivial = 0;
        for (spec, p, hs) in cases {
            for form in forms_for(spec, p, hs) {
                assert!(form.is_symmetric());
                assert!(form.is_invariant());
                assert_eq!(fixed_rank(&form).unwrap(), fixed_rank_by_projector(&form), "{spec}");
                if form.orbits().len() < form.size() {
                    nontrivial += 1;
                }
            }
        }
        assert!(nontrivial > 0, "no case exercised a nontrivial action");
    }

    #[test]
    fn fixed_rank_of_a_degenerate_form() {
        // constant rank-1 form on three points swapped by a transposition
        let one = BRational::one();
        let form = GramForm {
            index: KernelSet { ambient: g("C1"), target_shape: g("C1"), kernels: Vec::new() },
            entries: vec![vec![one.clone(); 3]; 3],
            action: vec![vec![1, 0, 2]],
        };
        assert_eq!(form.rank(), 1);
        assert_eq!(fixed_rank(&form).unwrap(), 1);
        assert_eq!(fixed_rank_by_projector(&form), 1);
        let empty = GramForm { entries: Vec::new(), action: Vec::new(), ..form.clone() };
        assert_eq!(fixed_rank(&empty).unwrap(), 0);
        let broken = GramForm {
            entries: vec![vec![one.clone(), BRational::zero()], vec![BRational::zero(), BRational::zero()]],
            action: vec![vec![1, 0]],
            ..form
        };
        assert!(fixed_rank(&broken).is_err());
    }

    #[test]
    fn eh_set_examples() {
        for spec in ["D8", "Q8", "C4xC2", "C2xC2xC2", "C3xC3", "C9"] {
            let pg = g(spec);
            let phi = frattini(&pg).unwrap();
            assert_eq!(eh_set(&pg, &g("C1")).unwrap(), vec![phi.clone()], "{spec}");
            let klein = if spec.contains('3') || spec == "C9" { g("C3xC3") } else { g("C2xC2") };
            let expected = if crate::group::p_rank(&pg).unwrap() >= 2 { vec![phi] } else { Vec::new() };
            assert_eq!(eh_set(&pg, &klein).unwrap(), expected, "{spec}");
            assert!(eh_set(&pg, &pg).unwrap().contains(&pg.trivial_subgroup()));
        }
    }

    #[test]
    fn pairs_kr_examples() {
        for p in [2usize, 3] {
            let c = g(&format!("C{p}"));
            assert_eq!(pairs_kr(&c, &c, p).unwrap().len(), 1);
        }
        let s3 = g("S3");
        let pairs = pairs_kr(&s3, &g("C2"), 2).unwrap();
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].k.order(), 2);
        for spec in ["S3", "A4", "D12"] {
            let grp = g(spec);
            let classes = p_elementary_classes(&grp, 2).unwrap().len();
            assert_eq!(pairs_kr(&grp, &g("C1"), 2).unwrap().len(), classes);
        }
    }

    #[test]
    fn rank_route_examples() {
        assert_eq!(dim_simple_rank_route(&g("S3"), &g("C1"), 2).unwrap(), 3);
        for p in [2, 3] {
            let e = g(&format!("C{p}xC{p}"));
            assert_eq!(dim_simple_rank_route(&e, &e, p).unwrap(), 1);
        }
        assert_eq!(dim_simple_rank_route(&g("C2"), &g("C2xC2"), 2).unwrap(), 0);
        assert_eq!(dim_simple_rank_route(&g("C2xC2"), &g("C2"), 2).unwrap(), 6);
    }

    #[test]
    fn rank_route_agrees_with_count_route() {
        let hs2 = ["C1", "C2", "C4", "C2xC2", "C8", "C2xC4", "D8", "Q8"];
        for (spec, p) in [("S4", 2), ("D8xC3", 2), ("Q8", 2), ("A4", 2), ("C2xC2xC2", 2), ("C4xC4", 2)] {
            let grp = g(spec);
            let route = RankRoute::new(&grp, p).unwrap();
            for hspec in hs2 {
                let h = g(hspec);
                let count = dim_simple_count_route(&grp, &h, p).unwrap().dim;
                assert_eq!(route.dim(&h).unwrap(), count, "{spec} H={hspec}");
            }
        }
        let grp = g("C3xS3");
        let route = RankRoute::new(&grp, 3).unwrap();
        for hspec in ["C1", "C3", "C9", "C3xC3"] {
            let h = g(hspec);
            assert_eq!(route.dim(&h).unwrap(), dim_simple_count_route(&grp, &h, 3).unwrap().dim, "C3xS3 H={hspec}");
        }
    }
}
