//! Dimensions of `S_{H,F}(G)` by counting conjugacy classes: cyclic subgroups
//! when `H = 1`, non-cyclic p-elementary subgroups when `H ≅ C_p × C_p`, and
//! sections `(T, S)` with `T` p-elementary and `T/S ≅ H` otherwise.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{
    is_normal_in, is_p_elementary, is_prime, isomorphic_with, p_power_exponent, pull_back, Elem, Group, GroupInvariants,
    Section, Subgroup,
};

/// Which counting rule produced a [`DimReport`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseTag {
    TrivialH,
    KleinH,
    GenericH,
}

/// A class representative counted by a [`DimReport`], as member lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    Subgroup { members: Vec<Elem> },
    Section { top: Vec<Elem>, bottom: Vec<Elem> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimReport {
    pub group: String,
    pub h_shape: String,
    pub p: usize,
    pub dim: usize,
    pub case_tag: CaseTag,
    pub witnesses: Vec<Witness>,
}

/// p-elementary flag for every subgroup class, in lattice class order.
pub fn p_elementary_class_flags(g: &Group, p: usize) -> Result<Vec<bool>> {
    let lat = g.lattice()?;
    Ok(lat
        .class_reps()
        .into_iter()
        .map(|i| is_p_elementary(&g.subgroup_as_group(lat.get(i)).0, p))
        .collect())
}

/// One representative per conjugacy class of p-elementary subgroups.
pub fn p_elementary_classes(g: &Group, p: usize) -> Result<Vec<Subgroup>> {
    let lat = g.lattice()?;
    let flags = p_elementary_class_flags(g, p)?;
    Ok(lat
        .class_reps()
        .into_iter()
        .zip(flags)
        .filter(|&(_, f)| f)
        .map(|(i, _)| lat.get(i).clone())
        .collect())
}

/// One representative per conjugacy class of cyclic subgroups.
pub fn cyclic_classes(g: &Group) -> Result<Vec<Subgroup>> {
    let lat = g.lattice()?;
    Ok(lat
        .class_reps()
        .into_iter()
        .map(|i| lat.get(i))
        .filter(|s| s.members().iter().any(|x| g.elem_order(x) == s.order()))
        .cloned()
        .collect())
}

pub(crate) fn check_prime_and_p_group(h: &Group, p: usize) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::Precondition(format!("{p} is not prime")));
    }
    if p_power_exponent(h.order(), p).is_none() {
        return Err(Error::Precondition(format!("{} is not a {p}-group", h.name())));
    }
    Ok(())
}

/// `H ≅ C_p × C_p`.
pub fn is_klein_shape(h: &Group, p: usize) -> bool {
    h.order() == p * p && !h.is_cyclic()
}

struct SectionEntry {
    section: Section,
    quotient: Group,
    invariants: GroupInvariants,
}

/// Counting route for one `(G, p)`, reused across many `H`.
pub struct CountRoute {
    group: Group,
    p: usize,
    cyclic: Vec<Subgroup>,
    p_elementary: Vec<Subgroup>,
    sections: Vec<SectionEntry>,
}

impl CountRoute {
    pub fn new(g: &Group, p: usize) -> Result<CountRoute> {
        if !is_prime(p) {
            return Err(Error::Precondition(format!("{p} is not prime")));
        }
        let lat = g.lattice()?;
        let p_elementary = p_elementary_classes(g, p)?;
        let mut sections = Vec::new();
        for top in &p_elementary {
            let ti = lat.index_of(top).expect("lattice subgroup");
            let norm = g.normalizer(top);
            let (tg, embed) = g.subgroup_as_group(top);
            let mut claimed = vec![false; lat.len()];
            for si in lat.below(ti) {
                let bottom = lat.get(si);
                if claimed[si] || p_power_exponent(top.order() / bottom.order(), p).is_none() {
                    continue;
                }
                if !is_normal_in(g, bottom, top) {
                    continue;
                }
                for x in norm.members().iter() {
                    claimed[lat.index_of(&g.conjugate(bottom, x)).expect("conjugation-closed")] = true;
                }
                let (quotient, _) = tg.quotient(&pull_back(&tg, &embed, bottom))?;
                let invariants = GroupInvariants::of(&quotient);
                sections.push(SectionEntry {
                    section: Section { top: top.clone(), bottom: bottom.clone() },
                    quotient,
                    invariants,
                });
            }
        }
        Ok(CountRoute {
            group: g.clone(),
            p,
            cyclic: cyclic_classes(g)?,
            p_elementary,
            sections,
        })
    }

    /// Section classes `(T, S)` with `T` p-elementary and `T/S ≅ H`, for any
    /// p-group `H`. For `H = 1` and `H ≅ C_p × C_p` this is not the dimension.
    pub fn generic_sections(&self, h: &Group) -> Result<Vec<Section>> {
        check_prime_and_p_group(h, self.p)?;
        let hi = GroupInvariants::of(h);
        Ok(self
            .sections
            .iter()
            .filter(|e| e.quotient.order() == h.order() && isomorphic_with(&e.quotient, &e.invariants, h, &hi))
            .map(|e| e.section.clone())
            .collect())
    }

    pub fn dim(&self, h: &Group) -> Result<DimReport> {
        check_prime_and_p_group(h, self.p)?;
        let subgroup_witness = |s: &Subgroup| Witness::Subgroup { members: s.members().to_vec() };
        let (case_tag, witnesses) = if h.order() == 1 {
            (CaseTag::TrivialH, self.cyclic.iter().map(subgroup_witness).collect())
        } else if is_klein_shape(h, self.p) {
            let noncyclic = self
                .p_elementary
                .iter()
                .filter(|s| !s.members().iter().any(|x| self.group.elem_order(x) == s.order()));
            (CaseTag::KleinH, noncyclic.map(subgroup_witness).collect())
        } else {
            let w = self
                .generic_sections(h)?
                .into_iter()
                .map(|s| Witness::Section {
                    top: s.top.members().to_vec(),
                    bottom: s.bottom.members().to_vec(),
                })
                .collect();
            (CaseTag::GenericH, w)
        };
        let witnesses: Vec<Witness> = witnesses;
        Ok(DimReport {
            group: self.group.name().to_string(),
            h_shape: h.name().to_string(),
            p: self.p,
            dim: witnesses.len(),
            case_tag,
            witnesses,
        })
    }

    pub fn p_elementary(&self) -> &[Subgroup] {
        &self.p_elementary
    }

    pub fn cyclic(&self) -> &[Subgroup] {
        &self.cyclic
    }
}

pub fn dim_simple_count_route(g: &Group, h: &Group, p: usize) -> Result<DimReport> {
    CountRoute::new(g, p)?.dim(h)
}
