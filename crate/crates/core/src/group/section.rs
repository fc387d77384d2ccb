use super::{Group, Subgroup};
use crate::error::Result;

/// A pair `(T, S)` with `S ⊴ T ≤ G`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Section {
    pub top: Subgroup,
    pub bottom: Subgroup,
}

impl Section {
    pub fn conjugate(&self, g: &Group, x: usize) -> Section {
        Section {
            top: g.conjugate(&self.top, x),
            bottom: g.conjugate(&self.bottom, x),
        }
    }
}

/// One representative per `G`-orbit of sections, under simultaneous
/// conjugation, for which `keep` holds. `keep` must be constant on orbits;
/// it is evaluated on the representative only.
///
/// Representatives are the least element of each orbit: `T` is the least
/// member of its lattice class and `S` the least member of its
/// `N_G(T)`-orbit.
pub fn sections_up_to_conjugacy(
    g: &Group,
    mut keep: impl FnMut(&Section) -> bool,
) -> Result<Vec<Section>> {
    let lat = g.lattice()?;
    let mut out = Vec::new();
    for t_idx in lat.class_reps() {
        let top = lat.get(t_idx).clone();
        let norm = g.normalizer(&top);
        let mut claimed = vec![false; lat.len()];
        for s_idx in lat.below(t_idx) {
            if claimed[s_idx] {
                continue;
            }
            let bottom = lat.get(s_idx);
            if !is_normal_in(g, bottom, &top) {
                claimed[s_idx] = true;
                continue;
            }
            for x in norm.members().iter() {
                let c = g.conjugate(bottom, x);
                claimed[lat.index_of(&c).expect("lattice is conjugation-closed")] = true;
            }
            let sec = Section {
                top: top.clone(),
                bottom: bottom.clone(),
            };
            if keep(&sec) {
                out.push(sec);
            }
        }
    }
    Ok(out)
}

/// `s ⊴ t` for subgroups of the same group.
pub fn is_normal_in(g: &Group, s: &Subgroup, t: &Subgroup) -> bool {
    let gens = g.generators_of(s);
    s.is_subgroup_of(t) && t.members().iter().all(|x| gens.iter().all(|&y| s.contains(g.conj(y, x))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{is_p_elementary, isomorphic, make_group, pull_back};

    /// Orbits of all pairs `S ⊴ T` under conjugation by every element of `G`.
    fn brute_force_section_classes(g: &Group) -> usize {
        let lat = g.lattice().unwrap();
        let mut pairs = Vec::new();
        for t in lat.subgroups() {
            for s in lat.subgroups() {
                if is_normal_in(g, s, t) {
                    pairs.push(Section { top: t.clone(), bottom: s.clone() });
                }
            }
        }
        let mut seen = vec![false; pairs.len()];
        let mut orbits = 0;
        for i in 0..pairs.len() {
            if seen[i] {
                continue;
            }
            orbits += 1;
            for x in g.elements() {
                let c = pairs[i].conjugate(g, x);
                let j = pairs.iter().position(|p| *p == c).unwrap();
                seen[j] = true;
            }
        }
        orbits
    }

    #[test]
    fn section_counts() {
        let s3 = make_group("S3").unwrap();
        // (1,1), (C2,1), (C2,C2), (C3,1), (C3,C3), (S3,1), (S3,A3), (S3,S3)
        assert_eq!(sections_up_to_conjugacy(&s3, |_| true).unwrap().len(), 8);
        assert_eq!(brute_force_section_classes(&s3), 8);
        let c2 = make_group("C2").unwrap();
        assert_eq!(sections_up_to_conjugacy(&c2, |_| true).unwrap().len(), 3);

        let h = make_group("C2").unwrap();
        let found = sections_up_to_conjugacy(&s3, |sec| {
            let (t, emb) = s3.subgroup_as_group(&sec.top);
            if !is_p_elementary(&t, 2) {
                return false;
            }
            let q = t.quotient(&pull_back(&t, &emb, &sec.bottom)).unwrap().0;
            isomorphic(&q, &h)
        })
        .unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].top.order(), 2);
        assert!(found[0].bottom.is_trivial());
    }

    #[test]
    fn section_classes_match_brute_force() {
        for spec in ["D8", "A4", "Q8", "C2xC2", "D10"] {
            let g = make_group(spec).unwrap();
            assert_eq!(
                sections_up_to_conjugacy(&g, |_| true).unwrap().len(),
                brute_force_section_classes(&g),
                "{spec}"
            );
        }
    }
}
