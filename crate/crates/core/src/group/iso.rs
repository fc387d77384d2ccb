//! Isomorphism tests and homomorphism enumeration by generator-image search.

use std::collections::BTreeMap;

use super::structure::{frattini_of_p_group, p_group_prime};
use super::{Elem, Group, Homomorphism};

/// Isomorphism invariants checked before any search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupInvariants {
    pub order: usize,
    pub abelian: bool,
    /// `(element order, count)` ascending.
    pub order_histogram: Vec<(usize, usize)>,
    /// `(element order, centralizer order, count)` ascending.
    pub class_profile: Vec<(usize, usize, usize)>,
    pub center_order: usize,
    pub derived_order: usize,
    /// Only computed for p-groups, where it is cheap.
    pub frattini_order: Option<usize>,
}

impl GroupInvariants {
    pub fn of(g: &Group) -> Self {
        let mut hist = BTreeMap::new();
        let mut profile = BTreeMap::new();
        for x in g.elements() {
            *hist.entry(g.elem_order(x)).or_insert(0) += 1;
            *profile.entry((g.elem_order(x), centralizer_order(g, x))).or_insert(0) += 1;
        }
        GroupInvariants {
            order: g.order(),
            abelian: g.is_abelian(),
            order_histogram: hist.into_iter().collect(),
            class_profile: profile.into_iter().map(|((a, b), c)| (a, b, c)).collect(),
            center_order: g.center().order(),
            derived_order: g.derived_subgroup().order(),
            frattini_order: p_group_prime(g).map(|p| frattini_of_p_group(g, p).order()),
        }
    }
}

fn centralizer_order(g: &Group, x: Elem) -> usize {
    g.elements().filter(|&y| g.mul(x, y) == g.mul(y, x)).count()
}

/// Extends generator images to the subgroup they generate by walking the right
/// Cayley graph. Returns `false` as soon as two paths disagree, which is exactly
/// when no homomorphism with these images exists.
fn extend(src: &Group, dst: &Group, gens: &[Elem], imgs: &[Elem], map: &mut [usize]) -> bool {
    map.fill(usize::MAX);
    map[0] = 0;
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&s, &t) in gens.iter().zip(imgs) {
            let y = src.mul(x, s);
            let fy = dst.mul(map[x], t);
            if map[y] == usize::MAX {
                map[y] = fy;
                queue.push(y);
            } else if map[y] != fy {
                return false;
            }
        }
    }
    true
}

/// Depth-first search over generator images; `visit` sees every full
/// homomorphism and returns `false` to stop.
fn search(
    src: &Group,
    dst: &Group,
    gens: &[Elem],
    candidates: &[Vec<Elem>],
    visit: &mut dyn FnMut(&[usize]) -> bool,
) {
    let mut imgs = Vec::with_capacity(gens.len());
    let mut map = vec![usize::MAX; src.order()];
    fn rec(
        depth: usize,
        src: &Group,
        dst: &Group,
        gens: &[Elem],
        candidates: &[Vec<Elem>],
        imgs: &mut Vec<Elem>,
        map: &mut [usize],
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if depth == gens.len() {
            return visit(map);
        }
        for &c in &candidates[depth] {
            imgs.push(c);
            let ok = extend(src, dst, &gens[..=depth], imgs, map);
            if ok && !rec(depth + 1, src, dst, gens, candidates, imgs, map, visit) {
                return false;
            }
            imgs.pop();
        }
        true
    }
    if gens.is_empty() {
        map[0] = 0;
        visit(&map);
        return;
    }
    rec(0, src, dst, gens, candidates, &mut imgs, &mut map, visit);
}

/// An isomorphism `g → h`, if one exists.
pub fn find_isomorphism(g: &Group, h: &Group) -> Option<Homomorphism> {
    if g.order() != h.order() || GroupInvariants::of(g) != GroupInvariants::of(h) {
        return None;
    }
    let gens = g.generators();
    let candidates: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&x| {
            let key = (g.elem_order(x), centralizer_order(g, x));
            h.elements()
                .filter(|&y| (h.elem_order(y), centralizer_order(h, y)) == key)
                .collect()
        })
        .collect();
    let mut found = None;
    search(g, h, &gens, &candidates, &mut |map| {
        let mut seen = vec![false; h.order()];
        let bijective = map.iter().all(|&y| !std::mem::replace(&mut seen[y], true));
        if bijective {
            found = Some(map.to_vec());
        }
        !bijective
    });
    found.map(|images| Homomorphism {
        source: g.clone(),
        target: h.clone(),
        images,
    })
}

/// Exact isomorphism test. Finite abelian groups with the same element-order
/// histogram are isomorphic, so those skip the search.
pub fn isomorphic(g: &Group, h: &Group) -> bool {
    if g.order() != h.order() {
        return false;
    }
    isomorphic_with(g, &GroupInvariants::of(g), h, &GroupInvariants::of(h))
}

/// [`isomorphic`] with invariants computed by the caller, for repeated tests
/// against the same group.
pub fn isomorphic_with(g: &Group, gi: &GroupInvariants, h: &Group, hi: &GroupInvariants) -> bool {
    if gi != hi {
        return false;
    }
    if gi.abelian || g.order() <= 7 {
        return true;
    }
    find_isomorphism(g, h).is_some()
}

/// Every surjective homomorphism `p → h`.
pub fn surjections(p: &Group, h: &Group) -> Vec<Homomorphism> {
    if !p.order().is_multiple_of(h.order()) {
        return Vec::new();
    }
    homomorphisms_filtered(p, h, true)
}

/// Every homomorphism `p → h`.
pub fn homomorphisms(p: &Group, h: &Group) -> Vec<Homomorphism> {
    homomorphisms_filtered(p, h, false)
}

fn homomorphisms_filtered(p: &Group, h: &Group, onto: bool) -> Vec<Homomorphism> {
    let gens = p.generators();
    let candidates: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&x| {
            h.elements()
                .filter(|&y| p.elem_order(x).is_multiple_of(h.elem_order(y)))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    search(p, h, &gens, &candidates, &mut |map| {
        let keep = !onto || {
            let mut seen = vec![false; h.order()];
            map.iter().filter(|&&y| !std::mem::replace(&mut seen[y], true)).count() == h.order()
        };
        if keep {
            out.push(Homomorphism {
                source: p.clone(),
                target: h.clone(),
                images: map.to_vec(),
            });
        }
        true
    });
    out
}
