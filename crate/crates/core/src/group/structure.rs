//! Frattini subgroups, `O_p`, p-elementary tests and p-ranks.

use super::{p_power_exponent, Group, Subgroup};
use crate::error::{Error, Result};

pub fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// The prime dividing the order of a nontrivial p-group.
pub fn p_group_prime(g: &Group) -> Option<usize> {
    let n = g.order();
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    g.is_p_group(p).then_some(p)
}

/// Intersection of the maximal subgroups.
///
/// For p-groups this is computed as `P^p [P,P]` without building the lattice.
pub fn frattini(g: &Group) -> Result<Subgroup> {
    if g.order() == 1 {
        return Ok(g.trivial_subgroup());
    }
    match p_group_prime(g) {
        Some(p) => Ok(frattini_of_p_group(g, p)),
        None => frattini_via_lattice(g),
    }
}

pub(crate) fn frattini_of_p_group(g: &Group, p: usize) -> Subgroup {
    let derived = g.derived_subgroup();
    let mut gens = g.generators_of(&derived);
    gens.extend(g.elements().map(|x| g.pow(x, p)));
    gens.sort_unstable();
    gens.dedup();
    g.generate(&gens)
}

pub(crate) fn frattini_via_lattice(g: &Group) -> Result<Subgroup> {
    let lat = g.lattice()?;
    let mut acc = g.whole().members().clone();
    for i in lat.maximal_subgroups() {
        acc = acc.intersection(lat.get(i).members());
    }
    Ok(g.subgroup_unchecked(acc))
}

/// `log_p |P : Φ(P)|` for a p-group `P`.
pub fn p_rank(g: &Group) -> Result<u32> {
    if g.order() == 1 {
        return Ok(0);
    }
    let p = p_group_prime(g).ok_or_else(|| Error::Precondition(format!("{} is not a p-group", g.name())))?;
    let phi = frattini_of_p_group(g, p);
    Ok(p_power_exponent(g.order() / phi.order(), p).expect("p-power index"))
}

fn normal_closure(g: &Group, gens: &[usize]) -> Subgroup {
    let mut all: Vec<usize> = Vec::new();
    for &x in gens {
        for y in g.elements() {
            all.push(g.conj(x, y));
        }
    }
    all.sort_unstable();
    all.dedup();
    g.generate(&all)
}

/// The largest normal p-subgroup: the join of all normal closures of
/// elements that are p-groups.
pub fn o_p(g: &Group, p: usize) -> Subgroup {
    let mut acc = g.trivial_subgroup();
    for x in g.elements() {
        if acc.contains(x) || p_power_exponent(g.elem_order(x), p).is_none() {
            continue;
        }
        let ncl = normal_closure(g, &[x]);
        if ncl.is_subgroup_of(&acc) || p_power_exponent(ncl.order(), p).is_none() {
            continue;
        }
        acc = g.product(&acc, &ncl);
    }
    acc
}

fn p_part(n: usize, p: usize) -> usize {
    let mut part = 1;
    let mut n = n;
    while n.is_multiple_of(p) {
        n /= p;
        part *= p;
    }
    part
}

/// `G ≅ P × C` with `P` a p-group and `C` cyclic of order prime to `p`.
pub fn is_p_elementary(g: &Group, p: usize) -> bool {
    let op = o_p(g, p);
    if op.order() != p_part(g.order(), p) {
        return false;
    }
    let k = g.order() / op.order();
    let cent = g.centralizer(op.members());
    let found = cent.members().iter().any(|c| g.elem_order(c) == k);
    found
}
