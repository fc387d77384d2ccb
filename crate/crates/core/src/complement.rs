//! Common complements of central elementary abelian subgroups of p-groups,
//! and the splitting `P/(M ∩ Φ(P)) ≅ E × P/M`.

use crate::error::{Error, Result};
use crate::group::{frattini, isomorphic, p_group_prime, p_power_exponent, pull_back, Group, Subgroup};

fn binom2(s: u32) -> u32 {
    s * s.saturating_sub(1) / 2
}

/// The prime and the exponents `(m, s, γ)` of a pair `Q, R ⊴ P` satisfying the common-complement
/// preconditions: `m` is the rank of `Q`, `m − s` the rank of `Q ∩ RΦ(P)`, and
/// `γ = log_p |P : RΦ(P)|`.
pub fn complement_exponents(pg: &Group, q: &Subgroup, r: &Subgroup) -> Result<(usize, u32, u32, u32)> {
    let p = match p_group_prime(pg) {
        Some(p) => p,
        None if pg.order() == 1 => 2,
        None => return Err(Error::Precondition(format!("{} is not a p-group", pg.name()))),
    };
    if !pg.owns(q) || !pg.owns(r) {
        return Err(Error::Precondition("subgroups of a different group".into()));
    }
    if !pg.is_normal(q) || !pg.is_normal(r) {
        return Err(Error::NotNormal("complement-count arguments".into()));
    }
    if q.order() != r.order() {
        return Err(Error::Precondition("|Q| ≠ |R|".into()));
    }
    let phi = frattini(pg)?;
    if pg.intersection(q, &phi).order() != 1 || pg.intersection(r, &phi).order() != 1 {
        return Err(Error::Precondition("Q or R meets the Frattini subgroup".into()));
    }
    let log = |n: usize| p_power_exponent(n, p).expect("p-power order");
    let r_phi = pg.product(r, &phi);
    let m = log(q.order());
    let s = m - log(pg.intersection(q, &r_phi).order());
    let gamma = log(pg.order() / r_phi.order());
    Ok((p, m, s, gamma))
}

/// `(p^s − 1)⋯(p − 1) · p^{C(s,2) + s(m−s) + m(γ−s)}`.
pub fn count_common_complements(pg: &Group, q: &Subgroup, r: &Subgroup) -> Result<u128> {
    let (p, m, s, gamma) = complement_exponents(pg, q, r)?;
    let overflow = || Error::Resource("complement count overflows u128".into());
    let p = p as u128;
    let mut count: u128 = 1;
    for i in 1..=s {
        count = count.checked_mul(p.checked_pow(i).ok_or_else(overflow)? - 1).ok_or_else(overflow)?;
    }
    let exp = binom2(s) + s * (m - s) + m * (gamma - s);
    count.checked_mul(p.checked_pow(exp).ok_or_else(overflow)?).ok_or_else(overflow)
}

/// Complements of `q` in `g`, by a scan of the subgroup lattice.
pub fn complements(g: &Group, q: &Subgroup) -> Result<Vec<Subgroup>> {
    let lat = g.lattice()?;
    Ok(lat
        .subgroups()
        .iter()
        .filter(|l| l.order() * q.order() == g.order() && l.members().intersection_len(q.members()) == 1)
        .cloned()
        .collect())
}

/// `|K_P(Q) ∩ K_P(R)|` by enumeration.
pub fn count_common_complements_brute(g: &Group, q: &Subgroup, r: &Subgroup) -> Result<usize> {
    let kq = complements(g, q)?;
    Ok(kq
        .iter()
        .filter(|l| l.members().intersection_len(r.members()) == 1)
        .count())
}

/// The factors of `P/(M ∩ Φ(P)) ≅ E × L`.
#[derive(Clone, Debug)]
pub struct Splitting {
    /// `P/(M ∩ Φ(P))`
    pub quotient: Group,
    /// `E = M/(M ∩ Φ(P))`, elementary abelian.
    pub elementary: Group,
    /// `L = P/M`
    pub top: Group,
}

pub fn split_frattini_core(pg: &Group, m: &Subgroup) -> Result<Splitting> {
    if pg.order() > 1 && p_group_prime(pg).is_none() {
        return Err(Error::Precondition(format!("{} is not a p-group", pg.name())));
    }
    let phi = frattini(pg)?;
    let core = pg.intersection(m, &phi);
    let (quotient, _) = pg.quotient(&core)?;
    let (m_group, embed) = pg.subgroup_as_group(m);
    let (elementary, _) = m_group.quotient(&pull_back(&m_group, &embed, &core))?;
    let (top, _) = pg.quotient(m)?;
    if !elementary.elements().all(|x| elementary.elem_order(x) <= p_group_prime(&elementary).unwrap_or(1))
        || !elementary.is_abelian()
    {
        return Err(Error::Inconsistent("M/(M ∩ Φ(P)) is not elementary abelian".into()));
    }
    if !isomorphic(&quotient, &elementary.direct_product(&top)?) {
        return Err(Error::Inconsistent(format!(
            "{}/(M ∩ Φ) does not split as E × P/M",
            pg.name()
        )));
    }
    Ok(Splitting { quotient, elementary, top })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_group;

    fn g(s: &str) -> Group {
        make_group(s).unwrap()
    }

    fn order_p_subgroups(grp: &Group, p: usize) -> Vec<Subgroup> {
        grp.lattice().unwrap().subgroups().iter().filter(|s| s.order() == p).cloned().collect()
    }

    #[test]
    fn complement_count_examples() {
        for p in [2usize, 3, 5] {
            let e = g(&format!("C{p}xC{p}"));
            let lines = order_p_subgroups(&e, p);
            assert_eq!(lines.len(), p + 1);
            assert_eq!(count_common_complements(&e, &lines[0], &lines[1]).unwrap(), p as u128 - 1);
            assert_eq!(count_common_complements(&e, &lines[0], &lines[0]).unwrap(), p as u128);
            assert_eq!(count_common_complements_brute(&e, &lines[0], &lines[1]).unwrap(), p - 1);
            assert_eq!(count_common_complements_brute(&e, &lines[0], &lines[0]).unwrap(), p);
        }
        let d8 = g("D8");
        let one = d8.trivial_subgroup();
        assert_eq!(count_common_complements(&d8, &one, &one).unwrap(), 1);
        let c4 = g("C4");
        let c2 = order_p_subgroups(&c4, 2).remove(0);
        assert!(count_common_complements(&c4, &c2, &c2).is_err());
    }

    #[test]
    fn splitting_examples() {
        let c4 = g("C4");
        let s = split_frattini_core(&c4, &frattini(&c4).unwrap()).unwrap();
        assert_eq!(s.elementary.order(), 1);
        assert!(isomorphic(&s.top, &g("C2")));

        let v4 = g("C2xC2");
        let c2 = order_p_subgroups(&v4, 2).remove(0);
        let s = split_frattini_core(&v4, &c2).unwrap();
        assert!(isomorphic(&s.elementary, &g("C2")));
        assert!(isomorphic(&s.top, &g("C2")));

        let q8 = g("Q8");
        let s = split_frattini_core(&q8, &q8.center()).unwrap();
        assert_eq!(s.elementary.order(), 1);
        assert!(isomorphic(&s.top, &g("C2xC2")));
    }
}
