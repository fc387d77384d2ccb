//! m-numbers `m_{G,N}`, B-groups and the largest quotient B-group `β(G)`.

use crate::error::{Error, Result};
use crate::group::{isomorphic, Group, Subgroup};
use crate::rational::BRational;

/// `m_{G,N} = (1/|G|) Σ_{X ≤ G, XN = G} |X| μ(X, G)`.
pub fn m_number(g: &Group, n: &Subgroup) -> Result<BRational> {
    let lat = g.lattice()?;
    let ni = lat
        .index_of(n)
        .ok_or_else(|| Error::Precondition("subgroup of a different group".into()))?;
    if !lat.is_normal(ni) {
        return Err(Error::NotNormal(format!("order-{} subgroup of {}", n.order(), g.name())));
    }
    let mu = lat.mobius_top();
    let mut sum: i64 = 0;
    for (xi, x) in lat.subgroups().iter().enumerate() {
        if mu[xi] == 0 {
            continue;
        }
        let meet = x.members().intersection_len(n.members());
        if x.order() * n.order() == g.order() * meet {
            sum += x.order() as i64 * mu[xi];
        }
    }
    Ok(BRational::new(sum, g.order() as i64))
}

/// `m_{E,F}` for `E` elementary abelian of rank `n` and `F ≤ E` of rank `k`:
/// `(1 − p^{n−2})(1 − p^{n−3})⋯(1 − p^{n−k−1})`.
pub fn m_ef_closed_form(p: u64, n: u32, k: u32) -> BRational {
    assert!(k <= n, "subgroup rank exceeds ambient rank");
    (2..=k as i64 + 1)
        .map(|i| BRational::one() - BRational::pow_int(p, n as i64 - i))
        .fold(BRational::one(), |a, b| a * b)
}

/// `m_{G,N} = 0` for every nontrivial normal `N`.
pub fn is_b_group(g: &Group) -> Result<bool> {
    let lat = g.lattice()?;
    for ni in lat.normal_indices() {
        if ni == 0 {
            continue;
        }
        if !m_number(g, lat.get(ni))?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The largest quotient of `g` that is a B-group, with the normal subgroup it
/// is taken by.
///
/// Walks normal subgroups `N` by increasing order and keeps those with
/// `m_{G,N} ≠ 0` and `G/N` a B-group. All quotients of the first order found
/// are checked to be isomorphic to each other.
pub fn beta_with_kernel(g: &Group) -> Result<(Group, Subgroup)> {
    let lat = g.lattice()?;
    let mut best: Option<(Group, Subgroup)> = None;
    for ni in lat.normal_indices() {
        let n = lat.get(ni);
        if let Some((_, b)) = &best {
            if n.order() > b.order() {
                break;
            }
        }
        if m_number(g, n)?.is_zero() {
            continue;
        }
        let (q, _) = g.quotient(n)?;
        if !is_b_group(&q)? {
            continue;
        }
        match &best {
            None => best = Some((q, n.clone())),
            Some((b, _)) => {
                if !isomorphic(b, &q) {
                    return Err(Error::Inconsistent(format!(
                        "{} has non-isomorphic B-group quotients of order {}",
                        g.name(),
                        q.order()
                    )));
                }
            }
        }
    }
    best.ok_or_else(|| Error::Inconsistent(format!("{} has no B-group quotient", g.name())))
}

pub fn beta(g: &Group) -> Result<Group> {
    beta_with_kernel(g).map(|(q, _)| q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{frattini, make_group, p_rank};

    fn g(s: &str) -> Group {
        make_group(s).unwrap()
    }

    /// The defining sum with `XN` formed as an explicit set product.
    fn m_number_oracle(g: &Group, n: &Subgroup) -> BRational {
        let lat = g.lattice().unwrap();
        let whole = g.whole();
        let mut sum = BRational::zero();
        for x in lat.subgroups() {
            if g.product(x, n) == whole {
                let mu = lat.mobius(x, &whole).unwrap();
                sum = sum + BRational::from(x.order() as i64 * mu);
            }
        }
        sum / BRational::from(g.order() as i64)
    }

    #[test]
    fn m_number_examples() {
        for p in [2, 3, 5] {
            let c = g(&format!("C{p}"));
            assert_eq!(m_number(&c, &c.whole()).unwrap(), BRational::new(p as i64 - 1, p as i64));
            assert_eq!(m_number(&c, &c.trivial_subgroup()).unwrap(), BRational::one());
        }
        // the four Sylow 3-subgroups complement V4 in A4
        let a4 = g("A4");
        let v4 = a4.lattice().unwrap().subgroups().iter().find(|s| s.order() == 4).unwrap().clone();
        assert_eq!(m_number(&a4, &v4).unwrap(), BRational::zero());
        let s3 = g("S3");
        let c2 = s3.lattice().unwrap().get(1).clone();
        assert!(matches!(m_number(&s3, &c2), Err(Error::NotNormal(_))));
    }

    #[test]
    fn m_number_matches_definition() {
        for spec in ["S3", "D8", "Q8", "A4", "C2xC2xC2", "C6", "S4", "C3xC3", "D12", "C2xC2xC3"] {
            let grp = g(spec);
            let lat = grp.lattice().unwrap();
            for ni in lat.normal_indices() {
                let n = lat.get(ni);
                assert_eq!(m_number(&grp, n).unwrap(), m_number_oracle(&grp, n), "{spec}");
            }
        }
    }

    #[test]
    fn closed_form_matches_definition() {
        for (p, max_rank) in [(2u64, 4u32), (3, 3)] {
            for n in 0..=max_rank {
                let e = g(&format!("Elem({p},{n})"));
                for f in e.lattice().unwrap().subgroups() {
                    let k = p_rank(&e.subgroup_as_group(f).0).unwrap();
                    assert_eq!(m_number(&e, f).unwrap(), m_ef_closed_form(p, n, k), "p={p} n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn b_groups() {
        assert!(is_b_group(&g("A4")).unwrap());
        assert!(is_b_group(&g("C2xC2")).unwrap());
        assert!(is_b_group(&g("C3xC3")).unwrap());
        assert!(!is_b_group(&g("C2")).unwrap());
        assert!(!is_b_group(&g("C3")).unwrap());
        assert!(is_b_group(&g("C1")).unwrap());
        assert!(!is_b_group(&g("C4")).unwrap());
    }

    #[test]
    fn beta_examples() {
        for spec in ["C1", "C2", "C6", "C8", "C15"] {
            assert_eq!(beta(&g(spec)).unwrap().order(), 1, "{spec}");
        }
        assert!(isomorphic(&beta(&g("A4")).unwrap(), &g("A4")));
        assert!(isomorphic(&beta(&g("C2xC2xC3")).unwrap(), &g("C2xC2")));
        assert!(isomorphic(&beta(&g("D8xC3")).unwrap(), &beta(&g("D8")).unwrap()));
        // β(D8) is D8/Z(D8)
        assert!(isomorphic(&beta(&g("D8")).unwrap(), &g("C2xC2")));
        let q8 = g("Q8");
        let (_, kernel) = beta_with_kernel(&q8).unwrap();
        assert_eq!(kernel, frattini(&q8).unwrap());
    }
}
