use std::sync::OnceLock;

use bisetkit::bgroup::{is_b_group, m_ef_closed_form, m_number};
use bisetkit::burnside::BurnsideElement;
use bisetkit::cli::{render_json, run};
use bisetkit::corpus::{default_corpus, small_p_groups, CorpusEntry};
use bisetkit::group::{isomorphic, Limits};
use bisetkit::incidence::incidence_report;
use bisetkit::section_count::CountRoute;
use bisetkit::simple_dim::RankRoute;
use bisetkit::{make_group, Group};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use proptest::sample::{select, Index};

fn corpus() -> &'static [CorpusEntry] {
    static CORPUS: OnceLock<Vec<CorpusEntry>> = OnceLock::new();
    CORPUS.get_or_init(default_corpus)
}

fn small_groups(max: usize) -> Vec<Group> {
    corpus().iter().map(|e| e.group.clone()).filter(|g| g.order() <= max).collect()
}

fn shapes(p: usize, max: usize) -> Vec<Group> {
    small_p_groups(p).unwrap().into_iter().filter(|h| h.order() <= max).collect()
}

/// `g` with its non-identity elements permuted by a Fisher–Yates shuffle
/// driven by `shuffle`.
fn relabel(g: &Group, shuffle: &[usize]) -> Group {
    let n = g.order();
    let mut sigma: Vec<usize> = (0..n).collect();
    for (i, &s) in shuffle.iter().enumerate().take(n.saturating_sub(1)) {
        let j = 1 + i + s % (n - 1 - i);
        sigma.swap(1 + i, j);
    }
    let mut table = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            table[sigma[a] * n + sigma[b]] = sigma[g.mul(a, b)] as u32;
        }
    }
    Group::from_table(format!("{}'", g.name()), n, table, Limits::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn relabelled_groups_are_isomorphic_groups(g in select(small_groups(24)), shuffle in prop::collection::vec(any::<usize>(), 24)) {
        let h = relabel(&g, &shuffle);
        prop_assert!(h.verify_axioms());
        prop_assert!(isomorphic(&g, &h));
        prop_assert_eq!(g.lattice().unwrap().len(), h.lattice().unwrap().len());
        prop_assert_eq!(is_b_group(&g).unwrap(), is_b_group(&h).unwrap());
    }

    #[test]
    fn quotients_have_index_order(g in select(small_groups(32)), pick in any::<Index>()) {
        let lat = g.lattice().unwrap();
        let normals = lat.normal_indices();
        let n = lat.get(normals[pick.index(normals.len())]);
        let (q, proj) = g.quotient(n).unwrap();
        prop_assert!(q.verify_axioms());
        prop_assert_eq!(q.order() * n.order(), g.order());
        prop_assert!(proj.is_homomorphism() && proj.is_surjective());
        let kernel = proj.kernel();
        prop_assert_eq!(kernel.members(), n.members());
    }

    #[test]
    fn mobius_sums_vanish_on_intervals(g in select(small_groups(24)), a in any::<Index>(), b in any::<Index>()) {
        let lat = g.lattice().unwrap();
        let y = b.index(lat.len());
        let below = lat.below(y);
        let x = below[a.index(below.len())];
        let sum: i64 = (0..lat.len())
            .filter(|&z| lat.get(x).is_subgroup_of(lat.get(z)) && lat.get(z).is_subgroup_of(lat.get(y)))
            .map(|z| lat.mobius_idx(z, y))
            .sum();
        prop_assert_eq!(sum, i64::from(x == y));
    }

    #[test]
    fn marks_are_additive_and_faithful(g in select(small_groups(24)), u in prop::collection::vec(-5i64..=5, 80), v in prop::collection::vec(-5i64..=5, 80)) {
        let k = g.lattice().unwrap().classes().len();
        let ue = BurnsideElement::new(&g, u[..k].iter().map(|&x| BigInt::from(x)).collect()).unwrap();
        let ve = BurnsideElement::new(&g, v[..k].iter().map(|&x| BigInt::from(x)).collect()).unwrap();
        let (mu, mv) = (ue.marks().unwrap().values, ve.marks().unwrap().values);
        let msum = ue.add(&ve).unwrap().marks().unwrap().values;
        for i in 0..k {
            prop_assert_eq!(&msum[i], &(&mu[i] + &mv[i]));
        }
        let u_zero = ue.coeffs().iter().all(Zero::is_zero);
        prop_assert_eq!(u_zero, mu.iter().all(Zero::is_zero));
    }

    #[test]
    fn incidence_charpoly_for_any_height(p in select(vec![2u64, 3]), e in 0u32..=2, h in 3u32..=7) {
        prop_assume!(p == 2 || e <= 1);
        let r = incidence_report(p, e, h).unwrap();
        prop_assert!(r.charpoly_matches);
        prop_assert_eq!(r.spectrum.iter().map(|s| s.multiplicity).sum::<usize>(), r.size);
        prop_assert_eq!(r.size, (p as usize).pow(2 * e));
    }

    #[test]
    fn m_ef_closed_form_on_generated_subgroups(p in select(vec![2u64, 3]), n in 0u32..=4, k in 0u32..=4) {
        prop_assume!(k <= n);
        let e = if n == 0 { make_group("C1").unwrap() } else { make_group(&format!("Elem({p},{n})")).unwrap() };
        let gens = e.generators();
        let f = e.generate(&gens[..k as usize]);
        prop_assert_eq!(f.order(), (p as usize).pow(k));
        prop_assert_eq!(m_number(&e, &f).unwrap(), m_ef_closed_form(p, n, k));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn routes_agree(g in select(small_groups(24)), p in select(vec![2usize, 3]), pick in any::<Index>()) {
        let hs = shapes(p, 9);
        let h = &hs[pick.index(hs.len())];
        let count = CountRoute::new(&g, p).unwrap().dim(h).unwrap().dim;
        let rank = RankRoute::new(&g, p).unwrap().dim(h).unwrap();
        prop_assert_eq!(count, rank);
    }

    #[test]
    fn forms_are_symmetric_and_invariant(g in select(small_groups(24)), p in select(vec![2usize, 3]), pick in any::<Index>()) {
        let hs = shapes(p, 9);
        let h = &hs[pick.index(hs.len())];
        for (_, _, form) in RankRoute::new(&g, p).unwrap().forms(h).unwrap() {
            prop_assert!(form.is_symmetric());
            prop_assert!(form.is_invariant());
            prop_assert!(form.rank() <= form.size());
        }
    }

    #[test]
    fn dimension_is_relabelling_invariant(g in select(small_groups(16)), shuffle in prop::collection::vec(any::<usize>(), 16), pick in any::<Index>()) {
        let hs = shapes(2, 8);
        let h = &hs[pick.index(hs.len())];
        let relabelled = relabel(&g, &shuffle);
        let a = RankRoute::new(&g, 2).unwrap().dim(h).unwrap();
        let b = RankRoute::new(&relabelled, 2).unwrap().dim(h).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn cli_json_round_trips(gi in any::<Index>(), p in select(vec![2usize, 3]), pick in any::<Index>(), method in select(vec!["count", "rank", "both"])) {
        let gs = small_groups(16);
        let g = gs[gi.index(gs.len())].name().to_string();
        let hs = shapes(p, 9);
        let h = hs[pick.index(hs.len())].name().to_string();
        let prime = p.to_string();
        let out = run(["bisetkit", "dim-simple", "--group", &g, "--H", &h, "--prime", &prime, "--method", method, "--output", "json"]);
        prop_assert_eq!(out.code, 0, "{}", out.stderr);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        prop_assert_eq!(render_json(&v), out.stdout);
        prop_assert_eq!(&v["verdict"], "pass");
    }
}
