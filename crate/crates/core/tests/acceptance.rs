//! Acceptance criteria 1–7. Run with `cargo test --test acceptance -- --nocapture`
//! to see one PASS/FAIL line per criterion.

use std::process::Command;
use std::time::{Duration, Instant};

use bisetkit::bgroup::{beta, is_b_group, m_ef_closed_form, m_number};
use bisetkit::burnside::{e_p_rank, f_p_lattice, m_p_f_p_index, SublatticeIndex};
use bisetkit::complement::{count_common_complements, count_common_complements_brute};
use bisetkit::corpus::{default_corpus, small_p_groups};
use bisetkit::group::{is_p_elementary, p_group_prime, p_power_exponent};
use bisetkit::incidence::{expected_spectrum, incidence_report};
use bisetkit::section_count::CountRoute;
use bisetkit::simple_dim::RankRoute;
use bisetkit::{make_group, Error};
use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

const CRITERION_1_LIMIT: Duration = Duration::from_secs(600);
const CRITERION_2_LIMIT: Duration = Duration::from_secs(120);
const CRITERION_3_LIMIT: Duration = Duration::from_secs(60);

struct Line {
    id: u32,
    passed: bool,
    detail: String,
}

fn report(id: u32, passed: bool, detail: String) -> Line {
    println!("{} criterion {id}: {detail}", if passed { "PASS" } else { "FAIL" });
    Line { id, passed, detail }
}

fn suffix(bad: &[String]) -> String {
    match bad.first() {
        Some(first) => format!("; first: {first}"),
        None => String::new(),
    }
}

fn within(elapsed: Duration, limit: Duration) -> (bool, String) {
    (elapsed < limit, format!("{:.1}s of {}s", elapsed.as_secs_f64(), limit.as_secs()))
}

fn criterion_1() -> Line {
    let t0 = Instant::now();
    let corpus = default_corpus();
    let jobs: Vec<(usize, usize)> = (0..corpus.len()).flat_map(|i| [(i, 2), (i, 3)]).collect();
    let results: Vec<Result<(usize, Vec<String>), String>> = jobs
        .par_iter()
        .map(|&(i, p)| {
            let g = &corpus[i].group;
            let err = |e: Error| format!("{} p={p}: {e}", corpus[i].label);
            let count = CountRoute::new(g, p).map_err(err)?;
            let rank = RankRoute::new(g, p).map_err(err)?;
            let mut mismatches = Vec::new();
            let shapes = small_p_groups(p).map_err(err)?;
            for h in &shapes {
                let c = count.dim(h).map_err(err)?.dim;
                let r = rank.dim(h).map_err(err)?;
                if c != r {
                    mismatches.push(format!("{} p={p} H={}: count {c} rank {r}", corpus[i].label, h.name()));
                }
            }
            Ok((shapes.len(), mismatches))
        })
        .collect();
    let mut cases = 0;
    let mut bad = Vec::new();
    for r in results {
        match r {
            Ok((n, m)) => {
                cases += n;
                bad.extend(m);
            }
            Err(e) => bad.push(e),
        }
    }
    let (fast, time) = within(t0.elapsed(), CRITERION_1_LIMIT);
    let detail = format!("count = rank on {cases} (G, p, H) cases, {} bad, {time}{}", bad.len(), suffix(&bad));
    report(1, bad.is_empty() && cases > 0 && fast, detail)
}

fn criterion_2() -> Line {
    let t0 = Instant::now();
    let pgroups: Vec<_> = default_corpus()
        .into_iter()
        .filter(|e| match p_group_prime(&e.group) {
            Some(2) => e.group.order() <= 32,
            Some(3) => e.group.order() <= 27,
            _ => false,
        })
        .collect();
    let results: Vec<Result<(usize, Vec<String>), String>> = pgroups
        .par_iter()
        .map(|e| {
            let pg = &e.group;
            let err = |x: Error| format!("{}: {x}", e.label);
            let lat = pg.lattice().map_err(err)?;
            let normals = lat.normal_indices();
            let mut checked = 0;
            let mut bad = Vec::new();
            for &qi in &normals {
                for &ri in &normals {
                    let (q, r) = (lat.get(qi), lat.get(ri));
                    if q.order() != r.order() {
                        continue;
                    }
                    let closed = match count_common_complements(pg, q, r) {
                        Ok(c) => c,
                        Err(Error::Precondition(_) | Error::NotNormal(_)) => continue,
                        Err(x) => return Err(err(x)),
                    };
                    let brute = count_common_complements_brute(pg, q, r).map_err(err)? as u128;
                    checked += 1;
                    if closed != brute {
                        bad.push(format!("{} |Q|={}: closed {closed} brute {brute}", e.label, q.order()));
                    }
                }
            }
            Ok((checked, bad))
        })
        .collect();
    let mut pairs = 0;
    let mut bad = Vec::new();
    for r in results {
        match r {
            Ok((n, b)) => {
                pairs += n;
                bad.extend(b);
            }
            Err(e) => bad.push(e),
        }
    }
    let (fast, time) = within(t0.elapsed(), CRITERION_2_LIMIT);
    let detail = format!(
        "complement closed form = enumeration on {pairs} normal pairs over {} p-groups, {} bad, {time}",
        pgroups.len(),
        bad.len()
    ) + &suffix(&bad);
    report(2, bad.is_empty() && pairs > 0 && fast, detail)
}

/// `trace(A^k)` for `k = 1..=n`, which determines the characteristic
/// polynomial over the rationals.
fn power_traces(a: &[Vec<i64>]) -> Vec<BigInt> {
    let n = a.len();
    let a: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut power = a.clone();
    let mut traces = Vec::with_capacity(n);
    for k in 1..=n {
        traces.push((0..n).map(|i| power[i][i].clone()).sum());
        if k < n {
            power = (0..n)
                .map(|i| (0..n).map(|j| (0..n).fold(BigInt::zero(), |s, l| s + &power[i][l] * &a[l][j])).collect())
                .collect();
        }
    }
    traces
}

fn criterion_3() -> Line {
    let t0 = Instant::now();
    let mut bad = Vec::new();
    for (p, e) in [(2u64, 0u32), (2, 1), (2, 2), (3, 0), (3, 1)] {
        let r = match incidence_report(p, e, 3) {
            Ok(r) => r,
            Err(x) => {
                bad.push(format!("p={p} e={e}: {x}"));
                continue;
            }
        };
        let spectrum = expected_spectrum(p, e);
        let from_spectrum: Vec<BigInt> = (1..=r.size as u32)
            .map(|k| spectrum.iter().map(|s| BigInt::from(s.multiplicity) * BigInt::from(s.eigenvalue).pow(k)).sum())
            .collect();
        let total: usize = spectrum.iter().map(|s| s.multiplicity).sum();
        let traces_agree = total == r.size && power_traces(&r.matrix) == from_spectrum;
        if !r.charpoly_matches || !traces_agree {
            bad.push(format!("p={p} e={e}: charpoly {} traces {traces_agree}", r.charpoly_matches));
        }
    }
    let (fast, time) = within(t0.elapsed(), CRITERION_3_LIMIT);
    report(3, bad.is_empty() && fast, format!("incidence charpoly on 5 (p, e) cases by determinant and by power traces, {time}{}", suffix(&bad)))
}

fn criterion_4() -> Line {
    let mut bad = Vec::new();
    let s3 = make_group("S3").unwrap();
    match e_p_rank(&s3, 2) {
        Ok(3) => {}
        other => bad.push(format!("e_p_rank(S3, 2) = {other:?}")),
    }
    match m_p_f_p_index(&s3, 2) {
        Ok(SublatticeIndex::Finite(n)) if n == BigInt::from(2) => {}
        other => bad.push(format!("m_p_f_p_index(S3, 2) = {other:?}")),
    }
    let mut checked = 0;
    for e in default_corpus() {
        let primes: Vec<usize> = match p_group_prime(&e.group) {
            Some(p) => vec![p],
            None if e.group.order() == 1 => vec![2, 3],
            None => continue,
        };
        for p in primes {
            checked += 1;
            match f_p_lattice(&e.group, p) {
                Ok(v) if v.is_empty() => {}
                Ok(v) => bad.push(format!("{} p={p}: F_p rank {}", e.label, v.len())),
                Err(x) => bad.push(format!("{} p={p}: {x}", e.label)),
            }
        }
    }
    report(4, bad.is_empty(), format!("S3 values and F_p(P) = 0 on {checked} corpus p-groups{}", suffix(&bad)))
}

fn criterion_5() -> Line {
    let mut bad = Vec::new();
    for (spec, expected) in
        [("A4", true), ("C2xC2", true), ("C3xC3", true), ("C5xC5", true), ("C2", false), ("C3", false), ("C5", false)]
    {
        match is_b_group(&make_group(spec).unwrap()) {
            Ok(b) if b == expected => {}
            other => bad.push(format!("is_b_group({spec}) = {other:?}")),
        }
    }
    let corpus = default_corpus();
    let beta_bad: Vec<String> = corpus
        .par_iter()
        .flat_map_iter(|e| {
            let mut out = Vec::new();
            match beta(&e.group) {
                Ok(b) => {
                    for p in [2, 3] {
                        let b_is_p = p_power_exponent(b.order(), p).is_some();
                        if b_is_p != is_p_elementary(&e.group, p) {
                            out.push(format!("{} p={p}: β order {}", e.label, b.order()));
                        }
                    }
                }
                Err(x) => out.push(format!("{}: {x}", e.label)),
            }
            out
        })
        .collect();
    bad.extend(beta_bad);
    report(5, bad.is_empty(), format!("B-group examples and β p-group ⇔ p-elementary on {} groups{}", corpus.len(), suffix(&bad)))
}

fn criterion_6() -> Line {
    let mut bad = Vec::new();
    let mut checked = 0;
    for p in [2u64, 3] {
        for n in 0..=4u32 {
            let spec = if n == 0 { "C1".to_string() } else { format!("Elem({p},{n})") };
            let e = make_group(&spec).unwrap();
            for f in e.lattice().unwrap().subgroups() {
                let k = p_power_exponent(f.order(), p as usize).unwrap();
                let sum = m_number(&e, f).unwrap();
                let closed = m_ef_closed_form(p, n, k);
                checked += 1;
                if sum != closed {
                    bad.push(format!("{spec} rank {k}: sum {sum} closed {closed}"));
                }
            }
        }
    }
    report(6, bad.is_empty(), format!("m_(E,F) closed form = defining sum on {checked} (E, F) pairs{}", suffix(&bad)))
}

fn criterion_7() -> Line {
    let out = Command::new(env!("CARGO_BIN_EXE_bisetkit"))
        .arg("verify-corpus")
        .env_remove("BISETKIT_CORPUS")
        .output()
        .expect("run bisetkit");
    let code = out.status.code();
    let tail = String::from_utf8_lossy(&out.stdout).lines().last().unwrap_or("").to_string();
    report(7, code == Some(0), format!("verify-corpus exit code {code:?}, {tail}"))
}

#[test]
fn acceptance() {
    let lines = [criterion_1(), criterion_2(), criterion_3(), criterion_4(), criterion_5(), criterion_6(), criterion_7()];
    let failed: Vec<String> = lines.iter().filter(|l| !l.passed).map(|l| format!("{}: {}", l.id, l.detail)).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:#?}");
}
