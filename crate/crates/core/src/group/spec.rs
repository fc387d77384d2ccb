//! Group-spec strings.
//!
//! ```text
//! C<n>          cyclic of order n
//! D<n>          dihedral of order n (n even)
//! Q8, Q16       quaternion / dicyclic
//! S<n>, A<n>    symmetric and alternating, n <= 5
//! Elem(p,k)     elementary abelian of order p^k
//! V4            alias for the Klein four-group
//! perm:<d>:[<cycles>;<cycles>;...]   permutation generators on 1..d
//! G x H         direct product, left-associative
//! ```

use std::collections::HashMap;

use super::{Group, Limits};
use crate::error::{Error, Result};
use crate::group::structure::is_prime;

/// Parses and builds a group under the default [`Limits`].
pub fn make_group(spec: &str) -> Result<Group> {
    make_group_with(spec, Limits::default())
}

pub fn make_group_with(spec: &str, limits: Limits) -> Result<Group> {
    let compact: String = spec.split_whitespace().collect::<Vec<_>>().join(" ");
    let factors = split_product(spec)?;
    let mut acc: Option<Group> = None;
    for f in factors {
        let g = factor(f.trim(), spec, limits)?;
        acc = Some(match acc {
            None => g,
            Some(a) => a.direct_product(&g)?,
        });
    }
    let g = acc.ok_or_else(|| Error::parse(spec, "empty spec"))?;
    if !g.verify_axioms() {
        return Err(Error::Construction(format!("`{spec}` does not satisfy the group axioms")));
    }
    Ok(g.renamed(compact))
}

fn split_product(spec: &str) -> Result<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in spec.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::parse(spec, "unbalanced brackets"));
                }
            }
            'x' if depth == 0 => {
                parts.push(&spec[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::parse(spec, "unbalanced brackets"));
    }
    parts.push(&spec[start..]);
    if parts.iter().any(|p| p.trim().is_empty()) {
        return Err(Error::parse(spec, "empty factor in product"));
    }
    Ok(parts)
}

fn number(s: &str, spec: &str) -> Result<usize> {
    s.trim()
        .parse::<usize>()
        .map_err(|_| Error::parse(spec, format!("expected a number, found `{s}`")))
}

fn factor(f: &str, spec: &str, limits: Limits) -> Result<Group> {
    if let Some(rest) = f.strip_prefix("perm:") {
        return perm_factor(rest, spec, limits);
    }
    if let Some(rest) = f.strip_prefix("Elem(") {
        let inner = rest
            .strip_suffix(')')
            .ok_or_else(|| Error::parse(spec, "unterminated Elem("))?;
        let (p, k) = inner
            .split_once(',')
            .ok_or_else(|| Error::parse(spec, "Elem needs (p,k)"))?;
        let (p, k) = (number(p, spec)?, number(k, spec)?);
        if !is_prime(p) {
            return Err(Error::parse(spec, format!("{p} is not prime")));
        }
        let order = p
            .checked_pow(k as u32)
            .filter(|&o| o <= limits.order_bound)
            .ok_or_else(|| Error::Resource(format!("Elem({p},{k}) exceeds the order bound")))?;
        let _ = order;
        let cp = cyclic(p, limits)?;
        let mut g = cyclic(1, limits)?;
        for _ in 0..k {
            g = g.direct_product(&cp)?;
        }
        return Ok(g);
    }
    match f {
        "Q8" => return dicyclic(2, limits),
        "Q16" => return dicyclic(4, limits),
        "V4" => return cyclic(2, limits)?.direct_product(&cyclic(2, limits)?),
        _ => {}
    }
    let (head, tail) = f.split_at(f.chars().next().map_or(0, |c| c.len_utf8()));
    let n = || number(tail, spec);
    match head {
        "C" => {
            let n = n()?;
            if n == 0 {
                return Err(Error::parse(spec, "C0 is not a group"));
            }
            cyclic(n, limits)
        }
        "D" => {
            let n = n()?;
            if n == 0 || n % 2 == 1 {
                return Err(Error::parse(spec, "dihedral order must be even"));
            }
            dihedral(n, limits)
        }
        "S" | "A" => {
            let n = n()?;
            if n == 0 || n > 5 {
                return Err(Error::parse(spec, "degree must be between 1 and 5"));
            }
            symmetric_or_alternating(n, head == "A", limits)
        }
        _ => Err(Error::parse(spec, format!("unknown group `{f}`"))),
    }
}

fn check_order(n: usize, limits: Limits) -> Result<()> {
    if n > limits.order_bound {
        Err(Error::Resource(format!(
            "group order {n} exceeds the order bound {}",
            limits.order_bound
        )))
    } else {
        Ok(())
    }
}

fn cyclic(n: usize, limits: Limits) -> Result<Group> {
    check_order(n, limits)?;
    let table = (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect();
    Group::from_table(format!("C{n}"), n, table, limits)
}

/// Elements `r^a s^f` encoded as `2a + f`.
fn dihedral(n: usize, limits: Limits) -> Result<Group> {
    check_order(n, limits)?;
    let m = n / 2;
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        let (a, f) = (x / 2, x % 2);
        for y in 0..n {
            let (b, g) = (y / 2, y % 2);
            let rot = if f == 0 { (a + b) % m } else { (a + m - b) % m };
            table.push((2 * rot + (f ^ g)) as u32);
        }
    }
    Group::from_table(format!("D{n}"), n, table, limits)
}

/// Dicyclic group of order `4m`: `a^{2m} = 1, x^2 = a^m, x⁻¹ a x = a⁻¹`.
/// Elements `a^i x^f` encoded as `2i + f`.
fn dicyclic(m: usize, limits: Limits) -> Result<Group> {
    let n = 4 * m;
    check_order(n, limits)?;
    let k = 2 * m;
    let mut table = Vec::with_capacity(n * n);
    for u in 0..n {
        let (i, f) = (u / 2, u % 2);
        for v in 0..n {
            let (j, g) = (v / 2, v % 2);
            let (e, h) = match (f, g) {
                (0, _) => ((i + j) % k, g),
                (1, 0) => ((i + k - j) % k, 1),
                _ => ((i + k - j + m) % k, 0),
            };
            table.push((2 * e + h) as u32);
        }
    }
    Group::from_table(format!("Q{n}"), n, table, limits)
}

fn symmetric_or_alternating(n: usize, alternating: bool, limits: Limits) -> Result<Group> {
    let mut gens: Vec<Vec<usize>> = Vec::new();
    if alternating {
        // 3-cycles (1 2 k) generate A_n
        for k in 2..n {
            let mut p: Vec<usize> = (0..n).collect();
            p[0] = 1;
            p[1] = k;
            p[k] = 0;
            gens.push(p);
        }
    } else if n > 1 {
        let mut t: Vec<usize> = (0..n).collect();
        t.swap(0, 1);
        gens.push(t);
        gens.push((0..n).map(|i| (i + 1) % n).collect());
    }
    let name = format!("{}{n}", if alternating { "A" } else { "S" });
    permutation_group(&name, n, &gens, limits)
}

fn perm_factor(rest: &str, spec: &str, limits: Limits) -> Result<Group> {
    let (deg, gens) = rest
        .split_once(':')
        .ok_or_else(|| Error::parse(spec, "expected perm:<degree>:[...]"))?;
    let degree = number(deg, spec)?;
    if degree == 0 {
        return Err(Error::parse(spec, "degree must be positive"));
    }
    let body = gens
        .trim()
        .strip_prefix('[')
        .and_then(|b| b.strip_suffix(']'))
        .ok_or_else(|| Error::parse(spec, "generators must be enclosed in [..]"))?;
    let mut perms = Vec::new();
    for g in body.split(';') {
        if g.trim().is_empty() {
            continue;
        }
        perms.push(parse_cycles(g, degree, spec)?);
    }
    permutation_group(&format!("perm:{degree}"), degree, &perms, limits)
}

fn parse_cycles(text: &str, degree: usize, spec: &str) -> Result<Vec<usize>> {
    let mut perm: Vec<usize> = (0..degree).collect();
    let mut rest = text.trim();
    let mut seen = vec![false; degree];
    while !rest.is_empty() {
        let open = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::parse(spec, format!("expected `(` in `{text}`")))?;
        let close = open
            .find(')')
            .ok_or_else(|| Error::parse(spec, "unterminated cycle"))?;
        let points: Vec<usize> = open[..close]
            .split([' ', ','])
            .filter(|s| !s.is_empty())
            .map(|s| number(s, spec))
            .collect::<Result<_>>()?;
        for &pt in &points {
            if pt == 0 || pt > degree {
                return Err(Error::parse(spec, format!("point {pt} outside 1..{degree}")));
            }
            if std::mem::replace(&mut seen[pt - 1], true) {
                return Err(Error::parse(spec, format!("point {pt} repeated in `{text}`")));
            }
        }
        for w in 0..points.len() {
            perm[points[w] - 1] = points[(w + 1) % points.len()] - 1;
        }
        rest = open[close + 1..].trim_start();
    }
    Ok(perm)
}

/// Closure of permutation generators. Products compose left to right
/// (`(a·b)(i) = b(a(i))`); elements are sorted lexicographically so the
/// identity comes first.
pub(crate) fn permutation_group(name: &str, degree: usize, gens: &[Vec<usize>], limits: Limits) -> Result<Group> {
    let id: Vec<usize> = (0..degree).collect();
    let compose = |a: &[usize], b: &[usize]| -> Vec<usize> { a.iter().map(|&i| b[i]).collect() };
    let mut elems = vec![id.clone()];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
    let mut head = 0;
    while head < elems.len() {
        let x = elems[head].clone();
        head += 1;
        for g in gens {
            let y = compose(&x, g);
            if !index.contains_key(&y) {
                if elems.len() >= limits.order_bound {
                    return Err(Error::Resource(format!(
                        "generators of {name} do not close within the order bound {}",
                        limits.order_bound
                    )));
                }
                index.insert(y.clone(), elems.len());
                elems.push(y);
            }
        }
    }
    elems.sort();
    let index: HashMap<&[usize], usize> = elems.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let n = elems.len();
    let mut table = Vec::with_capacity(n * n);
    for a in &elems {
        for b in &elems {
            table.push(index[compose(a, b).as_slice()] as u32);
        }
    }
    Group::from_table(name, n, table, limits)
}
