//! Burnside groups through the table of marks: restriction, and the lattices
//! `F_p(G)` of elements with vanishing marks on p-elementary subgroups.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{pull_back, Elem, Group, Subgroup};
use crate::linalg::{determinant, integer_kernel, integer_rank};
use crate::section_count::p_elementary_class_flags;

/// `marks[K][X] = |(G/K)^X|` over subgroup classes in lattice class order.
/// Lower triangular, with diagonal `|N_G(K) : K|`.
pub fn table_of_marks(g: &Group) -> Result<&[Vec<u64>]> {
    let lat = g.lattice()?;
    let table = lat.marks_cell().get_or_init(|| {
        let reps: Vec<&Subgroup> = lat.class_reps().into_iter().map(|i| lat.get(i)).collect();
        let gens: Vec<Vec<Elem>> = reps.iter().map(|x| g.generators_of(x)).collect();
        reps.iter()
            .map(|k| {
                gens.iter()
                    .zip(&reps)
                    .map(|(xg, x)| {
                        if k.order() % x.order() != 0 {
                            return 0;
                        }
                        // cosets gK fixed by X, i.e. g with g⁻¹Xg ⊆ K, divided by |K|
                        let fixing = g
                            .elements()
                            .filter(|&t| xg.iter().all(|&y| k.contains(g.conj(y, t))))
                            .count();
                        (fixing / k.order()) as u64
                    })
                    .collect()
            })
            .collect()
    });
    Ok(table)
}

/// An integer combination of the transitive `G`-sets `[G/K]`, one coefficient
/// per subgroup class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BurnsideElement {
    group: Group,
    coeffs: Vec<BigInt>,
}

/// `|u^X|` for each subgroup class `X`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MarksVector {
    #[serde(serialize_with = "crate::rational::serialize_bigints")]
    pub values: Vec<BigInt>,
}

impl BurnsideElement {
    pub fn new(g: &Group, coeffs: Vec<BigInt>) -> Result<Self> {
        let classes = g.lattice()?.classes().len();
        if coeffs.len() != classes {
            return Err(Error::Precondition(format!(
                "{} coefficients for {classes} subgroup classes",
                coeffs.len()
            )));
        }
        Ok(BurnsideElement { group: g.clone(), coeffs })
    }

    pub fn zero(g: &Group) -> Result<Self> {
        let n = g.lattice()?.classes().len();
        Ok(BurnsideElement { group: g.clone(), coeffs: vec![BigInt::zero(); n] })
    }

    /// `[G/K]` for the subgroup class with index `class`.
    pub fn transitive(g: &Group, class: usize) -> Result<Self> {
        let mut u = Self::zero(g)?;
        u.coeffs[class] = BigInt::from(1);
        Ok(u)
    }

    /// `[G/K]` for an arbitrary subgroup `K`.
    pub fn of_subgroup(g: &Group, k: &Subgroup) -> Result<Self> {
        let lat = g.lattice()?;
        let i = lat
            .index_of(k)
            .ok_or_else(|| Error::Precondition("subgroup of a different group".into()))?;
        Self::transitive(g, lat.class_of(i))
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn marks(&self) -> Result<MarksVector> {
        let tom = table_of_marks(&self.group)?;
        let n = self.coeffs.len();
        let values = (0..n)
            .map(|x| {
                (0..n)
                    .filter(|&k| !self.coeffs[k].is_zero())
                    .map(|k| &self.coeffs[k] * BigInt::from(tom[k][x]))
                    .sum()
            })
            .collect();
        Ok(MarksVector { values })
    }

    pub fn add(&self, other: &BurnsideElement) -> Result<BurnsideElement> {
        if self.group != other.group {
            return Err(Error::Precondition("Burnside elements of different groups".into()));
        }
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(BurnsideElement { group: self.group.clone(), coeffs })
    }
}

/// Restriction to a subgroup, with the subgroup realised as a group and its
/// embedding into the parent.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub element: BurnsideElement,
    pub embed: Vec<Elem>,
}

/// `Res_H^G u`, by the double-coset formula
/// `Res_H [G/K] = Σ_{HtK} [H/(H ∩ tKt⁻¹)]`.
pub fn restrict(u: &BurnsideElement, h: &Subgroup) -> Result<Restriction> {
    let g = &u.group;
    if !g.owns(h) {
        return Err(Error::Precondition("subgroup of a different group".into()));
    }
    let lat = g.lattice()?;
    let (hg, embed) = g.subgroup_as_group(h);
    let hlat = hg.lattice()?;
    let mut coeffs = vec![BigInt::zero(); hlat.classes().len()];
    for (class, c) in u.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let k = lat.get(lat.classes()[class][0]);
        let mut seen = vec![false; g.order()];
        for t in g.elements() {
            if seen[t] {
                continue;
            }
            for x in h.members().iter() {
                for y in k.members().iter() {
                    seen[g.mul(g.mul(x, t), y)] = true;
                }
            }
            // tKt⁻¹ = {t k t⁻¹}
            let conj_k = g.conjugate(k, g.inv(t));
            let meet = g.intersection(h, &conj_k);
            let local = pull_back(&hg, &embed, &meet);
            let idx = hlat.index_of(&local).expect("subgroup of H");
            coeffs[hlat.class_of(idx)] += c;
        }
    }
    Ok(Restriction {
        element: BurnsideElement { group: hg, coeffs },
        embed,
    })
}

fn p_elementary_columns(g: &Group, p: usize) -> Result<Vec<Vec<BigInt>>> {
    let tom = table_of_marks(g)?;
    let flags = p_elementary_class_flags(g, p)?;
    let n = flags.len();
    // largest classes first: the marks table is triangular, so elimination
    // in this order creates no fill
    Ok((0..n)
        .rev()
        .filter(|&x| flags[x])
        .map(|x| (0..n).map(|k| BigInt::from(tom[k][x])).collect())
        .collect())
}

/// A ℤ-basis (Hermite normal form) of `F_p(G)`: coefficient vectors whose
/// marks vanish at every p-elementary subgroup class.
pub fn f_p_lattice(g: &Group, p: usize) -> Result<Vec<Vec<BigInt>>> {
    let n = g.lattice()?.classes().len();
    let rows = p_elementary_columns(g, p)?;
    Ok(integer_kernel(&rows, n))
}

/// Rank of `E_p(G) = B(G)/F_p(G)`, computed both as the number of p-elementary
/// classes and as the corank of `F_p(G)`.
pub fn e_p_rank(g: &Group, p: usize) -> Result<usize> {
    let n = g.lattice()?.classes().len();
    let by_count = p_elementary_class_flags(g, p)?.iter().filter(|&&f| f).count();
    let by_kernel = n - f_p_lattice(g, p)?.len();
    if by_count != by_kernel {
        return Err(Error::Inconsistent(format!(
            "E_p rank of {}: {by_count} p-elementary classes but corank {by_kernel}",
            g.name()
        )));
    }
    Ok(by_count)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SublatticeIndex {
    Finite(#[serde(serialize_with = "crate::rational::serialize_bigint")] BigInt),
    Infinite,
}

/// Index in `B(G)` of `M_p(G) + F_p(G)`, where `M_p(G)` is spanned by the
/// `[G/K]` with `K` p-elementary. Errors if the sum is not direct.
pub fn m_p_f_p_index(g: &Group, p: usize) -> Result<SublatticeIndex> {
    let n = g.lattice()?.classes().len();
    let flags = p_elementary_class_flags(g, p)?;
    let mut basis: Vec<Vec<BigInt>> = (0..n)
        .filter(|&k| flags[k])
        .map(|k| (0..n).map(|j| BigInt::from(i32::from(j == k))).collect())
        .collect();
    let fp = f_p_lattice(g, p)?;
    let expected = basis.len() + fp.len();
    basis.extend(fp);
    if integer_rank(&basis) != expected {
        return Err(Error::Inconsistent(format!("M_p ∩ F_p ≠ 0 for {}", g.name())));
    }
    if expected < n {
        return Ok(SublatticeIndex::Infinite);
    }
    Ok(SublatticeIndex::Finite(determinant(&basis).abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_group;

    fn g(s: &str) -> Group {
        make_group(s).unwrap()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn marks_of_small_groups() {
        let c2 = g("C2");
        assert_eq!(table_of_marks(&c2).unwrap(), &[vec![2, 0], vec![1, 1]]);
        let s3 = g("S3");
        let tom = table_of_marks(&s3).unwrap();
        assert_eq!(tom[3], vec![1, 1, 1, 1]);
        assert_eq!(tom.iter().map(|r| r[0]).collect::<Vec<_>>(), vec![6, 3, 2, 1]);
        let free = BurnsideElement::transitive(&s3, 0).unwrap();
        assert_eq!(free.marks().unwrap().values, big(&[6, 0, 0, 0]));
        assert_eq!(BurnsideElement::zero(&s3).unwrap().marks().unwrap().values, big(&[0; 4]));
    }

    #[test]
    fn restriction_examples() {
        let s3 = g("S3");
        let lat = s3.lattice().unwrap();
        let c2 = lat.get(1).clone();
        assert_eq!(c2.order(), 2);
        let a3 = s3.derived_subgroup();
        let point = BurnsideElement::of_subgroup(&s3, &s3.whole()).unwrap();
        assert_eq!(restrict(&point, &c2).unwrap().element.coeffs(), &big(&[0, 1])[..]);
        // a transposition swaps the two cosets of A3
        let two_points = BurnsideElement::of_subgroup(&s3, &a3).unwrap();
        assert_eq!(restrict(&two_points, &c2).unwrap().element.coeffs(), &big(&[1, 0])[..]);
        let free = BurnsideElement::transitive(&s3, 0).unwrap();
        assert_eq!(restrict(&free, &c2).unwrap().element.coeffs(), &big(&[3, 0])[..]);
    }

    #[test]
    fn section_five_numbers() {
        let s3 = g("S3");
        assert_eq!(e_p_rank(&s3, 2).unwrap(), 3);
        assert_eq!(f_p_lattice(&s3, 2).unwrap().len(), 1);
        assert_eq!(m_p_f_p_index(&s3, 2).unwrap(), SublatticeIndex::Finite(BigInt::from(2)));
        assert_eq!(e_p_rank(&g("C1"), 5).unwrap(), 1);
        assert_eq!(e_p_rank(&g("C4"), 2).unwrap(), 3);
        assert!(f_p_lattice(&g("C6"), 2).unwrap().is_empty());
        for spec in ["D8", "Q8", "C3xC3"] {
            let pg = g(spec);
            let p = crate::group::p_group_prime(&pg).unwrap();
            assert!(f_p_lattice(&pg, p).unwrap().is_empty());
            assert_eq!(m_p_f_p_index(&pg, p).unwrap(), SublatticeIndex::Finite(BigInt::from(1)));
        }
        assert_eq!(m_p_f_p_index(&g("C2"), 3).unwrap(), SublatticeIndex::Finite(BigInt::from(1)));
    }
}
