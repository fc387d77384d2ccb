//! Table of marks and the p-elementary part of the Burnside ring.
//!
//!     cargo run --example burnside -- S3 2

use bisetkit::burnside::{e_p_rank, f_p_lattice, m_p_f_p_index, table_of_marks, BurnsideElement};
use bisetkit::make_group;

fn main() -> bisetkit::Result<()> {
    let mut args = std::env::args().skip(1);
    let spec = args.next().unwrap_or_else(|| "S3".into());
    let p: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(2);
    let g = make_group(&spec)?;

    println!("table of marks of {}:", g.name());
    for row in table_of_marks(&g)? {
        println!("  {row:?}");
    }
    // the regular G-set has mark |G| at 1 and 0 elsewhere
    let regular = BurnsideElement::of_subgroup(&g, &g.trivial_subgroup())?;
    println!("marks of G/1: {:?}", regular.marks()?.values);

    println!("e_p_rank = {}", e_p_rank(&g, p)?);
    println!("F_p rank = {}", f_p_lattice(&g, p)?.len());
    println!("index of M_p + F_p = {:?}", m_p_f_p_index(&g, p)?);
    Ok(())
}
