//! Building groups from specs, walking the subgroup lattice, and taking
//! quotients.
//!
//!     cargo run --example groups -- D8

use bisetkit::group::frattini;
use bisetkit::make_group;

fn main() -> bisetkit::Result<()> {
    let spec = std::env::args().nth(1).unwrap_or_else(|| "S4".into());
    let g = make_group(&spec)?;
    let lat = g.lattice()?;
    println!("{}: order {}, {} subgroups in {} classes", g.name(), g.order(), lat.len(), lat.classes().len());

    let top = lat.top();
    println!("mobius(1, G) = {}", lat.mobius(&g.trivial_subgroup(), lat.get(top))?);

    for ni in lat.normal_indices() {
        let n = lat.get(ni);
        let (q, _) = g.quotient(n)?;
        println!("  normal subgroup of order {:>3}: quotient of order {:>3}, abelian {}", n.order(), q.order(), q.is_abelian());
    }
    if bisetkit::group::p_group_prime(&g).is_some() {
        println!("Frattini subgroup has order {}", frattini(&g)?.order());
    }
    Ok(())
}
