//! Common complements of two normal subgroups of a p-group, counted by the
//! closed form and by enumeration.
//!
//!     cargo run --example complements -- D8

use bisetkit::complement::{count_common_complements, count_common_complements_brute};
use bisetkit::make_group;

fn main() -> bisetkit::Result<()> {
    let spec = std::env::args().nth(1).unwrap_or_else(|| "C2xD8".into());
    let g = make_group(&spec)?;
    let lat = g.lattice()?;
    let normals = lat.normal_indices();
    let mut outside = 0;
    for &qi in &normals {
        for &ri in &normals {
            let (q, r) = (lat.get(qi), lat.get(ri));
            if qi > ri || q.order() != r.order() || q.is_trivial() {
                continue;
            }
            match count_common_complements(&g, q, r) {
                Ok(n) => println!("|Q| = |R| = {:>2}: {n} common complements (enumerated {})", q.order(), count_common_complements_brute(&g, q, r)?),
                Err(_) => outside += 1,
            }
        }
    }
    println!("{outside} pairs fall outside the closed form's hypotheses");
    Ok(())
}
