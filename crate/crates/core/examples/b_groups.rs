//! m-numbers, B-groups and the largest quotient B-group.
//!
//!     cargo run --example b_groups

use bisetkit::bgroup::{beta_with_kernel, is_b_group, m_number};
use bisetkit::make_group;

fn main() -> bisetkit::Result<()> {
    for spec in ["C2", "C2xC2", "C4", "S3", "A4", "D8", "S4", "C3xC3"] {
        let g = make_group(spec)?;
        let lat = g.lattice()?;
        let ms: Vec<String> = lat
            .normal_indices()
            .into_iter()
            .map(|i| Ok(format!("|N|={}: {}", lat.get(i).order(), m_number(&g, lat.get(i))?)))
            .collect::<bisetkit::Result<_>>()?;
        let (b, kernel) = beta_with_kernel(&g)?;
        println!(
            "{spec:<6} B-group {:<5}  beta has order {:>2} (kernel order {:>2})  m: {}",
            is_b_group(&g)?,
            b.order(),
            kernel.order(),
            ms.join(", ")
        );
    }
    Ok(())
}
