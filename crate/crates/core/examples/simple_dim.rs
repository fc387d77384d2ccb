//! Dimension of simple functors at a group, by section counting and by the
//! rank of the bilinear forms.
//!
//!     cargo run --example simple_dim -- A4 2

use bisetkit::corpus::small_p_groups;
use bisetkit::make_group;
use bisetkit::section_count::CountRoute;
use bisetkit::simple_dim::RankRoute;

fn main() -> bisetkit::Result<()> {
    let mut args = std::env::args().skip(1);
    let spec = args.next().unwrap_or_else(|| "S4".into());
    let p: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(2);
    let g = make_group(&spec)?;
    let count = CountRoute::new(&g, p)?;
    let rank = RankRoute::new(&g, p)?;
    println!("{} at p = {p}", g.name());
    for h in small_p_groups(p)?.iter().filter(|h| h.order() <= 16) {
        let c = count.dim(h)?;
        let r = rank.report(h)?;
        assert_eq!(c.dim, r.dim, "routes disagree at H = {}", h.name());
        if c.dim > 0 {
            println!("  H = {:<10} dim {:>3}  ({:?}, {} (K, R) pairs)", h.name(), c.dim, c.case_tag, r.pairs.len());
        }
    }
    Ok(())
}
