//! Spectrum of the kernel incidence matrix for C_p × C_{p^(h−1)} times an
//! elementary abelian group of rank e.
//!
//!     cargo run --example incidence

use bisetkit::incidence::incidence_report;

fn main() -> bisetkit::Result<()> {
    for (p, e) in [(2, 0), (2, 1), (2, 2), (3, 0), (3, 1), (5, 1)] {
        let r = incidence_report(p, e, 3)?;
        let spectrum: Vec<String> = r.spectrum.iter().map(|s| format!("{}^{}", s.eigenvalue, s.multiplicity)).collect();
        println!("p={p} e={e}: {}x{} matrix, spectrum {}, charpoly matches {}", r.size, r.size, spectrum.join(" "), r.charpoly_matches);
    }
    Ok(())
}
