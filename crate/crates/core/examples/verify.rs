//! Every property suite over the built-in corpus, or over a corpus file.
//!
//!     cargo run --release --example verify -- path/to/corpus.txt

use bisetkit::corpus::load_corpus;
use bisetkit::group::Limits;
use bisetkit::verify::verify_corpus;

fn main() -> bisetkit::Result<()> {
    let path = std::env::args().nth(1).map(std::path::PathBuf::from);
    let corpus = load_corpus(path.as_deref(), Limits::default())?;
    let report = verify_corpus(&corpus);
    for p in &report.properties {
        println!("{:<14} {:<32} {:?} ({} checked, {} ms)", p.module, p.property, p.verdict, p.checked, p.elapsed_ms);
        for f in &p.failures {
            println!("    {f}");
        }
    }
    println!("{} groups, all passed: {}", report.corpus_size, report.passed);
    Ok(())
}
