//! Regenerate the committed `fixtures/` directory: one `.rot` embedding per
//! named graph plus `manifest.txt` with their checksums.  Run from the
//! workspace root:
//!
//! ```text
//! cargo run -p total9-toolkit --example make_fixtures
//! ```
//!
//! The output is deterministic; `corpus-run` and the acceptance tests fail
//! if the committed files drift from what this writes.

use std::path::Path;

use total9_toolkit::corpus;

fn main() {
    let dir = Path::new("fixtures");
    std::fs::create_dir_all(dir).expect("create fixtures/");
    let (manifest, files) = corpus::committed_manifest();
    for (path, text) in &files {
        std::fs::write(dir.join(path), text).expect("write fixture");
    }
    std::fs::write(dir.join("manifest.txt"), corpus::serialize_manifest(&manifest))
        .expect("write manifest");
    let problems = corpus::verify_manifest(dir, &manifest);
    assert!(problems.is_empty(), "freshly written corpus fails its own manifest: {:?}", problems);
    println!("wrote {} graphs + manifest.txt to {}", files.len(), dir.display());
}
