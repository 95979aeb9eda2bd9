//! Command implementations behind the `segalkit` binary, reusable from the
//! acceptance tests.

pub mod commands;
pub mod corpus;
pub mod report;
pub mod suite;

use report::SuiteReport;
use segalkit::{Error, Result};
use std::path::Path;

/// Exit codes: the machine contract of the binary.
pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Resource(_) => EXIT_RESOURCE,
        _ => EXIT_USAGE,
    }
}

/// Materialize the default corpus files into a directory (categories and
/// functors), returning the file names written.
pub fn write_default_corpus(dir: &Path) -> Result<Vec<String>> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Parse(format!("corpus dir: {e}")))?;
    let mut written = Vec::new();
    for (name, cat, _, _) in corpus::categories() {
        let path = dir.join(format!("cat_{name}.json"));
        std::fs::write(&path, segalkit::objfile::to_canonical_string(&segalkit::objfile::fincat_to_value(&cat)))
            .map_err(|e| Error::Parse(format!("write {path:?}: {e}")))?;
        written.push(path.file_name().unwrap().to_string_lossy().into_owned());
        for (fname, f) in corpus::functors_for(&cat) {
            let path = dir.join(format!("functor_{name}_{fname}.json"));
            std::fs::write(
                &path,
                segalkit::objfile::to_canonical_string(&segalkit::objfile::functor_to_value(&f)),
            )
            .map_err(|e| Error::Parse(format!("write {path:?}: {e}")))?;
            written.push(path.file_name().unwrap().to_string_lossy().into_owned());
        }
    }
    written.sort();
    Ok(written)
}

/// Validate every JSON document in the corpus directory; a parse failure
/// names the file.
pub fn validate_corpus(dir: &Path) -> Result<usize> {
    let mut count = 0;
    let mut entries: Vec<_> = std::fs::read_dir(dir)
        .map_err(|e| Error::Parse(format!("corpus dir: {e}")))?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    entries.sort();
    for path in entries {
        let text = std::fs::read_to_string(&path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        let doc = segalkit::objfile::parse(&text)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        match segalkit::objfile::kind_of(&doc)? {
            "sset" => {
                segalkit::objfile::sset_from_value(&doc)
                    .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            }
            "bisset" => {
                segalkit::objfile::bisset_from_value(&doc)
                    .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            }
            "fincat" => {
                segalkit::objfile::fincat_from_value(&doc)
                    .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            }
            "functor" => {
                segalkit::objfile::functor_from_value(&doc)
                    .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            }
            "map" | "chain" => {}
            k => return Err(Error::Parse(format!("{}: unknown kind {k}", path.display()))),
        }
        count += 1;
    }
    Ok(count)
}

/// Run the suite against a corpus directory: generate defaults when empty,
/// validate every file, then run all criteria.
pub fn run_suite_with_corpus(dir: &Path, seed: u64) -> Result<SuiteReport> {
    let empty = !dir.exists()
        || std::fs::read_dir(dir)
            .map(|mut d| d.next().is_none())
            .unwrap_or(true);
    if empty {
        write_default_corpus(dir)?;
    }
    validate_corpus(dir)?;
    suite::run_suite(seed)
}
