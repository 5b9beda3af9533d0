//! Curated groups for the suites that cannot be generated by enumeration.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::group::named::{f21, f21_with_center, pad, q8, r3, scalar_root, t3};
use crate::group::GroupSpec;
use crate::linalg::FieldMatrix;
use crate::specfile::GroupSpecFile;

/// Suites with a curated corpus, also the subdirectory names on disk.
pub const CORPUS_SUITES: [&str; 4] = ["blowup", "cclass-sum", "trichotomy", "type22"];

fn entry(spec: GroupSpec, line: Option<usize>, extension: Option<FieldMatrix>) -> GroupSpecFile {
    GroupSpecFile { spec, line, extension }
}

fn diag(d: u64, e: &[i64]) -> FieldMatrix {
    FieldMatrix::diag_roots(d, e)
}

fn spec(name: &str, gens: Vec<FieldMatrix>) -> GroupSpec {
    GroupSpec::new(name, gens).expect("well-formed corpus generators")
}

/// ⟨1/7(1,6,0), 1/7(0,1,6), T⟩: all diagonal 7-torsion of SL(3) with T.
fn full_seven_with_t() -> GroupSpec {
    spec(
        "D49+T",
        vec![diag(7, &[1, 6, 0]), diag(7, &[0, 1, 6]), t3()],
    )
}

/// ⟨1/2(1,1,0), 1/2(0,1,1), T⟩ of order 12.
fn signs_with_t() -> GroupSpec {
    spec("V4+T", vec![diag(2, &[1, 1, 0]), diag(2, &[0, 1, 1]), t3()])
}

fn q8_plus(extra: usize) -> GroupSpec {
    spec(
        &format!("Q8+{}", vec!["1"; extra].join("+")),
        q8().generators.iter().map(|g| pad(g, extra)).collect(),
    )
}

pub fn builtin(suite: &str) -> Result<Vec<GroupSpecFile>> {
    let w3 = scalar_root(3, 3);
    let w3r = w3.mul_sq(&r3());
    Ok(match suite {
        "cclass-sum" => vec![
            entry(f21_with_center(), Some(3), None),
            entry(spec("F21+1", f21().generators.iter().map(|g| pad(g, 1)).collect()), Some(3), None),
            entry(GroupSpec::parse_diag("1/2(1,1,1,1)")?, Some(0), None),
            entry(GroupSpec::parse_diag("1/6(1,2,3)")?, Some(0), None),
            entry(GroupSpec::parse_diag("1/5(1,2,3,4)")?, Some(1), None),
            entry(q8_plus(2), Some(2), None),
            entry(q8_plus(2).with_generator(scalar_root(4, 4))?.renamed("Q8+1+1 with i*I"), Some(3), None),
        ],
        "trichotomy" => vec![
            entry(f21().renamed("F21 by w3"), None, Some(w3.clone())),
            entry(f21().renamed("F21 by R"), None, Some(r3())),
            entry(f21().renamed("F21 by w3*R"), None, Some(w3r.clone())),
            entry(full_seven_with_t().renamed("D49+T by w3"), None, Some(w3.clone())),
            entry(full_seven_with_t().renamed("D49+T by R"), None, Some(r3())),
            entry(full_seven_with_t().renamed("D49+T by w3*R"), None, Some(w3r.clone())),
            entry(signs_with_t().renamed("V4+T by w3"), None, Some(w3.clone())),
            entry(signs_with_t().renamed("V4+T by R"), None, Some(r3())),
            entry(q8_plus(1).renamed("Q8+1 by w3"), None, Some(w3)),
        ],
        "type22" => vec![
            entry(
                spec("Q8+Q8", q8().generators.iter().map(|g| g.direct_sum(g)).collect()),
                None,
                None,
            ),
            entry(
                spec(
                    "Q8+I2",
                    q8().generators
                        .iter()
                        .map(|g| g.direct_sum(&FieldMatrix::identity(2, 1)))
                        .collect(),
                ),
                None,
                None,
            ),
            entry(GroupSpec::parse_diag("1/1(0,0,0,0)")?.renamed("trivial"), None, None),
        ],
        "blowup" => vec![
            entry(q8(), None, None),
            entry(spec("i*I4", vec![scalar_root(4, 4)]), None, None),
            entry(f21_with_center(), None, None),
        ],
        other => return Err(Error::input(format!("no curated corpus for suite '{other}'"))),
    })
}

/// All `*.json` files of `dir/<suite>/`, in file-name order.
pub fn load(dir: &Path, suite: &str) -> Result<Vec<GroupSpecFile>> {
    let sub = dir.join(suite);
    let rd = fs::read_dir(&sub).map_err(|e| Error::input(format!("cannot read {}: {e}", sub.display())))?;
    let mut paths: Vec<_> = rd
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| {
            let text = fs::read_to_string(p).map_err(|e| Error::input(format!("cannot read {}: {e}", p.display())))?;
            GroupSpecFile::parse(&text).map_err(|e| match e {
                Error::Parse { location, message } => Error::Parse {
                    location: format!("{}: {location}", p.display()),
                    message,
                },
                other => other,
            })
        })
        .collect()
}

/// File name for a corpus entry: its name with non-alphanumerics folded to '-'.
pub fn file_name(index: usize, name: &str) -> String {
    let slug: String = name
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c.to_ascii_lowercase() } else { '-' })
        .collect();
    format!("{index:02}-{}.json", slug.trim_matches('-'))
}

/// Write the built-in corpus under `dir/<suite>/`.
pub fn export(dir: &Path) -> Result<usize> {
    let mut count = 0;
    for suite in CORPUS_SUITES {
        let sub = dir.join(suite);
        fs::create_dir_all(&sub).map_err(|e| Error::input(format!("cannot create {}: {e}", sub.display())))?;
        for (i, f) in builtin(suite)?.iter().enumerate() {
            let p = sub.join(file_name(i, &f.spec.name));
            fs::write(&p, f.to_json()).map_err(|e| Error::input(format!("cannot write {}: {e}", p.display())))?;
            count += 1;
        }
    }
    Ok(count)
}
