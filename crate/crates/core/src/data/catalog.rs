use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::action::subdegrees;
use crate::error::{Error, Result};
use crate::perm::io::{read_group, read_set};
use crate::perm::{PermGroup, PointSet};

/// Environment variable overriding the fixture directory.
pub const FIXTURE_ENV: &str = "HALFFLAG_FIXTURES";

/// Fixture directory: `$HALFFLAG_FIXTURES` if set, else the one shipped with the crate.
pub fn default_fixture_dir() -> PathBuf {
    std::env::var_os(FIXTURE_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures"))
}

/// Contents of an entry's `meta.json`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureMeta {
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub degree: usize,
    /// Decimal strings; group orders can exceed 64 bits.
    pub order: String,
    pub stabilizer_order: String,
    /// All subdegrees including the trivial 1, ascending.
    pub subdegrees: Vec<usize>,
    /// `paper-text` or `derived`.
    pub source: String,
}

/// One catalog directory: `group.grp`, `meta.json`, optional `block-*.set`
/// and `subgroup-*.grp` files.
#[derive(Clone, Debug)]
pub struct FixtureEntry {
    pub name: String,
    pub dir: PathBuf,
    pub meta: FixtureMeta,
    /// `(name, path)`; the name is the file stem without the `block-` prefix.
    pub blocks: Vec<(String, PathBuf)>,
    /// `(name, path)`; the name is the file stem without the `subgroup-` prefix.
    pub subgroups: Vec<(String, PathBuf)>,
}

impl FixtureEntry {
    pub fn load_group(&self) -> Result<PermGroup> {
        Ok(read_group(&self.dir.join("group.grp"))?.with_label(self.name.clone()))
    }

    pub fn block(&self, name: &str) -> Result<PointSet> {
        let (_, path) = self
            .blocks
            .iter()
            .find(|(n, _)| n == name)
            .ok_or_else(|| Error::UnknownName(format!("{}/block-{name}", self.name)))?;
        read_set(path)
    }

    pub fn subgroup_path(&self, name: &str) -> Result<&Path> {
        self.subgroups
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, p)| p.as_path())
            .ok_or_else(|| Error::UnknownName(format!("{}/subgroup-{name}", self.name)))
    }
}

#[derive(Clone, Debug)]
pub struct FixtureCatalog {
    pub root: PathBuf,
    pub entries: Vec<FixtureEntry>,
    /// Directories that could not be read as entries, with the reason.
    pub unreadable: Vec<(String, String)>,
}

fn tagged_files(dir: &Path, prefix: &str, ext: &str) -> Result<Vec<(String, PathBuf)>> {
    let mut out = Vec::new();
    for e in fs::read_dir(dir).map_err(|e| Error::io(dir, e))? {
        let path = e.map_err(|e| Error::io(dir, e))?.path();
        let Some(file) = path.file_name().and_then(|f| f.to_str()) else {
            continue;
        };
        if let Some(stem) = file.strip_prefix(prefix).and_then(|f| f.strip_suffix(ext)) {
            out.push((stem.to_string(), path.clone()));
        }
    }
    out.sort();
    Ok(out)
}

fn load_entry(dir: &Path) -> Result<FixtureEntry> {
    let meta_path = dir.join("meta.json");
    let text = fs::read_to_string(&meta_path).map_err(|e| Error::io(&meta_path, e))?;
    let meta: FixtureMeta = serde_json::from_str(&text)?;
    Ok(FixtureEntry {
        name: meta.name.clone(),
        dir: dir.to_path_buf(),
        blocks: tagged_files(dir, "block-", ".set")?,
        subgroups: tagged_files(dir, "subgroup-", ".grp")?,
        meta,
    })
}

impl FixtureCatalog {
    /// Reads every subdirectory of `root`; entries are sorted by name.
    pub fn load(root: &Path) -> Result<Self> {
        let mut entries = Vec::new();
        let mut unreadable = Vec::new();
        let mut dirs: Vec<PathBuf> = fs::read_dir(root)
            .map_err(|e| Error::io(root, e))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.is_dir())
            .collect();
        dirs.sort();
        for d in dirs {
            match load_entry(&d) {
                Ok(e) => entries.push(e),
                Err(e) => unreadable.push((
                    d.file_name().unwrap().to_string_lossy().into_owned(),
                    e.to_string(),
                )),
            }
        }
        entries.sort_by(|a, b| a.name.cmp(&b.name));
        Ok(FixtureCatalog {
            root: root.to_path_buf(),
            entries,
            unreadable,
        })
    }

    pub fn get(&self, name: &str) -> Option<&FixtureEntry> {
        self.entries.iter().find(|e| e.name == name)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryCheck {
    pub name: String,
    pub passed: bool,
    pub order: Option<String>,
    pub stabilizer_order: Option<String>,
    pub subdegrees: Option<Vec<usize>>,
    /// Failure descriptions; empty when passed.
    pub problems: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogReport {
    pub entries: Vec<EntryCheck>,
}

impl CatalogReport {
    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }
}

/// Loads an entry and re-derives its order, stabilizer order and
/// subdegrees; also checks block files and subgroup membership and orders.
pub fn verify_entry(entry: &FixtureEntry) -> EntryCheck {
    let mut check = EntryCheck {
        name: entry.name.clone(),
        passed: false,
        order: None,
        stabilizer_order: None,
        subdegrees: None,
        problems: Vec::new(),
    };
    let g = match entry.load_group() {
        Ok(g) => g,
        Err(e) => {
            check.problems.push(format!("group.grp: {e}"));
            return check;
        }
    };
    let meta = &entry.meta;
    if g.degree() != meta.degree {
        check.problems.push(format!(
            "degree {} but meta says {}",
            g.degree(),
            meta.degree
        ));
    }
    let order = g.order();
    check.order = Some(order.to_string());
    if meta.order.parse::<BigUint>().ok().as_ref() != Some(&order) {
        check
            .problems
            .push(format!("order {order} but meta says {}", meta.order));
    }
    match (subdegrees(&g), g.point_stabilizer(1)) {
        (Ok(sd), Ok(stab)) => {
            let so = stab.order().to_string();
            if so != meta.stabilizer_order {
                check.problems.push(format!(
                    "stabilizer order {so} but meta says {}",
                    meta.stabilizer_order
                ));
            }
            if sd.values != meta.subdegrees {
                check.problems.push(format!(
                    "subdegrees {:?} but meta says {:?}",
                    sd.values, meta.subdegrees
                ));
            }
            check.stabilizer_order = Some(so);
            check.subdegrees = Some(sd.values);
        }
        (Err(e), _) | (_, Err(e)) => check.problems.push(e.to_string()),
    }
    for (name, path) in &entry.blocks {
        match read_set(path) {
            Ok(s) if s.degree() != g.degree() => check.problems.push(format!(
                "block-{name}: degree {} differs from the group",
                s.degree()
            )),
            Ok(_) => {}
            Err(e) => check.problems.push(format!("block-{name}: {e}")),
        }
    }
    for (name, path) in &entry.subgroups {
        if let Err(e) = crate::subgroups::load_subgroup_fixture(&g, path) {
            check.problems.push(format!("subgroup-{name}: {e}"));
        }
    }
    check.passed = check.problems.is_empty();
    check
}

/// Verifies every entry; problems are collected per entry, never aborting the run.
pub fn catalog_verify(root: &Path) -> Result<CatalogReport> {
    let cat = FixtureCatalog::load(root)?;
    let mut entries: Vec<EntryCheck> = cat.entries.iter().map(verify_entry).collect();
    for (name, why) in cat.unreadable {
        entries.push(EntryCheck {
            name,
            passed: false,
            order: None,
            stabilizer_order: None,
            subdegrees: None,
            problems: vec![why],
        });
    }
    entries.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(CatalogReport { entries })
}
