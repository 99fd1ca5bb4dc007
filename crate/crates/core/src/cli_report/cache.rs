//! A JSON file of field and group data keyed by the cubic, so repeated
//! analyses skip the class group computation. Every entry carries a
//! SHA-256 checksum, and a hit is re-verified against invariants that are
//! cheap to recompute before it is used.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{FieldData, GroupData};
use crate::curve_local::CurveModel;
use crate::error::{Error, Result};
use crate::exact_arith::{is_prime, poly_disc};

/// Entries written under another version are dropped on load.
pub const CACHE_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CachedClassData {
    pub field: FieldData,
    pub groups: GroupData,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct CacheEntry {
    coefficients: [String; 3],
    /// Which real place the stored `Cl_*` was built for.
    place: String,
    data: CachedClassData,
    checksum: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheFile {
    pub schema_version: u32,
    entries: BTreeMap<String, CacheEntry>,
}

/// What happened on each access, for diagnostics and tests.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CacheEvent {
    Hit(String),
    Miss(String),
    /// The entry failed its checksum or invariants and was dropped.
    Rejected {
        key: String,
        reason: String,
    },
    /// The whole file was unreadable or of another schema version.
    Discarded(String),
}

#[derive(Debug)]
pub struct Cache {
    path: PathBuf,
    file: CacheFile,
    dirty: bool,
    events: Vec<CacheEvent>,
}

const OWN_PLACE: &str = "smallest-root";

fn key(e: &CurveModel) -> String {
    let [a2, a1, a0] = e.coeffs();
    format!("{a2},{a1},{a0}")
}

fn checksum(coefficients: &[String; 3], place: &str, data: &CachedClassData) -> String {
    let body = serde_json::to_vec(&(coefficients, place, data)).expect("cache data serializes");
    hex::encode(Sha256::digest(&body))
}

impl Cache {
    /// Opens `path`, starting empty when it does not exist. An unreadable
    /// file is not an error: it is discarded and rebuilt.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut events = Vec::new();
        let file = match std::fs::read(&path) {
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => CacheFile::empty(),
            Err(e) => return Err(Error::Io(e)),
            Ok(bytes) => match serde_json::from_slice::<CacheFile>(&bytes) {
                Ok(f) if f.schema_version == CACHE_SCHEMA_VERSION => f,
                Ok(f) => {
                    events.push(CacheEvent::Discarded(format!(
                        "schema version {}",
                        f.schema_version
                    )));
                    CacheFile::empty()
                }
                Err(err) => {
                    events.push(CacheEvent::Discarded(err.to_string()));
                    CacheFile::empty()
                }
            },
        };
        let dirty = !events.is_empty();
        Ok(Cache {
            path,
            file,
            dirty,
            events,
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn events(&self) -> &[CacheEvent] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.file.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.file.entries.is_empty()
    }

    /// The stored data for `e`, if present and still consistent.
    pub fn lookup(&mut self, e: &CurveModel) -> Option<CachedClassData> {
        let k = key(e);
        let Some(entry) = self.file.entries.get(&k) else {
            self.events.push(CacheEvent::Miss(k));
            return None;
        };
        match verify(e, entry) {
            Ok(()) => {
                self.events.push(CacheEvent::Hit(k));
                Some(entry.data.clone())
            }
            Err(reason) => {
                self.file.entries.remove(&k);
                self.dirty = true;
                self.events.push(CacheEvent::Rejected { key: k, reason });
                None
            }
        }
    }

    pub fn insert(&mut self, e: &CurveModel, data: CachedClassData) {
        let coefficients = e.coeffs().map(|c| c.to_string());
        let checksum = checksum(&coefficients, OWN_PLACE, &data);
        let entry = CacheEntry {
            coefficients,
            place: OWN_PLACE.into(),
            data,
            checksum,
        };
        self.file.entries.insert(key(e), entry);
        self.dirty = true;
    }

    /// Writes the file if anything changed.
    pub fn save(&mut self) -> Result<()> {
        if !self.dirty {
            return Ok(());
        }
        if let Some(dir) = self.path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir)?;
        }
        let tmp = self.path.with_extension("tmp");
        std::fs::write(&tmp, serde_json::to_vec_pretty(&self.file)?)?;
        std::fs::rename(&tmp, &self.path)?;
        self.dirty = false;
        Ok(())
    }
}

impl CacheFile {
    fn empty() -> Self {
        CacheFile {
            schema_version: CACHE_SCHEMA_VERSION,
            entries: BTreeMap::new(),
        }
    }
}

fn parse(s: &str, what: &str) -> std::result::Result<BigInt, String> {
    s.parse()
        .map_err(|_| format!("{what} is not an integer: {s:?}"))
}

/// Checksum, then `disc F = index² · field_disc` with a factorization into
/// primes that multiplies back, a signature matching the sign of the
/// discriminant, and `|Cl|` dividing `|Cl_*|` dividing `|Cl_+|` dividing
/// `2^{r1} |Cl|`.
fn verify(e: &CurveModel, entry: &CacheEntry) -> std::result::Result<(), String> {
    if entry.checksum != checksum(&entry.coefficients, &entry.place, &entry.data) {
        return Err("checksum mismatch".into());
    }
    if entry.coefficients != e.coeffs().map(|c| c.to_string()) || entry.place != OWN_PLACE {
        return Err("entry belongs to another curve".into());
    }
    let f = &entry.data.field;
    let disc = poly_disc(e.cubic()).map_err(|err| err.to_string())?;
    let field_disc = parse(&f.field_disc, "field_disc")?;
    let index = parse(&f.index, "index")?;
    if parse(&f.poly_disc, "poly_disc")? != disc || &index * &index * &field_disc != disc {
        return Err("discriminant relation fails".into());
    }
    let mut product = BigInt::one();
    for (p, k) in &f.field_disc_factors {
        let p = parse(p, "prime factor")?;
        if !is_prime(&p) {
            return Err(format!("{p} is not prime"));
        }
        product *= p.pow(*k);
    }
    if product != field_disc.abs() {
        return Err("field discriminant factorization does not multiply back".into());
    }
    let [r1, r2] = f.signature;
    if r1 + 2 * r2 != 3 || (r1 == 3) != disc.is_positive() {
        return Err("signature does not match the discriminant".into());
    }
    let g = &entry.data.groups;
    let cl = parse(&g.class_group.order, "class number")?;
    let star = parse(&g.star_class_group.order, "Cl_* order")?;
    let narrow = parse(&g.narrow_class_group.order, "narrow class number")?;
    let bound = &cl << r1;
    if !star.is_multiple_of(&cl) || !narrow.is_multiple_of(&star) || !bound.is_multiple_of(&narrow)
    {
        return Err("group orders violate |Cl| | |Cl_*| | |Cl_+| | 2^r1 |Cl|".into());
    }
    Ok(())
}
