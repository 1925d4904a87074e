//! JSON cache of an enumerated space.
//!
//! The file stores a header and the canonical bases of points, lines and
//! planes in index order. Reloading rebuilds incidences from those bases, so
//! indices are reproduced exactly.

use super::form::{Family, FormSpec};
use super::space::{BuildOptions, PolarSpace, RawSpace};
use crate::algebra::{GaloisField, Subspace};
use crate::error::{Error, Result};
use crate::params::SchemeParams;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

pub const FORMAT_VERSION: u32 = 1;

/// Environment variable overriding the cache directory.
pub const CACHE_DIR_ENV: &str = "POLAR_LINES_CACHE_DIR";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheHeader {
    pub format_version: u32,
    pub family: Family,
    pub p: u32,
    pub h: u32,
    pub twice_e: u32,
    pub points: usize,
    pub lines: usize,
    pub planes: usize,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    header: CacheHeader,
    points: Vec<Vec<u8>>,
    lines: Vec<Vec<Vec<u8>>>,
    planes: Vec<Vec<Vec<u8>>>,
}

pub fn header(space: &PolarSpace) -> CacheHeader {
    CacheHeader {
        format_version: FORMAT_VERSION,
        family: space.family(),
        p: space.field().characteristic(),
        h: space.field().degree(),
        twice_e: space.params().twice_e(),
        points: space.num_points(),
        lines: space.num_lines(),
        planes: space.num_planes(),
    }
}

pub fn to_json(space: &PolarSpace) -> Result<String> {
    let (points, lines, planes) = space.raw_parts();
    let file = CacheFile {
        header: header(space),
        points: points.to_vec(),
        lines: lines.iter().map(|l| l.basis().to_vec()).collect(),
        planes: planes.iter().map(|p| p.basis().to_vec()).collect(),
    };
    Ok(serde_json::to_string(&file)?)
}

pub fn from_json(text: &str, opts: BuildOptions) -> Result<PolarSpace> {
    let file: CacheFile = serde_json::from_str(text)?;
    let h = &file.header;
    if h.format_version != FORMAT_VERSION {
        return Err(Error::InvalidInput(format!("unsupported cache format version {}", h.format_version)));
    }
    let field = GaloisField::new(h.p, h.h)?;
    let form = FormSpec::standard(h.family, &field)?;
    let params = SchemeParams::new(field.order(), h.family.twice_e())?;
    if params.twice_e() != h.twice_e {
        return Err(Error::InvalidInput("cache header has the wrong e for its family".into()));
    }
    let d = h.family.ambient_dim();
    let canon = |rows: Vec<Vec<u8>>, dim: usize| -> Result<Subspace> {
        let s = Subspace::span(&field, d, &rows)?;
        if s.dim() != dim || s.basis() != &rows[..] {
            return Err(Error::InvalidInput("cache basis is not canonical".into()));
        }
        Ok(s)
    };
    for p in &file.points {
        if p.len() != d || field.normalize(p).as_ref() != Some(p) || !form.is_singular(&field, p) {
            return Err(Error::InvalidInput("cache point is not a normalized singular vector".into()));
        }
    }
    let lines = file.lines.into_iter().map(|r| canon(r, 2)).collect::<Result<Vec<_>>>()?;
    let planes = file.planes.into_iter().map(|r| canon(r, 3)).collect::<Result<Vec<_>>>()?;
    let raw = RawSpace { points: file.points, lines, planes };
    let space = PolarSpace::assemble(field, form, params, raw, None, None, opts)?;
    if header(&space) != file.header {
        return Err(Error::InvalidInput("cache header does not match its contents".into()));
    }
    Ok(space)
}

pub fn save(space: &PolarSpace, path: &Path) -> Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(path, to_json(space)?)?;
    Ok(())
}

pub fn load(path: &Path, opts: BuildOptions) -> Result<PolarSpace> {
    from_json(&std::fs::read_to_string(path)?, opts)
}

/// Cache file name for a space, keyed by family, field and format version.
pub fn file_name(family: Family, q: u32) -> Result<String> {
    let field = GaloisField::from_order(q)?;
    Ok(format!("{}_p{}_h{}_v{}.json", family.tag(), field.characteristic(), field.degree(), FORMAT_VERSION))
}

/// Loads from `dir` if a cache file exists, otherwise builds and saves.
/// Files with an older format version are simply not found and get rebuilt.
pub fn load_or_build(dir: &Path, family: Family, q: u32, opts: BuildOptions) -> Result<PolarSpace> {
    let path: PathBuf = dir.join(file_name(family, q)?);
    if path.exists() {
        if let Ok(space) = load(&path, opts) {
            return Ok(space);
        }
    }
    let space = PolarSpace::build_with(family, q, opts)?;
    save(&space, &path)?;
    Ok(space)
}
