//! On-disk lattice cache keyed by (group expression, engine version).

use std::path::PathBuf;

use anyhow::Context;

use ds_core::lattice_file::{cache_key, LatticeFile, ENGINE_VERSION};

pub const CACHE_ENV: &str = "DS_CACHE_DIR";
pub const DEFAULT_CACHE_DIR: &str = ".ds-cache";

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn from_env() -> Self {
        let dir = std::env::var_os(CACHE_ENV)
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR));
        Cache { dir }
    }

    pub fn path_for(&self, expr: &str) -> PathBuf {
        self.dir
            .join(format!("{:016x}.lat", cache_key(expr, ENGINE_VERSION)))
    }

    /// A cached lattice for `expr`, if present, well-formed and current.
    pub fn load(&self, expr: &str) -> Option<LatticeFile> {
        let text = std::fs::read_to_string(self.path_for(expr)).ok()?;
        LatticeFile::parse(&text).ok().filter(|f| f.matches(expr))
    }

    pub fn store(&self, file: &LatticeFile) -> anyhow::Result<()> {
        std::fs::create_dir_all(&self.dir)
            .with_context(|| format!("creating {}", self.dir.display()))?;
        let path = self.path_for(&file.expr);
        std::fs::write(&path, file.render()).with_context(|| format!("writing {}", path.display()))
    }
}
