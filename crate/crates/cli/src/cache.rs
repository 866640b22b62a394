//! On-disk cache of assembled matrices, one structured document per
//! `(p, schema_version)`. A cached matrix is only used if it parses, matches
//! the prime, and passes the symmetry checks; anything else is recomputed and
//! overwritten.

use std::io::Write;
use std::path::{Path, PathBuf};

use lambda_modeq::format::{parse_structured, to_structured, SCHEMA_VERSION};
use lambda_modeq::modeq::{assemble_params, verify_symmetry, PrimeParams};
use lambda_modeq::{ModularMatrix, Result};

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn path_for(&self, p: u64) -> PathBuf {
        self.dir.join(format!("A_{p}.v{SCHEMA_VERSION}.json"))
    }

    fn load(&self, params: &PrimeParams) -> Option<ModularMatrix> {
        let text = std::fs::read_to_string(self.path_for(params.p)).ok()?;
        let a = parse_structured(&text).ok()?.to_matrix().ok()?;
        (a.params() == params && verify_symmetry(&a).passed()).then_some(a)
    }

    fn store(&self, a: &ModularMatrix) -> std::io::Result<()> {
        std::fs::create_dir_all(&self.dir)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(to_structured(a).as_bytes())?;
        tmp.persist(self.path_for(a.params().p))
            .map_err(|e| e.error)?;
        Ok(())
    }

    /// The cached matrix if trustworthy, otherwise a fresh one (then cached).
    pub fn get_or_assemble(&self, params: &PrimeParams) -> Result<ModularMatrix> {
        if let Some(a) = self.load(params) {
            return Ok(a);
        }
        let a = assemble_params(params)?;
        if let Err(e) = self.store(&a) {
            eprintln!(
                "warning: could not write cache in {}: {e}",
                self.dir.display()
            );
        }
        Ok(a)
    }
}

/// Assemble through the cache when one is configured.
pub fn matrix_for(params: &PrimeParams, cache_dir: Option<&Path>) -> Result<ModularMatrix> {
    match cache_dir {
        Some(dir) => Cache::new(dir).get_or_assemble(params),
        None => assemble_params(params),
    }
}
