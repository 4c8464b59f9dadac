//! Directory cache of fitted polynomials.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use jtheta_core::modpoly::{build_t, fit_with_retry, FitOptions, IntPoly2, ModpolyError, PolyKind, PolySource};

use crate::polyfile::{self, PolyFileError};

pub const ENV_DIR: &str = "THETA_CACHE_DIR";
pub const DEFAULT_DIR: &str = ".theta-cache";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CacheEvent {
    Hit { kind: PolyKind, n: u64 },
    Miss { kind: PolyKind, n: u64 },
    /// A stored file failed to load or re-validate and was refitted.
    Discarded { kind: PolyKind, n: u64, reason: String },
    WriteFailed { kind: PolyKind, n: u64, reason: String },
}

pub struct Cache {
    dir: PathBuf,
    pub opts: FitOptions,
    memo: HashMap<(PolyKind, u64), IntPoly2>,
    pub events: Vec<CacheEvent>,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>, opts: FitOptions) -> Self {
        Cache {
            dir: dir.into(),
            opts,
            memo: HashMap::new(),
            events: Vec::new(),
        }
    }

    pub fn from_env(opts: FitOptions) -> Self {
        let dir = std::env::var_os(ENV_DIR)
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(DEFAULT_DIR));
        Self::new(dir, opts)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, kind: PolyKind, n: u64) -> PathBuf {
        let k = match kind {
            PolyKind::P => "p",
            PolyKind::Q => "q",
            PolyKind::T => "t",
        };
        self.dir.join(format!("{}_{}.json", k, n))
    }

    /// Loads a stored polynomial with full re-validation.
    pub fn load(&self, kind: PolyKind, n: u64) -> Result<IntPoly2, PolyFileError> {
        let p = polyfile::load(&self.path(kind, n))?;
        if p.meta.kind != kind || p.meta.n != n {
            return Err(PolyFileError::Format(format!(
                "file holds {}_{}",
                p.meta.kind.as_str(),
                p.meta.n
            )));
        }
        Ok(p)
    }

    pub fn store(&self, p: &IntPoly2) -> Result<(), PolyFileError> {
        polyfile::save_atomic(p, &self.path(p.meta.kind, p.meta.n))
    }

    fn fetch(&mut self, kind: PolyKind, n: u64) -> Result<IntPoly2, ModpolyError> {
        let path = self.path(kind, n);
        if path.exists() {
            match self.load(kind, n) {
                Ok(p) => {
                    self.events.push(CacheEvent::Hit { kind, n });
                    return Ok(p);
                }
                Err(e) => self.events.push(CacheEvent::Discarded {
                    kind,
                    n,
                    reason: e.to_string(),
                }),
            }
        } else {
            self.events.push(CacheEvent::Miss { kind, n });
        }
        let p = fit_with_retry(kind, n, self.opts)?;
        if let Err(e) = self.store(&p) {
            self.events.push(CacheEvent::WriteFailed {
                kind,
                n,
                reason: e.to_string(),
            });
        }
        Ok(p)
    }
}

impl PolySource for Cache {
    fn poly(&mut self, kind: PolyKind, n: u64) -> Result<IntPoly2, ModpolyError> {
        if let Some(p) = self.memo.get(&(kind, n)) {
            return Ok(p.clone());
        }
        let p = match kind {
            PolyKind::T => build_t(n, self)?,
            _ => self.fetch(kind, n)?,
        };
        self.memo.insert((kind, n), p.clone());
        Ok(p)
    }
}
