//! On-disk JSON form of fitted polynomials.

use std::fs;
use std::io::Write;
use std::path::Path;

use jtheta_core::modpoly::{validate_full, IntPoly2, ModpolyError, PolyKind, PolyMeta};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Debug, thiserror::Error)]
pub enum PolyFileError {
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad file: {0}")]
    Format(String),
    #[error("checksum mismatch: stored {stored}, computed {computed}")]
    Checksum { stored: String, computed: String },
    #[error("re-validation failed: {0}")]
    Invalid(#[from] ModpolyError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub e: Vec<u32>,
    pub c: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub kind: String,
    pub n: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c_n: Option<String>,
    pub fit_order: usize,
    pub checksum: String,
    #[serde(default)]
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyFile {
    pub vars: Vec<String>,
    pub terms: Vec<Term>,
    pub meta: Meta,
}

/// SHA-256 over the terms in lexicographic exponent order, one `i,j:c` line each.
pub fn checksum(terms: &[Term]) -> String {
    let mut sorted: Vec<&Term> = terms.iter().collect();
    sorted.sort_by(|a, b| a.e.cmp(&b.e));
    let mut h = Sha256::new();
    for t in sorted {
        let e: Vec<String> = t.e.iter().map(|x| x.to_string()).collect();
        h.update(format!("{}:{}\n", e.join(","), t.c).as_bytes());
    }
    h.finalize().iter().map(|b| format!("{:02x}", b)).collect()
}

pub fn parse_kind(s: &str) -> Option<PolyKind> {
    match s {
        "P" | "p" => Some(PolyKind::P),
        "Q" | "q" => Some(PolyKind::Q),
        "T" | "t" => Some(PolyKind::T),
        _ => None,
    }
}

impl PolyFile {
    pub fn from_poly(p: &IntPoly2) -> Self {
        let terms: Vec<Term> = p
            .terms()
            .map(|((i, j), c)| Term {
                e: vec![i, j],
                c: c.to_string(),
            })
            .collect();
        let meta = Meta {
            kind: p.meta.kind.as_str().to_string(),
            n: p.meta.n,
            c_n: p.meta.c_n.as_ref().map(|c| c.to_string()),
            fit_order: p.meta.fit_order,
            checksum: checksum(&terms),
            note: p.meta.note.clone(),
        };
        PolyFile {
            vars: vec!["X".into(), "Y".into()],
            terms,
            meta,
        }
    }

    /// Rebuilds the polynomial after checking shape and checksum. Module
    /// invariants are not checked here; see [`load`].
    pub fn to_poly(&self) -> Result<IntPoly2, PolyFileError> {
        if self.vars != ["X", "Y"] {
            return Err(PolyFileError::Format(format!("variables {:?}", self.vars)));
        }
        let computed = checksum(&self.terms);
        if computed != self.meta.checksum {
            return Err(PolyFileError::Checksum {
                stored: self.meta.checksum.clone(),
                computed,
            });
        }
        let kind = parse_kind(&self.meta.kind)
            .ok_or_else(|| PolyFileError::Format(format!("kind {:?}", self.meta.kind)))?;
        let c_n = match &self.meta.c_n {
            Some(s) => Some(int(s)?),
            None => None,
        };
        let meta = PolyMeta {
            kind,
            n: self.meta.n,
            c_n,
            fit_order: self.meta.fit_order,
            note: self.meta.note.clone(),
        };
        let mut p = IntPoly2::new(meta);
        for t in &self.terms {
            if t.e.len() != 2 {
                return Err(PolyFileError::Format(format!("exponent {:?}", t.e)));
            }
            if p.coeff(t.e[0], t.e[1]) != BigInt::from(0) {
                return Err(PolyFileError::Format(format!("repeated exponent {:?}", t.e)));
            }
            p.add_term(t.e[0], t.e[1], int(&t.c)?);
        }
        Ok(p)
    }
}

fn int(s: &str) -> Result<BigInt, PolyFileError> {
    s.parse()
        .map_err(|_| PolyFileError::Format(format!("coefficient {:?}", s)))
}

/// Reads, checks the checksum and re-validates every module invariant,
/// including the exact residual.
pub fn load(path: &Path) -> Result<IntPoly2, PolyFileError> {
    let f: PolyFile = serde_json::from_str(&fs::read_to_string(path)?)?;
    let p = f.to_poly()?;
    validate_full(&p)?;
    Ok(p)
}

/// Writes through a temporary file in the target directory and renames.
pub fn save_atomic(p: &IntPoly2, path: &Path) -> Result<(), PolyFileError> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    serde_json::to_writer_pretty(&mut tmp, &PolyFile::from_poly(p))?;
    tmp.write_all(b"\n")?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| PolyFileError::Io(e.error))?;
    Ok(())
}
