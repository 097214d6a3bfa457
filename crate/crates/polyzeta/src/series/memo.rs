//! Concurrency-safe memo cache for series values, with optional on-disk
//! persistence.
//!
//! Keys are (kind, composition, argument bits, tolerance bucket); a stored
//! result is a hit only when its bucket matches and its error estimate is
//! within the requested tolerance. Values are always computed at the
//! bucket's canonical tolerance, so results do not depend on cache state or
//! on which thread computed them first.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::compositions::Composition;
use crate::error::Result;

use super::{
    eval_a, eval_li, eval_t, eval_zeta, eval_zeta_star, EvalResult, HurwitzShift, Method, ValueKind,
};

#[derive(Clone, PartialEq, Eq, Hash)]
struct Key {
    kind: ValueKind,
    parts: Vec<u32>,
    arg_bits: u64,
    bucket: i32,
}

#[derive(Serialize, Deserialize)]
struct DiskRecord {
    kind: String,
    parts: Vec<u32>,
    arg_bits: u64,
    bucket: i32,
    value: f64,
    err_estimate: f64,
    terms_used: u64,
    method: String,
}

fn tol_bucket(tol: f64) -> i32 {
    tol.log10().floor() as i32
}

fn bucket_tol(bucket: i32) -> f64 {
    10f64.powi(bucket)
}

fn method_name(m: Method) -> &'static str {
    m.name()
}

fn method_from_name(s: &str) -> Option<Method> {
    Some(match s {
        "series" => Method::Series,
        "closed_form" => Method::ClosedForm,
        "coarsening_sum" => Method::CoarseningSum,
        "refinement_sum" => Method::RefinementSum,
        _ => return None,
    })
}

/// Shared memo cache; cheap to share behind a reference across threads.
pub struct Memo {
    map: Mutex<HashMap<Key, EvalResult>>,
    disk: Option<PathBuf>,
}

impl Default for Memo {
    fn default() -> Self {
        Memo::new()
    }
}

impl Memo {
    pub fn new() -> Memo {
        Memo {
            map: Mutex::new(HashMap::new()),
            disk: None,
        }
    }

    /// Memo backed by a directory of content-addressed JSON records.
    pub fn with_disk(dir: impl Into<PathBuf>) -> Memo {
        Memo {
            map: Mutex::new(HashMap::new()),
            disk: Some(dir.into()),
        }
    }

    pub fn disk_dir(&self) -> Option<&Path> {
        self.disk.as_deref()
    }

    fn file_for(&self, key: &Key) -> Option<PathBuf> {
        let dir = self.disk.as_ref()?;
        let tag = format!(
            "{}|{:?}|{:016x}|{}",
            key.kind.name(),
            key.parts,
            key.arg_bits,
            key.bucket
        );
        let mut h = Sha256::new();
        h.update(tag.as_bytes());
        let digest = h.finalize();
        let mut name = String::with_capacity(40);
        for b in digest.iter().take(16) {
            name.push_str(&format!("{b:02x}"));
        }
        name.push_str(".json");
        Some(dir.join(name))
    }

    fn disk_get(&self, key: &Key) -> Option<EvalResult> {
        let path = self.file_for(key)?;
        let text = std::fs::read_to_string(path).ok()?;
        let rec: DiskRecord = serde_json::from_str(&text).ok()?;
        if rec.parts != key.parts || rec.arg_bits != key.arg_bits || rec.bucket != key.bucket {
            return None;
        }
        Some(EvalResult {
            value: rec.value,
            err_estimate: rec.err_estimate,
            terms_used: rec.terms_used,
            method: method_from_name(&rec.method)?,
        })
    }

    fn disk_put(&self, key: &Key, r: &EvalResult) {
        let Some(path) = self.file_for(key) else {
            return;
        };
        let Some(dir) = self.disk.as_ref() else {
            return;
        };
        let rec = DiskRecord {
            kind: key.kind.name().to_string(),
            parts: key.parts.clone(),
            arg_bits: key.arg_bits,
            bucket: key.bucket,
            value: r.value,
            err_estimate: r.err_estimate,
            terms_used: r.terms_used,
            method: method_name(r.method).to_string(),
        };
        let _ = std::fs::create_dir_all(dir);
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        if let Ok(text) = serde_json::to_string(&rec) {
            if std::fs::write(&tmp, text).is_ok() {
                let _ = std::fs::rename(&tmp, &path);
            }
        }
    }

    fn fetch(
        &self,
        kind: ValueKind,
        k: &Composition,
        arg_bits: u64,
        tol: f64,
        compute: impl FnOnce(f64) -> Result<EvalResult>,
    ) -> Result<EvalResult> {
        let key = Key {
            kind,
            parts: k.parts().to_vec(),
            arg_bits,
            bucket: tol_bucket(tol),
        };
        if let Some(hit) = self.map.lock().unwrap().get(&key) {
            if hit.err_estimate <= tol {
                return Ok(*hit);
            }
        }
        if let Some(hit) = self.disk_get(&key) {
            if hit.err_estimate <= tol {
                self.map.lock().unwrap().insert(key, hit);
                return Ok(hit);
            }
        }
        let r = compute(bucket_tol(key.bucket))?;
        self.map.lock().unwrap().insert(key.clone(), r);
        self.disk_put(&key, &r);
        Ok(r)
    }

    pub fn zeta(&self, k: &Composition, shift: HurwitzShift, tol: f64) -> Result<EvalResult> {
        self.fetch(ValueKind::Zeta, k, shift.alpha().to_bits(), tol, |t| {
            eval_zeta(k, shift, t)
        })
    }

    pub fn zeta_star(&self, k: &Composition, shift: HurwitzShift, tol: f64) -> Result<EvalResult> {
        self.fetch(ValueKind::ZetaStar, k, shift.alpha().to_bits(), tol, |t| {
            eval_zeta_star(k, shift, t)
        })
    }

    pub fn t_value(&self, k: &Composition, shift: HurwitzShift, tol: f64) -> Result<EvalResult> {
        self.fetch(ValueKind::TValue, k, shift.alpha().to_bits(), tol, |t| {
            eval_t(k, shift, t)
        })
    }

    pub fn li(&self, k: &Composition, x: f64, tol: f64) -> Result<EvalResult> {
        self.fetch(ValueKind::Li, k, x.to_bits(), tol, |t| eval_li(k, x, t))
    }

    pub fn a_function(&self, k: &Composition, x: f64, tol: f64) -> Result<EvalResult> {
        self.fetch(ValueKind::AFunction, k, x.to_bits(), tol, |t| {
            eval_a(k, x, t)
        })
    }
}
