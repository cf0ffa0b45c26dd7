//! On-disk persistence of computed canonical-basis polynomials.
//!
//! A cache file is versioned JSON: a header identifying the datum (label,
//! weight function, cutoff, format version) and a body of (y, w, P)
//! triples in canonical order. Files are named by a content hash of the
//! header, so incompatible configurations can never collide, and loading
//! is idempotent: warm entries are simply re-imported into the memo.

use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::hecke::HeckeAlgebra;
use crate::laurent::LaurentPoly;
use crate::weyl::AffineElement;

pub const FORMAT_VERSION: u32 = 1;

fn header_json(datum_label: &str, weights: &[u64], cutoff: usize) -> serde_json::Value {
    serde_json::json!({
        "datum": datum_label,
        "weights": weights,
        "cutoff": cutoff,
        "format_version": FORMAT_VERSION,
    })
}

/// Content hash of the header; the cache file name stem.
pub fn cache_key(datum_label: &str, weights: &[u64], cutoff: usize) -> String {
    let header = header_json(datum_label, weights, cutoff);
    let mut hasher = Sha256::new();
    hasher.update(serde_json::to_string(&header).expect("header serializes").as_bytes());
    format!("{:x}", hasher.finalize())
}

pub fn cache_path(dir: &Path, datum_label: &str, weights: &[u64], cutoff: usize) -> PathBuf {
    dir.join(format!("kl-{}.json", cache_key(datum_label, weights, cutoff)))
}

/// Write every P polynomial currently memoized in `h` to the cache
/// directory. Returns the file path.
pub fn save(h: &HeckeAlgebra, dir: &Path, datum_label: &str) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let triples: Vec<serde_json::Value> = h
        .export_p_triples()
        .into_iter()
        .map(|((_, y), (_, w), p)| {
            serde_json::json!({
                "y": y.to_json(),
                "w": w.to_json(),
                "p": p.to_json(),
            })
        })
        .collect();
    let doc = serde_json::json!({
        "header": header_json(datum_label, &h.group.weights, h.cutoff),
        "triples": triples,
    });
    let path = cache_path(dir, datum_label, &h.group.weights, h.cutoff);
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, serde_json::to_string_pretty(&doc)?)?;
    fs::rename(&tmp, &path)?;
    Ok(path)
}

/// Load a cache file into the memo of `h`, if one exists for this
/// configuration. Returns the number of canonical elements imported
/// (zero when there is no file).
pub fn load(h: &HeckeAlgebra, dir: &Path, datum_label: &str) -> Result<usize> {
    let path = cache_path(dir, datum_label, &h.group.weights, h.cutoff);
    if !path.exists() {
        return Ok(0);
    }
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path)?)?;
    let header = &doc["header"];
    let expect = header_json(datum_label, &h.group.weights, h.cutoff);
    if *header != expect {
        return Err(Error::Format(format!(
            "cache header mismatch in {}",
            path.display()
        )));
    }
    let triples = doc["triples"]
        .as_array()
        .ok_or_else(|| Error::Format("cache body must be an array".into()))?;
    // Group complete rows by w; each row reconstructs one c_w.
    let mut rows: Vec<(AffineElement, Vec<(AffineElement, LaurentPoly)>)> = Vec::new();
    for t in triples {
        let y = AffineElement::from_json(&t["y"])?;
        let w = AffineElement::from_json(&t["w"])?;
        let p = LaurentPoly::from_json(&t["p"])?;
        match rows.last_mut() {
            Some((last_w, row)) if *last_w == w => row.push((y, p)),
            _ => rows.push((w, vec![(y, p)])),
        }
    }
    let n = rows.len();
    for (w, row) in rows {
        h.import_canonical(&w, &row)?;
    }
    Ok(n)
}
