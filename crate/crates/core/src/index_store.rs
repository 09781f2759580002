//! Dataset ingestion, feature-index construction and the on-disk index format.
//!
//! # File format
//!
//! UTF-8 text, `\n` line endings, fields separated by a single tab:
//!
//! ```text
//! cbir-index  <version>  <scheme>  <default metric>  <record count>
//! <id>  <label>  <v1> <v2> ... <vN>
//! ...
//! sha256  <64 lowercase hex digits>
//! ```
//!
//! Feature values are space-separated shortest round-trip decimal literals, so
//! a load reproduces every `f64` bit for bit. The trailer hashes every byte
//! that precedes it.

use std::collections::{BTreeMap, HashSet};
use std::fs::{self, File};
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::descriptor::{extract_feature, FeatureVector, QuantizationScheme};
use crate::error::{Error, Result};
use crate::imaging::decode_image;
use crate::similarity::Metric;

pub const FORMAT_NAME: &str = "cbir-index";
pub const FORMAT_VERSION: u32 = 1;
const TRAILER_TAG: &str = "sha256";

/// File extensions picked up during ingestion (compared case-insensitively).
pub const IMAGE_EXTENSIONS: [&str; 9] = [
    "png", "jpg", "jpeg", "bmp", "gif", "ppm", "pgm", "tif", "tiff",
];

/// Images per category in flat, numerically named collections.
pub const FLAT_CLASS_SIZE: u64 = 100;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledImage {
    /// Path relative to the dataset root, `/`-separated.
    pub id: String,
    pub label: String,
    pub path: PathBuf,
}

fn is_image(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .map(|e| IMAGE_EXTENSIONS.contains(&e.to_ascii_lowercase().as_str()))
        .unwrap_or(false)
}

fn sorted_entries(dir: &Path) -> Result<Vec<PathBuf>> {
    let ingest_err = |e: io::Error| Error::Ingest {
        path: dir.to_path_buf(),
        reason: e.to_string(),
    };
    let mut entries = fs::read_dir(dir)
        .map_err(ingest_err)?
        .map(|e| e.map(|e| e.path()))
        .collect::<io::Result<Vec<_>>>()
        .map_err(ingest_err)?;
    entries.sort();
    Ok(entries)
}

fn file_name(path: &Path) -> String {
    path.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default()
}

/// Lists a labeled dataset.
///
/// With subdirectories present, each one is a class named after the
/// directory. Otherwise the root holds numerically named files and the label
/// is `stem / 100`, the usual Corel convention. Results are sorted by id.
pub fn ingest_dataset(root: impl AsRef<Path>) -> Result<Vec<LabeledImage>> {
    let root = root.as_ref();
    if !root.is_dir() {
        return Err(Error::Ingest {
            path: root.to_path_buf(),
            reason: "not a readable directory".into(),
        });
    }
    let entries = sorted_entries(root)?;
    let subdirs: Vec<&PathBuf> = entries.iter().filter(|p| p.is_dir()).collect();
    let mut images = Vec::new();

    if subdirs.is_empty() {
        for path in entries.iter().filter(|p| is_image(p)) {
            let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("");
            let number: u64 = stem.parse().map_err(|_| Error::Ingest {
                path: path.clone(),
                reason: format!("non-numeric file name {stem:?} in a flat dataset"),
            })?;
            images.push(LabeledImage {
                id: file_name(path),
                label: (number / FLAT_CLASS_SIZE).to_string(),
                path: path.clone(),
            });
        }
    } else {
        if let Some(stray) = entries.iter().find(|p| p.is_file() && is_image(p)) {
            return Err(Error::Ingest {
                path: stray.clone(),
                reason: "image at dataset root alongside class directories".into(),
            });
        }
        for dir in subdirs {
            let label = file_name(dir);
            for path in sorted_entries(dir)?
                .into_iter()
                .filter(|p| p.is_file() && is_image(p))
            {
                images.push(LabeledImage {
                    id: format!("{label}/{}", file_name(&path)),
                    label: label.clone(),
                    path,
                });
            }
        }
    }

    if images.is_empty() {
        return Err(Error::Ingest {
            path: root.to_path_buf(),
            reason: "dataset contains no images".into(),
        });
    }
    images.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(images)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub id: String,
    pub label: String,
    pub feature: FeatureVector,
}

/// Immutable feature database under one quantization scheme.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureIndex {
    scheme: QuantizationScheme,
    metric_default: Metric,
    records: Vec<Record>,
    class_sizes: BTreeMap<String, usize>,
}

fn check_field(kind: &str, value: &str) -> Result<()> {
    if value.is_empty() || value.contains(['\t', '\n', '\r']) {
        return Err(Error::Config(format!(
            "{kind} {value:?} is empty or contains a tab or line break"
        )));
    }
    Ok(())
}

impl FeatureIndex {
    pub fn from_records(
        scheme: QuantizationScheme,
        metric_default: Metric,
        records: Vec<Record>,
    ) -> Result<Self> {
        if records.is_empty() {
            return Err(Error::Config("an index needs at least one record".into()));
        }
        let mut seen = HashSet::new();
        let mut class_sizes = BTreeMap::new();
        for r in &records {
            check_field("id", &r.id)?;
            check_field("label", &r.label)?;
            if !seen.insert(r.id.as_str()) {
                return Err(Error::Config(format!("duplicate id {:?}", r.id)));
            }
            if r.feature.scheme() != scheme {
                return Err(Error::Dimension(format!(
                    "record {:?} uses {} but the index uses {scheme}",
                    r.id,
                    r.feature.scheme()
                )));
            }
            *class_sizes.entry(r.label.clone()).or_insert(0) += 1;
        }
        Ok(Self {
            scheme,
            metric_default,
            records,
            class_sizes,
        })
    }

    pub fn scheme(&self) -> QuantizationScheme {
        self.scheme
    }

    pub fn metric_default(&self) -> Metric {
        self.metric_default
    }

    pub fn records(&self) -> &[Record] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Number of records per label (the relevant-set size for recall).
    pub fn class_sizes(&self) -> &BTreeMap<String, usize> {
        &self.class_sizes
    }

    pub fn class_size(&self, label: &str) -> usize {
        self.class_sizes.get(label).copied().unwrap_or(0)
    }

    pub fn get(&self, id: &str) -> Option<&Record> {
        self.records.iter().find(|r| r.id == id)
    }
}

/// Extracts one feature per image in parallel. Any decode failure aborts the
/// build and every failing id is reported.
pub fn build_index(images: &[LabeledImage], scheme: QuantizationScheme) -> Result<FeatureIndex> {
    if images.is_empty() {
        return Err(Error::Config(
            "cannot build an index from zero images".into(),
        ));
    }
    let results: Vec<std::result::Result<Record, (String, String)>> = images
        .par_iter()
        .map(|img| {
            decode_image(&img.path)
                .and_then(|rgb| extract_feature(&rgb, scheme))
                .map(|feature| Record {
                    id: img.id.clone(),
                    label: img.label.clone(),
                    feature,
                })
                .map_err(|e| (img.id.clone(), e.to_string()))
        })
        .collect();
    let mut records = Vec::with_capacity(results.len());
    let mut failures = Vec::new();
    for r in results {
        match r {
            Ok(rec) => records.push(rec),
            Err(f) => failures.push(f),
        }
    }
    if !failures.is_empty() {
        return Err(Error::Build { failures });
    }
    FeatureIndex::from_records(scheme, Metric::default(), records)
}

struct HashingWriter<W: Write> {
    inner: W,
    hasher: Sha256,
}

impl<W: Write> Write for HashingWriter<W> {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        let n = self.inner.write(buf)?;
        self.hasher.update(&buf[..n]);
        Ok(n)
    }

    fn flush(&mut self) -> io::Result<()> {
        self.inner.flush()
    }
}

pub fn write_index<W: Write>(index: &FeatureIndex, out: W) -> Result<()> {
    let mut w = HashingWriter {
        inner: out,
        hasher: Sha256::new(),
    };
    writeln!(
        w,
        "{FORMAT_NAME}\t{FORMAT_VERSION}\t{}\t{}\t{}",
        index.scheme,
        index.metric_default,
        index.records.len()
    )?;
    for r in &index.records {
        write!(w, "{}\t{}\t", r.id, r.label)?;
        for (i, v) in r.feature.values().iter().enumerate() {
            if i > 0 {
                w.write_all(b" ")?;
            }
            write!(w, "{v}")?;
        }
        w.write_all(b"\n")?;
    }
    let digest = w.hasher.finalize();
    let mut out = w.inner;
    writeln!(out, "{TRAILER_TAG}\t{}", to_hex(&digest))?;
    out.flush()?;
    Ok(())
}

pub fn save_index(index: &FeatureIndex, path: impl AsRef<Path>) -> Result<()> {
    write_index(index, BufWriter::new(File::create(path)?))
}

fn to_hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn read_index<R: Read>(mut input: R) -> Result<FeatureIndex> {
    let mut text = String::new();
    input
        .read_to_string(&mut text)
        .map_err(|e| Error::Integrity(format!("unreadable index: {e}")))?;

    let header_end = text
        .find('\n')
        .ok_or_else(|| Error::Integrity("missing header line".into()))?;
    let header: Vec<&str> = text[..header_end].split('\t').collect();
    if header.first() != Some(&FORMAT_NAME) {
        return Err(Error::Integrity("not a cbir index file".into()));
    }
    let version = header.get(1).copied().unwrap_or("");
    if version != FORMAT_VERSION.to_string() {
        return Err(Error::Version {
            found: version.to_string(),
            expected: FORMAT_VERSION,
        });
    }
    let [_, _, scheme, metric, count] = header[..] else {
        return Err(Error::Integrity(format!(
            "header has {} fields, expected 5",
            header.len()
        )));
    };

    // the trailer is the last complete line
    let body = text
        .strip_suffix('\n')
        .ok_or_else(|| Error::Integrity("file truncated (no final newline)".into()))?;
    let trailer_start = body.rfind('\n').map(|i| i + 1).unwrap_or(0);
    let trailer = &body[trailer_start..];
    let expected = trailer
        .strip_prefix(TRAILER_TAG)
        .and_then(|t| t.strip_prefix('\t'))
        .ok_or_else(|| Error::Integrity("missing checksum trailer; file truncated?".into()))?;
    let actual = to_hex(&Sha256::digest(&text.as_bytes()[..trailer_start]));
    if actual != expected {
        return Err(Error::Integrity("checksum mismatch".into()));
    }

    let scheme: QuantizationScheme = scheme.parse()?;
    let metric: Metric = metric.parse()?;
    let count: usize = count
        .parse()
        .map_err(|_| Error::Integrity(format!("bad record count {count:?}")))?;

    let lines: Vec<&str> = if trailer_start > header_end + 1 {
        text[header_end + 1..trailer_start - 1]
            .split('\n')
            .collect()
    } else {
        Vec::new()
    };
    if lines.len() != count {
        return Err(Error::Integrity(format!(
            "header announces {count} records, found {}",
            lines.len()
        )));
    }
    let mut records = Vec::with_capacity(count);
    for (n, line) in lines.iter().enumerate() {
        let bad = |what: &str| Error::Integrity(format!("record {}: {what}", n + 1));
        let mut fields = line.splitn(3, '\t');
        let (Some(id), Some(label), Some(values)) = (fields.next(), fields.next(), fields.next())
        else {
            return Err(bad("expected id, label and values"));
        };
        let values = values
            .split(' ')
            .map(|v| v.parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| bad("unparseable feature value"))?;
        let feature = FeatureVector::new(values, scheme).map_err(|e| bad(&e.to_string()))?;
        records.push(Record {
            id: id.to_string(),
            label: label.to_string(),
            feature,
        });
    }
    FeatureIndex::from_records(scheme, metric, records)
}

pub fn load_index(path: impl AsRef<Path>) -> Result<FeatureIndex> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::Ingest {
        path: path.to_path_buf(),
        reason: e.to_string(),
    })?;
    read_index(file)
}
