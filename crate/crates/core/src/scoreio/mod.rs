//! Score matrices, label vectors and the aligned datasets built from them.
//!
//! Score files are CSV with a `sample_id,class_0,...,class_{K-1}` header and
//! one probability row per sample. Labels use `sample_id,label`.

mod manifest;
mod report;

use std::collections::{HashMap, HashSet};
use std::fs::File;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use manifest::{Manifest, ModelEntry};
pub use report::{render_report, write_report, ReportRow, REPORT_HEADER};

/// Maximum deviation of a row sum from 1 accepted on load.
pub const ROW_SUM_TOLERANCE: f64 = 1e-6;

/// Rows whose sum is already this close to 1 are left untouched, which makes
/// renormalization a fixed point on its own output.
const RENORMALIZE_EPS: f64 = 1e-12;

/// Per-model probability table, `samples x classes`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreMatrix {
    model_id: String,
    sample_ids: Vec<String>,
    classes: usize,
    scores: Vec<f64>,
}

impl ScoreMatrix {
    /// Builds a validated matrix. Rows within [`ROW_SUM_TOLERANCE`] of 1 are
    /// rescaled onto the simplex.
    pub fn from_rows(
        model_id: impl Into<String>,
        sample_ids: Vec<String>,
        rows: Vec<Vec<f64>>,
    ) -> Result<Self> {
        let model_id = model_id.into();
        if sample_ids.len() != rows.len() {
            return Err(Error::LengthMismatch {
                expected: sample_ids.len(),
                found: rows.len(),
            });
        }
        let classes = rows.first().map(Vec::len).unwrap_or(0);
        let invalid = |row: usize, message: String| Error::InvalidMatrix {
            model_id: model_id.clone(),
            row,
            message,
        };
        if rows.is_empty() {
            return Err(invalid(0, "no samples".into()));
        }
        if classes < 2 {
            return Err(invalid(0, format!("need at least 2 classes, found {classes}")));
        }
        let mut seen = HashSet::with_capacity(sample_ids.len());
        let mut scores = Vec::with_capacity(rows.len() * classes);
        for (i, (id, mut row)) in sample_ids.iter().zip(rows).enumerate() {
            if !seen.insert(id.as_str()) {
                return Err(invalid(i, format!("duplicate sample_id `{id}`")));
            }
            if row.len() != classes {
                return Err(invalid(i, format!("expected {classes} entries, found {}", row.len())));
            }
            validate_row(&mut row).map_err(|m| invalid(i, m))?;
            scores.extend_from_slice(&row);
        }
        Ok(Self {
            model_id,
            sample_ids,
            classes,
            scores,
        })
    }

    pub fn model_id(&self) -> &str {
        &self.model_id
    }

    pub fn sample_ids(&self) -> &[String] {
        &self.sample_ids
    }

    pub fn num_samples(&self) -> usize {
        self.sample_ids.len()
    }

    pub fn num_classes(&self) -> usize {
        self.classes
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.scores[i * self.classes..(i + 1) * self.classes]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.scores.chunks_exact(self.classes)
    }

    /// Builds a matrix from rows that are already known to be valid.
    pub(crate) fn from_parts_unchecked(
        model_id: String,
        sample_ids: Vec<String>,
        classes: usize,
        scores: Vec<f64>,
    ) -> Self {
        debug_assert_eq!(sample_ids.len() * classes, scores.len());
        Self {
            model_id,
            sample_ids,
            classes,
            scores,
        }
    }

    fn reorder(&self, order: &[usize], sample_ids: Vec<String>) -> Self {
        let mut scores = Vec::with_capacity(order.len() * self.classes);
        for &i in order {
            scores.extend_from_slice(self.row(i));
        }
        Self {
            model_id: self.model_id.clone(),
            sample_ids,
            classes: self.classes,
            scores,
        }
    }
}

fn validate_row(row: &mut [f64]) -> std::result::Result<(), String> {
    for (k, &p) in row.iter().enumerate() {
        if !(0.0..=1.0).contains(&p) {
            return Err(format!("class_{k} value {p} outside [0, 1]"));
        }
    }
    let sum: f64 = row.iter().sum();
    if (sum - 1.0).abs() > ROW_SUM_TOLERANCE {
        return Err(format!("row sums to {sum}, expected 1"));
    }
    if (sum - 1.0).abs() > RENORMALIZE_EPS {
        row.iter_mut().for_each(|p| *p /= sum);
    }
    Ok(())
}

/// Ground-truth class indices keyed by sample id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelVector {
    sample_ids: Vec<String>,
    labels: Vec<usize>,
}

impl LabelVector {
    pub fn new(sample_ids: Vec<String>, labels: Vec<usize>) -> Result<Self> {
        if sample_ids.len() != labels.len() {
            return Err(Error::LengthMismatch {
                expected: sample_ids.len(),
                found: labels.len(),
            });
        }
        let mut seen = HashSet::with_capacity(sample_ids.len());
        for id in &sample_ids {
            if !seen.insert(id.as_str()) {
                return Err(Error::InvalidConfig(format!("duplicate label sample_id `{id}`")));
            }
        }
        Ok(Self { sample_ids, labels })
    }

    pub fn sample_ids(&self) -> &[String] {
        &self.sample_ids
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    fn select(&self, order: &[usize]) -> Self {
        Self {
            sample_ids: order.iter().map(|&i| self.sample_ids[i].clone()).collect(),
            labels: order.iter().map(|&i| self.labels[i]).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Validation,
    Test,
}

/// `M` score matrices and their labels, all sharing one sample order.
#[derive(Debug, Clone, PartialEq)]
pub struct FusionDataset {
    matrices: Vec<ScoreMatrix>,
    labels: LabelVector,
    split: Split,
}

impl FusionDataset {
    pub fn matrices(&self) -> &[ScoreMatrix] {
        &self.matrices
    }

    pub fn labels(&self) -> &LabelVector {
        &self.labels
    }

    pub fn split(&self) -> Split {
        self.split
    }

    pub fn with_split(mut self, split: Split) -> Self {
        self.split = split;
        self
    }

    pub fn num_models(&self) -> usize {
        self.matrices.len()
    }

    pub fn num_classes(&self) -> usize {
        self.matrices[0].num_classes()
    }

    pub fn num_samples(&self) -> usize {
        self.labels.len()
    }

    pub fn sample_ids(&self) -> &[String] {
        self.labels.sample_ids()
    }

    /// Keeps the samples whose id is in `ids`, in dataset order.
    pub fn subset(&self, ids: &HashSet<String>, split: Split) -> Self {
        let order: Vec<usize> = (0..self.num_samples())
            .filter(|&i| ids.contains(&self.labels.sample_ids[i]))
            .collect();
        self.select(&order, split)
    }

    /// Splits into (validation, test) by an explicit validation id list.
    /// Every listed id must be present in the dataset.
    pub fn partition(&self, validation_ids: &[String]) -> Result<(Self, Self)> {
        let known: HashSet<&str> = self.sample_ids().iter().map(String::as_str).collect();
        if let Some(missing) = validation_ids.iter().find(|id| !known.contains(id.as_str())) {
            return Err(Error::MissingSample {
                sample_id: missing.clone(),
                source_name: "dataset (validation id list)".into(),
            });
        }
        let wanted: HashSet<&str> = validation_ids.iter().map(String::as_str).collect();
        let (val, test): (Vec<usize>, Vec<usize>) = (0..self.num_samples())
            .partition(|&i| wanted.contains(self.labels.sample_ids[i].as_str()));
        Ok((self.select(&val, Split::Validation), self.select(&test, Split::Test)))
    }

    fn select(&self, order: &[usize], split: Split) -> Self {
        let labels = self.labels.select(order);
        let matrices = self
            .matrices
            .iter()
            .map(|m| m.reorder(order, labels.sample_ids.clone()))
            .collect();
        Self {
            matrices,
            labels,
            split,
        }
    }
}

/// Reorders every matrix to the label order. Any sample id missing from
/// any input is an error; no intersection is taken.
pub fn align(matrices: Vec<ScoreMatrix>, labels: LabelVector) -> Result<FusionDataset> {
    let first = matrices
        .first()
        .ok_or_else(|| Error::InvalidConfig("at least one score matrix is required".into()))?;
    let classes = first.num_classes();
    for m in &matrices {
        if m.num_classes() != classes {
            return Err(Error::ClassCountMismatch {
                model_id: m.model_id().to_string(),
                expected: classes,
                found: m.num_classes(),
            });
        }
    }
    for (id, &label) in labels.sample_ids.iter().zip(&labels.labels) {
        if label >= classes {
            return Err(Error::LabelOutOfRange {
                sample_id: id.clone(),
                label,
                classes,
            });
        }
    }

    let mut aligned = Vec::with_capacity(matrices.len());
    for m in &matrices {
        let index: HashMap<&str, usize> = m
            .sample_ids()
            .iter()
            .enumerate()
            .map(|(i, id)| (id.as_str(), i))
            .collect();
        let mut order = Vec::with_capacity(labels.len());
        for id in &labels.sample_ids {
            match index.get(id.as_str()) {
                Some(&i) => order.push(i),
                None => {
                    return Err(Error::MissingSample {
                        sample_id: id.clone(),
                        source_name: format!("model `{}`", m.model_id()),
                    })
                }
            }
        }
        if m.num_samples() != labels.len() {
            let wanted: HashSet<&str> = labels.sample_ids.iter().map(String::as_str).collect();
            let extra = m
                .sample_ids()
                .iter()
                .find(|id| !wanted.contains(id.as_str()))
                .expect("sizes differ so some id is extra");
            return Err(Error::MissingSample {
                sample_id: extra.clone(),
                source_name: "labels".into(),
            });
        }
        aligned.push(m.reorder(&order, labels.sample_ids.clone()));
    }
    Ok(FusionDataset {
        matrices: aligned,
        labels,
        split: Split::Validation,
    })
}

fn open(path: &Path) -> Result<csv::Reader<File>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    Ok(csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(file))
}

fn csv_error(path: &Path, e: csv::Error) -> Error {
    let line = e.position().map(|p| p.line()).unwrap_or(0);
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io(path, io),
        kind => Error::parse(path, line, format!("{kind:?}")),
    }
}

/// Loads a score CSV; the model id is the file stem.
pub fn load_scores(path: impl AsRef<Path>) -> Result<ScoreMatrix> {
    let path = path.as_ref();
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    load_scores_as(path, stem)
}

/// Loads a score CSV under an explicit model id.
pub fn load_scores_as(path: impl AsRef<Path>, model_id: impl Into<String>) -> Result<ScoreMatrix> {
    let path = path.as_ref();
    let mut reader = open(path)?;
    let mut records = reader.records();

    let header = match records.next() {
        Some(r) => r.map_err(|e| csv_error(path, e))?,
        None => return Err(Error::parse(path, 1, "missing header")),
    };
    let classes = header.len().saturating_sub(1);
    let header_ok = header.get(0) == Some("sample_id")
        && classes >= 2
        && header
            .iter()
            .skip(1)
            .enumerate()
            .all(|(k, h)| h == format!("class_{k}"));
    if !header_ok {
        return Err(Error::parse(
            path,
            1,
            "malformed header, expected `sample_id,class_0,...,class_{K-1}` with K >= 2",
        ));
    }

    let mut sample_ids = Vec::new();
    let mut scores = Vec::new();
    let mut seen = HashSet::new();
    let mut row = Vec::with_capacity(classes);
    for record in records {
        let record = record.map_err(|e| csv_error(path, e))?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        if record.len() != classes + 1 {
            return Err(Error::parse(
                path,
                line,
                format!("expected {} fields, found {}", classes + 1, record.len()),
            ));
        }
        let id = &record[0];
        if id.is_empty() {
            return Err(Error::parse(path, line, "empty sample_id"));
        }
        if !seen.insert(id.to_string()) {
            return Err(Error::parse(path, line, format!("duplicate sample_id `{id}`")));
        }
        row.clear();
        for (k, cell) in record.iter().skip(1).enumerate() {
            let value: f64 = cell.parse().map_err(|_| {
                Error::parse(path, line, format!("non-numeric value `{cell}` in class_{k}"))
            })?;
            row.push(value);
        }
        validate_row(&mut row).map_err(|m| Error::parse(path, line, m))?;
        sample_ids.push(id.to_string());
        scores.extend_from_slice(&row);
    }
    if sample_ids.is_empty() {
        return Err(Error::NoSamples {
            path: path.to_path_buf(),
        });
    }
    Ok(ScoreMatrix::from_parts_unchecked(
        model_id.into(),
        sample_ids,
        classes,
        scores,
    ))
}

/// Writes a matrix in the score CSV format. Values use the shortest
/// representation that parses back to the same `f64`.
pub fn write_scores(matrix: &ScoreMatrix, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut out = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["sample_id".to_string()];
    header.extend((0..matrix.num_classes()).map(|k| format!("class_{k}")));
    out.write_record(&header).map_err(|e| csv_error(path, e))?;
    for (id, row) in matrix.sample_ids().iter().zip(matrix.rows()) {
        let mut record = Vec::with_capacity(row.len() + 1);
        record.push(id.clone());
        record.extend(row.iter().map(|p| p.to_string()));
        out.write_record(&record).map_err(|e| csv_error(path, e))?;
    }
    let bytes = out.into_inner().map_err(|e| Error::io(path, e.into_error()))?;
    write_file(path, &bytes)
}

pub(crate) fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    let mut file = File::create(path).map_err(|e| Error::io(path, e))?;
    file.write_all(bytes).map_err(|e| Error::io(path, e))
}

/// Loads a `sample_id,label` CSV.
pub fn load_labels(path: impl AsRef<Path>) -> Result<LabelVector> {
    let path = path.as_ref();
    let mut reader = open(path)?;
    let mut records = reader.records();
    let header = match records.next() {
        Some(r) => r.map_err(|e| csv_error(path, e))?,
        None => return Err(Error::parse(path, 1, "missing header")),
    };
    if header.len() != 2 || &header[0] != "sample_id" || &header[1] != "label" {
        return Err(Error::parse(path, 1, "malformed header, expected `sample_id,label`"));
    }
    let mut sample_ids = Vec::new();
    let mut labels = Vec::new();
    let mut seen = HashSet::new();
    for record in records {
        let record = record.map_err(|e| csv_error(path, e))?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        if record.len() != 2 {
            return Err(Error::parse(path, line, format!("expected 2 fields, found {}", record.len())));
        }
        let id = &record[0];
        if id.is_empty() {
            return Err(Error::parse(path, line, "empty sample_id"));
        }
        if !seen.insert(id.to_string()) {
            return Err(Error::parse(path, line, format!("duplicate sample_id `{id}`")));
        }
        let label: usize = record[1].parse().map_err(|_| {
            Error::parse(path, line, format!("label `{}` is not a class index", &record[1]))
        })?;
        sample_ids.push(id.to_string());
        labels.push(label);
    }
    if sample_ids.is_empty() {
        return Err(Error::NoSamples {
            path: path.to_path_buf(),
        });
    }
    Ok(LabelVector { sample_ids, labels })
}

/// Writes a `sample_id,label` CSV.
pub fn write_labels(labels: &LabelVector, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut out = csv::Writer::from_writer(Vec::new());
    out.write_record(["sample_id", "label"])
        .map_err(|e| csv_error(path, e))?;
    for (id, label) in labels.sample_ids.iter().zip(&labels.labels) {
        out.write_record([id.as_str(), &label.to_string()])
            .map_err(|e| csv_error(path, e))?;
    }
    let bytes = out.into_inner().map_err(|e| Error::io(path, e.into_error()))?;
    write_file(path, &bytes)
}

/// Reads a list of sample ids, one per line. Blank lines and an optional
/// leading `sample_id` header are skipped.
pub fn load_id_list(path: impl AsRef<Path>) -> Result<Vec<String>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut ids = Vec::new();
    let mut seen = HashSet::new();
    for (n, line) in text.lines().enumerate() {
        let id = line.trim();
        if id.is_empty() || (n == 0 && id == "sample_id") {
            continue;
        }
        if !seen.insert(id.to_string()) {
            return Err(Error::parse(path, n as u64 + 1, format!("duplicate sample_id `{id}`")));
        }
        ids.push(id.to_string());
    }
    Ok(ids)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write(dir: &tempfile::TempDir, name: &str, body: &str) -> std::path::PathBuf {
        let p = dir.path().join(name);
        std::fs::write(&p, body).unwrap();
        p
    }

    fn ids(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn loads_two_row_matrix() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(&dir, "bert.csv", "sample_id,class_0,class_1\ns1,0.8,0.2\ns2,0.3,0.7\n");
        let m = load_scores(&p).unwrap();
        assert_eq!(m.model_id(), "bert");
        assert_eq!(m.num_samples(), 2);
        assert_eq!(m.num_classes(), 2);
        assert_eq!(m.row(0), &[0.8, 0.2]);
        assert_eq!(m.row(1), &[0.3, 0.7]);
    }

    #[test]
    fn row_sum_violation_names_line() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(&dir, "m.csv", "sample_id,class_0,class_1\ns1,0.5,0.5\ns2,0.6,0.3\n");
        match load_scores(&p).unwrap_err() {
            Error::Parse { line, message, .. } => {
                assert_eq!(line, 3);
                assert!(message.contains("sums to"), "{message}");
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn header_only_file_has_no_samples() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(&dir, "m.csv", "sample_id,class_0,class_1\n");
        let err = load_scores(&p).unwrap_err();
        assert!(matches!(err, Error::NoSamples { .. }));
        assert!(err.to_string().contains("no samples"));
    }

    #[test]
    fn malformed_inputs_report_lines() {
        let dir = tempfile::tempdir().unwrap();
        let bad_header = write(&dir, "a.csv", "id,class_0,class_1\ns1,0.5,0.5\n");
        assert!(matches!(load_scores(&bad_header), Err(Error::Parse { line: 1, .. })));
        let one_class = write(&dir, "b.csv", "sample_id,class_0\ns1,1.0\n");
        assert!(matches!(load_scores(&one_class), Err(Error::Parse { line: 1, .. })));
        let nan = write(&dir, "c.csv", "sample_id,class_0,class_1\ns1,abc,0.5\n");
        assert!(matches!(load_scores(&nan), Err(Error::Parse { line: 2, .. })));
        let dup = write(&dir, "d.csv", "sample_id,class_0,class_1\ns1,0.5,0.5\ns1,0.5,0.5\n");
        match load_scores(&dup).unwrap_err() {
            Error::Parse { line: 3, message, .. } => assert!(message.contains("duplicate")),
            e => panic!("unexpected {e:?}"),
        }
        let short = write(&dir, "e.csv", "sample_id,class_0,class_1\ns1,0.5\n");
        assert!(matches!(load_scores(&short), Err(Error::Parse { line: 2, .. })));
        let neg = write(&dir, "f.csv", "sample_id,class_0,class_1\ns1,-0.1,1.1\n");
        assert!(matches!(load_scores(&neg), Err(Error::Parse { line: 2, .. })));
        assert!(load_scores(dir.path().join("missing.csv")).unwrap_err().is_io());
    }

    #[test]
    fn near_simplex_rows_are_renormalized() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(&dir, "m.csv", "sample_id,class_0,class_1\ns1,0.6000004,0.4\n");
        let m = load_scores(&p).unwrap();
        let sum: f64 = m.row(0).iter().sum();
        assert!((sum - 1.0).abs() <= 1e-15);
        assert!(m.row(0)[0] < 0.6000004);
    }

    #[test]
    fn align_reorders_to_label_order() {
        let a = ScoreMatrix::from_rows("a", ids(&["s2", "s1"]), vec![vec![0.1, 0.9], vec![0.8, 0.2]]).unwrap();
        let b = ScoreMatrix::from_rows("b", ids(&["s1", "s2"]), vec![vec![0.6, 0.4], vec![0.3, 0.7]]).unwrap();
        let labels = LabelVector::new(ids(&["s1", "s2"]), vec![0, 1]).unwrap();
        let d = align(vec![a, b], labels).unwrap();
        assert_eq!(d.sample_ids(), &ids(&["s1", "s2"])[..]);
        assert_eq!(d.matrices()[0].row(0), &[0.8, 0.2]);
        assert_eq!(d.matrices()[0].row(1), &[0.1, 0.9]);
        assert_eq!(d.matrices()[1].row(0), &[0.6, 0.4]);
        for m in d.matrices() {
            assert_eq!(m.sample_ids(), d.sample_ids());
        }
        let again = align(d.matrices().to_vec(), d.labels().clone()).unwrap();
        assert_eq!(again, d);
    }

    #[test]
    fn align_rejects_missing_and_mismatched() {
        let a = ScoreMatrix::from_rows("bert", ids(&["s1", "s2"]), vec![vec![0.5, 0.5]; 2]).unwrap();
        let labels = LabelVector::new(ids(&["s1", "s2", "s3"]), vec![0, 1, 0]).unwrap();
        match align(vec![a.clone()], labels).unwrap_err() {
            Error::MissingSample { sample_id, source_name } => {
                assert_eq!(sample_id, "s3");
                assert!(source_name.contains("bert"));
            }
            e => panic!("unexpected {e:?}"),
        }
        let c = ScoreMatrix::from_rows("lstm", ids(&["s1", "s2"]), vec![vec![0.2, 0.3, 0.5]; 2]).unwrap();
        let labels = LabelVector::new(ids(&["s1", "s2"]), vec![0, 1]).unwrap();
        assert!(matches!(
            align(vec![a.clone(), c], labels.clone()),
            Err(Error::ClassCountMismatch { found: 3, .. })
        ));
        let short_labels = LabelVector::new(ids(&["s1"]), vec![0]).unwrap();
        assert!(matches!(align(vec![a.clone()], short_labels), Err(Error::MissingSample { .. })));
        let bad_label = LabelVector::new(ids(&["s1", "s2"]), vec![0, 2]).unwrap();
        assert!(matches!(align(vec![a], bad_label), Err(Error::LabelOutOfRange { .. })));
        assert!(align(vec![], labels).is_err());
    }

    #[test]
    fn partition_by_validation_ids() {
        let a = ScoreMatrix::from_rows("a", ids(&["s1", "s2", "s3"]), vec![vec![0.5, 0.5]; 3]).unwrap();
        let labels = LabelVector::new(ids(&["s1", "s2", "s3"]), vec![0, 1, 0]).unwrap();
        let d = align(vec![a], labels).unwrap();
        let (val, test) = d.partition(&ids(&["s3", "s1"])).unwrap();
        assert_eq!(val.sample_ids(), &ids(&["s1", "s3"])[..]);
        assert_eq!(val.split(), Split::Validation);
        assert_eq!(test.sample_ids(), &ids(&["s2"])[..]);
        assert_eq!(test.split(), Split::Test);
        assert!(d.partition(&ids(&["nope"])).is_err());
    }

    #[test]
    fn labels_and_id_lists_load() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(&dir, "labels.csv", "sample_id,label\ns1,1\ns2,0\n");
        let l = load_labels(&p).unwrap();
        assert_eq!(l.labels(), &[1, 0]);
        let bad = write(&dir, "bad.csv", "sample_id,label\ns1,x\n");
        assert!(matches!(load_labels(&bad), Err(Error::Parse { line: 2, .. })));
        let list = write(&dir, "val.txt", "sample_id\ns1\n\ns2\n");
        assert_eq!(load_id_list(&list).unwrap(), ids(&["s1", "s2"]));
    }
}
