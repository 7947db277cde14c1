//! Exhaustive enumeration of K2,4 torus embeddings and the audit of labelled drawings.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::path::Path;

use rayon::prelude::*;
use thiserror::Error;

use crate::drawing::{parse_drawing, Drawing};
use crate::embedding::{
    canonical_code, embedding_of, genus_of, ClassId, Convention, Embedding, EmbeddingError, LabelGroup, Orientation,
    RotationSystem,
};
use crate::faces::all_b_faces;
use crate::surface::SurfaceKind;
use crate::validate::validate;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumeratedClass {
    pub id: ClassId,
    pub multiplicity: usize,
    pub representative: Embedding,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationResult {
    pub convention: Convention,
    pub essential_only: bool,
    /// Rotation systems examined.
    pub examined: usize,
    pub genus1_cellular: usize,
    pub genus0: usize,
    /// Embeddings considered: genus-1 systems plus genus-0 systems with one handle.
    pub candidates: usize,
    pub with_all_b_face: usize,
    pub passing_filter: usize,
    pub passing_cellular: usize,
    pub classes: Vec<EnumeratedClass>,
    pub chiral_pairs: usize,
}

impl EnumerationResult {
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "convention: {}", self.convention);
        let _ = writeln!(out, "examined: {}", self.examined);
        let _ = writeln!(out, "genus-1 systems: {}", self.genus1_cellular);
        let _ = writeln!(out, "genus-0 systems: {}", self.genus0);
        let _ = writeln!(out, "candidate embeddings: {}", self.candidates);
        let _ = writeln!(out, "with all-b face: {}", self.with_all_b_face);
        let _ = writeln!(
            out,
            "passing filter: {} (cellular {}, non-cellular {}){}",
            self.passing_filter,
            self.passing_cellular,
            self.passing_filter - self.passing_cellular,
            if self.essential_only { ", cycle a1 b2 a2 b1 essential" } else { "" }
        );
        let _ = writeln!(out, "classes: {}", self.classes.len());
        let _ = writeln!(out, "chiral pairs: {}", self.chiral_pairs);
        for c in &self.classes {
            let _ = writeln!(
                out,
                "class {} {} x{} {}",
                c.id.hash(),
                if c.id.chiral { "chiral" } else { "achiral" },
                c.multiplicity,
                c.representative.describe()
            );
        }
        out
    }
}

/// Rotations at a1 and a2 with b1 first; b-vertices have degree 2.
fn fixed_start_systems() -> Vec<RotationSystem> {
    let perms = permutations(&[1, 2, 3]);
    let mut out = Vec::new();
    for p in &perms {
        for r in &perms {
            let r1: Vec<usize> = std::iter::once(0).chain(p.iter().copied()).collect();
            let r2: Vec<usize> = std::iter::once(0).chain(r.iter().copied()).collect();
            out.push(RotationSystem::complete_bipartite(&[r1, r2], 4).expect("complete bipartite"));
        }
    }
    out
}

pub fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Torus embeddings carried by a rotation system of K2,4.
fn torus_embeddings(rs: &RotationSystem) -> (usize, Vec<Embedding>) {
    let g = genus_of(rs).expect("K2,4 is connected");
    match g {
        1 => (1, vec![Embedding::cellular(rs.clone())]),
        0 => {
            let n = Embedding::cellular(rs.clone()).walks.len();
            let mut out = Vec::new();
            for f in 0..n {
                for h in f..n {
                    out.push(Embedding::with_handle(rs.clone(), f, h));
                }
            }
            (0, out)
        }
        _ => (g, Vec::new()),
    }
}

/// Classifies the torus embeddings of the given rotation systems.
pub fn enumerate_systems(systems: &[RotationSystem], convention: Convention, essential_only: bool) -> EnumerationResult {
    struct Item {
        genus: usize,
        candidates: usize,
        all_b: usize,
        passing: Vec<(ClassId, Embedding)>,
    }
    let items: Vec<Item> = systems
        .par_iter()
        .map(|rs| {
            let (genus, embs) = torus_embeddings(rs);
            let candidates = embs.len();
            let with_b: Vec<Embedding> = embs.into_iter().filter(|e| !e.all_b_faces().is_empty()).collect();
            let all_b = with_b.len();
            let passing = with_b
                .into_iter()
                .filter(|e| !essential_only || e.cycle_is_essential().expect("K2,4 contains the cycle"))
                .map(|e| (canonical_code(&e, convention).expect("connected"), e))
                .collect();
            Item { genus, candidates, all_b, passing }
        })
        .collect();
    let mut classes: BTreeMap<ClassId, EnumeratedClass> = BTreeMap::new();
    let mut passing_cellular = 0;
    for item in &items {
        for (id, e) in &item.passing {
            passing_cellular += e.is_cellular() as usize;
            classes
                .entry(id.clone())
                .and_modify(|c| c.multiplicity += 1)
                .or_insert_with(|| EnumeratedClass { id: id.clone(), multiplicity: 1, representative: e.clone() });
        }
    }
    let classes: Vec<EnumeratedClass> = classes.into_values().collect();
    let chiral = classes.iter().filter(|c| c.id.chiral).count();
    EnumerationResult {
        convention,
        essential_only,
        examined: systems.len(),
        genus1_cellular: items.iter().filter(|i| i.genus == 1).count(),
        genus0: items.iter().filter(|i| i.genus == 0).count(),
        candidates: items.iter().map(|i| i.candidates).sum(),
        with_all_b_face: items.iter().map(|i| i.all_b).sum(),
        passing_filter: items.iter().map(|i| i.passing.len()).sum(),
        passing_cellular,
        chiral_pairs: match convention.orientation {
            Orientation::Oriented => chiral / 2,
            Orientation::Reflective => chiral,
        },
        classes,
    }
}

/// Enumerates crossing-free K2,4 drawings on the torus whose cycle a1 b2 a2 b1 is essential
/// and which have a face meeting every b-vertex.
pub fn enumerate_k24_torus(convention: Convention) -> EnumerationResult {
    enumerate_systems(&fixed_start_systems(), convention, true)
}

pub fn enumerate_k24_torus_with(convention: Convention, essential_only: bool) -> EnumerationResult {
    enumerate_systems(&fixed_start_systems(), convention, essential_only)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("wrong-graph: expected K2,4")]
    WrongGraph,
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

pub fn classify_drawing(d: &Drawing, convention: Convention) -> Result<ClassId, ClassifyError> {
    if d.surface.kind != SurfaceKind::Torus {
        return Err(EmbeddingError::WrongSurface.into());
    }
    if d.a_vertices().len() != 2 || d.b_vertices().len() != 4 || !d.is_complete_bipartite() {
        return Err(ClassifyError::WrongGraph);
    }
    Ok(canonical_code(&embedding_of(d)?, convention)?)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Label {
    NotIncluded,
    Class { base: String, sym: bool },
}

impl Label {
    pub fn parse(s: &str) -> Option<Label> {
        let s = s.trim();
        if s == "not included" {
            return Some(Label::NotIncluded);
        }
        let (sym, base) = match s.strip_prefix("sym ") {
            Some(rest) => (true, rest.trim()),
            None => (false, s),
        };
        if base.is_empty() || base.contains(char::is_whitespace) {
            return None;
        }
        Some(Label::Class { base: base.to_string(), sym })
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::NotIncluded => write!(f, "not included"),
            Label::Class { base, sym: true } => write!(f, "sym {base}"),
            Label::Class { base, sym: false } => write!(f, "{base}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub drawing: Drawing,
    pub label: Label,
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("labels.txt line {0}: expected `<file> <label>`")]
    BadLabel(usize),
    #[error("{0}: {1}")]
    Parse(String, crate::drawing::ParseError),
}

/// Reads `labels.txt` (lines `<file> <label>`) and the drawings it names.
pub fn load_corpus(dir: &Path) -> Result<Vec<CorpusEntry>, CorpusError> {
    let read = |p: &Path| {
        std::fs::read_to_string(p).map_err(|source| CorpusError::Io { path: p.display().to_string(), source })
    };
    let labels = read(&dir.join("labels.txt"))?;
    let mut out = Vec::new();
    for (i, line) in labels.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (file, label) = line.split_once(char::is_whitespace).ok_or(CorpusError::BadLabel(i + 1))?;
        let label = Label::parse(label).ok_or(CorpusError::BadLabel(i + 1))?;
        let text = read(&dir.join(file))?;
        let drawing = parse_drawing(&text).map_err(|e| CorpusError::Parse(file.to_string(), e))?;
        out.push(CorpusEntry { name: file.to_string(), drawing, label });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AuditStatus {
    Classified { oriented: ClassId, reflective: ClassId },
    Filtered,
    Failed(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditEntry {
    pub name: String,
    pub label: Label,
    pub status: AuditStatus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    pub labels: LabelGroup,
    pub entries: Vec<AuditEntry>,
    pub mismatches: Vec<String>,
    pub notes: Vec<String>,
}

impl AuditReport {
    pub fn classified(&self) -> usize {
        self.entries.iter().filter(|e| matches!(e.status, AuditStatus::Classified { .. })).count()
    }

    pub fn filtered(&self) -> usize {
        self.entries.iter().filter(|e| e.status == AuditStatus::Filtered).count()
    }

    /// Sizes of the oriented classes, largest first.
    pub fn oriented_class_sizes(&self) -> Vec<usize> {
        let mut by: BTreeMap<&str, usize> = BTreeMap::new();
        for e in &self.entries {
            if let AuditStatus::Classified { oriented, .. } = &e.status {
                *by.entry(&oriented.code).or_default() += 1;
            }
        }
        let mut v: Vec<usize> = by.into_values().collect();
        v.sort_by(|a, b| b.cmp(a));
        v
    }

    pub fn summary(&self) -> String {
        format!(
            "{} classified, {} filtered (no all-b face), {} mismatches",
            self.classified(),
            self.filtered(),
            self.mismatches.len()
        )
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let status = match &e.status {
                AuditStatus::Classified { oriented, reflective } => format!(
                    "oriented {} reflective {}{}",
                    oriented.hash(),
                    reflective.hash(),
                    if oriented.chiral { " chiral" } else { "" }
                ),
                AuditStatus::Filtered => "filtered (no all-b face)".to_string(),
                AuditStatus::Failed(why) => format!("failed: {why}"),
            };
            let _ = writeln!(out, "{} [{}] {}", e.name, e.label, status);
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        for m in &self.mismatches {
            let _ = writeln!(out, "mismatch: {m}");
        }
        let _ = writeln!(out, "{}", self.summary());
        out
    }
}

/// Checks labelled drawings against the filter and the classification.
///
/// Drawings labelled "not included" must have no all-b face. The rest are classified: equal
/// labels must share an oriented class, `X` and `sym X` must share a reflective class, and
/// different base labels must be in different reflective classes. Every classified drawing
/// must land in an enumerated class.
pub fn fixture_audit(corpus: &[CorpusEntry], labels: LabelGroup) -> AuditReport {
    let oriented_conv = Convention::new(Orientation::Oriented, labels);
    let reflective_conv = Convention::new(Orientation::Reflective, labels);
    let mut mismatches = Vec::new();
    let mut notes = Vec::new();
    let entries: Vec<AuditEntry> = corpus
        .par_iter()
        .map(|c| AuditEntry { name: c.name.clone(), label: c.label.clone(), status: audit_one(c, oriented_conv, reflective_conv) })
        .collect();
    for e in &entries {
        match (&e.status, &e.label) {
            (AuditStatus::Failed(why), _) => mismatches.push(format!("{}: {why}", e.name)),
            (AuditStatus::Filtered, Label::Class { .. }) => {
                mismatches.push(format!("{}: labelled {} but has no all-b face", e.name, e.label))
            }
            (AuditStatus::Classified { .. }, Label::NotIncluded) => {
                mismatches.push(format!("{}: labelled not included but has an all-b face", e.name))
            }
            _ => {}
        }
    }
    let enumerated: Vec<String> = enumerate_k24_torus(oriented_conv).classes.into_iter().map(|c| c.id.code).collect();
    let classified: Vec<(&AuditEntry, &ClassId, &ClassId, &String, bool)> = entries
        .iter()
        .filter_map(|e| match (&e.status, &e.label) {
            (AuditStatus::Classified { oriented, reflective }, Label::Class { base, sym }) => {
                Some((e, oriented, reflective, base, *sym))
            }
            _ => None,
        })
        .collect();
    for (e, o, _, _, _) in &classified {
        if !enumerated.contains(&o.code) {
            mismatches.push(format!("{}: class {} is not produced by the enumeration", e.name, o.hash()));
        }
    }
    let mut achiral_noted = Vec::new();
    for (i, x) in classified.iter().enumerate() {
        for y in &classified[i + 1..] {
            let (same_base, same_label) = (x.3 == y.3, x.3 == y.3 && x.4 == y.4);
            if same_label && x.1 != y.1 {
                mismatches.push(format!("{} and {} are both {} but not isomorphic", x.0.name, y.0.name, x.0.label));
            } else if same_base && !same_label {
                if x.2 != y.2 {
                    mismatches.push(format!(
                        "{} ({}) and {} ({}) are not mirror images",
                        x.0.name, x.0.label, y.0.name, y.0.label
                    ));
                } else if x.1 == y.1 && !achiral_noted.contains(x.3) {
                    achiral_noted.push(x.3.clone());
                    notes.push(format!(
                        "{} and sym {} coincide: {} and {} are isomorphic without reflection",
                        x.3, x.3, x.0.name, y.0.name
                    ));
                }
            } else if !same_base && x.2 == y.2 {
                mismatches.push(format!(
                    "{} ({}) and {} ({}) are isomorphic",
                    x.0.name, x.0.label, y.0.name, y.0.label
                ));
            }
        }
    }
    AuditReport { labels, entries, mismatches, notes }
}

fn audit_one(c: &CorpusEntry, oriented: Convention, reflective: Convention) -> AuditStatus {
    let report = validate(&c.drawing);
    if !report.is_valid() {
        return AuditStatus::Failed(format!("invalid drawing ({} errors)", report.errors.len()));
    }
    if !report.crossings.is_empty() {
        return AuditStatus::Failed(format!("{} crossing(s)", report.crossings.len()));
    }
    match all_b_faces(&c.drawing) {
        Err(e) => return AuditStatus::Failed(e.to_string()),
        Ok(f) if f.is_empty() => return AuditStatus::Filtered,
        Ok(_) => {}
    }
    match (classify_drawing(&c.drawing, oriented), classify_drawing(&c.drawing, reflective)) {
        (Ok(o), Ok(r)) => AuditStatus::Classified { oriented: o, reflective: r },
        (Err(e), _) | (_, Err(e)) => AuditStatus::Failed(e.to_string()),
    }
}
