use std::collections::BTreeMap;
use std::path::Path;

use surfdraw::arrangement::planarize;
use surfdraw::crossing::{certify_counterexample, find_forbidden_pattern, star_crossing_matrix};
use surfdraw::embedding::{
    canonical_code, embedding_of, faces_of_rotation, rotation_system_of, Convention, EmbeddingError, LabelGroup,
    Orientation,
};
use surfdraw::enumeration::{classify_drawing, fixture_audit, load_corpus, Label};
use surfdraw::faces::{all_b_faces, euler_report, face_set};
use surfdraw::validate::{validate, IssueCode};
use surfdraw::{parse_drawing, serialize_drawing, Drawing, VertexId};

fn fixture(name: &str) -> Drawing {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    parse_drawing(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn fig2(s: &str, t: &str) -> Drawing {
    fixture(&format!("figure2/fig2_{s}_{t}.tgd"))
}

fn sided(o: Orientation) -> Convention {
    Convention::new(o, LabelGroup::Sided)
}

const PATTERN: [[u64; 5]; 5] = [
    [0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0],
    [0, 0, 0, 1, 1],
    [0, 0, 1, 0, 1],
    [0, 0, 1, 1, 0],
];

#[test]
fn figure1_parses_and_validates() {
    let d = fixture("fig1_k45_klein.tgd");
    assert_eq!(d.vertices.len(), 9);
    assert_eq!(d.edges.len(), 20);
    assert!(d.is_complete_bipartite());
    let r = validate(&d);
    assert!(r.is_valid(), "{}", r.render(&d));
    assert_eq!(r.crossings.len(), 3);
    assert!(r.warnings.is_empty());
    let text = serialize_drawing(&d);
    assert_eq!(serialize_drawing(&parse_drawing(&text).unwrap()), text);
}

#[test]
fn figure1_matrix_is_the_pattern() {
    let d = fixture("fig1_k45_klein.tgd");
    let m = star_crossing_matrix(&d).unwrap();
    let rows: Vec<Vec<u64>> = PATTERN.iter().map(|r| r.to_vec()).collect();
    assert_eq!(m.entries, rows);
    let search = find_forbidden_pattern(&m);
    assert_eq!(search.matches.len(), 1);
    assert_eq!(search.matches[0].pair, [0, 1]);
    assert_eq!(search.matches[0].triple, [2, 3, 4]);
    let cert = certify_counterexample(&d);
    assert!(cert.verdict, "{}", cert.render());
}

#[test]
fn figure1_topology() {
    let d = fixture("fig1_k45_klein.tgd");
    let arr = planarize(&d).unwrap();
    assert_eq!(arr.nodes.len(), 12);
    assert_eq!(arr.segments.len(), 26);
    let r = euler_report(&d).unwrap();
    assert_eq!((r.vertices, r.edges, r.faces, r.chi, r.cellular), (12, 26, 14, 0, true));
    let fs = face_set(&d).unwrap();
    assert_eq!(fs.walk_length_total(), 52);
}

#[test]
fn rerouted_figure1_has_no_pattern() {
    let d = fixture("fig1_rerouted.tgd");
    let cert = certify_counterexample(&d);
    assert!(!cert.verdict);
    assert_eq!(cert.reasons, vec!["pattern-absent".to_string()]);
}

#[test]
fn torus_file_is_the_wrong_surface() {
    let cert = certify_counterexample(&fixture("k22_essential_torus.tgd"));
    assert!(!cert.verdict);
    assert!(cert.reasons.contains(&"wrong-surface".to_string()));
}

#[test]
fn bad_transit_fixture() {
    let d = fixture("bad_transit.tgd");
    assert!(validate(&d).has(IssueCode::BadTransit));
}

#[test]
fn essential_four_cycle() {
    let d = fixture("k22_essential_torus.tgd");
    let r = euler_report(&d).unwrap();
    assert_eq!((r.vertices, r.edges, r.faces, r.chi, r.cellular), (4, 4, 1, 1, false));
    let fs = face_set(&d).unwrap();
    assert!(!fs.faces[0].disk);
}

#[test]
fn disk_crossing_matrix() {
    let m = star_crossing_matrix(&fixture("k22_disk_crossing.tgd")).unwrap();
    assert_eq!(m.entries, vec![vec![0, 1], vec![1, 0]]);
}

#[test]
fn k24_counts() {
    let d = fixture("k24_planar_disk.tgd");
    let arr = planarize(&d).unwrap();
    assert_eq!((arr.nodes.len(), arr.segments.len(), arr.crossing_count()), (6, 8, 0));
    assert!(all_b_faces(&d).unwrap().is_empty());
    let cellular = fig2("i", "i");
    let r = euler_report(&cellular).unwrap();
    assert_eq!((r.vertices, r.edges, r.faces, r.chi, r.cellular), (6, 8, 2, 0, true));
    assert!(face_set(&cellular).unwrap().faces.iter().all(|f| f.disk));
    assert!(!all_b_faces(&cellular).unwrap().is_empty());
    assert!(all_b_faces(&fig2("iv", "iv")).unwrap().is_empty());
}

#[test]
fn single_vertex_and_empty() {
    let d = parse_drawing("surface torus\nrect 1 1\nvertex a1 A 1/2 1/2\n").unwrap();
    let arr = planarize(&d).unwrap();
    assert_eq!((arr.nodes.len(), arr.segments.len()), (1, 0));
    let r = euler_report(&fixture("empty_torus.tgd")).unwrap();
    assert_eq!((r.vertices, r.edges, r.faces, r.chi, r.cellular), (0, 0, 1, 1, false));
}

#[test]
fn rotation_systems_of_fixtures() {
    let d = fig2("i", "i");
    let rs = rotation_system_of(&d).unwrap();
    for (v, rot) in rs.vertices.iter().zip(&rs.rotation) {
        assert_eq!(rot.len(), if *v == VertexId::a(1) || *v == VertexId::a(2) { 4 } else { 2 });
    }
    assert_eq!(faces_of_rotation(&rs).len(), 2);
    assert!(matches!(
        rotation_system_of(&fixture("k22_disk_crossing.tgd")),
        Err(EmbeddingError::NotEmbedded(1))
    ));
    assert_eq!(rotation_system_of(&fixture("fig1_rerouted.tgd")), Err(EmbeddingError::WrongSurface));
}

#[test]
fn same_label_fixtures_share_a_class() {
    let o = sided(Orientation::Oriented);
    let ids: Vec<_> = [("i", "i"), ("ii", "ii"), ("iii", "iii"), ("viii", "viii")]
        .iter()
        .map(|(s, t)| classify_drawing(&fig2(s, t), o).unwrap())
        .collect();
    assert!(ids.iter().all(|x| *x == ids[0]));
    let a = classify_drawing(&fig2("i", "iv"), o).unwrap();
    assert_eq!(a, classify_drawing(&fig2("ii", "v"), o).unwrap());
    let sixes: Vec<_> = [("i", "vii"), ("ii", "vi"), ("iii", "vi"), ("vii", "viii")]
        .iter()
        .map(|(s, t)| classify_drawing(&fig2(s, t), o).unwrap())
        .collect();
    assert!(sixes.iter().all(|x| *x == sixes[0]));
}

#[test]
fn sym_labels_are_mirror_images() {
    let (o, r) = (sided(Orientation::Oriented), sided(Orientation::Reflective));
    let (x, y) = (fig2("i", "iv"), fig2("i", "v"));
    assert_ne!(classify_drawing(&x, o).unwrap(), classify_drawing(&y, o).unwrap());
    assert_eq!(classify_drawing(&x, r).unwrap(), classify_drawing(&y, r).unwrap());
    // 7(i) and sym 7(i): the reflection of one drawing is in the class of the other.
    let e = embedding_of(&fig2("i", "ii")).unwrap();
    let mirror = canonical_code(&e.reflect(), r).unwrap();
    assert_eq!(mirror, classify_drawing(&fig2("iii", "viii"), r).unwrap());
}

#[test]
fn seven_vii_is_alone() {
    let corpus = load_corpus(&Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/figure2")).unwrap();
    let o = sided(Orientation::Oriented);
    let target = classify_drawing(&fig2("vi", "vii"), o).unwrap();
    let same = corpus
        .iter()
        .filter(|c| c.label != Label::NotIncluded)
        .filter(|c| classify_drawing(&c.drawing, o).unwrap() == target)
        .count();
    assert_eq!(same, 1);
}

#[test]
fn corpus_labels_and_audit() {
    let corpus = load_corpus(&Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/figure2")).unwrap();
    assert_eq!(corpus.len(), 34);
    let mut sizes: BTreeMap<String, usize> = BTreeMap::new();
    for c in &corpus {
        *sizes.entry(c.label.to_string()).or_default() += 1;
    }
    assert_eq!(sizes.remove("not included"), Some(6));
    let mut tally: Vec<usize> = sizes.values().copied().collect();
    tally.sort();
    assert_eq!(tally, vec![1, 1, 1, 1, 2, 2, 4, 4, 4, 4, 4]);
    let report = fixture_audit(&corpus, LabelGroup::Sided);
    assert_eq!(report.summary(), "28 classified, 6 filtered (no all-b face), 0 mismatches");
    // 7(i) and sym 7(i) fall into one oriented class, so the oriented partition has 10 blocks.
    assert_eq!(report.oriented_class_sizes(), vec![4, 4, 4, 4, 4, 2, 2, 2, 1, 1]);
    assert_eq!(report.notes.len(), 1);
}

#[test]
fn cellular_fixtures_agree_with_rotation_faces() {
    let corpus = load_corpus(&Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/figure2")).unwrap();
    for c in &corpus {
        let r = euler_report(&c.drawing).unwrap();
        let comb = faces_of_rotation(&rotation_system_of(&c.drawing).unwrap()).len();
        assert_eq!(comb == r.faces, r.cellular, "{}", c.name);
    }
}

fn all_fixtures() -> Vec<(String, Drawing)> {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    let mut out = Vec::new();
    for dir in [root.clone(), root.join("figure2")] {
        let mut names: Vec<_> = std::fs::read_dir(&dir)
            .unwrap()
            .map(|e| e.unwrap().path())
            .filter(|p| p.extension().is_some_and(|x| x == "tgd"))
            .collect();
        names.sort();
        for p in names {
            let d = parse_drawing(&std::fs::read_to_string(&p).unwrap()).unwrap();
            out.push((p.file_name().unwrap().to_string_lossy().into_owned(), d));
        }
    }
    out
}

#[test]
fn topology_invariants_on_every_fixture() {
    let fixtures = all_fixtures();
    assert!(fixtures.len() >= 40);
    for (name, d) in &fixtures {
        if !validate(d).is_valid() {
            assert_eq!(name, "bad_transit.tgd");
            continue;
        }
        let fs = face_set(d).unwrap();
        let r = euler_report(d).unwrap();
        assert_eq!(fs.walk_length_total(), 2 * r.edges, "{name}");
        assert!(r.chi >= 0, "{name}");
        assert_eq!(r.chi == 0, fs.faces.iter().all(|f| f.disk), "{name}");
        assert_eq!(r.cellular, r.chi == 0, "{name}");
        if d.surface.kind == surfdraw::SurfaceKind::Torus && r.vertices == d.vertices.len() && d.is_complete_bipartite() {
            let comb = faces_of_rotation(&rotation_system_of(d).unwrap()).len();
            let walks: usize = fs.faces.iter().map(|f| f.walks.len()).sum();
            assert_eq!(comb, walks, "{name}");
            if r.cellular {
                assert_eq!(comb, r.faces, "{name}");
            }
        }
    }
}

#[test]
fn disk_drawing_counts_agree_without_being_cellular() {
    let d = fixture("k24_planar_disk.tgd");
    let r = euler_report(&d).unwrap();
    let comb = faces_of_rotation(&rotation_system_of(&d).unwrap()).len();
    assert_eq!((comb, r.faces, r.cellular), (4, 4, false));
}

#[test]
fn cover_oracle_on_fixtures_and_random_drawings() {
    use surfdraw::cover::cover_crossing_counts;
    use surfdraw::crossing::crossing_inventory;
    use surfdraw::generate::{random_drawings, GenParams};
    let mut drawings: Vec<Drawing> = all_fixtures()
        .into_iter()
        .filter(|(_, d)| validate(d).is_valid())
        .map(|(_, d)| d)
        .collect();
    drawings.extend(random_drawings(11, 30, &GenParams::default()));
    for d in &drawings {
        assert_eq!(crossing_inventory(d), cover_crossing_counts(d).unwrap());
    }
}
