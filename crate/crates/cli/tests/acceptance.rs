//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any criterion fails.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use surfdraw::cover::cover_crossing_counts;
use surfdraw::crossing::{crossing_inventory, find_forbidden_pattern, CrossingMatrix, PatternMatch};
use surfdraw::embedding::{faces_of_rotation, rotation_system_of};
use surfdraw::enumeration::{load_corpus, Label};
use surfdraw::faces::{euler_report, face_set};
use surfdraw::generate::{random_drawings, GenParams};
use surfdraw::validate::validate;
use surfdraw::{parse_drawing, Drawing, SurfaceKind};

const LIMIT_CERTIFY: Duration = Duration::from_secs(1);
const LIMIT_ENUMERATE: Duration = Duration::from_secs(5);
const LIMIT_AUDIT: Duration = Duration::from_secs(5);
const LIMIT_COVER: Duration = Duration::from_secs(30);
const LIMIT_MATCHER: Duration = Duration::from_secs(10);

const RANDOM_DRAWINGS: usize = 100;
const RANDOM_MATRICES: usize = 200;
const SEED: u64 = 20_240_601;

const PATTERN: [[u64; 5]; 5] = [
    [0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0],
    [0, 0, 0, 1, 1],
    [0, 0, 1, 0, 1],
    [0, 0, 1, 1, 0],
];

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

struct Run {
    code: i32,
    stdout: String,
    elapsed: Duration,
}

fn surfdraw(args: &[&str]) -> Run {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_surfdraw"))
        .args(args)
        .current_dir(fixtures())
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        elapsed: start.elapsed(),
    }
}

fn field(text: &str, key: &str) -> Option<usize> {
    text.lines().find_map(|l| l.strip_prefix(key)).and_then(|v| v.trim().parse().ok())
}

fn criterion_1() -> (bool, String) {
    let run = surfdraw(&["certify", "fig1_k45_klein.tgd"]);
    let lines: Vec<&str> = run.stdout.lines().collect();
    let start = lines.iter().position(|l| l.starts_with("matrix")).map(|i| i + 2);
    let rows: Vec<Vec<u64>> = match start {
        Some(s) => lines[s..]
            .iter()
            .take_while(|l| l.trim_start().starts_with('a'))
            .map(|l| l.split_whitespace().skip(1).filter_map(|v| v.parse().ok()).collect())
            .collect(),
        None => Vec::new(),
    };
    let want: Vec<Vec<u64>> = PATTERN.iter().map(|r| r.to_vec()).collect();
    let witnesses: Vec<&str> = lines.iter().filter(|l| l.starts_with("  pair ")).copied().collect();
    let ok_matrix = rows == want;
    let ok_witness = witnesses == ["  pair {a1,a2} triple {a3,a4,a5}"];
    let pass = run.code == 0 && ok_matrix && ok_witness && run.elapsed < LIMIT_CERTIFY;
    let detail = format!(
        "exit {}, matrix {}, witnesses {:?}, {:.3}s (limit {}s)",
        run.code,
        if ok_matrix { "equals pattern" } else { "differs" },
        witnesses.iter().map(|w| w.trim()).collect::<Vec<_>>(),
        run.elapsed.as_secs_f64(),
        LIMIT_CERTIFY.as_secs()
    );
    (pass, detail)
}

fn criterion_2() -> (bool, String) {
    let o = surfdraw(&["enumerate", "--convention", "oriented"]);
    let r = surfdraw(&["enumerate", "--convention", "reflective"]);
    let po = surfdraw(&["enumerate", "--convention", "oriented", "--labels", "parts"]);
    let pr = surfdraw(&["enumerate", "--convention", "reflective", "--labels", "parts"]);
    let oriented = field(&o.stdout, "classes:");
    let reflective = field(&r.stdout, "classes:");
    let chiral = field(&o.stdout, "chiral pairs:");
    let examined = field(&o.stdout, "examined:");
    let elapsed = o.elapsed + r.elapsed;
    let pass = o.code == 0
        && r.code == 0
        && examined == Some(36)
        && oriented == Some(11)
        && reflective == Some(8)
        && chiral == Some(3)
        && elapsed < LIMIT_ENUMERATE;
    let detail = format!(
        "examined {:?}, oriented {:?} (want 11), reflective {:?} (want 8), chiral pairs {:?} (want 3); \
         relabel-within-parts gives oriented {:?}, reflective {:?}; {:.3}s (limit {}s)",
        examined,
        oriented,
        reflective,
        chiral,
        field(&po.stdout, "classes:"),
        field(&pr.stdout, "classes:"),
        elapsed.as_secs_f64(),
        LIMIT_ENUMERATE.as_secs()
    );
    (pass, detail)
}

fn criterion_3() -> (bool, String) {
    let dir = fixtures().join("figure2");
    let corpus = match load_corpus(&dir) {
        Ok(c) => c,
        Err(e) => return (false, format!("corpus does not load: {e}")),
    };
    let included: BTreeSet<String> = corpus
        .iter()
        .filter(|c| c.label != Label::NotIncluded)
        .map(|c| c.label.to_string())
        .collect();
    let not_included = corpus.iter().filter(|c| c.label == Label::NotIncluded).count();
    let run = surfdraw(&["audit", "figure2"]);
    let summary = run.stdout.lines().last().unwrap_or("").to_string();
    let pass = corpus.len() >= 17
        && included.len() == 11
        && not_included == 6
        && run.code == 0
        && summary.ends_with(" 0 mismatches")
        && run.elapsed < LIMIT_AUDIT;
    let detail = format!(
        "{} fixtures, {} oriented labels, {} not included; \"{}\"; {:.3}s (limit {}s)",
        corpus.len(),
        included.len(),
        not_included,
        summary,
        run.elapsed.as_secs_f64(),
        LIMIT_AUDIT.as_secs()
    );
    (pass, detail)
}

fn criterion_4() -> (bool, String) {
    let start = Instant::now();
    let params = GenParams::default();
    let drawings = random_drawings(SEED, RANDOM_DRAWINGS, &params);
    let mut agree = 0;
    let mut crossings = 0;
    let mut bounded = true;
    let kinds: BTreeSet<String> = drawings.iter().map(|d| d.surface.kind.to_string()).collect();
    for d in &drawings {
        bounded &= validate(d).is_valid()
            && d.edges.len() <= 12
            && d.edges.iter().all(|e| e.transits() <= 3);
        let polygon = crossing_inventory(d);
        crossings += polygon.values().sum::<usize>();
        if cover_crossing_counts(d).ok() == Some(polygon) {
            agree += 1;
        }
    }
    let elapsed = start.elapsed();
    let pass = agree == RANDOM_DRAWINGS && bounded && kinds.len() == 2 && elapsed < LIMIT_COVER;
    let detail = format!(
        "{agree}/{RANDOM_DRAWINGS} drawings agree ({crossings} crossings, surfaces {:?}, bounds {}); {:.3}s (limit {}s)",
        kinds,
        if bounded { "held" } else { "violated" },
        elapsed.as_secs_f64(),
        LIMIT_COVER.as_secs()
    );
    (pass, detail)
}

/// Every ordered injection of the five roles into the index set.
fn brute_force(e: &[Vec<u64>]) -> Vec<PatternMatch> {
    let n = e.len();
    let mut found = BTreeSet::new();
    for i1 in 0..n {
        for i2 in 0..n {
            for i3 in 0..n {
                for i4 in 0..n {
                    for i5 in 0..n {
                        let ix = [i1, i2, i3, i4, i5];
                        if (0..5).any(|a| (a + 1..5).any(|b| ix[a] == ix[b])) {
                            continue;
                        }
                        let fits = (0..5).all(|a| {
                            (0..5).all(|b| {
                                let want = u64::from(a >= 2 && b >= 2 && a != b);
                                e[ix[a]][ix[b]] == want
                            })
                        });
                        if fits {
                            let mut pair = [i1, i2];
                            pair.sort();
                            let mut triple = [i3, i4, i5];
                            triple.sort();
                            found.insert(PatternMatch { pair, triple });
                        }
                    }
                }
            }
        }
    }
    found.into_iter().collect()
}

fn random_matrix(rng: &mut ChaCha8Rng) -> Vec<Vec<u64>> {
    let n = rng.gen_range(1..=8);
    let mut e = vec![vec![0u64; n]; n];
    for i in 0..n {
        for j in i..n {
            let v = rng.gen_range(0..=2);
            e[i][j] = v;
            e[j][i] = v;
        }
    }
    if n >= 5 && rng.gen_bool(0.5) {
        let mut ix: Vec<usize> = (0..n).collect();
        for k in 0..5 {
            let s = rng.gen_range(k..n);
            ix.swap(k, s);
        }
        for a in 0..5 {
            for b in 0..5 {
                e[ix[a]][ix[b]] = PATTERN[a][b];
            }
        }
        for &p in &ix[..2] {
            for x in 0..n {
                if rng.gen_bool(0.7) {
                    e[p][x] = 0;
                    e[x][p] = 0;
                }
            }
        }
    }
    e
}

fn criterion_5() -> (bool, String) {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut agree = 0;
    let mut with_matches = 0;
    for _ in 0..RANDOM_MATRICES {
        let e = random_matrix(&mut rng);
        let expect = brute_force(&e);
        let got = find_forbidden_pattern(&CrossingMatrix::from_entries(e)).matches;
        with_matches += usize::from(!expect.is_empty());
        agree += usize::from(got == expect);
    }
    let elapsed = start.elapsed();
    let pass = agree == RANDOM_MATRICES && elapsed < LIMIT_MATCHER;
    let detail = format!(
        "{agree}/{RANDOM_MATRICES} matrices agree ({with_matches} contain the pattern); {:.3}s (limit {}s)",
        elapsed.as_secs_f64(),
        LIMIT_MATCHER.as_secs()
    );
    (pass, detail)
}

fn all_fixtures() -> Vec<(String, Drawing)> {
    let mut out = Vec::new();
    for dir in [fixtures(), fixtures().join("figure2")] {
        let mut paths: Vec<PathBuf> = std::fs::read_dir(&dir)
            .map(|r| r.filter_map(|e| e.ok().map(|e| e.path())).collect())
            .unwrap_or_default();
        paths.retain(|p| p.extension().is_some_and(|x| x == "tgd"));
        paths.sort();
        for p in paths {
            if let Some(d) = std::fs::read_to_string(&p).ok().and_then(|t| parse_drawing(&t).ok()) {
                let name = p.strip_prefix(fixtures()).unwrap_or(Path::new("?")).display().to_string();
                out.push((name, d));
            }
        }
    }
    out
}

fn criterion_6() -> (bool, String) {
    let fixtures = all_fixtures();
    let mut failures = Vec::new();
    let mut skipped = Vec::new();
    let mut compared = 0;
    for (name, d) in &fixtures {
        let report = validate(d);
        if !report.is_valid() {
            skipped.push(name.clone());
            continue;
        }
        let (fs, euler) = match (face_set(d), euler_report(d)) {
            (Ok(fs), Ok(r)) => (fs, r),
            _ => {
                failures.push(format!("{name}: no faces"));
                continue;
            }
        };
        if fs.walk_length_total() != 2 * euler.edges {
            failures.push(format!("{name}: walk lengths {} != 2E", fs.walk_length_total()));
        }
        let all_disks = fs.faces.iter().all(|f| f.disk);
        if euler.chi < 0 || (euler.chi == 0) != all_disks {
            failures.push(format!("{name}: chi {} with all faces disks {all_disks}", euler.chi));
        }
        if d.surface.kind == SurfaceKind::Torus && report.crossings.is_empty() && !d.edges.is_empty() {
            compared += 1;
            match rotation_system_of(d) {
                Ok(rs) => {
                    let comb = faces_of_rotation(&rs).len();
                    if (comb == euler.faces) != euler.cellular {
                        failures.push(format!(
                            "{name}: rotation faces {comb}, geometric faces {}, cellular {}",
                            euler.faces, euler.cellular
                        ));
                    }
                }
                Err(e) => failures.push(format!("{name}: rotation system: {e}")),
            }
        }
    }
    let pass = failures.is_empty() && !fixtures.is_empty();
    let detail = format!(
        "{} fixtures, {} torus rotation comparisons, skipped invalid {:?}{}",
        fixtures.len(),
        compared,
        skipped,
        if failures.is_empty() { String::new() } else { format!("; failures: {}", failures.join("; ")) }
    );
    (pass, detail)
}

fn criterion_7() -> (bool, String) {
    let tmp = std::env::temp_dir().join(format!("surfdraw-acceptance-{}", std::process::id()));
    let _ = std::fs::create_dir_all(&tmp);
    let mut commands: Vec<Vec<String>> = Vec::new();
    for f in ["fig1_k45_klein.tgd", "fig1_rerouted.tgd", "bad_transit.tgd", "figure2/fig2_vi_vii.tgd"] {
        for c in ["validate", "matrix", "certify", "faces"] {
            commands.push(vec![c.into(), f.into()]);
        }
    }
    for conv in ["oriented", "reflective"] {
        for labels in ["fixed", "parts", "sided"] {
            commands.push(vec!["enumerate".into(), "--convention".into(), conv.into(), "--labels".into(), labels.into()]);
        }
    }
    commands.push(vec!["audit".into(), "figure2".into()]);
    let mut differing = Vec::new();
    for cmd in &commands {
        let args: Vec<&str> = cmd.iter().map(String::as_str).collect();
        let runs: Vec<(i32, String)> = [None, None, Some("1"), Some("4")]
            .iter()
            .map(|jobs| {
                let mut a = args.clone();
                if let Some(j) = jobs {
                    a.splice(0..0, ["--jobs", j]);
                }
                let r = surfdraw(&a);
                (r.code, r.stdout)
            })
            .collect();
        if runs.iter().any(|r| *r != runs[0]) {
            differing.push(cmd.join(" "));
        }
    }
    for f in ["fig1_k45_klein.tgd", "figure2/fig2_i_iv.tgd", "empty_torus.tgd"] {
        let outs: Vec<Option<Vec<u8>>> = [None, Some("1"), Some("4")]
            .iter()
            .enumerate()
            .map(|(k, jobs)| {
                let out = tmp.join(format!("r{k}.svg"));
                let o = out.to_string_lossy().into_owned();
                let mut a = vec!["render", f, "-o", o.as_str()];
                if let Some(j) = jobs {
                    a.splice(0..0, ["--jobs", j]);
                }
                (surfdraw(&a).code == 0).then(|| std::fs::read(&out).ok()).flatten()
            })
            .collect();
        if outs[0].is_none() || outs.iter().any(|o| *o != outs[0]) {
            differing.push(format!("render {f}"));
        }
    }
    let _ = std::fs::remove_dir_all(&tmp);
    let total = commands.len() + 3;
    let pass = differing.is_empty();
    let detail = format!(
        "{}/{} commands byte-identical across two runs and --jobs 1 vs 4{}",
        total - differing.len(),
        total,
        if pass { String::new() } else { format!("; differing: {}", differing.join(", ")) }
    );
    (pass, detail)
}

fn main() {
    let criteria: [(&str, fn() -> (bool, String)); 7] = [
        ("counterexample certificate", criterion_1),
        ("enumeration class counts", criterion_2),
        ("fixture audit", criterion_3),
        ("crossing oracle equivalence", criterion_4),
        ("pattern-matcher oracle equivalence", criterion_5),
        ("topology invariants", criterion_6),
        ("determinism", criterion_7),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let (pass, detail) = check();
        failed += usize::from(!pass);
        println!("{} criterion {} {}: {}", if pass { "PASS" } else { "FAIL" }, k + 1, name, detail);
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
