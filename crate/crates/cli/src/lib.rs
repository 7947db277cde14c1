//! Command handlers for the `surfdraw` binary.
//!
//! Every handler returns an [`Outcome`] instead of printing, so tests can run commands in
//! process and compare their output byte for byte.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use surfdraw::crossing::{certify_counterexample, find_forbidden_pattern, star_crossing_matrix};
use surfdraw::embedding::{Convention, LabelGroup, Orientation};
use surfdraw::enumeration::{enumerate_k24_torus, fixture_audit, load_corpus};
use surfdraw::faces::{all_b_faces_of, face_set};
use surfdraw::validate::validate;
use surfdraw::{parse_drawing, Drawing};

pub mod svg;

pub use svg::{decimal, render_svg, RenderStyle};

/// Exit status and captured streams of one command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout, stderr: String::new() }
    }

    fn negative(stdout: String) -> Self {
        Outcome { code: 1, stdout, stderr: String::new() }
    }

    fn failure(message: String) -> Self {
        Outcome { code: 2, stdout: String::new(), stderr: message + "\n" }
    }
}

#[derive(Parser, Debug)]
#[command(name = "surfdraw", version, about = "Verify and classify graph drawings on the torus and the Klein bottle")]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a drawing file and list errors, warnings and crossings.
    Validate { path: PathBuf },
    /// Print the star-crossing matrix and any occurrence of the forbidden pattern.
    Matrix { path: PathBuf },
    /// Decide whether a drawing is a counterexample on the Klein bottle.
    Certify { path: PathBuf },
    /// Report the faces of a drawing on its surface.
    Faces { path: PathBuf },
    /// Classify the crossing-free drawings of K2,4 on the torus.
    Enumerate {
        #[arg(long, value_enum, default_value = "oriented")]
        convention: OrientationArg,
        #[arg(long, value_enum, default_value = "sided")]
        labels: LabelsArg,
    },
    /// Check a labelled corpus of drawings against the enumeration.
    Audit {
        dir: PathBuf,
        #[arg(long, value_enum, default_value = "sided")]
        labels: LabelsArg,
    },
    /// Draw a drawing file as SVG.
    Render {
        path: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
        /// Pixels per unit (default: longest side 480 pixels).
        #[arg(long)]
        scale: Option<f64>,
        #[arg(long)]
        no_arrows: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrientationArg {
    Oriented,
    Reflective,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LabelsArg {
    Fixed,
    Parts,
    Sided,
}

impl From<LabelsArg> for LabelGroup {
    fn from(l: LabelsArg) -> Self {
        match l {
            LabelsArg::Fixed => LabelGroup::Fixed,
            LabelsArg::Parts => LabelGroup::Parts,
            LabelsArg::Sided => LabelGroup::Sided,
        }
    }
}

impl From<OrientationArg> for Orientation {
    fn from(o: OrientationArg) -> Self {
        match o {
            OrientationArg::Oriented => Orientation::Oriented,
            OrientationArg::Reflective => Orientation::Reflective,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome::ok(text)
            };
        }
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        if j == 0 {
            return Outcome::failure("error: --jobs must be at least 1".to_string());
        }
        pool = pool.num_threads(j);
    }
    match pool.build() {
        Ok(pool) => pool.install(|| execute(&cli.command)),
        Err(e) => Outcome::failure(format!("error: {e}")),
    }
}

pub fn execute(command: &Command) -> Outcome {
    match command {
        Command::Validate { path } => cmd_validate(path),
        Command::Matrix { path } => cmd_matrix(path),
        Command::Certify { path } => cmd_certify(path),
        Command::Faces { path } => cmd_faces(path),
        Command::Enumerate { convention, labels } => {
            cmd_enumerate(Convention::new((*convention).into(), (*labels).into()))
        }
        Command::Audit { dir, labels } => cmd_audit(dir, (*labels).into()),
        Command::Render { path, out, scale, no_arrows } => {
            let style = RenderStyle { scale: *scale, arrows: !no_arrows };
            cmd_render(path, out, &style)
        }
    }
}

fn load(path: &Path) -> Result<Drawing, Outcome> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Outcome::failure(format!("error: cannot read {}: {e}", path.display())))?;
    parse_drawing(&text).map_err(|e| Outcome::failure(format!("error: {}: {e}", path.display())))
}

/// Loads a drawing that must also validate; invalid drawings give exit status 1.
fn load_valid(path: &Path) -> Result<Drawing, Outcome> {
    let d = load(path)?;
    let report = validate(&d);
    if report.is_valid() {
        Ok(d)
    } else {
        Err(Outcome::negative(report.render(&d)))
    }
}

pub fn cmd_validate(path: &Path) -> Outcome {
    let d = match load(path) {
        Ok(d) => d,
        Err(o) => return o,
    };
    let report = validate(&d);
    let text = report.render(&d);
    if report.is_valid() {
        Outcome::ok(text)
    } else {
        Outcome::negative(text)
    }
}

pub fn cmd_matrix(path: &Path) -> Outcome {
    let d = match load_valid(path) {
        Ok(d) => d,
        Err(o) => return o,
    };
    let m = match star_crossing_matrix(&d) {
        Ok(m) => m,
        Err(e) => return Outcome::negative(format!("{e}\n")),
    };
    let mut out = m.render();
    let search = find_forbidden_pattern(&m);
    if let Some(n) = &search.notice {
        out.push_str(&format!("pattern: {n}\n"));
    } else if search.matches.is_empty() {
        out.push_str("pattern: absent\n");
    } else {
        for p in &search.matches {
            out.push_str(&format!("pattern: {}\n", p.describe(&m.labels)));
        }
    }
    Outcome::ok(out)
}

pub fn cmd_certify(path: &Path) -> Outcome {
    let d = match load(path) {
        Ok(d) => d,
        Err(o) => return o,
    };
    let report = certify_counterexample(&d);
    if report.verdict {
        Outcome::ok(report.render())
    } else {
        Outcome::negative(report.render())
    }
}

pub fn cmd_faces(path: &Path) -> Outcome {
    let d = match load_valid(path) {
        Ok(d) => d,
        Err(o) => return o,
    };
    let fs = match face_set(&d) {
        Ok(fs) => fs,
        Err(e) => return Outcome::negative(format!("{e}\n")),
    };
    let mut out = fs.render(&d);
    let all_b = all_b_faces_of(&d, &fs);
    let list: Vec<String> = all_b.iter().map(|f| f.to_string()).collect();
    out.push_str(&format!(
        "all-b faces: {}\n",
        if list.is_empty() { "none".to_string() } else { list.join(" ") }
    ));
    Outcome::ok(out)
}

pub fn cmd_enumerate(convention: Convention) -> Outcome {
    Outcome::ok(enumerate_k24_torus(convention).render())
}

pub fn cmd_audit(dir: &Path, labels: LabelGroup) -> Outcome {
    let corpus = match load_corpus(dir) {
        Ok(c) => c,
        Err(e) => return Outcome::failure(format!("error: {}: {e}", dir.display())),
    };
    let report = fixture_audit(&corpus, labels);
    if report.mismatches.is_empty() {
        Outcome::ok(report.render())
    } else {
        Outcome::negative(report.render())
    }
}

pub fn cmd_render(path: &Path, out: &Path, style: &RenderStyle) -> Outcome {
    if style.scale.is_some_and(|s| !(s.is_finite() && s > 0.0)) {
        return Outcome::failure("error: --scale must be a positive number".to_string());
    }
    let d = match load_valid(path) {
        Ok(d) => d,
        Err(o) => return o,
    };
    let svg = render_svg(&d, style);
    match std::fs::write(out, &svg) {
        Ok(()) => Outcome::ok(format!("wrote {}\n", out.display())),
        Err(e) => Outcome::failure(format!("error: cannot write {}: {e}", out.display())),
    }
}
