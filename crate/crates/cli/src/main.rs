use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use blockset_core::bounds::BoundsRow;
use blockset_core::codes::{code_is_minimal, code_to_system, replay_pair, system_to_code};
use blockset_core::concat::{concatenate, field_reduce_code, field_reduce_point, field_reduce_system};
use blockset_core::construct::{
    diverted_tangent_set, four_point_selection, super_construction, tetrahedron, CertStatus, Certificate,
};
use blockset_core::io::{MatrixFile, PointsFile};
use blockset_core::repro;
use blockset_core::verify::outer::replay_outer_pair;
use blockset_core::verify::sbs::replay_hyperplane;
use blockset_core::verify::{
    avoidance_property, code_is_outer_minimal, first_uncovered, hermitian_rank2_containment, is_outer_sbs,
    is_saturating, is_sbs, on_any_proper_subline, replay_uncovered, violates_avoidance, SubspaceCollection,
};
use blockset_core::{
    make_tower, Caps, FieldTower, Level, LinearCode, Mat, MinimalityEngine, ProjSystem, Subspace, VerificationReport,
    Witness,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] blockset_core::Error),
    #[error("{0}")]
    Io(String),
    #[error("bad JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Usage(String),
}

type Result<T> = std::result::Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(CliError::Usage(msg.into()))
}

#[derive(Parser)]
#[command(
    name = "blockset",
    version,
    about = "Strong blocking sets and minimal codes over finite fields"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Field tower F_p ⊆ F_q ⊆ F_{q^h} with q = p^m, as p,m,h.
    #[arg(long, global = true, value_parser = parse_tower)]
    tower: Option<(u32, u32, u32)>,
    #[arg(long, global = true)]
    cap_hyperplanes: Option<u64>,
    #[arg(long, global = true)]
    cap_codewords: Option<u64>,
    #[arg(long, global = true)]
    cap_subsets: Option<u64>,
    #[arg(long, global = true)]
    cap_enumeration: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Also write the JSON report or certificate here.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
}

impl Global {
    fn caps(&self) -> Result<Caps> {
        let d = Caps::default();
        let caps = Caps {
            enumeration: self.cap_enumeration.unwrap_or(d.enumeration),
            hyperplanes: self.cap_hyperplanes.unwrap_or(d.hyperplanes),
            codewords: self.cap_codewords.unwrap_or(d.codewords),
            subsets: self.cap_subsets.unwrap_or(d.subsets),
        };
        if [caps.enumeration, caps.hyperplanes, caps.codewords, caps.subsets].contains(&0) {
            return usage("caps must be positive");
        }
        Ok(caps)
    }
}

fn parse_tower(s: &str) -> std::result::Result<(u32, u32, u32), String> {
    let v: Vec<u32> = s
        .split(',')
        .map(|x| x.trim().parse::<u32>().map_err(|e| format!("{x:?}: {e}")))
        .collect::<std::result::Result<_, _>>()?;
    match v[..] {
        [p, m, h] => Ok((p, m, h)),
        _ => Err("expected p,m,h".into()),
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build a point set and certify it.
    #[command(subcommand)]
    Construct(Construct),
    /// Run an exhaustive check on a matrix or points file.
    Verify(VerifyArgs),
    /// Field-reduce a code or a point set over the top field.
    Reduce(ReduceArgs),
    /// Concatenate an outer code with inner codes.
    Concat(ConcatArgs),
    /// Exact size bounds for strong blocking sets.
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// Run a reproduction suite.
    #[command(alias = "report")]
    Reproduce(ReproduceArgs),
}

#[derive(Subcommand)]
enum Construct {
    /// Lines through pairs of k frame points of PG(k-1, q).
    Tetrahedron {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        verify: bool,
    },
    /// 2K-3 diverted tangent lines in PG(K-1, q^h) (needs --tower).
    Rnt {
        #[arg(long = "K")]
        kk: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        verify: bool,
    },
    /// Four points on each diverted tangent line (needs --tower, h ≥ 2).
    Fourpoint {
        #[arg(long = "K")]
        kk: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        verify: bool,
    },
    /// Iterated construction B_i over F_q.
    Super {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        verify: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyKind {
    Sbs,
    OuterSbs,
    Minimal,
    OuterMinimal,
    Avoidance,
    Subline,
    Hermitian,
    Saturating,
}

#[derive(Clone, Copy, ValueEnum)]
enum Engine {
    Pairwise,
    Geometric,
}

#[derive(Args)]
struct VerifyArgs {
    kind: VerifyKind,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    rho: Option<usize>,
    #[arg(long)]
    no_minimality: bool,
    /// Minimality engine for `verify minimal`.
    #[arg(long, value_enum, default_value = "pairwise")]
    engine: Engine,
    /// Also test sublines over subfields of the prime field tower.
    #[arg(long)]
    absolute: bool,
    /// Replay the witness of an earlier report instead of searching.
    #[arg(long)]
    replay: Option<PathBuf>,
}

#[derive(Args)]
struct ReduceArgs {
    #[arg(long, conflicts_with = "points", required_unless_present = "points")]
    code: Option<PathBuf>,
    #[arg(long)]
    points: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ConcatArgs {
    #[arg(long)]
    outer: PathBuf,
    /// One inner code per outer column, or a single one for all.
    #[arg(long, required = true)]
    inner: Vec<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum BoundsCmd {
    /// CSV table of all bounds over a parameter grid.
    Table {
        /// Inclusive range a..b.
        #[arg(long, value_parser = parse_range)]
        k_range: (u64, u64),
        #[arg(long, value_delimiter = ',', required = true)]
        q_list: Vec<u64>,
        #[arg(long, default_value_t = 2)]
        h: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_range(s: &str) -> std::result::Result<(u64, u64), String> {
    let (a, b) = s.split_once("..").ok_or("expected a..b")?;
    let a: u64 = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b: u64 = b
        .trim()
        .trim_start_matches('=')
        .parse()
        .map_err(|e| format!("{b:?}: {e}"))?;
    if a > b {
        return Err(format!("empty range {s}"));
    }
    Ok((a, b))
}

#[derive(Args)]
struct ReproduceArgs {
    /// paper-examples, theorems-small, bounds-grid or super-q3.
    suite: String,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// Stdout that tolerates a closed pipe.
fn say(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

/// Writes to `out`, or stdout when absent.
fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => write(p, text),
        None => {
            say(text);
            Ok(())
        }
    }
}

/// Prints a JSON document and mirrors it to --json.
fn report(g: &Global, value: &str) -> Result<()> {
    say(&format!("{value}\n"));
    if let Some(p) = &g.json {
        write(p, &format!("{value}\n"))?;
    }
    Ok(())
}

enum Input {
    Matrix(MatrixFile),
    Points(PointsFile),
}

impl Input {
    fn load(path: &Path) -> Result<Input> {
        let text = read(path)?;
        let second = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .nth(1)
            .unwrap_or("");
        if second.starts_with("matrix") {
            Ok(Input::Matrix(MatrixFile::parse(&text)?))
        } else {
            Ok(Input::Points(PointsFile::parse(&text)?))
        }
    }

    fn tower(&self) -> &FieldTower {
        match self {
            Input::Matrix(m) => &m.tower,
            Input::Points(p) => &p.tower,
        }
    }

    fn level(&self) -> Level {
        match self {
            Input::Matrix(m) => m.level,
            Input::Points(p) => p.level,
        }
    }

    /// The tower to use: --tower if given (its level must match the file's
    /// field size), otherwise the file header.
    fn resolve(&self, g: &Global) -> Result<FieldTower> {
        let Some((p, m, h)) = g.tower else {
            return Ok(self.tower().clone());
        };
        let t = make_tower(p, m, h)?;
        let want = self.tower().field(self.level()).size();
        if t.field(self.level()).size() != want {
            return usage(format!(
                "--tower {p},{m},{h} does not match the file's field of size {want} at level {}",
                self.level()
            ));
        }
        Ok(t)
    }

    fn rows(&self) -> Vec<Vec<u32>> {
        match self {
            Input::Matrix(m) => m.matrix.to_rows(),
            Input::Points(p) => p.points.iter().map(|x| x.coords().to_vec()).collect(),
        }
    }

    /// Point set over the file's level of `t`.
    fn system(&self, t: &FieldTower) -> Result<ProjSystem> {
        let f = t.field(self.level()).clone();
        Ok(match self {
            Input::Matrix(_) => code_to_system(&self.code(t)?)?,
            Input::Points(p) => ProjSystem::from_vectors(f, p.k, &self.rows())?,
        })
    }

    fn code(&self, t: &FieldTower) -> Result<LinearCode> {
        let f = t.field(self.level()).clone();
        Ok(match self {
            Input::Matrix(m) => LinearCode::new(f, Mat::from_rows(&self.rows(), m.matrix.cols()))?,
            Input::Points(_) => system_to_code(&self.system(t)?)?,
        })
    }
}

fn require_top(input: &Input) -> Result<()> {
    if input.level() != Level::Top {
        return usage("this check needs input over the top field (level=top)");
    }
    Ok(())
}

fn verdict_code(v: bool) -> u8 {
    if v {
        0
    } else {
        1
    }
}

fn finish_report(g: &Global, r: VerificationReport) -> Result<u8> {
    let r = r.with_seed(g.seed);
    report(g, &r.to_json())?;
    Ok(verdict_code(r.verdict))
}

fn verify(g: &Global, a: &VerifyArgs) -> Result<u8> {
    let caps = g.caps()?;
    let input = Input::load(&a.input)?;
    let t = input.resolve(g)?;
    if let Some(w) = &a.replay {
        return replay(g, a, &input, &t, w);
    }
    match a.kind {
        VerifyKind::Sbs => finish_report(g, is_sbs(&input.system(&t)?, &caps)?),
        VerifyKind::OuterSbs => {
            require_top(&input)?;
            finish_report(g, is_outer_sbs(&t, &input.system(&t)?, &caps)?)
        }
        VerifyKind::Minimal => {
            let e = match a.engine {
                Engine::Pairwise => MinimalityEngine::Pairwise,
                Engine::Geometric => MinimalityEngine::Geometric,
            };
            finish_report(g, code_is_minimal(&input.code(&t)?, e, &caps)?)
        }
        VerifyKind::OuterMinimal => {
            require_top(&input)?;
            finish_report(g, code_is_outer_minimal(&t, &input.code(&t)?, &caps)?)
        }
        VerifyKind::Avoidance => {
            require_top(&input)?;
            let p = input.system(&t)?;
            let u = reduced(&t, &p)?;
            finish_report(g, avoidance_property(&u, &caps)?)
        }
        VerifyKind::Subline => {
            require_top(&input)?;
            let started = Instant::now();
            let p = input.system(&t)?;
            let four: [_; 4] = p
                .points()
                .to_vec()
                .try_into()
                .map_err(|_| CliError::Usage(format!("subline check needs exactly 4 points, got {}", p.len())))?;
            let d = on_any_proper_subline(&t, &four, a.absolute)?;
            let v = json!({
                "check": "subline",
                "verdict": d.is_none(),
                "engine": if a.absolute { "frame-ratio-absolute" } else { "frame-ratio" },
                "subfield_degree": d,
                "elapsed_ms": started.elapsed().as_millis() as u64,
                "seed": g.seed,
            });
            report(g, &serde_json::to_string_pretty(&v)?)?;
            Ok(verdict_code(d.is_none()))
        }
        VerifyKind::Hermitian => {
            require_top(&input)?;
            let started = Instant::now();
            let p = input.system(&t)?;
            let scan = hermitian_rank2_containment(&t, p.points(), caps.enumeration)?;
            let m = |s: &Option<blockset_core::verify::HermitianSpec>| s.as_ref().map(|s| s.matrix.to_rows());
            let ok = scan.rank2.is_none();
            let v = json!({
                "check": "hermitian",
                "verdict": ok,
                "engine": "hermitian-scan",
                "rank1": m(&scan.rank1),
                "rank2": m(&scan.rank2),
                "elapsed_ms": started.elapsed().as_millis() as u64,
                "seed": g.seed,
            });
            report(g, &serde_json::to_string_pretty(&v)?)?;
            Ok(verdict_code(ok))
        }
        VerifyKind::Saturating => {
            let p = input.system(&t)?;
            let rho = a.rho.unwrap_or(p.k().saturating_sub(2));
            finish_report(g, is_saturating(&p, rho, !a.no_minimality, &caps)?)
        }
    }
}

fn reduced(t: &FieldTower, p: &ProjSystem) -> Result<SubspaceCollection> {
    Ok(SubspaceCollection::new(
        t.base().clone(),
        p.points().iter().map(|x| field_reduce_point(t, x)).collect(),
    )?)
}

fn load_witness(path: &Path) -> Result<Witness> {
    let text = read(path)?;
    if let Ok(r) = serde_json::from_str::<VerificationReport>(&text) {
        return r
            .witness
            .ok_or_else(|| CliError::Usage("the report has no witness to replay".into()));
    }
    Ok(serde_json::from_str::<Witness>(&text)?)
}

/// Exit 1 when the witness reproduces the failure, 2 when it does not.
fn replay(g: &Global, a: &VerifyArgs, input: &Input, t: &FieldTower, path: &Path) -> Result<u8> {
    let w = load_witness(path)?;
    let caps = g.caps()?;
    let reproduced = match (a.kind, &w) {
        (VerifyKind::Sbs, Witness::Hyperplane { dual, .. }) => replay_hyperplane(&input.system(t)?, dual),
        (VerifyKind::Minimal, Witness::Hyperplane { dual, .. }) => replay_hyperplane(&input.system(t)?, dual),
        (
            VerifyKind::Minimal,
            Witness::CodewordPair {
                message, other_message, ..
            },
        ) => replay_pair(&input.code(t)?, message, other_message),
        (VerifyKind::OuterSbs, Witness::Hyperplane { dual, .. }) => {
            replay_hyperplane(&field_reduce_system(t, &input.system(t)?)?, dual)
        }
        (VerifyKind::OuterMinimal, Witness::Hyperplane { dual, .. }) => {
            replay_hyperplane(&field_reduce_system(t, &input.system(t)?)?, dual)
        }
        (
            VerifyKind::OuterMinimal,
            Witness::CodewordPair {
                message, other_message, ..
            },
        ) => {
            let c = input.code(t)?;
            if message.len() == c.k() {
                replay_outer_pair(t, &c, message, other_message)
            } else {
                replay_pair(&field_reduce_code(t, &c)?, message, other_message)
            }
        }
        (VerifyKind::Avoidance, Witness::Codim2 { basis, .. }) => {
            let u = reduced(t, &input.system(t)?)?;
            let cols = u.k();
            let l = Subspace::row_space(t.base(), &Mat::from_rows(basis, cols));
            l.dim() + 2 == cols && violates_avoidance(t.base(), &l, u.members())
        }
        (VerifyKind::Saturating, Witness::UncoveredPoint { point, rho, .. }) => {
            replay_uncovered(&input.system(t)?, *rho, point)
        }
        (VerifyKind::Saturating, Witness::SmallerRho { rho }) => {
            let p = input.system(t)?;
            first_uncovered(p.field(), p.k(), p.points(), *rho, caps.subsets)?.is_none()
        }
        _ => return usage("this witness kind does not belong to this check"),
    };
    let v = json!({ "replayed": reproduced, "verdict": !reproduced, "witness": w, "seed": g.seed });
    report(g, &serde_json::to_string_pretty(&v)?)?;
    if reproduced {
        Ok(1)
    } else {
        usage("the witness does not reproduce a failure")
    }
}

fn tower_arg(g: &Global) -> Result<FieldTower> {
    match g.tower {
        Some((p, m, h)) => Ok(make_tower(p, m, h)?),
        None => usage("--tower p,m,h is required"),
    }
}

/// Writes points and the certificate. The certificate goes to stdout when
/// the points go to a file.
fn emit_construction(g: &Global, out: Option<&Path>, points: &PointsFile, cert: &str, ok: bool) -> Result<u8> {
    emit(out, &points.to_text())?;
    if out.is_some() {
        say(&format!("{cert}\n"));
    }
    if let Some(p) = &g.json {
        write(p, &format!("{cert}\n"))?;
    }
    Ok(verdict_code(ok))
}

fn construct(g: &Global, c: &Construct) -> Result<u8> {
    let caps = g.caps()?;
    match c {
        Construct::Tetrahedron { k, q, out, verify } => {
            let t = FieldTower::flat(*q)?;
            let p = tetrahedron(*k, t.base())?;
            let cert = Certificate::sbs("tetrahedron", &p, *verify, &caps)?;
            let pf = PointsFile::from_system(&t, Level::Base, &p);
            emit_construction(
                g,
                out.as_deref(),
                &pf,
                &cert.to_json(),
                cert.status != CertStatus::Failed,
            )
        }
        Construct::Rnt { kk, out, verify } => {
            let t = tower_arg(g)?;
            let s = diverted_tangent_set(*kk, t.top(), *verify, &caps)?;
            let pf = PointsFile::from_system(&t, Level::Top, &s.union);
            let ok = s.certificate.status != CertStatus::Failed;
            emit_construction(g, out.as_deref(), &pf, &s.certificate.to_json(), ok)
        }
        Construct::Fourpoint { kk, out, verify } => {
            let t = tower_arg(g)?;
            let s = diverted_tangent_set(*kk, t.top(), false, &caps)?;
            let x = four_point_selection(&t, &s.lines)?;
            let pf = PointsFile::from_system(&t, Level::Top, &x);
            let (cert, ok) = if *verify {
                let r = is_outer_sbs(&t, &x, &caps)?.with_seed(g.seed);
                (r.to_json(), r.verdict)
            } else {
                let v = json!({ "claim": "four-point-selection", "status": "unverified", "points": x.len() });
                (serde_json::to_string_pretty(&v)?, true)
            };
            emit_construction(g, out.as_deref(), &pf, &cert, ok)
        }
        Construct::Super { q, i, out, verify } => {
            let s = super_construction(*q, *i, *verify, &caps)?;
            let t = FieldTower::flat(*q)?;
            let pf = PointsFile::from_system(&t, Level::Base, &s.points);
            let ok = s.certificate.holds();
            emit_construction(g, out.as_deref(), &pf, &s.certificate.to_json(), ok)
        }
    }
}

fn reduce(g: &Global, a: &ReduceArgs) -> Result<u8> {
    let path = a.code.as_ref().or(a.points.as_ref()).expect("clap requires one");
    let input = Input::load(path)?;
    require_top(&input)?;
    let t = input.resolve(g)?;
    let text = match (&a.code, &input) {
        (Some(_), _) | (None, Input::Matrix(_)) => {
            let c = field_reduce_code(&t, &input.code(&t)?)?;
            MatrixFile::from_code(&t, Level::Base, &c).to_text()
        }
        (None, Input::Points(_)) => {
            let p = field_reduce_system(&t, &input.system(&t)?)?;
            PointsFile::from_system(&t, Level::Base, &p).to_text()
        }
    };
    emit(a.out.as_deref(), &text)?;
    Ok(0)
}

fn concat(g: &Global, a: &ConcatArgs) -> Result<u8> {
    let outer = MatrixFile::parse(&read(&a.outer)?)?;
    let t = Input::Matrix(outer.clone()).resolve(g)?;
    if outer.level != Level::Top {
        return usage("the outer code must be over the top field (level=top)");
    }
    let outer_code = LinearCode::new(t.top().clone(), outer.matrix.clone())?;
    let mut inners = Vec::new();
    for p in &a.inner {
        let m = MatrixFile::parse(&read(p)?)?;
        if m.level != Level::Base {
            return usage(format!(
                "{}: inner codes must be over the base field (level=base)",
                p.display()
            ));
        }
        inners.push(LinearCode::new(t.base().clone(), m.matrix)?);
    }
    if inners.len() == 1 {
        inners = vec![inners[0].clone(); outer_code.n()];
    }
    let c = concatenate(&t, &outer_code, &inners)?;
    emit(a.out.as_deref(), &MatrixFile::from_code(&t, Level::Base, &c).to_text())?;
    Ok(0)
}

fn bounds(b: &BoundsCmd) -> Result<u8> {
    let BoundsCmd::Table {
        k_range,
        q_list,
        h,
        out,
    } = b;
    if k_range.0 < 2 {
        return usage("k must be at least 2");
    }
    for &q in q_list {
        if blockset_core::gfield::prime_power(q).is_none() {
            return usage(format!("{q} is not a prime power"));
        }
    }
    let mut text = format!("{}\n", BoundsRow::HEADER);
    for &q in q_list {
        for k in k_range.0..=k_range.1 {
            text.push_str(&BoundsRow::new(k, q, *h)?.csv());
            text.push('\n');
        }
    }
    emit(out.as_deref(), &text)?;
    Ok(0)
}

fn reproduce(g: &Global, a: &ReproduceArgs) -> Result<u8> {
    let threads = g.threads.unwrap_or_else(rayon::current_num_threads);
    let Some(items) = repro::suite(&a.suite, g.seed, threads) else {
        return usage(format!(
            "unknown suite {:?}; expected one of {}",
            a.suite,
            repro::SUITES.join(", ")
        ));
    };
    for i in &items {
        say(&format!("{}\n", i.line()));
    }
    if let Some(p) = &g.json {
        write(p, &format!("{}\n", serde_json::to_string_pretty(&items)?))?;
    }
    Ok(verdict_code(items.iter().all(|i| i.pass)))
}

fn run(cli: &Cli) -> Result<u8> {
    if let Some(n) = cli.global.threads {
        if n == 0 {
            return usage("--threads must be positive");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let g = &cli.global;
    match &cli.command {
        Command::Construct(c) => construct(g, c),
        Command::Verify(a) => verify(g, a),
        Command::Reduce(a) => reduce(g, a),
        Command::Concat(a) => concat(g, a),
        Command::Bounds(b) => bounds(b),
        Command::Reproduce(a) => reproduce(g, a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("{}", json!({ "error": e.to_string() }));
            ExitCode::from(2)
        }
    }
}
