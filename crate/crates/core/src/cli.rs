//! The `clopen` command line.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use crate::colorings::{
    first_letter_coloring, parity_coloring, predicate_coloring, return_parity_coloring, search_coloring, t_coloring,
    three_coloring_beta, verify_coloring, verify_edges, ClopenColoring, Coloring, Verdict,
};
use crate::dynamics::{fibonacci_phi, QuadraticReal, Radix};
use crate::families::{ka_core, odd_cycle, parse_family, t_edges, FamilyError, FamilySpec, FiniteGraph, SymbolicGraph};
use crate::homs::{cycle_spectrum, hom_exists, quotient_hom_obstruction, spectrum_obstruction};
use crate::quotients::{decide_quotient, quotient, scan, Decision, LevelReport, ScanOptions};
use crate::report::{level_json, level_text, scan_json, to_json};
use crate::subshift::{
    cb_rank, complexity, expand_fib_forbidden, k0_forest, language, member, power_free_check, rank_forest,
    ForbiddenSet, LimitForest, SubshiftSpec,
};
use crate::words::{Alphabet, BiWord, Point};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const GRAMMAR: &str = "family specs: odd-cycle:p=N | gm | gdelta:delta=WORD | go-plus:d=RADIX[,zeta=SCHEDULE] | \
go-plus:sturmian=(p + q sqrt D)/s | graph-o:d=RADIX | t | k0 | rank-subshift:n=N | gp:d=RADIX,p=N | \
orbit:d=RADIX,S=SET | ka:A=LIST | triangle | periodic:w=DIGITS; families over omega accept cap=N; \
append :oriented for the oriented variant (e.g. go-plus:d=2,(3)^inf or gm:oriented)";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failure(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<FamilyError> for CliError {
    fn from(e: FamilyError) -> Self {
        CliError::Usage(format!("{e}\n{GRAMMAR}"))
    }
}

fn failure(e: impl ToString) -> CliError {
    CliError::Failure(e.to_string())
}

fn usage(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Dot,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

/// Flags shared by every subcommand.
#[derive(Args, Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Enumeration bound: checks reach the saturation bound of this level.
    #[arg(long, global = true, value_parser = positive)]
    pub bound: Option<usize>,
    /// Level budget for scans.
    #[arg(long, global = true, default_value_t = 4, value_parser = positive)]
    pub levels: usize,
    /// Omit timing fields so that reports are byte-identical across runs.
    #[arg(long, global = true)]
    pub no_timing: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { format: Format::Text, bound: None, levels: 4, no_timing: false }
    }
}

impl RunConfig {
    pub fn to_args(&self) -> Vec<String> {
        let mut v = vec![
            "--format".to_string(),
            self.format.to_possible_value().expect("no skipped variants").get_name().to_string(),
        ];
        if let Some(b) = self.bound {
            v.extend(["--bound".to_string(), b.to_string()]);
        }
        v.extend(["--levels".to_string(), self.levels.to_string()]);
        if self.no_timing {
            v.push("--no-timing".into());
        }
        v
    }

    /// Parses global flags alone.
    pub fn parse_args<I: IntoIterator<Item = String>>(args: I) -> Result<RunConfig, clap::Error> {
        #[derive(Parser)]
        struct Only {
            #[command(flatten)]
            config: RunConfig,
        }
        Only::try_parse_from(std::iter::once("clopen".to_string()).chain(args)).map(|o| o.config)
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "clopen",
    version,
    about = "Finite-level quotients, clopen colorings and subshifts of symbolic graph families"
)]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Inspect a family.
    #[command(subcommand)]
    Family(FamilyCmd),
    /// Print the level-n quotient.
    Quotient(LevelArgs),
    /// Decide bipartiteness of the level-n quotient.
    Decide(DecideArgs),
    /// Decide levels 1..=--levels, stopping at the first bipartite one.
    Scan(ScanArgs),
    /// Build, search and verify colorings.
    #[command(subcommand)]
    Color(ColorCmd),
    /// Subshift languages and membership.
    #[command(subcommand)]
    Subshift(SubshiftCmd),
    /// Cantor-Bendixson rank of a limit forest.
    #[command(subcommand)]
    Cb(CbCmd),
    /// Search for a homomorphism between finite graphs.
    Hom(HomArgs),
    /// Simple-cycle lengths of a finite graph.
    Spectrum(SpectrumArgs),
    /// Compare odd girths (and K_A core spectra) of two families.
    Obstruct(ObstructArgs),
}

#[derive(Args, Debug)]
struct FamilyArgs {
    #[arg(long)]
    family: String,
    /// Letter cap for families over omega.
    #[arg(long)]
    cap: Option<usize>,
}

impl FamilyArgs {
    fn build(&self) -> Result<SymbolicGraph, CliError> {
        Ok(parse_family(&self.family, self.cap)?)
    }
}

#[derive(Subcommand, Debug)]
enum FamilyCmd {
    Show(FamilyArgs),
}

#[derive(Args, Debug)]
struct LevelArgs {
    #[command(flatten)]
    fam: FamilyArgs,
    #[arg(long, default_value_t = 1)]
    level: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ExpectVerdict {
    Bipartite,
    OddWalk,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ExpectFound {
    Found,
    Absent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ExpectObstruction {
    Obstruction,
    None,
}

#[derive(Args, Debug)]
struct DecideArgs {
    #[command(flatten)]
    lv: LevelArgs,
    /// Write the 2-coloring here when bipartite.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    expect: Option<ExpectVerdict>,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[command(flatten)]
    fam: FamilyArgs,
    #[arg(long, default_value_t = 5_000_000)]
    max_edges: usize,
    /// `odd-walk`: every scanned level; `bipartite`: some level.
    #[arg(long, value_enum)]
    expect: Option<ExpectVerdict>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BuildKind {
    /// Parity of the odometer orbit index below the first even digit.
    Parity,
    /// The first digit.
    FirstLetter,
    /// The 3-coloring of a dynamical family by block index and first letter.
    Beta3,
    /// Parity of the return time to the cylinder of --word.
    ReturnParity,
}

#[derive(Subcommand, Debug)]
enum ColorCmd {
    /// Build a named clopen coloring.
    Build {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long, value_enum)]
        kind: BuildKind,
        #[arg(long)]
        word: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for a proper k-coloring of the level-n quotient.
    Search {
        #[command(flatten)]
        lv: LevelArgs,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        expect: Option<ExpectFound>,
    },
    /// Verify a coloring file or a built-in predicate coloring.
    Verify {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long, conflicts_with = "predicate")]
        coloring: Option<PathBuf>,
        #[arg(long)]
        predicate: Option<String>,
    },
}

#[derive(Args, Debug)]
struct SourceArgs {
    /// Rotation number `(p + q sqrt D)/s` of a Sturmian subshift.
    #[arg(long)]
    sturmian: Option<String>,
    /// Base point of the Sturmian coding.
    #[arg(long, requires = "sturmian")]
    x: Option<String>,
    /// The Fibonacci subshift with forbidden words of index p.
    #[arg(long)]
    fib: Option<usize>,
    /// Comma-separated forbidden words.
    #[arg(long)]
    forbidden: Option<String>,
    /// Semicolon-separated two-sided points whose orbit closures are taken.
    #[arg(long)]
    points: Option<String>,
    #[arg(long, default_value_t = 2)]
    letters: usize,
}

impl SourceArgs {
    fn alphabet(&self) -> Alphabet {
        Alphabet::numerals(self.letters)
    }

    fn forbidden(&self) -> Result<Option<ForbiddenSet>, CliError> {
        if let Some(p) = self.fib {
            return Ok(Some(expand_fib_forbidden(p).map_err(usage)?));
        }
        let Some(list) = &self.forbidden else { return Ok(None) };
        let alpha = self.alphabet();
        let words = list
            .split(',')
            .map(str::trim)
            .filter(|w| !w.is_empty())
            .map(|w| alpha.parse_word(w).map_err(usage))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Some(ForbiddenSet::new(self.letters, words)))
    }

    fn spec(&self) -> Result<SubshiftSpec, CliError> {
        let given = [self.sturmian.is_some(), self.fib.is_some(), self.forbidden.is_some(), self.points.is_some()];
        if given.iter().filter(|&&b| b).count() != 1 {
            return Err(usage("give exactly one of --sturmian, --fib, --forbidden, --points"));
        }
        if let Some(r) = &self.sturmian {
            let r = QuadraticReal::parse(r).map_err(usage)?;
            let x = match &self.x {
                Some(x) => QuadraticReal::parse(x).map_err(usage)?,
                None => QuadraticReal::integer(0),
            };
            return Ok(SubshiftSpec::Sturmian { r, x });
        }
        if let Some(points) = &self.points {
            let alpha = self.alphabet();
            let pts = points
                .split(';')
                .map(str::trim)
                .filter(|p| !p.is_empty())
                .map(|p| BiWord::parse(p, &alpha).map(Point::Two).map_err(usage))
                .collect::<Result<Vec<_>, _>>()?;
            return Ok(SubshiftSpec::Points(pts));
        }
        Ok(SubshiftSpec::Forbidden(self.forbidden()?.expect("one source given")))
    }
}

#[derive(Subcommand, Debug)]
enum SubshiftCmd {
    /// Whether a two-sided point avoids the forbidden words.
    Member {
        #[arg(long)]
        point: String,
        #[command(flatten)]
        src: SourceArgs,
        #[arg(long)]
        expect: Option<bool>,
    },
    /// The words of length n.
    Lang {
        #[command(flatten)]
        src: SourceArgs,
        #[arg(long)]
        n: usize,
    },
    /// Factor complexity for n = 1..=nmax.
    Complexity {
        #[command(flatten)]
        src: SourceArgs,
        #[arg(long, default_value_t = 12)]
        nmax: usize,
    },
    /// Whether a word contains a k-th power.
    Powerfree {
        #[arg(long, conflicts_with = "phi")]
        word: Option<String>,
        /// Use the prefix of this length of the Fibonacci limit word.
        #[arg(long)]
        phi: Option<usize>,
        #[arg(long, default_value_t = 4)]
        k: usize,
    },
}

#[derive(Subcommand, Debug)]
enum CbCmd {
    Rank {
        #[arg(long, conflicts_with = "builtin")]
        forest: Option<PathBuf>,
        /// `k0` or `rank:N`.
        #[arg(long)]
        builtin: Option<String>,
        #[arg(long, default_value_t = 40)]
        resolution: usize,
        #[arg(long)]
        expect_rank: Option<usize>,
    },
}

#[derive(Args, Debug)]
struct HomArgs {
    /// Graph source: a file, `cycle:N`, `odd-cycle:p`, `ka-core:A=LIST` or `quotient:N:SPEC`.
    #[arg(long)]
    from: String,
    #[arg(long)]
    to: String,
    #[arg(long)]
    injective: bool,
    #[arg(long, value_enum)]
    expect: Option<ExpectFound>,
}

#[derive(Args, Debug)]
struct SpectrumArgs {
    #[arg(long)]
    graph: String,
    #[arg(long, default_value_t = 64)]
    max_len: usize,
}

#[derive(Args, Debug)]
struct ObstructArgs {
    #[arg(long)]
    g1: String,
    #[arg(long)]
    g2: String,
    #[arg(long, default_value_t = 2)]
    level: usize,
    #[arg(long)]
    cap: Option<usize>,
    #[arg(long, default_value_t = 64)]
    max_len: usize,
    #[arg(long, value_enum)]
    expect: Option<ExpectObstruction>,
}

/// Runs the CLI on `argv` (program name first) against stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_USAGE;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    let mut buf = String::new();
    let result = dispatch(&cli, &mut buf);
    let _ = out.write_all(buf.as_bytes());
    match result {
        Ok(code) => code,
        Err(CliError::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_MISMATCH
        }
    }
}

fn status(ok: bool) -> i32 {
    if ok {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    }
}

fn no_dot(cfg: &RunConfig) -> Result<(), CliError> {
    if cfg.format == Format::Dot {
        return Err(usage("--format dot is only available for quotient, decide and spectrum"));
    }
    Ok(())
}

fn dispatch(cli: &Cli, out: &mut String) -> Result<i32, CliError> {
    let cfg = &cli.config;
    match &cli.cmd {
        Cmd::Family(FamilyCmd::Show(f)) => family_show(cfg, f, out),
        Cmd::Quotient(a) => quotient_cmd(cfg, a, out),
        Cmd::Decide(a) => decide_cmd(cfg, a, out),
        Cmd::Scan(a) => scan_cmd(cfg, a, out),
        Cmd::Color(c) => color_cmd(cfg, c, out),
        Cmd::Subshift(c) => subshift_cmd(cfg, c, out),
        Cmd::Cb(CbCmd::Rank { forest, builtin, resolution, expect_rank }) => {
            cb_cmd(cfg, forest.as_ref(), builtin.as_deref(), *resolution, *expect_rank, out)
        }
        Cmd::Hom(a) => hom_cmd(cfg, a, out),
        Cmd::Spectrum(a) => spectrum_cmd(cfg, a, out),
        Cmd::Obstruct(a) => obstruct_cmd(cfg, a, out),
    }
}

fn family_show(cfg: &RunConfig, f: &FamilyArgs, out: &mut String) -> Result<i32, CliError> {
    no_dot(cfg)?;
    let g = f.build()?;
    let n = cfg.bound.unwrap_or(cfg.levels);
    let b = g.saturation(n);
    let edges = g.edges(b);
    let saturations: Vec<String> = (1..=n).map(|m| g.saturation(m).to_string()).collect();
    let sample: Vec<String> =
        edges.iter().take(10).map(|e| format!("{} -> {}", g.display_point(&e.from), g.display_point(&e.to))).collect();
    if cfg.format == Format::Json {
        out.push_str(&to_json(&json!({
            "family": g.spec,
            "alphabet": g.alphabet.tokens(),
            "directed": g.directed,
            "twoSided": g.two_sided,
            "compact": g.compact,
            "pointSet": g.point_set,
            "letterCap": g.letter_cap,
            "saturation": saturations,
            "edgeCount": edges.len(),
            "sampleEdges": sample,
        })));
        return Ok(EXIT_OK);
    }
    let _ = writeln!(out, "family: {}", g.spec);
    let _ = writeln!(out, "alphabet: {}", g.alphabet.tokens().join(" "));
    let _ = writeln!(out, "points: {}", g.point_set);
    let _ = writeln!(out, "directed: {}, two-sided: {}, compact: {}", g.directed, g.two_sided, g.compact);
    if let Some(c) = g.letter_cap {
        let _ = writeln!(out, "letter cap: {c}");
    }
    let _ = writeln!(out, "saturation bounds for levels 1..={n}: {}", saturations.join(", "));
    let _ = writeln!(out, "generated edges below B({n}) = {b}: {}", edges.len());
    for s in sample {
        let _ = writeln!(out, "  {s}");
    }
    Ok(EXIT_OK)
}

fn quotient_cmd(cfg: &RunConfig, a: &LevelArgs, out: &mut String) -> Result<i32, CliError> {
    let g = a.fam.build()?;
    let q = quotient(&g, a.level);
    match cfg.format {
        Format::Dot => out.push_str(&q.to_dot()),
        Format::Json => {
            let edges: Vec<[String; 2]> = q.edges.iter().map(|&(u, v)| [q.label(u), q.label(v)]).collect();
            out.push_str(&to_json(&json!({
                "family": q.family,
                "level": q.level,
                "directed": q.directed,
                "vertices": (0..q.len()).map(|v| q.label(v)).collect::<Vec<_>>(),
                "edges": edges,
                "edgeCount": q.edge_count(),
            })));
        }
        Format::Text => {
            let _ = writeln!(out, "{} level {}: {} vertices, {} edges", q.family, q.level, q.len(), q.edge_count());
            let arrow = if q.directed { "->" } else { "--" };
            for &(u, v) in &q.edges {
                let _ = writeln!(out, "  {} {arrow} {}", q.label(u), q.label(v));
            }
        }
    }
    Ok(EXIT_OK)
}

fn expect_matches(expect: Option<ExpectVerdict>, d: &Decision) -> bool {
    match expect {
        None => true,
        Some(ExpectVerdict::OddWalk) => d.is_odd_walk(),
        Some(ExpectVerdict::Bipartite) => !d.is_odd_walk(),
    }
}

fn decide_cmd(cfg: &RunConfig, a: &DecideArgs, out: &mut String) -> Result<i32, CliError> {
    let g = a.lv.fam.build()?;
    let t0 = Instant::now();
    let q = quotient(&g, a.lv.level);
    let decision = decide_quotient(&q);
    let l = LevelReport {
        level: a.lv.level,
        odd_girth: match &decision {
            Decision::OddWalk(w) => Some(w.len()),
            Decision::Bipartite(_) => None,
        },
        decision,
        vertex_count: q.len(),
        edge_count: q.edge_count(),
        millis: t0.elapsed().as_millis(),
    };
    if let (Some(path), Decision::Bipartite(c)) = (&a.out, &l.decision) {
        std::fs::write(path, c.to_text(&g.alphabet))?;
    }
    match cfg.format {
        Format::Dot => out.push_str(&q.to_dot()),
        Format::Json => out.push_str(&to_json(&level_json(&g.spec, &g.alphabet, &l, !cfg.no_timing))),
        Format::Text => {
            let _ = writeln!(out, "{}", g.spec);
            let _ = writeln!(out, "{}", level_text(&g.alphabet, &l, !cfg.no_timing));
            if let Decision::Bipartite(c) = &l.decision {
                match &a.out {
                    Some(p) => {
                        let _ = writeln!(out, "coloring written to {}", p.display());
                    }
                    None => out.push_str(&c.to_text(&g.alphabet)),
                }
            }
        }
    }
    Ok(status(expect_matches(a.expect, &l.decision)))
}

/// The predicate coloring of `𝕋` swept over every clause with `k, j ≤ 10`.
fn t_gap() -> Result<String, CliError> {
    let edges = t_edges(10);
    let v = verify_edges(&edges, &t_coloring(), 0).map_err(failure)?;
    Ok(match v.verdict {
        Verdict::Proper => format!(
            "compactness gap: the non-clopen t-coloring is proper on all {} generated edges with k, j <= 10, \
             so chi_c <= 2 fails only for clopen colorings while every scanned level has an odd closed walk",
            v.edges_checked
        ),
        Verdict::Violation { .. } => "compactness gap check FAILED: t-coloring violated".to_string(),
    })
}

fn scan_cmd(cfg: &RunConfig, a: &ScanArgs, out: &mut String) -> Result<i32, CliError> {
    no_dot(cfg)?;
    let g = a.fam.build()?;
    let r = scan(&g, cfg.levels, ScanOptions { max_edges: a.max_edges, start: 1 });
    let is_t = FamilySpec::parse(&a.fam.family).is_ok_and(|f| f.name == "t");
    let gap = if is_t { Some(t_gap()?) } else { None };
    match cfg.format {
        Format::Json => {
            let mut j = scan_json(&r, &g.alphabet, !cfg.no_timing);
            j.compactness_gap = gap;
            out.push_str(&to_json(&j));
        }
        _ => {
            let _ = writeln!(out, "scan {} levels 1..={}", g.spec, cfg.levels);
            for l in &r.levels {
                let _ = writeln!(out, "{}", level_text(&g.alphabet, l, !cfg.no_timing));
            }
            let _ = writeln!(out, "{}", r.headline());
            if let Some(gap) = gap {
                let _ = writeln!(out, "{gap}");
            }
        }
    }
    let ok = match a.expect {
        None => true,
        Some(ExpectVerdict::OddWalk) => r.first_bipartite().is_none() && !r.partial,
        Some(ExpectVerdict::Bipartite) => r.first_bipartite().is_some(),
    };
    Ok(status(ok))
}

fn radix_of(spec: &str) -> Result<Radix, CliError> {
    let f = FamilySpec::parse(spec)?;
    let d = f.get("d").ok_or_else(|| usage(format!("`{spec}` has no radix parameter d=")))?;
    Radix::parse(d).map_err(usage)
}

fn color_cmd(cfg: &RunConfig, c: &ColorCmd, out: &mut String) -> Result<i32, CliError> {
    no_dot(cfg)?;
    match c {
        ColorCmd::Build { fam, kind, word, out: path } => {
            let g = fam.build()?;
            let mut col: ClopenColoring = match kind {
                BuildKind::Parity => parity_coloring(&radix_of(&fam.family)?).map_err(usage)?,
                BuildKind::FirstLetter => first_letter_coloring(&radix_of(&fam.family)?),
                BuildKind::Beta3 => three_coloring_beta(&g).map_err(usage)?,
                BuildKind::ReturnParity => {
                    let w = word.as_ref().ok_or_else(|| usage("--kind return-parity needs --word"))?;
                    let w = g.alphabet.parse_word(w).map_err(usage)?;
                    return_parity_coloring(&radix_of(&fam.family)?, &w).map_err(usage)?
                }
            };
            col.family = fam.family.clone();
            write_coloring(cfg, &g, &col, path.as_ref(), out)?;
            Ok(EXIT_OK)
        }
        ColorCmd::Search { lv, k, out: path, expect } => {
            let g = lv.fam.build()?;
            let q = quotient(&g, lv.level);
            let found = search_coloring(&q, *k).map_err(failure)?;
            match &found {
                Some(col) => {
                    let mut col = col.clone();
                    col.family = lv.fam.family.clone();
                    write_coloring(cfg, &g, &col, path.as_ref(), out)?;
                }
                None if cfg.format == Format::Json => out.push_str(&to_json(&json!({
                    "family": g.spec, "level": lv.level, "colors": k, "found": false,
                }))),
                None => {
                    let _ = writeln!(out, "no proper {k}-coloring of the level-{} quotient of {}", lv.level, g.spec);
                }
            }
            let ok = match expect {
                None => true,
                Some(ExpectFound::Found) => found.is_some(),
                Some(ExpectFound::Absent) => found.is_none(),
            };
            Ok(status(ok))
        }
        ColorCmd::Verify { fam, coloring, predicate } => {
            let g = fam.build()?;
            let col = match (coloring, predicate) {
                (Some(path), _) => {
                    let text = std::fs::read_to_string(path)?;
                    Coloring::Clopen(ClopenColoring::parse(&text, &g.alphabet, g.two_sided).map_err(usage)?)
                }
                (None, Some(name)) => Coloring::Predicate(predicate_coloring(name).map_err(usage)?),
                (None, None) => return Err(usage("give --coloring FILE or --predicate NAME")),
            };
            let n = cfg.bound.unwrap_or(match &col {
                Coloring::Clopen(c) => c.level.max(1),
                Coloring::Predicate(_) => cfg.levels,
            });
            let v = verify_coloring(&g, &col, n).map_err(failure)?;
            let scope = if v.complete {
                format!("complete check on the level-{} quotient", v.level)
            } else {
                format!("generated edges below B({n}) only; not a proof for the whole graph")
            };
            match (&v.verdict, cfg.format) {
                (Verdict::Proper, Format::Json) => out.push_str(&to_json(&json!({
                    "family": g.spec, "verdict": "Proper", "complete": v.complete, "edgesChecked": v.edges_checked,
                }))),
                (Verdict::Violation { edge, colors }, Format::Json) => out.push_str(&to_json(&json!({
                    "family": g.spec, "verdict": "Violation", "complete": v.complete, "edgesChecked": v.edges_checked,
                    "edge": [g.display_point(&edge.from), g.display_point(&edge.to)], "colors": [colors.0, colors.1],
                }))),
                (Verdict::Proper, _) => {
                    let _ = writeln!(out, "Proper: {} edges checked ({scope})", v.edges_checked);
                }
                (Verdict::Violation { edge, colors }, _) => {
                    let _ = writeln!(
                        out,
                        "Violation: {} and {} both get color {} ({scope})",
                        g.display_point(&edge.from),
                        g.display_point(&edge.to),
                        colors.0
                    );
                }
            }
            Ok(status(v.is_proper()))
        }
    }
}

fn write_coloring(
    cfg: &RunConfig,
    g: &SymbolicGraph,
    col: &ClopenColoring,
    path: Option<&PathBuf>,
    out: &mut String,
) -> Result<(), CliError> {
    let text = col.to_text(&g.alphabet);
    if let Some(p) = path {
        std::fs::write(p, &text)?;
    }
    if cfg.format == Format::Json {
        let map: std::collections::BTreeMap<String, u8> =
            col.map.iter().map(|(p, &c)| (p.display(&g.alphabet), c)).collect();
        out.push_str(&to_json(&json!({
            "family": col.family, "level": col.level, "colors": col.colors, "coloring": map, "default": col.default,
        })));
    } else if let Some(p) = path {
        let _ = writeln!(out, "level-{} {}-coloring written to {}", col.level, col.colors, p.display());
    } else {
        out.push_str(&text);
    }
    Ok(())
}

fn subshift_cmd(cfg: &RunConfig, c: &SubshiftCmd, out: &mut String) -> Result<i32, CliError> {
    no_dot(cfg)?;
    let json = cfg.format == Format::Json;
    match c {
        SubshiftCmd::Member { point, src, expect } => {
            let f = src.forbidden()?.ok_or_else(|| usage("member needs --fib or --forbidden"))?;
            let b = BiWord::parse(point, &src.alphabet()).map_err(usage)?;
            let m = member(&b, &f);
            if json {
                out.push_str(&to_json(&json!({ "point": point, "member": m })));
            } else {
                let _ = writeln!(out, "{m}");
            }
            Ok(status(expect.is_none_or(|e| e == m)))
        }
        SubshiftCmd::Lang { src, n } => {
            let lang = language(&src.spec()?, *n).map_err(failure)?;
            let alpha = src.alphabet();
            let words: Vec<String> = lang.words.iter().map(|w| alpha.format_word(w)).collect();
            if json {
                out.push_str(&to_json(&json!({
                    "n": n, "count": words.len(), "exact": lang.exact, "words": words,
                })));
            } else {
                let kind = if lang.exact { "exact" } else { "certified subset" };
                let _ = writeln!(out, "L_{n}: {} words ({kind})", words.len());
                for w in words {
                    let _ = writeln!(out, "  {w}");
                }
            }
            Ok(EXIT_OK)
        }
        SubshiftCmd::Complexity { src, nmax } => {
            let counts = complexity(&src.spec()?, *nmax).map_err(failure)?;
            if json {
                out.push_str(&to_json(&json!({ "nmax": nmax, "complexity": counts })));
            } else {
                let s: Vec<String> = counts.iter().map(usize::to_string).collect();
                let _ = writeln!(out, "complexity n=1..{nmax}: {}", s.join(","));
            }
            Ok(EXIT_OK)
        }
        SubshiftCmd::Powerfree { word, phi, k } => {
            if *k < 2 {
                return Err(usage("--k must be at least 2"));
            }
            let alpha = Alphabet::numerals(2);
            let w = match (word, phi) {
                (Some(w), _) => alpha.parse_word(w).map_err(usage)?,
                (None, Some(n)) => fibonacci_phi(*n),
                (None, None) => return Err(usage("give --word or --phi")),
            };
            let r = power_free_check(&w, *k);
            match (&r, json) {
                (Ok(()), true) => out.push_str(&to_json(&json!({ "length": w.len(), "k": k, "powerFree": true }))),
                (Err(v), true) => out.push_str(&to_json(&json!({
                    "length": w.len(), "k": k, "powerFree": false, "position": v.position, "root": alpha.format_word(&v.root),
                }))),
                (Ok(()), false) => {
                    let _ = writeln!(out, "ok: no {k}-th power in the word of length {}", w.len());
                }
                (Err(v), false) => {
                    let _ = writeln!(out, "violation: ({})^{k} at position {}", alpha.format_word(&v.root), v.position);
                }
            }
            Ok(status(r.is_ok()))
        }
    }
}

fn cb_cmd(
    cfg: &RunConfig,
    forest: Option<&PathBuf>,
    builtin: Option<&str>,
    resolution: usize,
    expect_rank: Option<usize>,
    out: &mut String,
) -> Result<i32, CliError> {
    no_dot(cfg)?;
    let f: LimitForest = match (forest, builtin) {
        (Some(p), _) => LimitForest::parse(&std::fs::read_to_string(p)?).map_err(usage)?,
        (None, Some("k0")) => k0_forest(),
        (None, Some(b)) => match b.strip_prefix("rank:").and_then(|n| n.parse::<usize>().ok()) {
            Some(n) if n <= 4 => rank_forest(n, 4096),
            _ => return Err(usage(format!("unknown built-in forest `{b}`; expected k0 or rank:N with N <= 4"))),
        },
        (None, None) => return Err(usage("give --forest FILE or --builtin k0|rank:N")),
    };
    let r = cb_rank(&f, resolution);
    if cfg.format == Format::Json {
        let links: Vec<_> = r
            .links
            .iter()
            .map(|l| json!({ "child": l.child, "parent": l.parent, "passed": l.passed, "shift": l.shift }))
            .collect();
        let iso: Vec<_> =
            r.isolation.iter().map(|c| json!({ "node": c.node, "passed": c.passed, "radius": c.radius })).collect();
        out.push_str(&to_json(&json!({
            "rank": r.rank, "resolution": r.resolution, "verified": r.verified(), "links": links, "isolation": iso,
        })));
    } else {
        let _ = writeln!(out, "{}", r.summary());
        for l in &r.links {
            let shift = l.shift.map_or("-".to_string(), |s| s.to_string());
            let _ = writeln!(out, "  link {} -> {}: {} (shift {shift})", l.child, l.parent, pass(l.passed));
        }
        for c in &r.isolation {
            let radius = c.radius.map_or("-".to_string(), |s| s.to_string());
            let _ = writeln!(out, "  isolation of {}: {} (radius {radius})", c.node, pass(c.passed));
        }
    }
    Ok(status(r.verified() && expect_rank.is_none_or(|e| e == r.rank)))
}

fn pass(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAILED"
    }
}

fn cycle(n: usize) -> FiniteGraph {
    let mut g = FiniteGraph::new(n, false);
    for i in 0..n {
        g.add_edge(i, (i + 1) % n);
    }
    g
}

fn parse_set(s: &str) -> Result<BTreeSet<usize>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| usage(format!("bad integer `{t}`"))))
        .collect()
}

/// A file path, `cycle:N`, `odd-cycle:p`, `ka-core:A=LIST` or `quotient:N:SPEC`.
pub fn graph_source(s: &str) -> Result<FiniteGraph, CliError> {
    if let Some(n) = s.strip_prefix("cycle:") {
        let n: usize = n.parse().map_err(|_| usage(format!("bad cycle length `{n}`")))?;
        if n < 3 {
            return Err(usage("cycles need at least 3 vertices"));
        }
        return Ok(cycle(n));
    }
    if let Some(p) = s.strip_prefix("odd-cycle:") {
        let p = p.trim_start_matches("p=");
        return Ok(odd_cycle(p.parse().map_err(|_| usage(format!("bad p `{p}`")))?));
    }
    if let Some(a) = s.strip_prefix("ka-core:") {
        return Ok(ka_core(&parse_set(a.trim_start_matches("A="))?)?);
    }
    if let Some(rest) = s.strip_prefix("quotient:") {
        let (n, spec) = rest.split_once(':').ok_or_else(|| usage("expected quotient:N:SPEC"))?;
        let n: usize = n.parse().map_err(|_| usage(format!("bad level `{n}`")))?;
        return Ok(quotient(&parse_family(spec, None)?, n).to_finite());
    }
    let text = std::fs::read_to_string(s).map_err(|e| usage(format!("cannot read graph `{s}`: {e}")))?;
    FiniteGraph::parse(&text).map_err(usage)
}

fn hom_cmd(cfg: &RunConfig, a: &HomArgs, out: &mut String) -> Result<i32, CliError> {
    no_dot(cfg)?;
    let (g, h) = (graph_source(&a.from)?, graph_source(&a.to)?);
    let w = hom_exists(&g, &h, a.injective).map_err(failure)?;
    let kind = if a.injective { "injective homomorphism" } else { "homomorphism" };
    if cfg.format == Format::Json {
        let map = w.as_ref().map(|w| {
            w.map.iter().enumerate().map(|(u, &v)| (g.labels[u].clone(), h.labels[v].clone())).collect::<Vec<_>>()
        });
        out.push_str(&to_json(&json!({
            "from": a.from, "to": a.to, "injective": a.injective, "found": w.is_some(), "map": map,
        })));
    } else {
        match &w {
            Some(w) => {
                let pairs: Vec<String> =
                    w.map.iter().enumerate().map(|(u, &v)| format!("{}->{}", g.labels[u], h.labels[v])).collect();
                let _ = writeln!(out, "{kind} found: {}", pairs.join(" "));
            }
            None => {
                let _ = writeln!(out, "no {kind} {} -> {} (exhaustive search)", a.from, a.to);
            }
        }
    }
    let ok = match a.expect {
        None => true,
        Some(ExpectFound::Found) => w.is_some(),
        Some(ExpectFound::Absent) => w.is_none(),
    };
    Ok(status(ok))
}

fn spectrum_cmd(cfg: &RunConfig, a: &SpectrumArgs, out: &mut String) -> Result<i32, CliError> {
    let g = graph_source(&a.graph)?;
    if cfg.format == Format::Dot {
        out.push_str(&g.to_dot(&a.graph));
        return Ok(EXIT_OK);
    }
    let s = cycle_spectrum(&g, a.max_len).map_err(usage)?;
    if cfg.format == Format::Json {
        out.push_str(&to_json(&json!({ "graph": a.graph, "maxLen": a.max_len, "lengths": s })));
    } else {
        let v: Vec<String> = s.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "simple cycle lengths <= {}: {{{}}}", a.max_len, v.join(", "));
    }
    Ok(EXIT_OK)
}

fn ka_set(spec: &str) -> Option<BTreeSet<usize>> {
    let f = FamilySpec::parse(spec).ok()?;
    if f.name != "ka" || f.oriented {
        return None;
    }
    match f.get("A") {
        None => Some(BTreeSet::new()),
        Some(a) => parse_set(a).ok(),
    }
}

fn obstruct_cmd(cfg: &RunConfig, a: &ObstructArgs, out: &mut String) -> Result<i32, CliError> {
    no_dot(cfg)?;
    let g1 = parse_family(&a.g1, a.cap)?;
    let g2 = parse_family(&a.g2, a.cap)?;
    let r = quotient_hom_obstruction(&g1, &g2, a.level);
    let mut missing = None;
    if let (Some(s1), Some(s2)) = (ka_set(&a.g1), ka_set(&a.g2)) {
        missing = Some(spectrum_obstruction(&ka_core(&s1)?, &ka_core(&s2)?, a.max_len).map_err(failure)?);
    }
    let spectral = missing.as_ref().is_some_and(|m| !m.is_empty());
    let obstructed = r.obstructed || spectral;
    let walk = |w: &Option<crate::quotients::WalkWitness>, g: &SymbolicGraph| {
        w.as_ref().map(|w| w.vertices.iter().map(|p| g.display_prefix(p)).collect::<Vec<_>>())
    };
    if cfg.format == Format::Json {
        out.push_str(&to_json(&json!({
            "g1": a.g1, "g2": a.g2, "level": a.level,
            "oddGirth1": r.girth1, "oddGirth2": r.girth2,
            "witness1": walk(&r.witness1, &g1), "witness2": walk(&r.witness2, &g2),
            "girthObstruction": r.obstructed,
            "spectrumMissing": missing,
            "obstructed": obstructed,
        })));
    } else {
        let _ = writeln!(out, "{}", r.message(&a.g1, &a.g2));
        for (name, w, g) in [(&a.g1, &r.witness1, &g1), (&a.g2, &r.witness2, &g2)] {
            if let Some(w) = w {
                let _ = writeln!(out, "  {name}: {}", w.display(&g.alphabet));
            }
        }
        if let Some(m) = &missing {
            if m.is_empty() {
                let _ = writeln!(out, "core cycle spectra: no length of {} missing from {}", a.g1, a.g2);
            } else {
                let v: Vec<String> = m.iter().map(usize::to_string).collect();
                let _ = writeln!(
                    out,
                    "spectrum obstruction: cycle lengths {{{}}} of the {} core are missing from the {} core; no injective reduction",
                    v.join(", "),
                    a.g1,
                    a.g2
                );
            }
        }
    }
    let ok = match a.expect {
        None => true,
        Some(ExpectObstruction::Obstruction) => obstructed,
        Some(ExpectObstruction::None) => !obstructed,
    };
    Ok(status(ok))
}
