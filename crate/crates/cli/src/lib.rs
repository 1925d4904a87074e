//! Command-line front end for `polar-lines`.
//!
//! Every command writes JSON (or CSV for matrices) to the given writer;
//! searches stream one JSON object per result followed by a summary line.

pub mod files;
pub mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use files::{parse_lineset_file, LineSetFile};
use polar_lines::algebra::rational::matrix_to_strings;
use polar_lines::analysis::LineSet;
use polar_lines::constructions::{
    elliptic_ovoid, hexagon_lines, hyperplane_section_lines, m_ovoid_lift, pencil_union, plane_lines, point_pencil,
    section_through_elliptic_ovoid, symplectic_spread_lines, Example, HyperplaneSection, OvoidSet, PencilMode,
    SectionKind,
};
use polar_lines::lp::{delsarte_lp_bound, verify_certificate, LpInstance};
use polar_lines::polar::cache::{self, CACHE_DIR_ENV};
use polar_lines::polar::BuildOptions;
use polar_lines::scheme::verify_scheme;
use polar_lines::search::{
    disjoint_section_packing, enumerate_regular_sets, feasibility_probe, line_spread_search, regular_census, Catalog,
    SearchBudget,
};
use polar_lines::{Eigenspace, Error, Family, PolarSpace, Relation, Result, SchemeParams, SchemeTables};
use serde_json::{json, Value};
use std::io::Write;
use std::path::PathBuf;
use std::time::Duration;

pub const MAX_NODES_ENV: &str = "POLAR_LINES_MAX_NODES";
pub const MAX_SECONDS_ENV: &str = "POLAR_LINES_MAX_SECONDS";

#[derive(Parser, Debug)]
#[command(name = "polar-lines", version, about = "Regular sets of lines in rank-3 polar spaces")]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Seed for randomized verification.
    #[arg(long, global = true, default_value_t = 20240501)]
    pub seed: u64,
    /// Directory of cached spaces (overrides the environment).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build or describe a space.
    #[command(subcommand)]
    Space(SpaceCmd),
    /// Eigenmatrices and their verification.
    #[command(subcommand)]
    Scheme(SchemeCmd),
    /// Analyse line-set files.
    #[command(subcommand)]
    Set(SetCmd),
    /// Build a known example and print it as a line-set file.
    Construct(ConstructArgs),
    /// Linear programming bounds.
    #[command(subcommand)]
    Lp(LpCmd),
    /// Exhaustive and budgeted searches.
    #[command(subcommand)]
    Search(SearchCmd),
}

#[derive(Args, Debug, Clone)]
pub struct SpaceArg {
    /// Space tag such as `o6plus_q2`, `sp6_q3` or `u6_q4`.
    #[arg(long)]
    pub space: String,
}

#[derive(Subcommand, Debug)]
pub enum SpaceCmd {
    /// Enumerate and write the space to the cache directory.
    Build(SpaceArg),
    /// Counts and parameters.
    Info(SpaceArg),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum SchemeCmd {
    /// P and Q matrices for (q, e).
    Tables {
        #[arg(long)]
        q: u32,
        /// One of 0, 1/2, 1, 3/2, 2.
        #[arg(long)]
        e: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Check that a space realizes its tables.
    Verify {
        #[command(flatten)]
        space: SpaceArg,
        /// Random test vectors.
        #[arg(long, default_value_t = 3)]
        vectors: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum SetCmd {
    /// Distributions, support, regularity and profile of a line set.
    Eval {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long)]
        file: PathBuf,
        /// Also compare with the closed forms of this example.
        #[arg(long)]
        example: Option<ExampleName>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExampleName {
    Plane,
    Pencil,
    PerpAvoiding,
    QuadrangleSection,
    Rank3Section,
    PencilUnion,
    OvoidLift,
    Spread,
    Hexagon,
}

impl ExampleName {
    fn example(self) -> Option<Example> {
        Some(match self {
            ExampleName::Plane => Example::Plane,
            ExampleName::Pencil => Example::Pencil,
            ExampleName::PerpAvoiding => Example::PerpAvoiding,
            ExampleName::QuadrangleSection => Example::Quadrangle,
            ExampleName::Rank3Section => Example::SubRank3,
            ExampleName::Spread => Example::Spread,
            ExampleName::Hexagon => Example::Hexagon,
            ExampleName::PencilUnion | ExampleName::OvoidLift => return None,
        })
    }
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    pub name: ExampleName,
    #[command(flatten)]
    pub space: SpaceArg,
    /// Point or plane index for pencils and planes.
    #[arg(long, default_value_t = 0)]
    pub index: usize,
    /// Write the line-set file here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Store lines by basis rows rather than indices.
    #[arg(long)]
    pub bases: bool,
}

#[derive(Subcommand, Debug)]
pub enum LpCmd {
    /// Exact LP bound for sets avoiding the given relations.
    Bound {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        e: String,
        /// Comma-separated relations, e.g. `R11,R21`.
        #[arg(long, value_delimiter = ',')]
        forbid: Vec<String>,
    },
}

#[derive(Args, Debug, Clone, Default)]
pub struct BudgetArgs {
    /// Stop after this many search nodes (env POLAR_LINES_MAX_NODES).
    #[arg(long)]
    pub max_nodes: Option<u64>,
    /// Stop after this many seconds (env POLAR_LINES_MAX_SECONDS).
    #[arg(long)]
    pub max_seconds: Option<u64>,
    /// Stop after this many results.
    #[arg(long)]
    pub max_results: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SectionChoice {
    Quadrangle,
    Rank3,
}

#[derive(Subcommand, Debug)]
pub enum SearchCmd {
    /// All regular sets of one size in one eigenspace.
    Regular {
        #[command(flatten)]
        space: SpaceArg,
        /// Eigenspace label: 10, 11, 20 or 21.
        #[arg(long)]
        j: String,
        /// Number of lines.
        #[arg(long)]
        size: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// A set of given size with support inside the given eigenspaces.
    Probe {
        #[command(flatten)]
        space: SpaceArg,
        /// Comma-separated eigenspace labels, e.g. `10,20`.
        #[arg(long, value_delimiter = ',')]
        support: Vec<String>,
        /// Number of lines.
        #[arg(long)]
        size: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// A partition of the points (of a section) into lines.
    Spread {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long, value_enum)]
        section: Option<SectionChoice>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Largest family of line-disjoint quadrangle sections.
    Packing {
        #[command(flatten)]
        space: SpaceArg,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Every regular set of every admissible size, classified for O+(6, q).
    Census {
        #[command(flatten)]
        space: SpaceArg,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

/// Parses `family_qN`.
pub fn parse_space_tag(tag: &str) -> Result<(Family, u32)> {
    let (f, q) = tag
        .rsplit_once("_q")
        .ok_or_else(|| Error::InvalidInput(format!("space tag '{tag}' is not of the form family_qN")))?;
    let q = q.parse().map_err(|_| Error::InvalidInput(format!("bad field order in '{tag}'")))?;
    Ok((f.parse()?, q))
}

fn parse_params(q: u32, e: &str) -> Result<SchemeParams> {
    SchemeParams::new(q, SchemeParams::parse_e(e)?)
}

fn parse_eigenspace(s: &str) -> Result<Eigenspace> {
    s.trim().parse()
}

pub struct Context {
    pub seed: u64,
    pub cache_dir: Option<PathBuf>,
}

impl Context {
    fn cache_dir(&self) -> Option<PathBuf> {
        self.cache_dir.clone().or_else(|| std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from))
    }

    fn space(&self, arg: &SpaceArg) -> Result<PolarSpace> {
        let (family, q) = parse_space_tag(&arg.space)?;
        match self.cache_dir() {
            Some(dir) => cache::load_or_build(&dir, family, q, BuildOptions::default()),
            None => PolarSpace::build(family, q),
        }
    }
}

fn budget(args: &BudgetArgs) -> Result<SearchBudget> {
    let env = |k: &str| -> Result<Option<u64>> {
        std::env::var(k)
            .ok()
            .map(|v| v.parse().map_err(|_| Error::InvalidInput(format!("{k} must be an integer"))))
            .transpose()
    };
    let mut b = SearchBudget::default();
    if let Some(n) = args.max_nodes.or(env(MAX_NODES_ENV)?) {
        b.max_nodes = n;
    }
    if let Some(t) = args.max_seconds.or(env(MAX_SECONDS_ENV)?) {
        b = b.with_time(Duration::from_secs(t));
    }
    if let Some(r) = args.max_results {
        b = b.with_results(r);
    }
    if b.max_nodes == 0 || b.max_results == 0 || b.max_time.is_some_and(|t| t.is_zero()) {
        return Err(Error::InvalidInput("budget limits must be positive".into()));
    }
    Ok(b)
}

fn line(out: &mut dyn Write, v: &Value) -> Result<()> {
    serde_json::to_writer(&mut *out, v)?;
    writeln!(out)?;
    Ok(())
}

fn pretty(out: &mut dyn Write, v: &Value) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, v)?;
    writeln!(out)?;
    Ok(())
}

/// Runs a parsed command. `--threads` sizes the global worker pool, which
/// can only be configured once per process.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<()> {
    let ctx = Context { seed: cli.seed, cache_dir: cli.cache_dir };
    match cli.threads {
        Some(0) => return Err(Error::InvalidInput("--threads must be positive".into())),
        Some(t) => {
            // a pool configured earlier in this process keeps its size
            let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
        }
        None => {}
    }
    dispatch(&ctx, cli.command, out)
}

fn dispatch(ctx: &Context, command: Command, out: &mut dyn Write) -> Result<()> {
    match command {
        Command::Space(c) => space_cmd(ctx, c, out),
        Command::Scheme(c) => scheme_cmd(ctx, c, out),
        Command::Set(SetCmd::Eval { space, file, example }) => {
            let s = ctx.space(&space)?;
            let t = SchemeTables::for_space(&s)?;
            let y = parse_lineset_file(&file, &s)?;
            pretty(out, &report::eval_report(&s, &t, &y, example.and_then(ExampleName::example))?)
        }
        Command::Construct(a) => construct_cmd(ctx, a, out),
        Command::Lp(LpCmd::Bound { q, e, forbid }) => {
            let params = parse_params(q, &e)?;
            let forbid: Vec<Relation> = forbid.iter().map(|r| r.trim().parse()).collect::<Result<_>>()?;
            let r = delsarte_lp_bound(&LpInstance::new(params, &forbid)?)?;
            verify_certificate(&SchemeTables::new(params)?, &r)?;
            pretty(out, &serde_json::to_value(&r)?)
        }
        Command::Search(c) => search_cmd(ctx, c, out),
    }
}

fn space_cmd(ctx: &Context, c: SpaceCmd, out: &mut dyn Write) -> Result<()> {
    match c {
        SpaceCmd::Build(a) => {
            let dir = ctx
                .cache_dir()
                .ok_or_else(|| Error::InvalidInput(format!("space build needs --cache-dir or {CACHE_DIR_ENV}")))?;
            let (family, q) = parse_space_tag(&a.space)?;
            let s = cache::load_or_build(&dir, family, q, BuildOptions::default())?;
            let path = dir.join(cache::file_name(family, q)?);
            pretty(out, &json!({ "header": cache::header(&s), "path": path }))
        }
        SpaceCmd::Info(a) => {
            let s = ctx.space(&a)?;
            let t = SchemeTables::for_space(&s)?;
            pretty(
                out,
                &json!({
                    "space": s.fingerprint(),
                    "header": cache::header(&s),
                    "q": s.q(),
                    "e": s.params().e_string(),
                    "n": s.num_lines(),
                    "n_formula": s.params().n().to_string(),
                    "valencies": t.valencies().map(|v| v.to_string()),
                    "multiplicities": t.multiplicities().iter().map(|m| m.to_string()).collect::<Vec<_>>(),
                }),
            )
        }
    }
}

fn scheme_cmd(ctx: &Context, c: SchemeCmd, out: &mut dyn Write) -> Result<()> {
    match c {
        SchemeCmd::Tables { q, e, format } => {
            let t = SchemeTables::new(parse_params(q, &e)?)?;
            let p: Vec<Vec<String>> = t.p().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
            let qm = matrix_to_strings(t.q());
            match format {
                Format::Json => pretty(
                    out,
                    &json!({
                        "q": q,
                        "e": t.params().e_string(),
                        "n": t.n().to_string(),
                        "relations": Relation::ALL.map(|r| r.name()),
                        "eigenspaces": Eigenspace::ALL.map(|j| j.label()),
                        "p": p,
                        "q_matrix": qm,
                        "valencies": t.valencies().map(|v| v.to_string()),
                        "multiplicities": t.multiplicities().iter().map(|m| m.to_string()).collect::<Vec<_>>(),
                    }),
                ),
                Format::Csv => {
                    let header = |first: &str, cols: Vec<String>| format!("{first},{}", cols.join(","));
                    writeln!(out, "{}", header("P", Relation::ALL.iter().map(|r| r.name().to_string()).collect()))?;
                    for (j, row) in Eigenspace::ALL.iter().zip(&p) {
                        writeln!(out, "{},{}", j.label(), row.join(","))?;
                    }
                    writeln!(out, "{}", header("Q", Eigenspace::ALL.iter().map(|j| j.label().to_string()).collect()))?;
                    for (i, row) in Relation::ALL.iter().zip(&qm) {
                        writeln!(out, "{},{}", i.name(), row.join(","))?;
                    }
                    Ok(())
                }
            }
        }
        SchemeCmd::Verify { space, vectors } => {
            let s = ctx.space(&space)?;
            let t = SchemeTables::for_space(&s)?;
            let r = verify_scheme(&s, &t, vectors, ctx.seed)?;
            pretty(out, &json!({ "passed": r.passed(), "report": r }))?;
            if !r.passed() {
                return Err(Error::Consistency(format!("scheme verification failed at {:?}", r.violations())));
            }
            Ok(())
        }
    }
}

fn construct_cmd(ctx: &Context, a: ConstructArgs, out: &mut dyn Write) -> Result<()> {
    let s = ctx.space(&a.space)?;
    let y: LineSet = match a.name {
        ExampleName::Plane => plane_lines(&s, a.index)?,
        ExampleName::Pencil => point_pencil(&s, a.index, PencilMode::Through)?,
        ExampleName::PerpAvoiding => point_pencil(&s, a.index, PencilMode::PerpAvoiding)?,
        ExampleName::QuadrangleSection => {
            hyperplane_section_lines(&s, &HyperplaneSection::first_of_kind(&s, SectionKind::Quadrangle)?)?
        }
        ExampleName::Rank3Section => {
            hyperplane_section_lines(&s, &HyperplaneSection::first_of_kind(&s, SectionKind::Rank3)?)?
        }
        ExampleName::PencilUnion => pencil_union(&s, &elliptic_ovoid(&s)?)?.lines,
        ExampleName::OvoidLift => {
            let h = section_through_elliptic_ovoid(&s)?;
            let o: OvoidSet = elliptic_ovoid(&s)?;
            m_ovoid_lift(&s, &h, &o)?
        }
        ExampleName::Spread => symplectic_spread_lines(&s)?,
        ExampleName::Hexagon => hexagon_lines(&s)?,
    };
    let file = if a.bases { LineSetFile::with_bases(&s, &y) } else { LineSetFile::from_set(&s, &y) };
    let v = serde_json::to_value(&file)?;
    match a.out {
        Some(path) => {
            std::fs::write(&path, serde_json::to_string_pretty(&v)? + "\n")?;
            line(out, &json!({ "written": path, "size": y.len(), "space": s.fingerprint() }))
        }
        None => pretty(out, &v),
    }
}

fn set_json(s: &PolarSpace, y: &LineSet) -> Value {
    json!({ "size": y.len(), "lines": y.as_slice(), "space": s.fingerprint() })
}

fn search_cmd(ctx: &Context, c: SearchCmd, out: &mut dyn Write) -> Result<()> {
    match c {
        SearchCmd::Regular { space, j, size, budget: b } => {
            let s = ctx.space(&space)?;
            let t = SchemeTables::for_space(&s)?;
            let j = parse_eigenspace(&j)?;
            let r = enumerate_regular_sets(&s, &t, j, size, &budget(&b)?)?;
            for y in &r.sets {
                line(out, &json!({ "set": set_json(&s, y) }))?;
            }
            line(
                out,
                &json!({ "summary": { "eigenspace": j.label(), "size": size, "count": r.sets.len(), "complete": r.complete, "nodes": r.nodes } }),
            )
        }
        SearchCmd::Probe { space, support, size, budget: b } => {
            let s = ctx.space(&space)?;
            let t = SchemeTables::for_space(&s)?;
            let sup: Vec<Eigenspace> = support.iter().map(|x| parse_eigenspace(x)).collect::<Result<_>>()?;
            let r = feasibility_probe(&s, &t, &sup, size, &budget(&b)?)?;
            if let Some(y) = &r.witness {
                line(out, &json!({ "set": set_json(&s, y) }))?;
            }
            line(
                out,
                &json!({ "summary": {
                    "support": sup.iter().map(|j| j.label()).collect::<Vec<_>>(),
                    "size": size,
                    "verdict": r.verdict,
                    "reason": r.reason,
                    "complete": r.verdict != polar_lines::search::ProbeVerdict::Unknown,
                    "nodes": r.nodes,
                } }),
            )
        }
        SearchCmd::Spread { space, section, budget: b } => {
            let s = ctx.space(&space)?;
            let sec = match section {
                Some(SectionChoice::Quadrangle) => Some(HyperplaneSection::first_of_kind(&s, SectionKind::Quadrangle)?),
                Some(SectionChoice::Rank3) => Some(HyperplaneSection::first_of_kind(&s, SectionKind::Rank3)?),
                None => None,
            };
            let r = line_spread_search(&s, sec.as_ref(), &budget(&b)?)?;
            if let Some(y) = &r.lines {
                line(out, &json!({ "set": set_json(&s, y) }))?;
            }
            line(out, &json!({ "summary": { "found": r.lines.is_some(), "complete": r.complete, "nodes": r.nodes } }))
        }
        SearchCmd::Packing { space, budget: b } => {
            let s = ctx.space(&space)?;
            let p = disjoint_section_packing(&s, &budget(&b)?)?;
            line(out, &json!({ "set": set_json(&s, &p.lines), "sections": p.sections }))?;
            line(
                out,
                &json!({ "summary": { "size": p.size, "candidates": p.candidates, "complete": p.complete, "nodes": p.nodes } }),
            )
        }
        SearchCmd::Census { space, budget: b } => {
            let s = ctx.space(&space)?;
            let t = SchemeTables::for_space(&s)?;
            let catalog = if s.family() == Family::O6Plus { Some(Catalog::new(&s)?) } else { None };
            let entries = regular_census(&s, &t, catalog.as_ref(), &budget(&b)?)?;
            let complete = entries.iter().all(|e| e.complete);
            for e in &entries {
                line(out, &serde_json::to_value(e)?)?;
            }
            let found: usize = entries.iter().map(|e| e.count).sum();
            let nodes: u64 = entries.iter().map(|e| e.nodes).sum();
            line(out, &json!({ "summary": { "entries": entries.len(), "sets": found, "complete": complete, "nodes": nodes } }))
        }
    }
}

/// The error object printed on failure.
pub fn error_json(e: &Error) -> Value {
    json!({ "error": { "kind": e.kind(), "message": e.to_string() } })
}

