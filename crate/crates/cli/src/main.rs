use std::collections::BTreeMap;
use std::path::{Path as FsPath, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use posnet::abelian::FGAbelianGroup;
use posnet::fixtures::{self, Fixture};
use posnet::homotopy::Path;
use posnet::io::{self, BundleFile};
use posnet::netbundle::{validate, NetBundle, CONSTRUCTION_TOL};
use posnet::realization::PosetNetBundle;
use posnet::simplicial::{Simplex1, Simplex1File};
use posnet::space::Space;
use posnet::{report, Error, Result};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "posnet", version, about = "Invariants of finite posets and their net bundles")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Config {
    /// Construction and validation tolerance
    #[arg(long, global = true, default_value_t = CONSTRUCTION_TOL, value_parser = positive)]
    tolerance: f64,
    /// Node budget for homotopy searches
    #[arg(long, global = true, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    /// Seed for random loops
    #[arg(long, global = true, default_value_t = 0x5eed)]
    seed: u64,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

fn positive(s: &str) -> std::result::Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        _ => Err(format!("`{s}` is not a positive number")),
    }
}

#[derive(Subcommand)]
enum Command {
    /// Poset structure, homology and the fundamental group
    #[command(subcommand)]
    Poset(PosetCmd),
    /// Hurewicz comparison
    #[command(subcommand)]
    Hurewicz(HurewiczCmd),
    /// Net bundles over a poset
    #[command(subcommand)]
    Bundle(BundleCmd),
    /// Alexandroff topology and poset bundles
    #[command(subcommand)]
    Topology(TopologyCmd),
    /// The built-in fixtures
    #[command(subcommand)]
    Fixtures(FixturesCmd),
}

#[derive(Subcommand)]
enum PosetCmd {
    Validate { poset: String },
    H1 { poset: String },
    Pi1 { poset: String },
    Cohomology {
        poset: String,
        /// Coefficient group such as `Z`, `Z/6` or `Z^2`
        #[arg(long, default_value = "Z")]
        coeff: String,
    },
    /// Decide whether two loops are homotopic within the budget
    Homotopic { poset: String, first: String, second: String },
}

#[derive(Subcommand)]
enum HurewiczCmd {
    Roundtrip { poset: String },
}

#[derive(Subcommand)]
enum BundleCmd {
    Validate { bundle: String },
    C1 { bundle: String },
    Chern {
        bundle: String,
        /// `gamma`, `word:1,-2`, `random:LEN`, or a path file
        #[arg(long = "loop")]
        path: Option<String>,
    },
    Kclasses { bundle: String },
    Classify { bundle: String },
    Decompose { bundle: String },
    Iso { bundle: String, other: String },
    Sections { bundle: String },
}

#[derive(Subcommand)]
enum TopologyCmd {
    Opens { poset: String },
    Transitions { bundle: String },
    Cylinders { bundle: String },
    Exactness { bundle: String },
}

#[derive(Subcommand)]
enum FixturesCmd {
    List,
    Emit { name: String },
    /// The stored invariant report of a fixture
    Report { name: String },
    /// Split a fixture action into isotypic parts
    Split { action: String },
}

fn load_space(arg: &str) -> Result<Arc<Space>> {
    match fixtures::poset(arg) {
        Some(p) => Ok(Space::new(p)),
        None => Ok(Space::new(io::read_poset(FsPath::new(arg))?)),
    }
}

fn load_bundle(arg: &str, tol: f64) -> Result<NetBundle> {
    if let Some(e) = fixtures::bundle(arg) {
        return Ok(e);
    }
    let path = FsPath::new(arg);
    io::bundle_from_file_with(&io::read_json(path)?, path.parent(), tol)
}

fn load_poset_bundle(arg: &str) -> Result<PosetNetBundle> {
    match fixtures::fixture(arg) {
        Some(Fixture::PosetBundle(x)) => Ok(x),
        _ => io::read_poset_bundle(FsPath::new(arg)),
    }
}

fn simplex(space: &Space, support: &str, d0: &str, d1: &str) -> Result<Simplex1> {
    Simplex1::from_names(space.poset(), support, d0, d1)
}

fn parse_loop(space: &Space, spec: &str, seed: u64) -> Result<(Path, Value)> {
    let pi1 = space.pi1()?;
    let checked_word = |w: Vec<i32>| -> Result<Path> {
        if w.iter().any(|&l| l == 0 || l.unsigned_abs() as usize > pi1.ngens()) {
            return Err(Error::Parse(format!("word letters must lie in ±1..={}", pi1.ngens())));
        }
        Ok(pi1.word_loop(&w))
    };
    if spec == "gamma" {
        let steps = vec![simplex(space, "x", "b", "a")?, simplex(space, "y", "a", "b")?];
        return Ok((Path::new(steps)?, json!("gamma")));
    }
    if let Some(w) = spec.strip_prefix("word:") {
        let w = w
            .split(',')
            .filter(|s| !s.is_empty())
            .map(|s| s.trim().parse::<i32>().map_err(|_| Error::Parse(format!("bad letter `{s}`"))))
            .collect::<Result<Vec<_>>>()?;
        return Ok((checked_word(w.clone())?, json!(w)));
    }
    if let Some(n) = spec.strip_prefix("random:") {
        let n = n.parse::<usize>().map_err(|_| Error::Parse(format!("bad length `{n}`")))?;
        let w = fixtures::random_word(pi1, n, &mut fixtures::rng(seed));
        return Ok((checked_word(w.clone())?, json!({ "seed": seed, "word": w })));
    }
    let steps: Vec<Simplex1File> = io::read_json(FsPath::new(spec))?;
    Ok((Path::from_file(space.poset(), &steps)?, json!(spec)))
}

fn validate_bundle(arg: &str, tol: f64) -> Result<Value> {
    let r = match fixtures::bundle(arg) {
        Some(e) => {
            let ranks = vec![e.rank(); e.poset().len()];
            validate(e.poset(), &ranks, e.maps(), tol)?
        }
        None => {
            let path = FsPath::new(arg);
            let file: BundleFile = io::read_json(path)?;
            io::validate_file(&file, path.parent(), tol)?
        }
    };
    Ok(report::validation(&r))
}

fn run(cli: &Cli) -> Result<Value> {
    let cfg = &cli.config;
    let tol = cfg.tolerance;
    match &cli.command {
        Command::Poset(cmd) => match cmd {
            PosetCmd::Validate { poset } => Ok(report::poset_validate(&*load_space(poset)?)),
            PosetCmd::H1 { poset } => report::h1(&*load_space(poset)?),
            PosetCmd::Pi1 { poset } => report::pi1(&*load_space(poset)?),
            PosetCmd::Cohomology { poset, coeff } => report::cohomology(&*load_space(poset)?, &coeff.parse::<FGAbelianGroup>()?),
            PosetCmd::Homotopic { poset, first, second } => {
                let space = load_space(poset)?;
                let (p, _) = parse_loop(&space, first, cfg.seed)?;
                let (q, _) = parse_loop(&space, second, cfg.seed)?;
                report::homotopic_report(&space, &p, &q, cfg.budget as usize)
            }
        },
        Command::Hurewicz(HurewiczCmd::Roundtrip { poset }) => report::hurewicz_roundtrip(&*load_space(poset)?),
        Command::Bundle(cmd) => match cmd {
            BundleCmd::Validate { bundle } => validate_bundle(bundle, tol),
            BundleCmd::C1 { bundle } => report::c1(&load_bundle(bundle, tol)?),
            BundleCmd::Chern { bundle, path } => {
                let e = load_bundle(bundle, tol)?;
                match path {
                    None => report::chern_on_generators(&e),
                    Some(spec) => {
                        let (p, label) = parse_loop(e.space(), spec, cfg.seed)?;
                        let mut v = report::chern_on_loop(&e, &p);
                        if spec.starts_with("random:") {
                            v["loop"] = label;
                        }
                        Ok(v)
                    }
                }
            }
            BundleCmd::Kclasses { bundle } => report::kclasses(&load_bundle(bundle, tol)?),
            BundleCmd::Classify { bundle } => report::classify(&load_bundle(bundle, tol)?),
            BundleCmd::Decompose { bundle } => report::decomposition(&load_bundle(bundle, tol)?),
            BundleCmd::Iso { bundle, other } => report::iso(&load_bundle(bundle, tol)?, &load_bundle(other, tol)?),
            BundleCmd::Sections { bundle } => report::sections(&load_bundle(bundle, tol)?),
        },
        Command::Topology(cmd) => match cmd {
            TopologyCmd::Opens { poset } => report::opens(load_space(poset)?.poset_arc()),
            TopologyCmd::Transitions { bundle } => report::transitions(&load_bundle(bundle, tol)?),
            TopologyCmd::Cylinders { bundle } => report::cylinders(&load_poset_bundle(bundle)?),
            TopologyCmd::Exactness { bundle } => report::exactness(&load_poset_bundle(bundle)?),
        },
        Command::Fixtures(cmd) => match cmd {
            FixturesCmd::List => Ok(json!({
                "posets": fixtures::POSETS,
                "bundles": fixtures::BUNDLES,
                "poset_bundles": fixtures::POSET_BUNDLES,
                "actions": fixtures::ACTIONS,
            })),
            FixturesCmd::Emit { .. } => unreachable!("emitted verbatim"),
            FixturesCmd::Report { name } => report::fixture_report(&named_fixture(name)?),
            FixturesCmd::Split { action } => {
                let a = match fixtures::fixture(action) {
                    Some(Fixture::Action(a)) => a,
                    _ => io::read_action(FsPath::new(action))?,
                };
                report::split(&a)
            }
        },
    }
}

fn named_fixture(name: &str) -> Result<Fixture> {
    fixtures::fixture(name).ok_or_else(|| Error::Parse(format!("no fixture named `{name}`")))
}

fn emit(text: &str, output: Option<&FsPath>) -> ExitCode {
    match output {
        None => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Some(path) => match std::fs::write(path, text) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("{}: {e}", path.display());
                ExitCode::from(2)
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let output = cli.config.output.as_deref();
    if let Command::Fixtures(FixturesCmd::Emit { name }) = &cli.command {
        return match named_fixture(name) {
            Ok(f) => emit(&report::fixture_file(&f), output),
            Err(e) => fail(&e),
        };
    }
    match run(&cli) {
        Ok(v) => emit(&io::to_json(&v), output),
        Err(e) => fail(&e),
    }
}

fn fail(e: &Error) -> ExitCode {
    let diag: BTreeMap<&str, String> = [("error", e.kind().to_string()), ("message", e.to_string())].into();
    println!("{}", serde_json::to_string(&diag).expect("strings serialize"));
    ExitCode::from(2)
}
