mod render;

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use ordlat::convergence::{
    check_monotone_limit, liminf, limsup, o_limit, uo_limit_with, OLimitOracle, UoVariant,
    ORACLE_MAX_SIZE,
};
use ordlat::cut::{dm_completion_with, dm_strip_bounds, DmOptions};
use ordlat::gallery::{self, GalleryReport, Selection};
use ordlat::generators::{generate, GenSpec, Generated};
use ordlat::io::{self, PosetFile};
use ordlat::subobject;
use ordlat::suite::{run_suite, Suite};
use ordlat::{EmptySubsets, Error, FiniteLattice, Result, SuiteReport, SweepConfig};

const EXIT_VIOLATION: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

/// Limits used by `--mode exhaustive`: 2^24 subsets per sweep at most.
const FORCED_EXHAUSTIVE_LIMIT: usize = 24;

#[derive(Parser)]
#[command(name = "ordlat", version, about = "Order convergence, completions and sublattices of finite lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run property suites on lattice files.
    Check(CheckArgs),
    /// Dedekind-MacNeille completion of a poset file.
    Dm(DmArgs),
    /// Limits of an eventually periodic sequence.
    Conv(ConvArgs),
    /// Symbolic infinite examples.
    Gallery(GalleryArgs),
    /// Generate a poset or lattice.
    Gen(GenArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    /// Exhaustive below the default size limits, sampled above.
    Auto,
    Exhaustive,
    Sampled,
}

#[derive(Clone, Copy, ValueEnum)]
enum EmptyMode {
    Literal,
    Nonempty,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum, default_value_t = Mode::Auto)]
    mode: Mode,
    /// Random subsets per sampled sweep.
    #[arg(long, env = "ORDLAT_SAMPLES")]
    samples: Option<usize>,
    #[arg(long, env = "ORDLAT_SEED")]
    seed: Option<u64>,
    /// Largest set swept exhaustively in auto mode.
    #[arg(long, env = "ORDLAT_EXHAUSTIVE_LIMIT")]
    exhaustive_limit: Option<usize>,
    /// Whether the empty subset takes part in "for all A ⊆ Y".
    #[arg(long, value_enum, default_value_t = EmptyMode::Literal)]
    empty_subsets: EmptyMode,
}

impl SweepArgs {
    fn config(&self) -> SweepConfig {
        let mut c = SweepConfig::default();
        if let Some(s) = self.samples {
            c.samples = s;
        }
        if let Some(s) = self.seed {
            c.seed = s;
        }
        if let Some(l) = self.exhaustive_limit {
            c.lattice_exhaustive_limit = l;
            c.subset_exhaustive_limit = l;
            c.family_exhaustive_limit = l;
        }
        match self.mode {
            Mode::Auto => {}
            Mode::Sampled => c.force_sampled = true,
            Mode::Exhaustive => {
                c.lattice_exhaustive_limit = FORCED_EXHAUSTIVE_LIMIT;
                c.subset_exhaustive_limit = FORCED_EXHAUSTIVE_LIMIT;
                c.family_exhaustive_limit = FORCED_EXHAUSTIVE_LIMIT;
            }
        }
        c.empty_subsets = match self.empty_subsets {
            EmptyMode::Literal => EmptySubsets::Literal,
            EmptyMode::Nonempty => EmptySubsets::Nonempty,
        };
        c
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum SuiteChoice {
    One(Suite),
    Gallery,
    All,
}

fn parse_suite(s: &str) -> std::result::Result<SuiteChoice, String> {
    match s {
        "all" => Ok(SuiteChoice::All),
        "gallery" => Ok(SuiteChoice::Gallery),
        _ => s.parse().map(SuiteChoice::One).map_err(|e: Error| e.to_string()),
    }
}

#[derive(Args)]
struct CheckArgs {
    /// distributivity, convergence, cuts-dm, subobjects, preservation, gallery or all.
    #[arg(long, default_value = "all", value_parser = parse_suite)]
    suite: SuiteChoice,
    /// Lattice JSON file; may be repeated.
    #[arg(long = "input", short = 'i')]
    inputs: Vec<PathBuf>,
    /// Sublattice for the subobject suites, as comma-separated names or ids.
    /// Defaults to a seeded random sublattice.
    #[arg(long)]
    subset: Option<String>,
    #[command(flatten)]
    sweep: SweepArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct DmArgs {
    /// Poset JSON file.
    #[arg(long, short = 'i')]
    input: PathBuf,
    /// Largest poset accepted.
    #[arg(long, env = "ORDLAT_DM_CAP")]
    cap: Option<usize>,
    /// Largest number of cuts enumerated.
    #[arg(long)]
    max_cuts: Option<usize>,
    /// Drop the empty and full cuts when they are not images of elements.
    #[arg(long)]
    strip: bool,
    /// Also write the completion as a poset file (DOT when the name ends in .dot).
    #[arg(long)]
    emit: Option<PathBuf>,
    #[command(flatten)]
    sweep: SweepArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    /// Truncations (x ∧ t) ∨ s with s <= t.
    Restricted,
    /// Truncations (x ∨ s) ∧ t for all s, t.
    Unrestricted,
}

#[derive(Args)]
struct ConvArgs {
    /// Lattice JSON file.
    #[arg(long, short = 'i')]
    input: PathBuf,
    /// `{"prefix": [..], "cycle": [..]}`, inline or as @path.
    #[arg(long)]
    seq: String,
    #[arg(long, value_enum, default_value_t = Variant::Restricted)]
    variant: Variant,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct GalleryArgs {
    /// closed-sets, two-chain-dm, ray-ring, exmp3 or all.
    #[arg(value_parser = |s: &str| s.parse::<Selection>().map_err(|e| e.to_string()))]
    example: Selection,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    RandomPoset,
    DownsetLattice,
    RandomLattice,
    Chain,
    Boolean,
    M3,
    N5,
    Grid,
    RandomSublattice,
}

#[derive(Args)]
struct GenArgs {
    #[arg(value_enum)]
    kind: Option<GenKind>,
    /// Full generator spec as JSON, instead of KIND and flags.
    #[arg(long, conflicts_with = "kind")]
    spec: Option<String>,
    #[arg(long)]
    size: Option<usize>,
    #[arg(long, default_value_t = 0.4)]
    edge_probability: f64,
    #[arg(long, env = "ORDLAT_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    atoms: Option<usize>,
    #[arg(long)]
    rows: Option<usize>,
    #[arg(long)]
    cols: Option<usize>,
    /// For random-sublattice: grow until at least this many elements.
    #[arg(long)]
    target_size: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check(a) => check(a),
        Command::Dm(a) => dm(a),
        Command::Conv(a) => conv(a),
        Command::Gallery(a) => gallery_cmd(a),
        Command::Gen(a) => gen(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_resource() { EXIT_RESOURCE } else { EXIT_INPUT })
        }
    }
}

fn print(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes());
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn exit_for(violation: bool) -> u8 {
    if violation {
        EXIT_VIOLATION
    } else {
        0
    }
}

fn reject_dot(format: Format) -> Result<()> {
    if format == Format::Dot {
        return Err(Error::Input("--format dot is only available for dm and gen".into()));
    }
    Ok(())
}

#[derive(Serialize)]
struct InputReport {
    input: String,
    #[serde(flatten)]
    report: SuiteReport,
}

#[derive(Serialize)]
struct CheckReport {
    config: SweepConfig,
    suites: Vec<InputReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    gallery: Vec<GalleryReport>,
    violation: bool,
    /// Wall time per job in milliseconds; the only nondeterministic field.
    timing_ms: BTreeMap<String, u64>,
}

enum Job<'a> {
    Suite {
        input: &'a str,
        lattice: &'a FiniteLattice,
        subset: Option<ordlat::ElementSet>,
        suite: Suite,
    },
    Gallery,
}

enum JobOutput {
    Suite(InputReport),
    Gallery(Vec<GalleryReport>),
}

fn check(a: CheckArgs) -> Result<u8> {
    reject_dot(a.format)?;
    let cfg = a.sweep.config();
    let suites: Vec<Suite> = match a.suite {
        SuiteChoice::One(s) => vec![s],
        SuiteChoice::Gallery => vec![],
        SuiteChoice::All => Suite::ALL.to_vec(),
    };
    let with_gallery = matches!(a.suite, SuiteChoice::Gallery | SuiteChoice::All);
    if !suites.is_empty() && a.inputs.is_empty() {
        return Err(Error::Input("--input is required for the finite suites".into()));
    }

    let mut loaded = Vec::new();
    for path in &a.inputs {
        let lattice = io::load_lattice(path)
            .map_err(|e| relabel(e, path))?;
        let subset = match &a.subset {
            Some(spec) => {
                let y = io::parse_subset(lattice.poset(), spec)?;
                if suites.iter().any(|s| s.uses_subset()) && !subobject::is_sublattice(&lattice, &y) {
                    return Err(Error::Input(format!(
                        "{}: subset {} is not a sublattice",
                        path.display(),
                        lattice.poset().format_set(&y)
                    )));
                }
                Some(y)
            }
            None => None,
        };
        loaded.push((path.display().to_string(), lattice, subset));
    }

    let mut jobs = Vec::new();
    for (input, lattice, subset) in &loaded {
        for &suite in &suites {
            jobs.push(Job::Suite {
                input,
                lattice,
                subset: *subset,
                suite,
            });
        }
    }
    if with_gallery {
        jobs.push(Job::Gallery);
    }

    let results: Vec<(String, Result<JobOutput>, u64)> = std::thread::scope(|scope| {
        let handles: Vec<_> = jobs
            .iter()
            .map(|job| {
                let cfg = &cfg;
                scope.spawn(move || {
                    let start = Instant::now();
                    let (key, out) = match job {
                        Job::Suite {
                            input,
                            lattice,
                            subset,
                            suite,
                        } => (
                            format!("{input}:{suite}"),
                            run_suite(*suite, lattice, subset.as_ref(), cfg).map(|report| {
                                JobOutput::Suite(InputReport {
                                    input: input.to_string(),
                                    report,
                                })
                            }),
                        ),
                        Job::Gallery => (
                            "gallery".to_string(),
                            gallery::run(Selection::All).map(JobOutput::Gallery),
                        ),
                    };
                    (key, out, start.elapsed().as_millis() as u64)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("suite job panicked"))
            .collect()
    });

    let mut report = CheckReport {
        config: cfg,
        suites: Vec::new(),
        gallery: Vec::new(),
        violation: false,
        timing_ms: BTreeMap::new(),
    };
    let mut first_error: Option<Error> = None;
    for (key, out, ms) in results {
        report.timing_ms.insert(key, ms);
        match out {
            Ok(JobOutput::Suite(r)) => report.suites.push(r),
            Ok(JobOutput::Gallery(g)) => report.gallery = g,
            Err(e) => {
                let worse = first_error.as_ref().is_none_or(|f| e.is_resource() && !f.is_resource());
                if worse {
                    first_error = Some(e);
                }
            }
        }
    }
    if let Some(e) = first_error {
        return Err(e);
    }
    report.violation = report.suites.iter().any(|r| r.report.has_violation())
        || report.gallery.iter().any(GalleryReport::has_violation);

    match a.format {
        Format::Json => print(&to_json(&report)),
        _ => {
            let mut text = String::new();
            for r in &report.suites {
                let ms = report.timing_ms[&format!("{}:{}", r.input, r.report.suite)];
                text.push_str(&render::suite(&r.input, &r.report, ms));
            }
            for g in &report.gallery {
                text.push_str(&render::gallery(g));
            }
            print(&text);
        }
    }
    Ok(exit_for(report.violation))
}

fn relabel(e: Error, path: &Path) -> Error {
    match e {
        Error::Input(m) => Error::Input(format!("{}: {m}", path.display())),
        other => other,
    }
}

fn dm(a: DmArgs) -> Result<u8> {
    let poset = io::load_poset(&a.input).map_err(|e| relabel(e, &a.input))?;
    let mut opts = DmOptions {
        sweep: a.sweep.config(),
        ..DmOptions::default()
    };
    if let Some(c) = a.cap {
        opts.max_elements = c;
    }
    if let Some(c) = a.max_cuts {
        opts.max_cuts = c;
    }
    let dm = dm_completion_with(&poset, &opts)?;
    let lattice = if a.strip {
        dm_strip_bounds(&dm)?.0
    } else {
        dm.lattice.poset().clone()
    };
    if let Some(path) = &a.emit {
        let format = if path.extension().is_some_and(|e| e == "dot") {
            io::Format::Dot
        } else {
            io::Format::Json
        };
        io::emit_poset(&lattice, path, format)?;
    }
    let violation = !dm.is_verified();
    match a.format {
        Format::Dot => print(&io::poset_to_dot(&lattice)),
        Format::Json => {
            let cuts: Vec<Vec<&str>> = dm
                .cuts
                .iter()
                .map(|c| c.iter().map(|x| poset.name(x)).collect())
                .collect();
            let phi: BTreeMap<&str, &str> = (0..poset.len())
                .map(|x| (poset.name(x), dm.lattice.name(dm.phi[x])))
                .collect();
            let adjoined: Vec<&str> = dm.adjoined().into_iter().map(|k| dm.lattice.name(k)).collect();
            let out = json!({
                "lattice": PosetFile::from_poset(&lattice),
                "cuts": cuts,
                "phi": phi,
                "adjoined": adjoined,
                "verification": dm.verification,
                "violation": violation,
            });
            print(&to_json(&out));
        }
        Format::Text => {
            let mut text = format!(
                "{} elements, {} cuts, {} adjoined\n",
                poset.len(),
                dm.cuts.len(),
                dm.adjoined().len()
            );
            for (k, c) in dm.cuts.iter().enumerate() {
                text.push_str(&format!("  {:12} {}\n", dm.lattice.name(k), poset.format_set(c)));
            }
            text.push_str(&render::verdicts(&dm.verification));
            print(&text);
        }
    }
    Ok(exit_for(violation))
}

fn conv(a: ConvArgs) -> Result<u8> {
    reject_dot(a.format)?;
    let lattice = io::load_lattice(&a.input).map_err(|e| relabel(e, &a.input))?;
    let text = match a.seq.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| Error::Input(format!("{path}: {e}")))?,
        None => a.seq.clone(),
    };
    let seq = io::parse_seq(&text, &lattice)?;
    let variant = match a.variant {
        Variant::Restricted => UoVariant::Restricted,
        Variant::Unrestricted => UoVariant::Unrestricted,
    };
    let name = |x: usize| lattice.name(x).to_string();
    let o = o_limit(&lattice, &seq);
    let uo = uo_limit_with(&lattice, &seq, variant);
    let oracle_agrees = if lattice.len() <= ORACLE_MAX_SIZE {
        let oracle = OLimitOracle::new(&lattice)?;
        Some((0..lattice.len()).all(|x| oracle.converges_to(&seq, x) == (o == Some(x))))
    } else {
        None
    };
    let monotone = check_monotone_limit(&lattice, &seq).ok();
    let violation = oracle_agrees == Some(false) || monotone.as_ref().is_some_and(|m| !m.holds);
    let out = json!({
        "liminf": name(liminf(&lattice, &seq)),
        "limsup": name(limsup(&lattice, &seq)),
        "o_limit": o.map(name),
        "uo_limit": uo.limit.map(name),
        "uo_witness": uo.witness.map(|(s, t)| [name(s), name(t)]),
        "oracle_agrees": oracle_agrees,
        "monotone": monotone.map(|m| json!({
            "direction": m.direction,
            "range_bound": name(m.range_bound),
            "holds": m.holds,
        })),
        "violation": violation,
    });
    match a.format {
        Format::Json => print(&to_json(&out)),
        _ => print(&render::object(&out)),
    }
    Ok(exit_for(violation))
}

fn gallery_cmd(a: GalleryArgs) -> Result<u8> {
    reject_dot(a.format)?;
    let reports = gallery::run(a.example)?;
    match a.format {
        Format::Json => print(&to_json(&reports)),
        _ => print(&reports.iter().map(render::gallery).collect::<String>()),
    }
    Ok(exit_for(reports.iter().any(GalleryReport::has_violation)))
}

fn need(v: Option<usize>, flag: &str) -> Result<usize> {
    v.ok_or_else(|| Error::Input(format!("--{flag} is required for this kind")))
}

fn gen_spec(a: &GenArgs) -> Result<GenSpec> {
    if let Some(text) = &a.spec {
        return serde_json::from_str(text).map_err(|e| Error::Input(format!("--spec: {e}")));
    }
    let kind = a
        .kind
        .ok_or_else(|| Error::Input("give a KIND or --spec".into()))?;
    let p = a.edge_probability;
    let seed = a.seed;
    Ok(match kind {
        GenKind::RandomPoset => GenSpec::RandomPoset {
            size: need(a.size, "size")?,
            edge_probability: p,
            seed,
        },
        GenKind::DownsetLattice => GenSpec::DownsetLattice {
            size: need(a.size, "size")?,
            edge_probability: p,
            seed,
        },
        GenKind::RandomLattice => GenSpec::RandomLattice {
            size: need(a.size, "size")?,
            edge_probability: p,
            seed,
        },
        GenKind::Chain => GenSpec::Chain {
            size: need(a.size, "size")?,
        },
        GenKind::Boolean => GenSpec::Boolean {
            atoms: need(a.atoms, "atoms")?,
        },
        GenKind::M3 => GenSpec::M3,
        GenKind::N5 => GenSpec::N5,
        GenKind::Grid => GenSpec::Grid {
            rows: need(a.rows, "rows")?,
            cols: need(a.cols, "cols")?,
        },
        GenKind::RandomSublattice => GenSpec::RandomSublattice {
            base: Box::new(GenSpec::DownsetLattice {
                size: need(a.size, "size")?,
                edge_probability: p,
                seed,
            }),
            target_size: need(a.target_size, "target-size")?,
            seed: seed.wrapping_add(1),
        },
    })
}

fn gen(a: GenArgs) -> Result<u8> {
    let spec = gen_spec(&a)?;
    let generated = generate(&spec)?;
    let poset = generated.poset();
    let text = match a.format {
        Format::Dot => io::poset_to_dot(poset),
        _ => {
            let mut v = serde_json::to_value(PosetFile::from_poset(poset)).expect("serializable");
            let obj = v.as_object_mut().expect("object");
            obj.insert("spec".into(), serde_json::to_value(&spec).expect("serializable"));
            if let Generated::Sublattice { subset, .. } = &generated {
                obj.insert("subset".into(), Value::from(subset.members.to_vec()));
            }
            to_json(&v)
        }
    };
    match &a.output {
        Some(path) => write_file(path, &text)?,
        None => print(&text),
    }
    Ok(0)
}
