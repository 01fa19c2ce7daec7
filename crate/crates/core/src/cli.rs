//! Command-line front end: `compute`, `motif`, `census`, `sample`, `temporal`.
//!
//! Exit codes are 0 on success, 1 on usage errors and 2 on input or
//! computation errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::census::{self, BettiFilter, CensusQuery, Family};
use crate::digraph::{self, Digraph, Label, VertexMap};
use crate::homology::{homology, HomologySummary};
use crate::motifs::{self, ExternalArcs, MotifName, MotifSpec};
use crate::pathcomplex::PathComplex;
use crate::randgraph::{self, ERSpec};
use crate::temporal::{self, ContactStream, WindowSpec};
use crate::Ring;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RingArg {
    /// Rationals.
    Q,
    /// Integers, with torsion.
    Z,
}

impl From<RingArg> for Ring {
    fn from(r: RingArg) -> Ring {
        match r {
            RingArg::Q => Ring::Rational,
            RingArg::Z => Ring::Integer,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExternalArg {
    Reciprocal,
    Outward,
    Inward,
    OutIn,
    InOut,
}

impl From<ExternalArg> for ExternalArcs {
    fn from(e: ExternalArg) -> Self {
        match e {
            ExternalArg::Reciprocal => ExternalArcs::Reciprocal,
            ExternalArg::Outward => ExternalArcs::Outward,
            ExternalArg::Inward => ExternalArcs::Inward,
            ExternalArg::OutIn => ExternalArcs::OutIn,
            ExternalArg::InOut => ExternalArcs::InOut,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "pathhom", version, about = "Exact path homology of digraphs")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Coefficient ring.
    #[arg(long, global = true, value_enum, default_value = "q")]
    pub ring: RingArg,
    /// Highest homology dimension reported.
    #[arg(long, global = true, default_value_t = 2)]
    pub max_dim: usize,
    /// Include representative cycles.
    #[arg(long, global = true)]
    pub reps: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Shorthand for `--format csv`.
    #[arg(long, global = true, conflicts_with = "format")]
    pub csv: bool,
    /// Write output here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Log more (repeatable).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
}

impl GlobalArgs {
    fn format(&self) -> Format {
        if self.csv {
            Format::Csv
        } else {
            self.format.unwrap_or(Format::Json)
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Homology of a digraph read from an edge list.
    Compute {
        edgelist: PathBuf,
        /// Also emit allowed paths and Ω dimensions.
        #[arg(long)]
        dump: bool,
    },
    /// Edge list and homology of a named motif.
    Motif {
        /// dyad_up, dyad_down, torsion_cycle, square_trivial, square_hole or er.
        name: String,
        /// Size parameter.
        n: Option<usize>,
        /// Arc probability for `er`.
        #[arg(long, default_value_t = 0.5)]
        q: f64,
        /// Spoke orientation for `torsion_cycle`.
        #[arg(long, value_enum, default_value = "reciprocal")]
        external: ExternalArg,
    },
    /// Homology over isomorphism classes of small graphs.
    Census {
        #[arg(long, default_value = "digraph")]
        family: String,
        #[arg(long)]
        vertices: usize,
        /// Conjunction such as `b2>0` or `b1>=1,b2=0`.
        #[arg(long)]
        filter: Option<String>,
        /// Write the JSON histogram here (CSV output only).
        #[arg(long)]
        histogram: Option<PathBuf>,
    },
    /// Empirical Betti distribution of Erdős–Rényi digraphs.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: f64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
    /// Windowed homology series of a temporal contact file.
    Temporal {
        file: PathBuf,
        /// time:WIDTH:STRIDE (e.g. time:24h:8h), count:WIDTH:STRIDE or day.
        #[arg(long)]
        window: String,
        /// Window origin in seconds.
        #[arg(long)]
        origin: Option<i64>,
        /// Where to write the representative sidecar with CSV output.
        #[arg(long)]
        reps_out: Option<PathBuf>,
    },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Input(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Input(m) => m,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn input(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

fn summary_text(h: &HomologySummary, label: impl Fn(usize) -> String) -> String {
    let join = |v: &[usize]| v.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" ");
    let mut s = format!("reduced betti: {}\nbetti: {}\n", join(&h.reduced_betti), join(&h.betti));
    for (p, f) in &h.torsion {
        let f: Vec<String> = f.iter().map(|x| format!("Z/{x}")).collect();
        writeln!(s, "torsion H{p}: {}", f.join(" + ")).unwrap();
    }
    if let Some(reps) = &h.representatives {
        for (p, chains) in reps {
            for c in chains {
                let terms: Vec<String> = c
                    .terms
                    .iter()
                    .map(|(path, k)| {
                        let path: Vec<String> = path.iter().map(|&v| label(v)).collect();
                        format!("{k}*({})", path.join(","))
                    })
                    .collect();
                writeln!(s, "rep H{p}: {}", terms.join(" + ")).unwrap();
            }
        }
    }
    s
}

fn summary_csv(h: &HomologySummary) -> String {
    let mut s = String::from("dimension,betti,reduced_betti,torsion\n");
    for p in 0..=h.max_dim {
        let t: Vec<String> = h.torsion.get(&p).into_iter().flatten().map(|x| x.to_string()).collect();
        writeln!(s, "{p},{},{},{}", h.betti[p], h.reduced_betti[p], t.join(" ")).unwrap();
    }
    s
}

fn render_summary(
    g: &GlobalArgs,
    d: &Digraph,
    map: &VertexMap<Label>,
    h: &HomologySummary,
    extra: Option<(&str, Value)>,
) -> String {
    match g.format() {
        Format::Json => {
            let mut v = h.to_json_labeled(map);
            v["vertices"] = json!(d.vertex_count());
            v["arcs"] = json!(d.arc_count());
            if let Some((k, x)) = extra {
                v[k] = x;
            }
            format!("{}\n", serde_json::to_string_pretty(&v).unwrap())
        }
        Format::Csv => summary_csv(h),
        Format::Text => summary_text(h, |v| map.label(v).to_string()),
    }
}

fn dump(d: &Digraph, map: &VertexMap<Label>, max_dim: usize, ring: Ring) -> Result<Value, CliError> {
    let pc = PathComplex::build(d, max_dim + 1, ring).map_err(input)?;
    let dims: Vec<Value> = (0..=pc.p_max())
        .map(|p| {
            let paths: Vec<Vec<&Label>> = pc
                .paths()
                .dim(p)
                .iter()
                .map(|t| t.iter().map(|&v| map.label(v)).collect())
                .collect();
            json!({"p": p, "allowed": paths, "omega_dim": pc.omega_dim(p)})
        })
        .collect();
    Ok(Value::Array(dims))
}

fn cmd_compute(g: &GlobalArgs, path: &Path, want_dump: bool) -> Result<String, CliError> {
    let (d, map) = digraph::read_edge_list(path).map_err(input)?;
    let h = homology(&d, g.max_dim, g.ring.into(), g.reps).map_err(input)?;
    let extra = if want_dump {
        Some(("dump", dump(&d, &map, g.max_dim, g.ring.into())?))
    } else {
        None
    };
    Ok(render_summary(g, &d, &map, &h, extra))
}

fn cmd_motif(g: &GlobalArgs, name: &str, n: Option<usize>, q: f64, external: ExternalArg) -> Result<String, CliError> {
    let name: MotifName = name.parse().map_err(usage)?;
    let spec = MotifSpec {
        external: external.into(),
        q,
        seed: g.seed,
        ..MotifSpec::new(name, n.unwrap_or(1))
    };
    let (d, map) = motifs::build_labeled(&spec).map_err(usage)?;
    let h = homology(&d, g.max_dim, g.ring.into(), g.reps).map_err(input)?;
    let edges = digraph::write_edge_list(&d, &map);
    Ok(match g.format() {
        Format::Text => format!("{edges}\n{}", summary_text(&h, |v| map.label(v).to_string())),
        _ => {
            let arcs: Vec<[&Label; 2]> = d.arcs().iter().map(|&(u, v)| [map.label(u), map.label(v)]).collect();
            render_summary(g, &d, &map, &h, Some(("edges", json!(arcs))))
        }
    })
}

fn write_file(path: &Path, body: &str) -> Result<(), CliError> {
    std::fs::write(path, body).map_err(|e| input(format!("cannot write {}: {e}", path.display())))
}

fn cmd_census(
    g: &GlobalArgs,
    family: &str,
    vertices: usize,
    filter: Option<&str>,
    histogram: Option<&Path>,
) -> Result<String, CliError> {
    let family: Family = family.parse().map_err(usage)?;
    let mut q = CensusQuery::new(family, vertices, g.max_dim);
    if let Some(f) = filter {
        q = q.with_filter(f.parse::<BettiFilter>().map_err(usage)?);
    }
    let r = census::run_census(&q).map_err(|e| match e {
        census::CensusError::Homology(_) => input(e),
        _ => usage(e),
    })?;
    Ok(match g.format() {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&r.to_json()).unwrap()),
        Format::Csv => {
            if let Some(p) = histogram {
                write_file(p, &serde_json::to_string_pretty(&r.histogram_json()).unwrap())?;
            }
            r.to_csv()
        }
        Format::Text => {
            let mut s = format!("{} classes, {} matching\n", r.total_classes, r.matches.len());
            for (b, c) in &r.histogram {
                writeln!(s, "{b:?}: {c}").unwrap();
            }
            s
        }
    })
}

fn cmd_sample(g: &GlobalArgs, n: usize, q: f64, trials: usize) -> Result<String, CliError> {
    let spec = ERSpec {
        n,
        q,
        trials,
        seed: g.seed,
        max_dim: g.max_dim,
    };
    spec.validate().map_err(usage)?;
    let dist = randgraph::sample_er(&spec).map_err(input)?;
    Ok(match g.format() {
        Format::Csv => dist.to_csv(),
        Format::Json => {
            let dims: Vec<Value> = (0..=g.max_dim)
                .map(|p| {
                    let f: Vec<Value> = dist
                        .frequencies(p)
                        .into_iter()
                        .map(|(v, f)| json!({"betti_value": v, "count": dist.counts[p][&v], "frequency": format!("{f}")}))
                        .collect();
                    json!({"dimension": p, "mean": dist.mean(p), "values": f})
                })
                .collect();
            let v = json!({"spec": dist.spec, "trials": dist.trials(), "distribution": dims});
            format!("{}\n", serde_json::to_string_pretty(&v).unwrap())
        }
        Format::Text => {
            let mut s = String::new();
            for p in 0..=g.max_dim {
                let f: Vec<String> = dist.frequencies(p).into_iter().map(|(v, f)| format!("{v}:{f}")).collect();
                writeln!(s, "b{p} mean {:.4}  {}", dist.mean(p), f.join(" ")).unwrap();
            }
            s
        }
    })
}

fn cmd_temporal(
    g: &GlobalArgs,
    file: &Path,
    window: &str,
    origin: Option<i64>,
    reps_out: Option<&Path>,
) -> Result<String, CliError> {
    let mut spec: WindowSpec = window.parse().map_err(usage)?;
    spec.origin = origin;
    let stream = ContactStream::ingest(file).map_err(input)?;
    log::info!("{} contacts, {} vertices", stream.len(), stream.vertex_count());
    let results = temporal::analyze(&stream, &spec, g.max_dim, g.reps).map_err(input)?;
    let reps = g.reps.then(|| temporal::representatives_json(&results));
    Ok(match g.format() {
        Format::Json => {
            let mut v = json!({"windows": temporal::series_json(&results)});
            if let Some(r) = reps {
                v["representatives"] = r;
            }
            format!("{}\n", serde_json::to_string_pretty(&v).unwrap())
        }
        Format::Csv | Format::Text => {
            if let Some(r) = reps {
                let side = reps_out
                    .map(Path::to_path_buf)
                    .or_else(|| g.output.as_ref().map(|o| o.with_extension("reps.json")));
                match side {
                    Some(p) => write_file(&p, &serde_json::to_string_pretty(&r).unwrap())?,
                    None => log::warn!("representatives need --reps-out or --output with CSV output"),
                }
            }
            temporal::series_csv(&results, g.max_dim)
        }
    })
}

fn execute(cli: &Cli) -> Result<String, CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Compute { edgelist, dump } => cmd_compute(g, edgelist, *dump),
        Command::Motif { name, n, q, external } => cmd_motif(g, name, *n, *q, *external),
        Command::Census {
            family,
            vertices,
            filter,
            histogram,
        } => cmd_census(g, family, *vertices, filter.as_deref(), histogram.as_deref()),
        Command::Sample { n, q, trials } => cmd_sample(g, *n, *q, *trials),
        Command::Temporal {
            file,
            window,
            origin,
            reps_out,
        } => cmd_temporal(g, file, window, *origin, reps_out.as_deref()),
    }
}

/// Parses `args` (including the program name), runs, and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let level = match cli.global.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).try_init();

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.global.threads {
        pool = pool.num_threads(t);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let result = pool.install(|| execute(&cli)).and_then(|out| match &cli.global.output {
        Some(p) => write_file(p, &out),
        None => std::io::stdout()
            .write_all(out.as_bytes())
            .map_err(|e| input(format!("cannot write output: {e}"))),
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.exit_code()
        }
    }
}
