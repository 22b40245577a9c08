use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use idiomlab::cache::Cache;
use idiomlab::config::{Format, RunConfig};
use idiomlab::dimensions;
use idiomlab::family::{brute_extremum, Extremum};
use idiomlab::io::{self, InflatorDoc, LatticeDoc, NucleiDoc, OperatorLatticeDoc};
use idiomlab::lattice::{random_modular, Family};
use idiomlab::nuclei::NucleusLattice;
use idiomlab::suite::{self, Report, Suite};
use idiomlab::{generate, Error, FamilyKind, FiniteLattice, Inflator, Intervals, OperatorLattice};

#[derive(Parser)]
#[command(
    name = "idiomlab",
    version,
    about = "Inflators and nuclei on finite modular lattices"
)]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Opts {
    #[arg(long, global = true, default_value_t = 64)]
    max_lattice_size: usize,
    #[arg(long, global = true, default_value_t = 100_000)]
    max_enumeration: usize,
    #[arg(long, global = true, default_value_t = 64)]
    second_level_bound: usize,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Cache directory; IDIOMLAB_CACHE_DIR takes precedence.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Output format (verify defaults to json, everything else to text).
    #[arg(long, global = true)]
    format: Option<Format>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a lattice from a named family.
    Gen {
        #[arg(value_enum)]
        family: GenFamily,
        /// Family parameters: a size for chain, boolean and diamond, a seed and
        /// optional size for random, two `family:size` terms for product.
        params: Vec<String>,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Validate a lattice and report modularity and distributivity.
    Check { file: PathBuf },
    /// Enumerate an operator family.
    Inflators {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        family: FamilyArg,
    },
    /// The totalizer of an inflator.
    Totalizer {
        file: PathBuf,
        #[arg(long)]
        inflator: PathBuf,
        #[arg(long)]
        oracle: bool,
    },
    /// The equalizer of an inflator.
    Equalizer {
        file: PathBuf,
        #[arg(long)]
        inflator: PathBuf,
        #[arg(long)]
        oracle: bool,
    },
    /// The socle or Cantor-Bendixson derivative.
    Derive {
        file: PathBuf,
        #[arg(long, value_enum)]
        op: DeriveOp,
        #[arg(long)]
        closure: bool,
    },
    /// Export the nucleus lattice.
    Nuclei { file: PathBuf },
    /// The Gab table on the nucleus lattice.
    Gab {
        file: PathBuf,
        #[arg(long)]
        iterate: bool,
    },
    /// Three-way strong atomicity report.
    Sa { file: PathBuf },
    /// Run the verification suite.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenFamily {
    Chain,
    Boolean,
    Diamond,
    M3,
    N5,
    Product,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    All,
    Stable,
    Prenucleus,
    Closure,
    Nucleus,
}

impl From<FamilyArg> for FamilyKind {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::All => FamilyKind::All,
            FamilyArg::Stable => FamilyKind::Stable,
            FamilyArg::Prenucleus => FamilyKind::Prenucleus,
            FamilyArg::Closure => FamilyKind::Closure,
            FamilyArg::Nucleus => FamilyKind::Nucleus,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum DeriveOp {
    Soc,
    Cbd,
}

/// Ok(true) means the command found a failing law.
type Outcome = idiomlab::Result<bool>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let o = cli.opts;
    let cfg = RunConfig {
        max_lattice_size: o.max_lattice_size,
        max_enumeration: o.max_enumeration,
        second_level_bound: o.second_level_bound,
        seed: o.seed,
        cache_dir: o.cache_dir,
        format: o.format.unwrap_or(Format::Text),
    };
    let result = cfg.validate().and_then(|_| run(cli.cmd, &cfg, o.format));
    match result {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_bound() { 3 } else { 2 })
        }
    }
}

fn load(path: &Path, cfg: &RunConfig) -> idiomlab::Result<FiniteLattice> {
    let lat = io::read_lattice(path)?;
    if lat.len() > cfg.max_lattice_size {
        return Err(Error::TooLarge {
            size: lat.len(),
            bound: cfg.max_lattice_size,
        });
    }
    Ok(lat)
}

fn emit(
    format: Format,
    value: &impl serde::Serialize,
    text: impl FnOnce() -> String,
) -> idiomlab::Result<()> {
    match format {
        Format::Json => print!("{}", io::to_pretty(value)?),
        Format::Text => print!("{}", text()),
    }
    Ok(())
}

fn run(cmd: Cmd, cfg: &RunConfig, format: Option<Format>) -> Outcome {
    let fmt = format.unwrap_or(Format::Text);
    match cmd {
        Cmd::Gen {
            family,
            params,
            out,
        } => {
            let lat = gen(family, &params)?;
            io::write_json(&out, &LatticeDoc::of(&lat))?;
            emit(
                fmt,
                &json!({"written": out, "digest": lat.digest()}),
                || {
                    format!(
                        "wrote {} ({} elements) to {}\n",
                        lat.name(),
                        lat.len(),
                        out.display()
                    )
                },
            )?;
            Ok(false)
        }
        Cmd::Check { file } => {
            let lat = load(&file, cfg)?;
            let show = |w: Option<[usize; 3]>| w.map(|t| t.map(|x| lat.label(x).to_string()));
            let m = show(lat.check_modular().witness());
            let d = show(lat.check_distributive().witness());
            let doc = json!({
                "lattice": lat.digest(), "size": lat.len(),
                "modular": m.is_none(), "modular_witness": m,
                "distributive": d.is_none(), "distributive_witness": d,
            });
            emit(fmt, &doc, || {
                let line = |name: &str, w: &Option<[String; 3]>| match w {
                    None => format!("{name}: yes\n"),
                    Some(t) => format!("{name}: no (witness {}, {}, {})\n", t[0], t[1], t[2]),
                };
                format!(
                    "{} with {} elements, digest {}\n{}{}",
                    lat.name(),
                    lat.len(),
                    lat.digest().to_hex(),
                    line("modular", &m),
                    line("distributive", &d)
                )
            })?;
            Ok(false)
        }
        Cmd::Inflators { file, family } => {
            let lat = load(&file, cfg)?;
            let f = OperatorLattice::enumerate(&lat, family.into(), cfg.max_enumeration)?;
            emit(fmt, &OperatorLatticeDoc::of(&f), || {
                let mut s = format!("{} {} inflators\n", f.len(), f.kind());
                for (i, d) in f.members().iter().enumerate() {
                    s += &format!("d{i} {}\n", d.display(&lat));
                }
                s
            })?;
            Ok(false)
        }
        Cmd::Totalizer {
            file,
            inflator,
            oracle,
        } => extremum(cfg, fmt, &file, &inflator, oracle, Extremum::Totalizer),
        Cmd::Equalizer {
            file,
            inflator,
            oracle,
        } => extremum(cfg, fmt, &file, &inflator, oracle, Extremum::Equalizer),
        Cmd::Derive { file, op, closure } => {
            let lat = load(&file, cfg)?;
            let u = Intervals::new(&lat);
            let d = match op {
                DeriveOp::Soc => u.soc()?,
                DeriveOp::Cbd => u.cbd()?,
            };
            let mut doc = json!({"derivative": InflatorDoc::of(&lat, &d)});
            let mut text = format!("{}\n", d.display(&lat));
            if closure {
                let (c, _) = d.infty(&lat);
                let r = dimensions::d_length(&lat, &d)?;
                let trace: Vec<&str> = r.trace.iter().map(|&x| lat.label(x)).collect();
                text += &format!(
                    "closure {}\ntrace {}\n",
                    c.display(&lat),
                    trace.join(" -> ")
                );
                doc["closure"] = serde_json::to_value(InflatorDoc::of(&lat, &c))?;
                doc["trace"] = json!(trace);
            }
            emit(fmt, &doc, || text)?;
            Ok(false)
        }
        Cmd::Nuclei { file } => {
            let lat = load(&file, cfg)?;
            let doc = cached(cfg, &lat, "nuclei", || {
                Ok(NucleiDoc::of(&NucleusLattice::new(
                    &lat,
                    cfg.max_enumeration,
                )?))
            })?;
            emit(fmt, &doc, || {
                let mut s = format!(
                    "{} nuclei, frame: {}\n",
                    doc.family.members.len(),
                    doc.frame
                );
                for (i, m) in doc.family.members.iter().enumerate() {
                    let parts: Vec<String> =
                        m.map.iter().map(|(a, b)| format!("{a}↦{b}")).collect();
                    s += &format!("d{i} {{{}}}\n", parts.join(", "));
                }
                s
            })?;
            Ok(false)
        }
        Cmd::Gab { file, iterate } => {
            let lat = load(&file, cfg)?;
            let nl = NucleusLattice::new(&lat, cfg.max_enumeration)?;
            let gab = nl.gab_map()?;
            let mut doc = json!({"gab": io::gab_table(&gab)});
            let mut text: String = (0..nl.len())
                .map(|i| format!("d{i} -> d{}\n", gab.at(i)))
                .collect();
            if iterate {
                let r = dimensions::gab_dimension(&nl)?;
                text += &format!("trace {:?}, reaches top: {}\n", r.trace, r.verdict);
                doc["dimension"] = serde_json::to_value(&r)?;
            }
            emit(fmt, &doc, || text)?;
            Ok(false)
        }
        Cmd::Sa { file } => {
            let lat = load(&file, cfg)?;
            let r = dimensions::strongly_atomic(&lat)?;
            emit(fmt, &r, || {
                let s = r.sub_verdicts.unwrap_or_default();
                format!(
                    "strongly atomic: {}\ndefinition: {}\nsoc closure reaches top: {}\nt(soc closure) = id: {}\nsteps: {}\n",
                    r.verdict, s[0], s[1], s[2], r.steps
                )
            })?;
            Ok(!r.sub_verdicts.is_some_and(|s| s[0] == s[1] && s[1] == s[2]))
        }
        Cmd::Verify { file, suite, out } => {
            let lat = load(&file, cfg)?;
            let key = format!(
                "verify-{}",
                serde_json::to_value(suite)?.as_str().unwrap_or("all")
            );
            let report: Report = cached(cfg, &lat, &key, || Ok(suite::run(&lat, cfg, suite)))?;
            if let Some(out) = out {
                io::write_json(&out, &report)?;
            }
            emit(format.unwrap_or(Format::Json), &report, || {
                let mut s = String::new();
                for c in &report.checks {
                    let status = serde_json::to_value(c.status)
                        .map(|v| v.as_str().unwrap_or("").to_string())
                        .unwrap_or_default();
                    s += &format!("{:<30} {status}", c.id);
                    if let Some(n) = &c.note {
                        s += &format!("  {n}");
                    }
                    if let Some(w) = &c.witness {
                        s += &format!("  witness {w}");
                    }
                    s.push('\n');
                }
                s
            })?;
            Ok(!report.passed())
        }
    }
}

fn cached<T, F>(cfg: &RunConfig, lat: &FiniteLattice, op: &str, compute: F) -> idiomlab::Result<T>
where
    T: serde::Serialize + serde::de::DeserializeOwned,
    F: FnOnce() -> idiomlab::Result<T>,
{
    match Cache::from_config(cfg) {
        Some(cache) => cache.get_or_compute(lat, op, cfg, compute),
        None => compute(),
    }
}

fn extremum(
    cfg: &RunConfig,
    fmt: Format,
    file: &Path,
    inflator: &Path,
    oracle: bool,
    which: Extremum,
) -> Outcome {
    let lat = load(file, cfg)?;
    let d = io::read_inflator(inflator, &lat)?;
    let closed = match which {
        Extremum::Totalizer => d.totalizer(&lat),
        Extremum::Equalizer => d.equalizer(&lat),
    };
    let mut doc = json!({"result": InflatorDoc::of(&lat, &closed)});
    let mut text = format!("{}\n", closed.display(&lat));
    let mut mismatch = false;
    if oracle {
        let f = OperatorLattice::enumerate(&lat, FamilyKind::All, cfg.max_enumeration)?;
        let brute: Inflator = brute_extremum(&f, &d, which)?;
        mismatch = brute != closed;
        text += &format!(
            "oracle {} ({})\n",
            brute.display(&lat),
            if mismatch { "differs" } else { "agrees" }
        );
        doc["oracle"] = serde_json::to_value(InflatorDoc::of(&lat, &brute))?;
        doc["agrees"] = json!(!mismatch);
    }
    emit(fmt, &doc, || text)?;
    Ok(mismatch)
}

fn parse_size(params: &[String], i: usize) -> idiomlab::Result<usize> {
    params
        .get(i)
        .ok_or_else(|| Error::BadParameter(format!("missing parameter {}", i + 1)))?
        .parse()
        .map_err(|_| Error::BadParameter(format!("`{}` is not a number", params[i])))
}

fn simple_family(text: &str) -> idiomlab::Result<FiniteLattice> {
    let (name, n) = text.split_once(':').unwrap_or((text, ""));
    let size = || {
        n.parse::<usize>()
            .map_err(|_| Error::BadParameter(format!("bad family `{text}`")))
    };
    match name {
        "chain" => generate(Family::Chain(size()?)),
        "boolean" => generate(Family::Boolean(size()?)),
        "diamond" => generate(Family::Diamond(size()?)),
        "m3" => generate(Family::DiamondM3),
        "n5" => generate(Family::PentagonN5),
        _ => Err(Error::BadParameter(format!("bad family `{text}`"))),
    }
}

fn gen(family: GenFamily, params: &[String]) -> idiomlab::Result<FiniteLattice> {
    match family {
        GenFamily::Chain => generate(Family::Chain(parse_size(params, 0)?)),
        GenFamily::Boolean => generate(Family::Boolean(parse_size(params, 0)?)),
        GenFamily::Diamond => generate(Family::Diamond(parse_size(params, 0)?)),
        GenFamily::M3 => generate(Family::DiamondM3),
        GenFamily::N5 => generate(Family::PentagonN5),
        GenFamily::Product => {
            if params.len() != 2 {
                return Err(Error::BadParameter(
                    "product takes two families, e.g. chain:2 chain:3".into(),
                ));
            }
            let (l, r) = (simple_family(&params[0])?, simple_family(&params[1])?);
            generate(Family::Product(&l, &r))
        }
        GenFamily::Random => {
            let seed = parse_size(params, 0)? as u64;
            let size = if params.len() > 1 {
                parse_size(params, 1)?
            } else {
                8
            };
            random_modular(seed, size)
        }
    }
}
