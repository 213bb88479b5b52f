use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use homcode::covering::{d_cover, find_gluing_cycle, CoverSpec};
use homcode::css::{build_css, CodeReport, Provenance};
use homcode::distance::{binomial, distance, DistanceError, Method, DEFAULT_BUDGET};
use homcode::generators::{builtin, gen_even, gen_odd, Builtin, EvenFamilyParams, OddFamilyParams};
use homcode::gf2::to_spm;
use homcode::map::{parse_map, to_map_string_with_comments, PolygonalMap};
use homcode::tables;

/// Cross-check bfs distances with the oracle up to this many qubits.
const CROSS_CHECK_MAX_N: usize = 64;

#[derive(Parser)]
#[command(
    name = "homcode",
    version,
    about = "Homological CSS codes from polygonal maps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a self-dual equivelar map.
    Gen {
        family: FamilyArg,
        m1: u32,
        m2: u64,
        /// Output .map file (default: standard output).
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Write one of the built-in maps (n1, k3).
    Builtin {
        name: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Print counts, type, orientability and dual of a map.
    Info { map: PathBuf },
    /// Build the CSS code of a map and print its parameters.
    Code {
        map: PathBuf,
        #[arg(long, value_enum, default_value_t = DistanceArg::Bfs)]
        distance: DistanceArg,
        /// Weight cap for the oracle (default: largest within budget).
        #[arg(long)]
        cap: Option<usize>,
        /// Write H_X as .spm.
        #[arg(long)]
        hx: Option<PathBuf>,
        /// Write H_Z as .spm.
        #[arg(long)]
        hz: Option<PathBuf>,
        /// Print a minimum-weight logical operator.
        #[arg(long)]
        witness: bool,
    },
    /// Build the d-fold cyclic cover of a map.
    Cover {
        map: PathBuf,
        d: usize,
        /// Gluing cycle as 1-based vertex ids, e.g. "1,2,6".
        #[arg(long)]
        cycle: Option<String>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Reproduce a parameter table.
    Table {
        which: TableArg,
        #[arg(long, default_value_t = 4)]
        m1_max: u32,
        #[arg(long, default_value_t = 3)]
        m2_max: u64,
        #[arg(long, default_value_t = 3)]
        d_max: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Odd,
    Even,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DistanceArg {
    Bfs,
    Oracle,
    None,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableArg {
    #[value(name = "t1-k3")]
    T1K3,
    #[value(name = "t2-families")]
    T2Families,
    #[value(name = "t3-covers")]
    T3Covers,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn io(path: &Path, err: std::io::Error) -> Self {
        Self {
            code: 1,
            message: format!("{}: {err}", path.display()),
        }
    }

    fn domain(err: impl std::fmt::Display) -> Self {
        Self {
            code: 2,
            message: err.to_string(),
        }
    }

    fn regression(message: String) -> Self {
        Self { code: 3, message }
    }
}

type CmdResult = Result<(), Failure>;

fn summary(map: &PolygonalMap) -> String {
    format!(
        "V={} E={} F={} chi={} type={}",
        map.num_vertices(),
        map.num_edges(),
        map.num_faces(),
        map.euler_characteristic(),
        map.vertex_type()
    )
}

fn budget() -> Result<u128, Failure> {
    match std::env::var("HOMCODE_BUDGET") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Failure::domain(format!("HOMCODE_BUDGET is not an integer: {s:?}"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

/// Largest weight whose subset count fits the budget.
fn default_cap(n: usize, budget: u128) -> usize {
    (1..=n)
        .take_while(|&w| binomial(n, w) <= budget)
        .last()
        .unwrap_or(1)
}

fn read_map(path: &Path) -> Result<(PolygonalMap, Provenance), Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
    let file = parse_map(&text).map_err(|e| Failure::domain(format!("{}: {e}", path.display())))?;
    let provenance = match file.comment_value("src") {
        Some(src) => Provenance::Label(src.to_string()),
        None => Provenance::File(path.display().to_string()),
    };
    Ok((file.map, provenance))
}

/// Writes the map to `out`, or to standard output when absent. Status lines
/// go to standard output with a file and to standard error without one.
fn emit_map(
    map: &PolygonalMap,
    provenance: &Provenance,
    out: Option<&Path>,
    status: &[String],
) -> CmdResult {
    let text = to_map_string_with_comments(map, &[format!("src={provenance}")]);
    let lines = status.iter().cloned().chain([summary(map)]);
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::io(path, e))?;
            lines.for_each(|l| println!("{l}"));
        }
        None => {
            print!("{text}");
            lines.for_each(|l| eprintln!("{l}"));
        }
    }
    Ok(())
}

fn cmd_gen(family: FamilyArg, m1: u32, m2: u64, out: Option<&Path>) -> CmdResult {
    let (map, provenance) = match family {
        FamilyArg::Odd => {
            let p = OddFamilyParams::new(m1, m2).map_err(Failure::domain)?;
            (
                gen_odd(&p).map_err(Failure::domain)?,
                Provenance::OddFamily { m1, m2 },
            )
        }
        FamilyArg::Even => {
            let p = EvenFamilyParams::new(m1, m2).map_err(Failure::domain)?;
            (
                gen_even(&p).map_err(Failure::domain)?,
                Provenance::EvenFamily { m1, m2 },
            )
        }
    };
    emit_map(&map, &provenance, out, &[])
}

fn cmd_builtin(name: &str, out: Option<&Path>) -> CmdResult {
    let which: Builtin = name.parse().map_err(Failure::domain)?;
    emit_map(
        &builtin(which),
        &Provenance::Builtin(which.name().into()),
        out,
        &[],
    )
}

fn cmd_info(path: &Path) -> CmdResult {
    let (map, _) = read_map(path)?;
    println!("{}", summary(&map));
    println!("orientable={}", map.is_orientable());
    match map.dual() {
        Ok(dual) => {
            println!("dual: {}", summary(&dual));
            println!("self-dual={}", map.is_isomorphic(&dual));
        }
        Err(e) => println!("dual: not a simple map ({e})"),
    }
    Ok(())
}

struct CodeArgs<'a> {
    distance: DistanceArg,
    cap: Option<usize>,
    hx: Option<&'a Path>,
    hz: Option<&'a Path>,
    witness: bool,
}

fn cmd_code(path: &Path, args: CodeArgs<'_>) -> CmdResult {
    let (map, provenance) = read_map(path)?;
    let code = build_css(&map).map_err(Failure::domain)?;
    for (target, matrix) in [(args.hx, code.hx()), (args.hz, code.hz())] {
        if let Some(p) = target {
            fs::write(p, to_spm(matrix)).map_err(|e| Failure::io(p, e))?;
        }
    }

    let budget = budget()?;
    let mut witness = None;
    let d_min = if code.k() == 0 {
        if args.distance != DistanceArg::None {
            eprintln!("note: k=0, the code encodes nothing and has no distance");
        }
        None
    } else {
        match args.distance {
            DistanceArg::None => None,
            DistanceArg::Bfs => {
                let r = distance(&code, &map, Method::Bfs).map_err(Failure::domain)?;
                if code.n() <= CROSS_CHECK_MAX_N {
                    cross_check(&code, &map, r.d_min, budget)?;
                }
                witness = r.delta.filter(|w| w.len() == r.d_min).or(r.delta_star);
                Some(r.d_min)
            }
            DistanceArg::Oracle => {
                let cap = args.cap.unwrap_or_else(|| default_cap(code.n(), budget));
                match distance(&code, &map, Method::Oracle { cap, budget }) {
                    Ok(r) => {
                        witness = r.delta.or(r.delta_star);
                        Some(r.d_min)
                    }
                    Err(DistanceError::Unresolved { cap }) => {
                        eprintln!("note: no logical operator of weight <= {cap}");
                        None
                    }
                    Err(e @ DistanceError::MethodTooExpensive { .. }) => {
                        return Err(Failure::regression(e.to_string()))
                    }
                    Err(e) => return Err(Failure::domain(e)),
                }
            }
        }
    };

    println!("{}", CodeReport::new(&code, &map, d_min, provenance));
    if args.witness {
        if let Some(w) = witness {
            println!("witness={}", w.render(code.edges()));
        }
    }
    Ok(())
}

fn cross_check(code: &homcode::CssCode, map: &PolygonalMap, d: usize, budget: u128) -> CmdResult {
    if binomial(code.n(), d) > budget {
        return Ok(());
    }
    let r = distance(code, map, Method::Oracle { cap: d, budget });
    match r {
        Ok(r) if r.d_min == d => Ok(()),
        other => Err(Failure::regression(format!(
            "bfs distance {d} disagrees with the oracle: {other:?}"
        ))),
    }
}

fn parse_cycle(text: &str, num_vertices: usize) -> Result<Vec<usize>, Failure> {
    text.split(',')
        .map(|t| match t.trim().parse::<usize>() {
            Ok(v) if (1..=num_vertices).contains(&v) => Ok(v - 1),
            _ => Err(Failure::domain(format!(
                "bad cycle vertex {t:?} in {text:?}"
            ))),
        })
        .collect()
}

fn cmd_cover(path: &Path, d: usize, cycle: Option<&str>, out: Option<&Path>) -> CmdResult {
    let (map, provenance) = read_map(path)?;
    let cycle = match cycle {
        Some(text) => parse_cycle(text, map.num_vertices())?,
        None => find_gluing_cycle(&map).map_err(Failure::domain)?,
    };
    let one_based: Vec<usize> = cycle.iter().map(|v| v + 1).collect();
    let spec = CoverSpec::new(cycle, d).map_err(Failure::domain)?;
    let cover = d_cover(&map, &spec).map_err(Failure::domain)?;
    let rendered: Vec<String> = one_based.iter().map(usize::to_string).collect();
    let status = [format!("cycle={}", rendered.join(","))];
    let provenance = Provenance::Cover {
        base: Box::new(provenance),
        folds: d,
        cycle: one_based,
    };
    emit_map(&cover, &provenance, out, &status)
}

fn cmd_table(which: TableArg, m1_max: u32, m2_max: u64, d_max: usize) -> CmdResult {
    let table = match which {
        TableArg::T1K3 => tables::t1_k3(),
        TableArg::T2Families => tables::t2_families(m1_max, m2_max),
        TableArg::T3Covers => tables::t3_covers(d_max),
    }
    .map_err(Failure::domain)?;
    print!("{}", table.render());
    if table.all_ok() {
        Ok(())
    } else {
        Err(Failure::regression(
            "computed values disagree with the formulas".into(),
        ))
    }
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Gen {
            family,
            m1,
            m2,
            out,
        } => cmd_gen(family, m1, m2, out.as_deref()),
        Command::Builtin { name, out } => cmd_builtin(&name, out.as_deref()),
        Command::Info { map } => cmd_info(&map),
        Command::Code {
            map,
            distance,
            cap,
            hx,
            hz,
            witness,
        } => cmd_code(
            &map,
            CodeArgs {
                distance,
                cap,
                hx: hx.as_deref(),
                hz: hz.as_deref(),
                witness,
            },
        ),
        Command::Cover { map, d, cycle, out } => {
            cmd_cover(&map, d, cycle.as_deref(), out.as_deref())
        }
        Command::Table {
            which,
            m1_max,
            m2_max,
            d_max,
        } => cmd_table(which, m1_max, m2_max, d_max),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
