use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use tiltstab::classify::{classify_p1_heart, HeartLabel, P1Objects, DEFAULT_TWIST_SEARCH};
use tiltstab::document::{parse_rational, AlgebraDocument, Options};
use tiltstab::export::{graph_to_dot, graph_to_json, object_json, walls_to_json, ObjectJson};
use tiltstab::verify::{self, Suite, DEFAULT_SEED};
use tiltstab::CliError;
use tiltstab_core::hearts::{Heart, Workbench};
use tiltstab_core::homotopy::ObjId;
use tiltstab_core::quiver::{global_dimension, vc_zero_algebra, BoundQuiverAlgebra, GlobalDimension};
use tiltstab_core::stability::{CentralCharge, Charge, TilePoint};

const DEFAULT_GLDIM_BOUND: usize = 8;

#[derive(Parser)]
#[command(name = "tiltstab", version, about = "Hearts, simple tilts and stability conditions for bound quiver algebras")]
struct Cli {
    /// Algebra document in JSON.
    #[arg(long, global = true, conflicts_with = "builtin")]
    input: Option<PathBuf>,
    /// Built-in algebra: p1-constructible or kronecker.
    #[arg(long, global = true)]
    builtin: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for randomized checks; TILTSTAB_SEED overrides the default.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    length_bound: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Dot,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an algebra document and summarize the algebra.
    Algebra {
        #[command(subcommand)]
        action: AlgebraAction,
    },
    /// Operations on the standard heart, or on a heart reached by tilts.
    Heart {
        #[command(subcommand)]
        action: HeartAction,
    },
    /// Breadth-first exchange graph of the standard heart.
    Explore {
        #[arg(long, default_value_t = 2)]
        depth: usize,
        /// Enumerate every node's indecomposables.
        #[arg(long)]
        check_finite: bool,
    },
    /// Wall diagram of the standard heart (two simples only).
    Walls,
    /// Harder–Narasimhan filtrations of the standard heart's indecomposables.
    Hn {
        /// Charges of the simples, as `re:im` pairs separated by commas,
        /// e.g. `-1:1,2:1/2`.
        #[arg(long, allow_hyphen_values = true)]
        charge: String,
    },
    /// Twist the standard heart by one of its spherical simples.
    Twist {
        #[arg(long)]
        simple: usize,
        /// Apply the inverse twist instead.
        #[arg(long)]
        inverse: bool,
    },
    /// Run a verification suite: p1, kronecker or core.
    Verify { suite: String },
}

#[derive(Subcommand)]
enum AlgebraAction {
    Check,
}

#[derive(Subcommand)]
enum HeartAction {
    Indecomposables {
        /// Tilt sequence such as `L0 R1` applied to the standard heart first.
        #[arg(long, num_args = 0..)]
        path: Vec<String>,
    },
    Torsion {
        #[arg(long, num_args = 0..)]
        path: Vec<String>,
    },
    Tilt {
        #[arg(long, num_args = 1..)]
        path: Vec<String>,
    },
}

struct Session {
    wb: Workbench,
    doc: AlgebraDocument,
    p1: Option<P1Objects>,
}

impl Session {
    fn open(cli: &Cli) -> Result<Session, CliError> {
        let doc = match (&cli.input, &cli.builtin) {
            (Some(path), _) => {
                let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                AlgebraDocument::from_json(&text)?
            }
            (None, Some(name)) => AlgebraDocument::builtin(name)
                .ok_or_else(|| CliError::Schema(format!("unknown builtin `{name}`; expected p1-constructible or kronecker")))?,
            (None, None) => AlgebraDocument::builtin("p1-constructible").expect("builtin exists"),
        };
        let alg = doc.to_algebra()?;
        let mut wb = Workbench::new(alg)?;
        if let Some(n) = cli.length_bound.or(doc.options.length_bound) {
            wb.length_bound = n;
        }
        if let Some(n) = doc.options.tilt_bound {
            wb.tilt_bound = n;
        }
        let p1 = if same_algebra(wb.alg(), &vc_zero_algebra()) { Some(P1Objects::new(&mut wb)?) } else { None };
        Ok(Session { wb, doc, p1 })
    }

    fn label(&mut self, h: &Heart) -> Result<HeartLabel, CliError> {
        match &self.p1 {
            Some(refs) => Ok(classify_p1_heart(&mut self.wb, &refs.clone(), h, DEFAULT_TWIST_SEARCH)?),
            None => Ok(HeartLabel::unknown()),
        }
    }

    /// The standard heart followed by tilts written `L<i>` or `R<i>`.
    fn heart_along(&mut self, path: &[String]) -> Result<Heart, CliError> {
        let mut h = self.wb.standard_heart()?;
        for step in path {
            let bad = || CliError::Schema(format!("tilt step `{step}` is not of the form L<i> or R<i>"));
            let (dir, idx) = step.split_at(step.len().min(1));
            let i: usize = idx.parse().map_err(|_| bad())?;
            h = match dir {
                "L" => self.wb.left_tilt_simple(&h, i)?,
                "R" => self.wb.right_tilt_simple(&h, i)?,
                _ => return Err(bad()),
            };
        }
        Ok(h)
    }

    fn objects(&self, ids: &[ObjId]) -> Vec<ObjectJson> {
        ids.iter().map(|&x| object_json(&self.wb, x)).collect()
    }
}

fn same_algebra(a: &BoundQuiverAlgebra, b: &BoundQuiverAlgebra) -> bool {
    let strip = |alg| {
        let d = AlgebraDocument::from_algebra(alg, Options::default());
        (d.vertices, d.arrows, d.relations)
    };
    strip(a) == strip(b)
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output serializes")
}

fn parse_charge(text: &str, n: usize) -> Result<CentralCharge, CliError> {
    let values = text
        .split(',')
        .map(|pair| {
            let (re, im) = pair
                .split_once(':')
                .ok_or_else(|| CliError::Schema(format!("charge `{pair}` is not of the form re:im")))?;
            Ok(Charge::new(parse_rational(re)?, parse_rational(im)?))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    if values.len() != n {
        return Err(CliError::Schema(format!("expected {n} charges, found {}", values.len())));
    }
    Ok(CentralCharge::new(values))
}

fn seed(cli: &Cli) -> Result<u64, CliError> {
    if let Some(s) = cli.seed {
        return Ok(s);
    }
    match std::env::var("TILTSTAB_SEED") {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Schema(format!("TILTSTAB_SEED `{v}` is not an integer"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

#[derive(Serialize)]
struct AlgebraSummary {
    dimension: usize,
    vertices: Vec<String>,
    cartan: Vec<Vec<String>>,
    global_dimension: String,
    document: AlgebraDocument,
}

#[derive(Serialize)]
struct TorsionJson {
    torsion: Vec<ObjectJson>,
    tilted: Vec<ObjectJson>,
}

#[derive(Serialize)]
struct HeartJson {
    label: HeartLabel,
    name: String,
    simples: Vec<ObjectJson>,
}

#[derive(Serialize)]
struct HnJson {
    object: ObjectJson,
    factors: Vec<HnFactorJson>,
    mass: f64,
}

#[derive(Serialize)]
struct HnFactorJson {
    object: ObjId,
    class: Vec<i64>,
    phase: f64,
    mass: f64,
}

fn heart_json(s: &mut Session, h: &Heart) -> Result<HeartJson, CliError> {
    let label = s.label(h)?;
    Ok(HeartJson { label, name: label.name(), simples: s.objects(h.simples()) })
}

fn run(cli: &Cli) -> Result<String, CliError> {
    if let Command::Verify { suite } = &cli.command {
        let report = verify::run(Suite::parse(suite)?, seed(cli)?);
        return if report.passed() {
            Ok(match cli.format {
                Format::Json => json(&report),
                Format::Dot => report.to_string(),
            })
        } else {
            Err(CliError::Verification(format!("\n{report}")))
        };
    }
    let mut s = Session::open(cli)?;
    match &cli.command {
        Command::Algebra { action: AlgebraAction::Check } => {
            let alg = s.wb.alg().clone();
            let cartan = alg.cartan();
            let bound = s.doc.options.gldim_bound.unwrap_or(DEFAULT_GLDIM_BOUND);
            let gldim = match global_dimension(&alg, bound) {
                GlobalDimension::Exactly(d) => d.to_string(),
                GlobalDimension::AtLeast(d) => format!("at least {d}"),
            };
            let summary = AlgebraSummary {
                dimension: alg.dim(),
                vertices: alg.vertices().to_vec(),
                cartan: (0..cartan.rows()).map(|r| cartan.row(r).iter().map(|x| x.to_string()).collect()).collect(),
                global_dimension: gldim,
                document: AlgebraDocument::from_algebra(&alg, s.doc.options.clone()),
            };
            Ok(json(&summary))
        }
        Command::Heart { action } => match action {
            HeartAction::Indecomposables { path } => {
                let h = s.heart_along(path)?;
                let bound = s.wb.length_bound;
                let ind = s.wb.enumerate_indecomposables(&h, bound)?;
                Ok(json(&s.objects(&ind)))
            }
            HeartAction::Torsion { path } => {
                let h = s.heart_along(path)?;
                let mut out = Vec::new();
                for tt in s.wb.torsion_theories(&h)? {
                    let tilted = s.wb.tilt_at_torsion(&h, &tt.torsion)?;
                    let torsion: Vec<_> = tt.torsion.iter().copied().collect();
                    out.push(TorsionJson { torsion: s.objects(&torsion), tilted: s.objects(tilted.simples()) });
                }
                Ok(json(&out))
            }
            HeartAction::Tilt { path } => {
                let h = s.heart_along(path)?;
                Ok(json(&heart_json(&mut s, &h)?))
            }
        },
        Command::Explore { depth, check_finite } => {
            let h = s.wb.standard_heart()?;
            let g = s.wb.explore(&h, *depth, *check_finite);
            let labels = g.nodes.iter().map(|n| s.label(n)).collect::<Result<Vec<_>, _>>()?;
            Ok(match cli.format {
                Format::Dot => graph_to_dot(&g, &labels),
                Format::Json => graph_to_json(&s.wb, &g, &labels),
            })
        }
        Command::Walls => {
            let h = s.wb.standard_heart()?;
            let d = s.wb.wall_diagram(&h)?;
            Ok(match cli.format {
                Format::Json => walls_to_json(&s.wb, &d),
                Format::Dot => {
                    let mut out = String::from("graph walls {\n");
                    for (k, r) in d.regions.iter().enumerate() {
                        let label = s.label(&r.heart)?;
                        writeln!(out, "  r{k} [label=\"{}\", style=filled, fillcolor={}];", label.name(), label.tag.color()).unwrap();
                    }
                    let n = d.regions.len();
                    for k in 0..n {
                        let line = &d.half_lines[(k + 1) % n];
                        writeln!(out, "  r{k} -- r{} [label=\"{:?}\"];", (k + 1) % n, line.direction).unwrap();
                    }
                    out.push_str("}\n");
                    out
                }
            })
        }
        Command::Hn { charge } => {
            let h = s.wb.standard_heart()?;
            let z = parse_charge(charge, h.len())?;
            let p = TilePoint::new(h.clone(), z)?;
            let bound = s.wb.length_bound;
            let mut out = Vec::new();
            for x in s.wb.enumerate_indecomposables(&h, bound)? {
                let hn = s.wb.hn(&p, x)?;
                let factors = hn
                    .factors
                    .iter()
                    .map(|f| HnFactorJson { object: f.object, class: f.class.clone(), phase: f.phase(), mass: f.mass() })
                    .collect();
                out.push(HnJson { object: object_json(&s.wb, x), factors, mass: hn.mass() });
            }
            Ok(json(&out))
        }
        Command::Twist { simple, inverse } => {
            let h = s.wb.standard_heart()?;
            let sph = *h
                .simples()
                .get(*simple)
                .ok_or(tiltstab_core::Error::SimpleOutOfRange { index: *simple, len: h.len() })?;
            let t = if *inverse { s.wb.twist_inverse_heart(sph, &h)? } else { s.wb.twist_heart(sph, &h)? };
            Ok(json(&heart_json(&mut s, &t)?))
        }
        Command::Verify { .. } => unreachable!("handled above"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(mut out) => {
            if !out.ends_with('\n') {
                out.push('\n');
            }
            // a closed pipe (e.g. `| head`) is not an error of ours
            let _ = std::io::stdout().lock().write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("tiltstab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
