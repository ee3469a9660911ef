use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use arclift::fixtures;
use arclift::io::{self, Document};
use arclift::render::{render_bigon, render_diagram_ladders};
use arclift::solve::{
    brute_force_realize, realize_maximal, BruteForce, BruteLimits, RealizationResult,
};
use arclift::{Weight, WeightedArcDiagram};

const OK: u8 = 0;
const NOT_REALIZABLE: u8 = 1;
const INVALID: u8 = 2;
const INCOMPLETE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "arclift",
    version,
    about = "Realize weighted arc diagrams as lifts of bigon diagrams"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a diagram or picture document and report its invariants.
    Validate { file: PathBuf },
    /// Print the diagram a picture lifts to.
    Lift {
        picture: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decide whether a diagram is realizable; prints the picture on success.
    Realize {
        diagram: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Maximal)]
        method: Method,
        /// Brute-force bounds, e.g. `bigon_arcs=12,candidate_sets=500`.
        #[arg(long)]
        limits: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Draw a picture's bigon diagram, or a diagram's ladders, as SVG.
    Render {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Write a built-in substrate as a diagram document.
    Fixture {
        #[arg(value_parser = ["sq1", "hex3", "hexh"])]
        name: String,
        /// Comma-separated weights in arc order; zero by default.
        #[arg(long)]
        weights: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compare both solvers on random disk diagrams.
    Differential {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Maximal,
    Brute,
}

struct Failure(u8, String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(INVALID, e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(INVALID, format!("{}: {e}", path.display())))
}

fn write(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => {
            fs::write(p, text).map_err(|e| Failure(INVALID, format!("{}: {e}", p.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_limits(s: &str) -> Result<BruteLimits, Failure> {
    let mut limits = BruteLimits::default();
    for part in s.split(',').filter(|p| !p.trim().is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Failure(INVALID, format!("bad limit \"{part}\"")))?;
        let v: usize = v
            .trim()
            .parse()
            .map_err(|_| Failure(INVALID, format!("bad limit value \"{v}\"")))?;
        match k.trim() {
            "bigon_arcs" => limits.max_bigon_arcs = Some(v),
            "candidate_sets" => limits.max_candidate_sets = Some(v),
            other => return Err(Failure(INVALID, format!("unknown limit \"{other}\""))),
        }
    }
    Ok(limits)
}

fn verdict_code(r: &RealizationResult) -> u8 {
    match r {
        RealizationResult::Realizable(_) => OK,
        RealizationResult::NotRealizable(_) => NOT_REALIZABLE,
        RealizationResult::SolverIncomplete(_) => INCOMPLETE,
    }
}

fn validate(file: &Path) -> Result<u8, Failure> {
    let text = read(file)?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(io::IoError::from)?;
    let substrate = if value.get("bigon").is_some() {
        io::parse_picture_document(&text)?.substrate
    } else {
        io::parse_diagram_document(&text)?.substrate
    };
    let c = io::complex_of(&substrate)?;
    let report = c.validate();
    println!("vertices: {}", c.vertex_count());
    println!(
        "arcs: {} (expected {})",
        report.arc_count,
        c.expected_arc_count()
    );
    println!("euler characteristic: {}", report.euler_characteristic);
    println!("branching arcs: {}", c.branching_count());
    if !report.is_ok() {
        for v in &report.violations {
            eprintln!("violation: {v}");
        }
        return Ok(INVALID);
    }
    // The rest of the document is checked by a full parse.
    io::parse_any(&text)?;
    println!("ok");
    Ok(OK)
}

fn lift(picture: &Path, output: Option<&Path>) -> Result<u8, Failure> {
    let (p, _) = io::parse_picture(&read(picture)?)?;
    let Some(d) = p.lifted_diagram() else {
        return Err(Failure(
            NOT_REALIZABLE,
            "the picture lifts outside the substrate".into(),
        ));
    };
    write(output, &io::to_json(&io::diagram_document(&d)?))?;
    Ok(OK)
}

fn realize(
    diagram: &Path,
    method: Method,
    limits: Option<&str>,
    output: Option<&Path>,
) -> Result<u8, Failure> {
    let d = io::parse_diagram(&read(diagram)?)?;
    let r = match method {
        Method::Maximal => realize_maximal(&d),
        Method::Brute => brute_force_realize(
            &d,
            limits.map(parse_limits).transpose()?.unwrap_or_default(),
        ),
    };
    eprintln!("{r}");
    if let Some(p) = r.picture() {
        write(output, &io::to_json(&io::picture_document(p, Some(&d))?))?;
    }
    Ok(verdict_code(&r))
}

fn render(file: &Path, output: &Path) -> Result<u8, Failure> {
    let svg = match io::parse_any(&read(file)?)? {
        Document::Picture(p, _) => {
            let c = p.complex();
            let labels: Vec<String> = p
                .branching()
                .iter()
                .map(|a| c.arc_name(*a).to_string())
                .collect();
            render_bigon(p.bigon(), Some(&labels))
        }
        Document::Diagram(d) => render_diagram_ladders(&d)?,
    };
    write(Some(output), &svg)?;
    Ok(OK)
}

fn fixture(name: &str, weights: Option<&str>, output: Option<&Path>) -> Result<u8, Failure> {
    let c = match name {
        "sq1" => fixtures::sq1(),
        "hex3" => fixtures::hex3(),
        _ => fixtures::hexh(),
    };
    let m = c.arcs().len();
    let ws: Vec<Weight> = match weights {
        None => vec![Weight::zero(); m],
        Some(s) => s
            .split(',')
            .map(|w| w.trim().parse())
            .collect::<Result<_, _>>()?,
    };
    if ws.len() != m {
        return Err(Failure(
            INVALID,
            format!("{name} has {m} arcs, got {} weights", ws.len()),
        ));
    }
    let d = fixtures::weighted(c, &ws);
    write(output, &io::to_json(&io::diagram_document(&d)?))?;
    Ok(OK)
}

fn differential(seed: u64, count: usize) -> Result<u8, Failure> {
    let mut rng = StdRng::seed_from_u64(seed);
    let shapes: Vec<(usize, Vec<(usize, usize)>)> = [4, 6, 8]
        .into_iter()
        .flat_map(|n| {
            fixtures::polygon_triangulations(n)
                .into_iter()
                .map(move |t| (n, t))
        })
        .collect();
    let (mut agree, mut incomplete, mut contradictions) = (0, 0, 0);
    for _ in 0..count {
        let (n, t) = &shapes[rng.gen_range(0..shapes.len())];
        let c = fixtures::polygon_from_diagonals(*n, t);
        let ws: Vec<Weight> = (0..t.len())
            .map(|_| Weight::from_int(rng.gen_range(0..4)))
            .collect();
        let d: WeightedArcDiagram = fixtures::weighted(c, &ws);
        let a = realize_maximal(&d);
        let b = BruteForce::new(d.complex(), BruteLimits::default()).map(|bf| bf.solve(&d));
        let b = match b {
            Ok(b) => b,
            Err(r) => RealizationResult::SolverIncomplete(r),
        };
        match (verdict_code(&a), verdict_code(&b)) {
            (x, y) if x == y => agree += 1,
            (INCOMPLETE, _) | (_, INCOMPLETE) => incomplete += 1,
            _ => {
                contradictions += 1;
                eprintln!("disagreement on {n}-gon {t:?} weights {ws:?}: maximal {a}, brute {b}");
            }
        }
    }
    println!(
        "seed {seed}: {agree} agree, {incomplete} incomplete, {contradictions} contradictions"
    );
    Ok(if contradictions == 0 {
        OK
    } else {
        NOT_REALIZABLE
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate { file } => validate(file),
        Command::Lift { picture, output } => lift(picture, output.as_deref()),
        Command::Realize {
            diagram,
            method,
            limits,
            output,
        } => realize(diagram, *method, limits.as_deref(), output.as_deref()),
        Command::Render { file, output } => render(file, output),
        Command::Fixture {
            name,
            weights,
            output,
        } => fixture(name, weights.as_deref(), output.as_deref()),
        Command::Differential { seed, count } => differential(*seed, *count),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
