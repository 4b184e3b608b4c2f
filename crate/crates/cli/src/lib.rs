//! Command-line front end: construction listings, classification, the
//! fixed-point table, induced permutations, dynamics reports, diagrams and
//! the full verification sweep.

pub mod diagram;
pub mod verify;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use spinor_torsion::classification::{verify_structure_theorem, ClassRegistry};
use spinor_torsion::clifford_perm::{
    induced_from_matrix, induced_permutations, CliffordPermutation,
};
use spinor_torsion::dynamics::{dynamics_report, eta_of, fixed_point_table, EntryPermutation};
use spinor_torsion::generators::{GeneratorIndex, GeneratorTable};
use spinor_torsion::monomial::type_of;
use spinor_torsion::torsion::DEFAULT_CAP;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "spinor-torsion",
    version,
    about = "Clifford actions on torsion points of the spinor torus"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest number of points enumerated before falling back to formulas.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    pub cap: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Vector generator matrices with their shapes and types.
    Gens {
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..=6))]
        k: u32,
    },
    /// Action classes with the structure checks.
    Classify {
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..=6))]
        k: u32,
    },
    /// Fixed points of the nonidentity classes at k = 2.
    Table1,
    /// Induced permutations of J_2.
    Perms {
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..=6))]
        k: u32,
    },
    /// Fixed points and translation constants of an entry permutation.
    Dynamics {
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..=4))]
        k: u32,
        #[arg(long, value_delimiter = ',', default_value = "2")]
        n: Vec<u32>,
        /// 1-based cycle notation, e.g. "(17)(28)". Defaults to every
        /// nonidentity class.
        #[arg(long)]
        sigma: Option<String>,
    },
    /// Shoelace diagram of a class, as text and SVG.
    Diagram {
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..=4))]
        k: u32,
        /// A member label such as e14, or a permutation such as A4∘(1)∘A1.
        #[arg(long = "class")]
        class: String,
    },
    /// Every verification suite.
    VerifyAll {
        #[arg(long = "k-max", default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..=6))]
        k_max: u32,
        #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
        n: Vec<u32>,
        /// Random entry permutations per (n, k) in the counting-law sweep.
        #[arg(long, default_value_t = 100)]
        fuzz_count: usize,
        #[arg(long, hide = true)]
        corrupt_generator: Option<u32>,
    },
}

/// What a command produced.
pub struct Output {
    pub text: String,
    pub json: Value,
    /// Extra files written alongside the main output.
    pub svg: Option<String>,
    pub passed: bool,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(s) => write!(f, "{s}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<spinor_torsion::Error> for CliError {
    fn from(e: spinor_torsion::Error) -> CliError {
        CliError::Usage(e.to_string())
    }
}

fn ok(text: String, json: Value) -> Output {
    Output {
        text,
        json,
        svg: None,
        passed: true,
    }
}

fn gens(k: u32) -> Result<Output, CliError> {
    let table = GeneratorTable::new(k)?;
    let mut text = String::new();
    let mut items = Vec::new();
    for i in 1..=2 * k {
        let m = table.vector(i);
        let g = GeneratorIndex::from_indices(k, &[i], false)?;
        let ty = type_of(m)?;
        let _ = writeln!(text, "{g}  {ty}  shape {}", m.shape());
        for line in m.to_string().lines() {
            let _ = writeln!(text, "    {line}");
        }
        items.push(json!({
            "generator": g.label(),
            "type": ty,
            "shape": m.shape(),
            "rows": m.shape().inverse().one_line(),
            "coefficients": m.coeffs().iter().map(|u| u.to_string()).collect::<Vec<_>>(),
        }));
    }
    Ok(ok(text, json!({ "k": k, "generators": items })))
}

fn classify(k: u32) -> Result<Output, CliError> {
    let registry = ClassRegistry::build(k)?;
    let mut text = String::new();
    for c in &registry.classes {
        let members: Vec<String> = c.members.iter().map(|g| g.label()).collect();
        let _ = writeln!(
            text,
            "[{}]  {}  shape {}  members {}",
            c.canonical(),
            c.entry_type,
            c.shape,
            members.join(" ")
        );
    }
    let structure = if k <= 5 {
        let r = verify_structure_theorem(k)?;
        text.push_str(&r.to_string());
        Some(r)
    } else {
        None
    };
    Ok(ok(
        text,
        json!({ "registry": registry, "structure": structure }),
    ))
}

fn table1() -> Result<Output, CliError> {
    let rows = fixed_point_table(2)?;
    let mut text = String::new();
    for row in &rows {
        let _ = writeln!(
            text,
            "{:<6} {}",
            format!("[{}]", row.class),
            row.fixed_points.join(" ")
        );
    }
    Ok(ok(text, json!(rows)))
}

fn perms(k: u32) -> Result<Output, CliError> {
    let mut text = String::new();
    let mut items = Vec::new();
    for (p, g) in induced_permutations(k)? {
        let eta = eta_of(&p);
        let _ = writeln!(
            text,
            "{:<16} {:<9} {:<8} rows {}  entries {}",
            p.label(),
            p.entry_type().to_string(),
            format!("[{g}]"),
            p.realized_permutation(),
            eta
        );
        items.push(json!({
            "label": p.label(),
            "switch_bits": p.switch_bits,
            "imaginary": p.imaginary,
            "class": g.label(),
            "rows": p.realized_permutation().to_string(),
            "entries": eta.to_string(),
        }));
    }
    Ok(ok(text, json!({ "k": k, "permutations": items })))
}

fn dynamics(
    k: u32,
    ns: &[u32],
    sigma: Option<&str>,
    cap: u64,
    seed: u64,
) -> Result<Output, CliError> {
    let sigmas: Vec<(String, EntryPermutation)> = match sigma {
        Some(s) => vec![(s.to_string(), EntryPermutation::parse(k, s)?)],
        None => {
            let table = GeneratorTable::new(k)?;
            ClassRegistry::build(k)?
                .classes
                .iter()
                .filter(|c| !c.canonical().is_empty())
                .map(|c| {
                    let p = induced_from_matrix(&table.rep(&c.canonical()))?;
                    Ok((format!("[{}] {}", c.canonical(), p.label()), eta_of(&p)))
                })
                .collect::<spinor_torsion::Result<_>>()?
        }
    };
    let mut text = String::new();
    let mut items = Vec::new();
    for (name, s) in &sigmas {
        for &n in ns {
            let r = dynamics_report(s, n, cap, seed)?;
            let how = if r.formula_derived {
                "formula"
            } else {
                "enumerated"
            };
            let _ = writeln!(
                text,
                "{name} σ={} n={n} p={} q={} |FP|={} |TC|={} product={} partition={} FP=TC={} ({how})",
                r.sigma_cycles,
                r.p,
                r.q,
                r.fp_count,
                r.tc_count,
                r.product,
                r.partition_ok,
                r.fp_equals_tc.map_or("n/a".to_string(), |b| b.to_string()),
            );
            items.push(serde_json::to_value(&r).expect("serializable"));
        }
    }
    Ok(ok(text, Value::Array(items)))
}

fn resolve_class(k: u32, id: &str) -> Result<(String, CliffordPermutation), CliError> {
    let registry = ClassRegistry::build(k)?;
    let table = GeneratorTable::new(k)?;
    if let Ok(class) = registry.by_label(id) {
        let p = induced_from_matrix(&table.rep(&class.canonical()))?;
        return Ok((format!("[{}]", class.canonical()), p));
    }
    let p = CliffordPermutation::parse_label(k, id)
        .map_err(|_| CliError::Usage(format!("unknown class {id:?} at k={k}")))?;
    let class = registry
        .classes
        .iter()
        .find(|c| {
            induced_from_matrix(&table.rep(&c.canonical()))
                .map(|q| q == p)
                .unwrap_or(false)
        })
        .ok_or_else(|| CliError::Usage(format!("unknown class {id:?} at k={k}")))?;
    Ok((format!("[{}]", class.canonical()), p))
}

fn diagram_cmd(k: u32, id: &str) -> Result<Output, CliError> {
    let (title, p) = resolve_class(k, id)?;
    let text = diagram::text(&title, &p);
    let arrows: Vec<[usize; 2]> = diagram::arrows(&p)
        .into_iter()
        .map(|(a, b)| [a + 1, b + 1])
        .collect();
    Ok(Output {
        json: json!({ "class": title, "label": p.label(), "type": p.entry_type(), "arrows": arrows }),
        svg: Some(diagram::svg(&title, &p)),
        text,
        passed: true,
    })
}

/// Runs a parsed command.
pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Gens { k } => gens(*k),
        Command::Classify { k } => classify(*k),
        Command::Table1 => table1(),
        Command::Perms { k } => perms(*k),
        Command::Dynamics { k, n, sigma } => dynamics(*k, n, sigma.as_deref(), cli.cap, cli.seed),
        Command::Diagram { k, class } => diagram_cmd(*k, class),
        Command::VerifyAll {
            k_max,
            n,
            fuzz_count,
            corrupt_generator,
        } => {
            if n.iter().any(|&x| x < 2) {
                return Err(CliError::Usage("every --n must be at least 2".into()));
            }
            let summary = verify::run(&verify::Settings {
                k_max: *k_max,
                ns: n.clone(),
                seed: cli.seed,
                cap: cli.cap,
                fuzz_count: *fuzz_count,
                corrupt: *corrupt_generator,
            });
            Ok(Output {
                text: summary.text(),
                passed: summary.passed,
                json: serde_json::to_value(&summary).expect("serializable"),
                svg: None,
            })
        }
    }
}

/// Parses `args`, runs the command and writes its output. Returns the
/// process exit code: 0 pass, 1 verification failure, 2 usage error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let output = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    match write_output(&cli, &output) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    }
    if output.passed {
        0
    } else {
        if let Some(failures) = output.json.get("failures") {
            let manifest = json!({ "passed": false, "failures": failures });
            eprintln!("{}", serde_json::to_string_pretty(&manifest).expect("json"));
        }
        1
    }
}

fn write_output(cli: &Cli, output: &Output) -> Result<(), CliError> {
    let body = match cli.format {
        Format::Text => output.text.clone(),
        Format::Json => serde_json::to_string_pretty(&output.json).expect("json") + "\n",
    };
    match &cli.out {
        Some(path) => {
            let is_svg = path.extension().is_some_and(|e| e == "svg");
            match (&output.svg, is_svg) {
                (Some(svg), true) => {
                    std::fs::write(path, svg).map_err(CliError::Io)?;
                    print!("{body}");
                }
                _ => std::fs::write(path, body).map_err(CliError::Io)?,
            }
        }
        None => print!("{body}"),
    }
    Ok(())
}
