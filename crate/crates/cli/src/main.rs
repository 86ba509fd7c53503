use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use holant_core::classes::{class_report, is_affine, is_product, TractableClass};
use holant_core::dichotomy::{classify_csp, classify_pl_csp, classify_pl_csp2_symmetric, DichotomyVerdict};
use holant_core::fkt::{count_pm_fkt, evaluate_matchgate_grid, fragment_signature, kasteleyn_orient, realize_grid, MatchgateFragment, PlanarGraph};
use holant_core::grid::{brute_force_csp, csp_to_grid, eval_affine_csp, eval_product_csp, CspInstance, SignatureGrid};
use holant_core::holographic::{check_holant_invariance, transform_grid};
use holant_core::io::{self, GridDoc, SignatureTable};
use holant_core::{gen, Error, Scalar, Signature, Transform2x2};

#[derive(Parser)]
#[command(name = "holant", version, about = "Tractability classifier and exact evaluators for Boolean #CSP and Holant problems")]
struct Cli {
    /// Named-signature table (JSON object of name to signature).
    #[arg(long, global = true)]
    table: Option<PathBuf>,
    /// Seed for randomized verification.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for the evaluators.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the result here instead of standard output.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Pl-#CSP verdict for a signature set.
    Classify {
        input: PathBuf,
        /// Check each holding class on this many random instances.
        #[arg(long, default_value_t = 0)]
        verify: usize,
    },
    /// #CSP verdict (no planarity) for a signature set.
    ClassifyCsp {
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        verify: usize,
    },
    /// Pl-#CSP² verdict for a set of symmetric signatures.
    ClassifyCsp2 { input: PathBuf },
    /// Value of a grid or #CSP instance.
    Eval {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Auto)]
        mode: Mode,
    },
    /// Holographic transformation of a grid or signature set.
    Transform {
        input: PathBuf,
        /// A name such as H2 or diag(1,i), or a JSON 2x2 matrix.
        #[arg(short = 't', long = "transform")]
        transform: String,
    },
    /// Signature and class memberships of a grid with dangling edges.
    Gadget { input: PathBuf },
    /// Perfect-matching count of a planar graph, or signature of a fragment.
    Fkt { input: PathBuf },
    /// Holant values before and after a holographic transformation.
    CheckInvariance {
        input: PathBuf,
        #[arg(short = 't', long = "transform")]
        transform: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Auto,
    Brute,
    Affine,
    Product,
    Fkt,
}

enum Failure {
    Parse(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(m) => Failure::Parse(m),
            e => Failure::Domain(e),
        }
    }
}

type Outcome<T> = Result<T, Failure>;

fn read(path: &Path) -> Outcome<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("results serialize")
}

fn parse_transform(text: &str) -> Outcome<Transform2x2> {
    if let Ok(t) = io::from_json::<Transform2x2>(text) {
        return Ok(t);
    }
    Transform2x2::named(text).ok_or_else(|| Failure::Parse(format!("unknown transform {text:?}")))
}

/// Peeks at the top-level keys to tell the file kinds apart.
fn has_key(text: &str, key: &str) -> Outcome<bool> {
    let v: Value = io::from_json(text)?;
    Ok(v.get(key).is_some())
}

/// FKT on the grid itself, or after `H₂` when the grid is bipartite and
/// only the transformed signatures have realizations.
fn matchgate_route(grid: &SignatureGrid) -> Result<Option<(Scalar, &'static str)>, Error> {
    if !grid.dangling().is_empty() || !grid.is_planar() {
        return Ok(None);
    }
    let direct = realize_grid(grid)?;
    if direct.iter().all(Option::is_some) {
        return Ok(Some((evaluate_matchgate_grid(grid, &direct)?, "fkt")));
    }
    if grid.check_bipartite().is_ok() {
        let moved = transform_grid(grid, &Transform2x2::hadamard())?;
        let r = realize_grid(&moved)?;
        if r.iter().all(Option::is_some) {
            return Ok(Some((evaluate_matchgate_grid(&moved, &r)?, "fkt after H2")));
        }
    }
    Ok(None)
}

fn eval_csp(inst: &CspInstance, mode: Mode) -> Outcome<(Scalar, String)> {
    let sigs: Vec<&Signature> = inst.signatures().collect();
    let (value, how) = match mode {
        Mode::Brute => (brute_force_csp(inst)?, "brute force".to_string()),
        Mode::Affine => (eval_affine_csp(inst)?, "affine".into()),
        Mode::Product => (eval_product_csp(inst)?, "product".into()),
        Mode::Fkt => {
            let (v, how) = matchgate_route(&csp_to_grid(inst)?)?
                .ok_or_else(|| Failure::Domain(Error::InvalidGrid("no planar matchgate realization".into())))?;
            (v, how.into())
        }
        Mode::Auto => {
            if sigs.iter().all(|f| is_product(f)) {
                (eval_product_csp(inst)?, "product".into())
            } else if sigs.iter().all(|f| is_affine(f)) {
                (eval_affine_csp(inst)?, "affine".into())
            } else if let Some((v, how)) = matchgate_route(&csp_to_grid(inst)?)? {
                (v, how.into())
            } else {
                (brute_force_csp(inst)?, "brute force".into())
            }
        }
    };
    Ok((value, how))
}

fn eval_grid(grid: &SignatureGrid, mode: Mode) -> Outcome<(Scalar, String)> {
    match mode {
        Mode::Brute => Ok((grid.brute_force_holant()?, "brute force".into())),
        Mode::Affine | Mode::Product => Err(Failure::Domain(Error::InvalidGrid(format!(
            "{mode:?} mode evaluates #CSP instances, not grids"
        )))),
        Mode::Fkt => matchgate_route(grid)?
            .map(|(v, how)| (v, how.to_string()))
            .ok_or_else(|| Failure::Domain(Error::InvalidGrid("no planar matchgate realization".into()))),
        Mode::Auto => match matchgate_route(grid)? {
            Some((v, how)) => Ok((v, how.into())),
            None => Ok((grid.brute_force_holant()?, "brute force".into())),
        },
    }
}

/// Random instances over `set` checked against brute force for every
/// holding class with an evaluator.
fn verify(verdict: &DichotomyVerdict, set: &[Signature], count: usize, seed: u64) -> Outcome<Value> {
    let mut rng = gen::rng(seed);
    let mut out = Vec::new();
    for &class in &verdict.holding {
        let (mut agreed, mut skipped) = (0, 0);
        let mut disagreements = Vec::new();
        for k in 0..count {
            let inst = gen::random_csp_from_set(&mut rng, set, 6, 5)?;
            let fast = match class {
                TractableClass::Affine => Some(eval_affine_csp(&inst)?),
                TractableClass::Product => Some(eval_product_csp(&inst)?),
                _ => matchgate_route(&csp_to_grid(&inst)?)?.map(|(v, _)| v),
            };
            let Some(fast) = fast else {
                skipped += 1;
                continue;
            };
            if fast == brute_force_csp(&inst)? {
                agreed += 1;
            } else {
                disagreements.push(k);
            }
        }
        out.push(json!({
            "class": class,
            "instances": count,
            "agreed": agreed,
            "skipped": skipped,
            "disagreements": disagreements,
        }));
    }
    Ok(Value::Array(out))
}

fn run(cli: &Cli) -> Outcome<Value> {
    let table = match &cli.table {
        Some(p) => io::from_json::<SignatureTable>(&read(p)?)?,
        None => SignatureTable::new(),
    };
    let classify = |input: &Path, count: usize, f: fn(&[Signature]) -> DichotomyVerdict| -> Outcome<Value> {
        let set = io::parse_signature_set(&read(input)?, &table)?;
        let verdict = f(&set);
        let mut v = to_value(&verdict);
        if count > 0 {
            v["verification"] = verify(&verdict, &set, count, cli.seed)?;
        }
        Ok(v)
    };
    match &cli.command {
        Command::Classify { input, verify } => classify(input, *verify, classify_pl_csp),
        Command::ClassifyCsp { input, verify } => classify(input, *verify, classify_csp),
        Command::ClassifyCsp2 { input } => {
            let set = io::parse_signature_set(&read(input)?, &table)?;
            Ok(to_value(&classify_pl_csp2_symmetric(&set)?))
        }
        Command::Eval { input, mode } => {
            let text = read(input)?;
            let (value, how) = if has_key(&text, "vars")? {
                eval_csp(&io::parse_csp(&text, &table)?, *mode)?
            } else {
                eval_grid(&io::parse_grid(&text, &table)?, *mode)?
            };
            eprintln!("eval: {how}");
            Ok(json!({"value": value, "method": how}))
        }
        Command::Transform { input, transform } => {
            let t = parse_transform(transform)?;
            let text = read(input)?;
            if has_key(&text, "vertices")? {
                let grid = io::parse_grid(&text, &table)?;
                Ok(to_value(&GridDoc::from_grid(&transform_grid(&grid, &t)?)))
            } else {
                let set = io::parse_signature_set(&text, &table)?;
                Ok(to_value(&set.iter().map(|f| t.apply(f)).collect::<Vec<_>>()))
            }
        }
        Command::Gadget { input } => {
            let grid = io::parse_grid(&read(input)?, &table)?;
            let f = grid.gate_signature()?;
            Ok(json!({
                "signature": f,
                "symmetric": f.as_symmetric().map(|s| s.entries().to_vec()),
                "classes": class_report(&f),
            }))
        }
        Command::Fkt { input } => {
            let text = read(input)?;
            if has_key(&text, "dangling")? {
                let frag: MatchgateFragment = io::from_json(&text)?;
                Ok(json!({"signature": fragment_signature(&frag)?}))
            } else {
                let g: PlanarGraph = io::from_json(&text)?;
                Ok(json!({"value": count_pm_fkt(&g)?, "orientation": kasteleyn_orient(&g)?}))
            }
        }
        Command::CheckInvariance { input, transform } => {
            let t = parse_transform(transform)?;
            let grid = io::parse_grid(&read(input)?, &table)?;
            Ok(to_value(&check_holant_invariance(&grid, &t)?))
        }
    }
}

fn emit(cli: &Cli, v: &Value) -> std::io::Result<()> {
    let text = serde_json::to_string_pretty(v).expect("values serialize") + "\n";
    match &cli.output {
        Some(p) => std::fs::write(p, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("holant: {e}");
        }
    }
    let (value, code) = match run(&cli) {
        Ok(v) => (v, 0),
        Err(Failure::Parse(m)) => {
            eprintln!("holant: parse error: {m}");
            (json!({"error": "parse", "message": m}), 2)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("holant: {e}");
            (json!({"error": e.kind(), "message": e.to_string()}), 1)
        }
    };
    if let Err(e) = emit(&cli, &value) {
        eprintln!("holant: cannot write output: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
