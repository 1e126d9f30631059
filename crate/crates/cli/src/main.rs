use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use weylfactor::charlattice::{
    bigint_to_json, character_from_json, character_to_json, irreducible_character, weyl_dimension,
    weyl_numerator,
};
use weylfactor::factorizer::{
    factorize_character_with, factorize_numerator_product_with, FactorizeOptions,
};
use weylfactor::lindep::{
    class_independence_check, semisimple_spiked_products, spiked_products, spiked_products_general,
};
use weylfactor::rootsys::parse_weight_list;
use weylfactor::tensorops::{
    prv_component, prv_multiplicity_bound, product_character, tensor_decompose,
};
use weylfactor::verify::{verify, EXAMPLES};
use weylfactor::{Error, Lattice, Limits, LieType, RootSystem, Weight};

/// Characters of simple Lie algebras and factorization of tensor products.
///
/// Weights are comma-separated Dynkin labels (`2,0,1`) in Bourbaki
/// numbering; lists of weights are separated by semicolons (`1,0;0,1`).
/// Node indices are 1-based.
#[derive(Parser, Debug)]
#[command(name = "weylfactor", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Largest Weyl group order allowed for orbit enumeration.
    #[arg(long, global = true)]
    max_weyl_order: Option<u128>,

    /// Largest number of terms an intermediate character may hold.
    #[arg(long, global = true)]
    max_terms: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cartan matrix, positive roots, corners and Weyl group order.
    Rootinfo(TypeArg),
    /// Irreducible character, or Weyl numerator with --numerator.
    Char {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        #[arg(long)]
        numerator: bool,
    },
    /// Dimension of an irreducible module.
    Dim {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// Decompose the tensor product of two irreducibles.
    Tensor {
        #[command(flatten)]
        ty: TypeArg,
        /// Exactly two weights.
        #[arg(long, allow_hyphen_values = true)]
        weights: String,
    },
    /// Recover the highest weights of a product character.
    Factor {
        #[command(flatten)]
        ty: TypeArg,
        /// Character JSON file.
        #[arg(long, conflicts_with = "self_test")]
        character: Option<PathBuf>,
        /// Treat the input as a product of Weyl numerators (requires --n).
        #[arg(long, requires = "n")]
        numerator: bool,
        /// Build the product of --weights and factor it back.
        #[arg(long, requires = "weights")]
        self_test: bool,
        #[arg(long, allow_hyphen_values = true)]
        weights: Option<String>,
        /// Number of factors; inferred when omitted.
        #[arg(long)]
        n: Option<usize>,
        /// Skip the final re-multiplication check.
        #[arg(long)]
        lenient: bool,
        /// Peel whole classes at once.
        #[arg(long)]
        batch: bool,
    },
    /// PRV component of two weights for a Weyl word (default: longest element).
    Prv {
        #[command(flatten)]
        ty: TypeArg,
        /// Exactly two weights.
        #[arg(long, allow_hyphen_values = true)]
        weights: String,
        /// Comma-separated 1-based simple reflections; the last acts first.
        #[arg(long)]
        word: Option<String>,
    },
    /// Linear independence of spiked numerator products.
    Lincheck {
        /// A simple type, or a product such as A1xA2.
        #[arg(long = "type")]
        lie_type: String,
        #[arg(long, allow_hyphen_values = true)]
        weights: String,
        /// Spike multiple d of the fundamental weight at node --p.
        #[arg(long, default_value_t = 1)]
        d: i32,
        /// 1-based node carrying the spike.
        #[arg(long, default_value_t = 1)]
        p: usize,
        /// Use this dominant weight as the spike instead of d * omega_p.
        #[arg(long)]
        spike: Option<String>,
    },
    /// Replay a worked example (all of them when --example is omitted).
    Verify {
        #[arg(long)]
        example: Option<String>,
    },
}

#[derive(Args, Debug)]
struct TypeArg {
    /// Lie type such as A2, C3 or G2.
    #[arg(long = "type")]
    lie_type: String,
}

enum Failure {
    Invalid(String),
    NotAProduct(String),
    Cap(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotAProduct(_) | Error::NotDivisible(_) => Failure::NotAProduct(e.to_string()),
            Error::CapExceeded { .. } => Failure::Cap(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

type Outcome = Result<Value, Failure>;

fn invalid(msg: impl Into<String>) -> Failure {
    Failure::Invalid(msg.into())
}

fn limits(cli: &Cli) -> Limits {
    let mut l = Limits::default();
    if let Some(w) = cli.max_weyl_order {
        l.max_weyl_order = w;
    }
    if let Some(t) = cli.max_terms {
        l.max_terms = t;
    }
    l
}

fn system(ty: &str, limits: Limits) -> Result<RootSystem, Failure> {
    let t: LieType = ty.parse()?;
    Ok(RootSystem::with_limits(t, limits)?)
}

fn dominant(rs: &RootSystem, s: &str) -> Result<Weight, Failure> {
    let w: Weight = s.parse()?;
    check_dominant(rs, &w)?;
    Ok(w)
}

fn check_dominant(rs: &RootSystem, w: &Weight) -> Result<(), Failure> {
    if w.rank() != rs.rank() {
        return Err(invalid(format!(
            "weight [{}] has {} labels but {} has rank {}",
            w,
            w.rank(),
            rs.lie_type(),
            rs.rank()
        )));
    }
    if !w.is_dominant() {
        return Err(invalid(format!("weight [{}] is not dominant", w)));
    }
    Ok(())
}

fn dominant_list(rs: &RootSystem, s: &str) -> Result<Vec<Weight>, Failure> {
    let ws = parse_weight_list(s)?;
    for w in &ws {
        check_dominant(rs, w)?;
    }
    Ok(ws)
}

fn pair(rs: &RootSystem, s: &str) -> Result<(Weight, Weight), Failure> {
    let ws = dominant_list(rs, s)?;
    match <[Weight; 2]>::try_from(ws) {
        Ok([a, b]) => Ok((a, b)),
        Err(ws) => Err(invalid(format!("expected exactly two weights, got {}", ws.len()))),
    }
}

fn node(p: usize, rank: usize) -> Result<usize, Failure> {
    if p == 0 || p > rank {
        Err(invalid(format!("node {} is out of range 1..={}", p, rank)))
    } else {
        Ok(p - 1)
    }
}

fn weight_json(w: &Weight) -> Value {
    json!(w.labels())
}

fn run(cli: &Cli) -> Outcome {
    let lim = limits(cli);
    match &cli.command {
        Command::Rootinfo(ty) => {
            let rs = system(&ty.lie_type, lim)?;
            let order = rs.weyl_order();
            Ok(json!({
                "type": rs.lie_type().to_string(),
                "rank": rs.rank(),
                "cartan": rs.cartan(),
                "determinant": rs.cartan_determinant(),
                "weyl_order": u64::try_from(order).map(Value::from).unwrap_or_else(|_| Value::from(order.to_string())),
                "positive_roots": rs.positive_roots(),
                "half_norms": rs.half_norms(),
                "corners": rs.corner_indices().iter().map(|p| p + 1).collect::<Vec<_>>(),
                "grading": rs.grading(),
                "longest_word": rs.longest_word().iter().map(|i| i + 1).collect::<Vec<_>>(),
            }))
        }
        Command::Char { ty, weight, numerator } => {
            let rs = system(&ty.lie_type, lim)?;
            let w = dominant(&rs, weight)?;
            let c = if *numerator {
                weyl_numerator(&rs, &w)?
            } else {
                irreducible_character(&rs, &w)?
            };
            Ok(character_to_json(&c))
        }
        Command::Dim { ty, weight } => {
            let rs = system(&ty.lie_type, lim)?;
            let w = dominant(&rs, weight)?;
            Ok(bigint_to_json(&weyl_dimension(&rs, &w)?))
        }
        Command::Tensor { ty, weights } => {
            let rs = system(&ty.lie_type, lim)?;
            let (a, b) = pair(&rs, weights)?;
            Ok(tensor_decompose(&rs, &a, &b)?.to_json())
        }
        Command::Factor {
            ty,
            character,
            numerator,
            self_test,
            weights,
            n,
            lenient,
            batch,
        } => {
            let rs = system(&ty.lie_type, lim)?;
            let opts = FactorizeOptions {
                strict: !lenient,
                batch: *batch,
                ..Default::default()
            };
            if *n == Some(0) {
                return Err(invalid("--n must be positive"));
            }
            let (input, expect) = if *self_test {
                let ws = dominant_list(&rs, weights.as_deref().unwrap_or_default())?;
                let c = product_character(&rs, &ws, *numerator)?;
                (c, Some(ws))
            } else {
                let path = character
                    .as_ref()
                    .ok_or_else(|| invalid("factor needs --character <file> or --self-test"))?;
                let text = fs::read_to_string(path)
                    .map_err(|e| invalid(format!("cannot read {}: {}", path.display(), e)))?;
                let v: Value = serde_json::from_str(&text)
                    .map_err(|e| invalid(format!("{} is not JSON: {}", path.display(), e)))?;
                let c = character_from_json(&v)?;
                if *c.lattice() != Lattice::from(&rs) {
                    return Err(invalid(format!(
                        "character is over {} but --type is {}",
                        c.lattice(),
                        rs.lie_type()
                    )));
                }
                (c, None)
            };
            let report = if *numerator {
                let k = n.expect("clap enforces --n with --numerator");
                factorize_numerator_product_with(&rs, &input, k, opts)?
            } else {
                let k = match (n, &expect) {
                    (Some(k), _) => Some(*k),
                    (None, Some(ws)) => Some(ws.len()),
                    (None, None) => None,
                };
                factorize_character_with(&rs, &input, k, opts)?
            };
            if let Some(mut ws) = expect {
                ws.sort();
                if report.factors() != &ws[..] {
                    return Err(Failure::Check(format!(
                        "self-test recovered {:?} instead of {:?}",
                        report.factors(),
                        ws
                    )));
                }
            }
            Ok(report.to_json())
        }
        Command::Prv { ty, weights, word } => {
            let rs = system(&ty.lie_type, lim)?;
            let (a, b) = pair(&rs, weights)?;
            let letters: Vec<usize> = match word {
                None => rs.longest_word(),
                Some(s) if s.trim().is_empty() => Vec::new(),
                Some(s) => s
                    .split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<usize>()
                            .map_err(|_| invalid(format!("bad letter {:?} in --word", t)))
                            .and_then(|i| node(i, rs.rank()))
                    })
                    .collect::<Result<_, _>>()?,
            };
            let comp = prv_component(&rs, &a, &b, &letters)?;
            let decomposition = tensor_decompose(&rs, &a, &b)?;
            Ok(json!({
                "component": weight_json(&comp),
                "word": letters.iter().map(|i| i + 1).collect::<Vec<_>>(),
                "multiplicity": bigint_to_json(&decomposition.multiplicity(&comp)),
                "double_coset_bound": prv_multiplicity_bound(&rs, &a, &b)?,
            }))
        }
        Command::Lincheck { lie_type, weights, d, p, spike } => {
            let lattice: Lattice = lie_type.parse()?;
            let ws = parse_weight_list(weights)?;
            for w in &ws {
                if w.rank() != lattice.rank() || !w.is_dominant() {
                    return Err(invalid(format!("[{}] is not a dominant weight of {}", w, lattice)));
                }
            }
            if *d < 1 {
                return Err(invalid("--d must be positive"));
            }
            let p0 = node(*p, lattice.rank())?;
            let family = match lattice.as_simple() {
                Some(t) => {
                    let rs = RootSystem::with_limits(t, lim)?;
                    match spike {
                        Some(s) => spiked_products_general(&rs, &ws, &dominant(&rs, s)?)?,
                        None => spiked_products(&rs, &ws, *d, p0)?,
                    }
                }
                None => {
                    if spike.is_some() {
                        return Err(invalid("--spike is only supported for simple types"));
                    }
                    let systems = lattice
                        .factors()
                        .iter()
                        .map(|t| RootSystem::with_limits(*t, lim))
                        .collect::<Result<Vec<_>, _>>()?;
                    semisimple_spiked_products(&systems, &ws, *d, p0)?
                }
            };
            Ok(class_independence_check(&family).to_json())
        }
        Command::Verify { example } => {
            let names: Vec<&str> = match example {
                Some(e) => vec![e.as_str()],
                None => EXAMPLES.to_vec(),
            };
            let mut reports = Vec::new();
            let mut failed = Vec::new();
            for name in names {
                let r = verify(name)?;
                for c in r.failed_clauses() {
                    failed.push(format!("{}: {}", name, c));
                }
                reports.push(r.to_json());
            }
            let out = if example.is_some() {
                reports.remove(0)
            } else {
                Value::Array(reports)
            };
            if failed.is_empty() {
                Ok(out)
            } else {
                println!("{}", out);
                Err(Failure::Check(format!("failed clauses: {}", failed.join(", "))))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(v) => {
            println!("{}", v);
            ExitCode::SUCCESS
        }
        Err(f) => {
            let (code, msg) = match f {
                Failure::Check(m) => (1, m),
                Failure::Invalid(m) => (2, m),
                Failure::NotAProduct(m) => (3, format!("NOT_A_PRODUCT: {}", m)),
                Failure::Cap(m) => (4, m),
            };
            eprintln!("weylfactor: {}", msg);
            ExitCode::from(code)
        }
    }
}
