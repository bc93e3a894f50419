use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use rbfam::coefficients::{parse_rational, LinComb, Rational};
use rbfam::familyops::{dend_op, trid_op, BoundarySpan, DendKind, TridKind};
use rbfam::rbfa::RbfaContext;
use rbfam::semigroup::{OmegaElem, SemigroupSpec};
use rbfam::symbol::Symbol;
use rbfam::textio::{
    format_lincomb, parse_tree_lincomb, parse_word, parse_word_lincomb, render_ascii_lincomb, render_dot,
};
use rbfam::trees::{enumerate_trees, Tree, TreeClassFilter};
use rbfam::verify::{run_all, run_suite, CheckParams, Suite};
use rbfam::words::{normalize, phi_lc, psi, rewrite_nf, RbWord, Strategy};
use rbfam::Error;

#[global_allocator]
static GLOBAL: mimalloc::MiMalloc = mimalloc::MiMalloc;

const DEFAULT_MAX_STEPS: usize = 10_000;

#[derive(Parser)]
#[command(name = "rbfam", version, about = "Exact computations in free Rota-Baxter family algebras")]
struct Cli {
    /// Index semigroup: trivial, free:a,b,..., cyclic:n or int.
    #[arg(long, global = true, default_value = "free:a,b", value_parser = parse_spec)]
    omega: SemigroupSpec,
    /// Weight of the operator family, an exact rational such as 0, -1 or 3/2.
    #[arg(long, global = true, default_value = "0", allow_hyphen_values = true, value_parser = parse_weight)]
    weight: Rational,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Product of two tree expressions.
    Mul { left: String, right: String },
    /// Grafting operator B⁺_ω applied to a tree expression.
    Bplus {
        #[arg(value_name = "OMEGA")]
        index: String,
        tree: String,
    },
    /// Tree expression to bracketed words.
    Phi { tree: String },
    /// Rota-Baxter family word to its tree.
    Psi { word: String },
    /// Normal form of a word expression.
    Nf {
        expr: String,
        /// structural, leftmost, rightmost or random:SEED.
        #[arg(long, default_value = "structural")]
        strategy: String,
    },
    /// Dendriform family operation on binary trees (weight 0). `|` denotes a leaf.
    Dend {
        op: DendOp,
        #[arg(value_name = "OMEGA")]
        index: String,
        left: String,
        right: String,
    },
    /// Tridendriform family operation on Schröder trees (weight 1):
    /// `prec|succ OMEGA T U` or `dot T U`. `|` denotes a leaf.
    Trid {
        op: TridOp,
        #[arg(num_args = 2..=3, required = true)]
        args: Vec<String>,
    },
    /// List all trees with the given number of angles.
    Enumerate {
        #[arg(long)]
        angles: usize,
        #[arg(long, value_enum, default_value = "general")]
        class: Class,
        #[arg(long)]
        max_depth: Option<usize>,
        /// Comma-separated angle decorations.
        #[arg(long, default_value = "x")]
        alphabet: String,
    },
    /// Run a verification suite.
    Check {
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Draw a tree expression as text, or as Graphviz with --dot.
    Render {
        #[arg(long)]
        dot: bool,
        expr: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DendOp {
    Prec,
    Succ,
}

#[derive(Clone, Copy, ValueEnum)]
enum TridOp {
    Prec,
    Succ,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum Class {
    General,
    Binary,
    Schroeder,
}

fn parse_spec(s: &str) -> Result<SemigroupSpec, String> {
    s.parse::<SemigroupSpec>().map_err(|e| e.to_string())
}

fn parse_weight(s: &str) -> Result<Rational, String> {
    parse_rational(s).ok_or_else(|| format!("`{s}` is not an exact rational"))
}

/// Failure of a command, with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotRbWord(_) | Error::RewriteExhausted(_) => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn max_steps() -> Result<usize, Failure> {
    match std::env::var("RBFAM_MAX_STEPS") {
        Err(_) => Ok(DEFAULT_MAX_STEPS),
        Ok(v) => v
            .parse()
            .map_err(|_| usage(format!("RBFAM_MAX_STEPS must be a positive integer, got `{v}`"))),
    }
}

fn omega(spec: &SemigroupSpec, text: &str) -> Result<OmegaElem, Failure> {
    Ok(spec.parse(text).map_err(Error::from)?)
}

fn operand(spec: &SemigroupSpec, text: &str) -> Result<BoundarySpan, Failure> {
    if text.trim() == "|" {
        Ok(BoundarySpan::leaf())
    } else {
        Ok(BoundarySpan::from_trees(parse_tree_lincomb(spec, text)?))
    }
}

fn strategy(text: &str) -> Result<Option<Strategy>, Failure> {
    match text {
        "structural" => Ok(None),
        "leftmost" => Ok(Some(Strategy::Leftmost)),
        "rightmost" => Ok(Some(Strategy::Rightmost)),
        _ => match text.strip_prefix("random:").map(str::parse) {
            Some(Ok(seed)) => Ok(Some(Strategy::Random(seed))),
            _ => Err(usage(format!(
                "unknown strategy `{text}`; expected structural, leftmost, rightmost or random:SEED"
            ))),
        },
    }
}

/// Output and exit status of a successful dispatch. Check failures carry
/// status 1 with their report on stdout.
struct Output {
    text: String,
    code: u8,
}

impl From<String> for Output {
    fn from(text: String) -> Self {
        Output { text, code: 0 }
    }
}

fn line<B: Ord + Clone + std::fmt::Display>(e: &LinComb<B>) -> Output {
    format!("{}\n", format_lincomb(e)).into()
}

fn dispatch(cli: Cli) -> Result<Output, Failure> {
    let spec = cli.omega;
    let ctx = RbfaContext::new(spec.clone(), cli.weight.clone());
    match cli.command {
        Command::Mul { left, right } => {
            let a = parse_tree_lincomb(&spec, &left)?;
            let b = parse_tree_lincomb(&spec, &right)?;
            Ok(line(&ctx.diamond(&a, &b)?))
        }
        Command::Bplus { index: w, tree } => {
            let w = omega(&spec, &w)?;
            Ok(line(&ctx.b_plus_lc(&w, &parse_tree_lincomb(&spec, &tree)?)?))
        }
        Command::Phi { tree } => {
            let a = parse_tree_lincomb(&spec, &tree)?;
            for t in a.basis_elements() {
                ctx.check_tree(t)?;
            }
            Ok(line(&phi_lc(&a)))
        }
        Command::Psi { word } => {
            let w = RbWord::certify(parse_word(&spec, &word)?)?;
            Ok(format!("{}\n", psi(&w)?).into())
        }
        Command::Nf { expr, strategy: s } => {
            let e = parse_word_lincomb(&spec, &expr)?;
            let out = match strategy(&s)? {
                None => normalize(&ctx, &e)?,
                Some(s) => rewrite_nf(&ctx, &e, s, max_steps()?)?,
            };
            Ok(line(&out))
        }
        Command::Dend { op, index: w, left, right } => {
            let kind = match op {
                DendOp::Prec => DendKind::Prec,
                DendOp::Succ => DendKind::Succ,
            };
            let w = omega(&spec, &w)?;
            let out = dend_op(&ctx, kind, &w, &operand(&spec, &left)?, &operand(&spec, &right)?)?;
            Ok(line(&out))
        }
        Command::Trid { op, args } => {
            let (kind, w, left, right) = match (op, args.as_slice()) {
                (TridOp::Dot, [l, r]) => (TridKind::Dot, None, l, r),
                (TridOp::Prec, [w, l, r]) => (TridKind::Prec, Some(omega(&spec, w)?), l, r),
                (TridOp::Succ, [w, l, r]) => (TridKind::Succ, Some(omega(&spec, w)?), l, r),
                (TridOp::Dot, _) => return Err(usage("trid dot takes exactly two operands")),
                _ => return Err(usage("trid prec/succ take an index and two operands")),
            };
            let out = trid_op(&ctx, kind, w.as_ref(), &operand(&spec, left)?, &operand(&spec, right)?)?;
            Ok(line(&out))
        }
        Command::Enumerate {
            angles,
            class,
            max_depth,
            alphabet,
        } => {
            let alphabet = alphabet
                .split(',')
                .map(|x| {
                    if Symbol::is_identifier(x) {
                        Ok(Symbol::new(x))
                    } else {
                        Err(usage(format!("`{x}` is not a valid decoration")))
                    }
                })
                .collect::<Result<Vec<_>, _>>()?;
            if !spec.carrier_is_complete() {
                return Err(usage(format!("cannot enumerate over the infinite semigroup {spec}")));
            }
            let class = match class {
                Class::General => TreeClassFilter::General,
                Class::Binary => TreeClassFilter::Binary,
                Class::Schroeder => TreeClassFilter::Schroeder,
            };
            let trees = enumerate_trees(angles, &alphabet, &spec.carrier(), max_depth, class)?;
            let mut text = String::new();
            for t in &trees {
                text.push_str(&format!("{t}\n"));
            }
            Ok(text.into())
        }
        Command::Check { suite } => {
            let params = CheckParams::new(spec, cli.weight);
            let reports = if suite == "all" {
                run_all(&params)?
            } else {
                let s: Suite = suite.parse().map_err(|e: Error| usage(e.to_string()))?;
                vec![run_suite(s, &params)?]
            };
            let mut text = String::new();
            for r in &reports {
                text.push_str(&format!("{r}\n"));
            }
            let code = if reports.iter().all(|r| r.passed()) { 0 } else { 1 };
            Ok(Output { text, code })
        }
        Command::Render { dot, expr } => {
            let e: LinComb<Tree> = parse_tree_lincomb(&spec, &expr)?;
            for t in e.basis_elements() {
                ctx.check_tree(t)?;
            }
            Ok(if dot { render_dot(&e) } else { render_ascii_lincomb(&e) }.into())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.text.as_bytes());
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
