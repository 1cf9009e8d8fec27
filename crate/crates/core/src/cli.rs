//! Command-line front end.
//!
//! Exit codes: 0 success or "yes", 1 "no" (or a failed tally), 2 usage or
//! parse error, 3 any other operation error.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{show_word, Algebra};
use crate::error::Error;
use crate::ops::{self, InclusionMode, MinForm, ProductMode, Verdict};
use crate::query_learn::{enumerating_sfa_learner, AdversarialPropTeacher, Oracle};
use crate::random::random_minimal_sfa;
use crate::sample::{parse_word, Sample};
use crate::sfa::Sfa;
use crate::sfa_learn::{char_sfa, decontaminate, infer_sfa};

#[derive(Parser, Debug)]
#[command(name = "symlearn", version, about = "Symbolic finite automata: operations and learning")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Convert an SFA to a special form. `minimize` determinizes and
    /// completes its input first.
    Transform {
        kind: TransformKind,
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Predicate form used by `minimize`.
        #[arg(long, value_enum, default_value_t = FormArg::Neat)]
        form: FormArg,
    },
    /// Product, union or complement.
    Op {
        kind: OpKind,
        a: PathBuf,
        b: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decision procedures.
    Decide {
        #[command(subcommand)]
        question: Question,
    },
    /// Passive learning.
    Learn {
        #[command(subcommand)]
        task: LearnTask,
    },
    /// Query-learning experiments.
    Qlearn {
        #[command(subcommand)]
        task: QlearnTask,
    },
    /// Randomized property runs.
    Bench {
        #[command(subcommand)]
        task: BenchTask,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TransformKind {
    Neat,
    Normalize,
    Feasible,
    Complete,
    Determinize,
    Minimize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormArg {
    Neat,
    Normalized,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OpKind {
    Product,
    Union,
    Complement,
}

#[derive(Subcommand, Debug)]
enum Question {
    /// Is the language empty?
    Empty { model: PathBuf },
    /// Is WORD (space-separated letters, "" for the empty word) accepted?
    Member { model: PathBuf, word: String },
    /// Is L(A) a subset of L(B)? Nondeterministic inputs are determinized.
    Include { a: PathBuf, b: PathBuf },
    /// Is L(A) equal to L(B)?
    Equiv { a: PathBuf, b: PathBuf },
}

#[derive(Subcommand, Debug)]
enum LearnTask {
    /// Characteristic sample of an SFA.
    Char {
        model: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Infer an SFA from a sample.
    Infer {
        sample: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value = "interval-nat")]
        algebra: Algebra,
    },
    /// Drop sample words over letters outside the recovered alphabet.
    Decontaminate {
        sample: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value = "interval-nat")]
        algebra: Algebra,
    },
}

#[derive(Subcommand, Debug)]
enum QlearnTask {
    /// Run the enumerating learner against the adversarial teacher.
    Demo {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=10))]
        prop: u8,
    },
}

#[derive(Subcommand, Debug)]
enum BenchTask {
    /// `infer(char(M)) == M` on random minimal SFAs.
    Roundtrip {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 6)]
        max_states: usize,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        #[arg(long, default_value_t = 1000)]
        max_endpoint: i64,
    },
}

enum Failure {
    Usage(String),
    Op(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => Failure::Usage(e.to_string()),
            e => Failure::Op(e),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(msg) => f.write_str(msg),
            Failure::Op(e) => write!(f, "{e}"),
        }
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Runs the CLI on `args` (including the program name), writing results to
/// `out`, and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {f}");
            match f {
                Failure::Usage(_) => 2,
                Failure::Op(_) => 3,
            }
        }
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_sfa(path: &Path) -> std::result::Result<Sfa, Failure> {
    let text = read(path)?;
    Sfa::parse(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_sample(path: &Path, alg: Algebra) -> std::result::Result<Sample, Failure> {
    let text = read(path)?;
    Sample::parse(&text, alg).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(text: &str, output: Option<&Path>, out: &mut dyn Write) -> Outcome {
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?,
        None => out.write_all(text.as_bytes()).map_err(|e| Failure::Usage(e.to_string()))?,
    }
    Ok(0)
}

fn deterministic(m: Sfa) -> std::result::Result<Sfa, Failure> {
    if m.classify().deterministic {
        Ok(m)
    } else {
        Ok(ops::determinize(&m)?)
    }
}

fn verdict(v: Verdict, out: &mut dyn Write) -> Outcome {
    let _ = match &v {
        Verdict::Holds => writeln!(out, "yes"),
        Verdict::Fails(w) => writeln!(out, "no\ncounterexample: {}", show_word(w)),
    };
    Ok(if v.holds() { 0 } else { 1 })
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Transform { kind, input, output, form } => {
            let m = load_sfa(&input)?;
            let r = match kind {
                TransformKind::Neat => m.to_neat()?,
                TransformKind::Normalize => m.to_normalized(),
                TransformKind::Feasible => m.make_feasible(),
                TransformKind::Complete => m.complete(),
                TransformKind::Determinize => ops::determinize(&m)?,
                TransformKind::Minimize => {
                    let form = match form {
                        FormArg::Neat => MinForm::Neat,
                        FormArg::Normalized => MinForm::Normalized,
                    };
                    ops::minimize(&deterministic(m)?.complete(), form)?
                }
            };
            emit(&r.to_string(), output.as_deref(), out)
        }
        Command::Op { kind, a, b, output } => {
            let m1 = load_sfa(&a)?;
            let r = match (kind, b) {
                (OpKind::Complement, None) => ops::complement(&m1)?,
                (OpKind::Complement, Some(_)) => return Err(Failure::Usage("complement takes one automaton".into())),
                (_, None) => return Err(Failure::Usage("product and union take two automata".into())),
                (OpKind::Product, Some(b)) => ops::product(&m1, &load_sfa(&b)?, ProductMode::Intersect)?,
                (OpKind::Union, Some(b)) => ops::product(&m1, &load_sfa(&b)?, ProductMode::Union)?,
            };
            emit(&r.to_string(), output.as_deref(), out)
        }
        Command::Decide { question } => match question {
            Question::Empty { model } => {
                let m = load_sfa(&model)?;
                match ops::shortest_accepted(&m) {
                    None => verdict(Verdict::Holds, out),
                    Some(w) => verdict(Verdict::Fails(w), out),
                }
            }
            Question::Member { model, word } => {
                let m = load_sfa(&model)?;
                let w = parse_word(&word, m.algebra())?;
                let yes = m.accepts(&w);
                let _ = writeln!(out, "{}", if yes { "yes" } else { "no" });
                Ok(if yes { 0 } else { 1 })
            }
            Question::Include { a, b } => {
                let (m1, m2) = (deterministic(load_sfa(&a)?)?, deterministic(load_sfa(&b)?)?);
                verdict(ops::includes(&m1, &m2, InclusionMode::Subset)?, out)
            }
            Question::Equiv { a, b } => {
                let (m1, m2) = (deterministic(load_sfa(&a)?)?, deterministic(load_sfa(&b)?)?);
                verdict(ops::equivalent(&m1, &m2)?, out)
            }
        },
        Command::Learn { task } => match task {
            LearnTask::Char { model, output } => {
                let s = char_sfa(&load_sfa(&model)?)?;
                emit(&s.to_string(), output.as_deref(), out)
            }
            LearnTask::Infer { sample, output, algebra } => {
                let m = infer_sfa(&load_sample(&sample, algebra)?)?;
                emit(&m.to_string(), output.as_deref(), out)
            }
            LearnTask::Decontaminate { sample, output, algebra } => {
                let s = decontaminate(&load_sample(&sample, algebra)?)?;
                emit(&s.to_string(), output.as_deref(), out)
            }
        },
        Command::Qlearn { task: QlearnTask::Demo { prop } } => {
            let mut teacher = AdversarialPropTeacher::new(prop)?;
            enumerating_sfa_learner(prop, &mut teacher)?;
            let c = teacher.counts();
            let before = c.total() - 1;
            let bound = (1usize << prop) - 1;
            let _ = writeln!(out, "k={prop} mq={} eq={} before-final-eq={before} bound={bound}", c.mq, c.eq);
            Ok(if before >= bound { 0 } else { 1 })
        }
        Command::Bench { task: BenchTask::Roundtrip { seed, count, max_states, max_degree, max_endpoint } } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut passed = 0;
            for i in 0..count {
                let m = random_minimal_sfa(&mut rng, max_states, max_degree, max_endpoint);
                let ok = char_sfa(&m)
                    .and_then(|s| infer_sfa(&s))
                    .and_then(|h| ops::equivalent(&h, &m))
                    .map(|v| v.holds());
                match ok {
                    Ok(true) => passed += 1,
                    Ok(false) => {
                        let _ = writeln!(out, "trial {i}: not equivalent\n{m}");
                    }
                    Err(e) => {
                        let _ = writeln!(out, "trial {i}: {e}\n{m}");
                    }
                }
            }
            let _ = writeln!(out, "roundtrip: {passed}/{count} passed");
            Ok(if passed == count { 0 } else { 1 })
        }
    }
}
