//! Command-line front end. [`run`] parses arguments, dispatches, and
//! returns the exit status with the text for stdout and stderr, so the
//! binary stays a thin wrapper and tests can drive it in-process.
//!
//! Exit status: 0 success, 1 usage or input error, 2 verification failure
//! (a witness is printed), 3 distance or oracle budget exceeded.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::additive::{self, SymplecticVector};
use crate::construction_x::{extended_cyclic_96, quantum_construction_x, CxError};
use crate::distance::{DistanceBudget, DistanceError, DEFAULT_SWEEP_LIMIT};
use crate::error::CodeError;
use crate::field::{FieldError, FieldSpec, FieldSpecRef};
use crate::io::{emit, emit_additive, emit_linear, parse_code_file, CodeFile, FpSpan, ParseError};
use crate::linear::LinearCode;
use crate::pauli::{KlVerdict, OracleError, PauliLabel, PauliOracle, DEFAULT_TOLERANCE};
use crate::poly::Polynomial;
use crate::propagation::{shorten_stabilizer, Ledger, Rule, RuleError};
use crate::puncture::{shorten_via_codeword, PunctureCode, PunctureError};
use crate::registry::{Registry, RegistryError};
use crate::stabilizer::{QuantumParams, StabilizerCode, StabilizerError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_WITNESS: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "qecc-forge", version, about = "Stabilizer code construction and verification")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Worker threads for parallel sweeps; results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Seed for sampled outputs.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest code size enumerated exhaustively by distance sweeps.
    #[arg(long, global = true, default_value_t = DEFAULT_SWEEP_LIMIT)]
    pub budget: u64,
    /// Write the resulting code file or ledger here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

/// A code taken from the registry or from a file.
#[derive(Debug, Args)]
pub struct Input {
    /// Registry entry name.
    pub name: Option<String>,
    /// Code file path.
    #[arg(long = "in", value_name = "PATH")]
    pub input: Option<PathBuf>,
    /// Expected field: `q`, `p^m` or a full header line.
    #[arg(long)]
    pub field: Option<FieldSpecRef>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Form {
    Symplectic,
    Euclidean,
    Hermitian,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dual code: symplectic for additive codes, Hermitian or Euclidean for linear ones.
    Dual {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        form: Option<Form>,
    },
    /// Minimum distance with a certificate and a witness word.
    Distance {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        max_weight: Option<usize>,
    },
    /// Parameters of the stabilizer code defined by a self-orthogonal code.
    StabilizerParams {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        max_weight: Option<usize>,
    },
    /// Syndrome of an error, given as `(g;a..|b..)` or `a,b a,b ...`.
    Syndrome {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        error: String,
    },
    /// Puncture code of an additive code with its weight distribution.
    PunctureCode {
        #[command(flatten)]
        input: Input,
        /// Field-valued version, closed under F_p-linear combinations only.
        #[arg(long)]
        generalized: bool,
        /// Largest word count enumerated exactly.
        #[arg(long, default_value_t = 1 << 16)]
        limit: u64,
        /// Sampled words when the code is larger than the limit.
        #[arg(long, default_value_t = 4096)]
        samples: usize,
    },
    /// Shorten a stabilizer code at one position or through a puncture-code word.
    Shorten {
        #[command(flatten)]
        input: Input,
        #[arg(long, conflicts_with = "word")]
        position: Option<usize>,
        /// Comma-separated puncture-code word.
        #[arg(long)]
        word: Option<String>,
        #[arg(long)]
        max_weight: Option<usize>,
    },
    /// Append a record to a parameter ledger, or replay one.
    Propagate {
        /// Ledger file, read if present and rewritten after appending.
        #[arg(long)]
        ledger: Option<PathBuf>,
        /// Seed parameters such as `[[96,50,10*]]_2 pure`.
        #[arg(long, conflicts_with = "rule")]
        root: Option<String>,
        /// Rule name or `name(key=value)`.
        #[arg(long)]
        rule: Option<String>,
        /// Argument for a rule given by name alone.
        #[arg(long)]
        value: Option<String>,
        #[arg(long, value_delimiter = ',')]
        parents: Vec<usize>,
        /// Reference text for a root record.
        #[arg(long)]
        note: Option<String>,
    },
    /// Quantum Construction X on an F_{q²}-linear code.
    ConstructionX {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        max_weight: Option<usize>,
    },
    /// Cyclic code from a generator polynomial `c0,c1,...`.
    Cyclic {
        #[arg(long)]
        field: FieldSpecRef,
        #[arg(long)]
        length: usize,
        #[arg(long)]
        poly: String,
        /// Certify the distance up to this weight.
        #[arg(long)]
        max_weight: Option<usize>,
    },
    /// Dense Knill-Laflamme check over all error pairs with product weight
    /// at most `--max-weight`.
    KlVerify {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 1)]
        max_weight: usize,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
    },
    /// Structural checks of the length-96 extension of the cyclic `[93,73]_4` code.
    #[command(name = "verify-paper-96")]
    VerifyPaper96 {
        #[arg(long, default_value_t = 4)]
        max_weight: usize,
    },
    /// List registry entries, or print one.
    Registry { name: Option<String> },
}

/// Exit status and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Verify { message: String, witness: Vec<String> },
    Budget(String),
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

impl From<CodeError> for Failure {
    fn from(e: CodeError) -> Self {
        match e {
            CodeError::Distance(d @ (DistanceError::BudgetExceeded { .. } | DistanceError::SubsetLimit(_))) => {
                Failure::Budget(d.to_string())
            }
            other => usage(other),
        }
    }
}

impl From<StabilizerError> for Failure {
    fn from(e: StabilizerError) -> Self {
        match e {
            StabilizerError::Code(c) => c.into(),
            StabilizerError::NotSelfOrthogonal { first, second, u, v, value } => Failure::Verify {
                message: format!("generators {first} and {second} have symplectic form {value}"),
                witness: vec![format!("witness_u={u}"), format!("witness_v={v}")],
            },
            other => usage(other),
        }
    }
}

impl From<RuleError> for Failure {
    fn from(e: RuleError) -> Self {
        match e {
            RuleError::Stabilizer(s) => s.into(),
            other => usage(other),
        }
    }
}

impl From<CxError> for Failure {
    fn from(e: CxError) -> Self {
        match e {
            CxError::Code(c) => c.into(),
            CxError::Normalization(m) => Failure::Verify { message: m, witness: Vec::new() },
            other => usage(other),
        }
    }
}

impl From<PunctureError> for Failure {
    fn from(e: PunctureError) -> Self {
        match e {
            PunctureError::Code(c) => c.into(),
            other => Failure::Verify { message: other.to_string(), witness: Vec::new() },
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Ceiling(_) => Failure::Budget(e.to_string()),
            other => usage(other),
        }
    }
}

macro_rules! usage_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                usage(e)
            }
        }
    )*};
}
usage_from!(ParseError, RegistryError, FieldError, std::io::Error);

struct Ctx {
    global: Global,
    out: String,
    err: String,
}

impl Ctx {
    fn line(&mut self, s: impl AsRef<str>) {
        self.out.push_str(s.as_ref());
        self.out.push('\n');
    }

    fn warn(&mut self, s: impl AsRef<str>) {
        let _ = writeln!(self.err, "warning: {}", s.as_ref());
    }

    fn budget(&self, max_weight: Option<usize>) -> DistanceBudget {
        let b = DistanceBudget::default().with_sweep_limit(self.global.budget);
        match max_weight {
            Some(w) => b.with_max_weight(w),
            None => b,
        }
    }

    /// Writes `text` to `--out`, or appends it to stdout.
    fn emit_file(&mut self, text: &str) -> Result<(), Failure> {
        match &self.global.out {
            Some(path) => {
                std::fs::write(path, text)?;
                let line = format!("written={}", path.display());
                self.line(line);
            }
            None => self.out.push_str(text),
        }
        Ok(())
    }

    fn load(&mut self, input: &Input) -> Result<CodeFile, Failure> {
        let text = match (&input.name, &input.input) {
            (Some(name), None) => Registry::load()?.get(name)?.text.clone(),
            (None, Some(path)) => std::fs::read_to_string(path)?,
            _ => return Err(usage("give exactly one of a registry name or --in <path>")),
        };
        let parsed = parse_code_file(&text)?;
        for w in &parsed.warnings {
            self.warn(w);
        }
        if let Some(FieldSpecRef(f)) = &input.field {
            if f != parsed.code.field() {
                return Err(usage(format!(
                    "--field {} does not match the file's `{}`",
                    f.order(),
                    parsed.code.field().header()
                )));
            }
        }
        Ok(parsed.code)
    }
}

fn stabilizer_of(code: CodeFile) -> Result<StabilizerCode, Failure> {
    let additive = match code {
        CodeFile::Additive(c) => c,
        CodeFile::Linear(c) => c.to_symplectic()?,
        CodeFile::FpSpan(_) => return Err(usage("an fp-span file does not define a stabilizer code")),
    };
    Ok(StabilizerCode::from_classical(additive)?)
}

fn parse_word(text: &str, q: u32) -> Result<Vec<u32>, Failure> {
    let word: Vec<u32> = text
        .split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| usage(format!("bad symbol '{t}'"))))
        .collect::<Result<_, _>>()?;
    if let Some(&x) = word.iter().find(|&&x| x >= q) {
        return Err(usage(format!("symbol {x} out of range for q = {q}")));
    }
    Ok(word)
}

fn parse_error_vector(text: &str, n: usize) -> Result<SymplecticVector, Failure> {
    let text = text.trim();
    let v = if text.starts_with('(') {
        text.parse::<PauliLabel>()?.vector()
    } else {
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for pair in text.split_whitespace() {
            let (x, z) = pair.split_once(',').ok_or_else(|| usage(format!("bad pair '{pair}'")))?;
            a.push(x.parse().map_err(|_| usage(format!("bad symbol '{x}'")))?);
            b.push(z.parse().map_err(|_| usage(format!("bad symbol '{z}'")))?);
        }
        SymplecticVector { a, b }
    };
    if v.len() != n {
        return Err(usage(format!("error has length {}, code has length {n}", v.len())));
    }
    Ok(v)
}

fn label(v: &SymplecticVector) -> PauliLabel {
    PauliLabel::from_vector(v)
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if status == EXIT_OK {
                Outcome { status, stdout: text, stderr: String::new() }
            } else {
                Outcome { status, stdout: String::new(), stderr: text }
            };
        }
    };
    let threads = cli.global.threads;
    let mut ctx = Ctx { global: cli.global, out: String::new(), err: String::new() };
    let command = cli.command;
    let result = match threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build() {
            Ok(pool) => pool.install(|| dispatch(&mut ctx, command)),
            Err(e) => Err(usage(e)),
        },
        None => dispatch(&mut ctx, command),
    };
    let status = match result {
        Ok(status) => status,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(ctx.err, "error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Verify { message, witness }) => {
            ctx.line("status=fail");
            for w in &witness {
                ctx.line(w);
            }
            let _ = writeln!(ctx.err, "verification failed: {message}");
            EXIT_WITNESS
        }
        Err(Failure::Budget(m)) => {
            let _ = writeln!(ctx.err, "budget exceeded: {m}");
            EXIT_BUDGET
        }
    };
    Outcome { status, stdout: ctx.out, stderr: ctx.err }
}

fn dispatch(ctx: &mut Ctx, command: Command) -> Result<i32, Failure> {
    match command {
        Command::Dual { input, form } => dual(ctx, &input, form),
        Command::Distance { input, max_weight } => distance(ctx, &input, max_weight),
        Command::StabilizerParams { input, max_weight } => stabilizer_params(ctx, &input, max_weight),
        Command::Syndrome { input, error } => syndrome(ctx, &input, &error),
        Command::PunctureCode { input, generalized, limit, samples } => {
            puncture_code(ctx, &input, generalized, limit, samples)
        }
        Command::Shorten { input, position, word, max_weight } => shorten(ctx, &input, position, word, max_weight),
        Command::Propagate { ledger, root, rule, value, parents, note } => {
            propagate(ctx, ledger.as_deref(), root, rule, value, &parents, note)
        }
        Command::ConstructionX { input, max_weight } => construction_x(ctx, &input, max_weight),
        Command::Cyclic { field, length, poly, max_weight } => cyclic(ctx, field.0, length, &poly, max_weight),
        Command::KlVerify { input, max_weight, tolerance } => kl_verify(ctx, &input, max_weight, tolerance),
        Command::VerifyPaper96 { max_weight } => verify_96(ctx, max_weight),
        Command::Registry { name } => registry(ctx, name.as_deref()),
    }
}

fn dual(ctx: &mut Ctx, input: &Input, form: Option<Form>) -> Result<i32, Failure> {
    let text = match (ctx.load(input)?, form) {
        (CodeFile::Additive(c), None | Some(Form::Symplectic)) => {
            let d = c.symplectic_dual();
            ctx.line(format!("form=symplectic n={} kappa={} dual_kappa={}", c.len(), c.kappa(), d.kappa()));
            emit_additive(&d)
        }
        (CodeFile::Linear(c), form) => {
            let form =
                form.unwrap_or(if c.field().is_quadratic_extension() { Form::Hermitian } else { Form::Euclidean });
            let d = match form {
                Form::Hermitian => c.hermitian_dual()?,
                Form::Euclidean => c.euclidean_dual(),
                Form::Symplectic => return Err(usage("the symplectic form applies to additive codes")),
            };
            let name = if form == Form::Hermitian { "hermitian" } else { "euclidean" };
            ctx.line(format!("form={name} n={} k={} dual_k={}", c.len(), c.dimension(), d.dimension()));
            emit_linear(&d)
        }
        (CodeFile::Additive(_), Some(_)) => return Err(usage("additive codes take the symplectic form")),
        (CodeFile::FpSpan(_), _) => return Err(usage("fp-span files have no dual here")),
    };
    ctx.emit_file(&text)?;
    Ok(EXIT_OK)
}

fn distance(ctx: &mut Ctx, input: &Input, max_weight: Option<usize>) -> Result<i32, Failure> {
    let budget = ctx.budget(max_weight);
    match ctx.load(input)? {
        CodeFile::Additive(c) => {
            let mw = c.min_distance(&budget)?;
            ctx.line(format!("n={} d={} d-certificate={}", c.len(), mw.distance.value, mw.distance.certificate));
            if let Some(w) = mw.witness {
                ctx.line(format!("witness={}", additive::collapse(c.field(), &w)));
            }
            ctx.line(format!("additive code of length {} with minimum distance {}", c.len(), mw.distance));
        }
        CodeFile::Linear(c) => {
            let mw = c.min_distance(&budget)?;
            ctx.line(format!(
                "n={} k={} d={} d-certificate={}",
                c.len(),
                c.dimension(),
                mw.distance.value,
                mw.distance.certificate
            ));
            if let Some(w) = mw.witness {
                ctx.line(format!("witness={}", w.iter().map(u32::to_string).collect::<Vec<_>>().join(",")));
            }
            ctx.line(format!("[{},{},{}]_{}", c.len(), c.dimension(), mw.distance, c.field().order()));
        }
        CodeFile::FpSpan(_) => return Err(usage("distance of fp-span files is not supported")),
    }
    Ok(EXIT_OK)
}

fn stabilizer_params(ctx: &mut Ctx, input: &Input, max_weight: Option<usize>) -> Result<i32, Failure> {
    let code = stabilizer_of(ctx.load(input)?)?;
    let budget = ctx.budget(max_weight);
    match code.params(&budget) {
        Ok(params) => {
            let d = code.distances(&budget)?;
            ctx.line(params.key_values());
            ctx.line(format!("d-certificate={}", d.distance.certificate));
            ctx.line(format!(
                "normalizer-d={} normalizer-certificate={}",
                d.normalizer.value, d.normalizer.certificate
            ));
            if let Some(w) = &d.witness {
                ctx.line(format!("witness={}", label(w)));
            }
            ctx.line(params.to_string());
        }
        Err(StabilizerError::TrivialDimension) => {
            // K = 1: the distance is the minimum weight of the stabilizer
            let mw = code.code().min_distance(&budget)?;
            let params = QuantumParams::new(
                code.len(),
                code.field().order(),
                1u32.into(),
                mw.distance.into(),
                crate::stabilizer::Purity::Pure,
            );
            ctx.line(params.key_values());
            ctx.line(format!("d-certificate={}", mw.distance.certificate));
            ctx.line(params.to_string());
        }
        Err(e) => return Err(e.into()),
    }
    Ok(EXIT_OK)
}

fn syndrome(ctx: &mut Ctx, input: &Input, error: &str) -> Result<i32, Failure> {
    let code = stabilizer_of(ctx.load(input)?)?;
    let e = parse_error_vector(error, code.len())?;
    let s = code.syndrome(&e)?;
    let undetectable = code.is_undetectable(&e)?;
    ctx.line(format!(
        "syndrome={} weight={} undetectable={undetectable}",
        s.iter().map(u32::to_string).collect::<Vec<_>>().join(","),
        e.weight()
    ));
    ctx.line(format!("error {} against {} generators", label(&e), s.len()));
    Ok(EXIT_OK)
}

fn puncture_code(ctx: &mut Ctx, input: &Input, generalized: bool, limit: u64, samples: usize) -> Result<i32, Failure> {
    let CodeFile::Additive(code) = ctx.load(input)? else {
        return Err(usage("the puncture code is defined for additive codes"));
    };
    let pc = PunctureCode::of(&code, generalized)?;
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.global.seed);
    let dist = pc.weight_distribution(limit, samples, &mut rng);
    ctx.line(format!("n={} dimension={} generalized={generalized} seed={}", pc.len(), pc.dimension(), ctx.global.seed));
    ctx.line(dist.summary());
    let words = pc.basis_words();
    let text = if generalized {
        emit(&CodeFile::FpSpan(FpSpan::new(code.field().clone(), pc.len(), &words)))
    } else {
        emit_linear(&LinearCode::new(pc.alphabet().clone(), pc.len(), words)?)
    };
    ctx.emit_file(&text)?;
    Ok(EXIT_OK)
}

fn params_line(code: &StabilizerCode, budget: &DistanceBudget) -> Result<String, Failure> {
    match code.params(budget) {
        Ok(p) => Ok(format!("{} notation={}", p.key_values(), p.notation())),
        Err(StabilizerError::TrivialDimension) => Ok(format!("n={} q={} K=1", code.len(), code.field().order())),
        Err(e) => Err(e.into()),
    }
}

fn shorten(
    ctx: &mut Ctx,
    input: &Input,
    position: Option<usize>,
    word: Option<String>,
    max_weight: Option<usize>,
) -> Result<i32, Failure> {
    let code = stabilizer_of(ctx.load(input)?)?;
    let budget = ctx.budget(max_weight);
    let out = match (position, word) {
        (Some(pos), None) => shorten_stabilizer(&code, pos, &budget)?,
        (None, Some(word)) => {
            let c = parse_word(&word, code.field().order())?;
            if c.len() != code.len() {
                return Err(usage(format!("word has length {}, code has length {}", c.len(), code.len())));
            }
            StabilizerCode::from_classical(shorten_via_codeword(code.code(), &c)?)?
        }
        _ => return Err(usage("give --position or --word")),
    };
    ctx.line(format!("input {}", params_line(&code, &budget)?));
    ctx.line(format!("output {}", params_line(&out, &budget)?));
    ctx.emit_file(&emit_additive(out.code()))?;
    Ok(EXIT_OK)
}

fn propagate(
    ctx: &mut Ctx,
    path: Option<&Path>,
    root: Option<String>,
    rule: Option<String>,
    value: Option<String>,
    parents: &[usize],
    note: Option<String>,
) -> Result<i32, Failure> {
    let ledger = match path {
        Some(p) if p.exists() => Ledger::parse(&std::fs::read_to_string(p)?)?,
        _ => Ledger::new(),
    };
    let id = match (root, rule) {
        (Some(params), None) => {
            let params: QuantumParams = params.parse().map_err(usage)?;
            Some(ledger.root(params, note.as_deref().unwrap_or("seed parameters")))
        }
        (None, Some(rule)) => {
            let text = match value {
                Some(v) if !rule.contains('(') => {
                    let key = match rule.as_str() {
                        "subcode" => "K",
                        "expand-field" => "m",
                        "shorten-puncture" => "s",
                        _ => "n",
                    };
                    format!("{rule}({key}={v})")
                }
                _ => rule,
            };
            let rule: Rule = text.parse().map_err(Failure::Usage)?;
            Some(ledger.apply(rule, parents)?)
        }
        (None, None) => {
            ledger.replay()?;
            None
        }
        (Some(_), Some(_)) => unreachable!("clap rejects --root with --rule"),
    };
    match id.and_then(|id| ledger.get(id)) {
        Some(rec) => {
            ctx.line(format!("id={} params={} rule={}", rec.id, rec.params.notation(), rec.rule));
            ctx.line(rec.to_string());
        }
        None => ctx.line(format!("replay=ok records={}", ledger.len())),
    }
    let text = ledger.to_text();
    match (&ctx.global.out, path) {
        (Some(_), _) => ctx.emit_file(&text)?,
        (None, Some(p)) => {
            std::fs::write(p, &text)?;
            ctx.line(format!("ledger={} records={}", p.display(), ledger.len()));
        }
        (None, None) => ctx.out.push_str(&text),
    }
    Ok(EXIT_OK)
}

fn construction_x(ctx: &mut Ctx, input: &Input, max_weight: Option<usize>) -> Result<i32, Failure> {
    let CodeFile::Linear(code) = ctx.load(input)? else {
        return Err(usage("Construction X takes a linear code over F_{q^2}"));
    };
    let budget = ctx.budget(max_weight);
    let r = quantum_construction_x(&code, &budget)?;
    let self_orthogonal = r.code.is_hermitian_self_orthogonal()?;
    ctx.line(format!(
        "n={} k={} e={} length={} self_orthogonal={self_orthogonal}",
        code.len(),
        code.dimension(),
        r.e,
        r.code.len()
    ));
    let show = |d: Option<crate::distance::Distance>| d.map_or("none".to_string(), |d| d.to_string());
    ctx.line(format!(
        "bound={} d_dual={} d_sum={}",
        r.bound.value.map_or("none".to_string(), |v| format!(">={v}")),
        show(r.bound.dual),
        show(r.bound.sum)
    ));
    match &r.params {
        Some(p) => {
            ctx.line(format!("{} d-certificate={}", p.key_values(), p.distance.certificate()));
            ctx.line(p.to_string());
        }
        None => ctx.line("K=1"),
    }
    ctx.emit_file(&emit_linear(&r.code))?;
    Ok(EXIT_OK)
}

fn cyclic(
    ctx: &mut Ctx,
    field: Arc<FieldSpec>,
    n: usize,
    poly: &str,
    max_weight: Option<usize>,
) -> Result<i32, Failure> {
    let g = Polynomial::new(parse_word(poly, field.order())?);
    let (_, rem) = Polynomial::x_pow_minus_one(&field, n).div_rem(&g, &field);
    if g.is_zero() || !rem.is_zero() {
        return Err(Failure::Verify {
            message: format!("g does not divide x^{n} - 1"),
            witness: vec![format!("remainder={}", rem.to_line().trim_start_matches("poly: "))],
        });
    }
    let code = LinearCode::cyclic(field.clone(), &g, n)?;
    ctx.line(format!("n={n} k={} deg_g={} divides=true", code.dimension(), g.degree().unwrap_or(0)));
    if field.is_quadratic_extension() {
        let dual = code.hermitian_dual()?;
        ctx.line(format!(
            "dual_contained={} self_orthogonal={}",
            dual.is_subcode_of(&code)?,
            code.is_subcode_of(&dual)?
        ));
    }
    if let Some(w) = max_weight {
        let mw = code.min_distance(&DistanceBudget::subset_only(w).with_sweep_limit(ctx.global.budget))?;
        ctx.line(format!("d={} d-certificate={}", mw.distance.value, mw.distance.certificate));
    }
    ctx.emit_file(&emit_linear(&code))?;
    Ok(EXIT_OK)
}

fn kl_verify(ctx: &mut Ctx, input: &Input, max_weight: usize, tolerance: f64) -> Result<i32, Failure> {
    let code = stabilizer_of(ctx.load(input)?)?;
    let f = code.field().clone();
    let n = code.len();
    let oracle = PauliOracle::new(f.clone(), n)?.with_tolerance(tolerance);
    let proj = oracle.stabilizer_projector(&code)?;
    let errors = PauliLabel::all_up_to_weight(f.order(), n, max_weight);
    let product = |k: usize, l: usize| -> SymplecticVector {
        let (x, y) = (errors[k].vector(), errors[l].vector());
        let neg =
            SymplecticVector { a: x.a.iter().map(|&v| f.neg(v)).collect(), b: x.b.iter().map(|&v| f.neg(v)).collect() };
        neg.add(&y, &f)
    };
    let pairs: Vec<(usize, usize)> = (0..errors.len())
        .flat_map(|k| (0..errors.len()).map(move |l| (k, l)))
        .filter(|&(k, l)| product(k, l).weight() <= max_weight)
        .collect();
    match oracle.kl_check_pairs(&proj, &errors, &pairs)? {
        KlVerdict::Pass { .. } => {
            ctx.line(format!(
                "kl=pass n={n} q={} errors={} pairs={} max-weight={max_weight} tolerance={tolerance:e}",
                f.order(),
                errors.len(),
                pairs.len()
            ));
            Ok(EXIT_OK)
        }
        KlVerdict::Fail { left, right } => {
            let k = errors.iter().position(|e| *e == left).expect("failing label is listed");
            let l = errors.iter().position(|e| *e == right).expect("failing label is listed");
            let w = product(k, l);
            Err(Failure::Verify {
                message: format!("Knill-Laflamme conditions fail for an error of weight {}", w.weight()),
                witness: vec![
                    format!("witness_left={left}"),
                    format!("witness_right={right}"),
                    format!("witness={}", label(&w)),
                ],
            })
        }
    }
}

fn verify_96(ctx: &mut Ctx, max_weight: usize) -> Result<i32, Failure> {
    let report = extended_cyclic_96(max_weight)?;
    let ok = report.success(max_weight);
    ctx.line(report.summary_line(max_weight));
    ctx.line(format!(
        "deg_g0={} c1_dual_contained={} status={}",
        report.g0_degree,
        report.c1_dual_contained,
        if ok { "pass" } else { "fail" }
    ));
    for c in report.candidates.iter().filter(|c| c.is_full()) {
        let roots: Vec<String> = c.roots.iter().map(u32::to_string).collect();
        ctx.line(format!(
            "candidate roots={} dual_contained={} shorten_recovers_c1={} d={}",
            roots.join(","),
            c.dual_contained,
            c.shorten_recovers_c1,
            c.distance_certificate.map_or("-".to_string(), |d| d.to_string())
        ));
    }
    let (e, len) = report.qcx;
    ctx.line(format!("construction_x e={e} length={len}"));
    ctx.line(format!(
        "{} of {} step orders give a [96,73]_4 code containing its Hermitian dual",
        report.passing().len(),
        report.candidates.iter().filter(|c| c.is_full()).count()
    ));
    if ok {
        Ok(EXIT_OK)
    } else {
        Err(Failure::Verify { message: "no certified length-96 candidate".into(), witness: Vec::new() })
    }
}

fn registry(ctx: &mut Ctx, name: Option<&str>) -> Result<i32, Failure> {
    let reg = Registry::load()?;
    match name {
        Some(name) => {
            let text = reg.get(name)?.text.clone();
            ctx.emit_file(&text)?;
        }
        None => {
            for e in reg.entries() {
                let kind = e.code.kind().name();
                ctx.line(format!(
                    "name={} kind={kind} q={} n={} | {}",
                    e.name,
                    e.code.field().order(),
                    e.code.len(),
                    e.note
                ));
            }
        }
    }
    Ok(EXIT_OK)
}
