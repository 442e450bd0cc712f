//! Command-line verbs. Each verb wraps one library operation or one check
//! from [`crate::checks`] and prints either aligned text or, with `--json`,
//! pretty-printed JSON with sorted keys.
//!
//! Exit status: 0 success, 1 domain error (including unreadable or invalid
//! input files), 2 resource cap hit, 64 usage error, 70 a check that must
//! hold failed.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lrtrop_core::cluster::grassmannian::GrassmannianReport;
use lrtrop_core::cluster::{
    cyclic_mutation_values, enumerate_from_seed, is_finite_type_with_cap, laurent_check, verify_grassmannian,
    ExchangeCaps, ExchangeMatrix, FiniteTypeVerdict, Seed, DEFAULT_CLASS_CAP,
};
use lrtrop_core::minors::{first_nonpositive_upper_minor, group_element_from_word};
use lrtrop_core::multiplicity::{dominant_targets, racah_oracle, MultiplicityEngine, MultiplicityQuery};
use lrtrop_core::rootsys::{parse_cartan_type, CartanMatrix, Weight};
use lrtrop_core::tableaux::{lr_coefficient, schur_product_expansion, Partition};
use lrtrop_core::tropical::{transition, GeometricTuple, ParamTuple, TropicalTuple};
use lrtrop_core::Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::checks::{check_product, identity_checks, oracle_grid, positivity_checks, transition_checks, Identities};
use crate::error::{CliError, CliResult, EXIT_INTERNAL, EXIT_OK, EXIT_RESOURCE, EXIT_USAGE};
use crate::formats::{matrix_from_json, matrix_to_json, parse_list, parse_rational, read_json, ExchangeFile, Scalar, TupleFile};

#[derive(Debug, Parser)]
#[command(
    name = "lrtrop",
    version,
    about = "Tensor-product multiplicities via tropical transition maps, SL_n minor identities and cluster algebras"
)]
pub struct Cli {
    /// Print machine-readable JSON instead of aligned text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Littlewood-Richardson coefficient of partitions, or a Schur product expansion.
    Lr(LrArgs),
    /// Tensor-product multiplicity of dominant weights by tropical tuples.
    Mult(MultArgs),
    /// Mutate a seed read from a JSON file.
    Mutate(MutateArgs),
    /// Enumerate the exchange graph of a seed, or verify the polygon model.
    Clusters(ClustersArgs),
    /// Decide finite type by searching the mutation class.
    FiniteType(FiniteTypeArgs),
    /// Check the Laurent phenomenon by breadth-first mutation.
    LaurentCheck(LaurentArgs),
    /// Total positivity of matrices and of products along reduced words.
    TpCheck(TpArgs),
    /// Dodgson and Plücker identities on random SL_n matrices.
    Identities(IdentitiesArgs),
    /// Transition maps between parametrizations of reduced words of w0.
    Transition(TransitionArgs),
}

#[derive(Debug, Args)]
pub struct LrArgs {
    /// First partition, e.g. 2,1.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
    /// Second partition.
    #[arg(long, allow_hyphen_values = true)]
    pub nu: String,
    /// Target partition; omit for the full expansion.
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
    /// Number of variables for the expansion [default: total number of parts].
    #[arg(long)]
    pub parts: Option<usize>,
}

#[derive(Debug, Args)]
pub struct MultArgs {
    /// Cartan type such as A2 or D4.
    #[arg(long = "type")]
    pub cartan: String,
    /// Highest weight in fundamental-weight coordinates, e.g. 1,1.
    #[arg(long, allow_hyphen_values = true, required_unless_present = "grid")]
    pub lambda: Option<String>,
    #[arg(long, allow_hyphen_values = true, required_unless_present = "grid")]
    pub nu: Option<String>,
    /// Target weight; omit for the full decomposition.
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
    /// Also compute the alternating-sum oracle and compare.
    #[arg(long)]
    pub oracle: bool,
    /// List the accepted tuples on the base word.
    #[arg(long)]
    pub witnesses: bool,
    /// Compare all routes for every lambda, nu with coordinates up to this bound.
    #[arg(long, conflicts_with_all = ["lambda", "nu", "mu"])]
    pub grid: Option<i64>,
}

#[derive(Debug, Args)]
pub struct MutateArgs {
    /// Seed or exchange-matrix JSON file.
    #[arg(long)]
    pub seed: PathBuf,
    /// Mutation directions (1-based), applied left to right, e.g. 1 or 1,2,1.
    #[arg(long)]
    pub at: String,
}

#[derive(Debug, Args)]
pub struct CapArgs {
    /// Maximum number of seeds visited.
    #[arg(long, default_value_t = 20_000)]
    pub max_seeds: usize,
    /// Maximum number of terms in one cluster variable.
    #[arg(long, default_value_t = 50_000)]
    pub max_terms: usize,
}

impl CapArgs {
    fn caps(&self) -> ExchangeCaps {
        ExchangeCaps {
            max_seeds: self.max_seeds,
            max_terms: self.max_terms,
        }
    }
}

#[derive(Debug, Args)]
pub struct SourceArgs {
    /// Cartan type; the seed is the quiver of its Cartan matrix.
    #[arg(long = "type")]
    pub cartan: Option<String>,
    /// Exchange-matrix or seed JSON file.
    #[arg(long)]
    pub matrix: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClustersArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Verify the polygon model of rank n instead (n <= 12).
    #[arg(long)]
    pub grassmannian: Option<usize>,
    #[command(flatten)]
    pub caps: CapArgs,
    /// Print every cluster variable.
    #[arg(long)]
    pub list: bool,
}

#[derive(Debug, Args)]
pub struct FiniteTypeArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Maximum number of matrices in the mutation class.
    #[arg(long, default_value_t = DEFAULT_CLASS_CAP)]
    pub cap: usize,
    /// Apply this many random mutations to the input first.
    #[arg(long, default_value_t = 0)]
    pub mutations: usize,
    #[arg(long, default_value_t = 0)]
    pub rng_seed: u64,
}

#[derive(Debug, Args)]
pub struct LaurentArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Breadth-first depth in mutation steps.
    #[arg(long, default_value_t = 8)]
    pub depth: usize,
    /// Also list the first `depth` values of cyclic mutation at x = 1.
    #[arg(long)]
    pub shadow: bool,
    #[command(flatten)]
    pub caps: CapArgs,
}

#[derive(Debug, Args)]
pub struct TpArgs {
    /// Type A_{n-1} for SL_n.
    #[arg(long = "type")]
    pub cartan: Option<String>,
    /// Upper unitriangular matrix JSON file (rows of "p/q" strings).
    #[arg(long, conflicts_with_all = ["word", "t", "samples"])]
    pub matrix: Option<PathBuf>,
    /// Reduced word of w0, e.g. 1,2,1.
    #[arg(long, requires = "t")]
    pub word: Option<String>,
    /// Positive rational parameters, e.g. 1,2,3/2.
    #[arg(long, requires = "word", allow_hyphen_values = true)]
    pub t: Option<String>,
    /// Random samples per word.
    #[arg(long, conflicts_with = "word")]
    pub samples: Option<usize>,
    /// Number of reduced words to sample [default: all].
    #[arg(long, requires = "samples")]
    pub words: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub rng_seed: u64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Which {
    Dodgson,
    Plucker,
    Both,
}

#[derive(Debug, Args)]
pub struct IdentitiesArgs {
    #[arg(long, value_enum, default_value_t = Which::Both)]
    pub which: Which,
    /// Type A_{n-1} for SL_n.
    #[arg(long = "type")]
    pub cartan: String,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub rng_seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Tropical,
    Geometric,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::Tropical => "tropical",
            Mode::Geometric => "geometric",
        }
    }
}

#[derive(Debug, Args)]
pub struct TransitionArgs {
    /// Cartan type (simply laced); may come from --input instead.
    #[arg(long = "type")]
    pub cartan: Option<String>,
    /// Source reduced word, e.g. 1,2,1.
    #[arg(long, conflicts_with = "input")]
    pub from: Option<String>,
    /// Target reduced word.
    #[arg(long)]
    pub to: Option<String>,
    /// Parameters on the source word.
    #[arg(long, conflicts_with = "input", allow_hyphen_values = true)]
    pub t: Option<String>,
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    /// Parameter tuple JSON file, e.g. the output of a previous run.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Run randomized involutivity and path-independence trials instead.
    #[arg(long, conflicts_with_all = ["from", "to", "t", "input"])]
    pub trials: Option<usize>,
    /// Randomized geometric factorization trials (with --trials).
    #[arg(long, default_value_t = 0, requires = "trials")]
    pub geometric_trials: usize,
    #[arg(long, default_value_t = 0)]
    pub rng_seed: u64,
}

/// Result of one successful command: both renderings and the exit status.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub code: i32,
}

impl Outcome {
    fn ok(json: Value, text: String) -> Self {
        Outcome { json, text, code: EXIT_OK }
    }

    fn with_code(mut self, code: i32) -> Self {
        self.code = code;
        self
    }
}

/// What the process prints and returns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Output {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Output {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match execute(&cli.command) {
        Ok(out) => Output {
            code: out.code,
            stdout: if cli.json {
                let mut s = serde_json::to_string_pretty(&out.json).expect("JSON values serialize");
                s.push('\n');
                s
            } else {
                out.text
            },
            stderr: String::new(),
        },
        Err(e) => Output {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("lrtrop: {e}\n"),
        },
    }
}

/// Runs a parsed command.
pub fn execute(command: &Command) -> CliResult<Outcome> {
    match command {
        Command::Lr(a) => lr(a),
        Command::Mult(a) => mult(a),
        Command::Mutate(a) => mutate(a),
        Command::Clusters(a) => clusters(a),
        Command::FiniteType(a) => finite_type(a),
        Command::LaurentCheck(a) => laurent(a),
        Command::TpCheck(a) => tp_check(a),
        Command::Identities(a) => identities(a),
        Command::Transition(a) => transition_cmd(a),
    }
}

/// `key  value` lines with the values aligned.
fn aligned(rows: &[(&str, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn cartan(name: &str) -> CliResult<CartanMatrix> {
    Ok(parse_cartan_type(name)?)
}

/// SL_n for a type-A Cartan name.
fn sl_rank(c: &CartanMatrix) -> CliResult<usize> {
    match c.name() {
        Some(n) if n.starts_with('A') => Ok(c.rank() + 1),
        _ => Err(CliError::Domain(format!("expected a type A_{{n-1}} for SL_n, got {c}"))),
    }
}

fn partition(s: &str) -> CliResult<Partition> {
    Ok(Partition::new(parse_list(s)?)?)
}

fn weight(s: &str) -> CliResult<Weight> {
    Ok(Weight(parse_list(s)?))
}

fn lr(a: &LrArgs) -> CliResult<Outcome> {
    let (lambda, nu) = (partition(&a.lambda)?, partition(&a.nu)?);
    if let Some(mu) = &a.mu {
        let mu = partition(mu)?;
        let c = lr_coefficient(&lambda, &nu, &mu);
        let json = json!({"lambda": lambda.parts(), "nu": nu.parts(), "mu": mu.parts(), "coefficient": c});
        return Ok(Outcome::ok(json, format!("{c}\n")));
    }
    let n = a.parts.unwrap_or(lambda.len() + nu.len());
    let terms = schur_product_expansion(&lambda, &nu, n);
    let total: u64 = terms.values().sum();
    let json = json!({
        "lambda": lambda.parts(),
        "nu": nu.parts(),
        "parts": n,
        "terms": terms.iter().map(|(mu, c)| json!({"mu": mu.parts(), "coefficient": c})).collect::<Vec<_>>(),
        "total": total,
    });
    let rows: Vec<(String, String)> = terms.iter().map(|(mu, c)| (join(mu.parts()), c.to_string())).collect();
    let text = aligned(&rows.iter().map(|(k, v)| (k.as_str(), v.clone())).collect::<Vec<_>>());
    Ok(Outcome::ok(json, text))
}

fn mult(a: &MultArgs) -> CliResult<Outcome> {
    let c = cartan(&a.cartan)?;
    if let Some(max) = a.grid {
        if max < 0 {
            return Err(CliError::Domain(format!("grid bound must be nonnegative, got {max}")));
        }
        let r = oracle_grid(&c, max)?;
        let text = aligned(&[
            ("type", r.cartan_type.clone()),
            ("max coordinate", max.to_string()),
            ("cases", r.cases.to_string()),
            ("total multiplicity", r.total_multiplicity.to_string()),
            ("tableau rule", r.tableau_rule.to_string()),
            ("mismatches", r.mismatch_count.to_string()),
        ]) + &r.mismatches.iter().map(|m| format!("  {m}\n")).collect::<String>();
        let code = if r.passed() { EXIT_OK } else { EXIT_INTERNAL };
        return Ok(Outcome::ok(to_value(&r), text).with_code(code));
    }
    let lambda = weight(a.lambda.as_deref().unwrap_or_default())?;
    let nu = weight(a.nu.as_deref().unwrap_or_default())?;
    let engine = MultiplicityEngine::new(&c)?;
    let oracle = |mu: &Weight| -> CliResult<u64> {
        let q = MultiplicityQuery::new(c.clone(), lambda.clone(), nu.clone(), mu.clone())?;
        Ok(racah_oracle(&q)?)
    };
    let Some(mu) = &a.mu else {
        let mut terms = Vec::new();
        let mut rows = Vec::new();
        let mut agree = true;
        for mu in dominant_targets(&c, &lambda, &nu)? {
            let count = engine.count(&lambda, &nu, &mu)?.count;
            let o = if a.oracle { Some(oracle(&mu)?) } else { None };
            agree &= o.map_or(true, |o| o == count);
            if count == 0 && o.map_or(true, |o| o == 0) {
                continue;
            }
            let mut v = json!({"mu": mu.0, "multiplicity": count});
            let mut line = count.to_string();
            if let Some(o) = o {
                v["oracle"] = json!(o);
                line = format!("{count}  (oracle {o})");
            }
            terms.push(v);
            rows.push((join(&mu.0), line));
        }
        let mut json = json!({"type": c.to_string(), "lambda": lambda.0, "nu": nu.0, "terms": terms});
        if a.oracle {
            json["agree"] = json!(agree);
        }
        let text = aligned(&rows.iter().map(|(k, v)| (k.as_str(), v.clone())).collect::<Vec<_>>());
        let code = if agree { EXIT_OK } else { EXIT_INTERNAL };
        return Ok(Outcome::ok(json, text).with_code(code));
    };
    let mu = weight(mu)?;
    let r = engine.count(&lambda, &nu, &mu)?;
    let mut json = json!({
        "type": c.to_string(),
        "lambda": lambda.0,
        "nu": nu.0,
        "mu": mu.0,
        "tropical": r.count,
        "base_word": r.base_word.letters(),
        "witnesses": r.witnesses,
    });
    let mut rows = vec![("tropical", r.count.to_string())];
    let mut code = EXIT_OK;
    if a.oracle {
        let o = oracle(&mu)?;
        json["oracle"] = json!(o);
        json["agree"] = json!(o == r.count);
        rows.push(("oracle", o.to_string()));
        rows.push(("agree", (o == r.count).to_string()));
        if o != r.count {
            code = EXIT_INTERNAL;
        }
    }
    if a.witnesses {
        rows.push(("base word", join(r.base_word.letters())));
        rows.extend(r.witnesses.iter().map(|w| ("witness", join(w))));
    }
    let text = if rows.len() == 1 { format!("{}\n", r.count) } else { aligned(&rows) };
    Ok(Outcome::ok(json, text).with_code(code))
}

fn seed_text(seed: &Seed) -> String {
    let mut s = String::from("matrix\n");
    for row in seed.matrix().rows() {
        s += &format!("  {}\n", row.iter().map(|x| format!("{x:>3}")).collect::<String>());
    }
    s += "cluster\n";
    for k in 1..=seed.n() {
        s += &format!("  {k}: {}\n", seed.render_variable(k));
    }
    s
}

fn mutate(a: &MutateArgs) -> CliResult<Outcome> {
    let file: ExchangeFile = read_json(&a.seed)?;
    let mut seed = file.seed()?;
    for k in parse_list::<usize>(&a.at)? {
        seed = seed.mutate(k)?;
    }
    Ok(Outcome::ok(to_value(&ExchangeFile::from_seed(&seed)), seed_text(&seed)))
}

/// The seed named by `--type` or `--matrix`, with a label for reports.
fn source_seed(s: &SourceArgs) -> CliResult<(String, Seed)> {
    match (&s.cartan, &s.matrix) {
        (Some(t), None) => {
            let c = cartan(t)?;
            Ok((c.to_string(), Seed::initial(ExchangeMatrix::from_cartan(&c))))
        }
        (None, Some(path)) => {
            let file: ExchangeFile = read_json(path)?;
            Ok((path.display().to_string(), file.seed()?))
        }
        _ => Err(CliError::Usage("give exactly one of --type or --matrix".into())),
    }
}

fn grassmannian_json(r: &GrassmannianReport) -> Value {
    json!({
        "n": r.n,
        "triangulations": r.triangulations,
        "flips": r.flips,
        "clusters": r.clusters,
        "exchange_edges": r.exchange_edges,
        "variables": r.variables,
        "diagonals": r.diagonals,
        "relations_checked": r.relations_checked,
        "relation_mismatches": r.relation_mismatches,
        "matrix_mismatches": r.matrix_mismatches,
        "value_mismatches": r.value_mismatches,
        "bijection": r.bijection,
        "edges_match": r.edges_match,
        "complete": r.complete,
        "passed": r.passed(),
    })
}

fn clusters(a: &ClustersArgs) -> CliResult<Outcome> {
    if let Some(n) = a.grassmannian {
        if a.source.cartan.is_some() || a.source.matrix.is_some() {
            return Err(CliError::Usage("--grassmannian takes no --type or --matrix".into()));
        }
        let r = verify_grassmannian(n, a.caps.caps())?;
        let text = aligned(&[
            ("polygon", format!("{}-gon", n + 3)),
            ("triangulations", r.triangulations.to_string()),
            ("flips", r.flips.to_string()),
            ("clusters", r.clusters.to_string()),
            ("exchange edges", r.exchange_edges.to_string()),
            ("variables", r.variables.to_string()),
            ("relations checked", r.relations_checked.to_string()),
            ("relation mismatches", r.relation_mismatches.len().to_string()),
            ("matrix mismatches", r.matrix_mismatches.to_string()),
            ("value mismatches", r.value_mismatches.to_string()),
            ("bijection", r.bijection.to_string()),
            ("edges match", r.edges_match.to_string()),
        ]);
        let code = match (r.complete, r.passed()) {
            (false, _) => EXIT_RESOURCE,
            (true, false) => EXIT_INTERNAL,
            (true, true) => EXIT_OK,
        };
        return Ok(Outcome::ok(grassmannian_json(&r), text).with_code(code));
    }
    let (label, seed) = source_seed(&a.source)?;
    let (n, m) = (seed.n(), seed.m());
    let names = seed.names().to_vec();
    let expected = match &a.source.cartan {
        Some(t) => Some(n + cartan(t)?.positive_roots()?.len()),
        None => None,
    };
    let g = enumerate_from_seed(seed, a.caps.caps())?;
    let mut json = json!({
        "source": label,
        "n": n,
        "m": m,
        "variables": g.variables.len(),
        "clusters": g.clusters.len(),
        "edges": g.edges.len(),
        "complete": g.complete,
        "stopped": g.stopped,
    });
    let mut rows = vec![
        ("source", label.clone()),
        ("variables", g.variables.len().to_string()),
        ("clusters", g.clusters.len().to_string()),
        ("exchange edges", g.edges.len().to_string()),
        ("complete", g.complete.to_string()),
    ];
    if let Some(e) = expected {
        json["rank_plus_positive_roots"] = json!(e);
        rows.push(("rank + positive roots", e.to_string()));
    }
    if let Some(s) = &g.stopped {
        rows.push(("stopped", s.clone()));
    }
    let mut text = aligned(&rows);
    if a.list {
        let rendered: Vec<String> = g.variables.iter().map(|x| x.render(&names)).collect();
        text += &rendered.iter().map(|x| format!("  {x}\n")).collect::<String>();
        json["variable_list"] = json!(rendered);
    }
    let code = if g.complete { EXIT_OK } else { EXIT_RESOURCE };
    Ok(Outcome::ok(json, text).with_code(code))
}

fn matrix_text(rows: &[Vec<i64>]) -> String {
    rows.iter()
        .map(|r| format!("[{}]", r.iter().map(i64::to_string).collect::<Vec<_>>().join(", ")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn finite_type(a: &FiniteTypeArgs) -> CliResult<Outcome> {
    let (label, seed) = source_seed(&a.source)?;
    let mut b = seed.matrix().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(a.rng_seed);
    let mut path = Vec::new();
    for _ in 0..a.mutations {
        let k = rng.gen_range(1..=b.n());
        path.push(k);
        b = b.mutate(k)?;
    }
    let verdict = is_finite_type_with_cap(&b, a.cap);
    let mut json = json!({
        "source": label,
        "mutations": path,
        "input": b.principal_part(),
    });
    let mut rows = vec![("source", label.clone())];
    if !path.is_empty() {
        rows.push(("mutations", join(&path)));
        rows.push(("input", matrix_text(&b.principal_part())));
    }
    let code = match &verdict {
        FiniteTypeVerdict::Finite { witness, explored } => {
            json["verdict"] = json!("finite");
            json["witness"] = json!(witness);
            json["explored"] = json!(explored);
            rows.push(("verdict", "finite".into()));
            rows.push(("witness", matrix_text(witness)));
            rows.push(("explored", explored.to_string()));
            EXIT_OK
        }
        FiniteTypeVerdict::Infinite { witness, entry, explored } => {
            json["verdict"] = json!("infinite");
            json["witness"] = json!(witness);
            json["entry"] = json!([entry.0, entry.1]);
            json["explored"] = json!(explored);
            rows.push(("verdict", "infinite".into()));
            rows.push(("witness", matrix_text(witness)));
            rows.push(("entry", format!("({}, {})", entry.0, entry.1)));
            rows.push(("explored", explored.to_string()));
            EXIT_OK
        }
        FiniteTypeVerdict::Inconclusive { explored } => {
            json["verdict"] = json!("inconclusive");
            json["explored"] = json!(explored);
            rows.push(("verdict", "inconclusive".into()));
            rows.push(("explored", explored.to_string()));
            EXIT_RESOURCE
        }
    };
    Ok(Outcome::ok(json, aligned(&rows)).with_code(code))
}

fn laurent(a: &LaurentArgs) -> CliResult<Outcome> {
    let (label, seed) = source_seed(&a.source)?;
    let b = seed.matrix().clone();
    let r = laurent_check(&b, a.depth, a.caps.caps());
    let mut json = json!({
        "source": label,
        "depth": r.depth,
        "seeds_visited": r.seeds_visited,
        "distinct_variables": r.distinct_variables,
        "max_terms": r.max_terms,
        "max_denominator_degree": r.max_denominator_degree,
        "closed": r.closed,
        "violations": r.violations,
        "resource": r.resource,
        "passed": r.passed(),
    });
    let mut rows = vec![
        ("source", label.clone()),
        ("depth", r.depth.to_string()),
        ("seeds visited", r.seeds_visited.to_string()),
        ("distinct variables", r.distinct_variables.to_string()),
        ("max terms", r.max_terms.to_string()),
        ("max denominator degree", r.max_denominator_degree.to_string()),
        ("closed", r.closed.to_string()),
        ("violations", r.violations.len().to_string()),
    ];
    if a.shadow {
        let values: Vec<Rational> = cyclic_mutation_values(&b, a.depth.saturating_sub(b.n()))?;
        let strings: Vec<String> = values.iter().map(Rational::to_string).collect();
        rows.push(("shadow", strings.join(",")));
        json["shadow"] = json!(strings);
    }
    if let Some(s) = &r.resource {
        rows.push(("stopped", s.clone()));
    }
    let mut text = aligned(&rows);
    text += &r.violations.iter().map(|v| format!("  {v}\n")).collect::<String>();
    let code = if !r.violations.is_empty() {
        EXIT_INTERNAL
    } else if r.resource.is_some() {
        EXIT_RESOURCE
    } else {
        EXIT_OK
    };
    Ok(Outcome::ok(json, text).with_code(code))
}

fn rationals(s: &str) -> CliResult<Vec<Rational>> {
    s.split(',').map(parse_rational).collect()
}

fn tp_check(a: &TpArgs) -> CliResult<Outcome> {
    if let Some(path) = &a.matrix {
        let rows: Vec<Vec<Scalar>> = read_json(path)?;
        let x = matrix_from_json(&rows)?;
        let first = first_nonpositive_upper_minor(&x)?;
        let mut json = json!({"size": x.size(), "totally_positive": first.is_none()});
        let mut rows = vec![("totally positive", first.is_none().to_string())];
        if let Some((idx, value)) = &first {
            json["first_nonpositive"] = json!({"rows": idx.rows(), "cols": idx.cols(), "value": value.to_string()});
            rows.push(("first nonpositive", format!("rows {} cols {} = {value}", join(idx.rows()), join(idx.cols()))));
        }
        return Ok(Outcome::ok(json, aligned(&rows)));
    }
    let c = cartan(a.cartan.as_deref().ok_or_else(|| CliError::Usage("--type is required".into()))?)?;
    let n = sl_rank(&c)?;
    if let (Some(word), Some(t)) = (&a.word, &a.t) {
        let word = c.reduced_word(&parse_list::<usize>(word)?)?;
        if word.len() != c.longest_element()?.length {
            return Err(CliError::Domain(format!("({word}) is not a reduced word of w0 in SL_{n}")));
        }
        let t = rationals(t)?;
        if t.len() != word.len() || t.iter().any(|v| *v <= Rational::from_integer(0.into())) {
            return Err(CliError::Domain(format!("need {} positive parameters", word.len())));
        }
        let x = group_element_from_word(word.letters(), &t, n)?;
        let check = check_product(&word, &t, n)?;
        let passed = check.totally_positive && check.boundary_recovered && check.special_minor_sums.iter().all(|&b| b);
        let json = json!({
            "word": word.letters(),
            "t": t.iter().map(Rational::to_string).collect::<Vec<_>>(),
            "matrix": matrix_to_json(&x),
            "totally_positive": check.totally_positive,
            "boundary_recovered": check.boundary_recovered,
            "special_minor_sums": check.special_minor_sums,
        });
        let mut text = aligned(&[
            ("totally positive", check.totally_positive.to_string()),
            ("boundary recovered", check.boundary_recovered.to_string()),
            ("special minor sums", join(&check.special_minor_sums)),
        ]);
        text += &format!("{x}");
        let code = if passed { EXIT_OK } else { EXIT_INTERNAL };
        return Ok(Outcome::ok(json, text).with_code(code));
    }
    let samples = a.samples.ok_or_else(|| CliError::Usage("give --matrix, --word with --t, or --samples".into()))?;
    let r = positivity_checks(&c, a.words, samples, a.rng_seed)?;
    let text = aligned(&[
        ("SL_n", n.to_string()),
        ("words", r.words.len().to_string()),
        ("products", r.products.to_string()),
        ("totally positive", r.totally_positive.to_string()),
        ("boundary recovered", r.boundary_recovered.to_string()),
        ("special minor sums", r.special_minor_sums.to_string()),
    ]);
    let code = if r.passed() { EXIT_OK } else { EXIT_INTERNAL };
    Ok(Outcome::ok(to_value(&r), text).with_code(code))
}

fn identities(a: &IdentitiesArgs) -> CliResult<Outcome> {
    let n = sl_rank(&cartan(&a.cartan)?)?;
    let which = match a.which {
        Which::Dodgson => Identities::Dodgson,
        Which::Plucker => Identities::Plucker,
        Which::Both => Identities::Both,
    };
    let r = identity_checks(n, which, a.samples, a.rng_seed)?;
    let text = aligned(&[
        ("SL_n", n.to_string()),
        ("samples", r.samples.to_string()),
        ("dodgson instances", r.dodgson_instances.to_string()),
        ("dodgson nonzero", r.dodgson_nonzero.to_string()),
        ("plucker instances", r.plucker_instances.to_string()),
        ("plucker nonzero", r.plucker_nonzero.to_string()),
    ]);
    let code = if r.passed() { EXIT_OK } else { EXIT_INTERNAL };
    Ok(Outcome::ok(to_value(&r), text).with_code(code))
}

fn transition_cmd(a: &TransitionArgs) -> CliResult<Outcome> {
    if let Some(trials) = a.trials {
        let c = cartan(a.cartan.as_deref().ok_or_else(|| CliError::Usage("--type is required".into()))?)?;
        let r = transition_checks(&c, trials, a.geometric_trials, a.rng_seed)?;
        let text = aligned(&[
            ("type", r.cartan_type.clone()),
            ("trials", r.trials.to_string()),
            ("involutive", r.involutive.to_string()),
            ("path independent", r.path_independent.to_string()),
            ("geometric trials", r.geometric_trials.to_string()),
            ("geometric preserved", r.geometric_preserved.to_string()),
        ]);
        let code = if r.passed() { EXIT_OK } else { EXIT_INTERNAL };
        return Ok(Outcome::ok(to_value(&r), text).with_code(code));
    }
    let file: Option<TupleFile> = a.input.as_ref().map(|p| read_json(p)).transpose()?;
    let type_name = a
        .cartan
        .clone()
        .or_else(|| file.as_ref().and_then(|f| f.cartan_type.clone()))
        .ok_or_else(|| CliError::Usage("--type is required".into()))?;
    let c = cartan(&type_name)?;
    let mode = match (a.mode, &file) {
        (Some(m), _) => m,
        (None, Some(f)) => Mode::from_str(&f.mode, true).map_err(|_| CliError::Domain(format!("unknown mode {:?}", f.mode)))?,
        (None, None) => Mode::Tropical,
    };
    let (from, values): (Vec<usize>, Vec<Scalar>) = match &file {
        Some(f) => (f.word.clone(), f.values.clone()),
        None => {
            let from = a.from.as_deref().ok_or_else(|| CliError::Usage("--from is required".into()))?;
            let t = a.t.as_deref().ok_or_else(|| CliError::Usage("--t is required".into()))?;
            (parse_list(from)?, t.split(',').map(|s| Scalar::Str(s.trim().to_string())).collect())
        }
    };
    let to = a.to.as_deref().ok_or_else(|| CliError::Usage("--to is required".into()))?;
    let from = c.reduced_word(&from)?;
    let to = c.reduced_word(&parse_list::<usize>(to)?)?;
    let (out_values, text): (Vec<Scalar>, String) = match mode {
        Mode::Tropical => {
            let t: TropicalTuple = ParamTuple::new(&c, from, values.iter().map(Scalar::natural).collect::<CliResult<_>>()?)?;
            let out = transition(&c, &t, &to)?;
            let v: Vec<Scalar> = out
                .values()
                .iter()
                .map(|&x| i64::try_from(x).map(Scalar::Int).unwrap_or_else(|_| Scalar::Str(x.to_string())))
                .collect();
            (v, format!("{}\n", join(out.values())))
        }
        Mode::Geometric => {
            let t: GeometricTuple = ParamTuple::new(&c, from, values.iter().map(Scalar::rational).collect::<CliResult<_>>()?)?;
            let out = transition(&c, &t, &to)?;
            let v: Vec<Scalar> = out.values().iter().map(|x| Scalar::Str(x.to_string())).collect();
            (v, format!("{}\n", join(out.values())))
        }
    };
    let file = TupleFile {
        cartan_type: Some(c.to_string()),
        word: to.letters().to_vec(),
        values: out_values,
        mode: mode.name().into(),
    };
    Ok(Outcome::ok(to_value(&file), text))
}
