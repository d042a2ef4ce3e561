//! Command-line front end. Exit codes: 0 success, 1 property violation,
//! 2 usage, parse or evaluation error.

use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use superleib::algebra::{Element, SuperAlgebra};
use superleib::families::{self, canonical_list, FamilyId, FamilyTag};
use superleib::format::{parse_lsa, serialize_lsa};
use superleib::invariants::{central_series, characteristic_sequence, natural_gradation, CharSeqPolicy, Fingerprint};
use superleib::search::{self, census, CubeBoundOutcome, SearchSpec, Shape};
use superleib::{Error, GradedSubspace, Scalar, SCHEMA_VERSION};

/// Environment variable holding the default seed for random candidates.
const SEED_VAR: &str = "SUPERLEIB_SEED";

#[derive(Parser)]
#[command(name = "superleib", version, about = "Exact computations with Leibniz superalgebras")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct PolicyArgs {
    /// Random candidates tried on top of the basis vectors.
    #[arg(long, default_value_t = 8)]
    trials: usize,
    /// Seed for the candidates; defaults to $SUPERLEIB_SEED, then 0.
    #[arg(long)]
    seed: Option<u64>,
}

impl PolicyArgs {
    fn policy(&self) -> Result<CharSeqPolicy, Failure> {
        let seed = match self.seed {
            Some(s) => s,
            None => match std::env::var(SEED_VAR) {
                Ok(v) => v.trim().parse().map_err(|_| Failure::usage(format!("{SEED_VAR}={v} is not an unsigned integer")))?,
                Err(_) => 0,
            },
        };
        Ok(CharSeqPolicy { trials: self.trials, seed })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Validate the superidentity.
    Check { file: String },
    /// Descending central series and nilindex.
    Series { file: String },
    /// Characteristic sequence.
    Charseq {
        file: String,
        #[command(flatten)]
        policy: PolicyArgs,
    },
    /// Right annihilator.
    Annihilator { file: String },
    /// Natural gradation of an algebra with m = 0.
    Gradation { file: String },
    /// Invariant fingerprint.
    Fingerprint {
        file: String,
        #[command(flatten)]
        policy: PolicyArgs,
    },
    /// Compare fingerprints; exit 1 when they differ.
    Compare {
        first: String,
        second: String,
        #[command(flatten)]
        policy: PolicyArgs,
    },
    /// Print a family member as .lsa text.
    Family {
        tag: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Comma-separated parameter values; all zero when omitted.
        #[arg(long)]
        params: Option<String>,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Canonical representatives at (n, m).
    List {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Values cycled into the free parameters.
        #[arg(long, default_value = "1")]
        sample: String,
    },
    /// Exhaustive pruned enumeration and census report.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Comma-separated coefficient set; must contain 0.
        #[arg(long, default_value = "0,1,-1")]
        coeffs: String,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Comma-separated prefix to start from.
        #[arg(long)]
        resume: Option<String>,
        #[arg(long)]
        max_prefixes: Option<usize>,
        #[arg(long, default_value = "full")]
        shape: String,
        #[arg(long, default_value_t = search::DEFAULT_BUDGET)]
        budget: u64,
        /// Run even when the estimate exceeds the budget.
        #[arg(long)]
        force: bool,
    },
    /// Family sweep and small censuses checking the theorems.
    VerifyTheorems {
        /// Largest n+m censused.
        #[arg(long, default_value_t = 3)]
        max_total_dim: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::usage(e.to_string())
    }
}

/// What a subcommand produced: text, JSON, and whether a property failed.
struct Outcome {
    text: String,
    json: Value,
    violated: bool,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome { text, json, violated: false }
    }
}

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(&cli.command) {
        Ok(out) => {
            if cli.json {
                let mut v = out.json;
                if let Value::Object(map) = &mut v {
                    let mut tagged = serde_json::Map::new();
                    tagged.insert("schema_version".into(), json!(SCHEMA_VERSION));
                    for (k, val) in std::mem::take(map) {
                        if k != "schema_version" {
                            tagged.insert(k, val);
                        }
                    }
                    v = Value::Object(tagged);
                }
                println!("{}", serde_json::to_string_pretty(&v).expect("json"));
            } else if !out.text.is_empty() {
                print!("{}", out.text);
                if !out.text.ends_with('\n') {
                    println!();
                }
            }
            i32::from(out.violated)
        }
        Err(f) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&json!({"schema_version": SCHEMA_VERSION, "error": f.message})).expect("json"));
            }
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn read_input(file: &str) -> Result<String, Failure> {
    let mut text = String::new();
    if file == "-" {
        std::io::stdin().read_to_string(&mut text).map_err(|e| Failure::usage(format!("stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(file).map_err(|e| Failure::usage(format!("{file}: {e}")))?;
    }
    Ok(text)
}

fn load(file: &str) -> Result<SuperAlgebra, Failure> {
    let text = read_input(file)?;
    parse_lsa(&text).map_err(|e| Failure::usage(format!("{file}: {e}")))
}

fn parse_csv(text: &str) -> Result<Vec<Scalar>, Failure> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(|t| t.trim().parse::<Scalar>().map_err(|e| Failure::usage(format!("'{}': {e}", t.trim())))).collect()
}

fn pair(p: (usize, usize)) -> String {
    format!("({}|{})", p.0, p.1)
}

fn subspace_elements(s: &GradedSubspace) -> Vec<Element> {
    let (n, m) = s.ambient();
    let even = s.even_basis().row_vectors().into_iter().map(|r| Element::from_parts(r, vec![Scalar::zero(); m]));
    let odd = s.odd_basis().row_vectors().into_iter().map(|r| Element::from_parts(vec![Scalar::zero(); n], r));
    even.chain(odd).collect()
}

fn dispatch(cmd: &Command) -> Result<Outcome, Failure> {
    match cmd {
        Command::Check { file } => check(&load(file)?),
        Command::Series { file } => series(&load(file)?),
        Command::Charseq { file, policy } => charseq(&load(file)?, policy.policy()?),
        Command::Annihilator { file } => annihilator(&load(file)?),
        Command::Gradation { file } => gradation(&load(file)?),
        Command::Fingerprint { file, policy } => {
            let fp = Fingerprint::with_policy(&load(file)?, policy.policy()?);
            Ok(Outcome::ok(fp.canonical(), json!({"fingerprint": fp, "canonical": fp.canonical()})))
        }
        Command::Compare { first, second, policy } => {
            let p = policy.policy()?;
            let a = Fingerprint::with_policy(&load(first)?, p);
            let b = Fingerprint::with_policy(&load(second)?, p);
            let equal = a == b;
            let text = format!("{}\n{}\n{}", a.canonical(), b.canonical(), if equal { "fingerprints equal" } else { "fingerprints differ" });
            Ok(Outcome { text, json: json!({"equal": equal, "first": a.canonical(), "second": b.canonical()}), violated: !equal })
        }
        Command::Family { tag, n, m, params, output } => family(tag, *n, *m, params.as_deref(), output.as_ref()),
        Command::List { n, m, sample } => list(*n, *m, sample),
        Command::Search { n, m, coeffs, jobs, resume, max_prefixes, shape, budget, force } => {
            let mut spec = SearchSpec::new(*n, *m, parse_csv(coeffs)?);
            spec.jobs = *jobs;
            spec.shape = shape.parse::<Shape>()?;
            spec.budget = *budget;
            spec.force = *force;
            spec.max_prefixes = *max_prefixes;
            spec.resume = match resume {
                None => None,
                Some(r) => Some(
                    r.split(',')
                        .map(|t| t.trim().parse::<usize>().map_err(|_| Failure::usage(format!("bad cursor entry '{t}'"))))
                        .collect::<Result<_, _>>()?,
                ),
            };
            let report = census(&spec)?;
            let text = census_summary(&report);
            let violated = !report.all_hold();
            Ok(Outcome { text, json: serde_json::to_value(&report).expect("report"), violated })
        }
        Command::VerifyTheorems { max_total_dim, jobs } => verify(*max_total_dim, *jobs),
    }
}

fn check(a: &SuperAlgebra) -> Result<Outcome, Failure> {
    let v = a.superidentity_violations();
    let items: Vec<Value> =
        v.iter().map(|w| json!({"x": w.x.to_string(), "y": w.y.to_string(), "z": w.z.to_string(), "residual": w.residual.to_string()})).collect();
    let text = if v.is_empty() {
        "Leibniz superalgebra: OK".to_string()
    } else {
        let mut t = format!("superidentity fails on {} triples\n", v.len());
        for w in &v {
            t.push_str(&format!("({}, {}, {}): {}\n", w.x, w.y, w.z, w.residual));
        }
        t
    };
    Ok(Outcome { text, json: json!({"leibniz": v.is_empty(), "violations": items}), violated: !v.is_empty() })
}

fn series(a: &SuperAlgebra) -> Result<Outcome, Failure> {
    let s = central_series(a);
    let chain: Vec<String> = s.dims().iter().enumerate().map(|(k, &d)| format!("L^{} {}", k + 1, pair(d))).collect();
    let tail = match s.nilindex() {
        Some(l) => format!("nilindex {l}"),
        None => "not nilpotent".to_string(),
    };
    let dims: Vec<[usize; 2]> = s.dims().iter().map(|&(e, o)| [e, o]).collect();
    Ok(Outcome::ok(format!("{}; {tail}", chain.join(" ⊇ ")), json!({"dims": dims, "nilindex": s.nilindex()})))
}

fn charseq(a: &SuperAlgebra, policy: CharSeqPolicy) -> Result<Outcome, Failure> {
    match characteristic_sequence(a, policy) {
        Ok(c) => Ok(Outcome::ok(c.to_string(), json!({"status": "ok", "charseq": c.to_string(), "even": c.even, "odd": c.odd, "policy": policy}))),
        Err(Error::NotNilpotent(_)) => Ok(Outcome {
            text: "not nilpotent: some R_x is not nilpotent".into(),
            json: json!({"status": "not_nilpotent", "policy": policy}),
            violated: true,
        }),
        Err(e) => Err(e.into()),
    }
}

fn annihilator(a: &SuperAlgebra) -> Result<Outcome, Failure> {
    let r = a.right_annihilator();
    let basis: Vec<String> = subspace_elements(&r).iter().map(ToString::to_string).collect();
    let text = format!("R(L) {}: {}", pair(r.dims()), if basis.is_empty() { "0".to_string() } else { basis.join(", ") });
    Ok(Outcome::ok(text, json!({"dims": [r.dims().0, r.dims().1], "basis": basis})))
}

fn gradation(a: &SuperAlgebra) -> Result<Outcome, Failure> {
    let g = natural_gradation(a)?;
    let degrees: Vec<String> = g.degrees.iter().map(ToString::to_string).collect();
    let table = serialize_lsa(&g.algebra);
    let text = format!("degrees {}\nlie {}\n{table}", degrees.join(","), g.algebra.is_lie());
    Ok(Outcome::ok(text, json!({"degrees": g.degrees, "component_dims": g.component_dims(), "lie": g.algebra.is_lie(), "table": table})))
}

fn family(tag: &str, n: usize, m: usize, params: Option<&str>, output: Option<&PathBuf>) -> Result<Outcome, Failure> {
    let tag: FamilyTag = tag.parse()?;
    let arity = tag.arity(n, m)?;
    let params = match params {
        Some(p) => parse_csv(p)?,
        None => vec![Scalar::zero(); arity],
    };
    let id = FamilyId::new(tag, n, m, params)?;
    let text = serialize_lsa(&id.build()?);
    let json = json!({"family": id, "table": text});
    if let Some(path) = output {
        std::fs::write(path, &text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
        return Ok(Outcome::ok(String::new(), json));
    }
    Ok(Outcome::ok(text, json))
}

fn list(n: usize, m: usize, sample: &str) -> Result<Outcome, Failure> {
    let entries = canonical_list(n, m, &parse_csv(sample)?)?;
    let mut text = String::new();
    let mut items = Vec::new();
    for e in &entries {
        text.push_str(&format!("{}  {}\n", e.id, e.description));
        items.push(json!({"family": e.id, "description": e.description}));
    }
    Ok(Outcome::ok(text, json!({"n": n, "m": m, "entries": items})))
}

fn census_summary(r: &search::CensusReport) -> String {
    let mut t = format!(
        "dims ({}|{}), coefficients {{{}}}, {} free, {} nodes\nvalid {}, nilpotent {}, non-nilpotent {}\n",
        r.n,
        r.m,
        r.coefficients.join(", "),
        r.free_coefficients,
        r.nodes_visited,
        r.valid,
        r.nilpotent,
        r.non_nilpotent
    );
    for h in &r.histogram {
        t.push_str(&format!("  nilindex {} charseq {}: {}\n", h.nilindex, h.charseq, h.count));
    }
    let mark = |ok: bool| if ok { "holds" } else { "FAILS" };
    t.push_str(&format!(
        "nilindex {}: {} attainers, {}\n",
        r.maximal_nilindex.nilindex,
        r.maximal_nilindex.attainers,
        mark(r.maximal_nilindex.holds)
    ));
    t.push_str(&format!(
        "nilindex {} disjunction: {} checked, {}\n",
        r.nilindex_bound.nilindex,
        r.nilindex_bound.checked,
        mark(r.nilindex_bound.holds)
    ));
    t.push_str(&format!("cube bound: {} applicable, {}\n", r.cube_bound.applicable, mark(r.cube_bound.holds)));
    if let Some(c) = &r.next_cursor {
        let c: Vec<String> = c.iter().map(ToString::to_string).collect();
        t.push_str(&format!("resume with --resume {}\n", c.join(",")));
    }
    t
}

struct Check {
    name: String,
    passed: bool,
    detail: String,
}

fn verify(max_total_dim: usize, jobs: usize) -> Result<Outcome, Failure> {
    let mut checks = Vec::new();
    let corpus = families::corpus(&families::standard_grid(), 4, 200, 0)?;
    let mut bad_identity = Vec::new();
    let mut bad_nilindex = Vec::new();
    let mut bad_bound = Vec::new();
    let mut bad_cube = Vec::new();
    let policy = CharSeqPolicy::default();
    for id in &corpus {
        let a = id.build()?;
        if !a.is_leibniz() {
            bad_identity.push(id.to_string());
            continue;
        }
        if central_series(&a).nilindex() != Some(id.expected_nilindex()) {
            bad_nilindex.push(id.to_string());
        }
        if search::nilindex_bound_holds(&a, policy)? == Some(false) {
            bad_bound.push(id.to_string());
        }
        if let CubeBoundOutcome::Fails { .. } = search::check_cube_bound(&a.even_part())? {
            bad_cube.push(id.to_string());
        }
    }
    let total = corpus.len();
    let mut push = |name: &str, bad: Vec<String>| {
        let detail = if bad.is_empty() { format!("{total} family members") } else { format!("{} of {total} fail, first {}", bad.len(), bad[0]) };
        checks.push(Check { name: name.into(), passed: bad.is_empty(), detail });
    };
    push("family superidentity", bad_identity);
    push("family nilindex", bad_nilindex);
    push("family nilindex n+m disjunction", bad_bound);
    push("family cube bound", bad_cube);

    for d in 1..=max_total_dim {
        for n in 0..=d {
            let m = d - n;
            let mut spec = SearchSpec::signs(n, m).with_jobs(jobs);
            if spec.estimate() > search::DEFAULT_BUDGET.into() {
                spec.shape = Shape::Triangular;
                if m != 0 || spec.estimate() > search::DEFAULT_BUDGET.into() {
                    checks.push(Check { name: format!("census ({n}|{m})"), passed: true, detail: "skipped: over budget".into() });
                    continue;
                }
            }
            let r = census(&spec)?;
            let shape = if spec.shape == Shape::Triangular { " triangular" } else { "" };
            checks.push(Check {
                name: format!("census ({n}|{m}){shape}"),
                passed: r.all_hold(),
                detail: format!("{} valid, {} attain n+m+1, {} cube-bound cases", r.valid, r.maximal_nilindex.attainers, r.cube_bound.applicable),
            });
        }
    }
    let passed = checks.iter().all(|c| c.passed);
    let mut text = String::new();
    for c in &checks {
        text.push_str(&format!("{} {}: {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail));
    }
    let items: Vec<Value> = checks.iter().map(|c| json!({"check": c.name, "passed": c.passed, "detail": c.detail})).collect();
    Ok(Outcome { text, json: json!({"passed": passed, "checks": items}), violated: !passed })
}
