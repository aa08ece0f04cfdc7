use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use subsys_core::constructions::{
    admissible_t, bch_family, bch_self_orthogonal, cyclic_construction, mds_family, BchFamilySpec,
    CyclicSubsysSpec, MdsItem, MdsParams,
};
use subsys_core::cyclotomic::{cosets, DefiningSet, Flavor};
use subsys_core::enumerate::{parse_budget, EnumOptions, Outcome, BUDGET_ENV};
use subsys_core::lincode::CodeJson;
use subsys_core::propagation::{self, RuleId};
use subsys_core::registry::{self, Format, DEFAULT_RULES};
use subsys_core::subsystem::{euclidean_construction, from_additive, hermitian_construction, Descriptor, EngineOptions};
use subsys_core::symplectic::AdditiveJson;

#[derive(Parser)]
#[command(name = "subsys", version, about = "Subsystem codes from classical cyclic codes")]
struct Cli {
    /// Enumeration budget in codewords, e.g. 2^30.
    #[arg(long, global = true, env = BUDGET_ENV, value_parser = budget)]
    budget: Option<u64>,
    /// Run searches on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

fn budget(s: &str) -> std::result::Result<u64, String> {
    parse_budget(s).ok_or_else(|| format!("bad budget {s:?}"))
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    Euclid,
    Herm,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Self {
        match f {
            FlavorArg::Euclid => Flavor::Euclidean,
            FlavorArg::Herm => Flavor::Hermitian,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
    Markdown,
}

#[derive(Subcommand)]
enum Cmd {
    /// Cyclotomic cosets of q modulo n.
    Coset {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u32,
        /// Only the coset of this residue.
        #[arg(long)]
        x: Option<usize>,
    },
    /// Defining set of the BCH code with designed distance delta.
    BchDs {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        delta: usize,
        #[arg(long, default_value_t = 1)]
        b: usize,
    },
    /// Dimension and minimum distance of a classical code given as JSON.
    VerifyClassical {
        #[arg(long)]
        code: PathBuf,
    },
    /// Build a subsystem code.
    #[command(subcommand)]
    Construct(Construct),
    /// Coset unions T admissible for the BCH-derived D, with their r.
    #[command(name = "enumerate-T")]
    EnumerateT {
        #[arg(long)]
        n: usize,
        /// Field of the classical codes.
        #[arg(long)]
        q: u32,
        #[arg(long)]
        delta: usize,
        /// Defaults to herm when q is a square, euclid otherwise.
        #[arg(long, value_enum)]
        flavor: Option<FlavorArg>,
    },
    /// Apply a propagation rule.
    Derive(DeriveArgs),
    /// Seed, close and print a code table.
    Table(TableArgs),
}

#[derive(Subcommand)]
enum Construct {
    /// Euclidean construction from a code over GF(q).
    Euclid {
        #[arg(long)]
        code: PathBuf,
    },
    /// Hermitian construction from a code over GF(q^2).
    Herm {
        #[arg(long)]
        code: PathBuf,
    },
    /// Primitive BCH subsystem family.
    Bch {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        delta: usize,
        #[arg(long, default_value_t = 0)]
        r: usize,
        #[arg(long, value_enum, default_value = "euclid")]
        flavor: FlavorArg,
    },
    /// Cyclic construction from a JSON spec {n, q, t_d, t, flavor}.
    Cyclic {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Member of an MDS family (items i to vi).
    Mds {
        #[arg(long)]
        item: String,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        nu: Option<usize>,
        #[arg(long)]
        delta: Option<usize>,
        #[arg(long, default_value_t = 0)]
        r: usize,
    },
}

#[derive(Args)]
struct DeriveArgs {
    /// thm8, thm9, thm10, thm11, cor12, thm15, thm16, thm17, thm18 or thm19.
    #[arg(long)]
    rule: String,
    /// Descriptor JSON, or an additive code {q, n, gens} for the constructive rules.
    #[arg(long = "in")]
    input: PathBuf,
    /// Second input for thm18 and thm19.
    #[arg(long = "in2")]
    input2: Option<PathBuf>,
    /// Target r for cor12; without it cor12 goes back to the stabilizer code.
    #[arg(long)]
    r: Option<u32>,
    /// Assert that the second code of thm19 lies inside the first.
    #[arg(long)]
    nested: bool,
    /// Where to write the transformed additive code.
    #[arg(long)]
    out_code: Option<PathBuf>,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    q: u32,
    #[arg(long)]
    n_max: usize,
    #[arg(long, value_enum, default_value = "markdown")]
    format: FormatArg,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Comma-separated rule ids; "none" skips the closure.
    #[arg(long)]
    rules: Option<String>,
    #[arg(long, default_value_t = 16)]
    cap: usize,
    /// Merge records from, and append the result to, a JSON-lines file.
    #[arg(long)]
    store: Option<PathBuf>,
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn print(v: &impl serde::Serialize) -> Result<()> {
    let text = serde_json::to_string_pretty(v)? + "\n";
    match std::io::stdout().write_all(text.as_bytes()) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

fn default_flavor(q: u32) -> Flavor {
    let r = (q as f64).sqrt().round() as u32;
    if r > 1 && r * r == q && subsys_core::galois::prime_power(r).is_some() {
        Flavor::Hermitian
    } else {
        Flavor::Euclidean
    }
}

/// Descriptor plus, for additive-code inputs, the code itself.
fn load_input(path: &Path, opts: &EngineOptions) -> Result<(Descriptor, Option<subsys_core::symplectic::AdditiveCode>)> {
    let v = read_json(path)?;
    if v.get("gens").is_some() {
        let code = serde_json::from_value::<AdditiveJson>(v)?.into_code()?;
        let desc = from_additive(&code, opts)?;
        Ok((desc, Some(code)))
    } else {
        Ok((serde_json::from_value(v)?, None))
    }
}

fn derive(args: &DeriveArgs, opts: &EngineOptions) -> Result<()> {
    let rule: RuleId = args.rule.parse()?;
    let (desc, code) = load_input(&args.input, opts)?;
    let outputs: Vec<Descriptor> = match (rule, code) {
        (RuleId::Thm8 | RuleId::Thm10 | RuleId::Thm16, Some(code)) => {
            let (new_code, out) = match rule {
                RuleId::Thm8 => propagation::shrink_k(&code, &desc, opts)?,
                RuleId::Thm10 => propagation::grow_k(&code, &desc, opts)?,
                _ => propagation::extend_n(&code, &desc, opts)?,
            };
            if let Some(path) = &args.out_code {
                fs::write(path, serde_json::to_string_pretty(&AdditiveJson::from_code(&new_code))?)?;
            }
            vec![out]
        }
        (RuleId::Thm18 | RuleId::Thm19, _) => {
            let Some(p2) = &args.input2 else { bail!("{rule} needs --in2") };
            let (d2, _) = load_input(p2, opts)?;
            if rule == RuleId::Thm18 {
                propagation::combine_disjoint(&desc, &d2)?
            } else {
                propagation::combine_nested(&desc, &d2, args.nested)?
            }
        }
        _ => propagation::apply_params(rule, &desc, args.r)?,
    };
    if outputs.len() == 1 {
        print(&outputs[0])
    } else {
        print(&outputs)
    }
}

fn table(args: &TableArgs, opts: &EngineOptions) -> Result<()> {
    let rules: Vec<RuleId> = match args.rules.as_deref() {
        None => DEFAULT_RULES.to_vec(),
        Some("none") => Vec::new(),
        Some(list) => list.split(',').map(str::parse).collect::<subsys_core::Result<_>>()?,
    };
    let mut reg = registry::seed(args.q, args.n_max, opts)?;
    if let Some(store) = &args.store {
        if store.exists() {
            reg.read_jsonl(std::io::BufReader::new(fs::File::open(store)?))?;
        }
    }
    if !rules.is_empty() {
        reg.close(&rules, args.cap);
    }
    if let Some(store) = &args.store {
        let f = fs::OpenOptions::new().create(true).append(true).open(store)?;
        reg.write_jsonl(std::io::BufWriter::new(f))?;
    }
    let format = match args.format {
        FormatArg::Csv => Format::Csv,
        FormatArg::Json => Format::Json,
        FormatArg::Markdown => Format::Markdown,
    };
    let text = reg.emit(format);
    match &args.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let mut enumeration = EnumOptions::default();
    if let Some(b) = cli.budget {
        enumeration.budget = b;
    }
    if cli.sequential {
        enumeration = enumeration.sequential();
    }
    let opts = EngineOptions { enumeration, lower_bound: None };
    match &cli.cmd {
        Cmd::Coset { n, q, x } => match x {
            Some(x) => print(&subsys_core::cyclotomic::coset(*x, *n, *q)?),
            None => print(&cosets(*n, *q)?),
        },
        Cmd::BchDs { n, q, delta, b } => {
            let t = DefiningSet::bch(*n, *q, *delta, *b)?;
            print(&json!({ "defining_set": t, "leaders": t.coset_leaders(), "bch_bound": t.bch_bound() }))
        }
        Cmd::VerifyClassical { code } => {
            let c = serde_json::from_value::<CodeJson>(read_json(code)?)?.into_code()?;
            let d = match c.min_weight(&opts.enumeration)? {
                Outcome::Exact(w) => json!({ "kind": "exact", "value": w }),
                _ => {
                    let w = c.column_distance(1 << 24);
                    json!({ "kind": if w.is_exact() { "exact" } else { "lower_bound" }, "value": w.value() })
                }
            };
            print(&json!({ "q": c.field().order(), "n": c.n(), "k": c.k(), "d": d }))
        }
        Cmd::Construct(c) => match c {
            Construct::Euclid { code } => {
                let c = serde_json::from_value::<CodeJson>(read_json(code)?)?.into_code()?;
                print(&euclidean_construction(&c, &opts)?)
            }
            Construct::Herm { code } => {
                let c = serde_json::from_value::<CodeJson>(read_json(code)?)?.into_code()?;
                print(&hermitian_construction(&c, &opts)?)
            }
            Construct::Bch { q, m, delta, r, flavor } => {
                let spec = BchFamilySpec { q: *q, m: *m, delta: *delta, r: *r, flavor: (*flavor).into() };
                print(&bch_family(&spec, &opts)?)
            }
            Construct::Cyclic { spec } => {
                let spec: CyclicSubsysSpec = serde_json::from_value(read_json(spec)?)?;
                print(&cyclic_construction(&spec, &opts)?.descriptor)
            }
            Construct::Mds { item, q, n, d, nu, delta, r } => {
                let item: MdsItem = item.parse()?;
                let params = MdsParams { n: *n, d: *d, nu: *nu, delta: *delta, r: *r };
                let rec = mds_family(item, *q, &params, &opts)?;
                let mut v = serde_json::to_value(&rec.descriptor)?;
                v["constructive"] = json!(rec.constructive);
                print(&v)
            }
        },
        Cmd::EnumerateT { n, q, delta, flavor } => {
            let flavor = flavor.map(Flavor::from).unwrap_or_else(|| default_flavor(*q));
            let (t_d, t_dperp) = bch_self_orthogonal(*n, *q, *delta, flavor)?;
            let adm = admissible_t(&t_d, flavor)?;
            let k = n - t_d.len();
            let choices: Vec<Value> = adm
                .choices
                .iter()
                .map(|(t, r)| json!({ "leaders": t.coset_leaders(), "r": r, "valid": 2 * k + r < *n }))
                .collect();
            print(&json!({
                "t_d": t_d.coset_leaders(),
                "t_d_perp": t_dperp.coset_leaders(),
                "dim_d": k,
                "choices": choices,
                "achievable_r": adm.achievable_r(),
                "truncated": adm.truncated,
            }))
        }
        Cmd::Derive(args) => derive(args, &opts),
        Cmd::Table(args) => table(args, &opts),
    }
}
