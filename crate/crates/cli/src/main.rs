use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use z4sec::binary::BinaryCode;
use z4sec::catalog::{self, ReferenceRow, TABLE_ROWS};
use z4sec::constructions::{
    bdcc, nested_sum, odd_extension, pdcc, rm_z4, BorderParams, CirculantSeed, OddExtensionParams,
};
use z4sec::enumerators::{
    classify_swe, gray_we_from_swe, is_fsd_swe, is_fsd_we, min_distances_swe, swe, we, SwePoly, WePoly, SWE_VARS,
    WE_VARS,
};
use z4sec::io::{code_to_json, parse_t_poly, poly_to_json, CodeFile, PolyFile};
use z4sec::search::{results_csv, run_search, Base, Family, SearchOptions, SearchSpace};
use z4sec::secrecy::{
    beta_extract, beta_from_h, curve, flatness_factor, gain_from_beta, secrecy_gain, secrecy_gain_binary,
    strong_condition_check, tau_threshold, type_i_upper_bound, BetaVector, HPolynomial, SecrecyReport,
};
use z4sec::theta::{theta_a4, theta_binary_a, theta_construction_c, LatticeSpec};
use z4sec::z4::{Z4Code, Z4Matrix};
use z4sec::{Budget, Error};

/// Formally self-dual Z4 codes, their lattices and wiretap secrecy figures.
#[derive(Parser, Debug)]
#[command(name = "z4sec", version)]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Config {
    /// Theta series truncation, in quarter units of the exponent.
    #[arg(long, global = true, default_value_t = 400)]
    truncation: usize,
    /// Absolute tolerance for reference comparisons.
    #[arg(long, global = true, default_value_t = catalog::TOLERANCE)]
    tolerance: f64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Enumeration budget as log2 of the number of codewords.
    #[arg(long, global = true, default_value_t = Budget::DEFAULT_LOG2)]
    budget: u32,
    /// Write the main output here instead of stdout.
    #[arg(long, short, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Symmetrized weight enumerator of a Z4 code (weight enumerator for a binary code).
    Swe { input: PathBuf },
    /// Generator of the dual code.
    Dual { input: PathBuf },
    /// Formal self-duality, type, self-duality and minimum distances.
    Verify { input: PathBuf },
    /// Secrecy gain of the Construction A4 lattice.
    Gain { input: PathBuf },
    /// Gleason coefficients of h(t) and the gain they give.
    Beta { input: PathBuf },
    /// Upper bound on the secrecy gain of Type I lattices of dimension n.
    Bound { n: u32 },
    /// Flatness factor at a given tau.
    Flatness {
        input: PathBuf,
        #[arg(long)]
        tau: f64,
    },
    /// Largest tau <= 1 with flatness factor at most 1/n.
    TauThreshold { input: PathBuf },
    /// Theta series coefficients as CSV.
    Theta {
        input: PathBuf,
        /// Binary torsion code; the input is then the binary residue code
        /// and the lattice is built by Construction C.
        #[arg(long)]
        torsion: Option<PathBuf>,
    },
    /// Samples of the secrecy function on (0, 1) as CSV.
    Curve {
        input: PathBuf,
        #[arg(long, default_value_t = 199)]
        points: usize,
    },
    /// Gray image weight enumerator and its binary lattice gain.
    Gray { input: PathBuf },
    /// Exhaustive search over a double circulant family.
    Search(SearchArgs),
    /// Recompute the reference table with PASS/FAIL against stored values.
    Table,
    /// Write the generator of a constructed code.
    Construct {
        #[command(subcommand)]
        which: Construct,
    },
    /// Gain of the length-32 Reed-Muller code (enumerates 2^32 codewords).
    Bw32,
}

#[derive(Args, Debug)]
struct SearchArgs {
    /// pdcc, bdcc, oext-pdcc or oext-bdcc.
    #[arg(long)]
    family: Family,
    #[arg(long)]
    eta: usize,
    /// File holding the base seed ("r1,...") or border ("a,b,g;r1,...") for odd extensions.
    #[arg(long)]
    base: Option<PathBuf>,
    /// Number of ranked results to report.
    #[arg(long)]
    limit: Option<usize>,
    /// Stop after this many candidates and mark the run incomplete.
    #[arg(long)]
    max_candidates: Option<u64>,
    /// Evaluate every candidate instead of one per symmetry class.
    #[arg(long)]
    no_symmetry: bool,
}

#[derive(Subcommand, Debug)]
enum Construct {
    /// (I | R) from a seed "r1,...,r_eta".
    Pdcc { seed: String },
    /// Bordered double circulant code from "alpha,beta,gamma;r1,...".
    Bdcc { params: String },
    /// A1 + 2A2 from two binary code files.
    Nested { a1: PathBuf, a2: PathBuf },
    /// R(1, m) + 2R(m - 2, m).
    Rm { m: usize },
    /// Odd extension of (I | R) with binary vectors a and c.
    Oext {
        seed: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        c: String,
    },
}

enum Input {
    Z4(Z4Matrix),
    Binary(BinaryCode),
    Swe(SwePoly),
    We(WePoly),
    H(HPolynomial),
}

struct Failure {
    code: u8,
    error: Value,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::BudgetExceeded { .. } => 3,
            _ => 2,
        };
        Failure {
            code,
            error: json!({"error": e.kind(), "message": e.to_string()}),
        }
    }
}

fn failure(kind: &str, message: String) -> Failure {
    Failure {
        code: 2,
        error: json!({"error": kind, "message": message}),
    }
}

type Out<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> Out<String> {
    fs::read_to_string(path).map_err(|e| failure("io", format!("{}: {e}", path.display())))
}

fn write_out(config: &Config, text: &str) -> Out<()> {
    match &config.out {
        Some(p) => fs::write(p, text).map_err(|e| failure("io", format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json value serializes") + "\n"
}

fn parse_err(e: serde_json::Error) -> Failure {
    Error::Parse(e.to_string()).into()
}

/// Reads a code file or a polynomial file; the kind is decided by its keys.
fn load(path: &Path) -> Out<Input> {
    let text = read(path)?;
    let value: Value = serde_json::from_str(&text).map_err(parse_err)?;
    if value.get("generator").is_some() {
        let file: CodeFile = serde_json::from_value(value).map_err(parse_err)?;
        return Ok(match file.into_input()? {
            z4sec::io::CodeInput::Z4(m) => Input::Z4(m),
            z4sec::io::CodeInput::Binary(c) => Input::Binary(c),
        });
    }
    let vars = value.get("vars").and_then(Value::as_array).map_or(0, Vec::len);
    match vars {
        3 => {
            let f: PolyFile = serde_json::from_value(value).map_err(parse_err)?;
            Ok(Input::Swe(f.into_poly()?))
        }
        2 => {
            let f: PolyFile = serde_json::from_value(value).map_err(parse_err)?;
            Ok(Input::We(f.into_poly()?))
        }
        1 => {
            let (n, terms) = parse_t_poly(&text)?;
            Ok(Input::H(HPolynomial::from_t_coefficients(n, terms)?))
        }
        _ => Err(failure("parse", format!("{}: not a code or enumerator file", path.display()))),
    }
}

fn budget(config: &Config) -> Budget {
    Budget::new(config.budget)
}

fn swe_of(input: Input, config: &Config) -> Out<SwePoly> {
    match input {
        Input::Z4(m) => Ok(swe(&Z4Code::from_generator(&m), budget(config))?),
        Input::Swe(p) => Ok(p),
        _ => Err(failure("input_kind", "expected a Z4 code or an swe file".into())),
    }
}

fn rational_json(q: &BigRational) -> Value {
    json!({"exact": q.to_string(), "value": q.to_f64()})
}

fn beta_json(b: &BetaVector) -> Value {
    Value::Array(b.betas.iter().map(|q| Value::String(q.to_string())).collect())
}

fn report_json(n: u32, r: &SecrecyReport) -> Value {
    json!({
        "n": n,
        "xi": r.xi,
        "exact_xi": r.exact_xi.as_ref().map(rational_json),
        "t_star": r.t_star,
        "tau_star": r.tau_star,
        "at_symmetry_point": r.at_symmetry_point,
        "strong_condition": r.strong_condition_verified,
        "fsd": r.fsd,
        "beta": r.beta.as_ref().map(beta_json),
    })
}

fn lattice(p: &SwePoly, config: &Config) -> LatticeSpec {
    LatticeSpec::a4_from_swe(p, config.truncation)
}

fn cmd_swe(input: &Path, config: &Config) -> Out<String> {
    Ok(match load(input)? {
        Input::Z4(m) => poly_to_json(&swe(&Z4Code::from_generator(&m), budget(config))?, &SWE_VARS),
        Input::Binary(c) => poly_to_json(&we(&c, budget(config))?, &WE_VARS),
        _ => return Err(failure("input_kind", "expected a code file".into())),
    } + "\n")
}

fn cmd_dual(input: &Path) -> Out<String> {
    let file = match load(input)? {
        Input::Z4(m) => CodeFile::from_z4(&Z4Code::from_generator(&m).dual_generator_matrix()),
        Input::Binary(c) => CodeFile::from_binary(&c.dual()),
        _ => return Err(failure("input_kind", "expected a code file".into())),
    };
    Ok(code_to_json(&file) + "\n")
}

fn cmd_verify(input: &Path, config: &Config) -> Out<String> {
    let v = match load(input)? {
        Input::Z4(m) => {
            let code = Z4Code::from_generator(&m);
            let p = swe(&code, budget(config))?;
            let dist = min_distances_swe(&p).ok();
            json!({
                "ring": 4,
                "n": code.n(),
                "k1": code.k1(),
                "k2": code.k2(),
                "log2_size": code.cardinality_log2(),
                "fsd": is_fsd_swe(&p),
                "self_dual": code.is_self_dual(),
                "type": classify_swe(&p).to_string(),
                "d_lee": dist.map(|d| d.0),
                "d_euclid": dist.map(|d| d.1),
            })
        }
        Input::Binary(c) => {
            let w = we(&c, budget(config))?;
            let dual = c.dual();
            let self_dual = c.k() == dual.k() && c.is_subcode_of(&dual);
            json!({
                "ring": 2,
                "n": c.n(),
                "k": c.k(),
                "fsd": is_fsd_we(&w),
                "self_dual": self_dual,
            })
        }
        Input::Swe(p) => {
            let dist = min_distances_swe(&p).ok();
            json!({
                "n": p.degree(),
                "fsd": is_fsd_swe(&p),
                "type": classify_swe(&p).to_string(),
                "d_lee": dist.map(|d| d.0),
                "d_euclid": dist.map(|d| d.1),
            })
        }
        _ => return Err(failure("input_kind", "expected a code or swe file".into())),
    };
    Ok(pretty(&v))
}

fn cmd_gain(input: &Path, config: &Config) -> Out<String> {
    let p = swe_of(load(input)?, config)?;
    Ok(pretty(&report_json(p.degree(), &secrecy_gain(&p)?)))
}

fn cmd_beta(input: &Path, config: &Config) -> Out<String> {
    let b = match load(input)? {
        Input::H(h) => beta_from_h(&h)?,
        other => beta_extract(&swe_of(other, config)?)?,
    };
    let g = gain_from_beta(&b)?;
    Ok(pretty(&json!({
        "ell": b.ell,
        "beta": beta_json(&b),
        "strong_condition": strong_condition_check(&b),
        "xi_at_symmetry_point": rational_json(&g.xi),
        "certified": g.certified,
    })))
}

fn cmd_bound(n: u32) -> Out<String> {
    let b = type_i_upper_bound(n)?;
    let value = b.bound.to_f64().unwrap_or(f64::NAN);
    Ok(format!("{} ≈ {value:.3}\n", b.bound))
}

fn cmd_flatness(input: &Path, tau: f64, config: &Config) -> Out<String> {
    let p = swe_of(load(input)?, config)?;
    let eps = flatness_factor(&lattice(&p, config), tau)?;
    Ok(pretty(&json!({"n": p.degree(), "tau": tau, "epsilon": eps})))
}

fn cmd_tau_threshold(input: &Path, config: &Config) -> Out<String> {
    let p = swe_of(load(input)?, config)?;
    let tau = tau_threshold(&lattice(&p, config))?;
    Ok(pretty(&json!({"n": p.degree(), "epsilon_target": 1.0 / p.degree() as f64, "tau": tau})))
}

fn cmd_theta(input: &Path, torsion: Option<&Path>, config: &Config) -> Out<String> {
    let t = config.truncation;
    let series = match (load(input)?, torsion) {
        (Input::Binary(a1), Some(path)) => match load(path)? {
            Input::Binary(a2) => theta_construction_c(&z4sec::enumerators::jwe(&a1, &a2, budget(config))?, t),
            _ => return Err(failure("input_kind", "torsion must be a binary code file".into())),
        },
        (_, Some(_)) => return Err(failure("input_kind", "Construction C needs a binary residue code".into())),
        (Input::Binary(c), None) => theta_binary_a(&we(&c, budget(config))?, t),
        (Input::We(w), None) => theta_binary_a(&w, t),
        (other, None) => theta_a4(&swe_of(other, config)?, t),
    };
    Ok(series.to_csv())
}

fn cmd_curve(input: &Path, points: usize, config: &Config) -> Out<String> {
    let p = swe_of(load(input)?, config)?;
    let mut csv = String::from("t,inv_h,xi\n");
    for pt in curve(&p, points)? {
        csv.push_str(&format!("{},{:e},{}\n", pt.t, pt.inv_h, pt.xi));
    }
    Ok(csv)
}

fn cmd_gray(input: &Path, config: &Config) -> Out<String> {
    let w = match load(input)? {
        Input::We(w) => w,
        other => gray_we_from_swe(&swe_of(other, config)?),
    };
    let r = secrecy_gain_binary(&w)?;
    let we_value: Value = serde_json::from_str(&poly_to_json(&w, &WE_VARS)).map_err(parse_err)?;
    Ok(pretty(&json!({
        "n": w.degree(),
        "we": we_value,
        "xi": r.xi,
        "tau_star": r.tau_star,
        "at_symmetry_point": r.at_symmetry_point,
        "fsd": r.fsd,
    })))
}

fn parse_base(path: &Path) -> Out<Base> {
    let text = read(path)?;
    let s = text.trim();
    Ok(if s.contains(';') {
        Base::Border(BorderParams::parse(s)?)
    } else {
        Base::Circulant(CirculantSeed::parse(s)?)
    })
}

fn cmd_search(args: &SearchArgs, config: &Config) -> Out<String> {
    let base = args.base.as_deref().map(parse_base).transpose()?;
    let space = SearchSpace::new(args.family, args.eta, base)?;
    let options = SearchOptions {
        budget: budget(config),
        threads: config.threads,
        limit: args.limit,
        max_candidates: args.max_candidates,
        symmetry: !args.no_symmetry,
    };
    let outcome = run_search(&space, &options)?;
    let swe_dir = config.out.as_ref().map(|p| {
        let stem = p.file_stem().map_or("results".into(), |s| s.to_string_lossy().into_owned());
        p.with_file_name(format!("{stem}_swe"))
    });
    if let Some(dir) = &swe_dir {
        fs::create_dir_all(dir).map_err(|e| failure("io", format!("{}: {e}", dir.display())))?;
        for r in &outcome.results {
            let path = dir.join(format!("rank{}.json", r.rank));
            fs::write(&path, poly_to_json(&r.swe, &SWE_VARS) + "\n")
                .map_err(|e| failure("io", format!("{}: {e}", path.display())))?;
        }
    }
    let name = |r: &z4sec::search::SearchResult| match &swe_dir {
        Some(dir) => dir.join(format!("rank{}.json", r.rank)).display().to_string(),
        None => String::new(),
    };
    eprintln!(
        "{}",
        json!({
            "family": args.family.to_string(),
            "eta": args.eta,
            "n": space.code_length(),
            "total": outcome.total,
            "evaluated": outcome.evaluated,
            "fsd_count": outcome.fsd_count,
            "distinct_swe": outcome.distinct_swe,
            "reduction_factor": outcome.reduction_factor,
            "best_xi": outcome.best_xi,
            "incomplete": outcome.incomplete,
        })
    );
    Ok(results_csv(&outcome.results, name))
}

/// Code whose measured values are compared against a reference row.
fn table_swe(row: &ReferenceRow, config: &Config) -> Out<Option<SwePoly>> {
    let b = budget(config);
    let code = match (row.n, row.label) {
        (4, _) => Z4Code::from_generator(&catalog::bdcc_n4_generator()),
        (6, _) => return Ok(None),
        (8, l) if l.contains("C8") => return Ok(Some(catalog::c8_swe())),
        (8, _) => catalog::octacode(),
        (12, l) if l.contains("pdcc") => pdcc(&catalog::n12_seed()),
        (12, _) => {
            let (a1, a2) = catalog::codes_dim12();
            nested_sum(&a1, &a2)?
        }
        (13, _) => odd_extension(&catalog::n13k6_params()),
        (16, _) => rm_z4(4)?,
        _ => return Err(failure("table", format!("no construction for row {}", row.label))),
    };
    Ok(Some(swe(&code, b)?))
}

fn cmd_table(config: &Config) -> Out<(String, bool)> {
    let tol = config.tolerance;
    let mut csv = String::from("label,n,quantity,reference,computed,status\n");
    let mut all_pass = true;
    let mut line = |row: &ReferenceRow, quantity: &str, reference: f64, computed: f64| {
        let pass = (computed - reference).abs() <= tol;
        all_pass &= pass;
        csv.push_str(&format!(
            "\"{}\",{},{quantity},{reference},{computed:.4},{}\n",
            row.label,
            row.n,
            if pass { "PASS" } else { "FAIL" }
        ));
    };
    for row in TABLE_ROWS {
        let swe = table_swe(row, config)?;
        let xi = match &swe {
            Some(p) => secrecy_gain(p)?.xi,
            None => {
                let options = SearchOptions {
                    budget: budget(config),
                    threads: config.threads,
                    ..SearchOptions::default()
                };
                run_search(&SearchSpace::bdcc(row.n as usize / 2)?, &options)?.best_xi
            }
        };
        line(row, "xi", row.xi, xi);
        if let Some(reference) = row.bound {
            let bound = type_i_upper_bound(row.n)?.bound.to_f64().unwrap_or(f64::NAN);
            line(row, "bound", reference, bound);
        }
        if let (Some(reference), Some(p)) = (row.tau, &swe) {
            line(row, "tau", reference, tau_threshold(&lattice(p, config))?);
        }
    }
    Ok((csv, all_pass))
}

fn parse_bits(s: &str) -> Out<Vec<u8>> {
    s.split(',')
        .map(|t| match t.trim() {
            "0" => Ok(0),
            "1" => Ok(1),
            other => Err(failure("parse", format!("expected 0 or 1, got {other:?}"))),
        })
        .collect()
}

fn cmd_construct(which: &Construct) -> Out<String> {
    let code = match which {
        Construct::Pdcc { seed } => pdcc(&CirculantSeed::parse(seed)?),
        Construct::Bdcc { params } => bdcc(&BorderParams::parse(params)?),
        Construct::Nested { a1, a2 } => {
            let a1 = z4sec::io::parse_binary_code(&read(a1)?)?;
            let a2 = z4sec::io::parse_binary_code(&read(a2)?)?;
            nested_sum(&a1, &a2)?
        }
        Construct::Rm { m } => rm_z4(*m)?,
        Construct::Oext { seed, a, c } => {
            let b = CirculantSeed::parse(seed)?.matrix();
            odd_extension(&OddExtensionParams::new(b, parse_bits(a)?, parse_bits(c)?)?)
        }
    };
    Ok(code_to_json(&CodeFile::from_z4(&code.original_generator())) + "\n")
}

fn cmd_bw32(config: &Config) -> Out<String> {
    let code = rm_z4(5)?;
    let p = swe(&code, Budget::new(config.budget.max(32)))?;
    let r = secrecy_gain(&p)?;
    let swe_value: Value = serde_json::from_str(&poly_to_json(&p, &SWE_VARS)).map_err(parse_err)?;
    let mut v = report_json(p.degree(), &r);
    v["swe"] = swe_value;
    Ok(pretty(&v))
}

fn validate(config: &Config) -> Out<()> {
    if config.tolerance.is_nan() || config.tolerance <= 0.0 {
        return Err(failure("config", format!("tolerance must be positive, got {}", config.tolerance)));
    }
    if config.truncation == 0 {
        return Err(failure("config", "truncation must be positive".into()));
    }
    if config.threads == Some(0) {
        return Err(failure("config", "threads must be positive".into()));
    }
    if let Some(t) = config.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| failure("config", e.to_string()))?;
    }
    Ok(())
}

fn dispatch(cli: &Cli) -> Out<u8> {
    let config = &cli.config;
    validate(config)?;
    let text = match &cli.command {
        Command::Swe { input } => cmd_swe(input, config)?,
        Command::Dual { input } => cmd_dual(input)?,
        Command::Verify { input } => cmd_verify(input, config)?,
        Command::Gain { input } => cmd_gain(input, config)?,
        Command::Beta { input } => cmd_beta(input, config)?,
        Command::Bound { n } => cmd_bound(*n)?,
        Command::Flatness { input, tau } => cmd_flatness(input, *tau, config)?,
        Command::TauThreshold { input } => cmd_tau_threshold(input, config)?,
        Command::Theta { input, torsion } => cmd_theta(input, torsion.as_deref(), config)?,
        Command::Curve { input, points } => cmd_curve(input, *points, config)?,
        Command::Gray { input } => cmd_gray(input, config)?,
        Command::Search(args) => cmd_search(args, config)?,
        Command::Table => {
            let (csv, pass) = cmd_table(config)?;
            write_out(config, &csv)?;
            return Ok(if pass { 0 } else { 4 });
        }
        Command::Construct { which } => cmd_construct(which)?,
        Command::Bw32 => cmd_bw32(config)?,
    };
    write_out(config, &text)?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("{}", f.error);
            ExitCode::from(f.code)
        }
    }
}
