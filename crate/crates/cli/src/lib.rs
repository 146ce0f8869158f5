//! Command-line front end. Each subcommand maps to one `run_*` function that
//! returns an [`OutputDocument`]; rendering and exit codes live in `main`.

pub mod output;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};

use nsimplex::baser::{self, BaseRSimplex};
use nsimplex::numsys::{self, Numeral, NumeralSystemSpec, SystemKind};
use nsimplex::oracle::{is_ehrhart_positive, EhrhartTable};
use nsimplex::poly::{real_root_count, IntPolynomial};
use nsimplex::reflexive::{self, DivisorPrefix};
use nsimplex::simplex::{self, QSimplex};

pub use output::{Format, Kind, OutputDocument, Value};

#[derive(Debug, Parser)]
#[command(
    name = "nsimplex",
    version,
    about = "Lattice simplices from positional numeral systems"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Ceiling on points enumerated by brute-force routines.
    #[arg(long, global = true, env = "NS_BUDGET", default_value_t = nsimplex::DEFAULT_BUDGET)]
    pub budget: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// h*-polynomial of a simplex given by q or by a numeral system.
    Hstar(HstarArgs),
    /// Convert between integers and numerals.
    Numeral {
        #[command(subcommand)]
        mode: NumeralMode,
    },
    /// Divisor system, q-vectors and h* per dimension.
    Reflexive(ReflexiveArgs),
    /// Brute-force lattice-point counts and Ehrhart data.
    Oracle(OracleArgs),
    /// Property flags of a raw coefficient list (constant term first).
    Check(CheckArgs),
    /// Sections of (1 + z + ... + z^(r-1))^n and their interlacing.
    Sections(SectionsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Omega,
    Nasc,
    Sections,
}

#[derive(Debug, Args)]
pub struct HstarArgs {
    /// Weakly increasing positive integers, comma-separated.
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["system", "n"])]
    pub q: Option<Vec<BigUint>>,
    /// Numeral system: base:R, factoradic, fib, mixed:c1,c2,... or places:a0,a1,...
    #[arg(long, requires = "n")]
    pub system: Option<String>,
    #[arg(long, requires = "system")]
    pub n: Option<usize>,
    #[arg(long, value_enum, default_value = "omega")]
    pub method: Method,
    /// Compute every applicable method and report agreement.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Subcommand)]
pub enum NumeralMode {
    Encode {
        #[arg(long)]
        system: String,
        value: BigUint,
        #[arg(long)]
        width: Option<usize>,
    },
    Decode {
        #[arg(long)]
        system: String,
        /// Big-endian digits; comma-separated when any digit exceeds 9.
        digits: String,
    },
}

#[derive(Debug, Args)]
pub struct ReflexiveArgs {
    #[arg(long)]
    pub system: String,
    #[arg(long)]
    pub n_max: usize,
    /// Explicit divisor prefix d_0,d_1,... to verify instead of deriving it.
    #[arg(long, value_delimiter = ',')]
    pub divisors: Option<Vec<BigUint>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleCheck {
    Hstar,
    Positivity,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub q: Vec<BigUint>,
    #[arg(long)]
    pub t_max: Option<usize>,
    #[arg(long, value_enum)]
    pub check: Option<OracleCheck>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(value_delimiter = ',', required = true, allow_hyphen_values = true)]
    pub coeffs: Vec<BigInt>,
    /// Degree for the symmetry test; defaults to the polynomial's degree.
    #[arg(long)]
    pub degree: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SectionsArgs {
    #[arg(long)]
    pub r: u32,
    #[arg(long)]
    pub n: usize,
}

pub fn run(cli: &Cli) -> Result<OutputDocument> {
    match &cli.command {
        Command::Hstar(a) => run_hstar(a, cli.budget),
        Command::Numeral { mode } => run_numeral(mode),
        Command::Reflexive(a) => run_reflexive(a),
        Command::Oracle(a) => run_oracle(a, cli.budget),
        Command::Check(a) => run_check(a),
        Command::Sections(a) => run_sections(a),
    }
}

fn parse_system(s: &str) -> Result<NumeralSystemSpec> {
    s.parse()
        .with_context(|| format!("invalid numeral system {s:?}"))
}

fn polynomial_flags(doc: &mut OutputDocument, h: &IntPolynomial, n: usize) -> Result<()> {
    doc.push("symmetric", Value::Bool(h.is_symmetric(n)?));
    doc.push("unimodal", Value::Bool(h.is_unimodal()?));
    doc.push("log-concave", Value::Bool(h.is_log_concave()?));
    doc.push("real-rooted", Value::Bool(h.is_real_rooted()?));
    Ok(())
}

/// Resolve the simplex for `--system S --n N`: the base-r simplex for
/// `base:R`, otherwise the one certified by the system's divisor system.
fn system_simplex(s: &NumeralSystemSpec, n: usize) -> Result<QSimplex> {
    if let SystemKind::BaseR(r) = s.kind() {
        return Ok(BaseRSimplex::new(*r, n)?.q().clone());
    }
    let Some(dp) = reflexive::mixed_radix_divisor_system(s, n)? else {
        bail!("{s} has no divisor system through n = {n}; pass --q explicitly");
    };
    Ok(reflexive::q_from_divisors(&dp, n)?)
}

fn omega_hstar(q: &QSimplex, budget: u64) -> Result<IntPolynomial> {
    let vol = simplex::normalized_volume(q);
    if vol > BigUint::from(budget) {
        bail!("normalized volume {vol} exceeds the budget of {budget}");
    }
    Ok(simplex::hstar(q))
}

pub fn run_hstar(a: &HstarArgs, budget: u64) -> Result<OutputDocument> {
    let (q, base) = match (&a.q, &a.system, a.n) {
        (Some(q), None, None) => (QSimplex::new(q.clone())?, None),
        (None, Some(s), Some(n)) => {
            let spec = parse_system(s)?;
            let base = match spec.kind() {
                SystemKind::BaseR(r) => Some(*r),
                _ => None,
            };
            (system_simplex(&spec, n)?, base)
        }
        _ => bail!("give either --q or both --system and --n"),
    };
    let n = q.dim();
    let compute = |m: Method| -> Result<IntPolynomial> {
        match (m, base) {
            (Method::Omega, _) => omega_hstar(&q, budget),
            (Method::Nasc, Some(r)) => Ok(baser::hstar_nasc_with_budget(r, n, budget)?),
            (Method::Sections, Some(r)) => Ok(baser::hstar_sections(r, n)?),
            _ => bail!("--method nasc and sections need --system base:R"),
        }
    };
    let h = compute(a.method)?;

    let mut doc = OutputDocument::new(Kind::Polynomial);
    doc.push("q", Value::ints(q.q()));
    doc.push("volume", Value::int(simplex::normalized_volume(&q)));
    doc.push("hstar", Value::Poly(h.clone()));
    doc.push("reflexive", Value::Bool(simplex::is_reflexive(&q)));
    polynomial_flags(&mut doc, &h, n)?;
    if a.verify {
        let methods: &[Method] = if base.is_some() {
            &[Method::Omega, Method::Nasc, Method::Sections]
        } else {
            &[Method::Omega]
        };
        let mut agree = true;
        for &m in methods {
            let other = compute(m)?;
            agree &= other == h;
            doc.push(format!("hstar-{}", method_name(m)), Value::Poly(other));
        }
        doc.push("methods-agree", Value::Bool(agree));
        doc.success = agree;
    }
    Ok(doc)
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Omega => "omega",
        Method::Nasc => "nasc",
        Method::Sections => "sections",
    }
}

pub fn run_numeral(mode: &NumeralMode) -> Result<OutputDocument> {
    let mut doc = OutputDocument::new(Kind::Numeral);
    match mode {
        NumeralMode::Encode {
            system,
            value,
            width,
        } => {
            let spec = parse_system(system)?;
            let num = numsys::encode(&spec, value, *width)?;
            doc.push("system", Value::Text(spec.to_string()));
            doc.push("value", Value::int(value));
            doc.push("numeral", Value::Text(num.to_string()));
            doc.push("digits", Value::ints(num.digits().iter().rev()));
        }
        NumeralMode::Decode { system, digits } => {
            let spec = parse_system(system)?;
            let num = Numeral::parse(spec.clone(), digits)?;
            let value = numsys::decode(&num)?;
            doc.push("system", Value::Text(spec.to_string()));
            doc.push("numeral", Value::Text(num.to_string()));
            doc.push("value", Value::int(value));
        }
    }
    Ok(doc)
}

pub fn run_reflexive(a: &ReflexiveArgs) -> Result<OutputDocument> {
    if a.n_max == 0 {
        bail!("--n-max must be at least 1");
    }
    let spec = parse_system(&a.system)?;
    let mut doc = OutputDocument::new(Kind::Table);
    doc.push("system", Value::Text(spec.to_string()));
    let dp = match &a.divisors {
        Some(d) => {
            let dp = DivisorPrefix::new(spec.clone(), d.clone())?;
            reflexive::check_divisor_system(&dp, a.n_max)?.then_some(dp)
        }
        None => match reflexive::mixed_radix_divisor_system(&spec, a.n_max) {
            Ok(found) => found,
            Err(reflexive::ReflexiveError::NotMixedRadix(_)) => {
                bail!("{spec} is not mixed radix; supply a candidate prefix with --divisors d0,d1,...")
            }
            Err(e) => return Err(e.into()),
        },
    };
    let Some(dp) = dp else {
        doc.push("divisors", Value::Text("none".into()));
        doc.success = a.divisors.is_none();
        if a.divisors.is_none() {
            let candidates = reflexive::mixed_radix_candidates(&spec, a.n_max)?;
            doc.push(
                "candidates",
                Value::List(
                    candidates
                        .iter()
                        .map(|c| Value::Text(c.to_string()))
                        .collect(),
                ),
            );
            if let Some((k, x)) = reflexive::first_nonintegral_candidate(&spec, a.n_max)? {
                doc.push("first-failure", Value::Text(format!("d_{k} = {x}")));
            }
        }
        return Ok(doc);
    };
    doc.push("divisors", Value::ints(dp.d().iter().take(a.n_max)));
    let mut rows = Vec::new();
    for n in 1..=a.n_max {
        let q = reflexive::q_from_divisors(&dp, n)?;
        let h = simplex::hstar(&q);
        rows.push(vec![Value::int(n), Value::ints(q.q()), Value::Poly(h)]);
    }
    doc.push(
        "dimensions",
        Value::Table {
            headers: vec!["n".into(), "q".into(), "hstar".into()],
            rows,
        },
    );
    Ok(doc)
}

pub fn run_oracle(a: &OracleArgs, budget: u64) -> Result<OutputDocument> {
    let q = QSimplex::new(a.q.clone())?;
    let table = EhrhartTable::compute(&q, a.t_max, budget)?;
    let mut doc = OutputDocument::new(Kind::Table);
    doc.push("q", Value::ints(q.q()));
    let rows = table
        .counts
        .iter()
        .enumerate()
        .map(|(t, c)| vec![Value::int(t), Value::int(c)])
        .collect();
    doc.push(
        "counts",
        Value::Table {
            headers: vec!["t".into(), "count".into()],
            rows,
        },
    );
    doc.push(
        "ehrhart",
        Value::List(
            table
                .ehrhart_coeffs
                .iter()
                .map(|c| Value::Text(c.to_string()))
                .collect(),
        ),
    );
    doc.push("hstar", Value::Poly(table.hstar.clone()));
    match a.check {
        Some(OracleCheck::Hstar) => {
            let formula = omega_hstar(&q, budget)?;
            let agree = formula == table.hstar;
            doc.push("formula-hstar", Value::Poly(formula));
            doc.push("agreement", Value::Bool(agree));
            doc.success = agree;
        }
        Some(OracleCheck::Positivity) => {
            let positive = is_ehrhart_positive(&table);
            doc.push("ehrhart-positive", Value::Bool(positive));
            doc.success = positive;
        }
        None => {}
    }
    Ok(doc)
}

pub fn run_check(a: &CheckArgs) -> Result<OutputDocument> {
    let p = IntPolynomial::new(a.coeffs.clone());
    let Some(deg) = p.degree() else {
        bail!("the zero polynomial has no degree; properties are undefined");
    };
    let mut doc = OutputDocument::new(Kind::BooleanReport);
    doc.push("polynomial", Value::Poly(p.clone()));
    doc.push("degree", Value::int(deg));
    polynomial_flags(&mut doc, &p, a.degree.unwrap_or(deg))?;
    doc.push("real-roots", Value::int(real_root_count(&p)?));
    doc.push(
        "positive-coefficients",
        Value::Bool(p.has_positive_coeffs()),
    );
    Ok(doc)
}

pub fn run_sections(a: &SectionsArgs) -> Result<OutputDocument> {
    let seq = baser::section_sequence(a.r, a.n)?;
    let m = a.r as usize - 1;
    let mut doc = OutputDocument::new(Kind::Table);
    doc.push("f", Value::Poly(baser::f_poly(a.r, a.n)));
    let rows = seq
        .polys()
        .iter()
        .enumerate()
        .map(|(i, p)| vec![Value::int(m - 1 - i), Value::Poly(p.clone())])
        .collect();
    doc.push(
        "sections",
        Value::Table {
            headers: vec!["ell".into(), "section".into()],
            rows,
        },
    );
    let pairs = seq.interlacing_pairs()?;
    let all = pairs.iter().all(|&(_, _, ok)| ok);
    let rows = pairs
        .into_iter()
        .map(|(i, j, ok)| {
            vec![
                Value::int(m - 1 - i),
                Value::int(m - 1 - j),
                Value::Bool(ok),
            ]
        })
        .collect();
    doc.push(
        "interlacing",
        Value::Table {
            headers: vec!["ell-left".into(), "ell-right".into(), "strict".into()],
            rows,
        },
    );
    doc.push("strictly-interlacing", Value::Bool(all));
    let h = baser::apply_H(a.r, seq.polys())?;
    doc.push(
        "hstar",
        Value::Poly(h.last().cloned().unwrap_or_else(IntPolynomial::zero)),
    );
    doc.success = all;
    Ok(doc)
}

/// Exit status for a finished run: 0 on success, 1 for a negative verdict.
pub fn exit_code(doc: &OutputDocument) -> u8 {
    u8::from(!doc.success)
}
